#pragma once

#include <functional>
#include <optional>

#include "sslab/settings.hpp"
#include "sslab/types.hpp"

namespace sslab {

using CFun = std::function<Complex(Complex)>;

struct Winding {
    int value = 0;
    // (1/2 pi i) of the contour integral of dF/F, when derivatives are supplied;
    // otherwise the normalized sum of argument increments.
    double continuous = 0.0;
    int nodes = 0;
};

// Winding number of F around the circle |z - c| = r by summing principal
// argument increments, doubling the node count until two passes agree and
// every increment stays below pi/2. With Wirtinger derivatives F_z, F_zbar
// the trapezoid value of (1/2 pi i) \oint (F_z dz + F_zbar dzbar)/F must sit
// within 1e-6 of the integer. Throws NotAnInteger otherwise.
Winding winding_number(const CFun& F, Complex c, double r, const Settings& s = Settings::defaults(),
                       const CFun* Fz = nullptr, const CFun* Fzbar = nullptr);

}  // namespace sslab
