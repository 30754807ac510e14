#include "sslab/errors.hpp"
#include "sslab/types.hpp"

#include <cstdio>

namespace sslab {

std::string format_complex(Complex c) {
    char buf[96];
    if (c.imag() == 0.0)
        std::snprintf(buf, sizeof buf, "%.10g", c.real());
    else
        std::snprintf(buf, sizeof buf, "%.10g%+.10gi", c.real(), c.imag());
    return buf;
}

std::string SpherePoint::str() const { return infinite ? "inf" : format_complex(z); }

}  // namespace sslab
