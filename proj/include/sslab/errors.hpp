#pragma once

#include <stdexcept>
#include <string>

namespace sslab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define SSLAB_ERROR(Name)                   \
    struct Name : Error {                   \
        using Error::Error;                 \
    }

SSLAB_ERROR(PoleError);
SSLAB_ERROR(EssentialPointError);
SSLAB_ERROR(UnsupportedExpr);
SSLAB_ERROR(NotAlgebraic);
SSLAB_ERROR(NotIsolated);
SSLAB_ERROR(NonConvergent);
SSLAB_ERROR(ParseError);
SSLAB_ERROR(ClearanceError);
SSLAB_ERROR(QuadratureError);
SSLAB_ERROR(SingularPointError);
SSLAB_ERROR(BadEndError);
SSLAB_ERROR(NotAnInteger);
SSLAB_ERROR(InconsistentLedger);
SSLAB_ERROR(JacobianSingular);
SSLAB_ERROR(ParamError);
SSLAB_ERROR(IOError);

#undef SSLAB_ERROR

}  // namespace sslab
