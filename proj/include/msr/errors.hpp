#pragma once

#include <stdexcept>
#include <string>

namespace msr {

// Closed set of error codes. Everything the library can refuse or reject is
// one of these; no other codes leak out of the public surface.
enum class ErrorCode {
    // value algebra
    PointRatio,
    PointSum,
    FamilyMix,
    PowerMismatch,
    DivZero,
    PointNegate,
    PointPower,
    OddPowerSqrt,
    NegativeSqrt,
    WeightSum,
    MixSort,
    Overflow,
    // registry
    DupFamily,
    DupScale,
    BadFactor,
    OffsetOnLinear,
    ScaleOnAbsolute,
    ScalarConvert,
    UnknownFamily,
    UnknownScale,
    // language
    Syntax,
    UnboundName,
    Rebind,
    CmpSort,
    AssertFailed,
    RoleKind,
    // statistics
    CsvParse,
    NoColumn,
    StdZero,
    GeomeanDomain,
    // meaningfulness
    Eval,
};

// Stable wire name, e.g. "E_POINT_RATIO".
const char* error_code_name(ErrorCode code);

// Thrown by the value algebra and registry on any rule violation.
class MsrError : public std::runtime_error {
public:
    MsrError(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace msr
