#include "msr/errors.hpp"

namespace msr {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::PointRatio: return "E_POINT_RATIO";
        case ErrorCode::PointSum: return "E_POINT_SUM";
        case ErrorCode::FamilyMix: return "E_FAMILY_MIX";
        case ErrorCode::PowerMismatch: return "E_POWER_MISMATCH";
        case ErrorCode::DivZero: return "E_DIV_ZERO";
        case ErrorCode::PointNegate: return "E_POINT_NEGATE";
        case ErrorCode::PointPower: return "E_POINT_POWER";
        case ErrorCode::OddPowerSqrt: return "E_ODD_POWER_SQRT";
        case ErrorCode::NegativeSqrt: return "E_NEGATIVE_SQRT";
        case ErrorCode::WeightSum: return "E_WEIGHT_SUM";
        case ErrorCode::MixSort: return "E_MIX_SORT";
        case ErrorCode::Overflow: return "E_OVERFLOW";
        case ErrorCode::DupFamily: return "E_DUP_FAMILY";
        case ErrorCode::DupScale: return "E_DUP_SCALE";
        case ErrorCode::BadFactor: return "E_BAD_FACTOR";
        case ErrorCode::OffsetOnLinear: return "E_OFFSET_ON_LINEAR";
        case ErrorCode::ScaleOnAbsolute: return "E_SCALE_ON_ABSOLUTE";
        case ErrorCode::ScalarConvert: return "E_SCALAR_CONVERT";
        case ErrorCode::UnknownFamily: return "E_UNKNOWN_FAMILY";
        case ErrorCode::UnknownScale: return "E_UNKNOWN_SCALE";
        case ErrorCode::Syntax: return "E_SYNTAX";
        case ErrorCode::UnboundName: return "E_UNBOUND_NAME";
        case ErrorCode::Rebind: return "E_REBIND";
        case ErrorCode::CmpSort: return "E_CMP_SORT";
        case ErrorCode::AssertFailed: return "E_ASSERT_FAILED";
        case ErrorCode::RoleKind: return "E_ROLE_KIND";
        case ErrorCode::CsvParse: return "E_CSV_PARSE";
        case ErrorCode::NoColumn: return "E_NO_COLUMN";
        case ErrorCode::StdZero: return "E_STD_ZERO";
        case ErrorCode::GeomeanDomain: return "E_GEOMEAN_DOMAIN";
        case ErrorCode::Eval: return "E_EVAL";
    }
    return "E_UNKNOWN";
}

}  // namespace msr
