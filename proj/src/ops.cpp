#include "msr/ops.hpp"

#include <cmath>
#include <string>

#include "msr/numfmt.hpp"

namespace msr {

namespace {

bool same_family(const Sort& a, const Sort& b) { return a.family == b.family; }

ErrorCode family_mix_error() { return ErrorCode::FamilyMix; }

std::variant<Sort, ErrorCode> additive_result(BinOp op, const Sort& a, const Sort& b) {
    if (a.is_scalar() && b.is_scalar()) return Sort::scalar();

    // Exactly one scalar side: grade mismatch, or point misuse.
    if (a.is_scalar() || b.is_scalar()) {
        const Sort& other = a.is_scalar() ? b : a;
        return other.is_point() ? ErrorCode::PointSum : ErrorCode::PowerMismatch;
    }

    if (!same_family(a, b)) return family_mix_error();

    if (a.is_point() && b.is_point()) {
        if (op == BinOp::Sub) return Sort::power_of(a.family, 1);
        return ErrorCode::PointSum;
    }
    if (a.is_point()) {  // point +- power
        if (b.power == 1) return a;
        return ErrorCode::PowerMismatch;
    }
    if (b.is_point()) {  // power + point is a point; power - point is undefined
        if (op == BinOp::Sub) return ErrorCode::PointSum;
        if (a.power == 1) return b;
        return ErrorCode::PowerMismatch;
    }
    // power +- power
    if (a.power != b.power) return ErrorCode::PowerMismatch;
    return a;
}

std::variant<Sort, ErrorCode> multiplicative_result(const Sort& a, const Sort& b) {
    if (a.is_point() || b.is_point()) return ErrorCode::PointSum;
    if (a.is_scalar() && b.is_scalar()) return Sort::scalar();
    if (a.is_scalar()) return b;
    if (b.is_scalar()) return a;
    if (!same_family(a, b)) return family_mix_error();
    return Sort::power_of(a.family, a.power + b.power);
}

std::variant<Sort, ErrorCode> division_result(const Sort& a, const Sort& b) {
    if (a.is_point() || b.is_point()) return ErrorCode::PointRatio;
    if (a.is_scalar() && b.is_scalar()) return Sort::scalar();
    if (b.is_scalar()) return a;
    if (a.is_scalar()) return Sort::power_of(b.family, -b.power);
    if (!same_family(a, b)) return family_mix_error();
    return Sort::power_of(a.family, a.power - b.power);
}

[[noreturn]] void throw_table_error(ErrorCode code, BinOp op, const Sort& a, const Sort& b) {
    std::string msg;
    switch (code) {
        case ErrorCode::PointRatio:
            msg = "ratio involving a point is undefined";
            break;
        case ErrorCode::PointSum:
            msg = "operation not defined on points; only point - point and point +- difference exist";
            break;
        case ErrorCode::FamilyMix:
            msg = "operands belong to different families";
            break;
        case ErrorCode::PowerMismatch:
            msg = "additive operands must share the same grade";
            break;
        default:
            msg = "operation undefined";
            break;
    }
    throw MsrError(code, msg + " (" + a.to_string() + " " + bin_op_symbol(op) + " " +
                             b.to_string() + ")");
}

double checked_value(double v) {
    if (!std::isfinite(v)) {
        throw MsrError(ErrorCode::Overflow, "result is not a finite number");
    }
    return v;
}

}  // namespace

const char* bin_op_symbol(BinOp op) {
    switch (op) {
        case BinOp::Add: return "+";
        case BinOp::Sub: return "-";
        case BinOp::Mul: return "*";
        case BinOp::Div: return "/";
    }
    return "?";
}

std::variant<Sort, ErrorCode> binary_result_sort(BinOp op, const Sort& a, const Sort& b) {
    switch (op) {
        case BinOp::Add:
        case BinOp::Sub: return additive_result(op, a, b);
        case BinOp::Mul: return multiplicative_result(a, b);
        case BinOp::Div: return division_result(a, b);
    }
    return ErrorCode::PointSum;
}

Quantity apply_binary(const Registry& reg, BinOp op, const Quantity& a, const Quantity& b) {
    auto outcome = binary_result_sort(op, a.sort, b.sort);
    if (std::holds_alternative<ErrorCode>(outcome)) {
        throw_table_error(std::get<ErrorCode>(outcome), op, a.sort, b.sort);
    }
    const Sort& result_sort = std::get<Sort>(outcome);

    Quantity lhs = reg.to_reference(a);
    Quantity rhs = reg.to_reference(b);

    double value = 0.0;
    switch (op) {
        case BinOp::Add: value = lhs.value + rhs.value; break;
        case BinOp::Sub: value = lhs.value - rhs.value; break;
        case BinOp::Mul: value = lhs.value * rhs.value; break;
        case BinOp::Div:
            if (rhs.value == 0.0) {
                throw MsrError(ErrorCode::DivZero, "division by zero");
            }
            value = lhs.value / rhs.value;
            break;
    }
    value = checked_value(value);

    if (result_sort.is_scalar()) return Quantity::scalar(value);
    return Quantity{value, result_sort, reg.family(result_sort.family).ref_scale};
}

Quantity negate(const Quantity& a) {
    if (a.sort.is_point()) {
        throw MsrError(ErrorCode::PointNegate,
                       "a point cannot be negated; subtract it from another point instead");
    }
    Quantity out = a;
    out.value = -a.value;
    return out;
}

Quantity power_int(const Quantity& a, int n) {
    if (a.sort.is_point()) {
        throw MsrError(ErrorCode::PointPower, "a point cannot be raised to a power");
    }
    if (n < 0 && a.value == 0.0) {
        throw MsrError(ErrorCode::DivZero, "zero cannot be raised to a negative power");
    }
    double value = checked_value(int_pow(a.value, n));
    if (a.sort.is_scalar()) return Quantity::scalar(value);
    return Quantity::power(value, a.sort.family, a.sort.power * n, a.scale);
}

Quantity sqrt_even_power(const Quantity& a) {
    if (a.sort.is_point()) {
        throw MsrError(ErrorCode::PointPower, "a point has no square root");
    }
    if (a.sort.is_power() && a.sort.power % 2 != 0) {
        throw MsrError(ErrorCode::OddPowerSqrt,
                       "square root of an odd power is not a whole power (" +
                           a.sort.to_string() + ")");
    }
    if (a.value < 0.0) {
        throw MsrError(ErrorCode::NegativeSqrt,
                       "square root of a negative value (" + format_double(a.value) + ")");
    }
    double value = std::sqrt(a.value);
    if (a.sort.is_scalar()) return Quantity::scalar(value);
    return Quantity::power(value, a.sort.family, a.sort.power / 2, a.scale);
}

Quantity mix(const Registry& reg, std::span<const double> weights,
             std::span<const Quantity> points) {
    if (points.empty() || weights.size() != points.size()) {
        throw MsrError(ErrorCode::MixSort, "mix needs one weight per point and at least one point");
    }
    const Sort& first = points.front().sort;
    if (!first.is_point()) {
        throw MsrError(ErrorCode::MixSort,
                       "mix combines points; got " + first.to_string());
    }
    double weight_sum = 0.0;
    for (double w : weights) weight_sum += w;
    if (std::fabs(weight_sum - 1.0) > 1e-9) {
        throw MsrError(ErrorCode::WeightSum,
                       "mix weights must sum to 1, got " + format_double(weight_sum));
    }
    double value = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Quantity& p = points[i];
        if (!p.sort.is_point() || p.sort.family != first.family) {
            throw MsrError(ErrorCode::MixSort, "mix operands must be points of one family; got " +
                                                   p.sort.to_string());
        }
        value += weights[i] * reg.to_reference(p).value;
    }
    return Quantity::point(checked_value(value), first.family,
                           reg.family(first.family).ref_scale);
}

}  // namespace msr
