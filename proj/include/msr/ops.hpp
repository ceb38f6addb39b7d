#pragma once

#include <span>
#include <variant>

#include "msr/quantity.hpp"
#include "msr/registry.hpp"
#include "msr/sort.hpp"

namespace msr {

enum class BinOp { Add, Sub, Mul, Div };

const char* bin_op_symbol(BinOp op);

// The dispatch table on sorts alone, total over every ordered pair: each
// pairing either has exactly one result sort or exactly one error code.
//
//   Scalar o Scalar              -> Scalar            (all four operators)
//   Power(f,k) +- Power(f,k)     -> Power(f,k)
//   Power(f,k) *  Power(f,m)     -> Power(f,k+m)      (k+m = 0 -> Scalar)
//   Power(f,k) /  Power(f,m)     -> Power(f,k-m)      (k = m -> Scalar)
//   Scalar * Power(f,k)          -> Power(f,k)        (both orders)
//   Power(f,k) / Scalar          -> Power(f,k)
//   Scalar / Power(f,k)          -> Power(f,-k)
//   Point(f) - Point(f)          -> Power(f,1)
//   Point(f) +- Power(f,1)       -> Point(f)
//   Power(f,1) + Point(f)        -> Point(f)
//
// Everything else is one of: E_POINT_RATIO (/ touching any point),
// E_POINT_SUM (point misuse under +, -, *), E_FAMILY_MIX (two families in
// one operation), E_POWER_MISMATCH (additive grade mismatch).
std::variant<Sort, ErrorCode> binary_result_sort(BinOp op, const Sort& a, const Sort& b);

// Value-level application. Operands of a family are rewritten to that
// family's reference scale before dispatch, so results of family-bearing
// sorts always read on the reference scale. Throws MsrError on any table
// error, E_DIV_ZERO on a zero divisor, E_OVERFLOW on a non-finite result.
Quantity apply_binary(const Registry& reg, BinOp op, const Quantity& a, const Quantity& b);

// Additive inverse; defined for Scalar and Power sorts only (an affine
// space has no zero to reflect through). Scale tag kept.
Quantity negate(const Quantity& a);

// a^n with exponent arithmetic on the sort: Power(f,k)^n -> Power(f,k*n),
// exponent 0 normalizing to Scalar. Undefined on points.
Quantity power_int(const Quantity& a, int n);

// Square root of a Scalar or an even Power: Power(f,2k) -> Power(f,k).
// Needed so a standard deviation of differences is itself a difference.
Quantity sqrt_even_power(const Quantity& a);

// Affine combination of points of one family; weights must sum to 1 within
// 1e-9. Result reads on the family reference scale.
Quantity mix(const Registry& reg, std::span<const double> weights,
             std::span<const Quantity> points);

}  // namespace msr
