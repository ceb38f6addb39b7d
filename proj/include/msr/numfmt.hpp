#pragma once

#include <string>

namespace msr {

// Shortest decimal form that round-trips through double parsing.
std::string format_double(double v);

// Fixed 17-significant-digit form, used where the wire format pins the
// precision (registry export).
std::string format_double_17(double v);

// Approximate equality: |a - b| <= max(rel * max(|a|,|b|), abs).
bool approx_equal(double a, double b, double rel, double abs);

// Integer power by square-and-multiply. Used instead of std::pow so the
// same bits come out on every libm.
double int_pow(double base, int exp);

}  // namespace msr
