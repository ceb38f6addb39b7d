#include "msr/numfmt.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace msr {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string format_double_17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

bool approx_equal(double a, double b, double rel, double abs) {
    double diff = std::fabs(a - b);
    double scale = std::fmax(std::fabs(a), std::fabs(b));
    return diff <= std::fmax(rel * scale, abs);
}

double int_pow(double base, int exp) {
    if (exp < 0) return 1.0 / int_pow(base, -exp);
    double out = 1.0;
    double acc = base;
    for (int e = exp; e > 0; e >>= 1) {
        if (e & 1) out *= acc;
        acc *= acc;
    }
    return out;
}

}  // namespace msr
