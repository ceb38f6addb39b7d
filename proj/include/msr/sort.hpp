#pragma once

#include <string>
#include <utility>

namespace msr {

// The semantic type of a quantity.
//
//   Scalar       -- a plain real, attached to no measured property
//   Point(f)     -- a point of an affine family f (no absolute zero)
//   Power(f, k)  -- the k-th power of f's difference unit; k = 1 is a
//                   difference-vector, k = 2 a squared difference, k = -1 a
//                   reciprocal difference, and so on. k is never 0: any
//                   construction that would produce exponent 0 collapses to
//                   Scalar.
enum class SortTag { Scalar, Point, Power };

struct Sort {
    SortTag tag = SortTag::Scalar;
    std::string family;  // empty iff Scalar
    int power = 0;       // nonzero iff Power

    static Sort scalar() { return Sort{}; }

    static Sort point(std::string family_name) {
        return Sort{SortTag::Point, std::move(family_name), 0};
    }

    // Exponent 0 normalizes to Scalar (and drops the family).
    static Sort power_of(std::string family_name, int k) {
        if (k == 0) return scalar();
        return Sort{SortTag::Power, std::move(family_name), k};
    }

    bool is_scalar() const { return tag == SortTag::Scalar; }
    bool is_point() const { return tag == SortTag::Point; }
    bool is_power() const { return tag == SortTag::Power; }

    friend bool operator==(const Sort&, const Sort&) = default;

    // "scalar", "point(temperature)", "power(temperature,2)"
    std::string to_string() const;
};

}  // namespace msr
