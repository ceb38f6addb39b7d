#pragma once

#include <string>
#include <utility>

#include "msr/sort.hpp"

namespace msr {

// A real value together with its sort and, for family-bearing sorts, the
// scale its coordinate is expressed in. Quantities are immutable values;
// every operation returns a fresh one.
struct Quantity {
    double value = 0.0;
    Sort sort{};
    std::string scale;  // non-empty iff sort is Point or Power

    static Quantity scalar(double v) { return Quantity{v, Sort::scalar(), {}}; }

    static Quantity point(double v, std::string family, std::string scale_name) {
        return Quantity{v, Sort::point(std::move(family)), std::move(scale_name)};
    }

    static Quantity power(double v, std::string family, int k, std::string scale_name) {
        if (k == 0) return scalar(v);
        return Quantity{v, Sort::power_of(std::move(family), k), std::move(scale_name)};
    }

    static Quantity difference(double v, std::string family, std::string scale_name) {
        return power(v, std::move(family), 1, std::move(scale_name));
    }

    // "42 : scalar", "20 @C : point(temperature)", "10 d@C : power(temperature,1)"
    std::string to_string() const;
};

}  // namespace msr
