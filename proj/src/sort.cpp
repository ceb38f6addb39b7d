#include "msr/sort.hpp"

#include "msr/numfmt.hpp"
#include "msr/quantity.hpp"

namespace msr {

std::string Sort::to_string() const {
    switch (tag) {
        case SortTag::Scalar: return "scalar";
        case SortTag::Point: return "point(" + family + ")";
        case SortTag::Power: return "power(" + family + "," + std::to_string(power) + ")";
    }
    return "scalar";
}

std::string Quantity::to_string() const {
    std::string out = format_double(value);
    if (sort.is_point()) {
        out += " @" + scale;
    } else if (sort.is_power()) {
        out += " d@" + scale;
        if (sort.power != 1) out += "^" + std::to_string(sort.power);
    }
    out += " : " + sort.to_string();
    return out;
}

}  // namespace msr
