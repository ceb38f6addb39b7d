#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "msr/errors.hpp"
#include "msr/quantity.hpp"

namespace msr {

// What structure a measured property has.
//
//   affine    -- no absolute zero: points, differences, powers
//   linear    -- absolute zero but arbitrary unit: differences and powers only
//   absolute  -- absolute zero and unit: plain scalars
enum class FamilyKind { Affine, Linear, Absolute };

const char* family_kind_name(FamilyKind kind);                  // "affine" | ...
std::optional<FamilyKind> parse_family_kind(const std::string& text);

struct Family {
    std::string name;
    FamilyKind kind = FamilyKind::Affine;
    std::optional<std::string> owner;  // annotation only, e.g. whose preference
    std::string ref_scale;             // "<name>.ref", registered implicitly
};

// A named coordinate system on a family. A reading x on this scale sits at
// reference coordinate offset + factor * x; a Power(.,k) coordinate
// multiplies by factor^k.
struct Scale {
    std::string name;
    std::string family;
    double offset = 0.0;
    double factor = 1.0;
};

// An admissible change of scale: x -> offset + factor * x on reference
// coordinates, acting on quantities by sort. Lives in the group of scale
// maps, never in the value algebra.
struct Transformation {
    std::string family;
    double offset = 0.0;
    double factor = 1.0;
};

// Applies t1 first, then t2. Same family required.
Transformation compose(const Transformation& t2, const Transformation& t1);
Transformation invert(const Transformation& t);
Transformation identity_transformation(std::string family);

// Acts by sort: Point x -> p + q*x, Power(.,k) x -> q^k * x, Scalar
// unchanged. The scale tag is untouched: a transformation re-describes the
// measured system, it does not move the reading to another named scale.
Quantity apply_transformation(const Transformation& t, const Quantity& a);

// Samples an admissible transformation for the given kind. Affine: factor
// log-uniform on [0.1, 10], offset uniform on [-100, 100]; linear: offset 0;
// absolute: identity. Deterministic in (kind, seed).
Transformation random_admissible(std::string family, FamilyKind kind, std::uint64_t seed);

// Families, their named scales, and conversions. Built once while loading
// declarations, then treated as immutable.
class Registry {
public:
    const Family& register_family(const std::string& name, FamilyKind kind,
                                  std::optional<std::string> owner = std::nullopt);
    const Scale& register_scale(const std::string& name, const std::string& family,
                                double offset, double factor);

    const Family* find_family(const std::string& name) const;
    const Scale* find_scale(const std::string& name) const;
    const Family& family(const std::string& name) const;  // throws E_UNKNOWN_FAMILY
    const Scale& scale(const std::string& name) const;    // throws E_UNKNOWN_SCALE

    const std::vector<Family>& families() const { return families_; }
    const std::vector<Scale>& scales() const { return scales_; }

    // Re-expresses a point or power quantity on another scale of its family.
    Quantity convert(const Quantity& a, const std::string& target_scale) const;
    Quantity to_reference(const Quantity& a) const;

    // Literal constructors that enforce the kind rules.
    Quantity make_point(double value, const std::string& scale_name) const;
    Quantity make_difference(double value, const std::string& scale_name) const;
    Quantity make_power(double value, const std::string& scale_name, int k) const;

    // The change-of-scale map from `from` to `to` expressed as a
    // transformation on readings.
    Transformation conversion_map(const std::string& from, const std::string& to) const;

private:
    std::vector<Family> families_;
    std::vector<Scale> scales_;
    std::unordered_map<std::string, std::size_t> family_index_;
    std::unordered_map<std::string, std::size_t> scale_index_;
};

}  // namespace msr
