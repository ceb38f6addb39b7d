#include "msr/registry.hpp"

#include <cmath>

#include "msr/numfmt.hpp"
#include "msr/rng.hpp"

namespace msr {

const char* family_kind_name(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::Affine: return "affine";
        case FamilyKind::Linear: return "linear";
        case FamilyKind::Absolute: return "absolute";
    }
    return "affine";
}

std::optional<FamilyKind> parse_family_kind(const std::string& text) {
    if (text == "affine") return FamilyKind::Affine;
    if (text == "linear") return FamilyKind::Linear;
    if (text == "absolute") return FamilyKind::Absolute;
    return std::nullopt;
}

Transformation compose(const Transformation& t2, const Transformation& t1) {
    if (t2.family != t1.family) {
        throw MsrError(ErrorCode::FamilyMix, "cannot compose transformations of family '" +
                                                 t2.family + "' and family '" + t1.family + "'");
    }
    return Transformation{t1.family, t2.offset + t2.factor * t1.offset, t2.factor * t1.factor};
}

Transformation invert(const Transformation& t) {
    return Transformation{t.family, -t.offset / t.factor, 1.0 / t.factor};
}

Transformation identity_transformation(std::string family) {
    return Transformation{std::move(family), 0.0, 1.0};
}

Quantity apply_transformation(const Transformation& t, const Quantity& a) {
    switch (a.sort.tag) {
        case SortTag::Scalar:
            return a;
        case SortTag::Point: {
            if (a.sort.family != t.family) {
                throw MsrError(ErrorCode::FamilyMix,
                               "transformation of family '" + t.family +
                                   "' applied to quantity of family '" + a.sort.family + "'");
            }
            Quantity out = a;
            out.value = t.offset + t.factor * a.value;
            return out;
        }
        case SortTag::Power: {
            if (a.sort.family != t.family) {
                throw MsrError(ErrorCode::FamilyMix,
                               "transformation of family '" + t.family +
                                   "' applied to quantity of family '" + a.sort.family + "'");
            }
            Quantity out = a;
            out.value = int_pow(t.factor, a.sort.power) * a.value;
            return out;
        }
    }
    return a;
}

Transformation random_admissible(std::string family, FamilyKind kind, std::uint64_t seed) {
    SplitMix64 rng(seed);
    switch (kind) {
        case FamilyKind::Absolute:
            return Transformation{std::move(family), 0.0, 1.0};
        case FamilyKind::Linear: {
            double factor = std::pow(10.0, rng.next_range(-1.0, 1.0));
            return Transformation{std::move(family), 0.0, factor};
        }
        case FamilyKind::Affine: {
            double factor = std::pow(10.0, rng.next_range(-1.0, 1.0));
            double offset = rng.next_range(-100.0, 100.0);
            return Transformation{std::move(family), offset, factor};
        }
    }
    return identity_transformation(std::move(family));
}

const Family& Registry::register_family(const std::string& name, FamilyKind kind,
                                        std::optional<std::string> owner) {
    if (family_index_.count(name)) {
        throw MsrError(ErrorCode::DupFamily, "family '" + name + "' is already registered");
    }
    Family fam;
    fam.name = name;
    fam.kind = kind;
    fam.owner = std::move(owner);
    fam.ref_scale = name + ".ref";
    family_index_[name] = families_.size();
    families_.push_back(std::move(fam));

    scale_index_[families_.back().ref_scale] = scales_.size();
    scales_.push_back(Scale{families_.back().ref_scale, name, 0.0, 1.0});
    return families_.back();
}

const Scale& Registry::register_scale(const std::string& name, const std::string& family_name,
                                      double offset, double factor) {
    const Family& fam = family(family_name);
    if (scale_index_.count(name)) {
        throw MsrError(ErrorCode::DupScale, "scale '" + name + "' is already registered");
    }
    if (fam.kind == FamilyKind::Absolute) {
        throw MsrError(ErrorCode::ScaleOnAbsolute,
                       "family '" + family_name + "' is absolute and admits no named scales");
    }
    if (!(factor > 0.0) || !std::isfinite(factor)) {
        throw MsrError(ErrorCode::BadFactor, "scale factor must be positive and finite, got " +
                                                 format_double(factor));
    }
    if (fam.kind == FamilyKind::Linear && offset != 0.0) {
        throw MsrError(ErrorCode::OffsetOnLinear,
                       "family '" + family_name +
                           "' is linear; its zero is fixed and scales cannot carry an offset");
    }
    if (!std::isfinite(offset)) {
        throw MsrError(ErrorCode::BadFactor, "scale offset must be finite");
    }
    scale_index_[name] = scales_.size();
    scales_.push_back(Scale{name, family_name, offset, factor});
    return scales_.back();
}

const Family* Registry::find_family(const std::string& name) const {
    auto it = family_index_.find(name);
    return it == family_index_.end() ? nullptr : &families_[it->second];
}

const Scale* Registry::find_scale(const std::string& name) const {
    auto it = scale_index_.find(name);
    return it == scale_index_.end() ? nullptr : &scales_[it->second];
}

const Family& Registry::family(const std::string& name) const {
    const Family* fam = find_family(name);
    if (!fam) throw MsrError(ErrorCode::UnknownFamily, "unknown family '" + name + "'");
    return *fam;
}

const Scale& Registry::scale(const std::string& name) const {
    const Scale* sc = find_scale(name);
    if (!sc) throw MsrError(ErrorCode::UnknownScale, "unknown scale '" + name + "'");
    return *sc;
}

Quantity Registry::convert(const Quantity& a, const std::string& target_scale) const {
    if (a.sort.is_scalar()) {
        throw MsrError(ErrorCode::ScalarConvert, "scalars are scale-free and cannot be converted");
    }
    const Scale& src = scale(a.scale);
    const Scale& dst = scale(target_scale);
    if (dst.family != a.sort.family) {
        throw MsrError(ErrorCode::FamilyMix, "cannot convert a quantity of family '" +
                                                 a.sort.family + "' to scale '" + target_scale +
                                                 "' of family '" + dst.family + "'");
    }
    Quantity out = a;
    out.scale = dst.name;
    if (a.sort.is_point()) {
        out.value = ((src.offset - dst.offset) + src.factor * a.value) / dst.factor;
    } else {
        out.value = int_pow(src.factor / dst.factor, a.sort.power) * a.value;
    }
    return out;
}

Quantity Registry::to_reference(const Quantity& a) const {
    if (a.sort.is_scalar()) return a;
    return convert(a, family(a.sort.family).ref_scale);
}

Quantity Registry::make_point(double value, const std::string& scale_name) const {
    const Scale& sc = scale(scale_name);
    const Family& fam = family(sc.family);
    if (fam.kind != FamilyKind::Affine) {
        throw MsrError(ErrorCode::RoleKind, "point readings need an affine family; '" + fam.name +
                                                "' is " + family_kind_name(fam.kind));
    }
    return Quantity::point(value, fam.name, sc.name);
}

Quantity Registry::make_difference(double value, const std::string& scale_name) const {
    return make_power(value, scale_name, 1);
}

Quantity Registry::make_power(double value, const std::string& scale_name, int k) const {
    const Scale& sc = scale(scale_name);
    const Family& fam = family(sc.family);
    if (fam.kind == FamilyKind::Absolute) {
        throw MsrError(ErrorCode::RoleKind,
                       "family '" + fam.name + "' is absolute; its values are plain scalars");
    }
    return Quantity::power(value, fam.name, k, sc.name);
}

Transformation Registry::conversion_map(const std::string& from, const std::string& to) const {
    const Scale& src = scale(from);
    const Scale& dst = scale(to);
    if (src.family != dst.family) {
        throw MsrError(ErrorCode::FamilyMix, "scales '" + from + "' and '" + to +
                                                 "' belong to different families");
    }
    // reading on `from` -> reference -> reading on `to`
    Transformation to_ref{src.family, src.offset, src.factor};
    Transformation dst_to_ref{dst.family, dst.offset, dst.factor};
    return compose(invert(dst_to_ref), to_ref);
}

}  // namespace msr
