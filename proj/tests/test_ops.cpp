#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "msr/numfmt.hpp"
#include "msr/ops.hpp"
#include "msr/registry.hpp"
#include "msr/rng.hpp"
#include "support/sort_oracle.hpp"

using namespace msr;

namespace {

Registry two_family_registry() {
    Registry reg;
    reg.register_family("temperature", FamilyKind::Affine);
    reg.register_scale("C", "temperature", 0.0, 1.0);
    reg.register_scale("F", "temperature", -160.0 / 9.0, 5.0 / 9.0);
    reg.register_family("mass", FamilyKind::Linear);
    reg.register_scale("kg", "mass", 0.0, 1.0);
    return reg;
}

// A quantity of the given sort on its family reference scale. Builds the
// struct directly: the dispatch table is a function of sorts alone and must
// hold for every representable operand.
Quantity of_sort(const Sort& s, double v) {
    if (s.is_scalar()) return Quantity::scalar(v);
    return Quantity{v, s, s.family + ".ref"};
}

bool require_code(ErrorCode code, const std::function<void()>& fn) {
    try {
        fn();
    } catch (const MsrError& e) {
        return e.code() == code;
    }
    return false;
}

std::string case_name(BinOp op, const Sort& a, const Sort& b) {
    return a.to_string() + " " + bin_op_symbol(op) + " " + b.to_string();
}

}  // namespace

TEST_CASE("dispatch table matches the independent rule list on all 900 pairings") {
    const auto sorts = sort_oracle::enumeration_sorts();
    REQUIRE(sorts.size() == 15);
    int checked = 0;
    for (BinOp op : sort_oracle::all_ops()) {
        for (const Sort& a : sorts) {
            for (const Sort& b : sorts) {
                auto expected = sort_oracle::expect(op, a, b);
                auto actual = binary_result_sort(op, a, b);
                ++checked;
                INFO(case_name(op, a, b));
                CHECK(expected == actual);
            }
        }
    }
    CHECK(checked == 900);
}

TEST_CASE("apply_binary realizes every table row") {
    Registry reg = two_family_registry();
    const auto sorts = sort_oracle::enumeration_sorts();
    for (BinOp op : sort_oracle::all_ops()) {
        for (const Sort& a : sorts) {
            for (const Sort& b : sorts) {
                auto outcome = binary_result_sort(op, a, b);
                Quantity qa = of_sort(a, 6.0);
                Quantity qb = of_sort(b, 2.0);
                INFO(case_name(op, a, b));
                if (std::holds_alternative<Sort>(outcome)) {
                    Quantity r = apply_binary(reg, op, qa, qb);
                    CHECK(r.sort == std::get<Sort>(outcome));
                    if (r.sort.is_scalar()) {
                        CHECK(r.scale.empty());
                    } else {
                        CHECK(r.scale == r.sort.family + ".ref");
                    }
                } else {
                    CHECK(require_code(std::get<ErrorCode>(outcome),
                                       [&] { apply_binary(reg, op, qa, qb); }));
                }
            }
        }
    }
}

TEST_CASE("spot rows of the table") {
    Sort sc = Sort::scalar();
    Sort pt = Sort::point("temperature");
    Sort d1 = Sort::power_of("temperature", 1);
    Sort d2 = Sort::power_of("temperature", 2);
    Sort md = Sort::power_of("mass", 1);

    CHECK(binary_result_sort(BinOp::Sub, pt, pt) == std::variant<Sort, ErrorCode>{d1});
    CHECK(binary_result_sort(BinOp::Div, pt, pt) ==
          std::variant<Sort, ErrorCode>{ErrorCode::PointRatio});
    CHECK(binary_result_sort(BinOp::Add, pt, pt) ==
          std::variant<Sort, ErrorCode>{ErrorCode::PointSum});
    CHECK(binary_result_sort(BinOp::Add, pt, d1) == std::variant<Sort, ErrorCode>{pt});
    CHECK(binary_result_sort(BinOp::Sub, d1, pt) ==
          std::variant<Sort, ErrorCode>{ErrorCode::PointSum});
    CHECK(binary_result_sort(BinOp::Add, d1, pt) == std::variant<Sort, ErrorCode>{pt});
    CHECK(binary_result_sort(BinOp::Add, pt, d2) ==
          std::variant<Sort, ErrorCode>{ErrorCode::PowerMismatch});
    CHECK(binary_result_sort(BinOp::Mul, d1, d1) == std::variant<Sort, ErrorCode>{d2});
    CHECK(binary_result_sort(BinOp::Div, d1, d1) == std::variant<Sort, ErrorCode>{sc});
    CHECK(binary_result_sort(BinOp::Div, sc, d2) ==
          std::variant<Sort, ErrorCode>{Sort::power_of("temperature", -2)});
    CHECK(binary_result_sort(BinOp::Add, sc, d1) ==
          std::variant<Sort, ErrorCode>{ErrorCode::PowerMismatch});
    CHECK(binary_result_sort(BinOp::Add, sc, pt) ==
          std::variant<Sort, ErrorCode>{ErrorCode::PointSum});
    CHECK(binary_result_sort(BinOp::Add, d1, md) ==
          std::variant<Sort, ErrorCode>{ErrorCode::FamilyMix});
    CHECK(binary_result_sort(BinOp::Mul, d1, md) ==
          std::variant<Sort, ErrorCode>{ErrorCode::FamilyMix});
}

TEST_CASE("apply_binary computes on the reference scale") {
    Registry reg = two_family_registry();

    // 68 F and 20 C are the same temperature
    Quantity diff = apply_binary(reg, BinOp::Sub, reg.make_point(68.0, "F"),
                                 reg.make_point(20.0, "C"));
    CHECK(diff.sort == Sort::power_of("temperature", 1));
    CHECK(diff.scale == "temperature.ref");
    CHECK(diff.value == doctest::Approx(0.0).epsilon(1e-9));

    Quantity gap = apply_binary(reg, BinOp::Sub, reg.make_point(30.0, "C"),
                                 reg.make_point(10.0, "C"));
    CHECK(gap.value == doctest::Approx(20.0));

    // moving a point by a difference given on another scale
    Quantity moved = apply_binary(reg, BinOp::Add, reg.make_point(20.0, "C"),
                                  reg.make_difference(18.0, "F"));
    CHECK(moved.sort == Sort::point("temperature"));
    CHECK(moved.value == doctest::Approx(30.0).epsilon(1e-9));

    Quantity scaled = apply_binary(reg, BinOp::Mul, Quantity::scalar(2.5),
                                   reg.make_difference(10.0, "C"));
    CHECK(scaled.value == doctest::Approx(25.0));
    CHECK(scaled.sort == Sort::power_of("temperature", 1));

    Quantity ratio = apply_binary(reg, BinOp::Div, reg.make_difference(20.0, "C"),
                                  reg.make_difference(18.0, "F"));
    CHECK(ratio.sort.is_scalar());
    CHECK(ratio.value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("value-level refusals") {
    Registry reg = two_family_registry();
    Quantity d = reg.make_difference(5.0, "C");
    Quantity z = reg.make_difference(0.0, "C");

    CHECK(require_code(ErrorCode::DivZero, [&] { apply_binary(reg, BinOp::Div, d, z); }));
    CHECK(require_code(ErrorCode::DivZero, [&] {
        apply_binary(reg, BinOp::Div, Quantity::scalar(1.0), Quantity::scalar(0.0));
    }));
    CHECK(require_code(ErrorCode::Overflow, [&] {
        apply_binary(reg, BinOp::Mul, Quantity::scalar(1e308), Quantity::scalar(1e308));
    }));
}

TEST_CASE("negate") {
    Registry reg = two_family_registry();
    CHECK(negate(Quantity::scalar(3.0)).value == -3.0);

    Quantity d = negate(reg.make_difference(5.0, "C"));
    CHECK(d.value == -5.0);
    CHECK(d.sort == Sort::power_of("temperature", 1));
    CHECK(d.scale == "C");  // kept, not rewritten to the reference scale

    CHECK(require_code(ErrorCode::PointNegate, [&] { negate(reg.make_point(5.0, "C")); }));
}

TEST_CASE("power_int") {
    Registry reg = two_family_registry();

    CHECK(power_int(Quantity::scalar(2.0), 3).value == 8.0);
    Quantity one = power_int(Quantity::scalar(5.0), 0);
    CHECK(one.sort.is_scalar());
    CHECK(one.value == 1.0);

    Quantity sq = power_int(reg.make_difference(3.0, "C"), 2);
    CHECK(sq.sort == Sort::power_of("temperature", 2));
    CHECK(sq.value == 9.0);

    Quantity inv = power_int(reg.make_difference(4.0, "C"), -1);
    CHECK(inv.sort == Sort::power_of("temperature", -1));
    CHECK(inv.value == 0.25);

    // grade arithmetic: (f^2)^3 = f^6, (f^2)^0 collapses to scalar
    CHECK(power_int(reg.make_power(2.0, "C", 2), 3).sort == Sort::power_of("temperature", 6));
    CHECK(power_int(reg.make_power(2.0, "C", 2), 0).sort.is_scalar());

    CHECK(require_code(ErrorCode::PointPower, [&] { power_int(reg.make_point(5.0, "C"), 2); }));
    CHECK(require_code(ErrorCode::DivZero, [&] { power_int(Quantity::scalar(0.0), -1); }));
}

TEST_CASE("sqrt_even_power") {
    Registry reg = two_family_registry();

    CHECK(sqrt_even_power(Quantity::scalar(9.0)).value == 3.0);

    Quantity sd = sqrt_even_power(reg.make_power(100.0, "C", 2));
    CHECK(sd.sort == Sort::power_of("temperature", 1));
    CHECK(sd.value == 10.0);

    CHECK(sqrt_even_power(reg.make_power(16.0, "C", 4)).sort == Sort::power_of("temperature", 2));
    CHECK(sqrt_even_power(reg.make_power(0.25, "C", -2)).sort ==
          Sort::power_of("temperature", -1));

    CHECK(require_code(ErrorCode::OddPowerSqrt,
                       [&] { sqrt_even_power(reg.make_difference(4.0, "C")); }));
    CHECK(require_code(ErrorCode::NegativeSqrt,
                       [&] { sqrt_even_power(Quantity::scalar(-1.0)); }));
    CHECK(require_code(ErrorCode::NegativeSqrt,
                       [&] { sqrt_even_power(reg.make_power(-4.0, "C", 2)); }));
    CHECK(require_code(ErrorCode::PointPower,
                       [&] { sqrt_even_power(reg.make_point(4.0, "C")); }));
}

TEST_CASE("mix of points") {
    Registry reg = two_family_registry();
    std::vector<Quantity> pts = {reg.make_point(10.0, "C"), reg.make_point(20.0, "C"),
                                 reg.make_point(30.0, "C")};
    std::vector<double> w3 = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};

    Quantity m = mix(reg, w3, pts);
    CHECK(m.sort == Sort::point("temperature"));
    CHECK(m.scale == "temperature.ref");
    CHECK(m.value == doctest::Approx(20.0).epsilon(1e-12));

    // negative weights are admissible as long as they sum to one
    std::vector<Quantity> two = {reg.make_point(10.0, "C"), reg.make_point(30.0, "C")};
    std::vector<double> extrapolate = {2.0, -1.0};
    CHECK(mix(reg, extrapolate, two).value == doctest::Approx(-10.0));

    // arguments on different scales agree after conversion: 50 F = 10 C
    std::vector<Quantity> mixed = {reg.make_point(50.0, "F"), reg.make_point(30.0, "C")};
    std::vector<double> half = {0.5, 0.5};
    CHECK(mix(reg, half, mixed).value == doctest::Approx(20.0).epsilon(1e-9));
}

TEST_CASE("mix refusals") {
    Registry reg = two_family_registry();
    std::vector<Quantity> pts = {reg.make_point(10.0, "C"), reg.make_point(20.0, "C")};
    std::vector<double> bad_sum = {0.5, 0.6};
    std::vector<double> half = {0.5, 0.5};
    std::vector<double> one = {1.0};

    CHECK(require_code(ErrorCode::WeightSum, [&] { mix(reg, bad_sum, pts); }));
    CHECK(require_code(ErrorCode::MixSort, [&] {
        std::vector<Quantity> none;
        mix(reg, std::span<const double>{}, none);
    }));
    CHECK(require_code(ErrorCode::MixSort, [&] { mix(reg, one, pts); }));
    CHECK(require_code(ErrorCode::MixSort, [&] {
        std::vector<Quantity> diffs = {reg.make_difference(1.0, "C"), reg.make_difference(2.0, "C")};
        mix(reg, half, diffs);
    }));
    CHECK(require_code(ErrorCode::MixSort, [&] {
        std::vector<Quantity> crossed = {reg.make_point(10.0, "C"),
                                         Quantity::point(1.0, "mass", "mass.ref")};
        mix(reg, half, crossed);
    }));
}

TEST_CASE("operations commute with admissible re-description") {
    Registry reg = two_family_registry();
    SplitMix64 rng(31);
    for (int i = 0; i < 200; ++i) {
        Transformation t = random_admissible("temperature", FamilyKind::Affine, rng.next_u64());
        Quantity a = reg.make_point(rng.next_range(-50.0, 50.0), "temperature.ref");
        Quantity b = reg.make_point(rng.next_range(-50.0, 50.0), "temperature.ref");
        Quantity d = reg.make_difference(rng.next_range(0.5, 20.0), "temperature.ref");

        // (Ta - Tb) = q (a - b)
        Quantity lhs = apply_binary(reg, BinOp::Sub, apply_transformation(t, a),
                                    apply_transformation(t, b));
        Quantity rhs = apply_transformation(t, apply_binary(reg, BinOp::Sub, a, b));
        CHECK(approx_equal(lhs.value, rhs.value, 1e-9, 1e-9));

        // (Ta + Td) = T(a + d)
        Quantity l2 = apply_binary(reg, BinOp::Add, apply_transformation(t, a),
                                   apply_transformation(t, d));
        Quantity r2 = apply_transformation(t, apply_binary(reg, BinOp::Add, a, d));
        CHECK(approx_equal(l2.value, r2.value, 1e-9, 1e-9));

        // a ratio of differences does not move at all
        Quantity d2 = reg.make_difference(rng.next_range(0.5, 20.0), "temperature.ref");
        Quantity q1 = apply_binary(reg, BinOp::Div, d, d2);
        Quantity q2 = apply_binary(reg, BinOp::Div, apply_transformation(t, d),
                                   apply_transformation(t, d2));
        CHECK(approx_equal(q1.value, q2.value, 1e-9, 1e-12));
    }
}

TEST_CASE("difference closure under addition") {
    Registry reg = two_family_registry();
    SplitMix64 rng(77);
    for (int i = 0; i < 100; ++i) {
        Quantity a = reg.make_point(rng.next_range(-50.0, 50.0), "C");
        Quantity b = reg.make_point(rng.next_range(-50.0, 50.0), "F");
        Quantity c = reg.make_point(rng.next_range(-50.0, 50.0), "C");
        // (a - b) + (b - c) = a - c
        Quantity ab = apply_binary(reg, BinOp::Sub, a, b);
        Quantity bc = apply_binary(reg, BinOp::Sub, b, c);
        Quantity sum = apply_binary(reg, BinOp::Add, ab, bc);
        Quantity ac = apply_binary(reg, BinOp::Sub, a, c);
        CHECK(approx_equal(sum.value, ac.value, 1e-9, 1e-9));
        CHECK(sum.sort == ac.sort);
    }
}
