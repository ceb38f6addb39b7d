#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "msr/checker.hpp"
#include "msr/evaluator.hpp"
#include "msr/numfmt.hpp"
#include "msr/parser.hpp"
#include "msr/registry.hpp"
#include "msr/rng.hpp"
#include "msr/stats.hpp"

using namespace msr;

namespace {

Registry base_registry() {
    Registry reg;
    reg.register_family("temperature", FamilyKind::Affine);
    reg.register_scale("C", "temperature", 0.0, 1.0);
    reg.register_scale("F", "temperature", -160.0 / 9.0, 5.0 / 9.0);
    reg.register_family("mass", FamilyKind::Linear);
    reg.register_scale("kg", "mass", 0.0, 1.0);
    reg.register_family("count", FamilyKind::Absolute);
    return reg;
}

bool require_code(ErrorCode code, const std::function<void()>& fn) {
    try {
        fn();
    } catch (const MsrError& e) {
        return e.code() == code;
    }
    return false;
}

std::string thrown_message(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const MsrError& e) {
        return e.what();
    }
    return {};
}

const StatEntry& entry_of(const StatReport& rep, const std::string& name) {
    for (const StatEntry& e : rep.entries) {
        if (e.name == name) return e;
    }
    static StatEntry missing;
    FAIL("no entry named ", name);
    return missing;
}

void check_ok_scalar(const StatEntry& e, double value) {
    CHECK(e.ok);
    CHECK(e.sort == Sort::scalar());
    CHECK(e.scale.empty());
    REQUIRE(e.values.size() == 1);
    CHECK(e.values[0] == doctest::Approx(value).epsilon(1e-12));
}

void check_ok_on_scale(const StatEntry& e, const Sort& sort, const std::string& scale,
                       double value) {
    CHECK(e.ok);
    CHECK(e.sort == sort);
    CHECK(e.scale == scale);
    REQUIRE(e.values.size() == 1);
    CHECK(e.values[0] == doctest::Approx(value).epsilon(1e-12));
}

void check_refused(const StatEntry& e, ErrorCode code) {
    CHECK_FALSE(e.ok);
    REQUIRE(e.code.has_value());
    CHECK(*e.code == code);
    CHECK_FALSE(e.cite.empty());
    CHECK(e.values.empty());
}

constexpr const char* kTempsCsv =
    "site,temp,when\n"
    "north,10,mon\n"
    "mid,20,tue\n"
    "south,30,wed\n";

}  // namespace

TEST_CASE("the statistic catalog is fixed") {
    const std::vector<std::string> expected = {"count",    "mean", "median", "min",
                                               "max",      "range", "variance", "std",
                                               "cv",       "geomean", "sum",  "zscores"};
    CHECK(stat_catalog() == expected);
}

TEST_CASE("loading a column picks the named field and keeps its metadata") {
    Registry reg = base_registry();
    Column col = load_column(kTempsCsv, "temp", "temperature", "C", Role::Point, reg);
    CHECK(col.name == "temp");
    CHECK(col.family == "temperature");
    CHECK(col.scale == "C");
    CHECK(col.role == Role::Point);
    CHECK(col.values == std::vector<double>{10.0, 20.0, 30.0});

    // surrounding whitespace in cells and headers is ignored
    Column padded = load_column("  a , b \n 1 , 2.5 \n", "b", "mass", "kg",
                                Role::Difference, reg);
    CHECK(padded.values == std::vector<double>{2.5});
}

TEST_CASE("column loading refusals and parse errors") {
    Registry reg = base_registry();
    auto load = [&](const std::string& text, const std::string& column,
                    const std::string& family, const std::string& scale, Role role) {
        return [&reg, text, column, family, scale, role] {
            load_column(text, column, family, scale, role, reg);
        };
    };

    CHECK(require_code(ErrorCode::NoColumn,
                       load(kTempsCsv, "pressure", "temperature", "C", Role::Point)));
    CHECK(require_code(ErrorCode::UnknownFamily,
                       load(kTempsCsv, "temp", "humidity", "C", Role::Point)));
    CHECK(require_code(ErrorCode::UnknownScale,
                       load(kTempsCsv, "temp", "temperature", "K", Role::Point)));
    CHECK(require_code(ErrorCode::FamilyMix,
                       load(kTempsCsv, "temp", "mass", "C", Role::Difference)));

    // point readings need an affine family: linear and absolute both refuse
    CHECK(require_code(ErrorCode::RoleKind,
                       load(kTempsCsv, "temp", "mass", "kg", Role::Point)));
    CHECK(require_code(ErrorCode::RoleKind,
                       load(kTempsCsv, "temp", "count", "count.ref", Role::Point)));

    // a non-numeric cell is reported with its file line
    std::string bad = thrown_message(
        load("site,temp\nnorth,10\nmid,warm\n", "temp", "temperature", "C", Role::Point));
    CHECK(bad.find("line 3") != std::string::npos);
    CHECK(bad.find("'warm'") != std::string::npos);
    CHECK(require_code(ErrorCode::CsvParse,
                       load("site,temp\nnorth,10\nmid,warm\n", "temp", "temperature", "C",
                            Role::Point)));

    // blank lines are skipped but still count toward file line numbers
    std::string blank = thrown_message(
        load("temp\n10\n\nwarm\n", "temp", "temperature", "C", Role::Point));
    CHECK(blank.find("line 4") != std::string::npos);

    // a record with the wrong field count names the offending line
    std::string ragged = thrown_message(
        load("a,b\n1,2,3\n", "a", "temperature", "C", Role::Point));
    CHECK(require_code(ErrorCode::CsvParse,
                       load("a,b\n1,2,3\n", "a", "temperature", "C", Role::Point)));
    CHECK(ragged.find("line 2") != std::string::npos);
    CHECK(ragged.find("3 fields") != std::string::npos);

    // values must be finite doubles
    CHECK(require_code(ErrorCode::CsvParse,
                       load("x\n1e400\n", "x", "temperature", "C", Role::Point)));

    // structural failures: no header, header only, unterminated quote
    CHECK(require_code(ErrorCode::CsvParse,
                       load("", "temp", "temperature", "C", Role::Point)));
    CHECK(require_code(ErrorCode::CsvParse,
                       load("site,temp\n", "temp", "temperature", "C", Role::Point)));
    CHECK(require_code(ErrorCode::CsvParse,
                       load("site,temp\n\"north,10\n", "temp", "temperature", "C",
                            Role::Point)));
}

TEST_CASE("quoted fields, embedded commas, and CRLF line endings") {
    Registry reg = base_registry();
    std::string csv =
        "\"site name\",\"temp\",notes\r\n"
        "\"north, upper\",10,\"said \"\"cold\"\"\"\r\n"
        "mid,20,fine\r\n"
        "\"south\",\"30\",ok\r\n";
    Column col = load_column(csv, "temp", "temperature", "C", Role::Point, reg);
    CHECK(col.values == std::vector<double>{10.0, 20.0, 30.0});

    // the quoted header with a comma is addressable by its unquoted text... as a
    // numeric column it fails on the first cell, proving it was actually found
    CHECK(require_code(ErrorCode::CsvParse, [&] {
        load_column(csv, "site name", "temperature", "C", Role::Point, reg);
    }));
}

TEST_CASE("report on a celsius point column") {
    Registry reg = base_registry();
    Column col = load_column(kTempsCsv, "temp", "temperature", "C", Role::Point, reg);
    StatReport rep = report(col, reg);

    CHECK(rep.column == "temp");
    CHECK(rep.family == "temperature");
    CHECK(rep.scale == "C");
    CHECK(rep.role == Role::Point);
    REQUIRE(rep.entries.size() == stat_catalog().size());
    for (std::size_t i = 0; i < rep.entries.size(); ++i) {
        CHECK(rep.entries[i].name == stat_catalog()[i]);
    }

    Sort point = Sort::point("temperature");
    Sort diff = Sort::power_of("temperature", 1);
    Sort squared = Sort::power_of("temperature", 2);

    check_ok_scalar(entry_of(rep, "count"), 3.0);
    check_ok_on_scale(entry_of(rep, "mean"), point, "C", 20.0);
    check_ok_on_scale(entry_of(rep, "median"), point, "C", 20.0);
    check_ok_on_scale(entry_of(rep, "min"), point, "C", 10.0);
    check_ok_on_scale(entry_of(rep, "max"), point, "C", 30.0);
    check_ok_on_scale(entry_of(rep, "range"), diff, "C", 20.0);
    check_ok_on_scale(entry_of(rep, "variance"), squared, "C", 100.0);
    check_ok_on_scale(entry_of(rep, "std"), diff, "C", 10.0);

    check_refused(entry_of(rep, "cv"), ErrorCode::PointRatio);
    CHECK(entry_of(rep, "cv").cite.find("ratios") != std::string::npos);
    check_refused(entry_of(rep, "geomean"), ErrorCode::PointSum);
    CHECK(entry_of(rep, "geomean").cite.find("products") != std::string::npos);
    check_refused(entry_of(rep, "sum"), ErrorCode::PointSum);
    CHECK(entry_of(rep, "sum").cite.find("sum") != std::string::npos);

    const StatEntry& z = entry_of(rep, "zscores");
    CHECK(z.ok);
    CHECK(z.sort == Sort::scalar());
    CHECK(z.scale.empty());
    REQUIRE(z.values.size() == 3);
    CHECK(z.values[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(z.values[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(z.values[2] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("a fahrenheit column reports on its own scale") {
    Registry reg = base_registry();
    std::string csv = "site,temp\nn,50\nm,68\ns,86\n";
    Column col = load_column(csv, "temp", "temperature", "F", Role::Point, reg);
    StatReport rep = report(col, reg);

    check_ok_on_scale(entry_of(rep, "mean"), Sort::point("temperature"), "F", 68.0);
    check_ok_on_scale(entry_of(rep, "median"), Sort::point("temperature"), "F", 68.0);
    check_ok_on_scale(entry_of(rep, "min"), Sort::point("temperature"), "F", 50.0);
    check_ok_on_scale(entry_of(rep, "max"), Sort::point("temperature"), "F", 86.0);
    check_ok_on_scale(entry_of(rep, "range"), Sort::power_of("temperature", 1), "F", 36.0);
    check_ok_on_scale(entry_of(rep, "variance"), Sort::power_of("temperature", 2), "F", 324.0);
    check_ok_on_scale(entry_of(rep, "std"), Sort::power_of("temperature", 1), "F", 18.0);

    // z-scores do not care which admissible scale the readings used
    const StatEntry& z = entry_of(rep, "zscores");
    REQUIRE(z.values.size() == 3);
    CHECK(z.values[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(z.values[2] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("even-count medians average the middle pair") {
    Registry reg = base_registry();
    Column pts = load_column("t\n10\n20\n30\n40\n", "t", "temperature", "C", Role::Point, reg);
    check_ok_on_scale(compute_stat(pts, "median", reg), Sort::point("temperature"), "C", 25.0);

    Column difs =
        load_column("m\n1\n2\n3\n4\n", "m", "mass", "kg", Role::Difference, reg);
    check_ok_on_scale(compute_stat(difs, "median", reg), Sort::power_of("mass", 1), "kg", 2.5);

    // ordering is by value, not file order
    Column shuffled =
        load_column("t\n30\n10\n40\n20\n", "t", "temperature", "C", Role::Point, reg);
    check_ok_on_scale(compute_stat(shuffled, "median", reg), Sort::point("temperature"), "C",
                      25.0);
    check_ok_on_scale(compute_stat(shuffled, "min", reg), Sort::point("temperature"), "C", 10.0);
}

TEST_CASE("difference columns admit the full catalog") {
    Registry reg = base_registry();
    Column col = load_column("d\n2\n4\n6\n", "d", "temperature", "C", Role::Difference, reg);
    StatReport rep = report(col, reg);

    Sort diff = Sort::power_of("temperature", 1);
    Sort squared = Sort::power_of("temperature", 2);

    for (const StatEntry& e : rep.entries) CHECK(e.ok);
    check_ok_scalar(entry_of(rep, "count"), 3.0);
    check_ok_on_scale(entry_of(rep, "mean"), diff, "C", 4.0);
    check_ok_on_scale(entry_of(rep, "median"), diff, "C", 4.0);
    check_ok_on_scale(entry_of(rep, "min"), diff, "C", 2.0);
    check_ok_on_scale(entry_of(rep, "max"), diff, "C", 6.0);
    check_ok_on_scale(entry_of(rep, "range"), diff, "C", 4.0);
    check_ok_on_scale(entry_of(rep, "variance"), squared, "C", 4.0);
    check_ok_on_scale(entry_of(rep, "std"), diff, "C", 2.0);
    check_ok_scalar(entry_of(rep, "cv"), 0.5);
    check_ok_on_scale(entry_of(rep, "geomean"), diff, "C", std::cbrt(48.0));
    check_ok_on_scale(entry_of(rep, "sum"), diff, "C", 12.0);

    const StatEntry& z = entry_of(rep, "zscores");
    REQUIRE(z.values.size() == 3);
    CHECK(z.values[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(z.values[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(z.values[2] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("a negative difference only breaks the geometric mean") {
    Registry reg = base_registry();
    Column col =
        load_column("d\n2\n-4\n6\n", "d", "temperature", "C", Role::Difference, reg);
    StatReport rep = report(col, reg);

    for (const StatEntry& e : rep.entries) {
        if (e.name == "geomean") {
            check_refused(e, ErrorCode::GeomeanDomain);
        } else {
            CHECK(e.ok);
        }
    }
    check_ok_on_scale(entry_of(rep, "mean"), Sort::power_of("temperature", 1), "C",
                      4.0 / 3.0);
    check_ok_on_scale(entry_of(rep, "sum"), Sort::power_of("temperature", 1), "C", 4.0);
}

TEST_CASE("single-reading columns") {
    Registry reg = base_registry();

    Column pt = load_column("v\n42\n", "v", "temperature", "C", Role::Point, reg);
    StatReport prep = report(pt, reg);
    check_ok_scalar(entry_of(prep, "count"), 1.0);
    check_ok_on_scale(entry_of(prep, "mean"), Sort::point("temperature"), "C", 42.0);
    check_ok_on_scale(entry_of(prep, "median"), Sort::point("temperature"), "C", 42.0);
    check_ok_on_scale(entry_of(prep, "range"), Sort::power_of("temperature", 1), "C", 0.0);
    check_ok_on_scale(entry_of(prep, "variance"), Sort::power_of("temperature", 2), "C", 0.0);
    check_ok_on_scale(entry_of(prep, "std"), Sort::power_of("temperature", 1), "C", 0.0);
    // the point refusals win over the degenerate-spread ones
    check_refused(entry_of(prep, "cv"), ErrorCode::PointRatio);
    check_refused(entry_of(prep, "geomean"), ErrorCode::PointSum);
    check_refused(entry_of(prep, "sum"), ErrorCode::PointSum);
    check_refused(entry_of(prep, "zscores"), ErrorCode::StdZero);

    Column df = load_column("v\n42\n", "v", "temperature", "C", Role::Difference, reg);
    StatReport drep = report(df, reg);
    check_ok_on_scale(entry_of(drep, "variance"), Sort::power_of("temperature", 2), "C", 0.0);
    check_refused(entry_of(drep, "cv"), ErrorCode::StdZero);
    check_refused(entry_of(drep, "zscores"), ErrorCode::StdZero);
    check_ok_on_scale(entry_of(drep, "geomean"), Sort::power_of("temperature", 1), "C", 42.0);
    check_ok_on_scale(entry_of(drep, "sum"), Sort::power_of("temperature", 1), "C", 42.0);
}

TEST_CASE("cv distinguishes a zero spread from a zero mean") {
    Registry reg = base_registry();

    Column zero_mean =
        load_column("d\n-1\n1\n", "d", "temperature", "C", Role::Difference, reg);
    StatEntry cv = compute_stat(zero_mean, "cv", reg);
    check_refused(cv, ErrorCode::DivZero);
    CHECK(cv.cite.find("mean is zero") != std::string::npos);

    Column flat = load_column("d\n5\n5\n5\n", "d", "temperature", "C", Role::Difference, reg);
    check_refused(compute_stat(flat, "cv", reg), ErrorCode::StdZero);
    check_refused(compute_stat(flat, "zscores", reg), ErrorCode::StdZero);
    check_ok_scalar(compute_stat(flat, "count", reg), 3.0);
}

TEST_CASE("absolute-family readings are plain scalars") {
    Registry reg = base_registry();
    std::string csv = "n\n5\n7\n11\n13\n";
    Column col = load_column(csv, "n", "count", "count.ref", Role::Difference, reg);
    StatReport rep = report(col, reg);

    for (const StatEntry& e : rep.entries) {
        CHECK(e.ok);
        CHECK(e.sort == Sort::scalar());
        CHECK(e.scale.empty());
    }

    double mean = 9.0;
    double var = (16.0 + 4.0 + 4.0 + 16.0) / 3.0;
    check_ok_scalar(entry_of(rep, "count"), 4.0);
    check_ok_scalar(entry_of(rep, "mean"), mean);
    check_ok_scalar(entry_of(rep, "median"), 9.0);
    check_ok_scalar(entry_of(rep, "min"), 5.0);
    check_ok_scalar(entry_of(rep, "max"), 13.0);
    check_ok_scalar(entry_of(rep, "range"), 8.0);
    check_ok_scalar(entry_of(rep, "variance"), var);
    check_ok_scalar(entry_of(rep, "std"), std::sqrt(var));
    check_ok_scalar(entry_of(rep, "cv"), std::sqrt(var) / mean);
    check_ok_scalar(entry_of(rep, "geomean"), std::pow(5.0 * 7.0 * 11.0 * 13.0, 0.25));
    check_ok_scalar(entry_of(rep, "sum"), 36.0);
}

TEST_CASE("statistics transform along with the scale") {
    // Re-expressing the same readings on another admissible scale must move
    // every statistic by exactly its sort's rule: points by p + q*x, spreads
    // by q, squared spreads by q*q, scalars not at all.
    const std::vector<double> readings = {3.25, -7.5, 12.0, 40.25, 8.5};
    SplitMix64 rng(20260822ULL);

    auto close = [](double a, double b) {
        return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
    };

    for (int trial = 0; trial < 100; ++trial) {
        double q = rng.next_range(0.1, 10.0);
        double p = rng.next_range(-100.0, 100.0);

        Registry reg;
        reg.register_family("temperature", FamilyKind::Affine);
        reg.register_scale("C", "temperature", 0.0, 1.0);
        // readings v on C and p + q*v on S name the same states
        reg.register_scale("S", "temperature", -p / q, 1.0 / q);

        std::string on_c = "t\n";
        std::string on_s = "t\n";
        for (double v : readings) {
            on_c += format_double(v) + "\n";
            on_s += format_double(p + q * v) + "\n";
        }

        StatReport rc = report(load_column(on_c, "t", "temperature", "C", Role::Point, reg), reg);
        StatReport rs = report(load_column(on_s, "t", "temperature", "S", Role::Point, reg), reg);

        for (const std::string& name : {"mean", "median", "min", "max"}) {
            REQUIRE(close(entry_of(rs, name).values[0], p + q * entry_of(rc, name).values[0]));
        }
        for (const std::string& name : {"range", "std"}) {
            REQUIRE(close(entry_of(rs, name).values[0], q * entry_of(rc, name).values[0]));
        }
        REQUIRE(close(entry_of(rs, "variance").values[0],
                      q * q * entry_of(rc, "variance").values[0]));
        const auto& zc = entry_of(rc, "zscores").values;
        const auto& zs = entry_of(rs, "zscores").values;
        REQUIRE(zc.size() == zs.size());
        for (std::size_t i = 0; i < zc.size(); ++i) REQUIRE(close(zc[i], zs[i]));
        for (const std::string& name : {"cv", "geomean", "sum"}) {
            REQUIRE_FALSE(entry_of(rs, name).ok);
            REQUIRE(entry_of(rs, name).code == entry_of(rc, name).code);
        }

        // difference readings only feel the factor
        std::string dc = "d\n2\n4\n6\n";
        std::string ds = "d\n";
        for (double v : {2.0, 4.0, 6.0}) ds += format_double(q * v) + "\n";
        StatReport dcr =
            report(load_column(dc, "d", "temperature", "C", Role::Difference, reg), reg);
        StatReport dsr =
            report(load_column(ds, "d", "temperature", "S", Role::Difference, reg), reg);
        REQUIRE(close(entry_of(dsr, "mean").values[0], q * entry_of(dcr, "mean").values[0]));
        REQUIRE(close(entry_of(dsr, "sum").values[0], q * entry_of(dcr, "sum").values[0]));
        REQUIRE(close(entry_of(dsr, "geomean").values[0],
                      q * entry_of(dcr, "geomean").values[0]));
        REQUIRE(close(entry_of(dsr, "cv").values[0], entry_of(dcr, "cv").values[0]));
    }
}

TEST_CASE("the expression language agrees with the report") {
    // The same quantities spelled out as expressions must land on the same
    // numbers the column report produces.
    Registry reg = base_registry();
    Column col = load_column(kTempsCsv, "temp", "temperature", "C", Role::Point, reg);
    StatReport rep = report(col, reg);

    const char* src =
        "family temperature kind affine\n"
        "scale C of temperature offset 0 factor 1\n"
        "let t1 = 10 @C\n"
        "let t2 = 20 @C\n"
        "let t3 = 30 @C\n"
        "let m = mix(1/3: t1, 1/3: t2, 1/3: t3)\n"
        "let v = ((t1 - m) * (t1 - m) + (t2 - m) * (t2 - m) + (t3 - m) * (t3 - m)) / 2\n"
        "let zsq = (t1 - m) * (t1 - m) / v\n";
    auto parsed = parse_program(src);
    REQUIRE(parsed.diagnostics.empty());
    auto checked = check_program(std::move(parsed.program));
    REQUIRE(checked.ok());
    auto out = evaluate_program(checked);
    REQUIRE(out.ok());

    // C is the reference scale here, so env values compare directly
    CHECK(out.env.at("m").value ==
          doctest::Approx(entry_of(rep, "mean").values[0]).epsilon(1e-12));
    CHECK(out.env.at("v").value ==
          doctest::Approx(entry_of(rep, "variance").values[0]).epsilon(1e-12));
    double z0 = entry_of(rep, "zscores").values[0];
    CHECK(out.env.at("zsq").value == doctest::Approx(z0 * z0).epsilon(1e-12));
}

TEST_CASE("unknown statistic names are rejected") {
    Registry reg = base_registry();
    Column col = load_column(kTempsCsv, "temp", "temperature", "C", Role::Point, reg);
    CHECK(require_code(ErrorCode::Eval, [&] { compute_stat(col, "mode", reg); }));
}

TEST_CASE("role names round-trip") {
    CHECK(std::string(role_name(Role::Point)) == "point");
    CHECK(std::string(role_name(Role::Difference)) == "difference");
    CHECK(parse_role("point") == Role::Point);
    CHECK(parse_role("difference") == Role::Difference);
    CHECK_FALSE(parse_role("ratio").has_value());
}
