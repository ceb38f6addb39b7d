#include "msr/stats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "msr/ops.hpp"

namespace msr {

namespace {

// What the readings are once the family kind has its say.
enum class DataKind { Point, Diff, Scalar };

DataKind data_kind(const Column& col, const Registry& reg) {
    if (reg.family(col.family).kind == FamilyKind::Absolute) return DataKind::Scalar;
    return col.role == Role::Point ? DataKind::Point : DataKind::Diff;
}

Quantity datum(const Column& col, const Registry& reg, DataKind kind, double value) {
    switch (kind) {
        case DataKind::Point: return reg.make_point(value, col.scale);
        case DataKind::Diff: return reg.make_difference(value, col.scale);
        default: return Quantity::scalar(value);
    }
}

Quantity on_column_scale(const Quantity& q, const Column& col, const Registry& reg) {
    if (q.sort.is_scalar()) return q;
    return reg.convert(q, col.scale);
}

// Everything below computes through the quantity algebra, so each result's
// sort is derived, not asserted.

Quantity mean_quantity(const Column& col, const Registry& reg, DataKind kind) {
    std::size_t n = col.values.size();
    if (kind == DataKind::Point) {
        std::vector<double> weights(n, 1.0 / static_cast<double>(n));
        std::vector<Quantity> points;
        points.reserve(n);
        for (double v : col.values) points.push_back(datum(col, reg, kind, v));
        return mix(reg, weights, points);
    }
    Quantity acc = datum(col, reg, kind, col.values[0]);
    for (std::size_t i = 1; i < n; ++i) {
        acc = apply_binary(reg, BinOp::Add, acc, datum(col, reg, kind, col.values[i]));
    }
    return apply_binary(reg, BinOp::Div, acc, Quantity::scalar(static_cast<double>(n)));
}

Quantity variance_quantity(const Column& col, const Registry& reg, DataKind kind) {
    std::size_t n = col.values.size();
    if (n == 1) {
        if (kind == DataKind::Scalar) return Quantity::scalar(0.0);
        return reg.make_power(0.0, reg.family(col.family).ref_scale, 2);
    }
    Quantity mean = mean_quantity(col, reg, kind);
    Quantity acc = Quantity::scalar(0.0);
    bool first = true;
    for (double v : col.values) {
        Quantity d = apply_binary(reg, BinOp::Sub, datum(col, reg, kind, v), mean);
        Quantity sq = apply_binary(reg, BinOp::Mul, d, d);
        acc = first ? sq : apply_binary(reg, BinOp::Add, acc, sq);
        first = false;
    }
    return apply_binary(reg, BinOp::Div, acc, Quantity::scalar(static_cast<double>(n - 1)));
}

Quantity std_quantity(const Column& col, const Registry& reg, DataKind kind) {
    return sqrt_even_power(variance_quantity(col, reg, kind));
}

// Indices of the readings in value order; ties keep file order. Admissible
// maps have positive factor, so the selection is scale-independent.
std::vector<std::size_t> order_of(const std::vector<double>& values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    return order;
}

StatEntry ok_entry(std::string name, const Quantity& q, const Column& col) {
    StatEntry entry;
    entry.name = std::move(name);
    entry.ok = true;
    entry.sort = q.sort;
    entry.values = {q.value};
    entry.scale = q.sort.is_scalar() ? std::string{} : col.scale;
    return entry;
}

StatEntry refusal(std::string name, ErrorCode code, std::string cite) {
    StatEntry entry;
    entry.name = std::move(name);
    entry.ok = false;
    entry.code = code;
    entry.cite = std::move(cite);
    return entry;
}

constexpr const char* kPointRatioCite =
    "ratios involving points are undefined; only ratios of differences are admissible";
constexpr const char* kPointProductCite = "products of points are undefined";
constexpr const char* kPointSumCite =
    "the sum of two points is undefined; only their difference is";

std::string trimmed(const std::string& text) {
    std::size_t from = text.find_first_not_of(" \t");
    if (from == std::string::npos) return {};
    std::size_t to = text.find_last_not_of(" \t");
    return text.substr(from, to - from + 1);
}

std::vector<std::string> split_record(const std::string& line, std::size_t file_line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    i += 2;
                    continue;
                }
                quoted = false;
                ++i;
                continue;
            }
            cur += c;
            ++i;
            continue;
        }
        if (c == '"' && cur.empty()) {
            quoted = true;
            ++i;
            continue;
        }
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
            ++i;
            continue;
        }
        cur += c;
        ++i;
    }
    if (quoted) {
        throw MsrError(ErrorCode::CsvParse,
                       "line " + std::to_string(file_line) + ": unterminated quoted field");
    }
    fields.push_back(cur);
    return fields;
}

double parse_cell(const std::string& raw, std::size_t file_line) {
    std::string cell = trimmed(raw);
    double value = 0.0;
    auto res = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size()) {
        throw MsrError(ErrorCode::CsvParse, "line " + std::to_string(file_line) +
                                                ": cell '" + raw + "' is not a number");
    }
    if (!std::isfinite(value)) {
        throw MsrError(ErrorCode::CsvParse,
                       "line " + std::to_string(file_line) + ": value is not finite");
    }
    return value;
}

}  // namespace

const char* role_name(Role role) { return role == Role::Point ? "point" : "difference"; }

std::optional<Role> parse_role(const std::string& text) {
    if (text == "point") return Role::Point;
    if (text == "difference") return Role::Difference;
    return std::nullopt;
}

const std::vector<std::string>& stat_catalog() {
    static const std::vector<std::string> catalog = {
        "count",    "mean", "median", "min",     "max", "range",
        "variance", "std",  "cv",     "geomean", "sum", "zscores"};
    return catalog;
}

Column load_column(const std::string& csv_text, const std::string& column_name,
                   const std::string& family, const std::string& scale, Role role,
                   const Registry& reg) {
    const Family& fam = reg.family(family);
    const Scale& sc = reg.scale(scale);
    if (sc.family != family) {
        throw MsrError(ErrorCode::FamilyMix, "scale '" + scale + "' measures family '" +
                                                 sc.family + "', not '" + family + "'");
    }
    if (role == Role::Point && fam.kind != FamilyKind::Affine) {
        throw MsrError(ErrorCode::RoleKind, "point readings need an affine family; '" + family +
                                                "' is " + family_kind_name(fam.kind));
    }

    // Split into lines; tolerate CRLF and a trailing newline.
    std::vector<std::pair<std::size_t, std::string>> lines;
    {
        std::size_t line_no = 1;
        std::size_t start = 0;
        while (start <= csv_text.size()) {
            std::size_t end = csv_text.find('\n', start);
            std::string line = csv_text.substr(
                start, end == std::string::npos ? std::string::npos : end - start);
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) lines.emplace_back(line_no, line);
            if (end == std::string::npos) break;
            start = end + 1;
            ++line_no;
        }
    }
    if (lines.empty()) throw MsrError(ErrorCode::CsvParse, "line 1: missing header row");

    std::vector<std::string> header = split_record(lines[0].second, lines[0].first);
    std::size_t index = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (trimmed(header[i]) == column_name) {
            index = i;
            break;
        }
    }
    if (index == header.size()) {
        throw MsrError(ErrorCode::NoColumn, "no column named '" + column_name + "'");
    }

    Column col;
    col.name = column_name;
    col.family = family;
    col.scale = scale;
    col.role = role;
    for (std::size_t r = 1; r < lines.size(); ++r) {
        std::vector<std::string> fields = split_record(lines[r].second, lines[r].first);
        if (fields.size() != header.size()) {
            throw MsrError(ErrorCode::CsvParse,
                           "line " + std::to_string(lines[r].first) + ": record has " +
                               std::to_string(fields.size()) + " fields, header has " +
                               std::to_string(header.size()));
        }
        col.values.push_back(parse_cell(fields[index], lines[r].first));
    }
    if (col.values.empty()) {
        throw MsrError(ErrorCode::CsvParse,
                       "column '" + column_name + "' has no data rows");
    }
    return col;
}

StatEntry compute_stat(const Column& col, const std::string& stat_name, const Registry& reg) {
    DataKind kind = data_kind(col, reg);
    std::size_t n = col.values.size();

    if (stat_name == "count") {
        return ok_entry("count", Quantity::scalar(static_cast<double>(n)), col);
    }
    if (stat_name == "mean") {
        return ok_entry("mean", on_column_scale(mean_quantity(col, reg, kind), col, reg), col);
    }
    if (stat_name == "median") {
        std::vector<std::size_t> order = order_of(col.values);
        if (n % 2 == 1) {
            return ok_entry("median", datum(col, reg, kind, col.values[order[n / 2]]), col);
        }
        Quantity lo = datum(col, reg, kind, col.values[order[n / 2 - 1]]);
        Quantity hi = datum(col, reg, kind, col.values[order[n / 2]]);
        Quantity mid;
        if (kind == DataKind::Point) {
            std::vector<double> weights = {0.5, 0.5};
            std::vector<Quantity> pair = {lo, hi};
            mid = mix(reg, weights, pair);
        } else {
            mid = apply_binary(reg, BinOp::Div, apply_binary(reg, BinOp::Add, lo, hi),
                               Quantity::scalar(2.0));
        }
        return ok_entry("median", on_column_scale(mid, col, reg), col);
    }
    if (stat_name == "min") {
        return ok_entry(
            "min", datum(col, reg, kind, *std::min_element(col.values.begin(), col.values.end())),
            col);
    }
    if (stat_name == "max") {
        return ok_entry(
            "max", datum(col, reg, kind, *std::max_element(col.values.begin(), col.values.end())),
            col);
    }
    if (stat_name == "range") {
        auto [lo, hi] = std::minmax_element(col.values.begin(), col.values.end());
        Quantity range = apply_binary(reg, BinOp::Sub, datum(col, reg, kind, *hi),
                                      datum(col, reg, kind, *lo));
        return ok_entry("range", on_column_scale(range, col, reg), col);
    }
    if (stat_name == "variance") {
        return ok_entry("variance",
                        on_column_scale(variance_quantity(col, reg, kind), col, reg), col);
    }
    if (stat_name == "std") {
        return ok_entry("std", on_column_scale(std_quantity(col, reg, kind), col, reg), col);
    }
    if (stat_name == "cv") {
        if (kind == DataKind::Point) {
            return refusal("cv", ErrorCode::PointRatio, kPointRatioCite);
        }
        Quantity sd = std_quantity(col, reg, kind);
        if (sd.value == 0.0) {
            return refusal("cv", ErrorCode::StdZero, "standard deviation is zero");
        }
        Quantity mean = mean_quantity(col, reg, kind);
        if (mean.value == 0.0) {
            return refusal("cv", ErrorCode::DivZero, "the mean is zero");
        }
        return ok_entry("cv", apply_binary(reg, BinOp::Div, sd, mean), col);
    }
    if (stat_name == "geomean") {
        if (kind == DataKind::Point) {
            return refusal("geomean", ErrorCode::PointSum, kPointProductCite);
        }
        for (double v : col.values) {
            if (v <= 0.0) {
                return refusal("geomean", ErrorCode::GeomeanDomain,
                               "geometric mean needs all values positive");
            }
        }
        double log_sum = 0.0;
        for (double v : col.values) log_sum += std::log(v);
        double value = std::exp(log_sum / static_cast<double>(n));
        Quantity gm = kind == DataKind::Scalar ? Quantity::scalar(value)
                                               : reg.make_difference(value, col.scale);
        return ok_entry("geomean", gm, col);
    }
    if (stat_name == "sum") {
        if (kind == DataKind::Point) {
            return refusal("sum", ErrorCode::PointSum, kPointSumCite);
        }
        Quantity acc = datum(col, reg, kind, col.values[0]);
        for (std::size_t i = 1; i < n; ++i) {
            acc = apply_binary(reg, BinOp::Add, acc, datum(col, reg, kind, col.values[i]));
        }
        return ok_entry("sum", on_column_scale(acc, col, reg), col);
    }
    if (stat_name == "zscores") {
        Quantity sd = std_quantity(col, reg, kind);
        if (sd.value == 0.0) {
            return refusal("zscores", ErrorCode::StdZero, "standard deviation is zero");
        }
        Quantity mean = mean_quantity(col, reg, kind);
        StatEntry entry;
        entry.name = "zscores";
        entry.ok = true;
        entry.sort = Sort::scalar();
        for (double v : col.values) {
            Quantity d = apply_binary(reg, BinOp::Sub, datum(col, reg, kind, v), mean);
            entry.values.push_back(apply_binary(reg, BinOp::Div, d, sd).value);
        }
        return entry;
    }
    throw MsrError(ErrorCode::Eval, "unknown statistic '" + stat_name + "'");
}

StatReport report(const Column& col, const Registry& reg) {
    StatReport out;
    out.column = col.name;
    out.family = col.family;
    out.scale = col.scale;
    out.role = col.role;
    for (const std::string& name : stat_catalog()) {
        out.entries.push_back(compute_stat(col, name, reg));
    }
    return out;
}

}  // namespace msr
