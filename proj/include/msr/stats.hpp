#pragma once

#include <optional>
#include <string>
#include <vector>

#include "msr/quantity.hpp"
#include "msr/registry.hpp"

namespace msr {

// How a column's readings relate to its family: positions on the scale, or
// differences between positions. Point data needs an affine family; on an
// absolute family the readings are plain scalars either way.
enum class Role { Point, Difference };

const char* role_name(Role role);
std::optional<Role> parse_role(const std::string& text);

struct Column {
    std::string name;    // CSV header cell
    std::string family;
    std::string scale;
    Role role = Role::Point;
    std::vector<double> values;  // readings on `scale`, file order
};

// One catalog entry: either a quantity (typically one value; one per
// reading for zscores) or a refusal naming the rule that blocks it.
struct StatEntry {
    std::string name;
    bool ok = false;
    Sort sort;
    std::vector<double> values;
    std::string scale;  // empty for scalar results
    std::optional<ErrorCode> code;  // refusals only
    std::string cite;               // the rule in words
};

struct StatReport {
    std::string column;
    std::string family;
    std::string scale;
    Role role = Role::Point;
    std::vector<StatEntry> entries;
};

// The fixed catalog, in report order.
const std::vector<std::string>& stat_catalog();

// Pulls one named column out of RFC-4180-style CSV text (header row
// required). Throws E_CSV_PARSE (naming the 1-based file line), E_NO_COLUMN,
// E_ROLE_KIND, and the registry lookup errors.
Column load_column(const std::string& csv_text, const std::string& column_name,
                   const std::string& family, const std::string& scale, Role role,
                   const Registry& reg);

// One statistic. Results are reported on the column's own scale. Refusals
// are data: the entry carries the code and rule, never throws for them.
StatEntry compute_stat(const Column& column, const std::string& stat_name, const Registry& reg);

// The whole catalog in order.
StatReport report(const Column& column, const Registry& reg);

}  // namespace msr
