#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "msr/checker.hpp"
#include "msr/evaluator.hpp"

namespace msr {

// Typed mode runs the real algebra; raw mode strips the sorts and applies
// plain field arithmetic to the readings as written, which is exactly the
// mistake the sort system exists to refuse. Surveying both shows the
// refusal is substantive: raw results move when the scales move.
enum class EvalMode { Typed, Raw };

enum class MeaningStatus { Meaningful, NotMeaningful, Indeterminate };

const char* eval_mode_name(EvalMode mode);            // "typed" | "raw"
const char* meaning_status_name(MeaningStatus status);  // "meaningful" | ...

// One admissible re-description per family touched by the expression.
using FamilyTransforms = std::map<std::string, Transformation>;

// A raw binding: the reading as written plus the sort it claims.
struct RawBinding {
    double value = 0.0;
    Sort sort;
};
using RawEnv = std::map<std::string, RawBinding>;

struct MeaningContext {
    const Registry* registry = nullptr;
    EvalMode mode = EvalMode::Typed;
    EvalEnv typed;  // reference-scale readings (typed mode)
    RawEnv raw;     // readings as written (raw mode)
};

struct Witness {
    FamilyTransforms transforms;
    std::string primary_family;  // the family shown first when reporting
    double y = 0.0;              // output on the original description
    double y_transformed = 0.0;  // output after re-describing every leaf
    double deviation = 0.0;
    int trial = 0;
};

struct MeaningVerdict {
    MeaningStatus status = MeaningStatus::Meaningful;
    int trials = 0;  // trials actually run
    std::optional<Witness> witness;
};

// Families the expression's leaves touch, sorted by name.
std::vector<std::string> involved_families(const Expr& expr, const MeaningContext& ctx);

// The sort whose action the output is held to: the inferred sort, or
// Scalar when the expression does not sort-check (raw mode only, and the
// strictest possible reading - the output must then not move at all).
Sort expected_sort(const Expr& expr, const MeaningContext& ctx);

// Deviation of one trial: |y' - a(y)| / max(|a(y)|, 1e-3), where y' is the
// output after re-describing every leaf by `ts` and a is the expected
// sort's action. The floor makes the threshold behave as a relative bound
// away from zero and an absolute one near it. Throws EvalError when either
// evaluation fails.
double check_trial(const Expr& expr, const MeaningContext& ctx, const FamilyTransforms& ts);

// Runs up to n_trials independent re-descriptions; the first deviation
// above `tolerance` decides. Trial i draws from a sub-seed derived from
// (seed, i), so the verdict does not depend on execution order.
MeaningVerdict check_meaningful(const Expr& expr, const MeaningContext& ctx, int n_trials,
                                std::uint64_t seed, double tolerance = 1e-6);

struct StatementVerdict {
    std::size_t stmt_index = 0;
    std::string text;  // statement in canonical source form
    EvalMode mode = EvalMode::Typed;
    MeaningVerdict verdict;
};

struct SurveyResult {
    std::vector<StatementVerdict> statements;  // one per check/assert
    std::vector<Diagnostic> diagnostics;       // raw-mode notes (warnings)
};

// Surveys every check and assert: typed mode where the statement
// sort-checks, raw mode with a warning where it does not. An assert is
// surveyed through its residual (left minus right), whose sort action
// carries the truth value of every comparison the checker admits.
SurveyResult survey_program(const CheckedProgram& checked, int n_trials, std::uint64_t seed,
                            double tolerance = 1e-6);

}  // namespace msr
