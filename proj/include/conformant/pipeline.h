#ifndef CONFORMANT_PIPELINE_H
#define CONFORMANT_PIPELINE_H

#include "analysis.h"
#include "planner.h"
#include "problem.h"
#include "translate.h"
#include "verify.h"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace conformant {
struct Caps {
    std::size_t initial_states = DEFAULT_STATE_CAP;
    std::size_t models = DEFAULT_MODEL_CAP;
    std::size_t pi_clauses = DEFAULT_PI_CAP;
};

struct PipelineConfig {
    Caps caps;
    Budget budget;
    bool optimize = true;
    bool strengthened_mutex = false;
    // Copies tried for nondeterministic actions: 1, 2, ... up to this many.
    int max_nondet_copies = 3;
    bool compute_width = true;
};

struct TranslationStats {
    std::size_t actions = 0;
    std::size_t atoms = 0;
    std::size_t effects = 0;
    std::size_t merges = 0;
    std::size_t tags = 0;
};

TranslationStats stats_of(const Translation &K);

struct StageRecord {
    std::string name;
    std::string outcome;     // solved, unsolvable, budget-out, error
    std::string detail;
    TranslationStats stats;
    std::size_t expanded = 0;
    double seconds = 0;
};

struct Validation {
    bool performed = false;
    bool conformant = false;
    std::string method;      // exhaustive, basis
    std::size_t states_checked = 0;
    std::string counterexample;
    std::string reason;
    bool zero_approx_valid = false;
};

struct LiteralWidthEntry {
    std::string literal;
    int width = 0;
    std::vector<std::string> witness;
};

struct RunReport {
    std::string command;
    std::string input;
    std::size_t fluents = 0;
    std::size_t actions = 0;
    std::size_t init_clauses = 0;
    std::size_t pi_clauses = 0;
    bool deterministic = true;
    std::optional<bool> consistent;
    std::optional<int> width;
    std::vector<LiteralWidthEntry> literal_widths;
    std::vector<StageRecord> stages;
    std::string status;      // solved, no-plan, budget-out, invalid-plan, translated
    bool solved = false;
    std::vector<std::string> plan;
    std::size_t stripped_length = 0;
    std::optional<Validation> validation;
    std::vector<std::string> warnings;
};

struct PipelineResult {
    RunReport report;
    Plan plan;               // stripped, over the actions of the input problem
    Plan classical_plan;     // full plan on the winning translation
};

// Runs the translation ladder; never throws for NoPlanFound or budget-outs,
// which are reported in result.report.status.
PipelineResult run_pipeline(const ConformantProblem &P, const PipelineConfig &config = {});
// Same, but throws NoPlanFound / BudgetExhausted when no validated plan results.
PipelineResult pipeline_solve(const ConformantProblem &P, const PipelineConfig &config = {});

struct SchemeChoice {
    enum class Kind {K0, KI, KModels, KS0};
    Kind kind = Kind::KI;
    int i = 1;
};

SchemeChoice parse_scheme(const std::string &text);
std::string scheme_name(const SchemeChoice &scheme);

// Problem-side preprocessing and analysis kept alive together with the
// translation built from them.
struct TranslationBundle {
    std::unique_ptr<ConformantProblem> compiled;
    std::unique_ptr<NondetCompilation> nondet;
    std::unique_ptr<Analysis> analysis;
    Translation translation;
    RunReport report;
};

// CNF goals compiled, nondeterminism compiled with `copies`, then translated.
TranslationBundle build_translation(const ConformantProblem &P, const SchemeChoice &scheme,
                                    const PipelineConfig &config, int copies = 1);

// Drops reasoning steps and compiler-introduced actions, mapping action
// copies back to their original names.
Plan strip_to_original(const Plan &plan, const ConformantProblem &P,
                       const NondetCompilation *nondet = nullptr);

// Resolves step names against P's actions, accepting the raw name, the
// emitted PDDL spelling, or "(name args)"; reasoning steps are dropped.
Plan normalize_plan(const Plan &plan, const ConformantProblem &P);

Validation validate_plan(const ConformantProblem &P, const Plan &plan, const Caps &caps,
                         const Analysis *analysis = nullptr,
                         const TranslationSpec *spec = nullptr);

std::string state_to_string(const State &s, const std::vector<std::string> &names);
}

#endif
