#ifndef CONFORMANT_TRANSLATE_H
#define CONFORMANT_TRANSLATE_H

#include "analysis.h"
#include "problem.h"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace conformant {
struct TaggedAtom {
    Literal base;
    int tag = 0;   // index into TranslationSpec::tags; 0 is the empty tag

    bool operator==(const TaggedAtom &) const = default;
};

struct TranslationSpec {
    std::string scheme;
    std::vector<Tag> tags;        // tags[0] is always the empty tag
    std::vector<Merge> merges;

    int tag_index(const Tag &t) const;   // -1 if absent
    // Sorts tags (empty first) and merges into canonical order, drops duplicates.
    void canonicalize();
};

TranslationSpec make_spec(const std::string &scheme, const std::vector<Merge> &merges,
                          const std::vector<Tag> &extra_tags = {});

struct TranslateOptions {
    bool collapse_irrelevant_tags = false;
    bool drop_unused_rules = false;
    bool group_decided = false;
    bool action_compilation = false;
    bool static_disjunctions = false;
    bool mutex_effects = true;
    bool strengthened_mutex = false;
    bool check_spec = true;
    std::size_t model_cap = DEFAULT_MODEL_CAP;

    static TranslateOptions optimized();
};

struct Translation {
    ClassicalProblem problem;
    TranslationSpec spec;
    std::vector<TaggedAtom> atoms;   // classical fluent id -> tagged atom
    std::unordered_map<long long, int> atom_ids;
    int base_fluents = 0;

    long long key(Literal base, int tag) const {
        return static_cast<long long>(tag) * 2 * base_fluents + base.code();
    }

    std::optional<int> atom(Literal base, const Tag &t) const;
    std::optional<int> atom(Literal base, int tag) const;
    std::string display(int fluent, const std::vector<std::string> &names) const;
};

std::string literal_token(Literal lit, const std::vector<std::string> &names);
std::string sanitize_name(const std::string &name);
// Conventional plan-step prefix marking merges in emitted/parsed plans.
bool is_reasoning_step_name(const std::string &name);

Translation ktm(const Analysis &A, const TranslationSpec &spec,
                const TranslateOptions &opts = {});
Translation k0(const Analysis &A, const TranslateOptions &opts = {});

TranslationSpec ks0_spec(const Analysis &A, std::size_t cap = 4096);
TranslationSpec kmodels_spec(const Analysis &A, std::size_t cap = DEFAULT_MODEL_CAP,
                             bool all_literals = false, bool reuse_width_one = false);
TranslationSpec ki_spec(const Analysis &A, int i, bool all_literals = false);

Translation ks0(const Analysis &A, std::size_t cap = 4096, const TranslateOptions &opts = {});
Translation kmodels(const Analysis &A, std::size_t cap = DEFAULT_MODEL_CAP,
                    const TranslateOptions &opts = {});
Translation ki(const Analysis &A, int i, const TranslateOptions &opts = {});

// Rebuilds K from its spec with every optimization switched on.
Translation optimize(const Translation &K, const Analysis &A);

ConformantProblem cnf_goal_compile(const ConformantProblem &P);

struct NondetCompilation {
    ConformantProblem problem;
    // copy action name -> original action name
    std::map<std::string, std::string> origin;
    // reset action name -> hidden fluents it refreshes
    std::map<std::string, std::vector<int>> reset_hidden;
    std::vector<bool> hidden;   // per fluent of `problem`
};

NondetCompilation nondet_compile(const ConformantProblem &P, int copies);
// Adds KL -> KL/t and -KL -> -KL/t to each reset action for tags t over its
// hidden fluents.
void inject_resets(Translation &K, const NondetCompilation &N);
}

#endif
