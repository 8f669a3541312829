#include "conformant/report.h"

#include <json.hpp>

#include <iomanip>
#include <sstream>

using namespace std;
using json = nlohmann::ordered_json;

namespace conformant {
namespace {
json stats_json(const TranslationStats &s) {
    return {{"actions", s.actions}, {"atoms", s.atoms}, {"effects", s.effects},
            {"merges", s.merges}, {"tags", s.tags}};
}
}

string report_json(const RunReport &r) {
    json j;
    j["command"] = r.command;
    j["input"] = r.input;
    j["problem"] = {{"fluents", r.fluents}, {"actions", r.actions},
                    {"init_clauses", r.init_clauses}, {"pi_clauses", r.pi_clauses},
                    {"deterministic", r.deterministic}};
    j["consistent"] = r.consistent ? json(*r.consistent) : json(nullptr);
    j["width"] = r.width ? json(*r.width) : json(nullptr);
    json widths = json::array();
    for (const LiteralWidthEntry &w : r.literal_widths)
        widths.push_back({{"literal", w.literal}, {"width", w.width}, {"witness", w.witness}});
    j["literal_widths"] = widths;
    json stages = json::array();
    for (const StageRecord &s : r.stages)
        stages.push_back({{"stage", s.name}, {"outcome", s.outcome}, {"detail", s.detail},
                          {"translation", stats_json(s.stats)}, {"expanded", s.expanded},
                          {"seconds", s.seconds}});
    j["stages"] = stages;
    j["status"] = r.status;
    j["solved"] = r.solved;
    j["plan"] = r.plan;
    j["stripped_length"] = r.stripped_length;
    if (r.validation) {
        const Validation &v = *r.validation;
        j["validation"] = {{"performed", v.performed}, {"conformant", v.conformant},
                           {"method", v.method}, {"states_checked", v.states_checked},
                           {"counterexample", v.counterexample}, {"reason", v.reason},
                           {"zero_approx_valid", v.zero_approx_valid}};
    } else {
        j["validation"] = nullptr;
    }
    j["warnings"] = r.warnings;
    return j.dump(2) + "\n";
}

string report_text(const RunReport &r) {
    ostringstream out;
    out << "input: " << r.input << " (" << r.fluents << " fluents, " << r.actions
        << " actions, " << r.init_clauses << " initial clauses, " << r.pi_clauses
        << " prime implicates)\n";
    if (r.consistent)
        out << "consistent: " << (*r.consistent ? "yes" : "no") << "\n";
    if (r.width)
        out << "width: " << *r.width << "\n";
    for (const StageRecord &s : r.stages) {
        out << "stage " << s.name << ": " << s.outcome;
        if (!s.detail.empty())
            out << " (" << s.detail << ")";
        out << " [actions " << s.stats.actions << ", atoms " << s.stats.atoms << ", effects "
            << s.stats.effects << ", merges " << s.stats.merges << "; expanded " << s.expanded
            << "; " << fixed << setprecision(3) << s.seconds << "s]\n";
    }
    out << "status: " << r.status << "\n";
    if (!r.plan.empty() || r.solved) {
        out << "plan (" << r.stripped_length << " steps):\n";
        for (const string &step : r.plan)
            out << "  " << step << "\n";
    }
    if (r.validation) {
        const Validation &v = *r.validation;
        if (v.performed)
            out << "validation: " << (v.conformant ? "conformant" : "not conformant") << " ("
                << v.method << ", " << v.states_checked << " states)\n";
        else
            out << "validation: not performed (" << v.reason << ")\n";
        if (!v.counterexample.empty())
            out << "counterexample: " << v.counterexample << "\n";
        if (!v.conformant && !v.reason.empty())
            out << "reason: " << v.reason << "\n";
    }
    for (const string &w : r.warnings)
        out << "warning: " << w << "\n";
    return out.str();
}
}
