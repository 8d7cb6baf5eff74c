#pragma once
// Empirical type-invariance harness: given a verified derivation, re-check
// the same judgment against every reduct along the leftmost-outermost
// reduction sequence, and check the expansion direction for a given
// predecessor. A failing re-check is an incompleteness finding of the
// searcher, reported as such; it is not a verified counterexample.

#include <string>
#include <vector>

#include "lmr/check.hpp"
#include "lmr/reduce.hpp"

namespace lmr {

// Every type subtree occurring in the derivation (conclusions and context
// bindings), first-seen order. Used as the argument-candidate pool when
// re-checking reducts.
inline Hints harvest_hints(const Derivation& d) {
    Hints h;
    std::set<std::string> seen;
    auto add_subtrees = [&](const Type& ty, auto&& self) -> void {
        if (seen.insert(print_type(ty)).second) h.pool.push_back(ty);
        std::visit(overloaded{[&](const TArrow& a) {
                                  self(a.dom, self);
                                  self(a.cod, self);
                              },
                              [&](const TInter& i) {
                                  self(i.left, self);
                                  self(i.right, self);
                              },
                              [&](const TField& f) { self(f.body, self); },
                              [&](const auto&) {}},
                   ty.node().v);
    };
    auto walk = [&](const Derivation& node, auto&& self) -> void {
        add_subtrees(node.conclusion.ty, add_subtrees);
        for (const auto& [name, ty] : node.conclusion.ctx.bindings()) add_subtrees(ty, add_subtrees);
        for (const auto& p : node.premises) self(p, self);
    };
    walk(d, walk);
    return h;
}

struct InvarianceStep {
    int index;  // 0 is the original subject
    Term term;
    bool found;
};

struct InvarianceReport {
    Judgment root;
    std::vector<InvarianceStep> steps;
    bool reached_normal_form;

    bool all_found() const {
        for (const auto& s : steps)
            if (!s.found) return false;
        return true;
    }
};

// Verifies d, then walks subject => ... => normal form (or until fuel runs
// out) re-checking the root judgment at every stage with harvested hints.
inline InvarianceReport invariance_test(const Derivation& d, int fuel) {
    InvarianceReport report{verify(d), {}, false};
    Hints hints = harvest_hints(d);
    Term cur = report.root.subject;
    int index = 0;
    while (true) {
        bool found = check(report.root.ctx, cur, report.root.ty, hints).has_value();
        report.steps.push_back({index, cur, found});
        if (index >= fuel) break;
        auto s = step(cur);
        if (!s) {
            report.reached_normal_form = true;
            break;
        }
        cur = s->term;
        ++index;
    }
    return report;
}

// Expansion direction: for a predecessor term of the derivation's subject,
// search for the same typing.
inline bool check_expansion(const Derivation& d, const Term& predecessor) {
    Judgment j = verify(d);
    return check(j.ctx, predecessor, j.ty, harvest_hints(d)).has_value();
}

inline std::string report_to_string(const InvarianceReport& r) {
    std::string out = print_judgment(r.root) + "\n";
    for (const auto& s : r.steps) {
        out += "  step " + std::to_string(s.index) + ": " + (s.found ? "ok    " : "MISSED") + " " +
               print_term(s.term) + "\n";
    }
    out += r.reached_normal_form ? "  (normal form reached)\n" : "  (fuel exhausted)\n";
    return out;
}

}  // namespace lmr
