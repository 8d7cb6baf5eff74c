#pragma once
// One-step and multi-step reduction, leftmost-outermost, with explicit fuel.
//
// Redexes:
//   (beta)   (\x. M) N        =>  M[N/x]
//   (rsel)   {.., a = M, ..}.a =>  M
//   (merge)  R1 ++ R2          =>  fields of R2 plus the fields of R1 whose
//                                  labels do not occur in R2 (right bias)
//   (delta)  m + n             =>  the literal sum, for integer literals
//
// A node is inspected before its children, children left to right; stuck
// terms (selection of a missing field, addition of non-literals) are normal
// forms, not errors.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lmr/term.hpp"

namespace lmr {

inline constexpr int kDefaultFuel = 100000;

struct EvalError : std::runtime_error {
    explicit EvalError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class RedexKind { Beta, RSel, Merge, Delta };

inline const char* redex_kind_name(RedexKind k) {
    switch (k) {
        case RedexKind::Beta: return "beta";
        case RedexKind::RSel: return "rsel";
        case RedexKind::Merge: return "merge";
        case RedexKind::Delta: return "delta";
    }
    return "?";
}

struct RedexInfo {
    RedexKind kind;
    std::vector<int> path;  // child indices from the root
};

inline std::string path_string(const std::vector<int>& path) {
    if (path.empty()) return "/";
    std::string out;
    for (int i : path) {
        out += '/';
        out += std::to_string(i);
    }
    return out;
}

struct StepResult {
    Term term;
    RedexInfo redex;
};

namespace detail {

inline RecordLit merge_records(const RecordLit& left, const RecordLit& right) {
    std::vector<RecordEntry> out;
    for (const auto& e : left.entries())
        if (!right.has_label(e.label)) out.push_back(e);
    for (const auto& e : right.entries()) out.push_back(e);
    return RecordLit(std::move(out));
}

inline const IntLit* delta_redex(const App& a) {
    auto* inner = std::get_if<App>(&a.fn.node().v);
    if (!inner || !std::holds_alternative<PrimPlus>(inner->fn.node().v)) return nullptr;
    auto* lhs = std::get_if<IntLit>(&inner->arg.node().v);
    auto* rhs = std::get_if<IntLit>(&a.arg.node().v);
    return (lhs && rhs) ? lhs : nullptr;
}

inline std::optional<StepResult> step_rec(const Term& t, std::vector<int>& path) {
    auto descend = [&](int idx, const Term& child,
                       auto rebuild) -> std::optional<StepResult> {
        path.push_back(idx);
        auto sub = step_rec(child, path);
        path.pop_back();
        if (!sub) return std::nullopt;
        return StepResult{rebuild(sub->term), sub->redex};
    };
    auto descend_record = [&](const RecordLit& r, int base,
                              auto rebuild) -> std::optional<StepResult> {
        for (std::size_t i = 0; i < r.entries().size(); ++i) {
            path.push_back(base + static_cast<int>(i));
            auto sub = step_rec(r.entries()[i].value, path);
            path.pop_back();
            if (sub) {
                std::vector<RecordEntry> es = r.entries();
                es[i].value = sub->term;
                return StepResult{rebuild(RecordLit(std::move(es))), sub->redex};
            }
        }
        return std::nullopt;
    };

    return std::visit(
        overloaded{
            [&](const App& a) -> std::optional<StepResult> {
                if (auto* l = std::get_if<Lam>(&a.fn.node().v))
                    return StepResult{subst(l->body, l->binder, a.arg), {RedexKind::Beta, path}};
                if (delta_redex(a)) {
                    auto& inner = std::get<App>(a.fn.node().v);
                    auto m = std::get<IntLit>(inner.arg.node().v).value;
                    auto n = std::get<IntLit>(a.arg.node().v).value;
                    return StepResult{Term::integer(m + n), {RedexKind::Delta, path}};
                }
                if (auto r = descend(0, a.fn, [&](Term fn) { return Term::app(fn, a.arg); })) return r;
                return descend(1, a.arg, [&](Term arg) { return Term::app(a.fn, arg); });
            },
            [&](const Sel& s) -> std::optional<StepResult> {
                if (auto* r = std::get_if<Rec>(&s.subject.node().v))
                    if (const Term* f = r->record.find(s.label))
                        return StepResult{*f, {RedexKind::RSel, path}};
                return descend(0, s.subject, [&](Term sub) { return Term::sel(sub, s.label); });
            },
            [&](const Merge& m) -> std::optional<StepResult> {
                if (auto* r = std::get_if<Rec>(&m.left.node().v))
                    return StepResult{Term::record(merge_records(r->record, m.right)),
                                      {RedexKind::Merge, path}};
                if (auto res = descend(0, m.left, [&](Term l) { return Term::merge(l, m.right); }))
                    return res;
                return descend_record(m.right, 1,
                                      [&](RecordLit r) { return Term::merge(m.left, r); });
            },
            [&](const Lam& l) -> std::optional<StepResult> {
                return descend(0, l.body, [&](Term b) { return Term::lam(l.binder, b); });
            },
            [&](const Rec& r) -> std::optional<StepResult> {
                return descend_record(r.record, 0, [](RecordLit rl) { return Term::record(rl); });
            },
            [&](const auto&) -> std::optional<StepResult> { return std::nullopt; }},
        t.node().v);
}

}  // namespace detail

// Contract the leftmost-outermost redex; empty iff t is a normal form.
inline std::optional<StepResult> step(const Term& t) {
    std::vector<int> path;
    return detail::step_rec(t, path);
}

struct TraceEntry {
    int index;
    RedexInfo redex;
    Term term;  // the contracted term
};

inline std::string trace_line(const TraceEntry& e) {
    return "step " + std::to_string(e.index) + " [" + redex_kind_name(e.redex.kind) + " @ " +
           path_string(e.redex.path) + "]: " + print_term(e.term);
}

struct NormalizeResult {
    Term term;
    int steps;
    bool normal;  // false: fuel exhausted, term holds the partial reduct
};

inline NormalizeResult normalize(const Term& t, int fuel, std::vector<TraceEntry>* trace = nullptr) {
    Term cur = t;
    for (int k = 0; k < fuel; ++k) {
        auto s = step(cur);
        if (!s) return {cur, k, true};
        cur = s->term;
        if (trace) trace->push_back({k + 1, s->redex, cur});
    }
    return {cur, fuel, false};
}

namespace detail {

// Weak-head step: only the active spine is inspected, so contraction can
// expose a record at the root without touching field contents.
inline std::optional<Term> head_step(const Term& t) {
    return std::visit(
        overloaded{
            [&](const App& a) -> std::optional<Term> {
                if (auto* l = std::get_if<Lam>(&a.fn.node().v))
                    return subst(l->body, l->binder, a.arg);
                if (delta_redex(a)) {
                    auto& inner = std::get<App>(a.fn.node().v);
                    return Term::integer(std::get<IntLit>(inner.arg.node().v).value +
                                         std::get<IntLit>(a.arg.node().v).value);
                }
                if (auto fn = head_step(a.fn)) return Term::app(*fn, a.arg);
                return std::nullopt;
            },
            [&](const Sel& s) -> std::optional<Term> {
                if (auto* r = std::get_if<Rec>(&s.subject.node().v)) {
                    if (const Term* f = r->record.find(s.label)) return *f;
                    return std::nullopt;  // stuck
                }
                if (auto sub = head_step(s.subject)) return Term::sel(*sub, s.label);
                return std::nullopt;
            },
            [&](const Merge& m) -> std::optional<Term> {
                if (auto* r = std::get_if<Rec>(&m.left.node().v))
                    return Term::record(merge_records(r->record, m.right));
                if (auto l = head_step(m.left)) return Term::merge(*l, m.right);
                return std::nullopt;
            },
            [&](const auto&) -> std::optional<Term> { return std::nullopt; }},
        t.node().v);
}

}  // namespace detail

// Reduce on the head spine only, until the whole term is a record literal.
// Fields are left unevaluated. Empty on fuel exhaustion or when the head
// normal form is not a record.
inline std::optional<RecordLit> whnf_record(const Term& t, int fuel = kDefaultFuel) {
    Term cur = t;
    for (int k = 0; k < fuel; ++k) {
        if (auto* r = std::get_if<Rec>(&cur.node().v)) return r->record;
        auto nxt = detail::head_step(cur);
        if (!nxt) return std::nullopt;
        cur = *nxt;
    }
    return std::nullopt;
}

// Compare normal forms up to alpha when both sides normalize within fuel.
inline std::optional<bool> convertible(const Term& a, const Term& b, int fuel = kDefaultFuel) {
    NormalizeResult na = normalize(a, fuel);
    NormalizeResult nb = normalize(b, fuel);
    if (!na.normal || !nb.normal) return std::nullopt;
    return alpha_eq(na.term, nb.term);
}

}  // namespace lmr
