#pragma once
// Goal-directed derivation search. Sound and deliberately incomplete: a
// returned derivation always verifies with the requested conclusion; absence
// means "not found", never "not derivable".
//
// Strategy: w goals close immediately; intersection goals split; arrow goals
// against an abstraction introduce; field goals against a record literal or
// merge use (rec) / the merge rules (right first, decided by the label);
// applications try a finite set of argument types: per-argument hints, a
// type synthesized from simple arguments, Int for additions, the hint pool,
// and w. Inclusion steps are tried at leaves and, as a last resort, from
// pool types below the goal.

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lmr/derivation.hpp"

namespace lmr {

struct Hints {
    // Candidate argument types for any application.
    std::vector<Type> pool;
    // Candidate argument types for specific arguments, keyed by their
    // printed form; consulted before the pool.
    std::map<std::string, std::vector<Type>> per_arg;

    Hints& add_pool(const Type& t) {
        pool.push_back(t);
        return *this;
    }
    Hints& add_arg(const Term& arg, const Type& t) {
        per_arg[print_term(arg)].push_back(t);
        return *this;
    }
};

namespace detail {

class Checker {
public:
    explicit Checker(const Hints& hints) : hints_(hints) {}

    std::optional<Derivation> run(const Context& ctx, const Term& t, const Type& goal) {
        return go(ctx, t, goal, true);
    }

private:
    using Result = std::optional<Derivation>;

    static Derivation node(Rule rule, Context ctx, Term subject, Type ty,
                           std::vector<Derivation> premises = {}) {
        return Derivation{rule, Judgment{std::move(ctx), std::move(subject), std::move(ty)},
                          std::move(premises)};
    }

    // Keyed by owning pointer so a node address is never recycled while the
    // cache is alive.
    const std::string& tstr(const Term& t) {
        auto it = term_strs_.find(t.ptr());
        if (it == term_strs_.end()) it = term_strs_.emplace(t.ptr(), print_term(t)).first;
        return it->second;
    }

    const std::string& ystr(const Type& t) {
        auto it = type_strs_.find(t.ptr());
        if (it == type_strs_.end()) it = type_strs_.emplace(t.ptr(), print_type(t)).first;
        return it->second;
    }

    // Keyed on the full context: derivations embed their contexts, so a
    // memoized result is only valid under the exact context it was built in.
    std::string memo_key(const Context& ctx, const Term& t, const Type& goal, bool allow_sub) {
        std::string key = allow_sub ? "s|" : "n|";
        for (const auto& [name, ty] : ctx.bindings()) key += name + ":" + ystr(ty) + ",";
        key += "|" + tstr(t) + "|" + ystr(goal);
        return key;
    }

    Result go(const Context& ctx, const Term& t, const Type& goal, bool allow_sub) {
        std::string key = memo_key(ctx, t, goal, allow_sub);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        if (depth_ > kMaxDepth) return std::nullopt;
        ++depth_;
        Result r = dispatch(ctx, t, goal, allow_sub);
        --depth_;
        memo_.emplace(std::move(key), r);
        return r;
    }

    Result dispatch(const Context& ctx, const Term& t, const Type& goal, bool allow_sub) {
        // Any term has type w; bridge to other w-equivalent goals by Sub.
        if (is_omega_equiv(goal)) {
            Derivation om = node(Rule::Omega, ctx, t, Type::omega());
            if (std::holds_alternative<TOmega>(goal.node().v)) return om;
            return node(Rule::Sub, ctx, t, goal, {std::move(om)});
        }

        if (auto leaf = exact_leaf(ctx, t, goal)) return leaf;

        if (auto* in = std::get_if<TInter>(&goal.node().v)) {
            auto dl = go(ctx, t, in->left, true);
            if (dl) {
                auto dr = go(ctx, t, in->right, true);
                if (dr) return node(Rule::IntI, ctx, t, goal, {std::move(*dl), std::move(*dr)});
            }
        } else if (auto direct = structural(ctx, t, goal)) {
            return direct;
        }

        if (allow_sub) {
            if (auto d = leaf_sub(ctx, t, goal)) return d;
            for (const Type& cand : sub_candidates(ctx, t)) {
                if (cand == goal || !sub_.subtype(cand, goal)) continue;
                if (auto d = go(ctx, t, cand, false))
                    return node(Rule::Sub, ctx, t, goal, {std::move(*d)});
            }
        }
        return std::nullopt;
    }

    Result exact_leaf(const Context& ctx, const Term& t, const Type& goal) {
        if (auto* v = std::get_if<Var>(&t.node().v)) {
            const Type* bound = ctx.lookup(v->name);
            if (bound && *bound == goal) return node(Rule::Ax, ctx, t, goal);
        } else if (std::holds_alternative<IntLit>(t.node().v)) {
            if (goal == int_type()) return node(Rule::Lit, ctx, t, goal);
        } else if (std::holds_alternative<UnitLit>(t.node().v)) {
            if (goal == unit_type()) return node(Rule::Lit, ctx, t, goal);
        } else if (std::holds_alternative<PrimPlus>(t.node().v)) {
            if (goal == plus_type()) return node(Rule::PlusTy, ctx, t, goal);
        }
        return std::nullopt;
    }

    Result leaf_sub(const Context& ctx, const Term& t, const Type& goal) {
        auto via = [&](Rule rule, const Type& ty) -> Result {
            if (!sub_.subtype(ty, goal)) return std::nullopt;
            return node(Rule::Sub, ctx, t, goal, {node(rule, ctx, t, ty)});
        };
        if (auto* v = std::get_if<Var>(&t.node().v)) {
            const Type* bound = ctx.lookup(v->name);
            if (bound) return via(Rule::Ax, *bound);
        } else if (std::holds_alternative<IntLit>(t.node().v)) {
            return via(Rule::Lit, int_type());
        } else if (std::holds_alternative<UnitLit>(t.node().v)) {
            return via(Rule::Lit, unit_type());
        } else if (std::holds_alternative<PrimPlus>(t.node().v)) {
            return via(Rule::PlusTy, plus_type());
        }
        return std::nullopt;
    }

    Result structural(const Context& ctx, const Term& t, const Type& goal) {
        return std::visit(
            overloaded{
                [&](const Lam& l) -> Result {
                    auto* ar = std::get_if<TArrow>(&goal.node().v);
                    if (!ar) return std::nullopt;
                    auto body = go(ctx.extend(l.binder, ar->dom), l.body, ar->cod, true);
                    if (!body) return std::nullopt;
                    return node(Rule::ArrI, ctx, t, goal, {std::move(*body)});
                },
                [&](const Rec& r) -> Result {
                    auto* f = std::get_if<TField>(&goal.node().v);
                    if (!f) return std::nullopt;
                    const Term* member = r.record.find(f->label);
                    if (!member) return std::nullopt;
                    auto body = go(ctx, *member, f->body, true);
                    if (!body) return std::nullopt;
                    return node(Rule::Rec, ctx, t, goal, {std::move(*body)});
                },
                [&](const Sel& s) -> Result {
                    auto subject = go(ctx, s.subject, Type::field(s.label, goal), true);
                    if (!subject) return std::nullopt;
                    return node(Rule::Sel, ctx, t, goal, {std::move(*subject)});
                },
                [&](const Merge& m) -> Result {
                    auto* f = std::get_if<TField>(&goal.node().v);
                    if (!f) return std::nullopt;
                    if (m.right.has_label(f->label)) {
                        auto p = go(ctx, Term::record(m.right), goal, true);
                        if (!p) return std::nullopt;
                        return node(Rule::MergeR, ctx, t, goal, {std::move(*p)});
                    }
                    auto p = go(ctx, m.left, goal, true);
                    if (!p) return std::nullopt;
                    return node(Rule::MergeL, ctx, t, goal, {std::move(*p)});
                },
                [&](const App& a) -> Result {
                    for (const Type& arg_ty : argument_candidates(ctx, a.fn, a.arg)) {
                        auto fn = go(ctx, a.fn, Type::arrow(arg_ty, goal), true);
                        if (!fn) continue;
                        auto arg = go(ctx, a.arg, arg_ty, true);
                        if (!arg) continue;
                        return node(Rule::ArrE, ctx, t, goal, {std::move(*fn), std::move(*arg)});
                    }
                    return std::nullopt;
                },
                [&](const auto&) -> Result { return std::nullopt; }},
            t.node().v);
    }

    // A type read off a first-order argument shape, when there is one.
    std::optional<Type> synth_simple(const Context& ctx, const Term& t) {
        if (auto* v = std::get_if<Var>(&t.node().v)) {
            const Type* bound = ctx.lookup(v->name);
            if (bound) return *bound;
            return std::nullopt;
        }
        if (std::holds_alternative<IntLit>(t.node().v)) return int_type();
        if (std::holds_alternative<UnitLit>(t.node().v)) return unit_type();
        if (auto* r = std::get_if<Rec>(&t.node().v)) {
            std::vector<std::pair<std::string, Type>> fields;
            for (const auto& e : r->record.entries()) {
                auto fty = synth_simple(ctx, e.value);
                if (!fty) return std::nullopt;
                fields.push_back({e.label, *fty});
            }
            if (fields.empty()) return std::nullopt;
            return record_type(fields);
        }
        if (auto* s = std::get_if<Sel>(&t.node().v)) {
            auto subject = synth_simple(ctx, s->subject);
            if (!subject) return std::nullopt;
            std::vector<Type> bodies;
            for (const auto& c : conjuncts(*subject))
                if (auto* f = std::get_if<TField>(&c.node().v); f && f->label == s->label)
                    bodies.push_back(f->body);
            if (bodies.empty()) return std::nullopt;
            return inters(bodies);
        }
        return std::nullopt;
    }

    static bool is_plus_chain(const Term& t) {
        auto* a = std::get_if<App>(&t.node().v);
        if (!a) return false;
        auto* inner = std::get_if<App>(&a->fn.node().v);
        return inner && std::holds_alternative<PrimPlus>(inner->fn.node().v);
    }

    std::vector<Type> argument_candidates(const Context& ctx, const Term& fn, const Term& arg) {
        std::vector<Type> out;
        std::set<std::string> seen;
        auto add = [&](const Type& ty) {
            if (seen.insert(ystr(ty)).second && out.size() < kMaxCandidates)
                out.push_back(ty);
        };
        if (auto it = hints_.per_arg.find(tstr(arg)); it != hints_.per_arg.end())
            for (const auto& ty : it->second) add(ty);
        if (auto ty = synth_simple(ctx, arg)) add(*ty);
        bool addition = std::holds_alternative<PrimPlus>(fn.node().v) ||
                        (std::get_if<App>(&fn.node().v) &&
                         std::holds_alternative<PrimPlus>(
                             std::get<App>(fn.node().v).fn.node().v)) ||
                        is_plus_chain(arg);
        if (addition) add(int_type());
        for (const auto& ty : hints_.pool) add(ty);
        add(Type::omega());
        return out;
    }

    std::vector<Type> sub_candidates(const Context& ctx, const Term& t) {
        std::vector<Type> out;
        std::set<std::string> seen;
        auto add = [&](const Type& ty) {
            if (seen.insert(ystr(ty)).second && out.size() < kMaxCandidates)
                out.push_back(ty);
        };
        if (auto ty = synth_simple(ctx, t)) add(*ty);
        for (const auto& ty : hints_.pool) add(ty);
        return out;
    }

    static Type plus_type() { return Type::arrow(int_type(), Type::arrow(int_type(), int_type())); }

    static constexpr int kMaxDepth = 2000;
    static constexpr std::size_t kMaxCandidates = 64;

    const Hints& hints_;
    Subtyper sub_;
    std::map<std::string, Result> memo_;
    std::unordered_map<std::shared_ptr<const TermNode>, std::string> term_strs_;
    std::unordered_map<std::shared_ptr<const TypeNode>, std::string> type_strs_;
    int depth_ = 0;
};

}  // namespace detail

// Search for a derivation of ctx |- t : goal. The result, when present, has
// been re-verified independently.
inline std::optional<Derivation> check(const Context& ctx, const Term& t, const Type& goal,
                                       const Hints& hints = {}) {
    detail::Checker checker(hints);
    auto d = checker.run(ctx, t, goal);
    if (d) verify(*d);
    return d;
}

}  // namespace lmr
