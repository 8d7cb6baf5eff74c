#pragma once
// Recursive-record encodings of classes and mixins.
//
// A class is a function from state and self to a record; objects are fixed
// points of pre-instantiated classes. Recursive classes abstract over the
// class itself and need a double fixed point. Mixins map classes to classes
// by merging a record of added or overridden members onto the super object.
// Class types are iterated intersections of arrows through a chain of
// instance record types, which lets the fixed-point combinator be typed
// without recursive types.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lmr/check.hpp"
#include "lmr/reduce.hpp"

namespace lmr {

// Curry's fixed point combinator \f. (\x. f (x x)) (\x. f (x x)).
inline Term y_comb() {
    Term half = Term::lam("x", Term::app(Term::var("f"), Term::app(Term::var("x"), Term::var("x"))));
    return Term::lam("f", Term::app(half, half));
}

// Composition combinator \f. \g. \x. f (g x).
inline Term b_comb() {
    return Term::lam(
        "f", Term::lam("g", Term::lam("x", Term::app(Term::var("f"),
                                                     Term::app(Term::var("g"), Term::var("x"))))));
}

inline Term fix(Term t) { return Term::app(y_comb(), std::move(t)); }

inline Term pair_term(Term fst, Term snd) {
    return Term::record(RecordLit({{"fst", std::move(fst)}, {"snd", std::move(snd)}}));
}

struct Member {
    std::string label;
    Term body;
};

// C  ==  \x1..xn. \self. <members>          (non-recursive)
// C' ==  \class. \x1..xn. \self. <members>  (recursive)
// Member bodies may use the state parameters, self, and class when
// recursive. With add_new_member a member new = \x'. Y (class x') is
// appended.
struct ClassSpec {
    std::string name;
    std::vector<std::string> state_params;
    std::vector<Member> members;
    bool recursive = false;
    bool add_new_member = false;
};

// M  ==  \super. \x1..xn. \self. Y (super y*) ++ <delta>
// M' ==  \super. \class. \x1..xn. \self. Y ((Y super) y*) ++ <delta>
// where y* is the forwarded sublist of the state. With bind_super_object the
// super object is let-bound as c around the merge:
//   \super. ... \self. let c = Y ((Y super) y*) in c ++ <delta>
// and delta bodies may refer to c.
struct MixinSpec {
    std::string name;
    std::vector<std::string> state_params;
    std::vector<std::string> forwarded_state;
    std::vector<Member> delta;
    bool recursive = false;
    bool add_new_member = false;
    bool bind_super_object = false;
};

namespace detail {

inline Member new_member(const std::set<std::string>& avoid) {
    std::string x = fresh_name("x'", avoid);
    return {"new", Term::lam(x, fix(Term::app(Term::var("class"), Term::var(x))))};
}

inline void check_member_scope(const std::string& owner, const Member& m,
                               const std::set<std::string>& allowed) {
    for (const auto& v : free_vars(m.body))
        if (!allowed.count(v))
            throw std::invalid_argument(owner + ": member '" + m.label +
                                        "' uses unbound variable '" + v + "'");
}

}  // namespace detail

inline Term elaborate_class(const ClassSpec& spec) {
    if (spec.add_new_member && !spec.recursive)
        throw std::invalid_argument(spec.name + ": a new member requires a recursive class");
    std::set<std::string> allowed(spec.state_params.begin(), spec.state_params.end());
    allowed.insert("self");
    if (spec.recursive) allowed.insert("class");
    for (const auto& m : spec.members) detail::check_member_scope(spec.name, m, allowed);

    std::vector<RecordEntry> entries;
    for (const auto& m : spec.members) entries.push_back({m.label, m.body});
    if (spec.add_new_member) {
        Member n = detail::new_member(allowed);
        entries.push_back({n.label, n.body});
    }
    Term t = Term::record(RecordLit(std::move(entries)));
    t = Term::lam("self", t);
    for (auto it = spec.state_params.rbegin(); it != spec.state_params.rend(); ++it)
        t = Term::lam(*it, t);
    if (spec.recursive) t = Term::lam("class", t);
    return t;
}

inline Term elaborate_mixin(const MixinSpec& spec) {
    if (spec.add_new_member && !spec.recursive)
        throw std::invalid_argument(spec.name + ": a new member requires a recursive mixin");
    std::set<std::string> state(spec.state_params.begin(), spec.state_params.end());
    for (const auto& y : spec.forwarded_state)
        if (!state.count(y))
            throw std::invalid_argument(spec.name + ": forwarded state '" + y +
                                        "' is not a state parameter");
    std::set<std::string> allowed = state;
    allowed.insert("self");
    allowed.insert("super");
    if (spec.recursive) allowed.insert("class");
    if (spec.bind_super_object) allowed.insert("c");
    for (const auto& m : spec.delta) detail::check_member_scope(spec.name, m, allowed);

    Term super_obj = spec.recursive ? fix(Term::var("super")) : Term::var("super");
    for (const auto& y : spec.forwarded_state) super_obj = Term::app(super_obj, Term::var(y));
    super_obj = fix(std::move(super_obj));

    std::vector<RecordEntry> entries;
    for (const auto& m : spec.delta) entries.push_back({m.label, m.body});
    if (spec.add_new_member) {
        Member n = detail::new_member(allowed);
        entries.push_back({n.label, n.body});
    }
    RecordLit delta(std::move(entries));

    Term core = spec.bind_super_object
                    ? Term::app(Term::lam("c", Term::merge(Term::var("c"), delta)), super_obj)
                    : Term::merge(super_obj, delta);
    Term t = Term::lam("self", core);
    for (auto it = spec.state_params.rbegin(); it != spec.state_params.rend(); ++it)
        t = Term::lam(*it, t);
    if (spec.recursive) t = Term::lam("class", t);
    return Term::lam("super", t);
}

// Builds Y (C v*) for plain classes, Y ((Y C) v*) for recursive ones, and
// reduces to the weak-head record form.
inline Term new_object(const Term& class_term, const std::vector<Term>& args, bool recursive,
                       int fuel = kDefaultFuel) {
    Term pre = recursive ? fix(class_term) : class_term;
    Term obj = fix(apps(pre, args));
    Term cur = obj;
    for (int k = 0; k < fuel; ++k) {
        if (std::holds_alternative<Rec>(cur.node().v)) return cur;
        auto nxt = detail::head_step(cur);
        if (!nxt)
            throw EvalError("object construction did not produce a record (head normal form: " +
                            print_term(cur) + ")");
        cur = *nxt;
    }
    throw EvalError("object construction ran out of fuel");
}

// compose(outer, inner) = B outer inner, so compose(m2, m1) C converts to
// m2 (m1 C).
inline Term compose_mixins(const Term& outer, const Term& inner) {
    return Term::app(Term::app(b_comb(), outer), inner);
}

inline bool is_record_type(const Type& t) {
    for (const auto& c : conjuncts(t))
        if (!std::holds_alternative<TField>(c.node().v)) return false;
    return true;
}

// t* -> (w -> s1) & (s1 -> s2) & ... over an instance chain of record types.
struct ClassTypeSpec {
    std::vector<Type> ground_prefix;
    std::vector<Type> instance_chain;
};

inline Type class_type(const ClassTypeSpec& spec) {
    if (spec.instance_chain.empty())
        throw std::invalid_argument("class type needs a non-empty instance chain");
    for (const auto& s : spec.instance_chain)
        if (!is_record_type(s))
            throw std::invalid_argument("instance chain entries must be record types, got " +
                                        print_type(s));
    std::vector<Type> parts;
    parts.push_back(Type::arrow(Type::omega(), spec.instance_chain[0]));
    for (std::size_t i = 0; i + 1 < spec.instance_chain.size(); ++i)
        parts.push_back(Type::arrow(spec.instance_chain[i], spec.instance_chain[i + 1]));
    return arrows(spec.ground_prefix, inters(parts));
}

inline Type class_type(const std::vector<Type>& ground_prefix, const std::vector<Type>& chain) {
    return class_type(ClassTypeSpec{ground_prefix, chain});
}

// (w -> k1) & (k1 -> k2) & ... over a chain of class types. The chain is
// required to be descending (k_{i+1} <= k_i) unless validation is disabled.
inline Type rec_class_type(const std::vector<Type>& chain, bool validate_descending = true) {
    if (chain.empty()) throw std::invalid_argument("recursive class type needs a non-empty chain");
    if (validate_descending) {
        Subtyper sub;
        for (std::size_t i = 0; i + 1 < chain.size(); ++i)
            if (!sub.subtype(chain[i + 1], chain[i]))
                throw std::invalid_argument("class type chain is not descending at position " +
                                            std::to_string(i + 1));
    }
    std::vector<Type> parts;
    parts.push_back(Type::arrow(Type::omega(), chain[0]));
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        parts.push_back(Type::arrow(chain[i], chain[i + 1]));
    return inters(parts);
}

// Argument-type hints that make the checker find the standard fixed-point
// typing Y : (w -> t1) & (t1 -> t2) & ... & (t_{n-1} -> t_n) -> t_n.
inline std::vector<Type> y_hint_pool(const std::vector<Type>& chain) {
    std::vector<Type> out;
    if (chain.empty()) return out;
    Type x = Type::arrow(Type::omega(), chain[0]);
    out.push_back(x);
    for (std::size_t i = 1; i < chain.size(); ++i) {
        x = Type::inter(x, Type::arrow(x, chain[i]));
        out.push_back(x);
    }
    for (const auto& t : chain) out.push_back(t);
    return out;
}

// The chain intersection (w -> t1) & (t1 -> t2) & ...: the type of a
// pre-instantiated class, and the argument type of Y.
inline Type y_chain_type(const std::vector<Type>& chain) {
    std::vector<Type> parts;
    parts.push_back(Type::arrow(Type::omega(), chain.at(0)));
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        parts.push_back(Type::arrow(chain[i], chain[i + 1]));
    return inters(parts);
}

}  // namespace lmr
