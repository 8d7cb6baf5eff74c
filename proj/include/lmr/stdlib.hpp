#pragma once
// The worked examples: one-dimensional points, a second-dimension mixin, the
// recursive point, a movable-point mixin, and the get/set/shift discipline
// with its Movable and SetAdapter mixins, their class types, and the usage
// pipeline that threads functional state through set/new/move.

#include <optional>
#include <string>
#include <vector>

#include "lmr/oop.hpp"
#include "lmr/parse.hpp"

namespace lmr {

// ---- simple points ----

// \x. \self. {X = x, get = self.X}
inline Term point_term() {
    ClassSpec spec{"Point",
                   {"x"},
                   {{"X", Term::var("x")}, {"get", Term::sel(Term::var("self"), "X")}},
                   false,
                   false};
    return elaborate_class(spec);
}

// \class. \x. \self. {X = x, get = self.X} — a vacuously recursive point.
inline Term recpoint_term() {
    ClassSpec spec{"RecPoint",
                   {"x"},
                   {{"X", Term::var("x")}, {"get", Term::sel(Term::var("self"), "X")}},
                   true,
                   false};
    return elaborate_class(spec);
}

// Adds a second dimension. The super object is let-bound as c and get
// returns the pair (c.X, self.Y).
inline Term point2d_term() {
    MixinSpec spec{"Point2D",
                   {"x", "y"},
                   {"x"},
                   {{"Y", Term::var("y")},
                    {"get", pair_term(Term::sel(Term::var("c"), "X"),
                                      Term::sel(Term::var("self"), "Y"))}},
                   false,
                   false,
                   true};
    return elaborate_mixin(spec);
}

// move re-instantiates the class at a shifted position:
//   \super. \class. \x. \self.
//     Y ((Y super) x) ++ {move = \dx. Y ((Y class) (self.X + dx))}
inline Term movable_term() {
    Term move_body = Term::lam(
        "dx", fix(Term::app(fix(Term::var("class")),
                            plus_of(Term::sel(Term::var("self"), "X"), Term::var("dx")))));
    MixinSpec spec{"Movable", {"x"}, {"x"}, {{"move", move_body}}, true, false, false};
    return elaborate_mixin(spec);
}

struct PointTypes {
    Type sigma1;  // {X : Int}
    Type sigma2;  // {X : Int, get : Int}
    Type kappa;   // Int -> (w -> s1) & (s1 -> s2)
};

inline PointTypes point_types() {
    Type s1 = record_type({{"X", int_type()}});
    Type s2 = record_type({{"X", int_type()}, {"get", int_type()}});
    return {s1, s2, class_type({int_type()}, {s1, s2})};
}

struct MovableTypes {
    Type sigma3;  // s2 & {move : Int -> s2}
    Type kappa1;  // the point class type
    Type kappa2;  // Int -> (w -> s1) & (s1 -> s3)
    Type goal;    // (w -> k1) -> (w -> k1) & ((w -> k1) -> k2)
};

// The class parameter of the mixin is typed w -> k1 throughout (it is used
// under a double fixed point), so the second conjunct of the result is an
// arrow from w -> k1 rather than from k1 itself.
inline MovableTypes movable_types() {
    PointTypes p = point_types();
    Type s3 = Type::inter(p.sigma2, Type::field("move", Type::arrow(int_type(), p.sigma2)));
    Type k1 = p.kappa;
    Type k2 = class_type({int_type()}, {p.sigma1, s3});
    Type wk1 = Type::arrow(Type::omega(), k1);
    Type goal = Type::arrow(wk1, Type::inter(wk1, Type::arrow(wk1, k2)));
    return {s3, k1, k2, goal};
}

struct Point2dTypes {
    Type sigma1;  // {X : Int, Y : Int}
    Type sigma2;  // {X : Int, Y : Int, get : Int * Int}
    Type applied; // Int -> Int -> (w -> s1) & (s1 -> s2), for Point2D(Point)
};

inline Point2dTypes point2d_types() {
    Type s1 = record_type({{"X", int_type()}, {"Y", int_type()}});
    Type s2 = record_type(
        {{"X", int_type()}, {"Y", int_type()}, {"get", product_type(int_type(), int_type())}});
    return {s1, s2, class_type({int_type(), int_type()}, {s1, s2})};
}

// ---- the get/set/shift discipline ----

// \class. \x. \self. {get = x, set = \x'. (x', ()), shift = self.set (self.get + 1),
//                     new = \x'. Y (class x')}
inline Term statepoint_term() {
    Term set_body = Term::lam("x'", pair_term(Term::var("x'"), Term::unit()));
    Term shift_body = Term::app(Term::sel(Term::var("self"), "set"),
                                plus_of(Term::sel(Term::var("self"), "get"), Term::integer(1)));
    ClassSpec spec{"StatePoint",
                   {"x"},
                   {{"get", Term::var("x")}, {"set", set_body}, {"shift", shift_body}},
                   true,
                   true};
    return elaborate_class(spec);
}

// \super. \class. \x. \self. let c = Y ((Y super) x) in
//   c ++ {move = \dx. c.set (c.get + dx), new = \x'. Y (class x')}
inline Term statemovable_term() {
    Term move_body = Term::lam(
        "dx", Term::app(Term::sel(Term::var("c"), "set"),
                        plus_of(Term::sel(Term::var("c"), "get"), Term::var("dx"))));
    MixinSpec spec{"StateMovable", {"x"}, {"x"}, {{"move", move_body}}, true, true, true};
    return elaborate_mixin(spec);
}

// \super. \class. \x. \self. let c = Y ((Y super) x) in
//   c ++ {set = \p. c.set (p.get), new = \x'. Y (class x')}
inline Term setadapter_term() {
    Term set_body = Term::lam("p", Term::app(Term::sel(Term::var("c"), "set"),
                                             Term::sel(Term::var("p"), "get")));
    MixinSpec spec{"SetAdapter", {"x"}, {"x"}, {{"set", set_body}}, true, true, true};
    return elaborate_mixin(spec);
}

struct StatePointTypes {
    Type sigma1, sigma2, sigma3;
    Type kappa1, kappa2;
    Type kprime;
};

inline StatePointTypes statepoint_types() {
    Type iu = product_type(int_type(), unit_type());
    Type set_ty = Type::arrow(int_type(), iu);
    Type s1 = record_type({{"get", int_type()},
                           {"set", set_ty},
                           {"shift", Type::omega()},
                           {"new", Type::arrow(int_type(), Type::omega())}});
    Type s2 = record_type({{"get", int_type()},
                           {"set", set_ty},
                           {"shift", iu},
                           {"new", Type::arrow(int_type(), Type::omega())}});
    Type s3 = record_type(
        {{"get", int_type()}, {"set", set_ty}, {"shift", iu}, {"new", Type::arrow(int_type(), s2)}});
    Type k1 = class_type({int_type()}, {s1, s2});
    Type k2 = class_type({int_type()}, {s1, s2, s3});
    return {s1, s2, s3, k1, k2, rec_class_type({k1, k2})};
}

struct StateMovableTypes {
    Type sigma1, sigma2;
    Type sigma_delta;  // the conjunct induced by the mixin description
    Type kappa1, kappa2;
    Type kprime;
    Type goal;  // statepoint kprime -> kprime
};

inline StateMovableTypes statemovable_types() {
    Type iu = product_type(int_type(), unit_type());
    Type inherited =
        record_type({{"get", int_type()}, {"set", Type::arrow(int_type(), iu)}, {"shift", iu}});
    Type move_ty = Type::arrow(int_type(), iu);
    Type s1 = Type::inter(inherited, record_type({{"move", move_ty},
                                                  {"new", Type::arrow(int_type(), Type::omega())}}));
    Type sd = record_type({{"move", move_ty}, {"new", Type::arrow(int_type(), s1)}});
    Type s2 = Type::inter(inherited, sd);
    Type k1 = class_type({int_type()}, {s1});
    Type k2 = class_type({int_type()}, {s1, s2});
    Type kp = rec_class_type({k1, k2});
    return {s1, s2, sd, k1, k2, kp, Type::arrow(statepoint_types().kprime, kp)};
}

struct SetAdapterTypes {
    Type sigma1, sigma2, sigma3;
    Type sigma_delta;
    Type kappa1, kappa2, kappa3;
    Type kprime;
    Type goal;  // statemovable kprime -> kprime
};

inline SetAdapterTypes setadapter_types() {
    Type iu = product_type(int_type(), unit_type());
    Type inherited = record_type(
        {{"get", int_type()}, {"shift", iu}, {"move", Type::arrow(int_type(), iu)}});
    Type set_ty = Type::arrow(record_type({{"get", int_type()}}), iu);
    auto delta = [&](const Type& new_cod) {
        return record_type({{"set", set_ty}, {"new", Type::arrow(int_type(), new_cod)}});
    };
    Type s1 = Type::inter(inherited, delta(Type::omega()));
    Type s2 = Type::inter(inherited, delta(s1));
    Type s3 = Type::inter(inherited, delta(s2));
    Type k1 = class_type({int_type()}, {s1});
    Type k2 = class_type({int_type()}, {s1, s2});
    Type k3 = class_type({int_type()}, {s1, s2, s3});
    Type kp = rec_class_type({k1, k2, k3});
    return {s1, s2, s3, delta(s2), k1, k2, k3, kp, Type::arrow(statemovable_types().kprime, kp)};
}

// ---- merge-function examples ----

// \x. x ++ {a = 1} and friends.
inline Term put_field_term(const std::string& label, Term value) {
    return Term::lam("x", Term::merge(Term::var("x"), RecordLit({{label, std::move(value)}})));
}

// ---- hints ----
//
// Hints are attached to the application arguments that actually occur in the
// elaborated terms, so the search stays narrow. The fixed point combinator
// needs candidates for its internal self-applications: x x covers the chain
// elements, and each half of Y the accumulated (w -> t1) & ... types.

inline void add_y_hints(Hints& h, const std::vector<Type>& chain) {
    Term xx = Term::app(Term::var("x"), Term::var("x"));
    Term half = Term::lam("x", Term::app(Term::var("f"), xx));
    for (const auto& t : chain) h.add_arg(xx, t);
    for (const auto& t : y_hint_pool(chain))
        if (std::holds_alternative<TArrow>(t.node().v) || std::holds_alternative<TInter>(t.node().v))
            h.add_arg(half, t);
}

// The argument of the outer fixed point of a recursive mixin's super object,
// (Y super) applied to the forwarded state.
inline Term super_preinstance_arg(const std::vector<std::string>& forwarded) {
    Term t = fix(Term::var("super"));
    for (const auto& y : forwarded) t = Term::app(t, Term::var(y));
    return t;
}

inline Term class_new_arg() { return Term::app(Term::var("class"), Term::var("x'")); }

inline Hints statepoint_hints() {
    StatePointTypes t = statepoint_types();
    Hints h;
    add_y_hints(h, {t.sigma1, t.sigma2});
    h.add_arg(class_new_arg(), y_chain_type({t.sigma1, t.sigma2}));
    return h;
}

inline Hints statemovable_hints() {
    StatePointTypes p = statepoint_types();
    StateMovableTypes m = statemovable_types();
    Hints h;
    // The super object is built at the full point chain: Y super : k2, the
    // pre-instance at the sigma chain, and c at sigma3.
    add_y_hints(h, {p.kappa1, p.kappa2});
    add_y_hints(h, {p.sigma1, p.sigma2, p.sigma3});
    h.add_arg(super_preinstance_arg({"x"}), y_chain_type({p.sigma1, p.sigma2, p.sigma3}));
    h.add_arg(fix(super_preinstance_arg({"x"})), p.sigma3);  // c
    // new re-instantiates at the movable chain.
    add_y_hints(h, {m.sigma1});
    h.add_arg(class_new_arg(), y_chain_type({m.sigma1}));
    return h;
}

inline Hints setadapter_hints() {
    StateMovableTypes m = statemovable_types();
    SetAdapterTypes a = setadapter_types();
    Hints h;
    add_y_hints(h, {m.kappa1, m.kappa2});
    add_y_hints(h, {m.sigma1, m.sigma2});
    h.add_arg(super_preinstance_arg({"x"}), y_chain_type({m.sigma1, m.sigma2}));
    h.add_arg(fix(super_preinstance_arg({"x"})), m.sigma2);  // c
    // new is re-typed once per position in the three-link chain.
    add_y_hints(h, {a.sigma1});
    add_y_hints(h, {a.sigma1, a.sigma2});
    h.add_arg(class_new_arg(), y_chain_type({a.sigma1}));
    h.add_arg(class_new_arg(), y_chain_type({a.sigma1, a.sigma2}));
    return h;
}

inline Hints composed_hints() {
    StatePointTypes p = statepoint_types();
    StateMovableTypes m = statemovable_types();
    SetAdapterTypes a = setadapter_types();
    Hints h;
    for (const auto& part : {statepoint_hints(), statemovable_hints(), setadapter_hints()})
        for (const auto& [key, types] : part.per_arg)
            for (const auto& ty : types) h.per_arg[key].push_back(ty);
    // Arguments of the composition combinator.
    h.add_arg(statepoint_term(), p.kprime);
    h.add_arg(statemovable_term(), m.goal);
    h.add_arg(setadapter_term(), a.goal);
    h.add_arg(Term::app(Term::var("g"), Term::var("x")), m.kprime);
    return h;
}

inline Hints movable_hints() {
    PointTypes p = point_types();
    MovableTypes m = movable_types();
    Hints h;
    add_y_hints(h, {p.sigma1, p.sigma2});
    add_y_hints(h, {m.kappa1});
    add_y_hints(h, {p.sigma1, m.sigma3});
    h.add_arg(super_preinstance_arg({"x"}), y_chain_type({p.sigma1, p.sigma2}));
    h.add_arg(super_preinstance_arg({"x"}), y_chain_type({p.sigma1, m.sigma3}));
    // move re-instantiates through Y ((Y class) (self.X + dx)).
    Term reinstance = Term::app(fix(Term::var("class")),
                                plus_of(Term::sel(Term::var("self"), "X"), Term::var("dx")));
    h.add_arg(reinstance, y_chain_type({p.sigma1, p.sigma2}));
    h.add_arg(reinstance, y_chain_type({p.sigma1, m.sigma3}));
    return h;
}

inline Hints point2d_hints() {
    PointTypes p = point_types();
    Hints h;
    add_y_hints(h, {p.sigma1, p.sigma2});
    h.add_arg(point_term(), p.kappa);
    h.add_arg(Term::app(Term::var("super"), Term::var("x")), y_chain_type({p.sigma1, p.sigma2}));
    Term super_obj = fix(Term::app(Term::var("super"), Term::var("x")));
    h.add_arg(super_obj, p.sigma1);
    h.add_arg(super_obj, p.sigma2);
    return h;
}

// ---- stdlib catalogue ----

struct StdlibTyping {
    Type goal;
    Hints hints;
};

struct StdlibEntry {
    std::string name;
    std::string summary;
    Term term;
    std::vector<StdlibTyping> typings;  // goals for the term itself
};

inline std::vector<StdlibEntry> stdlib() {
    std::vector<StdlibEntry> out;
    PointTypes p = point_types();
    MovableTypes mv = movable_types();
    Point2dTypes p2 = point2d_types();
    StatePointTypes sp = statepoint_types();
    StateMovableTypes sm = statemovable_types();
    SetAdapterTypes sa = setadapter_types();

    out.push_back({"point", "one-dimensional point class", point_term(), {{p.kappa, {}}}});
    out.push_back({"recpoint", "vacuously recursive point class", recpoint_term(),
                   {{Type::arrow(Type::omega(), p.kappa), {}}}});
    out.push_back({"point2d", "mixin adding a second dimension", point2d_term(), {}});
    out.push_back({"point2d-applied", "the second-dimension mixin applied to point",
                   Term::app(point2d_term(), point_term()), {{p2.applied, point2d_hints()}}});
    out.push_back({"movable", "mixin whose move re-instantiates the class", movable_term(),
                   {{mv.goal, movable_hints()}}});
    out.push_back({"ycomb", "fixed point combinator", y_comb(),
                   {{Type::arrow(y_chain_type({p.sigma1, p.sigma2}), p.sigma2),
                     [&] {
                         Hints h;
                         for (const auto& ty : y_hint_pool({p.sigma1, p.sigma2})) h.add_pool(ty);
                         return h;
                     }()}}});
    out.push_back({"put-a-int", "function merging {a = 1} onto its argument",
                   put_field_term("a", Term::integer(1)),
                   {{Type::arrow(Type::omega(), Type::field("a", int_type())), {}},
                    {Type::arrow(Type::field("b", int_type()),
                                 record_type({{"a", int_type()}, {"b", int_type()}})),
                     {}}}});
    out.push_back({"put-b-int", "function merging {b = 2} onto its argument",
                   put_field_term("b", Term::integer(2)),
                   {{Type::arrow(Type::omega(), Type::field("b", int_type())), {}}}});
    out.push_back({"put-a-unit", "function merging {a = ()} onto its argument",
                   put_field_term("a", Term::unit()),
                   {{Type::arrow(Type::omega(), Type::field("a", unit_type())), {}}}});
    out.push_back(
        {"statepoint", "point with get/set/shift and functional state", statepoint_term(),
         {{sp.kprime, statepoint_hints()}}});
    out.push_back({"statemovable", "mixin adding move via get/set delegation", statemovable_term(),
                   {{sm.goal, statemovable_hints()}}});
    out.push_back({"setadapter", "mixin adapting set to take a point-like argument",
                   setadapter_term(), {{sa.goal, setadapter_hints()}}});
    out.push_back({"composed", "setadapter after statemovable, applied to statepoint",
                   Term::app(compose_mixins(setadapter_term(), statemovable_term()),
                             statepoint_term()),
                   {{sa.kprime, composed_hints()}}});
    return out;
}

inline std::optional<StdlibEntry> stdlib_entry(const std::string& name) {
    for (auto& e : stdlib())
        if (e.name == name) return e;
    return std::nullopt;
}

// ---- the usage pipeline ----

// let C = (setadapter . statemovable) statepoint in
// let p1 = Y ((Y C) 1) in let p2 = Y ((Y statepoint) 2) in
// let (x, r) = p1.set p2 in let p1' = p1.new x in
// let (x', r') = p1'.move 1 in let p1'' = p1'.new x' in p1''.get
inline Term pipeline_term() {
    Term composed = Term::app(compose_mixins(setadapter_term(), statemovable_term()),
                              statepoint_term());
    auto v = [](const char* n) { return Term::var(n); };
    Term body = Term::sel(v("p1''"), "get");
    body = let_term("p1''", Term::app(Term::sel(v("p1'"), "new"), v("x'")), body);
    body = let_pair_term("x'", "r'", Term::app(Term::sel(v("p1'"), "move"), Term::integer(1)), body);
    body = let_term("p1'", Term::app(Term::sel(v("p1"), "new"), v("x")), body);
    body = let_pair_term("x", "r", Term::app(Term::sel(v("p1"), "set"), v("p2")), body);
    body = let_term("p2", fix(Term::app(fix(statepoint_term()), Term::integer(2))), body);
    body = let_term("p1", fix(Term::app(fix(v("C")), Term::integer(1))), body);
    body = let_term("C", composed, body);
    return body;
}

// Runs the pipeline to normal form; the result is the final position read.
inline Term run_usage_pipeline(int fuel = kDefaultFuel) {
    NormalizeResult r = normalize(pipeline_term(), fuel);
    if (!r.normal) throw EvalError("usage pipeline ran out of fuel");
    return r.term;
}

// The intermediate move result: fst (p1'.move 1). It uses the set method
// captured before the adapter was applied, so it is a plain integer.
inline Term pipeline_move_observation() {
    Term composed = Term::app(compose_mixins(setadapter_term(), statemovable_term()),
                              statepoint_term());
    auto v = [](const char* n) { return Term::var(n); };
    Term body = Term::sel(Term::app(Term::sel(v("p1'"), "move"), Term::integer(1)), "fst");
    body = let_term("p1'", Term::app(Term::sel(v("p1"), "new"), v("x")), body);
    body = let_pair_term("x", "r", Term::app(Term::sel(v("p1"), "set"), v("p2")), body);
    body = let_term("p2", fix(Term::app(fix(statepoint_term()), Term::integer(2))), body);
    body = let_term("p1", fix(Term::app(fix(v("C")), Term::integer(1))), body);
    body = let_term("C", composed, body);
    return body;
}

// Same observation with the composition order swapped: move now resolves to
// the adapted set, which selects a field from an integer and gets stuck.
inline Term pipeline_swapped_move_observation() {
    Term composed = Term::app(compose_mixins(statemovable_term(), setadapter_term()),
                              statepoint_term());
    auto v = [](const char* n) { return Term::var(n); };
    Term body = Term::sel(Term::app(Term::sel(v("p1"), "move"), Term::integer(1)), "fst");
    body = let_term("p1", fix(Term::app(fix(v("C")), Term::integer(1))), body);
    body = let_term("C", composed, body);
    return body;
}

}  // namespace lmr
