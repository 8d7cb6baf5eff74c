#include "doctest.h"
#include "test_helpers.hpp"

using namespace lmr;

TEST_SUITE("class and mixin encodings") {
    TEST_CASE("template fidelity") {
        CHECK(alpha_eq(point_term(), parse_term("\\x. \\self. {X = x, get = self.X}")));
        CHECK(alpha_eq(recpoint_term(), parse_term("\\class. \\x. \\self. {X = x, get = self.X}")));
        CHECK(alpha_eq(y_comb(), parse_term("\\f. (\\x. f (x x)) (\\x. f (x x))")));

        Term y = y_comb();
        std::string Y = print_term(y);
        CHECK(alpha_eq(movable_term(),
                       parse_term("\\super. \\class. \\x. \\self. " + Y + " (" + Y +
                                  " super x) ++ {move = \\dx. " + Y + " (" + Y +
                                  " class (self.X + dx))}")));
        CHECK(alpha_eq(point2d_term(),
                       parse_term("\\super. \\x. \\y. \\self. let c = " + Y +
                                  " (super x) in c ++ {Y = y, get = {fst = c.X, snd = self.Y}}")));
        CHECK(alpha_eq(statepoint_term(),
                       parse_term("\\class. \\x. \\self. {get = x, set = \\x'. {fst = x', snd = ()}, "
                                  "shift = self.set (self.get + 1), new = \\x'. " + Y +
                                  " (class x')}")));
        CHECK(alpha_eq(statemovable_term(),
                       parse_term("\\super. \\class. \\x. \\self. let c = " + Y + " (" + Y +
                                  " super x) in c ++ {move = \\dx. c.set (c.get + dx), new = "
                                  "\\x'. " + Y + " (class x')}")));
        CHECK(alpha_eq(setadapter_term(),
                       parse_term("\\super. \\class. \\x. \\self. let c = " + Y + " (" + Y +
                                  " super x) in c ++ {set = \\p. c.set (p.get), new = \\x'. " + Y +
                                  " (class x')}")));
    }

    TEST_CASE("spec validation") {
        CHECK_THROWS_AS(elaborate_class(ClassSpec{"Bad", {"x"}, {{"m", Term::var("zzz")}}, false,
                                                  false}),
                        std::invalid_argument);
        CHECK_THROWS_AS(elaborate_class(ClassSpec{"Bad", {}, {{"m", Term::integer(1)}}, false,
                                                  true}),
                        std::invalid_argument);  // new needs a recursive class
        CHECK_THROWS_AS(elaborate_mixin(MixinSpec{"Bad", {"x"}, {"y"}, {}, true, false, false}),
                        std::invalid_argument);  // forwarded state must be state
        CHECK_THROWS_AS(
            elaborate_mixin(MixinSpec{"Bad", {"x"}, {"x"}, {{"m", Term::var("c")}}, true, false,
                            false}),
            std::invalid_argument);  // c only with a bound super object
    }

    TEST_CASE("object construction") {
        Term point = new_object(point_term(), {Term::integer(3)}, false);
        auto* rec = std::get_if<Rec>(&point.node().v);
        REQUIRE(rec != nullptr);
        CHECK(normalize(Term::sel(point, "get"), 10000).term == Term::integer(3));

        // recursive construction via the double fixed point
        Term movable = new_object(Term::app(movable_term(), recpoint_term()), {Term::integer(3)},
                                  true);
        CHECK(std::get_if<Rec>(&movable.node().v)->record.labels() ==
              std::set<std::string>{"X", "get", "move"});

        // a class that is not a record factory
        Term weird = parse_term("\\x. \\self. \\y. y");
        CHECK_THROWS_AS(new_object(weird, {Term::integer(1)}, false), EvalError);
    }

    TEST_CASE("the movable computation") {
        Term movable = new_object(Term::app(movable_term(), recpoint_term()), {Term::integer(3)},
                                  true);
        Term moved = Term::app(Term::sel(movable, "move"), Term::integer(4));
        auto rec = whnf_record(moved, 100000);
        REQUIRE(rec.has_value());
        CHECK(rec->labels() == std::set<std::string>{"X", "get", "move"});
        NormalizeResult x = normalize(Term::sel(Term::record(*rec), "X"), 100000);
        REQUIRE(x.normal);
        CHECK(x.term == Term::integer(7));
        // get re-reads the (new) position
        NormalizeResult g = normalize(Term::sel(Term::record(*rec), "get"), 100000);
        REQUIRE(g.normal);
        CHECK(g.term == Term::integer(7));
    }

    TEST_CASE("mixin composition is functional composition") {
        Term m1 = parse_term("\\cls. \\x. \\self. cls x ++ {a = 1}");
        Term m2 = parse_term("\\cls. \\x. \\self. cls x ++ {b = 2}");
        Term cls = parse_term("\\x. {c = x}");
        Term lhs = Term::app(compose_mixins(m2, m1), cls);
        Term rhs = Term::app(m2, Term::app(m1, cls));
        CHECK(convertible(lhs, rhs, 10000) == std::optional<bool>(true));

        // identity wrapper composes to the mixin itself
        Term idm = parse_term("\\s. s");
        CHECK(convertible(Term::app(compose_mixins(idm, m1), cls), Term::app(m1, cls), 10000) ==
              std::optional<bool>(true));
    }

    TEST_CASE("merge dominance of mixin deltas") {
        // fields named in the delta come from the delta, others from super
        Term movable = new_object(Term::app(movable_term(), recpoint_term()), {Term::integer(5)},
                                  true);
        const RecordLit& rec = std::get<Rec>(movable.node().v).record;
        CHECK(*rec.find("X") == Term::integer(5));                       // from super
        CHECK(std::holds_alternative<Lam>(rec.find("move")->node().v));  // from the delta

        Term sm = new_object(
            Term::app(statemovable_term(), Term::lam("class", Term::lam("x", Term::lam("self",
                Term::record(RecordLit({{"get", Term::var("x")},
                                        {"move", Term::integer(0)}})))))),
            {Term::integer(1)}, true);
        const RecordLit& smr = std::get<Rec>(sm.node().v).record;
        // move was overridden by the delta, get survives from super
        CHECK(std::holds_alternative<Lam>(smr.find("move")->node().v));
        CHECK(normalize(Term::sel(sm, "get"), 10000).term == Term::integer(1));
    }

    TEST_CASE("class type constructors") {
        PointTypes p = point_types();
        CHECK(print_type(p.kappa) == "Int -> (w -> {X : Int}) & ({X : Int} -> {X : Int, get : Int})");
        CHECK(class_type({int_type()}, {p.sigma1, p.sigma2}) == p.kappa);
        CHECK_THROWS_AS(class_type({}, {}), std::invalid_argument);
        CHECK_THROWS_AS(class_type({}, {int_type()}), std::invalid_argument);  // not a record type

        StatePointTypes sp = statepoint_types();
        CHECK(rec_class_type({sp.kappa1, sp.kappa2}) ==
              Type::inter(Type::arrow(Type::omega(), sp.kappa1),
                          Type::arrow(sp.kappa1, sp.kappa2)));
        // non-descending chains are rejected unless validation is disabled
        CHECK_THROWS_AS(rec_class_type({sp.kappa2, sp.kappa1}), std::invalid_argument);
        CHECK_NOTHROW(rec_class_type({sp.kappa2, sp.kappa1}, false));
    }

    TEST_CASE("subtype properties of the type families") {
        Subtyper sub;
        StatePointTypes sp = statepoint_types();
        StateMovableTypes sm = statemovable_types();
        SetAdapterTypes sa = setadapter_types();

        // instance chains are descending
        CHECK(sub.subtype(sp.sigma2, sp.sigma1));
        CHECK(sub.subtype(sp.sigma3, sp.sigma2));
        CHECK(sub.subtype(sm.sigma2, sm.sigma1));
        CHECK(sub.subtype(sa.sigma2, sa.sigma1));
        CHECK(sub.subtype(sa.sigma3, sa.sigma2));

        // the delta typing is a consequence of the right merge rule
        CHECK(sub.subtype(sm.sigma2, sm.sigma_delta));
        CHECK(sub.subtype(sa.sigma3, sa.sigma_delta));

        // overriding set with a different domain breaks width subtyping
        CHECK_FALSE(sub.subtype(sa.sigma3, sm.sigma2));
        CHECK_FALSE(sub.subtype(sa.sigma1, sm.sigma1));

        // kappa chains are descending, so composition links by reflexivity
        CHECK(sub.subtype(sp.kappa2, sp.kappa1));
        CHECK(sub.subtype(sm.kappa2, sm.kappa1));
        CHECK(sub.subtype(sa.kappa3, sa.kappa2));
    }

    TEST_CASE("pipeline evaluation") {
        NormalizeResult r = normalize(pipeline_term(), 100000);
        REQUIRE(r.normal);
        CHECK(r.term == Term::integer(3));
        CHECK(run_usage_pipeline(100000) == Term::integer(3));

        // the intermediate move used the pre-adapter set: plain integer state
        NormalizeResult mid = normalize(pipeline_move_observation(), 100000);
        REQUIRE(mid.normal);
        CHECK(mid.term == Term::integer(3));

        // swapping the composition order rewires move to the adapted set,
        // which selects a field from an integer and gets stuck
        NormalizeResult swapped = normalize(pipeline_swapped_move_observation(), 100000);
        REQUIRE(swapped.normal);
        CHECK(swapped.term != Term::integer(3));
        CHECK(free_vars(swapped.term).empty());
        CHECK(std::holds_alternative<Sel>(swapped.term.node().v));
    }

    TEST_CASE("point2d object") {
        Term cls = Term::app(point2d_term(), point_term());
        Term obj = new_object(cls, {Term::integer(3), Term::integer(4)}, false);
        NormalizeResult g = normalize(Term::sel(obj, "get"), 100000);
        REQUIRE(g.normal);
        CHECK(g.term == parse_term("{fst = 3, snd = 4}"));
    }
}
