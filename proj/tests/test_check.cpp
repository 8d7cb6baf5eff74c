#include "doctest.h"
#include "test_helpers.hpp"

using namespace lmr;

namespace {
Type T(const char* s) { return parse_type(s); }
Term M(const char* s) { return parse_term(s); }
}

TEST_SUITE("derivation search") {
    TEST_CASE("merge functions, both typings") {
        CHECK(check({}, M("\\x. x ++ {a = 1}"), T("w -> {a : Int}")).has_value());
        auto d = check({}, M("\\x. x ++ {a = 1}"), T("{b : Int} -> {a : Int} & {b : Int}"));
        REQUIRE(d.has_value());
        CHECK(print_judgment(d->conclusion) ==
              "|- \\x. x ++ {a = 1} : {b : Int} -> {a : Int} & {b : Int}");
    }

    TEST_CASE("composition of merge functions") {
        Term mr1 = M("\\x. x ++ {a = 1}");
        Term mr2 = M("\\x. x ++ {b = 2}");
        Term mr3 = M("\\x. x ++ {a = ()}");
        Hints h;
        h.add_pool(T("w -> {a : Int}"));
        h.add_pool(T("w -> {b : Int}"));
        h.add_pool(T("w -> {a : Unit}"));
        h.add_pool(T("{b : Int}"));
        h.add_pool(T("{a : Unit}"));

        // M_R1 . M_R2 : w -> {a : Int, b : Int}
        Term comp12 = apps(b_comb(), {mr1, mr2});
        CHECK(check({}, comp12, T("w -> {a : Int} & {b : Int}"), h).has_value());

        // M_R1 . M_R3 : w -> {a : Int} but not w -> {a : Unit}
        Term comp13 = apps(b_comb(), {mr1, mr3});
        CHECK(check({}, comp13, T("w -> {a : Int}"), h).has_value());
        CHECK_FALSE(check({}, comp13, T("w -> {a : Unit}"), h).has_value());
    }

    TEST_CASE("omega completeness") {
        testing::Gen gen(67);
        for (int i = 0; i < 200; ++i) {
            Term t = gen.term(3, {"q"});
            Context ctx = Context().extend("q", gen.type(2));
            auto d = check(ctx, t, Type::omega());
            REQUIRE(d.has_value());
            CHECK(d->rule == Rule::Omega);
        }
    }

    TEST_CASE("found derivations verify and conclude the request") {
        testing::Gen gen(71);
        int found = 0;
        for (int i = 0; i < 300; ++i) {
            Term t = gen.term(3, {"q"});
            Type goal = gen.type(2);
            Context ctx = Context().extend("q", gen.type(2));
            auto d = check(ctx, t, goal);  // check() re-verifies internally
            if (!d) continue;
            ++found;
            CHECK(d->conclusion.subject == t);
            CHECK(d->conclusion.ty == goal);
        }
        CHECK(found > 20);
    }

    TEST_CASE("the admissible merge typing") {
        // For record literals with disjoint field types the searcher derives
        // the combined record type: right labels from the right, the rest
        // from the left.
        testing::Gen gen(73);
        for (int i = 0; i < 100; ++i) {
            auto mk = [&](int lo) {
                std::vector<RecordEntry> es;
                std::set<std::string> used;
                for (int k = 0, n = gen.range(1, 3); k < n; ++k) {
                    std::string l = gen.label();
                    if (used.insert(l).second)
                        es.push_back({l, gen.chance(0.5) ? Term::integer(lo) : Term::unit()});
                }
                return RecordLit(es);
            };
            RecordLit left = mk(1), right = mk(2);
            Term t = Term::merge(Term::record(left), right);

            std::vector<std::pair<std::string, Type>> fields;
            for (const auto& e : left.entries())
                if (!right.has_label(e.label))
                    fields.push_back({e.label, std::holds_alternative<IntLit>(e.value.node().v)
                                                   ? int_type()
                                                   : unit_type()});
            for (const auto& e : right.entries())
                fields.push_back({e.label, std::holds_alternative<IntLit>(e.value.node().v)
                                               ? int_type()
                                               : unit_type()});
            Type goal = record_type(fields);
            auto d = check({}, t, goal);
            CAPTURE(print_term(t));
            CAPTURE(print_type(goal));
            CHECK(d.has_value());
        }
    }

    TEST_CASE("subtype monotonicity of found typings") {
        // if check finds s and s <= t, a root Sub derivation of t verifies
        testing::Gen gen(79);
        Subtyper sub;
        int hits = 0;
        for (int i = 0; i < 200; ++i) {
            Term t = gen.term(2, {"q"});
            Type s = gen.type(2);
            Context ctx = Context().extend("q", gen.type(2));
            auto d = check(ctx, t, s);
            if (!d) continue;
            Type wider = gen.type(2);
            if (!sub.subtype(s, wider)) continue;
            ++hits;
            Derivation widened{Rule::Sub, Judgment{ctx, t, wider}, {*d}};
            CHECK_NOTHROW(verify(widened));
            CHECK(check(ctx, t, wider, Hints{}.add_pool(s)).has_value());
        }
        CHECK(hits > 5);
    }

    TEST_CASE("per-argument hints beat the pool") {
        Context ctx = Context().extend("f", T("({a : Int} -> Int) & (Unit -> Unit)"));
        Term t = M("f {a = 3}");
        CHECK(check(ctx, t, T("Int")).has_value());  // synthesized argument type
        Term opaque = M("f ((\\x. x) {a = 3})");
        CHECK_FALSE(check(ctx, opaque, T("Int")).has_value());
        Hints h;
        h.add_arg(M("(\\x. x) {a = 3}"), T("{a : Int}"));
        CHECK(check(ctx, opaque, T("Int"), h).has_value());
    }

    TEST_CASE("fixed point combinator typing") {
        PointTypes p = point_types();
        Type goal = Type::arrow(y_chain_type({p.sigma1, p.sigma2}), p.sigma2);
        Hints h;
        add_y_hints(h, {p.sigma1, p.sigma2});
        auto d = check({}, y_comb(), goal, h);
        REQUIRE(d.has_value());
        CHECK(free_vars(y_comb()).empty());
    }
}
