#include "doctest.h"
#include "test_helpers.hpp"

using namespace lmr;

TEST_SUITE("terms") {
    TEST_CASE("record literals reject duplicate labels") {
        CHECK_THROWS_AS(RecordLit({{"a", Term::integer(1)}, {"a", Term::integer(2)}}),
                        std::invalid_argument);
        RecordLit ok({{"a", Term::integer(1)}, {"b", Term::integer(2)}});
        CHECK(ok.labels() == std::set<std::string>{"a", "b"});
    }

    TEST_CASE("free variables") {
        CHECK(free_vars(parse_term("\\x. x y")) == std::set<std::string>{"y"});
        CHECK(free_vars(parse_term("{a = 1, b = 2}")).empty());
        CHECK(free_vars(parse_term("\\x. \\self. {X = x, get = self.X}")).empty());
    }

    TEST_CASE("substitution is capture avoiding") {
        // subst(x, x, {a = 1}) = {a = 1}
        Term r = subst(Term::var("x"), "x", parse_term("{a = 1}"));
        CHECK(r == parse_term("{a = 1}"));

        // subst(\y. x, x, y) renames the binder
        Term t = subst(parse_term("\\y. x"), "x", Term::var("y"));
        CHECK(alpha_eq(t, parse_term("\\z. y")));
        auto* l = std::get_if<Lam>(&t.node().v);
        REQUIRE(l != nullptr);
        CHECK(l->binder != "y");

        // subst(self.X, self, point-object) = point-object.X
        Term obj = parse_term("{X = 3, get = 3}");
        CHECK(subst(parse_term("self.X"), "self", obj) == Term::sel(obj, "X"));
    }

    TEST_CASE("substitution free-variable law") {
        testing::Gen gen(1001);
        for (int i = 0; i < 300; ++i) {
            Term body = gen.term(3, {"x", "q"});
            Term repl = gen.term(2, {"q"});
            auto before = free_vars(body);
            auto after = free_vars(subst(body, "x", repl));
            std::set<std::string> expect = before;
            if (before.count("x")) {
                expect.erase("x");
                auto rf = free_vars(repl);
                expect.insert(rf.begin(), rf.end());
            }
            CHECK(after == expect);
        }
    }

    TEST_CASE("alpha equivalence") {
        CHECK(alpha_eq(parse_term("\\x. x"), parse_term("\\y. y")));
        CHECK_FALSE(alpha_eq(parse_term("\\x. \\y. x"), parse_term("\\y. \\x. x")));
        // record entry order is irrelevant
        CHECK(alpha_eq(parse_term("{a = 1, b = 2}"), parse_term("{b = 2, a = 1}")));
        CHECK_FALSE(alpha_eq(parse_term("{a = 1}"), parse_term("{a = 2}")));
        CHECK_FALSE(alpha_eq(parse_term("\\x. x"), parse_term("\\x. \\y. x")));
    }

    TEST_CASE("let sugar desugars to redexes") {
        CHECK(alpha_eq(parse_term("let x = 3 in x"), parse_term("(\\x. x) 3")));
        // nested lets become right-nested applications
        CHECK(alpha_eq(parse_term("let x = 1 in let y = 2 in x + y"),
                       parse_term("(\\x. (\\y. x + y) 2) 1")));
        CHECK_THROWS_AS(let_term("x", parse_term("x + 1"), Term::var("x")), std::invalid_argument);
        // pair pattern
        Term t = parse_term("let (x, y) = {fst = 1, snd = 2} in x + y");
        NormalizeResult r = normalize(t, 100);
        CHECK(r.normal);
        CHECK(r.term == Term::integer(3));
    }

    TEST_CASE("record fuzz keeps labels distinct") {
        testing::Gen gen(42);
        std::function<void(const Term&)> walk = [&](const Term& t) {
            std::visit(overloaded{[&](const Lam& l) { walk(l.body); },
                                  [&](const App& a) {
                                      walk(a.fn);
                                      walk(a.arg);
                                  },
                                  [&](const Rec& r) {
                                      std::set<std::string> seen;
                                      for (const auto& e : r.record.entries()) {
                                          CHECK(seen.insert(e.label).second);
                                          walk(e.value);
                                      }
                                  },
                                  [&](const Sel& s) { walk(s.subject); },
                                  [&](const Merge& m) {
                                      walk(m.left);
                                      std::set<std::string> seen;
                                      for (const auto& e : m.right.entries()) {
                                          CHECK(seen.insert(e.label).second);
                                          walk(e.value);
                                      }
                                  },
                                  [](const auto&) {}},
                       t.node().v);
        };
        for (int i = 0; i < 200; ++i) walk(gen.term(4));
    }
}
