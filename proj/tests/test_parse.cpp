#include "doctest.h"
#include "test_helpers.hpp"

using namespace lmr;

TEST_SUITE("parsing and printing") {
    TEST_CASE("grammar basics") {
        Term t = parse_term("(\\x. x) {a = 3}");
        auto* a = std::get_if<App>(&t.node().v);
        REQUIRE(a != nullptr);
        CHECK(std::holds_alternative<Lam>(a->fn.node().v));
        CHECK(std::holds_alternative<Rec>(a->arg.node().v));

        Term m = parse_term("{a = 1} ++ {a = 2}");
        CHECK(std::holds_alternative<Merge>(m.node().v));

        CHECK(parse_term("()") == Term::unit());
        CHECK(parse_term("(+) 1 2") == plus_of(Term::integer(1), Term::integer(2)));
        CHECK(parse_term("1 + 2") == plus_of(Term::integer(1), Term::integer(2)));
        CHECK(parse_term("x.a.b") == Term::sel(Term::sel(Term::var("x"), "a"), "b"));
        // application binds tighter than +, merge binds loosest
        CHECK(parse_term("f x + g y") ==
              plus_of(Term::app(Term::var("f"), Term::var("x")),
                      Term::app(Term::var("g"), Term::var("y"))));
        CHECK(std::holds_alternative<Merge>(parse_term("f x ++ {a = 1}").node().v));
    }

    TEST_CASE("merge right operand must be a record literal") {
        for (const char* bad : {"{a = 1} ++ x", "\\x. {a = 1} ++ x", "x ++ (\\y. y)",
                                "x ++ ({a = 1})", "let d = {a = 1} in x ++ d"}) {
            CAPTURE(bad);
            try {
                parse_term(bad);
                FAIL("expected a parse error for: ", bad);
            } catch (const ParseError& e) {
                CHECK(e.kind == ParseError::Kind::MergeRhsNotRecord);
            }
        }
        // the left operand may be any term
        CHECK_NOTHROW(parse_term("x ++ {a = 1}"));
    }

    TEST_CASE("parse errors carry positions and kinds") {
        try {
            parse_term("{a = 1, a = 2}");
            FAIL("expected duplicate label error");
        } catch (const ParseError& e) {
            CHECK(e.kind == ParseError::Kind::DuplicateLabel);
        }
        try {
            parse_term("let x = x + 1 in x");
            FAIL("expected recursive let error");
        } catch (const ParseError& e) {
            CHECK(e.kind == ParseError::Kind::RecursiveLet);
        }
        try {
            parse_term("(\\x. x");
            FAIL("expected unexpected-end error");
        } catch (const ParseError& e) {
            CHECK(e.kind == ParseError::Kind::UnexpectedEnd);
        }
        try {
            parse_term("{a = 1} ++ x");
        } catch (const ParseError& e) {
            CHECK(e.pos == 8);  // the position of the offending ++
        }
    }

    TEST_CASE("term print/parse round trip") {
        testing::Gen gen(7);
        for (int i = 0; i < 500; ++i) {
            Term t = gen.term(4);
            std::string s = print_term(t);
            CAPTURE(s);
            Term back = parse_term(s);
            CHECK(alpha_eq(t, back));
        }
    }

    TEST_CASE("printing known terms") {
        CHECK(print_term(Term::var("x")) == "x");
        CHECK(print_term(Term::sel(parse_term("{a = 3}"), "a")) == "{a = 3}.a");
        CHECK(print_term(parse_term("(\\x. x) y")) == "(\\x. x) y");
        CHECK(print_term(parse_term("x ++ {a = 1} ++ {b = 2}")) == "x ++ {a = 1} ++ {b = 2}");
        CHECK(print_term(parse_term("1 + 2 + 3")) == "1 + 2 + 3");
        CHECK(print_term(Term::app(Term::plus(), Term::integer(1))) == "(+) 1");
    }

    TEST_CASE("type parse and print") {
        CHECK(parse_type("w") == Type::omega());
        CHECK(parse_type("Int") == int_type());
        CHECK(std::holds_alternative<TVar>(parse_type("alpha").node().v));
        // -> is right associative; & binds tighter
        CHECK(parse_type("Int -> Unit -> Int") ==
              Type::arrow(int_type(), Type::arrow(unit_type(), int_type())));
        CHECK(parse_type("Int & Unit -> Int") ==
              Type::arrow(Type::inter(int_type(), unit_type()), int_type()));
        // record sugar is an intersection of single fields
        CHECK(parse_type("{a : Int, b : Unit}") ==
              Type::inter(Type::field("a", int_type()), Type::field("b", unit_type())));
        // product sugar
        CHECK(parse_type("Int * Unit") == product_type(int_type(), unit_type()));
        CHECK_THROWS_AS(parse_type("{a : Int, a : Unit}"), ParseError);
    }

    TEST_CASE("type print/parse round trip") {
        testing::Gen gen(11);
        for (int i = 0; i < 500; ++i) {
            Type t = gen.type(4);
            std::string s = print_type(t);
            CAPTURE(s);
            CHECK(parse_type(s) == t);
        }
    }
}
