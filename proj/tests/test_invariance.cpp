#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "test_helpers.hpp"

using namespace lmr;

#ifndef LMR_CORPUS_DIR
#define LMR_CORPUS_DIR "corpus"
#endif

namespace {

std::vector<std::pair<std::string, Derivation>> load_corpus() {
    std::vector<std::pair<std::string, Derivation>> out;
    for (const auto& entry : std::filesystem::directory_iterator(LMR_CORPUS_DIR)) {
        if (entry.path().extension() != ".json") continue;
        std::ifstream in(entry.path());
        out.push_back({entry.path().filename().string(),
                       derivation_from_json(nlohmann::json::parse(in))});
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

}  // namespace

TEST_SUITE("type invariance") {
    TEST_CASE("corpus derivations verify and stay typed along reduction") {
        auto corpus = load_corpus();
        REQUIRE(corpus.size() >= 7);
        for (const auto& [name, d] : corpus) {
            CAPTURE(name);
            InvarianceReport r = invariance_test(d, 10000);
            CHECK(r.reached_normal_form);
            CHECK_MESSAGE(r.all_found(), report_to_string(r));
        }
    }

    TEST_CASE("expansion direction") {
        // N => M with M typed; N gets the same type
        auto d = check({}, parse_term("{b = 2} ++ {a = 1}"), parse_type("{a : Int} & {b : Int}"));
        REQUIRE(d.has_value());
        CHECK(check_expansion(*d, parse_term("(\\x. x ++ {a = 1}) {b = 2}")));

        auto lit = check({}, parse_term("3"), parse_type("Int"));
        REQUIRE(lit.has_value());
        CHECK(check_expansion(*lit, parse_term("{a = 3}.a")));
        CHECK(check_expansion(*lit, parse_term("1 + 2")));
        CHECK(check_expansion(*lit, parse_term("(\\x. x) 3")));
    }

    TEST_CASE("harvested hints cover the derivation's types") {
        auto d = check({}, parse_term("\\x. x ++ {a = 1}"),
                       parse_type("{b : Int} -> {a : Int} & {b : Int}"));
        REQUIRE(d.has_value());
        Hints h = harvest_hints(*d);
        std::set<std::string> pool;
        for (const auto& t : h.pool) pool.insert(print_type(t));
        CHECK(pool.count("{b : Int}"));
        CHECK(pool.count("{a : Int}"));
        CHECK(pool.count("Int"));
    }
}
