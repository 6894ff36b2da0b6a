#include <doctest.h>

#include <json.hpp>

#include "mapscope/verify.hpp"

using namespace mapscope;

TEST_CASE("brute_force_av") {
    CHECK(brute_force_av(0) == std::vector<Permutation>{Permutation{}});
    CHECK(brute_force_av(4).size() == 22);
    CHECK(brute_force_av(6).size() == 408);
    CHECK_THROWS_AS(brute_force_av(10), PreconditionError);
}

TEST_CASE("passing suites at small sizes") {
    const auto counts = check_counts(8);
    CHECK(counts.pass());
    CHECK(counts.params.at("max_nodes") == 8);
    CHECK(check_table1(6).pass());
    CHECK(check_kfacefree(6).pass());
    CHECK(check_bounds(4).pass());
    CHECK(check_primitive_series(7).pass());
    CHECK(check_series_identities(12).pass());
    CHECK(check_patterns(4).pass());
}

TEST_CASE("size guards") {
    CHECK_THROWS_AS(check_counts(kMaxTreeNodes + 1), PreconditionError);
    CHECK_THROWS_AS(check_closure(kMaxPermLength + 1), PreconditionError);
    CHECK_THROWS_AS(check_series_identities(kMaxSeriesOrder + 1), PreconditionError);
    CHECK_THROWS_AS(run_suite("nonesuch"), PreconditionError);
}

TEST_CASE("run_suite caps the size") {
    const auto r = run_suite("counts", 5);
    CHECK(r.suite == "counts");
    CHECK(r.params.at("max_nodes") == 5);
}

TEST_CASE("report encodings") {
    VerificationReport r;
    r.suite = "demo";
    r.params["n"] = 3;
    r.checks.push_back({"ok", true, false, "", {}});
    r.checks.push_back({"note", false, true, "seen", {}});
    CHECK(r.pass());
    r.checks.push_back({"bad", false, false, "", {{"(1)", "1", "2"}}});
    CHECK_FALSE(r.pass());

    const auto j = nlohmann::json::parse(r.to_json());
    CHECK(j["suite"] == "demo");
    CHECK(j["status"] == "fail");
    CHECK(j["params"]["n"] == 3);
    CHECK(j["checks"].size() == 3);
    CHECK(j["checks"][2]["witnesses"][0]["object"] == "(1)");

    const auto text = r.to_text();
    CHECK(text.rfind("demo: FAIL", 0) == 0);
    CHECK(text.find("[note] note: seen") != std::string::npos);
    CHECK(text.find("(1)  expected 1, got 2") != std::string::npos);
}
