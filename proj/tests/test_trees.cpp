#include <doctest.h>

#include <map>
#include <set>

#include <gmpxx.h>

#include "fixtures.hpp"
#include "mapscope/trees.hpp"

using namespace mapscope;

namespace {

LabeledTree leaf() { return LabeledTree(1); }
LabeledTree node(int l, std::vector<LabeledTree> c) { return LabeledTree(l, std::move(c)); }

// Counts by dynamic programming over (nodes, label sum) of child forests,
// independent of the enumerator.
mpz_class dp_tree_count(int nodes) {
    const int n = nodes;
    // t[k][j]: non-root subtrees with k nodes and label j.
    // f[k][s]: nonempty forests with k nodes and label sum s.
    std::vector<std::vector<mpz_class>> t(n + 1, std::vector<mpz_class>(n + 1)), f = t;
    for (int k = 1; k <= n; ++k) {
        if (k == 1) t[1][1] = 1;
        for (int s = 1; s <= n; ++s)
            if (k > 1 && f[k - 1][s] != 0)
                for (int j = 1; j <= s; ++j) t[k][j] += f[k - 1][s];
        for (int s = 1; s <= n; ++s) {
            f[k][s] = t[k][s];
            for (int k1 = 1; k1 < k; ++k1)
                for (int j = 1; j < s; ++j) f[k][s] += t[k1][j] * f[k - k1][s - j];
        }
    }
    if (n == 1) return 1;
    mpz_class total = 0;
    for (int s = 1; s <= n; ++s) total += f[n - 1][s];
    return total;
}

mpz_class closed_form(unsigned long n) {
    mpz_class a, b, c;
    mpz_fac_ui(a.get_mpz_t(), 3 * n);
    mpz_fac_ui(b.get_mpz_t(), n);
    mpz_fac_ui(c.get_mpz_t(), 2 * n + 2);
    return 4 * a / (b * c);
}

}  // namespace

TEST_CASE("validate_tree") {
    CHECK(validate_tree(leaf()).ok);
    CHECK(validate_tree(node(2, {leaf(), leaf()})).ok);
    const auto bad = validate_tree(node(3, {leaf(), leaf()}));
    CHECK_FALSE(bad.ok);
    CHECK(bad.message == "root label != child sum");
    CHECK(bad.path.empty());

    const auto deep = validate_tree(node(4, {node(3, {leaf(), leaf()}), leaf()}));
    CHECK_FALSE(deep.ok);
    CHECK(deep.path == std::vector<std::size_t>{0});
    CHECK_FALSE(validate_tree(node(1, {node(2, {})})).ok);
}

TEST_CASE("enumeration counts match the closed form and an independent recurrence") {
    CHECK(enumerate_trees(1).size() == 1);
    CHECK(enumerate_trees(4).size() == 6);
    CHECK(enumerate_trees(6).size() == 91);
    for (int m = 2; m <= 9; ++m) {
        const auto trees = enumerate_trees(static_cast<std::size_t>(m));
        CHECK(mpz_class(trees.size()) == closed_form(m - 1));
        CHECK(mpz_class(trees.size()) == dp_tree_count(m));
    }
    CHECK_THROWS_AS(enumerate_trees(0), PreconditionError);
}

TEST_CASE("enumeration is valid, duplicate-free and deterministic") {
    const auto a = enumerate_trees(7), b = enumerate_trees(7);
    CHECK(a == b);
    std::set<LabeledTree> seen(a.begin(), a.end());
    CHECK(seen.size() == a.size());
    for (const auto& t : a) {
        CHECK(validate_tree(t).ok);
        CHECK(node_count(t) == 7);
    }
}

TEST_CASE("the four-node trees are the drawn ones") {
    std::set<std::string> got;
    for (const auto& t : enumerate_trees(4)) got.insert(format_tree(t));
    CHECK(got == std::set<std::string>(fixtures::kFourEdgeTrees.begin(), fixtures::kFourEdgeTrees.end()));
}

TEST_CASE("restricted enumeration") {
    CHECK(enumerate_restricted_trees(2, 1, true).empty());
    CHECK(enumerate_restricted_trees(5, 3, true).size() == 5);
    CHECK(enumerate_restricted_trees(5, 1, true).size() == 3);
    CHECK_THROWS_AS(enumerate_restricted_trees(0, 1, true), PreconditionError);
    CHECK_THROWS_AS(enumerate_restricted_trees(3, 0, true), PreconditionError);
    for (const auto& t : enumerate_restricted_trees(7, 2, false)) CHECK(validate_tree(t).ok);
}

TEST_CASE("tree_stats") {
    const auto path = parse_tree("(1 (1 (1 (1))))");
    const auto s = tree_stats(path);
    CHECK(s.nodes == 4);
    CHECK(s.leaves == 1);
    CHECK(s.single_child_max_nodes == 3);

    const auto w = tree_stats(parse_tree(fixtures::kWorkedTree));
    CHECK(w.nodes == 11);
    CHECK(w.leaves == 6);
    CHECK(w.internal_nodes == 5);
    CHECK(w.root_label == 4);
    CHECK(w.single_child_max_nodes == 2);

    CHECK_THROWS_AS(tree_stats(node(5, {leaf()})), PreconditionError);
}

TEST_CASE("primitive trees") {
    CHECK(is_primitive_tree(parse_tree("(1 (1 (1) (1)))")));
    CHECK(is_primitive_tree(parse_tree("(3 (1) (1) (1))")));
    CHECK_FALSE(is_primitive_tree(parse_tree(fixtures::kWorkedTree)));
    for (const auto& t : enumerate_trees(7)) CHECK(is_primitive_tree(t) == (tree_stats(t).single_child_max_nodes == 0));
}

TEST_CASE("k-face-free predicate") {
    const auto cycle = parse_tree("(3 (1) (1) (1))");
    CHECK(is_k_face_free_tree(cycle, 2));
    CHECK_FALSE(is_k_face_free_tree(cycle, 4));
    CHECK_FALSE(is_k_face_free_tree(parse_tree("(1 (1 (1) (1)))"), 2));
    CHECK_THROWS_AS(is_k_face_free_tree(cycle, 5), PreconditionError);
    CHECK_THROWS_AS(is_k_face_free_tree(cycle, 1), PreconditionError);
}

TEST_CASE("multiple-edge conditions") {
    CHECK(mef_necessary(parse_tree("(3 (1) (1) (1))")));
    CHECK_FALSE(mef_necessary(parse_tree("(1 (1 (1 (1))))")));
    CHECK(has_no_only_children(parse_tree("(2 (1) (1))")));
    CHECK_FALSE(has_no_only_children(parse_tree("(1 (1))")));
    CHECK_FALSE(has_no_only_children(parse_tree(fixtures::kWorkedTree)));
    for (std::size_t n = 2; n <= 8; ++n)
        for (const auto& t : enumerate_trees(n))
            if (has_no_only_children(t)) CHECK(mef_necessary(t));
}

TEST_CASE("tree text format") {
    CHECK(parse_tree("(1)") == leaf());
    CHECK(parse_tree("(2 (1) (1))") == node(2, {leaf(), leaf()}));
    CHECK(parse_tree("  ( 2\t(1)\n(1) ) ") == node(2, {leaf(), leaf()}));
    CHECK(format_tree(parse_tree(fixtures::kWorkedTree)) == fixtures::kWorkedTree);
    for (const auto& t : enumerate_trees(6)) CHECK(parse_tree(format_tree(t)) == t);

    for (const char* bad : {"", "(", "()", "(1", "(1))", "(a)", "(0)", "(1 1)", "1"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_tree(bad), ParseError);
    }
    try {
        parse_tree("(2 (1) x)");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 7);
    }
}
