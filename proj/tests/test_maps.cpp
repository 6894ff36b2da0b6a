#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "fixtures.hpp"
#include "mapscope/maps.hpp"
#include "mapscope/trees.hpp"

using namespace mapscope;

namespace {

// Orbit sizes of a permutation composed from two arrays, written out directly.
std::multiset<std::size_t> orbit_sizes(const std::vector<int>& p) {
    std::vector<bool> seen(p.size());
    std::multiset<std::size_t> out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
            seen[j] = true;
            ++len;
        }
        out.insert(len);
    }
    return out;
}

std::vector<int> phi_of(const CombinatorialMap& m) {
    std::vector<int> phi(m.n_darts());
    for (std::size_t d = 0; d < phi.size(); ++d) phi[d] = m.sigma[static_cast<std::size_t>(m.alpha[d])];
    return phi;
}

// The same map with darts renamed by `perm`.
CombinatorialMap relabel(const CombinatorialMap& m, const std::vector<int>& perm) {
    CombinatorialMap r{std::vector<int>(m.n_darts()), std::vector<int>(m.n_darts()), perm[m.root]};
    for (std::size_t d = 0; d < m.n_darts(); ++d) {
        r.alpha[perm[d]] = perm[m.alpha[d]];
        r.sigma[perm[d]] = perm[m.sigma[d]];
    }
    return r;
}

CombinatorialMap loop() { return {{1, 0}, {1, 0}, 0}; }

// Two triangles glued at one vertex: cut vertex.
CombinatorialMap bowtie() {
    // Edges (a-b) (b-c) (c-a) (a-d) (d-e) (e-a); a has four darts.
    // darts: e0=(0,1) a->b, e1=(2,3) b->c, e2=(4,5) c->a, e3=(6,7) a->d, e4=(8,9) d->e, e5=(10,11) e->a
    std::vector<int> alpha{1, 0, 3, 2, 5, 4, 7, 6, 9, 8, 11, 10};
    std::vector<int> sigma(12);
    // vertex a: 0, 5, 6, 11 ; b: 1, 2 ; c: 3, 4 ; d: 7, 8 ; e: 9, 10
    auto cyc = [&](std::vector<int> v) {
        for (std::size_t i = 0; i < v.size(); ++i) sigma[v[i]] = v[(i + 1) % v.size()];
    };
    cyc({0, 5, 6, 11});
    cyc({1, 2});
    cyc({3, 4});
    cyc({7, 8});
    cyc({9, 10});
    return {alpha, sigma, 0};
}

}  // namespace

TEST_CASE("validate_map") {
    CHECK(validate_map(fixtures::single_edge()).ok);
    CHECK(validate_map(fixtures::digon()).ok);
    CHECK(validate_map(fixtures::digon(3)).ok);
    CombinatorialMap fixed{{0, 1}, {0, 1}, 0};
    CHECK(validate_map(fixed).message == "alpha not fixed-point-free");
    CHECK_FALSE(validate_map({{}, {}, 0}).ok);
    CHECK_FALSE(validate_map({{1, 0}, {0, 0}, 0}).ok);
    CHECK_FALSE(validate_map({{1, 0}, {0, 1}, 2}).ok);
    // two disjoint edges
    CHECK_FALSE(validate_map({{1, 0, 3, 2}, {0, 1, 2, 3}, 0}).ok);
    for (const auto& m : fixtures::four_edge_maps()) CHECK(validate_map(m).ok);
    CHECK(validate_map(fixtures::parallel_hexagon()).ok);
}

TEST_CASE("faces, vertices and the root face") {
    const auto one = faces(fixtures::single_edge());
    CHECK(one.faces.size() == 1);
    CHECK(one.root_face().degree() == 2);
    CHECK(vertex_count(fixtures::single_edge()) == 2);

    const auto d = faces(fixtures::digon());
    CHECK(d.faces.size() == 2);
    CHECK(vertex_count(fixtures::digon()) == 2);

    const auto maps = fixtures::four_edge_maps();
    const auto parallel = faces(maps[0]);
    CHECK(parallel.faces.size() == 4);
    CHECK(parallel.degree_histogram.at(2) == 4);
    CHECK(parallel.root_face().degree() == 2);
    const auto cycle = faces(maps[5]);
    CHECK(cycle.faces.size() == 2);
    CHECK(cycle.degree_histogram.at(4) == 2);

    for (const auto& m : maps) {
        const auto r = faces(m);
        std::multiset<std::size_t> degs;
        for (const auto& f : r.faces) degs.insert(f.degree());
        CHECK(degs == orbit_sizes(phi_of(m)));
        CHECK(vertex_count(m) == orbit_sizes(m.sigma).size());
        CHECK(std::find(r.root_face().darts.begin(), r.root_face().darts.end(), m.root) != r.root_face().darts.end());
    }
}

TEST_CASE("separability and multiple edges") {
    CHECK(is_nonseparable(fixtures::single_edge()));
    CHECK_FALSE(is_nonseparable(loop()));
    CHECK_FALSE(is_nonseparable(bowtie()));
    CHECK(validate_map(bowtie()).ok);
    for (const auto& m : fixtures::four_edge_maps()) CHECK(is_nonseparable(m));

    CHECK(has_multiple_edges(fixtures::digon()));
    CHECK_FALSE(has_multiple_edges(fixtures::four_edge_maps()[5]));
    CHECK(has_multiple_edges(fixtures::parallel_hexagon()));
    CHECK(is_k_face_free_map(fixtures::parallel_hexagon(), 2));
}

TEST_CASE("internal 2-faces") {
    const auto maps = fixtures::four_edge_maps();
    CHECK(internal_2face_count(maps[0]) == 3);
    CHECK(internal_2face_count(maps[5]) == 0);
    CHECK(internal_2face_count(tree_to_map(parse_tree(fixtures::kWorkedTree))) == 2);
}

TEST_CASE("canonical codes") {
    const auto e = fixtures::single_edge();
    CHECK(canonical_code(e) == canonical_code(relabel(e, {1, 0})));
    CHECK(canonical_code(fixtures::digon(0)) == canonical_code(fixtures::digon(1)));

    const auto maps = fixtures::four_edge_maps();
    std::set<CanonicalCode> codes;
    for (const auto& m : maps) codes.insert(canonical_code(m));
    CHECK(codes.size() == 6);

    std::vector<int> perm(8);
    std::iota(perm.begin(), perm.end(), 0);
    int tried = 0;
    do {
        for (const auto& m : maps) CHECK(canonical_code(relabel(m, perm)) == canonical_code(m));
    } while (std::next_permutation(perm.begin(), perm.end()) && ++tried < 200);
}

TEST_CASE("tree_to_map") {
    CHECK(canonical_code(tree_to_map(parse_tree("(1)"))) == canonical_code(fixtures::single_edge()));
    CHECK(tree_to_map(parse_tree("(1)")) == single_edge_map());

    const auto maps = fixtures::four_edge_maps();
    for (std::size_t i = 0; i < maps.size(); ++i) {
        CAPTURE(fixtures::kFourEdgeTrees[i]);
        CHECK(canonical_code(tree_to_map(parse_tree(fixtures::kFourEdgeTrees[i]))) == canonical_code(maps[i]));
    }

    const auto w = tree_to_map(parse_tree(fixtures::kWorkedTree));
    CHECK(w.n_edges() == 11);
    CHECK(vertex_count(w) == 7);
    CHECK(faces(w).faces.size() == 6);
    CHECK(faces(w).root_face().degree() == 5);

    CHECK_THROWS_AS(tree_to_map(LabeledTree(2)), PreconditionError);
}

TEST_CASE("tree_to_map is injective and lands in nonseparable maps") {
    for (std::size_t n = 1; n <= 7; ++n) {
        std::set<CanonicalCode> codes;
        const auto trees = enumerate_trees(n);
        for (const auto& t : trees) {
            const auto m = tree_to_map(t);
            CHECK(validate_map(m).ok);
            CHECK(is_nonseparable(m));
            CHECK(m.n_edges() == n);
            codes.insert(canonical_code(m));
        }
        CHECK(codes.size() == trees.size());
    }
}

TEST_CASE("map record format") {
    CHECK(format_map(fixtures::single_edge()) == R"({"n_darts":2,"alpha":[1,0],"sigma":[0,1],"root":0})");
    for (const auto& m : {fixtures::single_edge(), fixtures::digon(2), fixtures::parallel_hexagon()})
        CHECK(parse_map(format_map(m)) == m);
    CHECK_THROWS(parse_map("{"));
    CHECK_THROWS(parse_map(R"({"n_darts":2,"alpha":[1,0],"sigma":[0,1]})"));
    CHECK_THROWS(parse_map(R"({"n_darts":2,"alpha":[1,1],"sigma":[0,1],"root":0})"));
    CHECK_THROWS(parse_map(R"({"n_darts":4,"alpha":[1,0],"sigma":[0,1],"root":0})"));
}
