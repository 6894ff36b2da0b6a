#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mapscope/error.hpp"
#include "mapscope/trees.hpp"

namespace mapscope {

using Dart = int;

/// Rooted planar map as a rotation system on darts (half-edges).
///
/// `alpha` pairs the two darts of each edge, `sigma` gives the next dart
/// counterclockwise around the source vertex, and faces are the orbits of
/// phi = sigma o alpha. The root face is the phi-orbit of `root`, i.e. the
/// face on the right of the root dart.
struct CombinatorialMap {
    std::vector<Dart> alpha;
    std::vector<Dart> sigma;
    Dart root = 0;

    std::size_t n_darts() const noexcept { return alpha.size(); }
    std::size_t n_edges() const noexcept { return alpha.size() / 2; }
    Dart phi(Dart d) const { return sigma[static_cast<std::size_t>(alpha[static_cast<std::size_t>(d)])]; }

    friend bool operator==(const CombinatorialMap&, const CombinatorialMap&) = default;
};

struct Face {
    std::vector<Dart> darts;
    std::size_t degree() const noexcept { return darts.size(); }
};

struct FaceReport {
    std::vector<Face> faces;
    std::size_t root_face_index = 0;
    /// degree_histogram[d] = number of faces of degree d.
    std::vector<std::size_t> degree_histogram;

    const Face& root_face() const { return faces.at(root_face_index); }
};

struct MapDiagnostic {
    bool ok = true;
    std::string message;
    explicit operator bool() const noexcept { return ok; }
};

MapDiagnostic validate_map(const CombinatorialMap& m);

FaceReport faces(const CombinatorialMap& m);

/// Vertex of each dart (index of its sigma-orbit, numbered by first dart).
std::vector<int> dart_vertices(const CombinatorialMap& m);
std::size_t vertex_count(const CombinatorialMap& m);

bool is_nonseparable(const CombinatorialMap& m);
bool has_multiple_edges(const CombinatorialMap& m);

/// Number of non-root faces of degree 2.
std::size_t internal_2face_count(const CombinatorialMap& m);

/// True iff no face, the root face included, has degree k.
bool is_k_face_free_map(const CombinatorialMap& m, std::size_t k);

/// Rooted-isomorphism invariant: darts are ranked in breadth-first order from
/// the root (sigma successor before alpha mate); the code lists, for every
/// dart in rank order, the ranks of its sigma successor and alpha mate.
using CanonicalCode = std::vector<std::uint32_t>;
CanonicalCode canonical_code(const CombinatorialMap& m);

/// The rooted non-separable planar map of a beta(1,0)-tree.
///
/// Built bottom-up: a leaf is a single edge from its root vertex R to its star
/// vertex; an internal node glues the star of child j to the root of child
/// j+1, closes the chain with a new root dart from the last star to the first
/// root, and moves the star to the vertex `label` steps along the root face.
CombinatorialMap tree_to_map(const LabeledTree& t);

/// Single-edge map: two darts, root 0.
CombinatorialMap single_edge_map();

/// JSON object {"n_darts", "alpha", "sigma", "root"}.
std::string format_map(const CombinatorialMap& m);
CombinatorialMap parse_map(std::string_view text);

}  // namespace mapscope
