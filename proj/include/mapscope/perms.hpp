#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "mapscope/error.hpp"
#include "mapscope/trees.hpp"

namespace mapscope {

/// A permutation of 1..n in one-line notation (n = 0 allowed).
struct Permutation {
    std::vector<int> values;

    Permutation() = default;
    explicit Permutation(std::vector<int> v) : values(std::move(v)) {}
    Permutation(std::initializer_list<int> v) : values(v) {}

    std::size_t size() const noexcept { return values.size(); }
    bool empty() const noexcept { return values.empty(); }
    int operator[](std::size_t i) const { return values[i]; }

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;
};

bool is_valid_permutation(const std::vector<int>& values);

/// Order-isomorphic relabelling onto 1..k.
Permutation flatten(const std::vector<int>& letters);

/// Cells are (column, row); column a is the gap between base positions a
/// and a+1 (0 = left of everything), row b likewise for values.
using Cell = std::pair<int, int>;

/// Classical patterns are mesh patterns with no shaded cells.
struct MeshPattern {
    Permutation base;
    std::set<Cell> shaded;

    friend bool operator==(const MeshPattern&, const MeshPattern&) = default;
};

/// `adjacent` holds 1-based i such that base positions i and i+1 must be
/// adjacent in an occurrence. 2-41-3 is base 2413 with adjacent {2}.
struct VincularPattern {
    Permutation base;
    std::set<int> adjacent;

    friend bool operator==(const VincularPattern&, const VincularPattern&) = default;
};

using Pattern = std::variant<MeshPattern, VincularPattern>;

const MeshPattern& pattern_3142();
const VincularPattern& pattern_2_41_3();
const MeshPattern& pattern_M();
const MeshPattern& pattern_M_prime();
const MeshPattern& pattern_N();
/// A nonempty permutation avoids this pattern iff it is indecomposable.
const MeshPattern& pattern_indecomposable();
const MeshPattern& pattern_ins1();
const MeshPattern& pattern_ins2();

/// 0-based positions of the matched letters, left to right.
using Occurrence = std::vector<std::size_t>;

std::vector<Occurrence> occurrences(const Pattern& p, const Permutation& pi);
std::size_t count_occurrences(const Pattern& p, const Permutation& pi);
bool avoids(const Permutation& pi, const std::vector<Pattern>& patterns);

/// Membership in Av(3142, 2-41-3).
bool in_class(const Permutation& pi);

/// Direct-sum components, each flattened.
std::vector<Permutation> components(const Permutation& pi);
Permutation direct_sum(const std::vector<Permutation>& parts);
bool is_indecomposable(const Permutation& pi);

/// 0-based positions of the left-to-right maxima.
std::vector<std::size_t> left_to_right_maxima(const Permutation& pi);

/// Insert n+1 immediately before the `which`-th left-to-right maximum
/// (1-based, counted from the left), then rearrange the result A|BnC, where
/// BnC is its last direct-sum component, into B~ A~ n C~: B and C keep their
/// joint relative order on the lowest values and A sits above them.
/// The empty permutation with which = 1 gives 1.
Permutation insert_largest(const Permutation& pi, std::size_t which);

/// All members of Av(3142, 2-41-3) of length n, built from direct sums of
/// indecomposables and insert_largest, sorted lexicographically.
std::vector<Permutation> generate_av(std::size_t n);

/// A tree with n+1 nodes maps to a permutation of length n; the one-node
/// tree maps to the empty permutation. Root label = number of left-to-right
/// maxima; decomposable trees map to decomposable permutations.
Permutation tree_to_perm(const LabeledTree& t);
LabeledTree perm_to_tree(const Permutation& pi);

bool is_primitive_perm(const Permutation& pi);

/// Remove the smaller letter of the leftmost M-occurrence and flatten, until
/// no occurrence remains.
Permutation reduce_to_primitive(const Permutation& pi);

enum class ExpansionRule {
    /// The new descent xy is an occurrence of INS1 or INS2.
    MeshPair,
    /// The new descent xy is an occurrence of M and the result stays in the class.
    OccurrenceOfM,
};

/// Class members obtained by inserting a new letter y immediately after some
/// letter x so that xy is a descent allowed by `rule`. Sorted, no duplicates.
std::vector<Permutation> one_step_expansions(const Permutation& pi, ExpansionRule rule = ExpansionRule::MeshPair);

/// Space-separated ranks; "()" for the empty permutation. The parser also
/// accepts a single run of digits for n <= 9 ("25314").
std::string format_permutation(const Permutation& pi);
Permutation parse_permutation(std::string_view text);

/// "21/(1,0),(1,1),(1,2),(2,1)"; classical patterns have nothing after the slash.
std::string format_mesh_pattern(const MeshPattern& p);
MeshPattern parse_mesh_pattern(std::string_view text);

}  // namespace mapscope
