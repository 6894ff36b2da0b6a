#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mapscope/error.hpp"

namespace mapscope {

/// Rooted ordered tree with positive integer labels.
///
/// A valid beta(1,0)-tree has leaves labelled 1, the root labelled by the sum
/// of its children's labels, and every other node labelled between 1 and that
/// sum. Instances are plain values; validity is checked by validate_tree().
struct LabeledTree {
    int label = 1;
    std::vector<LabeledTree> children;

    LabeledTree() = default;
    explicit LabeledTree(int l, std::vector<LabeledTree> c = {}) : label(l), children(std::move(c)) {}

    bool is_leaf() const noexcept { return children.empty(); }

    friend bool operator==(const LabeledTree&, const LabeledTree&) = default;
    /// Label first, then children lexicographically.
    friend bool operator<(const LabeledTree& a, const LabeledTree& b) {
        if (a.label != b.label) return a.label < b.label;
        return std::lexicographical_compare(a.children.begin(), a.children.end(), b.children.begin(),
                                            b.children.end());
    }
};

/// A leaf is treated as carrying the maximum label it could have.
inline constexpr bool kLeafHasMaximumLabel = true;

/// Sum of the children's labels, or 1 for a leaf.
int max_label(const LabeledTree& node);

/// Deficit of a node: max_label(node) - node.label.
int label_deficit(const LabeledTree& node);

bool has_maximum_label(const LabeledTree& node);

struct TreeStats {
    std::size_t nodes = 0;
    std::size_t leaves = 0;
    std::size_t internal_nodes = 0;
    int root_label = 1;
    std::size_t single_child_max_nodes = 0;
    bool decomposable = false;

    friend bool operator==(const TreeStats&, const TreeStats&) = default;
};

/// Result of a structural check. `path` lists child indices from the root to
/// the offending node (empty for the root itself).
struct Diagnostic {
    bool ok = true;
    std::string message;
    std::vector<std::size_t> path;

    explicit operator bool() const noexcept { return ok; }
    static Diagnostic success() { return {}; }
};

Diagnostic validate_tree(const LabeledTree& t);

/// All beta(1,0)-trees with `nodes` nodes.
///
/// Order: shapes first, where a shape's child sequence is compared
/// lexicographically by (subtree size, subtree shape) pairs; within a shape,
/// labelings in lexicographic preorder with labels ascending.
std::vector<LabeledTree> enumerate_trees(std::size_t nodes);

/// The subset of enumerate_trees(nodes) in which every non-root label is at
/// most `label_cap` and, when `forbid_only_children`, no node has exactly one
/// child. Same relative order as enumerate_trees().
std::vector<LabeledTree> enumerate_restricted_trees(std::size_t nodes, int label_cap,
                                                    bool forbid_only_children);

TreeStats tree_stats(const LabeledTree& t);
std::size_t node_count(const LabeledTree& t);

bool is_primitive_tree(const LabeledTree& t);

/// True iff the tree's map has no face of degree k, k in {2, 3, 4}.
bool is_k_face_free_tree(const LabeledTree& t, int k);

/// The three forbidden structures that every multiple-edge-free map's tree avoids.
bool mef_necessary(const LabeledTree& t);

bool has_no_only_children(const LabeledTree& t);

/// Parenthesized text form: `(label child child ...)`.
LabeledTree parse_tree(std::string_view text);
std::string format_tree(const LabeledTree& t);

}  // namespace mapscope
