#pragma once

#include <string>
#include <vector>

#include "mapscope/maps.hpp"

// Maps encoded by hand from the drawings, independent of tree_to_map.
namespace fixtures {

inline const std::vector<int> kAlpha8{1, 0, 3, 2, 5, 4, 7, 6};

// The six rooted nonseparable maps on four edges, in drawing order.
inline std::vector<mapscope::CombinatorialMap> four_edge_maps() {
    return {
        {kAlpha8, {3, 5, 1, 6, 0, 7, 4, 2}, 2},
        {kAlpha8, {6, 5, 0, 4, 3, 7, 2, 1}, 6},
        {kAlpha8, {5, 6, 1, 7, 3, 0, 2, 4}, 6},
        {kAlpha8, {7, 4, 1, 5, 2, 6, 3, 0}, 6},
        {kAlpha8, {2, 4, 7, 1, 3, 6, 5, 0}, 6},
        {kAlpha8, {7, 2, 1, 4, 3, 6, 5, 0}, 6},
    };
}

inline const std::vector<std::string> kFourEdgeTrees{
    "(1 (1 (1 (1))))", "(1 (1 (1) (1)))", "(2 (2 (1) (1)))",
    "(2 (1) (1 (1)))", "(2 (1 (1)) (1))", "(3 (1) (1) (1))",
};

// 2-face-free, six edges, three parallel edges between two vertices.
inline mapscope::CombinatorialMap parallel_hexagon() {
    return {{1, 0, 3, 2, 5, 4, 7, 6, 9, 8, 11, 10}, {9, 5, 0, 4, 3, 11, 1, 8, 7, 10, 2, 6}, 6};
}

inline const std::string kWorkedTree = "(4 (2 (1 (1)) (1) (1)) (1) (1 (2 (1) (1))))";

inline mapscope::CombinatorialMap single_edge() { return {{1, 0}, {0, 1}, 0}; }
inline mapscope::CombinatorialMap digon(int root = 0) { return {{1, 0, 3, 2}, {2, 3, 0, 1}, root}; }

}  // namespace fixtures
