#include "mapscope/trees.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <climits>
#include <map>
#include <sstream>

namespace mapscope {

int max_label(const LabeledTree& node) {
    if (node.is_leaf()) return 1;
    int sum = 0;
    for (const auto& c : node.children) sum += c.label;
    return sum;
}

int label_deficit(const LabeledTree& node) { return max_label(node) - node.label; }

bool has_maximum_label(const LabeledTree& node) {
    if (node.is_leaf()) return kLeafHasMaximumLabel;
    return node.label == max_label(node);
}

namespace {

Diagnostic fail_at(std::string message, std::vector<std::size_t> path) {
    return Diagnostic{false, std::move(message), std::move(path)};
}

Diagnostic validate_node(const LabeledTree& node, bool is_root, std::vector<std::size_t>& path) {
    if (node.label < 1) return fail_at("label must be positive", path);
    if (node.is_leaf()) {
        if (node.label != 1) return fail_at("leaf label must be 1", path);
    } else {
        const int sum = max_label(node);
        if (is_root && node.label != sum) return fail_at("root label != child sum", path);
        if (!is_root && node.label > sum) return fail_at("label exceeds child sum", path);
    }
    for (std::size_t i = 0; i < node.children.size(); ++i) {
        path.push_back(i);
        auto d = validate_node(node.children[i], false, path);
        if (!d) return d;
        path.pop_back();
    }
    return Diagnostic::success();
}

void require_valid(const LabeledTree& t) {
    if (auto d = validate_tree(t); !d) throw PreconditionError("invalid beta(1,0)-tree: " + d.message);
}

// Shape generation. A shape is a LabeledTree whose labels are ignored.
class ShapeTable {
public:
    explicit ShapeTable(bool forbid_unary) : forbid_unary_(forbid_unary) {}

    const std::vector<LabeledTree>& shapes(std::size_t n) {
        if (auto it = shapes_.find(n); it != shapes_.end()) return it->second;
        std::vector<LabeledTree> out;
        if (n == 1) {
            out.emplace_back(1);
        } else {
            for (const auto& seq : sequences(n - 1)) {
                if (forbid_unary_ && seq.size() == 1) continue;
                out.emplace_back(1, seq);
            }
        }
        return shapes_.emplace(n, std::move(out)).first->second;
    }

private:
    // Child sequences with `total` nodes, ordered lexicographically by
    // (size, shape) of the first child, then the rest.
    const std::vector<std::vector<LabeledTree>>& sequences(std::size_t total) {
        if (auto it = sequences_.find(total); it != sequences_.end()) return it->second;
        std::vector<std::vector<LabeledTree>> out;
        if (total == 0) {
            out.emplace_back();
        } else {
            for (std::size_t first = 1; first <= total; ++first) {
                const auto& firsts = shapes(first);
                const auto& rests = sequences(total - first);
                for (const auto& f : firsts) {
                    for (const auto& r : rests) {
                        std::vector<LabeledTree> seq;
                        seq.reserve(r.size() + 1);
                        seq.push_back(f);
                        seq.insert(seq.end(), r.begin(), r.end());
                        out.push_back(std::move(seq));
                    }
                }
            }
        }
        return sequences_.emplace(total, std::move(out)).first->second;
    }

    bool forbid_unary_;
    std::map<std::size_t, std::vector<LabeledTree>> shapes_;
    std::map<std::size_t, std::vector<std::vector<LabeledTree>>> sequences_;
};

void preorder_labels(const LabeledTree& t, std::vector<int>& out) {
    out.push_back(t.label);
    for (const auto& c : t.children) preorder_labels(c, out);
}

// All labelings of `shape`; non-root labels are capped at `cap`.
std::vector<LabeledTree> labelings(const LabeledTree& shape, bool is_root, int cap) {
    if (shape.is_leaf()) return {LabeledTree(1)};

    std::vector<std::vector<LabeledTree>> options;
    options.reserve(shape.children.size());
    for (const auto& c : shape.children) {
        options.push_back(labelings(c, false, cap));
        if (options.back().empty()) return {};
    }

    std::vector<LabeledTree> out;
    std::vector<std::size_t> idx(options.size(), 0);
    for (;;) {
        std::vector<LabeledTree> kids;
        kids.reserve(options.size());
        int sum = 0;
        for (std::size_t i = 0; i < options.size(); ++i) {
            kids.push_back(options[i][idx[i]]);
            sum += kids.back().label;
        }
        if (is_root) {
            out.emplace_back(sum, std::move(kids));
        } else {
            const int top = std::min(sum, cap);
            for (int l = 1; l <= top; ++l) out.emplace_back(l, kids);
        }
        // odometer, last child fastest
        bool done = true;
        for (std::size_t pos = options.size(); pos-- > 0;) {
            if (++idx[pos] < options[pos].size()) {
                done = false;
                break;
            }
            idx[pos] = 0;
        }
        if (done) break;
    }

    std::vector<std::pair<std::vector<int>, std::size_t>> keys;
    keys.reserve(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::vector<int> k;
        preorder_labels(out[i], k);
        keys.emplace_back(std::move(k), i);
    }
    std::sort(keys.begin(), keys.end());
    std::vector<LabeledTree> sorted;
    sorted.reserve(out.size());
    for (const auto& [k, i] : keys) sorted.push_back(std::move(out[i]));
    return sorted;
}

std::vector<LabeledTree> enumerate_impl(std::size_t nodes, int cap, bool forbid_unary) {
    if (nodes == 0) throw PreconditionError("empty tree not modeled");
    if (cap < 1) throw PreconditionError("label cap must be positive");
    ShapeTable table(forbid_unary);
    std::vector<LabeledTree> out;
    for (const auto& shape : table.shapes(nodes)) {
        auto labeled = labelings(shape, true, cap);
        out.insert(out.end(), std::make_move_iterator(labeled.begin()),
                   std::make_move_iterator(labeled.end()));
    }
    return out;
}

void collect_stats(const LabeledTree& node, TreeStats& s) {
    ++s.nodes;
    if (node.is_leaf()) {
        ++s.leaves;
        return;
    }
    ++s.internal_nodes;
    if (node.children.size() == 1 && has_maximum_label(node.children.front())) ++s.single_child_max_nodes;
    for (const auto& c : node.children) collect_stats(c, s);
}

template <typename Pred>
bool any_node(const LabeledTree& node, Pred&& pred) {
    if (pred(node)) return true;
    for (const auto& c : node.children)
        if (any_node(c, pred)) return true;
    return false;
}

}  // namespace

Diagnostic validate_tree(const LabeledTree& t) {
    std::vector<std::size_t> path;
    return validate_node(t, true, path);
}

std::vector<LabeledTree> enumerate_trees(std::size_t nodes) { return enumerate_impl(nodes, INT_MAX, false); }

std::vector<LabeledTree> enumerate_restricted_trees(std::size_t nodes, int label_cap, bool forbid_only_children) {
    return enumerate_impl(nodes, label_cap, forbid_only_children);
}

std::size_t node_count(const LabeledTree& t) {
    std::size_t n = 1;
    for (const auto& c : t.children) n += node_count(c);
    return n;
}

TreeStats tree_stats(const LabeledTree& t) {
    require_valid(t);
    TreeStats s;
    collect_stats(t, s);
    s.root_label = t.label;
    s.decomposable = t.children.size() >= 2;
    return s;
}

bool is_primitive_tree(const LabeledTree& t) { return tree_stats(t).single_child_max_nodes == 0; }

bool is_k_face_free_tree(const LabeledTree& t, int k) {
    if (k < 2 || k > 4) throw PreconditionError("k-face-free predicate is defined for k in {2,3,4}");
    require_valid(t);
    if (t.label == k - 1) return false;
    // An internal node with m children closes a face of degree 1 + m + (sum of child deficits).
    return !any_node(t, [k](const LabeledTree& node) {
        const int m = static_cast<int>(node.children.size());
        if (m < 1 || m > k - 1) return false;
        int deficit = 0;
        for (const auto& c : node.children) deficit += label_deficit(c);
        return deficit == k - m - 1;
    });
}

bool mef_necessary(const LabeledTree& t) {
    require_valid(t);
    if (t.label == 1) return false;
    return !any_node(t, [](const LabeledTree& node) {
        if (node.children.size() != 1) return false;
        const auto& child = node.children.front();
        return has_maximum_label(child) || child.label == 1;
    });
}

bool has_no_only_children(const LabeledTree& t) {
    require_valid(t);
    return !any_node(t, [](const LabeledTree& node) { return node.children.size() == 1; });
}

namespace {

class TreeParser {
public:
    explicit TreeParser(std::string_view text) : text_(text) {}

    LabeledTree parse() {
        skip_ws();
        auto t = parse_node(0);
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("trailing characters after tree", pos_);
        return t;
    }

private:
    // Deep paths are legitimate trees; the limit only guards the call stack.
    static constexpr std::size_t kMaxDepth = 10000;

    LabeledTree parse_node(std::size_t depth) {
        if (depth > kMaxDepth) throw ParseError("tree nesting too deep", pos_);
        expect('(');
        skip_ws();
        LabeledTree node(parse_label());
        for (;;) {
            skip_ws();
            if (pos_ >= text_.size()) throw ParseError("unterminated tree, expected ')'", pos_);
            if (text_[pos_] == ')') {
                ++pos_;
                return node;
            }
            if (text_[pos_] != '(') throw ParseError("expected '(' or ')'", pos_);
            node.children.push_back(parse_node(depth + 1));
        }
    }

    int parse_label() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) throw ParseError("expected a decimal label", start);
        int value = 0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (ec != std::errc{} || value < 1) throw ParseError("label must be a positive integer", start);
        return value;
    }

    void expect(char c) {
        if (pos_ >= text_.size() || text_[pos_] != c) throw ParseError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

void format_into(const LabeledTree& t, std::ostringstream& os) {
    os << '(' << t.label;
    for (const auto& c : t.children) {
        os << ' ';
        format_into(c, os);
    }
    os << ')';
}

}  // namespace

LabeledTree parse_tree(std::string_view text) { return TreeParser(text).parse(); }

std::string format_tree(const LabeledTree& t) {
    std::ostringstream os;
    format_into(t, os);
    return os.str();
}

}  // namespace mapscope
