#include "mapscope/perms.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

namespace mapscope {

bool is_valid_permutation(const std::vector<int>& values) {
    std::vector<bool> seen(values.size() + 1, false);
    for (int v : values) {
        if (v < 1 || static_cast<std::size_t>(v) > values.size() || seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = true;
    }
    return true;
}

Permutation flatten(const std::vector<int>& letters) {
    std::vector<int> sorted = letters;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> out;
    out.reserve(letters.size());
    for (int v : letters)
        out.push_back(static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin()) + 1);
    return Permutation(std::move(out));
}

const MeshPattern& pattern_3142() {
    static const MeshPattern p{{3, 1, 4, 2}, {}};
    return p;
}

const VincularPattern& pattern_2_41_3() {
    static const VincularPattern p{{2, 4, 1, 3}, {2}};
    return p;
}

const MeshPattern& pattern_M() {
    static const MeshPattern p{{2, 1}, {{1, 0}, {1, 1}, {1, 2}, {2, 1}}};
    return p;
}

const MeshPattern& pattern_M_prime() {
    static const MeshPattern p{{2, 1}, {{1, 0}, {1, 1}, {1, 2}, {2, 1}, {0, 2}, {2, 2}}};
    return p;
}

const MeshPattern& pattern_N() {
    static const MeshPattern p{{1}, {{0, 0}, {0, 1}, {1, 1}}};
    return p;
}

const MeshPattern& pattern_indecomposable() {
    static const MeshPattern p{{1, 2}, {{0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 0}}};
    return p;
}

const MeshPattern& pattern_ins1() {
    static const MeshPattern p{{2, 1}, {{0, 1}, {1, 0}, {1, 1}, {1, 2}, {2, 1}}};
    return p;
}

const MeshPattern& pattern_ins2() {
    static const MeshPattern p{{2, 1}, {{0, 0}, {1, 0}, {1, 1}, {1, 2}, {2, 1}}};
    return p;
}

namespace {

// Depth-first search over increasing position tuples; order-isomorphism is
// checked letter by letter so most partial tuples are cut early.
class Matcher {
public:
    Matcher(const Permutation& base, const Permutation& pi, const std::set<int>& adjacent,
            const std::set<Cell>* shaded)
        : base_(base), pi_(pi), adjacent_(adjacent), shaded_(shaded) {}

    std::vector<Occurrence> run(bool first_only) {
        first_only_ = first_only;
        chosen_.clear();
        found_.clear();
        extend(0);
        return std::move(found_);
    }

private:
    bool extend(std::size_t start) {
        const std::size_t k = chosen_.size();
        if (k == base_.size()) {
            if (shaded_ && !mesh_ok()) return false;
            found_.push_back(chosen_);
            return first_only_;
        }
        std::size_t lo = start;
        std::size_t hi = pi_.size();
        if (k > 0 && adjacent_.count(static_cast<int>(k))) hi = std::min(hi, start + 1);
        for (std::size_t j = lo; j < hi; ++j) {
            if (!consistent(j)) continue;
            chosen_.push_back(j);
            const bool stop = extend(j + 1);
            chosen_.pop_back();
            if (stop) return true;
        }
        return false;
    }

    bool consistent(std::size_t j) const {
        const std::size_t k = chosen_.size();
        for (std::size_t i = 0; i < k; ++i) {
            const bool base_less = base_[i] < base_[k];
            const bool text_less = pi_[chosen_[i]] < pi_[j];
            if (base_less != text_less) return false;
        }
        return true;
    }

    bool mesh_ok() const {
        const std::size_t k = chosen_.size();
        const int n = static_cast<int>(pi_.size());
        std::vector<int> cols{-1};
        for (auto p : chosen_) cols.push_back(static_cast<int>(p));
        cols.push_back(n);
        std::vector<int> rows{0};
        for (auto p : chosen_) rows.push_back(pi_[p]);
        std::sort(rows.begin() + 1, rows.end());
        rows.push_back(n + 1);
        for (const auto& [a, b] : *shaded_) {
            if (a < 0 || b < 0 || static_cast<std::size_t>(a) > k || static_cast<std::size_t>(b) > k) continue;
            for (int j = cols[static_cast<std::size_t>(a)] + 1; j < cols[static_cast<std::size_t>(a) + 1]; ++j) {
                const int v = pi_[static_cast<std::size_t>(j)];
                if (rows[static_cast<std::size_t>(b)] < v && v < rows[static_cast<std::size_t>(b) + 1]) return false;
            }
        }
        return true;
    }

    const Permutation& base_;
    const Permutation& pi_;
    const std::set<int>& adjacent_;
    const std::set<Cell>* shaded_;
    bool first_only_ = false;
    Occurrence chosen_;
    std::vector<Occurrence> found_;
};

std::vector<Occurrence> find(const Pattern& p, const Permutation& pi, bool first_only) {
    static const std::set<int> no_adjacency;
    return std::visit(
        [&](const auto& pat) {
            using T = std::decay_t<decltype(pat)>;
            if constexpr (std::is_same_v<T, MeshPattern>) {
                return Matcher(pat.base, pi, no_adjacency, &pat.shaded).run(first_only);
            } else {
                return Matcher(pat.base, pi, pat.adjacent, nullptr).run(first_only);
            }
        },
        p);
}

void require_member(const Permutation& pi) {
    if (!is_valid_permutation(pi.values)) throw PreconditionError("not a permutation");
    if (!in_class(pi)) throw PreconditionError("not (3142,2-41-3)-avoiding");
}

Permutation insert_unchecked(const Permutation& pi, std::size_t which) {
    const int top = static_cast<int>(pi.size()) + 1;
    if (pi.empty()) return Permutation{1};
    const auto maxima = left_to_right_maxima(pi);
    std::vector<int> s = pi.values;
    s.insert(s.begin() + static_cast<std::ptrdiff_t>(maxima[which - 1]), top);

    // last direct-sum component of s starts after the last prefix that is a
    // set {1..i}
    std::size_t split = 0;
    int running_max = 0;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        running_max = std::max(running_max, s[i]);
        if (running_max == static_cast<int>(i) + 1) split = i + 1;
    }
    const auto n_pos = static_cast<std::size_t>(std::find(s.begin(), s.end(), top) - s.begin());
    std::vector<int> a(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(split));
    std::vector<int> bc(s.begin() + static_cast<std::ptrdiff_t>(split), s.begin() + static_cast<std::ptrdiff_t>(n_pos));
    const std::size_t b_len = bc.size();
    bc.insert(bc.end(), s.begin() + static_cast<std::ptrdiff_t>(n_pos) + 1, s.end());

    const auto bc_flat = flatten(bc).values;
    const auto a_flat = flatten(a).values;
    const int shift = static_cast<int>(bc.size());
    std::vector<int> out(bc_flat.begin(), bc_flat.begin() + static_cast<std::ptrdiff_t>(b_len));
    for (int v : a_flat) out.push_back(v + shift);
    out.push_back(top);
    out.insert(out.end(), bc_flat.begin() + static_cast<std::ptrdiff_t>(b_len), bc_flat.end());
    return Permutation(std::move(out));
}

// Inverse of insert_unchecked on indecomposable members of length >= 2.
std::pair<Permutation, std::size_t> uninsert(const Permutation& pi) {
    const int top = static_cast<int>(pi.size());
    const auto n_pos = static_cast<std::size_t>(std::find(pi.values.begin(), pi.values.end(), top) - pi.values.begin());
    // the A block is a suffix of the letters before n carrying the values
    // just below n; try every length that qualifies
    for (std::size_t a_len = 0; a_len <= n_pos; ++a_len) {
        bool block = true;
        for (std::size_t i = n_pos - a_len; i < n_pos; ++i) block = block && pi[i] >= top - static_cast<int>(a_len);
        if (!block) continue;

        std::vector<int> b(pi.values.begin(), pi.values.begin() + static_cast<std::ptrdiff_t>(n_pos - a_len));
        std::vector<int> a(pi.values.begin() + static_cast<std::ptrdiff_t>(n_pos - a_len),
                           pi.values.begin() + static_cast<std::ptrdiff_t>(n_pos));
        std::vector<int> c(pi.values.begin() + static_cast<std::ptrdiff_t>(n_pos) + 1, pi.values.end());

        std::vector<int> s = flatten(a).values;
        const int shift = static_cast<int>(a.size());
        std::vector<int> bc = b;
        bc.insert(bc.end(), c.begin(), c.end());
        const auto bc_flat = flatten(bc).values;
        for (std::size_t i = 0; i < b.size(); ++i) s.push_back(bc_flat[i] + shift);
        const std::size_t ins = s.size();
        for (std::size_t i = b.size(); i < bc_flat.size(); ++i) s.push_back(bc_flat[i] + shift);

        Permutation p(s);
        const auto maxima = left_to_right_maxima(p);
        const auto it = std::find(maxima.begin(), maxima.end(), ins);
        if (it == maxima.end()) continue;
        const std::size_t which = static_cast<std::size_t>(it - maxima.begin()) + 1;
        if (insert_unchecked(p, which) == pi) return {std::move(p), which};
    }
    throw PreconditionError("not (3142,2-41-3)-avoiding");
}

LabeledTree perm_to_tree_unchecked(const Permutation& pi) {
    if (pi.empty()) return LabeledTree(1);
    const auto parts = components(pi);
    if (parts.size() >= 2) {
        std::vector<LabeledTree> children;
        int sum = 0;
        for (const auto& part : parts) {
            auto sub = perm_to_tree_unchecked(part);
            children.push_back(std::move(sub.children.front()));
            sum += children.back().label;
        }
        return LabeledTree(sum, std::move(children));
    }
    if (pi.size() == 1) return LabeledTree(1, {LabeledTree(1)});
    auto [smaller, which] = uninsert(pi);
    auto sub = perm_to_tree_unchecked(smaller);
    const int a = static_cast<int>(which);
    return LabeledTree(a, {LabeledTree(a, std::move(sub.children))});
}

}  // namespace

std::vector<Occurrence> occurrences(const Pattern& p, const Permutation& pi) { return find(p, pi, false); }

std::size_t count_occurrences(const Pattern& p, const Permutation& pi) { return occurrences(p, pi).size(); }

bool avoids(const Permutation& pi, const std::vector<Pattern>& patterns) {
    return std::all_of(patterns.begin(), patterns.end(), [&](const Pattern& p) { return find(p, pi, true).empty(); });
}

bool in_class(const Permutation& pi) {
    return find(pattern_3142(), pi, true).empty() && find(pattern_2_41_3(), pi, true).empty();
}

std::vector<Permutation> components(const Permutation& pi) {
    std::vector<Permutation> out;
    std::size_t start = 0;
    int running_max = 0;
    for (std::size_t i = 0; i < pi.size(); ++i) {
        running_max = std::max(running_max, pi[i]);
        if (running_max == static_cast<int>(i) + 1) {
            out.push_back(flatten({pi.values.begin() + static_cast<std::ptrdiff_t>(start),
                                   pi.values.begin() + static_cast<std::ptrdiff_t>(i) + 1}));
            start = i + 1;
        }
    }
    return out;
}

Permutation direct_sum(const std::vector<Permutation>& parts) {
    std::vector<int> out;
    int offset = 0;
    for (const auto& p : parts) {
        for (int v : p.values) out.push_back(v + offset);
        offset += static_cast<int>(p.size());
    }
    return Permutation(std::move(out));
}

bool is_indecomposable(const Permutation& pi) { return components(pi).size() == 1; }

std::vector<std::size_t> left_to_right_maxima(const Permutation& pi) {
    std::vector<std::size_t> out;
    int best = 0;
    for (std::size_t i = 0; i < pi.size(); ++i) {
        if (pi[i] > best) {
            best = pi[i];
            out.push_back(i);
        }
    }
    return out;
}

Permutation insert_largest(const Permutation& pi, std::size_t which) {
    if (!is_valid_permutation(pi.values)) throw PreconditionError("not a permutation");
    const std::size_t limit = pi.empty() ? 1 : left_to_right_maxima(pi).size();
    if (which < 1 || which > limit)
        throw PreconditionError("left-to-right maximum index " + std::to_string(which) + " out of range 1.." +
                                std::to_string(limit));
    return insert_unchecked(pi, which);
}

std::vector<Permutation> generate_av(std::size_t n) {
    // av[k] = class members of length k, indec[k] = indecomposable ones
    std::vector<std::vector<Permutation>> av{{Permutation{}}};
    std::vector<std::vector<Permutation>> indec{{}};
    for (std::size_t k = 1; k <= n; ++k) {
        std::set<Permutation> ind;
        for (const auto& p : av[k - 1]) {
            const std::size_t choices = p.empty() ? 1 : left_to_right_maxima(p).size();
            for (std::size_t a = 1; a <= choices; ++a) ind.insert(insert_unchecked(p, a));
        }
        indec.emplace_back(ind.begin(), ind.end());

        std::set<Permutation> all;
        for (std::size_t first = 1; first <= k; ++first)
            for (const auto& head : indec[first])
                for (const auto& tail : av[k - first]) all.insert(direct_sum({head, tail}));
        av.emplace_back(all.begin(), all.end());
    }
    return av[n];
}

Permutation tree_to_perm(const LabeledTree& t) {
    if (t.is_leaf()) return {};
    if (t.children.size() >= 2) {
        std::vector<Permutation> parts;
        for (const auto& c : t.children) parts.push_back(tree_to_perm(LabeledTree(c.label, {c})));
        return direct_sum(parts);
    }
    const auto& child = t.children.front();
    if (child.is_leaf()) return Permutation{1};
    const auto inner = tree_to_perm(LabeledTree(max_label(child), child.children));
    return insert_unchecked(inner, static_cast<std::size_t>(t.label));
}

LabeledTree perm_to_tree(const Permutation& pi) {
    require_member(pi);
    return perm_to_tree_unchecked(pi);
}

bool is_primitive_perm(const Permutation& pi) {
    require_member(pi);
    return find(pattern_M(), pi, true).empty();
}

Permutation reduce_to_primitive(const Permutation& pi) {
    require_member(pi);
    Permutation cur = pi;
    for (;;) {
        const auto occ = find(pattern_M(), cur, true);
        if (occ.empty()) return cur;
        // the occurrence is a descent; its smaller letter is the second one
        std::vector<int> rest = cur.values;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(occ.front()[1]));
        cur = flatten(rest);
        if (!in_class(cur)) throw std::logic_error("reduction left the class at " + format_permutation(cur));
    }
}

std::vector<Permutation> one_step_expansions(const Permutation& pi, ExpansionRule rule) {
    require_member(pi);
    std::set<Permutation> out;
    for (std::size_t i = 0; i < pi.size(); ++i) {
        for (int v = 1; v <= pi[i]; ++v) {
            std::vector<int> q;
            q.reserve(pi.size() + 1);
            for (std::size_t j = 0; j < pi.size(); ++j) {
                q.push_back(pi[j] >= v ? pi[j] + 1 : pi[j]);
                if (j == i) q.push_back(v);
            }
            Permutation candidate(std::move(q));
            const Occurrence at{i, i + 1};
            auto hits = [&](const MeshPattern& p) {
                const auto occ = occurrences(p, candidate);
                return std::find(occ.begin(), occ.end(), at) != occ.end();
            };
            const bool allowed = rule == ExpansionRule::MeshPair ? hits(pattern_ins1()) || hits(pattern_ins2())
                                                                 : hits(pattern_M());
            if (allowed && in_class(candidate)) out.insert(std::move(candidate));
        }
    }
    return {out.begin(), out.end()};
}

std::string format_permutation(const Permutation& pi) {
    if (pi.empty()) return "()";
    std::ostringstream os;
    for (std::size_t i = 0; i < pi.size(); ++i) os << (i ? " " : "") << pi[i];
    return os.str();
}

Permutation parse_permutation(std::string_view text) {
    std::vector<int> values;
    std::vector<std::pair<std::string_view, std::size_t>> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        tokens.emplace_back(text.substr(start, i - start), start);
    }
    if (tokens.size() == 1 && tokens.front().first == "()") return {};
    if (tokens.size() == 1 && tokens.front().first.size() > 1) {
        // compact digit form
        const auto [tok, base] = tokens.front();
        if (tok.size() > 9) throw ParseError("compact form only for length <= 9", base);
        for (std::size_t k = 0; k < tok.size(); ++k) {
            if (!std::isdigit(static_cast<unsigned char>(tok[k]))) throw ParseError("expected a digit", base + k);
            values.push_back(tok[k] - '0');
        }
    } else {
        for (const auto& [tok, base] : tokens) {
            int v = 0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc{} || ptr != tok.data() + tok.size()) throw ParseError("expected a rank", base);
            values.push_back(v);
        }
    }
    if (!is_valid_permutation(values)) throw PreconditionError("ranks do not form a permutation of 1..n");
    return Permutation(std::move(values));
}

std::string format_mesh_pattern(const MeshPattern& p) {
    std::ostringstream os;
    for (int v : p.base.values) os << v;
    os << '/';
    bool first = true;
    for (const auto& [a, b] : p.shaded) {
        os << (first ? "" : ",") << '(' << a << ',' << b << ')';
        first = false;
    }
    return os.str();
}

MeshPattern parse_mesh_pattern(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) throw ParseError("expected '/' after the base permutation", text.size());
    MeshPattern out;
    out.base = parse_permutation(text.substr(0, slash));
    const int k = static_cast<int>(out.base.size());
    std::size_t i = slash + 1;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto number = [&]() {
        skip_ws();
        const std::size_t start = i;
        int v = 0;
        auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
        if (ec != std::errc{}) throw ParseError("expected a cell coordinate", start);
        i = static_cast<std::size_t>(ptr - text.data());
        if (v < 0 || v > k) throw ParseError("cell coordinate out of range", start);
        return v;
    };
    auto expect = [&](char c) {
        skip_ws();
        if (i >= text.size() || text[i] != c) throw ParseError(std::string("expected '") + c + "'", i);
        ++i;
    };
    skip_ws();
    while (i < text.size()) {
        expect('(');
        const int a = number();
        expect(',');
        const int b = number();
        expect(')');
        out.shaded.emplace(a, b);
        skip_ws();
        if (i < text.size()) expect(',');
        skip_ws();
    }
    return out;
}

}  // namespace mapscope
