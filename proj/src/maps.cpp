#include "mapscope/maps.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <utility>

#include <json.hpp>

namespace mapscope {

namespace {

std::size_t at(Dart d) { return static_cast<std::size_t>(d); }

bool is_permutation(const std::vector<Dart>& p) {
    std::vector<bool> seen(p.size(), false);
    for (Dart d : p) {
        if (d < 0 || at(d) >= p.size() || seen[at(d)]) return false;
        seen[at(d)] = true;
    }
    return true;
}

std::vector<std::vector<Dart>> orbits(const std::vector<Dart>& perm) {
    std::vector<std::vector<Dart>> out;
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t start = 0; start < perm.size(); ++start) {
        if (seen[start]) continue;
        std::vector<Dart> orbit;
        for (Dart d = static_cast<Dart>(start); !seen[at(d)]; d = perm[at(d)]) {
            seen[at(d)] = true;
            orbit.push_back(d);
        }
        out.push_back(std::move(orbit));
    }
    return out;
}

std::vector<Dart> phi_permutation(const CombinatorialMap& m) {
    std::vector<Dart> phi(m.n_darts());
    for (std::size_t d = 0; d < phi.size(); ++d) phi[d] = m.phi(static_cast<Dart>(d));
    return phi;
}

void require_valid(const CombinatorialMap& m) {
    if (auto d = validate_map(m); !d) throw PreconditionError("invalid map: " + d.message);
}

// Relabel darts by breadth-first rank from the root.
std::vector<Dart> bfs_order(const CombinatorialMap& m) {
    std::vector<Dart> order;
    std::vector<int> rank(m.n_darts(), -1);
    order.reserve(m.n_darts());
    order.push_back(m.root);
    rank[at(m.root)] = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const Dart d = order[i];
        for (Dart next : {m.sigma[at(d)], m.alpha[at(d)]}) {
            if (rank[at(next)] < 0) {
                rank[at(next)] = static_cast<int>(order.size());
                order.push_back(next);
            }
        }
    }
    return order;
}

CombinatorialMap relabel_canonically(const CombinatorialMap& m) {
    const auto order = bfs_order(m);
    std::vector<Dart> rank(m.n_darts());
    for (std::size_t i = 0; i < order.size(); ++i) rank[at(order[i])] = static_cast<Dart>(i);
    CombinatorialMap out;
    out.alpha.resize(m.n_darts());
    out.sigma.resize(m.n_darts());
    for (std::size_t i = 0; i < order.size(); ++i) {
        out.alpha[i] = rank[at(m.alpha[at(order[i])])];
        out.sigma[i] = rank[at(m.sigma[at(order[i])])];
    }
    out.root = 0;
    return out;
}

// Mutable rotation system used while building a map from a tree.
class MapBuilder {
public:
    struct Gadget {
        Dart root;  // root dart; its tail is the root vertex
        Dart star;  // any dart whose tail is the star vertex
    };

    Gadget build(const LabeledTree& node, bool is_root) {
        if (node.is_leaf()) {
            const Dart d = new_edge();
            return {d, alpha_[at(d)]};
        }
        std::vector<Gadget> parts;
        parts.reserve(node.children.size());
        for (const auto& c : node.children) parts.push_back(build(c, false));

        for (std::size_t j = 0; j + 1 < parts.size(); ++j) {
            const Dart a = outer_corner(parts[j].root, parts[j].star);
            const Dart b = outer_corner(parts[j + 1].root, parts[j + 1].root);
            std::swap(sigma_[at(a)], sigma_[at(b)]);
        }

        const Dart first_root = parts.front().root;
        const Dart at_star = outer_corner(first_root, parts.back().star);
        const Dart at_root = outer_corner(first_root, first_root);
        const Dart r = new_edge();
        insert_after(at_star, r);
        insert_after(at_root, alpha_[at(r)]);

        if (is_root) return {r, r};
        // walk `label` edges along the root face starting with the new root dart
        Dart d = r;
        for (int i = 1; i < node.label; ++i) d = phi(d);
        return {r, alpha_[at(d)]};
    }

    CombinatorialMap finish(Dart root) && {
        CombinatorialMap m;
        m.alpha = std::move(alpha_);
        m.sigma = std::move(sigma_);
        m.root = root;
        return m;
    }

private:
    Dart new_edge() {
        const Dart d = static_cast<Dart>(alpha_.size());
        alpha_.push_back(d + 1);
        alpha_.push_back(d);
        sigma_.push_back(d);
        sigma_.push_back(d + 1);
        return d;
    }

    Dart phi(Dart d) const { return sigma_[at(alpha_[at(d)])]; }

    void insert_after(Dart corner, Dart d) {
        sigma_[at(d)] = sigma_[at(corner)];
        sigma_[at(corner)] = d;
    }

    bool same_vertex(Dart a, Dart b) const {
        Dart d = a;
        do {
            if (d == b) return true;
            d = sigma_[at(d)];
        } while (d != a);
        return false;
    }

    // The dart c at `vertex` whose counterclockwise successor corner lies in
    // the root face of the sub-map rooted at `root`. Inserting after c keeps
    // new material in that face.
    Dart outer_corner(Dart root, Dart vertex) const {
        Dart d = root;
        do {
            if (same_vertex(alpha_[at(d)], vertex)) return alpha_[at(d)];
            d = phi(d);
        } while (d != root);
        throw std::logic_error("vertex is not on the root face");
    }

    std::vector<Dart> alpha_;
    std::vector<Dart> sigma_;
};

}  // namespace

MapDiagnostic validate_map(const CombinatorialMap& m) {
    const std::size_t n = m.alpha.size();
    if (n == 0) return {false, "map has no darts"};
    if (n % 2 != 0) return {false, "n_darts must be even"};
    if (m.sigma.size() != n) return {false, "alpha and sigma sizes differ"};
    if (!is_permutation(m.alpha)) return {false, "alpha is not a permutation"};
    if (!is_permutation(m.sigma)) return {false, "sigma is not a permutation"};
    for (std::size_t d = 0; d < n; ++d) {
        if (at(m.alpha[d]) == d) return {false, "alpha not fixed-point-free"};
        if (at(m.alpha[at(m.alpha[d])]) != d) return {false, "alpha is not an involution"};
    }
    if (m.root < 0 || at(m.root) >= n) return {false, "root dart out of range"};

    std::vector<bool> seen(n, false);
    std::vector<Dart> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const Dart d = stack.back();
        stack.pop_back();
        for (Dart next : {m.alpha[at(d)], m.sigma[at(d)]}) {
            if (!seen[at(next)]) {
                seen[at(next)] = true;
                ++reached;
                stack.push_back(next);
            }
        }
    }
    if (reached != n) return {false, "map is not connected"};

    const auto v = orbits(m.sigma).size();
    const auto f = orbits(phi_permutation(m)).size();
    const auto e = n / 2;
    if (static_cast<long>(v) - static_cast<long>(e) + static_cast<long>(f) != 2)
        return {false, "Euler characteristic is not 2 (V=" + std::to_string(v) + ", E=" + std::to_string(e) +
                           ", F=" + std::to_string(f) + ")"};
    return {};
}

FaceReport faces(const CombinatorialMap& m) {
    require_valid(m);
    FaceReport r;
    for (auto& orbit : orbits(phi_permutation(m))) {
        if (std::find(orbit.begin(), orbit.end(), m.root) != orbit.end()) r.root_face_index = r.faces.size();
        const auto deg = orbit.size();
        if (r.degree_histogram.size() <= deg) r.degree_histogram.resize(deg + 1, 0);
        ++r.degree_histogram[deg];
        r.faces.push_back(Face{std::move(orbit)});
    }
    return r;
}

std::vector<int> dart_vertices(const CombinatorialMap& m) {
    std::vector<int> vertex(m.n_darts(), -1);
    int next = 0;
    for (const auto& orbit : orbits(m.sigma)) {
        for (Dart d : orbit) vertex[at(d)] = next;
        ++next;
    }
    return vertex;
}

std::size_t vertex_count(const CombinatorialMap& m) { return orbits(m.sigma).size(); }

bool is_nonseparable(const CombinatorialMap& m) {
    require_valid(m);
    const auto vertex = dart_vertices(m);
    const std::size_t nv = vertex_count(m);
    std::vector<std::vector<std::pair<int, std::size_t>>> adj(nv);
    for (std::size_t d = 0; d < m.n_darts(); ++d) {
        const auto mate = at(m.alpha[d]);
        if (d > mate) continue;
        const int u = vertex[d];
        const int w = vertex[mate];
        if (u == w) return false;  // loop
        adj[static_cast<std::size_t>(u)].emplace_back(w, d);
        adj[static_cast<std::size_t>(w)].emplace_back(u, d);
    }

    // Articulation points by iterative DFS lowpoints; edges identified by dart
    // so parallel edges are handled.
    std::vector<int> disc(nv, -1), low(nv, 0);
    int timer = 0;
    struct Frame {
        int v;
        std::size_t via_edge;
        std::size_t next;
    };
    std::vector<Frame> stack;
    disc[0] = low[0] = timer++;
    stack.push_back({0, SIZE_MAX, 0});
    std::size_t root_children = 0;
    while (!stack.empty()) {
        auto& f = stack.back();
        const auto v = static_cast<std::size_t>(f.v);
        if (f.next < adj[v].size()) {
            const auto [w, edge] = adj[v][f.next++];
            if (edge == f.via_edge) continue;
            const auto wi = static_cast<std::size_t>(w);
            if (disc[wi] < 0) {
                disc[wi] = low[wi] = timer++;
                if (v == 0) ++root_children;
                stack.push_back({w, edge, 0});
            } else {
                low[v] = std::min(low[v], disc[wi]);
            }
        } else {
            const int child = f.v;
            stack.pop_back();
            if (stack.empty()) break;
            const auto parent = static_cast<std::size_t>(stack.back().v);
            low[parent] = std::min(low[parent], low[static_cast<std::size_t>(child)]);
            if (parent != 0 && low[static_cast<std::size_t>(child)] >= disc[parent]) return false;
        }
    }
    return root_children <= 1;
}

bool has_multiple_edges(const CombinatorialMap& m) {
    require_valid(m);
    const auto vertex = dart_vertices(m);
    std::set<std::pair<int, int>> seen;
    for (std::size_t d = 0; d < m.n_darts(); ++d) {
        const auto mate = at(m.alpha[d]);
        if (d > mate) continue;
        const auto key = std::minmax(vertex[d], vertex[mate]);
        if (!seen.insert(key).second) return true;
    }
    return false;
}

std::size_t internal_2face_count(const CombinatorialMap& m) {
    const auto r = faces(m);
    std::size_t count = 0;
    for (std::size_t i = 0; i < r.faces.size(); ++i)
        if (i != r.root_face_index && r.faces[i].degree() == 2) ++count;
    return count;
}

bool is_k_face_free_map(const CombinatorialMap& m, std::size_t k) {
    const auto r = faces(m);
    return k >= r.degree_histogram.size() || r.degree_histogram[k] == 0;
}

CanonicalCode canonical_code(const CombinatorialMap& m) {
    require_valid(m);
    const auto c = relabel_canonically(m);
    CanonicalCode code;
    code.reserve(2 * c.n_darts());
    for (std::size_t d = 0; d < c.n_darts(); ++d) {
        code.push_back(static_cast<std::uint32_t>(c.sigma[d]));
        code.push_back(static_cast<std::uint32_t>(c.alpha[d]));
    }
    return code;
}

CombinatorialMap single_edge_map() { return CombinatorialMap{{1, 0}, {0, 1}, 0}; }

CombinatorialMap tree_to_map(const LabeledTree& t) {
    if (auto d = validate_tree(t); !d) throw PreconditionError("invalid beta(1,0)-tree: " + d.message);
    if (t.is_leaf()) return single_edge_map();
    MapBuilder builder;
    const auto g = builder.build(t, true);
    return relabel_canonically(std::move(builder).finish(g.root));
}

std::string format_map(const CombinatorialMap& m) {
    nlohmann::ordered_json j;
    j["n_darts"] = m.n_darts();
    j["alpha"] = m.alpha;
    j["sigma"] = m.sigma;
    j["root"] = m.root;
    return j.dump();
}

CombinatorialMap parse_map(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed map record: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0);
    }
    if (!j.is_object()) throw ParseError("map record must be a JSON object", 0);
    CombinatorialMap m;
    try {
        const auto n = j.at("n_darts").get<long>();
        m.alpha = j.at("alpha").get<std::vector<Dart>>();
        m.sigma = j.at("sigma").get<std::vector<Dart>>();
        m.root = j.at("root").get<Dart>();
        if (n < 0 || static_cast<std::size_t>(n) != m.alpha.size() || m.alpha.size() != m.sigma.size())
            throw PreconditionError("n_darts does not match array lengths");
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad map record field: ") + e.what(), 0);
    }
    if (!is_permutation(m.alpha)) throw PreconditionError("alpha is not a permutation");
    if (!is_permutation(m.sigma)) throw PreconditionError("sigma is not a permutation");
    return m;
}

}  // namespace mapscope
