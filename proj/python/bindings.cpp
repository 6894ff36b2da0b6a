#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mapscope/cli.hpp"
#include "mapscope/maps.hpp"
#include "mapscope/perms.hpp"
#include "mapscope/series.hpp"
#include "mapscope/trees.hpp"
#include "mapscope/verify.hpp"

namespace py = pybind11;
using namespace mapscope;

namespace {

// Trees cross the boundary in their text form, permutations as rank lists,
// maps and reports as JSON text, exact numbers as decimal strings.
LabeledTree tree(const std::string& s) { return parse_tree(s); }

Permutation perm(const std::vector<int>& v) {
    if (!is_valid_permutation(v)) throw PreconditionError("not a permutation of 1..n");
    return Permutation(v);
}

const MeshPattern& mesh_by_name(const std::string& name) {
    if (name == "M") return pattern_M();
    if (name == "M'") return pattern_M_prime();
    if (name == "N") return pattern_N();
    if (name == "3142") return pattern_3142();
    if (name == "indecomposable") return pattern_indecomposable();
    if (name == "ins1") return pattern_ins1();
    if (name == "ins2") return pattern_ins2();
    throw PreconditionError("unknown pattern '" + name + "'");
}

SeriesName series_name(const std::string& n) {
    static const std::map<std::string, SeriesName> names{
        {"a", SeriesName::A_FORMULA}, {"a-zeil", SeriesName::A_ZEIL}, {"a-hyp", SeriesName::A_HYP},
        {"p", SeriesName::P},         {"pprime", SeriesName::PPRIME}, {"b1", SeriesName::B1},
        {"b2", SeriesName::B2},       {"b3", SeriesName::B3}};
    auto it = names.find(n);
    if (it == names.end()) throw PreconditionError("unknown series '" + n + "'");
    return it->second;
}

Estimate estimate_name(const std::string& n) {
    static const std::map<std::string, Estimate> names{{"a", Estimate::A},   {"p", Estimate::P},
                                                       {"pprime", Estimate::PPRIME}, {"b1", Estimate::B1},
                                                       {"b2", Estimate::B2}, {"b3", Estimate::B3}};
    auto it = names.find(n);
    if (it == names.end()) throw PreconditionError("unknown estimate '" + n + "'");
    return it->second;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact enumeration of rooted nonseparable planar maps and their encodings";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_ArithmeticError);

    m.def("enumerate_trees", [](std::size_t n) {
        std::vector<std::string> out;
        for (const auto& t : enumerate_trees(n)) out.push_back(format_tree(t));
        return out;
    });
    m.def("enumerate_restricted_trees", [](std::size_t n, int cap, bool forbid) {
        std::vector<std::string> out;
        for (const auto& t : enumerate_restricted_trees(n, cap, forbid)) out.push_back(format_tree(t));
        return out;
    }, py::arg("nodes"), py::arg("label_cap"), py::arg("forbid_only_children") = true);
    m.def("validate_tree", [](const std::string& s) {
        const auto d = validate_tree(tree(s));
        return py::make_tuple(d.ok, d.message, d.path);
    });
    m.def("format_tree", [](const std::string& s) { return format_tree(tree(s)); });
    m.def("tree_stats", [](const std::string& s) {
        const auto st = tree_stats(tree(s));
        py::dict d;
        d["nodes"] = st.nodes;
        d["leaves"] = st.leaves;
        d["internal_nodes"] = st.internal_nodes;
        d["root_label"] = st.root_label;
        d["single_child_max_nodes"] = st.single_child_max_nodes;
        d["decomposable"] = st.decomposable;
        return d;
    });
    m.def("is_primitive_tree", [](const std::string& s) { return is_primitive_tree(tree(s)); });
    m.def("is_k_face_free_tree", [](const std::string& s, int k) { return is_k_face_free_tree(tree(s), k); });
    m.def("mef_necessary", [](const std::string& s) { return mef_necessary(tree(s)); });
    m.def("has_no_only_children", [](const std::string& s) { return has_no_only_children(tree(s)); });

    m.def("tree_to_map", [](const std::string& s) { return format_map(tree_to_map(tree(s))); });
    m.def("map_summary", [](const std::string& record) {
        const auto mp = parse_map(record);
        if (auto d = validate_map(mp); !d) throw PreconditionError("invalid map: " + d.message);
        const auto f = faces(mp);
        py::dict d;
        d["edges"] = mp.n_edges();
        d["vertices"] = vertex_count(mp);
        d["faces"] = f.faces.size();
        d["root_face_degree"] = f.root_face().degree();
        d["internal_two_faces"] = internal_2face_count(mp);
        d["nonseparable"] = is_nonseparable(mp);
        d["multiple_edges"] = has_multiple_edges(mp);
        return d;
    });
    m.def("canonical_code", [](const std::string& record) { return canonical_code(parse_map(record)); });

    m.def("tree_to_perm", [](const std::string& s) { return tree_to_perm(tree(s)).values; });
    m.def("perm_to_tree", [](const std::vector<int>& v) { return format_tree(perm_to_tree(perm(v))); });
    m.def("generate_av", [](std::size_t n) {
        std::vector<std::vector<int>> out;
        for (const auto& p : generate_av(n)) out.push_back(p.values);
        return out;
    });
    m.def("in_class", [](const std::vector<int>& v) { return in_class(perm(v)); });
    m.def("is_primitive_perm", [](const std::vector<int>& v) { return is_primitive_perm(perm(v)); });
    m.def("reduce_to_primitive", [](const std::vector<int>& v) { return reduce_to_primitive(perm(v)).values; });
    m.def("insert_largest", [](const std::vector<int>& v, std::size_t which) { return insert_largest(perm(v), which).values; });
    m.def("occurrences", [](const std::string& pattern, const std::vector<int>& v) {
        const Pattern p = pattern == "2-41-3" ? Pattern(pattern_2_41_3())
                        : pattern.find('/') != std::string::npos ? Pattern(parse_mesh_pattern(pattern))
                                                                 : Pattern(mesh_by_name(pattern));
        return occurrences(p, perm(v));
    }, py::arg("pattern"), py::arg("perm"));

    m.def("series", [](const std::string& name, std::size_t order) {
        const auto s = series(series_name(name), order);
        std::vector<std::string> out;
        for (const auto& c : s.coefficients()) out.push_back(c.get_str());
        return out;
    });
    m.def("tutte_count", [](std::size_t n) { return tutte_count(n).get_str(); });
    m.def("asymptotic", [](const std::string& name, std::size_t n) {
        const auto id = estimate_name(name);
        return py::make_tuple(format_real(asymptotic(id, n), 30), asymptotic_reference(id, n).get_str());
    });
    m.def("b3_singularity", [] {
        const auto& s = b3_singularity();
        py::dict d;
        d["x_star"] = format_real(s.x_star, 30);
        d["tau"] = format_real(s.tau, 30);
        d["rho"] = format_real(s.rho, 30);
        d["gamma"] = format_real(s.gamma, 30);
        return d;
    });

    m.def("suite_names", &suite_names);
    m.def("run_suite", [](const std::string& name, std::size_t cap) {
        VerificationReport r;
        {
            py::gil_scoped_release release;
            r = run_suite(name, cap);
        }
        return r.to_json();
    }, py::arg("name"), py::arg("size_cap") = 0);

    m.def("run_cli", [](const std::vector<std::string>& args, const std::string& input) {
        std::istringstream in(input);
        std::ostringstream out, err;
        const int code = run(args, in, out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("args"), py::arg("stdin") = "");
}
