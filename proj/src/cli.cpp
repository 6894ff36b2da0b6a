#include "mapscope/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <istream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mapscope/error.hpp"
#include "mapscope/maps.hpp"
#include "mapscope/perms.hpp"
#include "mapscope/series.hpp"
#include "mapscope/trees.hpp"
#include "mapscope/verify.hpp"

namespace mapscope {

namespace {

using Json = nlohmann::ordered_json;

// Largest sizes a single invocation accepts; MAPSCOPE_MAX_SIZE can only lower them.
constexpr std::size_t kMaxEnumerateNodes = 12;
constexpr std::size_t kMaxEnumerateLength = 11;
constexpr std::size_t kMaxTerms = 1000;
constexpr std::size_t kMaxComposedTerms = 300;  // P and P' compose series; cubic cost
constexpr std::size_t kMaxAsymptoticN = 2000;  // B3 needs the series to this order

std::size_t env_cap(std::size_t limit) {
    const char* raw = std::getenv("MAPSCOPE_MAX_SIZE");
    if (!raw || !*raw) return limit;
    char* end = nullptr;
    const unsigned long v = std::strtoul(raw, &end, 10);
    if (*end != '\0' || v == 0) throw PreconditionError("MAPSCOPE_MAX_SIZE must be a positive integer");
    return std::min<std::size_t>(limit, v);
}

void require_size(std::size_t value, std::size_t limit, const std::string& what) {
    const std::size_t cap = env_cap(limit);
    if (value > cap)
        throw PreconditionError(what + " " + std::to_string(value) + " exceeds the limit " + std::to_string(cap));
}

enum class Format { Text, Json, Csv };

struct Options {
    std::string format = "text";
    Format fmt() const { return format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Text; }
};

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

// A flat record printed as "k=v ..." text, a JSON line, or a CSV row.
using Record = std::vector<std::pair<std::string, Json>>;

std::string json_scalar_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

class RecordWriter {
public:
    RecordWriter(std::ostream& out, Format fmt) : out_(out), fmt_(fmt) {}

    void write(const Record& r) {
        switch (fmt_) {
            case Format::Json: {
                Json j = Json::object();
                for (const auto& [k, v] : r) j[k] = v;
                out_ << j.dump() << '\n';
                break;
            }
            case Format::Csv:
                if (!header_done_) {
                    for (std::size_t i = 0; i < r.size(); ++i) out_ << (i ? "," : "") << r[i].first;
                    out_ << '\n';
                    header_done_ = true;
                }
                for (std::size_t i = 0; i < r.size(); ++i) out_ << (i ? "," : "") << csv_field(json_scalar_text(r[i].second));
                out_ << '\n';
                break;
            case Format::Text:
                for (std::size_t i = 0; i < r.size(); ++i)
                    out_ << (i ? " " : "") << r[i].first << '=' << json_scalar_text(r[i].second);
                out_ << '\n';
                break;
        }
    }

private:
    std::ostream& out_;
    Format fmt_;
    bool header_done_ = false;
};

// One object per line: text uses the module text formats, json wraps them.
void write_object(std::ostream& out, Format fmt, const std::string& kind, const std::string& text, bool& header) {
    switch (fmt) {
        case Format::Text: out << text << '\n'; break;
        case Format::Json:
            if (kind == "map") out << text << '\n';
            else out << Json{{kind, text}}.dump() << '\n';
            break;
        case Format::Csv:
            if (!header) {
                out << kind << '\n';
                header = true;
            }
            out << csv_field(text) << '\n';
            break;
    }
}

void write_count(std::ostream& out, Format fmt, std::size_t n) {
    switch (fmt) {
        case Format::Text: out << n << '\n'; break;
        case Format::Json: out << Json{{"count", n}}.dump() << '\n'; break;
        case Format::Csv: out << "count\n" << n << '\n'; break;
    }
}

std::function<bool(const LabeledTree&)> tree_filter(const std::string& spec) {
    if (spec.empty()) return [](const LabeledTree&) { return true; };
    if (spec == "primitive") return is_primitive_tree;
    if (spec == "two-face-free") return [](const LabeledTree& t) { return is_k_face_free_tree(t, 2); };
    if (spec == "mef-necessary") return mef_necessary;
    if (spec == "no-only-children") return has_no_only_children;
    auto value_of = [&](const std::string& prefix) -> std::optional<int> {
        if (spec.rfind(prefix, 0) != 0) return std::nullopt;
        try {
            std::size_t used = 0;
            const int v = std::stoi(spec.substr(prefix.size()), &used);
            if (used == spec.size() - prefix.size()) return v;
        } catch (const std::exception&) {
        }
        throw PreconditionError("bad filter value in '" + spec + "'");
    };
    if (auto k = value_of("k-face-free=")) {
        if (*k < 2 || *k > 4) throw PreconditionError("k-face-free is defined for k in {2,3,4}");
        return [k = *k](const LabeledTree& t) { return is_k_face_free_tree(t, k); };
    }
    if (auto cap = value_of("labels-max=")) {
        if (*cap < 1) throw PreconditionError("labels-max needs a positive value");
        return [cap = *cap](const LabeledTree& t) {
            std::function<bool(const LabeledTree&, bool)> ok = [&](const LabeledTree& u, bool root) {
                if (!root && u.label > cap) return false;
                return std::all_of(u.children.begin(), u.children.end(),
                                   [&](const LabeledTree& c) { return ok(c, false); });
            };
            return ok(t, true);
        };
    }
    throw PreconditionError("unknown filter '" + spec + "'");
}

int cmd_enumerate(const std::string& object, std::size_t size, const std::string& filter, bool count_only,
                  const Options& o, std::ostream& out) {
    const auto keep = tree_filter(filter);
    std::size_t count = 0;
    bool header = false;
    if (object == "perms") {
        require_size(size, kMaxEnumerateLength, "permutation length");
        for (const auto& p : generate_av(size)) {
            const bool ok = filter == "primitive" ? is_primitive_perm(p) : keep(perm_to_tree(p));
            if (!ok) continue;
            ++count;
            if (!count_only) write_object(out, o.fmt(), "perm", format_permutation(p), header);
        }
    } else {
        require_size(size, kMaxEnumerateNodes, object == "maps" ? "edge count" : "node count");
        if (size == 0) throw PreconditionError("empty tree not modeled");
        for (const auto& t : enumerate_trees(size)) {
            if (!keep(t)) continue;
            ++count;
            if (count_only) continue;
            if (object == "trees") write_object(out, o.fmt(), "tree", format_tree(t), header);
            else write_object(out, o.fmt(), "map", format_map(tree_to_map(t)), header);
        }
    }
    if (count_only) write_count(out, o.fmt(), count);
    return kExitOk;
}

// Reads one object per non-blank line. JSON lines of the form {"tree": ...}
// or {"perm": ...} are accepted as well as the plain text forms.
std::string unwrap(const std::string& line, const std::string& kind) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] != '{') return line;
    Json j;
    try {
        j = Json::parse(line);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("malformed JSON line: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0);
    }
    if (j.contains(kind) && j[kind].is_string()) return j[kind].get<std::string>();
    throw ParseError("JSON line lacks a \"" + kind + "\" string field", first);
}

int cmd_biject(const std::string& from, const std::string& to, const Options& o, std::istream& in,
               std::ostream& out) {
    std::string line;
    bool header = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            LabeledTree t;
            if (from == "tree") {
                t = parse_tree(unwrap(line, "tree"));
                if (auto d = validate_tree(t); !d) throw PreconditionError("invalid beta(1,0)-tree: " + d.message);
            } else {
                t = perm_to_tree(parse_permutation(unwrap(line, "perm")));
            }
            if (to == "tree") write_object(out, o.fmt(), "tree", format_tree(t), header);
            else if (to == "perm") write_object(out, o.fmt(), "perm", format_permutation(tree_to_perm(t)), header);
            else write_object(out, o.fmt(), "map", format_map(tree_to_map(t)), header);
        } catch (const std::exception& e) {
            throw PreconditionError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return kExitOk;
}

Record tree_record(const LabeledTree& t) {
    const auto s = tree_stats(t);
    return {{"tree", format_tree(t)},
            {"nodes", s.nodes},
            {"leaves", s.leaves},
            {"internal_nodes", s.internal_nodes},
            {"root_label", s.root_label},
            {"single_child_max_nodes", s.single_child_max_nodes},
            {"decomposable", s.decomposable},
            {"primitive", is_primitive_tree(t)},
            {"two_face_free", is_k_face_free_tree(t, 2)},
            {"three_face_free", is_k_face_free_tree(t, 3)},
            {"four_face_free", is_k_face_free_tree(t, 4)},
            {"mef_necessary", mef_necessary(t)},
            {"no_only_children", has_no_only_children(t)}};
}

Record map_record(const CombinatorialMap& m) {
    const auto f = faces(m);
    std::string hist;
    for (std::size_t d = 0; d < f.degree_histogram.size(); ++d)
        if (f.degree_histogram[d]) hist += (hist.empty() ? "" : " ") + std::to_string(d) + ":" + std::to_string(f.degree_histogram[d]);
    return {{"edges", m.n_edges()},
            {"vertices", vertex_count(m)},
            {"faces", f.faces.size()},
            {"root_face_degree", f.root_face().degree()},
            {"internal_two_faces", internal_2face_count(m)},
            {"face_degrees", hist},
            {"nonseparable", is_nonseparable(m)},
            {"multiple_edges", has_multiple_edges(m)}};
}

Record perm_record(const Permutation& p) {
    const bool member = in_class(p);
    Record r{{"perm", format_permutation(p)},
             {"length", p.size()},
             {"lr_maxima", left_to_right_maxima(p).size()},
             {"components", components(p).size()},
             {"in_class", member},
             {"m_occurrences", count_occurrences(pattern_M(), p)}};
    r.emplace_back("primitive", member ? Json(is_primitive_perm(p)) : Json(nullptr));
    return r;
}

int cmd_stats(const std::string& object, const Options& o, std::istream& in, std::ostream& out) {
    RecordWriter w(out, o.fmt());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            if (object == "tree") {
                w.write(tree_record(parse_tree(unwrap(line, "tree"))));
            } else if (object == "perm") {
                w.write(perm_record(parse_permutation(unwrap(line, "perm"))));
            } else {
                const auto m = parse_map(line);
                if (auto d = validate_map(m); !d) throw PreconditionError("invalid map: " + d.message);
                w.write(map_record(m));
            }
        } catch (const std::exception& e) {
            throw PreconditionError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return kExitOk;
}

const std::map<std::string, SeriesName>& series_names() {
    static const std::map<std::string, SeriesName> names{
        {"a", SeriesName::A_FORMULA}, {"a-zeil", SeriesName::A_ZEIL}, {"a-hyp", SeriesName::A_HYP},
        {"p", SeriesName::P},         {"pprime", SeriesName::PPRIME}, {"b1", SeriesName::B1},
        {"b2", SeriesName::B2},       {"b3", SeriesName::B3}};
    return names;
}

const std::map<std::string, Estimate>& estimate_names() {
    static const std::map<std::string, Estimate> names{{"a", Estimate::A},   {"p", Estimate::P},
                                                       {"pprime", Estimate::PPRIME}, {"b1", Estimate::B1},
                                                       {"b2", Estimate::B2}, {"b3", Estimate::B3}};
    return names;
}

std::optional<Estimate> estimate_for(SeriesName s) {
    switch (s) {
        case SeriesName::A_FORMULA:
        case SeriesName::A_ZEIL:
        case SeriesName::A_HYP: return Estimate::A;
        case SeriesName::P: return Estimate::P;
        case SeriesName::PPRIME: return Estimate::PPRIME;
        case SeriesName::B1: return Estimate::B1;
        case SeriesName::B2: return Estimate::B2;
        case SeriesName::B3: return Estimate::B3;
    }
    return std::nullopt;
}

int cmd_series(const std::string& name, std::size_t terms, const Options& o, std::ostream& out) {
    const auto id = series_names().at(name);
    const bool composed = id == SeriesName::P || id == SeriesName::PPRIME;
    require_size(terms, composed ? kMaxComposedTerms : kMaxTerms, "term count");
    const auto s = series(id, terms);
    if (o.fmt() == Format::Text) {
        out << format_series(s);
        return kExitOk;
    }
    RecordWriter w(out, o.fmt());
    const auto est = estimate_for(id);
    for (std::size_t n = 0; n <= s.order(); ++n) {
        Record r{{"n", n}, {"coefficient", s[n].get_str()}};
        if (o.fmt() == Format::Csv) {
            // estimate of this very coefficient, whatever indexing the series uses
            if (n >= 1 && est) {
                const Real a = asymptotic(*est, n);
                r.emplace_back("asymptotic", format_real(a, 6));
                r.emplace_back("relative_error", s[n] != 0 ? Json(format_real(a / to_real(s[n]) - 1, 8)) : Json(""));
            } else {
                r.emplace_back("asymptotic", "");
                r.emplace_back("relative_error", "");
            }
        }
        w.write(r);
    }
    return kExitOk;
}

int cmd_asympt(const std::string& name, std::size_t at, const Options& o, std::ostream& out) {
    require_size(at, kMaxAsymptoticN, "n");
    if (at < 1) throw PreconditionError("asymptotic estimates need n >= 1");
    const auto id = estimate_names().at(name);
    const Real est = asymptotic(id, at);
    const Integer exact = asymptotic_reference(id, at);
    Record r{{"name", name}, {"n", at}, {"estimate", format_real(est, 6)}, {"exact", exact.get_str()}};
    r.emplace_back("relative_error", exact != 0 ? Json(format_real(est / to_real(exact) - 1, 8)) : Json(nullptr));
    RecordWriter(out, o.fmt()).write(r);
    return kExitOk;
}

int cmd_verify(const std::string& suite, std::size_t max_size, const Options& o, std::ostream& out) {
    const std::size_t cap = env_cap(max_size ? max_size : static_cast<std::size_t>(-1));
    std::vector<std::string> names;
    if (suite == "all") names = suite_names();
    else names.push_back(suite);
    bool ok = true;
    for (const auto& n : names) {
        const auto report = run_suite(n, cap == static_cast<std::size_t>(-1) ? 0 : cap);
        ok = ok && report.pass();
        switch (o.fmt()) {
            case Format::Json: out << report.to_json() << '\n'; break;
            case Format::Csv: {
                RecordWriter w(out, Format::Csv);
                for (const auto& c : report.checks)
                    w.write({{"suite", report.suite},
                             {"check", c.name},
                             {"status", c.pass ? "pass" : (c.informational ? "note" : "fail")},
                             {"detail", c.detail}});
                break;
            }
            case Format::Text: out << report.to_text(); break;
        }
    }
    return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Maps, beta(1,0)-trees and (3142, 2-41-3)-avoiding permutations", "mapscope"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", "mapscope 0.1.0");
    Options o;
    app.add_option("--format", o.format, "Output encoding")->check(CLI::IsMember({"text", "json", "csv"}));

    std::string object = "trees", filter;
    std::size_t size = 0;
    bool count_only = false;
    auto* en = app.add_subcommand("enumerate", "List all objects of one size");
    en->add_option("--object", object)->check(CLI::IsMember({"trees", "maps", "perms"}));
    en->add_option("--size", size, "Nodes for trees, edges for maps, length for permutations")->required();
    en->add_option("--filter", filter,
                   "primitive | two-face-free | k-face-free=K | mef-necessary | no-only-children | labels-max=L");
    en->add_flag("--count-only", count_only);

    std::string from, to;
    auto* bj = app.add_subcommand("biject", "Convert objects read from stdin, one per line");
    bj->add_option("--from", from)->required()->check(CLI::IsMember({"tree", "perm"}));
    bj->add_option("--to", to)->required()->check(CLI::IsMember({"tree", "map", "perm"}));

    std::string stat_object;
    auto* st = app.add_subcommand("stats", "Statistics for objects read from stdin");
    st->add_option("--object", stat_object)->required()->check(CLI::IsMember({"tree", "map", "perm"}));

    std::string series_name;
    std::size_t terms = 10;
    auto* se = app.add_subcommand("series", "Exact coefficients x^0..x^N");
    se->add_option("--name", series_name)->required()->check(CLI::IsMember({"a", "a-zeil", "a-hyp", "p", "pprime", "b1", "b2", "b3"}));
    se->add_option("--terms", terms, "Highest power N");

    std::string asym_name;
    std::size_t at = 0;
    auto* as = app.add_subcommand("asympt", "First-order estimate against the exact count");
    as->add_option("--name", asym_name)->required()->check(CLI::IsMember({"a", "p", "pprime", "b1", "b2", "b3"}));
    as->add_option("--at", at)->required();

    std::string suite = "all";
    std::size_t max_size = 0;
    auto* ve = app.add_subcommand("verify", "Run verification suites");
    std::vector<std::string> suites = suite_names();
    suites.push_back("all");
    ve->add_option("--suite", suite)->check(CLI::IsMember(suites));
    ve->add_option("--max-size", max_size, "Cap on each suite's size parameter");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "mapscope: " << e.what() << " (run with --help for usage)\n";
        return kExitUsage;
    }

    try {
        if (*en) return cmd_enumerate(object, size, filter, count_only, o, out);
        if (*bj) return cmd_biject(from, to, o, in, out);
        if (*st) return cmd_stats(stat_object, o, in, out);
        if (*se) return cmd_series(series_name, terms, o, out);
        if (*as) return cmd_asympt(asym_name, at, o, out);
        if (*ve) return cmd_verify(suite, max_size, o, out);
    } catch (const ParseError& e) {
        err << "mapscope: parse error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "mapscope: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace mapscope
