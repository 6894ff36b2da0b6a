#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "mapscope/cli.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out, err;
    const int code = mapscope::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("enumerate counts") {
    CHECK(invoke({"enumerate", "--object", "trees", "--size", "4", "--count-only"}).out == "6\n");
    CHECK(invoke({"--format", "json", "enumerate", "--object", "maps", "--size", "4", "--count-only"}).out ==
          "{\"count\":6}\n");
    CHECK(invoke({"--format", "csv", "enumerate", "--object", "perms", "--size", "3", "--count-only"}).out ==
          "count\n6\n");
    CHECK(invoke({"enumerate", "--object", "perms", "--size", "4", "--filter", "primitive", "--count-only"}).out ==
          "5\n");
    CHECK(invoke({"enumerate", "--object", "trees", "--size", "5", "--filter", "k-face-free=3", "--count-only"}).code ==
          0);
    CHECK(invoke({"enumerate", "--object", "trees", "--size", "6", "--filter", "labels-max=1", "--count-only"}).code ==
          0);
}

TEST_CASE("enumerate objects") {
    const auto trees = invoke({"enumerate", "--object", "trees", "--size", "3"});
    CHECK(trees.code == 0);
    CHECK(trees.out == "(2 (1) (1))\n(1 (1 (1)))\n");

    const auto maps = invoke({"enumerate", "--object", "maps", "--size", "4"});
    CHECK(lines(maps.out) == 6);
    std::istringstream is(maps.out);
    std::string line;
    while (std::getline(is, line)) CHECK(nlohmann::json::parse(line)["n_darts"] == 8);

    const auto csv = invoke({"--format", "csv", "enumerate", "--object", "perms", "--size", "2"});
    CHECK(csv.out == "perm\n1 2\n2 1\n");
}

TEST_CASE("biject round trips through permutations") {
    const auto trees = invoke({"enumerate", "--object", "trees", "--size", "6"}).out;
    const auto perms = invoke({"biject", "--from", "tree", "--to", "perm"}, trees);
    CHECK(perms.code == 0);
    CHECK(lines(perms.out) == 91);
    CHECK(invoke({"biject", "--from", "perm", "--to", "tree"}, perms.out).out == trees);

    const auto json_trees = invoke({"--format", "json", "enumerate", "--object", "trees", "--size", "5"}).out;
    const auto json_perms = invoke({"--format", "json", "biject", "--from", "tree", "--to", "perm"}, json_trees).out;
    CHECK(invoke({"--format", "json", "biject", "--from", "perm", "--to", "tree"}, json_perms).out == json_trees);

    CHECK(invoke({"biject", "--from", "tree", "--to", "perm"}, "(1)\n\n(1 (1))\n").out == "()\n1\n");
    CHECK(invoke({"biject", "--from", "tree", "--to", "map"}, "(1)\n").out ==
          "{\"n_darts\":2,\"alpha\":[1,0],\"sigma\":[0,1],\"root\":0}\n");
}

TEST_CASE("stats records") {
    const auto t = invoke({"--format", "json", "stats", "--object", "tree"}, "(1 (1 (1 (1))))\n");
    CHECK(t.code == 0);
    const auto j = nlohmann::json::parse(t.out);
    CHECK(j["single_child_max_nodes"] == 3);
    CHECK(j["primitive"] == false);

    const auto m = invoke({"stats", "--object", "map"}, "{\"n_darts\":4,\"alpha\":[1,0,3,2],\"sigma\":[2,3,0,1],\"root\":0}\n");
    CHECK(m.code == 0);
    CHECK(m.out.find("faces=2") != std::string::npos);
    CHECK(m.out.find("multiple_edges=true") != std::string::npos);

    const auto p = invoke({"--format", "csv", "stats", "--object", "perm"}, "2 5 3 1 4\n1 2\n");
    CHECK(lines(p.out) == 3);
    CHECK(p.out.rfind("perm,length,", 0) == 0);
}

TEST_CASE("series and asymptotics") {
    const auto b3 = invoke({"series", "--name", "b3", "--terms", "10"});
    CHECK(b3.code == 0);
    CHECK(b3.out == "0\n1\n0\n1\n1\n5\n13\n48\n160\n578\n2078\n");

    const auto csv = invoke({"--format", "csv", "series", "--name", "b1", "--terms", "5"});
    CHECK(csv.out.rfind("n,coefficient,asymptotic,relative_error\n0,0,,\n", 0) == 0);
    CHECK(lines(csv.out) == 7);

    const auto a = invoke({"--format", "json", "asympt", "--name", "b1", "--at", "100"});
    CHECK(a.code == 0);
    const auto j = nlohmann::json::parse(a.out);
    CHECK(j["n"] == 100);
    CHECK(std::abs(std::stod(j["relative_error"].get<std::string>())) < 0.02);
}

TEST_CASE("verify") {
    const auto ok = invoke({"verify", "--suite", "counts", "--max-size", "6"});
    CHECK(ok.code == 0);
    CHECK(ok.out.rfind("counts: PASS max_nodes=6", 0) == 0);
    const auto j = invoke({"--format", "json", "verify", "--suite", "series", "--max-size", "10"});
    CHECK(nlohmann::json::parse(j.out)["status"] == "pass");
}

TEST_CASE("usage and input errors exit 2 with one line") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {},
             {"enumerate", "--object", "trees", "--size", "4", "--bogus"},
             {"enumerate", "--object", "graphs", "--size", "4"},
             {"enumerate", "--object", "trees", "--size", "0"},
             {"enumerate", "--object", "trees", "--size", "40"},
             {"enumerate", "--object", "trees", "--size", "4", "--filter", "k-face-free=7"},
             {"enumerate", "--object", "trees", "--size", "4", "--filter", "nonsense"},
             {"series", "--name", "zz", "--terms", "3"},
             {"asympt", "--name", "b1", "--at", "0"},
             {"--format", "xml", "series", "--name", "a"},
             {"verify", "--suite", "nonesuch"},
         }) {
        const auto r = invoke(args);
        CAPTURE(r.err);
        CHECK(r.code == mapscope::kExitUsage);
        CHECK(!r.err.empty());
    }
    const auto bad = invoke({"biject", "--from", "tree", "--to", "perm"}, "(1)\n(3 (1) (1))\n");
    CHECK(bad.code == mapscope::kExitUsage);
    CHECK(lines(bad.err) == 1);
    CHECK(bad.err.find("line 2") != std::string::npos);
    const auto parse = invoke({"stats", "--object", "tree"}, "(1 (1)\n");
    CHECK(parse.code == mapscope::kExitUsage);
    CHECK(lines(parse.err) == 1);
}

TEST_CASE("help exits 0") {
    const auto r = invoke({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("enumerate") != std::string::npos);
}

TEST_CASE("MAPSCOPE_MAX_SIZE only lowers limits") {
    setenv("MAPSCOPE_MAX_SIZE", "5", 1);
    CHECK(invoke({"enumerate", "--object", "trees", "--size", "6", "--count-only"}).code == mapscope::kExitUsage);
    CHECK(invoke({"enumerate", "--object", "trees", "--size", "5", "--count-only"}).out == "22\n");
    CHECK(invoke({"verify", "--suite", "counts"}).out.rfind("counts: PASS max_nodes=5", 0) == 0);
    setenv("MAPSCOPE_MAX_SIZE", "100000", 1);
    CHECK(invoke({"enumerate", "--object", "trees", "--size", "13", "--count-only"}).code == mapscope::kExitUsage);
    setenv("MAPSCOPE_MAX_SIZE", "abc", 1);
    CHECK(invoke({"enumerate", "--object", "trees", "--size", "3", "--count-only"}).code == mapscope::kExitUsage);
    unsetenv("MAPSCOPE_MAX_SIZE");
}
