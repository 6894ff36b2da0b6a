// Runs the nine acceptance criteria at their stated sizes and tolerances.
// One line per criterion; the exit status is nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "mapscope/verify.hpp"

using namespace mapscope;

namespace {

struct Criterion {
    int id;
    std::string title;
    double time_limit;
    std::function<std::vector<VerificationReport>()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "tree counts, 2..10 nodes", 10, [] { return std::vector{check_counts(10)}; }},
        {2, "bijection triangle, <= 9 nodes", 30, [] { return std::vector{check_table1(9)}; }},
        {3, "M-occurrences = single-child-max nodes = internal 2-faces, <= 9 nodes", 30,
         [] { return std::vector{check_theorem5(9)}; }},
        {4, "primitive map counts and the composition identities, order 10", 10,
         [] { return std::vector{check_primitive_series(10)}; }},
        {5, "series identities, order 30", 5, [] { return std::vector{check_series_identities(30)}; }},
        {6, "restricted-tree lower bounds", 60, [] { return std::vector{check_bounds(8)}; }},
        {7, "asymptotic estimates and the B3 constants", 30, [] { return std::vector{check_asymptotics()}; }},
        {8, "pattern engine", 60, [] { return std::vector{check_patterns(6)}; }},
        {9, "generation closure", 60, [] { return std::vector{check_closure(8)}; }},
    };

    int failed = 0;
    std::vector<std::string> notes;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        bool ok = true;
        std::vector<VerificationReport> reports;
        try {
            reports = c.run();
        } catch (const std::exception& e) {
            ok = false;
            notes.push_back("criterion " + std::to_string(c.id) + ": threw " + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        for (const auto& r : reports) {
            if (!r.pass()) ok = false;
            for (const auto& ch : r.checks)
                if (!ch.pass && !ch.informational) notes.push_back("criterion " + std::to_string(c.id) + ": " + ch.name +
                                                                   (ch.detail.empty() ? "" : " (" + ch.detail + ")"));
        }
        const bool in_time = secs < c.time_limit;
        if (!in_time) notes.push_back("criterion " + std::to_string(c.id) + ": over the time limit");
        const bool pass = ok && in_time;
        if (!pass) ++failed;
        std::printf("criterion %d: %s  %-72s %7.2f s (limit %.0f s)\n", c.id, pass ? "PASS" : "FAIL", c.title.c_str(), secs,
                    c.time_limit);
        std::fflush(stdout);
    }
    if (!notes.empty()) {
        std::cout << "\nfailing checks:\n";
        for (const auto& n : notes) std::cout << "  " << n << '\n';
    }
    std::cout << '\n' << (9 - failed) << "/9 criteria pass\n";
    return failed == 0 ? 0 : 1;
}
