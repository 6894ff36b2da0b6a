#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "mapscope/perms.hpp"

namespace mapscope {

struct Witness {
    std::string object;
    std::string expected;
    std::string actual;
};

/// One asserted property. Informational checks are reported but do not
/// affect the suite status.
struct Check {
    std::string name;
    bool pass = true;
    bool informational = false;
    std::string detail;
    std::vector<Witness> witnesses;
};

struct VerificationReport {
    std::string suite;
    std::map<std::string, long> params;
    std::vector<Check> checks;
    double runtime_seconds = 0;

    bool pass() const;
    std::string to_text() const;
    std::string to_json() const;
};

/// Filter of all n! permutations through a naive pattern matcher. n <= 9.
std::vector<Permutation> brute_force_av(std::size_t n);

/// Size guards; larger parameters throw PreconditionError.
inline constexpr std::size_t kMaxTreeNodes = 10;
inline constexpr std::size_t kMaxPermLength = 9;
inline constexpr std::size_t kMaxSeriesOrder = 30;

VerificationReport check_counts(std::size_t max_nodes = 10);
VerificationReport check_table1(std::size_t max_nodes = 9);
VerificationReport check_theorem5(std::size_t max_nodes = 9);
VerificationReport check_kfacefree(std::size_t max_nodes = 9);
VerificationReport check_bounds(std::size_t max_edges = 8);
VerificationReport check_primitive_series(std::size_t max_edges = 10);
VerificationReport check_closure(std::size_t max_length = 8);
VerificationReport check_series_identities(std::size_t order = 30);
VerificationReport check_asymptotics();
VerificationReport check_patterns(std::size_t max_length = 6);
VerificationReport check_lemmas(std::size_t max_nodes = 8);

/// Suite names accepted by run_suite, in run order.
const std::vector<std::string>& suite_names();

/// Runs a suite by name with its default size, or min(default, size_cap)
/// when size_cap is nonzero.
VerificationReport run_suite(const std::string& name, std::size_t size_cap = 0);

}  // namespace mapscope
