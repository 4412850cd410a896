#ifndef C4STAR_WITNESS_HPP
#define C4STAR_WITNESS_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "c4star/graph.hpp"

namespace c4star {

/// A machine-checked lower-bound certificate: a C4-free graph on N vertices
/// whose complement max degree is at most n-1 proves f(n) >= N+1, where
/// f(n) = R(C4, K_{1,n}).
struct WitnessCertificate {
    std::string name;
    int order = 0;
    int star_index = 0;
    bool c4_free = false;
    int complement_max_degree = 0;
    bool valid = false;
    int implied_lower_bound = 0; // order + 1 when valid, 0 otherwise
    std::string reason;          // empty when valid
};

/// Checks (g, n) and returns the certificate. An invalid witness is reported
/// through the certificate's `valid`/`reason` fields, never as an exception.
WitnessCertificate verify_witness(const Graph& g, int star_index,
                                  std::string name = "");

/// One loaded data-file witness with its expected statistics and extra
/// observed stats (edge count, degree range) that are recorded but not
/// required to match anything.
struct WitnessReport {
    WitnessCertificate certificate;
    Graph graph;
    int expected_order = 0;
    int expected_complement_max_degree = 0;
    bool matches_expectation = false;
    int edge_count = 0;
    int min_degree = 0;
    int max_degree = 0;
};

struct WitnessSetReport {
    std::vector<WitnessReport> witnesses;

    bool all_valid() const;
    std::vector<WitnessCertificate> certificates() const;
};

/// Loads H34.mat .. H39.mat and H43.mat from `dir`, checks each against its
/// expected order and complement max degree (27, 28, 29, 30, 31, 32, 36),
/// certifies C4-freeness, and assigns the star index n = Delta(complement)+1.
/// If dir/SHA256SUMS exists the file contents are also checked against it.
/// Errors: MissingFile, ChecksumMismatch, ExpectationMismatch, and any parse
/// error re-thrown with file context.
WitnessSetReport load_witness_set(const std::filesystem::path& dir);

} // namespace c4star

#endif
