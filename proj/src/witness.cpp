#include "c4star/witness.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "c4star/errors.hpp"
#include "c4star/sha256.hpp"

namespace c4star {

WitnessCertificate verify_witness(const Graph& g, int star_index,
                                  std::string name) {
    if (star_index < 1) {
        fail("BadStarIndex", "star index must be at least 1, got " +
                                 std::to_string(star_index));
    }
    WitnessCertificate cert;
    cert.name = std::move(name);
    cert.order = g.order();
    cert.star_index = star_index;
    cert.c4_free = !contains_c4(g);

    const GraphStats stats = graph_stats(g);
    cert.complement_max_degree = stats.complement_max_degree;

    if (!cert.c4_free) {
        cert.valid = false;
        cert.reason = "graph contains a C4";
        return cert;
    }
    if (cert.complement_max_degree > star_index - 1) {
        cert.valid = false;
        cert.reason = "complement max degree " +
                      std::to_string(cert.complement_max_degree) +
                      " exceeds n-1 = " + std::to_string(star_index - 1);
        return cert;
    }
    cert.valid = true;
    cert.implied_lower_bound = cert.order + 1;
    return cert;
}

bool WitnessSetReport::all_valid() const {
    return std::all_of(witnesses.begin(), witnesses.end(),
                       [](const WitnessReport& w) {
                           return w.certificate.valid && w.matches_expectation;
                       });
}

std::vector<WitnessCertificate> WitnessSetReport::certificates() const {
    std::vector<WitnessCertificate> out;
    out.reserve(witnesses.size());
    for (const auto& w : witnesses) out.push_back(w.certificate);
    return out;
}

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail("MissingFile", "cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Parses a SHA256SUMS file ("<hex>  <name>" per line) into name -> hex.
std::map<std::string, std::string> parse_checksums(const std::string& text) {
    std::map<std::string, std::string> sums;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        std::string hex, fname;
        if (fields >> hex >> fname) sums[fname] = hex;
    }
    return sums;
}

struct Expected {
    int order;
    int complement_max_degree;
};

} // namespace

WitnessSetReport load_witness_set(const std::filesystem::path& dir) {
    static const std::vector<Expected> expected = {
        {34, 27}, {35, 28}, {36, 29}, {37, 30}, {38, 31}, {39, 32}, {43, 36},
    };

    std::map<std::string, std::string> sums;
    const auto sums_path = dir / "SHA256SUMS";
    if (std::filesystem::exists(sums_path)) {
        sums = parse_checksums(read_file(sums_path));
    }

    WitnessSetReport report;
    for (const auto& exp : expected) {
        const std::string base = "H" + std::to_string(exp.order);
        const std::string fname = base + ".mat";
        const auto path = dir / fname;
        if (!std::filesystem::exists(path)) {
            fail("MissingFile", "witness file " + fname + " not found in " +
                                    dir.string());
        }
        const std::string text = read_file(path);
        if (auto it = sums.find(fname); it != sums.end()) {
            const std::string actual = sha256_hex(text);
            if (actual != it->second) {
                fail("ChecksumMismatch",
                     fname + ": sha256 " + actual + " does not match " +
                         it->second + " recorded in SHA256SUMS");
            }
        }

        Graph g = [&] {
            try {
                return parse_graph(text);
            } catch (const Error& e) {
                fail(e.code(), fname + ": " + e.what());
            }
        }();

        WitnessReport w{verify_witness(g, exp.complement_max_degree + 1, base),
                        g,
                        exp.order,
                        exp.complement_max_degree,
                        false,
                        0,
                        0,
                        0};
        const GraphStats stats = graph_stats(g);
        w.edge_count = stats.edge_count;
        w.min_degree = stats.min_degree;
        w.max_degree = stats.max_degree;

        if (g.order() != exp.order) {
            fail("ExpectationMismatch",
                 base + ": order " + std::to_string(g.order()) +
                     ", expected " + std::to_string(exp.order));
        }
        if (stats.complement_max_degree != exp.complement_max_degree) {
            fail("ExpectationMismatch",
                 base + ": complement max degree " +
                     std::to_string(stats.complement_max_degree) +
                     ", expected " +
                     std::to_string(exp.complement_max_degree));
        }
        if (!w.certificate.valid) {
            fail("ExpectationMismatch",
                 base + ": not a valid witness: " + w.certificate.reason);
        }
        w.matches_expectation = true;
        report.witnesses.push_back(std::move(w));
    }
    return report;
}

} // namespace c4star
