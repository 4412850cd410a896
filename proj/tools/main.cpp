#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "c4star/bounds.hpp"
#include "c4star/errors.hpp"
#include "c4star/extremal.hpp"
#include "c4star/graph.hpp"
#include "c4star/search.hpp"
#include "c4star/witness.hpp"

namespace {

using namespace c4star;

// 0 = success, 1 = verification failed / inconsistency, 2 = usage or input.
int exit_code_for(const std::string& code) {
    static const char* input_errors[] = {
        "MissingFile",      "SeedFileMissing", "SeedParseError",
        "BadTableRow",      "BadCharacter",    "NonSquare",
        "NotSymmetric",     "LoopPresent",     "OrderOutOfRange",
        "DomainTooSmall",   "BadStarIndex",    "PreconditionViolated",
        "OutOfRange",       "SameVertex",      "VertexOutOfRange",
        "BadWeight",
    };
    for (const char* c : input_errors) {
        if (code == c) return 2;
    }
    return 1;
}

std::string witness_line(const WitnessCertificate& cert) {
    return cert.name + ": C4-free, Δ(complement)=" +
           std::to_string(cert.complement_max_degree) + ", implies f(" +
           std::to_string(cert.star_index) +
           ")>=" + std::to_string(cert.implied_lower_bound);
}

int run_verify(const std::string& dir, const std::string& file, int star) {
    if (!file.empty()) {
        std::ifstream in(file, std::ios::binary);
        if (!in) fail("MissingFile", "cannot open " + file);
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        const Graph g = parse_graph(text);
        const auto name = std::filesystem::path(file).stem().string();
        const auto cert = verify_witness(g, star, name);
        if (!cert.valid) {
            std::cout << cert.name << ": INVALID: " << cert.reason << "\n";
            return 1;
        }
        std::cout << witness_line(cert) << "\n";
        return 0;
    }
    const auto report = load_witness_set(dir);
    for (const auto& w : report.witnesses) {
        std::cout << witness_line(w.certificate) << "\n";
    }
    std::cerr << report.witnesses.size() << " witnesses verified\n";
    return 0;
}

int run_bounds(int max_n, bool holdout, const std::string& seeds,
               const std::string& ex_path, const std::string& witness_dir,
               bool chains) {
    const SeedMode mode = holdout ? SeedMode::Holdout : SeedMode::Full;
    BoundTable table = seed_table(seeds, max_n, mode);
    const ExTable ex = ExTable::load(ex_path);
    const auto witnesses = load_witness_set(witness_dir).certificates();
    const BoundTable closed = propagate(std::move(table), witnesses, ex);
    std::cout << render_bounds_tsv(closed, chains);

    int exact = 0, open_lo = 0;
    for (int n = 1; n <= closed.n_max(); ++n) {
        if (closed.at(n).exact()) ++exact;
        if (!closed.at(n).lo) ++open_lo;
    }
    const auto remark = remark_check(closed);
    std::cerr << "mode=" << (holdout ? "holdout" : "full")
              << " n_max=" << closed.n_max() << " exact=" << exact
              << " no-lower-bound=" << open_lo
              << " remark-violations=" << remark.violations.size() << "\n";
    return 0;
}

int run_search(int vertices, int star, const SearchParams& params,
               const std::string& out) {
    const SearchOutcome outcome = local_search_witness(vertices, star, params);
    if (!outcome.found) {
        std::cerr << "no witness found: best objective "
                  << outcome.best_objective << " after " << outcome.steps_used
                  << " steps, " << outcome.restarts_used << " restarts\n";
        return 1;
    }
    const std::string matrix = serialize_graph(*outcome.found);
    const std::string meta =
        "seed=" + std::to_string(params.seed) +
        " steps=" + std::to_string(outcome.steps_used) + " certifies f(" +
        std::to_string(star) + ")>=" + std::to_string(vertices + 1);
    std::cout << matrix << "\n";
    std::cerr << meta << "\n";
    if (!out.empty()) {
        std::ofstream m(out, std::ios::binary);
        if (!m) fail("MissingFile", "cannot write " + out);
        m << matrix << "\n";
        std::ofstream side(out + ".meta", std::ios::binary);
        if (!side) fail("MissingFile", "cannot write " + out + ".meta");
        side << meta << "\n";
    }
    return 0;
}

int run_exact(int star, int cap) {
    const int f = cap > 0 ? exact_f_bruteforce(star, cap)
                          : exact_f_bruteforce(star);
    std::cout << "f(" << star << ") = " << f << "\n";
    return 0;
}

int run_ex(int vertices, double budget_secs) {
    ExTable table;
    const std::filesystem::path shipped = "data/ex_c4.tsv";
    if (std::filesystem::exists(shipped)) table = ExTable::load(shipped);
    const auto budget = std::chrono::milliseconds(
        static_cast<long long>(std::lround(budget_secs * 1000.0)));
    const ExEntry entry = ex_exact(vertices, budget, &table);
    std::cout << entry.q << '\t' << entry.value << '\t'
              << to_string(entry.kind) << '\t' << to_string(entry.provenance)
              << "\n";
    if (entry.attaining) {
        std::cerr << "attaining graph:\n"
                  << serialize_graph(*entry.attaining) << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"R(C4, K_{1,n}) bound verification and derivation toolkit"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand(
        "verify", "check witness graphs and print the bounds they certify");
    std::string verify_dir = "data/witness";
    std::string verify_file;
    int verify_star = 0;
    verify->add_option("--dir", verify_dir, "witness directory");
    auto* file_opt =
        verify->add_option("--file", verify_file, "single matrix file");
    auto* star_opt = verify->add_option("--star", verify_star,
                                        "star index for --file");
    file_opt->needs(star_opt);
    star_opt->needs(file_opt);

    auto* bounds = app.add_subcommand(
        "bounds", "derive f(n) intervals by fixpoint propagation");
    int max_n = 0;
    bool holdout = false, chains = false;
    std::string seeds = "data/f_known.tsv";
    std::string ex_path = "data/ex_c4.tsv";
    std::string witness_dir = "data/witness";
    bounds->add_option("--max-n", max_n, "largest star index")->required();
    bounds->add_flag("--holdout", holdout,
                     "drop the source's own results and re-derive them");
    bounds->add_option("--seeds", seeds, "seed table path");
    bounds->add_option("--ex", ex_path, "ex(q;C4) table path");
    bounds->add_option("--witness-dir", witness_dir, "witness directory");
    bounds->add_flag("--chains", chains, "append derivation chains");

    auto* search = app.add_subcommand(
        "search", "tabu local search for witness graphs");
    int s_vertices = 0, s_star = 0;
    SearchParams params;
    std::string s_out;
    search->add_option("--vertices", s_vertices, "graph order")->required();
    search->add_option("--star", s_star, "star index")->required();
    search->add_option("--seed", params.seed, "random seed");
    search->add_option("--max-steps", params.max_steps, "steps per restart");
    search->add_option("--restarts", params.restarts, "restart count");
    search->add_option("--out", s_out, "write the found matrix here");
    search->add_option("--workers", params.workers, "parallel workers");

    auto* exact = app.add_subcommand(
        "exact", "compute f(n) for tiny n by exhaustive search");
    int e_star = 0, e_cap = 0;
    exact->add_option("--star", e_star, "star index")->required();
    exact->add_option("--cap", e_cap, "upper cap on the scan");

    auto* ex_cmd = app.add_subcommand(
        "ex", "compute ex(q;C4) exactly by branch-and-bound");
    int x_vertices = 0;
    double x_budget = 10.0;
    ex_cmd->add_option("--vertices", x_vertices, "order q")->required();
    ex_cmd->add_option("--budget", x_budget, "time budget in seconds");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (verify->parsed()) {
            return run_verify(verify_dir, verify_file, verify_star);
        }
        if (bounds->parsed()) {
            return run_bounds(max_n, holdout, seeds, ex_path, witness_dir,
                              chains);
        }
        if (search->parsed()) {
            return run_search(s_vertices, s_star, params, s_out);
        }
        if (exact->parsed()) return run_exact(e_star, e_cap);
        if (ex_cmd->parsed()) return run_ex(x_vertices, x_budget);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
