#include "c4star/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <climits>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

#include "c4star/errors.hpp"
#include "c4star/intmath.hpp"

namespace c4star {

namespace {

std::vector<std::pair<int, int>> all_pairs(int N) {
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(N) * (N - 1) / 2);
    for (int u = 0; u < N; ++u)
        for (int v = u + 1; v < N; ++v) pairs.emplace_back(u, v);
    return pairs;
}

struct ExistSearch {
    int N;
    int d_min;
    long long cap;
    long long nodes = 0;
    std::vector<std::pair<int, int>> pairs;
    // rem[k][v]: undecided pairs with index >= k incident to v; used to
    // prune branches where v can no longer reach the degree floor.
    std::vector<std::vector<int>> rem;
    Graph g;

    ExistSearch(int order, int floor, long long node_cap)
        : N(order), d_min(floor), cap(node_cap), pairs(all_pairs(order)),
          g(order) {
        rem.assign(pairs.size() + 1, std::vector<int>(order, 0));
        for (auto k = static_cast<int>(pairs.size()) - 1; k >= 0; --k) {
            rem[k] = rem[k + 1];
            ++rem[k][pairs[k].first];
            ++rem[k][pairs[k].second];
        }
    }

    bool run(std::size_t idx) {
        if (++nodes > cap) {
            fail("CapExceeded",
                 "existence search for order " + std::to_string(N) +
                     " exceeded " + std::to_string(cap) + " nodes");
        }
        bool deficit = false;
        for (int v = 0; v < N; ++v) {
            const int d = g.degree(v);
            if (d + rem[idx][v] < d_min) return false;
            if (d < d_min) deficit = true;
        }
        if (!deficit) return true; // C4-free by invariant, floor reached
        if (idx == pairs.size()) return false;
        const auto [u, v] = pairs[idx];
        if (c4_safe_to_add(g, u, v)) {
            g.add_edge(u, v);
            if (run(idx + 1)) return true;
            g.remove_edge(u, v);
        }
        return run(idx + 1);
    }
};

} // namespace

bool exhaustive_exists(int N, int n, long long node_cap) {
    if (N < 1 || N > 12) {
        fail("OrderOutOfRange",
             "exhaustive_exists handles 1 <= N <= 12, got " +
                 std::to_string(N));
    }
    if (n < 1) {
        fail("BadStarIndex", "star index must be at least 1, got " +
                                 std::to_string(n));
    }
    if (node_cap < 1) fail("PreconditionViolated", "node_cap must be >= 1");
    if (N - n <= 0) return true; // the edgeless graph is good
    ExistSearch search(N, N - n, node_cap);
    return search.run(0);
}

int exact_f_bruteforce(int n, int hi_cap) {
    if (n < 1) {
        fail("BadStarIndex", "star index must be at least 1, got " +
                                 std::to_string(n));
    }
    if (hi_cap < 1) fail("PreconditionViolated", "hi_cap must be >= 1");
    for (int N = 1; N <= hi_cap; ++N) {
        if (!exhaustive_exists(N, n)) return N;
    }
    fail("Infeasible", "good graphs exist for every N <= " +
                           std::to_string(hi_cap) +
                           "; the cap is below f(" + std::to_string(n) + ")");
}

int exact_f_bruteforce(int n) {
    if (n < 1) {
        fail("BadStarIndex", "star index must be at least 1, got " +
                                 std::to_string(n));
    }
    // f(1) = 4; beyond that f(n) <= n + ceil(sqrt(n-1)) + 1 caps the scan.
    const int cap =
        n == 1 ? 4 : n + static_cast<int>(ceil_sqrt(n - 1)) + 1;
    return exact_f_bruteforce(n, cap);
}

namespace {

void check_weight(const Rational& w) {
    if (w.num < 1 || w.den < 1) {
        fail("PreconditionViolated", "penalty weight must be positive");
    }
}

} // namespace

long long search_objective_scaled(const Graph& g, int n, Rational weight) {
    check_weight(weight);
    if (n < 1) {
        fail("BadStarIndex", "star index must be at least 1, got " +
                                 std::to_string(n));
    }
    const int N = g.order();
    const int d_min = N - n;
    long long deficit = 0;
    for (int v = 0; v < N; ++v) {
        deficit += std::max(0, d_min - g.degree(v));
    }
    return weight.den * static_cast<long long>(count_c4(g)) +
           weight.num * deficit;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t restart_seed(std::uint64_t base, int restart) {
    return splitmix64(base +
                      0x9E3779B97F4A7C15ULL *
                          (static_cast<std::uint64_t>(restart) + 1));
}

// Number of 4-cycles through the pair (u,v) if it were an edge: paths
// u-x-y-v of length 3. Independent of whether (u,v) itself is present, so
// it serves as the exact count_c4 delta for toggling that pair.
long long c4_through(const Graph& g, int u, int v) {
    const std::uint64_t skip =
        (std::uint64_t{1} << u) | (std::uint64_t{1} << v);
    const std::uint64_t nv = g.neighbors(v) & ~skip;
    long long total = 0;
    for (std::uint64_t m = g.neighbors(u) & ~skip; m != 0; m &= m - 1) {
        const int x = std::countr_zero(m);
        total += std::popcount(g.neighbors(x) & nv);
    }
    return total;
}

struct RestartResult {
    std::optional<Graph> found;
    long long steps = 0;
    long long best = 0;
};

RestartResult run_restart(int N, int n, const SearchParams& params,
                          std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Graph g(N);
    const int d_min = N - n;
    if (N >= 2) {
        for (int u = 0; u < N; ++u) {
            for (int v = u + 1; v < N; ++v) {
                const auto draw = static_cast<long long>(
                    rng() % static_cast<std::uint64_t>(N - 1));
                if (draw < d_min) g.add_edge(u, v);
            }
        }
    }
    const Rational w = params.penalty_weight;
    const auto pairs = all_pairs(N);
    std::vector<long long> expire(pairs.size(), 0);
    long long obj = search_objective_scaled(g, n, w);

    RestartResult result;
    result.best = obj;
    for (long long step = 1; step <= params.max_steps; ++step) {
        if (obj == 0) break;
        long long best_cand = LLONG_MAX;
        int best_p = -1;
        long long best_delta = 0;
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            if (expire[p] >= step) continue;
            const auto [u, v] = pairs[p];
            const bool present = g.has_edge(u, v);
            const long long dc4 =
                (present ? -1 : 1) * c4_through(g, u, v);
            const int du = g.degree(u);
            const int dv = g.degree(v);
            long long ddef = 0;
            if (present) {
                ddef += std::max(0, d_min - (du - 1)) - std::max(0, d_min - du);
                ddef += std::max(0, d_min - (dv - 1)) - std::max(0, d_min - dv);
            } else {
                ddef += std::max(0, d_min - (du + 1)) - std::max(0, d_min - du);
                ddef += std::max(0, d_min - (dv + 1)) - std::max(0, d_min - dv);
            }
            const long long delta = w.den * dc4 + w.num * ddef;
            const long long cand = obj + delta;
            if (cand < best_cand) {
                best_cand = cand;
                best_p = static_cast<int>(p);
                best_delta = delta;
            }
        }
        if (best_p < 0) break; // every pair is tabu (degenerate sizes)
        const auto [u, v] = pairs[static_cast<std::size_t>(best_p)];
        g.toggle_edge(u, v);
        expire[static_cast<std::size_t>(best_p)] = step + params.tabu_tenure;
        obj += best_delta;
        result.steps = step;
        result.best = std::min(result.best, obj);
    }
    if (obj == 0) result.found = g;
    return result;
}

} // namespace

SearchOutcome local_search_witness(int N, int n, const SearchParams& params) {
    if (N < 1 || N > Graph::kMaxOrder) {
        fail("OrderOutOfRange", "witness search handles 1 <= N <= 64");
    }
    if (n < 1) {
        fail("BadStarIndex", "star index must be at least 1, got " +
                                 std::to_string(n));
    }
    if (params.max_steps < 1 || params.restarts < 1) {
        fail("PreconditionViolated", "max_steps and restarts must be >= 1");
    }
    if (params.tabu_tenure < 0 || params.workers < 1) {
        fail("PreconditionViolated", "tabu_tenure >= 0 and workers >= 1");
    }
    check_weight(params.penalty_weight);

    std::vector<std::optional<RestartResult>> results(
        static_cast<std::size_t>(params.restarts));
    int winner = params.restarts;

    if (params.workers == 1) {
        for (int r = 0; r < params.restarts; ++r) {
            results[static_cast<std::size_t>(r)] =
                run_restart(N, n, params, restart_seed(params.seed, r));
            if (results[static_cast<std::size_t>(r)]->found) {
                winner = r;
                break;
            }
        }
    } else {
        std::atomic<int> next{0};
        std::atomic<int> found_at{params.restarts};
        std::mutex write;
        const auto worker = [&] {
            for (;;) {
                const int r = next.fetch_add(1);
                if (r >= params.restarts || r > found_at.load()) return;
                auto res =
                    run_restart(N, n, params, restart_seed(params.seed, r));
                const std::lock_guard<std::mutex> lock(write);
                results[static_cast<std::size_t>(r)] = std::move(res);
                if (results[static_cast<std::size_t>(r)]->found) {
                    int cur = found_at.load();
                    while (r < cur &&
                           !found_at.compare_exchange_weak(cur, r)) {
                    }
                }
            }
        };
        std::vector<std::thread> threads;
        const int count = std::min(params.workers, params.restarts);
        threads.reserve(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
        winner = found_at.load();
    }

    // Aggregate only the restarts at or below the winning index so the
    // outcome is identical for any worker count.
    SearchOutcome outcome;
    const int last = winner < params.restarts ? winner : params.restarts - 1;
    outcome.best_objective = LLONG_MAX;
    for (int r = 0; r <= last; ++r) {
        const auto& res = results[static_cast<std::size_t>(r)];
        if (!res) continue;
        outcome.steps_used += res->steps;
        outcome.best_objective = std::min(outcome.best_objective, res->best);
        ++outcome.restarts_used;
    }
    if (winner < params.restarts) {
        outcome.found = results[static_cast<std::size_t>(winner)]->found;
    }
    return outcome;
}

} // namespace c4star
