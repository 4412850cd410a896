#ifndef C4STAR_SEARCH_HPP
#define C4STAR_SEARCH_HPP

#include <cstdint>
#include <optional>

#include "c4star/graph.hpp"

namespace c4star {

/// Positive weight for the degree-deficit term of the search objective,
/// kept rational so the objective stays in exact integer arithmetic.
struct Rational {
    long long num = 1;
    long long den = 1;
};

struct SearchParams {
    std::uint64_t seed = 0;
    int max_steps = 2000;
    int restarts = 10;
    int tabu_tenure = 7;
    Rational penalty_weight{1, 1};
    int workers = 1;
};

struct SearchOutcome {
    std::optional<Graph> found;
    long long steps_used = 0;
    int restarts_used = 0;
    // Scaled by penalty_weight.den: den*count_c4 + num*deficit. Zero exactly
    // when the graph is C4-free with min degree >= N-n.
    long long best_objective = 0;
};

/// True iff some C4-free graph on N vertices has min degree >= N-n, by
/// backtracking over edge decisions with codegree and degree-deficit
/// pruning. Throws CapExceeded once node_cap search nodes are expanded,
/// leaving the question undecided (distinct from a definite false).
bool exhaustive_exists(int N, int n, long long node_cap = 2000000000LL);

/// Least N <= hi_cap with no good graph for (N, n); by definition this is
/// f(n). hi_cap normally comes from the bound table, so failing to find such
/// an N (Infeasible) signals a bug there.
int exact_f_bruteforce(int n, int hi_cap);
int exact_f_bruteforce(int n); // hi_cap defaulted from the closed forms

/// den*count_c4 + num*(total degree deficit below N-n).
long long search_objective_scaled(const Graph& g, int n, Rational weight);

/// Tabu local search over single edge toggles, restarting from random
/// graphs with edge probability (N-n)/(N-1). Returns a graph only when the
/// objective reaches zero, i.e. a verified witness for f(n) >= N+1. For a
/// fixed seed the result does not depend on the worker count: restarts use
/// per-restart derived seeds and the lowest-index success wins.
SearchOutcome local_search_witness(int N, int n, const SearchParams& params);

} // namespace c4star

#endif
