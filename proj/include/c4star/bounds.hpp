#ifndef C4STAR_BOUNDS_HPP
#define C4STAR_BOUNDS_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "c4star/extremal.hpp"
#include "c4star/witness.hpp"

namespace c4star {

// f(n) = R(C4, K_{1,n}) throughout.

enum class Rule {
    Par3,     // f(n) <= n + ceil(sqrt(n)) + 1
    Square,   // f(m^2+1) <= m^2 + m + 2
    Cop3,     // f(n) <= n + ceil(sqrt(n-1)) + 1
    Thm5,     // n even, ceil(sqrt(n)) odd: f(n) <= n + ceil(sqrt(n - ceil(sqrt(n)) + 2)) + 1
    Unified,  // closed form equal to the thm5/cop3 dispatch
    Pro2,     // m = 2 (mod 6), m >= 8: f(m^2+3) <= m^2 + m + 4
    Chen,     // f(n-1) >= f(n) - 2, both directions as interval tightening
    Monotone, // f nondecreasing in n
    Pro,      // f(n) > f(n-1) implies f(2n+1-f(n)) >= n
    Counting, // edge counting against ex(N;C4)
    Witness,  // good graph on N vertices gives f(n) >= N+1
    Lemma1,   // R(C4, K1+H) <= f(r) whenever R(C4, H) <= r
    Seed,     // transcribed literature value
};

enum class Side { Lo, Hi };

std::string rule_id(Rule rule);

/// One tightening step. `inputs` carries the named facts the rule consumed,
/// enough for replay() to recompute `value` from scratch.
struct DerivationRecord {
    Rule rule = Rule::Seed;
    Side side = Side::Lo;
    int n = 0;     // star index of the endpoint produced
    int value = 0; // endpoint value produced
    std::vector<std::pair<std::string, long long>> inputs;
    std::string note; // witness name or seed citation

    std::optional<long long> input(const std::string& key) const;
};

/// Recomputes the record's endpoint from its rule and inputs; throws
/// ReplayMismatch if the inputs do not support the rule at all.
int replay(const DerivationRecord& rec);

/// Human-readable one-liner, e.g. "lo(28) >= 35 via witness[order=34] (H34)".
std::string describe(const DerivationRecord& rec);

struct BoundInterval {
    int n = 0;
    std::optional<int> lo;
    std::optional<int> hi;
    std::vector<DerivationRecord> lo_chain;
    std::vector<DerivationRecord> hi_chain;

    bool exact() const { return lo && hi && *lo == *hi; }
};

enum class SeedMode { Full, Holdout };

/// Interval table for f(n), 1 <= n <= n_max. Endpoints only ever tighten;
/// each strict improvement appends the responsible DerivationRecord.
class BoundTable {
public:
    BoundTable(int n_max, SeedMode mode);

    int n_max() const { return static_cast<int>(rows_.size()); }
    SeedMode mode() const { return mode_; }

    const BoundInterval& at(int n) const;

    /// Strict-improvement update; returns whether anything changed. Throws
    /// Inconsistent when the move would cross the opposite endpoint, with
    /// both derivation chains in the message.
    bool tighten_lo(int n, int value, DerivationRecord rec);
    bool tighten_hi(int n, int value, DerivationRecord rec);

private:
    std::vector<BoundInterval> rows_;
    SeedMode mode_;

    BoundInterval& row(int n);
};

// Closed-form upper-bound rules.

int ub_par3(int n);                      // n >= 2
std::pair<int, int> ub_square(int m);    // m >= 2; returns (n, bound)
int ub_cop3(int n);                      // n >= 2
std::optional<int> ub_thm5(int n);       // applies iff n even, ceil_sqrt(n) odd
int ub_unified(int n);                   // n >= 2
std::pair<int, int> ub_pro2(int m);      // m = 2 (mod 6), m >= 8; (n, bound)

/// Edge counting: if ex(N;C4) <= v is known and ceil(N(N-n)/2) > v, then no
/// C4-free graph on N vertices has min degree N-n, so f(n) <= N. Returns the
/// ready-to-apply record, or nothing when the rule does not fire.
std::optional<DerivationRecord> ub_counting(int n, int N, const ExTable& ex);

/// Star bound for joins: R(C4, K1+H) <= f(r) for any H with R(C4, H) <= r.
/// Resolves f(r)'s upper bound from the table, falling back to ub_unified
/// beyond the table span.
int lemma1_upper(int r, const BoundTable& table);

/// Loads the transcribed literature table (TSV: n, lo, hi, kind, source,
/// citation). Holdout mode drops every row the source text marks as its own
/// new result, so propagation has to re-derive them.
BoundTable seed_table(const std::filesystem::path& file, int n_max,
                      SeedMode mode);

/// Runs all rules to fixpoint in a fixed order: (a) closed forms, (b)
/// witnesses, (c) counting, (d) Chen, (e) monotonicity, (f) the recursion
/// from exact increases; each sweep ascends in n. Throws Inconsistent if an
/// interval collapses.
BoundTable propagate(BoundTable table,
                     const std::vector<WitnessCertificate>& witnesses,
                     const ExTable& ex);

/// TSV rows: n, lo, hi, status(exact|range|hi-only|lo-only), rules. With
/// chains, each row is followed by '#'-prefixed lines listing every
/// DerivationRecord of both endpoints.
std::string render_bounds_tsv(const BoundTable& table, bool chains = false);

/// Check of the closing observation f(n) >= n + ceil(sqrt(n)) for
/// 2 <= n <= min(82, n_max). A violation is an n whose hi endpoint falls
/// below the threshold (the table contradicts the observation); an
/// unconfirmed n is one whose lo endpoint fails to reach it (consistent but
/// not re-proved from the seeds).
struct RemarkCheck {
    std::vector<int> violations;
    std::vector<int> unconfirmed;
};

RemarkCheck remark_check(const BoundTable& table);

} // namespace c4star

#endif
