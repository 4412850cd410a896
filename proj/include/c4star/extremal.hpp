#ifndef C4STAR_EXTREMAL_HPP
#define C4STAR_EXTREMAL_HPP

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "c4star/graph.hpp"

namespace c4star {

/// Exact: the true value of ex(q;C4). Upper: a sound upper bound.
/// Unconfirmed: best edge count found by an interrupted computation; it is
/// evidence only (a lower bound on ex) and must never feed the counting rule.
enum class ExKind { Exact, Upper, Unconfirmed };

enum class ExProvenance { PaperCited, Computed, Analytic };

std::string to_string(ExKind kind);
std::string to_string(ExProvenance prov);

struct ExEntry {
    int q = 0;
    int value = 0;
    ExKind kind = ExKind::Upper;
    ExProvenance provenance = ExProvenance::Analytic;
    std::optional<Graph> attaining; // required for computed exact entries
};

/// One entry per order. Exact beats Upper beats Unconfirmed; a conflicting
/// pair (an upper bound below an exact value) is rejected as ExConflict.
class ExTable {
public:
    ExTable() = default;

    /// Reads a TSV with columns q, value, kind, provenance.
    static ExTable load(const std::filesystem::path& file);

    void insert(ExEntry entry);
    std::optional<ExEntry> lookup(int q) const;
    /// Like lookup but only returns entries usable as an upper bound
    /// (kind exact or upper), never unconfirmed ones.
    std::optional<ExEntry> lookup_bound(int q) const;
    std::size_t size() const { return entries_.size(); }
    const std::map<int, ExEntry>& entries() const { return entries_; }

private:
    std::map<int, ExEntry> entries_;
};

/// Classical bound ex(q;C4) <= floor(q(1+sqrt(4q-3))/4), evaluated in exact
/// integer arithmetic. Used for pruning and sanity checks only.
long long reiman_upper(int q);

/// Table lookup with the q >= 1 precondition enforced.
std::optional<ExEntry> ex_known(int q, const ExTable& table);

/// Exact ex(q;C4) by branch-and-bound over edge decisions in lexicographic
/// pair order, with the first vertex's neighborhood fixed to a prefix and
/// pruning by remaining capacity, the Reiman bound, and codegree safety.
/// On success the entry is exact, carries an attaining graph, and is cached
/// into `table` when given. If the budget runs out the best graph found so
/// far is returned as an unconfirmed entry.
ExEntry ex_exact(int q, std::chrono::milliseconds budget,
                 ExTable* table = nullptr);

} // namespace c4star

#endif
