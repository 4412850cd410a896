#include "c4star/extremal.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "c4star/errors.hpp"
#include "c4star/intmath.hpp"

namespace c4star {

std::string to_string(ExKind kind) {
    switch (kind) {
        case ExKind::Exact: return "exact";
        case ExKind::Upper: return "upper";
        case ExKind::Unconfirmed: return "unconfirmed";
    }
    return "?";
}

std::string to_string(ExProvenance prov) {
    switch (prov) {
        case ExProvenance::PaperCited: return "paper";
        case ExProvenance::Computed: return "computed";
        case ExProvenance::Analytic: return "analytic";
    }
    return "?";
}

namespace {

ExKind parse_kind(const std::string& s) {
    if (s == "exact") return ExKind::Exact;
    if (s == "upper") return ExKind::Upper;
    if (s == "unconfirmed") return ExKind::Unconfirmed;
    fail("BadTableRow", "unknown ex kind '" + s + "'");
}

ExProvenance parse_provenance(const std::string& s) {
    if (s == "paper" || s == "paper-cited") return ExProvenance::PaperCited;
    if (s == "computed") return ExProvenance::Computed;
    if (s == "analytic") return ExProvenance::Analytic;
    fail("BadTableRow", "unknown ex provenance '" + s + "'");
}

// Precedence when two entries land on the same order.
int rank(ExKind k) {
    switch (k) {
        case ExKind::Exact: return 2;
        case ExKind::Upper: return 1;
        case ExKind::Unconfirmed: return 0;
    }
    return -1;
}

} // namespace

ExTable ExTable::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) fail("MissingFile", "cannot open ex table " + file.string());
    ExTable table;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        int q = 0, value = 0;
        std::string kind, prov;
        if (!(fields >> q >> value >> kind >> prov)) {
            fail("BadTableRow", file.string() + ":" + std::to_string(lineno) +
                                    ": expected q, value, kind, provenance");
        }
        table.insert({q, value, parse_kind(kind), parse_provenance(prov), {}});
    }
    return table;
}

void ExTable::insert(ExEntry entry) {
    if (entry.q < 1) {
        fail("OrderOutOfRange",
             "ex entry needs q >= 1, got " + std::to_string(entry.q));
    }
    if (entry.value < 0) {
        fail("BadTableRow", "negative edge count for q = " +
                                std::to_string(entry.q));
    }
    auto it = entries_.find(entry.q);
    if (it == entries_.end()) {
        entries_.emplace(entry.q, std::move(entry));
        return;
    }
    ExEntry& cur = it->second;
    const auto conflict = [&](const ExEntry& exact, const ExEntry& upper) {
        if (upper.value < exact.value) {
            fail("ExConflict", "q = " + std::to_string(entry.q) + ": upper " +
                                   std::to_string(upper.value) +
                                   " below exact " +
                                   std::to_string(exact.value));
        }
    };
    if (cur.kind == ExKind::Exact && entry.kind == ExKind::Exact) {
        if (cur.value != entry.value) {
            fail("ExConflict", "q = " + std::to_string(entry.q) +
                                   ": exact values disagree, " +
                                   std::to_string(cur.value) + " vs " +
                                   std::to_string(entry.value));
        }
        if (!cur.attaining && entry.attaining) cur = std::move(entry);
        return;
    }
    if (cur.kind == ExKind::Exact) {
        if (entry.kind == ExKind::Upper) conflict(cur, entry);
        return; // keep the exact entry
    }
    if (entry.kind == ExKind::Exact) {
        if (cur.kind == ExKind::Upper) conflict(entry, cur);
        cur = std::move(entry);
        return;
    }
    if (rank(entry.kind) > rank(cur.kind)) {
        cur = std::move(entry);
        return;
    }
    if (rank(entry.kind) < rank(cur.kind)) return;
    // Same non-exact kind: keep the tighter upper bound, or the strongest
    // unconfirmed evidence.
    const bool better = cur.kind == ExKind::Upper ? entry.value < cur.value
                                                  : entry.value > cur.value;
    if (better) cur = std::move(entry);
}

std::optional<ExEntry> ExTable::lookup(int q) const {
    auto it = entries_.find(q);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

std::optional<ExEntry> ExTable::lookup_bound(int q) const {
    auto e = lookup(q);
    if (e && e->kind != ExKind::Unconfirmed) return e;
    return std::nullopt;
}

long long reiman_upper(int q) {
    if (q < 1) fail("OrderOutOfRange", "reiman_upper needs q >= 1");
    if (q > 1000000) {
        fail("OrderOutOfRange",
             "reiman_upper overflows 64-bit arithmetic beyond q = 10^6");
    }
    // floor(q(1+sqrt(4q-3))/4) = floor((q + isqrt(q^2(4q-3))) / 4)
    const auto qq = static_cast<std::uint64_t>(q);
    const std::uint64_t radicand = qq * qq * (4 * qq - 3);
    return static_cast<long long>((qq + isqrt_u64(radicand)) / 4);
}

std::optional<ExEntry> ex_known(int q, const ExTable& table) {
    if (q < 1) fail("OrderOutOfRange", "ex is defined for q >= 1, got " +
                                           std::to_string(q));
    return table.lookup(q);
}

namespace {

struct BnB {
    int q;
    // Pairs grouped vertex by vertex: all of (.,v) before any of (.,v+1).
    // Every decided prefix {0..v} is then an induced C4-free subgraph, so
    // its final edge count obeys reiman_upper(v+1); telescoping these caps
    // over the remaining groups gives the pruning bound.
    std::vector<std::pair<int, int>> pairs;
    std::vector<long long> rei; // rei[k] = reiman_upper(k)
    Graph current;
    Graph best_graph;
    int best;
    std::chrono::steady_clock::time_point deadline;
    bool out_of_time = false;
    long long nodes = 0;

    explicit BnB(int order)
        : q(order), current(order), best_graph(order), best(-1) {
        for (int v = 1; v < q; ++v)
            for (int u = 0; u < v; ++u) pairs.emplace_back(u, v);
        rei.resize(static_cast<std::size_t>(q) + 1);
        for (int k = 1; k <= q; ++k) rei[static_cast<std::size_t>(k)] =
            reiman_upper(k);
    }

    void leaf(int edges) {
        if (edges > best) {
            best = edges;
            best_graph = current;
        }
    }

    // first_row_open: while true, pairs (0, j) may still take an edge; once
    // one is skipped the rest of row 0 is forced off, so vertex 0's
    // neighborhood is a prefix 1..d. Sound because relabelling 0's
    // neighbours first maps any graph to one of this shape.
    void run(std::size_t idx, int edges, bool first_row_open) {
        if (out_of_time) return;
        if ((++nodes & 1023) == 0 &&
            std::chrono::steady_clock::now() > deadline) {
            out_of_time = true;
            return;
        }
        if (idx == pairs.size()) {
            leaf(edges);
            return;
        }
        const auto [u, v] = pairs[idx];
        // Group v ends after its v pairs; then {0..v} is complete.
        const auto end_v = static_cast<std::size_t>(v) * (v + 1) / 2;
        long long capacity =
            std::min(static_cast<long long>(edges) +
                         static_cast<long long>(end_v - idx),
                     rei[static_cast<std::size_t>(v) + 1]);
        for (int w = v + 1; w < q; ++w) {
            capacity = std::min(capacity + w,
                                rei[static_cast<std::size_t>(w) + 1]);
        }
        if (capacity <= best) return;

        const bool row0 = (u == 0);
        if ((!row0 || first_row_open) && c4_safe_to_add(current, u, v)) {
            current.add_edge(u, v);
            run(idx + 1, edges + 1, first_row_open);
            current.remove_edge(u, v);
        }
        run(idx + 1, edges, first_row_open && !row0);
    }
};

// Lexicographic greedy fill; gives an instant feasible incumbent so that a
// zero budget still reports meaningful best-found evidence.
Graph greedy_c4_free(int q) {
    Graph g(q);
    for (int u = 0; u < q; ++u)
        for (int v = u + 1; v < q; ++v)
            if (c4_safe_to_add(g, u, v)) g.add_edge(u, v);
    return g;
}

} // namespace

ExEntry ex_exact(int q, std::chrono::milliseconds budget, ExTable* table) {
    if (q < 1) fail("OrderOutOfRange", "ex is defined for q >= 1, got " +
                                           std::to_string(q));
    if (q > Graph::kMaxOrder) {
        fail("OrderOutOfRange", "ex_exact supports q <= 64");
    }

    BnB bnb(q);
    bnb.deadline = std::chrono::steady_clock::now() + budget;
    const Graph incumbent = greedy_c4_free(q);
    bnb.best = incumbent.edge_count();
    bnb.best_graph = incumbent;
    bnb.run(0, 0, true);

    ExEntry entry;
    entry.q = q;
    entry.value = bnb.best;
    entry.kind = bnb.out_of_time ? ExKind::Unconfirmed : ExKind::Exact;
    entry.provenance = ExProvenance::Computed;
    entry.attaining = bnb.best_graph;
    if (table) table->insert(entry);
    return entry;
}

} // namespace c4star
