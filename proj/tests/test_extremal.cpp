#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <bit>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "c4star/extremal.hpp"
#include "c4star/graph.hpp"

using namespace c4star;
using namespace std::chrono_literals;
namespace fs = std::filesystem;

namespace {

std::string code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return "";
}

// Independent oracle: walk every labeled graph on q vertices as an edge
// bitmask and keep the largest C4-free edge count. No pruning beyond an
// early exit in the C4 test itself.
int ex_oracle(int q) {
    std::vector<std::pair<int, int>> pairs;
    for (int v = 1; v < q; ++v)
        for (int u = 0; u < v; ++u) pairs.emplace_back(u, v);
    const int m = static_cast<int>(pairs.size());
    int best = 0;
    std::vector<std::uint64_t> row(static_cast<std::size_t>(q));
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        for (int v = 0; v < q; ++v) row[static_cast<std::size_t>(v)] = 0;
        int edges = 0;
        for (std::uint64_t bits = mask; bits; bits &= bits - 1) {
            const int i = std::countr_zero(bits);
            const auto [u, v] = pairs[static_cast<std::size_t>(i)];
            row[static_cast<std::size_t>(u)] |= std::uint64_t{1} << v;
            row[static_cast<std::size_t>(v)] |= std::uint64_t{1} << u;
            ++edges;
        }
        if (edges <= best) continue;
        bool has_c4 = false;
        for (int v = 1; v < q && !has_c4; ++v)
            for (int u = 0; u < v; ++u)
                if (std::popcount(row[static_cast<std::size_t>(u)] &
                                  row[static_cast<std::size_t>(v)]) >= 2) {
                    has_c4 = true;
                    break;
                }
        if (!has_c4) best = edges;
    }
    return best;
}

} // namespace

TEST_CASE("reiman_upper reference values and domain") {
    CHECK(reiman_upper(1) == 0);
    CHECK(reiman_upper(4) == 4);
    CHECK(reiman_upper(33) == 101);
    CHECK(reiman_upper(1000000) > 0);
    CHECK(code_of([] { reiman_upper(0); }) == "OrderOutOfRange");
    CHECK(code_of([] { reiman_upper(1000001); }) == "OrderOutOfRange");
}

TEST_CASE("ex_exact agrees with the unpruned enumeration oracle for q <= 7") {
    // Known sequence prefix 0, 1, 3, 4, 6, 7, 9 for cross-checking.
    const int known[] = {0, 0, 1, 3, 4, 6, 7, 9};
    for (int q = 1; q <= 7; ++q) {
        const ExEntry e = ex_exact(q, 30s);
        const int oracle = ex_oracle(q);
        CAPTURE(q);
        CHECK(e.kind == ExKind::Exact);
        CHECK(e.provenance == ExProvenance::Computed);
        CHECK(e.value == oracle);
        CHECK(e.value == known[q]);
        REQUIRE(e.attaining.has_value());
        CHECK(e.attaining->order() == q);
        CHECK(e.attaining->edge_count() == e.value);
        CHECK_FALSE(contains_c4(*e.attaining));
    }
}

TEST_CASE("ex_exact spot values") {
    CHECK(ex_exact(4, 10s).value == 4);
    CHECK(ex_exact(5, 10s).value == 6);
}

TEST_CASE("computed values satisfy the standard inequalities") {
    std::vector<int> ex(10);
    for (int q = 1; q <= 9; ++q) {
        const ExEntry e = ex_exact(q, 60s);
        REQUIRE(e.kind == ExKind::Exact);
        ex[static_cast<std::size_t>(q)] = e.value;
        CHECK(static_cast<long long>(e.value) <= reiman_upper(q));
    }
    for (int q = 1; q <= 8; ++q) {
        CHECK(ex[static_cast<std::size_t>(q)] <=
              ex[static_cast<std::size_t>(q) + 1]);
        CHECK(ex[static_cast<std::size_t>(q) + 1] <=
              ex[static_cast<std::size_t>(q)] + q);
    }
}

TEST_CASE("a zero budget yields unconfirmed evidence, not a bound") {
    ExTable table;
    const ExEntry e = ex_exact(9, 0ms, &table);
    CHECK(e.kind == ExKind::Unconfirmed);
    CHECK(e.q == 9);
    // Whatever was found is still a C4-free graph, so it is a valid lower
    // witness for ex(9).
    if (e.attaining) {
        CHECK_FALSE(contains_c4(*e.attaining));
        CHECK(e.attaining->edge_count() == e.value);
    }
    // The cached unconfirmed entry must be invisible to bound consumers.
    REQUIRE(table.lookup(9).has_value());
    CHECK_FALSE(table.lookup_bound(9).has_value());
}

TEST_CASE("ex_exact caches exact results into the table") {
    ExTable table;
    const ExEntry e = ex_exact(6, 10s, &table);
    CHECK(e.kind == ExKind::Exact);
    const auto cached = table.lookup_bound(6);
    REQUIRE(cached.has_value());
    CHECK(cached->value == 7);
    CHECK(cached->kind == ExKind::Exact);
}

TEST_CASE("insert precedence and conflicts") {
    ExTable t;
    t.insert({5, 7, ExKind::Unconfirmed, ExProvenance::Computed, {}});
    CHECK_FALSE(t.lookup_bound(5).has_value());

    t.insert({5, 8, ExKind::Upper, ExProvenance::Analytic, {}});
    CHECK(t.lookup(5)->kind == ExKind::Upper);
    CHECK(t.lookup(5)->value == 8);

    // A tighter upper bound replaces a looser one; a looser one is ignored.
    t.insert({5, 7, ExKind::Upper, ExProvenance::Analytic, {}});
    CHECK(t.lookup(5)->value == 7);
    t.insert({5, 9, ExKind::Upper, ExProvenance::Analytic, {}});
    CHECK(t.lookup(5)->value == 7);

    t.insert({5, 6, ExKind::Exact, ExProvenance::Computed, {}});
    CHECK(t.lookup(5)->kind == ExKind::Exact);
    CHECK(t.lookup(5)->value == 6);

    // Exact survives later unconfirmed/upper noise.
    t.insert({5, 10, ExKind::Unconfirmed, ExProvenance::Computed, {}});
    t.insert({5, 8, ExKind::Upper, ExProvenance::Analytic, {}});
    CHECK(t.lookup(5)->kind == ExKind::Exact);
    CHECK(t.lookup(5)->value == 6);

    CHECK(code_of([&] {
              t.insert({5, 5, ExKind::Upper, ExProvenance::Analytic, {}});
          }) == "ExConflict");
    CHECK(code_of([&] {
              t.insert({5, 7, ExKind::Exact, ExProvenance::Computed, {}});
          }) == "ExConflict");
    CHECK(code_of([&] {
              ExTable t2;
              t2.insert({5, 7, ExKind::Upper, ExProvenance::Analytic, {}});
              t2.insert({5, 8, ExKind::Exact, ExProvenance::Computed, {}});
          }) == "ExConflict");
    CHECK(code_of([&] {
              t.insert({0, 1, ExKind::Exact, ExProvenance::Computed, {}});
          }) == "OrderOutOfRange");
}

TEST_CASE("the shipped table carries the cited ex(33) entry") {
    const ExTable t = ExTable::load("data/ex_c4.tsv");
    const auto e = t.lookup_bound(33);
    REQUIRE(e.has_value());
    CHECK(e->value == 96);
    CHECK(e->kind == ExKind::Exact);
    CHECK(e->provenance == ExProvenance::PaperCited);
}

TEST_CASE("table loading rejects junk") {
    CHECK(code_of([] { ExTable::load("data/no_such_table.tsv"); }) ==
          "MissingFile");

    const fs::path tmp =
        fs::temp_directory_path() /
        ("c4star-ex-" + std::to_string(std::random_device{}()) + ".tsv");
    std::ofstream(tmp) << "# comment\n33\t96\texact\tpaper\nnot a row\n";
    CHECK(code_of([&] { ExTable::load(tmp); }) == "BadTableRow");
    std::ofstream(tmp) << "33\t96\tmaybe\tpaper\n";
    CHECK(code_of([&] { ExTable::load(tmp); }) == "BadTableRow");
    std::ofstream(tmp) << "33\t96\texact\thearsay\n";
    CHECK(code_of([&] { ExTable::load(tmp); }) == "BadTableRow");
    fs::remove(tmp);
}

TEST_CASE("ex_known guards its domain") {
    ExTable t;
    CHECK(code_of([&] { ex_known(0, t); }) == "OrderOutOfRange");
    CHECK_FALSE(ex_known(5, t).has_value());
    t.insert({5, 6, ExKind::Exact, ExProvenance::Computed, {}});
    CHECK(ex_known(5, t)->value == 6);
}

TEST_CASE("kind and provenance names") {
    CHECK(to_string(ExKind::Exact) == "exact");
    CHECK(to_string(ExKind::Upper) == "upper");
    CHECK(to_string(ExKind::Unconfirmed) == "unconfirmed");
    CHECK(to_string(ExProvenance::PaperCited) == "paper");
    CHECK(to_string(ExProvenance::Computed) == "computed");
    CHECK(to_string(ExProvenance::Analytic) == "analytic");
}
