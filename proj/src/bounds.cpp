#include "c4star/bounds.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "c4star/errors.hpp"
#include "c4star/intmath.hpp"

namespace c4star {

std::string rule_id(Rule rule) {
    switch (rule) {
        case Rule::Par3: return "par3";
        case Rule::Square: return "square";
        case Rule::Cop3: return "cop3";
        case Rule::Thm5: return "thm5";
        case Rule::Unified: return "unified";
        case Rule::Pro2: return "pro2";
        case Rule::Chen: return "chen";
        case Rule::Monotone: return "monotone";
        case Rule::Pro: return "pro";
        case Rule::Counting: return "counting";
        case Rule::Witness: return "witness";
        case Rule::Lemma1: return "lemma1";
        case Rule::Seed: return "seed";
    }
    return "?";
}

std::optional<long long> DerivationRecord::input(const std::string& key) const {
    for (const auto& [k, v] : inputs)
        if (k == key) return v;
    return std::nullopt;
}

namespace {

long long need_input(const DerivationRecord& rec, const std::string& key) {
    if (auto v = rec.input(key)) return *v;
    fail("ReplayMismatch", "record for " + rule_id(rec.rule) +
                               " lacks input '" + key + "'");
}

[[noreturn]] void replay_mismatch(const DerivationRecord& rec,
                                  const std::string& why) {
    fail("ReplayMismatch", rule_id(rec.rule) + " record at n = " +
                               std::to_string(rec.n) + ": " + why);
}

} // namespace

int replay(const DerivationRecord& rec) {
    switch (rec.rule) {
        case Rule::Par3: return ub_par3(rec.n);
        case Rule::Cop3: return ub_cop3(rec.n);
        case Rule::Unified: return ub_unified(rec.n);
        case Rule::Thm5: {
            auto b = ub_thm5(rec.n);
            if (!b) replay_mismatch(rec, "rule does not apply");
            return *b;
        }
        case Rule::Square: {
            const auto m = static_cast<int>(need_input(rec, "m"));
            const auto [n, bound] = ub_square(m);
            if (n != rec.n) replay_mismatch(rec, "m does not match n");
            return bound;
        }
        case Rule::Pro2: {
            const auto m = static_cast<int>(need_input(rec, "m"));
            const auto [n, bound] = ub_pro2(m);
            if (n != rec.n) replay_mismatch(rec, "m does not match n");
            return bound;
        }
        case Rule::Chen: {
            const auto src = need_input(rec, "src_n");
            if (rec.side == Side::Lo) {
                if (src != rec.n + 1) replay_mismatch(rec, "bad source index");
                return static_cast<int>(need_input(rec, "lo") - 2);
            }
            if (src != rec.n - 1) replay_mismatch(rec, "bad source index");
            return static_cast<int>(need_input(rec, "hi") + 2);
        }
        case Rule::Monotone: {
            const auto src = need_input(rec, "src_n");
            if (rec.side == Side::Lo) {
                if (src != rec.n - 1) replay_mismatch(rec, "bad source index");
                return static_cast<int>(need_input(rec, "lo"));
            }
            if (src != rec.n + 1) replay_mismatch(rec, "bad source index");
            return static_cast<int>(need_input(rec, "hi"));
        }
        case Rule::Pro: {
            const auto m = need_input(rec, "src_n");
            const auto f = need_input(rec, "f");
            if (2 * m + 1 - f != rec.n)
                replay_mismatch(rec, "recursion target does not match");
            return static_cast<int>(m);
        }
        case Rule::Counting: {
            const auto N = need_input(rec, "N");
            const auto ex = need_input(rec, "ex");
            const long long need = (N * (N - rec.n) + 1) / 2;
            if (need <= ex)
                replay_mismatch(rec, "edge count does not exceed ex");
            return static_cast<int>(N);
        }
        case Rule::Witness:
            return static_cast<int>(need_input(rec, "order") + 1);
        case Rule::Lemma1: return static_cast<int>(need_input(rec, "hi_r"));
        case Rule::Seed: return rec.value;
    }
    replay_mismatch(rec, "unknown rule");
}

std::string describe(const DerivationRecord& rec) {
    std::string s = (rec.side == Side::Lo ? "lo(" : "hi(");
    s += std::to_string(rec.n);
    s += rec.side == Side::Lo ? ") >= " : ") <= ";
    s += std::to_string(rec.value);
    s += " via ";
    s += rule_id(rec.rule);
    if (!rec.inputs.empty()) {
        s += "[";
        bool first = true;
        for (const auto& [k, v] : rec.inputs) {
            if (!first) s += ",";
            first = false;
            s += k + "=" + std::to_string(v);
        }
        s += "]";
    }
    if (!rec.note.empty()) s += " (" + rec.note + ")";
    return s;
}

BoundTable::BoundTable(int n_max, SeedMode mode) : mode_(mode) {
    if (n_max < 1) {
        fail("DomainTooSmall",
             "bound table needs n_max >= 1, got " + std::to_string(n_max));
    }
    rows_.resize(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) rows_[static_cast<std::size_t>(n - 1)].n = n;
}

const BoundInterval& BoundTable::at(int n) const {
    if (n < 1 || n > n_max()) {
        fail("OutOfRange", "no row for n = " + std::to_string(n) +
                               " in a table up to " + std::to_string(n_max()));
    }
    return rows_[static_cast<std::size_t>(n - 1)];
}

BoundInterval& BoundTable::row(int n) {
    return const_cast<BoundInterval&>(at(n));
}

namespace {

std::string chain_text(const char* label,
                       const std::vector<DerivationRecord>& chain,
                       const DerivationRecord* extra = nullptr) {
    std::string s = std::string("  ") + label + " chain:\n";
    for (const auto& rec : chain) s += "    " + describe(rec) + "\n";
    if (extra) s += "    " + describe(*extra) + " <- rejected\n";
    return s;
}

} // namespace

bool BoundTable::tighten_lo(int n, int value, DerivationRecord rec) {
    BoundInterval& r = row(n);
    if (r.lo && *r.lo >= value) return false;
    rec.side = Side::Lo;
    rec.n = n;
    rec.value = value;
    if (r.hi && value > *r.hi) {
        fail("Inconsistent",
             "n = " + std::to_string(n) + ": lower bound " +
                 std::to_string(value) + " crosses upper bound " +
                 std::to_string(*r.hi) + "\n" +
                 chain_text("lo", r.lo_chain, &rec) +
                 chain_text("hi", r.hi_chain));
    }
    r.lo = value;
    r.lo_chain.push_back(std::move(rec));
    return true;
}

bool BoundTable::tighten_hi(int n, int value, DerivationRecord rec) {
    BoundInterval& r = row(n);
    if (r.hi && *r.hi <= value) return false;
    rec.side = Side::Hi;
    rec.n = n;
    rec.value = value;
    if (r.lo && value < *r.lo) {
        fail("Inconsistent",
             "n = " + std::to_string(n) + ": upper bound " +
                 std::to_string(value) + " crosses lower bound " +
                 std::to_string(*r.lo) + "\n" +
                 chain_text("lo", r.lo_chain) +
                 chain_text("hi", r.hi_chain, &rec));
    }
    r.hi = value;
    r.hi_chain.push_back(std::move(rec));
    return true;
}

int ub_par3(int n) {
    if (n < 2) fail("DomainTooSmall", "ub_par3 needs n >= 2");
    return n + static_cast<int>(ceil_sqrt(n)) + 1;
}

std::pair<int, int> ub_square(int m) {
    if (m < 2) fail("DomainTooSmall", "ub_square needs m >= 2");
    return {m * m + 1, m * m + m + 2};
}

int ub_cop3(int n) {
    if (n < 2) fail("DomainTooSmall", "ub_cop3 needs n >= 2");
    return n + static_cast<int>(ceil_sqrt(n - 1)) + 1;
}

std::optional<int> ub_thm5(int n) {
    if (n < 2 || n % 2 != 0) return std::nullopt;
    const auto s = ceil_sqrt(n);
    if (s % 2 == 0) return std::nullopt;
    return n + static_cast<int>(ceil_sqrt(n - s + 2)) + 1;
}

int ub_unified(int n) {
    if (n < 2) fail("DomainTooSmall", "ub_unified needs n >= 2");
    const auto s = ceil_sqrt(n);
    // (1/4)(1+(-1)^n)(1-(-1)^s)(s-3) is s-3 for even n with odd s, else 0.
    const long long corr = (n % 2 == 0 && s % 2 == 1) ? s - 3 : 0;
    return n + static_cast<int>(ceil_sqrt(n - corr - 1)) + 1;
}

std::pair<int, int> ub_pro2(int m) {
    if (m < 8 || m % 6 != 2) {
        fail("PreconditionViolated",
             "ub_pro2 needs m = 2 (mod 6) and m >= 8, got " +
                 std::to_string(m));
    }
    return {m * m + 3, m * m + m + 4};
}

std::optional<DerivationRecord> ub_counting(int n, int N, const ExTable& ex) {
    if (n < 1 || N <= n) {
        fail("PreconditionViolated", "ub_counting needs N > n >= 1");
    }
    const auto entry = ex.lookup_bound(N);
    if (!entry) return std::nullopt;
    // A good graph on N vertices has min degree >= N-n, so at least
    // ceil(N(N-n)/2) edges; more than ex(N;C4) edges force a C4.
    const long long nn = N;
    const long long need = (nn * (nn - n) + 1) / 2;
    if (need <= entry->value) return std::nullopt;
    DerivationRecord rec;
    rec.rule = Rule::Counting;
    rec.side = Side::Hi;
    rec.n = n;
    rec.value = N;
    rec.inputs = {{"N", N}, {"ex", entry->value}};
    rec.note = to_string(entry->kind) + " " + to_string(entry->provenance);
    return rec;
}

int lemma1_upper(int r, const BoundTable& table) {
    if (r < 1) fail("OutOfRange", "lemma1_upper needs r >= 1");
    if (r <= table.n_max()) {
        if (const auto hi = table.at(r).hi) return *hi;
    }
    if (r >= 2) return ub_unified(r);
    fail("OutOfRange", "no upper bound for f(1) outside the seeded table");
}

BoundTable seed_table(const std::filesystem::path& file, int n_max,
                      SeedMode mode) {
    std::ifstream in(file);
    if (!in) {
        fail("SeedFileMissing", "cannot open seed table " + file.string());
    }
    BoundTable table(n_max, mode);
    std::string line;
    int lineno = 0;
    const auto bad = [&](const std::string& why) -> void {
        fail("SeedParseError",
             file.string() + ":" + std::to_string(lineno) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        int n = 0;
        std::string lo_s, hi_s, kind, source, citation;
        if (!(fields >> n >> lo_s >> hi_s >> kind >> source >> citation)) {
            bad("expected n, lo, hi, kind, source, citation");
        }
        if (n < 1) bad("star index must be positive");
        const auto cell = [&](const std::string& s) -> std::optional<int> {
            if (s == "-") return std::nullopt;
            int v = 0;
            const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
            if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
                bad("bad endpoint '" + s + "'");
            }
            return v;
        };
        const auto lo = cell(lo_s);
        const auto hi = cell(hi_s);
        if (kind == "exact") {
            if (!lo || !hi || *lo != *hi) bad("exact row needs lo = hi");
        } else if (kind == "lo") {
            if (!lo || hi) bad("lo row needs a lo cell only");
        } else if (kind == "hi") {
            if (!hi || lo) bad("hi row needs a hi cell only");
        } else if (kind == "range") {
            if (!lo || !hi) bad("range row needs both cells");
        } else {
            bad("unknown kind '" + kind + "'");
        }
        if (lo && hi && *lo > *hi) {
            fail("SeedInconsistent", file.string() + ":" +
                                         std::to_string(lineno) + ": lo " +
                                         std::to_string(*lo) + " > hi " +
                                         std::to_string(*hi));
        }
        if (n > n_max) continue;
        if (mode == SeedMode::Holdout && source == "paper-new") continue;

        DerivationRecord rec;
        rec.rule = Rule::Seed;
        rec.note = citation + " [" + source + "]";
        try {
            if (lo) table.tighten_lo(n, *lo, rec);
            if (hi) table.tighten_hi(n, *hi, rec);
        } catch (const Error& e) {
            if (e.code() == "Inconsistent") {
                fail("SeedInconsistent", e.what());
            }
            throw;
        }
    }
    return table;
}

namespace {

DerivationRecord make_rec(Rule rule, Side side, int n, int value,
                          std::vector<std::pair<std::string, long long>>
                              inputs = {},
                          std::string note = {}) {
    DerivationRecord rec;
    rec.rule = rule;
    rec.side = side;
    rec.n = n;
    rec.value = value;
    rec.inputs = std::move(inputs);
    rec.note = std::move(note);
    return rec;
}

// m with m*m = x, if x is a perfect square.
std::optional<int> exact_sqrt(int x) {
    if (x < 0) return std::nullopt;
    const auto s = isqrt_u64(static_cast<std::uint64_t>(x));
    if (s * s != static_cast<std::uint64_t>(x)) return std::nullopt;
    return static_cast<int>(s);
}

} // namespace

BoundTable propagate(BoundTable table,
                     const std::vector<WitnessCertificate>& witnesses,
                     const ExTable& ex) {
    const int n_max = table.n_max();
    bool changed = true;
    while (changed) {
        changed = false;

        // (a) closed-form upper bounds
        for (int n = 2; n <= n_max; ++n) {
            const int p = ub_par3(n);
            changed = table.tighten_hi(n, p, make_rec(Rule::Par3, Side::Hi,
                                                      n, p)) ||
                      changed;
            if (const auto m = exact_sqrt(n - 1); m && *m >= 2) {
                const auto [sq_n, sq] = ub_square(*m);
                changed = table.tighten_hi(sq_n, sq,
                                           make_rec(Rule::Square, Side::Hi,
                                                    sq_n, sq, {{"m", *m}})) ||
                          changed;
            }
            const int c = ub_cop3(n);
            changed = table.tighten_hi(n, c, make_rec(Rule::Cop3, Side::Hi,
                                                      n, c)) ||
                      changed;
            if (const auto t5 = ub_thm5(n)) {
                changed = table.tighten_hi(n, *t5,
                                           make_rec(Rule::Thm5, Side::Hi, n,
                                                    *t5)) ||
                          changed;
            }
            if (const auto m = exact_sqrt(n - 3);
                m && *m >= 8 && *m % 6 == 2) {
                const auto [p2_n, p2] = ub_pro2(*m);
                changed = table.tighten_hi(p2_n, p2,
                                           make_rec(Rule::Pro2, Side::Hi,
                                                    p2_n, p2, {{"m", *m}})) ||
                          changed;
            }
        }

        // (b) witness lower bounds
        for (const auto& w : witnesses) {
            if (!w.valid || w.star_index < 1 || w.star_index > n_max) continue;
            changed = table.tighten_lo(w.star_index, w.implied_lower_bound,
                                       make_rec(Rule::Witness, Side::Lo,
                                                w.star_index,
                                                w.implied_lower_bound,
                                                {{"order", w.order}},
                                                w.name)) ||
                      changed;
        }

        // (c) counting rule against every usable ex entry
        for (const auto& [N, entry] : ex.entries()) {
            if (entry.kind == ExKind::Unconfirmed) continue;
            for (int n = 1; n < N && n <= n_max; ++n) {
                if (auto rec = ub_counting(n, N, ex)) {
                    changed = table.tighten_hi(n, rec->value, *rec) || changed;
                }
            }
        }

        // (d) Chen's step: f(n-1) >= f(n) - 2, equivalently
        // hi(n) <= hi(n-1) + 2
        for (int n = 2; n <= n_max; ++n) {
            if (const auto lo = table.at(n).lo) {
                changed = table.tighten_lo(n - 1, *lo - 2,
                                           make_rec(Rule::Chen, Side::Lo,
                                                    n - 1, *lo - 2,
                                                    {{"src_n", n},
                                                     {"lo", *lo}})) ||
                          changed;
            }
            if (const auto hi = table.at(n - 1).hi) {
                changed = table.tighten_hi(n, *hi + 2,
                                           make_rec(Rule::Chen, Side::Hi, n,
                                                    *hi + 2,
                                                    {{"src_n", n - 1},
                                                     {"hi", *hi}})) ||
                          changed;
            }
        }

        // (e) monotonicity of f
        for (int n = 1; n < n_max; ++n) {
            if (const auto lo = table.at(n).lo) {
                changed = table.tighten_lo(n + 1, *lo,
                                           make_rec(Rule::Monotone, Side::Lo,
                                                    n + 1, *lo,
                                                    {{"src_n", n},
                                                     {"lo", *lo}})) ||
                          changed;
            }
            if (const auto hi = table.at(n + 1).hi) {
                changed = table.tighten_hi(n, *hi,
                                           make_rec(Rule::Monotone, Side::Hi,
                                                    n, *hi,
                                                    {{"src_n", n + 1},
                                                     {"hi", *hi}})) ||
                          changed;
            }
        }

        // (f) recursion from certified exact strict increases:
        // f(n) > f(n-1) gives f(2n+1-f(n)) >= n
        for (int n = 2; n <= n_max; ++n) {
            const BoundInterval& cur = table.at(n);
            const BoundInterval& prev = table.at(n - 1);
            if (!cur.exact() || !prev.hi || *prev.hi >= *cur.lo) continue;
            const int f = *cur.lo;
            const int target = 2 * n + 1 - f;
            if (target < 1 || target > n_max) continue;
            changed = table.tighten_lo(target, n,
                                       make_rec(Rule::Pro, Side::Lo, target,
                                                n,
                                                {{"src_n", n}, {"f", f}})) ||
                      changed;
        }
    }
    return table;
}

std::string render_bounds_tsv(const BoundTable& table, bool chains) {
    std::ostringstream out;
    out << "# f(n) = R(C4, K_{1,n}) interval table, mode: "
        << (table.mode() == SeedMode::Full ? "full" : "holdout") << "\n";
    out << "# n\tlo\thi\tstatus\trules\n";
    for (int n = 1; n <= table.n_max(); ++n) {
        const BoundInterval& r = table.at(n);
        out << n << '\t';
        if (r.lo) out << *r.lo; else out << '-';
        out << '\t';
        if (r.hi) out << *r.hi; else out << '-';
        out << '\t';
        if (r.lo && r.hi) out << (*r.lo == *r.hi ? "exact" : "range");
        else if (r.hi) out << "hi-only";
        else if (r.lo) out << "lo-only";
        else out << "open";
        out << '\t';
        std::string rules;
        if (!r.lo_chain.empty())
            rules += "lo=" + rule_id(r.lo_chain.back().rule);
        if (!r.hi_chain.empty()) {
            if (!rules.empty()) rules += ",";
            rules += "hi=" + rule_id(r.hi_chain.back().rule);
        }
        out << (rules.empty() ? "-" : rules) << '\n';
        if (chains) {
            for (const auto& rec : r.lo_chain)
                out << "#   " << describe(rec) << '\n';
            for (const auto& rec : r.hi_chain)
                out << "#   " << describe(rec) << '\n';
        }
    }
    return out.str();
}

RemarkCheck remark_check(const BoundTable& table) {
    RemarkCheck check;
    const int top = std::min(82, table.n_max());
    for (int n = 2; n <= top; ++n) {
        const int threshold = n + static_cast<int>(ceil_sqrt(n));
        const BoundInterval& r = table.at(n);
        if (r.hi && *r.hi < threshold) check.violations.push_back(n);
        if (!r.lo || *r.lo < threshold) check.unconfirmed.push_back(n);
    }
    return check;
}

} // namespace c4star
