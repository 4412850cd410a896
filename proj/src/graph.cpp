#include "c4star/graph.hpp"

#include <bit>
#include <charconv>

namespace c4star {

namespace {

std::uint64_t low_mask(int order) {
    return order >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << order) - 1;
}

} // namespace

Graph::Graph(int order) : order_(order) {
    if (order < 1 || order > kMaxOrder)
        fail("OrderOutOfRange",
             "graph order must be in [1, 64], got " + std::to_string(order));
}

Graph Graph::from_rows(int order, std::span<const std::uint64_t> rows) {
    Graph g(order);
    if (static_cast<int>(rows.size()) != order)
        fail("NonSquare", "expected " + std::to_string(order) + " rows, got " +
                              std::to_string(rows.size()));
    const std::uint64_t mask = low_mask(order);
    for (int v = 0; v < order; ++v) {
        if (rows[static_cast<std::size_t>(v)] & ~mask)
            fail("VertexOutOfRange",
                 "row " + std::to_string(v) + " has bits set at positions >= order");
        g.rows_[static_cast<std::size_t>(v)] = rows[static_cast<std::size_t>(v)];
    }
    for (int v = 0; v < order; ++v) {
        if ((g.rows_[static_cast<std::size_t>(v)] >> v) & 1u)
            fail("LoopPresent", "loop at vertex " + std::to_string(v));
        for (int u = v + 1; u < order; ++u) {
            const bool uv = (g.rows_[static_cast<std::size_t>(u)] >> v) & 1u;
            const bool vu = (g.rows_[static_cast<std::size_t>(v)] >> u) & 1u;
            if (uv != vu)
                fail("NotSymmetric", "entries (" + std::to_string(u) + "," +
                                         std::to_string(v) + ") and (" +
                                         std::to_string(v) + "," +
                                         std::to_string(u) + ") differ");
        }
    }
    return g;
}

int Graph::degree(int v) const {
    check_vertex(v);
    return std::popcount(rows_[static_cast<std::size_t>(v)]);
}

int Graph::edge_count() const {
    int twice = 0;
    for (int v = 0; v < order_; ++v)
        twice += std::popcount(rows_[static_cast<std::size_t>(v)]);
    return twice / 2;
}

bool Graph::operator==(const Graph& other) const noexcept {
    if (order_ != other.order_) return false;
    for (int v = 0; v < order_; ++v)
        if (rows_[static_cast<std::size_t>(v)] != other.rows_[static_cast<std::size_t>(v)])
            return false;
    return true;
}

void Graph::check_vertex(int v) const {
    if (v < 0 || v >= order_)
        fail("VertexOutOfRange", "vertex " + std::to_string(v) +
                                     " not in [0, " + std::to_string(order_) + ")");
}

void Graph::check_pair(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    if (u == v)
        fail("SameVertex", "vertex pair (" + std::to_string(u) + "," +
                               std::to_string(v) + ") is degenerate");
}

Graph parse_graph(std::string_view text) {
    // Split into physical lines; the final line may lack a newline.
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }

    auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    auto blank = [&](std::string_view s) {
        for (char c : s)
            if (!is_space(c)) return false;
        return true;
    };

    if (lines.empty() || blank(lines[0]))
        fail("BadCharacter", "line 1: expected decimal graph order");

    std::string_view header = lines[0];
    std::size_t h0 = 0, h1 = header.size();
    while (h0 < h1 && is_space(header[h0])) ++h0;
    while (h1 > h0 && is_space(header[h1 - 1])) --h1;
    int order = 0;
    auto [ptr, ec] = std::from_chars(header.data() + h0, header.data() + h1, order);
    if (ec != std::errc{} || ptr != header.data() + h1)
        fail("BadCharacter", "line 1: expected decimal graph order, got \"" +
                                 std::string(header.substr(h0, h1 - h0)) + "\"");
    if (order < 1 || order > Graph::kMaxOrder)
        fail("OrderOutOfRange",
             "graph order must be in [1, 64], got " + std::to_string(order));

    std::vector<std::uint64_t> rows;
    rows.reserve(static_cast<std::size_t>(order));
    std::size_t line_idx = 1;
    for (int v = 0; v < order; ++v, ++line_idx) {
        if (line_idx >= lines.size())
            fail("NonSquare", "expected " + std::to_string(order) +
                                  " matrix rows, found only " + std::to_string(v));
        std::string_view line = lines[line_idx];
        std::uint64_t row = 0;
        int col = 0;
        for (std::size_t i = 0; i < line.size(); ++i) {
            char c = line[i];
            if (is_space(c)) continue;
            if (c != '0' && c != '1')
                fail("BadCharacter", "line " + std::to_string(line_idx + 1) +
                                         ", column " + std::to_string(i + 1) +
                                         ": expected 0 or 1, got '" +
                                         std::string(1, c) + "'");
            if (col >= order)
                fail("NonSquare", "row " + std::to_string(v) + " has more than " +
                                      std::to_string(order) + " entries");
            if (c == '1') row |= std::uint64_t{1} << col;
            ++col;
        }
        if (col != order)
            fail("NonSquare", "row " + std::to_string(v) + " has " +
                                  std::to_string(col) + " entries, expected " +
                                  std::to_string(order));
        rows.push_back(row);
    }
    for (; line_idx < lines.size(); ++line_idx)
        if (!blank(lines[line_idx]))
            fail("NonSquare", "unexpected content after row " + std::to_string(order));

    return Graph::from_rows(order, rows);
}

std::string serialize_graph(const Graph& g) {
    const int n = g.order();
    std::string out = std::to_string(n);
    for (int v = 0; v < n; ++v) {
        out += '\n';
        const std::uint64_t row = g.neighbors(v);
        for (int u = 0; u < n; ++u)
            out += ((row >> u) & 1u) ? '1' : '0';
    }
    return out;
}

int codegree(const Graph& g, int u, int v) {
    if (u == v)
        fail("SameVertex", "codegree needs two distinct vertices, got " +
                               std::to_string(u) + " twice");
    return std::popcount(g.neighbors(u) & g.neighbors(v));
}

bool contains_c4(const Graph& g) {
    const int n = g.order();
    for (int u = 0; u < n; ++u) {
        const std::uint64_t ru = g.neighbors(u);
        for (int v = u + 1; v < n; ++v)
            if (std::popcount(ru & g.neighbors(v)) >= 2) return true;
    }
    return false;
}

bool c4_safe_to_add(const Graph& g, int u, int v) {
    const std::uint64_t nu = g.neighbors(u);
    const std::uint64_t nv = g.neighbors(v);
    const std::uint64_t skip = (std::uint64_t{1} << u) | (std::uint64_t{1} << v);
    for (std::uint64_t m = nv & ~skip; m != 0; m &= m - 1) {
        const int x = std::countr_zero(m);
        if ((nu & g.neighbors(x)) != 0) return false;
    }
    for (std::uint64_t m = nu & ~skip; m != 0; m &= m - 1) {
        const int x = std::countr_zero(m);
        if ((nv & g.neighbors(x)) != 0) return false;
    }
    return true;
}

std::uint64_t count_c4(const Graph& g) {
    const int n = g.order();
    std::uint64_t twice = 0;
    for (int u = 0; u < n; ++u) {
        const std::uint64_t ru = g.neighbors(u);
        for (int v = u + 1; v < n; ++v) {
            const std::uint64_t c =
                static_cast<std::uint64_t>(std::popcount(ru & g.neighbors(v)));
            twice += c * (c - 1) / 2;
        }
    }
    return twice / 2;
}

GraphStats graph_stats(const Graph& g) {
    GraphStats s;
    const int n = g.order();
    s.degree_sequence.reserve(static_cast<std::size_t>(n));
    int degree_sum = 0;
    s.min_degree = n;
    s.max_degree = 0;
    for (int v = 0; v < n; ++v) {
        const int d = g.degree(v);
        s.degree_sequence.push_back(d);
        degree_sum += d;
        if (d < s.min_degree) s.min_degree = d;
        if (d > s.max_degree) s.max_degree = d;
    }
    s.edge_count = degree_sum / 2;
    s.complement_max_degree = n - 1 - s.min_degree;
    return s;
}

Graph cycle_graph(int k) {
    Graph g(k);
    if (k < 3) fail("OrderOutOfRange", "cycle needs at least 3 vertices");
    for (int v = 0; v < k; ++v) g.add_edge(v, (v + 1) % k);
    return g;
}

Graph complete_graph(int k) {
    Graph g(k);
    for (int u = 0; u < k; ++u)
        for (int v = u + 1; v < k; ++v) g.add_edge(u, v);
    return g;
}

Graph path_graph(int k) {
    Graph g(k);
    for (int v = 0; v + 1 < k; ++v) g.add_edge(v, v + 1);
    return g;
}

Graph complete_bipartite_graph(int a, int b) {
    Graph g(a + b);
    for (int u = 0; u < a; ++u)
        for (int v = a; v < a + b; ++v) g.add_edge(u, v);
    return g;
}

} // namespace c4star
