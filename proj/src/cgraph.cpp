#include "obtf/cgraph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "obtf/error.hpp"
#include "obtf/text.hpp"

namespace obtf {

namespace {

constexpr std::uint16_t bit16(int i) { return static_cast<std::uint16_t>(1U << i); }

class DisjointSets {
 public:
  explicit DisjointSets(int size) : parent_(size) { std::iota(parent_.begin(), parent_.end(), 0); }

  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

ColoredGraph without_edges(const ColoredGraph& g, const std::vector<Edge>& edges,
                           std::uint32_t chosen) {
  ColoredGraph h = g;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if ((chosen >> k) & 1U) h.set_color(edges[k].u, edges[k].v, EdgeColor::kAbsent);
  }
  return h;
}

/// Next integer with the same popcount (Gosper).
std::uint32_t next_combination(std::uint32_t x) {
  const std::uint32_t c = x & -x;
  const std::uint32_t r = x + c;
  return (((r ^ x) >> 2) / c) | r;
}

struct WalkSearch {
  const ColoredGraph& g;
  std::array<int, 6> path{};
  std::optional<std::vector<int>> found;

  // path[0..len) fixed, blue parity so far; extend toward a closed walk.
  bool extend(int len, bool parity) {
    const int last = path[len - 1];
    if (len >= 2 && g.color(last, path[0]) != EdgeColor::kAbsent) {
      const bool closing = parity ^ (g.color(last, path[0]) == EdgeColor::kBlue);
      if (closing && non_simple(len)) {
        found = std::vector<int>(path.begin(), path.begin() + len);
        return true;
      }
    }
    if (len == 5) return false;
    for (std::uint16_t r = g.neighbors(last); r != 0; r &= r - 1) {
      const int next = std::countr_zero(r);
      path[len] = next;
      if (extend(len + 1, parity ^ (g.color(last, next) == EdgeColor::kBlue))) return true;
    }
    return false;
  }

  bool non_simple(int len) const {
    if (len == 2) return true;  // u-v-u reuses its edge
    for (int a = 0; a < len; ++a) {
      for (int b = a + 1; b < len; ++b) {
        if (path[a] == path[b]) return true;
      }
    }
    return false;
  }
};

}  // namespace

char color_letter(EdgeColor c) {
  switch (c) {
    case EdgeColor::kRed:
      return 'R';
    case EdgeColor::kBlue:
      return 'B';
    default:
      return '-';
  }
}

VertexPair pair_at(int rank) noexcept {
  int v = 1;
  while (pair_rank(0, v + 1) <= rank) ++v;
  return {rank - pair_rank(0, v), v};
}

ColoredGraph::ColoredGraph(int n) : n_(n) {
  if (n < 0 || n > kMaxVertices) throw ResourceError("colored graph needs 0 <= n <= 16");
}

ColoredGraph ColoredGraph::from_code(int n, std::uint64_t code) {
  if (pair_count(n) > 40) throw ResourceError("base-3 graph codes need n <= 9");
  ColoredGraph g(n);
  for (int k = 0; k < pair_count(n); ++k) {
    const auto [u, v] = pair_at(k);
    g.set_color(u, v, static_cast<EdgeColor>(code % 3));
    code /= 3;
  }
  return g;
}

std::uint64_t ColoredGraph::code() const {
  if (pair_count(n_) > 40) throw ResourceError("base-3 graph codes need n <= 9");
  std::uint64_t code = 0;
  for (int k = pair_count(n_) - 1; k >= 0; --k) {
    const auto [u, v] = pair_at(k);
    code = code * 3 + static_cast<std::uint64_t>(color(u, v));
  }
  return code;
}

EdgeColor ColoredGraph::color(int u, int v) const noexcept {
  if ((red_[u] >> v) & 1U) return EdgeColor::kRed;
  if ((blue_[u] >> v) & 1U) return EdgeColor::kBlue;
  return EdgeColor::kAbsent;
}

void ColoredGraph::set_color(int u, int v, EdgeColor c) {
  if (u == v || u < 0 || v < 0 || u >= n_ || v >= n_) {
    throw DomainError("bad vertex pair " + std::to_string(u + 1) + "," + std::to_string(v + 1));
  }
  red_[u] &= static_cast<std::uint16_t>(~bit16(v));
  red_[v] &= static_cast<std::uint16_t>(~bit16(u));
  blue_[u] &= static_cast<std::uint16_t>(~bit16(v));
  blue_[v] &= static_cast<std::uint16_t>(~bit16(u));
  if (c == EdgeColor::kRed) {
    red_[u] |= bit16(v);
    red_[v] |= bit16(u);
  } else if (c == EdgeColor::kBlue) {
    blue_[u] |= bit16(v);
    blue_[v] |= bit16(u);
  }
}

std::vector<Edge> ColoredGraph::edges() const {
  std::vector<Edge> out;
  for (int v = 1; v < n_; ++v) {
    for (int u = 0; u < v; ++u) {
      if (const EdgeColor c = color(u, v); c != EdgeColor::kAbsent) out.push_back({u, v, c});
    }
  }
  return out;
}

int ColoredGraph::edge_count() const noexcept {
  int twice = 0;
  for (int u = 0; u < n_; ++u) twice += std::popcount(neighbors(u));
  return twice / 2;
}

ColoredGraph ColoredGraph::without_vertices(std::uint32_t mask) const {
  ColoredGraph h = *this;
  const auto keep = static_cast<std::uint16_t>(~mask);
  for (int u = 0; u < n_; ++u) {
    if ((mask >> u) & 1U) {
      h.red_[u] = h.blue_[u] = 0;
    } else {
      h.red_[u] &= keep;
      h.blue_[u] &= keep;
    }
  }
  return h;
}

bool is_obtf(const ColoredGraph& g) {
  for (int a = 0; a < g.n(); ++a) {
    for (int b = a + 1; b < g.n(); ++b) {
      const EdgeColor ab = g.color(a, b);
      if (ab == EdgeColor::kAbsent) continue;
      // Common neighbors above b close a triangle a<b<c.
      std::uint16_t common = g.neighbors(a) & g.neighbors(b) & static_cast<std::uint16_t>(~((2U << b) - 1));
      const std::uint16_t parity_mismatch = g.blue_neighbors(a) ^ g.blue_neighbors(b);
      // Triangle is odd-blue iff blue(ab) xor blue(ac) xor blue(bc) = 1.
      const std::uint16_t odd = ab == EdgeColor::kBlue ? static_cast<std::uint16_t>(~parity_mismatch)
                                                       : parity_mismatch;
      if ((common & odd) != 0) return false;
    }
  }
  return true;
}

bool is_witness(const ColoredGraph& g, const Bipartition& b) {
  if (static_cast<int>(b.side.size()) != g.n()) return false;
  for (const Edge& e : g.edges()) {
    const bool crosses = b.side[e.u] != b.side[e.v];
    if (crosses != (e.color == EdgeColor::kBlue)) return false;
  }
  return true;
}

std::optional<Bipartition> find_blue_bipartition(const ColoredGraph& g) {
  Bipartition b{std::vector<Side>(g.n(), Side::kU)};
  std::vector<bool> seen(g.n(), false);
  std::vector<int> stack;
  for (int root = 0; root < g.n(); ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    stack.push_back(root);
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (std::uint16_t r = g.neighbors(u); r != 0; r &= r - 1) {
        const int v = std::countr_zero(r);
        const bool flip = g.color(u, v) == EdgeColor::kBlue;
        const Side want = flip ? static_cast<Side>(1 - static_cast<int>(b.side[u])) : b.side[u];
        if (!seen[v]) {
          seen[v] = true;
          b.side[v] = want;
          stack.push_back(v);
        } else if (b.side[v] != want) {
          return std::nullopt;
        }
      }
    }
  }
  return b;
}

bool is_blue_bipartite(const ColoredGraph& g) { return find_blue_bipartition(g).has_value(); }

VertexDeletion kappa(const ColoredGraph& g) {
  if (g.n() > kMaxKappaVertices) {
    throw ResourceError("kappa: exact search limited to n <= " + std::to_string(kMaxKappaVertices));
  }
  const std::uint32_t limit = 1U << g.n();
  for (int k = 0; k <= g.n(); ++k) {
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
      if (std::popcount(mask) != k || !is_blue_bipartite(g.without_vertices(mask))) continue;
      VertexDeletion out{k, {}};
      for (int u = 0; u < g.n(); ++u) {
        if ((mask >> u) & 1U) out.vertices.push_back(u);
      }
      return out;
    }
  }
  throw std::logic_error("kappa: deleting every vertex must leave a blue-bipartite graph");
}

EdgeDeletion gamma(const ColoredGraph& g) {
  const std::vector<Edge> edges = g.edges();
  const int m = static_cast<int>(edges.size());
  if (m > kMaxGammaEdges) {
    throw ResourceError("gamma: exact search limited to |E| <= " + std::to_string(kMaxGammaEdges));
  }
  const std::uint32_t limit = 1U << m;
  for (int k = 0; k <= m; ++k) {
    std::uint32_t chosen = k == 0 ? 0 : (1U << k) - 1;
    while (chosen < limit) {
      if (is_blue_bipartite(without_edges(g, edges, chosen))) {
        EdgeDeletion out{k, {}};
        for (int e = 0; e < m; ++e) {
          if ((chosen >> e) & 1U) out.edges.push_back(edges[e]);
        }
        return out;
      }
      if (k == 0) break;
      chosen = next_combination(chosen);
    }
  }
  throw std::logic_error("gamma: deleting every edge must leave a blue-bipartite graph");
}

TriangleComponents triangle_components(const ColoredGraph& g) {
  const std::vector<Edge> edges = g.edges();
  std::vector<int> index_of(pair_count(g.n()), -1);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    index_of[pair_rank(edges[k].u, edges[k].v)] = static_cast<int>(k);
  }
  DisjointSets sets(static_cast<int>(edges.size()));
  for (int a = 0; a < g.n(); ++a) {
    for (int b = a + 1; b < g.n(); ++b) {
      if (g.color(a, b) == EdgeColor::kAbsent) continue;
      for (int c = b + 1; c < g.n(); ++c) {
        if (g.color(a, c) == EdgeColor::kAbsent || g.color(b, c) == EdgeColor::kAbsent) continue;
        const int ab = index_of[pair_rank(a, b)];
        sets.unite(ab, index_of[pair_rank(a, c)]);
        sets.unite(ab, index_of[pair_rank(b, c)]);
      }
    }
  }
  // Class representatives are the smallest member, so classes come out ordered
  // by their first edge.
  TriangleComponents out;
  std::vector<int> slot(edges.size(), -1);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const int root = sets.find(static_cast<int>(k));
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(out.classes.size());
      out.classes.emplace_back();
    }
    out.classes[slot[root]].push_back(edges[k]);
  }
  return out;
}

int eta(const ColoredGraph& g) { return static_cast<int>(triangle_components(g).classes.size()); }

bool is_triangle_connected(const ColoredGraph& g) { return eta(g) <= 1; }

std::optional<ColoredGraph> cover_coloring(const LiteralPoset& p) {
  ColoredGraph g(p.n());
  const LiteralRows covers = cover_rows(p);
  for (int a = 0; a < p.literal_count(); ++a) {
    for (std::uint16_t r = covers[a]; r != 0; r &= r - 1) {
      const Literal x = Literal::from_index(a), y = Literal::from_index(std::countr_zero(r));
      if (x.var == y.var) throw std::logic_error("cover between complementary literals");
      const EdgeColor want = x.negative == y.negative ? EdgeColor::kBlue : EdgeColor::kRed;
      const EdgeColor have = g.color(x.var, y.var);
      if (have != EdgeColor::kAbsent && have != want) return std::nullopt;
      g.set_color(x.var, y.var, want);
    }
  }
  return g;
}

ColoredGraph graph_of_poset(const LiteralPoset& p) {
  if (!is_pn_member(p)) throw DomainError("G(P) defined only for members of P(n)");
  std::optional<ColoredGraph> g = cover_coloring(p);
  if (!g) throw std::logic_error("property (d) violated: a vertex pair demands both colors");
  if (!is_obtf(*g)) throw std::logic_error("property (f) violated: G(P) is not OBTF");
  return *g;
}

CoverGraph double_cover(const ColoredGraph& g) {
  if (g.n() > kMaxVariables) throw ResourceError("double cover needs n <= 6");
  CoverGraph c(g.n());
  for (const Edge& e : g.edges()) {
    const int xu = Literal{e.u, false}.index(), xv = Literal{e.v, false}.index();
    if (e.color == EdgeColor::kBlue) {
      c.add_edge(xu, xv);
      c.add_edge(xu ^ 1, xv ^ 1);
    } else {
      c.add_edge(xu, xv ^ 1);
      c.add_edge(xu ^ 1, xv);
    }
  }
  return c;
}

namespace {

template <typename Keep>
void sweep_orientations(const ColoredGraph& g, Keep&& keep) {
  const std::vector<Edge> edges = g.edges();
  if (static_cast<int>(edges.size()) > kMaxOrientationEdges) {
    throw ResourceError("orientation sweep limited to |E| <= " + std::to_string(kMaxOrientationEdges));
  }
  const CoverGraph target = double_cover(g);
  const int size = 2 * g.n();
  const std::uint32_t limit = 1U << edges.size();
  for (std::uint32_t orient = 0; orient < limit; ++orient) {
    LiteralRows rows{};
    for (std::size_t k = 0; k < edges.size(); ++k) {
      // Orient the C(G) edge containing x_u; its partner follows by negation.
      const int a = Literal{edges[k].u, false}.index();
      const int b = Literal{edges[k].v, edges[k].color == EdgeColor::kRed}.index();
      if ((orient >> k) & 1U) {
        rows[b] |= bit16(a);
        rows[a ^ 1] |= bit16(b ^ 1);
      } else {
        rows[a] |= bit16(b);
        rows[b ^ 1] |= bit16(a ^ 1);
      }
    }
    close_transitively(rows, size);
    bool ok = true;
    for (int u = 0; u < size && ok; ++u) {
      ok = !((rows[u] >> u) & 1U) && !((rows[u] >> (u ^ 1)) & 1U);
    }
    if (!ok) continue;
    const LiteralPoset p(g.n(), rows);
    if (!is_pn_member(p) || cover_relations(p) != target) continue;
    keep(p);
  }
}

}  // namespace

std::vector<LiteralPoset> posets_of_graph(const ColoredGraph& g) {
  std::vector<LiteralPoset> out;
  sweep_orientations(g, [&](const LiteralPoset& p) { out.push_back(p); });
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t count_posets_of_graph(const ColoredGraph& g) {
  std::size_t count = 0;
  sweep_orientations(g, [&](const LiteralPoset&) { ++count; });
  return count;
}

std::optional<std::vector<int>> find_odd_nonsimple_closed_walk(const ColoredGraph& g) {
  WalkSearch search{g, {}, std::nullopt};
  for (int start = 0; start < g.n(); ++start) {
    search.path[0] = start;
    if (search.extend(1, false)) return search.found;
  }
  return std::nullopt;
}

bool check_closed_walks(const ColoredGraph& g) {
  if (!is_obtf(g)) throw DomainError("closed-walk property requires an OBTF graph");
  return !find_odd_nonsimple_closed_walk(g).has_value();
}

ColoredGraph parse_graph(std::string_view input) {
  const auto lines = text::tokenize(input);
  const int n = text::parse_header(lines, kMaxVertices);
  ColoredGraph g(n);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& line = lines[k];
    if (line.tokens.size() != 3) throw ParseError(line.number, "expected 'u v R' or 'u v B'");
    const int u = text::parse_int(line.tokens[0], line.number);
    const int v = text::parse_int(line.tokens[1], line.number);
    if (u < 1 || v < 1 || u > n || v > n || u == v) {
      throw ParseError(line.number, "vertex pair out of range for n=" + std::to_string(n));
    }
    EdgeColor c;
    if (line.tokens[2] == "R" || line.tokens[2] == "r") {
      c = EdgeColor::kRed;
    } else if (line.tokens[2] == "B" || line.tokens[2] == "b") {
      c = EdgeColor::kBlue;
    } else {
      throw ParseError(line.number, "edge color must be R or B");
    }
    if (g.color(u - 1, v - 1) != EdgeColor::kAbsent && g.color(u - 1, v - 1) != c) {
      throw ParseError(line.number, "pair colored both red and blue");
    }
    g.set_color(u - 1, v - 1, c);
  }
  return g;
}

std::string format_graph(const ColoredGraph& g) {
  std::ostringstream out;
  out << "n " << g.n() << '\n';
  for (const Edge& e : g.edges()) out << e.u + 1 << ' ' << e.v + 1 << ' ' << color_letter(e.color) << '\n';
  return out.str();
}

}  // namespace obtf
