#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "obtf/litposet.hpp"

namespace obtf {

inline constexpr int kMaxVertices = 16;

enum class EdgeColor : std::uint8_t { kAbsent = 0, kRed = 1, kBlue = 2 };

char color_letter(EdgeColor c);

struct Edge {
  int u;  // u < v
  int v;
  EdgeColor color;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Number of unordered vertex pairs on n vertices.
constexpr int pair_count(int n) noexcept { return n * (n - 1) / 2; }

/// Colex rank of the pair {u, v}, u < v: (0,1), (0,2), (1,2), (0,3), ...
constexpr int pair_rank(int u, int v) noexcept { return v * (v - 1) / 2 + u; }

struct VertexPair {
  int u;
  int v;
};
VertexPair pair_at(int rank) noexcept;

/// Red/blue edge-colored graph on labelled vertices w_1..w_n (0-based
/// internally). Each pair carries exactly one of absent/red/blue.
class ColoredGraph {
 public:
  explicit ColoredGraph(int n);

  /// Graph whose colex pair k has color digit k of `code` in base 3
  /// (0 absent, 1 red, 2 blue).
  static ColoredGraph from_code(int n, std::uint64_t code);
  std::uint64_t code() const;

  int n() const noexcept { return n_; }
  EdgeColor color(int u, int v) const noexcept;
  void set_color(int u, int v, EdgeColor c);

  std::uint16_t red_neighbors(int u) const noexcept { return red_[u]; }
  std::uint16_t blue_neighbors(int u) const noexcept { return blue_[u]; }
  std::uint16_t neighbors(int u) const noexcept { return red_[u] | blue_[u]; }

  /// Edges in colex pair order.
  std::vector<Edge> edges() const;
  int edge_count() const noexcept;

  /// Same vertex set with every edge at a vertex in `mask` removed.
  ColoredGraph without_vertices(std::uint32_t mask) const;

  friend bool operator==(const ColoredGraph&, const ColoredGraph&) = default;

 private:
  int n_;
  std::array<std::uint16_t, kMaxVertices> red_{};
  std::array<std::uint16_t, kMaxVertices> blue_{};
};

/// No triangle has an odd number of blue edges.
bool is_obtf(const ColoredGraph& g);

enum class Side : std::uint8_t { kU = 0, kW = 1 };

/// Blue edges cross, red edges stay inside a side.
struct Bipartition {
  std::vector<Side> side;
};

bool is_witness(const ColoredGraph& g, const Bipartition& b);

/// Constraint propagation per component; the smallest vertex of each component
/// goes to U. Absent when g is not blue-bipartite.
std::optional<Bipartition> find_blue_bipartition(const ColoredGraph& g);
bool is_blue_bipartite(const ColoredGraph& g);

inline constexpr int kMaxKappaVertices = 12;
inline constexpr int kMaxGammaEdges = 20;

struct VertexDeletion {
  int size;
  std::vector<int> vertices;
};

struct EdgeDeletion {
  int size;
  std::vector<Edge> edges;
};

/// Fewest vertices whose removal leaves a blue-bipartite graph, searched by
/// increasing size. Throws ResourceError when n > 12.
VertexDeletion kappa(const ColoredGraph& g);

/// Fewest edges whose removal leaves a blue-bipartite graph. Throws
/// ResourceError when |E| > 20.
EdgeDeletion gamma(const ColoredGraph& g);

/// Classes of the edges under "linked by a chain of triangles sharing edges".
struct TriangleComponents {
  std::vector<std::vector<Edge>> classes;
};

TriangleComponents triangle_components(const ColoredGraph& g);
int eta(const ColoredGraph& g);
/// At most one class; the edgeless graph counts as triangle-connected.
bool is_triangle_connected(const ColoredGraph& g);

/// Colors w_i w_j by the polarity pattern of the covers between x_i/~x_i and
/// x_j/~x_j. Empty when some pair would need both colors.
std::optional<ColoredGraph> cover_coloring(const LiteralPoset& p);

/// G(P): red edge w_i w_j for covers of mixed polarity, blue for same
/// polarity. Throws std::logic_error if a pair would get both colors or the
/// result is not OBTF.
ColoredGraph graph_of_poset(const LiteralPoset& p);

/// C(G) on the 2n literals.
CoverGraph double_cover(const ColoredGraph& g);

inline constexpr int kMaxOrientationEdges = 20;

/// P(G) = { P in P(n) : G(P) = G }, sorted. Sweeps the 2^|E| orientations and
/// keeps those whose closure is a member of P(n) with cover graph exactly C(G).
std::vector<LiteralPoset> posets_of_graph(const ColoredGraph& g);
std::size_t count_posets_of_graph(const ColoredGraph& g);

/// A closed walk v_0 ... v_{L-1} (returning to v_0), 2 <= L <= 5, that
/// repeats a vertex or edge and has an odd number of blue steps.
std::optional<std::vector<int>> find_odd_nonsimple_closed_walk(const ColoredGraph& g);

/// True iff every non-simple closed walk of length at most 5 is even-blue.
/// Throws DomainError unless g is OBTF.
bool check_closed_walks(const ColoredGraph& g);

/// Text format: `n <int>` header, then `u v R` or `u v B` per edge with
/// 1-based vertex ids.
ColoredGraph parse_graph(std::string_view text);
std::string format_graph(const ColoredGraph& g);

}  // namespace obtf
