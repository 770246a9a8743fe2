#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "obtf/boolfn.hpp"

namespace obtf {

inline constexpr int kMaxLiterals = 2 * kMaxVariables;

/// Bit rows over the 2n literals, indexed by Literal::index().
using LiteralRows = std::array<std::uint16_t, kMaxLiterals>;

/// A relation on the literals x_1, ~x_1, ..., x_n, ~x_n. `less(u, v)` reads
/// "u < v". Any relation can be held; is_pn_member() says whether it is a
/// member of P(n).
class LiteralPoset {
 public:
  explicit LiteralPoset(int n);  // the antichain
  LiteralPoset(int n, const LiteralRows& rows);

  int n() const noexcept { return n_; }
  int literal_count() const noexcept { return 2 * n_; }

  bool less(int u, int v) const noexcept { return (rows_[u] >> v) & 1U; }
  bool less(Literal a, Literal b) const noexcept { return less(a.index(), b.index()); }
  std::uint16_t above(int u) const noexcept { return rows_[u]; }
  const LiteralRows& rows() const noexcept { return rows_; }

  void add(int u, int v) noexcept { rows_[u] |= static_cast<std::uint16_t>(1U << v); }
  void add(Literal a, Literal b) noexcept { add(a.index(), b.index()); }

  /// All pairs (u, v) with u < v, in row-major literal order.
  std::vector<std::pair<Literal, Literal>> relations() const;
  std::size_t relation_count() const noexcept;

  friend bool operator==(const LiteralPoset&, const LiteralPoset&) = default;
  friend auto operator<=>(const LiteralPoset&, const LiteralPoset&) = default;

 private:
  int n_;
  LiteralRows rows_{};
};

/// Undirected graph on the 2n literals (symmetric adjacency rows).
class CoverGraph {
 public:
  explicit CoverGraph(int n);

  int n() const noexcept { return n_; }
  bool has_edge(int u, int v) const noexcept { return (adj_[u] >> v) & 1U; }
  void add_edge(int u, int v) noexcept;
  const LiteralRows& adjacency() const noexcept { return adj_; }

  /// Edges {u, v} with u < v by literal index, sorted.
  std::vector<std::pair<Literal, Literal>> edges() const;
  std::size_t edge_count() const noexcept;

  friend bool operator==(const CoverGraph&, const CoverGraph&) = default;

 private:
  int n_;
  LiteralRows adj_{};
};

/// Warshall closure over the first `size` rows.
void close_transitively(LiteralRows& rows, int size) noexcept;

/// Adds (~v, ~u) for every (u, v).
void add_negation_duals(LiteralRows& rows, int size) noexcept;

/// Strict order, each x incomparable to ~x, and x < y iff ~y < ~x.
bool is_pn_member(const LiteralPoset& p);

/// P_F: seed u < v for each clause (~u | v) read both ways, then close.
/// Throws DomainError unless truth_table(f) is elementary; std::logic_error if
/// the closure is not a member of P(n).
LiteralPoset implication_poset(const Formula& f);

/// Directed cover relation: bit v of row u set iff u is covered by v.
LiteralRows cover_rows(const LiteralPoset& p);

CoverGraph cover_relations(const LiteralPoset& p);

/// One clause (~u | v) per relation u < v.
Formula poset_formula(const LiteralPoset& p);

/// Inverse of implication_poset on elementary functions.
TruthTable poset_to_function(const LiteralPoset& p);

/// Calls `visit` once per member of P(n), ordered by the colored graph it
/// maps to (colex graph order), then by the poset. Throws ResourceError for
/// n > 5.
void enumerate_pn(int n, const std::function<void(const LiteralPoset&)>& visit);
std::vector<LiteralPoset> collect_pn(int n);

inline constexpr int kMaxEnumeratePn = 5;

/// Text format: `n <int>` header, then one relation `a b` (literal(a) <
/// literal(b)) per line. Parsing adds negation duals, closes, and rejects
/// results outside P(n) with a ParseError.
LiteralPoset parse_poset(std::string_view text);
/// Writes the cover relations, which generate the order.
std::string format_poset(const LiteralPoset& p);

}  // namespace obtf
