#include "obtf/litposet.hpp"

#include <bit>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "obtf/error.hpp"
#include "obtf/text.hpp"

namespace obtf {

namespace {

std::uint16_t literal_range_mask(int size) {
  return static_cast<std::uint16_t>((1U << size) - 1);
}

}  // namespace

LiteralPoset::LiteralPoset(int n) : n_(n) {
  if (n < 0 || n > kMaxVariables) throw ResourceError("literal poset needs 0 <= n <= 6");
}

LiteralPoset::LiteralPoset(int n, const LiteralRows& rows) : LiteralPoset(n) {
  const std::uint16_t mask = literal_range_mask(2 * n);
  for (int u = 0; u < kMaxLiterals; ++u) {
    if ((u >= 2 * n && rows[u] != 0) || (rows[u] & ~mask) != 0) {
      throw DomainError("relation row mentions a literal outside the 2n literals");
    }
  }
  rows_ = rows;
}

std::vector<std::pair<Literal, Literal>> LiteralPoset::relations() const {
  std::vector<std::pair<Literal, Literal>> out;
  for (int u = 0; u < literal_count(); ++u) {
    for (int v = 0; v < literal_count(); ++v) {
      if (less(u, v)) out.emplace_back(Literal::from_index(u), Literal::from_index(v));
    }
  }
  return out;
}

std::size_t LiteralPoset::relation_count() const noexcept {
  std::size_t count = 0;
  for (int u = 0; u < literal_count(); ++u) count += std::popcount(rows_[u]);
  return count;
}

CoverGraph::CoverGraph(int n) : n_(n) {
  if (n < 0 || n > kMaxVariables) throw ResourceError("cover graph needs 0 <= n <= 6");
}

void CoverGraph::add_edge(int u, int v) noexcept {
  adj_[u] |= static_cast<std::uint16_t>(1U << v);
  adj_[v] |= static_cast<std::uint16_t>(1U << u);
}

std::vector<std::pair<Literal, Literal>> CoverGraph::edges() const {
  std::vector<std::pair<Literal, Literal>> out;
  for (int u = 0; u < 2 * n_; ++u) {
    for (int v = u + 1; v < 2 * n_; ++v) {
      if (has_edge(u, v)) out.emplace_back(Literal::from_index(u), Literal::from_index(v));
    }
  }
  return out;
}

std::size_t CoverGraph::edge_count() const noexcept {
  std::size_t twice = 0;
  for (int u = 0; u < 2 * n_; ++u) twice += std::popcount(adj_[u]);
  return twice / 2;
}

void close_transitively(LiteralRows& rows, int size) noexcept {
  for (int k = 0; k < size; ++k) {
    const std::uint16_t bit = static_cast<std::uint16_t>(1U << k);
    for (int i = 0; i < size; ++i) {
      if (rows[i] & bit) rows[i] |= rows[k];
    }
  }
}

void add_negation_duals(LiteralRows& rows, int size) noexcept {
  LiteralRows out = rows;
  for (int u = 0; u < size; ++u) {
    for (std::uint16_t r = rows[u]; r != 0; r &= r - 1) {
      const int v = std::countr_zero(r);
      out[v ^ 1] |= static_cast<std::uint16_t>(1U << (u ^ 1));
    }
  }
  rows = out;
}

bool is_pn_member(const LiteralPoset& p) {
  const int size = p.literal_count();
  for (int u = 0; u < size; ++u) {
    const std::uint16_t row = p.above(u);
    if (p.less(u, u) || p.less(u, u ^ 1)) return false;  // irreflexive, x incomparable to ~x
    for (std::uint16_t r = row; r != 0; r &= r - 1) {
      const int v = std::countr_zero(r);
      if ((p.above(v) & ~row) != 0) return false;  // transitivity
      if (!p.less(v ^ 1, u ^ 1)) return false;      // x < y iff ~y < ~x
    }
  }
  return true;
}

LiteralPoset implication_poset(const Formula& f) {
  if (!is_elementary(truth_table(f))) {
    throw DomainError("P_F defined only for elementary functions");
  }
  const int n = f.n();
  LiteralRows rows{};
  for (const Clause& c : f.clauses()) {
    const int a = c.first().index(), b = c.second().index();
    rows[a ^ 1] |= static_cast<std::uint16_t>(1U << b);
    rows[b ^ 1] |= static_cast<std::uint16_t>(1U << a);
  }
  add_negation_duals(rows, 2 * n);
  close_transitively(rows, 2 * n);
  LiteralPoset p(n, rows);
  if (!is_pn_member(p)) {
    throw std::logic_error("implication closure of an elementary function is not in P(n)");
  }
  return p;
}

LiteralRows cover_rows(const LiteralPoset& p) {
  LiteralRows covers{};
  for (int u = 0; u < p.literal_count(); ++u) {
    std::uint16_t indirect = 0;
    for (std::uint16_t r = p.above(u); r != 0; r &= r - 1) indirect |= p.above(std::countr_zero(r));
    covers[u] = p.above(u) & static_cast<std::uint16_t>(~indirect);
  }
  return covers;
}

CoverGraph cover_relations(const LiteralPoset& p) {
  CoverGraph g(p.n());
  const LiteralRows covers = cover_rows(p);
  for (int u = 0; u < p.literal_count(); ++u) {
    for (std::uint16_t r = covers[u]; r != 0; r &= r - 1) g.add_edge(u, std::countr_zero(r));
  }
  return g;
}

Formula poset_formula(const LiteralPoset& p) {
  if (!is_pn_member(p)) throw DomainError("poset is not a member of P(n)");
  Formula f(p.n());
  for (const auto& [u, v] : p.relations()) f.add(Clause(u.negated(), v));
  return f;
}

TruthTable poset_to_function(const LiteralPoset& p) { return truth_table(poset_formula(p)); }

std::vector<LiteralPoset> collect_pn(int n) {
  std::vector<LiteralPoset> out;
  enumerate_pn(n, [&](const LiteralPoset& p) { out.push_back(p); });
  return out;
}

LiteralPoset parse_poset(std::string_view input) {
  const auto lines = text::tokenize(input);
  const int n = text::parse_header(lines, kMaxVariables);
  LiteralRows rows{};
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& line = lines[k];
    if (line.tokens.size() != 2) throw ParseError(line.number, "expected two signed literals");
    const int a = text::parse_int(line.tokens[0], line.number);
    const int b = text::parse_int(line.tokens[1], line.number);
    if (a == 0 || b == 0 || std::abs(a) > n || std::abs(b) > n) {
      throw ParseError(line.number, "literal out of range for n=" + std::to_string(n));
    }
    const int u = Literal::from_signed(a).index(), v = Literal::from_signed(b).index();
    rows[u] |= static_cast<std::uint16_t>(1U << v);
  }
  add_negation_duals(rows, 2 * n);
  close_transitively(rows, 2 * n);
  LiteralPoset p(n, rows);
  if (!is_pn_member(p)) throw ParseError(0, "relations do not generate a member of P(n)");
  return p;
}

std::string format_poset(const LiteralPoset& p) {
  std::ostringstream out;
  out << "n " << p.n() << '\n';
  const LiteralRows covers = cover_rows(p);
  for (int u = 0; u < p.literal_count(); ++u) {
    for (std::uint16_t r = covers[u]; r != 0; r &= r - 1) {
      out << Literal::from_index(u).to_signed() << ' '
          << Literal::from_index(std::countr_zero(r)).to_signed() << '\n';
    }
  }
  return out.str();
}

}  // namespace obtf
