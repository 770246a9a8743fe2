#include "obtf/boolfn.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "obtf/error.hpp"
#include "obtf/text.hpp"

namespace obtf {

namespace {

void check_n(int n) {
  if (n < 0 || n > kMaxVariables) {
    throw ResourceError("variable count " + std::to_string(n) + " outside [0, " +
                        std::to_string(kMaxVariables) + "]");
  }
}

}  // namespace

Literal Literal::from_signed(int value) {
  if (value == 0) throw DomainError("literal 0 is not a variable");
  return value > 0 ? Literal{value - 1, false} : Literal{-value - 1, true};
}

std::string to_string(Literal lit) {
  return (lit.negative ? "~x" : "x") + std::to_string(lit.var + 1);
}

Clause::Clause(Literal a, Literal b) : first_(std::min(a, b)), second_(std::max(a, b)) {
  if (a.var == b.var) {
    throw DomainError("clause literals must belong to different variables: " + to_string(a) +
                      ", " + to_string(b));
  }
  if (a.var < 0 || b.var < 0) throw DomainError("negative variable index");
}

Formula::Formula(int n) : n_(n) { check_n(n); }

Formula::Formula(int n, std::vector<Clause> clauses) : Formula(n) {
  for (const Clause& c : clauses) add(c);
}

void Formula::add(Clause c) {
  if (c.second().var >= n_ || c.first().var >= n_) {
    throw DomainError("clause variable outside [1, " + std::to_string(n_) + "]");
  }
  auto it = std::lower_bound(clauses_.begin(), clauses_.end(), c);
  if (it == clauses_.end() || *it != c) clauses_.insert(it, c);
}

TruthTable::TruthTable(int n, std::uint64_t bits) : n_(n), bits_(bits) {
  check_n(n);
  if ((bits & ~universe_mask(n)) != 0) throw DomainError("truth table bit outside 2^n");
}

TruthTable TruthTable::all_ones(int n) { return TruthTable(n, universe_mask(n)); }

int TruthTable::size() const noexcept { return std::popcount(bits_); }

bool TruthTable::is_all_ones() const noexcept { return bits_ == universe_mask(n_); }

std::uint64_t universe_mask(int n) {
  return n >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (1U << n)) - 1;
}

std::uint64_t variable_mask(int n, int var) {
  // Periodic pattern: blocks of 2^var zeros then 2^var ones.
  static constexpr std::uint64_t kPatterns[6] = {
      0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
      0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
  };
  return kPatterns[var] & universe_mask(n);
}

std::uint64_t literal_mask(int n, Literal lit) {
  const std::uint64_t m = variable_mask(n, lit.var);
  return lit.negative ? (~m & universe_mask(n)) : m;
}

std::uint64_t clause_mask(int n, const Clause& c) {
  return literal_mask(n, c.first()) | literal_mask(n, c.second());
}

std::vector<Clause> all_clauses(int n) {
  std::vector<Clause> out;
  for (int a = 0; a < 2 * n; ++a) {
    for (int b = a + 1; b < 2 * n; ++b) {
      Literal la = Literal::from_index(a), lb = Literal::from_index(b);
      if (la.var != lb.var) out.emplace_back(la, lb);
    }
  }
  return out;
}

TruthTable truth_table(const Formula& f) {
  std::uint64_t bits = universe_mask(f.n());
  for (const Clause& c : f.clauses()) bits &= clause_mask(f.n(), c);
  return TruthTable(f.n(), bits);
}

std::vector<SpineEntry> spine(const TruthTable& t) {
  if (!t.satisfiable()) throw DomainError("trivial function: spine undefined");
  std::vector<SpineEntry> out;
  for (int i = 0; i < t.n(); ++i) {
    const std::uint64_t m = variable_mask(t.n(), i);
    if ((t.bits() & ~m) == 0) {
      out.push_back({i, true});
    } else if ((t.bits() & m) == 0) {
      out.push_back({i, false});
    }
  }
  return out;
}

std::vector<AssociatedPair> associated_pairs(const TruthTable& t) {
  if (!t.satisfiable()) throw DomainError("trivial function: associated pairs undefined");
  std::vector<AssociatedPair> out;
  const std::uint64_t u = universe_mask(t.n());
  for (int i = 0; i < t.n(); ++i) {
    for (int j = i + 1; j < t.n(); ++j) {
      const std::uint64_t differ = variable_mask(t.n(), i) ^ variable_mask(t.n(), j);
      if ((t.bits() & differ) == 0) out.push_back({i, j, true});
      if ((t.bits() & ~differ & u) == 0) out.push_back({i, j, false});
    }
  }
  return out;
}

bool is_elementary(const TruthTable& t) {
  return t.satisfiable() && spine(t).empty() && associated_pairs(t).empty();
}

bool is_median_closed(const TruthTable& t) {
  std::vector<std::uint32_t> members;
  for (std::uint64_t b = t.bits(); b != 0; b &= b - 1) {
    members.push_back(static_cast<std::uint32_t>(std::countr_zero(b)));
  }
  const std::size_t k = members.size();
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      for (std::size_t c = b + 1; c < k; ++c) {
        const std::uint32_t x = members[a], y = members[b], z = members[c];
        if (!t.contains((x & y) | (y & z) | (x & z))) return false;
      }
    }
  }
  return true;
}

bool is_2sat_definable(const TruthTable& t, bool allow_empty) {
  if (t.n() < 2) return allow_empty && t.is_all_ones();
  if (!is_median_closed(t)) return false;
  return allow_empty || !t.is_all_ones();
}

TruthTable clause_hull(const TruthTable& t) {
  std::uint64_t hull = universe_mask(t.n());
  for (const Clause& c : all_clauses(t.n())) {
    const std::uint64_t m = clause_mask(t.n(), c);
    if ((t.bits() & ~m) == 0) hull &= m;
  }
  return TruthTable(t.n(), hull);
}

Formula hull_formula(const TruthTable& t) {
  Formula f(t.n());
  for (const Clause& c : all_clauses(t.n())) {
    if ((t.bits() & ~clause_mask(t.n(), c)) == 0) f.add(c);
  }
  return f;
}

Formula parse_formula(std::string_view text) {
  const auto lines = text::tokenize(text);
  const int n = text::parse_header(lines, kMaxVariables);
  Formula f(n);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& line = lines[k];
    if (line.tokens.size() != 2) throw ParseError(line.number, "expected two signed literals");
    const int a = text::parse_int(line.tokens[0], line.number);
    const int b = text::parse_int(line.tokens[1], line.number);
    if (a == 0 || b == 0 || std::abs(a) > n || std::abs(b) > n) {
      throw ParseError(line.number, "literal out of range for n=" + std::to_string(n));
    }
    if (std::abs(a) == std::abs(b)) {
      throw ParseError(line.number, "clause literals must belong to different variables");
    }
    f.add(Clause(Literal::from_signed(a), Literal::from_signed(b)));
  }
  return f;
}

std::string format_formula(const Formula& f) {
  std::ostringstream out;
  out << "n " << f.n() << '\n';
  for (const Clause& c : f.clauses()) {
    out << c.first().to_signed() << ' ' << c.second().to_signed() << '\n';
  }
  return out.str();
}

}  // namespace obtf
