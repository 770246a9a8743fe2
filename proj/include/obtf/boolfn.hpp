#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace obtf {

/// Truth tables are single 64-bit words, so at most 6 variables.
inline constexpr int kMaxVariables = 6;

/// x_var or its negation. Variables are 0-based internally; the text formats
/// use 1-based signed integers.
struct Literal {
  int var = 0;
  bool negative = false;

  constexpr Literal negated() const noexcept { return {var, !negative}; }
  /// Position among the 2n literals: x_1, ~x_1, x_2, ~x_2, ...
  constexpr int index() const noexcept { return 2 * var + (negative ? 1 : 0); }
  static constexpr Literal from_index(int idx) noexcept { return {idx / 2, (idx & 1) != 0}; }

  /// `3` -> x_3, `-3` -> ~x_3.
  static Literal from_signed(int value);
  int to_signed() const noexcept { return negative ? -(var + 1) : var + 1; }

  friend constexpr auto operator<=>(const Literal& a, const Literal& b) noexcept {
    return a.index() <=> b.index();
  }
  friend constexpr bool operator==(const Literal&, const Literal&) noexcept = default;
};

std::string to_string(Literal lit);

/// An unordered 2-clause over two distinct variables. Stored with
/// first.index() < second.index().
class Clause {
 public:
  Clause(Literal a, Literal b);

  Literal first() const noexcept { return first_; }
  Literal second() const noexcept { return second_; }

  friend auto operator<=>(const Clause&, const Clause&) = default;
  friend bool operator==(const Clause&, const Clause&) = default;

 private:
  Literal first_;
  Literal second_;
};

/// Conjunction of clauses over n variables. Clauses are kept sorted and
/// deduplicated, so equality is clause-set equality.
class Formula {
 public:
  explicit Formula(int n);
  Formula(int n, std::vector<Clause> clauses);

  int n() const noexcept { return n_; }
  const std::vector<Clause>& clauses() const noexcept { return clauses_; }
  bool empty() const noexcept { return clauses_.empty(); }

  void add(Clause c);

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  int n_;
  std::vector<Clause> clauses_;
};

/// The satisfying set of a function of n variables. Bit a is set iff the
/// assignment with x_{i+1} = (a >> i) & 1 satisfies it.
class TruthTable {
 public:
  TruthTable(int n, std::uint64_t bits);

  static TruthTable all_ones(int n);
  static TruthTable none(int n) { return TruthTable(n, 0); }

  int n() const noexcept { return n_; }
  std::uint64_t bits() const noexcept { return bits_; }
  bool contains(std::uint32_t assignment) const noexcept { return (bits_ >> assignment) & 1U; }
  int size() const noexcept;
  bool satisfiable() const noexcept { return bits_ != 0; }
  bool is_all_ones() const noexcept;

  friend bool operator==(const TruthTable&, const TruthTable&) = default;
  friend auto operator<=>(const TruthTable&, const TruthTable&) = default;

 private:
  int n_;
  std::uint64_t bits_;
};

/// Mask of the 2^n assignments.
std::uint64_t universe_mask(int n);
/// Assignments with x_{var+1} true.
std::uint64_t variable_mask(int n, int var);
/// Assignments making `lit` true.
std::uint64_t literal_mask(int n, Literal lit);
/// Assignments satisfying the clause.
std::uint64_t clause_mask(int n, const Clause& c);

/// Every clause over n variables, in sorted order (4 * C(n,2) of them).
std::vector<Clause> all_clauses(int n);

TruthTable truth_table(const Formula& f);

struct SpineEntry {
  int var;
  bool value;
  friend bool operator==(const SpineEntry&, const SpineEntry&) = default;
};

/// Variables constant over all satisfying assignments. Throws DomainError on
/// an unsatisfiable table.
std::vector<SpineEntry> spine(const TruthTable& t);

struct AssociatedPair {
  int i;
  int j;  // i < j
  bool equal;  // x_i <=> x_j when true, x_i <=> ~x_j otherwise
  friend bool operator==(const AssociatedPair&, const AssociatedPair&) = default;
};

/// Throws DomainError on an unsatisfiable table.
std::vector<AssociatedPair> associated_pairs(const TruthTable& t);

/// Satisfiable, empty spine and no associated pairs. Unsatisfiable tables are
/// never elementary.
bool is_elementary(const TruthTable& t);

/// Closed under coordinatewise majority of any three members.
bool is_median_closed(const TruthTable& t);

/// Whether some formula (the empty one only when allow_empty) has table t.
bool is_2sat_definable(const TruthTable& t, bool allow_empty);

/// Intersection of the satisfying sets of all clauses that t satisfies: the
/// smallest 2-CNF-definable superset of t. Returns the all-ones table when
/// n < 2 (there are no clauses).
TruthTable clause_hull(const TruthTable& t);

/// The formula made of every clause t satisfies. Realizes t whenever t is
/// 2-SAT definable with allow_empty.
Formula hull_formula(const TruthTable& t);

/// Text format: `n <int>` header, then one clause per line as two signed
/// integers. Blank lines and `#` comments are ignored.
Formula parse_formula(std::string_view text);
std::string format_formula(const Formula& f);

}  // namespace obtf
