#include <doctest.h>

#include <set>

#include "obtf/boolfn.hpp"
#include "obtf/error.hpp"

using namespace obtf;

namespace {

// Assignment index from a string read x_1 first, so "10" is x_1 = 1, x_2 = 0.
std::uint32_t a(const char* s) {
  std::uint32_t idx = 0;
  for (int i = 0; s[i] != '\0'; ++i) {
    if (s[i] == '1') idx |= 1U << i;
  }
  return idx;
}

TruthTable table(int n, std::initializer_list<const char*> rows) {
  std::uint64_t bits = 0;
  for (const char* r : rows) bits |= std::uint64_t{1} << a(r);
  return TruthTable(n, bits);
}

Clause cl(int x, int y) { return Clause(Literal::from_signed(x), Literal::from_signed(y)); }

// Every table reachable by some clause subset (the flat oracle).
std::set<std::uint64_t> swept_tables(int n, bool allow_empty) {
  const std::vector<Clause> clauses = all_clauses(n);
  std::vector<std::uint64_t> masks;
  for (const Clause& c : clauses) masks.push_back(clause_mask(n, c));
  std::set<std::uint64_t> out;
  const std::uint64_t subsets = std::uint64_t{1} << clauses.size();
  for (std::uint64_t s = allow_empty ? 0 : 1; s < subsets; ++s) {
    std::uint64_t bits = universe_mask(n);
    for (std::size_t k = 0; k < clauses.size(); ++k) {
      if ((s >> k) & 1U) bits &= masks[k];
    }
    out.insert(bits);
  }
  return out;
}

TruthTable flip_variable(const TruthTable& t, int var) {
  std::uint64_t bits = 0;
  for (std::uint32_t x = 0; x < (1U << t.n()); ++x) {
    if (t.contains(x)) bits |= std::uint64_t{1} << (x ^ (1U << var));
  }
  return TruthTable(t.n(), bits);
}

TruthTable swap_variables(const TruthTable& t, int i, int j) {
  std::uint64_t bits = 0;
  for (std::uint32_t x = 0; x < (1U << t.n()); ++x) {
    if (!t.contains(x)) continue;
    std::uint32_t y = x & ~((1U << i) | (1U << j));
    y |= ((x >> i) & 1U) << j;
    y |= ((x >> j) & 1U) << i;
    bits |= std::uint64_t{1} << y;
  }
  return TruthTable(t.n(), bits);
}

}  // namespace

TEST_CASE("truth_table of small formulas") {
  Formula one(2, {cl(1, 2)});
  CHECK(truth_table(one) == table(2, {"01", "10", "11"}));
  CHECK(truth_table(one).size() == 3);
  CHECK(truth_table(Formula(2)).is_all_ones());
  Formula all(2, {cl(1, 2), cl(-1, 2), cl(1, -2), cl(-1, -2)});
  CHECK(truth_table(all).bits() == 0);
}

TEST_CASE("clause construction") {
  CHECK_THROWS_AS(cl(1, -1), DomainError);
  CHECK(cl(2, 1) == cl(1, 2));
  Formula f(3, {cl(1, 2), cl(2, 1), cl(-3, 1)});
  CHECK(f.clauses().size() == 2);
  CHECK(all_clauses(3).size() == 12);
}

TEST_CASE("spine") {
  CHECK(spine(table(2, {"11"})) == std::vector<SpineEntry>{{0, true}, {1, true}});
  CHECK(spine(table(2, {"01", "10", "11"})).empty());
  CHECK(spine(table(2, {"10", "11"})) == std::vector<SpineEntry>{{0, true}});
  CHECK_THROWS_WITH_AS(spine(TruthTable::none(2)), "trivial function: spine undefined", DomainError);
}

TEST_CASE("associated pairs") {
  CHECK(associated_pairs(table(2, {"00", "11"})) == std::vector<AssociatedPair>{{0, 1, true}});
  CHECK(associated_pairs(table(2, {"01", "10"})) == std::vector<AssociatedPair>{{0, 1, false}});
  CHECK(associated_pairs(table(2, {"01", "10", "11"})).empty());
  CHECK_THROWS_AS(associated_pairs(TruthTable::none(3)), DomainError);
}

TEST_CASE("elementary") {
  CHECK(is_elementary(table(2, {"01", "10", "11"})));
  CHECK_FALSE(is_elementary(table(2, {"00", "11"})));
  CHECK(is_elementary(TruthTable::all_ones(1)));
  CHECK_FALSE(is_elementary(TruthTable::none(2)));
}

TEST_CASE("median closure") {
  CHECK(is_median_closed(table(2, {"01", "10", "11"})));
  CHECK(is_median_closed(table(3, {"001", "110"})));
  CHECK_FALSE(is_median_closed(table(3, {"001", "010", "100"})));
  CHECK(is_median_closed(TruthTable::none(3)));
}

TEST_CASE("2-SAT definability examples") {
  CHECK(is_2sat_definable(table(2, {"01", "10", "11"}), false));
  CHECK_FALSE(is_2sat_definable(TruthTable::all_ones(2), false));
  CHECK(is_2sat_definable(TruthTable::all_ones(2), true));
  CHECK_FALSE(is_2sat_definable(TruthTable::all_ones(1), false));
}

TEST_CASE("definability matches the clause-subset sweep") {
  for (int n = 1; n <= 3; ++n) {
    for (bool allow_empty : {false, true}) {
      const std::set<std::uint64_t> swept = swept_tables(n, allow_empty);
      const std::uint64_t tables = std::uint64_t{1} << (1U << n);
      std::size_t definable = 0;
      for (std::uint64_t bits = 0; bits < tables; ++bits) {
        const bool expected = swept.count(bits) > 0;
        CHECK(is_2sat_definable(TruthTable(n, bits), allow_empty) == expected);
        definable += expected ? 1 : 0;
      }
      CHECK(definable == swept.size());
    }
  }
}

TEST_CASE("median-closed sets are exactly clause-hull fixed points") {
  for (int n = 2; n <= 4; ++n) {
    const std::uint64_t tables = n == 4 ? (std::uint64_t{1} << 16) : (std::uint64_t{1} << (1U << n));
    for (std::uint64_t bits = 0; bits < tables; ++bits) {
      const TruthTable t(n, bits);
      const bool fixed = clause_hull(t) == t;
      if (is_median_closed(t) != fixed) {
        FAIL_CHECK("n=" << n << " bits=" << bits);
      }
    }
  }
}

TEST_CASE("hull formula realizes definable tables") {
  for (std::uint64_t bits = 0; bits < 256; ++bits) {
    const TruthTable t(3, bits);
    if (is_2sat_definable(t, true)) CHECK(truth_table(hull_formula(t)) == t);
  }
}

TEST_CASE("elementarity is invariant under flips and permutations") {
  for (std::uint64_t bits = 0; bits < 256; ++bits) {
    const TruthTable t(3, bits);
    const bool e = is_elementary(t);
    for (int v = 0; v < 3; ++v) CHECK(is_elementary(flip_variable(t, v)) == e);
    CHECK(is_elementary(swap_variables(t, 0, 2)) == e);
    CHECK(is_elementary(swap_variables(t, 1, 2)) == e);
  }
}

TEST_CASE("adding clauses never grows the table") {
  const std::vector<Clause> clauses = all_clauses(3);
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << clauses.size()); s += 37) {
    Formula f(3);
    for (std::size_t k = 0; k < clauses.size(); ++k) {
      if ((s >> k) & 1U) f.add(clauses[k]);
    }
    for (const Clause& c : clauses) {
      Formula g = f;
      g.add(c);
      const std::uint64_t before = truth_table(f).bits();
      const std::uint64_t after = truth_table(g).bits();
      CHECK((after & ~before) == 0);
    }
  }
}

TEST_CASE("formula text round trip") {
  const Formula f = parse_formula("# sample\nn 3\n\n1 -2\n-3 2  # trailing\n");
  CHECK(f.n() == 3);
  CHECK(f.clauses().size() == 2);
  CHECK(parse_formula(format_formula(f)) == f);
  CHECK_THROWS_AS(parse_formula("1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_formula("n 2\n1 3\n"), ParseError);
  CHECK_THROWS_AS(parse_formula("n 2\n1 -1\n"), ParseError);
  CHECK_THROWS_AS(parse_formula("n 9\n"), ParseError);
}
