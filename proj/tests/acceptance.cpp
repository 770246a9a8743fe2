// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (0 on success).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "obtf/census.hpp"
#include "obtf/cgraph.hpp"
#include "obtf/cli.hpp"
#include "obtf/litposet.hpp"
#include "obtf/verify.hpp"

using namespace obtf;

namespace {

// Runtime limits in seconds.
constexpr double kBaselineLimit = 1.0;
constexpr double kOracleLimit = 600.0;
constexpr double kTriangleBoundLimit = 1800.0;

constexpr Convention t0 = Convention::kAllowEmpty;
constexpr Convention t1 = Convention::kNonEmpty;

struct Outcome {
  bool passed;
  std::string detail;
};

class Collector {
 public:
  explicit Collector(std::ostream& out) : out_(out) {}

  std::ostream& out() { return out_; }

  void mismatch(const std::string& what) {
    if (first_.empty()) first_ = what;
    ++failures_;
  }
  void expect(bool ok, const std::string& what) {
    if (!ok) mismatch(what);
  }
  Outcome finish(std::string detail) const {
    if (failures_ > 0) detail += "; " + std::to_string(failures_) + " mismatch(es), first: " + first_;
    return {failures_ == 0, detail};
  }

 private:
  std::ostream& out_;
  std::size_t failures_ = 0;
  std::string first_;
};

std::uint64_t graph_count(int n) {
  std::uint64_t c = 1;
  for (int k = 0; k < pair_count(n); ++k) c *= 3;
  return c;
}

std::string eq(std::uint64_t got, std::uint64_t want) {
  return std::to_string(got) + (got == want ? " == " : " != ") + std::to_string(want);
}

// |P(2)| by testing every relation on the four literals of two variables.
std::uint64_t pn2_by_relation_sweep() {
  std::uint64_t count = 0;
  for (std::uint32_t s = 0; s < (1U << 16); ++s) {
    LiteralRows rows{};
    for (int u = 0; u < 4; ++u) rows[u] = static_cast<std::uint16_t>((s >> (4 * u)) & 0xF);
    LiteralRows closed = rows;
    close_transitively(closed, 4);
    if (closed == rows && is_pn_member(LiteralPoset(2, rows))) ++count;
  }
  return count;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

// 1. Baseline values, each confirmed by its oracle, in under a second.
Outcome baseline(Collector& c) {
  const auto start = std::chrono::steady_clock::now();
  struct Expect {
    Quantity q;
    int n;
    std::optional<Convention> conv;
    std::uint64_t value;
  };
  const std::vector<Expect> table{
      {Quantity::kG, 2, t1, 15}, {Quantity::kG, 2, t0, 16}, {Quantity::kH, 2, t1, 4},
      {Quantity::kPn, 2, std::nullopt, 5}, {Quantity::kF, 2, std::nullopt, 3},
      {Quantity::kB, 2, std::nullopt, 3}, {Quantity::kF, 3, std::nullopt, 23},
      {Quantity::kB, 3, std::nullopt, 23},
  };
  for (const Expect& e : table) {
    const std::uint64_t fast = compute(e.q, e.n, e.conv, default_method(e.q)).value;
    const std::uint64_t oracle = compute(e.q, e.n, e.conv, oracle_method(e.q)).value;
    const std::string name = std::string(to_string(e.q)) + "(" + std::to_string(e.n) + ")";
    c.expect(fast == e.value, name + " = " + eq(fast, e.value));
    c.expect(oracle == e.value, name + " oracle = " + eq(oracle, e.value));
  }
  const std::uint64_t swept = pn2_by_relation_sweep();
  c.expect(swept == 5, "|P(2)| by relation sweep = " + eq(swept, 5));
  const double t = seconds_since(start);
  c.expect(t < kBaselineLimit, "runtime " + seconds(t) + " over limit");
  return c.finish(std::to_string(table.size()) + " values exact, oracle-confirmed, " + seconds(t));
}

// 2. Fast engines equal flat-sweep oracles on the overlap ranges.
Outcome oracle_equivalence(Collector& c) {
  const auto start = std::chrono::steady_clock::now();
  int compared = 0;
  auto pair = [&](Quantity q, int n, std::optional<Convention> conv) {
    const std::uint64_t fast = compute(q, n, conv, default_method(q)).value;
    const std::uint64_t oracle = compute(q, n, conv, oracle_method(q)).value;
    c.expect(fast == oracle, std::string(to_string(q)) + "(" + std::to_string(n) + ") " + eq(fast, oracle));
    ++compared;
  };
  for (int n = 0; n <= 4; ++n) {
    for (Convention conv : {t0, t1}) {
      pair(Quantity::kG, n, conv);
      pair(Quantity::kH, n, conv);
    }
  }
  for (int n = 0; n <= 5; ++n) {
    pair(Quantity::kF, n, std::nullopt);
    pair(Quantity::kB, n, std::nullopt);
  }
  const double t = seconds_since(start);
  c.expect(t < kOracleLimit, "runtime " + seconds(t) + " over limit");
  return c.finish(std::to_string(compared) + " engine/oracle pairs equal, " + seconds(t));
}

// 3. G(n) > 2^n (2^C(n,2) - 1) for n = 2, 3, 4, both conventions.
Outcome g_lower_bound_check(Collector& c) {
  std::ostringstream d;
  for (int n = 2; n <= 4; ++n) {
    for (Convention conv : {t0, t1}) {
      const std::uint64_t g = count_functions(n, conv).value;
      const std::uint64_t bound = g_lower_bound(n);
      c.expect(g > bound, "G(" + std::to_string(n) + ")/" + std::string(to_string(conv)) + " = " +
                              std::to_string(g) + " <= " + std::to_string(bound));
      if (conv == t1) d << (n > 2 ? ", " : "") << "n=" << n << ": " << g << " > " << bound;
    }
  }
  return c.finish(d.str() + " (t1 shown; t0 is one larger)");
}

// 4. H(n) <= G(n) <= 1 + sum_k H(n-k) C(n,k) (2n-2k+2)^k for n <= 4 under t0.
Outcome inequality_chain(Collector& c) {
  std::vector<std::uint64_t> h;
  std::ostringstream d;
  for (int n = 0; n <= 4; ++n) {
    h.push_back(count_elementary(n, t0).value);
    const std::uint64_t g = count_functions(n, t0).value;
    const std::uint64_t upper = inequality_chain_upper(n, h);
    c.expect(h[n] <= g && g <= upper, "n=" + std::to_string(n));
    d << (n ? ", " : "") << h[n] << "<=" << g << "<=" << upper;
  }
  return c.finish("t0, n=0..4: " + d.str());
}

// 5. |P(n)| = H(n) under t0 for n = 1, 2, 3 and the round trip on P(3).
Outcome bijection(Collector& c) {
  for (int n = 1; n <= 3; ++n) {
    const std::uint64_t pn = count_pn(n).value;
    const std::uint64_t h = count_elementary(n, t0).value;
    c.expect(pn == h, "n=" + std::to_string(n) + ": |P| " + eq(pn, h));
  }
  const std::vector<LiteralPoset> pn3 = collect_pn(3);
  for (const LiteralPoset& p : pn3) {
    const TruthTable t = poset_to_function(p);
    if (!is_elementary(t)) {
      c.mismatch("non-elementary image of\n" + format_poset(p));
      continue;
    }
    c.expect(implication_poset(hull_formula(t)) == p, "round trip breaks at\n" + format_poset(p));
  }
  return c.finish("counts equal for n=1..3; round trip identity on all " + std::to_string(pn3.size()) +
                  " posets of P(3)");
}

// 6. G(P) colors consistently, C(G(P)) is the cover graph and G(P) is OBTF, n <= 3.
Outcome poset_properties(Collector& c) {
  std::size_t total = 0;
  for (int n = 1; n <= 3; ++n) {
    for (const LiteralPoset& p : collect_pn(n)) {
      ++total;
      const auto g = cover_coloring(p);
      if (!g) {
        c.mismatch("two colors demanded at\n" + format_poset(p));
        continue;
      }
      c.expect(double_cover(*g) == cover_relations(p), "cover graph mismatch at\n" + format_poset(p));
      c.expect(is_obtf(*g), "not OBTF at\n" + format_poset(p));
    }
  }
  return c.finish("colorings consistent, cover graphs match, graphs OBTF on all " + std::to_string(total) + " posets, n=1..3");
}

// 7. |P(G)| <= 2 for blue-bipartite triangle-connected graphs, n <= 5; tally equality.
Outcome triangle_connected_bound(Collector& c) {
  const auto start = std::chrono::steady_clock::now();
  std::ostringstream d;
  for (int n = 1; n <= 5; ++n) {
    std::uint64_t graphs = 0, two = 0, below = 0, edgeless = 0;
    for (std::uint64_t code = 0; code < graph_count(n); ++code) {
      const ColoredGraph g = ColoredGraph::from_code(n, code);
      if (!is_blue_bipartite(g) || !is_triangle_connected(g)) continue;
      ++graphs;
      const std::size_t k = count_posets_of_graph(g);
      c.expect(k <= 2, "|P(G)| = " + std::to_string(k) + " at\n" + format_graph(g));
      if (g.edge_count() == 0) {
        ++edgeless;
      } else if (k == 2) {
        ++two;
      } else {
        ++below;
      }
    }
    d << (n > 1 ? "; " : "") << "n=" << n << ": " << graphs << " graphs, " << two << " with 2, " << below
      << " below 2 (edgeless " << edgeless << ")";
  }
  const double t = seconds_since(start);
  c.expect(t < kTriangleBoundLimit, "runtime " + seconds(t) + " over limit");
  return c.finish(d.str() + "; " + seconds(t));
}

// 8. |P(G)| <= 2^eta(G) <= (2n)! for every colored graph, n <= 4.
Outcome eta_bounds(Collector& c) {
  std::uint64_t total = 0;
  for (int n = 1; n <= 4; ++n) {
    const std::uint64_t limit = factorial(2 * n);
    for (std::uint64_t code = 0; code < graph_count(n); ++code) {
      const ColoredGraph g = ColoredGraph::from_code(n, code);
      const std::uint64_t bound = std::uint64_t{1} << eta(g);
      const std::uint64_t k = count_posets_of_graph(g);
      c.expect(k <= bound && bound <= limit, "bound fails at\n" + format_graph(g));
      ++total;
    }
  }
  return c.finish("all " + std::to_string(total) + " colored graphs, n=1..4");
}

// 9. check_closed_walks on every OBTF graph, n <= 5.
Outcome closed_walks(Collector& c) {
  std::uint64_t total = 0;
  for (int n = 1; n <= 5; ++n) {
    for (std::uint64_t code = 0; code < graph_count(n); ++code) {
      const ColoredGraph g = ColoredGraph::from_code(n, code);
      if (!is_obtf(g)) continue;
      ++total;
      c.expect(check_closed_walks(g), "odd non-simple walk in\n" + format_graph(g));
    }
  }
  return c.finish("all " + std::to_string(total) + " OBTF graphs, n=1..5");
}

// 10. B closed form = sweep for n <= 5, F >= B, ratio table for n <= 6.
Outcome bb_and_ratios(Collector& c) {
  for (int n = 0; n <= 5; ++n) {
    const std::uint64_t closed = count_bb(n, Method::kClosedForm).value;
    const std::uint64_t sweep = count_bb(n, Method::kColoringSweep).value;
    c.expect(closed == sweep, "B(" + std::to_string(n) + ") " + eq(closed, sweep));
  }
  c.out() << "      n   F(n)        B(n)        b(n)        F/b        B/b\n";
  for (int n = 0; n <= 6; ++n) {
    const std::uint64_t f = count_obtf(n).value;
    const std::uint64_t b = count_bb(n).value;
    c.expect(f >= b, "F(" + std::to_string(n) + ") < B(" + std::to_string(n) + ")");
    if (n == 0) continue;
    const double bn = benchmark_b(n);
    char line[128];
    std::snprintf(line, sizeof line, "      %-3d %-11llu %-11llu %-11.0f %-10.6f %-10.6f\n", n,
                  static_cast<unsigned long long>(f), static_cast<unsigned long long>(b), bn, f / bn, b / bn);
    c.out() << line;
  }
  return c.finish("closed form = sweep for n=0..5; F >= B for n=0..6; ratios above are descriptive");
}

// 11. Different worker counts give identical records and identical CLI output.
Outcome determinism(Collector& c) {
  for (Quantity q : {Quantity::kG, Quantity::kH, Quantity::kPn, Quantity::kF, Quantity::kB}) {
    for (int n = 1; n <= 5; ++n) {
      const std::optional<Convention> conv = uses_convention(q) ? std::optional<Convention>(t1) : std::nullopt;
      const CensusRecord a = compute(q, n, conv, default_method(q), {1, false});
      const CensusRecord b = compute(q, n, conv, default_method(q), {4, false});
      c.expect(a.identity() == b.identity(), a.identity() + " vs " + b.identity());
    }
  }
  auto census = [](const std::string& workers) {
    std::ostringstream out, err;
    const int code = cli::run({"census", "--quantity", "F", "--n", "1..6", "--workers", workers}, out, err);
    return std::to_string(code) + out.str();
  };
  const std::string one = census("1");
  const std::string four = census("4");
  c.expect(one == four, "census output differs between 1 and 4 workers");
  return c.finish("records for G, H, Pn, F, B at n=1..5 and CLI output identical for 1 and 4 workers");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome(Collector&)> run;
  };
  const std::vector<Criterion> criteria{
      {"baseline-values", baseline},
      {"oracle-equivalence", oracle_equivalence},
      {"g-lower-bound", g_lower_bound_check},
      {"inequality-chain", inequality_chain},
      {"pn-bijection", bijection},
      {"poset-graph-properties", poset_properties},
      {"triangle-connected-bound", triangle_connected_bound},
      {"eta-bounds", eta_bounds},
      {"closed-walks", closed_walks},
      {"bb-closed-form-and-ratios", bb_and_ratios},
      {"determinism", determinism},
  };
  int failed = 0;
  int index = 0;
  for (const Criterion& cr : criteria) {
    ++index;
    std::ostringstream extra;
    Collector collector(extra);
    Outcome o;
    try {
      o = cr.run(collector);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.passed ? 0 : 1;
    std::cout << (o.passed ? "PASS" : "FAIL") << "  " << index << ". " << cr.name << ": " << o.detail << '\n'
              << extra.str() << std::flush;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed;
}
