#include "obtf/census.hpp"

#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "obtf/boolfn.hpp"
#include "obtf/cgraph.hpp"
#include "obtf/error.hpp"
#include "obtf/parallel.hpp"

namespace obtf {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

void fnv_mix(std::uint64_t& h, std::string_view bytes) {
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= kFnvPrime;
  }
}

void fnv_mix(std::uint64_t& h, std::uint64_t word) {
  for (int i = 0; i < 8; ++i) {
    h ^= (word >> (8 * i)) & 0xFF;
    h *= kFnvPrime;
  }
}

std::uint64_t pow3(int k) {
  std::uint64_t p = 1;
  while (k-- > 0) p *= 3;
  return p;
}

std::string record_key(Quantity q, int n, std::optional<Convention> c, Method m) {
  std::string key(to_string(q));
  key += '|' + std::to_string(n) + '|';
  key += c ? std::string(to_string(*c)) : std::string("-");
  key += '|';
  key += to_string(m);
  return key;
}

CensusRecord finish(Quantity q, int n, std::optional<Convention> c, Method m, std::uint64_t value,
                    const std::vector<std::uint64_t>& partials, Clock::time_point start) {
  std::uint64_t h = kFnvOffset;
  fnv_mix(h, record_key(q, n, c, m));
  fnv_mix(h, static_cast<std::uint64_t>(partials.size()));
  for (std::uint64_t p : partials) fnv_mix(h, p);
  std::ostringstream hex;
  hex << std::hex << std::setw(16) << std::setfill('0') << h;
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return CensusRecord{q, n, c, value, m, seconds, hex.str()};
}

std::uint64_t sum(const std::vector<std::uint64_t>& v) {
  std::uint64_t s = 0;
  for (std::uint64_t x : v) s += x;
  return s;
}

void guard(Quantity q, int n, Method m, bool big) {
  if (n < 0) throw DomainError("n must be non-negative");
  const int cap = max_n(q, m, big);
  if (n > cap) {
    std::string msg = std::string(to_string(q)) + "(" + std::to_string(n) + ") via " +
                      std::string(to_string(m)) + " exceeds the guard n <= " + std::to_string(cap);
    if (!big && max_n(q, m, true) > cap) msg += " (use --big)";
    throw ResourceError(msg);
  }
}

// ---- 2-SAT function tables -------------------------------------------------

struct FunctionTally {
  std::uint64_t functions = 0;
  std::uint64_t elementary = 0;
};

struct FunctionCount {
  std::vector<std::uint64_t> function_partials;
  std::vector<std::uint64_t> elementary_partials;
};

FunctionCount sweep_formulas(int n, Convention c) {
  const std::vector<Clause> clauses = all_clauses(n);
  std::vector<std::uint64_t> masks;
  for (const Clause& cl : clauses) masks.push_back(clause_mask(n, cl));
  const std::uint64_t universe = universe_mask(n);
  const std::size_t table_space = std::size_t{1} << (std::size_t{1} << n);
  std::vector<std::uint8_t> by_nonempty(table_space, 0);

  // Every non-empty clause subset, as the AND of its masks.
  auto visit = [&](auto&& self, std::size_t k, std::uint64_t bits, bool any) -> void {
    if (k == masks.size()) {
      if (any) by_nonempty[bits] = 1;
      return;
    }
    self(self, k + 1, bits, any);
    self(self, k + 1, bits & masks[k], true);
  };
  visit(visit, 0, universe, false);
  if (c == Convention::kAllowEmpty) by_nonempty[universe] = 1;

  FunctionTally tally;
  for (std::size_t bits = 0; bits < table_space; ++bits) {
    if (!by_nonempty[bits]) continue;
    ++tally.functions;
    if (is_elementary(TruthTable(n, bits))) ++tally.elementary;
  }
  return {{tally.functions}, {tally.elementary}};
}

// Close-by-One over the closure operator S -> clause hull of S. Its closed
// sets are exactly the median-closed subsets of {0,1}^n for n >= 2.
class HullClosure {
 public:
  explicit HullClosure(int n) : n_(n), size_(1U << n) {
    for (const Clause& c : all_clauses(n)) masks_.push_back(clause_mask(n, c));
  }

  std::uint64_t close(std::uint64_t s) const {
    std::uint64_t hull = universe_mask(n_);
    for (std::uint64_t m : masks_) {
      if ((s & ~m) == 0) hull &= m;
    }
    return hull;
  }

  template <typename Visit>
  void descend(std::uint64_t closed, unsigned after, Visit& visit) const {
    visit(closed);
    for (unsigned j = after + 1; j < size_; ++j) {
      const std::uint64_t bit = std::uint64_t{1} << j;
      if (closed & bit) continue;
      const std::uint64_t next = close(closed | bit);
      if (((next ^ closed) & (bit - 1)) == 0) descend(next, j, visit);
    }
  }

  unsigned size() const { return size_; }

 private:
  int n_;
  unsigned size_;
  std::vector<std::uint64_t> masks_;
};

FunctionCount closure_system(int n, Convention c, int workers) {
  if (n < 2) {
    // Only constant True is definable, and only by the empty formula.
    const std::uint64_t v = c == Convention::kAllowEmpty ? 1 : 0;
    return {{v}, {v}};
  }
  const HullClosure hull(n);
  const std::uint64_t universe = universe_mask(n);
  auto tally_set = [&](FunctionTally& t, std::uint64_t bits) {
    if (c == Convention::kNonEmpty && bits == universe) return;
    ++t.functions;
    if (is_elementary(TruthTable(n, bits))) ++t.elementary;
  };

  // Task 0 is the root (the hull of the empty set); task j + 1 is the
  // subtree under the canonical child generated by assignment j.
  auto task = [&](std::size_t t) {
    FunctionTally tally;
    auto visit = [&](std::uint64_t bits) { tally_set(tally, bits); };
    const std::uint64_t root = hull.close(0);
    if (t == 0) {
      visit(root);
      return tally;
    }
    const unsigned j = static_cast<unsigned>(t - 1);
    const std::uint64_t bit = std::uint64_t{1} << j;
    if (root & bit) return tally;
    const std::uint64_t child = hull.close(root | bit);
    if (((child ^ root) & (bit - 1)) == 0) hull.descend(child, j, visit);
    return tally;
  };
  const auto tallies = parallel_map<FunctionTally>(hull.size() + 1, workers, task);
  FunctionCount out;
  for (const auto& t : tallies) {
    out.function_partials.push_back(t.functions);
    out.elementary_partials.push_back(t.elementary);
  }
  return out;
}

FunctionCount function_census(int n, Convention c, Method m, int workers) {
  switch (m) {
    case Method::kFormulaSweep:
      return sweep_formulas(n, c);
    case Method::kClosureSystem:
      return closure_system(n, c, workers);
    default:
      throw std::invalid_argument("G/H support formula-sweep and closure-system only");
  }
}

// ---- colored graph sweeps --------------------------------------------------

// Splits the 3^C(n,2) graph codes into a fixed number of residue classes.
template <typename PerGraph>
std::vector<std::uint64_t> sweep_graphs(int n, int workers, PerGraph per_graph) {
  const std::uint64_t graphs = pow3(pair_count(n));
  const std::uint64_t tasks = pow3(std::min(pair_count(n), 4));
  return parallel_map<std::uint64_t>(tasks, workers, [&](std::size_t t) {
    std::uint64_t total = 0;
    for (std::uint64_t code = t; code < graphs; code += tasks) {
      total += per_graph(ColoredGraph::from_code(n, code));
    }
    return total;
  });
}

// Pair-by-pair DFS in colex order. When pair (i, j) is assigned every triangle
// {k, i, j} with k < i is complete, so odd-blue triangles are rejected as soon
// as they close. Removing an edge never creates an odd-blue triangle, so no
// OBTF graph lies below a rejected prefix.
class ObtfSearch {
 public:
  explicit ObtfSearch(int n) : pairs_(pair_count(n)) {
    for (int k = 0; k < pairs_; ++k) order_.push_back(pair_at(k));
  }

  int pairs() const { return pairs_; }

  // Applies a colex prefix given as base-3 digits; false if it is not OBTF.
  bool seed(std::uint64_t code, int length) {
    for (int k = 0; k < length; ++k) {
      const auto color = static_cast<EdgeColor>(code % 3);
      code /= 3;
      const auto [i, j] = order_[k];
      if (color == EdgeColor::kAbsent) continue;
      const auto [common, mismatch] = closing(i, j);
      if (color == EdgeColor::kRed ? mismatch != 0 : mismatch != common) return false;
      set(i, j, color);
    }
    return true;
  }

  std::uint64_t count(int k) {
    if (k == pairs_) return 1;
    const auto [i, j] = order_[k];
    const auto [common, mismatch] = closing(i, j);
    const bool red_ok = mismatch == 0;
    const bool blue_ok = mismatch == common;
    if (k + 1 == pairs_) return 1 + (red_ok ? 1 : 0) + (blue_ok ? 1 : 0);
    std::uint64_t total = count(k + 1);
    if (red_ok) {
      set(i, j, EdgeColor::kRed);
      total += count(k + 1);
      clear(i, j);
    }
    if (blue_ok) {
      set(i, j, EdgeColor::kBlue);
      total += count(k + 1);
      clear(i, j);
    }
    return total;
  }

 private:
  struct Closing {
    std::uint16_t common;
    std::uint16_t mismatch;  // k where blue(k,i) != blue(k,j)
  };

  Closing closing(int i, int j) const {
    const auto below_i = static_cast<std::uint16_t>((1U << i) - 1);
    const std::uint16_t common = (red_[i] | blue_[i]) & (red_[j] | blue_[j]) & below_i;
    return {common, static_cast<std::uint16_t>((blue_[i] ^ blue_[j]) & common)};
  }

  void set(int i, int j, EdgeColor c) {
    auto& rows = c == EdgeColor::kRed ? red_ : blue_;
    rows[i] |= static_cast<std::uint16_t>(1U << j);
    rows[j] |= static_cast<std::uint16_t>(1U << i);
  }

  void clear(int i, int j) {
    const auto keep_i = static_cast<std::uint16_t>(~(1U << i));
    const auto keep_j = static_cast<std::uint16_t>(~(1U << j));
    red_[i] &= keep_j;
    blue_[i] &= keep_j;
    red_[j] &= keep_i;
    blue_[j] &= keep_i;
  }

  int pairs_;
  std::vector<VertexPair> order_;
  std::array<std::uint16_t, kMaxVertices> red_{};
  std::array<std::uint16_t, kMaxVertices> blue_{};
};

std::vector<std::uint64_t> obtf_dfs(int n, int workers) {
  const int prefix = std::min(ObtfSearch(n).pairs(), 7);
  return parallel_map<std::uint64_t>(pow3(prefix), workers, [&](std::size_t t) -> std::uint64_t {
    ObtfSearch search(n);
    if (!search.seed(t, prefix)) return 0;
    return search.count(prefix);
  });
}

std::vector<std::uint64_t> bb_closed_form(int n) {
  // A_m = sum over labelled graphs on m vertices of prod over components of
  // 2^(size - 1), built one component (the one holding the last vertex) at a time.
  const std::vector<std::uint64_t> connected = connected_graph_counts(n);
  std::vector<std::uint64_t> binom_row(n + 1, 0);
  std::vector<std::uint64_t> a(n + 1, 0);
  a[0] = 1;
  for (int m = 1; m <= n; ++m) {
    std::uint64_t total = 0;
    std::uint64_t choose = 1;  // C(m-1, k-1)
    for (int k = 1; k <= m; ++k) {
      total += choose * connected[k] * (std::uint64_t{1} << (k - 1)) * a[m - k];
      choose = choose * (m - k) / k;
    }
    a[m] = total;
  }
  return a;
}

}  // namespace

std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::kG:
      return "G";
    case Quantity::kH:
      return "H";
    case Quantity::kPn:
      return "Pn";
    case Quantity::kF:
      return "F";
    case Quantity::kB:
      return "B";
  }
  return "?";
}

std::string_view to_string(Convention c) { return c == Convention::kAllowEmpty ? "t0" : "t1"; }

std::string_view to_string(Method m) {
  switch (m) {
    case Method::kFormulaSweep:
      return "formula-sweep";
    case Method::kClosureSystem:
      return "closure-system";
    case Method::kGraphOrientation:
      return "graph-orientation";
    case Method::kColoringSweep:
      return "coloring-sweep";
    case Method::kPrunedDfs:
      return "pruned-dfs";
    case Method::kClosedForm:
      return "closed-form";
  }
  return "?";
}

Quantity parse_quantity(std::string_view s) {
  for (Quantity q : {Quantity::kG, Quantity::kH, Quantity::kPn, Quantity::kF, Quantity::kB}) {
    if (s == to_string(q)) return q;
  }
  throw std::invalid_argument("unknown quantity '" + std::string(s) + "' (G, H, Pn, F, B)");
}

Convention parse_convention(std::string_view s) {
  if (s == "t0") return Convention::kAllowEmpty;
  if (s == "t1") return Convention::kNonEmpty;
  throw std::invalid_argument("unknown convention '" + std::string(s) + "' (t0, t1)");
}

Method parse_method(std::string_view s) {
  for (Method m : {Method::kFormulaSweep, Method::kClosureSystem, Method::kGraphOrientation,
                   Method::kColoringSweep, Method::kPrunedDfs, Method::kClosedForm}) {
    if (s == to_string(m)) return m;
  }
  throw std::invalid_argument("unknown method '" + std::string(s) + "'");
}

bool uses_convention(Quantity q) { return q == Quantity::kG || q == Quantity::kH; }

Method default_method(Quantity q) {
  switch (q) {
    case Quantity::kG:
    case Quantity::kH:
      return Method::kClosureSystem;
    case Quantity::kPn:
      return Method::kGraphOrientation;
    case Quantity::kF:
      return Method::kPrunedDfs;
    case Quantity::kB:
      return Method::kClosedForm;
  }
  return Method::kClosureSystem;
}

Method oracle_method(Quantity q) {
  switch (q) {
    case Quantity::kG:
    case Quantity::kH:
      return Method::kFormulaSweep;
    case Quantity::kPn:
      return Method::kGraphOrientation;
    default:
      return Method::kColoringSweep;
  }
}

int max_n(Quantity q, Method m, bool big) {
  switch (q) {
    case Quantity::kG:
    case Quantity::kH:
      if (m == Method::kFormulaSweep) return 4;
      if (m == Method::kClosureSystem) return 5;
      break;
    case Quantity::kPn:
      if (m == Method::kGraphOrientation) return kMaxEnumeratePn;
      break;
    case Quantity::kF:
      if (m == Method::kColoringSweep) return 5;
      if (m == Method::kPrunedDfs) return big ? 7 : 6;
      break;
    case Quantity::kB:
      if (m == Method::kColoringSweep) return 5;
      if (m == Method::kClosedForm) return 7;
      break;
  }
  throw std::invalid_argument("method " + std::string(to_string(m)) + " does not compute " +
                              std::string(to_string(q)));
}

std::string CensusRecord::identity() const {
  auto j = to_json(*this);
  j.erase("wall_time");
  return j.dump();
}

nlohmann::ordered_json to_json(const CensusRecord& r) {
  nlohmann::ordered_json j;
  j["quantity"] = to_string(r.quantity);
  j["n"] = r.n;
  if (r.convention) {
    j["convention"] = to_string(*r.convention);
  } else {
    j["convention"] = nullptr;
  }
  j["value"] = r.value;
  j["method"] = to_string(r.method);
  j["wall_time"] = r.wall_time;
  j["checksum"] = r.checksum;
  return j;
}

CensusRecord record_from_json(const nlohmann::json& j) {
  try {
    CensusRecord r{};
    r.quantity = parse_quantity(j.at("quantity").get<std::string>());
    r.n = j.at("n").get<int>();
    const auto& conv = j.at("convention");
    if (!conv.is_null()) r.convention = parse_convention(conv.get<std::string>());
    if (!j.at("value").is_number_unsigned() && !j.at("value").is_number_integer()) {
      throw std::invalid_argument("value must be an integer");
    }
    r.value = j.at("value").get<std::uint64_t>();
    r.method = parse_method(j.at("method").get<std::string>());
    r.wall_time = j.at("wall_time").get<double>();
    if (j.contains("checksum") && !j.at("checksum").is_null()) {
      r.checksum = j.at("checksum").get<std::string>();
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed census record: ") + e.what());
  }
}

CensusRecord count_functions(int n, Convention c, Method m, const EngineOptions& opts) {
  guard(Quantity::kG, n, m, opts.big);
  const auto start = Clock::now();
  const FunctionCount fc = function_census(n, c, m, opts.workers);
  return finish(Quantity::kG, n, c, m, sum(fc.function_partials), fc.function_partials, start);
}

CensusRecord count_elementary(int n, Convention c, Method m, const EngineOptions& opts) {
  guard(Quantity::kH, n, m, opts.big);
  const auto start = Clock::now();
  const FunctionCount fc = function_census(n, c, m, opts.workers);
  return finish(Quantity::kH, n, c, m, sum(fc.elementary_partials), fc.elementary_partials, start);
}

CensusRecord count_pn(int n, const EngineOptions& opts) {
  guard(Quantity::kPn, n, Method::kGraphOrientation, opts.big);
  const auto start = Clock::now();
  const auto partials = sweep_graphs(n, opts.workers, [](const ColoredGraph& g) {
    return static_cast<std::uint64_t>(count_posets_of_graph(g));
  });
  return finish(Quantity::kPn, n, std::nullopt, Method::kGraphOrientation, sum(partials), partials,
                start);
}

CensusRecord count_obtf(int n, Method m, const EngineOptions& opts) {
  guard(Quantity::kF, n, m, opts.big);
  const auto start = Clock::now();
  std::vector<std::uint64_t> partials;
  if (m == Method::kColoringSweep) {
    partials = sweep_graphs(n, opts.workers, [](const ColoredGraph& g) -> std::uint64_t { return is_obtf(g) ? 1 : 0; });
  } else {
    partials = obtf_dfs(n, opts.workers);
  }
  return finish(Quantity::kF, n, std::nullopt, m, sum(partials), partials, start);
}

CensusRecord count_bb(int n, Method m, const EngineOptions& opts) {
  guard(Quantity::kB, n, m, opts.big);
  const auto start = Clock::now();
  if (m == Method::kColoringSweep) {
    const auto partials = sweep_graphs(n, opts.workers, [](const ColoredGraph& g) -> std::uint64_t {
      return is_blue_bipartite(g) ? 1 : 0;
    });
    return finish(Quantity::kB, n, std::nullopt, m, sum(partials), partials, start);
  }
  const auto sequence = bb_closed_form(n);
  return finish(Quantity::kB, n, std::nullopt, m, sequence[n], sequence, start);
}

CensusRecord compute(Quantity q, int n, std::optional<Convention> c, Method m,
                     const EngineOptions& opts) {
  if (uses_convention(q) != c.has_value()) {
    throw std::invalid_argument(uses_convention(q) ? "G and H need a convention (t0 or t1)"
                                                   : std::string(to_string(q)) + " takes no convention");
  }
  max_n(q, m, opts.big);  // rejects method/quantity mismatches
  switch (q) {
    case Quantity::kG:
      return count_functions(n, *c, m, opts);
    case Quantity::kH:
      return count_elementary(n, *c, m, opts);
    case Quantity::kPn:
      return count_pn(n, opts);
    case Quantity::kF:
      return count_obtf(n, m, opts);
    case Quantity::kB:
      return count_bb(n, m, opts);
  }
  throw std::invalid_argument("unknown quantity");
}

std::vector<std::uint64_t> connected_graph_counts(int n) {
  if (n > 10) throw ResourceError("connected graph counts overflow 64 bits beyond n = 10");
  std::vector<std::uint64_t> conn(n + 1, 0);
  auto all_graphs = [](int k) { return std::uint64_t{1} << pair_count(k); };
  for (int m = 1; m <= n; ++m) {
    // Graphs whose vertex-1 component has k < m vertices are disconnected.
    std::uint64_t disconnected = 0;
    std::uint64_t choose = 1;  // C(m-1, k-1)
    for (int k = 1; k < m; ++k) {
      disconnected += choose * conn[k] * all_graphs(m - k);
      choose = choose * (m - k) / k;
    }
    conn[m] = all_graphs(m) - disconnected;
  }
  return conn;
}

double benchmark_b(int n) { return std::ldexp(1.0, (n + 1) * n / 2 - 1); }

CoverMultiplicity posets_per_cover_graph(int m) {
  if (m < 0 || m > kMaxCoverPoints) {
    throw ResourceError("cover-graph multiplicity limited to m <= " + std::to_string(kMaxCoverPoints));
  }
  std::array<std::uint8_t, kMaxCoverPoints> above{}, below{};
  std::vector<std::uint32_t> per_cover(std::size_t{1} << pair_count(m), 0);
  std::uint64_t total = 0;

  auto record = [&] {
    ++total;
    std::uint32_t key = 0;
    for (int u = 0; u < m; ++u) {
      std::uint8_t indirect = 0;
      for (std::uint8_t r = above[u]; r != 0; r &= r - 1) indirect |= above[std::countr_zero(r)];
      for (std::uint8_t r = above[u] & ~indirect; r != 0; r &= r - 1) {
        const int v = std::countr_zero(r);
        key |= 1U << pair_rank(std::min(u, v), std::max(u, v));
      }
    }
    ++per_cover[key];
  };

  // Element k joins with down-set `down` and up-set `up`: an order ideal and a
  // filter of the poset on [k], disjoint, with everything in `down` below
  // everything in `up`. Each labelled poset arises exactly once.
  auto extend = [&](auto&& self, int k) -> void {
    if (k == m) {
      record();
      return;
    }
    const unsigned subsets = 1U << k;
    for (unsigned down = 0; down < subsets; ++down) {
      bool ideal = true;
      for (unsigned r = down; r != 0 && ideal; r &= r - 1) ideal = (below[std::countr_zero(r)] & ~down) == 0;
      if (!ideal) continue;
      for (unsigned up = 0; up < subsets; ++up) {
        if (up & down) continue;
        bool ok = true;
        for (unsigned r = up; r != 0 && ok; r &= r - 1) ok = (above[std::countr_zero(r)] & ~up) == 0;
        for (unsigned r = down; r != 0 && ok; r &= r - 1) ok = (up & ~above[std::countr_zero(r)]) == 0;
        if (!ok) continue;
        above[k] = static_cast<std::uint8_t>(up);
        below[k] = static_cast<std::uint8_t>(down);
        for (unsigned r = down; r != 0; r &= r - 1) above[std::countr_zero(r)] |= 1U << k;
        for (unsigned r = up; r != 0; r &= r - 1) below[std::countr_zero(r)] |= 1U << k;
        self(self, k + 1);
        for (unsigned r = down; r != 0; r &= r - 1) above[std::countr_zero(r)] &= ~(1U << k);
        for (unsigned r = up; r != 0; r &= r - 1) below[std::countr_zero(r)] &= ~(1U << k);
      }
    }
    above[k] = below[k] = 0;
  };
  extend(extend, 0);

  CoverMultiplicity out{m, total, 0, {}};
  std::uint32_t best_key = 0;
  for (std::uint32_t key = 0; key < per_cover.size(); ++key) {
    if (per_cover[key] > out.max_multiplicity) {
      out.max_multiplicity = per_cover[key];
      best_key = key;
    }
  }
  for (int r = 0; r < pair_count(m); ++r) {
    if ((best_key >> r) & 1U) {
      const auto [u, v] = pair_at(r);
      out.witness.emplace_back(u, v);
    }
  }
  return out;
}

}  // namespace obtf
