#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace obtf {

enum class Quantity { kG, kH, kPn, kF, kB };

/// Whether the empty formula (constant True) counts as a 2-SAT formula.
enum class Convention { kAllowEmpty, kNonEmpty };

enum class Method {
  kFormulaSweep,     // every clause subset, deduplicated tables
  kClosureSystem,    // closed sets of the clause hull (= median-closed sets)
  kGraphOrientation, // sum of |P(G)| over colored graphs
  kColoringSweep,    // all 3^C(n,2) colorings
  kPrunedDfs,        // pair-by-pair DFS pruning odd-blue triangles
  kClosedForm,       // sum over uncolored graphs of 2^(n - components)
};

std::string_view to_string(Quantity q);
std::string_view to_string(Convention c);  // "t0" / "t1"
std::string_view to_string(Method m);
Quantity parse_quantity(std::string_view s);
Convention parse_convention(std::string_view s);
Method parse_method(std::string_view s);

bool uses_convention(Quantity q);
Method default_method(Quantity q);
/// The flat-sweep oracle paired with the default engine.
Method oracle_method(Quantity q);
/// Largest n the method accepts; `big` unlocks the stretch targets.
int max_n(Quantity q, Method m, bool big);

/// One exact count.
struct CensusRecord {
  Quantity quantity;
  int n;
  std::optional<Convention> convention;
  std::uint64_t value;
  Method method;
  double wall_time;      // seconds
  std::string checksum;  // 16 hex digits over the ordered per-task partials

  /// Everything except wall_time; equal across reruns and worker counts.
  std::string identity() const;
};

nlohmann::ordered_json to_json(const CensusRecord& r);
/// Throws std::invalid_argument on missing or mistyped fields. A missing
/// checksum is accepted here and left empty.
CensusRecord record_from_json(const nlohmann::json& j);

struct EngineOptions {
  int workers = 1;
  bool big = false;
};

/// G(n): distinct tables of 2-SAT formulas.
CensusRecord count_functions(int n, Convention c, Method m = Method::kClosureSystem,
                             const EngineOptions& opts = {});
/// H(n): elementary tables among those.
CensusRecord count_elementary(int n, Convention c, Method m = Method::kClosureSystem,
                              const EngineOptions& opts = {});
/// |P(n)| via the colored-graph partition.
CensusRecord count_pn(int n, const EngineOptions& opts = {});
/// F(n): labelled OBTF graphs.
CensusRecord count_obtf(int n, Method m = Method::kPrunedDfs, const EngineOptions& opts = {});
/// B(n): labelled blue-bipartite graphs.
CensusRecord count_bb(int n, Method m = Method::kClosedForm, const EngineOptions& opts = {});

/// Dispatches on quantity. Throws ResourceError outside the method's guard and
/// std::invalid_argument for unsupported method/quantity/convention mixes.
CensusRecord compute(Quantity q, int n, std::optional<Convention> c, Method m,
                     const EngineOptions& opts = {});

/// Connected labelled graphs on k vertices, k = 0..n, by inclusion-exclusion.
std::vector<std::uint64_t> connected_graph_counts(int n);

/// b(n) = 2^(C(n+1,2) - 1).
double benchmark_b(int n);

/// Largest number of posets on m labelled points sharing one cover graph.
struct CoverMultiplicity {
  int m;
  std::uint64_t poset_count;   // all posets on m points
  std::uint64_t max_multiplicity;
  std::vector<std::pair<int, int>> witness;  // cover graph edges, 0-based, colex order
};

inline constexpr int kMaxCoverPoints = 6;

CoverMultiplicity posets_per_cover_graph(int m);

}  // namespace obtf
