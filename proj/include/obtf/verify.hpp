#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "obtf/census.hpp"
#include "obtf/cgraph.hpp"

namespace obtf {

/// Predicates the suite consults, replaceable so mutation tests can check that
/// a broken predicate is caught.
struct VerifyHooks {
  std::function<bool(const ColoredGraph&)> is_obtf = [](const ColoredGraph& g) { return obtf::is_obtf(g); };
};

struct VerifyOptions {
  int n_min = 1;
  int n_max = 3;
  int workers = 1;
  std::uint64_t seed = 20240611;
  bool big = false;          // required for n_max >= 5
  int ratio_n_max = 6;       // descriptive ratio table covers 1..ratio_n_max
  VerifyHooks hooks;
};

struct CheckResult {
  std::string name;
  int n;
  bool passed;
  std::string detail;
  std::string witness;  // colored-graph or poset text format, empty on pass
};

struct RatioRow {
  int n;
  std::uint64_t f;
  std::uint64_t b;
  double b_n;                        // 2^(C(n+1,2) - 1)
  std::optional<std::uint64_t> g;    // G(n), t0, where computable
  double f_ratio() const { return static_cast<double>(f) / b_n; }
  double b_ratio() const { return static_cast<double>(b) / b_n; }
  std::optional<double> g_ratio() const;  // G(n) / 2^C(n+1,2)
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  std::vector<std::string> notes;  // descriptive findings with no pass/fail
  std::vector<RatioRow> ratios;
  bool all_passed() const;
};

/// Largest n the suite accepts without and with `big`.
inline constexpr int kVerifyDefaultMax = 4;
inline constexpr int kVerifyBigMax = 5;

/// Runs every finite check over n_min..n_max. Throws ResourceError when the
/// range exceeds the guard.
VerifyReport verify_identities(const VerifyOptions& opts);

/// Pure arithmetic pieces, exposed for tests.
std::uint64_t g_lower_bound(int n);                        // 2^n (2^C(n,2) - 1)
std::uint64_t inequality_chain_upper(int n, const std::vector<std::uint64_t>& h);  // h[k] = H(k)
std::uint64_t factorial(int n);

}  // namespace obtf
