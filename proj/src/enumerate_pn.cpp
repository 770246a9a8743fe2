#include <cstdint>

#include "obtf/cgraph.hpp"
#include "obtf/error.hpp"
#include "obtf/litposet.hpp"

namespace obtf {

// P(n) is partitioned by G(P), so walking every colored graph and collecting
// its orientation class visits each member once.
void enumerate_pn(int n, const std::function<void(const LiteralPoset&)>& visit) {
  if (n < 0 || n > kMaxEnumeratePn) {
    throw ResourceError("P(n) enumeration limited to n <= " + std::to_string(kMaxEnumeratePn));
  }
  std::uint64_t graphs = 1;
  for (int k = 0; k < pair_count(n); ++k) graphs *= 3;
  for (std::uint64_t code = 0; code < graphs; ++code) {
    for (const LiteralPoset& p : posets_of_graph(ColoredGraph::from_code(n, code))) visit(p);
  }
}

}  // namespace obtf
