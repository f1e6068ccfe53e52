#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "wignerkit/hilbert.hpp"

namespace wignerkit {

/// Rays in C^d with their orthogonality edges and maximal orthogonal contexts
/// (d-tuples of mutually orthogonal rays).
struct OrthoHypergraph {
  int d = 0;
  std::vector<Ray> rays;
  std::vector<std::vector<int>> contexts;
  std::vector<std::pair<int, int>> edges;
};

/// Deduplicate rays, collect every orthogonal pair, and enumerate all
/// d-cliques of the orthogonality graph as contexts.
OrthoHypergraph build_hypergraph(const std::vector<Ray>& rays, int d,
                                 const Tolerance& tol);

/// Same, but with the context list supplied; contexts are validated against
/// the rays instead of being enumerated.
OrthoHypergraph build_hypergraph_with_contexts(const std::vector<Ray>& rays,
                                               std::vector<std::vector<int>> contexts,
                                               int d, const Tolerance& tol);

/// Total {0,1} labeling of the hypergraph's rays.
struct MeasureAssignment {
  std::vector<int> value;
};

struct SearchResult {
  bool sat = false;
  std::optional<MeasureAssignment> assignment;
  std::uint64_t nodes_explored = 0;
};

/// Backtracking search for an assignment with exactly one 1 per context and
/// no orthogonal pair both 1. Unit propagation on the exactly-one contexts,
/// chronological backtracking, deterministic variable order (shuffled when
/// order_seed != 0). First satisfying assignment, or UNSAT.
SearchResult find_two_valued_measure(const OrthoHypergraph& h,
                                     std::uint64_t order_seed = 0);

/// True iff the total assignment satisfies both constraint families.
bool verify_assignment(const OrthoHypergraph& h, const MeasureAssignment& m);

}  // namespace wignerkit
