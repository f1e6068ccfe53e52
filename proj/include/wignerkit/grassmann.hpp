#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "wignerkit/hilbert.hpp"

namespace wignerkit {

/// Principal angles theta_1 <= ... <= theta_k between two k-subspaces,
/// radians in [0, pi/2].
struct PrincipalAngles {
  std::vector<double> angles;

  int count_nonzero(double eps_angle) const;
  /// Any angle within a decade of a decision boundary (0 via eps_angle, or
  /// pi/2); such pairs should not be classified silently.
  bool marginal(double eps_angle) const;
};

/// arccos of the singular values of B_X* B_Y, clamped to [0,1].
PrincipalAngles principal_angles(const Subspace& x, const Subspace& y);

/// Exactly one principal angle above eps_angle, i.e. dim(X∩Y) = k-1.
bool is_adjacent(const Subspace& x, const Subspace& y, const Tolerance& tol);

/// Projections commute: ||P_X P_Y - P_Y P_X||_F < eps_orth.
bool is_compatible(const Subspace& x, const Subspace& y, const Tolerance& tol);

/// Adjacent with the single nonzero principal angle at pi/2. Evaluated both
/// through the angle form and through adjacent-and-compatible; disagreement
/// between the two routes throws "tolerance breakdown".
bool is_ortho_adjacent(const Subspace& x, const Subspace& y, const Tolerance& tol);

/// k - dim(X∩Y); cross-checked against dim(X+Y) - k and the count of nonzero
/// principal angles, erroring on any disagreement.
int grassmann_distance(const Subspace& x, const Subspace& y, const Tolerance& tol);

struct GrassmannPath {
  std::vector<Subspace> nodes;
};

/// A geodesic from X to Y: principal directions paired in ascending-angle
/// order, one direction swapped per step.
GrassmannPath geodesic(const Subspace& x, const Subspace& y, const Tolerance& tol);

/// Seeded samples from the star of X (k-subspaces containing the given
/// (k-1)-subspace), pairwise distinct.
std::vector<Subspace> star_members(const Subspace& x, int count, std::uint64_t seed,
                                   const Tolerance& tol);

/// Seeded samples from the top of Y (k-subspaces of the given (k+1)-subspace),
/// pairwise distinct.
std::vector<Subspace> top_members(const Subspace& y, int count, std::uint64_t seed,
                                  const Tolerance& tol);

enum class CliqueKind { star, top };

/// The deterministic maximal compatible subset built from the anchor's
/// orthonormal basis: k+1 elements for a top, n-k+1 for a star.
std::vector<Subspace> max_compatible_clique(CliqueKind kind, const Subspace& anchor,
                                            const Tolerance& tol);

/// Greedy-extension falsification: true iff none of pool_size seeded
/// candidates from the same star/top extends the clique.
bool clique_extension_fails(CliqueKind kind, const Subspace& anchor,
                            const std::vector<Subspace>& clique, int pool_size,
                            std::uint64_t seed, const Tolerance& tol);

/// For adjacent X, Y with dim complement(X+Y) >= 2: X' = (X∩Y)+P and
/// Y' = (X∩Y)+Q with orthogonal rays P, Q ⊂ complement(X+Y), so that
/// {X,X',Y'} and {Y,X',Y'} are each pairwise ortho-adjacent.
std::pair<Subspace, Subspace> bridge(const Subspace& x, const Subspace& y,
                                     const Tolerance& tol);

}  // namespace wignerkit
