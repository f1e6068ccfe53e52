#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "wignerkit/projective.hpp"

namespace wignerkit {

enum class OperatorClass { linear, conjugate_linear };

std::string to_string(OperatorClass c);
OperatorClass operator_class_from_string(const std::string& s);

struct RayDeviation {
  std::size_t table_index;
  double deviation;  // projection distance between tabulated and induced image
};

/// The isometry recovered from a ray-map table: an n x n matrix with
/// orthonormal columns, applied directly (linear) or after entrywise
/// conjugation of the input (conjugate-linear).
struct ReconstructionResult {
  Matrix matrix;
  OperatorClass cls = OperatorClass::linear;
  double residual = 0.0;
  std::vector<RayDeviation> certificate;

  Vector apply(const Vector& v) const {
    if (cls == OperatorClass::conjugate_linear) return matrix * v.conjugate();
    return matrix * v;
  }
  Matrix apply_columns(const Matrix& b) const {
    if (cls == OperatorClass::conjugate_linear) return matrix * b.conjugate();
    return matrix * b;
  }
};

/// Recover the inducing isometry from a table that contains the images of the
/// basis rays [e_1..e_n], the sum rays [e_1+e_j] (j >= 2), and the twist ray
/// [e_1 + i e_2]. The basis images fix the columns up to phase, the sum rays
/// anchor the phases against u_1, and the twist ray separates linear from
/// conjugate-linear. The residual is evaluated over every table entry.
ReconstructionResult classify_and_reconstruct(const RayMapTable& f, int n,
                                              const Tolerance& tol);

struct VerifyReport {
  bool pass = false;
  double max_deviation = 0.0;
  std::vector<RayDeviation> failures;  // entries with deviation >= eps_reconstruct
};

/// Recompute the per-ray deviations of `result` against the table; never throws
/// on a bad table, the report carries the findings.
VerifyReport verify_induced(const RayMapTable& f, const ReconstructionResult& result,
                            const Tolerance& tol);

/// A deterministic transformation of G_k(H), memoized by the canonical
/// projection matrix rounded to 12 decimals. Copies share the memo.
class GrassmannOracle {
 public:
  GrassmannOracle(std::function<Subspace(const Subspace&)> fn, int k, int ambient);

  Subspace operator()(const Subspace& x) const;
  int k() const { return state_->k; }
  int ambient() const { return state_->ambient; }

 private:
  struct State {
    std::function<Subspace(const Subspace&)> fn;
    int k;
    int ambient;
    std::mutex mu;
    std::map<std::string, Subspace> memo;
  };
  std::shared_ptr<State> state_;
};

/// Canonical memoization key of a subspace (projection entries rounded to
/// 12 decimals). Also used to derive deterministic per-subspace probe seeds.
std::string subspace_key(const Subspace& x);

/// The star-descent step: evaluate f on `probes` star members of X with
/// pairwise-distinct images and intersect the images. Succeeds only when the
/// intersection is a common (k-1)-subspace of every probed image.
Subspace descend_star(const GrassmannOracle& f, const Subspace& x, int probes,
                      std::uint64_t seed, const Tolerance& tol);

struct LevelCheck {
  int level = 0;            // j: containment f_j(G_j(Y)) ⊆ G_j(f_{j+1}(Y))
  int samples_checked = 0;
};

struct DescentOptions {
  int probes = 3;
  int audit_rays = 10;          // extra random rays tabulated for f_1
  int containment_samples = 5;  // sampled Y per level
  int fresh_checks = 10;        // final consistency probes at level k
  std::uint64_t seed = 0;
};

struct DescentResult {
  ReconstructionResult reconstruction;
  std::vector<LevelCheck> levels;
};

/// Synthesize f_{k-1}, ..., f_1 by star descent, tabulate f_1 on the rays
/// required by classify_and_reconstruct plus a seeded audit set, and verify
/// the level containments and the final round trip against f.
DescentResult descend_full(const GrassmannOracle& f, const DescentOptions& opt,
                           const Tolerance& tol);

struct ConditionsReport {
  bool a_pass = false;      // ortho-adjacent pairs keep ortho-adjacent images
  bool b_pass = false;      // adjacent pairs get adjacent-or-equal images
  bool ortho_pass = false;  // orthogonal pairs keep orthogonal images
  int samples = 0;
  int a_failures = 0;
  int b_failures = 0;
  int ortho_failures = 0;
};

/// Sample-based check of Theorem-4 style conditions (A) and (B), plus the
/// upstream orthogonality preservation.
ConditionsReport check_conditions_AB(const GrassmannOracle& f, int samples,
                                     std::uint64_t seed, const Tolerance& tol);

/// Oracle induced by an isometry (matrix with orthonormal columns, applied
/// with conjugation first when conjugate-linear).
GrassmannOracle induced_oracle(const Matrix& isometry, OperatorClass cls, int k,
                               const Tolerance& tol);

}  // namespace wignerkit
