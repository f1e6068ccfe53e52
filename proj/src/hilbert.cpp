#include "wignerkit/hilbert.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>

namespace wignerkit {

Complex inner(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("inner: dimension mismatch");
  }
  // Eigen's dot() conjugates its callee, so <x,y> = y.dot(x).
  return y.dot(x);
}

namespace {

constexpr double kPhasePivotTol = 1e-12;

Vector canonicalize_phase(Vector v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v[i]);
    if (mag > kPhasePivotTol) {
      v *= std::conj(v[i]) / mag;
      v[i] = Complex(std::abs(v[i]), 0.0);  // kill residual imaginary dust
      return v;
    }
  }
  throw std::invalid_argument("Ray: vector is numerically zero");
}

}  // namespace

Ray::Ray(const Vector& v) {
  if (v.size() < 1) {
    throw std::invalid_argument("Ray: empty vector");
  }
  if (!v.allFinite()) {
    throw std::invalid_argument("Ray: non-finite entries");
  }
  const double n = v.norm();
  if (n < kPhasePivotTol) {
    throw std::invalid_argument("Ray: vector is numerically zero");
  }
  vec_ = canonicalize_phase(v / n);
}

Subspace::Subspace(Matrix orthonormal_basis, const Tolerance& tol)
    : basis_(std::move(orthonormal_basis)) {
  const Eigen::Index n = basis_.rows();
  const Eigen::Index k = basis_.cols();
  if (k < 1 || k > n) {
    throw std::invalid_argument("Subspace: need 1 <= k <= n");
  }
  if (!basis_.allFinite()) {
    throw std::invalid_argument("Subspace: non-finite entries");
  }
  const Matrix gram = basis_.adjoint() * basis_;
  const double defect = (gram - Matrix::Identity(k, k)).norm();
  if (defect > tol.eps_orth) {
    throw std::invalid_argument("Subspace: columns are not orthonormal");
  }
}

Subspace Subspace::from_ray(const Ray& r) {
  Matrix b(r.dim(), 1);
  b.col(0) = r.vector();
  return trusted_subspace(std::move(b));
}

Subspace trusted_subspace(Matrix basis) {
  return Subspace(std::move(basis), Subspace::Trusted{});
}

int numerical_rank(const Matrix& m, double eps_rank) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] <= 0.0) return 0;
  const double cutoff = eps_rank * sv[0];
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > cutoff) ++rank;
  }
  return rank;
}

Subspace orthonormalize(const Matrix& columns, const Tolerance& tol) {
  if (columns.rows() < 1 || columns.cols() < 1) {
    throw std::invalid_argument("orthonormalize: empty input");
  }
  if (!columns.allFinite()) {
    throw std::invalid_argument("orthonormalize: non-finite entries");
  }
  Eigen::JacobiSVD<Matrix> svd(columns, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] <= 0.0) {
    throw std::invalid_argument("orthonormalize: empty span");
  }
  const double cutoff = tol.eps_rank * sv[0];
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > cutoff) ++rank;
  }
  if (rank == 0) {
    throw std::invalid_argument("orthonormalize: empty span");
  }
  return trusted_subspace(svd.matrixU().leftCols(rank));
}

Subspace orthonormalize(const std::vector<Vector>& vectors, const Tolerance& tol) {
  if (vectors.empty()) {
    throw std::invalid_argument("orthonormalize: empty input");
  }
  const Eigen::Index n = vectors.front().size();
  Matrix m(n, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].size() != n) {
      throw std::invalid_argument("orthonormalize: dimension mismatch");
    }
    m.col(static_cast<Eigen::Index>(j)) = vectors[j];
  }
  return orthonormalize(m, tol);
}

Subspace complement(const Subspace& s, const Tolerance& tol) {
  (void)tol;
  const Eigen::Index n = s.ambient();
  const Eigen::Index k = s.dim();
  if (k == n) {
    throw std::invalid_argument("complement: zero complement");
  }
  Eigen::HouseholderQR<Matrix> qr(s.basis());
  Matrix q = qr.householderQ();
  return trusted_subspace(q.rightCols(n - k));
}

Subspace sum(const Subspace& s, const Subspace& t, const Tolerance& tol) {
  if (s.ambient() != t.ambient()) {
    throw std::invalid_argument("sum: ambient dimension mismatch");
  }
  Matrix cat(s.ambient(), s.dim() + t.dim());
  cat << s.basis(), t.basis();
  return orthonormalize(cat, tol);
}

std::optional<Subspace> intersect(const Subspace& s, const Subspace& t,
                                  const Tolerance& tol) {
  if (s.ambient() != t.ambient()) {
    throw std::invalid_argument("intersect: ambient dimension mismatch");
  }
  const Eigen::Index n = s.ambient();
  if (s.dim() == n) return t;
  if (t.dim() == n) return s;
  const Subspace joint_perp = sum(complement(s, tol), complement(t, tol), tol);
  if (joint_perp.dim() == n) return std::nullopt;
  return complement(joint_perp, tol);
}

Matrix projection_of(const Subspace& s) {
  return s.basis() * s.basis().adjoint();
}

double subspace_distance(const Subspace& s, const Subspace& t) {
  if (s.ambient() != t.ambient()) {
    throw std::invalid_argument("subspace_distance: ambient dimension mismatch");
  }
  return (projection_of(s) - projection_of(t)).norm();
}

bool subspaces_equal(const Subspace& s, const Subspace& t, const Tolerance& tol) {
  if (s.ambient() != t.ambient() || s.dim() != t.dim()) return false;
  return subspace_distance(s, t) < tol.eps_eq;
}

double ray_distance(const Ray& p, const Ray& q) {
  const double overlap = std::norm(inner(p.vector(), q.vector()));
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - overlap)));
}

bool rays_equal(const Ray& p, const Ray& q, const Tolerance& tol) {
  if (p.dim() != q.dim()) return false;
  return ray_distance(p, q) < tol.eps_eq;
}

bool member(const Subspace& s, const Vector& v, double eps) {
  if (v.size() != s.ambient()) {
    throw std::invalid_argument("member: dimension mismatch");
  }
  const Vector residual = v - s.basis() * (s.basis().adjoint() * v);
  return residual.norm() <= eps * std::max(1.0, v.norm());
}

bool subspace_contains(const Subspace& outer, const Subspace& inner_part, double eps) {
  if (outer.ambient() != inner_part.ambient()) {
    throw std::invalid_argument("subspace_contains: dimension mismatch");
  }
  const Matrix residual =
      inner_part.basis() - outer.basis() * (outer.basis().adjoint() * inner_part.basis());
  return residual.norm() <= eps;
}

}  // namespace wignerkit
