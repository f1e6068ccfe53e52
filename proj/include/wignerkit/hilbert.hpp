#pragma once

#include <optional>
#include <vector>

#include "wignerkit/types.hpp"

namespace wignerkit {

/// Hermitian inner product <x,y>, linear in the first argument and
/// conjugate-linear in the second.
Complex inner(const Vector& x, const Vector& y);

/// A 1-dimensional subspace of C^n, stored as a unit vector in phase-canonical
/// form: the first entry of modulus > 1e-12 is real and positive. Canonical
/// form makes ray equality a plain vector comparison.
class Ray {
 public:
  explicit Ray(const Vector& v);

  const Vector& vector() const { return vec_; }
  Eigen::Index dim() const { return vec_.size(); }

 private:
  Vector vec_;
};

/// A k-dimensional subspace of C^n, stored as an n x k matrix with
/// orthonormal columns. Construction validates the column orthonormality;
/// arbitrary spanning sets go through orthonormalize().
class Subspace {
 public:
  Subspace(Matrix orthonormal_basis, const Tolerance& tol);

  static Subspace from_ray(const Ray& r);

  const Matrix& basis() const { return basis_; }
  Eigen::Index dim() const { return basis_.cols(); }
  Eigen::Index ambient() const { return basis_.rows(); }

 private:
  struct Trusted {};
  Subspace(Matrix basis, Trusted) : basis_(std::move(basis)) {}
  Matrix basis_;

  friend Subspace trusted_subspace(Matrix basis);
};

/// Internal fast path for matrices that are orthonormal by construction.
Subspace trusted_subspace(Matrix basis);

/// Count of singular values above eps_rank * (largest singular value).
int numerical_rank(const Matrix& m, double eps_rank);

/// Orthonormal basis of the column span; the returned dimension is the
/// numerical rank of the input. Throws on an all-zero span.
Subspace orthonormalize(const Matrix& columns, const Tolerance& tol);
Subspace orthonormalize(const std::vector<Vector>& vectors, const Tolerance& tol);

/// Orthogonal complement S-perp. Throws when S is the full space.
Subspace complement(const Subspace& s, const Tolerance& tol);

Subspace sum(const Subspace& s, const Subspace& t, const Tolerance& tol);

/// Intersection computed as complement(sum(complement(S), complement(T))).
/// The zero subspace is reported as nullopt, not an exception.
std::optional<Subspace> intersect(const Subspace& s, const Subspace& t,
                                  const Tolerance& tol);

/// Orthogonal projection P = B B*.
Matrix projection_of(const Subspace& s);

/// ||P_S - P_T||_F, the basis-independent distance between subspaces.
double subspace_distance(const Subspace& s, const Subspace& t);
bool subspaces_equal(const Subspace& s, const Subspace& t, const Tolerance& tol);

double ray_distance(const Ray& p, const Ray& q);
bool rays_equal(const Ray& p, const Ray& q, const Tolerance& tol);

/// Whether v (resp. every column of inner_part) lies in s, up to eps.
bool member(const Subspace& s, const Vector& v, double eps);
bool subspace_contains(const Subspace& outer, const Subspace& inner_part, double eps);

}  // namespace wignerkit
