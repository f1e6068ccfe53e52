#pragma once

#include <cstdint>
#include <random>

#include "wignerkit/hilbert.hpp"

namespace wignerkit {

using Rng = std::mt19937_64;

/// splitmix64 step, used to derive independent stream seeds.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline Vector random_vector(Eigen::Index n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = g(rng);
    const double im = g(rng);
    v[i] = Complex(re, im);
  }
  return v;
}

inline Ray random_ray(Eigen::Index n, Rng& rng) {
  return Ray(random_vector(n, rng));
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// R-diagonal phases absorbed into Q.
inline Matrix random_unitary(Eigen::Index n, Rng& rng) {
  Matrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    g.col(j) = random_vector(n, rng);
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

inline Subspace random_subspace(Eigen::Index n, Eigen::Index k, Rng& rng,
                                const Tolerance& tol) {
  Matrix g(n, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    g.col(j) = random_vector(n, rng);
  }
  return orthonormalize(g, tol);
}

/// A random ray orthogonal to p.
inline Ray random_orthogonal_ray(const Ray& p, Rng& rng) {
  const Eigen::Index n = p.dim();
  for (int attempt = 0; attempt < 64; ++attempt) {
    Vector v = random_vector(n, rng);
    v -= inner(v, p.vector()) * p.vector();
    if (v.norm() > 1e-6) return Ray(v);
  }
  throw std::runtime_error("random_orthogonal_ray: sampling failed");
}

}  // namespace wignerkit
