#include "wignerkit/grassmann.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "wignerkit/rng.hpp"

namespace wignerkit {

int PrincipalAngles::count_nonzero(double eps_angle) const {
  return static_cast<int>(std::count_if(angles.begin(), angles.end(),
                                        [&](double t) { return t > eps_angle; }));
}

bool PrincipalAngles::marginal(double eps_angle) const {
  const double lo = 0.1 * eps_angle;
  const double hi = 10.0 * eps_angle;
  for (double t : angles) {
    if (t > lo && t < hi) return true;
    const double from_right = M_PI / 2.0 - t;
    if (from_right > lo && from_right < hi) return true;
  }
  return false;
}

PrincipalAngles principal_angles(const Subspace& x, const Subspace& y) {
  if (x.ambient() != y.ambient()) {
    throw std::invalid_argument("principal_angles: ambient dimension mismatch");
  }
  if (x.dim() != y.dim()) {
    throw std::invalid_argument("principal_angles: subspace dimensions differ");
  }
  const Matrix overlap = x.basis().adjoint() * y.basis();
  Eigen::JacobiSVD<Matrix> svd(overlap);
  PrincipalAngles out;
  out.angles.reserve(static_cast<std::size_t>(x.dim()));
  const auto& sv = svd.singularValues();
  // Singular values descend, so angles come out ascending.
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    out.angles.push_back(std::acos(std::clamp(sv[i], 0.0, 1.0)));
  }
  return out;
}

bool is_adjacent(const Subspace& x, const Subspace& y, const Tolerance& tol) {
  return principal_angles(x, y).count_nonzero(tol.eps_angle) == 1;
}

bool is_compatible(const Subspace& x, const Subspace& y, const Tolerance& tol) {
  if (x.ambient() != y.ambient()) {
    throw std::invalid_argument("is_compatible: ambient dimension mismatch");
  }
  const Matrix px = projection_of(x);
  const Matrix py = projection_of(y);
  return (px * py - py * px).norm() < tol.eps_orth;
}

bool is_ortho_adjacent(const Subspace& x, const Subspace& y, const Tolerance& tol) {
  const PrincipalAngles pa = principal_angles(x, y);
  const bool adjacent = pa.count_nonzero(tol.eps_angle) == 1;

  bool by_angle = false;
  if (adjacent) {
    const double top = pa.angles.back();
    by_angle = std::abs(M_PI / 2.0 - top) < tol.eps_angle;
  }
  const bool by_commutator = adjacent && is_compatible(x, y, tol);
  if (by_angle != by_commutator) {
    throw std::runtime_error("is_ortho_adjacent: tolerance breakdown (angle and "
                             "commutator characterizations disagree)");
  }
  return by_angle;
}

int grassmann_distance(const Subspace& x, const Subspace& y, const Tolerance& tol) {
  if (x.dim() != y.dim()) {
    throw std::invalid_argument("grassmann_distance: subspace dimensions differ");
  }
  const int k = static_cast<int>(x.dim());
  const auto meet = intersect(x, y, tol);
  const int dim_meet = meet ? static_cast<int>(meet->dim()) : 0;
  const int dim_join = static_cast<int>(sum(x, y, tol).dim());
  const int by_meet = k - dim_meet;
  const int by_join = dim_join - k;
  const int by_angles = principal_angles(x, y).count_nonzero(tol.eps_angle);
  if (by_meet != by_join || by_meet != by_angles) {
    throw std::runtime_error("grassmann_distance: rank instability");
  }
  return by_meet;
}

namespace {

// Phase-canonical lexicographic key, used only to break exact angle ties.
bool column_lex_less(const Vector& a, const Vector& b) {
  const Vector ca = Ray(a).vector();
  const Vector cb = Ray(b).vector();
  for (Eigen::Index i = 0; i < ca.size(); ++i) {
    if (ca[i].real() != cb[i].real()) return ca[i].real() < cb[i].real();
    if (ca[i].imag() != cb[i].imag()) return ca[i].imag() < cb[i].imag();
  }
  return false;
}

}  // namespace

GrassmannPath geodesic(const Subspace& x, const Subspace& y, const Tolerance& tol) {
  const int d = grassmann_distance(x, y, tol);
  const Eigen::Index k = x.dim();

  const Matrix overlap = x.basis().adjoint() * y.basis();
  Eigen::JacobiSVD<Matrix> svd(overlap, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Matrix dirs_x = x.basis() * svd.matrixU();
  Matrix dirs_y = y.basis() * svd.matrixV();
  std::vector<double> theta(static_cast<std::size_t>(k));
  for (Eigen::Index i = 0; i < k; ++i) {
    theta[static_cast<std::size_t>(i)] =
        std::acos(std::clamp(svd.singularValues()[i], 0.0, 1.0));
  }

  // Ascending angle; equal angles ordered lexicographically for determinism.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const double ta = theta[static_cast<std::size_t>(a)];
    const double tb = theta[static_cast<std::size_t>(b)];
    if (std::abs(ta - tb) > 1e-12) return ta < tb;
    return column_lex_less(dirs_x.col(a), dirs_x.col(b));
  });

  GrassmannPath path;
  path.nodes.push_back(x);
  Matrix current = dirs_x;
  int swapped = 0;
  for (Eigen::Index oi = 0; oi < k; ++oi) {
    const Eigen::Index i = order[static_cast<std::size_t>(oi)];
    if (theta[static_cast<std::size_t>(i)] <= tol.eps_angle) continue;  // X∩Y stays fixed
    current.col(i) = dirs_y.col(i);
    path.nodes.push_back(orthonormalize(current, tol));
    ++swapped;
  }
  if (swapped != d) {
    throw std::runtime_error("geodesic: rank instability");
  }
  for (std::size_t i = 0; i + 1 < path.nodes.size(); ++i) {
    if (!is_adjacent(path.nodes[i], path.nodes[i + 1], tol)) {
      throw std::runtime_error("geodesic: consecutive nodes not adjacent");
    }
  }
  return path;
}

std::vector<Subspace> star_members(const Subspace& x, int count, std::uint64_t seed,
                                   const Tolerance& tol) {
  if (count < 2) {
    throw std::invalid_argument("star_members: need count >= 2");
  }
  if (x.dim() >= x.ambient()) {
    throw std::invalid_argument("star_members: complement too small");
  }
  const Subspace comp = complement(x, tol);
  if (comp.dim() < 2 && count >= 2) {
    throw std::invalid_argument("star_members: complement too small");
  }
  Rng rng(mix_seed(seed, 0x57a7));
  std::vector<Subspace> members;
  int guard = 0;
  while (static_cast<int>(members.size()) < count) {
    if (++guard > 100 * count) {
      throw std::runtime_error("star_members: could not produce distinct members");
    }
    const Vector dir = comp.basis() * random_vector(comp.dim(), rng);
    Matrix cat(x.ambient(), x.dim() + 1);
    cat << x.basis(), dir / dir.norm();
    Subspace candidate = orthonormalize(cat, tol);
    if (candidate.dim() != x.dim() + 1) continue;
    const bool fresh = std::none_of(members.begin(), members.end(), [&](const Subspace& m) {
      return subspaces_equal(m, candidate, tol);
    });
    if (fresh) members.push_back(std::move(candidate));
  }
  return members;
}

std::vector<Subspace> top_members(const Subspace& y, int count, std::uint64_t seed,
                                  const Tolerance& tol) {
  if (count < 1) {
    throw std::invalid_argument("top_members: need count >= 1");
  }
  if (y.dim() < 2) {
    throw std::invalid_argument("top_members: anchor must have dimension >= 2");
  }
  Rng rng(mix_seed(seed, 0x707));
  std::vector<Subspace> members;
  int guard = 0;
  while (static_cast<int>(members.size()) < count) {
    if (++guard > 100 * count) {
      throw std::runtime_error("top_members: could not produce distinct members");
    }
    // A k-subspace of Y is the in-Y orthocomplement of a ray of Y.
    Vector coords = random_vector(y.dim(), rng);
    coords /= coords.norm();
    const Matrix coords_col = coords;
    Eigen::HouseholderQR<Matrix> qr(coords_col);
    Matrix q = qr.householderQ();
    Subspace candidate = trusted_subspace(y.basis() * q.rightCols(y.dim() - 1));
    const bool fresh = std::none_of(members.begin(), members.end(), [&](const Subspace& m) {
      return subspaces_equal(m, candidate, tol);
    });
    if (fresh) members.push_back(std::move(candidate));
  }
  return members;
}

std::vector<Subspace> max_compatible_clique(CliqueKind kind, const Subspace& anchor,
                                            const Tolerance& tol) {
  std::vector<Subspace> clique;
  if (kind == CliqueKind::top) {
    // Drop one basis direction of Y at a time: k+1 coordinate k-subspaces.
    const Eigen::Index kp1 = anchor.dim();
    if (kp1 < 2) {
      throw std::invalid_argument("max_compatible_clique: top anchor needs dim >= 2");
    }
    for (Eigen::Index drop = 0; drop < kp1; ++drop) {
      Matrix b(anchor.ambient(), kp1 - 1);
      Eigen::Index c = 0;
      for (Eigen::Index j = 0; j < kp1; ++j) {
        if (j != drop) b.col(c++) = anchor.basis().col(j);
      }
      clique.push_back(trusted_subspace(std::move(b)));
    }
  } else {
    // Extend X by one basis direction of its complement: n-k+1 members.
    const Subspace comp = complement(anchor, tol);
    for (Eigen::Index j = 0; j < comp.dim(); ++j) {
      Matrix b(anchor.ambient(), anchor.dim() + 1);
      b << anchor.basis(), comp.basis().col(j);
      clique.push_back(trusted_subspace(std::move(b)));
    }
  }
  return clique;
}

bool clique_extension_fails(CliqueKind kind, const Subspace& anchor,
                            const std::vector<Subspace>& clique, int pool_size,
                            std::uint64_t seed, const Tolerance& tol) {
  const std::vector<Subspace> pool =
      kind == CliqueKind::star
          ? star_members(anchor, pool_size, seed, tol)
          : top_members(anchor, pool_size, seed, tol);
  for (const Subspace& candidate : pool) {
    bool extends = true;
    for (const Subspace& m : clique) {
      if (subspaces_equal(candidate, m, tol) || !is_compatible(candidate, m, tol)) {
        extends = false;
        break;
      }
    }
    if (extends) return false;
  }
  return true;
}

std::pair<Subspace, Subspace> bridge(const Subspace& x, const Subspace& y,
                                     const Tolerance& tol) {
  if (!is_adjacent(x, y, tol)) {
    throw std::invalid_argument("bridge: subspaces are not adjacent");
  }
  const Subspace join = sum(x, y, tol);
  if (join.dim() + 2 > x.ambient()) {
    throw std::invalid_argument(
        "bridge: complement of X+Y must contain two orthogonal rays (requires dim H > 2k)");
  }
  const Subspace outside = complement(join, tol);
  const Vector p = outside.basis().col(0);
  const Vector q = outside.basis().col(1);

  const auto meet = intersect(x, y, tol);
  const Eigen::Index core_dim = meet ? meet->dim() : 0;
  Matrix bx(x.ambient(), core_dim + 1);
  Matrix by(x.ambient(), core_dim + 1);
  if (meet) {
    bx.leftCols(core_dim) = meet->basis();
    by.leftCols(core_dim) = meet->basis();
  }
  bx.col(core_dim) = p;
  by.col(core_dim) = q;
  return {trusted_subspace(std::move(bx)), trusted_subspace(std::move(by))};
}

}  // namespace wignerkit
