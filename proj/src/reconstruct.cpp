#include "wignerkit/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wignerkit/grassmann.hpp"
#include "wignerkit/rng.hpp"

namespace wignerkit {

std::string to_string(OperatorClass c) {
  return c == OperatorClass::linear ? "linear" : "conjugate-linear";
}

OperatorClass operator_class_from_string(const std::string& s) {
  if (s == "linear") return OperatorClass::linear;
  if (s == "conjugate-linear") return OperatorClass::conjugate_linear;
  throw std::invalid_argument("unknown operator class: " + s);
}

namespace {

Ray basis_ray(int n, int j) {
  Vector v = Vector::Zero(n);
  v[j] = Complex(1.0, 0.0);
  return Ray(v);
}

Ray sum_ray(int n, int j) {
  Vector v = Vector::Zero(n);
  v[0] = Complex(1.0, 0.0);
  v[j] = Complex(1.0, 0.0);
  return Ray(v);
}

Ray twist_ray(int n) {
  Vector v = Vector::Zero(n);
  v[0] = Complex(1.0, 0.0);
  v[1] = Complex(0.0, 1.0);
  return Ray(v);
}

const Ray& require_image(const RayMapTable& f, const Ray& source, const char* what,
                         const Tolerance& tol) {
  const Ray* img = f.lookup(source, tol);
  if (img == nullptr) {
    throw std::invalid_argument(std::string("classify_and_reconstruct: table is missing "
                                            "the required ray ") + what);
  }
  return *img;
}

}  // namespace

ReconstructionResult classify_and_reconstruct(const RayMapTable& f, int n,
                                              const Tolerance& tol) {
  if (n < 3) {
    throw std::invalid_argument("classify_and_reconstruct: need n >= 3");
  }
  if (f.ambient() != n) {
    throw std::invalid_argument("classify_and_reconstruct: table ambient dimension "
                                "does not match n");
  }

  // (1) Images of the basis rays become the columns, up to phase.
  std::vector<Vector> u(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    std::ostringstream name;
    name << "[e_" << (j + 1) << "]";
    u[static_cast<std::size_t>(j)] =
        require_image(f, basis_ray(n, j), name.str().c_str(), tol).vector();
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(inner(u[i], u[j])) >= tol.eps_orth) {
        throw std::runtime_error("classify_and_reconstruct: not orthogonality "
                                 "preserving (basis-ray images are not orthonormal)");
      }
    }
  }

  // (2) The sum rays anchor each column's phase against u_1.
  for (int j = 1; j < n; ++j) {
    std::ostringstream name;
    name << "[e_1+e_" << (j + 1) << "]";
    const Vector w = require_image(f, sum_ray(n, j), name.str().c_str(), tol).vector();
    const Complex a = inner(w, u[0]);
    const Complex b = inner(w, u[static_cast<std::size_t>(j)]);
    if (std::abs(a) < 0.1 || std::abs(b) < 0.1) {
      throw std::runtime_error("classify_and_reconstruct: not induced by an isometry "
                               "(a sum-ray image misses its anchor line)");
    }
    Complex lambda = b / a;
    lambda /= std::abs(lambda);
    u[static_cast<std::size_t>(j)] *= lambda;
  }

  // (3) The twist ray separates linear from conjugate-linear.
  const Vector w = require_image(f, twist_ray(n), "[e_1+i*e_2]", tol).vector();
  const Complex c1 = inner(w, u[0]);
  const Complex c2 = inner(w, u[1]);
  if (std::abs(c1) < 0.1 || std::abs(c2) < 0.1) {
    throw std::runtime_error("classify_and_reconstruct: not induced by an isometry "
                             "(twist-ray image misses its anchor line)");
  }
  const Complex rho = c2 / c1;
  OperatorClass cls;
  if (std::abs(rho - Complex(0.0, 1.0)) < 0.5) {
    cls = OperatorClass::linear;
  } else if (std::abs(rho + Complex(0.0, 1.0)) < 0.5) {
    cls = OperatorClass::conjugate_linear;
  } else {
    throw std::runtime_error("classify_and_reconstruct: not induced by an isometry "
                             "(twist-ray image matches neither [u1+i*u2] nor [u1-i*u2])");
  }

  // (4)+(5) Assemble and certify over every table entry.
  ReconstructionResult result;
  result.cls = cls;
  result.matrix.resize(n, n);
  for (int j = 0; j < n; ++j) {
    result.matrix.col(j) = u[static_cast<std::size_t>(j)];
  }
  result.certificate.reserve(f.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto& e = f.entries()[i];
    const Ray induced(result.apply(e.source.vector()));
    const double dev = ray_distance(induced, e.image);
    result.certificate.push_back({i, dev});
    worst = std::max(worst, dev);
  }
  result.residual = worst;
  if (worst > tol.eps_reconstruct) {
    throw std::runtime_error("classify_and_reconstruct: table inconsistent with any "
                             "isometry (residual " + std::to_string(worst) + ")");
  }
  return result;
}

VerifyReport verify_induced(const RayMapTable& f, const ReconstructionResult& result,
                            const Tolerance& tol) {
  VerifyReport report;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto& e = f.entries()[i];
    const Ray induced(result.apply(e.source.vector()));
    const double dev = ray_distance(induced, e.image);
    report.max_deviation = std::max(report.max_deviation, dev);
    if (dev >= tol.eps_reconstruct) {
      report.failures.push_back({i, dev});
    }
  }
  report.pass = report.failures.empty();
  return report;
}

GrassmannOracle::GrassmannOracle(std::function<Subspace(const Subspace&)> fn, int k,
                                 int ambient)
    : state_(std::make_shared<State>()) {
  state_->fn = std::move(fn);
  state_->k = k;
  state_->ambient = ambient;
}

Subspace GrassmannOracle::operator()(const Subspace& x) const {
  if (static_cast<int>(x.dim()) != state_->k ||
      static_cast<int>(x.ambient()) != state_->ambient) {
    throw std::invalid_argument("GrassmannOracle: input has wrong dimensions");
  }
  const std::string key = subspace_key(x);
  {
    std::lock_guard<std::mutex> lock(state_->mu);
    auto it = state_->memo.find(key);
    if (it != state_->memo.end()) return it->second;
  }
  Subspace out = state_->fn(x);
  if (static_cast<int>(out.dim()) != state_->k) {
    throw std::runtime_error("GrassmannOracle: output dimension violates the contract");
  }
  std::lock_guard<std::mutex> lock(state_->mu);
  return state_->memo.emplace(key, std::move(out)).first->second;
}

std::string subspace_key(const Subspace& x) {
  const Matrix p = projection_of(x);
  std::string key;
  key.reserve(static_cast<std::size_t>(p.size()) * 2 * sizeof(std::int64_t));
  auto push = [&key](double v) {
    const auto r = static_cast<std::int64_t>(std::llround(v * 1e12));
    const char* bytes = reinterpret_cast<const char*>(&r);
    key.append(bytes, sizeof(r));
  };
  for (Eigen::Index j = 0; j < p.cols(); ++j) {
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
      push(p(i, j).real());
      push(p(i, j).imag());
    }
  }
  return key;
}

Subspace descend_star(const GrassmannOracle& f, const Subspace& x, int probes,
                      std::uint64_t seed, const Tolerance& tol) {
  if (f.k() < 2) {
    throw std::invalid_argument("descend_star: oracle level must be k >= 2");
  }
  if (probes < 2) {
    throw std::invalid_argument("descend_star: need probes >= 2");
  }
  if (static_cast<int>(x.dim()) != f.k() - 1) {
    throw std::invalid_argument("descend_star: X must have dimension k-1");
  }

  constexpr int kRetryBudget = 20;
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    const std::vector<Subspace> members =
        star_members(x, probes, mix_seed(seed, static_cast<std::uint64_t>(attempt)), tol);
    std::vector<Subspace> images;
    images.reserve(members.size());
    for (const Subspace& m : members) images.push_back(f(m));

    bool distinct = true;
    for (std::size_t i = 0; i < images.size() && distinct; ++i) {
      for (std::size_t j = i + 1; j < images.size(); ++j) {
        if (subspaces_equal(images[i], images[j], tol)) {
          distinct = false;
          break;
        }
      }
    }
    if (!distinct) continue;  // unlucky sample, re-probe

    auto common = std::optional<Subspace>(images.front());
    for (std::size_t i = 1; i < images.size() && common; ++i) {
      common = intersect(*common, images[i], tol);
    }
    if (!common || static_cast<int>(common->dim()) != f.k() - 1) {
      throw std::runtime_error("descend_star: f does not map this star into a star");
    }
    for (const Subspace& img : images) {
      if (!subspace_contains(img, *common, tol.eps_eq)) {
        throw std::runtime_error("descend_star: f does not map this star into a star");
      }
    }
    return *common;
  }
  throw std::runtime_error("descend_star: f does not map this star into a star "
                           "(probed images coincide)");
}

namespace {

std::uint64_t seed_for(const Subspace& x, std::uint64_t level_seed) {
  return mix_seed(level_seed, std::hash<std::string>{}(subspace_key(x)));
}

}  // namespace

DescentResult descend_full(const GrassmannOracle& f, const DescentOptions& opt,
                           const Tolerance& tol) {
  const int k = f.k();
  const int n = f.ambient();
  if (k < 2) {
    throw std::invalid_argument("descend_full: need k >= 2");
  }
  if (2 * k >= n) {
    throw std::invalid_argument("descend_full: requires dim H > 2k");
  }

  // Chain of oracles f_k, f_{k-1}, ..., f_1; each level memoizes.
  std::vector<GrassmannOracle> chain;
  chain.reserve(static_cast<std::size_t>(k));
  chain.push_back(f);
  for (int level = k - 1; level >= 1; --level) {
    const GrassmannOracle upper = chain.back();
    const std::uint64_t level_seed = mix_seed(opt.seed, static_cast<std::uint64_t>(level));
    const int probes = opt.probes;
    chain.emplace_back(
        [upper, probes, level_seed, tol](const Subspace& x) {
          return descend_star(upper, x, probes, seed_for(x, level_seed), tol);
        },
        level, n);
  }
  auto oracle_at = [&](int level) -> const GrassmannOracle& {
    return chain[static_cast<std::size_t>(k - level)];
  };

  DescentResult result;

  // Level containments f_j(G_j(Y)) ⊆ G_j(f_{j+1}(Y)) on sampled Y.
  for (int j = 1; j < k; ++j) {
    LevelCheck check;
    check.level = j;
    Rng rng(mix_seed(opt.seed, 0xc0d0 + static_cast<std::uint64_t>(j)));
    for (int s = 0; s < opt.containment_samples; ++s) {
      const Subspace y = random_subspace(n, j + 1, rng, tol);
      const Subspace fy = oracle_at(j + 1)(y);
      const std::vector<Subspace> zs =
          top_members(y, 2, mix_seed(opt.seed, 0xbeef + static_cast<std::uint64_t>(s)), tol);
      for (const Subspace& z : zs) {
        const Subspace fz = oracle_at(j)(z);
        if (!subspace_contains(fy, fz, 10.0 * tol.eps_eq)) {
          throw std::runtime_error("descend_full: level containment violated at level " +
                                   std::to_string(j));
        }
        ++check.samples_checked;
      }
    }
    result.levels.push_back(check);
  }

  // Tabulate f_1 on the rays the reconstruction requires, plus an audit set.
  const GrassmannOracle& f1 = oracle_at(1);
  auto eval_ray = [&](const Ray& r) {
    const Subspace img = f1(Subspace::from_ray(r));
    return Ray(img.basis().col(0));
  };
  RayMapTable table;
  std::vector<Ray> sources;
  for (int j = 0; j < n; ++j) sources.push_back(basis_ray(n, j));
  for (int j = 1; j < n; ++j) sources.push_back(sum_ray(n, j));
  sources.push_back(twist_ray(n));
  Rng audit_rng(mix_seed(opt.seed, 0xa0d17));
  for (int i = 0; i < opt.audit_rays; ++i) sources.push_back(random_ray(n, audit_rng));
  for (const Ray& r : sources) {
    if (table.lookup(r, tol) == nullptr) {
      table.insert(r, eval_ray(r), tol);
    }
  }
  result.reconstruction = classify_and_reconstruct(table, n, tol);

  // Final round trip against the top-level oracle on fresh subspaces.
  Rng fresh_rng(mix_seed(opt.seed, 0xf1e5));
  for (int i = 0; i < opt.fresh_checks; ++i) {
    const Subspace x = random_subspace(n, k, fresh_rng, tol);
    const Subspace via_matrix =
        orthonormalize(result.reconstruction.apply_columns(x.basis()), tol);
    if (subspace_distance(via_matrix, f(x)) > 10.0 * tol.eps_reconstruct) {
      throw std::runtime_error("descend_full: final reconstruction inconsistent with "
                               "the oracle on sampled k-subspaces");
    }
  }
  return result;
}

ConditionsReport check_conditions_AB(const GrassmannOracle& f, int samples,
                                     std::uint64_t seed, const Tolerance& tol) {
  const int k = f.k();
  const int n = f.ambient();
  if (2 * k >= n) {
    throw std::invalid_argument("check_conditions_AB: requires dim H > 2k");
  }
  ConditionsReport report;
  report.samples = samples;
  Rng rng(mix_seed(seed, 0xab));
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  for (int s = 0; s < samples; ++s) {
    // Ortho-adjacent pair: common core W plus orthogonal rays of W-perp.
    const Subspace core = random_subspace(n, k - 1, rng, tol);
    const Subspace comp = complement(core, tol);
    Matrix g(comp.dim(), 2);
    g.col(0) = random_vector(comp.dim(), rng);
    g.col(1) = random_vector(comp.dim(), rng);
    const Subspace pq = orthonormalize(comp.basis() * g, tol);
    Matrix bx(n, k), by(n, k);
    bx << core.basis(), pq.basis().col(0);
    by << core.basis(), pq.basis().col(1);
    const Subspace x = trusted_subspace(bx);
    const Subspace y = trusted_subspace(by);
    if (!is_ortho_adjacent(f(x), f(y), tol)) ++report.a_failures;

    // Adjacent (generically incompatible) pair over the same core.
    const double t = 0.2 + 0.6 * unif(rng);
    Vector mixed = std::cos(t) * pq.basis().col(0) + std::sin(t) * pq.basis().col(1);
    Matrix bz(n, k);
    bz << core.basis(), mixed;
    const Subspace z = trusted_subspace(bz);
    const Subspace fx = f(x);
    const Subspace fz = f(z);
    if (!(subspaces_equal(fx, fz, tol) || is_adjacent(fx, fz, tol))) ++report.b_failures;

    // Upstream orthogonality (2k <= n holds since 2k < n).
    const Subspace u = random_subspace(n, 2 * k, rng, tol);
    const Subspace ox = trusted_subspace(Matrix(u.basis().leftCols(k)));
    const Subspace oy = trusted_subspace(Matrix(u.basis().rightCols(k)));
    const Matrix img_overlap = f(ox).basis().adjoint() * f(oy).basis();
    if (img_overlap.norm() >= tol.eps_orth) ++report.ortho_failures;
  }
  report.a_pass = report.a_failures == 0;
  report.b_pass = report.b_failures == 0;
  report.ortho_pass = report.ortho_failures == 0;
  return report;
}

GrassmannOracle induced_oracle(const Matrix& isometry, OperatorClass cls, int k,
                               const Tolerance& tol) {
  if (isometry.rows() != isometry.cols()) {
    throw std::invalid_argument("induced_oracle: matrix must be square");
  }
  const Matrix gram = isometry.adjoint() * isometry;
  if ((gram - Matrix::Identity(isometry.cols(), isometry.cols())).norm() > tol.eps_orth) {
    throw std::invalid_argument("induced_oracle: matrix is not an isometry");
  }
  const Matrix op = isometry;
  return GrassmannOracle(
      [op, cls, tol](const Subspace& x) {
        Matrix mapped;
        if (cls == OperatorClass::conjugate_linear) {
          mapped = op * x.basis().conjugate();
        } else {
          mapped = op * x.basis();
        }
        return orthonormalize(mapped, tol);
      },
      k, static_cast<int>(isometry.rows()));
}

}  // namespace wignerkit
