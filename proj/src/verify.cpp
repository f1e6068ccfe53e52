#include "wignerkit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include "wignerkit/fixtures.hpp"
#include "wignerkit/grassmann.hpp"
#include "wignerkit/json_io.hpp"
#include "wignerkit/measure.hpp"
#include "wignerkit/projective.hpp"
#include "wignerkit/reconstruct.hpp"
#include "wignerkit/rng.hpp"

namespace wignerkit {

namespace {

Ray basis_ray(int n, int j) {
  Vector v = Vector::Zero(n);
  v[j] = Complex(1.0, 0.0);
  return Ray(v);
}

Vector apply_generator(const Matrix& u, OperatorClass cls, const Vector& v) {
  return cls == OperatorClass::conjugate_linear ? Vector(u * v.conjugate()) : Vector(u * v);
}

/// Table induced by a generator on the anchor rays required by
/// classify_and_reconstruct plus `extra` random rays.
RayMapTable induced_table(const Matrix& u, OperatorClass cls, int n, int extra,
                          Rng& rng, const Tolerance& tol) {
  std::vector<Ray> sources;
  for (int j = 0; j < n; ++j) sources.push_back(basis_ray(n, j));
  for (int j = 1; j < n; ++j) {
    Vector v = Vector::Zero(n);
    v[0] = Complex(1, 0);
    v[j] = Complex(1, 0);
    sources.emplace_back(v);
  }
  {
    Vector v = Vector::Zero(n);
    v[0] = Complex(1, 0);
    v[1] = Complex(0, 1);
    sources.emplace_back(v);
  }
  for (int i = 0; i < extra; ++i) sources.push_back(random_ray(n, rng));

  RayMapTable table;
  for (const Ray& src : sources) {
    if (table.lookup(src, tol) == nullptr) {
      table.insert(src, Ray(apply_generator(u, cls, src.vector())), tol);
    }
  }
  return table;
}

std::vector<int> distinct_ambients(const SuiteConfig& config) {
  std::set<int> ns;
  for (const auto& [n, k] : config.dims) ns.insert(n);
  return {ns.begin(), ns.end()};
}

struct AnchorContext {
  const SuiteConfig& config;
  const Tolerance& tol;
  bool inject;
};

AnchorResult lemma1_lineation(const AnchorContext& ctx) {
  AnchorResult r{"lemma-1-lineation", true, 0, ""};
  for (int n : distinct_ambients(ctx.config)) {
    for (int t = 0; t < std::max(2, ctx.config.trials / 4); ++t) {
      Rng rng(mix_seed(ctx.config.seed, 0x11 + static_cast<std::uint64_t>(100 * n + t)));
      const Matrix u = random_unitary(n, rng);
      const OperatorClass cls =
          t % 2 == 0 ? OperatorClass::linear : OperatorClass::conjugate_linear;

      // Three random lines, each sampled to five rays.
      std::vector<Line> lines;
      for (int li = 0; li < 3; ++li) {
        const Ray a = random_ray(n, rng);
        lines.push_back(line_through(a, random_orthogonal_ray(a, rng), ctx.tol));
      }
      RayMapTable table;
      std::vector<LineFamilyEntry> family;
      for (std::size_t li = 0; li < lines.size(); ++li) {
        LineFamilyEntry entry{lines[li], {}};
        for (const Ray& src : sample_line(lines[li], 5,
                                          mix_seed(ctx.config.seed, 7 * li + 1), ctx.tol)) {
          if (table.lookup(src, ctx.tol) == nullptr) {
            table.insert(src, Ray(apply_generator(u, cls, src.vector())), ctx.tol);
          }
          entry.members.push_back(src);
        }
        family.push_back(std::move(entry));
      }
      // Orthogonal spanning rays of the first line's complement, so the
      // induced line image is computable.
      const Subspace comp = complement(lines[0].carrier, ctx.tol);
      for (Eigen::Index c = 0; c < comp.dim(); ++c) {
        const Ray src(comp.basis().col(c));
        if (table.lookup(src, ctx.tol) == nullptr) {
          table.insert(src, Ray(apply_generator(u, cls, src.vector())), ctx.tol);
        }
      }

      if (ctx.inject && t == 0) {
        // Corrupt one member image so the line's image set gains full rank.
        RayMapTable corrupted;
        std::size_t flip = 2;
        for (std::size_t i = 0; i < table.size(); ++i) {
          const auto& e = table.entries()[i];
          corrupted.insert(e.source, i == flip ? random_ray(n, rng) : e.image, ctx.tol);
        }
        table = corrupted;
      }

      ++r.trials;
      if (!check_orthogonality_preserving(table, ctx.tol).pass ||
          !check_lineation(table, family, ctx.tol).pass) {
        r.pass = false;
        continue;
      }
      const Line induced = induced_line_image(table, lines[0], ctx.tol);
      Matrix mapped = cls == OperatorClass::conjugate_linear
                          ? Matrix(u * lines[0].carrier.basis().conjugate())
                          : Matrix(u * lines[0].carrier.basis());
      if (subspace_distance(induced.carrier, orthonormalize(mapped, ctx.tol)) >
          ctx.tol.eps_eq) {
        r.pass = false;
      }
    }
  }
  return r;
}

AnchorResult nondegeneracy(const AnchorContext& ctx) {
  AnchorResult r{"nondegeneracy", true, 0, ""};
  for (int n : distinct_ambients(ctx.config)) {
    for (int t = 0; t < std::max(2, ctx.config.trials / 4); ++t) {
      Rng rng(mix_seed(ctx.config.seed, 0x22 + static_cast<std::uint64_t>(100 * n + t)));
      const Matrix u = random_unitary(n, rng);
      const OperatorClass cls =
          t % 2 == 0 ? OperatorClass::linear : OperatorClass::conjugate_linear;

      RayMapTable table;
      std::vector<LineFamilyEntry> family;
      const bool collapse = ctx.inject && t == 0;
      for (int li = 0; li < 3; ++li) {
        const Ray a = random_ray(n, rng);
        const Line line = line_through(a, random_orthogonal_ray(a, rng), ctx.tol);
        LineFamilyEntry entry{line, {}};
        const Ray collapse_a(line.carrier.basis().col(0));
        const Ray collapse_b(line.carrier.basis().col(1));
        int mi = 0;
        for (const Ray& src : sample_line(line, 5, mix_seed(ctx.config.seed, 13 * li + 3),
                                          ctx.tol)) {
          if (table.lookup(src, ctx.tol) == nullptr) {
            // Faulted fixture: every line collapses onto two image rays.
            const Ray img = collapse ? (mi % 2 == 0 ? collapse_a : collapse_b)
                                     : Ray(apply_generator(u, cls, src.vector()));
            table.insert(src, img, ctx.tol);
          }
          entry.members.push_back(src);
          ++mi;
        }
        family.push_back(std::move(entry));
      }
      ++r.trials;
      const NondegenerateReport report = check_nondegenerate(table, family, ctx.tol);
      if (!report.l1_pass || !report.l2_pass) r.pass = false;
    }
  }

  // Constructed negatives must be caught: constant map fails both conditions.
  {
    const int n = distinct_ambients(ctx.config).front();
    Rng rng(mix_seed(ctx.config.seed, 0x2222));
    RayMapTable constant;
    std::vector<LineFamilyEntry> family;
    const Ray target = basis_ray(n, 0);
    for (int li = 0; li < 2; ++li) {
      const Ray a = random_ray(n, rng);
      const Line line = line_through(a, random_orthogonal_ray(a, rng), ctx.tol);
      LineFamilyEntry entry{line, {}};
      for (const Ray& src : sample_line(line, 4, mix_seed(ctx.config.seed, 17 * li), ctx.tol)) {
        if (constant.lookup(src, ctx.tol) == nullptr) {
          constant.insert(src, target, ctx.tol);
        }
        entry.members.push_back(src);
      }
      family.push_back(std::move(entry));
    }
    ++r.trials;
    const NondegenerateReport report = check_nondegenerate(constant, family, ctx.tol);
    if (report.l1_pass || report.l2_pass) r.pass = false;
  }
  return r;
}

AnchorResult lemma430_cliques(const AnchorContext& ctx) {
  AnchorResult r{"lemma-4.30-cliques", true, 0, ""};
  for (const auto& [n, k] : ctx.config.dims) {
    Rng rng(mix_seed(ctx.config.seed, 0x430 + static_cast<std::uint64_t>(n * 10 + k)));
    const int pool = std::max(20, ctx.config.trials);

    const Subspace star_anchor = random_subspace(n, k - 1, rng, ctx.tol);
    std::vector<Subspace> star_clique =
        max_compatible_clique(CliqueKind::star, star_anchor, ctx.tol);
    if (ctx.inject && !star_clique.empty()) star_clique.pop_back();
    ++r.trials;
    if (static_cast<int>(star_clique.size()) != n - k + 1 ||
        !clique_extension_fails(CliqueKind::star, star_anchor, star_clique, pool,
                                mix_seed(ctx.config.seed, 0x5a), ctx.tol)) {
      r.pass = false;
    }

    const Subspace top_anchor = random_subspace(n, k + 1, rng, ctx.tol);
    const std::vector<Subspace> top_clique =
        max_compatible_clique(CliqueKind::top, top_anchor, ctx.tol);
    ++r.trials;
    if (static_cast<int>(top_clique.size()) != k + 1 ||
        !clique_extension_fails(CliqueKind::top, top_anchor, top_clique, pool,
                                mix_seed(ctx.config.seed, 0x70), ctx.tol)) {
      r.pass = false;
    }
  }
  return r;
}

AnchorResult lemma431_geodesics(const AnchorContext& ctx) {
  AnchorResult r{"lemma-4.31-geodesics", true, 0, ""};
  for (const auto& [n, k] : ctx.config.dims) {
    for (int t = 0; t < std::max(2, ctx.config.trials / 2); ++t) {
      Rng rng(mix_seed(ctx.config.seed,
                       0x431 + static_cast<std::uint64_t>(n * 100 + k * 10 + t)));
      const Subspace joint = random_subspace(n, 2 * k, rng, ctx.tol);
      const Subspace x = trusted_subspace(Matrix(joint.basis().leftCols(k)));
      const Subspace y = trusted_subspace(Matrix(joint.basis().rightCols(k)));
      GrassmannPath path = geodesic(x, y, ctx.tol);
      if (ctx.inject && t == 0 && path.nodes.size() > 2) {
        path.nodes[1] = random_subspace(n, k, rng, ctx.tol);
      }
      ++r.trials;
      for (std::size_t i = 0; i < path.nodes.size() && r.pass; ++i) {
        for (std::size_t j = i + 1; j < path.nodes.size(); ++j) {
          if (!is_compatible(path.nodes[i], path.nodes[j], ctx.tol)) {
            r.pass = false;
            break;
          }
        }
      }
    }
  }
  return r;
}

AnchorResult distance_formula(const AnchorContext& ctx) {
  AnchorResult r{"distance-formula", true, 0, ""};
  for (const auto& [n, k] : ctx.config.dims) {
    for (int t = 0; t < ctx.config.trials; ++t) {
      Rng rng(mix_seed(ctx.config.seed,
                       0xd15 + static_cast<std::uint64_t>(n * 1000 + k * 100 + t)));
      std::uniform_int_distribution<int> shared(0, k);
      const int s = shared(rng);
      Matrix bx(n, k), by(n, k);
      if (s > 0) {
        const Subspace core = random_subspace(n, s, rng, ctx.tol);
        bx.leftCols(s) = core.basis();
        by.leftCols(s) = core.basis();
      }
      for (int c = s; c < k; ++c) {
        bx.col(c) = random_vector(n, rng);
        by.col(c) = random_vector(n, rng);
      }
      const Subspace x = orthonormalize(bx, ctx.tol);
      const Subspace y = orthonormalize(by, ctx.tol);
      ++r.trials;
      const int d = grassmann_distance(x, y, ctx.tol);  // throws on any mismatch
      const int expected = (ctx.inject && t == 0) ? (k - s + 1) : (k - s);
      if (d != expected) r.pass = false;
    }
  }
  return r;
}

AnchorResult theorem2_roundtrip(const AnchorContext& ctx) {
  AnchorResult r{"theorem-2-roundtrip", true, 0, ""};
  for (int n : distinct_ambients(ctx.config)) {
    for (int t = 0; t < std::max(4, ctx.config.trials / 2); ++t) {
      Rng rng(mix_seed(ctx.config.seed, 0x72 + static_cast<std::uint64_t>(n * 100 + t)));
      const Matrix u = random_unitary(n, rng);
      const OperatorClass cls =
          t % 2 == 0 ? OperatorClass::linear : OperatorClass::conjugate_linear;
      RayMapTable table = induced_table(u, cls, n, 5, rng, ctx.tol);
      if (ctx.inject && t == 0) {
        RayMapTable corrupted;
        for (std::size_t i = 0; i < table.size(); ++i) {
          const auto& e = table.entries()[i];
          if (i + 1 == table.size()) {
            Vector v = e.image.vector();
            Vector off = random_vector(n, rng);
            off -= inner(off, v) * v;
            off.normalize();
            corrupted.insert(e.source, Ray(std::cos(0.01) * v + std::sin(0.01) * off),
                             ctx.tol);
          } else {
            corrupted.insert(e.source, e.image, ctx.tol);
          }
        }
        table = corrupted;
      }
      ++r.trials;
      try {
        const ReconstructionResult rec = classify_and_reconstruct(table, n, ctx.tol);
        if (rec.cls != cls || rec.residual > ctx.tol.eps_reconstruct) r.pass = false;
      } catch (const std::runtime_error&) {
        r.pass = false;
      }
    }
  }
  return r;
}

AnchorResult theorem4_descent(const AnchorContext& ctx) {
  AnchorResult r{"theorem-4-descent", true, 0, ""};
  for (const auto& [n, k] : ctx.config.dims) {
    for (int t = 0; t < 2; ++t) {
      Rng rng(mix_seed(ctx.config.seed, 0x74 + static_cast<std::uint64_t>(n * 100 + t)));
      const OperatorClass cls =
          t % 2 == 0 ? OperatorClass::linear : OperatorClass::conjugate_linear;
      const Matrix u = random_unitary(n, rng);
      GrassmannOracle oracle =
          (ctx.inject && t == 0)
              ? GrassmannOracle(
                    [n = n, k = k](const Subspace&) {
                      Matrix b = Matrix::Identity(n, k);
                      return trusted_subspace(std::move(b));
                    },
                    k, n)
              : induced_oracle(u, cls, k, ctx.tol);
      DescentOptions opt;
      opt.audit_rays = 6;
      opt.containment_samples = 3;
      opt.fresh_checks = 5;
      opt.seed = mix_seed(ctx.config.seed, static_cast<std::uint64_t>(n * 7 + t));
      ++r.trials;
      try {
        const DescentResult res = descend_full(oracle, opt, ctx.tol);
        if (res.reconstruction.cls != cls) r.pass = false;
      } catch (const std::runtime_error&) {
        r.pass = false;
      }
    }
  }
  return r;
}

AnchorResult conditions_ab(const AnchorContext& ctx) {
  AnchorResult r{"conditions-ab", true, 0, ""};
  for (const auto& [n, k] : ctx.config.dims) {
    for (int t = 0; t < std::max(2, ctx.config.trials / 8); ++t) {
      Rng rng(mix_seed(ctx.config.seed, 0xab0 + static_cast<std::uint64_t>(n * 100 + t)));
      const OperatorClass cls =
          t % 2 == 0 ? OperatorClass::linear : OperatorClass::conjugate_linear;
      GrassmannOracle oracle =
          (ctx.inject && t == 0)
              ? GrassmannOracle(
                    [n = n, k = k](const Subspace&) {
                      Matrix b = Matrix::Identity(n, k);
                      return trusted_subspace(std::move(b));
                    },
                    k, n)
              : induced_oracle(random_unitary(n, rng), cls, k, ctx.tol);
      ++r.trials;
      const ConditionsReport report = check_conditions_AB(
          oracle, 10, mix_seed(ctx.config.seed, static_cast<std::uint64_t>(t)), ctx.tol);
      if (!report.a_pass || !report.b_pass || !report.ortho_pass) r.pass = false;
    }
  }

  // The constant map must fail (A) while (B) passes vacuously on equal images.
  {
    const auto [n, k] = ctx.config.dims.front();
    GrassmannOracle constant(
        [n = n, k = k](const Subspace&) {
          Matrix b = Matrix::Identity(n, k);
          return trusted_subspace(std::move(b));
        },
        k, n);
    ++r.trials;
    const ConditionsReport report =
        check_conditions_AB(constant, 10, mix_seed(ctx.config.seed, 0xcafe), ctx.tol);
    if (report.a_pass || !report.b_pass || report.ortho_pass) r.pass = false;
  }
  return r;
}

AnchorResult gleason_witness(const AnchorContext& ctx) {
  AnchorResult r{"gleason-witness", true, 0, ""};

  const OrthoHypergraph peres =
      ctx.inject
          ? build_hypergraph({basis_ray(3, 0), basis_ray(3, 1), basis_ray(3, 2)}, 3, ctx.tol)
          : build_hypergraph(peres_33_rays(), 3, ctx.tol);
  const OrthoHypergraph ceg = ceg_18_hypergraph(ctx.tol);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    ++r.trials;
    if (find_two_valued_measure(peres, seed).sat) r.pass = false;
    ++r.trials;
    if (find_two_valued_measure(ceg, seed).sat) r.pass = false;
  }

  for (int d = 3; d <= 5; ++d) {
    std::vector<Ray> basis;
    for (int j = 0; j < d; ++j) basis.push_back(basis_ray(d, j));
    const OrthoHypergraph h = build_hypergraph(basis, d, ctx.tol);
    ++r.trials;
    const SearchResult res = find_two_valued_measure(h);
    if (!res.sat || !verify_assignment(h, *res.assignment)) r.pass = false;
  }
  return r;
}

}  // namespace

const std::vector<std::string>& suite_anchor_names() {
  static const std::vector<std::string> names = {
      "lemma-1-lineation",    "nondegeneracy",       "lemma-4.30-cliques",
      "lemma-4.31-geodesics", "distance-formula",    "theorem-2-roundtrip",
      "theorem-4-descent",    "conditions-ab",       "gleason-witness",
  };
  return names;
}

std::vector<AnchorResult> run_verify_suite(const SuiteConfig& config, const Tolerance& tol) {
  if (config.dims.empty()) {
    throw std::invalid_argument("verify suite: dims must be nonempty");
  }
  for (const auto& [n, k] : config.dims) {
    if (k < 2 || 2 * k >= n) {
      throw std::invalid_argument("verify suite: each (n,k) must satisfy 2k < n, k >= 2");
    }
  }
  if (!config.inject_fault.empty()) {
    const auto& names = suite_anchor_names();
    if (std::find(names.begin(), names.end(), config.inject_fault) == names.end()) {
      throw std::invalid_argument("verify suite: unknown anchor " + config.inject_fault);
    }
  }

  using AnchorFn = std::function<AnchorResult(const AnchorContext&)>;
  const std::vector<std::pair<std::string, AnchorFn>> anchors = {
      {"lemma-1-lineation", lemma1_lineation},
      {"nondegeneracy", nondegeneracy},
      {"lemma-4.30-cliques", lemma430_cliques},
      {"lemma-4.31-geodesics", lemma431_geodesics},
      {"distance-formula", distance_formula},
      {"theorem-2-roundtrip", theorem2_roundtrip},
      {"theorem-4-descent", theorem4_descent},
      {"conditions-ab", conditions_ab},
      {"gleason-witness", gleason_witness},
  };

  std::vector<AnchorResult> results;
  results.reserve(anchors.size());
  for (const auto& [name, fn] : anchors) {
    AnchorContext ctx{config, tol, config.inject_fault == name};
    try {
      results.push_back(fn(ctx));
    } catch (const std::exception& e) {
      AnchorResult failed{name, false, 0, e.what()};
      results.push_back(std::move(failed));
    }
  }
  return results;
}

}  // namespace wignerkit
