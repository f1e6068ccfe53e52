#include <cmath>

#include "doctest.h"
#include "test_helpers.hpp"
#include "wignerkit/grassmann.hpp"
#include "wignerkit/reconstruct.hpp"
#include "wignerkit/rng.hpp"

using namespace wignerkit;
using namespace wignerkit::testing;

namespace {

const Tolerance tol;

GrassmannOracle constant_oracle(int n, int k) {
  return GrassmannOracle(
      [n, k](const Subspace&) {
        return trusted_subspace(Matrix(Matrix::Identity(n, k)));
      },
      k, n);
}

}  // namespace

TEST_CASE("classify_and_reconstruct") {
  Rng rng(107);
  SUBCASE("identity table") {
    RayMapTable table = induced_table(Matrix::Identity(4, 4), OperatorClass::linear, 4,
                                      0, rng, tol);
    const auto rec = classify_and_reconstruct(table, 4, tol);
    CHECK(rec.cls == OperatorClass::linear);
    CHECK(rec.residual < 1e-12);
    CHECK((rec.matrix - Matrix::Identity(4, 4)).norm() < 1e-10);
  }
  SUBCASE("entrywise conjugation is conjugate-linear with identity matrix") {
    RayMapTable table = induced_table(Matrix::Identity(4, 4),
                                      OperatorClass::conjugate_linear, 4, 0, rng, tol);
    const auto rec = classify_and_reconstruct(table, 4, tol);
    CHECK(rec.cls == OperatorClass::conjugate_linear);
    CHECK((rec.matrix - Matrix::Identity(4, 4)).norm() < 1e-10);
  }
  SUBCASE("random unitary with 100 extra rays round-trips") {
    const Matrix u = random_unitary(5, rng);
    RayMapTable table = induced_table(u, OperatorClass::linear, 5, 100, rng, tol);
    const auto rec = classify_and_reconstruct(table, 5, tol);
    CHECK(rec.cls == OperatorClass::linear);
    CHECK(rec.residual < 1e-8);
    for (const auto& e : table.entries()) {
      CHECK(ray_distance(Ray(rec.apply(e.source.vector())), Ray(u * e.source.vector())) <
            1e-8);
    }
  }
  SUBCASE("round trip over dims 3..7, both classes") {
    for (int n = 3; n <= 7; ++n) {
      for (int t = 0; t < 8; ++t) {
        const auto cls =
            t % 2 == 0 ? OperatorClass::linear : OperatorClass::conjugate_linear;
        const Matrix u = random_unitary(n, rng);
        RayMapTable table = induced_table(u, cls, n, 10, rng, tol);
        const auto rec = classify_and_reconstruct(table, n, tol);
        CHECK(rec.cls == cls);
        CHECK(rec.residual < 1e-8);
      }
    }
  }
  SUBCASE("missing anchor rays are reported") {
    RayMapTable table;
    for (int j = 0; j < 4; ++j) table.insert(e_ray(4, j), e_ray(4, j), tol);
    CHECK_THROWS_AS(classify_and_reconstruct(table, 4, tol), std::invalid_argument);
  }
  SUBCASE("non-orthonormal basis images are rejected") {
    RayMapTable table = induced_table(Matrix::Identity(4, 4), OperatorClass::linear, 4,
                                      0, rng, tol);
    RayMapTable broken;
    for (std::size_t i = 0; i < table.size(); ++i) {
      const auto& e = table.entries()[i];
      broken.insert(e.source, i == 1 ? make_ray({Complex(1, 0), Complex(1, 0),
                                                 Complex(0, 0), Complex(0, 0)})
                                     : e.image,
                    tol);
    }
    CHECK_THROWS_AS(classify_and_reconstruct(broken, 4, tol), std::runtime_error);
  }
  SUBCASE("isometry invariant of the result matrix") {
    const Matrix u = random_unitary(6, rng);
    RayMapTable table = induced_table(u, OperatorClass::conjugate_linear, 6, 5, rng, tol);
    const auto rec = classify_and_reconstruct(table, 6, tol);
    CHECK((rec.matrix.adjoint() * rec.matrix - Matrix::Identity(6, 6)).norm() <
          tol.eps_orth);
  }
}

TEST_CASE("verify_induced") {
  Rng rng(109);
  SUBCASE("clean tables pass") {
    const Matrix u = random_unitary(4, rng);
    RayMapTable table = induced_table(u, OperatorClass::linear, 4, 10, rng, tol);
    const auto rec = classify_and_reconstruct(table, 4, tol);
    const auto report = verify_induced(table, rec, tol);
    CHECK(report.pass);
    CHECK(report.max_deviation < 1e-10);
  }
  SUBCASE("a replaced image is named") {
    const Matrix u = random_unitary(4, rng);
    RayMapTable table = induced_table(u, OperatorClass::linear, 4, 10, rng, tol);
    const auto rec = classify_and_reconstruct(table, 4, tol);
    RayMapTable perturbed;
    const std::size_t victim = table.size() - 1;
    for (std::size_t i = 0; i < table.size(); ++i) {
      const auto& e = table.entries()[i];
      perturbed.insert(e.source,
                       i == victim ? random_orthogonal_ray(e.image, rng) : e.image, tol);
    }
    const auto report = verify_induced(perturbed, rec, tol);
    CHECK_FALSE(report.pass);
    REQUIRE(report.failures.size() == 1);
    CHECK(report.failures[0].table_index == victim);
  }
  SUBCASE("conjugation followed by a permutation matrix") {
    Matrix perm = Matrix::Zero(4, 4);
    perm(0, 2) = 1;
    perm(1, 0) = 1;
    perm(2, 3) = 1;
    perm(3, 1) = 1;
    RayMapTable table =
        induced_table(perm, OperatorClass::conjugate_linear, 4, 20, rng, tol);
    const auto rec = classify_and_reconstruct(table, 4, tol);
    CHECK(rec.cls == OperatorClass::conjugate_linear);
    CHECK(verify_induced(table, rec, tol).pass);
  }
}

TEST_CASE("class detection is exact on generated fixtures") {
  Rng rng(113);
  int misclassified = 0;
  for (int t = 0; t < 60; ++t) {
    const int n = 3 + t % 5;
    const auto cls = t % 2 == 0 ? OperatorClass::linear : OperatorClass::conjugate_linear;
    const Matrix u = random_unitary(n, rng);
    RayMapTable table = induced_table(u, cls, n, 3, rng, tol);
    if (classify_and_reconstruct(table, n, tol).cls != cls) ++misclassified;
  }
  CHECK(misclassified == 0);
}

TEST_CASE("descend_star") {
  Rng rng(127);
  SUBCASE("unitary-induced oracle on G_2(C^5)") {
    const Matrix u = random_unitary(5, rng);
    const GrassmannOracle f = induced_oracle(u, OperatorClass::linear, 2, tol);
    const Subspace x = coord_subspace(5, {0});
    const Subspace descended = descend_star(f, x, 3, 17, tol);
    CHECK(subspaces_equal(descended, orthonormalize(u * x.basis(), tol), tol));
  }
  SUBCASE("identity oracle returns X itself") {
    const GrassmannOracle f =
        induced_oracle(Matrix::Identity(5, 5), OperatorClass::linear, 2, tol);
    const Subspace x = coord_subspace(5, {2});
    CHECK(subspaces_equal(descend_star(f, x, 3, 5, tol), x, tol));
  }
  SUBCASE("conjugate-linear oracle on C^6, 20 random anchors") {
    const Matrix u = random_unitary(6, rng);
    const GrassmannOracle f = induced_oracle(u, OperatorClass::conjugate_linear, 2, tol);
    for (int t = 0; t < 20; ++t) {
      const Subspace x = random_subspace(6, 1, rng, tol);
      const Subspace expect = orthonormalize(u * x.basis().conjugate(), tol);
      CHECK(subspaces_equal(descend_star(f, x, 3, 100 + t, tol), expect, tol));
    }
  }
  SUBCASE("constant oracle is rejected") {
    const GrassmannOracle f = constant_oracle(5, 2);
    CHECK_THROWS_AS(descend_star(f, coord_subspace(5, {0}), 3, 9, tol),
                    std::runtime_error);
  }
}

TEST_CASE("descend_full") {
  Rng rng(131);
  DescentOptions opt;
  opt.audit_rays = 6;
  opt.containment_samples = 3;
  opt.fresh_checks = 5;

  SUBCASE("identity on G_3(C^7)") {
    const GrassmannOracle f =
        induced_oracle(Matrix::Identity(7, 7), OperatorClass::linear, 3, tol);
    opt.seed = 21;
    const auto res = descend_full(f, opt, tol);
    CHECK(res.reconstruction.cls == OperatorClass::linear);
    CHECK((res.reconstruction.matrix - Matrix::Identity(7, 7)).norm() < 1e-8);
    CHECK(res.levels.size() == 2);
  }
  SUBCASE("random unitary on G_2(C^5) recovers the oracle action") {
    const Matrix u = random_unitary(5, rng);
    const GrassmannOracle f = induced_oracle(u, OperatorClass::linear, 2, tol);
    opt.seed = 22;
    const auto res = descend_full(f, opt, tol);
    CHECK(res.reconstruction.cls == OperatorClass::linear);
    for (int t = 0; t < 20; ++t) {
      const Subspace x = random_subspace(5, 2, rng, tol);
      const Subspace via = orthonormalize(res.reconstruction.apply_columns(x.basis()), tol);
      CHECK(subspace_distance(via, f(x)) < 1e-8);
    }
  }
  SUBCASE("conjugation-and-permutation on G_2(C^6)") {
    Matrix perm = Matrix::Zero(6, 6);
    perm(0, 1) = 1;
    perm(1, 2) = 1;
    perm(2, 0) = 1;
    perm(3, 4) = 1;
    perm(4, 5) = 1;
    perm(5, 3) = 1;
    const GrassmannOracle f = induced_oracle(perm, OperatorClass::conjugate_linear, 2, tol);
    opt.seed = 23;
    const auto res = descend_full(f, opt, tol);
    CHECK(res.reconstruction.cls == OperatorClass::conjugate_linear);
    for (int t = 0; t < 10; ++t) {
      const Subspace x = random_subspace(6, 2, rng, tol);
      const Subspace via = orthonormalize(res.reconstruction.apply_columns(x.basis()), tol);
      CHECK(subspace_distance(via, f(x)) < 1e-8);
    }
  }
  SUBCASE("phase-gauge invariance of the recovered ray map") {
    // Rescaling the oracle's output representatives never changes the
    // recovered ray map: projections compare equal either way.
    const Matrix u = random_unitary(5, rng);
    const Tolerance t2 = tol;
    const GrassmannOracle plain = induced_oracle(u, OperatorClass::linear, 2, tol);
    const GrassmannOracle rescaled(
        [u, t2](const Subspace& x) {
          const Subspace img = orthonormalize(u * x.basis(), t2);
          Matrix b = img.basis();
          for (Eigen::Index c = 0; c < b.cols(); ++c) {
            b.col(c) *= std::polar(1.0, 0.7 + 0.3 * static_cast<double>(c));
          }
          return trusted_subspace(std::move(b));
        },
        2, 5);
    opt.seed = 24;
    const auto res_a = descend_full(plain, opt, tol);
    const auto res_b = descend_full(rescaled, opt, tol);
    CHECK(res_a.reconstruction.cls == res_b.reconstruction.cls);
    Rng probe_rng(7);
    for (int t = 0; t < 10; ++t) {
      const Ray r = random_ray(5, probe_rng);
      CHECK(ray_distance(Ray(res_a.reconstruction.apply(r.vector())),
                         Ray(res_b.reconstruction.apply(r.vector()))) < 1e-8);
    }
  }
  SUBCASE("2k = n is rejected") {
    const GrassmannOracle f =
        induced_oracle(Matrix::Identity(4, 4), OperatorClass::linear, 2, tol);
    CHECK_THROWS_AS(descend_full(f, opt, tol), std::invalid_argument);
  }
  SUBCASE("constant oracle fails descent") {
    opt.seed = 25;
    CHECK_THROWS_AS(descend_full(constant_oracle(5, 2), opt, tol), std::runtime_error);
  }
}

TEST_CASE("conditions (A) and (B)") {
  Rng rng(137);
  SUBCASE("induced oracles pass A, B and upstream orthogonality") {
    for (int t = 0; t < 4; ++t) {
      const auto cls = t % 2 == 0 ? OperatorClass::linear : OperatorClass::conjugate_linear;
      const Matrix u = random_unitary(5, rng);
      const GrassmannOracle f = induced_oracle(u, cls, 2, tol);
      const auto report = check_conditions_AB(f, 20, 1000 + t, tol);
      CHECK(report.a_pass);
      CHECK(report.b_pass);
      CHECK(report.ortho_pass);
    }
  }
  SUBCASE("constant map fails A, passes B vacuously, breaks orthogonality") {
    const auto report = check_conditions_AB(constant_oracle(5, 2), 20, 3, tol);
    CHECK_FALSE(report.a_pass);
    CHECK(report.b_pass);
    CHECK_FALSE(report.ortho_pass);
  }
  SUBCASE("A and B verdicts agree across generated oracle families") {
    // The paper's equivalence surrogate: every sampled oracle that passes one
    // condition passes the other.
    for (int t = 0; t < 6; ++t) {
      GrassmannOracle f = t % 2 == 0
                              ? induced_oracle(random_unitary(5, rng),
                                               OperatorClass::linear, 2, tol)
                              : constant_oracle(5, 2);
      const auto report = check_conditions_AB(f, 15, 2000 + t, tol);
      // (B) holds vacuously for the constant map, so compare A against the
      // joint pass of B with image distinctness (ortho_pass witnesses it).
      CHECK(report.a_pass == (report.b_pass && report.ortho_pass));
    }
  }
}

TEST_CASE("oracle memoization is deterministic") {
  Rng rng(139);
  int calls = 0;
  const Matrix u = random_unitary(5, rng);
  const Tolerance t2 = tol;
  const GrassmannOracle f(
      [&calls, u, t2](const Subspace& x) {
        ++calls;
        return orthonormalize(u * x.basis(), t2);
      },
      2, 5);
  const Subspace x = random_subspace(5, 2, rng, tol);
  const Subspace first = f(x);
  const Subspace second = f(x);
  CHECK(calls == 1);
  CHECK(subspaces_equal(first, second, tol));
}
