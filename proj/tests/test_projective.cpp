#include "doctest.h"
#include "test_helpers.hpp"
#include "wignerkit/projective.hpp"
#include "wignerkit/rng.hpp"

using namespace wignerkit;
using namespace wignerkit::testing;

namespace {

const Tolerance tol;

Ray plus_ray(int n, int i, int j) {
  Vector v = Vector::Zero(n);
  v[i] = 1;
  v[j] = 1;
  return Ray(v);
}

}  // namespace

TEST_CASE("ray orthogonality") {
  CHECK(ray_orthogonal(e_ray(3, 0), e_ray(3, 1), tol));
  CHECK_FALSE(ray_orthogonal(e_ray(3, 0), plus_ray(3, 0, 1), tol));

  Rng rng(23);
  for (int t = 0; t < 20; ++t) {
    const Matrix u = random_unitary(4, rng);
    CHECK(ray_orthogonal(Ray(u.col(0)), Ray(u.col(2)), tol));
  }
}

TEST_CASE("transition probability") {
  CHECK(transition_probability(e_ray(3, 0), e_ray(3, 0)) == doctest::Approx(1.0));
  CHECK(transition_probability(e_ray(3, 0), e_ray(3, 1)) == doctest::Approx(0.0));
  CHECK(transition_probability(e_ray(3, 0), plus_ray(3, 0, 1)) == doctest::Approx(0.5));

  SUBCASE("equals trace of the projection product") {
    Rng rng(29);
    for (int t = 0; t < 30; ++t) {
      const Ray p = random_ray(4, rng);
      const Ray q = random_ray(4, rng);
      const Matrix pp = projection_of(Subspace::from_ray(p));
      const Matrix pq = projection_of(Subspace::from_ray(q));
      CHECK(std::abs(transition_probability(p, q) - (pp * pq).trace().real()) < 1e-12);
    }
  }

  SUBCASE("symmetric and unitarily invariant") {
    Rng rng(31);
    for (int t = 0; t < 30; ++t) {
      const Ray p = random_ray(5, rng);
      const Ray q = random_ray(5, rng);
      const Matrix u = random_unitary(5, rng);
      CHECK(std::abs(transition_probability(p, q) - transition_probability(q, p)) < 1e-12);
      CHECK(std::abs(transition_probability(p, q) -
                     transition_probability(Ray(u * p.vector()), Ray(u * q.vector()))) <
            1e-10);
    }
  }
}

TEST_CASE("line through two rays") {
  CHECK(subspaces_equal(line_through(e_ray(3, 0), e_ray(3, 1), tol).carrier,
                        coord_subspace(3, {0, 1}), tol));
  CHECK(subspaces_equal(line_through(e_ray(3, 0), plus_ray(3, 0, 1), tol).carrier,
                        coord_subspace(3, {0, 1}), tol));
  CHECK_THROWS_AS(line_through(e_ray(3, 0), e_ray(3, 0), tol), std::invalid_argument);
}

TEST_CASE("line sampling") {
  const Line l(coord_subspace(4, {0, 1}));
  const auto rays = sample_line(l, 3, 5, tol);
  CHECK(rays.size() == 3);
  for (const Ray& r : rays) CHECK(member(l.carrier, r.vector(), tol.eps_eq));
  for (std::size_t i = 0; i < rays.size(); ++i) {
    for (std::size_t j = i + 1; j < rays.size(); ++j) {
      CHECK_FALSE(rays_equal(rays[i], rays[j], tol));
    }
  }

  SUBCASE("deterministic given seed") {
    const auto again = sample_line(l, 3, 5, tol);
    for (std::size_t i = 0; i < rays.size(); ++i) {
      CHECK(rays_equal(rays[i], again[i], tol));
    }
  }

  SUBCASE("images under a unitary stay on the image line") {
    Rng rng(37);
    const Matrix u = random_unitary(4, rng);
    const Subspace mapped = orthonormalize(u * l.carrier.basis(), tol);
    for (const Ray& r : sample_line(l, 7, 2, tol)) {
      CHECK(member(mapped, u * r.vector(), tol.eps_eq));
    }
  }

  CHECK_THROWS_AS(sample_line(l, 2, 5, tol), std::invalid_argument);
}

TEST_CASE("orthogonality-preservation check") {
  SUBCASE("identity table passes") {
    RayMapTable f;
    for (int j = 0; j < 3; ++j) f.insert(e_ray(3, j), e_ray(3, j), tol);
    CHECK(check_orthogonality_preserving(f, tol).pass);
  }
  SUBCASE("a collapsed image pair is reported") {
    RayMapTable f;
    f.insert(e_ray(3, 0), e_ray(3, 0), tol);
    f.insert(e_ray(3, 1), plus_ray(3, 0, 1), tol);
    const auto report = check_orthogonality_preserving(f, tol);
    CHECK_FALSE(report.pass);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].first_index == 0);
    CHECK(report.violations[0].second_index == 1);
  }
  SUBCASE("anti-unitary tables pass, orthocomplement partners included") {
    Rng rng(41);
    const Matrix u = random_unitary(5, rng);
    RayMapTable f;
    for (int t = 0; t < 50; ++t) {
      const Ray p = random_ray(5, rng);
      const Ray partner = random_orthogonal_ray(p, rng);
      for (const Ray& src : {p, partner}) {
        if (f.lookup(src, tol) == nullptr) {
          f.insert(src, Ray(u * src.vector().conjugate()), tol);
        }
      }
    }
    CHECK(check_orthogonality_preserving(f, tol).pass);
  }
}

TEST_CASE("induced line image") {
  SUBCASE("identity on C^4 reproduces the line") {
    RayMapTable f;
    f.insert(e_ray(4, 2), e_ray(4, 2), tol);
    f.insert(e_ray(4, 3), e_ray(4, 3), tol);
    const Line s(coord_subspace(4, {0, 1}));
    CHECK(subspaces_equal(induced_line_image(f, s, tol).carrier, s.carrier, tol));
  }
  SUBCASE("unitary-induced tables map S to U(S)") {
    Rng rng(43);
    for (int t = 0; t < 10; ++t) {
      const Matrix u = random_unitary(5, rng);
      const Ray a = random_ray(5, rng);
      const Line s = line_through(a, random_orthogonal_ray(a, rng), tol);
      const Subspace perp = complement(s.carrier, tol);
      RayMapTable f;
      for (Eigen::Index c = 0; c < perp.dim(); ++c) {
        const Ray src(perp.basis().col(c));
        f.insert(src, Ray(u * src.vector()), tol);
      }
      const Line image = induced_line_image(f, s, tol);
      CHECK(subspaces_equal(image.carrier, orthonormalize(u * s.carrier.basis(), tol),
                            tol));
    }
  }
  SUBCASE("non-orthogonal images are rejected") {
    RayMapTable f;
    f.insert(e_ray(4, 2), e_ray(4, 2), tol);
    f.insert(e_ray(4, 3), plus_ray(4, 2, 3), tol);
    const Line s(coord_subspace(4, {0, 1}));
    CHECK_THROWS_AS(induced_line_image(f, s, tol), std::runtime_error);
  }
  SUBCASE("missing spanning rays are rejected") {
    RayMapTable f;
    f.insert(e_ray(4, 2), e_ray(4, 2), tol);
    f.insert(e_ray(4, 0), e_ray(4, 0), tol);
    const Line s(coord_subspace(4, {0, 1}));
    CHECK_THROWS_AS(induced_line_image(f, s, tol), std::invalid_argument);
  }
}

namespace {

/// Table + line family induced by a generator over sampled lines.
struct SampledMap {
  RayMapTable table;
  std::vector<LineFamilyEntry> family;
};

SampledMap sampled_induced_map(const Matrix& u, OperatorClass cls, int n, int num_lines,
                               int rays_per_line, Rng& rng) {
  SampledMap out;
  for (int li = 0; li < num_lines; ++li) {
    const Ray a = random_ray(n, rng);
    const Line line = line_through(a, random_orthogonal_ray(a, rng), tol);
    LineFamilyEntry entry{line, {}};
    for (const Ray& src : sample_line(line, rays_per_line, 1000 + li, tol)) {
      if (out.table.lookup(src, tol) == nullptr) {
        out.table.insert(src, Ray(apply_generator(u, cls, src.vector())), tol);
      }
      entry.members.push_back(src);
    }
    out.family.push_back(std::move(entry));
  }
  return out;
}

}  // namespace

TEST_CASE("lineation check") {
  Rng rng(47);
  SUBCASE("identity passes") {
    const auto m = sampled_induced_map(Matrix::Identity(4, 4), OperatorClass::linear, 4,
                                       3, 5, rng);
    CHECK(check_lineation(m.table, m.family, tol).pass);
  }
  SUBCASE("rank-3 image set fails on that line") {
    RayMapTable f;
    const Line line(coord_subspace(4, {0, 1}));
    const auto members = sample_line(line, 3, 9, tol);
    for (std::size_t i = 0; i < members.size(); ++i) {
      f.insert(members[i], e_ray(4, static_cast<int>(i)), tol);
    }
    const std::vector<LineFamilyEntry> family = {{line, members}};
    const auto report = check_lineation(f, family, tol);
    CHECK_FALSE(report.pass);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].first_index == 0);
  }
  SUBCASE("random unitary over 20 sampled lines in C^5 passes") {
    const Matrix u = random_unitary(5, rng);
    const auto m = sampled_induced_map(u, OperatorClass::linear, 5, 20, 5, rng);
    CHECK(check_lineation(m.table, m.family, tol).pass);
  }
}

TEST_CASE("non-degeneracy check") {
  Rng rng(53);
  SUBCASE("identity on lines of C^4 passes both conditions") {
    const auto m = sampled_induced_map(Matrix::Identity(4, 4), OperatorClass::linear, 4,
                                       3, 5, rng);
    const auto report = check_nondegenerate(m.table, m.family, tol);
    CHECK(report.l1_pass);
    CHECK(report.l2_pass);
  }
  SUBCASE("constant map fails both conditions") {
    auto m = sampled_induced_map(Matrix::Identity(4, 4), OperatorClass::linear, 4, 2, 4,
                                 rng);
    RayMapTable constant;
    for (const auto& e : m.table.entries()) {
      constant.insert(e.source, e_ray(4, 0), tol);
    }
    const auto report = check_nondegenerate(constant, m.family, tol);
    CHECK_FALSE(report.l1_pass);
    CHECK_FALSE(report.l2_pass);
  }
  SUBCASE("two images per line fails (L2)") {
    auto m = sampled_induced_map(Matrix::Identity(5, 5), OperatorClass::linear, 5, 3, 5,
                                 rng);
    RayMapTable collapsed;
    for (const auto& entry : m.family) {
      const Ray a(entry.line.carrier.basis().col(0));
      const Ray b(entry.line.carrier.basis().col(1));
      int i = 0;
      for (const Ray& src : entry.members) {
        if (collapsed.lookup(src, tol) == nullptr) {
          collapsed.insert(src, i % 2 == 0 ? a : b, tol);
        }
        ++i;
      }
    }
    const auto report = check_nondegenerate(collapsed, m.family, tol);
    CHECK_FALSE(report.l2_pass);
    CHECK(report.l2_failing_lines.size() == m.family.size());
  }
}

TEST_CASE("line family derivation from a table") {
  RayMapTable f;
  const Line line(coord_subspace(4, {0, 1}));
  for (const Ray& src : sample_line(line, 4, 3, tol)) {
    f.insert(src, src, tol);
  }
  f.insert(e_ray(4, 3), e_ray(4, 3), tol);  // off the line, no 3-member line through it
  const auto family = lines_from_table(f, 3, tol);
  REQUIRE(family.size() == 1);
  CHECK(subspaces_equal(family[0].line.carrier, line.carrier, tol));
  CHECK(family[0].members.size() == 4);
}

TEST_CASE("ray map table rejects duplicates and mixed dimensions") {
  RayMapTable f;
  f.insert(e_ray(3, 0), e_ray(3, 1), tol);
  CHECK_THROWS_AS(f.insert(e_ray(3, 0), e_ray(3, 2), tol), std::invalid_argument);
  CHECK_THROWS_AS(f.insert(e_ray(4, 0), e_ray(4, 0), tol), std::invalid_argument);
}
