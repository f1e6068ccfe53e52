#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "test_helpers.hpp"
#include "wignerkit/fixtures.hpp"
#include "wignerkit/json_io.hpp"
#include "wignerkit/rng.hpp"

using namespace wignerkit;
using namespace wignerkit::testing;

namespace {
const Tolerance tol;
}

TEST_CASE("matrix round trip preserves entries exactly") {
  Rng rng(151);
  for (int t = 0; t < 20; ++t) {
    Matrix m(4, 3);
    for (int j = 0; j < 3; ++j) m.col(j) = random_vector(4, rng);
    const Matrix back = matrix_from_json(matrix_to_json(m));
    CHECK((m - back).norm() == 0.0);  // doubles serialized losslessly
  }
}

TEST_CASE("matrix JSON rejects malformed input") {
  CHECK_THROWS_AS(matrix_from_json(json{{"rows", 2}, {"cols", 2}}), std::invalid_argument);
  CHECK_THROWS_AS(matrix_from_json(json{{"rows", 2},
                                        {"cols", 2},
                                        {"data", json::array({1, 2, 3, 4})}}),
                  std::invalid_argument);
  json short_data{{"rows", 2}, {"cols", 2}, {"data", json::array()}};
  CHECK_THROWS_AS(matrix_from_json(short_data), std::invalid_argument);
}

TEST_CASE("table round trip") {
  Rng rng(157);
  const Matrix u = random_unitary(4, rng);
  RayMapTable table = induced_table(u, OperatorClass::linear, 4, 5, rng, tol);
  const RayMapTable back = table_from_json(table_to_json(table), tol);
  REQUIRE(back.size() == table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    CHECK(rays_equal(back.entries()[i].source, table.entries()[i].source, tol));
    CHECK(rays_equal(back.entries()[i].image, table.entries()[i].image, tol));
  }
}

TEST_CASE("hypergraph files match the canonical fixtures") {
  const std::string data_dir = WIGNERKIT_DATA_DIR;
  SUBCASE("peres33.json") {
    const OrthoHypergraph from_file =
        hypergraph_from_json(load_json_file(data_dir + "/peres33.json"), tol);
    const OrthoHypergraph canonical = build_hypergraph(peres_33_rays(), 3, tol);
    REQUIRE(from_file.rays.size() == canonical.rays.size());
    for (std::size_t i = 0; i < canonical.rays.size(); ++i) {
      CHECK(rays_equal(from_file.rays[i], canonical.rays[i], tol));
    }
    CHECK(from_file.contexts.size() == canonical.contexts.size());
  }
  SUBCASE("cabello18.json") {
    const OrthoHypergraph from_file =
        hypergraph_from_json(load_json_file(data_dir + "/cabello18.json"), tol);
    const OrthoHypergraph canonical = ceg_18_hypergraph(tol);
    REQUIRE(from_file.rays.size() == canonical.rays.size());
    CHECK(from_file.contexts == canonical.contexts);
  }
}

TEST_CASE("reconstruction result round trip") {
  Rng rng(163);
  const Matrix u = random_unitary(4, rng);
  RayMapTable table = induced_table(u, OperatorClass::conjugate_linear, 4, 3, rng, tol);
  const ReconstructionResult rec = classify_and_reconstruct(table, 4, tol);
  const ReconstructionResult back = reconstruction_from_json(reconstruction_to_json(rec), tol);
  CHECK(back.cls == rec.cls);
  CHECK((back.matrix - rec.matrix).norm() == 0.0);
  CHECK(back.certificate.size() == rec.certificate.size());
}

TEST_CASE("oracle files") {
  Rng rng(167);
  const Matrix u = random_unitary(5, rng);
  SUBCASE("generator form") {
    const json j{{"matrix", matrix_to_json(u)}, {"class", "linear"}, {"k", 2}};
    const GrassmannOracle f = oracle_from_json(j, tol);
    const Subspace x = random_subspace(5, 2, rng, tol);
    CHECK(subspaces_equal(f(x), orthonormalize(u * x.basis(), tol), tol));
  }
  SUBCASE("tabulated form") {
    const Subspace x = random_subspace(5, 2, rng, tol);
    const Subspace img = orthonormalize(u * x.basis(), tol);
    const json j{{"k", 2},
                 {"pairs", json::array({json{{"source", subspace_to_json(x)},
                                             {"image", subspace_to_json(img)}}})}};
    const GrassmannOracle f = oracle_from_json(j, tol);
    CHECK(subspaces_equal(f(x), img, tol));
    CHECK_THROWS_AS(f(random_subspace(5, 2, rng, tol)), std::invalid_argument);
  }
}

TEST_CASE("file loader reports parse position") {
  const std::string path = "/tmp/wignerkit_bad_json_test.json";
  {
    std::ofstream out(path);
    out << "{ \"rows\": 2, ";
  }
  CHECK_THROWS_AS(load_json_file(path), std::invalid_argument);
  try {
    load_json_file(path);
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    CHECK(msg.find(path) != std::string::npos);
    CHECK(msg.find("parse error") != std::string::npos);
  }
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_json_file("/nonexistent/nope.json"), std::invalid_argument);
}
