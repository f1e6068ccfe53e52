#include "wignerkit/json_io.hpp"

#include <fstream>

namespace wignerkit {

json matrix_to_json(const Matrix& m) {
  json data = json::array();
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      data.push_back({m(i, j).real(), m(i, j).imag()});
    }
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
    throw std::invalid_argument("matrix JSON must carry rows, cols and data");
  }
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto& data = j.at("data");
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("matrix JSON: rows and cols must be positive");
  }
  if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != rows * cols) {
    throw std::invalid_argument("matrix JSON: data length must equal rows*cols");
  }
  Matrix m(rows, cols);
  Eigen::Index idx = 0;
  for (Eigen::Index j2 = 0; j2 < cols; ++j2) {
    for (Eigen::Index i = 0; i < rows; ++i, ++idx) {
      const auto& cell = data.at(static_cast<std::size_t>(idx));
      if (!cell.is_array() || cell.size() != 2) {
        throw std::invalid_argument("matrix JSON: each entry must be [re, im]");
      }
      m(i, j2) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
    }
  }
  return m;
}

json vector_to_json(const Vector& v) {
  return matrix_to_json(Matrix(v));
}

Vector vector_from_json(const json& j) {
  const Matrix m = matrix_from_json(j);
  if (m.cols() != 1) {
    throw std::invalid_argument("vector JSON must be an n x 1 matrix");
  }
  return m.col(0);
}

json table_to_json(const RayMapTable& t) {
  json out = json::array();
  for (const auto& e : t.entries()) {
    out.push_back({{"source", vector_to_json(e.source.vector())},
                   {"image", vector_to_json(e.image.vector())}});
  }
  return out;
}

RayMapTable table_from_json(const json& j, const Tolerance& tol) {
  if (!j.is_array()) {
    throw std::invalid_argument("ray-map table JSON must be a list");
  }
  RayMapTable t;
  for (const auto& pair : j) {
    t.insert(Ray(vector_from_json(pair.at("source"))),
             Ray(vector_from_json(pair.at("image"))), tol);
  }
  return t;
}

json hypergraph_to_json(const OrthoHypergraph& h) {
  json rays = json::array();
  for (const Ray& r : h.rays) rays.push_back(vector_to_json(r.vector()));
  return json{{"d", h.d}, {"rays", std::move(rays)}, {"contexts", h.contexts}};
}

OrthoHypergraph hypergraph_from_json(const json& j, const Tolerance& tol) {
  const int d = j.at("d").get<int>();
  std::vector<Ray> rays;
  for (const auto& rj : j.at("rays")) {
    rays.emplace_back(vector_from_json(rj));
  }
  if (j.contains("contexts") && !j.at("contexts").is_null()) {
    auto contexts = j.at("contexts").get<std::vector<std::vector<int>>>();
    return build_hypergraph_with_contexts(rays, std::move(contexts), d, tol);
  }
  return build_hypergraph(rays, d, tol);
}

json reconstruction_to_json(const ReconstructionResult& r) {
  json cert = json::array();
  for (const auto& c : r.certificate) {
    cert.push_back({{"index", c.table_index}, {"deviation", c.deviation}});
  }
  return json{{"matrix", matrix_to_json(r.matrix)},
              {"class", to_string(r.cls)},
              {"residual", r.residual},
              {"certificate", std::move(cert)}};
}

ReconstructionResult reconstruction_from_json(const json& j, const Tolerance& tol) {
  ReconstructionResult r;
  r.matrix = matrix_from_json(j.at("matrix"));
  r.cls = operator_class_from_string(j.at("class").get<std::string>());
  r.residual = j.value("residual", 0.0);
  if (j.contains("certificate")) {
    for (const auto& c : j.at("certificate")) {
      r.certificate.push_back({c.at("index").get<std::size_t>(),
                               c.at("deviation").get<double>()});
    }
  }
  const Matrix gram = r.matrix.adjoint() * r.matrix;
  if ((gram - Matrix::Identity(r.matrix.cols(), r.matrix.cols())).norm() > tol.eps_orth) {
    throw std::invalid_argument("reconstruction JSON: matrix is not an isometry");
  }
  return r;
}

json subspace_to_json(const Subspace& s) {
  return matrix_to_json(s.basis());
}

Subspace subspace_from_json(const json& j, const Tolerance& tol) {
  return Subspace(matrix_from_json(j), tol);
}

GrassmannOracle oracle_from_json(const json& j, const Tolerance& tol) {
  if (j.contains("matrix")) {
    const Matrix m = matrix_from_json(j.at("matrix"));
    const OperatorClass cls = operator_class_from_string(j.at("class").get<std::string>());
    const int k = j.at("k").get<int>();
    return induced_oracle(m, cls, k, tol);
  }
  if (j.contains("pairs")) {
    const int k = j.at("k").get<int>();
    auto pairs = std::make_shared<std::vector<std::pair<Subspace, Subspace>>>();
    int ambient = 0;
    for (const auto& pj : j.at("pairs")) {
      Subspace src = subspace_from_json(pj.at("source"), tol);
      Subspace img = subspace_from_json(pj.at("image"), tol);
      ambient = static_cast<int>(src.ambient());
      pairs->emplace_back(std::move(src), std::move(img));
    }
    if (pairs->empty()) {
      throw std::invalid_argument("oracle JSON: empty pair list");
    }
    return GrassmannOracle(
        [pairs, tol](const Subspace& x) -> Subspace {
          for (const auto& [src, img] : *pairs) {
            if (subspaces_equal(src, x, tol)) return img;
          }
          throw std::invalid_argument("tabulated oracle: subspace not found in table");
        },
        k, ambient);
  }
  throw std::invalid_argument("oracle JSON must carry either matrix+class or pairs");
}

json tolerance_to_json(const Tolerance& tol) {
  return json{{"eps_rank", tol.eps_rank},
              {"eps_orth", tol.eps_orth},
              {"eps_eq", tol.eps_eq},
              {"eps_angle", tol.eps_angle},
              {"eps_reconstruct", tol.eps_reconstruct}};
}

Tolerance tolerance_from_json(const json& j) {
  Tolerance tol;
  tol.eps_rank = j.value("eps_rank", tol.eps_rank);
  tol.eps_orth = j.value("eps_orth", tol.eps_orth);
  tol.eps_eq = j.value("eps_eq", tol.eps_eq);
  tol.eps_angle = j.value("eps_angle", tol.eps_angle);
  tol.eps_reconstruct = j.value("eps_reconstruct", tol.eps_reconstruct);
  tol.validate();
  return tol;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open " + path);
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) {
    throw std::invalid_argument("cannot open " + path + " for writing");
  }
  out << j.dump(2) << "\n";
}

}  // namespace wignerkit
