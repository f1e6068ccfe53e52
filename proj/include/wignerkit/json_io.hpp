#pragma once

#include <string>

#include "json.hpp"
#include "wignerkit/measure.hpp"
#include "wignerkit/projective.hpp"
#include "wignerkit/reconstruct.hpp"

namespace wignerkit {

using nlohmann::json;

/// Repo-wide matrix format: {"rows": n, "cols": k, "data": [[re, im], ...]}
/// with data in column-major order.
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

json vector_to_json(const Vector& v);
Vector vector_from_json(const json& j);

/// [{"source": vector, "image": vector}, ...] with n x 1 vectors.
json table_to_json(const RayMapTable& t);
RayMapTable table_from_json(const json& j, const Tolerance& tol);

/// {"d": d, "rays": [vector...], "contexts": [[i,j,...],...]}; contexts are
/// recomputed when absent.
json hypergraph_to_json(const OrthoHypergraph& h);
OrthoHypergraph hypergraph_from_json(const json& j, const Tolerance& tol);

json reconstruction_to_json(const ReconstructionResult& r);
ReconstructionResult reconstruction_from_json(const json& j, const Tolerance& tol);

json subspace_to_json(const Subspace& s);
Subspace subspace_from_json(const json& j, const Tolerance& tol);

/// Oracle file: either a generator {"matrix": M, "class": ..., "k": k} or a
/// tabulated map {"k": k, "pairs": [{"source": M, "image": M}, ...]}.
GrassmannOracle oracle_from_json(const json& j, const Tolerance& tol);

json tolerance_to_json(const Tolerance& tol);
Tolerance tolerance_from_json(const json& j);

/// Parse with filename and byte-position diagnostics on failure.
json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace wignerkit
