#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace wignerkit {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Numerical thresholds shared by every module. eps_rank is relative to the
/// largest singular value; the others are absolute.
struct Tolerance {
  double eps_rank = 1e-9;         // singular-value cutoff for numerical rank
  double eps_orth = 1e-8;         // |<p,q>| below this counts as orthogonal
  double eps_eq = 1e-8;           // projection Frobenius distance for equality
  double eps_angle = 1e-7;        // zero / nonzero principal-angle separation
  double eps_reconstruct = 1e-8;  // max admissible ray-image deviation

  void validate() const {
    if (!(eps_rank > 0.0 && eps_orth > 0.0 && eps_eq > 0.0 &&
          eps_angle > 0.0 && eps_reconstruct > 0.0)) {
      throw std::invalid_argument("Tolerance: all thresholds must be strictly positive");
    }
    if (eps_rank > 1e-6) {
      throw std::invalid_argument("Tolerance: eps_rank must not exceed 1e-6");
    }
  }
};

}  // namespace wignerkit
