#include "wignerkit/fixtures.hpp"

#include <cmath>

namespace wignerkit {

namespace {

Ray real_ray3(double a, double b, double c) {
  Vector v(3);
  v << Complex(a, 0), Complex(b, 0), Complex(c, 0);
  return Ray(v);
}

Ray real_ray4(double a, double b, double c, double d) {
  Vector v(4);
  v << Complex(a, 0), Complex(b, 0), Complex(c, 0), Complex(d, 0);
  return Ray(v);
}

}  // namespace

std::vector<Ray> peres_33_rays() {
  const double r = std::sqrt(2.0);
  std::vector<Ray> rays;
  rays.reserve(33);

  rays.push_back(real_ray3(1, 0, 0));
  rays.push_back(real_ray3(0, 1, 0));
  rays.push_back(real_ray3(0, 0, 1));

  // orbit of (0,1,1): zero position x relative sign
  for (double s : {1.0, -1.0}) {
    rays.push_back(real_ray3(0, 1, s));
    rays.push_back(real_ray3(1, 0, s));
    rays.push_back(real_ray3(1, s, 0));
  }

  // orbit of (0,1,sqrt2): zero position x (1,r) order x relative sign
  for (double s : {1.0, -1.0}) {
    rays.push_back(real_ray3(0, 1, s * r));
    rays.push_back(real_ray3(0, r, s));
    rays.push_back(real_ray3(1, 0, s * r));
    rays.push_back(real_ray3(r, 0, s));
    rays.push_back(real_ray3(1, s * r, 0));
    rays.push_back(real_ray3(r, s, 0));
  }

  // orbit of (1,1,sqrt2): sqrt2 position x the two free signs
  for (double s1 : {1.0, -1.0}) {
    for (double s2 : {1.0, -1.0}) {
      rays.push_back(real_ray3(r, s1, s2));
      rays.push_back(real_ray3(1, s1 * r, s2));
      rays.push_back(real_ray3(1, s1, s2 * r));
    }
  }
  return rays;
}

OrthoHypergraph ceg_18_hypergraph(const Tolerance& tol) {
  std::vector<Ray> rays = {
      real_ray4(0, 0, 0, 1),    // 0
      real_ray4(0, 0, 1, 0),    // 1
      real_ray4(1, 1, 0, 0),    // 2
      real_ray4(1, -1, 0, 0),   // 3
      real_ray4(0, 1, 0, 0),    // 4
      real_ray4(1, 0, 1, 0),    // 5
      real_ray4(1, 0, -1, 0),   // 6
      real_ray4(1, -1, 1, -1),  // 7
      real_ray4(1, -1, -1, 1),  // 8
      real_ray4(0, 0, 1, 1),    // 9
      real_ray4(1, 1, 1, 1),    // 10
      real_ray4(0, 1, 0, -1),   // 11
      real_ray4(1, 0, 0, 1),    // 12
      real_ray4(1, 0, 0, -1),   // 13
      real_ray4(0, 1, -1, 0),   // 14
      real_ray4(1, 1, -1, 1),   // 15
      real_ray4(1, 1, 1, -1),   // 16
      real_ray4(-1, 1, 1, 1),   // 17
  };
  std::vector<std::vector<int>> contexts = {
      {0, 1, 2, 3}, {0, 4, 5, 6},   {7, 8, 2, 9},  {7, 10, 6, 11}, {1, 4, 12, 13},
      {8, 10, 13, 14}, {15, 16, 3, 9}, {15, 17, 5, 11}, {16, 17, 12, 14},
  };
  return build_hypergraph_with_contexts(rays, std::move(contexts), 4, tol);
}

}  // namespace wignerkit
