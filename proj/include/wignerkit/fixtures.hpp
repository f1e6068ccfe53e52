#pragma once

#include <vector>

#include "wignerkit/measure.hpp"

namespace wignerkit {

/// The 33 rays of C^3 with components from {0, +-1, +-sqrt 2}: the
/// coordinate axes plus the permutation-and-sign orbits of (0,1,1),
/// (0,1,sqrt 2) and (1,1,sqrt 2), one representative per ray.
std::vector<Ray> peres_33_rays();

/// The 18 rays of C^4 with their canonical 9 four-element contexts; every
/// ray sits in exactly two contexts, which forces a parity obstruction to
/// any two-valued measure.
OrthoHypergraph ceg_18_hypergraph(const Tolerance& tol);

}  // namespace wignerkit
