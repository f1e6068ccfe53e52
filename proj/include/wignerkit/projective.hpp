#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wignerkit/hilbert.hpp"

namespace wignerkit {

/// A projective line: the set of rays inside a 2-dimensional carrier.
struct Line {
  Subspace carrier;

  explicit Line(Subspace c) : carrier(std::move(c)) {
    if (carrier.dim() != 2) {
      throw std::invalid_argument("Line: carrier must be 2-dimensional");
    }
  }
};

/// A finite tabulated transformation of P(H): source ray -> image ray,
/// looked up by canonical ray equality within eps_eq.
class RayMapTable {
 public:
  struct Entry {
    Ray source;
    Ray image;
  };

  void insert(const Ray& source, const Ray& image, const Tolerance& tol);

  /// nullptr when the source ray is not tabulated.
  const Ray* lookup(const Ray& source, const Tolerance& tol) const;

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  Eigen::Index ambient() const { return ambient_; }

 private:
  std::vector<Entry> entries_;
  Eigen::Index ambient_ = 0;
};

struct PairViolation {
  std::size_t first_index;
  std::size_t second_index;
  double value;  // offending |<image_i, image_j>|
};

struct CheckReport {
  std::string check;
  bool pass = false;
  std::vector<PairViolation> violations;
};

/// A line together with the tabulated source rays lying on it.
struct LineFamilyEntry {
  Line line;
  std::vector<Ray> members;
};

bool ray_orthogonal(const Ray& p, const Ray& q, const Tolerance& tol);

/// |<p,q>|^2; equals trace(P_p P_q).
double transition_probability(const Ray& p, const Ray& q);

Line line_through(const Ray& p, const Ray& q, const Tolerance& tol);

/// m >= 3 distinct rays of the carrier, deterministic given seed. The first
/// two are the carrier's canonical basis rays.
std::vector<Ray> sample_line(const Line& l, int m, std::uint64_t seed,
                             const Tolerance& tol);

/// Pass iff every orthogonal source pair has orthogonal images.
CheckReport check_orthogonality_preserving(const RayMapTable& f, const Tolerance& tol);

/// Image line S' = complement(sum of f(P_1)..f(P_{n-2})) where P_1..P_{n-2}
/// are tabulated, mutually orthogonal, and span complement(S).
Line induced_line_image(const RayMapTable& f, const Line& s, const Tolerance& tol);

/// Pass iff each line's tabulated image vectors have numerical rank <= 2.
CheckReport check_lineation(const RayMapTable& f,
                            const std::vector<LineFamilyEntry>& lines,
                            const Tolerance& tol);

struct NondegenerateReport {
  bool l1_pass = false;  // image of the table not contained in one line
  bool l2_pass = false;  // every listed line keeps >= 3 distinct image rays
  int image_rank = 0;
  std::vector<std::size_t> l2_failing_lines;
};

NondegenerateReport check_nondegenerate(const RayMapTable& f,
                                        const std::vector<LineFamilyEntry>& lines,
                                        const Tolerance& tol);

/// All lines through pairs of tabulated sources that carry at least
/// min_members tabulated rays; deduplicated by carrier equality.
std::vector<LineFamilyEntry> lines_from_table(const RayMapTable& f, int min_members,
                                              const Tolerance& tol);

}  // namespace wignerkit
