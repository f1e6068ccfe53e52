#include "wignerkit/projective.hpp"

#include <algorithm>
#include <cmath>

#include "wignerkit/rng.hpp"

namespace wignerkit {

void RayMapTable::insert(const Ray& source, const Ray& image, const Tolerance& tol) {
  if (source.dim() != image.dim()) {
    throw std::invalid_argument("RayMapTable: source/image dimension mismatch");
  }
  if (entries_.empty()) {
    if (source.dim() < 3) {
      throw std::invalid_argument("RayMapTable: ambient dimension must be >= 3");
    }
    ambient_ = source.dim();
  } else if (source.dim() != ambient_) {
    throw std::invalid_argument("RayMapTable: ambient dimension mismatch");
  }
  if (lookup(source, tol) != nullptr) {
    throw std::invalid_argument("RayMapTable: duplicate source ray");
  }
  entries_.push_back({source, image});
}

const Ray* RayMapTable::lookup(const Ray& source, const Tolerance& tol) const {
  for (const Entry& e : entries_) {
    if (rays_equal(e.source, source, tol)) return &e.image;
  }
  return nullptr;
}

bool ray_orthogonal(const Ray& p, const Ray& q, const Tolerance& tol) {
  if (p.dim() != q.dim()) {
    throw std::invalid_argument("ray_orthogonal: dimension mismatch");
  }
  return std::abs(inner(p.vector(), q.vector())) < tol.eps_orth;
}

double transition_probability(const Ray& p, const Ray& q) {
  return std::norm(inner(p.vector(), q.vector()));
}

Line line_through(const Ray& p, const Ray& q, const Tolerance& tol) {
  if (p.dim() != q.dim()) {
    throw std::invalid_argument("line_through: dimension mismatch");
  }
  const Subspace carrier = orthonormalize(std::vector<Vector>{p.vector(), q.vector()}, tol);
  if (carrier.dim() != 2) {
    throw std::invalid_argument("line_through: coincident rays");
  }
  return Line(carrier);
}

std::vector<Ray> sample_line(const Line& l, int m, std::uint64_t seed,
                             const Tolerance& tol) {
  if (m < 3) {
    throw std::invalid_argument("sample_line: need m >= 3");
  }
  const Vector b1 = l.carrier.basis().col(0);
  const Vector b2 = l.carrier.basis().col(1);
  std::vector<Ray> rays;
  rays.emplace_back(b1);
  rays.emplace_back(b2);
  Rng rng(mix_seed(seed, 0x11e5));
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int guard = 0;
  while (static_cast<int>(rays.size()) < m) {
    if (++guard > 100 * m) {
      throw std::runtime_error("sample_line: could not produce distinct rays");
    }
    const double alpha = unif(rng) * M_PI / 2.0;
    const double phi = unif(rng) * 2.0 * M_PI;
    const Ray candidate(std::cos(alpha) * b1 +
                        std::polar(std::sin(alpha), phi) * b2);
    const bool fresh = std::none_of(rays.begin(), rays.end(), [&](const Ray& r) {
      return rays_equal(r, candidate, tol);
    });
    if (fresh) rays.push_back(candidate);
  }
  return rays;
}

CheckReport check_orthogonality_preserving(const RayMapTable& f, const Tolerance& tol) {
  if (f.size() == 0) {
    throw std::invalid_argument("check_orthogonality_preserving: empty table");
  }
  CheckReport report;
  report.check = "orthogonality_preserving";
  const auto& entries = f.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      if (!ray_orthogonal(entries[i].source, entries[j].source, tol)) continue;
      const double img = std::abs(inner(entries[i].image.vector(), entries[j].image.vector()));
      if (img >= tol.eps_orth) {
        report.violations.push_back({i, j, img});
      }
    }
  }
  report.pass = report.violations.empty();
  return report;
}

Line induced_line_image(const RayMapTable& f, const Line& s, const Tolerance& tol) {
  const Eigen::Index n = s.carrier.ambient();
  if (f.ambient() != n) {
    throw std::invalid_argument("induced_line_image: ambient dimension mismatch");
  }
  const Subspace perp = complement(s.carrier, tol);

  // Mutually orthogonal tabulated sources inside complement(S), greedily in
  // table order; n-2 of them span the complement.
  std::vector<const RayMapTable::Entry*> picked;
  for (const auto& e : f.entries()) {
    if (!member(perp, e.source.vector(), tol.eps_eq)) continue;
    const bool orth_to_picked =
        std::all_of(picked.begin(), picked.end(), [&](const RayMapTable::Entry* p) {
          return std::abs(inner(e.source.vector(), p->source.vector())) < tol.eps_orth;
        });
    if (orth_to_picked) picked.push_back(&e);
    if (static_cast<Eigen::Index>(picked.size()) == n - 2) break;
  }
  if (static_cast<Eigen::Index>(picked.size()) != n - 2) {
    throw std::invalid_argument(
        "induced_line_image: table lacks n-2 mutually orthogonal rays spanning the "
        "complement of S");
  }

  std::vector<Vector> images;
  images.reserve(picked.size());
  for (const auto* e : picked) images.push_back(e->image.vector());
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t j = i + 1; j < images.size(); ++j) {
      if (std::abs(inner(images[i], images[j])) >= tol.eps_orth) {
        throw std::runtime_error(
            "induced_line_image: images of the orthogonal family are not mutually "
            "orthogonal");
      }
    }
  }
  const Subspace image_sum = orthonormalize(images, tol);
  if (image_sum.dim() == n) {
    throw std::runtime_error("induced_line_image: not orthogonality preserving on S-perp");
  }
  const Subspace s_prime = complement(image_sum, tol);
  if (s_prime.dim() != 2) {
    throw std::runtime_error("induced_line_image: not orthogonality preserving on S-perp");
  }
  return Line(s_prime);
}

CheckReport check_lineation(const RayMapTable& f,
                            const std::vector<LineFamilyEntry>& lines,
                            const Tolerance& tol) {
  CheckReport report;
  report.check = "lineation";
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const auto& entry = lines[li];
    if (entry.members.size() < 3) {
      throw std::invalid_argument("check_lineation: each line needs >= 3 member rays");
    }
    Matrix images(f.ambient(), static_cast<Eigen::Index>(entry.members.size()));
    for (std::size_t mi = 0; mi < entry.members.size(); ++mi) {
      const Ray* img = f.lookup(entry.members[mi], tol);
      if (img == nullptr) {
        throw std::invalid_argument("check_lineation: member ray missing from table");
      }
      images.col(static_cast<Eigen::Index>(mi)) = img->vector();
    }
    const int rank = numerical_rank(images, tol.eps_rank);
    if (rank > 2) {
      report.violations.push_back({li, li, static_cast<double>(rank)});
    }
  }
  report.pass = report.violations.empty();
  return report;
}

NondegenerateReport check_nondegenerate(const RayMapTable& f,
                                        const std::vector<LineFamilyEntry>& lines,
                                        const Tolerance& tol) {
  NondegenerateReport report;

  // (L1): the image of the whole table must not fit inside one line.
  Matrix all_images(f.ambient(), static_cast<Eigen::Index>(f.size()));
  for (std::size_t i = 0; i < f.size(); ++i) {
    all_images.col(static_cast<Eigen::Index>(i)) = f.entries()[i].image.vector();
  }
  report.image_rank = numerical_rank(all_images, tol.eps_rank);
  report.l1_pass = report.image_rank >= 3;

  // (L2): each line keeps at least three pairwise-distinct image rays.
  report.l2_pass = true;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const auto& entry = lines[li];
    std::vector<Ray> distinct;
    for (const Ray& m : entry.members) {
      const Ray* img = f.lookup(m, tol);
      if (img == nullptr) {
        throw std::invalid_argument("check_nondegenerate: member ray missing from table");
      }
      const bool fresh = std::none_of(distinct.begin(), distinct.end(), [&](const Ray& r) {
        return rays_equal(r, *img, tol);
      });
      if (fresh) distinct.push_back(*img);
      if (distinct.size() >= 3) break;
    }
    if (distinct.size() < 3) {
      report.l2_pass = false;
      report.l2_failing_lines.push_back(li);
    }
  }
  return report;
}

std::vector<LineFamilyEntry> lines_from_table(const RayMapTable& f, int min_members,
                                              const Tolerance& tol) {
  if (min_members < 3) min_members = 3;
  std::vector<LineFamilyEntry> out;
  const auto& entries = f.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      if (rays_equal(entries[i].source, entries[j].source, tol)) continue;
      Line line = line_through(entries[i].source, entries[j].source, tol);
      const bool seen = std::any_of(out.begin(), out.end(), [&](const LineFamilyEntry& e) {
        return subspaces_equal(e.line.carrier, line.carrier, tol);
      });
      if (seen) continue;
      std::vector<Ray> members;
      for (const auto& e : entries) {
        if (member(line.carrier, e.source.vector(), tol.eps_eq)) {
          members.push_back(e.source);
        }
      }
      if (static_cast<int>(members.size()) >= min_members) {
        out.push_back({std::move(line), std::move(members)});
      }
    }
  }
  return out;
}

}  // namespace wignerkit
