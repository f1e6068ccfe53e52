#include "wignerkit/measure.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace wignerkit {

namespace {

std::vector<Ray> dedupe(const std::vector<Ray>& rays, int d, const Tolerance& tol) {
  std::vector<Ray> unique;
  for (const Ray& r : rays) {
    if (r.dim() != d) {
      throw std::invalid_argument("build_hypergraph: ray dimension mismatch");
    }
    const bool seen = std::any_of(unique.begin(), unique.end(), [&](const Ray& u) {
      return rays_equal(u, r, tol);
    });
    if (!seen) unique.push_back(r);
  }
  return unique;
}

std::vector<std::pair<int, int>> orthogonal_pairs(const std::vector<Ray>& rays,
                                                  const Tolerance& tol) {
  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    for (std::size_t j = i + 1; j < rays.size(); ++j) {
      if (std::abs(inner(rays[i].vector(), rays[j].vector())) < tol.eps_orth) {
        edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
      }
    }
  }
  return edges;
}

void enumerate_cliques(const std::vector<std::vector<bool>>& adj, int d,
                       std::vector<int>& current, int from,
                       std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == d) {
    out.push_back(current);
    return;
  }
  const int n = static_cast<int>(adj.size());
  const int needed = d - static_cast<int>(current.size());
  for (int v = from; v + needed <= n; ++v) {
    const bool fits = std::all_of(current.begin(), current.end(), [&](int u) {
      return adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
    });
    if (fits) {
      current.push_back(v);
      enumerate_cliques(adj, d, current, v + 1, out);
      current.pop_back();
    }
  }
}

}  // namespace

OrthoHypergraph build_hypergraph(const std::vector<Ray>& rays, int d,
                                 const Tolerance& tol) {
  if (d < 3) {
    throw std::invalid_argument("build_hypergraph: need d >= 3");
  }
  OrthoHypergraph h;
  h.d = d;
  h.rays = dedupe(rays, d, tol);
  h.edges = orthogonal_pairs(h.rays, tol);

  std::vector<std::vector<bool>> adj(h.rays.size(),
                                     std::vector<bool>(h.rays.size(), false));
  for (const auto& [i, j] : h.edges) {
    adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
    adj[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = true;
  }
  std::vector<int> scratch;
  enumerate_cliques(adj, d, scratch, 0, h.contexts);
  return h;
}

OrthoHypergraph build_hypergraph_with_contexts(const std::vector<Ray>& rays,
                                               std::vector<std::vector<int>> contexts,
                                               int d, const Tolerance& tol) {
  if (d < 3) {
    throw std::invalid_argument("build_hypergraph: need d >= 3");
  }
  OrthoHypergraph h;
  h.d = d;
  h.rays = dedupe(rays, d, tol);
  if (h.rays.size() != rays.size()) {
    throw std::invalid_argument("build_hypergraph: duplicate rays with explicit contexts");
  }
  h.edges = orthogonal_pairs(h.rays, tol);
  for (const auto& ctx : contexts) {
    if (static_cast<int>(ctx.size()) != d) {
      throw std::invalid_argument("build_hypergraph: context size must equal d");
    }
    for (std::size_t a = 0; a < ctx.size(); ++a) {
      const int ia = ctx[a];
      if (ia < 0 || ia >= static_cast<int>(h.rays.size())) {
        throw std::invalid_argument("build_hypergraph: context index out of range");
      }
      for (std::size_t b = a + 1; b < ctx.size(); ++b) {
        const int ib = ctx[b];
        if (std::abs(inner(h.rays[static_cast<std::size_t>(ia)].vector(),
                           h.rays[static_cast<std::size_t>(ib)].vector())) >= tol.eps_orth) {
          throw std::invalid_argument("build_hypergraph: context rays are not "
                                      "mutually orthogonal");
        }
      }
    }
  }
  h.contexts = std::move(contexts);
  return h;
}

bool verify_assignment(const OrthoHypergraph& h, const MeasureAssignment& m) {
  if (m.value.size() != h.rays.size()) {
    throw std::invalid_argument("verify_assignment: assignment is not total");
  }
  for (int v : m.value) {
    if (v != 0 && v != 1) {
      throw std::invalid_argument("verify_assignment: values must be 0 or 1");
    }
  }
  for (const auto& ctx : h.contexts) {
    int ones = 0;
    for (int i : ctx) ones += m.value[static_cast<std::size_t>(i)];
    if (ones != 1) return false;
  }
  for (const auto& [i, j] : h.edges) {
    if (m.value[static_cast<std::size_t>(i)] == 1 &&
        m.value[static_cast<std::size_t>(j)] == 1) {
      return false;
    }
  }
  return true;
}

namespace {

/// Chronological backtracking with unit propagation on the exactly-one
/// contexts and the no-two-ones edges.
class Search {
 public:
  explicit Search(const OrthoHypergraph& h) : h_(h), value_(h.rays.size(), -1) {
    neighbors_.resize(h.rays.size());
    for (const auto& [i, j] : h.edges) {
      neighbors_[static_cast<std::size_t>(i)].push_back(j);
      neighbors_[static_cast<std::size_t>(j)].push_back(i);
    }
    in_contexts_.resize(h.rays.size());
    for (std::size_t c = 0; c < h.contexts.size(); ++c) {
      for (int i : h.contexts[c]) {
        in_contexts_[static_cast<std::size_t>(i)].push_back(static_cast<int>(c));
      }
    }
  }

  SearchResult run(const std::vector<int>& order) {
    SearchResult result;
    result.sat = solve(order);
    result.nodes_explored = nodes_;
    if (result.sat) {
      MeasureAssignment m;
      m.value = value_;
      result.assignment = std::move(m);
    }
    return result;
  }

 private:
  bool assign(int var, int val, std::vector<int>& trail) {
    if (value_[static_cast<std::size_t>(var)] != -1) {
      return value_[static_cast<std::size_t>(var)] == val;
    }
    value_[static_cast<std::size_t>(var)] = val;
    trail.push_back(var);
    return propagate(var, trail);
  }

  bool propagate(int var, std::vector<int>& trail) {
    if (value_[static_cast<std::size_t>(var)] == 1) {
      for (int nb : neighbors_[static_cast<std::size_t>(var)]) {
        if (!assign(nb, 0, trail)) return false;
      }
      for (int c : in_contexts_[static_cast<std::size_t>(var)]) {
        for (int other : h_.contexts[static_cast<std::size_t>(c)]) {
          if (other != var && !assign(other, 0, trail)) return false;
        }
      }
      return true;
    }
    // var = 0: a context whose remaining rays are all 0 forces the last one.
    for (int c : in_contexts_[static_cast<std::size_t>(var)]) {
      int unassigned = -1;
      int zeros = 0;
      bool has_one = false;
      for (int i : h_.contexts[static_cast<std::size_t>(c)]) {
        const int v = value_[static_cast<std::size_t>(i)];
        if (v == 1) has_one = true;
        else if (v == 0) ++zeros;
        else unassigned = i;
      }
      if (has_one) continue;
      if (zeros == static_cast<int>(h_.contexts[static_cast<std::size_t>(c)].size())) {
        return false;  // all zero, no ray can carry the 1
      }
      if (unassigned != -1 &&
          zeros + 1 == static_cast<int>(h_.contexts[static_cast<std::size_t>(c)].size())) {
        if (!assign(unassigned, 1, trail)) return false;
      }
    }
    return true;
  }

  void undo(std::vector<int>& trail, std::size_t mark) {
    while (trail.size() > mark) {
      value_[static_cast<std::size_t>(trail.back())] = -1;
      trail.pop_back();
    }
  }

  bool solve(const std::vector<int>& order) {
    ++nodes_;
    int var = -1;
    for (int candidate : order) {
      if (value_[static_cast<std::size_t>(candidate)] == -1) {
        var = candidate;
        break;
      }
    }
    if (var == -1) return true;  // propagation keeps partial states consistent

    std::vector<int> trail;
    for (int val : {1, 0}) {
      const std::size_t mark = trail.size();
      if (assign(var, val, trail) && solve(order)) return true;
      undo(trail, mark);
    }
    return false;
  }

  const OrthoHypergraph& h_;
  std::vector<int> value_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<std::vector<int>> in_contexts_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

SearchResult find_two_valued_measure(const OrthoHypergraph& h, std::uint64_t order_seed) {
  std::vector<int> order(h.rays.size());
  std::iota(order.begin(), order.end(), 0);
  if (order_seed != 0) {
    std::mt19937_64 rng(order_seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  Search search(h);
  SearchResult result = search.run(order);
  if (result.sat && !verify_assignment(h, *result.assignment)) {
    throw std::runtime_error("find_two_valued_measure: internal error, assignment "
                             "failed verification");
  }
  return result;
}

}  // namespace wignerkit
