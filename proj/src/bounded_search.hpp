#pragma once

#include <cstdint>
#include <queue>
#include <vector>

#include "spanorm/graph.hpp"

namespace spanorm::detail {

// Reusable distance-query workspace. Neighbour lists are supplied by a
// callable `nbrs(v)` returning a range of Adjacent; `len(edge)` gives lengths.
class BoundedSearch {
 public:
  explicit BoundedSearch(std::size_t n)
      : mark_a_(n, 0), mark_b_(n, 0), dist_(n, kInfinite) {}

  // True iff some s-t path has at most `bound` hops. Bidirectional BFS that
  // always grows the cheaper frontier.
  template <class Nbrs>
  bool hops_within(const Nbrs& nbrs, Vertex s, Vertex t, std::size_t bound) {
    if (s == t) return true;
    if (bound == 0) return false;
    ++stamp_;
    front_a_.assign(1, s);
    front_b_.assign(1, t);
    mark_a_[static_cast<std::size_t>(s)] = stamp_;
    mark_b_[static_cast<std::size_t>(t)] = stamp_;
    std::size_t la = 0, lb = 0;
    while (la + lb < bound) {
      if (front_a_.empty() || front_b_.empty()) return false;
      bool grow_a = cost(nbrs, front_a_) <= cost(nbrs, front_b_);
      auto& front = grow_a ? front_a_ : front_b_;
      auto& mine = grow_a ? mark_a_ : mark_b_;
      auto& theirs = grow_a ? mark_b_ : mark_a_;
      std::size_t level = (grow_a ? la : lb) + 1;
      next_.clear();
      for (Vertex u : front) {
        for (const auto& a : nbrs(u)) {
          auto w = static_cast<std::size_t>(a.vertex);
          if (mine[w] == stamp_) continue;
          if (theirs[w] == stamp_) return true;
          mine[w] = stamp_;
          next_.push_back(a.vertex);
        }
      }
      front.swap(next_);
      (grow_a ? la : lb) = level;
    }
    return false;
  }

  // Shortest s-t distance if it is at most `bound`, else kInfinite.
  template <class Nbrs, class Len>
  double distance_within(const Nbrs& nbrs, const Len& len, Vertex s, Vertex t, double bound) {
    using Item = std::pair<double, Vertex>;
    for (Vertex v : touched_) dist_[static_cast<std::size_t>(v)] = kInfinite;
    touched_.clear();
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist_[static_cast<std::size_t>(s)] = 0;
    touched_.push_back(s);
    pq.push({0.0, s});
    const double limit = bound * (1.0 + kLengthTolerance);
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (d > dist_[static_cast<std::size_t>(u)]) continue;
      if (u == t) return d;
      for (const auto& a : nbrs(u)) {
        double nd = d + len(a.edge);
        if (nd > limit) continue;
        auto& dw = dist_[static_cast<std::size_t>(a.vertex)];
        if (nd < dw) {
          if (dw == kInfinite) touched_.push_back(a.vertex);
          dw = nd;
          pq.push({nd, a.vertex});
        }
      }
    }
    return kInfinite;
  }

 private:
  template <class Nbrs>
  static std::size_t cost(const Nbrs& nbrs, const std::vector<Vertex>& front) {
    std::size_t c = 0;
    for (Vertex v : front) c += nbrs(v).size();
    return c;
  }

  std::uint32_t stamp_ = 0;
  std::vector<std::uint32_t> mark_a_, mark_b_;
  std::vector<Vertex> front_a_, front_b_, next_;
  std::vector<double> dist_;
  std::vector<Vertex> touched_;
};

}  // namespace spanorm::detail
