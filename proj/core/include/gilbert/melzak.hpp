#pragma once

#include <utility>

#include "gilbert/norm_space.hpp"
#include "gilbert/weight_function.hpp"

namespace gilbert {

/// Closed-form optimum of the two-source star in the Euclidean plane.
///
/// The auxiliary point p sits on the far side of line p1p2 from q with
/// ||p - p1|| : ||p - p2|| : ||p1 - p2|| = w(t2) : w(t1) : w(t1+t2); the
/// Steiner point s is where segment pq re-enters the circumcircle of
/// triangle p p1 p2, and the star cost collapses to w(t1+t2) * ||p - q||.
struct MelzakSolution {
  Vec auxiliary_point;
  Vec steiner_point;
  std::pair<Vec, Vec> simpson_segment;  // (p, q)
  double total_cost;
  /// True when the construction leaves the feasible arc and the optimum is a
  /// collapsed star (s at p1, p2 or q).
  bool degenerate;
};

MelzakSolution melzak_two_source(const Vec& p1, const Vec& p2, const Vec& q,
                                 double t1, double t2, const WeightFunction& w);

}  // namespace gilbert
