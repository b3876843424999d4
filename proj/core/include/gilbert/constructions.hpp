#pragma once

#include <array>
#include <functional>
#include <span>

#include "gilbert/embedding.hpp"
#include "gilbert/general_network.hpp"
#include "gilbert/instance.hpp"

namespace gilbert {

/// The fixed split-routing example: triangle with ||p1-p2|| = 1,
/// ||p1-q|| = ||p2-q|| = 10, tonnages (2, 4), w(t) = ceil((3t+1)/2).
/// Routing one of p2's four units through p1 costs exactly 102, strictly
/// below the best arborescence at sqrt(9982.5 + 7 sqrt(3890.25)) = 102.074...
struct CounterexampleData {
  Instance instance;
  GeneralNetwork split_network;
  double split_cost;
  Embedding arborescence;
  double arborescence_cost;
};

CounterexampleData paper_counterexample();

struct Degree4Feasibility {
  bool feasible;
  /// 3 w(2t)^2 - 3 w(t)^2 - w(3t)^2; nonnegative iff a degree-4 star exists.
  double slack;
};

/// Equal-tonnage degree-4 feasibility test in Euclidean 3-space.
Degree4Feasibility degree4_feasible(const WeightFunction& w, double t);

struct Degree4Construction {
  /// Pairwise inner product of the three unit directions.
  double lambda;
  std::array<Vec, 3> vectors;  // v_i = w(t) u_i in R^3
  Instance star_instance;
  Embedding star_embedding;
};

/// Builds the symmetric three-vector witness for a feasible (w, t): unit
/// directions u_i = (r cos(2 pi i/3), r sin(2 pi i/3), z) with pairwise
/// inner product lambda = w(3t)^2 / (6 w(t)^2) - 1/2, plus the concrete
/// degree-4 star instance (sources at unit distance, sink along -z) whose
/// certificate passes. Throws for infeasible (w, t).
Degree4Construction degree4_construct(const WeightFunction& w, double t);

/// RHS - LHS of the convex-derivative inequality:
/// (m-2) sum f(t_i) + f(sum t_i) - (m-1)(m-2)/2 f(0) - sum_{i<j} f(t_i+t_j).
/// Nonnegative whenever f' is convex; exactly zero for m = 2.
double lemma5_slack(const std::function<double(double)>& f,
                    std::span<const double> tonnages);

/// 3 + 3^(2 alpha) - 3 * 2^(2 alpha): the constant coefficient controlling
/// degree-4 feasibility of w(t) = D + t^alpha; zero at alpha in {1/2, 1}
/// and negative strictly between.
double f_alpha(double alpha);

}  // namespace gilbert
