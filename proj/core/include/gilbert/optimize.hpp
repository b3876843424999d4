#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gilbert/certify.hpp"
#include "gilbert/embedding.hpp"
#include "gilbert/instance.hpp"
#include "gilbert/topology.hpp"

namespace gilbert {

struct OptimizeOptions {
  double smoothing_eps_start = 1e-2;
  double smoothing_eps_end = 1e-10;
  double eps_decay = 0.25;
  int max_iters = 10'000;
  double position_tol = 1e-10;
  /// Contraction threshold, relative to the instance diameter.
  double contract_tol = 1e-7;

  void validate() const;
};

struct OptimizeResult {
  Embedding embedding;
  bool converged;
  int iterations;
  /// Smoothed objective after every accepted step (at the epsilon then in
  /// effect); nonincreasing by construction.
  std::vector<double> cost_history;
};

/// Minimizes the fixed-topology cost over Steiner coordinates. The
/// objective sum_e w(t_e) ||x_u - x_v|| is convex (flows and weights are
/// fixed by the topology); the norm is smoothed by epsilon and the smoothed
/// problem is solved by quasi-Newton descent while epsilon anneals
/// geometrically. Terminals never move.
OptimizeResult optimize_embedding(const Instance& inst, const Topology& top,
                                  const OptimizeOptions& opts = {});

/// Merges Steiner vertices closer than tol * diameter to a neighbor
/// (Steiner or terminal) into that neighbor. The result may have Steiner
/// vertices of degree > 3 or pass-through terminals.
Embedding contract_degenerate_edges(const Embedding& emb, const Instance& inst,
                                    double tol);

/// For every Steiner vertex of degree >= 4, tries splitting each subset I of
/// its incoming neighbors (2 <= |I| <= deg_in - 1) onto a fresh Steiner
/// vertex and re-optimizes. Returns the best strictly improving embedding
/// (improvement > 1e-9 * cost), or nullopt.
std::optional<OptimizeResult> split_improvement_scan(
    const Embedding& emb, const Instance& inst,
    const OptimizeOptions& opts = {});

struct SolveResult {
  Embedding embedding;
  Certificate certificate;
  bool converged;
  int topologies_tried;
  std::vector<std::string> warnings;
};

/// Global search: optimizes every full topology, contracts degenerate
/// edges, runs the split-improvement scan to a fixed point on the cheapest
/// candidate, and certifies the winner. Equal-cost candidates are broken by
/// the lexicographically smallest topology encoding.
SolveResult solve_mga(const Instance& inst, const OptimizeOptions& opts = {},
                      int enumeration_cap = kDefaultEnumerationCap);

}  // namespace gilbert
