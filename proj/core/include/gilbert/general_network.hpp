#pragma once

#include <vector>

#include "gilbert/norm_space.hpp"
#include "gilbert/weight_function.hpp"

namespace gilbert {

/// A directed flow network with explicit per-arc flows; unlike an
/// arborescence the flows are data, not derived from a tree, so split
/// routing is expressible. Each node carries its net supply: tonnage at a
/// source, minus the total tonnage at the sink, zero at pass-through nodes.
struct GeneralNetwork {
  struct Node {
    Vec point;
    double supply;
  };
  struct Arc {
    int from;
    int to;
    double flow;
  };

  std::vector<Node> nodes;
  std::vector<Arc> arcs;
};

/// Verifies conservation: at every node, outflow - inflow == supply within
/// tol. Throws std::invalid_argument naming the node and the imbalance.
void check_conservation(const GeneralNetwork& net, double tol = 1e-9);

/// sum over arcs of w(flow) * ||from - to||; conservation is checked first.
double general_network_cost(const GeneralNetwork& net, const WeightFunction& w,
                            const NormSpace& space);

}  // namespace gilbert
