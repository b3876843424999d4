#pragma once

#include <vector>

#include "gilbert/instance.hpp"
#include "gilbert/topology.hpp"

namespace gilbert {

struct EdgeData {
  int child;
  int parent;
  double flow;
  double weight;  // w(flow)
  double length;  // ||pos(child) - pos(parent)||
};

/// A topology together with concrete Steiner coordinates. Construction
/// derives per-edge flow, weight and length, and the total cost
/// sum_e w(t_e) * l_e. Terminal coordinates are copied verbatim from the
/// instance and never move.
class Embedding {
public:
  Embedding(const Instance& inst, Topology top, std::vector<Vec> steiner_positions);

  const Topology& topology() const { return topology_; }
  const Vec& position(int v) const { return positions_[static_cast<size_t>(v)]; }
  const std::vector<Vec>& positions() const { return positions_; }
  std::vector<Vec> steiner_positions() const;

  const std::vector<EdgeData>& edges() const { return edges_; }
  /// Flow on the edge out of vertex v.
  double flow_out_of(int v) const { return flows_[static_cast<size_t>(v)]; }

  double total_cost() const { return total_cost_; }

private:
  Topology topology_;
  std::vector<Vec> positions_;
  std::vector<double> flows_;
  std::vector<EdgeData> edges_;
  double total_cost_ = 0;
};

}  // namespace gilbert
