#include "gilbert/general_network.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gilbert {

void check_conservation(const GeneralNetwork& net, double tol) {
  std::vector<double> balance(net.nodes.size(), 0.0);
  for (const auto& a : net.arcs) {
    if (a.from < 0 || a.to < 0 ||
        a.from >= static_cast<int>(net.nodes.size()) ||
        a.to >= static_cast<int>(net.nodes.size()) || a.from == a.to)
      throw std::invalid_argument("GeneralNetwork: invalid arc endpoints");
    if (a.flow < 0)
      throw std::invalid_argument("GeneralNetwork: negative arc flow");
    balance[static_cast<size_t>(a.from)] += a.flow;
    balance[static_cast<size_t>(a.to)] -= a.flow;
  }
  for (size_t i = 0; i < net.nodes.size(); ++i) {
    const double imbalance = balance[i] - net.nodes[i].supply;
    if (std::abs(imbalance) > tol)
      throw std::invalid_argument(
          "GeneralNetwork: conservation violated at node " +
          std::to_string(i) + " (imbalance " + std::to_string(imbalance) +
          ")");
  }
}

double general_network_cost(const GeneralNetwork& net, const WeightFunction& w,
                            const NormSpace& space) {
  check_conservation(net);
  double cost = 0.0;
  for (const auto& a : net.arcs) {
    const double l = space.norm(net.nodes[static_cast<size_t>(a.from)].point -
                                net.nodes[static_cast<size_t>(a.to)].point);
    cost += w(a.flow) * l;
  }
  return cost;
}

}  // namespace gilbert
