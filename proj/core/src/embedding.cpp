#include "gilbert/embedding.hpp"

#include <stdexcept>
#include <utility>

namespace gilbert {

Embedding::Embedding(const Instance& inst, Topology top,
                     std::vector<Vec> steiner_positions)
    : topology_(std::move(top)) {
  if (topology_.n_sources() != inst.n_sources())
    throw std::invalid_argument("Embedding: topology/instance source mismatch");
  if (static_cast<int>(steiner_positions.size()) != topology_.n_steiner())
    throw std::invalid_argument("Embedding: wrong number of Steiner positions");

  const int nv = topology_.vertex_count();
  positions_.reserve(static_cast<size_t>(nv));
  for (int i = 0; i < inst.n_sources(); ++i)
    positions_.push_back(inst.source(i).point);
  positions_.push_back(inst.sink());
  for (auto& p : steiner_positions) {
    if (p.size() != inst.space().dim())
      throw std::invalid_argument("Embedding: Steiner position dimension mismatch");
    positions_.push_back(std::move(p));
  }

  const auto tonnages = inst.tonnages();
  flows_ = derive_flows(topology_, tonnages);

  edges_.reserve(static_cast<size_t>(nv - 1));
  for (int v = 0; v < nv; ++v) {
    if (v == topology_.sink()) continue;
    const int p = topology_.parent_of(v);
    const double f = flows_[static_cast<size_t>(v)];
    const double w = inst.weight()(f);
    const double l = inst.space().norm(positions_[static_cast<size_t>(v)] -
                                       positions_[static_cast<size_t>(p)]);
    edges_.push_back({v, p, f, w, l});
    total_cost_ += w * l;
  }
}

std::vector<Vec> Embedding::steiner_positions() const {
  std::vector<Vec> out;
  out.reserve(static_cast<size_t>(topology_.n_steiner()));
  for (int v = topology_.sink() + 1; v < topology_.vertex_count(); ++v)
    out.push_back(positions_[static_cast<size_t>(v)]);
  return out;
}

}  // namespace gilbert
