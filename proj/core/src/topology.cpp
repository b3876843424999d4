#include "gilbert/topology.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace gilbert {

Topology::Topology(int n_sources, int n_steiner, std::vector<int> parent)
    : n_sources_(n_sources), n_steiner_(n_steiner), parent_(std::move(parent)) {
  if (n_sources_ < 1) throw std::invalid_argument("Topology: n_sources >= 1");
  if (n_steiner_ < 0) throw std::invalid_argument("Topology: n_steiner >= 0");
  const int nv = vertex_count();
  if (static_cast<int>(parent_.size()) != nv)
    throw std::invalid_argument("Topology: parent vector has wrong length");
  if (parent_[static_cast<size_t>(sink())] != -1)
    throw std::invalid_argument("Topology: sink must have parent -1");

  children_.assign(static_cast<size_t>(nv), {});
  for (int v = 0; v < nv; ++v) {
    if (v == sink()) continue;
    const int p = parent_[static_cast<size_t>(v)];
    if (p < 0 || p >= nv || p == v)
      throw std::invalid_argument("Topology: invalid parent of vertex " +
                                  std::to_string(v));
    children_[static_cast<size_t>(p)].push_back(v);
  }

  // Walk up from every vertex; a chain longer than the vertex count means a
  // cycle, i.e. a disconnected parent structure.
  for (int v = 0; v < nv; ++v) {
    int u = v, steps = 0;
    while (u != sink()) {
      u = parent_[static_cast<size_t>(u)];
      if (++steps > nv)
        throw std::invalid_argument("Topology: cyclic or disconnected");
    }
  }

  for (int v = sink() + 1; v < nv; ++v)
    if (degree(v) < 3)
      throw std::invalid_argument("Topology: Steiner vertex " +
                                  std::to_string(v) + " has degree < 3");

  // Bottom-up order: depth-first from the sink, emit after children.
  order_.reserve(static_cast<size_t>(nv));
  std::vector<std::pair<int, size_t>> stack{{sink(), 0}};
  while (!stack.empty()) {
    auto& [v, ci] = stack.back();
    const auto& ch = children_[static_cast<size_t>(v)];
    if (ci < ch.size()) {
      stack.emplace_back(ch[ci++], 0);
    } else {
      order_.push_back(v);
      stack.pop_back();
    }
  }
}

Topology Topology::single_edge() { return Topology(1, 0, {1, -1}); }

int Topology::degree(int v) const {
  return static_cast<int>(children_[static_cast<size_t>(v)].size()) +
         (v == sink() ? 0 : 1);
}

bool Topology::is_full() const {
  if (n_sources_ == 1) return n_steiner_ == 0;
  if (n_steiner_ != n_sources_ - 1) return false;
  for (int v = 0; v < vertex_count(); ++v) {
    if (is_terminal(v) && degree(v) != 1) return false;
    if (is_steiner(v) && degree(v) != 3) return false;
  }
  return true;
}

namespace {

std::string subtree_signature(const Topology& t, int v) {
  const auto& ch = t.children_of(v);
  if (ch.empty()) return "T" + std::to_string(v);
  std::vector<std::string> parts;
  parts.reserve(ch.size());
  for (int c : ch) parts.push_back(subtree_signature(t, c));
  std::sort(parts.begin(), parts.end());
  std::string s = t.is_terminal(v) ? "T" + std::to_string(v) + "(" : "S(";
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ",";
    s += parts[i];
  }
  s += ")";
  return s;
}

}  // namespace

std::string Topology::encoding() const {
  std::string s = "Q(";
  std::vector<std::string> parts;
  for (int c : children_of(sink())) parts.push_back(subtree_signature(*this, c));
  std::sort(parts.begin(), parts.end());
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ",";
    s += parts[i];
  }
  s += ")";
  return s;
}

std::vector<double> derive_flows(const Topology& top,
                                 std::span<const double> tonnages) {
  if (static_cast<int>(tonnages.size()) != top.n_sources())
    throw std::invalid_argument("derive_flows: tonnage count mismatch");
  std::vector<double> flow(static_cast<size_t>(top.vertex_count()), 0.0);
  for (int v : top.bottom_up_order()) {
    double f = top.is_source(v) ? tonnages[static_cast<size_t>(v)] : 0.0;
    for (int c : top.children_of(v)) f += flow[static_cast<size_t>(c)];
    flow[static_cast<size_t>(v)] = f;
  }
  flow[static_cast<size_t>(top.sink())] = 0.0;
  return flow;
}

std::vector<Topology> enumerate_full_topologies(int n_sources, int cap) {
  if (n_sources < 1)
    throw std::invalid_argument("enumerate_full_topologies: n >= 1 required");
  if (n_sources > cap)
    throw std::invalid_argument(
        "enumerate_full_topologies: n = " + std::to_string(n_sources) +
        " exceeds cap " + std::to_string(cap));
  if (n_sources == 1) return {Topology::single_edge()};

  const int n = n_sources;
  const int sink = n;

  // Grow from the unique 2-source topology by splicing each further source
  // into every existing edge via a fresh Steiner vertex. Each full topology
  // is produced exactly once, giving the (2k-5)!! count.
  std::vector<std::vector<int>> partial;
  {
    std::vector<int> parent(static_cast<size_t>(n + 1 + (n - 1)), -2);
    parent[0] = n + 1;
    parent[1] = n + 1;
    parent[static_cast<size_t>(sink)] = -1;
    parent[static_cast<size_t>(n + 1)] = sink;
    partial.push_back(std::move(parent));
  }

  for (int k = 2; k < n; ++k) {
    // Current trees have k sources and k-1 Steiner vertices.
    const int new_steiner = n + k;
    std::vector<std::vector<int>> next;
    next.reserve(partial.size() * static_cast<size_t>(2 * k - 1));
    for (const auto& parent : partial) {
      for (int v = 0; v < static_cast<int>(parent.size()); ++v) {
        // Negative entries are the sink (-1) and not-yet-added vertices (-2).
        if (parent[static_cast<size_t>(v)] < 0) continue;
        // Split edge v -> parent[v] with the new Steiner vertex and hang
        // source k off it.
        auto p = parent;
        p[static_cast<size_t>(new_steiner)] = p[static_cast<size_t>(v)];
        p[static_cast<size_t>(v)] = new_steiner;
        p[static_cast<size_t>(k)] = new_steiner;
        next.push_back(std::move(p));
      }
    }
    partial = std::move(next);
  }

  std::vector<Topology> out;
  out.reserve(partial.size());
  for (auto& parent : partial)
    out.emplace_back(n, n - 1, std::move(parent));
  return out;
}

}  // namespace gilbert
