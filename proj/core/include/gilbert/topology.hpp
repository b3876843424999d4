#pragma once

#include <span>
#include <string>
#include <vector>

namespace gilbert {

/// Rooted tree over n source terminals, one sink, and any number of Steiner
/// vertices. Every edge is directed toward the sink (the root), so the tree
/// is fully described by a parent link per non-sink vertex.
///
/// Vertex ids: sources 0..n-1, sink n, Steiner vertices n+1..n+s.
/// The edge out of vertex v is identified by v itself.
///
/// Steiner vertices must have total degree >= 3; terminals may have any
/// degree >= 1 (a terminal of degree > 1 is a pass-through, which arises
/// from contracting a Steiner vertex onto it).
class Topology {
public:
  Topology(int n_sources, int n_steiner, std::vector<int> parent);

  /// The n = 1 tree: one direct source-to-sink edge.
  static Topology single_edge();

  int n_sources() const { return n_sources_; }
  int n_steiner() const { return n_steiner_; }
  int vertex_count() const { return n_sources_ + 1 + n_steiner_; }
  int sink() const { return n_sources_; }

  bool is_source(int v) const { return v < n_sources_; }
  bool is_sink(int v) const { return v == n_sources_; }
  bool is_steiner(int v) const { return v > n_sources_; }
  bool is_terminal(int v) const { return v <= n_sources_; }

  /// Parent of v (-1 for the sink).
  int parent_of(int v) const { return parent_[static_cast<size_t>(v)]; }
  const std::vector<int>& children_of(int v) const {
    return children_[static_cast<size_t>(v)];
  }
  int degree(int v) const;

  /// Vertices ordered so every vertex appears after all of its children.
  const std::vector<int>&
  bottom_up_order() const { return order_; }

  /// Full topology: all terminals degree 1, all Steiner vertices degree 3,
  /// and s = n - 1.
  bool is_full() const;

  /// Canonical encoding, invariant under Steiner relabeling; used for
  /// deduplication and deterministic tie-breaking.
  std::string encoding() const;

private:
  int n_sources_;
  int n_steiner_;
  std::vector<int> parent_;
  std::vector<std::vector<int>> children_;
  std::vector<int> order_;
};

/// Edge flows from source tonnages: the flow on the edge out of v is the sum
/// of tonnages of sources whose sink path uses that edge. Indexed by the
/// child vertex id; the sink slot is 0.
std::vector<double> derive_flows(const Topology& top,
                                 std::span<const double> tonnages);

inline constexpr int kDefaultEnumerationCap = 7;

/// All full Steiner topologies on n sources + 1 sink, pairwise distinct up
/// to Steiner relabeling; (2k-5)!! of them for k = n+1 >= 3 terminals.
/// n = 1 yields the single direct edge. Throws when n exceeds the cap.
std::vector<Topology> enumerate_full_topologies(
    int n_sources, int cap = kDefaultEnumerationCap);

}  // namespace gilbert
