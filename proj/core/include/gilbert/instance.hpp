#pragma once

#include <vector>

#include "gilbert/norm_space.hpp"
#include "gilbert/weight_function.hpp"

namespace gilbert {

struct Source {
  Vec point;
  double tonnage;
};

/// A single-sink problem instance: n sources with positive tonnages, one
/// sink, a norm and a weight function. Duplicated terminal points are legal
/// but flagged, since they usually indicate a degenerate input.
class Instance {
public:
  Instance(std::vector<Source> sources, Vec sink, NormSpace space,
           WeightFunction weight);

  int n_sources() const { return static_cast<int>(sources_.size()); }
  const std::vector<Source>& sources() const { return sources_; }
  const Source& source(int i) const { return sources_[static_cast<size_t>(i)]; }
  const Vec& sink() const { return sink_; }
  const NormSpace& space() const { return space_; }
  const WeightFunction& weight() const { return weight_; }

  std::vector<double> tonnages() const;
  double total_tonnage() const { return total_tonnage_; }

  /// Max pairwise distance among terminals, in the instance norm.
  double diameter() const { return diameter_; }

  bool has_duplicate_terminals() const { return has_duplicates_; }

private:
  std::vector<Source> sources_;
  Vec sink_;
  NormSpace space_;
  WeightFunction weight_;
  double total_tonnage_ = 0;
  double diameter_ = 0;
  bool has_duplicates_ = false;
};

}  // namespace gilbert
