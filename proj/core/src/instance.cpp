#include "gilbert/instance.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace gilbert {

Instance::Instance(std::vector<Source> sources, Vec sink, NormSpace space,
                   WeightFunction weight)
    : sources_(std::move(sources)),
      sink_(std::move(sink)),
      space_(space),
      weight_(std::move(weight)) {
  if (sources_.empty())
    throw std::invalid_argument("Instance: at least one source required");
  if (sink_.size() != space_.dim())
    throw std::invalid_argument("Instance: sink dimension mismatch");
  for (size_t i = 0; i < sources_.size(); ++i) {
    const auto& s = sources_[i];
    if (s.point.size() != space_.dim())
      throw std::invalid_argument("Instance: source " + std::to_string(i) +
                                  " dimension mismatch");
    if (!(s.tonnage > 0))
      throw std::invalid_argument("Instance: source " + std::to_string(i) +
                                  " tonnage must be > 0");
    total_tonnage_ += s.tonnage;
  }

  std::vector<const Vec*> pts;
  pts.reserve(sources_.size() + 1);
  for (const auto& s : sources_) pts.push_back(&s.point);
  pts.push_back(&sink_);
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j) {
      const double d = space_.norm(*pts[i] - *pts[j]);
      diameter_ = std::max(diameter_, d);
      if (d == 0.0) has_duplicates_ = true;
    }
}

std::vector<double> Instance::tonnages() const {
  std::vector<double> t;
  t.reserve(sources_.size());
  for (const auto& s : sources_) t.push_back(s.tonnage);
  return t;
}

}  // namespace gilbert
