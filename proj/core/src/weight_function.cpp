#include "gilbert/weight_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace gilbert {

WeightFunction WeightFunction::constant(double d) {
  if (!(d > 0)) throw std::invalid_argument("constant weight requires d > 0");
  WeightFunction w;
  w.kind_ = WeightKind::Constant;
  w.d_ = d;
  return w;
}

WeightFunction WeightFunction::affine(double d, double h) {
  if (!(d > 0)) throw std::invalid_argument("affine weight requires d > 0");
  if (!(h >= 0)) throw std::invalid_argument("affine weight requires h >= 0");
  WeightFunction w;
  w.kind_ = WeightKind::Affine;
  w.d_ = d;
  w.h_ = h;
  w.alpha_ = 1.0;
  return w;
}

WeightFunction WeightFunction::power(double d, double h, double alpha) {
  if (!(d > 0) || !(h > 0))
    throw std::invalid_argument("power weight requires d > 0 and h > 0");
  if (!(alpha > 0) || !(alpha <= 1))
    throw std::invalid_argument("power weight requires alpha in (0, 1]");
  if (alpha == 1.0) return affine(d, h);
  WeightFunction w;
  w.kind_ = WeightKind::Power;
  w.d_ = d;
  w.h_ = h;
  w.alpha_ = alpha;
  return w;
}

WeightFunction WeightFunction::rounded_affine(double a, double b, double c) {
  if (!(a > 0) || !(b > 0) || !(c > 0))
    throw std::invalid_argument("rounded_affine weight requires a, b, c > 0");
  WeightFunction w;
  w.kind_ = WeightKind::RoundedAffine;
  w.a_ = a;
  w.b_ = b;
  w.c_ = c;
  return w;
}

double WeightFunction::operator()(double t) const {
  if (!(t >= 0))
    throw std::invalid_argument("weight function defined for t >= 0 only");
  switch (kind_) {
    case WeightKind::Constant:
      return d_;
    case WeightKind::Affine:
      return d_ + h_ * t;
    case WeightKind::Power:
      return d_ + h_ * std::pow(t, alpha_);
    case WeightKind::RoundedAffine:
      return std::ceil((a_ * t + b_) / c_);
  }
  throw std::logic_error("unreachable weight kind");
}

WeightConditionReport WeightFunction::check_conditions(
    std::span<const double> grid) const {
  if (grid.empty())
    throw std::invalid_argument("check_conditions requires a nonempty grid");

  if (concave_family()) {
    // Positivity, monotonicity, triangularity and concavity all hold by
    // construction for constant, affine and power parameters.
    return {true, true, true, true};
  }

  std::vector<double> g(grid.begin(), grid.end());
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  const auto& w = *this;
  const double tol = 1e-12;

  WeightConditionReport r{true, true, true, true};
  for (double t : g) {
    if (t < 0) throw std::invalid_argument("grid points must be >= 0");
    const double v = w(t);
    if (v < 0 || (t > 0 && !(v > 0))) r.positive = false;
  }
  for (size_t i = 0; i < g.size(); ++i)
    for (size_t j = i + 1; j < g.size(); ++j)
      if (w(g[j]) < w(g[i]) - tol) r.nondecreasing = false;

  // Triangular condition over grid pairs whose sum is again a grid point.
  for (size_t i = 0; i < g.size(); ++i)
    for (size_t j = i; j < g.size(); ++j) {
      if (g[i] <= 0 || g[j] <= 0) continue;
      const double s = g[i] + g[j];
      const bool in_grid =
          std::any_of(g.begin(), g.end(),
                      [&](double t) { return std::abs(t - s) <= tol; });
      if (in_grid && w(s) > w(g[i]) + w(g[j]) + tol) r.triangular = false;
    }

  // Midpoint concavity over grid triples in arithmetic progression.
  for (size_t i = 0; i < g.size(); ++i)
    for (size_t k = i + 2; k < g.size(); ++k) {
      const double mid = 0.5 * (g[i] + g[k]);
      const bool in_grid =
          std::any_of(g.begin(), g.end(),
                      [&](double t) { return std::abs(t - mid) <= tol; });
      if (in_grid && w(mid) < 0.5 * (w(g[i]) + w(g[k])) - tol)
        r.concave = false;
    }

  return r;
}

}  // namespace gilbert
