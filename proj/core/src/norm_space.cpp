#include "gilbert/norm_space.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gilbert {

NormSpace::NormSpace(NormKind kind, int dim, double p)
    : kind_(kind), dim_(dim), p_(p), q_(p / (p - 1.0)) {}

NormSpace NormSpace::euclidean(int dim) {
  if (dim < 2) throw std::invalid_argument("NormSpace: dim must be >= 2");
  return NormSpace(NormKind::Euclidean, dim, 2.0);
}

NormSpace NormSpace::p_norm(int dim, double p) {
  if (dim < 2) throw std::invalid_argument("NormSpace: dim must be >= 2");
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::invalid_argument("NormSpace: p must lie in (1, inf); got p = " +
                                std::to_string(p));
  return NormSpace(NormKind::PNorm, dim, p);
}

void NormSpace::require_dim(const Vec& x) const {
  if (x.size() != dim_)
    throw std::invalid_argument("NormSpace: vector has dimension " +
                                std::to_string(x.size()) + ", expected " +
                                std::to_string(dim_));
}

namespace {

// l_r norm evaluated with max-scaling so that large exponents neither
// overflow nor lose precision.
double lr_norm(const Vec& x, double r) {
  const double m = x.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    acc += std::pow(std::abs(x[i]) / m, r);
  return m * std::pow(acc, 1.0 / r);
}

}  // namespace

double NormSpace::norm(const Vec& x) const {
  require_dim(x);
  if (kind_ == NormKind::Euclidean) return x.norm();
  return lr_norm(x, p_);
}

double NormSpace::dual_norm(const Vec& z) const {
  require_dim(z);
  if (kind_ == NormKind::Euclidean) return z.norm();
  return lr_norm(z, q_);
}

Vec NormSpace::dual_vector(const Vec& x, double floor) const {
  require_dim(x);
  const double n = norm(x);
  if (!(n > floor))
    throw std::invalid_argument(
        "NormSpace::dual_vector: vector norm " + std::to_string(n) +
        " is below the floor " + std::to_string(floor));
  if (kind_ == NormKind::Euclidean) return x / n;
  // Component i: sign(x_i) |x_i|^(p-1) / ||x||^(p-1), scaled by the largest
  // component magnitude for stability.
  const double m = x.cwiseAbs().maxCoeff();
  Vec out(dim_);
  const double scale = std::pow(m / n, p_ - 1.0);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double a = std::abs(x[i]) / m;
    const double mag = std::pow(a, p_ - 1.0) * scale;
    out[i] = x[i] < 0.0 ? -mag : mag;
  }
  return out;
}

}  // namespace gilbert
