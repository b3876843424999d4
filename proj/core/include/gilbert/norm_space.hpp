#pragma once

#include <Eigen/Core>

namespace gilbert {

using Vec = Eigen::VectorXd;

enum class NormKind { Euclidean, PNorm };

/// A smooth Minkowski norm on R^d: either the Euclidean norm or an l_p norm
/// with exponent p in (1, inf). The endpoints p = 1 and p = inf are rejected
/// at construction because their unit balls have corners, so the norm
/// gradient (the dual vector) is not unique everywhere.
class NormSpace {
public:
  static NormSpace euclidean(int dim);
  static NormSpace p_norm(int dim, double p);

  NormKind kind() const { return kind_; }
  int dim() const { return dim_; }
  /// Exponent p (2 for the Euclidean case).
  double exponent() const { return p_; }
  /// Dual exponent q with 1/p + 1/q = 1.
  double dual_exponent() const { return q_; }

  double norm(const Vec& x) const;

  /// sup over ||x|| <= 1 of <z, x>; the l_q norm of z.
  double dual_norm(const Vec& z) const;

  /// The norm gradient x* at x != 0: <x*, x> = ||x|| and ||x*||* = 1.
  /// Throws std::invalid_argument when ||x|| <= floor.
  Vec dual_vector(const Vec& x, double floor = kDualVectorFloor) const;

  static constexpr double kDualVectorFloor = 1e-12;

private:
  NormSpace(NormKind kind, int dim, double p);

  void require_dim(const Vec& x) const;

  NormKind kind_;
  int dim_;
  double p_;
  double q_;
};

}  // namespace gilbert
