#pragma once

#include <span>

namespace gilbert {

enum class WeightKind { Constant, Affine, Power, RoundedAffine };

/// Per-condition result of check_conditions: positivity, monotonicity,
/// the triangular (subadditivity) condition, and concavity.
struct WeightConditionReport {
  bool positive = false;
  bool nondecreasing = false;
  bool triangular = false;
  bool concave = false;
  bool all() const { return positive && nondecreasing && triangular && concave; }
};

/// Edge-weight function w(t): unit cost as a function of the flow carried.
///
/// Built-in families:
///   constant        w(t) = d,                d > 0
///   affine          w(t) = d + h t,          d > 0, h >= 0
///   power           w(t) = d + h t^alpha,    d, h > 0, alpha in (0,1)
///   rounded_affine  w(t) = ceil((a t + b)/c), a, b, c > 0
///
/// power with alpha == 1 canonicalizes to affine at construction, so kind()
/// can be inspected directly when a hypothesis distinguishes alpha = 1.
/// rounded_affine is integer-valued and not concave; it is representable on
/// purpose so that non-tree-optimal weight functions can be expressed.
class WeightFunction {
public:
  static WeightFunction constant(double d);
  static WeightFunction affine(double d, double h);
  static WeightFunction power(double d, double h, double alpha);
  static WeightFunction rounded_affine(double a, double b, double c);

  /// w(t); throws std::invalid_argument for t < 0.
  double operator()(double t) const;

  WeightKind kind() const { return kind_; }
  double d() const { return d_; }
  double h() const { return h_; }
  double alpha() const { return alpha_; }
  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }

  /// True for the families that are concave by construction.
  bool concave_family() const { return kind_ != WeightKind::RoundedAffine; }

  /// Conditions (positivity, monotonicity, triangularity, concavity),
  /// analytic for the closed-form families and exhaustively grid-tested for
  /// rounded_affine. The grid must be nonempty; midpoint concavity is tested
  /// on all grid triples in arithmetic progression.
  WeightConditionReport check_conditions(std::span<const double> grid) const;

private:
  WeightFunction() = default;

  WeightKind kind_ = WeightKind::Constant;
  double d_ = 0, h_ = 0, alpha_ = 0;
  double a_ = 0, b_ = 0, c_ = 0;
};

}  // namespace gilbert
