#include "gilbert/melzak.hpp"

#include <cmath>
#include <stdexcept>

#include "gilbert/certify.hpp"

namespace gilbert {

namespace {

double cross2(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

}  // namespace

MelzakSolution melzak_two_source(const Vec& p1, const Vec& p2, const Vec& q,
                                 double t1, double t2,
                                 const WeightFunction& w) {
  if (p1.size() != 2 || p2.size() != 2 || q.size() != 2)
    throw std::invalid_argument("melzak_two_source: points must be planar");
  if (!(t1 > 0) || !(t2 > 0))
    throw std::invalid_argument("melzak_two_source: tonnages must be > 0");
  const double len = (p1 - p2).norm();
  if (len <= 0)
    throw std::invalid_argument("melzak_two_source: p1 and p2 coincide");

  const double w1 = w(t1), w2 = w(t2), w12 = w(t1 + t2);
  const double r1 = w2 / w12 * len;  // ||p - p1||
  const double r2 = w1 / w12 * len;  // ||p - p2||

  // Intersect the circles around p1 and p2; take the solution on the far
  // side of line p1p2 from q.
  const Vec dir = (p2 - p1) / len;
  const Vec perp = (Vec(2) << -dir[1], dir[0]).finished();
  const double a = (len * len + r1 * r1 - r2 * r2) / (2.0 * len);
  const double h = std::sqrt(std::max(r1 * r1 - a * a, 0.0));
  const double q_side = cross2(p2 - p1, q - p1);
  const Vec base = p1 + a * dir;
  const Vec p = q_side >= 0 ? Vec(base - h * perp) : Vec(base + h * perp);

  auto collapsed = [&]() {
    MelzakSolution sol;
    sol.auxiliary_point = p;
    sol.simpson_segment = {p, q};
    sol.degenerate = true;
    const double at_p1 = w2 * len + w12 * (p1 - q).norm();
    const double at_p2 = w1 * len + w12 * (p2 - q).norm();
    const double at_q = w1 * (p1 - q).norm() + w2 * (p2 - q).norm();
    sol.total_cost = std::min({at_p1, at_p2, at_q});
    sol.steiner_point = sol.total_cost == at_p1 ? p1
                        : sol.total_cost == at_p2 ? p2
                                                  : q;
    return sol;
  };

  // Degenerate auxiliary triangle: p lands on line p1p2, no circumcircle.
  if (std::abs(cross2(p1 - p, p2 - p)) <= 1e-14 * len * len) return collapsed();

  // Circumcenter of triangle (p, p1, p2).
  const Vec e1 = p1 - p, e2 = p2 - p;
  const double det = 2.0 * cross2(e1, e2);
  const Vec center =
      p + (Vec(2) << (e2[1] * e1.squaredNorm() - e1[1] * e2.squaredNorm()) / det,
                     (e1[0] * e2.squaredNorm() - e2[0] * e1.squaredNorm()) / det)
              .finished();

  // Second intersection of line p -> q with the circumcircle (p is on it).
  const Vec u = q - p;
  const double uu = u.squaredNorm();
  if (uu <= 0) return collapsed();
  const double tau = -2.0 * u.dot(p - center) / uu;
  const Vec s = p + tau * u;

  const double tiny = 1e-12 * len;
  const bool inside_segment = tau > 0 && tau < 1;
  const bool q_side_ok = q_side != 0 && cross2(p2 - p1, s - p1) * q_side > 0;
  const bool clear_of_terminals = (s - p1).norm() > tiny &&
                                  (s - p2).norm() > tiny &&
                                  (s - q).norm() > tiny;
  if (!inside_segment || !q_side_ok || !clear_of_terminals) return collapsed();

  // Cross-check stationarity; a failed balance means the arc test was fooled
  // by roundoff and the collapsed optimum is the real one.
  const NormSpace plane = NormSpace::euclidean(2);
  const StarData star(s, {{p1, t1}, {p2, t2}}, {q, t1 + t2}, plane, w);
  if (balancing_residual(star) > 1e-9 * w12) return collapsed();

  MelzakSolution sol;
  sol.auxiliary_point = p;
  sol.steiner_point = s;
  sol.simpson_segment = {p, q};
  sol.total_cost = w12 * (p - q).norm();
  sol.degenerate = false;
  return sol;
}

}  // namespace gilbert
