#include "gilbert/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "gilbert/melzak.hpp"
#include "gilbert/topology.hpp"

namespace gilbert {

CounterexampleData paper_counterexample() {
  const WeightFunction w = WeightFunction::rounded_affine(3, 1, 2);
  const NormSpace plane = NormSpace::euclidean(2);

  const Vec p1 = (Vec(2) << -0.5, 0.0).finished();
  const Vec p2 = (Vec(2) << 0.5, 0.0).finished();
  // ||p1 - q|| = ||p2 - q|| = sqrt(0.25 + 99.75) = 10 exactly.
  const Vec q = (Vec(2) << 0.0, -std::sqrt(99.75)).finished();
  const double t1 = 2.0, t2 = 4.0;

  Instance inst({{p1, t1}, {p2, t2}}, q, plane, w);

  GeneralNetwork net;
  net.nodes = {{p1, t1}, {p2, t2}, {q, -(t1 + t2)}};
  net.arcs = {{1, 0, 1.0},   // one unit of p2's flow detours via p1
              {0, 2, 3.0},
              {1, 2, 3.0}};
  const double split_cost = general_network_cost(net, w, plane);

  const MelzakSolution mel = melzak_two_source(p1, p2, q, t1, t2, w);
  if (mel.degenerate)
    throw std::logic_error("counterexample: construction unexpectedly degenerate");
  Topology star(2, 1, {3, 3, -1, 2});
  Embedding arb(inst, star, {mel.steiner_point});

  if (!(split_cost < arb.total_cost()))
    throw std::logic_error("counterexample: split route failed to beat the tree");

  const double arb_cost = arb.total_cost();
  return {std::move(inst), std::move(net), split_cost, std::move(arb),
          arb_cost};
}

Degree4Feasibility degree4_feasible(const WeightFunction& w, double t) {
  if (!(t > 0)) throw std::invalid_argument("degree4_feasible: t > 0 required");
  const double wt = w(t), w2t = w(2 * t), w3t = w(3 * t);
  const double slack = 3 * w2t * w2t - 3 * wt * wt - w3t * w3t;
  return {slack >= 0, slack};
}

Degree4Construction degree4_construct(const WeightFunction& w, double t) {
  const auto feas = degree4_feasible(w, t);
  if (!feas.feasible)
    throw std::invalid_argument(
        "degree4_construct: (w, t) does not satisfy the degree-4 condition");

  const double wt = w(t), w3t = w(3 * t);
  double lambda = w3t * w3t / (6 * wt * wt) - 0.5;
  if (lambda < -0.5 - 1e-12 || lambda > 1.0 + 1e-12)
    throw std::logic_error("degree4_construct: lambda outside [-1/2, 1]");
  lambda = std::clamp(lambda, -0.5, 1.0);

  const double z = std::sqrt((1.0 + 2.0 * lambda) / 3.0);
  const double r = std::sqrt(std::max(1.0 - z * z, 0.0));

  std::array<Vec, 3> units;
  for (int i = 0; i < 3; ++i) {
    const double angle = 2.0 * std::numbers::pi * i / 3.0;
    units[static_cast<size_t>(i)] =
        (Vec(3) << r * std::cos(angle), r * std::sin(angle), z).finished();
  }
  std::array<Vec, 3> vectors;
  for (int i = 0; i < 3; ++i)
    vectors[static_cast<size_t>(i)] = wt * units[static_cast<size_t>(i)];

  // Star with the Steiner vertex at the origin: sources one unit out along
  // the u_i, sink one unit along the direction of -(v1+v2+v3). Edge lengths
  // are immaterial to the conditions; units keep it readable.
  const Vec sink = (Vec(3) << 0.0, 0.0, -1.0).finished();
  Instance star_inst({{units[0], t}, {units[1], t}, {units[2], t}}, sink,
                     NormSpace::euclidean(3), w);
  Topology star_top(3, 1, {4, 4, 4, -1, 3});
  Embedding star_emb(star_inst, star_top, {Vec::Zero(3)});

  return {lambda, std::move(vectors), std::move(star_inst),
          std::move(star_emb)};
}

double lemma5_slack(const std::function<double(double)>& f,
                    std::span<const double> tonnages) {
  const int m = static_cast<int>(tonnages.size());
  if (m < 2) throw std::invalid_argument("lemma5_slack: m >= 2 required");
  for (double t : tonnages)
    if (!(t >= 0)) throw std::invalid_argument("lemma5_slack: tonnages >= 0");

  double sum_f = 0, sum_t = 0, sum_pairs = 0;
  for (int i = 0; i < m; ++i) {
    sum_f += f(tonnages[static_cast<size_t>(i)]);
    sum_t += tonnages[static_cast<size_t>(i)];
    for (int j = i + 1; j < m; ++j)
      sum_pairs += f(tonnages[static_cast<size_t>(i)] +
                     tonnages[static_cast<size_t>(j)]);
  }
  return (m - 2) * sum_f + f(sum_t) -
         0.5 * (m - 1) * (m - 2) * f(0.0) - sum_pairs;
}

double f_alpha(double alpha) {
  if (!(alpha > 0) || !(alpha <= 1))
    throw std::invalid_argument("f_alpha: alpha in (0, 1] required");
  return 3.0 + std::pow(3.0, 2.0 * alpha) - 3.0 * std::pow(2.0, 2.0 * alpha);
}

}  // namespace gilbert
