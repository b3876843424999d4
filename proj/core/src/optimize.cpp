#include "gilbert/optimize.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace gilbert {

void OptimizeOptions::validate() const {
  if (!(smoothing_eps_start > 0) || !(smoothing_eps_end > 0) ||
      !(position_tol > 0) || !(contract_tol > 0) || max_iters <= 0)
    throw std::invalid_argument("OptimizeOptions: all fields must be positive");
  if (!(smoothing_eps_end < smoothing_eps_start))
    throw std::invalid_argument("OptimizeOptions: eps_end < eps_start required");
  if (!(eps_decay > 0) || !(eps_decay < 1))
    throw std::invalid_argument("OptimizeOptions: eps_decay in (0,1) required");
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

double smoothed_norm(const NormSpace& space, const Vec& d, double eps) {
  if (space.kind() == NormKind::Euclidean)
    return std::sqrt(d.squaredNorm() + eps * eps);
  const double p = space.exponent();
  const double m = std::max(d.cwiseAbs().maxCoeff(), eps);
  double acc = std::pow(eps / m, p);
  for (Eigen::Index i = 0; i < d.size(); ++i)
    acc += std::pow(std::abs(d[i]) / m, p);
  return m * std::pow(acc, 1.0 / p);
}

Vec smoothed_grad(const NormSpace& space, const Vec& d, double eps,
                  double value) {
  if (space.kind() == NormKind::Euclidean) return d / value;
  const double p = space.exponent();
  Vec g(d.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    const double mag = std::pow(std::abs(d[i]) / value, p - 1.0);
    g[i] = d[i] < 0.0 ? -mag : mag;
  }
  return g;
}

// d x d Hessian block of the smoothed norm at offset d. For p < 2 the exact
// diagonal term is unbounded as a component vanishes; the component is
// clamped there, which only weakens the Newton model, never the gradient.
MatrixXd smoothed_hessian(const NormSpace& space, const Vec& d, double eps,
                          double value, const Vec& grad) {
  const Eigen::Index n = d.size();
  if (space.kind() == NormKind::Euclidean) {
    MatrixXd h = MatrixXd::Identity(n, n) / value;
    h.noalias() -= d * d.transpose() / (value * value * value);
    return h;
  }
  const double p = space.exponent();
  MatrixXd h = -(grad * grad.transpose()) / value;
  for (Eigen::Index i = 0; i < n; ++i) {
    double a = std::abs(d[i]) / value;
    if (p < 2.0) a = std::max(a, 1e-8);
    h(i, i) += std::pow(a, p - 2.0) / value;
  }
  return (p - 1.0) * h;
}

// Fixed-topology smoothed objective over packed Steiner coordinates.
class Objective {
public:
  Objective(const Instance& inst, const Topology& top)
      : inst_(inst), top_(top), dim_(inst.space().dim()) {
    const auto flows = derive_flows(top, inst.tonnages());
    weights_.resize(flows.size());
    for (size_t v = 0; v < flows.size(); ++v)
      weights_[v] = static_cast<int>(v) == top.sink() ? 0.0
                                                      : inst.weight()(flows[v]);
    positions_.reserve(static_cast<size_t>(top.vertex_count()));
    for (int i = 0; i < inst.n_sources(); ++i)
      positions_.push_back(inst.source(i).point);
    positions_.push_back(inst.sink());
    for (int i = 0; i < top.n_steiner(); ++i)
      positions_.push_back(Vec::Zero(dim_));
  }

  int n_vars() const { return top_.n_steiner() * dim_; }

  void unpack(const VectorXd& x) {
    for (int i = 0; i < top_.n_steiner(); ++i)
      positions_[static_cast<size_t>(top_.sink() + 1 + i)] =
          x.segment(i * dim_, dim_);
  }

  double value(const VectorXd& x, double eps) {
    unpack(x);
    double f = 0;
    for (int v = 0; v < top_.vertex_count(); ++v) {
      if (v == top_.sink()) continue;
      const Vec d = positions_[static_cast<size_t>(v)] -
                    positions_[static_cast<size_t>(top_.parent_of(v))];
      f += weights_[static_cast<size_t>(v)] *
           smoothed_norm(inst_.space(), d, eps);
    }
    return f;
  }

  double value_grad(const VectorXd& x, double eps, VectorXd& grad) {
    unpack(x);
    grad.setZero(n_vars());
    double f = 0;
    for (int v = 0; v < top_.vertex_count(); ++v) {
      if (v == top_.sink()) continue;
      const int u = top_.parent_of(v);
      const Vec d = positions_[static_cast<size_t>(v)] -
                    positions_[static_cast<size_t>(u)];
      const double w = weights_[static_cast<size_t>(v)];
      const double val = smoothed_norm(inst_.space(), d, eps);
      f += w * val;
      const Vec g = w * smoothed_grad(inst_.space(), d, eps, val);
      if (top_.is_steiner(v)) grad.segment(steiner_offset(v), dim_) += g;
      if (top_.is_steiner(u)) grad.segment(steiner_offset(u), dim_) -= g;
    }
    return f;
  }

  void hessian(const VectorXd& x, double eps, MatrixXd& hess) {
    unpack(x);
    hess.setZero(n_vars(), n_vars());
    for (int v = 0; v < top_.vertex_count(); ++v) {
      if (v == top_.sink()) continue;
      const int u = top_.parent_of(v);
      const Vec d = positions_[static_cast<size_t>(v)] -
                    positions_[static_cast<size_t>(u)];
      const double w = weights_[static_cast<size_t>(v)];
      const double val = smoothed_norm(inst_.space(), d, eps);
      const Vec g = smoothed_grad(inst_.space(), d, eps, val);
      const MatrixXd block =
          w * smoothed_hessian(inst_.space(), d, eps, val, g);
      const bool sv = top_.is_steiner(v), su = top_.is_steiner(u);
      if (sv)
        hess.block(steiner_offset(v), steiner_offset(v), dim_, dim_) += block;
      if (su)
        hess.block(steiner_offset(u), steiner_offset(u), dim_, dim_) += block;
      if (sv && su) {
        hess.block(steiner_offset(v), steiner_offset(u), dim_, dim_) -= block;
        hess.block(steiner_offset(u), steiner_offset(v), dim_, dim_) -= block;
      }
    }
  }

  std::vector<Vec> steiner_positions(const VectorXd& x) {
    unpack(x);
    return {positions_.begin() + top_.sink() + 1, positions_.end()};
  }

private:
  int steiner_offset(int v) const { return (v - top_.sink() - 1) * dim_; }

  const Instance& inst_;
  const Topology& top_;
  int dim_;
  std::vector<double> weights_;
  std::vector<Vec> positions_;
};

// Start from the minimizer of sum_e ||x_u - x_v||^2: a small Laplacian
// solve with terminal positions as boundary data.
VectorXd initial_guess(const Instance& inst, const Topology& top) {
  const int s = top.n_steiner();
  const int d = inst.space().dim();
  MatrixXd lap = MatrixXd::Zero(s, s);
  MatrixXd rhs = MatrixXd::Zero(s, d);
  auto position_of_terminal = [&](int v) -> const Vec& {
    return top.is_sink(v) ? inst.sink() : inst.source(v).point;
  };
  for (int v = top.sink() + 1; v < top.vertex_count(); ++v) {
    const int i = v - top.sink() - 1;
    std::vector<int> nbs = top.children_of(v);
    nbs.push_back(top.parent_of(v));
    lap(i, i) = static_cast<double>(nbs.size());
    for (int nb : nbs) {
      if (top.is_steiner(nb))
        lap(i, nb - top.sink() - 1) -= 1.0;
      else
        rhs.row(i) += position_of_terminal(nb).transpose();
    }
  }
  const MatrixXd sol = lap.ldlt().solve(rhs);
  VectorXd x(s * d);
  for (int i = 0; i < s; ++i) x.segment(i * d, d) = sol.row(i).transpose();
  return x;
}

struct StageOutcome {
  int iterations;
  bool hit_budget;
};

// Quasi-Newton descent with backtracking on the smoothed objective at fixed
// eps. Stops when the infinity-norm of the step falls below tol or no
// decrease is representable.
StageOutcome bfgs_stage(Objective& obj, double eps, VectorXd& x, double tol,
                        int budget, std::vector<double>& history) {
  const int n = static_cast<int>(x.size());
  MatrixXd h_inv = MatrixXd::Identity(n, n);
  VectorXd g(n), gn(n);
  double f = obj.value_grad(x, eps, g);
  history.push_back(f);
  bool first_update = true;

  int it = 0;
  for (; it < budget; ++it) {
    VectorXd dir = -(h_inv * g);
    double slope = g.dot(dir);
    if (!(slope < 0)) {
      h_inv.setIdentity();
      dir = -g;
      slope = g.dot(dir);
      if (!(slope < 0)) return {it, false};  // gradient numerically zero
    }

    double step = 1.0;
    double fn = f;
    VectorXd xn;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      xn = x + step * dir;
      fn = obj.value(xn, eps);
      if (fn <= f + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) return {it, false};  // below float resolution

    obj.value_grad(xn, eps, gn);
    const VectorXd s = xn - x;
    const VectorXd y = gn - g;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      if (first_update) {
        h_inv = (sy / y.squaredNorm()) * MatrixXd::Identity(n, n);
        first_update = false;
      }
      const VectorXd hy = h_inv * y;
      const double yhy = y.dot(hy);
      h_inv += ((sy + yhy) / (sy * sy)) * (s * s.transpose());
      h_inv -= (hy * s.transpose() + s * hy.transpose()) / sy;
    }

    const double step_inf = s.lpNorm<Eigen::Infinity>();
    x = xn;
    f = fn;
    g = gn;
    history.push_back(f);
    if (step_inf <= tol) return {it + 1, false};
  }
  return {it, true};
}

// Damped Newton iterations that drive the smoothed gradient itself to zero;
// unlike descent on the value this is not limited by roundoff in f, which
// is what the certificate tolerances need.
int newton_polish(Objective& obj, double eps, VectorXd& x, double grad_floor,
                  int budget) {
  const int n = static_cast<int>(x.size());
  VectorXd g(n), g_try(n);
  MatrixXd hess(n, n);
  obj.value_grad(x, eps, g);
  double gnorm = g.lpNorm<Eigen::Infinity>();
  double mu = 0.0;
  int it = 0;
  for (; it < budget && gnorm > grad_floor; ++it) {
    obj.hessian(x, eps, hess);
    const double scale = std::max(hess.diagonal().maxCoeff(), 1e-300);
    bool accepted = false;
    for (int attempt = 0; attempt < 25; ++attempt) {
      MatrixXd damped = hess;
      damped.diagonal().array() += mu * scale + 1e-14 * scale;
      Eigen::LDLT<MatrixXd> ldlt(damped);
      if (ldlt.info() == Eigen::Success) {
        const VectorXd delta = ldlt.solve(-g);
        const VectorXd xt = x + delta;
        obj.value_grad(xt, eps, g_try);
        const double gt = g_try.lpNorm<Eigen::Infinity>();
        if (gt < gnorm) {
          x = xt;
          g = g_try;
          gnorm = gt;
          mu = mu * 0.25;
          accepted = true;
          break;
        }
      }
      mu = std::max(mu * 10.0, 1e-10);
    }
    if (!accepted) break;
  }
  return it;
}

}  // namespace

OptimizeResult optimize_embedding(const Instance& inst, const Topology& top,
                                  const OptimizeOptions& opts) {
  opts.validate();
  if (top.n_sources() != inst.n_sources())
    throw std::invalid_argument("optimize_embedding: source count mismatch");

  if (top.n_steiner() == 0) {
    Embedding emb(inst, top, {});
    return {emb, true, 0, {emb.total_cost()}};
  }

  Objective obj(inst, top);
  VectorXd x = initial_guess(inst, top);
  std::vector<double> history;
  const double scale = std::max(1.0, inst.diameter());

  int used = 0;
  bool budget_hit = false;
  double eps = opts.smoothing_eps_start;
  while (true) {
    if (used >= opts.max_iters) {
      budget_hit = true;
      break;
    }
    const bool final_stage = eps <= opts.smoothing_eps_end;
    const double tol =
        final_stage ? opts.position_tol * scale
                    : std::max(opts.position_tol * scale, eps * 1e-2);
    const auto outcome =
        bfgs_stage(obj, eps, x, tol, opts.max_iters - used, history);
    used += outcome.iterations;
    if (outcome.hit_budget) {
      budget_hit = true;
      break;
    }
    if (final_stage) break;
    eps = std::max(eps * opts.eps_decay, opts.smoothing_eps_end);
  }

  if (!budget_hit) {
    const double grad_floor =
        1e-13 * std::max(1.0, inst.weight()(inst.total_tonnage()));
    used += newton_polish(obj, opts.smoothing_eps_end, x, grad_floor, 60);
  }

  Embedding emb(inst, top, obj.steiner_positions(x));
  history.push_back(obj.value(x, opts.smoothing_eps_end));
  return {std::move(emb), !budget_hit, used, std::move(history)};
}

Embedding contract_degenerate_edges(const Embedding& emb, const Instance& inst,
                                    double tol) {
  const double threshold = tol * inst.diameter();
  const auto& top = emb.topology();
  const int n = top.n_sources();
  const int sink = top.sink();
  const int nv = top.vertex_count();

  std::vector<int> parent(static_cast<size_t>(nv));
  std::vector<Vec> pos(emb.positions());
  std::vector<bool> alive(static_cast<size_t>(nv), true);
  for (int v = 0; v < nv; ++v) parent[static_cast<size_t>(v)] = top.parent_of(v);

  auto edge_len = [&](int v) {
    return inst.space().norm(pos[static_cast<size_t>(v)] -
                             pos[static_cast<size_t>(parent[static_cast<size_t>(v)])]);
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < nv && !changed; ++v) {
      if (!alive[static_cast<size_t>(v)] || v == sink) continue;
      const int p = parent[static_cast<size_t>(v)];
      const bool steiner_edge = v > sink || p > sink;
      if (!steiner_edge || edge_len(v) > threshold) continue;

      // Merge the Steiner endpoint into the other endpoint. The survivor
      // inherits the removed vertex's children, and (when the removed vertex
      // was the survivor's parent) its parent link too.
      const int removed = v > sink ? v : p;
      const int survivor = v > sink ? p : v;
      for (int u = 0; u < nv; ++u)
        if (alive[static_cast<size_t>(u)] && u != survivor &&
            parent[static_cast<size_t>(u)] == removed)
          parent[static_cast<size_t>(u)] = survivor;
      if (removed == p)
        parent[static_cast<size_t>(survivor)] = parent[static_cast<size_t>(removed)];
      alive[static_cast<size_t>(removed)] = false;
      changed = true;
    }
  }

  // Compact surviving Steiner ids and rebuild.
  std::vector<int> remap(static_cast<size_t>(nv), -1);
  for (int v = 0; v <= sink; ++v) remap[static_cast<size_t>(v)] = v;
  int next = sink + 1;
  std::vector<Vec> steiner_pos;
  for (int v = sink + 1; v < nv; ++v)
    if (alive[static_cast<size_t>(v)]) {
      remap[static_cast<size_t>(v)] = next++;
      steiner_pos.push_back(pos[static_cast<size_t>(v)]);
    }
  std::vector<int> new_parent(static_cast<size_t>(next), -1);
  for (int v = 0; v < nv; ++v) {
    if (!alive[static_cast<size_t>(v)] || v == sink) continue;
    new_parent[static_cast<size_t>(remap[static_cast<size_t>(v)])] =
        remap[static_cast<size_t>(parent[static_cast<size_t>(v)])];
  }
  Topology contracted(n, next - sink - 1, std::move(new_parent));
  return Embedding(inst, std::move(contracted), std::move(steiner_pos));
}

std::optional<OptimizeResult> split_improvement_scan(
    const Embedding& emb, const Instance& inst, const OptimizeOptions& opts) {
  const auto& top = emb.topology();
  const double base = emb.total_cost();
  std::optional<OptimizeResult> best;

  for (int v = top.sink() + 1; v < top.vertex_count(); ++v) {
    const auto& kids = top.children_of(v);
    const int m = static_cast<int>(kids.size());
    if (m + 1 < 4) continue;
    if (m > kSubsetCap)
      throw std::invalid_argument("split_improvement_scan: degree beyond cap");

    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
      const int size = std::popcount(mask);
      if (size < 2 || size > m - 1) continue;

      const int fresh = top.vertex_count();
      std::vector<int> parent(static_cast<size_t>(fresh + 1));
      for (int u = 0; u < fresh; ++u)
        parent[static_cast<size_t>(u)] = top.parent_of(u);
      for (int i = 0; i < m; ++i)
        if (mask & (1u << i))
          parent[static_cast<size_t>(kids[static_cast<size_t>(i)])] = fresh;
      parent[static_cast<size_t>(fresh)] = v;

      Topology split(top.n_sources(), top.n_steiner() + 1, std::move(parent));
      OptimizeResult res = optimize_embedding(inst, split, opts);
      const double cost = res.embedding.total_cost();
      if (cost < base - 1e-9 * base &&
          (!best || cost < best->embedding.total_cost()))
        best = std::move(res);
    }
  }
  return best;
}

namespace {

std::vector<double> condition_grid(const Instance& inst) {
  std::vector<double> grid;
  const double total = inst.total_tonnage();
  for (int i = 0; i <= 64; ++i)
    grid.push_back(total * static_cast<double>(i) / 64.0);
  const int n = inst.n_sources();
  if (n <= 16) {
    const auto t = inst.tonnages();
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      double sum = 0;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) sum += t[static_cast<size_t>(i)];
      grid.push_back(sum);
    }
  }
  return grid;
}

}  // namespace

SolveResult solve_mga(const Instance& inst, const OptimizeOptions& opts,
                      int enumeration_cap) {
  opts.validate();
  std::vector<std::string> warnings;

  const auto report = inst.weight().check_conditions(condition_grid(inst));
  if (!report.concave)
    warnings.push_back(
        "weight not concave: arborescence may not be globally optimal");
  if (!report.positive || !report.nondecreasing || !report.triangular)
    warnings.push_back(
        "weight violates a basic condition (positivity, monotonicity or "
        "triangularity) on the sampled grid");
  if (inst.has_duplicate_terminals())
    warnings.push_back("instance has coincident terminal points");

  const auto topologies =
      enumerate_full_topologies(inst.n_sources(), enumeration_cap);

  std::optional<Embedding> best;
  std::string best_encoding;
  bool best_converged = false;
  for (const auto& top : topologies) {
    OptimizeResult res = optimize_embedding(inst, top, opts);
    Embedding contracted =
        contract_degenerate_edges(res.embedding, inst, opts.contract_tol);
    const double cost = contracted.total_cost();
    const std::string enc = contracted.topology().encoding();
    const double best_cost =
        best ? best->total_cost() : std::numeric_limits<double>::infinity();
    const bool tie =
        best && std::abs(cost - best_cost) <= 1e-12 * std::max(1.0, best_cost);
    if (!best || (!tie && cost < best_cost) || (tie && enc < best_encoding)) {
      best = std::move(contracted);
      best_encoding = enc;
      best_converged = res.converged;
    }
  }

  Embedding current = std::move(*best);
  while (auto improved = split_improvement_scan(current, inst, opts)) {
    best_converged = best_converged && improved->converged;
    current =
        contract_degenerate_edges(improved->embedding, inst, opts.contract_tol);
  }

  if (!best_converged)
    warnings.push_back("solver hit the iteration budget; result may be inexact");

  Certificate cert = certify_embedding(current, inst);
  return {std::move(current), std::move(cert), best_converged,
          static_cast<int>(topologies.size()), std::move(warnings)};
}

}  // namespace gilbert
