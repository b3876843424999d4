#include "gilbert/certify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gilbert {

StarData::StarData(Vec center_, std::vector<std::pair<Vec, double>> incoming_,
                   std::pair<Vec, double> outgoing_, NormSpace space_,
                   WeightFunction weight_)
    : center(std::move(center_)),
      incoming(std::move(incoming_)),
      outgoing(std::move(outgoing_)),
      space(space_),
      weight(std::move(weight_)) {
  if (incoming.empty())
    throw std::invalid_argument("StarData: at least one incoming neighbor");
  double sum = 0;
  for (const auto& [p, t] : incoming) {
    if (!(t > 0)) throw std::invalid_argument("StarData: inflows must be > 0");
    sum += t;
  }
  if (std::abs(outgoing.second - sum) > 1e-9 * std::max(1.0, sum))
    throw std::invalid_argument(
        "StarData: outflow does not match the sum of inflows");
}

double balancing_residual(const StarData& s) {
  Vec r = Vec::Zero(s.space.dim());
  for (const auto& [p, t] : s.incoming)
    r += s.weight(t) * s.space.dual_vector(p - s.center);
  r += s.weight(s.outgoing.second) *
       s.space.dual_vector(s.outgoing.first - s.center);
  return s.space.dual_norm(r);
}

std::vector<std::pair<std::uint32_t, double>> collapsing_margins(
    const StarData& s) {
  const int m = static_cast<int>(s.incoming.size());
  if (m > kSubsetCap)
    throw std::invalid_argument("collapsing_margins: degree beyond subset cap");

  std::vector<Vec> weighted_duals;
  weighted_duals.reserve(static_cast<size_t>(m));
  for (const auto& [p, t] : s.incoming)
    weighted_duals.push_back(s.weight(t) * s.space.dual_vector(p - s.center));

  std::vector<std::pair<std::uint32_t, double>> out;
  out.reserve((1u << m) - 1);
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    Vec sum = Vec::Zero(s.space.dim());
    double tsum = 0;
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) {
        sum += weighted_duals[static_cast<size_t>(i)];
        tsum += s.incoming[static_cast<size_t>(i)].second;
      }
    out.emplace_back(mask, s.weight(tsum) - s.space.dual_norm(sum));
  }
  return out;
}

namespace {

StarData star_at(const Embedding& emb, const Instance& inst, int v) {
  const auto& top = emb.topology();
  std::vector<std::pair<Vec, double>> incoming;
  for (int c : top.children_of(v))
    incoming.emplace_back(emb.position(c), emb.flow_out_of(c));
  const int parent = top.parent_of(v);
  return StarData(emb.position(v), std::move(incoming),
                  {emb.position(parent), emb.flow_out_of(v)}, inst.space(),
                  inst.weight());
}

// Dual-vector balance at a pass-through terminal; no optimality meaning,
// reported for information only.
double terminal_stationarity(const Embedding& emb, const Instance& inst,
                             int v) {
  const auto& top = emb.topology();
  Vec r = Vec::Zero(inst.space().dim());
  for (int c : top.children_of(v))
    r += inst.weight()(emb.flow_out_of(c)) *
         inst.space().dual_vector(emb.position(c) - emb.position(v));
  if (!top.is_sink(v))
    r += inst.weight()(emb.flow_out_of(v)) *
         inst.space().dual_vector(emb.position(top.parent_of(v)) -
                                  emb.position(v));
  return inst.space().dual_norm(r);
}

}  // namespace

Certificate certify_embedding(const Embedding& emb, const Instance& inst,
                              double tol) {
  const auto& top = emb.topology();
  const double floor =
      NormSpace::kDualVectorFloor * std::max(1.0, inst.diameter());
  for (const auto& e : emb.edges())
    if (e.length <= floor)
      throw std::invalid_argument(
          "certify_embedding: zero-length edge " + std::to_string(e.child) +
          " -> " + std::to_string(e.parent) + "; contract it first");

  Certificate cert;
  cert.tol = tol;
  cert.verdict = CertVerdict::Certified;

  for (int v = top.sink() + 1; v < top.vertex_count(); ++v) {
    const StarData star = star_at(emb, inst, v);
    const double scale = inst.weight()(star.outgoing.second);
    const double residual = balancing_residual(star);
    const auto margins = collapsing_margins(star);

    StarCertificate sc;
    sc.vertex = v;
    sc.balancing_residual = residual;
    sc.min_collapsing_slack = margins.front().second;
    sc.worst_subset = margins.front().first;
    for (const auto& [mask, slack] : margins)
      if (slack < sc.min_collapsing_slack) {
        sc.min_collapsing_slack = slack;
        sc.worst_subset = mask;
      }
    sc.balanced = residual <= tol * scale;
    sc.no_profitable_split = sc.min_collapsing_slack >= -tol * scale;

    if (!sc.balanced && cert.verdict == CertVerdict::Certified) {
      cert.verdict = CertVerdict::Violated;
      cert.detail = "balancing violated at vertex " + std::to_string(v);
    } else if (!sc.no_profitable_split &&
               cert.verdict == CertVerdict::Certified) {
      cert.verdict = CertVerdict::Violated;
      cert.detail = "collapsing violated at vertex " + std::to_string(v) +
                    " (subset mask " + std::to_string(sc.worst_subset) + ")";
    }
    cert.stars.push_back(sc);
  }

  for (int v = 0; v <= top.sink(); ++v)
    if (top.degree(v) > 1)
      cert.terminal_notes.push_back({v, terminal_stationarity(emb, inst, v)});

  if (cert.verdict == CertVerdict::Certified) cert.detail = "certified";
  if (top.n_steiner() >= 2)
    cert.notes.push_back(
        "multiple Steiner vertices: conditions are checked per vertex; "
        "optimality for the fixed topology follows from convexity");
  if (!inst.weight().concave_family())
    cert.notes.push_back(
        "weight not concave: arborescence may not be globally optimal");
  return cert;
}

Corollary3Verdict corollary3_check(const std::vector<Vec>& vectors,
                                   const std::vector<double>& tonnages,
                                   const WeightFunction& w, double tol) {
  const int m = static_cast<int>(vectors.size());
  if (m < 2 || tonnages.size() != vectors.size())
    throw std::invalid_argument(
        "corollary3_check: need m >= 2 vectors with matching tonnages");
  if (m > kSubsetCap)
    throw std::invalid_argument("corollary3_check: degree beyond subset cap");

  for (int i = 0; i < m; ++i) {
    const double gap = std::abs(vectors[static_cast<size_t>(i)].norm() -
                                w(tonnages[static_cast<size_t>(i)]));
    if (gap > tol)
      return {false, 1,
              "||v_" + std::to_string(i + 1) + "|| differs from w(t_" +
                  std::to_string(i + 1) + ") by " + std::to_string(gap)};
  }

  Vec total = Vec::Zero(vectors.front().size());
  double tsum = 0;
  for (int i = 0; i < m; ++i) {
    total += vectors[static_cast<size_t>(i)];
    tsum += tonnages[static_cast<size_t>(i)];
  }
  const double gap8 = std::abs(total.norm() - w(tsum));
  if (gap8 > tol)
    return {false, 2,
            "||sum v_i|| differs from w(sum t_i) by " + std::to_string(gap8)};

  for (std::uint32_t mask = 1; mask + 1 < (1u << m); ++mask) {
    const int size = std::popcount(mask);
    if (size < 2 || size > m - 2) continue;
    Vec sum = Vec::Zero(vectors.front().size());
    double ts = 0;
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) {
        sum += vectors[static_cast<size_t>(i)];
        ts += tonnages[static_cast<size_t>(i)];
      }
    if (sum.norm() > w(ts) + tol)
      return {false, 3,
              "subset mask " + std::to_string(mask) +
                  " exceeds w of its tonnage sum"};
  }
  return {true, 0, "pass"};
}

}  // namespace gilbert
