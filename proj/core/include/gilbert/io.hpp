#pragma once

#include <string>
#include <vector>

#include "gilbert/certify.hpp"
#include "gilbert/embedding.hpp"
#include "gilbert/instance.hpp"

namespace gilbert {

/// Instance files are JSON:
///   {"dim": int,
///    "norm": {"kind": "euclidean"} | {"kind": "p", "p": number},
///    "weight": {"kind": "constant", "d": ...} | {"kind": "affine", "d", "h"}
///            | {"kind": "power", "d", "h", "alpha"}
///            | {"kind": "rounded_affine", "a", "b", "c"},
///    "sources": [{"point": [...], "tonnage": number}, ...],
///    "sink": [...]}
/// Unknown keys are rejected; errors name the offending key. Numbers are
/// written with 17 significant digits so parse(serialize(x)) is bit-exact.
Instance parse_instance_json(const std::string& text);
Instance load_instance(const std::string& path);
std::string instance_to_json(const Instance& inst);
void save_instance(const Instance& inst, const std::string& path);

struct SolutionVertex {
  std::string id;    // p1..pn, q, s1..sk
  std::string kind;  // "source" | "sink" | "steiner"
  Vec point;
};

struct SolutionEdge {
  std::string from;
  std::string to;
  double flow;
  double weight;
  double length;
};

struct SolutionStar {
  std::string vertex;
  double balancing_residual;
  double min_collapsing_slack;
};

struct Solution {
  double cost = 0;
  bool converged = false;
  std::vector<SolutionVertex> vertices;
  std::vector<SolutionEdge> edges;
  std::string verdict;
  std::vector<SolutionStar> stars;
};

Solution make_solution(const Embedding& emb, const Certificate& cert,
                       bool converged);
std::string solution_to_json(const Solution& sol);
Solution parse_solution_json(const std::string& text);
Solution load_solution(const std::string& path);
void save_solution(const Solution& sol, const std::string& path);

/// Rebuilds the embedding described by a solution file and validates it
/// against the instance: terminal coordinates, tree structure, flows,
/// weights and lengths must all match. Throws naming the first mismatch.
Embedding reconstruct_embedding(const Solution& sol, const Instance& inst);

}  // namespace gilbert
