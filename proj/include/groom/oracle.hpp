#pragma once

#include <optional>

#include "groom/model.hpp"

namespace groom {

// Exact-search limits. `max_nodes` caps branch-and-bound nodes; `max_n` caps
// the ring size accepted at all (exhaustive search beyond it is dishonest on
// desk hardware). The environment variable GROOM_ORACLE_NODES overrides the
// node cap for a long run.
struct OracleBudget {
  long long max_nodes = 20'000'000;
  int max_n = 8;
};

OracleBudget oracle_budget_from_env();

struct OracleResult {
  long long optimum_cost = 0;
  Decomposition witness;  // re-verifies through `verify` independently
  std::optional<long long> optimum_triangles_at_cost;
  long long nodes_explored = 0;
  bool time_limit_hit = false;  // budget ran out: values are best-found only
};

// Minimum drop cost over all partitions of E(K_n) into connected blocks of at
// most four edges, each block carrying at most cprime V-internal edges.
// Every block rides its own wavelength: merging blocks into shared
// wavelengths never changes drop cost, so the optimum is unaffected.
// Throws std::invalid_argument for an invalid instance or n > budget.max_n.
OracleResult solve_min_cost(const ProblemInstance& inst,
                            const OracleBudget& budget = oracle_budget_from_env());

// Minimum triangle count among drop-cost-optimal partitions for cprime = 3:
// every block must be a triangle, four-cycle, or kite, which pins the cost to
// fixed_cost = binom(n,2). Throws std::invalid_argument when fixed_cost
// disagrees, cprime != 3, or n > budget.max_n (one extra ring size is allowed
// here: the ratio-one restriction keeps n = 9 tractable); throws
// std::runtime_error when no such partition exists at all.
OracleResult solve_min_triangles(const ProblemInstance& inst, long long fixed_cost,
                                 const OracleBudget& budget = oracle_budget_from_env());

}  // namespace groom
