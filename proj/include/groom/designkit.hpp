#pragma once
// Combinatorial-design primitives consumed by the builders: 1-factorizations
// (plain, Hamilton-tailed, complement-of-forbidden-graph), near-1-factorizations
// (plain, prescribed-factor, cycle-removed), triple systems with prescribed
// leaves, group divisible designs, headsets, cocktail-party partitions, P3
// partitions, factor pairings, a seeded ratio-1 shape decomposer, and
// wavelength-minimal groomings of K_n.
#include <array>
#include <optional>
#include <vector>

#include "groom/model.hpp"

namespace groom {

struct FactorSet {
  int host_order = 0;
  std::vector<std::vector<Edge>> factors;
  std::vector<Vertex> missing;      // per-factor missing vertex, -1 for 1-factors
  std::vector<Edge> removed;        // edges excluded from the host K_m
  void check() const;               // throws on invariant breach
};

// Round-robin 1-factorization of K_m (m even): m-1 factors of m/2 edges.
FactorSet one_factorization(int m);

// 1-factorization of K_m (m even) whose last two factors are
// {{2h,2h+1}} and {{2h+1,2h+2 mod m}} (union = Hamilton cycle).
FactorSet one_factorization_hamilton_tail(int m, unsigned seed = 0);

// 1-factorization of K_v minus `removed` (disjoint K4s spanning v, or K4s plus
// one K33 for v = 2 mod 4, v >= 10). Factor count v-4.
FactorSet one_factorization_avoiding(int v, const std::vector<Edge>& removed,
                                     unsigned seed = 0);

// Standard spanning forbidden graph for one_factorization_avoiding.
// v = 0 mod 4: v/4 K4s on consecutive 4-sets. v = 2 mod 4 (v >= 10):
// (v-6)/4 K4s then one K33 with parts {v-6,v-5,v-4},{v-3,v-2,v-1}.
std::vector<Edge> forbidden_spanning_graph(int v);

// Rotational near-1-factorization of K_m (m odd): factor i misses vertex i.
FactorSet near_one_factorization(int m);

// As above, relabeled so that the factor missing M's own missing vertex
// equals the prescribed matching M ((m-1)/2 disjoint edges on m points).
FactorSet near_one_factorization_with_factor(int m, const std::vector<Edge>& M);

// Near-1-factorization of K_v minus the t-cycle (0,1,...,t-1), v = 2t+1,
// t >= 3. Exactly 2t factors of t edges; factors 2j and 2j+1 miss vertex j.
FactorSet near_one_factorization_minus_cycle(int v, int t, unsigned seed = 0);

struct TripleSystem {
  int points = 0;
  std::vector<std::array<Vertex, 3>> triples;
  std::vector<Edge> leave;
  void check() const;
};

// Steiner triple system, v = 1,3 (mod 6). Bose construction for 3 mod 6,
// certified hill-climbing for 1 mod 6.
TripleSystem steiner_triple_system(int v, unsigned seed = 0);

struct LeaveSpec {
  enum Kind { None, FourCycle, Cycle, Graph } kind = None;
  int length = 0;            // Cycle only
  std::vector<Edge> edges;   // Graph only: exact labeled leave
  static LeaveSpec none() { return {}; }
  static LeaveSpec four_cycle() { return {FourCycle, 0, {}}; }
  static LeaveSpec cycle(int len) { return {Cycle, len, {}}; }
  static LeaveSpec graph(std::vector<Edge> es) { return {Graph, 0, std::move(es)}; }
};

// Maximal partial triple system on v points whose leave is exactly the request
// (labeled form for Cycle — the cycle (0,1,...,len-1) — and Graph).
TripleSystem pts_with_leave(int v, const LeaveSpec& leave, unsigned seed = 0);

struct GroupDivisibleDesign {
  int group_size = 0, group_count = 0;
  std::vector<std::vector<Vertex>> groups;   // consecutive point runs
  std::vector<std::array<Vertex, 3>> triples;
  void check() const;
};

// 3-GDD of type group_size^group_count (6^t with t >= 3, 2^u with u = 0,1 mod 3).
GroupDivisibleDesign gdd3(int group_size, int group_count, unsigned seed = 0);

struct Headset {
  std::vector<Vertex> heads;       // heads[k] in triples[k]
  std::vector<int> occurrences;    // per point
};

// Equitable head choice: point i occurs floor(r_i/3) or ceil(r_i/3) times.
Headset headset(const TripleSystem& ts);

// Partition of K_w minus the matching {{2h,2h+1}} into ratio-1 blocks:
// 4-cycles (w even); kites+4-cycles (w=1 mod 4); plus exactly two triangles
// (w=3 mod 4). Points labeled 0..w-1.
std::vector<Block> cocktail_partition(int w);

// Partition of a connected edge set into P3s plus at most one P2.
std::vector<Block> p3_partition(const std::vector<Edge>& edges);

// Adjacency-respecting bijection f[i] -> g[sigma[i]] (shared vertex), built by
// alternating orientation of the even cycles/path of f u g.
std::vector<int> factor_pairing(const std::vector<Edge>& f, const std::vector<Edge>& g);

// Seeded backtracking decomposition of an edge set into kites, 4-cycles, and
// exactly `triangles` triangles. Vertices < v_count are first-period; no block
// may carry more than vcap edges inside them. Returns nullopt on failure.
struct ShapeTarget {
  int triangles = 0;
  int v_count = 0;
  int vcap = 4;
  long long node_budget = 2'000'000;
};
std::optional<std::vector<Block>> shape_decompose(int points, const std::vector<Edge>& edges,
                                                  const ShapeTarget& target, unsigned seed = 0);

// Wavelength-minimal cost-optimal grooming of K_n, n >= 4, as loose blocks on
// 0..n-1. triangle_target: -1 = canonical count; 4 allowed for n = 0,1 mod 8
// (n >= 8). vertex_in_triangle: relabel so this vertex lies in some triangle
// (a 4-triangle variant must be requested when the canonical count is 0).
struct MonOptions {
  int triangle_target = -1;
  Vertex vertex_in_triangle = -1;
  unsigned seed = 0;
};
std::vector<Block> build_mon_n4(int n, const MonOptions& opts = {});

// Apply a vertex relabeling to blocks (helper shared by builders).
std::vector<Block> relabel_blocks(const std::vector<Block>& blocks,
                                  const std::vector<Vertex>& perm);

}  // namespace groom
