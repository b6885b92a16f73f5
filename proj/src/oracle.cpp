#include <groom/oracle.hpp>

#include <algorithm>
#include <array>
#include <climits>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace groom {

namespace {

// One growing block. Blocks may pass through disconnected intermediate states
// (a lex-ordered prefix of a connected block need not be connected); `comps`
// tracks how many pieces remain to be joined.
struct BlockState {
  std::array<Edge, 4> es{};
  std::array<Vertex, 5> vs{};
  int ne = 0, nv = 0, vint = 0, comps = 0;

  int vpos(Vertex x) const {
    for (int i = 0; i < nv; ++i)
      if (vs[i] == x) return i;
    return -1;
  }
  bool has(Vertex x) const { return vpos(x) >= 0; }

  int recount_comps() const {
    std::array<int, 5> par{};
    for (int i = 0; i < nv; ++i) par[static_cast<size_t>(i)] = i;
    auto find = [&](int i) {
      while (par[static_cast<size_t>(i)] != i) i = par[static_cast<size_t>(i)];
      return i;
    };
    for (int e = 0; e < ne; ++e) {
      const int a = find(vpos(es[static_cast<size_t>(e)].a));
      const int b = find(vpos(es[static_cast<size_t>(e)].b));
      if (a != b) par[static_cast<size_t>(a)] = b;
    }
    int c = 0;
    for (int i = 0; i < nv; ++i)
      if (find(i) == i) ++c;
    return c;
  }
};

struct Searcher {
  int n = 0, v = 0, w = 0, cprime = 1, m = 0;
  bool ratio1 = false;  // restrict to triangle/four-cycle/kite completions
  long long max_nodes = 0;
  long long nodes = 0;
  bool limit_hit = false;

  // Internal labels put W first ({0..w-1}) and V after: the W-incident edges
  // carry the tight constraints, and branching meets them early this way.
  std::vector<Edge> edges;            // lex order; assignment is a prefix
  std::vector<std::vector<int>> eidx; // edge -> lex index
  std::vector<BlockState> blocks;
  std::vector<int> assign;            // edge index -> block id
  std::vector<int> rdeg;              // unassigned edges at vertex
  std::vector<int> rdegv;             // unassigned V-internal edges at vertex
  long long cost = 0;
  int tri_residue = 0;                // delta mod 4 forced by 3d + 4k = m

  long long best_cost = LLONG_MAX;
  long long best_tri = LLONG_MAX;
  std::vector<int> best_assign;

  explicit Searcher(const ProblemInstance& inst) {
    n = inst.n;
    v = inst.v;
    w = inst.w();
    cprime = inst.cprime;
    eidx.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), -1));
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        eidx[static_cast<size_t>(a)][static_cast<size_t>(b)] =
            static_cast<int>(edges.size());
        eidx[static_cast<size_t>(b)][static_cast<size_t>(a)] =
            static_cast<int>(edges.size());
        edges.emplace_back(a, b);
      }
    m = static_cast<int>(edges.size());
    assign.assign(static_cast<size_t>(m), -1);
    rdeg.assign(static_cast<size_t>(n), n - 1);
    rdegv.assign(static_cast<size_t>(n), 0);
    for (int x = w; x < n; ++x) rdegv[static_cast<size_t>(x)] = v - 1;
    tri_residue = static_cast<int>((3LL * m) % 4);
  }

  Vertex original(Vertex x) const { return x < w ? v + x : x - w; }
  bool is_vint(const Edge& e) const { return e.a >= w; }  // e.a < e.b

  // A block is settled once no unassigned edge can still touch it.
  bool block_dead(const BlockState& b, int k) const {
    long long touch = 0;
    for (int i = 0; i < b.nv; ++i) touch += rdeg[static_cast<size_t>(b.vs[i])];
    if (touch > 0) {
      if (ratio1 && b.ne == 3 && b.nv == 4) {
        // A three-edge tree survives only if a closing chord is still free.
        for (int i = 0; i < 4; ++i)
          for (int j = i + 1; j < 4; ++j) {
            const int id = eidx[static_cast<size_t>(b.vs[i])][static_cast<size_t>(b.vs[j])];
            if (id >= k && assign[static_cast<size_t>(id)] < 0) return false;
          }
        return true;
      }
      return false;
    }
    if (b.comps > 1) return true;
    if (ratio1 && !((b.ne == 3 && b.nv == 3) || (b.ne == 4 && b.nv == 4)))
      return true;
    return false;
  }

  bool prune(int k) {
    const long long remaining = m - k;
    long long open_cap = 0;
    long long locked_tri = 0;
    for (const BlockState& b : blocks) {
      if (block_dead(b, k)) return true;
      open_cap += 4 - b.ne;
      if (ratio1 && b.ne == 3 && b.nv == 3) {
        long long touch = 0;
        for (int i = 0; i < 3; ++i) touch += rdeg[static_cast<size_t>(b.vs[i])];
        if (touch == 0) ++locked_tri;
      }
    }
    if (ratio1) {
      long long lb = locked_tri;
      lb += ((tri_residue - locked_tri) % 4 + 4) % 4;
      if (lb >= best_tri) return true;
      // Every open block still owes a minimum number of closing edges, and
      // each triangle avoided beyond the round target owes one more.
      long long minneed = 0, mintri = 0;
      for (const BlockState& b : blocks) {
        if (b.ne == 4) continue;
        if (b.ne == 3) {
          if (b.nv == 3)
            ++mintri;  // cheapest fate: stay a triangle
          else
            minneed += 1;  // tree or two pieces: one closing chord
        } else if (b.ne == 2) {
          minneed += 1 + (b.nv == 4 ? 1 : 0);
          if (b.nv == 3) ++mintri;
        } else {
          minneed += 2;
          ++mintri;
        }
      }
      minneed += std::max<long long>(0, mintri - (best_tri - 1));
      if (minneed > remaining) return true;
      // A four-edge block confined to V would carry four V-internal edges,
      // over the cap of three, so every four-edge block owns at least one
      // edge that touches W.  W-touching edges sort first under the W-first
      // labels, so the count still unassigned is closed-form.
      const long long we_total =
          static_cast<long long>(w) * (n - w) +
          static_cast<long long>(w) * (w - 1) / 2;
      const long long rem_w = std::max<long long>(0, we_total - k);
      const long long f_min = (m - 3 * (best_tri - 1) + 3) / 4;
      long long sat = 0;
      for (const BlockState& b : blocks) {
        if (b.ne == 4) {
          ++sat;
          continue;
        }
        for (int i = 0; i < b.nv; ++i)
          if (b.vs[i] < w) {
            ++sat;
            break;
          }
      }
      return f_min - sat > rem_w;
    }
    long long future = std::max<long long>(0, remaining - open_cap);
    // Per-vertex: every future block at x feeds it at most four edges, and at
    // most cprime V-internal ones.
    std::vector<int> slots(static_cast<size_t>(n), 0);
    std::vector<int> vslots(static_cast<size_t>(n), 0);
    for (const BlockState& b : blocks)
      for (int i = 0; i < b.nv; ++i) {
        slots[static_cast<size_t>(b.vs[i])] += 4 - b.ne;
        vslots[static_cast<size_t>(b.vs[i])] +=
            std::min(4 - b.ne, cprime - b.vint);
      }
    long long per_vertex = 0;
    for (int x = 0; x < n; ++x) {
      const long long need = std::max(0, rdeg[static_cast<size_t>(x)] -
                                             slots[static_cast<size_t>(x)]);
      long long appear = (need + 3) / 4;
      if (x >= w) {
        const long long needv = std::max(0, rdegv[static_cast<size_t>(x)] -
                                                vslots[static_cast<size_t>(x)]);
        appear = std::max(appear, (needv + cprime - 1) / cprime);
      }
      per_vertex += appear;
    }
    future = std::max(future, per_vertex);
    return cost + future >= best_cost;
  }

  void record() {
    for (const BlockState& b : blocks)
      if (b.comps != 1) return;
    if (ratio1) {
      long long tri = 0;
      for (const BlockState& b : blocks) {
        if (!((b.ne == 3 && b.nv == 3) || (b.ne == 4 && b.nv == 4))) return;
        if (b.ne == 3) ++tri;
      }
      if (tri < best_tri) {
        best_tri = tri;
        best_cost = cost;
        best_assign = assign;
      }
      return;
    }
    if (cost < best_cost) {
      best_cost = cost;
      best_assign = assign;
    }
  }

  void dfs(int k) {
    if (limit_hit) return;
    if (++nodes > max_nodes) {
      limit_hit = true;
      return;
    }
    if (k == m) {
      record();
      return;
    }
    if (prune(k)) return;

    const Edge e = edges[static_cast<size_t>(k)];
    const int vint = is_vint(e) ? 1 : 0;
    rdeg[static_cast<size_t>(e.a)]--;
    rdeg[static_cast<size_t>(e.b)]--;
    if (vint) {
      rdegv[static_cast<size_t>(e.a)]--;
      rdegv[static_cast<size_t>(e.b)]--;
    }

    // Existing blocks, cheapest vertex additions first; the ratio-one search
    // also defers triangle closings (triangles are what it minimizes). Then a
    // fresh block. 40 slots cover every block a K_9 partition can hold.
    std::array<std::array<int, 40>, 4> bucket{};
    std::array<std::array<int, 40>, 4> bdelta{};
    std::array<int, 4> cnt{};
    for (int bi = 0; bi < static_cast<int>(blocks.size()); ++bi) {
      const BlockState& b = blocks[static_cast<size_t>(bi)];
      if (b.ne == 4) continue;
      if (b.vint + vint > cprime) continue;
      const bool ha = b.has(e.a), hb = b.has(e.b);
      const int delta = (ha ? 0 : 1) + (hb ? 0 : 1);
      if (ratio1 && b.nv + delta > 4) continue;
      // Still joinable within the four-edge budget?
      int comps_after = b.comps;
      if (ha && hb)
        comps_after = -1;  // recount below: the edge may merge two pieces
      else if (!ha && !hb)
        comps_after = b.comps + 1;
      if (comps_after >= 0 && comps_after - 1 > 4 - (b.ne + 1)) continue;
      int slot = delta;
      if (ratio1 && delta == 0 && b.ne == 2 && b.nv == 3) slot = 3;
      bucket[static_cast<size_t>(slot)][static_cast<size_t>(
          cnt[static_cast<size_t>(slot)])] = bi;
      bdelta[static_cast<size_t>(slot)][static_cast<size_t>(
          cnt[static_cast<size_t>(slot)]++)] = delta;
    }
    for (int sl = 0; sl < 4 && !limit_hit; ++sl)
      for (int i = 0; i < cnt[static_cast<size_t>(sl)] && !limit_hit; ++i) {
        const int bi = bucket[static_cast<size_t>(sl)][static_cast<size_t>(i)];
        const int d = bdelta[static_cast<size_t>(sl)][static_cast<size_t>(i)];
        const BlockState saved = blocks[static_cast<size_t>(bi)];
        {
          // Scoped: recursion below may grow `blocks` and move its storage.
          BlockState& b = blocks[static_cast<size_t>(bi)];
          b.es[static_cast<size_t>(b.ne++)] = e;
          if (!saved.has(e.a)) b.vs[static_cast<size_t>(b.nv++)] = e.a;
          if (!saved.has(e.b)) b.vs[static_cast<size_t>(b.nv++)] = e.b;
          b.vint += vint;
          b.comps = b.recount_comps();
          if (b.comps - 1 > 4 - b.ne ||
              (ratio1 && b.ne == 4 && !(b.nv == 4 && b.comps == 1))) {
            b = saved;
            continue;
          }
        }
        assign[static_cast<size_t>(k)] = bi;
        cost += d;
        dfs(k + 1);
        cost -= d;
        assign[static_cast<size_t>(k)] = -1;
        blocks[static_cast<size_t>(bi)] = saved;
      }
    if (!limit_hit) {
      BlockState nb;
      nb.es[0] = e;
      nb.vs[0] = e.a;
      nb.vs[1] = e.b;
      nb.ne = 1;
      nb.nv = 2;
      nb.vint = vint;
      nb.comps = 1;
      blocks.push_back(nb);
      assign[static_cast<size_t>(k)] = static_cast<int>(blocks.size()) - 1;
      cost += 2;
      dfs(k + 1);
      cost -= 2;
      assign[static_cast<size_t>(k)] = -1;
      blocks.pop_back();
    }

    rdeg[static_cast<size_t>(e.a)]++;
    rdeg[static_cast<size_t>(e.b)]++;
    if (vint) {
      rdegv[static_cast<size_t>(e.a)]++;
      rdegv[static_cast<size_t>(e.b)]++;
    }
  }

  Decomposition witness(const ProblemInstance& inst) const {
    int nb = 0;
    for (int id : best_assign) nb = std::max(nb, id + 1);
    std::vector<std::vector<Edge>> groups(static_cast<size_t>(nb));
    for (int k = 0; k < m; ++k) {
      const Edge& e = edges[static_cast<size_t>(k)];
      groups[static_cast<size_t>(best_assign[static_cast<size_t>(k)])]
          .emplace_back(original(e.a), original(e.b));
    }
    std::vector<Block> bl;
    bl.reserve(groups.size());
    for (auto& g : groups) bl.emplace_back(std::move(g));
    return make_decomposition(inst.n, inst.v, inst.cprime, bl);
  }
};

}  // namespace

OracleBudget oracle_budget_from_env() {
  OracleBudget b;
  if (const char* s = std::getenv("GROOM_ORACLE_NODES")) {
    const long long val = std::atoll(s);
    if (val > 0) b.max_nodes = val;
  }
  return b;
}

OracleResult solve_min_cost(const ProblemInstance& inst, const OracleBudget& budget) {
  if (!inst.valid()) throw std::invalid_argument("oracle: invalid instance");
  if (inst.n > budget.max_n)
    throw std::invalid_argument("oracle: n exceeds the exact-search maximum (" +
                                std::to_string(budget.max_n) + ")");
  Searcher s(inst);
  s.max_nodes = budget.max_nodes;
  s.dfs(0);
  if (s.best_assign.empty() && s.m > 0)
    throw std::runtime_error("oracle: budget exhausted before any solution");
  OracleResult r;
  r.optimum_cost = s.m == 0 ? 0 : s.best_cost;
  r.witness = s.m == 0 ? make_decomposition(inst.n, inst.v, inst.cprime, {})
                       : s.witness(inst);
  r.nodes_explored = s.nodes;
  r.time_limit_hit = s.limit_hit;
  return r;
}

OracleResult solve_min_triangles(const ProblemInstance& inst, long long fixed_cost,
                                 const OracleBudget& budget) {
  if (!inst.valid() || inst.cprime != 3)
    throw std::invalid_argument("oracle: triangle search needs a valid cprime=3 instance");
  if (inst.n > budget.max_n + 1)
    throw std::invalid_argument("oracle: n exceeds the exact-search maximum (" +
                                std::to_string(budget.max_n + 1) + ")");
  const long long expect = static_cast<long long>(inst.n) * (inst.n - 1) / 2;
  if (fixed_cost != expect)
    throw std::invalid_argument(
        "oracle: ratio-one search pins the cost to binom(n,2) = " +
        std::to_string(expect));
  // 3*delta + 4*(four-edge blocks) = binom(n,2) forces delta mod 4, so search
  // in rising target rounds within that residue class: each round either
  // finds a decomposition with at most `target` triangles (then it is exactly
  // `target`, the smallest admissible value) or exhaustively rules the class
  // value out. Capping best_tri up front is what lets locked triangles prune.
  const int residue = static_cast<int>((3 * expect) % 4);
  long long nodes_total = 0;
  for (long long target = residue; 3 * target <= expect; target += 4) {
    Searcher s(inst);
    s.ratio1 = true;
    s.max_nodes = budget.max_nodes - nodes_total;
    s.best_tri = target + 1;
    s.dfs(0);
    nodes_total += s.nodes;
    if (!s.best_assign.empty()) {
      OracleResult r;
      r.optimum_cost = s.best_cost;
      r.witness = s.witness(inst);
      r.optimum_triangles_at_cost = s.best_tri;
      r.nodes_explored = nodes_total;
      r.time_limit_hit = s.limit_hit;
      return r;
    }
    if (s.limit_hit)
      throw std::runtime_error("oracle: budget exhausted before any solution");
  }
  throw std::runtime_error("oracle: no ratio-one decomposition exists");
}

}  // namespace groom
