#include "groom/designkit.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace groom {

namespace {

[[noreturn]] void fail(const std::string& who, const std::string& why) {
  throw std::runtime_error(who + ": " + why);
}

std::vector<Edge> complete_graph_edges(int m) {
  std::vector<Edge> es;
  es.reserve((size_t)m * (m - 1) / 2);
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) es.emplace_back(a, b);
  return es;
}

// ---- randomized Kempe-chain edge coloring of a regular (multi)graph ----
// Colors every edge with `ncolors` colors so that classes are matchings.
// Endpoints are given per edge (parallel edges allowed). Returns per-edge
// colors or empty on failure for this seed.
std::vector<int> kempe_color(int n, const std::vector<std::pair<int, int>>& edges,
                             int ncolors, std::mt19937& rng) {
  const int m = (int)edges.size();
  std::vector<int> color(m, -1);
  // at[v][c] = edge id colored c at v, or -1
  std::vector<std::vector<int>> at(n, std::vector<int>(ncolors, -1));
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  auto free_colors = [&](int v) {
    std::vector<int> fs;
    for (int c = 0; c < ncolors; ++c)
      if (at[v][c] < 0) fs.push_back(c);
    return fs;
  };

  for (int e : order) {
    bool done = false;
    for (int attempt = 0; attempt < 200 && !done; ++attempt) {
      int u = edges[e].first, v = edges[e].second;
      std::vector<int> fu = free_colors(u), fv = free_colors(v);
      if (fu.empty() || fv.empty()) break;  // impossible (shouldn't happen when regular)
      // common free color?
      std::vector<char> infu(ncolors, 0);
      for (int c : fu) infu[c] = 1;
      std::vector<int> common;
      for (int c : fv)
        if (infu[c]) common.push_back(c);
      if (!common.empty()) {
        int c = common[rng() % common.size()];
        color[e] = c;
        at[u][c] = at[v][c] = e;
        done = true;
        break;
      }
      // Kempe chain: a free at u (used at v), b free at v (used at u).
      int a = fu[rng() % fu.size()];
      int b = fv[rng() % fv.size()];
      // walk the a/b alternating path from v, then flip it wholesale
      std::vector<int> path;
      int cur = v, col = a;
      while (true) {
        int k = at[cur][col];
        if (k < 0) break;
        path.push_back(k);
        cur = (edges[k].first == cur) ? edges[k].second : edges[k].first;
        col = (col == a) ? b : a;
      }
      for (int k : path) {
        at[edges[k].first][color[k]] = -1;
        at[edges[k].second][color[k]] = -1;
      }
      for (int k : path) {
        color[k] = (color[k] == a) ? b : a;
        at[edges[k].first][color[k]] = k;
        at[edges[k].second][color[k]] = k;
      }
      if (at[u][a] < 0 && at[v][a] < 0) {
        color[e] = a;
        at[u][a] = at[v][a] = e;
        done = true;
      }
      // otherwise the chain ended at u; retry with fresh colors
    }
    if (!done && color[e] < 0) return {};
  }
  return color;
}

// Factor extraction from a coloring: class c, optionally verifying coverage.
std::vector<std::vector<Edge>> classes_from_coloring(
    const std::vector<std::pair<int, int>>& edges, const std::vector<int>& color, int ncolors) {
  std::vector<std::vector<Edge>> cls(ncolors);
  for (size_t i = 0; i < edges.size(); ++i)
    cls[color[i]].emplace_back(edges[i].first, edges[i].second);
  return cls;
}

std::mt19937 seeded(unsigned seed) { return std::mt19937(seed * 2654435761u + 12345u); }

}  // namespace

void FactorSet::check() const {
  std::set<Edge> seen;
  for (const Edge& e : removed) {
    if (!seen.insert(e).second) fail("FactorSet", "removed edge repeated");
  }
  if ((int)missing.size() != (int)factors.size()) fail("FactorSet", "missing[] size mismatch");
  for (size_t i = 0; i < factors.size(); ++i) {
    std::set<Vertex> covered;
    for (const Edge& e : factors[i]) {
      if (e.a < 0 || e.b >= host_order || e.a == e.b) fail("FactorSet", "bad edge");
      if (!covered.insert(e.a).second || !covered.insert(e.b).second)
        fail("FactorSet", "factor not a matching");
      if (!seen.insert(e).second) fail("FactorSet", "edge repeated across factors");
    }
    for (Vertex v = 0; v < host_order; ++v) {
      bool cov = covered.count(v) > 0;
      if (missing[i] == v) {
        if (cov) fail("FactorSet", "missing vertex covered");
      } else if (!cov) {
        fail("FactorSet", "vertex uncovered by factor");
      }
    }
  }
  if (seen.size() != (size_t)host_order * (host_order - 1) / 2)
    fail("FactorSet", "union does not cover the host graph");
}

FactorSet one_factorization(int m) {
  if (m < 2 || m % 2) throw std::invalid_argument("one_factorization: m must be even >= 2");
  FactorSet fs;
  fs.host_order = m;
  if (m == 2) {
    fs.factors = {{Edge(0, 1)}};
    fs.missing = {-1};
    return fs;
  }
  const int r = m - 1;  // round count; rotation modulus
  for (int i = 0; i < r; ++i) {
    std::vector<Edge> f;
    f.emplace_back(m - 1, i);
    for (int j = 1; j <= m / 2 - 1; ++j) f.emplace_back((i + j) % r, ((i - j) % r + r) % r);
    fs.factors.push_back(std::move(f));
    fs.missing.push_back(-1);
  }
  return fs;
}

FactorSet one_factorization_hamilton_tail(int m, unsigned seed) {
  if (m < 4 || m % 2)
    throw std::invalid_argument("one_factorization_hamilton_tail: m must be even >= 4");
  std::vector<Edge> h1, h2;
  for (int h = 0; h < m / 2; ++h) {
    h1.emplace_back(2 * h, 2 * h + 1);
    h2.emplace_back(2 * h + 1, (2 * h + 2) % m);
  }
  std::set<Edge> cyc(h1.begin(), h1.end());
  cyc.insert(h2.begin(), h2.end());
  std::vector<std::pair<int, int>> rest;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      if (!cyc.count(Edge(a, b))) rest.push_back({a, b});
  FactorSet fs;
  fs.host_order = m;
  if (!rest.empty()) {
    const int ncolors = m - 3;
    std::vector<int> color;
    for (unsigned s = 0; s < 500 && color.empty(); ++s) {
      auto rng = seeded(seed + s);
      color = kempe_color(m, rest, ncolors, rng);
    }
    if (color.empty()) fail("one_factorization_hamilton_tail", "coloring failed");
    for (auto& cls : classes_from_coloring(rest, color, ncolors)) {
      fs.factors.push_back(std::move(cls));
      fs.missing.push_back(-1);
    }
  }
  fs.factors.push_back(std::move(h1));
  fs.missing.push_back(-1);
  fs.factors.push_back(std::move(h2));
  fs.missing.push_back(-1);
  fs.check();
  return fs;
}

std::vector<Edge> forbidden_spanning_graph(int v) {
  std::vector<Edge> r;
  if (v % 4 == 0) {
    for (int g = 0; g < v / 4; ++g)
      for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) r.emplace_back(4 * g + a, 4 * g + b);
    return r;
  }
  if (v % 4 == 2 && v >= 10) {
    for (int g = 0; g < (v - 6) / 4; ++g)
      for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) r.emplace_back(4 * g + a, 4 * g + b);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) r.emplace_back(v - 6 + a, v - 3 + b);
    return r;
  }
  throw std::invalid_argument("forbidden_spanning_graph: need v = 0 mod 4, or v = 2 mod 4 with v >= 10");
}

FactorSet one_factorization_avoiding(int v, const std::vector<Edge>& removed, unsigned seed) {
  if (v % 2) throw std::invalid_argument("one_factorization_avoiding: v must be even");
  // validate: components of `removed` are K4s, or K4s plus one K33, spanning v
  {
    std::vector<int> comp(v, -1);
    std::map<Vertex, std::vector<Vertex>> adj;
    std::set<Edge> rset(removed.begin(), removed.end());
    if (rset.size() != removed.size()) throw std::invalid_argument("one_factorization_avoiding: repeated edge in removed");
    for (const Edge& e : removed) {
      adj[e.a].push_back(e.b);
      adj[e.b].push_back(e.a);
    }
    int nc = 0;
    for (int s = 0; s < v; ++s) {
      if (comp[s] >= 0) continue;
      std::vector<int> stack{s}, verts;
      comp[s] = nc;
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        verts.push_back(x);
        for (int y : adj[x])
          if (comp[y] < 0) {
            comp[y] = nc;
            stack.push_back(y);
          }
      }
      int ec = 0;
      for (const Edge& e : removed)
        if (comp[e.a] == nc) ec++;
      bool k4 = verts.size() == 4 && ec == 6;
      bool k33 = false;
      if (verts.size() == 6 && ec == 9) {
        // complete bipartite: the neighborhood of any vertex and its complement
        // within the component must be the two sides
        std::set<Vertex> side(adj[verts[0]].begin(), adj[verts[0]].end());
        k33 = side.size() == 3;
        for (int x : verts)
          for (int y : adj[x])
            if (side.count(x) == side.count(y)) k33 = false;
      }
      if (!k4 && !k33)
        throw std::invalid_argument("one_factorization_avoiding: removed graph is not K4s / K4s+K33");
      nc++;
    }
  }
  std::set<Edge> rset(removed.begin(), removed.end());
  std::vector<std::pair<int, int>> rest;
  for (int a = 0; a < v; ++a)
    for (int b = a + 1; b < v; ++b)
      if (!rset.count(Edge(a, b))) rest.push_back({a, b});
  const int ncolors = v - 4;
  std::vector<int> color;
  for (unsigned s = 0; s < 500 && color.empty(); ++s) {
    auto rng = seeded(seed + s);
    color = kempe_color(v, rest, ncolors, rng);
  }
  if (color.empty()) fail("one_factorization_avoiding", "coloring failed");
  FactorSet fs;
  fs.host_order = v;
  fs.removed = removed;
  for (auto& cls : classes_from_coloring(rest, color, ncolors)) {
    fs.factors.push_back(std::move(cls));
    fs.missing.push_back(-1);
  }
  return fs;
}

FactorSet near_one_factorization(int m) {
  if (m < 3 || m % 2 == 0)
    throw std::invalid_argument("near_one_factorization: m must be odd >= 3");
  FactorSet fs;
  fs.host_order = m;
  for (int k = 0; k < m; ++k) {
    std::vector<Edge> f;
    for (int j = 1; j <= (m - 1) / 2; ++j)
      f.emplace_back((k + j) % m, ((k - j) % m + m) % m);
    fs.factors.push_back(std::move(f));
    fs.missing.push_back(k);
  }
  return fs;
}

FactorSet near_one_factorization_with_factor(int m, const std::vector<Edge>& M) {
  if ((int)M.size() != (m - 1) / 2)
    throw std::invalid_argument("near_one_factorization_with_factor: wrong matching size");
  std::vector<char> cov(m, 0);
  for (const Edge& e : M) {
    if (e.a < 0 || e.b >= m || cov[e.a] || cov[e.b])
      throw std::invalid_argument("near_one_factorization_with_factor: not a matching");
    cov[e.a] = cov[e.b] = 1;
  }
  int x = -1;
  for (int i = 0; i < m; ++i)
    if (!cov[i]) x = i;
  FactorSet rot = near_one_factorization(m);
  // permutation mapping rot factor x edgewise onto M, fixing x
  std::vector<Vertex> pi(m, -1);
  pi[x] = x;
  std::vector<Edge> from = rot.factors[x], to = M;
  std::sort(from.begin(), from.end());
  std::sort(to.begin(), to.end());
  for (size_t k = 0; k < from.size(); ++k) {
    pi[from[k].a] = to[k].a;
    pi[from[k].b] = to[k].b;
  }
  FactorSet fs;
  fs.host_order = m;
  fs.factors.resize(m);
  fs.missing.resize(m);
  for (int k = 0; k < m; ++k) {
    std::vector<Edge> f;
    for (const Edge& e : rot.factors[k]) f.emplace_back(pi[e.a], pi[e.b]);
    std::sort(f.begin(), f.end());
    fs.factors[pi[k]] = std::move(f);
    fs.missing[pi[k]] = pi[k];
  }
  fs.check();
  return fs;
}

FactorSet near_one_factorization_minus_cycle(int v, int t, unsigned seed) {
  if (t < 3 || v != 2 * t + 1)
    throw std::invalid_argument("near_one_factorization_minus_cycle: need v = 2t+1, t >= 3");
  // Host K_v minus the t-cycle, plus a depot vertex D joined twice to each
  // cycle vertex; the result is (v-1)-regular on v+1 points. Each color class
  // is then a perfect matching whose depot edge names the missing vertex.
  const int D = v;
  std::set<Edge> cyc;
  for (int i = 0; i < t; ++i) cyc.insert(Edge(i, (i + 1) % t));
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < v; ++a)
    for (int b = a + 1; b < v; ++b)
      if (!cyc.count(Edge(a, b))) edges.push_back({a, b});
  for (int j = 0; j < t; ++j) {
    edges.push_back({j, D});
    edges.push_back({j, D});
  }
  const int ncolors = v - 1;
  std::vector<int> color;
  for (unsigned s = 0; s < 800 && color.empty(); ++s) {
    auto rng = seeded(seed + 7 * s + 1);
    color = kempe_color(v + 1, edges, ncolors, rng);
  }
  if (color.empty()) fail("near_one_factorization_minus_cycle", "coloring failed");
  std::vector<std::vector<Edge>> fac(ncolors);
  std::vector<int> miss(ncolors, -1);
  for (size_t i = 0; i < edges.size(); ++i) {
    auto [a, b] = edges[i];
    if (b == D)
      miss[color[i]] = a;
    else
      fac[color[i]].emplace_back(a, b);
  }
  // order so factors 2j, 2j+1 miss j
  std::vector<int> order(ncolors);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return miss[a] < miss[b]; });
  FactorSet fs;
  fs.host_order = v;
  fs.removed.assign(cyc.begin(), cyc.end());
  for (int c : order) {
    if (miss[c] < 0) fail("near_one_factorization_minus_cycle", "class without depot edge");
    fs.factors.push_back(std::move(fac[c]));
    fs.missing.push_back(miss[c]);
  }
  fs.check();
  return fs;
}

void TripleSystem::check() const {
  std::set<Edge> seen(leave.begin(), leave.end());
  if (seen.size() != leave.size()) fail("TripleSystem", "repeated leave edge");
  for (const auto& tr : triples) {
    if (tr[0] == tr[1] || tr[0] == tr[2] || tr[1] == tr[2]) fail("TripleSystem", "degenerate triple");
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (!seen.insert(Edge(tr[i], tr[j])).second) fail("TripleSystem", "pair covered twice");
  }
  if (seen.size() != (size_t)points * (points - 1) / 2)
    fail("TripleSystem", "pairs not exactly covered");
}

namespace {

// Stinson-style hill-climbing: partition `allowed` (K_points minus forbidden)
// into triples. Requires even degrees and edge count divisible by 3.
std::optional<std::vector<std::array<Vertex, 3>>> triple_decompose(
    int n, const std::set<Edge>& forbidden, unsigned seed) {
  std::vector<std::vector<char>> allowed(n, std::vector<char>(n, 0));
  long long m = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!forbidden.count(Edge(a, b))) {
        allowed[a][b] = allowed[b][a] = 1;
        m++;
      }
  std::vector<int> deg(n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) deg[a] += allowed[a][b];
  for (int a = 0; a < n; ++a)
    if (deg[a] % 2) return std::nullopt;
  if (m % 3) return std::nullopt;

  // cov[a][b] = triple id covering pair, or -1
  std::vector<std::vector<int>> cov(n, std::vector<int>(n, -1));
  std::vector<std::array<Vertex, 3>> triples;
  std::vector<int> live;  // points with uncovered allowed pairs
  std::vector<int> unc(n, 0);
  for (int a = 0; a < n; ++a) unc[a] = deg[a];
  long long uncovered = m;
  auto rng = seeded(seed);

  auto pick_partner = [&](int x) {
    int r = (int)(rng() % unc[x]);
    for (int y = 0; y < n; ++y)
      if (allowed[x][y] && cov[x][y] < 0) {
        if (r == 0) return y;
        r--;
      }
    return -1;
  };

  const long long max_iter = 400000 + 4000LL * n * n;
  std::vector<int> freelist;  // reusable triple slots
  for (long long it = 0; it < max_iter && uncovered > 0; ++it) {
    int x = (int)(rng() % n);
    if (unc[x] == 0) {
      // jump to a live point deterministically from x
      int found = -1;
      for (int d = 0; d < n; ++d) {
        int y = (x + d) % n;
        if (unc[y] > 0) {
          found = y;
          break;
        }
      }
      x = found;
    }
    int y = pick_partner(x);
    int z = pick_partner(x);
    if (y == z || y < 0 || z < 0) continue;
    if (!allowed[y][z]) continue;
    int old_id = cov[y][z];
    if (old_id >= 0) {
      auto& tr = triples[old_id];
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
          cov[tr[i]][tr[j]] = cov[tr[j]][tr[i]] = -1;
          unc[tr[i]]++;
          unc[tr[j]]++;
        }
      uncovered += 3;
      tr = {-1, -1, -1};
      freelist.push_back(old_id);
    }
    int id;
    if (!freelist.empty()) {
      id = freelist.back();
      freelist.pop_back();
      triples[id] = {x, y, z};
    } else {
      id = (int)triples.size();
      triples.push_back({x, y, z});
    }
    std::array<Vertex, 3> tr{x, y, z};
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        cov[tr[i]][tr[j]] = cov[tr[j]][tr[i]] = id;
        unc[tr[i]]--;
        unc[tr[j]]--;
      }
    uncovered -= 3;
  }
  if (uncovered > 0) return std::nullopt;
  std::vector<std::array<Vertex, 3>> out;
  for (auto& tr : triples)
    if (tr[0] >= 0) out.push_back(tr);
  return out;
}

}  // namespace

TripleSystem steiner_triple_system(int v, unsigned seed) {
  TripleSystem ts;
  ts.points = v;
  if (v == 1) return ts;
  if (v % 6 == 3) {
    // Bose: points (x,i) = x + m*i over Z_m x {0,1,2}, m = v/3 odd
    const int m = v / 3;
    const int h = (m + 1) / 2;  // inverse of 2 mod m
    auto pt = [&](int x, int i) { return x + m * i; };
    for (int x = 0; x < m; ++x) ts.triples.push_back({pt(x, 0), pt(x, 1), pt(x, 2)});
    for (int x = 0; x < m; ++x)
      for (int y = x + 1; y < m; ++y)
        for (int i = 0; i < 3; ++i)
          ts.triples.push_back({pt(x, i), pt(y, i), pt((int)(((long long)(x + y) * h) % m), (i + 1) % 3)});
    ts.check();
    return ts;
  }
  if (v % 6 == 1) {
    for (unsigned s = 0; s < 60; ++s) {
      auto got = triple_decompose(v, {}, seed + 31 * s);
      if (got) {
        ts.triples = std::move(*got);
        ts.check();
        return ts;
      }
    }
    fail("steiner_triple_system", "search failed");
  }
  throw std::invalid_argument("steiner_triple_system: v must be 1 or 3 mod 6");
}

TripleSystem pts_with_leave(int v, const LeaveSpec& leave, unsigned seed) {
  std::vector<Edge> lv;
  switch (leave.kind) {
    case LeaveSpec::None:
      break;
    case LeaveSpec::FourCycle:
      lv = {Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(3, 0)};
      break;
    case LeaveSpec::Cycle: {
      if (leave.length < 3 || leave.length > v)
        throw std::invalid_argument("pts_with_leave: bad cycle length");
      for (int i = 0; i < leave.length; ++i) lv.emplace_back(i, (i + 1) % leave.length);
      break;
    }
    case LeaveSpec::Graph:
      lv = leave.edges;
      break;
  }
  std::set<Edge> forb(lv.begin(), lv.end());
  if (forb.size() != lv.size()) throw std::invalid_argument("pts_with_leave: repeated leave edge");
  for (const Edge& e : lv)
    if (e.a < 0 || e.b >= v) throw std::invalid_argument("pts_with_leave: leave edge out of range");
  // feasibility: even degrees off the leave, remaining edge count = 0 mod 3
  std::vector<int> ld(v, 0);
  for (const Edge& e : lv) {
    ld[e.a]++;
    ld[e.b]++;
  }
  long long rem = (long long)v * (v - 1) / 2 - (long long)lv.size();
  for (int x = 0; x < v; ++x)
    if ((v - 1 - ld[x]) % 2) throw std::invalid_argument("pts_with_leave: infeasible leave (degree parity)");
  if (rem % 3) throw std::invalid_argument("pts_with_leave: infeasible leave (edge count mod 3)");
  TripleSystem ts;
  ts.points = v;
  ts.leave = lv;
  if (rem == 0) {
    ts.check();
    return ts;
  }
  for (unsigned s = 0; s < 60; ++s) {
    auto got = triple_decompose(v, forb, seed + 17 * s);
    if (got) {
      ts.triples = std::move(*got);
      ts.check();
      return ts;
    }
  }
  fail("pts_with_leave", "search failed");
}

void GroupDivisibleDesign::check() const {
  const int n = group_size * group_count;
  std::vector<int> grp(n, -1);
  for (size_t g = 0; g < groups.size(); ++g)
    for (Vertex x : groups[g]) grp[x] = (int)g;
  std::set<Edge> seen;
  for (const auto& tr : triples)
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        if (grp[tr[i]] == grp[tr[j]]) fail("GroupDivisibleDesign", "triple meets a group twice");
        if (!seen.insert(Edge(tr[i], tr[j])).second) fail("GroupDivisibleDesign", "pair covered twice");
      }
  size_t want = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (grp[a] != grp[b]) want++;
  if (seen.size() != want) fail("GroupDivisibleDesign", "cross pairs not exactly covered");
}

GroupDivisibleDesign gdd3(int group_size, int group_count, unsigned seed) {
  const bool ok6 = group_size == 6 && group_count >= 3;
  const bool ok2 = group_size == 2 && group_count >= 3 && (group_count % 3 == 0 || group_count % 3 == 1);
  if (!ok6 && !ok2) throw std::invalid_argument("gdd3: unsupported type");
  GroupDivisibleDesign g;
  g.group_size = group_size;
  g.group_count = group_count;
  const int n = group_size * group_count;
  std::set<Edge> forb;
  for (int k = 0; k < group_count; ++k) {
    std::vector<Vertex> grp;
    for (int q = 0; q < group_size; ++q) grp.push_back(group_size * k + q);
    for (size_t i = 0; i < grp.size(); ++i)
      for (size_t j = i + 1; j < grp.size(); ++j) forb.insert(Edge(grp[i], grp[j]));
    g.groups.push_back(std::move(grp));
  }
  for (unsigned s = 0; s < 60; ++s) {
    auto got = triple_decompose(n, forb, seed + 13 * s);
    if (got) {
      g.triples = std::move(*got);
      g.check();
      return g;
    }
  }
  fail("gdd3", "search failed");
}

namespace {

// Minimal BFS max-flow for the headset assignment.
struct Flow {
  struct Arc {
    int to, cap;
  };
  std::vector<Arc> arcs;
  std::vector<std::vector<int>> adj;
  explicit Flow(int n) : adj(n) {}
  int add(int u, int v, int cap) {
    adj[u].push_back((int)arcs.size());
    arcs.push_back({v, cap});
    adj[v].push_back((int)arcs.size());
    arcs.push_back({u, 0});
    return (int)arcs.size() - 2;
  }
  int run(int s, int t) {
    int total = 0;
    while (true) {
      std::vector<int> pre(adj.size(), -1);
      std::queue<int> q;
      q.push(s);
      pre[s] = -2;
      while (!q.empty() && pre[t] == -1) {
        int u = q.front();
        q.pop();
        for (int id : adj[u])
          if (arcs[id].cap > 0 && pre[arcs[id].to] == -1) {
            pre[arcs[id].to] = id;
            q.push(arcs[id].to);
          }
      }
      if (pre[t] == -1) return total;
      for (int v = t; v != s;) {
        int id = pre[v];
        arcs[id].cap--;
        arcs[id ^ 1].cap++;
        v = arcs[id ^ 1].to;
      }
      total++;
    }
  }
};

}  // namespace

Headset headset(const TripleSystem& ts) {
  const int b = (int)ts.triples.size();
  const int n = ts.points;
  std::vector<int> r(n, 0);
  for (const auto& tr : ts.triples)
    for (int i = 0; i < 3; ++i) r[tr[i]]++;
  // nodes: 0 source, 1..b triples, b+1..b+n points, b+n+1 sink
  Flow fl(b + n + 2);
  const int S = 0, T = b + n + 1;
  std::vector<int> tri_arcs;
  for (int k = 0; k < b; ++k) {
    fl.add(S, 1 + k, 1);
    for (int i = 0; i < 3; ++i) tri_arcs.push_back(fl.add(1 + k, 1 + b + ts.triples[k][i], 1));
  }
  std::vector<int> cap_arc(n);
  for (int x = 0; x < n; ++x) cap_arc[x] = fl.add(1 + b + x, T, r[x] / 3);
  int got = fl.run(S, T);  // fill lower bounds first
  for (int x = 0; x < n; ++x) fl.arcs[cap_arc[x]].cap += (r[x] % 3) ? 1 : 0;
  got += fl.run(S, T);
  if (got != b) fail("headset", "assignment infeasible");
  Headset hs;
  hs.heads.resize(b, -1);
  hs.occurrences.assign(n, 0);
  for (int k = 0; k < b; ++k)
    for (int i = 0; i < 3; ++i) {
      int id = tri_arcs[3 * k + i];
      if (fl.arcs[id].cap == 0) {  // saturated unit arc
        hs.heads[k] = ts.triples[k][i];
        break;
      }
    }
  for (int k = 0; k < b; ++k) {
    if (hs.heads[k] < 0) fail("headset", "triple without head");
    hs.occurrences[hs.heads[k]]++;
  }
  for (int x = 0; x < n; ++x)
    if (hs.occurrences[x] != r[x] / 3 && hs.occurrences[x] != (r[x] + 2) / 3)
      fail("headset", "occurrence invariant breached");
  return hs;
}

std::vector<Block> cocktail_partition(int w) {
  if (w <= 3) throw std::invalid_argument("cocktail_partition: w > 3 required");
  std::vector<Block> out;
  if (w % 2 == 0) {
    for (int i = 0; i < w / 2; ++i)
      for (int j = i + 1; j < w / 2; ++j)
        out.push_back(Block::cycle4(2 * i, 2 * j, 2 * i + 1, 2 * j + 1));
    return out;
  }
  if (w == 5) {
    out.push_back(Block::kite(2, 4, 0, 3));
    out.push_back(Block::kite(3, 4, 1, 2));
    return out;
  }
  if (w == 7) {
    out.push_back(Block::kite(3, 6, 0, 5));
    out.push_back(Block::kite(1, 6, 4, 3));
    out.push_back(Block::kite(5, 6, 2, 1));
    out.push_back(Block::triangle(0, 2, 4));
    out.push_back(Block::triangle(1, 3, 5));
    return out;
  }
  out = cocktail_partition(w - 4);
  for (int h = 0; h < (w - 5) / 2; ++h) {
    out.push_back(Block::cycle4(2 * h, w - 4, 2 * h + 1, w - 3));
    out.push_back(Block::cycle4(2 * h, w - 2, 2 * h + 1, w - 1));
  }
  // K5 on the tail minus {w-5,w-4} and {w-3,w-2}, the two new matching pairs
  out.push_back(Block::kite(w - 3, w - 1, w - 5, w - 2));
  out.push_back(Block::kite(w - 2, w - 1, w - 4, w - 3));
  return out;
}

std::vector<Block> p3_partition(const std::vector<Edge>& edges) {
  if (edges.empty()) return {};
  std::map<Vertex, std::vector<std::pair<Vertex, int>>> adj;  // vertex -> (other, edge id)
  for (size_t i = 0; i < edges.size(); ++i) {
    adj[edges[i].a].push_back({edges[i].b, (int)i});
    adj[edges[i].b].push_back({edges[i].a, (int)i});
  }
  // iterative DFS from the first vertex
  const Vertex root = edges[0].a;
  std::map<Vertex, int> state;  // 0 unseen, 1 on stack/visited
  std::vector<Vertex> finish_order;
  std::map<Vertex, std::pair<Vertex, int>> parent;  // vertex -> (parent, edge id)
  std::vector<char> is_tree(edges.size(), 0), assigned(edges.size(), 0);
  std::map<Vertex, std::vector<int>> extra;  // non-tree edges pinned to a vertex

  std::vector<std::pair<Vertex, size_t>> stack{{root, 0}};
  state[root] = 1;
  while (!stack.empty()) {
    auto& [u, idx] = stack.back();
    if (idx >= adj[u].size()) {
      finish_order.push_back(u);
      stack.pop_back();
      continue;
    }
    auto [x, eid] = adj[u][idx++];
    if (!state.count(x) || state[x] == 0) {
      state[x] = 1;
      is_tree[eid] = 1;
      parent[x] = {u, eid};
      stack.push_back({x, 0});
    } else if (!is_tree[eid] && !assigned[eid]) {
      assigned[eid] = 1;
      extra[u].push_back(eid);  // pinned at the endpoint that closes it
    }
  }
  if (finish_order.size() != adj.size())
    throw std::invalid_argument("p3_partition: input not connected");

  std::vector<Block> out;
  std::map<Vertex, std::vector<int>> pending = std::move(extra);
  auto other_end = [&](int eid, Vertex at) { return edges[eid].a == at ? edges[eid].b : edges[eid].a; };
  for (Vertex u : finish_order) {
    auto& L = pending[u];
    for (size_t i = 0; i + 1 < L.size(); i += 2)
      out.push_back(Block::path3(other_end(L[i], u), u, other_end(L[i + 1], u)));
    bool odd = L.size() % 2;
    if (u == root) {
      if (odd) out.push_back(Block::single(edges[L.back()].a, edges[L.back()].b));
    } else {
      auto [p, peid] = parent[u];
      if (odd)
        out.push_back(Block::path3(other_end(L.back(), u), u, p));
      else
        pending[p].push_back(peid);  // tree edge floats up, pinned at parent
    }
  }
  return out;
}

std::vector<int> factor_pairing(const std::vector<Edge>& f, const std::vector<Edge>& g) {
  std::map<Vertex, int> fat, gat;  // vertex -> edge index in f/g
  for (size_t i = 0; i < f.size(); ++i) {
    if (fat.count(f[i].a) || fat.count(f[i].b)) fail("factor_pairing", "f not a matching");
    fat[f[i].a] = fat[f[i].b] = (int)i;
  }
  for (size_t i = 0; i < g.size(); ++i) {
    if (gat.count(g[i].a) || gat.count(g[i].b)) fail("factor_pairing", "g not a matching");
    gat[g[i].a] = gat[g[i].b] = (int)i;
  }
  for (const Edge& e : f)
    for (const Edge& h : g)
      if (e == h) fail("factor_pairing", "f and g share an edge");
  if (f.size() != g.size()) fail("factor_pairing", "factor sizes differ");

  std::vector<int> sigma(f.size(), -1);
  std::vector<char> fused(f.size(), 0), gused(g.size(), 0);
  auto walk_from = [&](Vertex start) {
    // start must have an f-edge; walk f,g,f,g,... pairing as we go
    Vertex cur = start;
    while (true) {
      auto itf = fat.find(cur);
      if (itf == fat.end() || fused[itf->second]) break;
      int fe = itf->second;
      fused[fe] = 1;
      Vertex nxt = f[fe].a == cur ? f[fe].b : f[fe].a;
      auto itg = gat.find(nxt);
      if (itg == gat.end() || gused[itg->second]) fail("factor_pairing", "f/g union not alternating even");
      int ge = itg->second;
      gused[ge] = 1;
      sigma[fe] = ge;
      cur = g[ge].a == nxt ? g[ge].b : g[ge].a;
    }
  };
  // path components first: a path endpoint carrying an f-edge has no g-edge
  for (const Edge& e : f)
    for (Vertex x : {e.a, e.b})
      if (!gat.count(x)) walk_from(x);
  // remaining components are cycles: start anywhere
  for (size_t i = 0; i < f.size(); ++i)
    if (!fused[i]) walk_from(f[i].a);
  for (size_t i = 0; i < f.size(); ++i)
    if (sigma[i] < 0) fail("factor_pairing", "pairing incomplete");
  return sigma;
}

std::vector<Block> relabel_blocks(const std::vector<Block>& blocks, const std::vector<Vertex>& perm) {
  std::vector<Block> out;
  out.reserve(blocks.size());
  for (const Block& b : blocks) {
    std::vector<Edge> es;
    es.reserve(b.edges.size());
    for (const Edge& e : b.edges) es.emplace_back(perm.at(e.a), perm.at(e.b));
    out.push_back(Block(std::move(es)));
  }
  return out;
}

}  // namespace groom
