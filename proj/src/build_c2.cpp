// Builder for per-wavelength cap C' = 2.
//
// Layout shared by every branch: V = {0..v-1}, W = {v..n-1}, column j is
// a_j = v + j. A "row" takes one (near-)1-factor F on V, turns each edge into
// a triangle with apex a_j, and hangs a paired edge of a second factor G off
// the shared vertex, giving kites with exactly two V-internal edges.
//
// Dispatch:
//   w = 0            whole ring: P3 partition of K_n.
//   v <= 2           cost-optimal MON(n,4) as-is (at most one V-internal edge).
//   3 <= v <= 2w     delegate to v' = floor(2n/3): the blocks built for the
//                    larger first period remain valid for every v <= v'.
//                    v' = 2w':   scheme A (one leftover triangle row).
//                    v' = 2w'-1: near-factorization scheme with prescribed
//                                matching and a W-plan kited at a_{w-1}.
//                    v' = 2w'-2: scheme B (three leftover triangles).
//   v even, v = 2w+2 forbidden-subgraph variant (K4s / K4s+K33 on V).
//   v even, v >= 2w+4  main even scheme: Hamilton-tail factorization, rows,
//                    leftover union into P3s, MON(w,4) on W.
//   v odd,  v > 2w   main odd scheme: near-factorization of K_v minus C_t,
//                    rows, leftover pairs into P3s, cocktail partition on W.
//
// MON mode merges one V-side P2 with one W-side triangle (or P3) into a
// single wavelength exactly when the wavelength target demands it; every
// other wavelength carries one block.

#include <groom/build.hpp>
#include <groom/designkit.hpp>
#include <groom/formulas.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace groom {

namespace {

using Blocks = std::vector<Block>;

void append(Blocks& out, Blocks more) {
  out.insert(out.end(), std::make_move_iterator(more.begin()),
             std::make_move_iterator(more.end()));
}

std::vector<Edge> complete_edges(int m) {
  std::vector<Edge> es;
  es.reserve(static_cast<size_t>(m) * (m - 1) / 2);
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) es.emplace_back(a, b);
  return es;
}

// A row kite kept in structural form so pendants can be reassigned later.
struct RowKite {
  Edge base;      // V-internal triangle edge, from the row factor
  Vertex apex;    // column vertex
  Vertex shared;  // base endpoint the pendant hangs from
  Vertex tip;     // pendant far endpoint
  bool stolen = false;

  Block block() const {
    Vertex other = (shared == base.a) ? base.b : base.a;
    return Block::kite(other, apex, shared, tip);
  }
  // The triangle left behind when the pendant is stolen, re-kited with a
  // pendant hung from the apex instead.
  Block rekited(Vertex target) const { return Block::kite(base.a, base.b, apex, target); }
};

std::vector<RowKite> make_row(const std::vector<Edge>& f, const std::vector<Edge>& g,
                              Vertex apex) {
  std::vector<int> sigma = factor_pairing(f, g);
  std::vector<RowKite> row;
  row.reserve(f.size());
  for (size_t k = 0; k < f.size(); ++k) {
    const Edge& fe = f[k];
    const Edge& ge = g[sigma[k]];
    Vertex shared = (ge.a == fe.a || ge.a == fe.b) ? ge.a : ge.b;
    Vertex tip = (shared == ge.a) ? ge.b : ge.a;
    row.push_back(RowKite{fe, apex, shared, tip});
  }
  return row;
}

void emit_row(Blocks& out, const std::vector<RowKite>& row) {
  for (const RowKite& k : row)
    if (!k.stolen) out.push_back(k.block());
}

// Steal the pendant touching vertex x from `row`, re-kite the broken kite
// with a pendant from its apex to `rekite_target`, and return the stolen
// edge. Throws if x has no pendant left in the row.
Edge steal_pendant(Blocks& out, std::vector<RowKite>& row, Vertex x, Vertex rekite_target,
                   const char* who) {
  for (RowKite& k : row) {
    if (k.stolen || (k.shared != x && k.tip != x)) continue;
    k.stolen = true;
    out.push_back(k.rekited(rekite_target));
    return Edge(k.shared, k.tip);
  }
  throw std::runtime_error(std::string(who) + ": no pendant available to steal at a leftover vertex");
}

// Partition an edge set into P3s plus at most one P2 per connected component.
Blocks p3_components(const std::vector<Edge>& edges) {
  std::map<Vertex, Vertex> parent;
  auto find = [&](Vertex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Edge& e : edges) {
    if (!parent.count(e.a)) parent[e.a] = e.a;
    if (!parent.count(e.b)) parent[e.b] = e.b;
    parent[find(e.a)] = find(e.b);
  }
  std::map<Vertex, std::vector<Edge>> comp;
  for (const Edge& e : edges) comp[find(e.a)].push_back(e);
  Blocks out;
  for (auto& [root, es] : comp) append(out, p3_partition(es));
  return out;
}

// Consecutive P3s along a vertex path; a trailing odd edge becomes a P2.
Blocks path_p3s(const std::vector<Vertex>& seq) {
  Blocks out;
  size_t i = 0;
  while (i + 2 < seq.size()) {
    out.push_back(Block::path3(seq[i], seq[i + 1], seq[i + 2]));
    i += 2;
  }
  if (i + 1 < seq.size()) out.push_back(Block::single(seq[i], seq[i + 1]));
  return out;
}

Blocks shifted(Blocks blocks, int m, int base) {
  std::vector<Vertex> perm(m);
  for (int i = 0; i < m; ++i) perm[i] = base + i;
  return relabel_blocks(blocks, perm);
}

Blocks mon4_shifted(int m, int base, const MonOptions& opts = {}) {
  if (m <= 1) return {};
  return shifted(build_mon_n4(m, opts), m, base);
}

// Decompose `local_edges` on points 0..m-1 into kites and 4-cycles (no
// triangles, no trees), then relabel point i to base+i.
Blocks ratio_one_rest(int m, std::vector<Edge> local_edges, int base, unsigned seed,
                      const char* who) {
  if (local_edges.empty()) return {};
  ShapeTarget target;
  target.triangles = 0;
  target.v_count = 0;
  for (int attempt = 0; attempt < 60; ++attempt) {
    target.node_budget = 500'000 + 250'000LL * attempt;
    auto found = shape_decompose(m, local_edges, target, seed + 101u * attempt);
    if (found) return shifted(std::move(*found), m, base);
  }
  throw std::runtime_error(std::string(who) + ": kite/4-cycle partition of the W remainder failed");
}

// ---------------------------------------------------------------------------
// Hand-built block lists for the orders below the general machinery.

// (n,v) = (5,3): successor pattern, one V-edge per block.
Blocks tiny_successor_v3() {
  return {Block::triangle(0, 1, 3), Block::triangle(1, 2, 4), Block::cycle4(0, 2, 3, 4)};
}

// (n,v) = (6,5): w = 1, t = 2.
Blocks bespoke_n6_v5() {
  return {Block::kite(5, 1, 2, 0), Block::kite(5, 3, 4, 1), Block::path4(5, 0, 1, 3),
          Block::path3(3, 0, 4),   Block::path3(3, 2, 4)};
}

// (n,v) = (7,5): w = 2, t = 2.
Blocks bespoke_n7_v5() {
  return {Block::kite(5, 1, 2, 0), Block::kite(5, 3, 4, 1), Block::kite(6, 1, 3, 2),
          Block::kite(6, 2, 4, 0), Block::kite(5, 6, 0, 1), Block::single(0, 3)};
}

// (n,v) = (8,6): v = 2w+2 with w = 2. K_6 minus the two forbidden triangles
// has no perfect matching, so the general variant machinery cannot start;
// this list keeps every cross edge in a kite.
Blocks bespoke_n8_v6() {
  return {Block::kite(0, 6, 1, 2), Block::kite(2, 6, 3, 4), Block::kite(4, 6, 5, 0),
          Block::kite(0, 2, 7, 6), Block::kite(1, 7, 4, 0), Block::kite(3, 7, 5, 1),
          Block::path3(0, 3, 1),   Block::path3(4, 2, 5)};
}

// (n,v) = (11,7): the delegated v' = 2w'-1 order with w' = 4.
Blocks bespoke_n11_v7() {
  return {Block::kite(7, 4, 2, 3),  Block::kite(7, 3, 6, 0),  Block::kite(7, 0, 5, 1),
          Block::kite(8, 5, 3, 4),  Block::kite(8, 4, 6, 1),  Block::kite(8, 1, 0, 2),
          Block::kite(9, 0, 4, 5),  Block::kite(9, 6, 5, 10), Block::kite(9, 1, 2, 5),
          Block::kite(0, 3, 10, 2), Block::cycle4(1, 7, 9, 3), Block::cycle4(7, 8, 9, 10),
          Block::cycle4(8, 2, 6, 10), Block::triangle(1, 4, 10)};
}

// ---------------------------------------------------------------------------
// v' = 2w: one row of triangles remains; all W-edges at a_{w-1} convert all
// but one of them, and the rest of K_{w-1} on W is exhausted ratio-1.
Blocks scheme_a(int w, unsigned seed) {
  const int v = 2 * w;
  const auto colv = [v](int j) { return v + j; };
  FactorSet of = one_factorization(v);
  Blocks out;

  std::vector<std::vector<RowKite>> rows(w - 1);
  for (int i = 0; i + 1 < w; ++i)
    rows[i] = make_row(of.factors[i], of.factors[w + i], colv(i));

  const std::vector<Edge>& tris = of.factors[w - 1];  // w triangles at a_{w-1}
  const int wm1 = w - 1;

  if (w == 5) {
    // MON(4,4) needs trees, so convert only two triangles and cover
    // K_5 minus that P3 on W with two kites.
    out.push_back(Block::kite(tris[0].a, tris[0].b, colv(4), colv(0)));
    out.push_back(Block::kite(tris[1].a, tris[1].b, colv(4), colv(1)));
    for (int k = 2; k < 5; ++k) out.push_back(Block::triangle(tris[k].a, tris[k].b, colv(4)));
    out.push_back(Block::kite(colv(3), colv(4), colv(2), colv(0)));
    out.push_back(Block::kite(colv(0), colv(3), colv(1), colv(2)));
  } else {
    for (int j = 0; j + 1 < w; ++j)
      out.push_back(Block::kite(tris[j].a, tris[j].b, colv(w - 1), colv(j)));
    Edge last = tris[w - 1];
    if (w == 2) {
      out.push_back(Block::triangle(last.a, last.b, colv(1)));
    } else if (wm1 % 8 == 2 || wm1 % 8 == 7) {
      // MON(w-1,4) would carry three triangles; steal one pendant from the
      // a_{w-2} row instead and keep the W remainder triangle-free.
      Edge got = steal_pendant(out, rows[w - 2], last.a, colv(w - 3), "build_c2 scheme A");
      Vertex tip = (got.a == last.a) ? got.b : got.a;
      out.push_back(Block::kite(last.b, colv(w - 1), last.a, tip));
      std::vector<Edge> rest = complete_edges(wm1);
      std::erase(rest, Edge(w - 3, w - 2));
      append(out, ratio_one_rest(wm1, std::move(rest), v, seed, "build_c2 scheme A"));
    } else {
      out.push_back(Block::triangle(last.a, last.b, colv(w - 1)));
      append(out, mon4_shifted(wm1, v));
    }
  }
  for (const auto& row : rows) emit_row(out, row);
  return out;
}

// v' = 2w-2: rows a_{w-3}, a_{w-2}, a_{w-1} stay triangles and the W-edges at
// those three columns convert all but three. A residue-dependent number of
// pendant steals removes leftover triangles so that the W remainder keeps the
// kite/4-cycle parity.
Blocks scheme_b(int w, unsigned seed) {
  const int v = 2 * w - 2;
  const auto colv = [v](int j) { return v + j; };
  FactorSet of = one_factorization(v);
  Blocks out;

  std::vector<std::vector<RowKite>> rows(std::max(0, w - 3));
  for (int i = 0; i + 3 < w; ++i)
    rows[i] = make_row(of.factors[i], of.factors[w + i], colv(i));

  const std::vector<Edge>& t3 = of.factors[w - 3];
  const std::vector<Edge>& t2 = of.factors[w - 2];
  const std::vector<Edge>& t1 = of.factors[w - 1];
  for (int j = 0; j + 1 < w; ++j)
    out.push_back(Block::kite(t1[j].a, t1[j].b, colv(w - 1), colv(j)));
  for (int j = 0; j + 2 < w; ++j)
    out.push_back(Block::kite(t2[j].a, t2[j].b, colv(w - 2), colv(j)));
  for (int j = 0; j + 3 < w; ++j)
    out.push_back(Block::kite(t3[j].a, t3[j].b, colv(w - 3), colv(j)));
  Edge l1 = t3[w - 3], l2 = t3[w - 2], l3 = t2[w - 2];  // leftover triangles

  static const int steal_count[8] = {2, 3, 1, 0, 0, 1, 3, 2};  // by w mod 8
  const int j = steal_count[w % 8];

  std::vector<Edge> rest;  // K_{w-3} on {a_0..a_{w-4}}, local labels
  if (j >= 1) rest = complete_edges(w - 3);

  if (j == 0) {
    out.push_back(Block::triangle(l1.a, l1.b, colv(w - 3)));
    out.push_back(Block::triangle(l2.a, l2.b, colv(w - 3)));
    out.push_back(Block::triangle(l3.a, l3.b, colv(w - 2)));
    append(out, mon4_shifted(w - 3, v));
  } else if (j == 1) {
    Edge got = steal_pendant(out, rows[w - 4], l1.a, colv(w - 5), "build_c2 scheme B");
    Vertex tip = (got.a == l1.a) ? got.b : got.a;
    out.push_back(Block::kite(l1.b, colv(w - 3), l1.a, tip));
    out.push_back(Block::triangle(l2.a, l2.b, colv(w - 3)));
    out.push_back(Block::triangle(l3.a, l3.b, colv(w - 2)));
    std::erase(rest, Edge(w - 4, w - 5));
  } else {
    // Two steals from the a_{w-4} row must take distinct pendants.
    Vertex x1 = l1.a, x2 = l2.a;
    auto g_edge_of = [&](Vertex x) -> Edge {
      for (const Edge& e : of.factors[2 * w - 4])
        if (e.a == x || e.b == x) return e;
      throw std::runtime_error("build_c2 scheme B: pairing factor misses a vertex");
    };
    if (g_edge_of(x1) == g_edge_of(x2)) x2 = l2.b;
    Edge got1 = steal_pendant(out, rows[w - 4], x1, colv(w - 5), "build_c2 scheme B");
    Edge got2 = steal_pendant(out, rows[w - 4], x2, colv(w - 6), "build_c2 scheme B");
    Vertex tip1 = (got1.a == x1) ? got1.b : got1.a;
    Vertex tip2 = (got2.a == x2) ? got2.b : got2.a;
    out.push_back(Block::kite(l1.b == x1 ? l1.a : l1.b, colv(w - 3), x1, tip1));
    out.push_back(Block::kite(l2.b == x2 ? l2.a : l2.b, colv(w - 3), x2, tip2));
    std::erase(rest, Edge(w - 4, w - 5));
    std::erase(rest, Edge(w - 4, w - 6));
    if (j == 3) {
      Edge got3 = steal_pendant(out, rows[w - 5], l3.a, colv(w - 6), "build_c2 scheme B");
      Vertex tip3 = (got3.a == l3.a) ? got3.b : got3.a;
      out.push_back(Block::kite(l3.b, colv(w - 2), l3.a, tip3));
      std::erase(rest, Edge(w - 5, w - 6));
    } else {
      out.push_back(Block::triangle(l3.a, l3.b, colv(w - 2)));
    }
  }
  if (j >= 1)
    append(out, ratio_one_rest(w - 3, std::move(rest), v, seed, "build_c2 scheme B"));
  for (const auto& row : rows) emit_row(out, row);
  return out;
}

// v' = 2w-1 = 2t+1: rows from a near-1-factorization whose last factor is the
// prescribed matching {{k, t+1+k}}; diagonals hang off the matching row's
// kites; the W-plan donates one triangle at a_{w-1} to absorb {t, a_t}.
Blocks odd_delegate(int w, unsigned seed) {
  const int t = w - 1;
  const int v = 2 * t + 1;
  const int n = v + w;
  const auto colv = [v](int j) { return v + j; };

  if (w == 2) return tiny_successor_v3();
  if (w == 4) return bespoke_n11_v7();

  std::vector<Edge> m;
  for (int k = 0; k < t; ++k) m.emplace_back(k, t + 1 + k);
  FactorSet nf = near_one_factorization_with_factor(v, m);

  Blocks out;
  for (int i = 0; i < t; ++i)
    emit_row(out, make_row(nf.factors[i], nf.factors[t + 1 + i], colv(i)));
  for (int k = 0; k < t; ++k)
    out.push_back(Block::kite(t + 1 + k, colv(t), k, colv(k)));

  const int tn = mon_n4_triangles(n);
  const int tw = (w >= 4) ? mon_n4_triangles(w) : 1;
  MonOptions wopts;
  wopts.triangle_target = (tw == 0 && tn == 3) ? 4 : tw;
  wopts.vertex_in_triangle = w - 1;
  wopts.seed = seed;
  Blocks wpart = mon4_shifted(w, v, wopts);

  // Convert the triangle holding a_{w-1} = a_t with the pendant {t, a_t}.
  bool converted = false;
  for (Block& b : wpart) {
    if (converted || b.shape() != Shape::Triangle || !b.contains_vertex(colv(t))) continue;
    std::vector<Vertex> vs = b.vertices();
    std::erase(vs, colv(t));
    b = Block::kite(vs[0], vs[1], colv(t), t);
    converted = true;
  }
  if (!converted)
    throw std::runtime_error("build_c2 odd delegate: W-plan lacks a triangle at the last column");
  append(out, std::move(wpart));
  return out;
}

// v <= 2w: build for the largest first period the order supports.
Blocks delegate_small_v(int n, unsigned seed) {
  switch (n % 3) {
    case 0:  return scheme_a(n / 3, seed);
    case 1:  return scheme_b((n + 2) / 3, seed);
    default: return odd_delegate((n + 1) / 3, seed);
  }
}

// ---------------------------------------------------------------------------
// v = 2w+2: 1-factorization of K_v minus a spanning forbidden graph R; rows
// on columns a_1..a_{w-1}; R's components are covered with gadgets that use
// all of column a_0.
Blocks variant_2w2(int v, int w, unsigned seed) {
  if (w == 2) return bespoke_n8_v6();
  const auto colv = [v](int j) { return v + j; };
  std::vector<Edge> r = forbidden_spanning_graph(v);

  Blocks out;
  if (w >= 2) {  // w = 1 has no rows, and K_4 minus its K4 has no factors
    FactorSet of = one_factorization_avoiding(v, r, seed);
    for (int i = 1; i < w; ++i)
      emit_row(out, make_row(of.factors[i - 1], of.factors[w - 2 + i], colv(i)));
  }

  const int k4s = (v % 4 == 0) ? v / 4 : (v - 6) / 4;
  for (int k = 0; k < k4s; ++k) {
    Vertex p = 4 * k, q = 4 * k + 1, rr = 4 * k + 2, s = 4 * k + 3;
    out.push_back(Block::kite(colv(0), q, p, rr));
    out.push_back(Block::kite(colv(0), rr, s, p));
    out.push_back(Block::path3(rr, q, s));
  }
  if (v % 4 == 2) {
    Vertex p = v - 6, q = v - 5, rr = v - 4, s = v - 3, tt = v - 2, u = v - 1;
    out.push_back(Block::kite(colv(0), s, p, tt));
    out.push_back(Block::kite(colv(0), q, tt, rr));
    out.push_back(Block::kite(colv(0), rr, u, p));
    out.push_back(Block::path3(rr, s, q));
    out.push_back(Block::single(q, u));
  }
  append(out, mon4_shifted(w, v));
  return out;
}

// v >= 2w+4 even. Returns blocks; *repaired reports whether the w=2 P2/P2
// repair rewrote the leftover (it changes drop cost, so it runs in both
// modes).
Blocks even_main(int v, int w, unsigned seed) {
  const auto colv = [v](int j) { return v + j; };
  FactorSet of = one_factorization_hamilton_tail(v, seed);

  Blocks out;
  std::vector<std::vector<RowKite>> rows(w);
  for (int i = 0; i < w; ++i)
    rows[i] = make_row(of.factors[i], of.factors[w + i], colv(i));

  std::vector<Edge> leftover;
  for (size_t f = 2 * w; f < of.factors.size(); ++f)
    leftover.insert(leftover.end(), of.factors[f].begin(), of.factors[f].end());
  Blocks trees = p3_partition(leftover);

  Blocks wpart = mon4_shifted(w, v);

  if (w == 2 && v % 4 == 2) {
    // Replace the leftover P2 and the W P2 by one P3 and an apex pendant.
    auto p2 = std::find_if(trees.begin(), trees.end(),
                           [](const Block& b) { return b.edges.size() == 1; });
    if (p2 == trees.end())
      throw std::runtime_error("build_c2 even scheme: expected leftover P2 missing");
    Vertex x = p2->edges[0].a, y = p2->edges[0].b;
    Edge got = steal_pendant(out, rows[0], x, colv(1), "build_c2 even scheme");
    Vertex z = (got.a == x) ? got.b : got.a;
    *p2 = Block::path3(y, x, z);
    wpart.clear();  // the W edge {a_0,a_1} became the re-kite pendant
  }

  for (const auto& row : rows) emit_row(out, row);
  append(out, std::move(trees));
  append(out, std::move(wpart));
  return out;
}

// v odd, v >= 2w+1, t = (v-1)/2 >= 3.
Blocks odd_main(int v, int w, unsigned seed) {
  const int t = (v - 1) / 2;
  const auto colv = [v](int j) { return v + j; };
  FactorSet nf = near_one_factorization_minus_cycle(v, t, seed);

  Blocks out;
  for (int i = 0; i < w; ++i)
    emit_row(out, make_row(nf.factors[i], nf.factors[w + i], colv(i)));
  for (int h = 0; h + w < t; ++h) {
    std::vector<Edge> pair_union = nf.factors[2 * w + 2 * h];
    const std::vector<Edge>& second = nf.factors[2 * w + 2 * h + 1];
    pair_union.insert(pair_union.end(), second.begin(), second.end());
    append(out, p3_components(pair_union));
  }

  if (w == 3) {
    // All three W-edges plus the diagonal {1, a_2} form one kite; the two
    // diagonals at vertex 0 extend cycle paths instead.
    out.push_back(Block::kite(colv(0), colv(1), colv(2), 1));
    out.push_back(Block::path4(colv(0), 0, 1, 2));
    if (t == 3) {
      out.push_back(Block::path3(colv(1), 0, 2));
    } else {
      out.push_back(Block::path4(colv(1), 0, t - 1, t - 2));
      std::vector<Vertex> seq;
      for (int x = 2; x <= t - 2; ++x) seq.push_back(x);
      append(out, path_p3s(seq));
    }
    return out;
  }

  for (int i = 0; 2 * i + 1 < w; ++i)
    out.push_back(Block::kite(colv(2 * i), colv(2 * i + 1), i, i + 1));

  std::vector<Vertex> seq;
  for (int x = w / 2; x < t; ++x) seq.push_back(x);
  seq.push_back(0);
  if (w % 2 == 1 && w >= 5) {
    int mdiag = (w - 1) / 2;
    out.push_back(Block::path4(colv(w - 1), mdiag, mdiag + 1, mdiag + 2));
    seq.erase(seq.begin(), seq.begin() + 2);
  } else if (w == 1) {
    out.push_back(Block::path4(colv(0), 0, 1, 2));
    seq.erase(seq.begin(), seq.begin() + 2);
  }
  append(out, path_p3s(seq));

  if (w >= 4) append(out, shifted(cocktail_partition(w), w, v));
  return out;
}

// ---------------------------------------------------------------------------

// Merge the one V-side P2 with one W-internal triangle (or P3) so the pair
// shares a wavelength; everything else rides alone.
Decomposition assemble_merged(const ProblemInstance& inst, Blocks blocks, const char* who) {
  int p2 = -1, partner = -1;
  for (size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].edges.size() == 1) { p2 = static_cast<int>(i); break; }
  }
  auto all_w = [&](const Block& b) {
    for (Vertex x : b.vertices())
      if (inst.in_v(x)) return false;
    return true;
  };
  for (int pass = 0; pass < 2 && partner < 0; ++pass) {
    Shape want = (pass == 0) ? Shape::Triangle : Shape::P3;
    for (size_t i = 0; i < blocks.size(); ++i) {
      if (blocks[i].shape() == want && all_w(blocks[i])) { partner = static_cast<int>(i); break; }
    }
  }
  if (p2 < 0 || partner < 0)
    throw std::runtime_error(std::string(who) + ": wavelength merge partners not found");
  Decomposition d;
  d.instance = inst;
  d.wavelengths.push_back(Wavelength{{blocks[p2], blocks[partner]}});
  for (size_t i = 0; i < blocks.size(); ++i)
    if (static_cast<int>(i) != p2 && static_cast<int>(i) != partner)
      d.wavelengths.push_back(Wavelength{{blocks[i]}});
  return d;
}

}  // namespace

Decomposition build_c2(const BuildRequest& req) {
  const ProblemInstance& inst = req.instance;
  if (inst.cprime != 2) throw std::invalid_argument("build_c2: instance.cprime must be 2");
  if (!inst.valid()) throw std::invalid_argument("build_c2: invalid instance");
  if (inst.n <= 4) throw std::invalid_argument("build_c2: requires n >= 5");

  const int n = inst.n, v = inst.v, w = inst.w();
  Blocks blocks;
  bool merge = false;

  if (w == 0) {
    blocks = p3_partition(complete_edges(n));
  } else if (v <= 2) {
    blocks = build_mon_n4(n, MonOptions{-1, -1, req.seed});
  } else if (v <= 2 * w) {
    blocks = delegate_small_v(n, req.seed);
  } else if (v % 2 == 0) {
    if (v == 2 * w + 2) {
      blocks = variant_2w2(v, w, req.seed);
      merge = req.optimize_wavelengths && w % 2 == 0 && w >= 4 &&
              (binom2(w) % 4 == 1 || binom2(w) % 4 == 2);
    } else {
      blocks = even_main(v, w, req.seed);
      merge = req.optimize_wavelengths && v % 4 == 2 &&
              (w == 4 || (w >= 5 && (binom2(w) % 4 == 1 || binom2(w) % 4 == 2)));
    }
  } else {
    const int t = (v - 1) / 2;
    if (t == 2) {
      blocks = (w == 1) ? bespoke_n6_v5() : bespoke_n7_v5();
    } else {
      blocks = odd_main(v, w, req.seed);
      merge = req.optimize_wavelengths && v % 4 == 1 && w % 4 == 3 && w != 3;
    }
  }

  if (merge) return assemble_merged(inst, std::move(blocks), "build_c2");
  return make_decomposition(n, v, 2, blocks);
}

}  // namespace groom
