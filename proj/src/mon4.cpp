#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "groom/designkit.hpp"
#include "groom/formulas.hpp"

namespace groom {

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

struct Engine {
  int points;
  int v_count;
  int vcap;
  long long budget;
  long long nodes = 0;
  std::mt19937 rng;
  std::vector<std::vector<char>> free_;  // free_[a][b]: edge present and uncovered
  std::vector<Edge> order;               // canonical scan order
  std::vector<Block> stack;
  int covered = 0;
  int total = 0;
  int tri_left = 0;

  bool edge_free(Vertex a, Vertex b) const { return free_[a][b]; }

  int v_internal(const Block& b) const {
    if (v_count <= 0) return 0;
    int k = 0;
    for (const Edge& e : b.edges)
      if (e.a < v_count && e.b < v_count) ++k;
    return k;
  }

  void mark(const Block& b, bool value) {
    for (const Edge& e : b.edges) {
      free_[e.a][e.b] = value;
      free_[e.b][e.a] = value;
    }
  }

  // Every block covering the lexicographically first free edge {a,b}.
  std::vector<Block> candidates(Vertex a, Vertex b) {
    std::vector<Block> out;
    if (tri_left > 0) {
      for (Vertex c = 0; c < points; ++c)
        if (c != a && c != b && edge_free(a, c) && edge_free(b, c))
          out.push_back(Block::triangle(a, b, c));
    }
    // {a,b} as a triangle edge of a kite, pendant hung from any corner.
    for (Vertex c = 0; c < points; ++c) {
      if (c == a || c == b || !edge_free(a, c) || !edge_free(b, c)) continue;
      for (Vertex d = 0; d < points; ++d) {
        if (d == a || d == b || d == c) continue;
        if (edge_free(c, d)) out.push_back(Block::kite(a, b, c, d));
        if (edge_free(a, d)) out.push_back(Block::kite(b, c, a, d));
        if (edge_free(b, d)) out.push_back(Block::kite(a, c, b, d));
      }
    }
    // {a,b} as the pendant of a kite whose triangle sits at a or at b.
    for (Vertex x = 0; x < points; ++x) {
      if (x == a || x == b) continue;
      for (Vertex y = x + 1; y < points; ++y) {
        if (y == a || y == b || !edge_free(x, y)) continue;
        if (edge_free(a, x) && edge_free(a, y)) out.push_back(Block::kite(x, y, a, b));
        if (edge_free(b, x) && edge_free(b, y)) out.push_back(Block::kite(x, y, b, a));
      }
    }
    // 4-cycles a-b-c-d-a.
    for (Vertex c = 0; c < points; ++c) {
      if (c == a || c == b || !edge_free(b, c)) continue;
      for (Vertex d = 0; d < points; ++d) {
        if (d == a || d == b || d == c) continue;
        if (edge_free(a, d) && edge_free(c, d)) out.push_back(Block::cycle4(a, b, c, d));
      }
    }
    std::shuffle(out.begin(), out.end(), rng);
    return out;
  }

  bool dfs(std::size_t scan_from) {
    if (++nodes > budget) return false;
    int remaining = total - covered;
    if (remaining == 0) return tri_left == 0;
    long long slack = remaining - 3LL * tri_left;
    if (slack < 0 || slack % 4 != 0) return false;
    std::size_t i = scan_from;
    while (i < order.size() && !edge_free(order[i].a, order[i].b)) ++i;
    if (i == order.size()) return false;  // unreachable when remaining > 0
    Vertex a = order[i].a, b = order[i].b;
    for (Block& cand : candidates(a, b)) {
      if (v_internal(cand) > vcap) continue;
      bool is_tri = cand.shape() == Shape::Triangle;
      if (is_tri && tri_left == 0) continue;
      mark(cand, false);
      covered += static_cast<int>(cand.edges.size());
      if (is_tri) --tri_left;
      stack.push_back(cand);
      if (dfs(i + 1)) return true;
      if (nodes > budget) return false;  // abandon cleanup-free: caller discards
      stack.pop_back();
      if (is_tri) ++tri_left;
      covered -= static_cast<int>(cand.edges.size());
      mark(cand, true);
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<Block>> shape_decompose(int points, const std::vector<Edge>& edges,
                                                  const ShapeTarget& target, unsigned seed) {
  if (points < 0) fail("shape_decompose: negative point count");
  long long slack = static_cast<long long>(edges.size()) - 3LL * target.triangles;
  if (target.triangles < 0 || slack < 0 || slack % 4 != 0) return std::nullopt;
  Engine eng;
  eng.points = points;
  eng.v_count = target.v_count;
  eng.vcap = target.vcap;
  eng.budget = target.node_budget;
  eng.rng.seed(seed * 2654435761u + 97531u);
  eng.free_.assign(points, std::vector<char>(points, 0));
  eng.order = edges;
  std::sort(eng.order.begin(), eng.order.end());
  for (std::size_t i = 0; i + 1 < eng.order.size(); ++i)
    if (!(eng.order[i] < eng.order[i + 1])) fail("shape_decompose: duplicate edge");
  for (const Edge& e : eng.order) {
    if (e.a < 0 || e.b >= points) fail("shape_decompose: edge endpoint out of range");
    eng.free_[e.a][e.b] = eng.free_[e.b][e.a] = 1;
  }
  eng.total = static_cast<int>(edges.size());
  eng.tri_left = target.triangles;
  if (!eng.dfs(0)) return std::nullopt;
  return eng.stack;
}

namespace {

std::vector<Edge> complete_edges(int n) {
  std::vector<Edge> es;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) es.push_back(Edge{a, b});
  return es;
}

// Decompose K_m (5 <= m <= 12) into kites/4-cycles and exactly `tri` triangles.
std::vector<Block> engine_complete(int m, int tri, unsigned seed) {
  const std::vector<Edge> es = complete_edges(m);
  for (unsigned attempt = 0; attempt < 120; ++attempt) {
    ShapeTarget t;
    t.triangles = tri;
    t.node_budget = 400'000 + 200'000LL * attempt;
    if (auto got = shape_decompose(m, es, t, seed + attempt * 31u)) return *got;
  }
  fail("build_mon_n4: base decomposition search exhausted (m=" + std::to_string(m) + ")");
}

// Triangle-free decomposition of the complete graph on an explicit vertex set.
std::vector<Block> zero_triangle_gadget(const std::vector<Vertex>& verts, unsigned seed) {
  static std::map<std::pair<int, unsigned>, std::vector<Block>> cache;
  int m = static_cast<int>(verts.size());
  auto key = std::make_pair(m, seed);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, engine_complete(m, 0, seed)).first;
  return relabel_blocks(it->second, verts);
}

std::vector<Block> mon4_impl(int n, int tt, unsigned seed);

// Fan of 4-cycles covering rows {0..rows-1} x columns {c0..c0+2j_count-1},
// pairing rows (2h,2h+1) and columns (c0+2j,c0+2j+1). rows must be even.
void add_cycle_fan(std::vector<Block>& out, int rows, Vertex c0, int j_count) {
  for (int j = 0; j < j_count; ++j)
    for (int h = 0; 2 * h + 1 < rows; ++h)
      out.push_back(Block::cycle4(2 * h, c0 + 2 * j, 2 * h + 1, c0 + 2 * j + 1));
}

std::vector<Block> mon4_four_triangles(int n, unsigned seed) {
  if (n == 8) {
    // Hand census: cost 28, four triangles, eight blocks.
    return {Block::kite(1, 2, 0, 4),     Block::kite(0, 3, 6, 7),
            Block::kite(0, 7, 5, 2),     Block::kite(4, 5, 3, 1),
            Block::triangle(1, 4, 7),    Block::triangle(1, 5, 6),
            Block::triangle(2, 3, 7),    Block::triangle(2, 4, 6)};
  }
  if (n % 8 == 1) {
    std::vector<Block> out = mon4_impl(n - 2, 3, seed);
    out.push_back(Block::triangle(n - 3, n - 2, n - 1));
    for (int h = 0; 2 * h + 1 < n - 3; ++h)
      out.push_back(Block::cycle4(2 * h, n - 2, 2 * h + 1, n - 1));
    return out;
  }
  // n = 0 mod 8, n >= 16.
  std::vector<Block> out = mon4_impl(n - 8, 4, seed);
  add_cycle_fan(out, n - 8, n - 8, 4);
  std::vector<Vertex> tail(8);
  for (int i = 0; i < 8; ++i) tail[i] = n - 8 + i;
  for (Block& b : zero_triangle_gadget(tail, seed)) out.push_back(std::move(b));
  return out;
}

std::vector<Block> mon4_impl(int n, int tt, unsigned seed) {
  if (n <= 1) return {};
  if (n == 2) return {Block::single(0, 1)};
  if (n == 3) return {Block::triangle(0, 1, 2)};
  if (n == 4) return {Block::kite(0, 1, 2, 3), Block::path3(0, 3, 1)};
  if (tt == 4) return mon4_four_triangles(n, seed);
  if (n <= 12) return engine_complete(n, tt, seed);
  const int m = n - 8;
  std::vector<Block> out = mon4_impl(m, tt, seed);
  if (m % 2 == 0) {
    add_cycle_fan(out, m, m, 4);
    std::vector<Vertex> tail(8);
    for (int i = 0; i < 8; ++i) tail[i] = m + i;
    for (Block& b : zero_triangle_gadget(tail, seed)) out.push_back(std::move(b));
  } else {
    add_cycle_fan(out, m - 1, m, 4);
    std::vector<Vertex> tail(9);
    for (int i = 0; i < 9; ++i) tail[i] = m - 1 + i;
    for (Block& b : zero_triangle_gadget(tail, seed)) out.push_back(std::move(b));
  }
  return out;
}

}  // namespace

std::vector<Block> build_mon_n4(int n, const MonOptions& opts) {
  if (n < 0) fail("build_mon_n4: negative order");
  const int canonical = n >= 4 ? mon_n4_triangles(n) : (n == 3 ? 1 : 0);
  int tt = opts.triangle_target;
  if (tt < 0) tt = canonical;
  if (tt != canonical) {
    if (!(tt == 4 && canonical == 0 && n >= 8 && (n % 8 == 0 || n % 8 == 1)))
      fail("build_mon_n4: unrealizable triangle target " + std::to_string(tt) +
           " for n=" + std::to_string(n));
  }
  std::vector<Block> out = mon4_impl(n, tt, opts.seed);
  if (opts.vertex_in_triangle >= 0) {
    if (opts.vertex_in_triangle >= n) fail("build_mon_n4: vertex_in_triangle out of range");
    if (tt == 0) fail("build_mon_n4: no triangle available to host the requested vertex");
    Vertex want = opts.vertex_in_triangle;
    bool ok = false;
    Vertex swap_with = -1;
    for (const Block& b : out) {
      if (b.shape() != Shape::Triangle) continue;
      if (b.contains_vertex(want)) {
        ok = true;
        break;
      }
      if (swap_with < 0) swap_with = b.vertices().front();
    }
    if (!ok) {
      std::vector<Vertex> perm(n);
      for (Vertex i = 0; i < n; ++i) perm[i] = i;
      std::swap(perm[want], perm[swap_with]);
      out = relabel_blocks(out, perm);
    }
  }
  return out;
}

}  // namespace groom
