#include <stdexcept>
#include <string>
#include <vector>

#include "groom/build.hpp"
#include "groom/designkit.hpp"
#include "groom/formulas.hpp"

namespace groom {

namespace {

[[noreturn]] void precondition_fail(const std::string& what) {
  throw std::invalid_argument(what);
}

// ---------------------------------------------------------------------------
// Class gadgets for the balanced case v <= w. Local labels: the class
// vertices are 0..l-1, their partner columns are l..2l-1 (gadget A, equal
// sides) plus one shared extra column 2l (gadget B, odd order).
// Every block carries at most one edge inside {0..l-1}.
// ---------------------------------------------------------------------------

std::vector<Block> gadget_equal(int l) {
  const Vertex a0 = l, a1 = l + 1, a2 = l + 2, a3 = l + 3, a4 = l + 4, a5 = l + 5;
  switch (l) {
    case 3:
      return {Block::kite(0, a0, 1, a2), Block::kite(1, a1, 2, a0), Block::kite(2, a2, 0, a1),
              Block::triangle(a0, a1, a2)};
    case 4:
      return {Block::kite(1, 2, a3, a0),  Block::kite(0, 3, a2, a1), Block::kite(a1, 1, 3, a0),
              Block::kite(a0, a2, 1, 0),  Block::kite(a0, a1, 2, 0), Block::kite(a1, a3, 0, a0),
              Block::cycle4(2, 3, a3, a2)};
    case 5:
      return {Block::kite(1, 2, a3, a0),     Block::kite(0, 3, a2, a1),
              Block::kite(a1, 1, 3, a0),     Block::kite(a0, a2, 1, 0),
              Block::kite(a0, a1, 2, 0),     Block::kite(a1, a3, 0, a0),
              Block::kite(2, a2, 4, a4),     Block::triangle(3, a3, 4),
              Block::triangle(a2, a3, a4),   Block::triangle(2, 3, a4),
              Block::cycle4(0, 4, a0, a4),   Block::cycle4(1, 4, a1, a4)};
    case 6:
      return {Block::kite(1, 2, a3, a0),   Block::kite(0, 3, a2, a1), Block::kite(a1, 1, 3, a0),
              Block::kite(a0, a2, 1, 0),   Block::kite(a0, a1, 2, 0), Block::kite(a1, a3, 0, a0),
              Block::kite(4, 5, a5, a4),   Block::kite(2, a2, 4, a4), Block::kite(2, 3, a4, 5),
              Block::triangle(3, 4, a3),   Block::triangle(a2, a3, a4),
              Block::cycle4(0, 4, a0, a4), Block::cycle4(1, 4, a1, a4),
              Block::cycle4(0, 5, a0, a5), Block::cycle4(1, 5, a1, a5),
              Block::cycle4(2, 5, a2, a5), Block::cycle4(3, 5, a3, a5)};
    default:
      throw std::runtime_error("build_c1: equal-side class gadget has no order " +
                               std::to_string(l));
  }
}

std::vector<Block> gadget_extra(int l) {
  const Vertex a0 = l, a1 = l + 1, a2 = l + 2, a3 = l + 3, a4 = l + 4;
  switch (l) {
    case 1:
      return {Block::triangle(0, a0, a1)};
    case 2:
      return {Block::triangle(0, a0, a1), Block::triangle(1, a1, a2),
              Block::cycle4(0, 1, a0, a2)};
    case 3:
      return {Block::triangle(0, a0, a1),  Block::triangle(1, a1, a2),
              Block::triangle(2, a2, a3),  Block::cycle4(0, 1, a0, a2),
              Block::cycle4(0, 2, a0, a3), Block::cycle4(1, 2, a1, a3)};
    case 4:
      return {Block::kite(0, 1, a0, a3),  Block::kite(0, 2, a1, a3), Block::kite(0, 3, a2, a3),
              Block::kite(2, 3, a0, a4),  Block::kite(1, 3, a1, a4), Block::kite(1, 2, a3, 3),
              Block::kite(0, a3, a4, 3),  Block::kite(1, a2, a4, 2), Block::kite(a0, a1, a2, 2)};
    default:
      throw std::runtime_error("build_c1: odd-order class gadget has no order " +
                               std::to_string(l));
  }
}

// Balanced design on n vertices: valid for every V of size at most floor(n/2),
// cost binom(n,2), one block per wavelength, ceil(binom(n,2)/4) blocks.
// The half set {0..floor(n/2)-1} splits into classes; vertex x is paired with
// column floor(n/2)+x; cross-class pairs ride 4-cycles and classes are
// finished by the gadgets above (odd n shares the last column n-1).
std::vector<Block> balanced_blocks(int n) {
  const int half = n / 2;
  int tail;
  if (n % 2 == 0) {
    static constexpr int tail_even[4] = {0, 5, 6, 3};
    tail = tail_even[half % 4];
  } else {
    tail = half % 4;
  }
  const int quads = (half - tail) / 4;
  std::vector<std::vector<Vertex>> classes;
  for (int c = 0; c < quads; ++c) classes.push_back({4 * c, 4 * c + 1, 4 * c + 2, 4 * c + 3});
  if (tail > 0) {
    std::vector<Vertex> last;
    for (int i = 0; i < tail; ++i) last.push_back(4 * quads + i);
    classes.push_back(std::move(last));
  }
  std::vector<int> class_of(half, -1);
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (Vertex x : classes[c]) class_of[x] = static_cast<int>(c);

  std::vector<Block> out;
  for (Vertex x = 0; x < half; ++x)
    for (Vertex y = x + 1; y < half; ++y)
      if (class_of[x] != class_of[y]) out.push_back(Block::cycle4(x, y, half + x, half + y));

  for (const std::vector<Vertex>& cls : classes) {
    const int l = static_cast<int>(cls.size());
    std::vector<Vertex> map;
    for (Vertex x : cls) map.push_back(x);
    for (Vertex x : cls) map.push_back(half + x);
    std::vector<Block> local;
    if (n % 2 == 0) {
      local = gadget_equal(l);
    } else {
      map.push_back(n - 1);
      local = gadget_extra(l);
    }
    for (Block& b : relabel_blocks(local, map)) out.push_back(std::move(b));
  }
  return out;
}

// v = w+1: triangles on consecutive pairs plus 4-cycles; every block holds
// exactly one edge inside V.
std::vector<Block> successor_blocks(int v) {
  std::vector<Block> out;
  const auto col = [v](Vertex j) { return v + j; };
  for (Vertex i = 0; i + 1 < v; ++i) out.push_back(Block::triangle(i, i + 1, col(i)));
  for (Vertex i = 0; i + 1 < v; ++i)
    for (Vertex j = i + 1; j + 1 < v; ++j)
      out.push_back(Block::cycle4(i, j + 1, col(i), col(j)));
  return out;
}

// v >= w+2: factorization scheme. Row i < w turns factor i's edges into
// triangles at column a_i; kites absorb the edges among columns; leftover
// factors become bare edges.
std::vector<Block> factorization_blocks(int v, int w, unsigned seed) {
  const auto col = [v](Vertex j) { return v + j; };
  std::vector<Block> out;
  (void)seed;

  // Factor list, pendant bookkeeping, and the per-row triangle edge lists.
  std::vector<std::vector<Edge>> rows;        // rows[i] = factor used at column i (i < w)
  std::vector<Edge> leftovers;                // edges that stay bare
  if (v % 2 == 0) {
    FactorSet fs = one_factorization(v);
    for (int i = 0; i < w; ++i) rows.push_back(fs.factors.at(i));
    for (int i = w; i < v - 1; ++i)
      for (const Edge& e : fs.factors[i]) leftovers.push_back(e);
  } else {
    // Near-1-factorization with a designated factor of consecutive pairs;
    // factor i misses vertex i, and factor v-1 is exactly that matching.
    std::vector<Edge> pairs;
    for (Vertex h = 0; 2 * h + 1 < v; ++h) pairs.push_back(Edge{2 * h, 2 * h + 1});
    FactorSet fs = near_one_factorization_with_factor(v, pairs);
    for (int i = 0; i < w; ++i) rows.push_back(fs.factors.at(i));
    for (int i = w; i < v - 1; ++i)
      for (const Edge& e : fs.factors[i]) leftovers.push_back(e);
    // 4-cycles over the designated factor: each covers one matching edge, the
    // two diagonal cross edges of its rows, and one column edge.
    for (Vertex h = 0; h < w / 2; ++h)
      out.push_back(Block::cycle4(2 * h, 2 * h + 1, col(2 * h + 1), col(2 * h)));
    for (Vertex h = w / 2; 2 * h + 1 < v; ++h)
      leftovers.push_back(Edge{2 * h, 2 * h + 1});
  }

  // Column edges {a_i, a_(i+j) mod w} hung as pendants off row i, skipping
  // pairs already inside the 4-cycles (odd v) or counted twice (even split).
  std::vector<std::vector<Vertex>> pendant_cols(std::max(w, 0));
  for (int i = 0; i < w; ++i) {
    for (int j = 1; j <= w / 2; ++j) {
      if (w % 2 == 0 && j == w / 2 && i >= w / 2) continue;  // mirror duplicate
      if (v % 2 == 1 && j == 1 && i % 2 == 0 && i + 1 < 2 * (w / 2)) continue;  // in a 4-cycle
      pendant_cols[i].push_back(col((i + j) % w));
    }
  }
  // Odd v, odd w: the cross edge {w-1, a_(w-1)} is not reachable by any
  // triangle of its own row (the factor misses w-1); hang it off the column.
  const bool diagonal_tail = (v % 2 == 1) && (w % 2 == 1) && w >= 1;

  for (int i = 0; i < w; ++i) {
    std::size_t next_pendant = 0;
    bool tail_done = false;
    for (const Edge& e : rows[i]) {
      if (i == w - 1 && diagonal_tail && !tail_done) {
        out.push_back(Block::kite(e.a, e.b, col(i), w - 1));
        tail_done = true;
      } else if (next_pendant < pendant_cols[i].size()) {
        out.push_back(Block::kite(e.a, e.b, col(i), pendant_cols[i][next_pendant++]));
      } else {
        out.push_back(Block::triangle(e.a, e.b, col(i)));
      }
    }
    if (next_pendant != pendant_cols[i].size())
      throw std::runtime_error("build_c1: factorization row too short for column pendants");
    if (i == w - 1 && diagonal_tail && !tail_done)
      throw std::runtime_error("build_c1: no triangle available for the diagonal cross edge");
  }
  for (const Edge& e : leftovers) out.push_back(Block::single(e.a, e.b));
  return out;
}

}  // namespace

Decomposition build_c1(const BuildRequest& req) {
  const ProblemInstance& inst = req.instance;
  if (inst.cprime != 1) precondition_fail("build_c1: instance cprime must be 1");
  if (!inst.valid()) precondition_fail("build_c1: malformed instance");
  if (inst.n <= 4) precondition_fail("build_c1: order below 5 is out of scope");
  const int n = inst.n, v = inst.v, w = inst.w();
  std::vector<Block> blocks;
  if (v <= w)
    blocks = balanced_blocks(n);
  else if (v == w + 1)
    blocks = successor_blocks(v);
  else
    blocks = factorization_blocks(v, w, req.seed);
  return make_decomposition(n, v, 1, blocks);
}

}  // namespace groom
