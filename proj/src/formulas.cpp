#include "groom/formulas.hpp"

#include <numeric>

namespace groom {

namespace {

long long ceil_div(long long a, long long b) {
  // b > 0
  return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

}  // namespace

long long binom2(long long n) { return n < 2 ? 0 : n * (n - 1) / 2; }

long long cost_on_n4(long long n) {
  if (n < 2) throw std::invalid_argument("cost_on_n4: n < 2");
  if (n == 2) return 2;
  if (n == 3) return 3;
  if (n == 4) return 7;  // K_4 admits no ratio-1 decomposition
  return binom2(n);
}

int mon_n4_triangles(long long n) {
  if (n == 4) return 0;  // realized by kite + P3
  if (n < 4) throw std::invalid_argument("mon_n4_triangles: n < 4");
  switch (n % 8) {
    case 0: case 1: return 0;
    case 3: case 6: return 1;
    case 4: case 5: return 2;
    default: return 3;  // n = 2,7 mod 8
  }
}

MonProfile mon_n4_profile(long long n) {
  if (n < 4) throw std::invalid_argument("mon_n4_profile: n < 4");
  if (n == 4) return {2, 0};
  return {ceil_div(binom2(n), 4), mon_n4_triangles(n)};
}

long long cost_two_period(int n, int v, int cprime) {
  if (n <= 4) throw std::invalid_argument("cost_two_period: n <= 4 unsupported");
  if (v < 0 || v > n) throw std::invalid_argument("cost_two_period: v out of range");
  const long long w = n - v;
  const long long A = binom2(n);
  switch (cprime) {
    case 1: {
      if (v <= w + 1) return A;
      return A + binom2(v) - (v * w) / 2;
    }
    case 2: {
      if (v <= 2 * w) return A;
      if (v % 2 == 0) {
        // delta per the even-v theorem: 1 iff w=4, or w=2 and v=0 (mod 4)
        long long delta = (w == 4 || (w == 2 && v % 4 == 0)) ? 1 : 0;
        return A + ceil_div(binom2(v), 2) - (v * w) / 2 + delta;
      }
      long long delta = (w == 3 && v % 4 == 3) ? 1 : 0;
      return A + ceil_div(binom2(v) - v * w + ceil_div(w, 2), 2) + delta;
    }
    case 3: {
      if (w == 0) throw std::invalid_argument("cost_two_period: cprime=3 requires w >= 1");
      return A;
    }
    default:
      throw std::invalid_argument("cost_two_period: cprime must be 1, 2, or 3");
  }
}

long long neutral_edge_bound(int v, int w, int cprime) {
  if (v < 0 || w < 0) throw std::invalid_argument("neutral_edge_bound: negative argument");
  const long long vw = (long long)v * w;
  if (cprime == 1) return vw / 2;
  if (cprime == 2) {
    if (v % 2 == 1) return vw - ceil_div(w, 2);
    return vw;
  }
  throw std::invalid_argument("neutral_edge_bound: cprime must be 1 or 2");
}

TriangleBound triangle_lower_bound(int v, int w) {
  if (w < 1) throw std::invalid_argument("triangle_lower_bound: w >= 1 required");
  if (v + w < 5) throw std::invalid_argument("triangle_lower_bound: v+w >= 5 required");
  const long long n = v + w;
  TriangleBound tb;
  // six_l = 6*L(v,w)
  long long six_l;
  if (v % 2 == 0) {
    six_l = (long long)v * (v + 3) - 6LL * v * w;
  } else if (v % 6 == 5) {
    six_l = (long long)v * (v - 1) + 16 - 6LL * v * w;
  } else {  // v = 1,3 mod 6
    six_l = (long long)v * (v - 1) - 6LL * v * w;
  }
  long long g = std::gcd(six_l < 0 ? -six_l : six_l, 6LL);
  if (g == 0) g = 6;
  tb.l_num = six_l / g;
  tb.l_den = 6 / g;
  tb.l_ceil = ceil_div(six_l, 6);
  tb.residue = (int)((3 * binom2(n)) % 4);
  long long m = tb.l_ceil > 0 ? tb.l_ceil : 0;
  tb.delta_min = m + (((tb.residue - m) % 4) + 4) % 4;
  tb.slack_ceiling = tb.l_ceil + 3 > 3 ? tb.l_ceil + 3 : 3;
  return tb;
}

long long wavecost_mon(int n, int v, int cprime) {
  if (n < 5) throw std::invalid_argument("wavecost_mon: n >= 5 required");
  if (v < 0 || v > n) throw std::invalid_argument("wavecost_mon: v out of range");
  const long long w = n - v;
  switch (cprime) {
    case 1:
      if (v <= w) return mon_n4_profile(n).wavecost;
      return binom2(v);
    case 2:
      if (v <= 2 * w) return mon_n4_profile(n).wavecost;
      if (v % 2 == 0) return ceil_div(2 * binom2(v) + binom2(w), 4);
      return ceil_div(4 * binom2(v) + w * w - 1, 8);
    case 3: {
      if (w == 0) throw std::invalid_argument("wavecost_mon: cprime=3 requires w >= 1");
      TriangleBound tb = triangle_lower_bound(v, (int)w);
      return (binom2(n) + tb.delta_min) / 4;
    }
    default:
      throw std::invalid_argument("wavecost_mon: cprime must be 1, 2, or 3");
  }
}

int mu3(int v) {
  if (v < 4) throw std::invalid_argument("mu3: v >= 4 required");
  switch (v) {
    case 4: return 1;
    case 6: return 1;
    case 9: return 1;
    case 10: return 2;
    default: break;
  }
  const int t = v / 6;
  switch (v % 6) {
    case 0: return 1 + t;
    case 1: return t;
    case 2: return 1 + t;
    case 3: return 1 + t;
    case 4: return 2 + t;
    default: return 1 + t;  // v = 5 mod 6
  }
}

}  // namespace groom
