#pragma once
// Closed-form optima and lower bounds: baseline single-period drop cost and
// wavelength profile, two-period drop-cost formulas for C'=1,2,3, the neutral
// edge bound, the triangle lower bound delta_min for C'=3, MON wavelength
// counts, and the mu3 threshold.
#include <stdexcept>

namespace groom {

long long binom2(long long n);

// Drop cost of a cost-optimal grooming of K_n with capacity 4 (single period).
long long cost_on_n4(long long n);

struct MonProfile {
  long long wavecost = 0;
  int triangles = 0;
};
// Wavelength count and triangle count of a wavelength-minimal cost-optimal
// grooming of K_n (capacity 4).
MonProfile mon_n4_profile(long long n);

// t(n): triangle count above; defined for n >= 5 by n mod 8, plus n=4 -> 0.
int mon_n4_triangles(long long n);

// Minimum drop cost of a two-period grooming N(n,v;4,cprime).
long long cost_two_period(int n, int v, int cprime);

// Upper bound on neutral edges (cprime in {1,2} only).
long long neutral_edge_bound(int v, int w, int cprime);

struct TriangleBound {
  long long l_num = 0;   // L(v,w) = l_num / l_den, reduced
  long long l_den = 1;
  long long l_ceil = 0;  // ceil(L)
  long long delta_min = 0;
  int residue = 0;       // 3*binom(v+w,2) mod 4
  long long slack_ceiling = 0;  // max(3, ceil(L)+3)
};
// Minimum number of triangles over all cost-optimal N(v+w,v;4,3).
TriangleBound triangle_lower_bound(int v, int w);

// Minimum wavelength count among cost-optimal decompositions.
long long wavecost_mon(int n, int v, int cprime);

// Least w such that the C'=3 MON wavelength count collapses to ceil(n(n-1)/8).
int mu3(int v);

}  // namespace groom
