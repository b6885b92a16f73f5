// Throwaway development driver: sweep build_c3 over 5 <= n <= 40.
#include <groom/build.hpp>
#include <groom/formulas.hpp>
#include <groom/model.hpp>

#include <cstdio>
#include <cstdlib>

using namespace groom;

int main(int argc, char** argv) {
  unsigned seed = argc > 1 ? static_cast<unsigned>(std::atoi(argv[1])) : 0;
  int nmin = argc > 2 ? std::atoi(argv[2]) : 5;
  int nmax = argc > 3 ? std::atoi(argv[3]) : 40;
  int fails = 0;
  for (int n = nmin; n <= nmax; ++n) {
    for (int v = 0; v <= n - 1; ++v) {
      const int w = n - v;
      if (w < 1) continue;
      ProblemInstance inst{n, v, 3};
      BuildRequest req;
      req.instance = inst;
      req.optimize_wavelengths = true;
      req.seed = seed;
      Decomposition d;
      try {
        d = build_c3(req);
      } catch (const std::exception& e) {
        std::printf("FAIL (%d,%d): threw %s\n", n, v, e.what());
        ++fails;
        continue;
      }
      VerificationReport rep = verify(d);
      if (!rep.valid) {
        std::printf("FAIL (%d,%d): invalid decomposition: %s\n", n, v, rep.summary().c_str());
        ++fails;
        continue;
      }
      long long want_cost = cost_two_period(n, v, 3);
      if (rep.drop_cost != want_cost) {
        std::printf("FAIL (%d,%d): cost %lld want %lld\n", n, v, rep.drop_cost, want_cost);
        ++fails;
      }
      long long want_tris = triangle_lower_bound(v, w).delta_min;
      if (rep.triangle_count != want_tris) {
        std::printf("FAIL (%d,%d): triangles %lld want %lld\n", n, v,
                    static_cast<long long>(rep.triangle_count), want_tris);
        ++fails;
      }
      long long want_wc = wavecost_mon(n, v, 3);
      if (rep.wavecost != want_wc) {
        std::printf("FAIL (%d,%d): wavecost %lld want %lld\n", n, v, rep.wavecost, want_wc);
        ++fails;
      }
    }
  }
  // Error contract spot checks.
  auto expect_throw = [&](int n, int v) {
    BuildRequest req;
    req.instance = ProblemInstance{n, v, 3};
    req.seed = seed;
    try {
      build_c3(req);
      std::printf("FAIL (%d,%d): expected invalid_argument\n", n, v);
      ++fails;
    } catch (const std::invalid_argument&) {
    } catch (const std::exception& e) {
      std::printf("FAIL (%d,%d): wrong exception type: %s\n", n, v, e.what());
      ++fails;
    }
  };
  expect_throw(9, 9);   // w == 0
  expect_throw(4, 2);   // n <= 4
  std::printf(fails ? "SMOKE c3: %d failures\n" : "SMOKE c3: all green\n", fails);
  return fails ? 1 : 0;
}
