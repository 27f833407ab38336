// Serial vs OpenMP timings for the batch kernels.
//
//   sfh_bench [wavefront_count] [table_size]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#include <omp.h>

#include "sfh/kernels.hpp"

using namespace sfh;

namespace {

template <class F>
double seconds(F&& f, int repeats = 3) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

bool same(const std::vector<HPoint>& a, const std::vector<HPoint>& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].z != b[k].z) return false;
    for (std::size_t i = 0; i < a[k].xy.size(); ++i) {
      if (a[k].xy[i].x != b[k].xy[i].x || a[k].xy[i].y != b[k].xy[i].y) return false;
    }
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t count = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 20000;
  const std::size_t table = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 200000;
  std::printf("threads %d\n", omp_get_max_threads());

  const VelocitySet set({lp_ball(3.0), lp_ball(1.5), disc(1.0)}, OuterNorm::power(2.5));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<ExtremalSpec> specs(count);
  for (ExtremalSpec& s : specs) {
    s.gamma = u(rng) < 0.5 ? -1 : 1;
    for (std::size_t i = 0; i < set.dim(); ++i) {
      s.A.push_back(0.2 + u(rng));
      s.theta0_polar.push_back(10.0 * u(rng));
    }
  }
  std::vector<HPoint> a, b;
  const double ws = seconds([&] { a = wavefront_serial(set, specs, 2.0); });
  const double wp = seconds([&] { b = wavefront_parallel(set, specs, 2.0); });
  std::printf("wavefront  %8zu endpoints  serial %.4f s  parallel %.4f s  speedup %.2f  identical %s\n", count, ws, wp,
              ws / wp, same(a, b) ? "yes" : "NO");

  const ConvexBody body = lp_ball(3.0);
  TrigTable ts, tp;
  const double ss = seconds([&] { ts = trig_table_serial(body, table); });
  const double sp = seconds([&] { tp = trig_table_parallel(body, table); });
  bool equal = true;
  for (std::size_t k = 0; k < table; ++k) equal = equal && ts.value[k].x == tp.value[k].x && ts.value[k].y == tp.value[k].y;
  std::printf("trig table %8zu points     serial %.4f s  parallel %.4f s  speedup %.2f  identical %s\n", table, ss, sp,
              ss / sp, equal ? "yes" : "NO");
  return same(a, b) && equal ? 0 : 1;
}
