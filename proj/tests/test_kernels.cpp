#include <random>

#include "doctest.h"
#include "sfh/kernels.hpp"
#include "support.hpp"

using namespace sfh;

TEST_CASE("parallel kernels match the serial reference bit for bit") {
  std::mt19937_64 rng(17);
  for (int kind = 0; kind < 4; ++kind) {
    const auto cfg = testing::random_config(rng, kind);
    std::vector<ExtremalSpec> specs;
    std::uniform_real_distribution<double> u(0, 1);
    for (int k = 0; k < 300; ++k) {
      ExtremalSpec s = cfg.spec;
      for (double& t : s.theta0_polar) t = 10 * u(rng);
      s.gamma = k % 2 ? 1 : -1;
      specs.push_back(s);
    }
    const auto a = wavefront_serial(cfg.set, specs, 1.7);
    const auto b = wavefront_parallel(cfg.set, specs, 1.7);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(a[k].z == b[k].z);
      for (std::size_t i = 0; i < a[k].xy.size(); ++i) {
        CHECK(a[k].xy[i].x == b[k].xy[i].x);
        CHECK(a[k].xy[i].y == b[k].xy[i].y);
      }
    }
  }
  for (int family = 0; family < 4; ++family) {
    const ConvexBody body = testing::random_body(rng, family);
    const TrigTable s = trig_table_serial(body, 999);
    const TrigTable p = trig_table_parallel(body, 999);
    for (std::size_t k = 0; k < s.value.size(); ++k) {
      CHECK(s.theta[k] == p.theta[k]);
      CHECK(s.value[k].x == p.value[k].x);
      CHECK(s.value[k].y == p.value[k].y);
    }
  }
}
