#include <doctest.h>

#include <cmath>

#include "nomafair/search.hpp"

using namespace nomafair;

TEST_CASE("interior maximum of a concave function") {
  const auto r = maximize_on_interval([](double x) { return -(x - 0.3141) * (x - 0.3141); }, 0.0,
                                      1.0);
  CHECK(std::abs(r.x - 0.3141) < 1e-8);
  CHECK(r.value <= 0.0);
}

TEST_CASE("monotone function peaks at an endpoint") {
  CHECK(maximize_on_interval([](double x) { return x; }, 0.2, 0.7).x == 0.7);
  CHECK(maximize_on_interval([](double x) { return -x; }, 0.2, 0.7).x == 0.2);
}

TEST_CASE("global maximum among several local maxima") {
  const auto f = [](double x) {
    return std::exp(-200 * (x - 0.2) * (x - 0.2)) + 1.2 * std::exp(-200 * (x - 0.8) * (x - 0.8));
  };
  CHECK(std::abs(maximize_on_interval(f, 0.0, 1.0).x - 0.8) < 1e-6);
}

TEST_CASE("ties resolve to the smaller argument") {
  const auto f = [](double x) { return -std::pow((x - 0.25) * (x - 0.75), 2); };
  CHECK(std::abs(maximize_on_interval(f, 0.0, 1.0).x - 0.25) < 1e-6);
}

TEST_CASE("degenerate intervals") {
  CHECK(maximize_on_interval([](double x) { return x; }, 0.4, 0.4).x == 0.4);
  const auto r = maximize_on_interval([](double x) { return -x; }, 0.4, 0.4 + 1e-12);
  CHECK(r.x == 0.4);
}
