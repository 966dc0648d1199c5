#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "maxent/graphical.hpp"

using namespace maxent;
using namespace maxent::graphical;

namespace {

// Naive enumeration of every assignment in {0..cap}^(n choose 2). Shares no
// code with the library search; only viable for tiny n.
bool enumerate_realizable(const std::vector<std::int64_t>& d, std::int64_t cap) {
  const std::size_t n = d.size();
  const std::size_t m = n * (n - 1) / 2;
  std::vector<std::int64_t> w(m, 0);
  for (;;) {
    std::vector<std::int64_t> deg(n, 0);
    std::size_t e = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j, ++e) {
        deg[i] += w[e];
        deg[j] += w[e];
      }
    if (deg == d) return true;
    std::size_t k = 0;
    while (k < m && w[k] == cap) w[k++] = 0;
    if (k == m) return false;
    ++w[k];
  }
}

DegreeSequence seq(std::vector<double> v) { return DegreeSequence(std::move(v)); }

void for_each_sorted(std::size_t n, int max_entry, const std::function<void(const std::vector<double>&)>& f) {
  std::vector<double> d(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int hi) {
    if (pos == n) {
      f(d);
      return;
    }
    for (int v = 0; v <= hi; ++v) {
      d[pos] = v;
      rec(pos + 1, v);
    }
  };
  rec(0, max_entry);
}

}  // namespace

TEST_CASE("is_graphical examples") {
  SUBCASE("finite r=2, (3,3,1,1) fails at k=2") {
    const auto v = is_graphical(WeightRegime::finite(2), seq({3, 3, 1, 1}));
    CHECK_FALSE(v.graphic);
    CHECK(v.parity_ok);
    REQUIRE(v.violated_k.has_value());
    CHECK(*v.violated_k == 2);
    CHECK_FALSE(enumerate_realizable({3, 3, 1, 1}, 1));
  }
  SUBCASE("finite r=3, (4,4,4)") {
    const auto v = is_graphical(WeightRegime::finite(3), seq({4, 4, 4}));
    CHECK(v.graphic);
    CHECK_FALSE(v.violated_k.has_value());
    CHECK(enumerate_realizable({4, 4, 4}, 2));
  }
  SUBCASE("continuous (5,2,2)") { CHECK_FALSE(is_graphical(WeightRegime::continuous(), seq({5, 2, 2})).graphic); }
  SUBCASE("infinite (3,1,1) odd sum") {
    const auto v = is_graphical(WeightRegime::infinite(), seq({3, 1, 1}));
    CHECK_FALSE(v.graphic);
    CHECK_FALSE(v.parity_ok);
  }
  SUBCASE("infinite star (3,1,1,1)") { CHECK(is_graphical(WeightRegime::infinite(), seq({3, 1, 1, 1})).graphic); }
}

TEST_CASE("is_graphical boundary and errors") {
  CHECK(is_graphical(WeightRegime::continuous(), seq({3, 2, 1})).graphic);
  CHECK(is_graphical(WeightRegime::continuous(), seq({0, 0, 0})).graphic);
  CHECK(is_graphical(WeightRegime::continuous(), seq({1.5, 0.75, 0.75})).graphic);
  CHECK_THROWS_AS(is_graphical(WeightRegime::finite(2), seq({1, 1.5, 0.5})), InvalidInput);
  CHECK_THROWS_AS(is_graphical(WeightRegime::infinite(), seq({1, 1.5, 0.5})), InvalidInput);
  CHECK_FALSE(is_graphical(WeightRegime::finite(2), seq({1, 1, 1})).parity_ok);
}

TEST_CASE("in_mean_interior examples") {
  CHECK(in_mean_interior(WeightRegime::continuous(), seq({2, 2, 2})));
  CHECK_FALSE(in_mean_interior(WeightRegime::continuous(), seq({3, 2, 1})));
  CHECK(in_mean_interior(WeightRegime::infinite(), seq({0.5, 0.5, 0.5})));
  CHECK_FALSE(in_mean_interior(WeightRegime::infinite(), seq({0, 1, 1})));
  CHECK_THROWS_AS(in_mean_interior(WeightRegime::finite(3), seq({2, 2, 2})), UnsupportedRegime);
}

TEST_CASE("brute_force_graphical examples") {
  CHECK(brute_force_graphical(WeightRegime::finite(2), seq({2, 2, 2}), 1));
  CHECK_FALSE(brute_force_graphical(WeightRegime::finite(2), seq({3, 3, 1, 1}), 1));
  const auto g = brute_force_realization(WeightRegime::infinite(), seq({4, 2, 2}), 4);
  REQUIRE(g.has_value());
  CHECK(g->weight(0, 1) == 2);
  CHECK(g->weight(0, 2) == 2);
  CHECK(g->weight(1, 2) == 0);
  CHECK(degree_sequence(*g) == seq({4, 2, 2}));
}

TEST_CASE("brute force refuses oversized or unsupported searches") {
  CHECK_THROWS_AS(brute_force_graphical(WeightRegime::continuous(), seq({1, 1, 2}), 2), InvalidInput);
  CHECK_THROWS_AS(brute_force_graphical(WeightRegime::infinite(), seq(std::vector<double>(7, 2)), 2), InvalidInput);
  CHECK_THROWS_AS(brute_force_graphical(WeightRegime::infinite(), seq({1, 1.5, 0.5}), 2), InvalidInput);
  const auto big = seq({200, 200, 200, 200, 200, 200});
  CHECK(brute_force_search_size(WeightRegime::infinite(), big, 200) > kBruteForceLimit);
  CHECK_THROWS_AS(brute_force_graphical(WeightRegime::infinite(), big, 200), InvalidInput);
}

TEST_CASE("library brute force agrees with naive enumeration") {
  for (std::size_t n : {3u, 4u}) {
    for (int r : {2, 3}) {
      for_each_sorted(n, 4, [&](const std::vector<double>& d) {
        std::vector<std::int64_t> di(d.begin(), d.end());
        CHECK(brute_force_graphical(WeightRegime::finite(r), seq(d), r - 1) == enumerate_realizable(di, r - 1));
      });
    }
  }
}

TEST_CASE("Erdos-Gallai test agrees with exhaustive search (reduced range)") {
  for (std::size_t n : {3u, 4u, 5u}) {
    for (int r : {2, 3, 4}) {
      for_each_sorted(n, 5, [&](const std::vector<double>& d) {
        const auto regime = WeightRegime::finite(r);
        CHECK(is_graphical(regime, seq(d)).graphic == brute_force_graphical(regime, seq(d), r - 1));
      });
    }
    for_each_sorted(n, 5, [&](const std::vector<double>& d) {
      const auto cap = static_cast<std::int64_t>(*std::max_element(d.begin(), d.end()));
      CHECK(is_graphical(WeightRegime::infinite(), seq(d)).graphic ==
            brute_force_graphical(WeightRegime::infinite(), seq(d), cap));
    });
  }
}

TEST_CASE("monotone embedding across regimes") {
  for (std::size_t n : {3u, 4u, 5u, 6u}) {
    for (int r = 2; r <= 5; ++r) {
      for_each_sorted(n, 7, [&](const std::vector<double>& d) {
        if (!is_graphical(WeightRegime::finite(r), seq(d)).graphic) return;
        CHECK(is_graphical(WeightRegime::finite(r + 1), seq(d)).graphic);
        CHECK(is_graphical(WeightRegime::infinite(), seq(d)).graphic);
        CHECK(is_graphical(WeightRegime::continuous(), seq(d)).graphic);
      });
    }
  }
}

TEST_CASE("permutation invariance") {
  std::mt19937_64 gen(9);
  std::uniform_int_distribution<int> entry(0, 12);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<double> d(3 + trial % 6);
    for (auto& x : d) x = entry(gen);
    std::vector<double> p = d;
    std::shuffle(p.begin(), p.end(), gen);
    for (const auto& reg : {WeightRegime::finite(2), WeightRegime::finite(4), WeightRegime::infinite(),
                            WeightRegime::continuous()}) {
      const auto a = is_graphical(reg, seq(d));
      const auto b = is_graphical(reg, seq(p));
      CHECK(a.graphic == b.graphic);
      CHECK(a.violated_k == b.violated_k);
    }
  }
}

TEST_CASE("continuous graphical set is convex") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  auto draw_graphic = [&](std::size_t n) {
    for (;;) {
      std::vector<double> d(n);
      for (auto& x : d) x = u(gen);
      if (is_graphical(WeightRegime::continuous(), seq(d)).graphic) return d;
    }
  };
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 3 + trial % 5;
    const auto a = draw_graphic(n);
    const auto b = draw_graphic(n);
    for (double t : {0.0, 0.1, 0.37, 0.5, 0.9, 1.0}) {
      std::vector<double> c(n);
      for (std::size_t i = 0; i < n; ++i) c[i] = t * a[i] + (1 - t) * b[i];
      // Rounding in the combination can move a boundary point by an ulp.
      const double mx = *std::max_element(c.begin(), c.end());
      double s = 0;
      for (double x : c) s += x;
      CHECK((is_graphical(WeightRegime::continuous(), seq(c)).graphic || mx - s / 2 <= 1e-12 * s));
    }
  }
}

TEST_CASE("verdict invariant: graphic implies parity and no violation") {
  for_each_sorted(5, 6, [&](const std::vector<double>& d) {
    for (const auto& reg : {WeightRegime::finite(3), WeightRegime::infinite()}) {
      const auto v = is_graphical(reg, seq(d));
      if (v.graphic) {
        CHECK(v.parity_ok);
        CHECK_FALSE(v.violated_k.has_value());
      }
    }
  });
}
