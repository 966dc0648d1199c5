#include <doctest.h>

#include <random>

#include "maxent/core.hpp"

using namespace maxent;

TEST_CASE("regime construction and naming") {
  CHECK(WeightRegime::finite(2).r() == 2);
  CHECK_THROWS_AS(WeightRegime::finite(1), InvalidInput);
  CHECK(WeightRegime::parse("infinite").kind() == RegimeKind::InfiniteDiscrete);
  CHECK(WeightRegime::parse("finite", 4) == WeightRegime::finite(4));
  CHECK_THROWS_AS(WeightRegime::parse("gaussian"), InvalidInput);
  CHECK(WeightRegime::finite(3).label() == "finite(r=3)");
  CHECK(WeightRegime::continuous().is_positive());
  CHECK_FALSE(WeightRegime::finite(3).is_positive());
}

TEST_CASE("admissible weights per regime") {
  const auto f3 = WeightRegime::finite(3);
  CHECK(f3.admits_weight(0));
  CHECK(f3.admits_weight(2));
  CHECK_FALSE(f3.admits_weight(3));
  CHECK_FALSE(f3.admits_weight(1.5));
  CHECK(WeightRegime::infinite().admits_weight(1e6));
  CHECK_FALSE(WeightRegime::infinite().admits_weight(-1));
  CHECK(WeightRegime::continuous().admits_weight(0.25));
  CHECK_FALSE(WeightRegime::continuous().admits_weight(std::nan("")));
}

TEST_CASE("degree_sequence") {
  SUBCASE("triangle of unit weights") {
    WeightedGraph g(3, WeightRegime::finite(2));
    g.set_weight(0, 1, 1);
    g.set_weight(0, 2, 1);
    g.set_weight(2, 1, 1);
    const auto d = degree_sequence(g);
    CHECK(d == DegreeSequence({2, 2, 2}));
  }
  SUBCASE("empty graph") {
    const auto d = degree_sequence(WeightedGraph(4, WeightRegime::infinite()));
    CHECK(d == DegreeSequence({0, 0, 0, 0}));
  }
  SUBCASE("fractional weights") {
    WeightedGraph g(3, WeightRegime::continuous());
    g.set_weight(0, 1, 1.5);
    g.set_weight(0, 2, 0.5);
    const auto d = degree_sequence(g);
    CHECK(d[0] == 2.0);
    CHECK(d[1] == 1.5);
    CHECK(d[2] == 0.5);
  }
}

TEST_CASE("graph invariants") {
  CHECK_THROWS_AS(WeightedGraph(2, WeightRegime::continuous()), InvalidInput);
  WeightedGraph g(4, WeightRegime::finite(3));
  CHECK_THROWS_AS(g.set_weight(1, 1, 1), InvalidInput);
  CHECK_THROWS_AS(g.set_weight(0, 1, 3), InvalidInput);
  g.set_weight(3, 1, 2);
  CHECK(g.weight(1, 3) == 2);
  CHECK(g.weight(3, 1) == 2);
  CHECK(g.weight(2, 2) == 0);
  CHECK_THROWS_AS(WeightedGraph(3, WeightRegime::finite(2), {0, 1}), InvalidInput);
  CHECK_THROWS_AS(WeightedGraph(3, WeightRegime::finite(2), {0, 1, 2}), InvalidInput);
}

TEST_CASE("pair_index enumerates the upper triangle in row-major order") {
  const std::size_t n = 7;
  std::size_t e = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) CHECK(pair_index(n, i, j) == e++);
  CHECK(e == pair_count(n));
}

TEST_CASE("degree sequence and potentials validation") {
  CHECK_THROWS_AS(DegreeSequence({1, 2}), InvalidInput);
  CHECK_THROWS_AS(DegreeSequence({1, -2, 3}), InvalidInput);
  CHECK_THROWS_AS(DegreeSequence({1, std::numeric_limits<double>::infinity(), 3}), InvalidInput);
  CHECK(DegreeSequence({1, 2, 3}).is_integral());
  CHECK_FALSE(DegreeSequence({1, 2.5, 3}).is_integral());
  CHECK_THROWS_AS(DegreeSequence({1, 2.5, 3}).as_integers(), InvalidInput);
  CHECK_THROWS_AS(Potentials({0.0, std::nan("")}), InvalidInput);
}

TEST_CASE("validate_potentials") {
  CHECK(validate_potentials(Potentials({-0.5, 1, 1}), WeightRegime::continuous()));
  CHECK_FALSE(validate_potentials(Potentials({-1, -1, 3}), WeightRegime::continuous()));
  CHECK(validate_potentials(Potentials({-10, -10, -10}), WeightRegime::finite(5)));
  CHECK_FALSE(validate_potentials(Potentials({0.5, -0.5, 2}), WeightRegime::infinite()));
}

TEST_CASE("valid positive-regime potentials have at most one negative coordinate") {
  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  int valid = 0;
  for (int trial = 0; trial < 20000; ++trial) {
    std::vector<double> t(5);
    for (auto& x : t) x = u(gen);
    const Potentials th(t);
    if (!validate_potentials(th, WeightRegime::continuous())) continue;
    ++valid;
    CHECK(std::count_if(t.begin(), t.end(), [](double x) { return x < 0; }) <= 1);
  }
  CHECK(valid > 100);
}
