#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "edgemarket/core/error.hpp"
#include "edgemarket/core/rng.hpp"
#include "edgemarket/evo/replicator.hpp"

using namespace edgemarket;
using namespace edgemarket::evo;

namespace {

EvoGame one_pop(std::vector<double> rewards, std::vector<double> costs, std::int64_t n = 10, double w = 1.0,
                double kappa = 0.2) {
  EvoGame g;
  for (std::size_t v = 0; v < rewards.size(); ++v) g.regions.push_back({"r" + std::to_string(v + 1), rewards[v], kappa});
  g.populations.push_back({"p", n, w, std::move(costs), 1.0});
  return g;
}

PopulationState state(std::vector<std::vector<double>> s) { return PopulationState{std::move(s)}; }

double max_abs(const RateMatrix& m) {
  double out = 0.0;
  for (const auto& row : m)
    for (double x : row) out = std::max(out, std::abs(x));
  return out;
}

// Random game with a random interior state, for property checks.
std::pair<EvoGame, PopulationState> random_game(RngStream& r) {
  EvoGame g;
  const auto nv = r.uniform_int(1, 4);
  const auto np = r.uniform_int(1, 3);
  for (std::int64_t v = 0; v < nv; ++v) g.regions.push_back({"v" + std::to_string(v), r.uniform(0, 200), r.uniform(0.05, 1)});
  PopulationState s;
  for (std::int64_t p = 0; p < np; ++p) {
    SspPopulation pop{"p" + std::to_string(p), r.uniform_int(1, 30), r.uniform(0.2, 3), {}, r.uniform(0.1, 2)};
    std::vector<double> x;
    double total = 0.0;
    for (std::int64_t v = 0; v < nv; ++v) {
      pop.cost.push_back(r.uniform(0, 5));
      x.push_back(r.uniform(0.05, 1));
      total += x.back();
    }
    for (auto& xi : x) xi /= total;
    g.populations.push_back(pop);
    s.shares.push_back(x);
  }
  return {g, s};
}

}  // namespace

TEST_SUITE("serving_mass") {
  TEST_CASE("full share on one region") {
    const auto g = one_pop({10, 10}, {0, 0});
    CHECK(serving_mass(state({{1, 0}}), g, 0) == 10.0);
  }
  TEST_CASE("equal split") {
    const auto g = one_pop({10, 10}, {0, 0});
    CHECK(serving_mass(state({{0.5, 0.5}}), g, "r1") == 5.0);
    CHECK(serving_mass(state({{0.5, 0.5}}), g, "r2") == 5.0);
  }
  TEST_CASE("capability-weighted sum over populations") {
    EvoGame g = one_pop({1, 1}, {0, 0});
    g.populations.push_back({"q", 4, 2.0, {0, 0}, 1.0});
    const double expected = 0.5 * 10 * 1.0 + 0.25 * 4 * 2.0;
    CHECK(serving_mass(state({{0.5, 0.5}, {0.25, 0.75}}), g, "r1") == doctest::Approx(expected));
    CHECK(expected == 7.0);
  }
  TEST_CASE("unknown region id") {
    const auto g = one_pop({1}, {0});
    CHECK_THROWS_AS(serving_mass(state({{1}}), g, "nowhere"), std::out_of_range);
  }
}

TEST_SUITE("payoff") {
  TEST_CASE("zero reward pays minus cost") {
    const auto g = one_pop({0, 10}, {3, 1});
    CHECK(payoff(state({{0.5, 0.5}}), g, 0, 0) == -3.0);
  }
  TEST_CASE("two-region hand evaluation") {
    const auto g = one_pop({100, 50}, {0, 0});
    const auto s = state({{0.5, 0.5}});
    CHECK(payoff(s, g, 0, 0) == doctest::Approx(20.0));
    CHECK(payoff(s, g, 0, 1) == doctest::Approx(10.0));
  }
  TEST_CASE("lone deviator collects the whole pool") {
    const auto g = one_pop({100, 50}, {0, 2});
    CHECK(payoff(state({{1, 0}}), g, 0, 1) == doctest::Approx(50.0 / 1.0 - 2.0));
  }
}

TEST_SUITE("replicator_derivative") {
  TEST_CASE("pure state is a fixed point") {
    const auto g = one_pop({100, 50}, {0, 0});
    CHECK(max_abs(replicator_derivative(state({{1, 0}}), g)) < 1e-12);
    CHECK(max_abs(replicator_derivative(state({{0, 1}}), g)) < 1e-12);
  }
  TEST_CASE("equal payoffs give zero derivative") {
    const auto g = one_pop({100, 50}, {0, 0});
    CHECK(max_abs(replicator_derivative(state({{2.0 / 3.0, 1.0 / 3.0}}), g)) < 1e-12);
  }
  TEST_CASE("hand evaluation at the even split") {
    const auto g = one_pop({100, 50}, {0, 0});
    const auto d = replicator_derivative(state({{0.5, 0.5}}), g);
    CHECK(d[0][0] == doctest::Approx(2.5));
    CHECK(d[0][1] == doctest::Approx(-2.5));
  }
  TEST_CASE("rates sum to zero per population") {
    RngStream r = rng_stream(1, "test/evo/derivative");
    for (int i = 0; i < 200; ++i) {
      const auto [g, s] = random_game(r);
      for (const auto& row : replicator_derivative(s, g)) {
        double sum = 0.0, scale = 1.0;
        for (double x : row) sum += x, scale = std::max(scale, std::abs(x));
        CHECK(std::abs(sum) <= 1e-12 * scale);
      }
    }
  }
}

TEST_SUITE("sync_frequency") {
  TEST_CASE("empty region") {
    const auto g = one_pop({1, 1}, {0, 0});
    CHECK(sync_frequency(state({{1, 0}}), g, 1) == 0.0);
  }
  TEST_CASE("kappa times mass") {
    const auto g = one_pop({1}, {0}, 10, 1.0, 0.2);
    CHECK(sync_frequency(state({{1}}), g, 0) == doctest::Approx(2.0));
  }
  TEST_CASE("linear in kappa") {
    auto g = one_pop({1, 1}, {0, 0});
    const auto s = state({{0.3, 0.7}});
    const double f = sync_frequency(s, g, 1);
    g.regions[1].sync_coeff *= 2;
    CHECK(sync_frequency(s, g, 1) == doctest::Approx(2 * f));
  }
}

TEST_SUITE("evolve") {
  TEST_CASE("symmetric instance stays at the even split") {
    const auto g = one_pop({50, 50}, {1, 1});
    const auto t = evolve(g, state({{0.5, 0.5}}), {});
    CHECK(t.converged);
    CHECK(t.final_state().shares[0][0] == doctest::Approx(0.5).epsilon(1e-6));
  }
  TEST_CASE("two-region instance converges to two thirds") {
    const auto g = one_pop({100, 50}, {0, 0});
    const auto t = evolve(g, state({{0.2, 0.8}}), {});
    CHECK(t.converged);
    CHECK(std::abs(t.final_state().shares[0][0] - 2.0 / 3.0) < 1e-3);
    CHECK(std::abs(t.final_state().shares[0][1] - 1.0 / 3.0) < 1e-3);
  }
  TEST_CASE("zero tolerance never converges") {
    const auto g = one_pop({100, 50}, {0, 0});
    EvolveOptions o;
    o.tol = 0.0;
    o.max_steps = 500;
    const auto t = evolve(g, state({{0.2, 0.8}}), o);
    CHECK_FALSE(t.converged);
    CHECK(t.steps == 500);
  }
  TEST_CASE("times strictly increase and states stay on the simplex") {
    RngStream r = rng_stream(2, "test/evo/simplex");
    for (int i = 0; i < 20; ++i) {
      const auto [g, s] = random_game(r);
      EvolveOptions o;
      o.max_steps = 3000;
      o.record_every = 7;
      const auto t = evolve(g, s, o);
      CHECK(t.max_drift <= 1e-9);
      for (std::size_t k = 0; k < t.points.size(); ++k) {
        if (k > 0) REQUIRE(t.points[k].time > t.points[k - 1].time);
        for (const auto& row : t.points[k].state.shares) {
          double sum = 0.0;
          for (double x : row) {
            REQUIRE(x >= 0.0);
            REQUIRE(x <= 1.0);
            sum += x;
          }
          REQUIRE(std::abs(sum - 1.0) <= 1e-9);
        }
      }
    }
  }
  TEST_CASE("too large a step is reported as drift") {
    const auto g = one_pop({1000, 1}, {0, 0}, 1);
    EvolveOptions o;
    o.step = 5.0;
    CHECK_THROWS_AS(evolve(g, state({{0.5, 0.5}}), o), SimplexDriftError);
  }
  TEST_CASE("converged states satisfy the equal-payoff condition") {
    RngStream r = rng_stream(3, "test/evo/equal-payoff");
    int checked = 0;
    for (int i = 0; i < 30; ++i) {
      const auto [g, s] = random_game(r);
      const auto t = evolve(g, s, {});
      if (!t.converged) continue;
      ++checked;
      const auto& x = t.final_state().shares;
      const auto u = payoff_matrix(t.final_state(), g);
      for (std::size_t p = 0; p < x.size(); ++p) {
        // |delta x_v (u_v - ubar)| < tol on every region, so two support
        // regions differ by at most tol / delta (1 / x_v + 1 / x_w).
        const double delta = g.populations[p].learning_rate;
        for (std::size_t v = 0; v < x[p].size(); ++v) {
          for (std::size_t w = 0; w < x[p].size(); ++w) {
            if (x[p][v] <= 1e-3 || x[p][w] <= 1e-3) continue;
            const double bound = 10 * 1e-6 / delta * (1 / x[p][v] + 1 / x[p][w]);
            CHECK(std::abs(u[p][v] - u[p][w]) <= bound);
          }
        }
      }
    }
    CHECK(checked > 0);
  }
  TEST_CASE("zero-cost single population splits mass in proportion to rewards") {
    RngStream r = rng_stream(4, "test/evo/proportional");
    for (int i = 0; i < 10; ++i) {
      std::vector<double> rewards;
      for (auto k = r.uniform_int(2, 4); k > 0; --k) rewards.push_back(r.uniform(10, 200));
      const auto g = one_pop(rewards, std::vector<double>(rewards.size(), 0.0), r.uniform_int(5, 50));
      const auto t = evolve(g, PopulationState::uniform(g), {});
      REQUIRE(t.converged);
      for (std::size_t v = 1; v < rewards.size(); ++v) {
        const double ratio = serving_mass(t.final_state(), g, v) / serving_mass(t.final_state(), g, 0);
        CHECK(std::abs(ratio / (rewards[v] / rewards[0]) - 1.0) < 1e-3);
      }
    }
  }
  TEST_CASE("halving the step barely moves the equilibrium") {
    for (const auto& g : {one_pop({100, 50}, {0, 0}), one_pop({80, 60, 20}, {1, 2, 0.5}, 12, 1.5)}) {
      EvolveOptions o;
      const auto a = evolve(g, PopulationState::uniform(g), o);
      o.step /= 2;
      const auto b = evolve(g, PopulationState::uniform(g), o);
      for (std::size_t v = 0; v < g.regions.size(); ++v) {
        CHECK(std::abs(a.final_state().shares[0][v] - b.final_state().shares[0][v]) < 1e-4);
      }
    }
  }
}

TEST_SUITE("reward_sweep") {
  EvoConfig config() {
    EvoConfig c;
    c.game = one_pop({100, 50}, {0, 0});
    return c;
  }
  TEST_CASE("empty grid") { CHECK(reward_sweep(config(), "r1", {}).empty()); }
  TEST_CASE("single point equals a standalone evolve") {
    const auto rows = reward_sweep(config(), "r1", {70});
    REQUIRE(rows.size() == 1);
    auto c = config();
    c.game.regions[0].reward_pool = 70;
    const auto t = evolve(c.game, c.initial_state(), c.options);
    CHECK(rows[0].equilibrium == t.final_state());
    CHECK(rows[0].reward == 70);
  }
  TEST_CASE("mass and frequency increase with the swept reward") {
    const auto rows = reward_sweep(config(), "r1", {25, 50, 100});
    REQUIRE(rows.size() == 3);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(rows[i].mass[0] > rows[i - 1].mass[0]);
      CHECK(rows[i].frequency[0] > rows[i - 1].frequency[0]);
    }
  }
  TEST_CASE("parallel sweep equals the serial reference") {
    auto c = config();
    c.game.populations.push_back({"q", 7, 2.5, {1, 0.5}, 0.7});
    std::vector<double> grid;
    for (int i = 0; i < 16; ++i) grid.push_back(10.0 * i);
    const auto par = reward_sweep(c, "r2", grid);
    const auto ser = reward_sweep_serial(c, "r2", grid);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
      CHECK(par[i].equilibrium == ser[i].equilibrium);
      CHECK(par[i].mass == ser[i].mass);
    }
  }
  TEST_CASE("negative grid values are rejected") { CHECK_THROWS(reward_sweep(config(), "r1", {-1})); }
}
