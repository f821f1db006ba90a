// Serial vs OpenMP timings for the three parallel kernels.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "edgemarket/core/parallel.hpp"
#include "edgemarket/core/rng.hpp"
#include "edgemarket/dda/experiment.hpp"
#include "edgemarket/evo/replicator.hpp"
#include "edgemarket/sip/compare.hpp"
#include "edgemarket/sip/sampling.hpp"

using namespace edgemarket;

namespace {

double seconds(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-22s serial %8.3fs  parallel %8.3fs  speedup %5.2fx\n", name, serial, parallel, serial / parallel);
}

evo::EvoConfig sweep_config() {
  evo::EvoConfig cfg;
  cfg.game.regions = {{"r1", 100.0, 0.01}, {"r2", 60.0, 0.02}, {"r3", 30.0, 0.05}};
  cfg.game.populations = {{"p1", 50, 1.0, {1.0, 1.0, 1.0}, 0.5}, {"p2", 30, 2.0, {0.5, 2.0, 1.0}, 0.5}};
  cfg.options.record_every = 1000000;
  return cfg;
}

}  // namespace

int main() {
  std::printf("threads: %d\n", worker_threads());

  {
    const auto cfg = sweep_config();
    std::vector<double> grid;
    for (int i = 0; i < 48; ++i) grid.push_back(20.0 + 5.0 * i);
    const double s = seconds([&] { evo::reward_sweep_serial(cfg, "r1", grid); });
    const double p = seconds([&] { evo::reward_sweep(cfg, "r1", grid); });
    report("evo reward sweep", s, p);
  }

  {
    dda::GeneratorSpec gen;
    const dda::QoeParams qoe;
    const dda::PriceBounds bounds;
    const auto instances = dda::generate_family(gen, qoe, bounds, rng_stream(1, "bench/dda"));
    std::vector<dda::ClockController> controllers = {
        dda::ClockController::fixed(0.05, "fine"), dda::ClockController::fixed(0.5, "coarse"),
        dda::make_ou_controller(0.5, 1.0, 0.25, 0.125, 2.0, rng_stream(1, "bench/ou"))};
    const double s = seconds([&] { dda::compare_controllers_serial(instances, controllers); });
    const double p = seconds([&] { dda::compare_controllers(instances, controllers); });
    report("dda compare", s, p);
  }

  {
    sip::RandomInstanceSpec spec;
    spec.max_resources = 4;
    spec.max_demand = 60;
    spec.max_scenarios = 8;
    spec.budget_probability = 0.5;
    std::vector<sip::SipInstance> instances;
    const RngStream base = rng_stream(1, "bench/sip");
    for (int i = 0; i < 400; ++i) {
      RngStream r = base.substream(std::to_string(i));
      instances.push_back(sip::random_instance(spec, r, "i" + std::to_string(i)));
    }
    const double s = seconds([&] { sip::compare_schemes_serial(instances); });
    const double p = seconds([&] { sip::compare_schemes(instances); });
    report("sip compare", s, p);
  }
  return 0;
}
