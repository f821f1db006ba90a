#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>

#include "doctest.h"
#include "edgemarket/core/rng.hpp"
#include "edgemarket/dda/auction.hpp"
#include "edgemarket/dda/experiment.hpp"
#include "edgemarket/dda/qlearning.hpp"
#include "edgemarket/dda/qoe.hpp"

using namespace edgemarket;
using namespace edgemarket::dda;

namespace {

const PriceBounds kWorked{2.0, 12.0};
const Bids kThreeByThree{{10, 8, 6}, {3, 5, 9}};

// Best total surplus over every partial one-to-one matching.
double brute_force_welfare(const Bids& bids) {
  std::vector<bool> used(bids.costs.size(), false);
  std::function<double(std::size_t)> go = [&](std::size_t i) -> double {
    if (i == bids.valuations.size()) return 0.0;
    double best = go(i + 1);
    for (std::size_t j = 0; j < bids.costs.size(); ++j) {
      if (used[j]) continue;
      used[j] = true;
      best = std::max(best, bids.valuations[i] - bids.costs[j] + go(i + 1));
      used[j] = false;
    }
    return best;
  };
  return go(0);
}

Bids random_bids(RngStream& r, std::int64_t max_agents, bool integer) {
  Bids b;
  for (auto n = r.uniform_int(0, max_agents); n > 0; --n) b.valuations.push_back(integer ? double(r.uniform_int(1, 100)) : r.uniform(1, 100));
  for (auto n = r.uniform_int(0, max_agents); n > 0; --n) b.costs.push_back(integer ? double(r.uniform_int(1, 100)) : r.uniform(1, 100));
  return b;
}

class Recorder final : public StepPolicy {
 public:
  explicit Recorder(std::unique_ptr<StepPolicy> inner) : inner_(std::move(inner)) {}
  double next_step(const ClockObservation& obs) override {
    const double s = inner_->next_step(obs);
    steps.push_back(s);
    observations.push_back(obs);
    return s;
  }
  std::vector<double> steps;
  std::vector<ClockObservation> observations;

 private:
  std::unique_ptr<StepPolicy> inner_;
};

void check_outcome_invariants(const Bids& bids, const AuctionOutcome& out) {
  double welfare = 0.0;
  for (const auto& m : out.matches) {
    CHECK(bids.valuations[m.buyer] >= m.price);
    CHECK(bids.costs[m.seller] <= m.price);
    welfare += bids.valuations[m.buyer] - bids.costs[m.seller];
  }
  CHECK(out.payments == out.receipts);
  CHECK(out.welfare == doctest::Approx(welfare));
  CHECK(out.welfare <= oracle_max_welfare(bids) + 1e-9);
  CHECK(out.messages == out.rounds * static_cast<std::int64_t>(bids.valuations.size() + bids.costs.size()) +
                           static_cast<std::int64_t>(out.buyer_claims.size() + out.seller_claims.size()));
  for (std::size_t k = 1; k < out.buyer_claims.size(); ++k) {
    const auto& a = out.buyer_claims[k - 1];
    const auto& b = out.buyer_claims[k];
    CHECK(b.round >= a.round);
    if (b.round > a.round) CHECK(b.price < a.price);
  }
  for (std::size_t k = 1; k < out.seller_claims.size(); ++k) {
    const auto& a = out.seller_claims[k - 1];
    const auto& b = out.seller_claims[k];
    CHECK(b.round >= a.round);
    if (b.round > a.round) CHECK(b.price > a.price);
  }
}

}  // namespace

TEST_SUITE("perceptual_scores") {
  const QoeParams q;
  TEST_CASE("zero rate") {
    const auto s = perceptual_scores(0, 1.3, q);
    CHECK(s.vmaf == 0.0);
    CHECK(s.ssim == 0.0);
  }
  TEST_CASE("hand evaluations") {
    CHECK(perceptual_scores(50, 0, q).vmaf == doctest::Approx(100 * (1 - std::exp(-1.0))));
    CHECK(perceptual_scores(50, 0, q).vmaf == doctest::Approx(63.21).epsilon(1e-4));
    CHECK(perceptual_scores(50, 9, q).vmaf == doctest::Approx(9.52).epsilon(1e-3));
  }
  TEST_CASE("ranges and monotonicity over a grid") {
    for (double w = 0; w <= 6; w += 0.5) {
      double prev_v = -1, prev_s = -1;
      for (double b = 0; b <= 300; b += 5) {
        const auto s = perceptual_scores(b, w, q);
        CHECK(s.vmaf >= 0);
        CHECK(s.vmaf <= 100);
        CHECK(s.ssim >= 0);
        CHECK(s.ssim <= 1);
        CHECK(s.vmaf >= prev_v);
        CHECK(s.ssim >= prev_s);
        if (b > 0 && b < 100) CHECK(s.vmaf > prev_v);
        prev_v = s.vmaf;
        prev_s = s.ssim;
        CHECK(perceptual_scores(b, w + 0.5, q).vmaf <= s.vmaf);
      }
    }
  }
}

TEST_SUITE("buyer_valuation") {
  TEST_CASE("zero rate") { CHECK(buyer_valuation({"u", 0.0, 0.0, 0.0}, {}) == 0.0); }
  TEST_CASE("hand evaluation") {
    const double expected = 10 * (0.5 * (1 - std::exp(-1.0)) + 0.5 * (1 - std::exp(-2.5)));
    CHECK(buyer_valuation({"u", 0.0, 50.0, 0.0}, {}) == doctest::Approx(expected));
    CHECK(expected == doctest::Approx(7.75).epsilon(1e-3));
  }
  TEST_CASE("weight degeneracy") {
    QoeParams q;
    q.w_vmaf = 1;
    q.w_ssim = 0;
    const VrUser u{"u", 0.7, 40.0, 0.0};
    CHECK(buyer_valuation(u, q) == doctest::Approx(q.lambda * perceptual_scores(40, 0.7, q).vmaf / 100));
  }
  TEST_CASE("bounded by lambda, monotone in rate and head speed") {
    const QoeParams q;
    for (double w = 0; w <= 5; w += 0.25) {
      for (double b = 0; b <= 400; b += 10) {
        const double v = buyer_valuation({"u", w, b, 0}, q);
        CHECK(v >= 0);
        CHECK(v <= q.lambda);
        CHECK(buyer_valuation({"u", w, b + 10, 0}, q) >= v);
        CHECK(buyer_valuation({"u", w + 0.25, b, 0}, q) <= v);
      }
    }
  }
}

TEST_SUITE("seller_cost") {
  TEST_CASE("zero rate is the base cost") { CHECK(seller_cost({"s", 0.3, 1.7, 0}, 0) == 1.7); }
  TEST_CASE("hand evaluation") { CHECK(seller_cost({"s", 0.04, 1.0, 0}, 50) == doctest::Approx(3.0)); }
  TEST_CASE("linear in energy price") {
    CHECK(seller_cost({"s", 0.2, 0, 0}, 30) == doctest::Approx(2 * seller_cost({"s", 0.1, 0, 0}, 30)));
  }
}

TEST_SUITE("run_dda") {
  const auto unit = ClockController::fixed(1.0);
  TEST_CASE("empty side") {
    CHECK(run_dda(Bids{{}, {3, 4}}, unit, kWorked).matches.empty());
    const auto out = run_dda(Bids{{10}, {}}, unit, kWorked);
    CHECK(out.matches.empty());
    CHECK(out.welfare == 0.0);
  }
  TEST_CASE("no gains from trade") {
    const auto out = run_dda(Bids{{10}, {20}}, unit, kWorked);
    CHECK(out.matches.empty());
    CHECK(out.welfare == 0.0);
  }
  TEST_CASE("three by three worked instance") {
    const auto out = run_dda(kThreeByThree, unit, kWorked);
    REQUIRE(out.matches.size() == 2);
    CHECK(out.welfare == 10.0);
    CHECK(out.welfare == brute_force_welfare(kThreeByThree));
    CHECK(out.matches[0].buyer == 0);
    CHECK(out.matches[0].seller == 0);
    CHECK(out.matches[1].buyer == 1);
    CHECK(out.matches[1].seller == 1);
    check_outcome_invariants(kThreeByThree, out);
  }
  TEST_CASE("agent-level overload prices from cached fields") {
    std::vector<VrUser> buyers{{"a", 0, 0, 10}, {"b", 0, 0, 8}, {"c", 0, 0, 6}};
    std::vector<EdgeSeller> sellers{{"x", 0, 0, 3}, {"y", 0, 0, 5}, {"z", 0, 0, 9}};
    CHECK(run_dda(buyers, sellers, unit, 2, 12) == run_dda(kThreeByThree, unit, kWorked));
  }
  TEST_CASE("invalid bounds") {
    CHECK_THROWS_AS(run_dda(kThreeByThree, unit, PriceBounds{5, 5}), std::invalid_argument);
    CHECK_THROWS_AS(run_dda(kThreeByThree, unit, PriceBounds{6, 5}), std::invalid_argument);
  }
  TEST_CASE("ties claim in input order") {
    const auto out = run_dda(Bids{{7, 7, 7}, {2, 2}}, unit, PriceBounds{0, 10});
    REQUIRE(out.buyer_claims.size() >= 2);
    CHECK(out.buyer_claims[0].agent == 0);
    CHECK(out.buyer_claims[1].agent == 1);
  }
  TEST_CASE("IR, budget balance and welfare bound on random instances") {
    RngStream r = rng_stream(5, "test/dda/invariants");
    const auto ou = make_ou_controller(0.5, 1.0, 0.4, 0.1, 3.0, rng_stream(5, "test/dda/ou"));
    for (int i = 0; i < 300; ++i) {
      const Bids bids = random_bids(r, 12, false);
      for (const auto* c : {&unit, &ou}) check_outcome_invariants(bids, run_dda(bids, *c, PriceBounds{0, 100}, std::to_string(i)));
    }
  }
  TEST_CASE("fine step is exactly efficient on integer instances") {
    RngStream r = rng_stream(6, "test/dda/efficient");
    const auto fine = ClockController::fixed(0.01);
    for (int i = 0; i < 100; ++i) {
      const Bids bids = random_bids(r, 6, true);
      CHECK(run_dda(bids, fine, PriceBounds{0, 100}).welfare == brute_force_welfare(bids));
    }
  }
  TEST_CASE("steps are positive and rounds are bounded by the price range") {
    RngStream r = rng_stream(7, "test/dda/rounds");
    const auto ou = make_ou_controller(0.3, 0.8, 0.5, 0.2, 2.0, rng_stream(7, "ou"));
    for (int i = 0; i < 100; ++i) {
      const Bids bids = random_bids(r, 15, false);
      Recorder rec(ou.start(std::to_string(i)));
      const auto out = run_dda(bids, rec, PriceBounds{0, 100});
      CHECK(out.rounds == static_cast<std::int64_t>(rec.steps.size()));
      CHECK(out.rounds <= static_cast<std::int64_t>((100 - 0) / ou.min_step()) + 1);
      for (double s : rec.steps) {
        CHECK(s >= 0.2);
        CHECK(s <= 2.0);
      }
    }
  }
  TEST_CASE("deterministic for a fixed controller and seed") {
    RngStream r = rng_stream(8, "test/dda/determinism");
    const Bids bids = random_bids(r, 20, false);
    const auto a = make_ou_controller(0.5, 1.0, 0.3, 0.125, 2.0, rng_stream(9, "ou"));
    const auto b = make_ou_controller(0.5, 1.0, 0.3, 0.125, 2.0, rng_stream(9, "ou"));
    CHECK(run_dda(bids, a, PriceBounds{0, 100}, "x") == run_dda(bids, b, PriceBounds{0, 100}, "x"));
  }
}

TEST_SUITE("oracle_max_welfare") {
  TEST_CASE("worked instance") { CHECK(oracle_max_welfare(kThreeByThree) == 10.0); }
  TEST_CASE("no gains from trade") { CHECK(oracle_max_welfare(Bids{{1, 2, 3}, {5, 6}}) == 0.0); }
  TEST_CASE("zero-surplus singleton") { CHECK(oracle_max_welfare(Bids{{5}, {5}}) == 0.0); }
  TEST_CASE("equals exhaustive matching search") {
    RngStream r = rng_stream(10, "test/dda/oracle");
    for (int i = 0; i < 300; ++i) {
      const Bids bids = random_bids(r, 6, i % 2 == 0);
      CHECK(oracle_max_welfare(bids) == doctest::Approx(brute_force_welfare(bids)));
    }
  }
}

TEST_SUITE("make_ou_controller") {
  TEST_CASE("noiseless at the mean is constant") {
    const auto c = make_ou_controller(0.5, 1.0, 0.0, 0.5, 2.0, rng_stream(1, "ou"));
    for (double s : step_sequence(c, 50)) CHECK(s == 1.0);
  }
  TEST_CASE("noiseless start away from the mean decays geometrically") {
    const double theta = 0.3, mu = 1.0, d0 = 1.8;
    const auto c = make_ou_controller(theta, mu, 0.0, 0.5, 2.0, rng_stream(1, "ou"), d0, "ou");
    const auto seq = step_sequence(c, 30);
    for (std::size_t t = 0; t < seq.size(); ++t) {
      CHECK(seq[t] == doctest::Approx(mu + (d0 - mu) * std::pow(1 - theta, double(t))));
    }
  }
  TEST_CASE("seeded sequences repeat and stay in bounds") {
    const auto a = make_ou_controller(0.5, 1.0, 0.2, 0.25, 1.5, rng_stream(42, "ou"));
    const auto b = make_ou_controller(0.5, 1.0, 0.2, 0.25, 1.5, rng_stream(42, "ou"));
    const auto sa = step_sequence(a, 500);
    CHECK(sa == step_sequence(b, 500));
    CHECK(sa != step_sequence(make_ou_controller(0.5, 1.0, 0.2, 0.25, 1.5, rng_stream(43, "ou")), 500));
    for (double s : sa) {
      CHECK(s >= 0.25);
      CHECK(s <= 1.5);
    }
  }
  TEST_CASE("run tags give independent reproducible paths") {
    const auto c = make_ou_controller(0.5, 1.0, 0.5, 0.1, 3.0, rng_stream(1, "ou"));
    CHECK(step_sequence(c, 20, "a") == step_sequence(c, 20, "a"));
    CHECK(step_sequence(c, 20, "a") != step_sequence(c, 20, "b"));
  }
  TEST_CASE("invalid parameters") {
    const auto rng = rng_stream(1, "ou");
    CHECK_THROWS(make_ou_controller(0.0, 1.0, 0.1, 0.5, 2.0, rng));
    CHECK_THROWS(make_ou_controller(1.5, 1.0, 0.1, 0.5, 2.0, rng));
    CHECK_THROWS(make_ou_controller(0.5, 1.0, -0.1, 0.5, 2.0, rng));
    CHECK_THROWS(make_ou_controller(0.5, 3.0, 0.1, 0.5, 2.0, rng));
    CHECK_THROWS(make_ou_controller(0.5, 1.0, 0.1, 0.0, 2.0, rng));
  }
}

TEST_SUITE("train_q_controller") {
  InstanceGenerator single(const Bids& bids, PriceBounds bounds) {
    return [=](RngStream&) { return TrainingInstance{bids, bounds}; };
  }
  TrainingConfig small_config() {
    TrainingConfig c;
    c.episodes = 400;
    c.eta = 0.0;
    return c;
  }

  TEST_CASE("without a round cost the learned welfare matches the base step") {
    RngStream r = rng_stream(11, "test/dda/train");
    for (int i = 0; i < 5; ++i) {
      Bids bids = random_bids(r, 10, false);
      const auto trained = train_q_controller(single(bids, {0, 100}), small_config(), rng_stream(11, "train"));
      const double learned = run_dda(bids, trained.controller, {0, 100}).welfare;
      const double base = run_dda(bids, ClockController::fixed(small_config().base_step), {0, 100}).welfare;
      CHECK(learned >= base - 1e-9);
    }
  }
  TEST_CASE("no exploration keeps the initial tie-break") {
    TrainingConfig c = small_config();
    c.epsilon_start = 0.0;
    c.epsilon_end = 0.0;
    c.eta = 0.05;
    const auto trained = train_q_controller(single(kThreeByThree, kWorked), c, rng_stream(1, "t"));
    const auto& learned = std::get<LearnedStep>(trained.controller.variant());
    for (std::size_t s = 0; s < learned.table.states; ++s) CHECK(learned.table.greedy(s) == learned.table.default_action);
    for (const auto& e : trained.episodes) CHECK(e.rounds == trained.episodes.front().rounds);
  }
  TEST_CASE("same seed gives identical tables") {
    const auto gen = family_generator(GeneratorSpec{}, QoeParams{}, PriceBounds{});
    TrainingConfig c;
    c.episodes = 300;
    const auto a = train_q_controller(gen, c, rng_stream(3, "t"));
    const auto b = train_q_controller(gen, c, rng_stream(3, "t"));
    CHECK(a.controller == b.controller);
    CHECK(!(a.controller == train_q_controller(gen, c, rng_stream(4, "t")).controller));
  }
  TEST_CASE("reward is welfare minus round cost") {
    TrainingConfig c = small_config();
    c.eta = 0.3;
    c.episodes = 20;
    for (const auto& e : train_q_controller(single(kThreeByThree, kWorked), c, rng_stream(2, "t")).episodes) {
      CHECK(e.reward == doctest::Approx(e.welfare - 0.3 * double(e.rounds)));
    }
  }
  TEST_CASE("learned steps stay within the action set") {
    const auto trained = train_q_controller(single(kThreeByThree, kWorked), small_config(), rng_stream(2, "t"));
    CHECK(trained.controller.min_step() == doctest::Approx(0.125));
    CHECK(trained.controller.max_step() == doctest::Approx(1.0));
  }
  TEST_CASE("invalid training configurations") {
    TrainingConfig c = small_config();
    c.multipliers.clear();
    CHECK_THROWS(train_q_controller(single(kThreeByThree, kWorked), c, rng_stream(1, "t")));
    c = small_config();
    c.episodes = 0;
    CHECK_THROWS(train_q_controller(single(kThreeByThree, kWorked), c, rng_stream(1, "t")));
  }
  TEST_CASE("Q-table survives a CSV round trip") {
    TrainingConfig c;
    c.episodes = 200;
    const auto trained = train_q_controller(family_generator(GeneratorSpec{}, QoeParams{}, PriceBounds{}), c,
                                            rng_stream(5, "t"));
    const auto& learned = std::get<LearnedStep>(trained.controller.variant());
    const std::string path = (std::filesystem::temp_directory_path() / "edgemarket_qtable_roundtrip.csv").string();
    write_text_file(path, to_csv(q_table_to_table(learned)));
    CHECK(learned_from_table(read_csv_table(path), c.base_step, c.multipliers) == learned);
  }
}

TEST_SUITE("compare_controllers") {
  std::vector<AuctionInstance> family(std::int64_t per_bitrate = 3) {
    GeneratorSpec spec;
    spec.instances_per_bitrate = per_bitrate;
    QoeParams q;
    q.lambda = 100;
    return generate_family(spec, q, PriceBounds{}, rng_stream(1, "test/family"));
  }
  TEST_CASE("single instance and controller equals a standalone run") {
    const auto inst = family(1).front();
    const auto c = ClockController::fixed(0.5, "half");
    const auto cmp = compare_controllers({inst}, {c});
    REQUIRE(cmp.summary.size() == 1);
    const auto out = run_dda(bids_of(inst), c, inst.bounds);
    CHECK(cmp.summary[0].mean_welfare == out.welfare);
    CHECK(cmp.summary[0].mean_rounds == double(out.rounds));
    CHECK(cmp.summary[0].mean_messages == double(out.messages));
    CHECK(cmp.summary[0].mean_ratio == doctest::Approx(out.welfare / oracle_max_welfare(bids_of(inst))));
  }
  TEST_CASE("a coarser fixed clock never takes more rounds") {
    const auto cmp = compare_controllers(family(), {ClockController::fixed(0.5, "d"), ClockController::fixed(1.0, "2d")});
    CHECK(cmp.summary[1].mean_rounds <= cmp.summary[0].mean_rounds);
  }
  TEST_CASE("ratios never exceed one") {
    const auto cmp = compare_controllers(family(), {ClockController::fixed(2.0, "coarse")});
    for (const auto& run : cmp.runs) CHECK(run.welfare <= run.oracle_welfare + 1e-9);
    CHECK(cmp.summary[0].mean_ratio <= 1.0);
  }
  TEST_CASE("parallel comparison equals the serial reference") {
    const std::vector<ClockController> cs{ClockController::fixed(0.25, "fine"),
                                          make_ou_controller(0.5, 1.0, 0.25, 0.125, 2.0, rng_stream(1, "ou"))};
    CHECK(compare_controllers(family(), cs) == compare_controllers_serial(family(), cs));
  }
  TEST_CASE("bitrate summary covers every grid bitrate") {
    const auto rows = summarize_by_bitrate(compare_controllers(family(2), {ClockController::fixed(1.0, "x")}));
    CHECK(rows.size() == 5);
    CHECK(rows.front().bitrate == 1.0);
    CHECK(rows.back().bitrate == 250.0);
  }
  TEST_CASE("empty instance set is rejected") {
    CHECK_THROWS(compare_controllers({}, {ClockController::fixed(1.0)}));
  }
}

TEST_SUITE("truthfulness_probe") {
  const auto unit = ClockController::fixed(1.0);
  TEST_CASE("truthful report gains nothing") {
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(truthfulness_probe(kThreeByThree, {Side::buyer, i}, kThreeByThree.valuations[i], unit, kWorked) == 0.0);
      CHECK(truthfulness_probe(kThreeByThree, {Side::seller, i}, kThreeByThree.costs[i], unit, kWorked) == 0.0);
    }
  }
  TEST_CASE("unmatched buyer overstating does not gain") {
    for (double mis : {11.0, 12.0, 15.0, 30.0}) {
      CHECK(truthfulness_probe(kThreeByThree, {Side::buyer, 2}, mis, unit, kWorked) <= 0.0);
    }
  }
  TEST_CASE("unknown agent") {
    CHECK_THROWS_AS(truthfulness_probe(kThreeByThree, {Side::seller, 3}, 1.0, unit, kWorked), std::out_of_range);
  }
}
