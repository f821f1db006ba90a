#include "edgemarket/core/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "edgemarket/core/error.hpp"
#include "edgemarket/core/json_reader.hpp"

namespace edgemarket {

using nlohmann::json;

std::string_view mechanism_name(Mechanism m) {
  switch (m) {
    case Mechanism::evo: return "evo";
    case Mechanism::dda: return "dda";
    case Mechanism::sip: return "sip";
  }
  return "?";
}

namespace {

constexpr double kProbabilityTolerance = 1e-9;

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void require_non_negative(double v, const std::string& path) {
  if (v < 0.0) throw ConfigError(path, "must be non-negative (got " + short_number(v) + ")");
}

void require_positive(double v, const std::string& path) {
  if (!(v > 0.0)) throw ConfigError(path, "must be positive (got " + short_number(v) + ")");
}

void require_unique(std::set<std::string>& seen, const std::string& id, const std::string& path) {
  if (id.empty()) throw ConfigError(path, "id must be non-empty");
  if (!seen.insert(id).second) throw ConfigError(path, "duplicate id '" + id + "'");
}

std::vector<double> read_number_list(const json& node, const std::string& path) {
  std::vector<double> out;
  const auto& arr = require_array(node, path);
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(as_number(arr[i], index_path(path, i)));
  return out;
}

std::vector<std::int64_t> read_integer_list(const json& node, const std::string& path) {
  std::vector<std::int64_t> out;
  const auto& arr = require_array(node, path);
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(as_integer(arr[i], index_path(path, i)));
  return out;
}

// ---------------------------------------------------------------- evo

evo::EvoConfig read_evo(const json& node, const std::string& path) {
  ObjectReader r(node, path);
  evo::EvoConfig cfg;

  const auto& regions = require_array(r.at("regions"), r.child_path("regions"));
  for (std::size_t i = 0; i < regions.size(); ++i) {
    ObjectReader rr(regions[i], index_path(r.child_path("regions"), i));
    evo::VspRegion region;
    region.id = rr.text("id");
    region.reward_pool = rr.number("reward_pool");
    region.sync_coeff = rr.number("sync_coeff", 1.0);
    rr.finish();
    cfg.game.regions.push_back(region);
  }

  const auto& pops = require_array(r.at("populations"), r.child_path("populations"));
  for (std::size_t i = 0; i < pops.size(); ++i) {
    const std::string ppath = index_path(r.child_path("populations"), i);
    ObjectReader pr(pops[i], ppath);
    evo::SspPopulation pop;
    pop.id = pr.text("id");
    pop.size = pr.integer("size");
    pop.capability = pr.number("capability", 1.0);
    pop.learning_rate = pr.number("learning_rate", 1.0);
    if (pr.has("cost")) {
      pop.cost = read_number_list(pr.at("cost"), pr.child_path("cost"));
    } else {
      pop.cost.assign(cfg.game.regions.size(), 0.0);
    }
    pr.finish();
    cfg.game.populations.push_back(pop);
  }

  if (r.has("init")) {
    evo::PopulationState init;
    const auto& rows = require_array(r.at("init"), r.child_path("init"));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      init.shares.push_back(read_number_list(rows[i], index_path(r.child_path("init"), i)));
    }
    cfg.init = init;
  }
  cfg.options.step = r.number("step", cfg.options.step);
  cfg.options.tol = r.number("tol", cfg.options.tol);
  cfg.options.max_steps = r.integer("max_steps", cfg.options.max_steps);
  cfg.options.record_every = r.integer("record_every", cfg.options.record_every);
  if (r.has("sweep")) {
    ObjectReader sr(r.at("sweep"), r.child_path("sweep"));
    evo::SweepSpec sweep;
    sweep.region = sr.text("region");
    sweep.grid = read_number_list(sr.at("grid"), sr.child_path("grid"));
    sr.finish();
    cfg.sweep = sweep;
  }
  r.finish();

  validate_game(cfg.game, path);
  if (cfg.init) validate_state(*cfg.init, cfg.game, r.child_path("init"));
  require_positive(cfg.options.step, r.child_path("step"));
  require_non_negative(cfg.options.tol, r.child_path("tol"));
  if (cfg.options.max_steps < 1) throw ConfigError(r.child_path("max_steps"), "must be at least 1");
  if (cfg.options.record_every < 1) throw ConfigError(r.child_path("record_every"), "must be at least 1");
  if (cfg.sweep) {
    const std::string spath = r.child_path("sweep");
    try {
      (void)cfg.game.region_index(cfg.sweep->region);
    } catch (const std::out_of_range&) {
      throw ConfigError(spath + ".region", "unknown region '" + cfg.sweep->region + "'");
    }
    for (std::size_t i = 0; i < cfg.sweep->grid.size(); ++i) {
      require_non_negative(cfg.sweep->grid[i], index_path(spath + ".grid", i));
    }
  }
  return cfg;
}

json evo_to_json(const evo::EvoConfig& cfg) {
  json j;
  j["regions"] = json::array();
  for (const auto& r : cfg.game.regions) {
    j["regions"].push_back({{"id", r.id}, {"reward_pool", r.reward_pool}, {"sync_coeff", r.sync_coeff}});
  }
  j["populations"] = json::array();
  for (const auto& p : cfg.game.populations) {
    j["populations"].push_back({{"id", p.id},
                                {"size", p.size},
                                {"capability", p.capability},
                                {"cost", p.cost},
                                {"learning_rate", p.learning_rate}});
  }
  if (cfg.init) j["init"] = cfg.init->shares;
  j["step"] = cfg.options.step;
  j["tol"] = cfg.options.tol;
  j["max_steps"] = cfg.options.max_steps;
  j["record_every"] = cfg.options.record_every;
  if (cfg.sweep) j["sweep"] = {{"region", cfg.sweep->region}, {"grid", cfg.sweep->grid}};
  return j;
}

// ---------------------------------------------------------------- dda

dda::ControllerKind controller_kind(const std::string& name, const std::string& path) {
  if (name == "fixed") return dda::ControllerKind::fixed;
  if (name == "ou") return dda::ControllerKind::ou;
  if (name == "learned") return dda::ControllerKind::learned;
  throw ConfigError(path, "unknown controller type '" + name + "' (expected fixed, ou or learned)");
}

std::string controller_kind_name(dda::ControllerKind kind) {
  switch (kind) {
    case dda::ControllerKind::fixed: return "fixed";
    case dda::ControllerKind::ou: return "ou";
    case dda::ControllerKind::learned: return "learned";
  }
  return "?";
}

dda::DdaConfig read_dda(const json& node, const std::string& path) {
  ObjectReader r(node, path);
  dda::DdaConfig cfg;

  if (r.has("qoe")) {
    ObjectReader q(r.at("qoe"), r.child_path("qoe"));
    cfg.qoe.alpha = q.number("alpha", cfg.qoe.alpha);
    cfg.qoe.gamma = q.number("gamma", cfg.qoe.gamma);
    cfg.qoe.beta = q.number("beta", cfg.qoe.beta);
    cfg.qoe.w_vmaf = q.number("w_vmaf", cfg.qoe.w_vmaf);
    cfg.qoe.w_ssim = q.number("w_ssim", cfg.qoe.w_ssim);
    cfg.qoe.lambda = q.number("lambda", cfg.qoe.lambda);
    q.finish();
  }
  validate_qoe(cfg.qoe, r.child_path("qoe"));

  if (r.has("price_bounds")) {
    ObjectReader b(r.at("price_bounds"), r.child_path("price_bounds"));
    cfg.bounds.low = b.number("low", cfg.bounds.low);
    cfg.bounds.high = b.number("high", cfg.bounds.high);
    b.finish();
  }
  require_non_negative(cfg.bounds.low, r.child_path("price_bounds") + ".low");
  if (!(cfg.bounds.low < cfg.bounds.high)) {
    throw ConfigError(r.child_path("price_bounds"), "low must be below high");
  }

  std::set<std::string> ids;
  if (r.has("buyers")) {
    const auto& arr = require_array(r.at("buyers"), r.child_path("buyers"));
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string bpath = index_path(r.child_path("buyers"), i);
      ObjectReader br(arr[i], bpath);
      dda::VrUser u;
      u.id = br.text("id");
      u.head_speed = br.number("head_speed");
      u.bitrate = br.number("bitrate");
      br.finish();
      require_unique(ids, u.id, bpath + ".id");
      require_non_negative(u.head_speed, bpath + ".head_speed");
      require_non_negative(u.bitrate, bpath + ".bitrate");
      cfg.buyers.push_back(u);
    }
  }
  ids.clear();
  if (r.has("sellers")) {
    const auto& arr = require_array(r.at("sellers"), r.child_path("sellers"));
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string spath = index_path(r.child_path("sellers"), i);
      ObjectReader sr(arr[i], spath);
      dda::EdgeSeller s;
      s.id = sr.text("id");
      s.energy_price = sr.number("energy_price");
      s.base_cost = sr.number("base_cost");
      sr.finish();
      require_unique(ids, s.id, spath + ".id");
      require_non_negative(s.energy_price, spath + ".energy_price");
      require_non_negative(s.base_cost, spath + ".base_cost");
      cfg.sellers.push_back(s);
    }
  }

  if (r.has("generator")) {
    const std::string gpath = r.child_path("generator");
    ObjectReader g(r.at("generator"), gpath);
    dda::GeneratorSpec gen;
    if (g.has("bitrates")) gen.bitrates = read_number_list(g.at("bitrates"), g.child_path("bitrates"));
    gen.instances_per_bitrate = g.integer("instances_per_bitrate", gen.instances_per_bitrate);
    gen.min_agents = g.integer("min_agents", gen.min_agents);
    gen.max_agents = g.integer("max_agents", gen.max_agents);
    gen.head_speed_max = g.number("head_speed_max", gen.head_speed_max);
    gen.energy_price_min = g.number("energy_price_min", gen.energy_price_min);
    gen.energy_price_max = g.number("energy_price_max", gen.energy_price_max);
    gen.base_cost_min = g.number("base_cost_min", gen.base_cost_min);
    gen.base_cost_max = g.number("base_cost_max", gen.base_cost_max);
    g.finish();
    if (gen.bitrates.empty()) throw ConfigError(gpath + ".bitrates", "must be non-empty");
    for (std::size_t i = 0; i < gen.bitrates.size(); ++i) {
      require_non_negative(gen.bitrates[i], index_path(gpath + ".bitrates", i));
    }
    if (gen.instances_per_bitrate < 1) throw ConfigError(gpath + ".instances_per_bitrate", "must be at least 1");
    if (gen.min_agents < 1) throw ConfigError(gpath + ".min_agents", "must be at least 1");
    if (gen.max_agents < gen.min_agents) throw ConfigError(gpath + ".max_agents", "must be >= min_agents");
    require_non_negative(gen.head_speed_max, gpath + ".head_speed_max");
    require_non_negative(gen.energy_price_min, gpath + ".energy_price_min");
    require_non_negative(gen.base_cost_min, gpath + ".base_cost_min");
    if (gen.energy_price_max < gen.energy_price_min) {
      throw ConfigError(gpath + ".energy_price_max", "must be >= energy_price_min");
    }
    if (gen.base_cost_max < gen.base_cost_min) throw ConfigError(gpath + ".base_cost_max", "must be >= base_cost_min");
    cfg.generator = gen;
  }

  if (r.has("training")) {
    const std::string tpath = r.child_path("training");
    ObjectReader t(r.at("training"), tpath);
    auto& tr = cfg.training;
    tr.episodes = t.integer("episodes", tr.episodes);
    tr.eta = t.number("eta", tr.eta);
    tr.learning_rate = t.number("learning_rate", tr.learning_rate);
    tr.discount = t.number("discount", tr.discount);
    tr.epsilon_start = t.number("epsilon_start", tr.epsilon_start);
    tr.epsilon_end = t.number("epsilon_end", tr.epsilon_end);
    tr.base_step = t.number("base_step", tr.base_step);
    if (t.has("multipliers")) tr.multipliers = read_number_list(t.at("multipliers"), t.child_path("multipliers"));
    t.finish();
    if (tr.episodes < 1) throw ConfigError(tpath + ".episodes", "must be at least 1");
    require_non_negative(tr.eta, tpath + ".eta");
    require_positive(tr.learning_rate, tpath + ".learning_rate");
    if (tr.learning_rate > 1.0) throw ConfigError(tpath + ".learning_rate", "must be at most 1");
    if (tr.discount < 0.0 || tr.discount > 1.0) throw ConfigError(tpath + ".discount", "must lie in [0, 1]");
    for (const char* key : {"epsilon_start", "epsilon_end"}) {
      const double e = std::string(key) == "epsilon_start" ? tr.epsilon_start : tr.epsilon_end;
      if (e < 0.0 || e > 1.0) throw ConfigError(tpath + "." + key, "must lie in [0, 1]");
    }
    require_positive(tr.base_step, tpath + ".base_step");
    if (tr.multipliers.empty()) throw ConfigError(tpath + ".multipliers", "action set must be non-empty");
    for (std::size_t i = 0; i < tr.multipliers.size(); ++i) {
      require_positive(tr.multipliers[i], index_path(tpath + ".multipliers", i));
    }
  }

  if (r.has("controllers")) {
    std::set<std::string> names;
    const auto& arr = require_array(r.at("controllers"), r.child_path("controllers"));
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string cpath = index_path(r.child_path("controllers"), i);
      ObjectReader cr(arr[i], cpath);
      dda::ControllerSpec c;
      c.name = cr.text("name");
      c.kind = controller_kind(cr.text("type"), cpath + ".type");
      c.step = cr.number("step", c.step);
      c.theta = cr.number("theta", c.theta);
      c.mu = cr.number("mu", c.mu);
      c.sigma = cr.number("sigma", c.sigma);
      c.min_step = cr.number("min_step", c.min_step);
      c.max_step = cr.number("max_step", c.max_step);
      c.q_table = cr.text("q_table", "");
      cr.finish();
      require_unique(names, c.name, cpath + ".name");
      require_positive(c.step, cpath + ".step");
      if (c.kind == dda::ControllerKind::ou) {
        if (!(c.theta > 0.0 && c.theta <= 1.0)) throw ConfigError(cpath + ".theta", "must lie in (0, 1]");
        require_non_negative(c.sigma, cpath + ".sigma");
        require_positive(c.min_step, cpath + ".min_step");
        if (!(c.min_step <= c.mu && c.mu <= c.max_step)) {
          throw ConfigError(cpath + ".mu", "must satisfy min_step <= mu <= max_step");
        }
      }
      cfg.controllers.push_back(c);
    }
  }
  r.finish();
  return cfg;
}

json dda_to_json(const dda::DdaConfig& cfg) {
  json j;
  j["qoe"] = {{"alpha", cfg.qoe.alpha}, {"gamma", cfg.qoe.gamma},   {"beta", cfg.qoe.beta},
              {"w_vmaf", cfg.qoe.w_vmaf}, {"w_ssim", cfg.qoe.w_ssim}, {"lambda", cfg.qoe.lambda}};
  j["price_bounds"] = {{"low", cfg.bounds.low}, {"high", cfg.bounds.high}};
  j["buyers"] = json::array();
  for (const auto& b : cfg.buyers) {
    j["buyers"].push_back({{"id", b.id}, {"head_speed", b.head_speed}, {"bitrate", b.bitrate}});
  }
  j["sellers"] = json::array();
  for (const auto& s : cfg.sellers) {
    j["sellers"].push_back({{"id", s.id}, {"energy_price", s.energy_price}, {"base_cost", s.base_cost}});
  }
  if (cfg.generator) {
    const auto& g = *cfg.generator;
    j["generator"] = {{"bitrates", g.bitrates},
                      {"instances_per_bitrate", g.instances_per_bitrate},
                      {"min_agents", g.min_agents},
                      {"max_agents", g.max_agents},
                      {"head_speed_max", g.head_speed_max},
                      {"energy_price_min", g.energy_price_min},
                      {"energy_price_max", g.energy_price_max},
                      {"base_cost_min", g.base_cost_min},
                      {"base_cost_max", g.base_cost_max}};
  }
  j["controllers"] = json::array();
  for (const auto& c : cfg.controllers) {
    json cj = {{"name", c.name}, {"type", controller_kind_name(c.kind)}, {"step", c.step},
               {"theta", c.theta}, {"mu", c.mu}, {"sigma", c.sigma},
               {"min_step", c.min_step}, {"max_step", c.max_step}};
    if (!c.q_table.empty()) cj["q_table"] = c.q_table;
    j["controllers"].push_back(cj);
  }
  const auto& t = cfg.training;
  j["training"] = {{"episodes", t.episodes},           {"eta", t.eta},
                   {"learning_rate", t.learning_rate}, {"discount", t.discount},
                   {"epsilon_start", t.epsilon_start}, {"epsilon_end", t.epsilon_end},
                   {"base_step", t.base_step},         {"multipliers", t.multipliers}};
  return j;
}

// ---------------------------------------------------------------- sip

sip::DistributionSpec read_distribution(const json& node, const std::string& path) {
  ObjectReader r(node, path);
  sip::DistributionSpec spec;
  if (r.has("marginals")) {
    const auto& arr = require_array(r.at("marginals"), r.child_path("marginals"));
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string mpath = index_path(r.child_path("marginals"), i);
      ObjectReader m(arr[i], mpath);
      const std::string type = m.text("type");
      if (type == "uniform_int") {
        sip::UniformInt u{m.integer("lo"), m.integer("hi")};
        if (u.lo < 0) throw ConfigError(mpath + ".lo", "must be non-negative");
        if (u.lo > u.hi) throw ConfigError(mpath + ".hi", "invalid bounds: lo > hi");
        spec.marginals.emplace_back(u);
      } else if (type == "normal") {
        sip::DiscretizedNormal n{m.number("mean"), m.number("stddev")};
        require_non_negative(n.stddev, mpath + ".stddev");
        spec.marginals.emplace_back(n);
      } else {
        throw ConfigError(mpath + ".type", "unknown marginal '" + type + "' (expected uniform_int or normal)");
      }
      m.finish();
    }
  }
  if (r.has("empirical")) {
    const auto& arr = require_array(r.at("empirical"), r.child_path("empirical"));
    for (std::size_t i = 0; i < arr.size(); ++i) {
      spec.empirical.push_back(read_integer_list(arr[i], index_path(r.child_path("empirical"), i)));
    }
  }
  r.finish();
  if (spec.marginals.empty() == spec.empirical.empty()) {
    throw ConfigError(path, "exactly one of marginals or empirical is required");
  }
  return spec;
}

sip::SipInstance read_sip_instance(const json& node, const std::string& path) {
  ObjectReader r(node, path);
  sip::SipInstance inst;
  inst.name = r.text("name");
  const auto& res = require_array(r.at("resources"), r.child_path("resources"));
  for (std::size_t i = 0; i < res.size(); ++i) {
    ObjectReader rr(res[i], index_path(r.child_path("resources"), i));
    sip::ResourceType t;
    t.id = rr.text("id");
    t.price_reserved = rr.number("price_reserved");
    t.price_on_demand = rr.number("price_on_demand");
    rr.finish();
    inst.resources.push_back(t);
  }
  if (r.has("scenarios")) {
    const auto& arr = require_array(r.at("scenarios"), r.child_path("scenarios"));
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string spath = index_path(r.child_path("scenarios"), i);
      ObjectReader sr(arr[i], spath);
      sip::Scenario s;
      s.demand = read_integer_list(sr.at("demand"), sr.child_path("demand"));
      s.probability = sr.number("probability");
      sr.finish();
      inst.demand.scenarios.push_back(s);
    }
  }
  if (r.has("distribution")) inst.distribution = read_distribution(r.at("distribution"), r.child_path("distribution"));
  inst.n_scenarios = r.integer("n_scenarios", 0);
  if (r.has("trace")) {
    const auto& arr = require_array(r.at("trace"), r.child_path("trace"));
    for (std::size_t i = 0; i < arr.size(); ++i) {
      inst.demand.trace.push_back(read_integer_list(arr[i], index_path(r.child_path("trace"), i)));
    }
  }
  if (r.has("budget")) inst.budget = r.number("budget");
  r.finish();
  validate_instance(inst, path);
  return inst;
}

json sip_instance_to_json(const sip::SipInstance& inst) {
  json j;
  j["name"] = inst.name;
  j["resources"] = json::array();
  for (const auto& r : inst.resources) {
    j["resources"].push_back(
        {{"id", r.id}, {"price_reserved", r.price_reserved}, {"price_on_demand", r.price_on_demand}});
  }
  if (!inst.demand.scenarios.empty()) {
    j["scenarios"] = json::array();
    for (const auto& s : inst.demand.scenarios) {
      j["scenarios"].push_back({{"demand", s.demand}, {"probability", s.probability}});
    }
  }
  if (inst.distribution) {
    json d = json::object();
    if (!inst.distribution->marginals.empty()) {
      d["marginals"] = json::array();
      for (const auto& m : inst.distribution->marginals) {
        if (const auto* u = std::get_if<sip::UniformInt>(&m)) {
          d["marginals"].push_back({{"type", "uniform_int"}, {"lo", u->lo}, {"hi", u->hi}});
        } else {
          const auto& n = std::get<sip::DiscretizedNormal>(m);
          d["marginals"].push_back({{"type", "normal"}, {"mean", n.mean}, {"stddev", n.stddev}});
        }
      }
    }
    if (!inst.distribution->empirical.empty()) d["empirical"] = inst.distribution->empirical;
    j["distribution"] = d;
    j["n_scenarios"] = inst.n_scenarios;
  }
  if (!inst.demand.trace.empty()) j["trace"] = inst.demand.trace;
  if (inst.budget) j["budget"] = *inst.budget;
  return j;
}

sip::SipConfig read_sip(const json& node, const std::string& path) {
  ObjectReader r(node, path);
  sip::SipConfig cfg;
  if (r.has("instances")) {
    std::set<std::string> names;
    const auto& arr = require_array(r.at("instances"), r.child_path("instances"));
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string ipath = index_path(r.child_path("instances"), i);
      cfg.instances.push_back(read_sip_instance(arr[i], ipath));
      require_unique(names, cfg.instances.back().name, ipath + ".name");
    }
  }
  if (r.has("random")) {
    const std::string rpath = r.child_path("random");
    ObjectReader rr(r.at("random"), rpath);
    sip::RandomInstanceSpec spec;
    spec.count = rr.integer("count");
    spec.max_resources = rr.integer("max_resources", spec.max_resources);
    spec.max_demand = rr.integer("max_demand", spec.max_demand);
    spec.max_scenarios = rr.integer("max_scenarios", spec.max_scenarios);
    spec.trace_length = rr.integer("trace_length", spec.trace_length);
    spec.budget_probability = rr.number("budget_probability", spec.budget_probability);
    rr.finish();
    if (spec.count < 0) throw ConfigError(rpath + ".count", "must be non-negative");
    if (spec.max_resources < 1) throw ConfigError(rpath + ".max_resources", "must be at least 1");
    if (spec.max_demand < 0) throw ConfigError(rpath + ".max_demand", "must be non-negative");
    if (spec.max_scenarios < 1) throw ConfigError(rpath + ".max_scenarios", "must be at least 1");
    if (spec.trace_length < 1) throw ConfigError(rpath + ".trace_length", "must be at least 1");
    if (spec.budget_probability < 0.0 || spec.budget_probability > 1.0) {
      throw ConfigError(rpath + ".budget_probability", "must lie in [0, 1]");
    }
    cfg.random = spec;
  }
  cfg.trace_length = r.integer("trace_length", cfg.trace_length);
  r.finish();
  if (cfg.trace_length < 1) throw ConfigError(r.child_path("trace_length"), "must be at least 1");
  if (cfg.instances.empty() && (!cfg.random || cfg.random->count == 0)) {
    throw ConfigError(r.child_path("instances"), "at least one instance is required");
  }
  return cfg;
}

json sip_to_json(const sip::SipConfig& cfg) {
  json j;
  j["instances"] = json::array();
  for (const auto& inst : cfg.instances) j["instances"].push_back(sip_instance_to_json(inst));
  if (cfg.random) {
    const auto& s = *cfg.random;
    j["random"] = {{"count", s.count},
                   {"max_resources", s.max_resources},
                   {"max_demand", s.max_demand},
                   {"max_scenarios", s.max_scenarios},
                   {"trace_length", s.trace_length},
                   {"budget_probability", s.budget_probability}};
  }
  j["trace_length"] = cfg.trace_length;
  return j;
}

SimConfig read_root(const json& doc) {
  ObjectReader r(doc, "");
  SimConfig cfg;
  cfg.seed = r.unsigned_integer("seed", 0);
  const std::string mech = r.text("mechanism");
  if (mech == "evo") {
    cfg.section = read_evo(r.at("evo"), "evo");
  } else if (mech == "dda") {
    cfg.section = read_dda(r.at("dda"), "dda");
  } else if (mech == "sip") {
    cfg.section = read_sip(r.at("sip"), "sip");
  } else {
    throw ConfigError("mechanism", "must be one of evo, dda, sip (got '" + mech + "')");
  }
  if (r.has("output")) {
    ObjectReader o(r.at("output"), "output");
    cfg.output_dir = o.text("dir", cfg.output_dir);
    o.finish();
  }
  r.finish();
  return cfg;
}

}  // namespace

void validate_game(const evo::EvoGame& game, const std::string& path) {
  const std::string prefix = path.empty() ? "" : path + ".";
  if (game.regions.empty()) throw ConfigError(prefix + "regions", "at least one region is required");
  if (game.populations.empty()) throw ConfigError(prefix + "populations", "at least one population is required");
  std::set<std::string> ids;
  for (std::size_t v = 0; v < game.regions.size(); ++v) {
    const std::string rpath = index_path(prefix + "regions", v);
    const auto& region = game.regions[v];
    require_unique(ids, region.id, rpath + ".id");
    require_non_negative(region.reward_pool, rpath + ".reward_pool");
    require_positive(region.sync_coeff, rpath + ".sync_coeff");
  }
  ids.clear();
  for (std::size_t p = 0; p < game.populations.size(); ++p) {
    const std::string ppath = index_path(prefix + "populations", p);
    const auto& pop = game.populations[p];
    require_unique(ids, pop.id, ppath + ".id");
    if (pop.size < 1) throw ConfigError(ppath + ".size", "must be a positive integer");
    require_positive(pop.capability, ppath + ".capability");
    require_positive(pop.learning_rate, ppath + ".learning_rate");
    if (pop.cost.size() != game.regions.size()) {
      throw ConfigError(ppath + ".cost", "length " + std::to_string(pop.cost.size()) + " does not match " +
                                             std::to_string(game.regions.size()) + " regions");
    }
    for (std::size_t v = 0; v < pop.cost.size(); ++v) require_non_negative(pop.cost[v], index_path(ppath + ".cost", v));
  }
}

void validate_state(const evo::PopulationState& state, const evo::EvoGame& game, const std::string& path) {
  if (state.shares.size() != game.populations.size()) {
    throw ConfigError(path, "expected one share vector per population");
  }
  for (std::size_t p = 0; p < state.shares.size(); ++p) {
    const std::string ppath = index_path(path, p);
    if (state.shares[p].size() != game.regions.size()) {
      throw ConfigError(ppath, "expected one share per region");
    }
    double sum = 0.0;
    for (std::size_t v = 0; v < state.shares[p].size(); ++v) {
      const double x = state.shares[p][v];
      if (x < 0.0 || x > 1.0) throw ConfigError(index_path(ppath, v), "share must lie in [0, 1]");
      sum += x;
    }
    if (std::abs(sum - 1.0) > kProbabilityTolerance) {
      throw ConfigError(ppath, "shares sum to " + short_number(sum) + " (expected 1)");
    }
  }
}

void validate_qoe(const dda::QoeParams& qoe, const std::string& path) {
  require_positive(qoe.alpha, path + ".alpha");
  require_positive(qoe.gamma, path + ".gamma");
  require_positive(qoe.beta, path + ".beta");
  require_non_negative(qoe.w_vmaf, path + ".w_vmaf");
  require_non_negative(qoe.w_ssim, path + ".w_ssim");
  if (std::abs(qoe.w_vmaf + qoe.w_ssim - 1.0) > kProbabilityTolerance) {
    throw ConfigError(path + ".w_ssim", "w_vmaf + w_ssim sum to " + short_number(qoe.w_vmaf + qoe.w_ssim) +
                                            " (expected 1)");
  }
  require_positive(qoe.lambda, path + ".lambda");
}

void validate_instance(const sip::SipInstance& inst, const std::string& path) {
  const std::string prefix = path.empty() ? "" : path + ".";
  if (inst.resources.empty()) throw ConfigError(prefix + "resources", "at least one resource is required");
  std::set<std::string> ids;
  for (std::size_t r = 0; r < inst.resources.size(); ++r) {
    const std::string rpath = index_path(prefix + "resources", r);
    require_unique(ids, inst.resources[r].id, rpath + ".id");
    require_non_negative(inst.resources[r].price_reserved, rpath + ".price_reserved");
    require_non_negative(inst.resources[r].price_on_demand, rpath + ".price_on_demand");
  }
  const std::size_t n = inst.resources.size();
  const bool explicit_scenarios = !inst.demand.scenarios.empty();
  if (explicit_scenarios == inst.distribution.has_value()) {
    throw ConfigError(prefix + "scenarios", "exactly one of scenarios or distribution is required");
  }
  if (explicit_scenarios) {
    double sum = 0.0;
    for (std::size_t s = 0; s < inst.demand.scenarios.size(); ++s) {
      const std::string spath = index_path(prefix + "scenarios", s);
      const auto& sc = inst.demand.scenarios[s];
      if (sc.demand.size() != n) throw ConfigError(spath + ".demand", "length does not match resources");
      for (std::size_t r = 0; r < n; ++r) {
        if (sc.demand[r] < 0) throw ConfigError(index_path(spath + ".demand", r), "demand must be non-negative");
      }
      require_positive(sc.probability, spath + ".probability");
      sum += sc.probability;
    }
    if (std::abs(sum - 1.0) > kProbabilityTolerance) {
      throw ConfigError(prefix + "scenarios", "probabilities sum to " + short_number(sum) + " (expected 1)");
    }
  } else {
    const auto& d = *inst.distribution;
    if (!d.marginals.empty() && d.marginals.size() != n) {
      throw ConfigError(prefix + "distribution.marginals", "length does not match resources");
    }
    for (std::size_t t = 0; t < d.empirical.size(); ++t) {
      const std::string tpath = index_path(prefix + "distribution.empirical", t);
      if (d.empirical[t].size() != n) throw ConfigError(tpath, "length does not match resources");
      for (auto x : d.empirical[t]) {
        if (x < 0) throw ConfigError(tpath, "demand must be non-negative");
      }
    }
    if (inst.n_scenarios < 1) throw ConfigError(prefix + "n_scenarios", "must be at least 1");
  }
  for (std::size_t t = 0; t < inst.demand.trace.size(); ++t) {
    const std::string tpath = index_path(prefix + "trace", t);
    if (inst.demand.trace[t].size() != n) throw ConfigError(tpath, "length does not match resources");
    for (auto x : inst.demand.trace[t]) {
      if (x < 0) throw ConfigError(tpath, "demand must be non-negative");
    }
  }
  if (inst.budget) require_non_negative(*inst.budget, prefix + "budget");
}

SimConfig validate_config(std::string_view raw) {
  json doc;
  try {
    doc = json::parse(raw.begin(), raw.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed configuration: ") + e.what());
  }
  return read_root(doc);
}

SimConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return validate_config(buf.str());
}

json to_json(const SimConfig& config) {
  json j;
  j["seed"] = config.seed;
  j["mechanism"] = std::string(mechanism_name(config.mechanism()));
  std::visit(
      [&](const auto& section) {
        using T = std::decay_t<decltype(section)>;
        if constexpr (std::is_same_v<T, evo::EvoConfig>) {
          j["evo"] = evo_to_json(section);
        } else if constexpr (std::is_same_v<T, dda::DdaConfig>) {
          j["dda"] = dda_to_json(section);
        } else {
          j["sip"] = sip_to_json(section);
        }
      },
      config.section);
  j["output"] = {{"dir", config.output_dir}};
  return j;
}

std::string serialize_config(const SimConfig& config) { return to_json(config).dump(2) + "\n"; }

}  // namespace edgemarket
