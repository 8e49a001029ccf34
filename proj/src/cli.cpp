#include "patrol/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "patrol/errors.hpp"
#include "patrol/evaluator.hpp"
#include "patrol/fixtures.hpp"
#include "patrol/game_oracle.hpp"
#include "patrol/tour_builder.hpp"
#include "patrol/value.hpp"

namespace patrol::cli {
namespace {

namespace fs = std::filesystem;

const std::vector<std::string> kSubcommands = {"analyze", "tour",   "extremity", "patrol",  "attack",
                                               "evaluate", "oracle", "value",     "fixtures"};

const std::vector<std::string> kTourKinds = {"euler", "double-cover", "leaf-pause", "tree-cpt", "e-patrolling",
                                             "two-node"};

const std::vector<std::string> kStrategies = {"uniform", "independent", "e-attack", "611", "fig8"};

std::string decimal(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

Json float_json(double v) { return Json{{"decimal", decimal(v)}}; }

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

struct LoadedNetwork {
  NetworkPtr net;
  std::string source;
};

/// A file path, the same path with ".json" appended, or a built-in fixture named by the stem.
LoadedNetwork resolve_network(const std::string& spec) {
  for (const fs::path& p : {fs::path(spec), fs::path(spec + ".json")}) {
    std::error_code ec;
    if (fs::is_regular_file(p, ec)) return {share(load_network_file(p)), p.string()};
  }
  std::string stem = fs::path(spec).stem().string();
  for (const auto& name : fixture_names()) {
    if (name == stem) return {fixture(name), "built-in " + name};
  }
  throw ParseError("no network file or built-in fixture named \"" + spec + "\"");
}

Rational parse_positive(const std::string& text, const char* what) {
  Rational v = parse_rational(text);
  if (v <= 0) throw PreconditionError(std::string(what) + " must be positive");
  return v;
}

TimedTour build_tour(const std::string& kind, const NetworkPtr& net, const std::optional<Rational>& alpha,
                     const std::string& start) {
  auto need_alpha = [&]() -> const Rational& {
    if (!alpha) throw PreconditionError("tour kind \"" + kind + "\" needs --alpha");
    return *alpha;
  };
  std::optional<std::size_t> start_node;
  if (!start.empty()) {
    auto n = net->find_node(start);
    if (!n) throw ParseError("unknown start node \"" + start + "\"");
    start_node = *n;
  }
  if (kind == "euler") return euler_tour(net, start_node.value_or(0));
  if (kind == "double-cover") return double_cover_tour(net, start_node);
  if (kind == "leaf-pause") return leaf_pause_tour(net, need_alpha(), start_node);
  if (kind == "tree-cpt") return tree_cpt(net, NetPoint::at_node(start_node.value_or(0)));
  if (kind == "e-patrolling") return e_patrolling_tour(net, need_alpha());
  if (kind == "two-node") return two_node_alternating_tour(net);
  throw ParseError("unknown tour kind \"" + kind + "\"");
}

/// k = 2 when certifiable, else k = 1.
PatrolCertificate auto_certificate(const MixedPatrol& patrol, const Rational& alpha, std::optional<std::size_t> k) {
  if (k) return certify_patrol(patrol, alpha, *k);
  try {
    return certify_patrol(patrol, alpha, 2);
  } catch (const Error&) {
    return certify_patrol(patrol, alpha, 1);
  }
}

BoundedAttack build_attack(const std::string& strategy, const MetricNetwork& net, const Rational& alpha,
                           const Rational& M) {
  if (strategy == "uniform") return uniform_attack(net, alpha, M);
  if (strategy == "independent") return independent_attack(net, leaf_points(net), alpha).bounded;
  if (strategy == "e-attack") return e_attack(net, alpha);
  if (strategy == "611") return attack_611(net, alpha);
  if (strategy == "fig8") return attack_fig8_tree(net, alpha);
  throw ParseError("unknown strategy \"" + strategy + "\"");
}

Json ext_json(const ExtendedLength& v) { return v ? number_json(*v) : Json("infinity"); }

Json bound_json(const BoundEntry& b) {
  return Json{{"source", b.source}, {"value", number_json(b.value)}, {"certified", b.certified}, {"note", b.note}};
}

std::vector<Rational> parse_sweep(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() != 3) throw ParseError("--alpha-sweep expects start:stop:step");
  Rational a = parse_positive(parts[0], "sweep start"), b = parse_rational(parts[1]),
           step = parse_positive(parts[2], "sweep step");
  std::vector<Rational> out;
  for (Rational x = a; x <= b; x += step) out.push_back(x);
  return out;
}

// Options shared by the subcommands; unused ones stay empty.
struct Options {
  std::string net, alpha, kind = "double-cover", start, strategy = "uniform", M = "0", sweep;
  std::string patrol_file, attack_file, dx, dt, horizon, tolerance = "0", out_dir = "fixtures", name;
  std::size_t k = 0, m = 1, mc = 0, max_iter = 200;
  std::uint64_t seed = 0;
  double eps = 0.02;
  bool exact = false, run_oracle = false, regret = false;
  std::string format = "json";
};

class Runner {
 public:
  explicit Runner(const Options& o) : o_(o) {}

  Json analyze() {
    auto [net, source] = load();
    const MetricNetwork& q = *net;
    Json leaves = Json::array();
    for (const auto& l : leaf_arcs(q)) {
      leaves.push_back(Json{{"arc", q.arc(l.arc).id}, {"leaf", q.node(l.leaf).id}, {"length", number_json(q.arc(l.arc).length)}});
    }
    Json doc{{"network", source},
             {"nodes", q.node_count()},
             {"arcs", q.arc_count()},
             {"mu", number_json(q.total_length())},
             {"tree", q.is_tree()},
             {"eulerian", q.is_eulerian()},
             {"girth", ext_json(girth(q))},
             {"generalized_girth", ext_json(generalized_girth(q))},
             {"leaf_arcs", leaves},
             {"leaf_count", leaves.size()}};
    if (!o_.alpha.empty()) {
      Rational alpha = parse_positive(o_.alpha, "--alpha");
      doc["alpha"] = number_json(alpha);
      doc["uniform_bound"] = number_json(min(Rational(1), alpha / q.total_length()));
      if (q.is_tree()) {
        auto profile = extremity_set(q, alpha);
        doc["lambda_E"] = number_json(profile.lambda_E);
        doc["extremity_components"] = profile.components.size();
        doc["leaf_condition"] = profile.leaf_condition;
        doc["v_star"] = number_json(profile.v_star);
      }
    }
    return doc;
  }

  Json tour() {
    auto [net, source] = load();
    auto tour = build_tour(o_.kind, net, optional_alpha(), o_.start);
    Json doc = tour_to_json(tour);
    doc["kind"] = o_.kind;
    doc["length"] = number_json(tour.period());
    if (tour.closed()) {
      std::size_t k = o_.k ? o_.k : 2;
      try {
        doc["separation"] = separation_to_json(*net, visit_separation(tour, k));
      } catch (const PreconditionError& e) {
        doc["separation"] = Json{{"k", k}, {"error", e.what()}};
      }
    }
    doc["network"] = network_to_json(*net);
    return doc;
  }

  Json extremity() {
    auto [net, source] = load();
    if (!o_.sweep.empty()) {
      Json rows = Json::array();
      Json counts = Json::array();
      for (const auto& alpha : parse_sweep(o_.sweep)) {
        auto p = extremity_set(*net, alpha);
        counts.push_back(p.components.size());
        rows.push_back(Json{{"alpha", number_json(alpha)},
                            {"components", p.components.size()},
                            {"lambda_E", number_json(p.lambda_E)},
                            {"leaf_condition", p.leaf_condition},
                            {"v_star", number_json(p.v_star)}});
      }
      return Json{{"network", source}, {"component_counts", counts}, {"sweep", rows}};
    }
    Rational alpha = required_alpha();
    Json doc = profile_to_json(*net, extremity_set(*net, alpha));
    doc["network"] = source;
    return doc;
  }

  Json patrol() {
    auto [net, source] = load();
    Rational alpha = required_alpha();
    auto mixed = multi_patroller(randomized_periodic(build_tour(o_.kind, net, alpha, o_.start)), o_.m);
    auto cert = auto_certificate(mixed, alpha, o_.k ? std::optional<std::size_t>(o_.k) : std::nullopt);
    Json doc = patrol_to_json(mixed);
    doc["kind"] = o_.kind;
    doc["certificate"] = certificate_to_json(*net, cert);
    doc["network"] = network_to_json(*net);
    return doc;
  }

  Json attack() {
    auto [net, source] = load();
    Rational alpha = required_alpha();
    auto b = build_attack(o_.strategy, *net, alpha, parse_rational(o_.M));
    Json doc = attack_to_json(*net, b.attack);
    doc["strategy"] = o_.strategy;
    doc["family"] = b.family;
    doc["bound"] = number_json(b.bound);
    doc["network"] = network_to_json(*net);
    return doc;
  }

  Json evaluate() {
    if (o_.patrol_file.empty() || o_.attack_file.empty()) throw ParseError("evaluate needs --patrol and --attack");
    Json pdoc = read_json_file(o_.patrol_file);
    Json adoc = read_json_file(o_.attack_file);
    NetworkPtr net;
    if (!o_.net.empty()) {
      net = resolve_network(o_.net).net;
    } else if (pdoc.contains("network")) {
      net = share(network_from_json(pdoc["network"]));
    } else {
      throw ParseError("the patrol document carries no network; pass --net");
    }
    if (o_.net.empty() && adoc.contains("network") && adoc["network"] != network_to_json(*net)) {
      throw ParseError("patrol and attack documents describe different networks");
    }
    MixedAttack attack = attack_from_json(*net, adoc);
    const bool pure = pdoc.contains("offset") ? pdoc["offset"] == "none"
                                              : (pdoc.contains("closed") && !pdoc["closed"].get<bool>());
    Json doc{{"patrol", o_.patrol_file}, {"attack", o_.attack_file}, {"alpha", number_json(attack.alpha)}};
    std::optional<Rational> guarantee;
    if (pure) {
      TimedTour path = tour_from_json(net, pdoc);
      doc["patrol_type"] = "pure";
      if (o_.mc) {
        std::mt19937_64 rng(o_.seed);
        auto r = monte_carlo_pure_patrol(path, attack, o_.mc, rng);
        doc["method"] = "monte carlo";
        doc["seed"] = o_.seed;
        doc["samples"] = r.samples;
        doc["estimate"] = float_json(r.estimate);
        doc["std_error"] = float_json(r.std_error);
      } else {
        auto r = intercept_pure_patrol(path, attack);
        doc["method"] = r.method;
        doc["probability"] = number_json(r.probability);
        Json per = Json::array();
        for (const auto& p : r.per_component) per.push_back(number_json(p));
        doc["per_component"] = per;
      }
    } else {
      MixedPatrol mixed = patrol_from_json(net, pdoc);
      doc["patrol_type"] = "mixed";
      doc["m"] = mixed.patrollers;
      try {
        auto cert = auto_certificate(mixed, attack.alpha, o_.k ? std::optional<std::size_t>(o_.k) : std::nullopt);
        guarantee = cert.guarantee;
        doc["certificate"] = certificate_to_json(*net, cert);
      } catch (const CertificateError& e) {
        doc["certificate"] = Json{{"error", e.what()}};
      }
      if (o_.mc) {
        std::mt19937_64 rng(o_.seed);
        auto r = monte_carlo_mixed_vs_attack(mixed, attack, o_.mc, rng);
        doc["method"] = "monte carlo";
        doc["seed"] = o_.seed;
        doc["samples"] = r.samples;
        doc["estimate"] = float_json(r.estimate);
        doc["std_error"] = float_json(r.std_error);
      } else {
        doc["method"] = "exact";
        doc["probability"] = number_json(intercept_mixed_vs_attack(mixed, attack));
      }
    }
    if (adoc.contains("bound")) {
      Rational bound = rational_from_json(adoc["bound"]);
      doc["attack_bound"] = number_json(bound);
      if (guarantee) {
        violation_ = *guarantee > bound;
        doc["violation"] = violation_;
      }
    }
    return doc;
  }

  Json oracle() {
    auto [net, source] = load();
    Rational alpha = required_alpha();
    if (o_.dx.empty()) throw ParseError("oracle needs --dx");
    Rational dx = parse_positive(o_.dx, "--dx");
    if (!o_.dt.empty() && parse_rational(o_.dt) != dx) {
      throw PreconditionError("the discretized game moves one grid edge per step, so --dt must equal --dx");
    }
    std::optional<Rational> horizon;
    if (!o_.horizon.empty()) horizon = parse_positive(o_.horizon, "--horizon");
    auto game = make_discrete_game(net, alpha, dx, horizon);
    OracleConfig c;
    c.eps = o_.eps;
    c.max_iter = o_.max_iter;
    c.regret_dynamics = o_.regret;
    auto r = solve_double_oracle(game, c);

    const Grid& g = game.grid;
    Json patrols = Json::array();
    for (const auto& [walk, p] : r.patrol_support) {
      Json positions = Json::array();
      for (auto v : walk.nodes) positions.push_back(point_to_json(*net, g.point[v]));
      patrols.push_back(Json{{"probability", float_json(p)}, {"positions", positions}});
    }
    Json attacks = Json::array();
    for (const auto& [cell, p] : r.attack_support) {
      attacks.push_back(Json{{"probability", float_json(p)},
                             {"at", point_to_json(*net, g.point[cell.node])},
                             {"start_after", number_json(dx * cell.cell)},
                             {"start_before", number_json(dx * (cell.cell + 1))}});
    }
    Json trace = Json::array();
    for (const auto& it : r.trace) {
      trace.push_back(Json{{"iteration", it.iteration},
                           {"restricted_value", float_json(it.restricted_value)},
                           {"lower", float_json(it.lower)},
                           {"upper", float_json(it.upper)},
                           {"patrols", it.patrols},
                           {"attacks", it.attacks}});
    }
    return Json{{"network", source},
                {"alpha", number_json(alpha)},
                {"dx", number_json(dx)},
                {"dt", number_json(dx)},
                {"start_horizon", number_json(dx * game.cells)},
                {"eps", float_json(o_.eps)},
                {"lower", float_json(r.lower)},
                {"upper", float_json(r.upper)},
                {"value", float_json(r.value())},
                {"gap", float_json(r.gap())},
                {"converged", r.converged},
                {"iterations", r.trace.size()},
                {"patrol_support", patrols},
                {"attack_support", attacks},
                {"trace", trace}};
  }

  Json value() {
    auto [net, source] = load();
    Rational alpha = required_alpha();
    ValueConfig c;
    c.tolerance = parse_rational(o_.tolerance);
    c.run_oracle = o_.run_oracle;
    if (!o_.dx.empty()) c.oracle_step = parse_positive(o_.dx, "--dx");
    if (!o_.horizon.empty()) c.start_horizon = parse_positive(o_.horizon, "--horizon");
    c.oracle.eps = o_.eps;
    c.oracle.max_iter = o_.max_iter;
    auto r = value_bracket(net, alpha, c);
    violation_ = r.violation;
    Json lowers = Json::array(), uppers = Json::array(), formulas = Json::array();
    for (const auto& b : r.lower_bounds) lowers.push_back(bound_json(b));
    for (const auto& b : r.upper_bounds) uppers.push_back(bound_json(b));
    for (const auto& f : r.formulas) {
      formulas.push_back(Json{{"name", f.name}, {"value", number_json(f.value)}, {"proven", f.proven}});
    }
    Json doc{{"network", source},
             {"alpha", number_json(alpha)},
             {"mu", number_json(r.mu)},
             {"lower", bound_json(r.lower)},
             {"upper", bound_json(r.upper)},
             {"pinned", r.pinned()},
             {"violation", r.violation},
             {"lower_bounds", lowers},
             {"upper_bounds", uppers},
             {"formulas", formulas},
             {"disagreements", r.disagreements}};
    if (r.pinned()) doc["value"] = number_json(r.lower.value);
    if (r.oracle) {
      doc["oracle"] = Json{{"step", number_json(r.oracle->step)},
                           {"start_horizon", number_json(r.oracle->start_horizon)},
                           {"lower", float_json(r.oracle->lower)},
                           {"upper", float_json(r.oracle->upper)},
                           {"converged", r.oracle->converged},
                           {"iterations", r.oracle->iterations}};
    }
    return doc;
  }

  Json fixtures() {
    std::vector<std::string> names;
    if (o_.name.empty()) {
      names = fixture_names();
    } else {
      fixture_network(o_.name);
      names = {o_.name};
    }
    fs::create_directories(o_.out_dir);
    Json written = Json::array();
    for (const auto& name : names) {
      auto net = fixture_network(name);
      fs::path path = fs::path(o_.out_dir) / (name + ".json");
      std::ofstream f(path);
      if (!f) throw Error("cannot write " + path.string());
      f << network_to_json(net).dump(2) << "\n";
      written.push_back(Json{{"name", name}, {"path", path.string()}, {"mu", number_json(net.total_length())}});
    }
    return Json{{"fixtures", written}};
  }

  bool violation() const { return violation_; }
  const std::string& digest_material() const { return material_; }

 private:
  LoadedNetwork load() {
    if (o_.net.empty()) throw ParseError("--net is required");
    auto loaded = resolve_network(o_.net);
    material_ += network_to_json(*loaded.net).dump();
    return loaded;
  }

  std::optional<Rational> optional_alpha() const {
    if (o_.alpha.empty()) return std::nullopt;
    return parse_positive(o_.alpha, "--alpha");
  }

  Rational required_alpha() const {
    if (o_.alpha.empty()) throw ParseError("--alpha is required");
    return parse_positive(o_.alpha, "--alpha");
  }

  const Options& o_;
  bool violation_ = false;
  std::string material_;
};

std::string usage() {
  std::string s = "usage: patrol <subcommand> [options]\nsubcommands:";
  for (const auto& c : kSubcommands) s += " " + c;
  return s + "\nrun 'patrol <subcommand> --help' for its options\n";
}

bool is_number_pair(const Json& j) {
  return j.is_object() && j.contains("decimal") && j.size() <= 2 && (j.size() == 1 || j.contains("exact"));
}

std::string scalar_text(const Json& j) {
  if (is_number_pair(j)) {
    return j.contains("exact") ? j["exact"].get<std::string>() + " (" + j["decimal"].get<std::string>() + ")"
                               : j["decimal"].get<std::string>();
  }
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

bool is_scalar(const Json& j) { return !j.is_structured() || is_number_pair(j); }

void render(const Json& j, const std::string& prefix, std::ostringstream& os) {
  if (is_scalar(j)) {
    os << prefix << ": " << scalar_text(j) << "\n";
    return;
  }
  if (j.is_array()) {
    bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return is_scalar(e); });
    if (flat) {
      os << prefix << ":";
      for (const auto& e : j) os << " " << scalar_text(e);
      os << "\n";
      return;
    }
    for (std::size_t i = 0; i < j.size(); ++i) render(j[i], prefix + "[" + std::to_string(i) + "]", os);
    return;
  }
  for (const auto& [k, v] : j.items()) render(v, prefix.empty() ? k : prefix + "." + k, os);
}

}  // namespace

std::string render_table(const Json& doc) {
  std::ostringstream os;
  render(doc, "", os);
  return os.str();
}

CommandReport run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CommandReport report;
  if (args.empty()) {
    err << usage();
    report.exit_code = kExitUsage;
    return report;
  }
  const std::string& first = args.front();
  if (first == "--help" || first == "-h") {
    out << usage();
    return report;
  }
  if (std::find(kSubcommands.begin(), kSubcommands.end(), first) == kSubcommands.end()) {
    err << "unknown subcommand \"" << first << "\"\n" << usage();
    report.exit_code = kExitUsage;
    return report;
  }

  Options o;
  CLI::App app{"Continuous patrolling games on metric networks", "patrol"};
  app.require_subcommand(1);
  auto net_opt = [&o](CLI::App* s, bool required = true) {
    auto* opt = s->add_option("--net", o.net, "network file or built-in fixture name");
    if (required) opt->required();
  };
  auto format_opt = [&o](CLI::App* s) {
    s->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "table"}));
  };

  auto* analyze = app.add_subcommand("analyze", "metric and structural summary of a network");
  net_opt(analyze);
  analyze->add_option("--alpha", o.alpha, "attack duration (adds extremity data on trees)");

  auto* tour = app.add_subcommand("tour", "build a closed tour and report its separation");
  net_opt(tour);
  tour->add_option("--kind", o.kind, "tour construction")->check(CLI::IsMember(kTourKinds));
  tour->add_option("--alpha", o.alpha, "attack duration (leaf-pause, e-patrolling)");
  tour->add_option("--start", o.start, "start node id");
  tour->add_option("--k", o.k, "visit count for the separation report (default 2)");

  auto* extremity = app.add_subcommand("extremity", "extremity set of a tree");
  net_opt(extremity);
  extremity->add_option("--alpha", o.alpha, "attack duration");
  extremity->add_option("--alpha-sweep", o.sweep, "start:stop:step");

  auto* patrol = app.add_subcommand("patrol", "randomized periodic patrol with its certificate");
  net_opt(patrol);
  patrol->add_option("--kind,--tour", o.kind, "tour construction")->check(CLI::IsMember(kTourKinds));
  patrol->add_option("--alpha", o.alpha, "attack duration")->required();
  patrol->add_option("--start", o.start, "start node id");
  patrol->add_option("--k", o.k, "visit count to certify (default: 2, else 1)");
  patrol->add_option("--m", o.m, "number of patrollers");

  auto* attack = app.add_subcommand("attack", "mixed attack with its interception bound");
  net_opt(attack);
  attack->add_option("--strategy", o.strategy, "attack family")->check(CLI::IsMember(kStrategies));
  attack->add_option("--alpha", o.alpha, "attack duration")->required();
  attack->add_option("--M", o.M, "start time of the uniform attack");

  auto* evaluate = app.add_subcommand("evaluate", "interception probability of a patrol against an attack");
  net_opt(evaluate, false);
  evaluate->add_option("--patrol", o.patrol_file, "patrol or tour document")->required();
  evaluate->add_option("--attack", o.attack_file, "attack document")->required();
  auto* exact = evaluate->add_flag("--exact", o.exact, "exact evaluation (default)");
  auto* mc = evaluate->add_option("--mc", o.mc, "Monte Carlo sample count");
  exact->excludes(mc);
  evaluate->add_option("--seed", o.seed, "Monte Carlo seed");
  evaluate->add_option("--k", o.k, "visit count for the patrol certificate");

  auto* oracle = app.add_subcommand("oracle", "double oracle on the discretized game");
  net_opt(oracle);
  oracle->add_option("--alpha", o.alpha, "attack duration")->required();
  oracle->add_option("--dx", o.dx, "grid step")->required();
  oracle->add_option("--dt", o.dt, "time step (must equal --dx)");
  oracle->add_option("--eps", o.eps, "target bracket width");
  oracle->add_option("--max-iter", o.max_iter, "iteration limit");
  oracle->add_option("--horizon", o.horizon, "attack start horizon (default 2 mu)");
  oracle->add_flag("--regret", o.regret, "solve restricted games by multiplicative weights");

  auto* value = app.add_subcommand("value", "bracket the game value");
  net_opt(value);
  value->add_option("--alpha", o.alpha, "attack duration")->required();
  value->add_option("--tolerance", o.tolerance, "slack for the violation check");
  value->add_flag("--oracle", o.run_oracle, "also run the double oracle");
  value->add_option("--dx", o.dx, "oracle grid step");
  value->add_option("--horizon", o.horizon, "oracle attack start horizon");
  value->add_option("--eps", o.eps, "oracle bracket width");
  value->add_option("--max-iter", o.max_iter, "oracle iteration limit");

  auto* fixtures = app.add_subcommand("fixtures", "write the named example networks as documents");
  fixtures->add_option("--out", o.out_dir, "output directory");
  fixtures->add_option("--name", o.name, "a single fixture");

  for (auto* s : {analyze, tour, extremity, patrol, attack, evaluate, oracle, value, fixtures}) format_opt(s);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return report;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    report.exit_code = kExitInvalidInput;
    return report;
  }

  Runner runner(o);
  Json payload;
  try {
    if (*analyze) payload = runner.analyze();
    else if (*tour) payload = runner.tour();
    else if (*extremity) payload = runner.extremity();
    else if (*patrol) payload = runner.patrol();
    else if (*attack) payload = runner.attack();
    else if (*evaluate) payload = runner.evaluate();
    else if (*oracle) payload = runner.oracle();
    else if (*value) payload = runner.value();
    else payload = runner.fixtures();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    report.exit_code = kExitInvalidInput;
    return report;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    report.exit_code = kExitInvalidInput;
    return report;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    report.exit_code = kExitInvalidInput;
    return report;
  }

  std::string joined;
  for (const auto& a : args) joined += a + '\x1f';
  Json doc{{"command", args},
           {"inputs_digest", hex(fnv1a(joined + runner.digest_material()))},
           {"exit_status", runner.violation() ? kExitViolation : kExitOk}};
  for (auto& [k, v] : payload.items()) doc[k] = v;
  report.document = doc;
  report.exit_code = runner.violation() ? kExitViolation : kExitOk;
  if (report.exit_code == kExitViolation) err << "bound violation: a certified lower bound exceeds a certified upper bound\n";
  out << (o.format == "table" ? render_table(doc) : doc.dump(2) + "\n");
  return report;
}

}  // namespace patrol::cli
