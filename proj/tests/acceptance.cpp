// Acceptance run: one PASS/FAIL line per reproduction target and property suite.
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "patrol/cli.hpp"
#include "patrol/errors.hpp"
#include "patrol/evaluator.hpp"
#include "patrol/fixtures.hpp"
#include "patrol/game_oracle.hpp"
#include "patrol/tour_builder.hpp"
#include "patrol/value.hpp"

using namespace patrol;

namespace {

// Pinned tolerances.
constexpr double kOracleEps = 0.02;        // double-oracle bracket width and value tolerance
constexpr double kDpSlack = 1e-9;          // floating DP optimum against an exact bound
constexpr double kIdentifyEps = 0.02;      // V(Q') >= V(Q) - eps after identifying two points
const Rational kBestResponseStep(1, 2);    // grid step for patroller best responses

struct Check {
  std::vector<std::string> failures;
  std::size_t count = 0;
  void expect(bool ok, const std::string& what) {
    ++count;
    if (!ok && failures.size() < 5) failures.push_back(what);
  }
};

std::string str(const Rational& r) { return to_string(r); }

struct Criterion {
  int id;
  std::string title;
  double seconds_limit;
  std::function<std::string(Check&)> body;
};


std::multiset<Rational> weights(const MixedAttack& a) {
  std::multiset<Rational> out;
  for (const auto& c : a.components) out.insert(c.weight);
  return out;
}

Rational random_time(std::mt19937& rng, const Rational& span) {
  std::uniform_int_distribution<long> d(0, 1 << 12);
  return span * Rational(d(rng), 1 << 12);
}

std::size_t cli_exit(const std::vector<std::string>& args, Json& doc) {
  std::ostringstream out, err;
  auto r = cli::run(args, out, err);
  doc = r.document;
  return static_cast<std::size_t>(r.exit_code);
}

// ---------------------------------------------------------------------------------------------

std::string eulerian(Check& c) {
  auto circle = fixture("circle");
  auto loops = share(MetricNetwork({{"O", false}}, {{"s", 0, 0, Rational(1)}, {"t", 0, 0, Rational(2)}}));
  std::size_t grid_points = 0;
  for (const auto& [net, alphas] : {std::pair{circle, std::vector<Rational>{Rational(1, 4), Rational(1, 2), Rational(3, 4)}},
                                    std::pair{loops, std::vector<Rational>{Rational(1), Rational(2)}}}) {
    auto p = randomized_periodic(euler_tour(net));
    const Rational mu = net->total_length();
    for (const auto& alpha : alphas) {
      for (std::size_t a = 0; a < net->arc_count(); ++a) {
        for (Rational o = 0; o <= net->arc(a).length; o += Rational(1, 8)) {
          for (Rational tau = 0; tau < 2 * p.period(); tau += Rational(3, 8)) {
            ++grid_points;
            auto x = net->point(a, o);
            auto got = intercept_mixed_patrol(p, x, tau, alpha).probability;
            // Nodes of degree above two are passed more than once per period.
            bool once = !x.is_node() || net->degree(x.node()) == 2;
            c.expect(once ? got == alpha / mu : got >= alpha / mu,
                     "Euler patrol at a grid attack gives " + str(got) + " against " + str(alpha / mu));
          }
        }
      }
      auto br = best_response_attack(p, alpha, Rational(1, 8));
      c.expect(br.probability == alpha / mu, "best attack against the Euler patrol is not alpha / mu");
    }
  }
  std::mt19937 rng(1);
  std::size_t worst_hits = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto& net = i % 2 ? circle : loops;
    Rational alpha(1 + i % 3, 4);
    auto attack = uniform_attack(*net, alpha, Rational(1));
    auto path = oracle::random_patrol(rng, net, Rational(4), i % 3 == 0);
    auto got = intercept_pure_patrol(path, attack.attack).probability;
    c.expect(got <= attack.bound, "random patrol beats the uniform attack: " + str(got));
    worst_hits += got == attack.bound;
  }
  return std::to_string(grid_points) + " grid attacks at alpha/mu (exact off multi-passage nodes); 1000 random patrols <= alpha/mu (" +
         std::to_string(worst_hits) + " attain it)";
}

std::string k4(Check& c) {
  auto net = fixture("K4");
  auto doubled = double_network(*net);
  auto circuit = double_cover_circuit(doubled);
  std::string names;
  for (std::size_t i = 0; i < circuit.size(); ++i) names += (i ? "," : "") + doubled.network->arc(circuit[i].arc).id;
  c.expect(names == "a,b',e',f',b,c,d,e,c',a',f,d'", "doubled circuit is " + names);
  auto tour = double_cover_tour(net);
  auto trs = tour.traversals();
  std::map<std::size_t, int> count;
  for (const auto& t : trs) {
    c.expect(t.full(*net), "partial traversal");
    count[t.arc]++;
  }
  for (std::size_t a = 0; a < net->arc_count(); ++a) c.expect(count[a] == 2, "arc not covered twice");
  for (std::size_t i = 0; i < trs.size(); ++i) {
    const auto& x = trs[i];
    const auto& y = trs[(i + 1) % trs.size()];
    c.expect(!(x.arc == y.arc && x.dir != y.dir), "immediate reversal");
  }
  c.expect(tour.period() == 12, "L = " + str(tour.period()));
  auto sep = visit_separation(tour, 2);
  c.expect(sep.alpha0 >= 3, "separation " + str(sep.alpha0));
  auto v = value_bracket(net, Rational(3));
  c.expect(v.pinned() && v.lower.value == Rational(1, 2), "value bracket [" + str(v.lower.value) + ", " + str(v.upper.value) + "]");
  return "traversals " + names + ", L = 12, separation " + str(sep.alpha0) + ", V(3) = " + str(v.lower.value);
}

std::string q5(Check& c) {
  auto net = fixture("Q5");
  auto tour = double_cover_tour(net);
  auto sep = visit_separation(tour, 2);
  c.expect(sep.alpha0 == 10, "alpha0 = " + str(sep.alpha0));
  auto p = randomized_periodic(tour);
  for (const auto& alpha : {Rational(1, 2), Rational(1), Rational(5), Rational(19, 2), Rational(10)}) {
    c.expect(patrol_guarantee(p, alpha, 2) == alpha / 15, "guarantee at " + str(alpha));
  }
  bool refused = false;
  try {
    certify_patrol(p, Rational(21, 2), 2);
  } catch (const CertificateError&) {
    refused = true;
  }
  c.expect(refused, "certificate issued beyond alpha0");
  return "alpha0 = " + str(sep.alpha0) + ", guarantee alpha/15 for alpha <= 10";
}

std::string dog(Check& c) {
  auto net = fixture("dog-tree");
  auto g = generalized_girth(*net);
  c.expect(g && *g == 2, "g* = " + to_string(g));
  c.expect(leaf_arcs(*net).size() == 5, "l != 5");
  c.expect(net->total_length() == 9, "mu != 9");
  for (const auto& alpha : {Rational(1), Rational(2)}) {
    auto v = value_bracket(net, alpha);
    Rational expect = alpha / (9 + 5 * alpha / 2);
    c.expect(v.lower.value == expect && v.upper.value == expect, "bracket at " + str(alpha));
  }
  std::vector<std::size_t> counts;
  for (int a = 1; a <= 8; ++a) counts.push_back(extremity_set(*net, Rational(a)).components.size());
  c.expect(counts == std::vector<std::size_t>{5, 5, 5, 5, 7, 7, 7, 7}, "sweep counts");
  Json doc;
  c.expect(cli_exit({"value", "--net", "fixtures/dog-tree", "--alpha", "2"}, doc) == 0, "cli value failed");
  c.expect(doc["value"]["exact"] == "1/7", "cli value is not 1/7");
  c.expect(cli_exit({"extremity", "--net", "fixtures/dog-tree", "--alpha-sweep", "1:8:1"}, doc) == 0, "cli sweep failed");
  c.expect(doc["component_counts"] == Json::array({5, 5, 5, 5, 7, 7, 7, 7}), "cli sweep counts");
  std::string s;
  for (auto n : counts) s += (s.empty() ? "" : ",") + std::to_string(n);
  return "g* = 2, l = 5, mu = 9, V(1) = 2/23, V(2) = 1/7, components " + s;
}

std::string star2166(Check& c) {
  auto net = fixture("star-2166");
  const Rational alpha(6);
  auto prof = extremity_set(*net, alpha);
  c.expect(prof.lambda_E == 9, "lambda(E) = " + str(prof.lambda_E));
  auto se = e_patrolling_tour(net, alpha);
  c.expect(se.period() == 48, "S^E period " + str(se.period()));
  auto s2 = leaf_pause_tour(net, alpha);
  c.expect(s2.period() == 54, "leaf-pause period " + str(s2.period()));
  auto ea = e_attack(*net, alpha);
  std::multiset<Rational> want{Rational(6, 24), Rational(6, 24), Rational(4, 24), Rational(2, 24), Rational(6, 24)};
  c.expect(weights(ea.attack) == want, "e-attack weights");
  auto v = value_bracket(net, alpha);
  c.expect(v.pinned() && v.lower.value == Rational(1, 4), "value not pinned at 1/4");
  auto br = best_response_patrol(net, ea.attack, kBestResponseStep);
  c.expect(br.grid_value <= 0.25 + kDpSlack, "best response " + std::to_string(br.grid_value));
  c.expect(br.exact_value <= Rational(1, 4), "best response path " + str(br.exact_value));
  return "lambda(E) = 9, periods 48 / 54, V = 1/4, best response on step 1/2 = " + str(br.exact_value);
}

std::string star611(Check& c) {
  auto net = fixture("star-611");
  std::string brs;
  for (int a = 4; a <= 8; ++a) {
    Rational alpha(a);
    auto att = attack_611(*net, alpha);
    c.expect(att.attack.total_weight() == 1, "weights at " + std::to_string(a));
    c.expect(att.bound == alpha / (8 + alpha), "bound at " + std::to_string(a));
    auto br = best_response_patrol(net, att.attack, kBestResponseStep);
    Rational cap = 2 * alpha / (2 * (8 + alpha));
    c.expect(br.grid_value <= cap.convert_to<double>() + kDpSlack, "best response at " + std::to_string(a));
    c.expect(br.exact_value <= cap, "best response path at " + std::to_string(a));
    brs += (brs.empty() ? "" : ", ") + str(br.exact_value);
  }
  auto game = make_discrete_game(net, Rational(6), Rational(1));
  OracleConfig cfg;
  cfg.eps = kOracleEps;
  auto r = solve_double_oracle(game, cfg);
  const double target = 6.0 / 14;
  c.expect(r.gap() <= kOracleEps, "oracle gap " + std::to_string(r.gap()));
  c.expect(r.lower - kOracleEps <= target && target <= r.upper + kOracleEps, "oracle bracket misses 3/7");
  auto v7 = value_bracket(net, Rational(7));
  c.expect(v7.pinned() && v7.lower.value == Rational(7, 15), "V(7) = " + str(v7.lower.value));
  c.expect(v7.lower.value != Rational(7, 16), "V(7) equals alpha / (2 mu)");
  std::ostringstream os;
  os << "best responses " << brs << "; oracle at 6: [" << r.lower << ", " << r.upper << "]; V(7) = 7/15 != 7/16";
  return os.str();
}

std::string star611_beyond(Check& c) {
  auto net = fixture("star-611");
  const Rational alpha(17, 2);
  auto ext = attack_611_extended(*net, alpha);
  auto counter = counter_patrol_611(net, alpha);
  auto got = intercept_pure_patrol(counter, ext.attack).probability;
  c.expect(got > ext.bound, "counter-patrol " + str(got) + " does not exceed " + str(ext.bound));
  c.expect(got == Rational(35, 68), "counter-patrol " + str(got));
  return "counter-patrol " + str(got) + " > 2 alpha / theta = " + str(ext.bound);
}

std::string fig8(Check& c) {
  auto net = fixture("fig8-tree");
  auto a = attack_fig8_tree(*net, Rational(6));
  std::multiset<Rational> want{Rational(6, 24), Rational(6, 24), Rational(8, 24), Rational(4, 24)};
  c.expect(weights(a.attack) == want, "weights");
  // The 8/24 component at leaf 6 splits its start times 2 : 4 : 2.
  bool split = false;
  for (const auto& comp : a.attack.components) {
    if (comp.weight != Rational(8, 24)) continue;
    auto f = [&](int t) { return temporal_cdf(comp.when, Rational(t)); };
    split = f(2) == Rational(2, 8) && f(4) == Rational(6, 8) && f(6) == 1;
  }
  c.expect(split, "8/24 component does not split 2/4/2");
  auto br = best_response_patrol(net, a.attack, kBestResponseStep);
  c.expect(br.grid_value <= 0.5 + kDpSlack, "best response " + std::to_string(br.grid_value));
  c.expect(br.exact_value <= Rational(1, 2), "best response path " + str(br.exact_value));
  return "weights 6/24, 6/24, 8/24 (2/4/2), 4/24; best response " + str(br.exact_value);
}

std::string line_circle(Check& c) {
  OracleConfig cfg;
  cfg.eps = kOracleEps;
  std::ostringstream os;
  for (const auto& [name, target] : {std::pair{"line", 1.0 / 3}, std::pair{"circle", 0.5}}) {
    auto r = solve_double_oracle(make_discrete_game(fixture(name), Rational(1, 2), Rational(1, 4)), cfg);
    c.expect(r.gap() <= kOracleEps, std::string(name) + " gap");
    c.expect(std::abs(r.value() - target) <= kOracleEps, std::string(name) + " value " + std::to_string(r.value()));
    os << name << " " << r.value() << "; ";
  }
  auto theta = fixture_network("fig1-theta");
  auto C = theta.point(theta.arc_index("a"), Rational(1));
  auto D = theta.point(theta.arc_index("b"), Rational(1));
  auto merged = share(identify_points(theta, C, D, "CD").network);
  const Rational step(1, 2);
  auto vq = solve_double_oracle(make_discrete_game(share(theta), Rational(3), step), cfg);
  auto vq2 = solve_double_oracle(make_discrete_game(merged, Rational(3), step), cfg);
  c.expect(vq.gap() <= kOracleEps && vq2.gap() <= kOracleEps, "identify brackets too wide");
  c.expect(vq2.value() >= vq.value() - kIdentifyEps, "V(Q') = " + std::to_string(vq2.value()) + " < V(Q) - eps");
  os << "V(Q) " << vq.value() << ", V(Q') " << vq2.value();
  return os.str();
}

// Constructed tours with their visit count k; attack durations come from their separations.
std::vector<std::pair<TimedTour, std::size_t>> constructed_tours() {
  std::vector<std::pair<TimedTour, std::size_t>> out;
  out.emplace_back(euler_tour(fixture("circle")), 1);
  out.emplace_back(double_cover_tour(fixture("K4")), 2);
  out.emplace_back(double_cover_tour(fixture("Q5")), 2);
  out.emplace_back(two_node_alternating_tour(fixture("three-arc")), 2);
  out.emplace_back(leaf_pause_tour(fixture("dog-tree"), Rational(2)), 2);
  out.emplace_back(e_patrolling_tour(fixture("star-2166"), Rational(6)), 2);
  out.emplace_back(e_patrolling_tour(fixture("star-611"), Rational(6)), 2);
  out.emplace_back(tree_cpt(fixture("fig8-tree"), NetPoint::at_node(0)), 1);
  return out;
}

std::string k_visit_certificate(Check& c) {
  std::mt19937 rng(10);
  std::size_t certified = 0, samples = 0;
  for (const auto& [tour, k] : constructed_tours()) {
    for (std::size_t m : {1, 2, 3}) {
      Rational alpha;
      if (k == 1) {
        alpha = tour.period() / 4;
      } else {
        alpha = visit_separation(tour, k, Rational(1, 4), {}, m).alpha0;
        if (alpha <= 0) continue;
      }
      auto p = multi_patroller(randomized_periodic(tour), m);
      PatrolCertificate cert;
      try {
        cert = certify_patrol(p, alpha, k);
      } catch (const CertificateError& e) {
        c.expect(false, std::string("certificate refused at its own separation: ") + e.what());
        continue;
      }
      ++certified;
      Rational expect = min(Rational(1), Rational(static_cast<long>(m * k)) * alpha / tour.period());
      c.expect(cert.guarantee == expect, "guarantee " + str(cert.guarantee) + " != " + str(expect));
      for (int i = 0; i < 500; ++i) {
        auto x = oracle::random_point(rng, tour.network());
        auto tau = random_time(rng, 2 * tour.period());
        auto got = intercept_mixed_patrol(p, x, tau, alpha).probability;
        ++samples;
        c.expect(got >= expect, "interception " + str(got) + " below " + str(expect));
      }
    }
  }
  return std::to_string(certified) + " certified (tour, m) pairs, " + std::to_string(samples) + " sampled (x, tau)";
}

std::string double_cover_scan(Check& c) {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    auto net = share(oracle::random_network(rng, 8, trial % 3 == 0));
    auto tour = double_cover_tour(net);
    auto trs = tour.traversals();
    std::map<std::size_t, int> count;
    for (const auto& t : trs) {
      c.expect(t.full(*net), "partial traversal");
      count[t.arc]++;
    }
    for (std::size_t a = 0; a < net->arc_count(); ++a) c.expect(count[a] == 2, "arc not covered twice");
    c.expect(tour.period() == 2 * net->total_length(), "length is not 2 mu");
    std::set<std::size_t> leaf;
    for (const auto& l : leaf_arcs(*net)) leaf.insert(l.arc);
    for (std::size_t i = 0; i < trs.size() && trs.size() > 1; ++i) {
      const auto& x = trs[i];
      const auto& y = trs[(i + 1) % trs.size()];
      if (x.arc == y.arc && !leaf.count(x.arc)) c.expect(x.dir == y.dir, "reversal on a non-leaf arc");
    }
    if (net->arc_count() == 1 && net->node_count() == 2) continue;
    auto doubled = double_network(*net);
    c.expect(respects_pairing(*doubled.network, doubled.pairing, double_cover_circuit(doubled)),
             "circuit leaves through the paired passage");
  }
  return "200 random networks";
}

// Smaller side of a regular point, from node distances alone.
Rational min_side(const MetricNetwork& net, const NetPoint& x) {
  const Arc& arc = net.arc(x.arc());
  Rational from_side = x.offset();
  for (const auto& a : net.arcs()) {
    if (&a == &arc) continue;
    auto near_from = [&](std::size_t w) { return net.node_distance(w, arc.from) < net.node_distance(w, arc.to); };
    if (near_from(a.from) && near_from(a.to)) from_side += a.length;
  }
  return min(from_side, net.total_length() - from_side);
}

std::string extremity_scan(Check& c) {
  std::mt19937 rng(77);
  std::size_t small_checks = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto net = oracle::random_network(rng, 8, true, 4);
    Rational gstar = *generalized_girth(net);
    Rational l = static_cast<long>(leaf_arcs(net).size());
    std::uniform_int_distribution<int> pick(1, 16);
    Rational small = gstar * Rational(pick(rng), 16);
    // A bare segment has both leaf ends on one arc; there lambda(E) = min(mu, l alpha / 2).
    Rational want = net.arc_count() > 1 ? l * small / 2 : min(net.total_length(), l * small / 2);
    c.expect(extremity_set(net, small).lambda_E == want, "lambda(E) at alpha <= g*");
    ++small_checks;
    Rational a1 = Rational(pick(rng), 2), a2 = a1 + Rational(pick(rng), 4);
    auto p1 = extremity_set(net, a1), p2 = extremity_set(net, a2);
    for (std::size_t a = 0; a < net.arc_count(); ++a) {
      for (const auto& piece : p1.regions[a]) {
        bool inside = false;
        for (const auto& big : p2.regions[a]) inside = inside || (big.lo <= piece.lo && piece.hi <= big.hi);
        c.expect(inside, "E not monotone in alpha");
        for (const auto& t : {piece.lo, piece.hi}) {
          auto x = net.point(a, t);
          if (!x.is_node()) c.expect(min_side(net, x) == a1 / 2, "boundary side-mass is not alpha / 2");
        }
      }
    }
  }
  return "200 random trees (" + std::to_string(small_checks) + " checks at alpha <= g*)";
}

std::string e_patrolling_scan(Check& c) {
  std::mt19937 rng(1234);
  std::size_t proper = 0, whole = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto net = share(oracle::random_network(rng, 8, true, 4));
    Rational mu = net->total_length();
    std::uniform_int_distribution<int> pick(1, static_cast<int>(2 * mu));
    Rational alpha = Rational(pick(rng), 2);
    auto prof = extremity_set(*net, alpha);
    auto tour = e_patrolling_tour(net, alpha);
    if (prof.covers_everything()) {
      // E is the whole tree: the plain depth-first tour already visits everything once per 2 mu.
      ++whole;
      c.expect(tour.period() == 2 * mu, "period when E is the tree");
      continue;
    }
    ++proper;
    c.expect(tour.period() == 2 * (mu + prof.lambda_E), "period is not 2 (mu + lambda(E))");
    auto sep = visit_separation(tour, 2);
    c.expect(sep.alpha0 >= alpha, "exact separation " + str(sep.alpha0) + " < alpha " + str(alpha));
    c.expect(sep.sampled_min >= alpha, "checkpoint separation below alpha");
  }
  c.expect(proper >= 50, "too few trees with E smaller than the tree");
  return std::to_string(proper) + " trees with E smaller than the tree, " + std::to_string(whole) + " with E = tree";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Eulerian networks: alpha / mu both ways", 1, eulerian},
      {2, "K4 double cover and V = 1/2 at alpha = 3", 1, k4},
      {3, "Q5 double cover: alpha0 = 10, guarantee alpha / 15", 1, q5},
      {4, "dog tree: brackets and extremity sweep", 5, dog},
      {5, "star 2-1-6-6 at alpha = 6", 30, star2166},
      {6, "6-1-1 star for alpha in 4..8", 180, star611},
      {7, "6-1-1 star at alpha = 8.5: counter-patrol", 1, star611_beyond},
      {8, "four-leaf tree at alpha = 6", 60, fig8},
      {9, "line, circle and point identification by double oracle", 180, line_circle},
      {10, "k-visit certificate against sampled attacks", 60, k_visit_certificate},
      {11, "double cover structure on random networks", 60, double_cover_scan},
      {12, "extremity set exactness on random trees", 60, extremity_scan},
      {13, "E-patrolling certificate on random trees", 60, e_patrolling_scan},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check check;
    std::string summary;
    auto t0 = std::chrono::steady_clock::now();
    try {
      summary = cr.body(check);
    } catch (const std::exception& e) {
      check.failures.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > cr.seconds_limit) {
      std::ostringstream os;
      os << "took " << secs << " s, limit " << cr.seconds_limit << " s";
      check.failures.push_back(os.str());
    }
    bool ok = check.failures.empty();
    failed += ok ? 0 : 1;
    std::ostringstream line;
    line.precision(3);
    line << (ok ? "PASS" : "FAIL") << " [" << cr.id << "] " << cr.title << " (" << std::fixed << secs << " s, "
         << check.count << " checks)";
    if (ok) {
      line << ": " << summary;
    } else {
      for (const auto& f : check.failures) line << " | " << f;
    }
    std::cout << line.str() << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << std::endl;
  return failed ? 1 : 0;
}
