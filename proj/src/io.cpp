#include "patrol/io.hpp"

#include <fstream>
#include <set>

#include "patrol/errors.hpp"

namespace patrol {
namespace {

const Json& field(const Json& doc, const char* key) {
  if (!doc.is_object()) throw ParseError(std::string("expected an object holding \"") + key + "\"");
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

std::string string_field(const Json& doc, const char* key) {
  const Json& v = field(doc, key);
  if (!v.is_string()) throw ParseError(std::string("field \"") + key + "\" must be a string");
  return v.get<std::string>();
}

const Json& array_field(const Json& doc, const char* key) {
  const Json& v = field(doc, key);
  if (!v.is_array()) throw ParseError(std::string("field \"") + key + "\" must be an array");
  return v;
}

std::size_t arc_ref(const MetricNetwork& net, const std::string& id) {
  auto a = net.find_arc(id);
  if (!a) throw ParseError("unknown arc \"" + id + "\"");
  return *a;
}

std::size_t node_ref(const MetricNetwork& net, const std::string& id) {
  auto n = net.find_node(id);
  if (!n) throw ParseError("unknown node \"" + id + "\"");
  return *n;
}

Json interval_json(const MetricNetwork& net, const ArcInterval& piece) {
  return Json{{"arc", net.arc(piece.arc).id}, {"lo", to_string(piece.lo)}, {"hi", to_string(piece.hi)}};
}

ArcInterval interval_from_json(const MetricNetwork& net, const Json& doc) {
  return {arc_ref(net, string_field(doc, "arc")), rational_from_json(field(doc, "lo")),
          rational_from_json(field(doc, "hi"))};
}

Json temporal_json(const Temporal& when) {
  return std::visit(
      [](const auto& w) -> Json {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, TemporalAtom>) {
          return Json{{"type", "atom"}, {"t", to_string(w.t)}};
        } else if constexpr (std::is_same_v<T, TemporalUniform>) {
          return Json{{"type", "uniform"}, {"lo", to_string(w.lo)}, {"hi", to_string(w.hi)}};
        } else {
          Json knots = Json::array();
          for (const auto& [t, p] : w.knots) knots.push_back(Json::array({to_string(t), to_string(p)}));
          return Json{{"type", "cdf"}, {"knots", knots}};
        }
      },
      when);
}

Temporal temporal_from_json(const Json& doc) {
  std::string type = string_field(doc, "type");
  if (type == "atom") return TemporalAtom{rational_from_json(field(doc, "t"))};
  if (type == "uniform") return TemporalUniform{rational_from_json(field(doc, "lo")), rational_from_json(field(doc, "hi"))};
  if (type == "cdf") {
    TemporalCdf cdf;
    for (const auto& k : array_field(doc, "knots")) {
      if (!k.is_array() || k.size() != 2) throw ParseError("cdf knots are [time, probability] pairs");
      cdf.knots.emplace_back(rational_from_json(k[0]), rational_from_json(k[1]));
    }
    return cdf;
  }
  throw ParseError("unknown temporal type \"" + type + "\"");
}

// Exact decimal when the denominator divides a power of ten, "p/q" otherwise.
std::string length_text(const Rational& r) {
  auto den = denominator(r);
  int twos = 0, fives = 0;
  while (den % 2 == 0) den /= 2, ++twos;
  while (den % 5 == 0) den /= 5, ++fives;
  if (den != 1) return to_string(r);
  int places = std::max(twos, fives);
  return to_decimal(r, places);
}

}  // namespace

Json number_json(const Rational& value) { return Json{{"exact", to_string(value)}, {"decimal", to_decimal(value)}}; }

Rational rational_from_json(const Json& value) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return Rational(value.get<long long>());
  if (value.is_number()) return parse_rational(value.dump());
  if (value.is_object() && value.contains("exact")) return rational_from_json(value["exact"]);
  throw ParseError("expected a number or a numeric string, got " + value.dump());
}

MetricNetwork network_from_json(const Json& doc) {
  std::vector<Node> nodes;
  std::set<std::string> node_ids;
  for (const auto& n : array_field(doc, "nodes")) {
    Node node{string_field(n, "id"), false};
    if (n.contains("artificial")) {
      if (!n["artificial"].is_boolean()) throw ParseError("\"artificial\" must be a boolean");
      node.artificial = n["artificial"].get<bool>();
    }
    if (!node_ids.insert(node.id).second) throw ParseError("duplicate node id \"" + node.id + "\"");
    nodes.push_back(std::move(node));
  }
  auto index = [&](const std::string& id) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i].id == id) return i;
    }
    throw ParseError("arc endpoint \"" + id + "\" is not a node");
  };
  std::vector<Arc> arcs;
  std::set<std::string> arc_ids;
  for (const auto& a : array_field(doc, "arcs")) {
    Arc arc{string_field(a, "id"), index(string_field(a, "from")), index(string_field(a, "to")),
            rational_from_json(field(a, "length"))};
    if (!arc_ids.insert(arc.id).second) throw ParseError("duplicate arc id \"" + arc.id + "\"");
    arcs.push_back(std::move(arc));
  }
  return MetricNetwork(std::move(nodes), std::move(arcs));
}

MetricNetwork load_network(std::string_view document) {
  Json doc;
  try {
    doc = Json::parse(document);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed network document: ") + e.what());
  }
  return network_from_json(doc);
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

MetricNetwork load_network_file(const std::filesystem::path& path) { return network_from_json(read_json_file(path)); }

Json network_to_json(const MetricNetwork& net) {
  Json nodes = Json::array();
  for (const auto& n : net.nodes()) nodes.push_back(Json{{"id", n.id}, {"artificial", n.artificial}});
  Json arcs = Json::array();
  for (const auto& a : net.arcs()) {
    arcs.push_back(Json{{"id", a.id}, {"from", net.node(a.from).id}, {"to", net.node(a.to).id}, {"length", length_text(a.length)}});
  }
  return Json{{"nodes", nodes}, {"arcs", arcs}};
}

Json point_to_json(const MetricNetwork& net, const NetPoint& p) {
  if (p.is_node()) return Json{{"node", net.node(p.node()).id}};
  return Json{{"arc", net.arc(p.arc()).id}, {"offset", to_string(p.offset())}};
}

NetPoint point_from_json(const MetricNetwork& net, const Json& doc) {
  if (doc.is_object() && doc.contains("node")) return net.node_point(node_ref(net, string_field(doc, "node")));
  std::size_t arc = arc_ref(net, string_field(doc, "arc"));
  try {
    return net.point(arc, rational_from_json(field(doc, "offset")));
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

Json tour_to_json(const TimedTour& tour) {
  const MetricNetwork& net = tour.network();
  Json bps = Json::array();
  bps.push_back(Json{{"t", "0"}, {"at", point_to_json(net, tour.start_point())}});
  for (std::size_t i = 0; i < tour.segments().size(); ++i) {
    const Segment& s = tour.segments()[i];
    Json bp{{"t", to_string(s.t1)}, {"at", point_to_json(net, tour.segment_end(i))}};
    if (!s.is_pause()) {
      const Move& m = s.move();
      bp["move"] = Json{{"arc", net.arc(m.arc).id}, {"from", to_string(m.from)}, {"to", to_string(m.to)}};
    }
    bps.push_back(std::move(bp));
  }
  Json trs = Json::array();
  for (const auto& tr : tour.traversals()) {
    trs.push_back(Json{{"arc", net.arc(tr.arc).id}, {"dir", tr.dir > 0 ? "fwd" : "rev"}});
  }
  return Json{{"period", to_string(tour.period())}, {"closed", tour.closed()}, {"breakpoints", bps}, {"traversals", trs}};
}

TimedTour tour_from_json(const NetworkPtr& netp, const Json& doc) {
  const MetricNetwork& net = *netp;
  const Json& bps = array_field(doc, "breakpoints");
  if (bps.empty()) throw ParseError("a tour needs at least one breakpoint");
  bool closed = doc.contains("closed") ? doc["closed"].get<bool>() : true;
  std::vector<Segment> segments;
  Rational t = rational_from_json(field(bps[0], "t"));
  NetPoint here = point_from_json(net, field(bps[0], "at"));
  for (std::size_t i = 1; i < bps.size(); ++i) {
    Rational t1 = rational_from_json(field(bps[i], "t"));
    NetPoint at = point_from_json(net, field(bps[i], "at"));
    if (bps[i].contains("move")) {
      const Json& m = bps[i]["move"];
      segments.push_back({t, t1, Move{arc_ref(net, string_field(m, "arc")), rational_from_json(field(m, "from")),
                                      rational_from_json(field(m, "to"))}});
    } else if (at == here) {
      segments.push_back({t, t1, Pause{here}});
    } else {
      throw ParseError("breakpoint " + std::to_string(i) + " changes position without a \"move\"");
    }
    t = std::move(t1);
    here = std::move(at);
  }
  try {
    TimedTour tour(netp, std::move(segments), closed);
    if (doc.contains("period") && rational_from_json(doc["period"]) != tour.period()) {
      throw ParseError("\"period\" disagrees with the breakpoints");
    }
    return tour;
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("invalid tour: ") + e.what());
  }
}

Json patrol_to_json(const MixedPatrol& patrol) {
  Json doc = tour_to_json(patrol.base);
  doc["m"] = patrol.patrollers;
  doc["offset"] = "uniform";
  return doc;
}

MixedPatrol patrol_from_json(const NetworkPtr& net, const Json& doc) {
  if (doc.contains("offset") && doc["offset"] != "uniform") throw ParseError("only \"offset\": \"uniform\" is supported");
  std::size_t m = doc.contains("m") ? doc["m"].get<std::size_t>() : 1;
  try {
    return multi_patroller(randomized_periodic(tour_from_json(net, doc)), m);
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("invalid patrol: ") + e.what());
  }
}

Json attack_to_json(const MetricNetwork& net, const MixedAttack& attack) {
  Json comps = Json::array();
  for (const auto& c : attack.components) {
    Json where;
    if (const auto* p = std::get_if<SpatialPoint>(&c.where)) {
      where = Json{{"type", "point"}, {"at", point_to_json(net, p->at)}};
    } else {
      Json pieces = Json::array();
      for (const auto& piece : std::get<SpatialRegion>(c.where).pieces) pieces.push_back(interval_json(net, piece));
      where = Json{{"type", "region"}, {"pieces", pieces}};
    }
    comps.push_back(Json{{"weight", to_string(c.weight)}, {"label", c.label}, {"where", where}, {"when", temporal_json(c.when)}});
  }
  return Json{{"alpha", to_string(attack.alpha)}, {"components", comps}};
}

MixedAttack attack_from_json(const MetricNetwork& net, const Json& doc) {
  MixedAttack attack;
  attack.alpha = rational_from_json(field(doc, "alpha"));
  for (const auto& c : array_field(doc, "components")) {
    AttackComponent comp;
    comp.weight = rational_from_json(field(c, "weight"));
    if (c.contains("label")) comp.label = c["label"].get<std::string>();
    const Json& where = field(c, "where");
    std::string type = string_field(where, "type");
    if (type == "point") {
      comp.where = SpatialPoint{point_from_json(net, field(where, "at"))};
    } else if (type == "region") {
      SpatialRegion region;
      for (const auto& piece : array_field(where, "pieces")) region.pieces.push_back(interval_from_json(net, piece));
      comp.where = std::move(region);
    } else {
      throw ParseError("unknown spatial type \"" + type + "\"");
    }
    comp.when = temporal_from_json(field(c, "when"));
    attack.components.push_back(std::move(comp));
  }
  try {
    attack.validate(net);
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("invalid attack: ") + e.what());
  }
  return attack;
}

Json separation_to_json(const MetricNetwork& net, const SeparationReport& report) {
  return Json{{"k", report.k},
              {"alpha0", number_json(report.alpha0)},
              {"witness", point_to_json(net, report.witness)},
              {"sampled_min", number_json(report.sampled_min)},
              {"samples", report.samples},
              {"checkpoints", report.checkpoints}};
}

Json certificate_to_json(const MetricNetwork& net, const PatrolCertificate& cert) {
  return Json{{"guarantee", number_json(cert.guarantee)},
              {"alpha", number_json(cert.alpha)},
              {"k", cert.k},
              {"m", cert.patrollers},
              {"separation", separation_to_json(net, cert.separation)}};
}

Json profile_to_json(const MetricNetwork& net, const ExtremityProfile& profile) {
  Json regions = Json::array();
  for (std::size_t a = 0; a < net.arc_count(); ++a) {
    Json pieces = Json::array();
    for (const auto& piece : profile.regions[a]) pieces.push_back(Json::array({to_string(piece.lo), to_string(piece.hi)}));
    regions.push_back(Json{{"arc", net.arc(a).id}, {"intervals", pieces}});
  }
  Json comps = Json::array();
  for (const auto& c : profile.components) {
    Json j = interval_json(net, c.piece);
    j["length"] = number_json(c.length);
    j["leaf"] = c.leaf == npos ? Json(nullptr) : Json(net.node(c.leaf).id);
    comps.push_back(std::move(j));
  }
  Json closure = Json::array();
  for (const auto& c : profile.closure_components) {
    Json nodes = Json::array();
    for (auto v : c.nodes) nodes.push_back(net.node(v).id);
    closure.push_back(Json{{"members", c.members}, {"nodes", nodes}, {"length", number_json(c.length)}});
  }
  Json doc{{"alpha", number_json(profile.alpha)},
           {"mu", number_json(profile.mu)},
           {"regions", regions},
           {"components", comps},
           {"component_count", profile.components.size()},
           {"closure_components", closure},
           {"lambda_E", number_json(profile.lambda_E)},
           {"leaf_condition", profile.leaf_condition},
           {"leaf_witness", profile.leaf_witness ? point_to_json(net, *profile.leaf_witness) : Json(nullptr)},
           {"v_star", number_json(profile.v_star)},
           {"trivial", profile.trivial}};
  return doc;
}

}  // namespace patrol
