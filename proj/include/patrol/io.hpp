// JSON documents for networks, tours, mixed patrols, mixed attacks and extremity profiles.
#pragma once

#include <filesystem>
#include <string_view>

#include "json.hpp"
#include "patrol/attack.hpp"
#include "patrol/extremity.hpp"
#include "patrol/patrol.hpp"

namespace patrol {

using Json = nlohmann::ordered_json;

/// {"nodes":[{"id","artificial"}],"arcs":[{"id","from","to","length"}]} with lengths as
/// decimal (or p/q) strings. Throws ParseError for malformed documents and InvalidNetwork
/// when the network breaks a structural rule.
MetricNetwork load_network(std::string_view document);
MetricNetwork network_from_json(const Json& doc);
MetricNetwork load_network_file(const std::filesystem::path& path);
Json network_to_json(const MetricNetwork& net);

/// {"exact":"p/q","decimal":"0.xxxxxxxxxxxx"}
Json number_json(const Rational& value);
Rational rational_from_json(const Json& value);

/// {"node":"A"} or {"arc":"a","offset":"1/2"}
Json point_to_json(const MetricNetwork& net, const NetPoint& p);
NetPoint point_from_json(const MetricNetwork& net, const Json& doc);

/// {"period","closed","breakpoints":[{"t","at","move"?}],"traversals":[{"arc","dir"}]}.
/// A breakpoint reached by moving names the arc and offsets of that move, which makes the
/// document round-trip (loops and parallel arcs are otherwise ambiguous).
Json tour_to_json(const TimedTour& tour);
TimedTour tour_from_json(const NetworkPtr& net, const Json& doc);

/// The base tour document plus {"m":1,"offset":"uniform"}.
Json patrol_to_json(const MixedPatrol& patrol);
/// Accepts a patrol document, or a bare tour document (m = 1).
MixedPatrol patrol_from_json(const NetworkPtr& net, const Json& doc);

/// {"alpha","components":[{"weight","label","where":{"type":"point"|"region",...},
/// "when":{"type":"atom"|"uniform"|"cdf",...}}]}
Json attack_to_json(const MetricNetwork& net, const MixedAttack& attack);
MixedAttack attack_from_json(const MetricNetwork& net, const Json& doc);

Json separation_to_json(const MetricNetwork& net, const SeparationReport& report);
Json certificate_to_json(const MetricNetwork& net, const PatrolCertificate& cert);

/// Per-arc interval lists, components, lambda(E), Leaf Condition and v*.
Json profile_to_json(const MetricNetwork& net, const ExtremityProfile& profile);

/// Parses a JSON file; throws ParseError naming the file.
Json read_json_file(const std::filesystem::path& path);

}  // namespace patrol
