#include "patrol/fixtures.hpp"

#include <tuple>

#include "patrol/errors.hpp"

namespace patrol {
namespace {

using ArcSpec = std::tuple<std::string, std::string, std::string, std::string>;

MetricNetwork build(const std::vector<std::pair<std::string, bool>>& node_specs, const std::vector<ArcSpec>& arc_specs) {
  std::vector<Node> nodes;
  for (const auto& [id, artificial] : node_specs) nodes.push_back({id, artificial});
  auto index = [&nodes](const std::string& id) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i].id == id) return i;
    }
    throw PreconditionError("fixture references unknown node " + id);
  };
  std::vector<Arc> arcs;
  for (const auto& [id, from, to, length] : arc_specs) arcs.push_back({id, index(from), index(to), parse_rational(length)});
  return MetricNetwork(std::move(nodes), std::move(arcs));
}

}  // namespace

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"circle",   "line",      "K4",        "three-arc", "Q5",
                                              "dog-tree", "star-2166", "star-611", "fig8-tree", "fig1-theta"};
  return names;
}

MetricNetwork fixture_network(std::string_view name) {
  if (name == "circle") return build({{"O", false}}, {{"s", "O", "O", "1"}});
  if (name == "line") {
    return build({{"A", false}, {"C", true}, {"B", false}}, {{"AC", "A", "C", "0.5"}, {"CB", "C", "B", "0.5"}});
  }
  if (name == "K4") {
    return build({{"A", false}, {"B", false}, {"C", false}, {"D", false}},
                 {{"a", "A", "B", "1"},
                  {"b", "B", "C", "1"},
                  {"c", "C", "A", "1"},
                  {"d", "A", "D", "1"},
                  {"e", "D", "C", "1"},
                  {"f", "B", "D", "1"}});
  }
  if (name == "three-arc") {
    return build({{"A", false}, {"B", false}}, {{"a", "A", "B", "1"}, {"b", "A", "B", "1"}, {"c", "A", "B", "1"}});
  }
  if (name == "Q5") {
    std::vector<ArcSpec> arcs;
    for (int i = 1; i <= 5; ++i) arcs.emplace_back(std::to_string(i), "A", "B", std::to_string(i));
    return build({{"A", false}, {"B", false}}, arcs);
  }
  if (name == "dog-tree") {
    return build({{"U", false},
                  {"V", false},
                  {"W", false},
                  {"u1", false},
                  {"u2", false},
                  {"w1", false},
                  {"w2", false},
                  {"h", false}},
                 {{"Uu1", "U", "u1", "1"},
                  {"Uu2", "U", "u2", "1"},
                  {"UV", "U", "V", "2"},
                  {"VW", "V", "W", "2"},
                  {"Vh", "V", "h", "1"},
                  {"Ww1", "W", "w1", "1"},
                  {"Ww2", "W", "w2", "1"}});
  }
  if (name == "star-2166") {
    return build({{"A", false}, {"B", false}, {"C", false}, {"D", false}, {"E", false}},
                 {{"AB", "A", "B", "2"}, {"AC", "A", "C", "1"}, {"AD", "A", "D", "6"}, {"AE", "A", "E", "6"}});
  }
  if (name == "star-611") {
    return build({{"c", false}, {"1", false}, {"2", false}, {"9", false}},
                 {{"c1", "c", "1", "1"}, {"c2", "c", "2", "1"}, {"c9", "c", "9", "6"}});
  }
  if (name == "fig8-tree") {
    return build({{"1", false}, {"2", false}, {"3", false}, {"4", false}, {"5", true}, {"6", false}, {"7", false}},
                 {{"13", "1", "3", "1"},
                  {"23", "2", "3", "1"},
                  {"34", "3", "4", "1"},
                  {"45", "4", "5", "1"},
                  {"56", "5", "6", "1"},
                  {"47", "4", "7", "1"}});
  }
  if (name == "fig1-theta") {
    return build({{"A", false}, {"B", false}}, {{"a", "A", "B", "2"}, {"b", "A", "B", "2"}, {"c", "A", "B", "2"}});
  }
  throw PreconditionError("unknown fixture '" + std::string(name) + "'");
}

}  // namespace patrol
