// Constructive tours: depth-first tree tours, paired-passage Euler tours and double covers.
#pragma once

#include <array>
#include <functional>
#include <optional>

#include "patrol/tour.hpp"

namespace patrol {

/// Crossing of `arc` that starts at its endpoint `from_end`.
struct DirectedStep {
  std::size_t arc = npos;
  int from_end = 0;

  friend bool operator==(const DirectedStep&, const DirectedStep&) = default;
};

/// Involution on the passages of a network; paired passages share their node.
class PassagePairing {
 public:
  /// partner[arc][end] is the passage paired with (arc, end). Throws PreconditionError.
  PassagePairing(const MetricNetwork& net, std::vector<std::array<Passage, 2>> partner);

  const Passage& partner(const Passage& p) const { return partner_.at(p.arc)[p.end]; }
  bool paired(const Passage& p, const Passage& q) const { return partner(p) == q; }

 private:
  std::vector<std::array<Passage, 2>> partner_;
};

/// Q with every arc doubled. Leaf arcs become loops of twice the length at their attach node
/// (the leaf node disappears); other arcs get a copy named with a trailing prime.
struct DoubledNetwork {
  NetworkPtr network;
  PassagePairing pairing;
  std::vector<std::size_t> source_arc;    // doubled arc -> original arc
  std::vector<bool> copy;                 // primed copy
  std::vector<bool> leaf_loop;            // stands for a leaf arc traversed out and back
  std::vector<std::size_t> source_node;   // doubled node -> original node
};

/// Throws PreconditionError for the single-arc network (both ends are leaves).
DoubledNetwork double_network(const MetricNetwork& net);

/// Euler circuit from `start` that never enters and leaves a node through paired passages.
/// Throws PreconditionError when the network is not Eulerian.
std::vector<DirectedStep> paired_euler_circuit(const MetricNetwork& net, const PassagePairing& pairing,
                                               std::size_t start);

/// True when the closed step sequence never arrives and departs through paired passages.
bool respects_pairing(const MetricNetwork& net, const PassagePairing& pairing, const std::vector<DirectedStep>& circuit);

TimedTour paired_euler_tour(const NetworkPtr& net, const PassagePairing& pairing, std::size_t start);

/// Any Euler circuit from `start`; throws PreconditionError when the network is not Eulerian.
std::vector<DirectedStep> euler_circuit(const MetricNetwork& net, std::size_t start = 0);

/// Closed tour of length mu along an Euler circuit.
TimedTour euler_tour(const NetworkPtr& net, std::size_t start = 0);

/// Less-than on two arcs leaving `node`; decides depth-first child order.
using ChildOrder = std::function<bool(std::size_t node, std::size_t arc_a, std::size_t arc_b)>;

/// Depth-first closed tour of a tree, length 2 mu. Default child order is by arc id.
TimedTour tree_cpt(const NetworkPtr& net, const NetPoint& start, const ChildOrder& order = {});

/// Depth-first step sequence of a tree rooted at a node.
std::vector<DirectedStep> tree_dfs_steps(const MetricNetwork& net, std::size_t root, const ChildOrder& order = {});

/// The doubled-network circuit behind the double cover, in doubled-network arcs.
std::vector<DirectedStep> double_cover_circuit(const DoubledNetwork& doubled, std::optional<std::size_t> start = {});

/// Tour covering every arc twice with no immediate reversal except on leaf arcs; L = 2 mu.
/// The start defaults to the first node that is not a leaf.
TimedTour double_cover_tour(const NetworkPtr& net, std::optional<std::size_t> start = {});

/// The double cover with a pause of length alpha at every leaf visit; L = 2 mu + l alpha.
TimedTour leaf_pause_tour(const NetworkPtr& net, const Rational& alpha, std::optional<std::size_t> start = {});

/// Two nodes joined by an odd number of arcs: arcs in ascending length, alternating directions,
/// repeated twice.
TimedTour two_node_alternating_tour(const NetworkPtr& net);

/// Builds a closed tour from node-to-node steps; `pauses[i]` is waited after step i.
TimedTour tour_from_steps(const NetworkPtr& net, std::size_t start, const std::vector<DirectedStep>& steps,
                          const std::vector<Rational>& pauses = {});

}  // namespace patrol
