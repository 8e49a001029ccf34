// Networks viewed as metric and measure spaces: arcs are intervals of positive
// length glued at their endpoint nodes.
#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "patrol/rational.hpp"

namespace patrol {

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

struct Node {
  std::string id;
  /// Degree-two nodes are only admitted when flagged artificial.
  bool artificial = false;
};

struct Arc {
  std::string id;
  std::size_t from = npos;
  std::size_t to = npos;
  Rational length;

  bool is_loop() const { return from == to; }
  std::size_t endpoint(int end) const { return end == 0 ? from : to; }
};

/// A node, or a regular point at `offset` from the `from` end of an arc.
/// Offsets 0 and length are always stored in node form (see MetricNetwork::point).
class NetPoint {
 public:
  NetPoint() = default;
  static NetPoint at_node(std::size_t node) {
    NetPoint p;
    p.node_ = node;
    return p;
  }
  /// No canonicalization happens here; prefer MetricNetwork::point.
  static NetPoint on_arc(std::size_t arc, Rational offset) {
    NetPoint p;
    p.arc_ = arc;
    p.offset_ = std::move(offset);
    return p;
  }

  bool is_node() const { return node_ != npos; }
  std::size_t node() const { return node_; }
  std::size_t arc() const { return arc_; }
  const Rational& offset() const { return offset_; }

  friend bool operator==(const NetPoint& a, const NetPoint& b) {
    return a.node_ == b.node_ && a.arc_ == b.arc_ && a.offset_ == b.offset_;
  }
  friend bool operator<(const NetPoint& a, const NetPoint& b) {
    if (a.node_ != b.node_) return a.node_ < b.node_;
    if (a.arc_ != b.arc_) return a.arc_ < b.arc_;
    return a.offset_ < b.offset_;
  }

 private:
  std::size_t node_ = npos;
  std::size_t arc_ = npos;
  Rational offset_;
};

/// A (node, incident arc) pair. `end` selects which end of the arc sits at the node,
/// so the two ends of a loop are distinct passages.
struct Passage {
  std::size_t node = npos;
  std::size_t arc = npos;
  int end = 0;

  friend bool operator==(const Passage&, const Passage&) = default;
};

class MetricNetwork {
 public:
  /// Validates connectivity, positive lengths and the degree-two rule.
  /// Throws InvalidNetwork.
  MetricNetwork(std::vector<Node> nodes, std::vector<Arc> arcs);

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const Node& node(std::size_t i) const { return nodes_.at(i); }
  const Arc& arc(std::size_t i) const { return arcs_.at(i); }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t arc_count() const { return arcs_.size(); }

  std::optional<std::size_t> find_node(std::string_view id) const;
  std::optional<std::size_t> find_arc(std::string_view id) const;
  std::size_t node_index(std::string_view id) const;
  std::size_t arc_index(std::string_view id) const;

  const std::vector<Passage>& passages(std::size_t node) const { return passages_.at(node); }
  std::size_t degree(std::size_t node) const { return passages_.at(node).size(); }

  const Rational& total_length() const { return total_length_; }
  const Rational& node_distance(std::size_t a, std::size_t b) const { return distances_[a * nodes_.size() + b]; }
  Rational distance(const NetPoint& p, const NetPoint& q) const;

  /// Canonical point at `offset` along `arc`; throws PreconditionError when out of range.
  NetPoint point(std::size_t arc, const Rational& offset) const;
  NetPoint node_point(std::size_t node) const { return NetPoint::at_node(node); }
  /// Throws PreconditionError for a point that does not belong to this network.
  void check_point(const NetPoint& p) const;

  bool is_tree() const { return arcs_.size() + 1 == nodes_.size(); }
  bool is_eulerian() const;

  std::string describe(const NetPoint& p) const;

 private:
  std::vector<Node> nodes_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<Passage>> passages_;
  std::vector<Rational> distances_;
  Rational total_length_;
};

Rational total_length(const MetricNetwork& net);
Rational distance(const MetricNetwork& net, const NetPoint& p, const NetPoint& q);

/// Minimum circuit length; nullopt (infinite) for trees. Loops count as circuits.
ExtendedLength girth(const MetricNetwork& net);

/// min(girth, twice the shortest leaf arc).
ExtendedLength generalized_girth(const MetricNetwork& net);

struct LeafArc {
  std::size_t arc = npos;
  std::size_t leaf = npos;
  /// The other endpoint of the arc.
  std::size_t attach = npos;
};

/// Every degree-one node with its unique arc, ordered by leaf node index.
std::vector<LeafArc> leaf_arcs(const MetricNetwork& net);

/// Shortest path distances from `source` to every node ignoring arc `skip_arc`.
std::vector<ExtendedLength> shortest_paths(const MetricNetwork& net, std::size_t source,
                                           std::size_t skip_arc = npos);

/// A network refined by inserting artificial nodes at regular points.
struct Subdivision {
  struct Piece {
    std::size_t arc = npos;  // original arc
    Rational lo;             // refined `from` end, in original offsets
    Rational hi;             // refined `to` end
  };

  MetricNetwork network;
  std::vector<Piece> pieces;                 // indexed by refined arc
  std::vector<std::size_t> original_node;    // refined node -> original node, npos for inserted nodes

  NetPoint to_original(const MetricNetwork& original, const NetPoint& refined) const;
  NetPoint from_original(const NetPoint& original) const;
};

/// Splits arcs at the given regular points (node points are ignored).
/// Inserted nodes are named "<arc>@<offset>" and flagged artificial; split arcs become "<arc>#k".
Subdivision subdivide(const MetricNetwork& net, const std::vector<NetPoint>& points);

struct IdentifiedNetwork {
  MetricNetwork network;
  Subdivision refinement;
  std::size_t merged_node = npos;
  std::vector<std::size_t> node_remap;  // refined node -> node of `network`

  NetPoint map_point(const NetPoint& original) const;
};

/// Quotient network obtained by gluing p and q into a single node.
IdentifiedNetwork identify_points(const MetricNetwork& net, const NetPoint& p, const NetPoint& q,
                                  std::string merged_id = {});

}  // namespace patrol
