// Named example networks.
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "patrol/tour.hpp"

namespace patrol {

/// circle, line, K4, three-arc, Q5, dog-tree, star-2166, star-611, fig8-tree, fig1-theta
const std::vector<std::string>& fixture_names();

/// Throws PreconditionError for an unknown name.
MetricNetwork fixture_network(std::string_view name);

inline NetworkPtr fixture(std::string_view name) { return share(fixture_network(name)); }

}  // namespace patrol
