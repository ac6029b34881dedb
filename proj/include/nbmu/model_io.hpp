#pragma once

#include <string>
#include <string_view>

#include "nbmu/model.hpp"

namespace nbmu {

// Model document:
//   {"states":["s0","s1"],"neighborhoods":{"s0":[["s1"]],"s1":[]},
//    "valuation":{"p":["s1"]},"point":"s0"}
// "point" is optional. Output lists states, generators and valuation sets
// sorted by state name, so writing is canonical.

/// Throws ParseError on malformed JSON and ValidationError on structural
/// problems, including generator families that are not antichains.
NeighborhoodModel read_model(std::string_view text);
std::string write_model(const NeighborhoodModel& m);

NeighborhoodModel load_model(const std::string& path);
void save_model(const std::string& path, const NeighborhoodModel& m);

}  // namespace nbmu
