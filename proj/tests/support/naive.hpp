#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "esc/model.hpp"

namespace esc::testing {

struct NaiveResult {
  std::vector<std::string> ids;  // canonical IDs of the valid systems, sorted
  std::uint64_t generated = 0;   // candidate trees built before filtering
  bool skipped = false;          // generation budget exhausted, ids incomplete
};

/// Builds every tree of depth at most |L_comp| by taking the cross product of all providers
/// for every required interface (ignoring the no-repeat rule), then keeps the trees that
/// validate_system accepts.
NaiveResult naive_valid_systems(const Library& lib, const std::string& base,
                                std::uint64_t generationBudget = 200000);

/// Random library text: up to 4 interfaces `iJ { int fJ() }`, up to 6 components that return
/// constants, and a root `Base` requiring one or two interfaces.
std::string random_library_text(std::mt19937_64& rng);

}  // namespace esc::testing
