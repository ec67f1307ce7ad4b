#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "esc/model.hpp"

namespace esc {

using BigInt = boost::multiprecision::cpp_int;

struct EnumCaps {
  std::optional<std::size_t> maxDepth;       // S_depth cap, a single node has depth 1
  std::optional<std::size_t> maxComponents;  // S_comp cap
  std::optional<std::uint64_t> maxCount;     // stop after this many systems
};

/// Snapshot of a partially built tree handed to pruners. Nodes are in pre-order.
struct PartialSystem {
  struct Node {
    const Component* component;
    const std::string* selected;  // null for the root
    int parent;                   // -1 for the root
  };
  struct Slot {
    const std::string* interface;
    int parent;
  };
  std::vector<Node> nodes;
  std::vector<Slot> pending;  // interfaces still to be wired
};

/// Return false to stop the enumeration.
using SystemVisitor = std::function<bool(const SystemInstance&)>;
/// Return true to skip every completion of the partial system.
using Pruner = std::function<bool(const PartialSystem&)>;

struct EnumResult {
  std::uint64_t yielded = 0;
  bool capExceeded = false;  // maxCount was hit while more systems existed
  bool stopped = false;      // the visitor asked to stop
};

/// Streams every valid system rooted at `base` within `caps`, each once, in ascending
/// canonical-ID order. Throws PreconditionError if `base` is not in the library.
EnumResult enumerate_valid(const Library& lib, std::string_view base, const EnumCaps& caps,
                           const SystemVisitor& visit, const Pruner& prune = {});

/// As enumerate_valid, keeping only systems that verify against `reqs`.
EnumResult enumerate_working(const Library& lib, std::string_view base,
                             const RequirementSet& reqs, const EnumCaps& caps,
                             std::uint64_t budget, const SystemVisitor& visit);

/// Collects the stream; `result` receives the flags when given.
std::vector<SystemInstance> collect_valid(const Library& lib, std::string_view base,
                                          const EnumCaps& caps = {},
                                          EnumResult* result = nullptr);
std::vector<SystemInstance> collect_working(const Library& lib, std::string_view base,
                                            const RequirementSet& reqs, std::uint64_t budget,
                                            const EnumCaps& caps = {},
                                            EnumResult* result = nullptr);

/// (I_ci + 1)^(C_ri^S_depth). Throws std::overflow_error when the exponent is too large to
/// materialize.
BigInt count_upper_bound(std::uint64_t iCi, std::uint64_t cRi, std::uint64_t sDepth);

/// Exact counts over all valid systems (no caps), computed by memoized recursion over
/// (component, ancestors) rather than by listing trees.
struct ValidSpaceSummary {
  BigInt count;
  std::size_t maxComponents = 0;  // S_comp, 0 when no valid system exists
  std::size_t maxDepth = 0;       // S_depth
};
ValidSpaceSummary summarize_valid_space(const Library& lib, std::string_view base);

}  // namespace esc
