#pragma once

#include <map>
#include <optional>
#include <vector>

#include "esc/graph.hpp"

namespace esc {

/// Largest vertex / variable count the exhaustive oracles accept.
inline constexpr int kOracleSizeLimit = 20;

struct DomSetResult {
  bool exists = false;
  std::vector<int> witness;  // sorted ascending
  std::optional<int> gamma;  // optimization form only
};

/// Exhaustive search over vertex subsets of size at most k.
DomSetResult has_dominating_set(const Graph& g, int k);
/// Smallest dominating set; for n = 0 the empty set (gamma 0).
DomSetResult min_dominating_set(const Graph& g);

struct CsatResult {
  bool extendable = false;
  std::map<int, bool> witness;  // full assignment over 1..m when extendable
};

/// Exhaustive over the 2^(unassigned) extensions of the partial assignment.
CsatResult csat_extendable(const CnfInstance& c);

/// Direct clause-by-clause evaluation; `assignment[i]` is the value of variable i + 1.
bool cnf_evaluate(const CnfClauses& clauses, const std::vector<bool>& assignment);

}  // namespace esc
