#include "esc/oracles.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>

#include "esc/model.hpp"

namespace esc {

namespace {

void guard(int size, const char* what) {
  if (size > kOracleSizeLimit) {
    throw PreconditionError(std::string(what) + " has " + std::to_string(size) +
                            " elements; the exhaustive oracle accepts at most " +
                            std::to_string(kOracleSizeLimit));
  }
}

// closed[v] has bit u set iff u is v or adjacent to v (0-based bits).
std::vector<std::uint32_t> closed_masks(const Graph& g) {
  std::vector<std::uint32_t> closed(static_cast<std::size_t>(g.n()), 0);
  for (int v = 0; v < g.n(); ++v) closed[v] |= 1u << v;
  for (auto [u, v] : g.edges()) {
    closed[u - 1] |= 1u << (v - 1);
    closed[v - 1] |= 1u << (u - 1);
  }
  return closed;
}

std::vector<int> members(std::uint32_t set) {
  std::vector<int> out;
  for (int v = 0; set; ++v, set >>= 1) {
    if (set & 1u) out.push_back(v + 1);
  }
  return out;
}

// Smallest dominating mask of size <= k in increasing numeric order, or nullopt.
std::optional<std::uint32_t> smallest_dominating(const Graph& g, int k) {
  const int n = g.n();
  const auto closed = closed_masks(g);
  const std::uint32_t all = n == 32 ? ~0u : ((1u << n) - 1);
  std::optional<std::uint32_t> best;
  for (std::uint32_t set = 0; set <= all; ++set) {
    if (std::popcount(set) > k) continue;
    std::uint32_t covered = 0;
    for (int v = 0; v < n; ++v) {
      if (set & (1u << v)) covered |= closed[v];
    }
    if (covered == all) {
      if (!best || std::popcount(set) < std::popcount(*best)) best = set;
      if (std::popcount(set) == 0) break;
    }
    if (set == all) break;
  }
  return best;
}

}  // namespace

DomSetResult has_dominating_set(const Graph& g, int k) {
  guard(g.n(), "graph");
  if (k < 0 || k > g.n()) {
    throw PreconditionError("k = " + std::to_string(k) + " outside 0.." + std::to_string(g.n()));
  }
  DomSetResult r;
  if (auto set = smallest_dominating(g, k)) {
    r.exists = true;
    r.witness = members(*set);
  }
  return r;
}

DomSetResult min_dominating_set(const Graph& g) {
  guard(g.n(), "graph");
  DomSetResult r;
  if (auto set = smallest_dominating(g, g.n())) {
    r.exists = true;
    r.witness = members(*set);
    r.gamma = static_cast<int>(r.witness.size());
  }
  return r;
}

bool cnf_evaluate(const CnfClauses& clauses, const std::vector<bool>& assignment) {
  for (const auto& clause : clauses) {
    bool sat = false;
    for (int lit : clause) {
      int var = lit > 0 ? lit : -lit;
      bool value = assignment.at(static_cast<std::size_t>(var - 1));
      if ((lit > 0) == value) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

CsatResult csat_extendable(const CnfInstance& c) {
  c.check();
  guard(c.m, "formula");
  std::vector<int> freeVars;
  for (int v = 1; v <= c.m; ++v) {
    if (!c.partial.count(v)) freeVars.push_back(v);
  }
  std::vector<bool> assignment(static_cast<std::size_t>(c.m), false);
  for (const auto& [var, value] : c.partial) assignment[var - 1] = value;
  const std::uint64_t combos = std::uint64_t{1} << freeVars.size();
  for (std::uint64_t bits = 0; bits < combos; ++bits) {
    for (std::size_t i = 0; i < freeVars.size(); ++i) {
      assignment[freeVars[i] - 1] = (bits >> i) & 1u;
    }
    if (cnf_evaluate(c.clauses, assignment)) {
      CsatResult r;
      r.extendable = true;
      for (int v = 1; v <= c.m; ++v) r.witness[v] = assignment[v - 1];
      return r;
    }
  }
  return {};
}

}  // namespace esc
