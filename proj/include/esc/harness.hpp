#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "esc/metrics.hpp"
#include "esc/reductions.hpp"
#include "esc/solvers.hpp"

namespace esc {

// ---------------------------------------------------------------------------
// Instance bundles: a directory holding library.esl, reqs.req and instance.json.

struct Bundle {
  std::string libraryText;
  std::string reqsText;
  Library lib;
  RequirementSet reqs;
  std::string base;
  Reward rew;
  std::optional<SystemInstance> given;
  std::optional<std::int64_t> bound;
  nlohmann::json meta;  // as written; empty object when absent
};

nlohmann::json reward_to_json(const Reward& r);
Reward reward_from_json(const nlohmann::json& j);
nlohmann::json meta_to_json(const ReductionMeta& m);
nlohmann::json params_to_json(const ParamVector& p);

void write_bundle(const std::filesystem::path& dir, const ReductionArtifact& a);
/// Throws PreconditionError on missing files, malformed JSON or DSL diagnostics.
Bundle read_bundle(const std::filesystem::path& dir);

std::string read_text_file(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Cross-validation campaigns: generated instances against the oracles.

struct XCheckCase {
  std::uint64_t seed = 0;
  int n = 0;                 // vertices, or variables for b22
  int k = 0;                 // 0 when the kind has no k
  std::string instance;      // graph or CNF text
  std::string expected;
  std::string got;
  bool agree = false;
  std::vector<std::string> notes;
};

struct XCheckReport {
  ReductionKind kind = ReductionKind::Lemma1;
  RewardKind rew = RewardKind::NumComp;
  std::vector<std::uint64_t> seeds;
  int maxN = 0;
  std::vector<XCheckCase> cases;
  std::vector<std::string> calibrationMismatches;
  std::vector<std::string> whitelisted;  // known table discrepancies, logged only
  std::size_t agreeCount() const;
  bool passed() const { return agreeCount() == cases.size() && calibrationMismatches.empty(); }
};

/// Seeds 1..seedCount. Each seed draws n uniformly (from the smallest n the kind accepts up to
/// maxN) and a G(n, 0.5) graph, then checks every admissible k. For b22 each seed draws a CNF
/// with m in 1..min(maxN, 6), 1..8 clauses and a random partial assignment. lemma2 checks both
/// rewards whatever `rew` says.
XCheckReport run_xcheck(ReductionKind kind, int seedCount, int maxN,
                        RewardKind rew = RewardKind::NumComp, const SolveOptions& opts = {});

/// The random CNF drawn for `seed` in a b22 campaign.
CnfInstance random_cnf(std::uint64_t seed, int maxM);
/// The random graph drawn for `seed`: n uniform in [minN, maxN], edge probability 0.5.
Graph random_graph(std::uint64_t seed, int minN, int maxN);

nlohmann::json xcheck_to_json(const XCheckReport& r);
std::string xcheck_to_text(const XCheckReport& r);

}  // namespace esc
