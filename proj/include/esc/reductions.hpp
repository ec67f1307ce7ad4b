#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "esc/graph.hpp"
#include "esc/model.hpp"

namespace esc {

enum class ReductionKind {
  Lemma1,   // cond/InSet instance for CSCreate
  Lemma2,   // TopBase/BaseJ/InSet instance for ESCreate
  Lemma4,   // the Lemma2 library as a CSAdapt instance with the all-vertices given system
  A9,       // explicit vertex-status vector
  A10,      // vertex-status vector threaded through a chain of base components
  A11,      // two multi-interface status components
  B11,      // TopBase over Base1/Base1a twin and Base2
  TwinA9,
  TwinA10,
  TwinA11,
  B22,      // CNF extension via varAssign/TruthValue leaves
};

std::string to_string(ReductionKind kind);
/// Accepts lemma1, lemma2, lemma4, a9, a10, a11, b11, twin-a9, twin-a10, twin-a11, b22.
ReductionKind parse_reduction_kind(std::string_view text);
bool is_graph_kind(ReductionKind kind);
bool is_adapt_kind(ReductionKind kind);

/// Table-1 parameters; absent fields are not claimed (or not measured).
struct ParamClaims {
  std::optional<std::int64_t> l_int, l_comp, i_ci, c_pi, c_ri, s_comp, s_depth;
  bool operator==(const ParamClaims&) const = default;
};

struct ReductionMeta {
  std::string source;                       // graph or CNF text the artifact was built from
  std::optional<int> k;
  ParamClaims claimed;
  std::vector<std::string> tableDiscrepancies;  // claimed keys known to differ from the tables
  std::vector<std::string> calibration;         // bound/line-count mismatches, verbatim
  std::map<std::string, int> vertexOf;          // InSet component -> vertex
  std::optional<std::int64_t> twinReward;       // reward of the given twin system
  std::optional<std::int64_t> optimumFormula;   // expected optimum when the construction fixes one
};

struct ReductionArtifact {
  ReductionKind kind = ReductionKind::Lemma1;
  std::string libraryText;
  std::string reqsText;
  Library lib;
  RequirementSet reqs;
  std::string base;
  Reward rew;
  std::optional<SystemInstance> given;
  std::optional<std::int64_t> bound;
  ReductionMeta meta;

  CreateInstance create_instance() const;
  /// Throws PreconditionError when the artifact has no given system.
  AdaptInstance adapt_instance() const;
};

/// Component name for the InSet leaf implementing condJ with vertex K.
std::string inset_name(int j, int vertex, int n);

ReductionArtifact gen_ds_cscreate(const Graph& g, int k);
ReductionArtifact gen_ds_cscreate_opt(const Graph& g, RewardKind rew = RewardKind::NumComp);
/// Requires 1 <= k < n. Bound k+2 (NumComp) or 9k+16 (CodeB).
ReductionArtifact gen_ds_csadapt(const Graph& g, int k, RewardKind rew);
ReductionArtifact gen_ds_vertexstatus(const Graph& g, int k);
/// Requires n >= 2: the chain has a head and a tail component.
ReductionArtifact gen_ds_chained(const Graph& g, int k);
ReductionArtifact gen_ds_threecomp(const Graph& g, int k);
/// Bound k+2 (NumComp) or 6k+15 (CodeB), the latter taken verbatim.
ReductionArtifact gen_ds_csadapt_twinned(const Graph& g, int k, RewardKind rew);
/// `base` is A9, A10 or A11. Bound is the reward shared by every non-twin working system.
ReductionArtifact apply_twinning(ReductionKind base, const Graph& g, int k, RewardKind rew);
/// Requires at least one clause. Reward is the distance to p' with bound 0.
ReductionArtifact gen_csat_csadapt(const CnfInstance& c);

/// Dispatch for graph kinds; Lemma2 ignores k.
ReductionArtifact generate(ReductionKind kind, const Graph& g, int k, RewardKind rew);

/// Smallest and largest k a graph kind accepts on an n-vertex graph (empty when none).
std::optional<std::pair<int, int>> k_range(ReductionKind kind, int n);

}  // namespace esc
