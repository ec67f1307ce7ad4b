#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "esc/enumeration.hpp"
#include "esc/graph.hpp"
#include "esc/model.hpp"

namespace esc {

struct SolveOptions {
  EnumCaps caps;
  std::optional<std::uint64_t> budget;  // per-row step budget; default_budget() when absent
};

enum class Answer { Yes, No, Unknown };
std::string to_string(Answer a);

struct Decision {
  Answer answer = Answer::Unknown;
  std::optional<SystemInstance> witness;  // Yes only
  std::optional<std::int64_t> reward;     // reward of the witness, adapt problems only
  std::uint64_t examined = 0;             // complete systems visited
};

struct SearchOutcome {
  enum class Tag { System, Bot, Unknown };
  Tag tag = Tag::Bot;
  std::optional<SystemInstance> system;  // System, or best found so far when Unknown
  std::int64_t reward = 0;
  std::uint64_t examined = 0;
};
using CreateOutcome = SearchOutcome;
using AdaptOutcome = SearchOutcome;

class GivenSystemNotWorking : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Is there a working system? Witness is the first working system in canonical-ID order.
Decision cs_create(const CreateInstance& inst, const SolveOptions& opts = {});

/// Reward-minimal working system, ties broken by the smallest canonical ID.
CreateOutcome es_create(const CreateInstance& inst, const SolveOptions& opts = {});

/// Is there a working system with reward <= inst.bound? Throws GivenSystemNotWorking when the
/// given system is invalid or fails R, PreconditionError when no bound is set.
Decision cs_adapt(const AdaptInstance& inst, const SolveOptions& opts = {});

/// Reward-minimal working system; never worse than the given one.
AdaptOutcome es_adapt(const AdaptInstance& inst, const SolveOptions& opts = {});

/// Lower bound on the reward of every completion of `p`.
std::int64_t reward_lower_bound(const PartialSystem& p, const Reward& rew, const Library& lib);

struct DsViaCreate {
  Answer answer = Answer::Unknown;
  std::vector<int> vertices;  // extracted from the witness when one was produced
};

/// Dominating set decided by building the cond/InSet instance and running es_create on it.
DsViaCreate ds_via_escreate(const Graph& g, int k, const SolveOptions& opts = {});

}  // namespace esc
