#include "esc/solvers.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "esc/interpreter.hpp"
#include "esc/reductions.hpp"

namespace esc {

std::string to_string(Answer a) {
  switch (a) {
    case Answer::Yes: return "yes";
    case Answer::No: return "no";
    case Answer::Unknown: return "unknown";
  }
  return "?";
}

namespace {

std::uint64_t budget_of(const SolveOptions& opts, const Library& lib, const RequirementSet& reqs) {
  return opts.budget ? *opts.budget : default_budget(lib, reqs);
}

// Minimum instance size over the providers of each interface, cached per library.
class ProviderSizes {
 public:
  explicit ProviderSizes(const Library& lib) : lib_(lib) {}
  std::int64_t min_for(const std::string& iface) {
    auto it = cache_.find(iface);
    if (it != cache_.end()) return it->second;
    std::int64_t best = 0;
    bool any = false;
    for (const Component* p : lib_.providers(iface)) {
      std::int64_t size = lib_.instance_code_size(*p, iface);
      if (!any || size < best) best = size;
      any = true;
    }
    return cache_[iface] = best;
  }

 private:
  const Library& lib_;
  std::map<std::string, std::int64_t> cache_;
};

std::int64_t lower_bound_with(const PartialSystem& p, const Reward& rew, const Library& lib,
                              ProviderSizes& sizes) {
  switch (rew.kind) {
    case RewardKind::NumComp:
      return static_cast<std::int64_t>(p.nodes.size() + p.pending.size());
    case RewardKind::CodeB: {
      std::int64_t total = 0;
      std::set<std::string> ifaces;
      for (std::size_t i = 0; i < p.nodes.size(); ++i) {
        const auto& n = p.nodes[i];
        std::optional<std::string> sel;
        if (n.selected) sel = *n.selected;
        total += lib.instance_code_size(*n.component, sel);
        if (i == 0) ifaces.insert(n.component->provides.begin(), n.component->provides.end());
        if (n.selected) ifaces.insert(*n.selected);
        ifaces.insert(n.component->requires_.begin(), n.component->requires_.end());
      }
      for (const auto& slot : p.pending) total += sizes.min_for(*slot.interface);
      for (const auto& name : ifaces) {
        if (const Interface* i = lib.find_interface(name)) total += i->codeSize;
      }
      return total;
    }
    case RewardKind::AssignmentDistance: {
      std::int64_t count = 0;
      for (std::size_t i = 0; i < p.nodes.size(); ++i) {
        const auto& n = p.nodes[i];
        if (!n.selected) continue;
        for (const auto& [iface, expected] : rew.reference.expected) {
          if (iface != *n.selected) continue;
          std::optional<bool> value;
          if (n.component->requires_.empty()) {
            value = false;
          } else {
            for (std::size_t j = i + 1; j < p.nodes.size(); ++j) {
              if (p.nodes[j].parent == static_cast<int>(i)) {
                value = p.nodes[j].component->name == rew.reference.trueComponent;
                break;
              }
            }
          }
          if (value && *value != expected) ++count;
        }
      }
      return count;
    }
  }
  return 0;
}

struct Incumbent {
  std::optional<SystemInstance> system;
  std::int64_t reward = 0;
};

// Branch and bound over the ascending-ID stream. Only systems with reward strictly below
// `limit` (when set) and strictly below the incumbent are accepted, so ties keep the
// earlier, smaller ID.
struct BranchAndBound {
  const Library& lib;
  const std::string& base;
  const RequirementSet& reqs;
  const Reward& rew;
  const SolveOptions& opts;
  std::optional<std::int64_t> limit;  // accept reward < limit
  bool firstOnly = false;

  Incumbent best;
  EnumResult result;

  void run() {
    ProgramIndex index(lib);
    ProviderSizes sizes(lib);
    const std::uint64_t budget = budget_of(opts, lib, reqs);
    auto ceiling = [&]() -> std::optional<std::int64_t> {
      if (best.system) return best.reward;
      return limit;
    };
    Pruner prune = [&](const PartialSystem& p) {
      auto c = ceiling();
      return c && lower_bound_with(p, rew, lib, sizes) >= *c;
    };
    result = enumerate_valid(
        lib, base, opts.caps,
        [&](const SystemInstance& s) {
          std::int64_t r = reward(s, rew, lib);
          auto c = ceiling();
          if (c && r >= *c) return true;
          if (!WiredSystem(s, index).verify(reqs, budget).working) return true;
          best = {s, r};
          return !firstOnly;
        },
        prune);
  }
};

void require_given_working(const AdaptInstance& inst, std::uint64_t budget) {
  auto problems = validate_system(inst.given, inst.lib, inst.base);
  if (!problems.empty()) {
    throw GivenSystemNotWorking("given system is not valid: " + problems.front());
  }
  Verdict v = verify(inst.given, inst.lib, inst.reqs, budget);
  if (!v.working) {
    std::string why = "given system is not working";
    if (v.firstFailure) {
      why += ": row " + std::to_string(v.firstFailure->row + 1) + " expected " +
             std::to_string(v.firstFailure->expected) + ", got " +
             describe(v.firstFailure->outcome);
    }
    throw GivenSystemNotWorking(why);
  }
}

}  // namespace

std::int64_t reward_lower_bound(const PartialSystem& p, const Reward& rew, const Library& lib) {
  ProviderSizes sizes(lib);
  return lower_bound_with(p, rew, lib, sizes);
}

Decision cs_create(const CreateInstance& inst, const SolveOptions& opts) {
  ProgramIndex index(inst.lib);
  const std::uint64_t budget = budget_of(opts, inst.lib, inst.reqs);
  Decision d;
  EnumResult r = enumerate_valid(inst.lib, inst.base, opts.caps, [&](const SystemInstance& s) {
    if (!WiredSystem(s, index).verify(inst.reqs, budget).working) return true;
    d.witness = s;
    return false;
  });
  d.examined = r.yielded;
  if (d.witness) {
    d.answer = Answer::Yes;
  } else {
    d.answer = r.capExceeded ? Answer::Unknown : Answer::No;
  }
  return d;
}

CreateOutcome es_create(const CreateInstance& inst, const SolveOptions& opts) {
  BranchAndBound bb{inst.lib, inst.base, inst.reqs, inst.rew, opts, std::nullopt, false, {}, {}};
  bb.run();
  CreateOutcome out;
  out.examined = bb.result.yielded;
  out.system = bb.best.system;
  out.reward = bb.best.reward;
  if (bb.result.capExceeded) {
    out.tag = CreateOutcome::Tag::Unknown;
  } else {
    out.tag = bb.best.system ? CreateOutcome::Tag::System : CreateOutcome::Tag::Bot;
  }
  return out;
}

Decision cs_adapt(const AdaptInstance& inst, const SolveOptions& opts) {
  if (!inst.bound) throw PreconditionError("CSAdapt needs a bound k");
  require_given_working(inst, budget_of(opts, inst.lib, inst.reqs));
  Decision d;
  std::int64_t given = reward(inst.given, inst.rew, inst.lib);
  if (given <= *inst.bound) {
    d.answer = Answer::Yes;
    d.witness = inst.given;
    d.reward = given;
    return d;
  }
  if (*inst.bound == std::numeric_limits<std::int64_t>::max()) {
    d.answer = Answer::No;
    return d;
  }
  BranchAndBound bb{inst.lib, inst.base, inst.reqs, inst.rew, opts, *inst.bound + 1, true, {}, {}};
  bb.run();
  d.examined = bb.result.yielded;
  if (bb.best.system) {
    d.answer = Answer::Yes;
    d.witness = bb.best.system;
    d.reward = bb.best.reward;
  } else {
    d.answer = bb.result.capExceeded ? Answer::Unknown : Answer::No;
  }
  return d;
}

AdaptOutcome es_adapt(const AdaptInstance& inst, const SolveOptions& opts) {
  require_given_working(inst, budget_of(opts, inst.lib, inst.reqs));
  const std::int64_t given = reward(inst.given, inst.rew, inst.lib);
  // The given system competes on equal terms: anything with reward <= given and a smaller
  // ID than the given one must still be found, so the limit is given + 1.
  BranchAndBound bb{inst.lib, inst.base, inst.reqs, inst.rew, opts, given + 1, false, {}, {}};
  bb.run();
  AdaptOutcome out;
  out.examined = bb.result.yielded;
  if (bb.best.system) {
    out.system = bb.best.system;
    out.reward = bb.best.reward;
  } else {
    out.system = inst.given;
    out.reward = given;
  }
  out.tag = bb.result.capExceeded ? AdaptOutcome::Tag::Unknown : AdaptOutcome::Tag::System;
  return out;
}

DsViaCreate ds_via_escreate(const Graph& g, int k, const SolveOptions& opts) {
  ReductionArtifact a = gen_ds_cscreate(g, k);
  CreateInstance inst{a.reqs, a.lib, a.base, a.rew, {}};
  CreateOutcome o = es_create(inst, opts);
  DsViaCreate out;
  if (o.tag == CreateOutcome::Tag::Unknown) return out;
  if (o.tag == CreateOutcome::Tag::Bot) {
    out.answer = Answer::No;
    return out;
  }
  std::set<int> chosen;
  for (const auto& w : o.system->children()) {
    auto it = a.meta.vertexOf.find(w.child.component());
    if (it != a.meta.vertexOf.end()) chosen.insert(it->second);
  }
  out.vertices.assign(chosen.begin(), chosen.end());
  out.answer = g.is_dominating(out.vertices) ? Answer::Yes : Answer::No;
  return out;
}

}  // namespace esc
