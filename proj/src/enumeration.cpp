#include "esc/enumeration.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "esc/interpreter.hpp"

namespace esc {

namespace {

struct Placed {
  const Component* component;
  const std::string* selected;
  int parent;
  int depth;
  std::vector<int> children;  // node index per required interface
};

struct Pending {
  const std::string* interface;
  int parent;
  int slot;
  int depth;  // depth of the node that will fill the slot
};

class Enumerator {
 public:
  Enumerator(const Library& lib, const EnumCaps& caps, const SystemVisitor& visit,
             const Pruner& prune)
      : lib_(lib), caps_(caps), visit_(visit), prune_(prune) {}

  EnumResult run(const Component& root) {
    place(root, nullptr, -1, -1, 1);
    if (!pruned()) search();
    return result_;
  }

 private:
  void place(const Component& c, const std::string* selected, int parent, int slot, int depth) {
    int me = static_cast<int>(nodes_.size());
    nodes_.push_back({&c, selected, parent, depth, std::vector<int>(c.requires_.size(), -1)});
    if (parent >= 0) nodes_[parent].children[slot] = me;
    for (int i = static_cast<int>(c.requires_.size()) - 1; i >= 0; --i) {
      pending_.push_back({&c.requires_[i], me, i, depth + 1});
    }
  }

  void unplace() {
    const Placed& n = nodes_.back();
    pending_.resize(pending_.size() - n.component->requires_.size());
    nodes_.pop_back();
  }

  bool on_path(const Component* c, int node) const {
    for (int at = node; at >= 0; at = nodes_[at].parent) {
      if (nodes_[at].component == c) return true;
    }
    return false;
  }

  bool pruned() {
    if (!prune_) return false;
    PartialSystem p;
    p.nodes.reserve(nodes_.size());
    for (const auto& n : nodes_) p.nodes.push_back({n.component, n.selected, n.parent});
    p.pending.reserve(pending_.size());
    for (auto it = pending_.rbegin(); it != pending_.rend(); ++it) {
      p.pending.push_back({it->interface, it->parent});
    }
    return prune_(p);
  }

  // Returns false once the enumeration must stop.
  bool search() {
    if (pending_.empty()) return emit();
    Pending slot = pending_.back();
    pending_.pop_back();
    bool keepGoing = true;
    if (!caps_.maxDepth || static_cast<std::size_t>(slot.depth) <= *caps_.maxDepth) {
      for (const Component* p : lib_.providers(*slot.interface)) {
        if (on_path(p, slot.parent)) continue;
        if (caps_.maxComponents &&
            nodes_.size() + 1 + pending_.size() + p->requires_.size() > *caps_.maxComponents) {
          continue;
        }
        place(*p, slot.interface, slot.parent, slot.slot, slot.depth);
        if (!pruned()) keepGoing = search();
        nodes_[slot.parent].children[slot.slot] = -1;
        unplace();
        if (!keepGoing) break;
      }
    }
    pending_.push_back(slot);
    return keepGoing;
  }

  SystemInstance build(int idx) const {
    const Placed& n = nodes_[idx];
    std::vector<SystemInstance::Wiring> kids;
    kids.reserve(n.children.size());
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      kids.push_back({n.component->requires_[i], build(n.children[i])});
    }
    std::optional<std::string> sel;
    if (n.selected) sel = *n.selected;
    return SystemInstance(n.component->name, std::move(sel), std::move(kids));
  }

  bool emit() {
    if (caps_.maxCount && result_.yielded >= *caps_.maxCount) {
      result_.capExceeded = true;
      return false;
    }
    ++result_.yielded;
    if (!visit_(build(0))) {
      result_.stopped = true;
      return false;
    }
    return true;
  }

  const Library& lib_;
  const EnumCaps& caps_;
  const SystemVisitor& visit_;
  const Pruner& prune_;
  std::vector<Placed> nodes_;
  std::vector<Pending> pending_;
  EnumResult result_;
};

}  // namespace

EnumResult enumerate_valid(const Library& lib, std::string_view base, const EnumCaps& caps,
                           const SystemVisitor& visit, const Pruner& prune) {
  const Component* root = lib.find_component(base);
  if (!root) throw PreconditionError("base component '" + std::string(base) + "' not in library");
  for (auto cap : {caps.maxDepth, caps.maxComponents}) {
    if (cap && *cap == 0) throw PreconditionError("enumeration caps must be positive");
  }
  if (caps.maxCount && *caps.maxCount == 0) {
    throw PreconditionError("enumeration caps must be positive");
  }
  return Enumerator(lib, caps, visit, prune).run(*root);
}

EnumResult enumerate_working(const Library& lib, std::string_view base,
                             const RequirementSet& reqs, const EnumCaps& caps,
                             std::uint64_t budget, const SystemVisitor& visit) {
  ProgramIndex index(lib);
  // maxCount bounds the systems examined, not the ones that survive the filter.
  EnumResult inner = enumerate_valid(lib, base, caps, [&](const SystemInstance& s) {
    if (!WiredSystem(s, index).verify(reqs, budget).working) return true;
    return visit(s);
  });
  return inner;
}

std::vector<SystemInstance> collect_valid(const Library& lib, std::string_view base,
                                          const EnumCaps& caps, EnumResult* result) {
  std::vector<SystemInstance> out;
  EnumResult r = enumerate_valid(lib, base, caps, [&](const SystemInstance& s) {
    out.push_back(s);
    return true;
  });
  if (result) *result = r;
  return out;
}

std::vector<SystemInstance> collect_working(const Library& lib, std::string_view base,
                                            const RequirementSet& reqs, std::uint64_t budget,
                                            const EnumCaps& caps, EnumResult* result) {
  std::vector<SystemInstance> out;
  EnumResult r = enumerate_working(lib, base, reqs, caps, budget, [&](const SystemInstance& s) {
    out.push_back(s);
    return true;
  });
  if (result) *result = r;
  return out;
}

BigInt count_upper_bound(std::uint64_t iCi, std::uint64_t cRi, std::uint64_t sDepth) {
  constexpr std::uint64_t kMaxExponent = std::uint64_t{1} << 24;
  std::uint64_t exponent = 1;
  for (std::uint64_t i = 0; i < sDepth; ++i) {
    if (cRi != 0 && exponent > kMaxExponent / cRi) {
      throw std::overflow_error("bound exponent C_ri^S_depth is too large to represent");
    }
    exponent *= cRi;
  }
  BigInt base = iCi + 1;
  return boost::multiprecision::pow(base, static_cast<unsigned>(exponent));
}

namespace {

class SpaceSummarizer {
 public:
  explicit SpaceSummarizer(const Library& lib) : lib_(lib) {
    for (std::size_t i = 0; i < lib.components().size(); ++i) {
      index_[&lib.components()[i]] = i;
    }
  }

  struct Entry {
    BigInt count;
    std::size_t maxNodes = 0;
    std::size_t maxDepth = 0;
  };

  const Entry& solve(const Component& c, std::vector<bool> ancestors) {
    std::size_t ci = index_.at(&c);
    ancestors[ci] = true;
    auto key = std::make_pair(ci, ancestors);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Entry e;
    e.count = 1;
    e.maxNodes = 1;
    e.maxDepth = 1;
    for (const auto& req : c.requires_) {
      BigInt ways = 0;
      std::size_t bestNodes = 0;
      std::size_t bestDepth = 0;
      for (const Component* p : lib_.providers(req)) {
        if (ancestors[index_.at(p)]) continue;
        const Entry& sub = solve(*p, ancestors);
        if (sub.count == 0) continue;
        ways += sub.count;
        bestNodes = std::max(bestNodes, sub.maxNodes);
        bestDepth = std::max(bestDepth, sub.maxDepth);
      }
      if (ways == 0) {
        e = Entry{};
        break;
      }
      e.count *= ways;
      e.maxNodes += bestNodes;
      e.maxDepth = std::max(e.maxDepth, bestDepth + 1);
    }
    return memo_.emplace(key, std::move(e)).first->second;
  }

 private:
  const Library& lib_;
  std::map<const Component*, std::size_t> index_;
  std::map<std::pair<std::size_t, std::vector<bool>>, Entry> memo_;
};

}  // namespace

ValidSpaceSummary summarize_valid_space(const Library& lib, std::string_view base) {
  const Component* root = lib.find_component(base);
  if (!root) throw PreconditionError("base component '" + std::string(base) + "' not in library");
  SpaceSummarizer s(lib);
  const auto& e = s.solve(*root, std::vector<bool>(lib.components().size(), false));
  return {e.count, e.maxNodes, e.maxDepth};
}

}  // namespace esc
