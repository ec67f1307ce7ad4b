#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "esc/ast.hpp"

namespace esc {

/// Thrown when an operation's precondition does not hold (bad arguments, not bad data).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Requirements

using TruthVector = std::vector<bool>;

class BoolVarSet {
 public:
  BoolVarSet() = default;
  /// Throws PreconditionError on empty or duplicate names.
  explicit BoolVarSet(std::vector<std::string> names);

  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }
  bool operator==(const BoolVarSet&) const = default;

 private:
  std::vector<std::string> names_;
};

struct Requirement {
  TruthVector input;
  std::int64_t output = 0;
  bool operator==(const Requirement&) const = default;
};

class RequirementSet {
 public:
  RequirementSet() = default;
  /// Throws PreconditionError when a row's arity or output does not fit.
  RequirementSet(BoolVarSet vars, std::vector<std::int64_t> outputs, std::vector<Requirement> rows);

  const BoolVarSet& vars() const { return vars_; }
  /// Declared output set O, in declaration order.
  const std::vector<std::int64_t>& outputs() const { return outputs_; }
  const std::vector<Requirement>& rows() const { return rows_; }
  bool allows_output(std::int64_t value) const;
  bool operator==(const RequirementSet&) const = default;

 private:
  BoolVarSet vars_;
  std::vector<std::int64_t> outputs_;
  std::vector<Requirement> rows_;
};

// ---------------------------------------------------------------------------
// Interfaces, components, libraries

struct Param {
  ValueType type = ValueType::Int;
  std::string name;
  bool operator==(const Param&) const = default;
};

struct FunctionPrototype {
  std::string name;
  ValueType returnType = ValueType::Void;
  std::vector<Param> params;
  bool operator==(const FunctionPrototype&) const = default;

  /// Same name, return type and parameter types (parameter names may differ).
  bool same_signature(const FunctionPrototype& other) const;
};

struct Interface {
  std::string name;
  std::vector<FunctionPrototype> prototypes;
  std::vector<Param> transferFields;  // stored, never evaluated
  int codeSize = 0;
  bool operator==(const Interface&) const = default;

  const FunctionPrototype* find(std::string_view function) const;
};

struct Function {
  FunctionPrototype prototype;
  Block body;
  bool operator==(const Function&) const = default;
};

struct Component {
  std::string name;
  std::vector<std::string> provides;
  std::vector<std::string> requires_;
  std::vector<Function> functions;
  int codeSize = 0;
  bool operator==(const Component&) const = default;

  const Function* find(std::string_view function) const;
  bool provides_interface(std::string_view iface) const;
};

/// L_int and L_comp. Declaration order is kept for printing; lookups are by name.
/// Copies share the same immutable storage.
class Library {
 public:
  Library();
  Library(std::vector<Interface> interfaces, std::vector<Component> components);

  const std::vector<Interface>& interfaces() const;
  const std::vector<Component>& components() const;

  const Interface* find_interface(std::string_view name) const;
  const Component* find_component(std::string_view name) const;

  /// Components providing `iface`, sorted by name.
  const std::vector<const Component*>& providers(std::string_view iface) const;

  /// Lines of code of one instance of `component` implementing `selected`. A component
  /// providing several interfaces used for one of them is a reduced copy holding only that
  /// interface's functions (plus private helpers). The root (no selection) is counted whole.
  int instance_code_size(const Component& component,
                         const std::optional<std::string>& selected) const;

  bool operator==(const Library& other) const;

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

/// Returns every broken well-formedness rule; empty means valid.
std::vector<std::string> validate_library(const Library& lib);

/// Reduced copy of `component` keeping only the functions of `selected` and private helpers.
Component reduced_copy(const Component& component, const Interface& selected,
                       const Library& lib);

// ---------------------------------------------------------------------------
// Wiring trees

class SystemInstance {
 public:
  struct Wiring;

  SystemInstance() = default;
  SystemInstance(std::string component, std::optional<std::string> selectedInterface,
                 std::vector<Wiring> children);

  const std::string& component() const { return component_; }
  const std::optional<std::string>& selected_interface() const { return selected_; }
  /// Children keyed by required interface, in the component's declaration order.
  const std::vector<Wiring>& children() const { return children_; }
  const SystemInstance* child(std::string_view iface) const;

  std::size_t node_count() const;
  std::size_t depth() const;  // a single node has depth 1

  bool operator==(const SystemInstance&) const;

 private:
  std::string component_;
  std::optional<std::string> selected_;
  std::vector<Wiring> children_;
};

struct SystemInstance::Wiring {
  std::string interface;
  SystemInstance child;
  bool operator==(const Wiring&) const = default;
};

/// `Name(iface->ChildId,...)`, required interfaces in declaration order.
std::string canonical_id(const SystemInstance& s);

/// Parses a canonical ID back into a tree. Throws PreconditionError on malformed text.
SystemInstance parse_system_id(std::string_view id);

/// Violations of the wiring-tree invariants against `lib` rooted at `base`; empty = valid.
std::vector<std::string> validate_system(const SystemInstance& s, const Library& lib,
                                         std::string_view base);

// ---------------------------------------------------------------------------
// Rewards

enum class RewardKind { NumComp, CodeB, AssignmentDistance };

/// Reference assignment for the artifact-local Hamming reward: each listed interface is
/// expected to be wired (through one intermediate component) to `trueComponent` or
/// `falseComponent`; the reward counts positions that differ from the reference.
struct AssignmentReference {
  std::vector<std::pair<std::string, bool>> expected;  // interface -> reference value
  std::string trueComponent = "TruthValueTrue";
  std::string falseComponent = "TruthValueFalse";
  bool operator==(const AssignmentReference&) const = default;
};

struct Reward {
  RewardKind kind = RewardKind::NumComp;
  AssignmentReference reference;  // AssignmentDistance only
  bool operator==(const Reward&) const = default;

  static Reward num_comp() { return {RewardKind::NumComp, {}}; }
  static Reward code_b() { return {RewardKind::CodeB, {}}; }
};

std::string to_string(RewardKind kind);
/// Accepts "numcomp" and "codeb". Throws PreconditionError otherwise.
RewardKind parse_reward_kind(std::string_view text);

std::int64_t reward(const SystemInstance& s, const Reward& rew, const Library& lib);
inline std::int64_t reward(const SystemInstance& s, RewardKind kind, const Library& lib) {
  return reward(s, Reward{kind, {}}, lib);
}

// ---------------------------------------------------------------------------
// Problem instances

/// Env() is part of every instance and never consulted.
struct EnvToken {
  bool operator==(const EnvToken&) const = default;
};

struct CreateInstance {
  RequirementSet reqs;
  Library lib;
  std::string base;
  Reward rew;
  EnvToken env;
};

struct AdaptInstance {
  RequirementSet reqs;
  Library lib;
  std::string base;
  Reward rew;
  EnvToken env;
  SystemInstance given;
  std::optional<std::int64_t> bound;
};

}  // namespace esc
