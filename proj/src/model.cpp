#include "esc/model.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "esc/dsl.hpp"

namespace esc {

BoolVarSet::BoolVarSet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw PreconditionError("variable set must not be empty");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (!seen.insert(n).second) throw PreconditionError("duplicate variable '" + n + "'");
  }
}

RequirementSet::RequirementSet(BoolVarSet vars, std::vector<std::int64_t> outputs,
                               std::vector<Requirement> rows)
    : vars_(std::move(vars)), outputs_(std::move(outputs)), rows_(std::move(rows)) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].input.size() != vars_.size()) {
      throw PreconditionError("requirement " + std::to_string(i + 1) + " has " +
                              std::to_string(rows_[i].input.size()) + " values, expected " +
                              std::to_string(vars_.size()));
    }
    if (!allows_output(rows_[i].output)) {
      throw PreconditionError("requirement " + std::to_string(i + 1) + " output " +
                              std::to_string(rows_[i].output) + " is not in the output set");
    }
  }
}

bool RequirementSet::allows_output(std::int64_t value) const {
  return std::find(outputs_.begin(), outputs_.end(), value) != outputs_.end();
}

bool FunctionPrototype::same_signature(const FunctionPrototype& other) const {
  if (name != other.name || returnType != other.returnType) return false;
  if (params.size() != other.params.size()) return false;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (params[i].type != other.params[i].type) return false;
  }
  return true;
}

const FunctionPrototype* Interface::find(std::string_view function) const {
  for (const auto& p : prototypes) {
    if (p.name == function) return &p;
  }
  return nullptr;
}

const Function* Component::find(std::string_view function) const {
  for (const auto& f : functions) {
    if (f.prototype.name == function) return &f;
  }
  return nullptr;
}

bool Component::provides_interface(std::string_view iface) const {
  return std::find(provides.begin(), provides.end(), iface) != provides.end();
}

// ---------------------------------------------------------------------------

struct Library::Data {
  std::vector<Interface> interfaces;
  std::vector<Component> components;
  std::map<std::string, std::size_t, std::less<>> interfaceIndex;
  std::map<std::string, std::size_t, std::less<>> componentIndex;
  std::map<std::string, std::vector<const Component*>, std::less<>> providers;
  std::map<std::pair<std::string, std::string>, int> reducedSizes;
};

Library::Library() : data_(std::make_shared<Data>()) {}

Library::Library(std::vector<Interface> interfaces, std::vector<Component> components) {
  auto d = std::make_shared<Data>();
  d->interfaces = std::move(interfaces);
  d->components = std::move(components);
  for (std::size_t i = 0; i < d->interfaces.size(); ++i) {
    d->interfaceIndex.emplace(d->interfaces[i].name, i);
  }
  for (std::size_t i = 0; i < d->components.size(); ++i) {
    const Component& c = d->components[i];
    d->componentIndex.emplace(c.name, i);
    for (const auto& p : c.provides) d->providers[p].push_back(&c);
  }
  for (auto& [name, list] : d->providers) {
    std::sort(list.begin(), list.end(),
              [](const Component* a, const Component* b) { return a->name < b->name; });
  }
  data_ = d;
  for (const Component& c : d->components) {
    if (c.provides.size() < 2) continue;
    for (const auto& p : c.provides) {
      auto it = d->interfaceIndex.find(p);
      if (it == d->interfaceIndex.end()) continue;
      Component reduced = reduced_copy(c, d->interfaces[it->second], *this);
      d->reducedSizes[{c.name, p}] = count_lines(print_component(reduced));
    }
  }
}

const std::vector<Interface>& Library::interfaces() const { return data_->interfaces; }
const std::vector<Component>& Library::components() const { return data_->components; }

const Interface* Library::find_interface(std::string_view name) const {
  auto it = data_->interfaceIndex.find(name);
  return it == data_->interfaceIndex.end() ? nullptr : &data_->interfaces[it->second];
}

const Component* Library::find_component(std::string_view name) const {
  auto it = data_->componentIndex.find(name);
  return it == data_->componentIndex.end() ? nullptr : &data_->components[it->second];
}

const std::vector<const Component*>& Library::providers(std::string_view iface) const {
  static const std::vector<const Component*> none;
  auto it = data_->providers.find(iface);
  return it == data_->providers.end() ? none : it->second;
}

int Library::instance_code_size(const Component& component,
                                const std::optional<std::string>& selected) const {
  if (selected && component.provides.size() > 1) {
    auto it = data_->reducedSizes.find({component.name, *selected});
    if (it != data_->reducedSizes.end()) return it->second;
  }
  return component.codeSize;
}

bool Library::operator==(const Library& other) const {
  return interfaces() == other.interfaces() && components() == other.components();
}

Component reduced_copy(const Component& component, const Interface& selected,
                       const Library& lib) {
  std::set<std::string> provided;
  for (const auto& p : component.provides) {
    if (const Interface* iface = lib.find_interface(p)) {
      for (const auto& proto : iface->prototypes) provided.insert(proto.name);
    }
  }
  Component out;
  out.name = component.name;
  out.provides = {selected.name};
  out.requires_ = component.requires_;
  for (const auto& f : component.functions) {
    bool keep = selected.find(f.prototype.name) != nullptr || !provided.count(f.prototype.name);
    if (keep) out.functions.push_back(f);
  }
  out.codeSize = count_lines(print_component(out));
  return out;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

void collect_calls_expr(const Expr& e, std::vector<const CallExpr*>& out);

void collect_calls_block(const Block& b, std::vector<const CallExpr*>& out) {
  for (const auto& s : b) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, OutputStmt>) {
            collect_calls_expr(*n.value, out);
          } else if constexpr (std::is_same_v<T, ReturnStmt>) {
            if (n.value) collect_calls_expr(**n.value, out);
          } else if constexpr (std::is_same_v<T, AssignStmt>) {
            if (n.index) collect_calls_expr(**n.index, out);
            collect_calls_expr(*n.value, out);
          } else if constexpr (std::is_same_v<T, CreateArrayStmt>) {
            collect_calls_expr(*n.length, out);
          } else if constexpr (std::is_same_v<T, IfStmt>) {
            for (const auto& br : n.branches) {
              collect_calls_expr(*br.condition, out);
              collect_calls_block(*br.body, out);
            }
            if (n.elseBody) collect_calls_block(**n.elseBody, out);
          } else if constexpr (std::is_same_v<T, ForStmt>) {
            collect_calls_expr(*n.from, out);
            collect_calls_expr(*n.to, out);
            collect_calls_block(*n.body, out);
          } else if constexpr (std::is_same_v<T, CallStmt>) {
            out.push_back(&n.call);
            for (const auto& a : n.call.args) collect_calls_expr(*a, out);
          }
        },
        s.node);
  }
}

void collect_calls_expr(const Expr& e, std::vector<const CallExpr*>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, IndexExpr>) {
          collect_calls_expr(*n.index, out);
        } else if constexpr (std::is_same_v<T, CallExpr>) {
          out.push_back(&n);
          for (const auto& a : n.args) collect_calls_expr(*a, out);
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          collect_calls_expr(*n.operand, out);
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          collect_calls_expr(*n.lhs, out);
          collect_calls_expr(*n.rhs, out);
        }
      },
      e.node);
}

}  // namespace

std::vector<std::string> validate_library(const Library& lib) {
  std::vector<std::string> v;
  if (lib.interfaces().empty()) v.push_back("interface library is empty");
  if (lib.components().empty()) v.push_back("component library is empty");

  std::set<std::string> ifaceNames;
  for (const auto& iface : lib.interfaces()) {
    if (!ifaceNames.insert(iface.name).second) {
      v.push_back("interface '" + iface.name + "' is declared more than once");
    }
    if (iface.prototypes.empty()) {
      v.push_back("interface '" + iface.name + "' declares no function prototypes");
    }
    std::set<std::string> protos;
    for (const auto& p : iface.prototypes) {
      if (!protos.insert(p.name).second) {
        v.push_back("interface '" + iface.name + "' declares '" + p.name + "' twice");
      }
    }
  }

  std::set<std::string> compNames;
  for (const auto& c : lib.components()) {
    const std::string who = "component '" + c.name + "'";
    if (!compNames.insert(c.name).second) v.push_back(who + " is declared more than once");

    std::set<std::string> fnames;
    for (const auto& f : c.functions) {
      if (!fnames.insert(f.prototype.name).second) {
        v.push_back(who + " defines '" + f.prototype.name + "' twice");
      }
    }

    std::set<std::string> seenProvides;
    for (const auto& p : c.provides) {
      if (!seenProvides.insert(p).second) v.push_back(who + " provides '" + p + "' twice");
      const Interface* iface = lib.find_interface(p);
      if (!iface) {
        v.push_back(who + " provides undeclared interface '" + p + "'");
        continue;
      }
      for (const auto& proto : iface->prototypes) {
        const Function* f = c.find(proto.name);
        if (!f) {
          v.push_back(who + " does not implement '" + proto.name + "' of interface '" + p + "'");
        } else if (!f->prototype.same_signature(proto)) {
          v.push_back(who + " implements '" + proto.name + "' with a signature differing from "
                      "interface '" + p + "'");
        }
      }
    }
    if (c.provides.empty() && !c.find("main")) {
      v.push_back(who + " provides no interface and defines no main function");
    }

    std::set<std::string> seenRequires;
    std::map<std::string, std::string> requiredFunctions;
    for (const auto& r : c.requires_) {
      if (!seenRequires.insert(r).second) v.push_back(who + " requires '" + r + "' twice");
      const Interface* iface = lib.find_interface(r);
      if (!iface) {
        v.push_back(who + " requires undeclared interface '" + r + "'");
        continue;
      }
      for (const auto& proto : iface->prototypes) {
        auto [it, fresh] = requiredFunctions.emplace(proto.name, r);
        if (!fresh && it->second != r) {
          v.push_back(who + " requires function '" + proto.name + "' from both '" + it->second +
                      "' and '" + r + "'");
        }
      }
    }

    for (const auto& f : c.functions) {
      std::vector<const CallExpr*> calls;
      collect_calls_block(f.body, calls);
      for (const CallExpr* call : calls) {
        std::size_t arity = 0;
        if (const Function* local = c.find(call->callee)) {
          arity = local->prototype.params.size();
        } else if (auto it = requiredFunctions.find(call->callee); it != requiredFunctions.end()) {
          arity = lib.find_interface(it->second)->find(call->callee)->params.size();
        } else {
          v.push_back(who + " calls unknown function '" + call->callee + "' in '" +
                      f.prototype.name + "'");
          continue;
        }
        if (arity != call->args.size()) {
          v.push_back(who + " calls '" + call->callee + "' with " +
                      std::to_string(call->args.size()) + " arguments, expected " +
                      std::to_string(arity));
        }
      }
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Wiring trees

SystemInstance::SystemInstance(std::string component, std::optional<std::string> selectedInterface,
                               std::vector<Wiring> children)
    : component_(std::move(component)),
      selected_(std::move(selectedInterface)),
      children_(std::move(children)) {}

const SystemInstance* SystemInstance::child(std::string_view iface) const {
  for (const auto& w : children_) {
    if (w.interface == iface) return &w.child;
  }
  return nullptr;
}

std::size_t SystemInstance::node_count() const {
  std::size_t n = 1;
  for (const auto& w : children_) n += w.child.node_count();
  return n;
}

std::size_t SystemInstance::depth() const {
  std::size_t d = 0;
  for (const auto& w : children_) d = std::max(d, w.child.depth());
  return d + 1;
}

bool SystemInstance::operator==(const SystemInstance& other) const {
  return component_ == other.component_ && selected_ == other.selected_ &&
         children_ == other.children_;
}

namespace {

void append_id(const SystemInstance& s, std::string& out) {
  out += s.component();
  out += '(';
  bool first = true;
  for (const auto& w : s.children()) {
    if (!first) out += ',';
    first = false;
    out += w.interface;
    out += "->";
    append_id(w.child, out);
  }
  out += ')';
}

bool is_ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

class IdParser {
 public:
  explicit IdParser(std::string_view text) : text_(text) {}

  SystemInstance parse() {
    SystemInstance s = node(std::nullopt);
    if (pos_ != text_.size()) fail("trailing characters");
    return s;
  }

 private:
  SystemInstance node(std::optional<std::string> selected) {
    std::string name = ident();
    expect('(');
    std::vector<SystemInstance::Wiring> children;
    if (peek() != ')') {
      while (true) {
        std::string iface = ident();
        expect('-');
        expect('>');
        SystemInstance child = node(iface);
        children.push_back({iface, std::move(child)});
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        break;
      }
    }
    expect(')');
    return SystemInstance(std::move(name), std::move(selected), std::move(children));
  }

  std::string ident() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    if (start == pos_) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw PreconditionError("malformed system id at offset " + std::to_string(pos_) + ": " +
                            what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void validate_node(const SystemInstance& s, const Library& lib, std::vector<std::string>& path,
                   std::vector<std::string>& out) {
  const Component* c = lib.find_component(s.component());
  if (!c) {
    out.push_back("unknown component '" + s.component() + "'");
    return;
  }
  if (std::find(path.begin(), path.end(), c->name) != path.end()) {
    out.push_back("component '" + c->name + "' occurs twice on one root-to-leaf path");
  }
  if (s.selected_interface() && !c->provides_interface(*s.selected_interface())) {
    out.push_back("component '" + c->name + "' does not provide '" + *s.selected_interface() +
                  "'");
  }
  const auto& kids = s.children();
  bool keysMatch = kids.size() == c->requires_.size();
  for (std::size_t i = 0; keysMatch && i < kids.size(); ++i) {
    keysMatch = kids[i].interface == c->requires_[i] &&
                kids[i].child.selected_interface() == c->requires_[i];
  }
  if (!keysMatch) {
    out.push_back("children of '" + c->name + "' do not match its required interfaces");
  }
  path.push_back(c->name);
  for (const auto& w : kids) validate_node(w.child, lib, path, out);
  path.pop_back();
}

void collect_interfaces(const SystemInstance& s, const Library& lib, bool root,
                        std::set<std::string>& out) {
  if (s.selected_interface()) out.insert(*s.selected_interface());
  if (root) {
    if (const Component* c = lib.find_component(s.component())) {
      out.insert(c->provides.begin(), c->provides.end());
    }
  }
  for (const auto& w : s.children()) {
    out.insert(w.interface);
    collect_interfaces(w.child, lib, false, out);
  }
}

std::int64_t component_code(const SystemInstance& s, const Library& lib) {
  std::int64_t total = 0;
  if (const Component* c = lib.find_component(s.component())) {
    total += lib.instance_code_size(*c, s.selected_interface());
  }
  for (const auto& w : s.children()) total += component_code(w.child, lib);
  return total;
}

void assignment_distance(const SystemInstance& s, const AssignmentReference& ref,
                         std::int64_t& count) {
  if (s.selected_interface()) {
    for (const auto& [iface, expected] : ref.expected) {
      if (iface != *s.selected_interface()) continue;
      bool value = !s.children().empty() && s.children().front().child.component() ==
                                                 ref.trueComponent;
      if (value != expected) ++count;
    }
  }
  for (const auto& w : s.children()) assignment_distance(w.child, ref, count);
}

}  // namespace

std::string canonical_id(const SystemInstance& s) {
  std::string out;
  append_id(s, out);
  return out;
}

SystemInstance parse_system_id(std::string_view id) { return IdParser(id).parse(); }

std::vector<std::string> validate_system(const SystemInstance& s, const Library& lib,
                                         std::string_view base) {
  std::vector<std::string> out;
  if (s.component() != base) {
    out.push_back("root is '" + s.component() + "', expected base '" + std::string(base) + "'");
  }
  if (s.selected_interface()) out.push_back("root must not implement a selected interface");
  std::vector<std::string> path;
  validate_node(s, lib, path, out);
  return out;
}

std::string to_string(RewardKind kind) {
  switch (kind) {
    case RewardKind::NumComp: return "numcomp";
    case RewardKind::CodeB: return "codeb";
    case RewardKind::AssignmentDistance: return "distance";
  }
  return "?";
}

RewardKind parse_reward_kind(std::string_view text) {
  if (text == "numcomp") return RewardKind::NumComp;
  if (text == "codeb") return RewardKind::CodeB;
  if (text == "distance") return RewardKind::AssignmentDistance;
  throw PreconditionError("unknown reward kind '" + std::string(text) +
                          "' (expected numcomp or codeb)");
}

std::int64_t reward(const SystemInstance& s, const Reward& rew, const Library& lib) {
  switch (rew.kind) {
    case RewardKind::NumComp:
      return static_cast<std::int64_t>(s.node_count());
    case RewardKind::CodeB: {
      std::set<std::string> ifaces;
      collect_interfaces(s, lib, true, ifaces);
      std::int64_t total = component_code(s, lib);
      for (const auto& name : ifaces) {
        if (const Interface* i = lib.find_interface(name)) total += i->codeSize;
      }
      return total;
    }
    case RewardKind::AssignmentDistance: {
      std::int64_t count = 0;
      assignment_distance(s, rew.reference, count);
      return count;
    }
  }
  return 0;
}

}  // namespace esc
