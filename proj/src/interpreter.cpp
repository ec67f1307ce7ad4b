#include "esc/interpreter.hpp"

#include <cstdlib>
#include <unordered_map>

#include "esc/dsl.hpp"

namespace esc {

namespace {

struct CallTarget {
  const Function* local = nullptr;  // set when the callee is defined in the same component
  int slot = -1;                    // otherwise the index of the required interface
};

struct ComponentTable {
  std::unordered_map<std::string, const Function*> functions;
  std::unordered_map<const CallExpr*, CallTarget> calls;
};

struct Array {
  ValueType elem;
  std::vector<std::int64_t> data;
  std::vector<char> init;
};

struct InputValue {
  bool operator==(const InputValue&) const = default;
};

using Value = std::variant<std::monostate, std::int64_t, bool, std::shared_ptr<Array>, InputValue>;

struct Frame {
  std::vector<std::pair<std::string_view, Value>> vars;

  Value* find(std::string_view name) {
    for (auto& [n, v] : vars) {
      if (n == name) return &v;
    }
    return nullptr;
  }
  void set(std::string_view name, Value v) {
    if (Value* slot = find(name)) {
      *slot = std::move(v);
    } else {
      vars.emplace_back(name, std::move(v));
    }
  }
};

void index_calls_expr(const Expr& e, const Component& c, const Library& lib, ComponentTable& t);

void index_call(const CallExpr& call, const Component& c, const Library& lib,
                ComponentTable& t) {
  CallTarget target;
  if (const Function* f = c.find(call.callee)) {
    target.local = f;
  } else {
    for (std::size_t i = 0; i < c.requires_.size(); ++i) {
      const Interface* iface = lib.find_interface(c.requires_[i]);
      if (iface && iface->find(call.callee)) {
        target.slot = static_cast<int>(i);
        break;
      }
    }
  }
  t.calls.emplace(&call, target);
  for (const auto& a : call.args) index_calls_expr(*a, c, lib, t);
}

void index_calls_block(const Block& b, const Component& c, const Library& lib,
                       ComponentTable& t) {
  for (const auto& s : b) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, OutputStmt>) {
            index_calls_expr(*n.value, c, lib, t);
          } else if constexpr (std::is_same_v<T, ReturnStmt>) {
            if (n.value) index_calls_expr(**n.value, c, lib, t);
          } else if constexpr (std::is_same_v<T, AssignStmt>) {
            if (n.index) index_calls_expr(**n.index, c, lib, t);
            index_calls_expr(*n.value, c, lib, t);
          } else if constexpr (std::is_same_v<T, CreateArrayStmt>) {
            index_calls_expr(*n.length, c, lib, t);
          } else if constexpr (std::is_same_v<T, IfStmt>) {
            for (const auto& br : n.branches) {
              index_calls_expr(*br.condition, c, lib, t);
              index_calls_block(*br.body, c, lib, t);
            }
            if (n.elseBody) index_calls_block(**n.elseBody, c, lib, t);
          } else if constexpr (std::is_same_v<T, ForStmt>) {
            index_calls_expr(*n.from, c, lib, t);
            index_calls_expr(*n.to, c, lib, t);
            index_calls_block(*n.body, c, lib, t);
          } else if constexpr (std::is_same_v<T, CallStmt>) {
            index_call(n.call, c, lib, t);
          }
        },
        s.node);
  }
}

void index_calls_expr(const Expr& e, const Component& c, const Library& lib, ComponentTable& t) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, IndexExpr>) {
          index_calls_expr(*n.index, c, lib, t);
        } else if constexpr (std::is_same_v<T, CallExpr>) {
          index_call(n, c, lib, t);
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          index_calls_expr(*n.operand, c, lib, t);
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          index_calls_expr(*n.lhs, c, lib, t);
          index_calls_expr(*n.rhs, c, lib, t);
        }
      },
      e.node);
}

constexpr int kMaxCallDepth = 512;

}  // namespace

struct ProgramIndex::Impl {
  const Library* lib;
  std::unordered_map<std::string, ComponentTable> tables;
};

ProgramIndex::ProgramIndex(const Library& lib) : impl_(std::make_unique<Impl>()) {
  impl_->lib = &lib;
  for (const auto& c : lib.components()) {
    ComponentTable& t = impl_->tables[c.name];
    for (const auto& f : c.functions) {
      t.functions.emplace(f.prototype.name, &f);
      index_calls_block(f.body, c, lib, t);
    }
  }
}

ProgramIndex::~ProgramIndex() = default;

const Library& ProgramIndex::library() const { return *impl_->lib; }

struct WiredSystem::Node {
  const Component* component = nullptr;
  const ComponentTable* table = nullptr;
  std::vector<int> children;  // node index per required interface, -1 when unwired
};

namespace {

int flatten(const SystemInstance& s, const ProgramIndex::Impl& idx,
            std::vector<WiredSystem::Node>& out) {
  int me = static_cast<int>(out.size());
  out.emplace_back();
  const Component* c = idx.lib->find_component(s.component());
  if (!c) throw PreconditionError("unknown component '" + s.component() + "' in system");
  out[me].component = c;
  out[me].table = &idx.tables.at(c->name);
  std::vector<int> kids(c->requires_.size(), -1);
  for (const auto& w : s.children()) {
    for (std::size_t i = 0; i < c->requires_.size(); ++i) {
      if (c->requires_[i] == w.interface) {
        int child = flatten(w.child, idx, out);
        kids[i] = child;
      }
    }
  }
  out[me].children = std::move(kids);
  return me;
}

enum class Flow { Normal, Return, Halt };

class Executor {
 public:
  Executor(const std::vector<WiredSystem::Node>& nodes, const TruthVector& input,
           std::uint64_t budget)
      : nodes_(nodes), input_(input), budget_(budget) {}

  RunOutcome run() {
    const auto& root = nodes_.front();
    auto it = root.table->functions.find("main");
    if (it == root.table->functions.end()) {
      return finish_fault("root component '" + root.component->name + "' has no main function");
    }
    const Function& main = *it->second;
    std::vector<Value> args;
    for (const auto& p : main.prototype.params) {
      args.push_back(p.type == ValueType::Input ? Value{InputValue{}} : Value{});
    }
    Value ret;
    if (!call(main, 0, std::move(args), ret)) return finish();
    RunOutcome o;
    o.kind = RunOutcome::Kind::NoOutput;
    o.steps = steps_;
    return o;
  }

 private:
  RunOutcome finish() {
    RunOutcome o;
    o.steps = steps_;
    if (budgetExceeded_) {
      o.kind = RunOutcome::Kind::BudgetExceeded;
    } else if (fault_) {
      o.kind = RunOutcome::Kind::RuntimeFault;
      o.fault = *fault_;
    } else {
      o.kind = RunOutcome::Kind::Output;
      o.value = output_;
    }
    return o;
  }

  RunOutcome finish_fault(std::string msg) {
    fault_ = std::move(msg);
    return finish();
  }

  bool tick() {
    if (++steps_ > budget_) {
      budgetExceeded_ = true;
      return false;
    }
    return true;
  }

  bool fail(std::string msg) {
    if (!fault_) fault_ = std::move(msg);
    return false;
  }

  // Returns false when the run halted (output, fault or budget).
  bool call(const Function& f, int node, std::vector<Value> args, Value& ret) {
    if (++depth_ > kMaxCallDepth) return fail("call depth limit exceeded in '" + f.prototype.name + "'");
    Frame frame;
    for (std::size_t i = 0; i < f.prototype.params.size() && i < args.size(); ++i) {
      frame.vars.emplace_back(f.prototype.params[i].name, std::move(args[i]));
    }
    Flow flow = exec_block(f.body, frame, node, ret);
    --depth_;
    return flow != Flow::Halt;
  }

  Flow exec_block(const Block& b, Frame& frame, int node, Value& ret) {
    for (const auto& s : b) {
      Flow flow = exec(s, frame, node, ret);
      if (flow != Flow::Normal) return flow;
    }
    return Flow::Normal;
  }

  Flow exec(const Stmt& s, Frame& frame, int node, Value& ret) {
    if (!tick()) return Flow::Halt;
    return std::visit([&](const auto& n) { return exec_node(n, frame, node, ret); }, s.node);
  }

  Flow exec_node(const OutputStmt& s, Frame& frame, int node, Value&) {
    Value v;
    if (!eval(*s.value, frame, node, v)) return Flow::Halt;
    auto* i = std::get_if<std::int64_t>(&v);
    if (!i) {
      fail("output of a non-integer value");
      return Flow::Halt;
    }
    output_ = *i;
    return Flow::Halt;
  }

  Flow exec_node(const ReturnStmt& s, Frame& frame, int node, Value& ret) {
    ret = Value{};
    if (s.value && !eval(**s.value, frame, node, ret)) return Flow::Halt;
    return Flow::Return;
  }

  Flow exec_node(const AssignStmt& s, Frame& frame, int node, Value&) {
    Value v;
    if (!eval(*s.value, frame, node, v)) return Flow::Halt;
    if (std::holds_alternative<std::monostate>(v)) {
      fail("assignment of a missing value to '" + s.target + "'");
      return Flow::Halt;
    }
    if (!s.index) {
      frame.set(s.target, std::move(v));
      return Flow::Normal;
    }
    std::int64_t idx = 0;
    Array* arr = nullptr;
    if (!element(s.target, **s.index, frame, node, arr, idx)) return Flow::Halt;
    if (arr->elem == ValueType::Int) {
      auto* i = std::get_if<std::int64_t>(&v);
      if (!i) return fail("storing a non-integer into int array '" + s.target + "'"), Flow::Halt;
      arr->data[idx] = *i;
    } else {
      auto* b = std::get_if<bool>(&v);
      if (!b) return fail("storing a non-Boolean into bool array '" + s.target + "'"), Flow::Halt;
      arr->data[idx] = *b;
    }
    arr->init[idx] = 1;
    return Flow::Normal;
  }

  Flow exec_node(const CreateArrayStmt& s, Frame& frame, int node, Value&) {
    Value len;
    if (!eval(*s.length, frame, node, len)) return Flow::Halt;
    auto* n = std::get_if<std::int64_t>(&len);
    if (!n || *n < 0 || *n > 1'000'000) {
      fail("invalid length for array '" + s.name + "'");
      return Flow::Halt;
    }
    auto arr = std::make_shared<Array>();
    arr->elem = s.elementType;
    arr->data.assign(static_cast<std::size_t>(*n), 0);
    arr->init.assign(static_cast<std::size_t>(*n), 0);
    frame.set(s.name, std::move(arr));
    return Flow::Normal;
  }

  Flow exec_node(const IfStmt& s, Frame& frame, int node, Value& ret) {
    for (const auto& br : s.branches) {
      bool cond = false;
      if (!condition(*br.condition, frame, node, cond)) return Flow::Halt;
      if (cond) return exec_block(*br.body, frame, node, ret);
    }
    if (s.elseBody) return exec_block(**s.elseBody, frame, node, ret);
    return Flow::Normal;
  }

  Flow exec_node(const ForStmt& s, Frame& frame, int node, Value& ret) {
    Value from, to;
    if (!eval(*s.from, frame, node, from) || !eval(*s.to, frame, node, to)) return Flow::Halt;
    auto* a = std::get_if<std::int64_t>(&from);
    auto* b = std::get_if<std::int64_t>(&to);
    if (!a || !b) {
      fail("loop bounds must be integers");
      return Flow::Halt;
    }
    for (std::int64_t i = *a; i <= *b; ++i) {
      frame.set(s.var, i);
      Flow flow = exec_block(*s.body, frame, node, ret);
      if (flow != Flow::Normal) return flow;
      if (!tick()) return Flow::Halt;
    }
    return Flow::Normal;
  }

  Flow exec_node(const CallStmt& s, Frame& frame, int node, Value&) {
    Value ignored;
    return invoke(s.call, frame, node, ignored) ? Flow::Normal : Flow::Halt;
  }

  bool condition(const Expr& e, Frame& frame, int node, bool& out) {
    Value v;
    if (!eval(e, frame, node, v)) return false;
    auto* b = std::get_if<bool>(&v);
    if (!b) return fail("condition is not a Boolean");
    out = *b;
    return true;
  }

  bool element(const std::string& name, const Expr& indexExpr, Frame& frame, int node,
               Array*& arr, std::int64_t& idx) {
    Value* v = frame.find(name);
    if (!v) return fail("read of unassigned variable '" + name + "'");
    auto* a = std::get_if<std::shared_ptr<Array>>(v);
    if (!a) return fail("'" + name + "' is not an array");
    arr = a->get();
    Value iv;
    if (!eval(indexExpr, frame, node, iv)) return false;
    auto* i = std::get_if<std::int64_t>(&iv);
    if (!i) return fail("array index is not an integer");
    if (*i < 1 || *i > static_cast<std::int64_t>(arr->data.size())) {
      return fail("index " + std::to_string(*i) + " out of bounds for array '" + name + "'");
    }
    idx = *i - 1;
    return true;
  }

  bool invoke(const CallExpr& c, Frame& frame, int node, Value& out) {
    const auto& n = nodes_[node];
    auto it = n.table->calls.find(&c);
    const Function* target = nullptr;
    int targetNode = node;
    if (it != n.table->calls.end() && it->second.local) {
      target = it->second.local;
    } else if (it != n.table->calls.end() && it->second.slot >= 0) {
      targetNode = n.children[it->second.slot];
      if (targetNode < 0) return fail("required interface of '" + n.component->name + "' is not wired");
      const auto& fns = nodes_[targetNode].table->functions;
      auto f = fns.find(c.callee);
      if (f != fns.end()) target = f->second;
    }
    if (!target) return fail("call to missing function '" + c.callee + "'");
    if (target->prototype.params.size() != c.args.size()) {
      return fail("call to '" + c.callee + "' with wrong number of arguments");
    }
    std::vector<Value> args;
    args.reserve(c.args.size());
    for (const auto& a : c.args) {
      Value v;
      if (!eval(*a, frame, node, v)) return false;
      args.push_back(std::move(v));
    }
    out = Value{};
    return call(*target, targetNode, std::move(args), out);
  }

  bool eval(const Expr& e, Frame& frame, int node, Value& out) {
    if (!tick()) return false;
    return std::visit([&](const auto& n) { return eval_node(n, frame, node, out); }, e.node);
  }

  bool eval_node(const IntLit& n, Frame&, int, Value& out) {
    out = n.value;
    return true;
  }

  bool eval_node(const BoolLit& n, Frame&, int, Value& out) {
    out = n.value;
    return true;
  }

  bool eval_node(const VarRef& n, Frame& frame, int, Value& out) {
    Value* v = frame.find(n.name);
    if (!v) return fail("read of unassigned variable '" + n.name + "'");
    out = *v;
    return true;
  }

  bool eval_node(const IndexExpr& n, Frame& frame, int node, Value& out) {
    Array* arr = nullptr;
    std::int64_t idx = 0;
    if (!element(n.array, *n.index, frame, node, arr, idx)) return false;
    if (!arr->init[idx]) return fail("read of uninitialized element of '" + n.array + "'");
    if (arr->elem == ValueType::Int) {
      out = arr->data[idx];
    } else {
      out = arr->data[idx] != 0;
    }
    return true;
  }

  bool eval_node(const InputTest& n, Frame& frame, int, Value& out) {
    std::int64_t k = 0;
    if (const int* fixed = std::get_if<int>(&n.position)) {
      k = *fixed;
    } else {
      const auto& name = std::get<std::string>(n.position);
      Value* v = frame.find(name);
      auto* i = v ? std::get_if<std::int64_t>(v) : nullptr;
      if (!i) return fail("input position variable '" + name + "' is not an integer");
      k = *i;
    }
    if (k < 1 || k > static_cast<std::int64_t>(input_.size())) {
      return fail("input variable x" + std::to_string(k) + " does not exist");
    }
    out = static_cast<bool>(input_[k - 1]);
    return true;
  }

  bool eval_node(const CallExpr& n, Frame& frame, int node, Value& out) {
    if (!invoke(n, frame, node, out)) return false;
    if (std::holds_alternative<std::monostate>(out)) {
      return fail("function '" + n.callee + "' returned no value");
    }
    return true;
  }

  bool eval_node(const UnaryExpr& n, Frame& frame, int node, Value& out) {
    Value v;
    if (!eval(*n.operand, frame, node, v)) return false;
    if (n.op == UnaryOp::Not) {
      auto* b = std::get_if<bool>(&v);
      if (!b) return fail("'not' applied to a non-Boolean");
      out = !*b;
    } else {
      auto* i = std::get_if<std::int64_t>(&v);
      if (!i) return fail("negation of a non-integer");
      std::int64_t r;
      if (__builtin_sub_overflow(std::int64_t{0}, *i, &r)) return fail("integer overflow");
      out = r;
    }
    return true;
  }

  bool eval_node(const BinaryExpr& n, Frame& frame, int node, Value& out) {
    Value a;
    if (!eval(*n.lhs, frame, node, a)) return false;
    if (n.op == BinaryOp::And || n.op == BinaryOp::Or) {
      auto* x = std::get_if<bool>(&a);
      if (!x) return fail("logical operator applied to a non-Boolean");
      if ((n.op == BinaryOp::And && !*x) || (n.op == BinaryOp::Or && *x)) {
        out = *x;
        return true;
      }
      Value b;
      if (!eval(*n.rhs, frame, node, b)) return false;
      auto* y = std::get_if<bool>(&b);
      if (!y) return fail("logical operator applied to a non-Boolean");
      out = *y;
      return true;
    }
    Value b;
    if (!eval(*n.rhs, frame, node, b)) return false;
    if (n.op == BinaryOp::Eq) {
      if (a.index() != b.index() ||
          !(std::holds_alternative<std::int64_t>(a) || std::holds_alternative<bool>(a))) {
        return fail("'==' needs two integers or two Booleans");
      }
      out = a == b;
      return true;
    }
    auto* x = std::get_if<std::int64_t>(&a);
    auto* y = std::get_if<std::int64_t>(&b);
    if (!x || !y) return fail("arithmetic or ordering on a non-integer");
    std::int64_t r = 0;
    switch (n.op) {
      case BinaryOp::Less: out = *x < *y; return true;
      case BinaryOp::Greater: out = *x > *y; return true;
      case BinaryOp::Add:
        if (__builtin_add_overflow(*x, *y, &r)) return fail("integer overflow");
        out = r;
        return true;
      case BinaryOp::Sub:
        if (__builtin_sub_overflow(*x, *y, &r)) return fail("integer overflow");
        out = r;
        return true;
      default: break;
    }
    return fail("unsupported operator");
  }

  bool eval_node(const CnfSatisfied& n, Frame& frame, int, Value& out) {
    Value* v = frame.find(n.array);
    auto* a = v ? std::get_if<std::shared_ptr<Array>>(v) : nullptr;
    if (!a || (*a)->elem != ValueType::Bool) {
      return fail("cnf_satisfied needs a bool array, got '" + n.array + "'");
    }
    const Array& arr = **a;
    bool all = true;
    for (const auto& clause : n.formula) {
      bool sat = false;
      for (int lit : clause) {
        std::size_t var = static_cast<std::size_t>(lit < 0 ? -lit : lit);
        if (var > arr.data.size()) return fail("cnf variable " + std::to_string(var) + " outside the array");
        if (!arr.init[var - 1]) return fail("read of uninitialized element of '" + n.array + "'");
        bool value = arr.data[var - 1] != 0;
        if (value == (lit > 0)) sat = true;
      }
      if (!sat) all = false;
    }
    out = all;
    return true;
  }

  const std::vector<WiredSystem::Node>& nodes_;
  const TruthVector& input_;
  std::uint64_t budget_;
  std::uint64_t steps_ = 0;
  int depth_ = 0;
  bool budgetExceeded_ = false;
  std::optional<std::string> fault_;
  std::int64_t output_ = 0;
};

}  // namespace

WiredSystem::WiredSystem(const SystemInstance& s, const ProgramIndex& index) : index_(&index) {
  flatten(s, index.impl(), nodes_);
}

WiredSystem::~WiredSystem() = default;
WiredSystem::WiredSystem(WiredSystem&&) noexcept = default;

RunOutcome WiredSystem::run(const TruthVector& input, std::uint64_t budget) const {
  return Executor(nodes_, input, budget).run();
}

Verdict WiredSystem::verify(const RequirementSet& reqs, std::uint64_t budget) const {
  Verdict v;
  for (std::size_t i = 0; i < reqs.rows().size(); ++i) {
    const Requirement& r = reqs.rows()[i];
    RunOutcome o = run(r.input, budget);
    v.maxSteps = std::max(v.maxSteps, o.steps);
    bool ok = o.kind == RunOutcome::Kind::Output && o.value == r.output &&
              reqs.allows_output(o.value);
    if (!ok) {
      v.working = false;
      v.firstFailure = RequirementFailure{i, r.output, std::move(o)};
      return v;
    }
  }
  return v;
}

RunOutcome evaluate(const SystemInstance& s, const Library& lib, const TruthVector& input,
                    std::uint64_t budget) {
  ProgramIndex idx(lib);
  return WiredSystem(s, idx).run(input, budget);
}

Verdict verify(const SystemInstance& s, const Library& lib, const RequirementSet& reqs,
               std::uint64_t budget) {
  ProgramIndex idx(lib);
  return WiredSystem(s, idx).verify(reqs, budget);
}

std::string describe(const RunOutcome& o) {
  switch (o.kind) {
    case RunOutcome::Kind::Output: return "Output(" + std::to_string(o.value) + ")";
    case RunOutcome::Kind::NoOutput: return "NoOutput";
    case RunOutcome::Kind::BudgetExceeded: return "BudgetExceeded";
    case RunOutcome::Kind::RuntimeFault: return "RuntimeFault(" + o.fault + ")";
  }
  return "?";
}

std::uint64_t instance_size_bytes(const Library& lib, const RequirementSet& reqs) {
  return pretty_print(lib).size() + print_requirements(reqs).size();
}

std::uint64_t default_budget(const Library& lib, const RequirementSet& reqs,
                             std::uint64_t stepsPerByte) {
  if (const char* env = std::getenv("ESC_STEP_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return stepsPerByte * instance_size_bytes(lib, reqs);
}

}  // namespace esc
