#include <sstream>

#include "esc/dsl.hpp"

namespace esc {

namespace {

constexpr const char* kIndent = "    ";

int precedence(const Expr& e) {
  if (const auto* b = std::get_if<BinaryExpr>(&e.node)) {
    switch (b->op) {
      case BinaryOp::Or: return 1;
      case BinaryOp::And: return 2;
      case BinaryOp::Eq:
      case BinaryOp::Less:
      case BinaryOp::Greater: return 4;
      case BinaryOp::Add:
      case BinaryOp::Sub: return 5;
    }
  }
  if (const auto* u = std::get_if<UnaryExpr>(&e.node)) return u->op == UnaryOp::Not ? 3 : 6;
  if (const auto* lit = std::get_if<IntLit>(&e.node)) return lit->value < 0 ? 6 : 7;
  return 7;
}

const char* op_text(BinaryOp op) {
  switch (op) {
    case BinaryOp::Or: return "or";
    case BinaryOp::And: return "and";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Less: return "<";
    case BinaryOp::Greater: return ">";
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
  }
  return "?";
}

void print(const Expr& e, std::string& out);

void print_at_least(const Expr& e, int minPrec, std::string& out) {
  if (precedence(e) < minPrec) {
    out += '(';
    print(e, out);
    out += ')';
  } else {
    print(e, out);
  }
}

void print(const Expr& e, std::string& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, IntLit>) {
          out += std::to_string(n.value);
        } else if constexpr (std::is_same_v<T, BoolLit>) {
          out += n.value ? "True" : "False";
        } else if constexpr (std::is_same_v<T, VarRef>) {
          out += n.name;
        } else if constexpr (std::is_same_v<T, IndexExpr>) {
          out += n.array;
          out += '[';
          print(*n.index, out);
          out += ']';
        } else if constexpr (std::is_same_v<T, InputTest>) {
          out += "v_I(x";
          if (const int* k = std::get_if<int>(&n.position)) {
            out += std::to_string(*k);
          } else {
            out += '_';
            out += std::get<std::string>(n.position);
          }
          out += ')';
        } else if constexpr (std::is_same_v<T, CallExpr>) {
          out += n.callee;
          out += '(';
          for (std::size_t i = 0; i < n.args.size(); ++i) {
            if (i) out += ", ";
            print(*n.args[i], out);
          }
          out += ')';
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          if (n.op == UnaryOp::Not) {
            out += "not ";
            print_at_least(*n.operand, 3, out);
          } else {
            out += '-';
            // A negated literal must stay distinguishable from a negative literal.
            print_at_least(*n.operand, std::holds_alternative<IntLit>(n.operand->node) ? 8 : 6,
                           out);
          }
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          int p = precedence(e);
          bool comparison = p == 4;
          print_at_least(*n.lhs, comparison ? p + 1 : p, out);
          out += ' ';
          out += op_text(n.op);
          out += ' ';
          print_at_least(*n.rhs, p + 1, out);
        } else if constexpr (std::is_same_v<T, CnfSatisfied>) {
          out += "cnf_satisfied([";
          for (std::size_t i = 0; i < n.formula.size(); ++i) {
            if (i) out += ", ";
            out += '[';
            for (std::size_t j = 0; j < n.formula[i].size(); ++j) {
              if (j) out += ", ";
              out += std::to_string(n.formula[i][j]);
            }
            out += ']';
          }
          out += "], ";
          out += n.array;
          out += ')';
        }
      },
      e.node);
}

bool is_simple(const Stmt& s) {
  return !std::holds_alternative<IfStmt>(s.node) && !std::holds_alternative<ForStmt>(s.node);
}

std::string simple_text(const Stmt& s) {
  std::string out;
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, OutputStmt>) {
          out += "output ";
          print(*n.value, out);
        } else if constexpr (std::is_same_v<T, ReturnStmt>) {
          out += "return";
          if (n.value) {
            out += ' ';
            print(**n.value, out);
          }
        } else if constexpr (std::is_same_v<T, AssignStmt>) {
          out += n.target;
          if (n.index) {
            out += '[';
            print(**n.index, out);
            out += ']';
          }
          out += " = ";
          print(*n.value, out);
        } else if constexpr (std::is_same_v<T, CreateArrayStmt>) {
          out += "create ";
          out += n.elementType == ValueType::Bool ? "Boolean" : "int";
          out += " array " + n.name + " of length ";
          print(*n.length, out);
        } else if constexpr (std::is_same_v<T, CallStmt>) {
          print(Expr{n.call}, out);
        }
      },
      s.node);
  return out;
}

void print_block(const Block& b, int depth, std::string& out);

// Emits `head` followed by the body: inline when it is a single simple statement.
void print_clause(const std::string& head, const Block& body, int depth, std::string& out) {
  std::string pad;
  for (int i = 0; i < depth; ++i) pad += kIndent;
  out += pad + head;
  if (body.size() == 1 && is_simple(body.front())) {
    out += ' ' + simple_text(body.front()) + '\n';
  } else {
    out += '\n';
    print_block(body, depth + 1, out);
  }
}

void print_block(const Block& b, int depth, std::string& out) {
  std::string pad;
  for (int i = 0; i < depth; ++i) pad += kIndent;
  for (const auto& s : b) {
    if (const auto* f = std::get_if<IfStmt>(&s.node)) {
      for (std::size_t i = 0; i < f->branches.size(); ++i) {
        std::string head = i == 0 ? "if " : "elsif ";
        print(*f->branches[i].condition, head);
        print_clause(head + " then", *f->branches[i].body, depth, out);
      }
      if (f->elseBody) print_clause("else", **f->elseBody, depth, out);
    } else if (const auto* loop = std::get_if<ForStmt>(&s.node)) {
      std::string head = "for " + loop->var + " = ";
      print(*loop->from, head);
      head += " to ";
      print(*loop->to, head);
      print_clause(head + " do", *loop->body, depth, out);
    } else {
      out += pad + simple_text(s) + '\n';
    }
  }
}

std::string signature(const FunctionPrototype& p) {
  std::string out = type_name(p.returnType) + ' ' + p.name + '(';
  for (std::size_t i = 0; i < p.params.size(); ++i) {
    if (i) out += ", ";
    out += type_name(p.params[i].type) + ' ' + p.params[i].name;
  }
  return out + ')';
}

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ", ";
    out += names[i];
  }
  return out;
}

}  // namespace

std::string type_name(ValueType t) {
  switch (t) {
    case ValueType::Void: return "void";
    case ValueType::Bool: return "Boolean";
    case ValueType::Int: return "int";
    case ValueType::IntArray: return "int[]";
    case ValueType::BoolArray: return "bool[]";
    case ValueType::Input: return "Input";
  }
  return "?";
}

std::string print_expr(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

std::string print_interface(const Interface& iface) {
  std::string out = "interface " + iface.name + " {\n";
  for (const auto& p : iface.prototypes) out += kIndent + signature(p) + '\n';
  for (const auto& f : iface.transferFields) {
    out += std::string(kIndent) + "transfer " + type_name(f.type) + ' ' + f.name + '\n';
  }
  return out + "}\n";
}

std::string print_component(const Component& c) {
  std::string out = "component " + c.name + '\n';
  std::vector<std::string> header;
  if (!c.provides.empty()) header.push_back("provides " + join(c.provides));
  if (!c.requires_.empty()) header.push_back("requires " + join(c.requires_));
  header.push_back("{");
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ' ';
    out += header[i];
  }
  out += '\n';
  if (c.functions.empty()) return out + "}\n";
  for (std::size_t i = 0; i < c.functions.size(); ++i) {
    const Function& f = c.functions[i];
    out += kIndent + signature(f.prototype) + " {\n";
    print_block(f.body, 2, out);
    out += i + 1 == c.functions.size() ? "    }}\n" : "    }\n";
  }
  return out;
}

std::string pretty_print(const Library& lib) {
  std::string out;
  for (const auto& i : lib.interfaces()) {
    if (!out.empty()) out += '\n';
    out += print_interface(i);
  }
  for (const auto& c : lib.components()) {
    if (!out.empty()) out += '\n';
    out += print_component(c);
  }
  return out;
}

std::string print_requirements(const RequirementSet& reqs) {
  std::string out = "vars:";
  for (const auto& n : reqs.vars().names()) out += ' ' + n;
  out += "\noutputs:";
  for (auto o : reqs.outputs()) out += ' ' + std::to_string(o);
  out += '\n';
  for (const auto& r : reqs.rows()) {
    for (bool b : r.input) out += b ? "T " : "F ";
    out += "-> " + std::to_string(r.output) + '\n';
  }
  return out;
}

int count_lines(std::string_view text) {
  int n = 0;
  for (char c : text) n += c == '\n';
  return n;
}

std::string format_diagnostic(const ParseDiagnostic& d) {
  std::ostringstream os;
  os << d.span.file << ':' << d.span.startLine << ':' << d.span.startCol << ": "
     << (d.severity == Severity::Error ? "error" : "warning") << ": " << d.message;
  return os.str();
}

}  // namespace esc
