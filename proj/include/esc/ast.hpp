#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace esc {

/// Shared, immutable heap cell with deep (value) equality.
template <class T>
class Box {
 public:
  Box(T value) : ptr_(std::make_shared<const T>(std::move(value))) {}

  const T& operator*() const { return *ptr_; }
  const T* operator->() const { return ptr_.get(); }

  friend bool operator==(const Box& a, const Box& b) {
    return a.ptr_ == b.ptr_ || *a.ptr_ == *b.ptr_;
  }

 private:
  std::shared_ptr<const T> ptr_;
};

enum class ValueType { Void, Bool, Int, IntArray, BoolArray, Input };

enum class UnaryOp { Not, Negate };
enum class BinaryOp { Or, And, Eq, Less, Greater, Add, Sub };

/// A CNF formula embedded as a constant: clauses of signed 1-based variable indices.
using CnfClauses = std::vector<std::vector<int>>;

struct Expr;

struct IntLit {
  std::int64_t value;
  bool operator==(const IntLit&) const = default;
};

struct BoolLit {
  bool value;
  bool operator==(const BoolLit&) const = default;
};

struct VarRef {
  std::string name;
  bool operator==(const VarRef&) const = default;
};

struct IndexExpr {
  std::string array;
  Box<Expr> index;
  bool operator==(const IndexExpr&) const = default;
};

/// `v_I(x3)` tests a fixed input position; `v_I(x_i)` reads the position from variable `i`.
struct InputTest {
  std::variant<int, std::string> position;
  bool operator==(const InputTest&) const = default;
};

struct CallExpr {
  std::string callee;
  std::vector<Box<Expr>> args;
  bool operator==(const CallExpr&) const = default;
};

struct UnaryExpr {
  UnaryOp op;
  Box<Expr> operand;
  bool operator==(const UnaryExpr&) const = default;
};

struct BinaryExpr {
  BinaryOp op;
  Box<Expr> lhs;
  Box<Expr> rhs;
  bool operator==(const BinaryExpr&) const = default;
};

/// Intrinsic `cnf_satisfied(F, vA)`: true iff the bool array `vA` satisfies every clause of F.
struct CnfSatisfied {
  CnfClauses formula;
  std::string array;
  bool operator==(const CnfSatisfied&) const = default;
};

struct Expr {
  std::variant<IntLit, BoolLit, VarRef, IndexExpr, InputTest, CallExpr, UnaryExpr, BinaryExpr,
               CnfSatisfied>
      node;
  bool operator==(const Expr&) const = default;
};

struct Stmt;
using Block = std::vector<Stmt>;

struct OutputStmt {
  Box<Expr> value;
  bool operator==(const OutputStmt&) const = default;
};

struct ReturnStmt {
  std::optional<Box<Expr>> value;
  bool operator==(const ReturnStmt&) const = default;
};

struct AssignStmt {
  std::string target;
  std::optional<Box<Expr>> index;  // set for `target[index] = value`
  Box<Expr> value;
  bool operator==(const AssignStmt&) const = default;
};

struct CreateArrayStmt {
  ValueType elementType;  // Int or Bool
  std::string name;
  Box<Expr> length;
  bool operator==(const CreateArrayStmt&) const = default;
};

struct IfBranch {
  Box<Expr> condition;
  Box<Block> body;
  bool operator==(const IfBranch&) const = default;
};

struct IfStmt {
  std::vector<IfBranch> branches;  // if, then each elsif
  std::optional<Box<Block>> elseBody;
  bool operator==(const IfStmt&) const = default;
};

struct ForStmt {
  std::string var;
  Box<Expr> from;
  Box<Expr> to;
  Box<Block> body;
  bool operator==(const ForStmt&) const = default;
};

struct CallStmt {
  CallExpr call;
  bool operator==(const CallStmt&) const = default;
};

struct Stmt {
  std::variant<OutputStmt, ReturnStmt, AssignStmt, CreateArrayStmt, IfStmt, ForStmt, CallStmt>
      node;
  bool operator==(const Stmt&) const = default;
};

inline Box<Expr> make_expr(auto node) { return Box<Expr>(Expr{std::move(node)}); }

}  // namespace esc
