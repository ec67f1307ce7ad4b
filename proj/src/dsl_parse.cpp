#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <stdexcept>

#include "esc/dsl.hpp"

namespace esc {

namespace {

enum class Tok { Ident, Int, Symbol, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 0;
  int col = 0;
  int indent = 0;
  bool firstOnLine = false;
};

struct SyntaxError {
  int line;
  int col;
  std::string message;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  std::size_t i = 0;
  while (i <= text.size()) {
    std::size_t eol = text.find('\n', i);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view row = text.substr(i, eol - i);
    if (auto c = row.find("//"); c != std::string_view::npos) row = row.substr(0, c);
    int indent = 0;
    std::size_t p = 0;
    while (p < row.size() && (row[p] == ' ' || row[p] == '\t' || row[p] == '\r')) {
      indent += row[p] == '\t' ? 4 : (row[p] == ' ' ? 1 : 0);
      ++p;
    }
    bool first = true;
    while (p < row.size()) {
      char c = row[p];
      if (c == ' ' || c == '\t' || c == '\r') {
        ++p;
        continue;
      }
      Token t;
      t.line = line;
      t.col = static_cast<int>(p) + 1;
      t.indent = indent;
      t.firstOnLine = first;
      first = false;
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t s = p;
        while (p < row.size() &&
               (std::isalnum(static_cast<unsigned char>(row[p])) || row[p] == '_')) {
          ++p;
        }
        t.kind = Tok::Ident;
        t.text = std::string(row.substr(s, p - s));
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t s = p;
        while (p < row.size() && std::isdigit(static_cast<unsigned char>(row[p]))) ++p;
        t.kind = Tok::Int;
        t.text = std::string(row.substr(s, p - s));
      } else {
        t.kind = Tok::Symbol;
        std::string_view two = row.substr(p, 2);
        if (two == "==" || two == "->") {
          t.text = std::string(two);
          p += 2;
        } else if (std::string_view("{}()[],=+-<>").find(c) != std::string_view::npos) {
          t.text = std::string(1, c);
          ++p;
        } else {
          throw SyntaxError{line, t.col, std::string("unexpected character '") + c + "'"};
        }
      }
      out.push_back(std::move(t));
    }
    ++line;
    i = eol + 1;
  }
  Token end;
  end.line = line - 1;
  end.col = 1;
  end.firstOnLine = true;
  out.push_back(end);
  return out;
}

bool is_keyword(const std::string& s) {
  static const std::set<std::string> kw = {
      "interface", "component", "provides", "requires", "if",     "then",   "elsif",
      "else",      "for",       "to",       "do",       "return", "output", "create",
      "and",       "or",        "not",      "True",     "False",  "transfer"};
  return kw.count(s) > 0;
}

struct FunctionSite {
  std::string component;
  std::string function;
  int line;
  int col;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  std::vector<FunctionSite> sites;

  Interface parse_interface() {
    expect_word("interface");
    Interface iface;
    iface.name = name("interface name");
    expect_symbol("{");
    while (!at_symbol("}")) {
      if (peek().kind == Tok::End) fail(peek(), "unterminated interface '" + iface.name + "'");
      if (at_word("transfer")) {
        next();
        Param p;
        p.type = parse_type();
        p.name = name("transfer field name");
        iface.transferFields.push_back(p);
        continue;
      }
      iface.prototypes.push_back(parse_prototype());
    }
    next();
    iface.codeSize = count_lines(print_interface(iface));
    return iface;
  }

  Component parse_component() {
    expect_word("component");
    Component c;
    c.name = name("component name");
    if (at_word("provides")) {
      next();
      c.provides = name_list();
    }
    if (at_word("requires")) {
      next();
      c.requires_ = name_list();
    }
    expect_symbol("{");
    while (!at_symbol("}")) {
      if (peek().kind == Tok::End) fail(peek(), "unterminated component '" + c.name + "'");
      const Token& start = peek();
      Function f;
      f.prototype = parse_prototype();
      sites.push_back({c.name, f.prototype.name, start.line, start.col});
      const Token& brace = expect_symbol("{");
      if (!peek().firstOnLine) fail(peek(), "function body must start on a new line");
      f.body = parse_body(brace.indent);
      c.functions.push_back(std::move(f));
      expect_symbol("}");
    }
    next();
    c.codeSize = count_lines(print_component(c));
    return c;
  }

  const Token& peek() const { return toks_[pos_]; }
  bool at_end() const { return peek().kind == Tok::End; }
  bool at_word(std::string_view w) const { return peek().kind == Tok::Ident && peek().text == w; }

  // Skips to the next token that starts a declaration.
  void recover() {
    if (!at_end()) ++pos_;
    while (!at_end() && !(peek().firstOnLine && (at_word("interface") || at_word("component")))) {
      ++pos_;
    }
  }

  [[noreturn]] static void fail(const Token& t, const std::string& msg) {
    throw SyntaxError{t.line, t.col, msg};
  }

 private:
  // ---- token helpers
  const Token& next() { return toks_[pos_++]; }
  bool at_symbol(std::string_view s) const {
    return peek().kind == Tok::Symbol && peek().text == s;
  }
  const Token& expect_symbol(std::string_view s) {
    if (!at_symbol(s)) fail(peek(), "expected '" + std::string(s) + "'" + found());
    return next();
  }
  void expect_word(std::string_view w) {
    if (!at_word(w)) fail(peek(), "expected '" + std::string(w) + "'" + found());
    next();
  }
  std::string found() const {
    if (peek().kind == Tok::End) return " but reached end of input";
    return " but found '" + peek().text + "'";
  }
  std::string name(const std::string& what) {
    if (peek().kind != Tok::Ident || is_keyword(peek().text)) {
      fail(peek(), "expected " + what + found());
    }
    return next().text;
  }
  std::vector<std::string> name_list() {
    std::vector<std::string> out{name("interface name")};
    while (at_symbol(",")) {
      next();
      out.push_back(name("interface name"));
    }
    return out;
  }

  ValueType parse_type() {
    const Token& t = peek();
    if (t.kind != Tok::Ident) fail(t, "expected a type" + found());
    std::string w = next().text;
    ValueType base;
    if (w == "void") return ValueType::Void;
    if (w == "Input") return ValueType::Input;
    if (w == "int" || w == "integer") {
      base = ValueType::Int;
    } else if (w == "Boolean" || w == "bool") {
      base = ValueType::Bool;
    } else {
      fail(t, "unknown type '" + w + "'");
    }
    if (at_symbol("[")) {
      next();
      expect_symbol("]");
      return base == ValueType::Int ? ValueType::IntArray : ValueType::BoolArray;
    }
    return base;
  }

  FunctionPrototype parse_prototype() {
    FunctionPrototype p;
    p.returnType = parse_type();
    if (p.returnType == ValueType::Input) fail(toks_[pos_ - 1], "a function cannot return Input");
    p.name = name("function name");
    expect_symbol("(");
    if (!at_symbol(")")) {
      while (true) {
        Param param;
        const Token& t = peek();
        param.type = parse_type();
        if (param.type == ValueType::Void) fail(t, "parameter cannot have type void");
        param.name = name("parameter name");
        p.params.push_back(param);
        if (!at_symbol(",")) break;
        next();
      }
    }
    expect_symbol(")");
    return p;
  }

  // ---- statements (line- and indentation-based)
  struct Line {
    std::vector<Token> toks;
    int indent;
  };

  Block parse_body(int headerIndent) {
    std::vector<Line> lines;
    while (!(peek().firstOnLine && at_symbol("}"))) {
      if (at_end()) fail(peek(), "unterminated function body");
      Line l;
      l.indent = peek().indent;
      do {
        l.toks.push_back(next());
      } while (!peek().firstOnLine);
      lines.push_back(std::move(l));
    }
    std::size_t i = 0;
    Block b = lines.empty() ? Block{} : block(lines, i, headerIndent);
    if (i != lines.size()) fail(lines[i].toks.front(), "unexpected indentation");
    return b;
  }

  Block block(const std::vector<Line>& lines, std::size_t& i, int parentIndent) {
    Block out;
    if (i >= lines.size() || lines[i].indent <= parentIndent) {
      const Token& t = i < lines.size() ? lines[i].toks.front() : lines.back().toks.back();
      fail(t, "expected an indented block");
    }
    int indent = lines[i].indent;
    while (i < lines.size() && lines[i].indent > parentIndent) {
      if (lines[i].indent != indent) fail(lines[i].toks.front(), "inconsistent indentation");
      out.push_back(statement(lines, i));
    }
    return out;
  }

  // Parses the statement starting at lines[i] and advances past everything it owns.
  Stmt statement(const std::vector<Line>& lines, std::size_t& i) {
    const Line& line = lines[i];
    LineCursor cur{line.toks, 0};
    const std::string& head = line.toks.front().text;
    int indent = line.indent;
    if (head == "if") {
      IfStmt s;
      cur.advance();
      s.branches.push_back(branch(lines, i, cur, indent));
      while (i < lines.size() && lines[i].indent == indent &&
             lines[i].toks.front().kind == Tok::Ident &&
             (lines[i].toks.front().text == "elsif" || lines[i].toks.front().text == "else")) {
        LineCursor c2{lines[i].toks, 0};
        if (c2.take().text == "elsif") {
          s.branches.push_back(branch(lines, i, c2, indent));
        } else {
          s.elseBody = Box<Block>(clause_body(lines, i, c2, indent));
          break;
        }
      }
      return Stmt{std::move(s)};
    }
    if (head == "elsif" || head == "else") fail(line.toks.front(), "'" + head + "' without 'if'");
    if (head == "for") {
      cur.advance();
      ForStmt s{"", make_expr(IntLit{0}), make_expr(IntLit{0}), Box<Block>(Block{})};
      s.var = cur.name("loop variable");
      cur.expect("=");
      s.from = expr(cur);
      cur.expect_word("to");
      s.to = expr(cur);
      cur.expect_word("do");
      s.body = Box<Block>(clause_body(lines, i, cur, indent));
      return Stmt{std::move(s)};
    }
    Stmt s = simple(cur);
    if (!cur.done()) fail(cur.peek(), "unexpected '" + cur.peek().text + "' after statement");
    ++i;
    return s;
  }

  struct LineCursor {
    LineCursor(const std::vector<Token>& t, std::size_t p) : toks(t), pos(p) {
      end.kind = Tok::End;
      end.text = "end of line";
      end.line = t.back().line;
      end.col = t.back().col + static_cast<int>(t.back().text.size());
    }

    const std::vector<Token>& toks;
    std::size_t pos;
    Token end;

    bool done() const { return pos >= toks.size(); }
    const Token& peek() const { return done() ? end : toks[pos]; }
    const Token& take() {
      const Token& t = peek();
      if (!done()) ++pos;
      return t;
    }
    void advance() { ++pos; }
    bool at(std::string_view s) const {
      return !done() && toks[pos].kind != Tok::Int && toks[pos].text == s;
    }
    void expect(std::string_view s) {
      if (!at(s)) fail(peek(), "expected '" + std::string(s) + "' but found '" + peek().text + "'");
      ++pos;
    }
    void expect_word(std::string_view s) { expect(s); }
    std::string name(const std::string& what) {
      if (done() || peek().kind != Tok::Ident || is_keyword(peek().text)) {
        fail(peek(), "expected " + what + " but found '" + peek().text + "'");
      }
      return take().text;
    }
  };

  IfBranch branch(const std::vector<Line>& lines, std::size_t& i, LineCursor& cur, int indent) {
    Box<Expr> cond = expr(cur);
    cur.expect_word("then");
    return IfBranch{cond, Box<Block>(clause_body(lines, i, cur, indent))};
  }

  // After `then`/`else`/`do`: either one simple statement on the same line or an indented block.
  Block clause_body(const std::vector<Line>& lines, std::size_t& i, LineCursor& cur, int indent) {
    if (!cur.done()) {
      const Token& t = cur.peek();
      if (t.text == "if" || t.text == "for") {
        fail(t, "only a simple statement may follow on the same line");
      }
      Stmt s = simple(cur);
      if (!cur.done()) fail(cur.peek(), "unexpected '" + cur.peek().text + "' after statement");
      ++i;
      return Block{std::move(s)};
    }
    ++i;
    return block(lines, i, indent);
  }

  Stmt simple(LineCursor& cur) {
    const Token& t = cur.peek();
    if (t.kind != Tok::Ident) fail(t, "expected a statement but found '" + t.text + "'");
    if (t.text == "output") {
      cur.advance();
      return Stmt{OutputStmt{expr(cur)}};
    }
    if (t.text == "return") {
      cur.advance();
      if (cur.done()) return Stmt{ReturnStmt{std::nullopt}};
      return Stmt{ReturnStmt{expr(cur)}};
    }
    if (t.text == "create") {
      cur.advance();
      const Token& ty = cur.take();
      ValueType elem;
      if (ty.text == "int" || ty.text == "integer") {
        elem = ValueType::Int;
      } else if (ty.text == "Boolean" || ty.text == "bool") {
        elem = ValueType::Bool;
      } else {
        fail(ty, "expected an array element type but found '" + ty.text + "'");
      }
      cur.expect_word("array");
      std::string arr = cur.name("array name");
      cur.expect_word("of");
      cur.expect_word("length");
      return Stmt{CreateArrayStmt{elem, arr, expr(cur)}};
    }
    if (is_keyword(t.text)) fail(t, "unknown statement form starting with '" + t.text + "'");
    std::string target = cur.take().text;
    if (cur.at("(")) {
      return Stmt{CallStmt{call_rest(target, cur)}};
    }
    std::optional<Box<Expr>> index;
    if (cur.at("[")) {
      cur.advance();
      index = expr(cur);
      cur.expect("]");
    }
    if (!cur.at("=")) fail(cur.peek(), "unknown statement form starting with '" + target + "'");
    cur.advance();
    return Stmt{AssignStmt{target, index, expr(cur)}};
  }

  // ---- expressions
  Box<Expr> expr(LineCursor& cur) { return or_expr(cur); }

  Box<Expr> or_expr(LineCursor& cur) {
    Box<Expr> lhs = and_expr(cur);
    while (cur.at("or")) {
      cur.advance();
      lhs = make_expr(BinaryExpr{BinaryOp::Or, lhs, and_expr(cur)});
    }
    return lhs;
  }

  Box<Expr> and_expr(LineCursor& cur) {
    Box<Expr> lhs = not_expr(cur);
    while (cur.at("and")) {
      cur.advance();
      lhs = make_expr(BinaryExpr{BinaryOp::And, lhs, not_expr(cur)});
    }
    return lhs;
  }

  Box<Expr> not_expr(LineCursor& cur) {
    if (cur.at("not")) {
      cur.advance();
      return make_expr(UnaryExpr{UnaryOp::Not, not_expr(cur)});
    }
    return comparison(cur);
  }

  Box<Expr> comparison(LineCursor& cur) {
    Box<Expr> lhs = additive(cur);
    BinaryOp op;
    if (cur.at("==")) {
      op = BinaryOp::Eq;
    } else if (cur.at("<")) {
      op = BinaryOp::Less;
    } else if (cur.at(">")) {
      op = BinaryOp::Greater;
    } else {
      return lhs;
    }
    cur.advance();
    Box<Expr> rhs = additive(cur);
    if (cur.at("==") || cur.at("<") || cur.at(">")) {
      fail(cur.peek(), "comparisons cannot be chained");
    }
    return make_expr(BinaryExpr{op, lhs, rhs});
  }

  Box<Expr> additive(LineCursor& cur) {
    Box<Expr> lhs = unary(cur);
    while (cur.at("+") || cur.at("-")) {
      BinaryOp op = cur.take().text == "+" ? BinaryOp::Add : BinaryOp::Sub;
      lhs = make_expr(BinaryExpr{op, lhs, unary(cur)});
    }
    return lhs;
  }

  Box<Expr> unary(LineCursor& cur) {
    if (cur.at("-")) {
      cur.advance();
      if (!cur.done() && cur.peek().kind == Tok::Int) {
        return make_expr(IntLit{-integer(cur.take())});
      }
      return make_expr(UnaryExpr{UnaryOp::Negate, unary(cur)});
    }
    return primary(cur);
  }

  static std::int64_t integer(const Token& t) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc()) fail(t, "integer literal out of range");
    return v;
  }

  Box<Expr> primary(LineCursor& cur) {
    const Token& t = cur.peek();
    if (cur.done()) fail(t, "expected an expression but reached end of line");
    if (t.kind == Tok::Int) {
      cur.advance();
      return make_expr(IntLit{integer(t)});
    }
    if (t.kind == Tok::Symbol) {
      if (t.text == "(") {
        cur.advance();
        Box<Expr> e = expr(cur);
        cur.expect(")");
        return e;
      }
      fail(t, "expected an expression but found '" + t.text + "'");
    }
    if (t.text == "True" || t.text == "False") {
      cur.advance();
      return make_expr(BoolLit{t.text == "True"});
    }
    if (is_keyword(t.text)) fail(t, "expected an expression but found '" + t.text + "'");
    std::string id = cur.take().text;
    if (id == "v_I") return input_test(cur);
    if (id == "cnf_satisfied") return cnf(cur);
    if (cur.at("(")) return make_expr(call_rest(id, cur));
    if (cur.at("[")) {
      cur.advance();
      Box<Expr> idx = expr(cur);
      cur.expect("]");
      return make_expr(IndexExpr{id, idx});
    }
    return make_expr(VarRef{id});
  }

  Box<Expr> input_test(LineCursor& cur) {
    cur.expect("(");
    const Token& t = cur.take();
    if (t.kind != Tok::Ident || t.text.size() < 2 || t.text[0] != 'x') {
      fail(t, "expected an input variable such as x3 or x_i");
    }
    std::string rest = t.text.substr(1);
    if (rest[0] == '_') rest = rest.substr(1);
    InputTest test;
    if (!rest.empty() && std::all_of(rest.begin(), rest.end(),
                                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      int k = 0;
      std::from_chars(rest.data(), rest.data() + rest.size(), k);
      if (k < 1) fail(t, "input positions start at 1");
      test.position = k;
    } else if (!rest.empty() && t.text[1] == '_') {
      test.position = rest;
    } else {
      fail(t, "expected an input variable such as x3 or x_i");
    }
    cur.expect(")");
    return make_expr(test);
  }

  Box<Expr> cnf(LineCursor& cur) {
    cur.expect("(");
    cur.expect("[");
    CnfClauses clauses;
    if (!cur.at("]")) {
      while (true) {
        cur.expect("[");
        std::vector<int> clause;
        if (!cur.at("]")) {
          while (true) {
            bool neg = false;
            if (cur.at("-")) {
              cur.advance();
              neg = true;
            }
            const Token& lit = cur.take();
            if (lit.kind != Tok::Int) fail(lit, "expected a variable index");
            auto v = integer(lit);
            if (v < 1 || v > 1000000) fail(lit, "variable index out of range");
            clause.push_back(static_cast<int>(neg ? -v : v));
            if (!cur.at(",")) break;
            cur.advance();
          }
        }
        cur.expect("]");
        clauses.push_back(std::move(clause));
        if (!cur.at(",")) break;
        cur.advance();
      }
    }
    cur.expect("]");
    cur.expect(",");
    std::string arr = cur.name("array name");
    cur.expect(")");
    return make_expr(CnfSatisfied{std::move(clauses), arr});
  }

  CallExpr call_rest(const std::string& callee, LineCursor& cur) {
    cur.expect("(");
    CallExpr c{callee, {}};
    if (!cur.at(")")) {
      while (true) {
        c.args.push_back(expr(cur));
        if (!cur.at(",")) break;
        cur.advance();
      }
    }
    cur.expect(")");
    return c;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

ParseDiagnostic error_at(const std::string& file, int line, int col, std::string msg) {
  ParseDiagnostic d;
  d.span = SourceSpan{file, line, col, line, col};
  d.severity = Severity::Error;
  d.message = std::move(msg);
  return d;
}

}  // namespace

ParseResult<Library> parse_library(std::string_view text, std::string file) {
  ParseResult<Library> result;
  std::vector<Token> tokens;
  try {
    tokens = tokenize(text);
  } catch (const SyntaxError& e) {
    result.diagnostics.push_back(error_at(file, e.line, e.col, e.message));
    return result;
  }
  Parser p(std::move(tokens));
  std::vector<Interface> interfaces;
  std::vector<Component> components;
  while (!p.at_end()) {
    try {
      if (p.at_word("interface")) {
        interfaces.push_back(p.parse_interface());
      } else if (p.at_word("component")) {
        components.push_back(p.parse_component());
      } else {
        Parser::fail(p.peek(), "expected 'interface' or 'component' but found '" +
                                   p.peek().text + "'");
      }
    } catch (const SyntaxError& e) {
      result.diagnostics.push_back(error_at(file, e.line, e.col, e.message));
      p.recover();
    }
  }
  if (interfaces.empty() && components.empty() && result.diagnostics.empty()) {
    result.diagnostics.push_back(error_at(file, 1, 1, "no declarations"));
  }
  if (!result.diagnostics.empty()) return result;

  std::map<std::string, const Interface*> byName;
  for (const auto& i : interfaces) byName.emplace(i.name, &i);
  for (const auto& site : p.sites) {
    const Component* comp = nullptr;
    for (const auto& c : components) {
      if (c.name == site.component) comp = &c;
    }
    const Function* f = comp->find(site.function);
    for (const auto& prov : comp->provides) {
      auto it = byName.find(prov);
      if (it == byName.end()) continue;
      const FunctionPrototype* proto = it->second->find(site.function);
      if (proto && !proto->same_signature(f->prototype)) {
        result.diagnostics.push_back(error_at(
            file, site.line, site.col,
            "signature of '" + site.function + "' in component '" + site.component +
                "' does not match interface '" + prov + "'"));
      }
    }
  }
  if (!result.diagnostics.empty()) return result;
  result.value = Library(std::move(interfaces), std::move(components));
  return result;
}

ParseResult<RequirementSet> parse_requirements(std::string_view text, std::string file) {
  ParseResult<RequirementSet> result;
  std::optional<std::vector<std::string>> vars;
  std::optional<std::vector<std::int64_t>> outputs;
  std::vector<Requirement> rows;
  int line = 0;
  std::size_t i = 0;
  auto diag = [&](int col, std::string msg) {
    result.diagnostics.push_back(error_at(file, line, col, std::move(msg)));
  };
  while (i <= text.size()) {
    std::size_t eol = text.find('\n', i);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view row = text.substr(i, eol - i);
    ++line;
    i = eol + 1;
    for (std::string_view marker : {"//", "#"}) {
      if (auto c = row.find(marker); c != std::string_view::npos) row = row.substr(0, c);
    }
    std::vector<std::pair<std::string, int>> words;
    for (std::size_t p = 0; p < row.size();) {
      if (std::isspace(static_cast<unsigned char>(row[p]))) {
        ++p;
        continue;
      }
      std::size_t s = p;
      while (p < row.size() && !std::isspace(static_cast<unsigned char>(row[p]))) ++p;
      words.emplace_back(std::string(row.substr(s, p - s)), static_cast<int>(s) + 1);
    }
    if (words.empty()) continue;
    if (words[0].first == "vars:") {
      if (vars) {
        diag(1, "duplicate 'vars:' header");
        continue;
      }
      std::vector<std::string> names;
      std::set<std::string> seen;
      for (std::size_t w = 1; w < words.size(); ++w) {
        if (!seen.insert(words[w].first).second) {
          diag(words[w].second, "duplicate variable '" + words[w].first + "'");
        }
        names.push_back(words[w].first);
      }
      if (names.empty()) diag(1, "'vars:' must list at least one variable");
      vars = names;
      continue;
    }
    if (words[0].first == "outputs:") {
      if (outputs) {
        diag(1, "duplicate 'outputs:' header");
        continue;
      }
      std::vector<std::int64_t> outs;
      for (std::size_t w = 1; w < words.size(); ++w) {
        std::int64_t v = 0;
        const auto& s = words[w].first;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) {
          diag(words[w].second, "output value '" + s + "' is not an integer");
          continue;
        }
        if (std::find(outs.begin(), outs.end(), v) == outs.end()) outs.push_back(v);
      }
      outputs = outs;
      continue;
    }
    if (!vars || !outputs) {
      diag(words[0].second, "requirement row before the 'vars:' and 'outputs:' headers");
      continue;
    }
    Requirement r;
    std::size_t w = 0;
    bool bad = false;
    for (; w < words.size() && words[w].first != "->"; ++w) {
      const auto& s = words[w].first;
      if (s == "T") {
        r.input.push_back(true);
      } else if (s == "F") {
        r.input.push_back(false);
      } else {
        diag(words[w].second, "expected T or F but found '" + s + "'");
        bad = true;
      }
    }
    if (bad) continue;
    if (w + 2 != words.size()) {
      diag(words[0].second, "requirement row must end with '-> OUTPUT'");
      continue;
    }
    if (r.input.size() != vars->size()) {
      diag(words[0].second, "row has " + std::to_string(r.input.size()) + " values but " +
                                std::to_string(vars->size()) + " variables are declared");
      continue;
    }
    const auto& os = words[w + 1].first;
    auto [ptr, ec] = std::from_chars(os.data(), os.data() + os.size(), r.output);
    if (ec != std::errc() || ptr != os.data() + os.size()) {
      diag(words[w + 1].second, "output '" + os + "' is not an integer");
      continue;
    }
    if (std::find(outputs->begin(), outputs->end(), r.output) == outputs->end()) {
      diag(words[w + 1].second, "output " + os + " is not in the declared output set");
      continue;
    }
    rows.push_back(std::move(r));
  }
  if (!vars || !outputs) {
    line = 1;
    if (!vars) diag(1, "missing 'vars:' header");
    if (!outputs) diag(1, "missing 'outputs:' header");
  }
  if (!result.diagnostics.empty()) return result;
  result.value = RequirementSet(BoolVarSet(*vars), *outputs, std::move(rows));
  return result;
}

namespace {

std::string joined(const std::vector<ParseDiagnostic>& ds) {
  std::string out;
  for (const auto& d : ds) {
    if (!out.empty()) out += '\n';
    out += format_diagnostic(d);
  }
  return out;
}

}  // namespace

Library parse_library_or_throw(std::string_view text, std::string file) {
  auto r = parse_library(text, std::move(file));
  if (!r.ok()) throw PreconditionError(joined(r.diagnostics));
  return std::move(*r.value);
}

RequirementSet parse_requirements_or_throw(std::string_view text, std::string file) {
  auto r = parse_requirements(text, std::move(file));
  if (!r.ok()) throw PreconditionError(joined(r.diagnostics));
  return std::move(*r.value);
}

}  // namespace esc
