#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "esc/model.hpp"

namespace esc {

struct SourceSpan {
  std::string file;
  int startLine = 1;
  int startCol = 1;
  int endLine = 1;
  int endCol = 1;
};

enum class Severity { Error, Warning };

struct ParseDiagnostic {
  SourceSpan span;
  Severity severity = Severity::Error;
  std::string message;
};

/// `file:line:col: error: message`
std::string format_diagnostic(const ParseDiagnostic& d);

template <class T>
struct ParseResult {
  std::optional<T> value;  // empty whenever an error diagnostic was produced
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const { return value.has_value(); }
};

ParseResult<Library> parse_library(std::string_view text, std::string file = "<input>");
ParseResult<RequirementSet> parse_requirements(std::string_view text,
                                               std::string file = "<input>");

/// Parses a library and throws PreconditionError carrying the diagnostics on failure.
/// Used for text produced by this program (reductions, fixtures).
Library parse_library_or_throw(std::string_view text, std::string file = "<generated>");
RequirementSet parse_requirements_or_throw(std::string_view text,
                                           std::string file = "<generated>");

std::string pretty_print(const Library& lib);
std::string print_interface(const Interface& iface);
std::string print_component(const Component& component);
std::string print_requirements(const RequirementSet& reqs);
std::string print_expr(const Expr& e);
std::string type_name(ValueType t);

/// Number of newline-terminated lines.
int count_lines(std::string_view text);

}  // namespace esc
