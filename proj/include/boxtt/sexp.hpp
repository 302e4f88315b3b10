#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "boxtt/term.hpp"
#include "boxtt/world.hpp"

namespace boxtt {

enum class ParseErrorKind { Syntax, UnknownForm, Arity };

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, std::size_t column, const std::string& what);

  ParseErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
  std::size_t column_;
};

/// Raw s-expression with source position (1-based).
struct SExpr {
  bool is_list = false;
  std::string atom;
  std::vector<SExpr> items;
  std::size_t line = 1;
  std::size_t column = 1;

  bool is_atom(std::string_view s) const { return !is_list && atom == s; }
  /// Head symbol of a non-empty list whose first item is an atom, else "".
  std::string_view head() const;
};

/// All top-level forms in `text`. `;` starts a comment to end of line.
std::vector<SExpr> read_sexprs(std::string_view text);

/// Term concrete syntax. Derived forms (ite, seq, iflt, true, false, neg,
/// iszero, pred, sub, lt) are expanded while parsing.
TermPtr term_from_sexpr(const SExpr& e);
TermPtr parse_term(std::string_view text);

/// Core-syntax rendering; `parse_term(print(t))` rebuilds t exactly.
std::string print(const TermPtr& t);

/// `(world (cell <name> nat <value> <true|false>) ...)`
RefWorld world_from_sexpr(const SExpr& e);
RefWorld parse_world(std::string_view text);
std::string print_world(const RefWorld& w);

/// A program file: one term, optionally followed by a world literal.
struct SourceProgram {
  TermPtr term;
  std::optional<RefWorld> world;
};
SourceProgram parse_program(std::string_view text);

/// Decimal rendering of a natural.
std::string to_string(const Nat& n);

/// Identifiers the parser accepts as variable names.
bool valid_identifier(std::string_view s);

}  // namespace boxtt
