#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sltrace/expr.hpp"

namespace sltrace {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& msg, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Concrete syntax (S-expressions):
//   ()  42  -7  'name  #l3  #f3  <v1, v2, ...>      value literals
//   x  (lam x e)  (app e1 e2)  (if e1 e2 e3)  (pair e1 e2)  (fst e)  (snd e)
//   (ref e)  (get e)  (op <name> e1 e2)  (emit e)
//   (let x e1 e2)  (seq e1 ... en)                     derived forms
// `;` starts a comment running to end of line. `_` may bind but not be
// referenced.
Expr parse(std::string_view text);

// A program file: either a plain expression or a client wrapped in
// (with-lib (op1 ... opk) body) / (with-lib body).
struct Program {
  bool with_lib = false;
  std::vector<std::string> op_names;  // empty: use the library's own names
  Expr body;
};

Program parse_program(std::string_view text);

// Canonical single-line rendering; parse(print(e)) == e.
std::string print(const Expr& e);

bool is_identifier(std::string_view s);

}  // namespace sltrace
