#include "sltrace/syntax.hpp"

#include <cctype>
#include <charconv>

#include "overloaded.hpp"

namespace sltrace {

using detail::overloaded;

SyntaxError::SyntaxError(const std::string& msg, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { lparen, rparen, langle, rangle, comma, integer, symbol, loc, fun, atom, end };

struct Token {
  Tok kind;
  std::string text;
  std::int64_t number = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    t.column = col_;
    if (pos_ >= src_.size()) {
      t.kind = Tok::end;
      return t;
    }
    char c = src_[pos_];
    auto single = [&](Tok k) {
      advance();
      t.kind = k;
      t.text = std::string(1, c);
      return t;
    };
    switch (c) {
      case '(': return single(Tok::lparen);
      case ')': return single(Tok::rparen);
      case '<': return single(Tok::langle);
      case '>': return single(Tok::rangle);
      case ',': return single(Tok::comma);
      default: break;
    }
    if (c == '\'') {
      advance();
      std::string name = read_ident();
      if (name.empty()) throw SyntaxError("expected symbol name after quote", t.line, t.column);
      t.kind = Tok::symbol;
      t.text = std::move(name);
      return t;
    }
    if (c == '#') {
      advance();
      if (pos_ >= src_.size() || (src_[pos_] != 'l' && src_[pos_] != 'f'))
        throw SyntaxError("expected #l<n> or #f<n>", t.line, t.column);
      t.kind = src_[pos_] == 'l' ? Tok::loc : Tok::fun;
      advance();
      std::string digits = read_digits();
      if (digits.empty()) throw SyntaxError("expected digits after #l/#f", t.line, t.column);
      t.number = to_number(digits, t);
      if (t.number < 0) throw SyntaxError("identifier out of range", t.line, t.column);
      t.text = digits;
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && pos_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
      std::string text;
      if (c == '-') {
        text += '-';
        advance();
      }
      text += read_digits();
      if (pos_ < src_.size() && ident_char(src_[pos_]))
        throw SyntaxError("malformed integer literal", t.line, t.column);
      t.kind = Tok::integer;
      t.number = to_number(text, t);
      t.text = std::move(text);
      return t;
    }
    if (ident_start(c)) {
      t.kind = Tok::atom;
      t.text = read_ident();
      return t;
    }
    if (c == ':' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '=') {
      advance();
      advance();
      t.kind = Tok::atom;
      t.text = ":=";
      return t;
    }
    if (c == '=' || c == '+' || c == '-' || c == '*') return single(Tok::atom);
    throw SyntaxError(std::string("unexpected character '") + c + "'", t.line, t.column);
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == ';') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string read_ident() {
    std::string out;
    if (pos_ < src_.size() && ident_start(src_[pos_])) {
      while (pos_ < src_.size() && ident_char(src_[pos_])) {
        out += src_[pos_];
        advance();
      }
    }
    return out;
  }

  std::string read_digits() {
    std::string out;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      out += src_[pos_];
      advance();
    }
    return out;
  }

  static std::int64_t to_number(const std::string& text, const Token& t) {
    std::int64_t n = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
    if (ec != std::errc() || ptr != text.data() + text.size())
      throw SyntaxError("integer literal out of range", t.line, t.column);
    return n;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { cur_ = lex_.next(); }

  Expr expr() {
    Token t = take();
    switch (t.kind) {
      case Tok::integer: return Expr::val(Value::integer(t.number));
      case Tok::symbol: return Expr::val(Value::sym(t.text));
      case Tok::loc: return Expr::val(Value::loc(static_cast<std::uint64_t>(t.number)));
      case Tok::fun: return Expr::val(Value::fun(static_cast<std::uint64_t>(t.number)));
      case Tok::langle: return Expr::val(pair_literal(t));
      case Tok::atom:
        if (!is_identifier(t.text)) throw SyntaxError("expected an expression, got '" + t.text + "'", t.line, t.column);
        if (t.text == kWildcard) throw SyntaxError("'_' cannot be used as a variable", t.line, t.column);
        return Expr::var(t.text);
      case Tok::lparen: return compound(t);
      case Tok::end: throw SyntaxError("unexpected end of input", t.line, t.column);
      default: throw SyntaxError("unexpected '" + t.text + "'", t.line, t.column);
    }
  }

  Program program() {
    Program p;
    if (cur_.kind == Tok::lparen) {
      // Peek for with-lib without consuming the general path.
      Token open = cur_;
      Lexer saved = lex_;
      Token after = lex_.next();
      if (after.kind == Tok::atom && after.text == "with-lib") {
        cur_ = lex_.next();
        p.with_lib = true;
        if (cur_.kind == Tok::lparen) {
          // A parenthesised list of plain identifiers is the op-name list;
          // anything else starts the body.
          Lexer probe = lex_;
          Token first = probe.next();
          if (first.kind == Tok::atom && !is_keyword(first.text)) {
            take();
            while (cur_.kind != Tok::rparen) {
              Token name = take();
              if (name.kind != Tok::atom || !is_identifier(name.text))
                throw SyntaxError("expected an operation name", name.line, name.column);
              p.op_names.push_back(name.text);
            }
            take();
          }
        }
        p.body = expr();
        expect(Tok::rparen, "')' closing with-lib");
        expect_end();
        return p;
      }
      lex_ = saved;
      cur_ = open;
    }
    p.body = expr();
    expect_end();
    return p;
  }

  void expect_end() {
    if (cur_.kind != Tok::end) throw SyntaxError("trailing input after expression", cur_.line, cur_.column);
  }

 private:
  static bool is_keyword(const std::string& s) {
    static const char* const kws[] = {"lam", "app", "if",   "pair", "fst", "snd", "ref",
                                      "get", "op",  "emit", "let",  "seq", "with-lib"};
    for (const char* k : kws)
      if (s == k) return true;
    return false;
  }

  Token take() {
    Token t = cur_;
    cur_ = lex_.next();
    return t;
  }

  void expect(Tok k, const char* what) {
    if (cur_.kind != k) throw SyntaxError(std::string("expected ") + what, cur_.line, cur_.column);
    take();
  }

  std::string binder() {
    Token t = take();
    if (t.kind != Tok::atom || !is_identifier(t.text))
      throw SyntaxError("expected a variable name", t.line, t.column);
    return t.text;
  }

  Value literal() {
    Token t = take();
    switch (t.kind) {
      case Tok::integer: return Value::integer(t.number);
      case Tok::symbol: return Value::sym(t.text);
      case Tok::loc: return Value::loc(static_cast<std::uint64_t>(t.number));
      case Tok::fun: return Value::fun(static_cast<std::uint64_t>(t.number));
      case Tok::langle: return pair_literal(t);
      case Tok::lparen:
        expect(Tok::rparen, "')' in unit literal");
        return Value::unit();
      default: throw SyntaxError("expected a value literal", t.line, t.column);
    }
  }

  Value pair_literal(const Token& open) {
    std::vector<Value> items;
    items.push_back(literal());
    while (cur_.kind == Tok::comma) {
      take();
      items.push_back(literal());
    }
    if (items.size() < 2) throw SyntaxError("pair literal needs at least two components", open.line, open.column);
    expect(Tok::rangle, "'>' closing pair literal");
    return Value::tuple(items);
  }

  Expr compound(const Token& open) {
    if (cur_.kind == Tok::rparen) {
      take();
      return Expr::val(Value::unit());
    }
    Token head = take();
    if (head.kind != Tok::atom) throw SyntaxError("expected a form keyword", head.line, head.column);
    const std::string& kw = head.text;
    Expr result;
    if (kw == "lam") {
      std::string x = binder();
      result = Expr::lam(x, expr());
    } else if (kw == "app") {
      Expr f = expr();
      result = Expr::app(f, expr());
    } else if (kw == "if") {
      Expr c = expr();
      Expr t = expr();
      result = Expr::if_(c, t, expr());
    } else if (kw == "pair") {
      Expr l = expr();
      result = Expr::mk_pair(l, expr());
    } else if (kw == "fst") {
      result = Expr::proj(1, expr());
    } else if (kw == "snd") {
      result = Expr::proj(2, expr());
    } else if (kw == "ref") {
      result = Expr::ref(expr());
    } else if (kw == "get") {
      result = Expr::deref(expr());
    } else if (kw == "emit") {
      result = Expr::emit(expr());
    } else if (kw == "op") {
      Token o = take();
      BinOp op;
      if (o.kind == Tok::langle) op = BinOp::lt;
      else if (o.kind == Tok::atom && o.text == "=") op = BinOp::eq;
      else if (o.kind == Tok::atom && o.text == ":=") op = BinOp::assign;
      else if (o.kind == Tok::atom && o.text == "+") op = BinOp::add;
      else if (o.kind == Tok::atom && o.text == "-") op = BinOp::sub;
      else if (o.kind == Tok::atom && o.text == "*") op = BinOp::mul;
      else throw SyntaxError("unknown operator '" + o.text + "'", o.line, o.column);
      Expr l = expr();
      result = Expr::binop(op, l, expr());
    } else if (kw == "let") {
      std::string x = binder();
      Expr bound = expr();
      result = Expr::let(x, bound, expr());
    } else if (kw == "seq") {
      std::vector<Expr> items;
      while (cur_.kind != Tok::rparen && cur_.kind != Tok::end) items.push_back(expr());
      if (items.empty()) throw SyntaxError("seq needs at least one expression", head.line, head.column);
      result = items.back();
      for (auto it = items.rbegin() + 1; it != items.rend(); ++it) result = Expr::seq(*it, result);
    } else if (kw == "with-lib") {
      throw SyntaxError("with-lib is only allowed at the top of a program", head.line, head.column);
    } else {
      throw SyntaxError("unknown form '" + kw + "'", head.line, head.column);
    }
    if (cur_.kind != Tok::rparen)
      throw SyntaxError("expected ')' closing (" + kw + " ...)", cur_.line, cur_.column);
    take();
    (void)open;
    return result;
  }

  Lexer lex_;
  Token cur_;
};

void print_into(std::string& out, const Expr& e) {
  std::visit(overloaded{
                 [&](const ValE& n) { out += to_string(n.v); },
                 [&](const VarE& n) { out += n.name; },
                 [&](const LamE& n) {
                   out += "(lam " + n.param + ' ';
                   print_into(out, n.body);
                   out += ')';
                 },
                 [&](const AppE& n) {
                   out += "(app ";
                   print_into(out, n.fn);
                   out += ' ';
                   print_into(out, n.arg);
                   out += ')';
                 },
                 [&](const IfE& n) {
                   out += "(if ";
                   print_into(out, n.cond);
                   out += ' ';
                   print_into(out, n.then_branch);
                   out += ' ';
                   print_into(out, n.else_branch);
                   out += ')';
                 },
                 [&](const PairE& n) {
                   out += "(pair ";
                   print_into(out, n.left);
                   out += ' ';
                   print_into(out, n.right);
                   out += ')';
                 },
                 [&](const ProjE& n) {
                   out += n.index == 1 ? "(fst " : "(snd ";
                   print_into(out, n.e);
                   out += ')';
                 },
                 [&](const RefE& n) {
                   out += "(ref ";
                   print_into(out, n.e);
                   out += ')';
                 },
                 [&](const DerefE& n) {
                   out += "(get ";
                   print_into(out, n.e);
                   out += ')';
                 },
                 [&](const BinOpE& n) {
                   out += "(op ";
                   out += op_name(n.op);
                   out += ' ';
                   print_into(out, n.lhs);
                   out += ' ';
                   print_into(out, n.rhs);
                   out += ')';
                 },
                 [&](const EmitE& n) {
                   out += "(emit ";
                   print_into(out, n.e);
                   out += ')';
                 },
             },
             e.node().v);
}

}  // namespace

bool is_identifier(std::string_view s) {
  if (s.empty() || !ident_start(s.front())) return false;
  for (char c : s)
    if (!ident_char(c)) return false;
  return true;
}

Expr parse(std::string_view text) {
  Parser p(text);
  Expr e = p.expr();
  p.expect_end();
  return e;
}

Program parse_program(std::string_view text) {
  Parser p(text);
  return p.program();
}

std::string print(const Expr& e) {
  std::string out;
  print_into(out, e);
  return out;
}

}  // namespace sltrace
