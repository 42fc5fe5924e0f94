#include "kstar/parse.hpp"

#include <cctype>
#include <optional>

namespace kstar {

ParseError::ParseError(const std::string& message, int line, int column)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

bool operator==(const Expr& a, const Expr& b) {
  return a.kind == b.kind && a.value == b.value && a.name == b.name && a.exponent == b.exponent &&
         a.args == b.args;
}

namespace {

enum class Tok { number, ident, plus, minus, star, caret, lparen, rparen, end };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::end: return "end of input";
    case Tok::number: return "number '" + t.text + "'";
    case Tok::ident: return "'" + t.text + "'";
    default: return "'" + t.text + "'";
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    Token t{Tok::end, "", line_, column_};
    if (pos_ >= text_.size()) return t;
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return number(t);
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) t.text += take();
      t.kind = Tok::ident;
      return t;
    }
    if (text_.substr(pos_, 3) == "\xE2\x88\x92") {  // U+2212 minus sign
      pos_ += 3;
      ++column_;
      t.kind = Tok::minus;
      t.text = "-";
      return t;
    }
    t.text = take();
    switch (c) {
      case '+': t.kind = Tok::plus; return t;
      case '-': t.kind = Tok::minus; return t;
      case '*': t.kind = Tok::star; return t;
      case '^': t.kind = Tok::caret; return t;
      case '(': t.kind = Tok::lparen; return t;
      case ')': t.kind = Tok::rparen; return t;
      case '/': throw ParseError("'/' only appears inside a rational literal such as 3/2", t.line, t.column);
      default: break;
    }
    throw ParseError("unexpected character '" + t.text + "'", t.line, t.column);
  }

 private:
  char take() {
    char c = text_[pos_++];
    // count code points, not bytes
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++column_;
    return c;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') {
        ++pos_;
        ++line_;
        column_ = 1;
      } else {
        take();
      }
    }
  }

  Token number(Token t) {
    auto digits = [this] {
      std::string s;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) s += take();
      return s;
    };
    t.kind = Tok::number;
    t.text = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      throw ParseError("malformed rational '" + t.text + ".': write fractions as p/q", t.line, t.column);
    }
    if (pos_ < text_.size() && text_[pos_] == '/') {
      take();
      std::string den = digits();
      if (den.empty()) throw ParseError("malformed rational '" + t.text + "/': missing denominator", t.line, t.column);
      if (den.find_first_not_of('0') == std::string::npos) {
        throw ParseError("malformed rational '" + t.text + "/" + den + "': zero denominator", t.line, t.column);
      }
      t.text += "/" + den;
    }
    if (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      throw ParseError("missing '*' between '" + t.text + "' and '" + std::string(1, text_[pos_]) + "'",
                       line_, column_);
    }
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

int binary_precedence(Tok t) {
  switch (t) {
    case Tok::plus:
    case Tok::minus: return 1;
    case Tok::star: return 2;
    default: return 0;
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { advance(); }

  Expr parse() {
    Expr e = expression(1);
    if (cur_.kind != Tok::end) fail("an operator or end of input");
    return e;
  }

 private:
  void advance() { cur_ = lexer_.next(); }

  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError("expected " + expected + ", found " + describe(cur_), cur_.line, cur_.column);
  }

  Expr node(Expr::Kind kind, const Token& at) const {
    Expr e;
    e.kind = kind;
    e.line = at.line;
    e.column = at.column;
    return e;
  }

  // Precedence climbing over the left-associative binary operators.
  Expr expression(int min_prec) {
    Expr lhs = unary();
    while (true) {
      int prec = binary_precedence(cur_.kind);
      if (prec == 0 || prec < min_prec) return lhs;
      Token op = cur_;
      advance();
      Expr rhs = expression(prec + 1);
      Expr e = node(op.kind == Tok::plus ? Expr::Kind::add
                    : op.kind == Tok::minus ? Expr::Kind::subtract
                                            : Expr::Kind::multiply,
                    op);
      e.args = {std::move(lhs), std::move(rhs)};
      lhs = std::move(e);
    }
  }

  Expr unary() {
    if (cur_.kind == Tok::minus || cur_.kind == Tok::plus) {
      Token op = cur_;
      advance();
      Expr operand = unary();
      if (op.kind == Tok::plus) return operand;
      Expr e = node(Expr::Kind::negate, op);
      e.args = {std::move(operand)};
      return e;
    }
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (cur_.kind != Tok::caret) return base;
    Token op = cur_;
    advance();
    if (cur_.kind == Tok::minus) throw ParseError("negative exponent", cur_.line, cur_.column);
    if (cur_.kind != Tok::number) fail("a non-negative integer exponent");
    if (cur_.text.find('/') != std::string::npos) {
      throw ParseError("exponent must be a non-negative integer, found '" + cur_.text + "'", cur_.line,
                       cur_.column);
    }
    if (cur_.text.size() > 4) throw ParseError("exponent '" + cur_.text + "' is too large", cur_.line, cur_.column);
    Expr e = node(Expr::Kind::power, op);
    e.exponent = static_cast<unsigned>(std::stoul(cur_.text));
    e.args = {std::move(base)};
    advance();
    if (cur_.kind == Tok::caret) throw ParseError("chained '^' needs parentheses", cur_.line, cur_.column);
    return e;
  }

  Expr primary() {
    Token t = cur_;
    switch (t.kind) {
      case Tok::number: {
        Expr e = node(Expr::Kind::number, t);
        e.value = Rational(t.text);
        e.value.canonicalize();
        advance();
        return e;
      }
      case Tok::ident: {
        Expr e = node(t.text == "i" ? Expr::Kind::imaginary : Expr::Kind::variable, t);
        if (t.text != "i") e.name = t.text;
        advance();
        return e;
      }
      case Tok::lparen: {
        advance();
        Expr e = expression(1);
        if (cur_.kind != Tok::rparen) fail("')'");
        advance();
        return e;
      }
      default: fail("a number, 'i', a variable or '('");
    }
  }

  Lexer lexer_;
  Token cur_{Tok::end, "", 1, 1};
};

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::add:
    case Expr::Kind::subtract: return 1;
    case Expr::Kind::multiply: return 2;
    case Expr::Kind::negate: return 3;
    case Expr::Kind::power: return 4;
    default: return 5;
  }
}

std::string wrapped(const Expr& e, bool parens) { return parens ? "(" + to_string(e) + ")" : to_string(e); }

}  // namespace

Expr parse_expr(std::string_view text) { return Parser(text).parse(); }

Poly to_poly(const Expr& e, const TablePtr& table) {
  switch (e.kind) {
    case Expr::Kind::number: return Poly::constant(table, Scalar(e.value));
    case Expr::Kind::imaginary: return Poly::constant(table, Scalar::i());
    case Expr::Kind::variable: {
      auto slot = table->find(e.name);
      if (!slot) {
        std::string known = (*table)[0].name + ".." + (*table)[table->size() - 1].name;
        throw ParseError("unknown variable '" + e.name + "' (dimension " + std::to_string(table->dimension()) +
                             " has " + known + ")",
                         e.line, e.column);
      }
      return Poly::variable(table, *slot);
    }
    case Expr::Kind::negate: return -to_poly(e.args[0], table);
    case Expr::Kind::add: return to_poly(e.args[0], table) + to_poly(e.args[1], table);
    case Expr::Kind::subtract: return to_poly(e.args[0], table) - to_poly(e.args[1], table);
    case Expr::Kind::multiply: return to_poly(e.args[0], table) * to_poly(e.args[1], table);
    case Expr::Kind::power: return pow(to_poly(e.args[0], table), e.exponent);
  }
  throw Error("unreachable expression kind");
}

Poly parse_poly(std::string_view text, const TablePtr& table) { return to_poly(parse_expr(text), table); }

std::string to_string(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::number: return rational_to_string(e.value);
    case Expr::Kind::imaginary: return "i";
    case Expr::Kind::variable: return e.name;
    case Expr::Kind::negate: return "-" + wrapped(e.args[0], precedence(e.args[0]) < 4);
    case Expr::Kind::power: return wrapped(e.args[0], precedence(e.args[0]) < 5) + "^" + std::to_string(e.exponent);
    default: break;
  }
  const int p = precedence(e);
  const char* op = e.kind == Expr::Kind::add ? " + " : e.kind == Expr::Kind::subtract ? " - " : "*";
  // A negation on the right of a binary operator prints as "a - -b"; keep it readable.
  bool right_parens = precedence(e.args[1]) <= p || e.args[1].kind == Expr::Kind::negate;
  // A product's left operand may be a negation: -a*b reads as (-a)*b.
  bool left_parens = precedence(e.args[0]) < p;
  return wrapped(e.args[0], left_parens) + op + wrapped(e.args[1], right_parens);
}

}  // namespace kstar
