#include "jetvar/parser.hpp"

#include <cctype>
#include <charconv>
#include <string>

#include "jetvar/errors.hpp"

namespace jetvar {
namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string_view text;
  double number = 0.0;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Number: return "number";
    case Tok::Ident: return "identifier";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Caret: return "'^'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::End: return "end of input";
  }
  return "?";
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) return {Tok::End, start, {}};
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number(start);
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
      return {Tok::Ident, start, src_.substr(start, pos_ - start)};
    }
    ++pos_;
    switch (c) {
      case '+': return {Tok::Plus, start, src_.substr(start, 1)};
      case '-': return {Tok::Minus, start, src_.substr(start, 1)};
      case '*': return {Tok::Star, start, src_.substr(start, 1)};
      case '/': return {Tok::Slash, start, src_.substr(start, 1)};
      case '^': return {Tok::Caret, start, src_.substr(start, 1)};
      case '(': return {Tok::LParen, start, src_.substr(start, 1)};
      case ')': return {Tok::RParen, start, src_.substr(start, 1)};
      default: throw SyntaxError(std::string("unexpected character '") + c + "'", start);
    }
  }

 private:
  Token number(std::size_t start) {
    auto digits = [&] {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        digits();
      } else {
        pos_ = save;
      }
    }
    std::string_view text = src_.substr(start, pos_ - start);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) throw SyntaxError("malformed number '" + std::string(text) + "'", start);
    return {Tok::Number, start, text, value};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

// Binding powers.
constexpr int kAddBp = 10;
constexpr int kMulBp = 20;
constexpr int kUnaryBp = 30;
constexpr int kPowBp = 40;

int infix_bp(Tok t) {
  switch (t) {
    case Tok::Plus:
    case Tok::Minus: return kAddBp;
    case Tok::Star:
    case Tok::Slash: return kMulBp;
    case Tok::Caret: return kPowBp;
    default: return 0;
  }
}

class Parser {
 public:
  Parser(std::string_view src, const JetSpace& space) : lex_(src), space_(space) { advance(); }

  Expr parse_all() {
    Expr e = expression(0);
    if (cur_.kind != Tok::End) throw SyntaxError(std::string("expected operator or end of input, found ") + describe(cur_.kind), cur_.pos);
    return e;
  }

 private:
  void advance() { cur_ = lex_.next(); }

  void expect(Tok kind) {
    if (cur_.kind != kind) throw SyntaxError(std::string("expected ") + describe(kind) + ", found " + describe(cur_.kind), cur_.pos);
    advance();
  }

  Expr expression(int min_bp) {
    Expr lhs = prefix();
    for (;;) {
      const int bp = infix_bp(cur_.kind);
      if (bp == 0 || bp <= min_bp) break;
      const Tok op = cur_.kind;
      advance();
      // '^' is right-associative: its right side may contain another '^'.
      Expr rhs = expression(op == Tok::Caret ? bp - 1 : bp);
      lhs = Expr::binary(binary_op(op), lhs, rhs);
    }
    return lhs;
  }

  static Op binary_op(Tok t) {
    switch (t) {
      case Tok::Plus: return Op::Add;
      case Tok::Minus: return Op::Sub;
      case Tok::Star: return Op::Mul;
      case Tok::Slash: return Op::Div;
      default: return Op::Pow;
    }
  }

  Expr prefix() {
    const Token tok = cur_;
    switch (tok.kind) {
      case Tok::Number:
        advance();
        return Expr::constant(tok.number);
      case Tok::Minus:
        advance();
        return Expr::unary(Op::Neg, expression(kUnaryBp));
      case Tok::LParen: {
        advance();
        Expr inner = expression(0);
        expect(Tok::RParen);
        return inner;
      }
      case Tok::Ident:
        advance();
        return identifier(tok);
      default:
        throw SyntaxError(std::string("expected number, coordinate, function or '(', found ") + describe(tok.kind), tok.pos);
    }
  }

  Expr identifier(const Token& tok) {
    static constexpr std::pair<std::string_view, Op> kFunctions[] = {
        {"sin", Op::Sin}, {"cos", Op::Cos}, {"exp", Op::Exp}, {"log", Op::Log}, {"sqrt", Op::Sqrt}};
    for (const auto& [name, op] : kFunctions) {
      if (tok.text == name) {
        expect(Tok::LParen);
        Expr arg = expression(0);
        expect(Tok::RParen);
        return Expr::unary(op, arg);
      }
    }
    return coordinate(tok);
  }

  Expr coordinate(const Token& tok) {
    std::string_view t = tok.text;
    auto read_int = [&](std::string_view s, int& out) {
      if (s.empty()) return false;
      for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
      return ec == std::errc() && ptr == s.data() + s.size();
    };
    CoordId id;
    bool ok = false;
    if (t.size() >= 2 && t[0] == 'x') {
      id.order = 0;
      ok = read_int(t.substr(1), id.index);
    } else if (t.size() >= 4 && t[0] == 'y') {
      const auto underscore = t.find('_');
      ok = underscore != std::string_view::npos && read_int(t.substr(1, underscore - 1), id.order) &&
           read_int(t.substr(underscore + 1), id.index);
    }
    if (!ok) throw UnknownIdentifier("unknown identifier '" + std::string(t) + "'", tok.pos);
    if (id.order < 1 && t[0] == 'y') throw IndexOutOfRange("jet order must be at least 1 in '" + std::string(t) + "'", tok.pos);
    if (!space_.contains(id)) {
      throw IndexOutOfRange("'" + std::string(t) + "' is outside T^" + std::to_string(space_.r()) + "M with n=" +
                                std::to_string(space_.n()),
                            tok.pos);
    }
    return Expr::coord(id);
  }

  Lexer lex_;
  const JetSpace& space_;
  Token cur_{Tok::End, 0, {}};
};

}  // namespace

Expr parse(std::string_view text, const JetSpace& space) { return Parser(text, space).parse_all(); }

}  // namespace jetvar
