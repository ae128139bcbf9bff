#include "strmon/parser.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <vector>

#include "strmon/errors.hpp"

namespace strmon {

namespace {

enum class Tok {
  End,
  Number,   // numeric literal (text kept for int/real distinction)
  Ident,    // identifier or keyword
  LParen,
  RParen,
  LBracket,
  RBracket,
  LBrace,
  RBrace,
  Comma,
  Semicolon,
  Plus,
  Minus,
  Star,
  Underscore,
  AndAnd,
  OrOr,
  Ge,  // >=
  Gt,  // >
  Le,  // <=
  Lt,  // <
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_ws();
    current_.line = line_;
    current_.col = col_;
    if (pos_ >= text_.size()) {
      current_.kind = Tok::End;
      current_.text.clear();
      return;
    }
    const char c = text_[pos_];
    if (c == '!')
      throw NegationRejectedError(
          "negation is not allowed; formulas must be in positive normal form",
          line_, col_);
    switch (c) {
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case '[': return single(Tok::LBracket);
      case ']': return single(Tok::RBracket);
      case '{': return single(Tok::LBrace);
      case '}': return single(Tok::RBrace);
      case ',': return single(Tok::Comma);
      case ';': return single(Tok::Semicolon);
      case '+': return single(Tok::Plus);
      case '-': return single(Tok::Minus);
      case '*': return single(Tok::Star);
      case '_': return single(Tok::Underscore);
      default: break;
    }
    if (c == '&') {
      if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '&') {
        current_.kind = Tok::AndAnd;
        current_.text = "&&";
        consume(2);
        return;
      }
      throw SyntaxError("expected '&&'", line_, col_);
    }
    if (c == '|') {
      if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '|') {
        current_.kind = Tok::OrOr;
        current_.text = "||";
        consume(2);
        return;
      }
      throw SyntaxError("expected '||'", line_, col_);
    }
    if (c == '>' || c == '<') {
      const bool eq = pos_ + 1 < text_.size() && text_[pos_ + 1] == '=';
      current_.kind = c == '>' ? (eq ? Tok::Ge : Tok::Gt)
                               : (eq ? Tok::Le : Tok::Lt);
      current_.text = text_.substr(pos_, eq ? 2 : 1);
      consume(eq ? 2 : 1);
      return;
    }
    if ((c >= '0' && c <= '9') || c == '.') {
      std::size_t end = pos_;
      while (end < text_.size() &&
             ((text_[end] >= '0' && text_[end] <= '9') || text_[end] == '.' ||
              text_[end] == 'e' || text_[end] == 'E' ||
              ((text_[end] == '+' || text_[end] == '-') && end > pos_ &&
               (text_[end - 1] == 'e' || text_[end - 1] == 'E'))))
        ++end;
      current_.kind = Tok::Number;
      current_.text = text_.substr(pos_, end - pos_);
      consume(end - pos_);
      return;
    }
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) {
      std::size_t end = pos_;
      while (end < text_.size() &&
             ((text_[end] >= 'a' && text_[end] <= 'z') ||
              (text_[end] >= 'A' && text_[end] <= 'Z') ||
              (text_[end] >= '0' && text_[end] <= '9') || text_[end] == '_'))
        ++end;
      current_.kind = Tok::Ident;
      current_.text = text_.substr(pos_, end - pos_);
      consume(end - pos_);
      return;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", line_,
                      col_);
  }

  void single(Tok kind) {
    current_.kind = kind;
    current_.text = text_.substr(pos_, 1);
    consume(1);
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') consume(1);
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        consume(1);
      } else {
        break;
      }
    }
  }

  void consume(std::size_t count) {
    for (std::size_t i = 0; i < count && pos_ < text_.size(); ++i) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token current_;
};

class Parser {
 public:
  Parser(const std::string& text, int n) : lex_(text), n_(n) {
    if (n < 1) throw DimensionError("signal dimension must be at least 1");
  }

  FormulaPtr parse() {
    FormulaPtr f = parse_formula();
    expect(Tok::End, "end of input");
    return f;
  }

 private:
  FormulaPtr parse_formula() {
    std::vector<FormulaPtr> terms;
    terms.push_back(parse_term());
    while (lex_.peek().kind == Tok::OrOr) {
      lex_.take();
      terms.push_back(parse_term());
    }
    if (terms.size() == 1) return terms.front();
    return Formula::make_or(std::move(terms));
  }

  FormulaPtr parse_term() {
    std::vector<FormulaPtr> factors;
    factors.push_back(parse_factor());
    while (lex_.peek().kind == Tok::AndAnd) {
      lex_.take();
      factors.push_back(parse_factor());
    }
    if (factors.size() == 1) return factors.front();
    return Formula::make_and(std::move(factors));
  }

  FormulaPtr parse_factor() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::Ident && (t.text == "G" || t.text == "F")) {
      const bool always = t.text == "G";
      lex_.take();
      Interval i = parse_interval(/*allow_unbounded=*/true);
      FormulaPtr child = parse_factor();
      return always ? Formula::make_always(i, std::move(child))
                    : Formula::make_eventually(i, std::move(child));
    }
    if (t.kind == Tok::LParen) {
      lex_.take();
      FormulaPtr inner = parse_formula();
      if (lex_.peek().kind == Tok::Ident && lex_.peek().text == "U") {
        lex_.take();
        Interval i = parse_interval(/*allow_unbounded=*/false);
        FormulaPtr right = parse_formula();
        expect(Tok::RParen, "')'");
        return Formula::make_until(i, std::move(inner), std::move(right));
      }
      expect(Tok::RParen, "')'");
      return inner;
    }
    return parse_atom();
  }

  Interval parse_interval(bool allow_unbounded) {
    const Token& t = lex_.peek();
    Interval i;
    if (t.kind == Tok::LBrace) {
      lex_.take();
      i.a = parse_int("interval bound");
      i.b = i.a;
      expect(Tok::RBrace, "'}'");
      return i;
    }
    if (t.kind == Tok::Ge) {
      Token ge = lex_.take();
      if (!allow_unbounded)
        throw SyntaxError("until intervals must be bounded", ge.line, ge.col);
      i.a = parse_int("interval bound");
      i.unbounded = true;
      return i;
    }
    expect(Tok::LBracket, "'['");
    i.a = parse_int("interval lower bound");
    expect(Tok::Comma, "','");
    if (lex_.peek().kind == Tok::Ident && lex_.peek().text == "inf") {
      Token inf = lex_.take();
      if (!allow_unbounded)
        throw SyntaxError("until intervals must be bounded", inf.line,
                          inf.col);
      i.unbounded = true;
    } else {
      i.b = parse_int("interval upper bound");
      if (i.a > i.b)
        throw SyntaxError("interval must satisfy a <= b", lex_.peek().line,
                          lex_.peek().col);
    }
    expect(Tok::RBracket, "']'");
    return i;
  }

  FormulaPtr parse_atom() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::Ident && t.text == "true") {
      lex_.take();
      return Formula::make_true();
    }
    if (t.kind == Tok::Ident && (t.text == "sd_out" || t.text == "sd_in")) {
      bool avoid = t.text == "sd_out";
      lex_.take();
      expect(Tok::LParen, "'('");
      Region region = parse_region();
      expect(Tok::RParen, "')'");
      // '<' forms flip the satisfied side, mirroring affine normalization.
      if (parse_cmp()) avoid = !avoid;
      parse_zero_rhs();
      try {
        return Formula::make_predicate(PredicateFunction::signed_distance(
            std::move(region),
            avoid ? Orientation::Avoid : Orientation::Reach));
      } catch (const Error& e) {
        throw SyntaxError(e.what(), t.line, t.col);
      }
    }
    return parse_affine_atom();
  }

  // Returns true when the comparison was '<'/'<=' (coefficients must flip).
  bool parse_cmp() {
    const Token t = lex_.take();
    switch (t.kind) {
      case Tok::Gt:
      case Tok::Ge:
        return false;
      case Tok::Lt:
      case Tok::Le:
        return true;
      default:
        throw SyntaxError("expected comparison operator", t.line, t.col);
    }
  }

  void parse_zero_rhs() {
    const Token t = lex_.take();
    if (t.kind != Tok::Number || parse_number_text(t) != 0.0)
      throw SyntaxError("atoms must compare against the literal 0", t.line,
                        t.col);
  }

  FormulaPtr parse_affine_atom() {
    std::vector<double> a(static_cast<std::size_t>(n_), 0.0);
    double b = 0.0;

    bool first = true;
    double sign = 1.0;
    while (true) {
      const Token& t = lex_.peek();
      if (first) {
        if (t.kind == Tok::Minus) {
          lex_.take();
          sign = -1.0;
        } else if (t.kind == Tok::Plus) {
          lex_.take();
        }
      }
      parse_affine_term(a, b, sign);
      first = false;
      if (lex_.peek().kind == Tok::Plus) {
        lex_.take();
        sign = 1.0;
      } else if (lex_.peek().kind == Tok::Minus) {
        lex_.take();
        sign = -1.0;
      } else {
        break;
      }
    }

    const bool flipped = parse_cmp();
    parse_zero_rhs();
    if (flipped) {
      for (double& c : a) c = -c;
      b = -b;
    }
    try {
      return Formula::make_predicate(PredicateFunction::linear(std::move(a), b));
    } catch (const Error& e) {
      throw SyntaxError(e.what(), lex_.peek().line, lex_.peek().col);
    }
  }

  void parse_affine_term(std::vector<double>& a, double& b, double sign) {
    const Token t = lex_.peek();
    if (t.kind == Tok::Number) {
      lex_.take();
      const double value = parse_number_text(t);
      if (lex_.peek().kind == Tok::Star) {
        lex_.take();
        const int var = parse_variable();
        a[static_cast<std::size_t>(var)] += sign * value;
      } else {
        b += sign * value;
      }
      return;
    }
    if (t.kind == Tok::Ident) {
      const int var = parse_variable();
      a[static_cast<std::size_t>(var)] += sign;
      return;
    }
    throw SyntaxError("expected affine term", t.line, t.col);
  }

  int parse_variable() {
    const Token t = lex_.take();
    if (t.kind != Tok::Ident || t.text.size() < 2 || t.text[0] != 'x')
      throw SyntaxError("expected variable x1..x" + std::to_string(n_),
                        t.line, t.col);
    int idx = 0;
    auto res = std::from_chars(t.text.data() + 1, t.text.data() + t.text.size(),
                               idx);
    if (res.ec != std::errc{} || res.ptr != t.text.data() + t.text.size() ||
        idx < 1)
      throw SyntaxError("expected variable x1..x" + std::to_string(n_),
                        t.line, t.col);
    if (idx > n_)
      throw DimensionError("variable x" + std::to_string(idx) +
                               " exceeds signal dimension " +
                               std::to_string(n_),
                           t.line, t.col);
    return idx - 1;
  }

  Region parse_region() {
    const Token t = lex_.take();
    if (t.kind != Tok::Ident)
      throw SyntaxError("expected region", t.line, t.col);
    if (t.text == "box") return parse_box();
    if (t.text == "ball") return parse_ball();
    if (t.text == "halfspace") return parse_halfspace();
    if (t.text == "poly") return parse_poly();
    if (t.text == "union") return parse_union(t);
    throw SyntaxError("unknown region kind '" + t.text + "'", t.line, t.col);
  }

  Region parse_box() {
    expect(Tok::LParen, "'('");
    BoxRegion box;
    int dim = 0;
    while (true) {
      if (lex_.peek().kind == Tok::Underscore) {
        lex_.take();
      } else {
        expect(Tok::LBracket, "'[' or '_'");
        const double lo = parse_extended_number("box lower bound");
        expect(Tok::Comma, "','");
        const double hi = parse_extended_number("box upper bound");
        expect(Tok::RBracket, "']'");
        if (lo > hi)
          throw SyntaxError("box bounds must satisfy lo <= hi",
                            lex_.peek().line, lex_.peek().col);
        check_dim(dim);
        box.dims.push_back(dim);
        box.lo.push_back(lo);
        box.hi.push_back(hi);
      }
      ++dim;
      if (lex_.peek().kind != Tok::Comma) break;
      lex_.take();
    }
    expect(Tok::RParen, "')'");
    if (box.dims.empty())
      throw SyntaxError("box constrains no dimension", lex_.peek().line,
                        lex_.peek().col);
    return Region{std::move(box)};
  }

  Region parse_ball() {
    expect(Tok::LParen, "'('");
    BallRegion ball;
    ball.center = parse_number_list("ball center");
    expect(Tok::Semicolon, "';'");
    ball.radius = parse_signed_number("ball radius");
    expect(Tok::RParen, "')'");
    if (ball.radius <= 0.0)
      throw SyntaxError("ball radius must be positive", lex_.peek().line,
                        lex_.peek().col);
    for (int i = 0; i < static_cast<int>(ball.center.size()); ++i) {
      check_dim(i);
      ball.dims.push_back(i);
    }
    return Region{std::move(ball)};
  }

  HalfspaceRegion parse_halfspace_body() {
    expect(Tok::LParen, "'('");
    HalfspaceRegion hs;
    hs.normal = parse_number_list("halfspace normal");
    expect(Tok::Semicolon, "';'");
    hs.offset = parse_signed_number("halfspace offset");
    expect(Tok::RParen, "')'");
    bool nonzero = false;
    for (double v : hs.normal) nonzero = nonzero || v != 0.0;
    if (!nonzero)
      throw SyntaxError("halfspace normal must be nonzero", lex_.peek().line,
                        lex_.peek().col);
    for (int i = 0; i < static_cast<int>(hs.normal.size()); ++i) {
      check_dim(i);
      hs.dims.push_back(i);
    }
    return hs;
  }

  Region parse_halfspace() { return Region{parse_halfspace_body()}; }

  Region parse_poly() {
    expect(Tok::LParen, "'('");
    PolytopeRegion poly;
    while (true) {
      const Token t = lex_.take();
      if (t.kind != Tok::Ident || t.text != "halfspace")
        throw SyntaxError("poly members must be halfspaces", t.line, t.col);
      HalfspaceRegion hs = parse_halfspace_body();
      if (poly.normals.empty()) {
        poly.dims = hs.dims;
      } else if (poly.dims != hs.dims) {
        throw SyntaxError("poly halfspaces must share one dimension count",
                          t.line, t.col);
      }
      poly.normals.push_back(std::move(hs.normal));
      poly.offsets.push_back(hs.offset);
      if (lex_.peek().kind != Tok::Comma) break;
      lex_.take();
    }
    expect(Tok::RParen, "')'");
    return Region{std::move(poly)};
  }

  Region parse_union(const Token& at) {
    expect(Tok::LParen, "'('");
    UnionRegion u;
    while (true) {
      u.members.push_back(parse_region());
      if (std::holds_alternative<UnionRegion>(u.members.back().shape))
        throw SyntaxError("unions cannot be nested", at.line, at.col);
      if (lex_.peek().kind != Tok::Comma) break;
      lex_.take();
    }
    expect(Tok::RParen, "')'");
    if (u.members.size() < 2)
      throw SyntaxError("union needs at least two members", at.line, at.col);
    return Region{std::move(u)};
  }

  std::vector<double> parse_number_list(const char* what) {
    std::vector<double> out;
    out.push_back(parse_signed_number(what));
    while (lex_.peek().kind == Tok::Comma) {
      lex_.take();
      out.push_back(parse_signed_number(what));
    }
    return out;
  }

  double parse_signed_number(const char* what) {
    double sign = 1.0;
    if (lex_.peek().kind == Tok::Minus) {
      lex_.take();
      sign = -1.0;
    } else if (lex_.peek().kind == Tok::Plus) {
      lex_.take();
    }
    const Token t = lex_.take();
    if (t.kind != Tok::Number)
      throw SyntaxError(std::string("expected number for ") + what, t.line,
                        t.col);
    return sign * parse_number_text(t);
  }

  // Like parse_signed_number but admits the 'inf' keyword.
  double parse_extended_number(const char* what) {
    double sign = 1.0;
    if (lex_.peek().kind == Tok::Minus) {
      lex_.take();
      sign = -1.0;
    } else if (lex_.peek().kind == Tok::Plus) {
      lex_.take();
    }
    if (lex_.peek().kind == Tok::Ident && lex_.peek().text == "inf") {
      lex_.take();
      return sign * std::numeric_limits<double>::infinity();
    }
    const Token t = lex_.take();
    if (t.kind != Tok::Number)
      throw SyntaxError(std::string("expected number for ") + what, t.line,
                        t.col);
    return sign * parse_number_text(t);
  }

  std::int64_t parse_int(const char* what) {
    double sign = 1.0;
    if (lex_.peek().kind == Tok::Minus) {
      lex_.take();
      sign = -1.0;
    }
    const Token t = lex_.take();
    if (t.kind != Tok::Number)
      throw SyntaxError(std::string("expected integer for ") + what, t.line,
                        t.col);
    std::int64_t v = 0;
    auto res =
        std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (res.ec != std::errc{} || res.ptr != t.text.data() + t.text.size())
      throw SyntaxError(std::string("expected integer for ") + what, t.line,
                        t.col);
    v = static_cast<std::int64_t>(sign) * v;
    if (v < 0)
      throw SyntaxError(std::string(what) + " must be non-negative", t.line,
                        t.col);
    return v;
  }

  double parse_number_text(const Token& t) {
    double v = 0.0;
    auto res =
        std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (res.ec != std::errc{} || res.ptr != t.text.data() + t.text.size())
      throw SyntaxError("malformed number '" + t.text + "'", t.line, t.col);
    return v;
  }

  void check_dim(int dim0) {
    if (dim0 >= n_)
      throw DimensionError("region constrains dimension x" +
                               std::to_string(dim0 + 1) +
                               " beyond signal dimension " +
                               std::to_string(n_),
                           lex_.peek().line, lex_.peek().col);
  }

  void expect(Tok kind, const char* what) {
    const Token t = lex_.take();
    if (t.kind != kind)
      throw SyntaxError(std::string("expected ") + what + ", got '" + t.text +
                            "'",
                        t.line, t.col);
  }

  Lexer lex_;
  int n_;
};

}  // namespace

FormulaPtr parse_spec(const std::string& text, int n) {
  return Parser(text, n).parse();
}

}  // namespace strmon
