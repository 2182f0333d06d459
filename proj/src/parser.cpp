#include "webcat/parser.hpp"

#include <cctype>
#include <sstream>

namespace webcat::diag {

parse_error::parse_error(const std::string& msg, int line, int col)
    : std::runtime_error(msg + " at line " + std::to_string(line) +
                         ", column " + std::to_string(col)),
      line(line),
      col(col) {}

namespace {

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      if (s_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  bool eof() {
    skip_ws();
    return pos_ >= s_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      advance();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c))
      fail(std::string("expected '") + c + "'");
  }

  std::string ident() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      advance();
    if (start == pos_) fail("expected identifier");
    return s_.substr(start, pos_ - start);
  }

  long integer() {
    skip_ws();
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      neg = s_[pos_] == '-';
      advance();
    }
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      advance();
    if (start == pos_) fail("expected integer");
    long v = std::stol(s_.substr(start, pos_ - start));
    return neg ? -v : v;
  }

  Rat rational() {
    Int num(std::to_string(integer()));
    if (accept('/')) {
      Int den(std::to_string(integer()));
      if (den == 0) fail("zero denominator");
      Rat r(num, den);
      r.canonicalize();
      return r;
    }
    return Rat(num);
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw parse_error(msg, line_, col_);
  }

  int line() const { return line_; }
  int col() const { return col_; }

 private:
  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  const std::string& s_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

class Parser {
 public:
  explicit Parser(const std::string& s) : lx_(s) {}

  Morphism morphism() {
    bool neg = lx_.accept('-');
    Morphism m = scaled();
    if (neg) m = m.scaled(-1);
    while (true) {
      if (lx_.accept('+')) {
        m = m + scaled();
      } else if (lx_.peek() == '-') {
        lx_.accept('-');
        m = m - scaled();
      } else {
        break;
      }
    }
    return m;
  }

  Morphism parse_all() {
    Morphism m = morphism();
    if (!lx_.eof()) lx_.fail("unexpected trailing input");
    return m;
  }

 private:
  Morphism scaled() {
    Rat c = 1;
    char p = lx_.peek();
    if (std::isdigit(static_cast<unsigned char>(p))) {
      c = lx_.rational();
      lx_.expect('*');
    }
    return seq().scaled(c);
  }

  Morphism seq() {
    Morphism m = par();
    while (lx_.peek() == ';') {
      int line = lx_.line(), col = lx_.col();
      lx_.accept(';');
      Morphism upper = par();
      if (upper.source() != m.target())
        throw parse_error("boundary mismatch across ';': lower target " +
                              m.target().to_string() + " vs upper source " +
                              upper.source().to_string(),
                          line, col);
      m = compose(upper, m);
    }
    return m;
  }

  Morphism par() {
    Morphism m = prim();
    while (lx_.peek() == '@') {
      lx_.accept('@');
      m = tensor(m, prim());
    }
    return m;
  }

  Morphism prim() {
    if (lx_.accept('(')) {
      Morphism m = morphism();
      lx_.expect(')');
      return m;
    }
    std::string name = lx_.ident();
    lx_.expect('(');
    auto one_arg = [&]() {
      long a = lx_.integer();
      lx_.expect(')');
      return static_cast<int>(a);
    };
    auto two_args = [&]() {
      long a = lx_.integer();
      lx_.expect(',');
      long b = lx_.integer();
      lx_.expect(')');
      return std::pair<int, int>(static_cast<int>(a), static_cast<int>(b));
    };
    try {
      if (name == "id") return m_id(one_arg());
      if (name == "dot") return m_dot(one_arg());
      if (name == "merge") {
        auto [a, b] = two_args();
        return m_merge(a, b);
      }
      if (name == "split") {
        auto [a, b] = two_args();
        return m_split(a, b);
      }
      if (name == "cross") {
        auto [a, b] = two_args();
        return m_cross(a, b);
      }
      if (name == "wdot") {
        auto [a, r] = two_args();
        return m_wdot(a, r);
      }
      if (name == "packet") {
        long a = lx_.integer();
        lx_.expect(',');
        lx_.expect('[');
        std::vector<int> parts;
        parts.push_back(static_cast<int>(lx_.integer()));
        while (lx_.accept(',')) parts.push_back(static_cast<int>(lx_.integer()));
        lx_.expect(']');
        lx_.expect(')');
        return m_packet(static_cast<int>(a), Partition(parts));
      }
    } catch (const invalid_input& e) {
      lx_.fail(e.what());
    }
    lx_.fail("unknown primitive '" + name + "'");
  }

  Lexer lx_;
};

}  // namespace

Morphism parse(const std::string& text) { return Parser(text).parse_all(); }

std::string render(const Morphism& m) {
  if (m.is_zero()) {
    if (m.source() != m.target())
      throw invalid_input("zero morphism with unequal boundaries is not renderable");
    return "0 * " + Diagram::identity(m.source()).to_string();
  }
  std::ostringstream os;
  bool first = true;
  for (auto& [d, c] : m.terms()) {
    Rat cc = c;
    if (first) {
      if (cc < 0) {
        os << "-";
        cc = -cc;
      }
    } else {
      os << (cc < 0 ? " - " : " + ");
      if (cc < 0) cc = -cc;
    }
    first = false;
    if (cc != 1) os << rat_to_string(cc) << " * ";
    os << d.to_string();
  }
  return os.str();
}

}  // namespace webcat::diag
