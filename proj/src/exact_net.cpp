#include "cgsf/exact_net.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

#include "cgsf/errors.hpp"

namespace cgsf {

ExactNet::ExactNet(std::vector<AsymptoticTerm> terms) {
  std::stable_sort(terms.begin(), terms.end(),
                   [](const AsymptoticTerm& a, const AsymptoticTerm& b) { return a.expo < b.expo; });
  for (const auto& t : terms) {
    if (!std::isfinite(t.coeff) || !std::isfinite(t.expo))
      throw PreconditionError("exact net terms must be finite");
    if (!terms_.empty() && terms_.back().expo == t.expo) {
      terms_.back().coeff += t.coeff;
    } else {
      terms_.push_back(t);
    }
  }
  std::erase_if(terms_, [](const AsymptoticTerm& t) { return t.coeff == 0.0; });
}

ExactNet ExactNet::monomial(double c, double expo) { return ExactNet({{c, expo}}); }

double ExactNet::leading_exponent() const {
  return terms_.empty() ? std::numeric_limits<double>::infinity() : terms_.front().expo;
}

double ExactNet::leading_coeff() const { return terms_.empty() ? 0.0 : terms_.front().coeff; }

double ExactNet::eval(double eps) const { return eval_log(std::log(eps)).to_double(); }

LogReal ExactNet::eval_log(double log_eps) const {
  LogReal sum;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    sum = sum + LogReal(it->coeff > 0 ? 1 : -1, std::log(std::fabs(it->coeff)) + it->expo * log_eps);
  }
  return sum;
}

ExactNet ExactNet::operator-() const {
  ExactNet r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

ExactNet operator+(const ExactNet& a, const ExactNet& b) {
  std::vector<AsymptoticTerm> all(a.terms_);
  all.insert(all.end(), b.terms_.begin(), b.terms_.end());
  return ExactNet(std::move(all));
}

ExactNet operator-(const ExactNet& a, const ExactNet& b) { return a + (-b); }

ExactNet operator*(const ExactNet& a, const ExactNet& b) {
  std::vector<AsymptoticTerm> all;
  all.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) all.push_back({s.coeff * t.coeff, s.expo + t.expo});
  return ExactNet(std::move(all));
}

ExactNet ExactNet::pow(unsigned n) const {
  ExactNet result = constant(1.0);
  ExactNet base = *this;
  while (n > 0) {
    if (n & 1u) result = result * base;
    base = base * base;
    n >>= 1u;
  }
  return result;
}

namespace {

class ExactParser {
 public:
  explicit ExactParser(std::string_view s) : s_(s) {}

  ExactNet parse() {
    ExactNet x = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return x;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExactNet expr() {
    ExactNet acc = term();
    for (;;) {
      if (accept('+')) acc = acc + term();
      else if (accept('-')) acc = acc - term();
      else return acc;
    }
  }

  ExactNet term() {
    ExactNet acc = factor();
    for (;;) {
      if (accept('*')) {
        acc = acc * factor();
      } else if (accept('/')) {
        std::size_t at = pos_;
        ExactNet d = factor();
        if (!d.is_monomial()) throw ParseError("exact division needs a single-term divisor", at);
        const auto t = d.terms().front();
        acc = acc * ExactNet::monomial(1.0 / t.coeff, -t.expo);
      } else {
        return acc;
      }
    }
  }

  ExactNet factor() {
    if (accept('-')) return -factor();
    if (accept('+')) return factor();
    ExactNet base = primary();
    if (!accept('^')) return base;
    std::size_t at = pos_;
    double p = exponent();
    if (base.is_monomial()) {
      const auto t = base.terms().front();
      if (t.coeff < 0 && p != std::floor(p))
        throw ParseError("fractional power of a negative coefficient", at);
      return ExactNet::monomial(std::pow(t.coeff, p), t.expo * p);
    }
    if (base.is_zero() && p > 0) return base;
    if (p < 0 || p != std::floor(p) || p > 64)
      throw ParseError("a sum can only be raised to a natural power", at);
    return base.pow(static_cast<unsigned>(p));
  }

  double exponent() {
    bool paren = accept('(');
    double sign = 1.0;
    if (accept('-')) sign = -1.0;
    else accept('+');
    double v = number();
    if (paren && !accept(')')) fail("expected ')'");
    return sign * v;
  }

  ExactNet primary() {
    skip();
    if (accept('(')) {
      ExactNet inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (s_.substr(pos_, 3) == "eps") {
      pos_ += 3;
      return ExactNet::monomial(1.0, 1.0);
    }
    return ExactNet::constant(number());
  }

  double number() {
    skip();
    const char* begin = s_.data() + pos_;
    const char* end = s_.data() + s_.size();
    std::size_t len = 0;
    while (begin + len < end && (std::isdigit(static_cast<unsigned char>(begin[len])) || begin[len] == '.'))
      ++len;
    if (len == 0) fail("expected a number or 'eps'");
    // Optional decimal exponent such as 1e-3.
    if (begin + len < end && (begin[len] == 'e' || begin[len] == 'E') &&
        !(begin + len + 1 < end && begin[len + 1] == 'p')) {
      std::size_t k = len + 1;
      if (begin + k < end && (begin[k] == '+' || begin[k] == '-')) ++k;
      if (begin + k < end && std::isdigit(static_cast<unsigned char>(begin[k]))) {
        while (begin + k < end && std::isdigit(static_cast<unsigned char>(begin[k]))) ++k;
        len = k;
      }
    }
    std::string token(begin, len);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      fail("malformed number");
    }
    if (used != token.size()) fail("malformed number");
    pos_ += len;
    return v;
  }
};

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

ExactNet parse_exact_net(std::string_view text) { return ExactParser(text).parse(); }

std::string to_string(const ExactNet& x) {
  if (x.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : x.terms()) {
    double c = t.coeff;
    if (!first) {
      out += c < 0 ? " - " : " + ";
      c = std::fabs(c);
    }
    first = false;
    if (t.expo == 0.0) {
      out += format_double(c);
      continue;
    }
    if (c == -1.0) out += "-";
    else if (c != 1.0) out += format_double(c) + "*";
    out += "eps";
    if (t.expo != 1.0) out += "^" + format_double(t.expo);
  }
  return out;
}

}  // namespace cgsf
