#include "soergel/laurent.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>

namespace soergel {

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Laurent coefficient overflow");
  return r;
}

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Laurent coefficient overflow");
  return r;
}

LaurentPoly::LaurentPoly(Coeff c) {
  if (c != 0) c_[0] = c;
}

LaurentPoly LaurentPoly::monomial(Coeff c, int exp) {
  LaurentPoly p;
  if (c != 0) p.c_[exp] = c;
  return p;
}

LaurentPoly::Coeff LaurentPoly::coeff(int exp) const {
  auto it = c_.find(exp);
  return it == c_.end() ? 0 : it->second;
}

int LaurentPoly::min_exp() const {
  if (c_.empty()) throw std::logic_error("min_exp of zero Laurent polynomial");
  return c_.begin()->first;
}

int LaurentPoly::max_exp() const {
  if (c_.empty()) throw std::logic_error("max_exp of zero Laurent polynomial");
  return c_.rbegin()->first;
}

void LaurentPoly::add_term(int exp, Coeff c) {
  if (c == 0) return;
  auto [it, inserted] = c_.try_emplace(exp, c);
  if (!inserted) {
    it->second = checked_add(it->second, c);
    if (it->second == 0) c_.erase(it);
  }
}

LaurentPoly LaurentPoly::bar() const {
  LaurentPoly r;
  for (auto [e, c] : c_) r.c_[-e] = c;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (auto [e, c] : o.c_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (auto [e, c] : o.c_) {
    if (c == std::numeric_limits<Coeff>::min()) throw std::overflow_error("Laurent coefficient overflow");
    add_term(e, -c);
  }
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
  LaurentPoly r;
  for (auto [e1, c1] : c_)
    for (auto [e2, c2] : o.c_) {
      long long e = static_cast<long long>(e1) + e2;
      if (e > std::numeric_limits<int>::max() || e < std::numeric_limits<int>::min())
        throw std::overflow_error("Laurent exponent overflow");
      r.add_term(static_cast<int>(e), checked_mul(c1, c2));
    }
  *this = std::move(r);
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r;
  return r -= *this;
}

std::string LaurentPoly::str() const {
  if (c_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    auto [e, c] = *it;
    unsigned long long mag = c < 0 ? 0ULL - static_cast<unsigned long long>(c) : c;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    if (e == 0) {
      out += std::to_string(mag);
      continue;
    }
    if (mag != 1) out += std::to_string(mag);
    out += "t";
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

namespace {

std::string strip_spaces(std::string_view s) {
  std::string r;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) r += ch;
  return r;
}

// True when s[0] == '(' is matched by the final character.
bool wrapped_in_parens(const std::string& s) {
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') return false;
  int depth = 0;
  for (size_t k = 0; k < s.size(); ++k) {
    if (s[k] == '(') ++depth;
    if (s[k] == ')') --depth;
    if (depth == 0 && k + 1 < s.size()) return false;
  }
  return true;
}

}  // namespace

LaurentPoly LaurentPoly::parse(std::string_view text) {
  for (size_t k = 0; k + 1 < text.size(); ++k) {
    if (!std::isalnum(static_cast<unsigned char>(text[k]))) continue;
    size_t j = k + 1;
    while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > k + 1 && j < text.size() && std::isalnum(static_cast<unsigned char>(text[j])))
      throw std::invalid_argument("bad Laurent polynomial '" + std::string(text) + "': missing operator");
  }
  std::string s = strip_spaces(text);
  while (wrapped_in_parens(s)) s = s.substr(1, s.size() - 2);
  if (s.empty()) throw std::invalid_argument("empty Laurent polynomial");
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("bad Laurent polynomial '" + std::string(text) + "': " + why);
  };
  LaurentPoly result;
  size_t p = 0;
  auto read_int = [&](long long& v) {
    size_t start = p;
    while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
    if (p == start) return false;
    try {
      v = std::stoll(s.substr(start, p - start));
    } catch (const std::out_of_range&) {
      throw std::overflow_error("Laurent coefficient overflow");
    }
    return true;
  };
  bool first = true;
  while (p < s.size()) {
    long long sign = 1;
    if (s[p] == '+' || s[p] == '-') {
      sign = s[p] == '-' ? -1 : 1;
      ++p;
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    first = false;
    long long coeff = 1;
    bool have_coeff = read_int(coeff);
    int exp = 0;
    bool have_t = false;
    if (p < s.size() && s[p] == '*') {
      if (!have_coeff) fail("dangling '*'");
      ++p;
      if (p >= s.size() || s[p] != 't') fail("expected 't' after '*'");
    }
    if (p < s.size() && s[p] == 't') {
      have_t = true;
      ++p;
      exp = 1;
      if (p < s.size() && s[p] == '^') {
        ++p;
        bool paren = p < s.size() && s[p] == '(';
        if (paren) ++p;
        long long esign = 1;
        if (p < s.size() && (s[p] == '-' || s[p] == '+')) {
          esign = s[p] == '-' ? -1 : 1;
          ++p;
        }
        long long e;
        if (!read_int(e)) fail("missing exponent");
        if (paren) {
          if (p >= s.size() || s[p] != ')') fail("unbalanced exponent parenthesis");
          ++p;
        }
        if (e > 1000000) fail("exponent too large");
        exp = static_cast<int>(esign * e);
      }
    }
    if (!have_coeff && !have_t) fail("expected a term");
    result.add_term(exp, checked_mul(sign, coeff));
  }
  return result;
}

}  // namespace soergel
