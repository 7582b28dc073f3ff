#include "soergel/hecke.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <stdexcept>

namespace soergel {

namespace {

const LaurentPoly& t_squared_minus_one() {
  static const LaurentPoly v = LaurentPoly::t(2) - LaurentPoly(1);
  return v;
}

void check_index(int i, int n) {
  if (i < 1 || i > n) throw std::invalid_argument("generator index " + std::to_string(i) + " outside 1.." + std::to_string(n));
}

// z * T_i using T_w T_s = T_{ws} when l(ws) > l(w), otherwise
// (t^2 - 1) T_w + t^2 T_{ws}.
HeckeElt right_mul_simple(const HeckeElt& z, int i) {
  HeckeElt r(z.n());
  for (const auto& [w, c] : z.terms()) {
    Perm ws = w.times_simple(i);
    if (!w.has_right_descent(i)) {
      r.add_term(ws, c);
    } else {
      r.add_term(w, c * t_squared_minus_one());
      r.add_term(ws, c * LaurentPoly::t(2));
    }
  }
  return r;
}

}  // namespace

HeckeElt HeckeElt::one(int n) { return T(Perm::identity(n + 1)); }

HeckeElt HeckeElt::T(const Perm& w) {
  if (w.size() < 2) throw std::invalid_argument("Hecke algebra needs at least two strands");
  HeckeElt x(w.size() - 1);
  x.add_term(w, 1);
  return x;
}

HeckeElt HeckeElt::T_simple(int i, int n) {
  check_index(i, n);
  return T(Perm::simple(i, n + 1));
}

HeckeElt HeckeElt::b(int i, int n) {
  return LaurentPoly::t(-1) * (T_simple(i, n) + one(n));
}

HeckeElt HeckeElt::scalar(const LaurentPoly& c, int n) { return c * one(n); }

LaurentPoly HeckeElt::coeff(const Perm& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? LaurentPoly() : it->second;
}

void HeckeElt::add_term(const Perm& w, const LaurentPoly& c) {
  if (w.size() != n_ + 1) throw std::invalid_argument("permutation " + w.str() + " is not in S_" + std::to_string(n_ + 1));
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

HeckeElt& HeckeElt::operator+=(const HeckeElt& o) {
  if (o.n_ != n_) throw std::invalid_argument("adding Hecke elements of different rank");
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

HeckeElt& HeckeElt::operator-=(const HeckeElt& o) {
  if (o.n_ != n_) throw std::invalid_argument("subtracting Hecke elements of different rank");
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

HeckeElt operator*(const LaurentPoly& c, const HeckeElt& x) {
  HeckeElt r(x.n());
  for (const auto& [w, a] : x.terms()) r.add_term(w, c * a);
  return r;
}

HeckeElt mul_T(const HeckeElt& x, const HeckeElt& y) {
  if (x.n() != y.n()) throw std::invalid_argument("multiplying Hecke elements of different rank");
  HeckeElt result(x.n());
  for (const auto& [v, b] : y.terms()) {
    HeckeElt z = x;
    for (int j : v.reduced_word()) z = right_mul_simple(z, j);
    result += b * z;
  }
  return result;
}

HeckeElt b_monomial(const std::vector<int>& seq, int n) {
  HeckeElt r = HeckeElt::one(n);
  for (int i : seq) r = r * HeckeElt::b(i, n);
  return r;
}

HeckeElt bar(const HeckeElt& x) {
  const int n = x.n();
  // bar(T_i) = T_i^-1 = t^-2 T_i + t^-2 - 1, and bar is multiplicative.
  const HeckeElt one = HeckeElt::one(n);
  HeckeElt r(n);
  for (const auto& [w, a] : x.terms()) {
    HeckeElt img = one;
    for (int j : w.reduced_word()) {
      img = LaurentPoly::t(-2) * right_mul_simple(img, j) + (LaurentPoly::t(-2) - LaurentPoly(1)) * img;
    }
    r += a.bar() * img;
  }
  return r;
}

HeckeElt omega(const HeckeElt& x) {
  const int n = x.n();
  // From omega(b_j) = b_j and antilinearity: T_j = t b_j - 1, so
  // omega(T_j) = t^-1 b_j - 1. Antimultiplicativity reverses reduced words.
  std::vector<HeckeElt> omega_T;
  for (int j = 1; j <= n; ++j)
    omega_T.push_back(LaurentPoly::t(-1) * HeckeElt::b(j, n) - HeckeElt::one(n));
  HeckeElt r(n);
  for (const auto& [w, a] : x.terms()) {
    std::vector<int> word = w.reduced_word();
    HeckeElt img = HeckeElt::one(n);
    for (auto it = word.rbegin(); it != word.rend(); ++it) img = img * omega_T[*it - 1];
    r += a.bar() * img;
  }
  return r;
}

LaurentPoly tau(const HeckeElt& x) { return x.coeff(Perm::identity(x.n() + 1)); }

LaurentPoly epsilon(const HeckeElt& x) { return tau(omega(x)).bar(); }

LaurentPoly pairing(const HeckeElt& x, const HeckeElt& y) { return tau(x * omega(y)).bar(); }

std::string HeckeElt::str() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Perm, LaurentPoly>> items(terms_.begin(), terms_.end());
  std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    int la = a.first.length(), lb = b.first.length();
    if (la != lb) return la > lb;
    return a.first < b.first;
  });
  std::string out;
  for (size_t k = 0; k < items.size(); ++k) {
    const auto& [w, c] = items[k];
    std::string coeff;
    bool negative = false;
    if (c.coeffs().size() == 1) {
      LaurentPoly mag = c;
      if (c.coeffs().begin()->second < 0) {
        negative = true;
        mag = -c;
      }
      if (!(mag == LaurentPoly(1))) coeff = mag.str() + "*";
    } else {
      coeff = "(" + c.str() + ")*";
    }
    if (k == 0)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    out += coeff + "T" + w.str();
  }
  return out;
}

namespace {

std::vector<int> parse_index_list(const std::string& body) {
  std::vector<int> seq;
  if (body.empty()) return seq;
  size_t p = 0;
  while (p <= body.size()) {
    size_t q = body.find(',', p);
    if (q == std::string::npos) q = body.size();
    std::string item = body.substr(p, q - p);
    if (item.empty() || !std::all_of(item.begin(), item.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw std::invalid_argument("bad index '" + item + "'");
    seq.push_back(std::stoi(item));
    p = q + 1;
  }
  return seq;
}

}  // namespace

HeckeElt HeckeElt::parse(std::string_view text, int n) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty Hecke expression");
  // Split into signed terms at top level; '-' right after '^' is an exponent.
  std::vector<std::pair<int, std::string>> parts;
  int depth = 0;
  size_t start = 0;
  int sign = 1;
  if (s[0] == '-' || s[0] == '+') {
    sign = s[0] == '-' ? -1 : 1;
    start = 1;
  }
  for (size_t k = start; k <= s.size(); ++k) {
    char c = k < s.size() ? s[k] : '\0';
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    bool split = k == s.size() || (depth == 0 && (c == '+' || c == '-') && k > start && s[k - 1] != '^' && s[k - 1] != '*');
    if (split) {
      parts.emplace_back(sign, s.substr(start, k - start));
      if (k < s.size()) sign = c == '-' ? -1 : 1;
      start = k + 1;
    }
  }
  HeckeElt r(n);
  for (const auto& [sg, term] : parts) {
    if (term.empty()) throw std::invalid_argument("empty term in Hecke expression");
    size_t pos_T = std::string::npos, pos_b = std::string::npos;
    int d = 0;
    for (size_t k = 0; k < term.size(); ++k) {
      if (term[k] == '(' || term[k] == '[') ++d;
      if (term[k] == ')' || term[k] == ']') --d;
      if (d == 0 && term.compare(k, 2, "T[") == 0 && pos_T == std::string::npos) pos_T = k;
      if (d == 0 && term.compare(k, 2, "b(") == 0 && pos_b == std::string::npos) pos_b = k;
    }
    size_t pos = std::min(pos_T, pos_b);
    std::string coeff_text = pos == std::string::npos ? term : term.substr(0, pos);
    if (!coeff_text.empty() && coeff_text.back() == '*') coeff_text.pop_back();
    LaurentPoly c = coeff_text.empty() ? LaurentPoly(1) : LaurentPoly::parse(coeff_text);
    c = LaurentPoly(sg) * c;
    HeckeElt basis = HeckeElt::one(n);
    if (pos == pos_T && pos != std::string::npos) {
      Perm w = Perm::parse(term.substr(pos + 1));
      if (w.size() != n + 1) throw std::invalid_argument("permutation " + w.str() + " is not in S_" + std::to_string(n + 1));
      basis = HeckeElt::T(w);
    } else if (pos == pos_b && pos != std::string::npos) {
      if (term.back() != ')') throw std::invalid_argument("unterminated b(...)");
      std::vector<int> seq = parse_index_list(term.substr(pos + 2, term.size() - pos - 3));
      for (int i : seq) check_index(i, n);
      basis = b_monomial(seq, n);
    }
    r += c * basis;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Trace evaluation by rewriting.

namespace {

using Word = std::vector<int>;
using Combo = std::map<Word, LaurentPoly>;

struct StepBudget {
  long used = 0;
  long limit = 0;
  void spend(long k) {
    used += k;
    if (used > limit) throw std::runtime_error("trace rewriting exceeded its step bound");
  }
};

Word concat(std::initializer_list<const Word*> parts) {
  Word w;
  for (const Word* p : parts) w.insert(w.end(), p->begin(), p->end());
  return w;
}

// Rewrites a word whose letters are all <= c into a combination of words in
// which c occurs at most once. Only linear identities are used.
Combo reduce_linear(const Word& start, int c, StepBudget& budget) {
  Combo done;
  std::deque<std::pair<Word, LaurentPoly>> work{{start, LaurentPoly(1)}};
  const LaurentPoly quantum2 = LaurentPoly::t(1) + LaurentPoly::t(-1);
  while (!work.empty()) {
    auto [w, coef] = std::move(work.front());
    work.pop_front();
    std::vector<size_t> pos;
    for (size_t k = 0; k < w.size(); ++k)
      if (w[k] == c) pos.push_back(k);
    if (pos.size() <= 1) {
      done[w] += coef;
      continue;
    }
    size_t p = pos[0], q = pos[1];
    Word prefix(w.begin(), w.begin() + p);
    Word middle(w.begin() + p + 1, w.begin() + q);
    Word suffix(w.begin() + q + 1, w.end());
    Combo inner = c > 1 ? reduce_linear(middle, c - 1, budget) : Combo{{middle, LaurentPoly(1)}};
    for (const auto& [u, ucoef] : inner) {
      if (ucoef.is_zero()) continue;
      auto it = std::find(u.begin(), u.end(), c - 1);
      if (it == u.end()) {
        // b_c u b_c = u b_c b_c = (t + t^-1) u b_c
        budget.spend(static_cast<long>(u.size()) + 1);
        Word one{c};
        work.emplace_back(concat({&prefix, &u, &one, &suffix}), coef * ucoef * quantum2);
      } else {
        // b_c u1 b_{c-1} u2 b_c = u1 (b_{c-1} b_c b_{c-1} + b_c - b_{c-1}) u2
        Word u1(u.begin(), it), u2(it + 1, u.end());
        budget.spend(static_cast<long>(u.size()) + 1);
        Word braid{c - 1, c, c - 1}, top{c}, low{c - 1};
        LaurentPoly k = coef * ucoef;
        work.emplace_back(concat({&prefix, &u1, &braid, &u2, &suffix}), k);
        work.emplace_back(concat({&prefix, &u1, &top, &u2, &suffix}), k);
        work.emplace_back(concat({&prefix, &u1, &low, &u2, &suffix}), -k);
      }
    }
  }
  for (auto it = done.begin(); it != done.end();)
    it = it->second.is_zero() ? done.erase(it) : std::next(it);
  return done;
}

}  // namespace

LaurentPoly tau_monomial_by_cycling(const std::vector<int>& seq, int n, long* steps_used) {
  for (int i : seq) check_index(i, n);
  StepBudget budget;
  budget.limit = 10;
  for (size_t k = 0; k < seq.size(); ++k) budget.limit *= 4;
  // Each state is u * S where S is an increasing word of letters larger
  // than every letter of u.
  std::deque<std::tuple<Word, Word, LaurentPoly>> work{{seq, {}, LaurentPoly(1)}};
  LaurentPoly total;
  while (!work.empty()) {
    auto [u, S, coef] = std::move(work.front());
    work.pop_front();
    if (u.empty()) {
      // Increasing word with distinct letters: its T_e coefficient is t^-|S|.
      total += coef * LaurentPoly::t(-static_cast<int>(S.size()));
      continue;
    }
    int c = *std::max_element(u.begin(), u.end());
    long count = std::count(u.begin(), u.end(), c);
    if (count >= 2) {
      for (const auto& [v, vcoef] : reduce_linear(u, c, budget)) work.emplace_back(v, S, coef * vcoef);
      continue;
    }
    // u = p b_c q with q below c - 1 relative to S: q commutes with S and
    // cycles to the front of the trace.
    auto it = std::find(u.begin(), u.end(), c);
    Word p(u.begin(), it), q(it + 1, u.end());
    budget.spend(static_cast<long>(q.size()) * (static_cast<long>(S.size()) + 1) + 1);
    Word nu = concat({&q, &p});
    Word nS{c};
    nS.insert(nS.end(), S.begin(), S.end());
    work.emplace_back(std::move(nu), std::move(nS), coef);
  }
  if (steps_used) *steps_used = budget.used;
  return total;
}

}  // namespace soergel
