#include "soergel/poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "soergel/linalg.hpp"

namespace soergel {

namespace {

void check_var(int i) {
  if (i < 1 || i > kMaxVars) throw std::invalid_argument("variable index x" + std::to_string(i) + " out of range");
}

}  // namespace

Monomial Monomial::var(int i, int power) {
  check_var(i);
  if (power < 0 || power > 255) throw std::invalid_argument("monomial exponent out of range");
  Monomial m;
  m.e[i - 1] = static_cast<std::uint8_t>(power);
  return m;
}

int Monomial::degree() const {
  int d = 0;
  for (auto v : e) d += v;
  return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial m;
  for (int k = 0; k < kMaxVars; ++k) {
    int v = e[k] + o.e[k];
    if (v > 255) throw std::overflow_error("monomial exponent overflow");
    m.e[k] = static_cast<std::uint8_t>(v);
  }
  return m;
}

std::string Monomial::str() const {
  std::string s;
  for (int k = 0; k < kMaxVars; ++k) {
    if (!e[k]) continue;
    if (!s.empty()) s += "*";
    s += "x" + std::to_string(k + 1);
    if (e[k] > 1) s += "^" + std::to_string(e[k]);
  }
  return s.empty() ? "1" : s;
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  for (int k = 0; k < kMaxVars; ++k)
    if (a.e[k] != b.e[k]) return a.e[k] < b.e[k];
  return false;
}

size_t MonomialHash::operator()(const Monomial& m) const {
  size_t h = 1469598103934665603ULL;
  for (auto v : m.e) h = (h ^ v) * 1099511628211ULL;
  return h;
}

Poly::Poly(long c) {
  if (c != 0) t_.emplace_back(Monomial{}, mpq_class(c));
}

Poly::Poly(const mpq_class& c) {
  if (c != 0) t_.emplace_back(Monomial{}, c);
}

Poly Poly::var(int i) { return monomial(Monomial::var(i)); }

Poly Poly::monomial(const Monomial& m, const mpq_class& c) {
  Poly p;
  if (c != 0) p.t_.emplace_back(m, c);
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return GrlexLess{}(a.first, b.first); });
  Poly p;
  for (auto& tm : terms) {
    if (!p.t_.empty() && p.t_.back().first == tm.first) {
      p.t_.back().second += tm.second;
    } else {
      if (!p.t_.empty() && p.t_.back().second == 0) p.t_.pop_back();
      p.t_.push_back(std::move(tm));
    }
  }
  if (!p.t_.empty() && p.t_.back().second == 0) p.t_.pop_back();
  return p;
}

mpq_class Poly::constant_term() const { return coeff(Monomial{}); }

mpq_class Poly::coeff(const Monomial& m) const {
  auto it = std::lower_bound(t_.begin(), t_.end(), m, [](const Term& a, const Monomial& b) { return GrlexLess{}(a.first, b); });
  if (it != t_.end() && it->first == m) return it->second;
  return 0;
}

int Poly::degree() const { return t_.empty() ? -1 : t_.back().first.degree(); }

bool Poly::is_homogeneous() const { return t_.empty() || t_.front().first.degree() == t_.back().first.degree(); }

Poly Poly::homogeneous_part(int d) const {
  Poly p;
  for (const auto& tm : t_)
    if (tm.first.degree() == d) p.t_.push_back(tm);
  return p;
}

int Poly::max_var() const {
  int mv = 0;
  for (const auto& [m, c] : t_)
    for (int k = kMaxVars; k > mv; --k)
      if (m.e[k - 1]) {
        mv = k;
        break;
      }
  return mv;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.t_.empty()) return *this;
  if (t_.empty()) return *this = o;
  std::vector<Term> out;
  out.reserve(t_.size() + o.t_.size());
  size_t i = 0, j = 0;
  GrlexLess less;
  while (i < t_.size() || j < o.t_.size()) {
    if (j == o.t_.size() || (i < t_.size() && less(t_[i].first, o.t_[j].first))) {
      out.push_back(std::move(t_[i++]));
    } else if (i == t_.size() || less(o.t_[j].first, t_[i].first)) {
      out.push_back(o.t_[j++]);
    } else {
      mpq_class v = t_[i].second + o.t_[j].second;
      if (v != 0) out.emplace_back(t_[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  t_ = std::move(out);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& tm : p.t_) tm.second = -tm.second;
  return p;
}

Poly& Poly::operator*=(const mpq_class& c) {
  if (c == 0) {
    t_.clear();
    return *this;
  }
  for (auto& tm : t_) tm.second *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.t_.empty() || b.t_.empty()) return Poly();
  if (a.t_.size() == 1 && a.t_[0].first == Monomial{}) return a.t_[0].second * b;
  if (b.t_.size() == 1 && b.t_[0].first == Monomial{}) return b.t_[0].second * a;
  std::vector<Poly::Term> prod;
  prod.reserve(a.t_.size() * b.t_.size());
  for (const auto& [ma, ca] : a.t_)
    for (const auto& [mb, cb] : b.t_) prod.emplace_back(ma * mb, ca * cb);
  return Poly::from_terms(std::move(prod));
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

std::string Poly::str() const {
  if (t_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    const auto& [m, c] = *it;
    mpq_class mag = abs(c);
    if (first) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    first = false;
    bool unit = m == Monomial{};
    if (unit) {
      s += mag.get_str();
    } else if (mag == 1) {
      s += m.str();
    } else {
      s += mag.get_str() + "*" + m.str();
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Parsing: expr = term {(+|-) term}, term = factor {* factor},
// factor = [-] atom [^ int], atom = rational | x<int> | ( expr ).

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : s_(text) {}

  Poly parse() {
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    throw std::invalid_argument("bad polynomial '" + std::string(s_) + "': " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool eat(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  std::string digits() {
    skip();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  Poly expr() {
    Poly p;
    bool first = true;
    while (true) {
      skip();
      int sign = 1;
      if (eat('+')) {
      } else if (eat('-')) {
        sign = -1;
      } else if (!first) {
        break;
      }
      first = false;
      Poly t = term();
      if (sign < 0) t = -t;
      p += t;
      skip();
      if (pos_ >= s_.size() || (s_[pos_] != '+' && s_[pos_] != '-')) break;
    }
    return p;
  }

  Poly term() {
    Poly p = factor();
    while (true) {
      skip();
      if (eat('*')) {
        p *= factor();
      } else if (pos_ < s_.size() && (s_[pos_] == 'x' || s_[pos_] == '(')) {
        p *= factor();  // implicit product such as 2x1 or 3(x1 + x2)
      } else {
        break;
      }
    }
    return p;
  }

  Poly factor() {
    skip();
    if (eat('-')) return -factor();
    Poly base = atom();
    if (eat('^')) {
      std::string d = digits();
      if (d.empty()) fail("missing exponent");
      int e = std::stoi(d);
      if (e > 255) fail("exponent too large");
      Poly r = 1;
      for (int k = 0; k < e; ++k) r *= base;
      return r;
    }
    return base;
  }

  Poly atom() {
    skip();
    if (eat('(')) {
      Poly p = expr();
      if (!eat(')')) fail("missing ')'");
      return p;
    }
    if (eat('x')) {
      std::string d = digits();
      if (d.empty()) fail("variable needs an index");
      int i = std::stoi(d);
      if (i < 1 || i > kMaxVars) fail("variable index out of range");
      return Poly::var(i);
    }
    std::string num = digits();
    if (num.empty()) fail(pos_ < s_.size() ? "unexpected '" + std::string(1, s_[pos_]) + "'" : "unexpected end");
    if (pos_ < s_.size() && s_[pos_] == '/' && pos_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
      ++pos_;
      std::string den = digits();
      mpz_class top(num), bottom(den);
      if (bottom == 0) fail("division by zero");
      mpq_class q(top, bottom);
      q.canonicalize();
      return Poly(q);
    }
    return Poly(mpq_class(mpz_class(num)));
  }

  std::string_view s_;
  size_t pos_ = 0;
};

}  // namespace

Poly Poly::parse(std::string_view text) {
  bool blank = std::all_of(text.begin(), text.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
  if (blank) throw std::invalid_argument("empty polynomial");
  return PolyParser(text).parse();
}

// ---------------------------------------------------------------------------

Poly act(const Perm& w, const Poly& f) {
  std::vector<Poly::Term> out;
  out.reserve(f.terms().size());
  for (const auto& [m, c] : f.terms()) {
    Monomial r = m;
    for (int i = 1; i <= w.size(); ++i) r.e[w(i) - 1] = m.e[i - 1];
    out.emplace_back(r, c);
  }
  return Poly::from_terms(std::move(out));
}

Poly swap_vars(int i, const Poly& f) {
  check_var(i + 1);
  std::vector<Poly::Term> out;
  out.reserve(f.terms().size());
  for (const auto& [m, c] : f.terms()) {
    Monomial r = m;
    std::swap(r.e[i - 1], r.e[i]);
    out.emplace_back(r, c);
  }
  return Poly::from_terms(std::move(out));
}

Poly demazure(int i, const Poly& f) {
  check_var(i + 1);
  // Monomial by monomial: for a > b,
  // (x^a y^b - x^b y^a)/(x - y) = (xy)^b * sum_{k=0}^{a-b-1} x^k y^{a-b-1-k}.
  std::vector<Poly::Term> out;
  for (const auto& [m, c] : f.terms()) {
    int a = m.e[i - 1], b = m.e[i];
    if (a == b) continue;
    mpq_class sign = a > b ? 1 : -1;
    int lo = std::min(a, b), gap = std::abs(a - b);
    for (int k = 0; k < gap; ++k) {
      Monomial r = m;
      r.e[i - 1] = static_cast<std::uint8_t>(lo + k);
      r.e[i] = static_cast<std::uint8_t>(lo + gap - 1 - k);
      out.emplace_back(r, sign * c);
    }
  }
  return Poly::from_terms(std::move(out));
}

Poly p_part(int i, const Poly& f) { return f - Poly::var(i) * demazure(i, f); }

Poly quotient_reduce(const Poly& f, int n) {
  check_var(n + 1);
  const int last = n;  // zero-based index of x_{n+1}
  thread_local std::map<std::pair<int, int>, Poly> powers;
  auto power = [&](int k) -> const Poly& {
    auto key = std::make_pair(n, k);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    Poly s;
    for (int i = 1; i <= n; ++i) s -= Poly::var(i);
    Poly r = 1;
    for (int j = 0; j < k; ++j) r *= s;
    return powers.emplace(key, std::move(r)).first->second;
  };
  Poly out;
  std::vector<Poly::Term> plain;
  for (const auto& [m, c] : f.terms()) {
    int k = m.e[last];
    if (k == 0) {
      plain.emplace_back(m, c);
      continue;
    }
    Monomial rest = m;
    rest.e[last] = 0;
    out += Poly::monomial(rest, c) * power(k);
  }
  return out + Poly::from_terms(std::move(plain));
}

Poly Ring::reduce(const Poly& f) const { return quotient ? quotient_reduce(f, n) : f; }

// ---------------------------------------------------------------------------

ParabolicSubgroup ParabolicSubgroup::single(int i) {
  check_var(i + 1);
  ParabolicSubgroup w;
  w.kind_ = Kind::Single;
  w.a_ = i;
  w.b_ = 0;
  w.basis_ = {Monomial{}, Monomial::var(i)};
  return w;
}

ParabolicSubgroup ParabolicSubgroup::pair(int i, int j) {
  if (i == j) throw std::invalid_argument("parabolic pair needs two different colors");
  if (i > j) std::swap(i, j);
  check_var(j + 1);
  check_var(i);
  ParabolicSubgroup w;
  w.a_ = i;
  w.b_ = j;
  if (j - i == 1) {
    w.kind_ = Kind::Adjacent;
    Monomial a = Monomial::var(i), b = Monomial::var(i + 1);
    w.basis_ = {Monomial{}, a, b, a * a, a * b, a * a * b};
  } else {
    w.kind_ = Kind::Distant;
    Monomial a = Monomial::var(i), b = Monomial::var(j);
    w.basis_ = {Monomial{}, a, b, a * b};
  }
  return w;
}

std::vector<int> ParabolicSubgroup::generators() const {
  if (kind_ == Kind::Single) return {a_};
  return {a_, b_};
}

bool ParabolicSubgroup::is_invariant(const Poly& f) const {
  for (int s : generators())
    if (!(swap_vars(s, f) == f)) return false;
  return true;
}

int ParabolicSubgroup::max_var() const { return (kind_ == Kind::Single ? a_ : b_) + 1; }

std::string ParabolicSubgroup::str() const {
  if (kind_ == Kind::Single) return std::to_string(a_);
  return "w{" + std::to_string(a_) + "," + std::to_string(b_) + "}";
}

std::vector<Monomial> monomials_of_degree(int nvars, int degree) {
  std::vector<Monomial> out;
  Monomial cur;
  // Fill exponents left to right; the recursion emits in descending lex order.
  auto rec = [&](auto&& self, int var, int left) -> void {
    if (var == nvars - 1) {
      cur.e[var] = static_cast<std::uint8_t>(left);
      out.push_back(cur);
      cur.e[var] = 0;
      return;
    }
    for (int k = left; k >= 0; --k) {
      cur.e[var] = static_cast<std::uint8_t>(k);
      self(self, var + 1, left - k);
    }
    cur.e[var] = 0;
  };
  if (nvars <= 0) {
    if (degree == 0) out.push_back(Monomial{});
    return out;
  }
  rec(rec, 0, degree);
  std::reverse(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Decomposition over invariants.
//
// Only the variables moved by W matter: a monomial splits into a local part
// in those variables times a W-invariant spectator. Local variables are
// relabelled 1..k so the cache is shared across positions.

namespace {

struct LocalPattern {
  std::vector<int> block_sizes;  // blocks of consecutive local variables
  std::vector<Monomial> basis;   // in local variables
};

const LocalPattern& pattern_for(ParabolicSubgroup::Kind kind) {
  static const LocalPattern single{{2}, {Monomial{}, Monomial::var(1)}};
  static const LocalPattern distant{{2, 2}, {Monomial{}, Monomial::var(1), Monomial::var(3), Monomial::var(1) * Monomial::var(3)}};
  static const LocalPattern adjacent{{3},
                                     {Monomial{}, Monomial::var(1), Monomial::var(2), Monomial::var(1, 2),
                                      Monomial::var(1) * Monomial::var(2), Monomial::var(1, 2) * Monomial::var(2)}};
  switch (kind) {
    case ParabolicSubgroup::Kind::Single: return single;
    case ParabolicSubgroup::Kind::Distant: return distant;
    default: return adjacent;
  }
}

std::vector<int> local_vars(const ParabolicSubgroup& W) {
  switch (W.kind()) {
    case ParabolicSubgroup::Kind::Single: return {W.first(), W.first() + 1};
    case ParabolicSubgroup::Kind::Distant: return {W.first(), W.first() + 1, W.second(), W.second() + 1};
    default: return {W.first(), W.first() + 1, W.first() + 2};
  }
}

void partitions(int m, int max_parts, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (m == 0) {
    out.push_back(cur);
    return;
  }
  if (max_parts == 0) return;
  for (int p = std::min(m, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions(m - p, max_parts - 1, p, cur, out);
    cur.pop_back();
  }
}

// Monomial symmetric functions of degree m in `size` variables starting at
// local index `offset` (zero-based).
std::vector<Poly> monomial_symmetric(int m, int size, int offset) {
  std::vector<std::vector<int>> parts;
  std::vector<int> cur;
  partitions(m, size, m, cur, parts);
  std::vector<Poly> out;
  for (auto lam : parts) {
    lam.resize(size, 0);
    std::sort(lam.begin(), lam.end());
    std::vector<Poly::Term> terms;
    do {
      Monomial mono;
      for (int k = 0; k < size; ++k) mono.e[offset + k] = static_cast<std::uint8_t>(lam[k]);
      terms.emplace_back(mono, mpq_class(1));
    } while (std::next_permutation(lam.begin(), lam.end()));
    out.push_back(Poly::from_terms(std::move(terms)));
  }
  return out;
}

// Basis of the local invariants of degree m: products over blocks.
std::vector<Poly> local_invariants(const LocalPattern& pat, int m) {
  std::vector<Poly> acc{Poly(1)};
  int offset = 0;
  std::vector<std::vector<Poly>> per_block_cache;
  // Distribute degree m over the blocks.
  std::vector<Poly> out;
  auto rec = [&](auto&& self, size_t block, int left, int off, const Poly& prod) -> void {
    if (block == pat.block_sizes.size()) {
      if (left == 0) out.push_back(prod);
      return;
    }
    int size = pat.block_sizes[block];
    int lo = block + 1 == pat.block_sizes.size() ? left : 0;
    for (int k = lo; k <= left; ++k)
      for (const Poly& q : monomial_symmetric(k, size, off)) self(self, block + 1, left - k, off + size, prod * q);
  };
  rec(rec, 0, m, offset, acc[0]);
  return out;
}

struct DegreeTable {
  std::unordered_map<Monomial, std::vector<Poly>, MonomialHash> coords;  // local monomial -> per basis element
};

const DegreeTable& degree_table(ParabolicSubgroup::Kind kind, int D) {
  thread_local std::map<std::pair<int, int>, DegreeTable> cache;
  auto key = std::make_pair(static_cast<int>(kind), D);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  const LocalPattern& pat = pattern_for(kind);
  int nloc = 0;
  for (int s : pat.block_sizes) nloc += s;
  std::vector<Monomial> monos = monomials_of_degree(nloc, D);
  std::unordered_map<Monomial, int, MonomialHash> row_of;
  for (size_t r = 0; r < monos.size(); ++r) row_of[monos[r]] = static_cast<int>(r);

  // Unknown k: basis element basis[b] times invariant inv.
  struct Unknown {
    int b;
    Poly inv;
  };
  std::vector<Unknown> unknowns;
  for (size_t b = 0; b < pat.basis.size(); ++b) {
    int m = D - pat.basis[b].degree();
    if (m < 0) continue;
    for (Poly& inv : local_invariants(pat, m)) unknowns.push_back({static_cast<int>(b), std::move(inv)});
  }
  if (unknowns.size() != monos.size()) throw std::logic_error("local invariant basis has the wrong size");
  const size_t N = monos.size();
  DenseMatrix A(N, std::vector<mpq_class>(N, 0));
  for (size_t k = 0; k < N; ++k) {
    Poly col = Poly::monomial(pat.basis[unknowns[k].b]) * unknowns[k].inv;
    for (const auto& [m, c] : col.terms()) A[row_of.at(m)][k] = c;
  }
  auto inv = dense_inverse(std::move(A));
  if (!inv) throw std::logic_error("basis over invariants is not free in this degree");

  DegreeTable table;
  for (size_t r = 0; r < N; ++r) {
    // Column r of A^-1 expresses the monomial monos[r].
    std::vector<Poly> coords(pat.basis.size());
    for (size_t k = 0; k < N; ++k) {
      const mpq_class& c = (*inv)[k][r];
      if (c != 0) coords[unknowns[k].b] += c * unknowns[k].inv;
    }
    table.coords.emplace(monos[r], std::move(coords));
  }
  return cache.emplace(key, std::move(table)).first->second;
}

}  // namespace

std::vector<Poly> decompose_invariant(const Poly& f, const ParabolicSubgroup& W) {
  const std::vector<int> vars = local_vars(W);
  const size_t nb = W.basis().size();
  std::vector<std::vector<Poly::Term>> acc(nb);
  for (const auto& [m, c] : f.terms()) {
    Monomial local, spectator = m;
    int D = 0;
    for (size_t k = 0; k < vars.size(); ++k) {
      local.e[k] = m.e[vars[k] - 1];
      spectator.e[vars[k] - 1] = 0;
      D += local.e[k];
    }
    const auto& coords = degree_table(W.kind(), D).coords.at(local);
    for (size_t b = 0; b < nb; ++b) {
      for (const auto& [lm, lc] : coords[b].terms()) {
        Monomial g = spectator;
        for (size_t k = 0; k < vars.size(); ++k) g.e[vars[k] - 1] = lm.e[k];
        acc[b].emplace_back(g, lc * c);
      }
    }
  }
  std::vector<Poly> out(nb);
  for (size_t b = 0; b < nb; ++b) out[b] = Poly::from_terms(std::move(acc[b]));
  return out;
}

std::vector<Poly> decompose_invariant(const Poly& f, const ParabolicSubgroup& W, const Ring& ring) {
  std::vector<Poly> out = decompose_invariant(f, W);
  if (ring.quotient)
    for (Poly& g : out) g = ring.reduce(g);
  return out;
}

}  // namespace soergel
