#include "soergel/bimodule.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <stdexcept>

#include "soergel/linalg.hpp"

namespace soergel {

// ---------------------------------------------------------------------------
// Shape

Shape::Shape(std::vector<ParabolicSubgroup> seps, int shift) : seps_(std::move(seps)), shift_(shift) {
  for (const auto& w : seps_) basis_size_ *= static_cast<size_t>(w.size());
}

Shape Shape::bs(const std::vector<int>& colors) {
  std::vector<ParabolicSubgroup> seps;
  for (int c : colors) seps.push_back(ParabolicSubgroup::single(c));
  return Shape(std::move(seps), -static_cast<int>(colors.size()));
}

Shape Shape::aux(int i, int j) {
  ParabolicSubgroup w = ParabolicSubgroup::pair(i, j);
  return Shape({w}, -w.longest_length());
}

bool Shape::is_bs() const {
  return std::all_of(seps_.begin(), seps_.end(), [](const ParabolicSubgroup& w) { return w.is_single(); });
}

std::vector<int> Shape::colors() const {
  std::vector<int> c;
  for (const auto& w : seps_) {
    if (!w.is_single()) throw std::logic_error("shape " + str() + " has an auxiliary separator");
    c.push_back(w.first());
  }
  return c;
}

int Shape::max_var() const {
  int m = 0;
  for (const auto& w : seps_) m = std::max(m, w.max_var());
  return m;
}

std::vector<int> Shape::decode(size_t idx) const {
  std::vector<int> digits(seps_.size());
  for (size_t k = seps_.size(); k-- > 0;) {
    size_t r = static_cast<size_t>(seps_[k].size());
    digits[k] = static_cast<int>(idx % r);
    idx /= r;
  }
  return digits;
}

size_t Shape::encode(const std::vector<int>& digits) const {
  size_t idx = 0;
  for (size_t k = 0; k < seps_.size(); ++k) idx = idx * static_cast<size_t>(seps_[k].size()) + static_cast<size_t>(digits[k]);
  return idx;
}

Monomial Shape::basis_monomial(size_t idx, int sep) const {
  return seps_[sep].basis()[decode(idx)[sep]];
}

int Shape::basis_degree(size_t idx) const {
  auto digits = decode(idx);
  int d = shift_;
  for (size_t k = 0; k < seps_.size(); ++k) d += 2 * seps_[k].basis()[digits[k]].degree();
  return d;
}

Shape Shape::concat(const Shape& o) const {
  std::vector<ParabolicSubgroup> seps = seps_;
  seps.insert(seps.end(), o.seps_.begin(), o.seps_.end());
  return Shape(std::move(seps), shift_ + o.shift_);
}

std::string Shape::str() const {
  std::string s = "B(";
  for (size_t k = 0; k < seps_.size(); ++k) {
    if (k) s += ",";
    s += seps_[k].str();
  }
  return s + ")";
}

std::string Shape::tuple_str(size_t idx) const {
  auto digits = decode(idx);
  std::string s = "<";
  for (size_t k = 0; k < seps_.size(); ++k) {
    if (k) s += "|";
    s += seps_[k].basis()[digits[k]].str();
  }
  return s + ">";
}

Shape Shape::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.size() < 3 || s.compare(0, 2, "B(") != 0 || s.back() != ')') throw std::invalid_argument("shape must look like B(1,2,1)");
  std::string body = s.substr(2, s.size() - 3);
  std::vector<ParabolicSubgroup> seps;
  int shift = 0;
  size_t p = 0;
  auto read_int = [&](const std::string& item) {
    if (item.empty() || !std::all_of(item.begin(), item.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw std::invalid_argument("bad color '" + item + "' in shape");
    int v = std::stoi(item);
    if (v < 1) throw std::invalid_argument("colors start at 1");
    return v;
  };
  while (p < body.size()) {
    if (body.compare(p, 2, "w{") == 0) {
      size_t close = body.find('}', p);
      if (close == std::string::npos) throw std::invalid_argument("unterminated w{...} in shape");
      std::string inner = body.substr(p + 2, close - p - 2);
      size_t comma = inner.find(',');
      if (comma == std::string::npos) throw std::invalid_argument("w{...} needs two colors");
      auto w = ParabolicSubgroup::pair(read_int(inner.substr(0, comma)), read_int(inner.substr(comma + 1)));
      shift -= w.longest_length();
      seps.push_back(w);
      p = close + 1;
    } else {
      size_t q = body.find(',', p);
      if (q == std::string::npos) q = body.size();
      seps.push_back(ParabolicSubgroup::single(read_int(body.substr(p, q - p))));
      shift -= 1;
      p = q;
    }
    if (p < body.size()) {
      if (body[p] != ',') throw std::invalid_argument("expected ',' in shape");
      ++p;
      if (p == body.size()) throw std::invalid_argument("trailing ',' in shape");
    }
  }
  return Shape(std::move(seps), shift);
}

// ---------------------------------------------------------------------------
// BSElement

BSElement::BSElement(Shape shape) : shape_(std::move(shape)), coords_(shape_.basis_size()) {}

BSElement BSElement::basis(const Shape& shape, size_t idx) {
  BSElement e(shape);
  if (idx >= shape.basis_size()) throw std::out_of_range("basis index outside the shape");
  e.coords_[idx] = 1;
  return e;
}

bool BSElement::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Poly& p) { return p.is_zero(); });
}

BSElement& BSElement::operator+=(const BSElement& o) {
  if (!(o.shape_ == shape_)) throw std::invalid_argument("adding elements of different shapes");
  for (size_t k = 0; k < coords_.size(); ++k) coords_[k] += o.coords_[k];
  return *this;
}

BSElement& BSElement::operator-=(const BSElement& o) {
  if (!(o.shape_ == shape_)) throw std::invalid_argument("subtracting elements of different shapes");
  for (size_t k = 0; k < coords_.size(); ++k) coords_[k] -= o.coords_[k];
  return *this;
}

BSElement BSElement::operator-() const { return scaled(-1); }

BSElement BSElement::scaled(const mpq_class& c) const {
  BSElement r = *this;
  for (auto& p : r.coords_) p *= c;
  return r;
}

std::vector<int> BSElement::degrees() const {
  std::set<int> ds;
  for (size_t k = 0; k < coords_.size(); ++k)
    for (const auto& [m, c] : coords_[k].terms()) ds.insert(2 * m.degree() + shape_.basis_degree(k));
  return {ds.begin(), ds.end()};
}

bool BSElement::is_homogeneous() const { return degrees().size() <= 1; }

int BSElement::degree() const {
  auto ds = degrees();
  if (ds.size() != 1) throw std::logic_error("degree of a zero or inhomogeneous element");
  return ds[0];
}

BSElement BSElement::homogeneous_part(int degree) const {
  BSElement r(shape_);
  for (size_t k = 0; k < coords_.size(); ++k) {
    int rest = degree - shape_.basis_degree(k);
    if (rest >= 0 && rest % 2 == 0) r.coords_[k] = coords_[k].homogeneous_part(rest / 2);
  }
  return r;
}

std::string BSElement::str() const {
  std::string out;
  for (size_t k = 0; k < coords_.size(); ++k) {
    const Poly& c = coords_[k];
    if (c.is_zero()) continue;
    std::string coeff;
    bool negative = false;
    if (c.terms().size() == 1) {
      negative = c.terms()[0].second < 0;
      coeff = (negative ? -c : c).str();
    } else {
      coeff = "(" + c.str() + ")";
    }
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    out += coeff + " * " + shape_.tuple_str(k);
  }
  return out.empty() ? "0" : out;
}

BSElement BSElement::parse(std::string_view text, const Shape& shape, const Ring& ring) {
  std::string s(text);
  BSElement result(shape);
  bool blank = std::all_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
  if (blank) throw std::invalid_argument("empty element");
  if (s.find('<') == std::string::npos) {
    if (Poly::parse(s).is_zero()) return result;
    throw std::invalid_argument("element terms need a tensor part <...>");
  }
  // Split at top-level signs once the current term has its tensor part.
  std::vector<std::string> terms;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (depth == 0 && (c == '+' || c == '-') && cur.find('>') != std::string::npos) {
      terms.push_back(cur);
      cur.clear();
    }
    if (c == '(' || c == '<') ++depth;
    if (c == ')' || c == '>') --depth;
    cur += c;
  }
  terms.push_back(cur);
  auto trim = [](std::string x) {
    size_t a = x.find_first_not_of(" \t"), b = x.find_last_not_of(" \t");
    return a == std::string::npos ? std::string() : x.substr(a, b - a + 1);
  };
  for (const auto& term : terms) {
    size_t open = term.rfind('<'), close = term.rfind('>');
    if (open == std::string::npos || close == std::string::npos || close < open) throw std::invalid_argument("bad tensor term '" + term + "'");
    if (!trim(term.substr(close + 1)).empty()) throw std::invalid_argument("unexpected text after '>' in '" + term + "'");
    std::string coeff = trim(term.substr(0, open));
    if (!coeff.empty() && coeff.back() == '*') coeff = trim(coeff.substr(0, coeff.size() - 1));
    Poly left = coeff.empty() || coeff == "+" ? Poly(1) : coeff == "-" ? Poly(-1) : Poly::parse(coeff);
    RawTensor rt{ring.reduce(left)};
    std::string body = term.substr(open + 1, close - open - 1);
    if (shape.length() > 0) {
      size_t p = 0;
      while (true) {
        size_t q = body.find('|', p);
        std::string slot = body.substr(p, q == std::string::npos ? std::string::npos : q - p);
        rt.push_back(ring.reduce(Poly::parse(slot)));
        if (q == std::string::npos) break;
        p = q + 1;
      }
    } else if (body.find_first_not_of(" \t") != std::string::npos) {
      throw std::invalid_argument("shape B() has no tensor slots");
    }
    if (static_cast<int>(rt.size()) != shape.length() + 1) throw std::invalid_argument("tensor term has the wrong number of slots for " + shape.str());
    result += normalize(rt, shape, ring);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Sliding

namespace {

using Decomposer = std::vector<Poly> (*)(const Poly&, const ParabolicSubgroup&, const Ring&);

std::vector<Poly> standard_decompose(const Poly& f, const ParabolicSubgroup& w, const Ring& ring) {
  return decompose_invariant(f, w, ring);
}

// f = g0 + x_{i+1} g1 with g1 = -d_i f and g0 = f + x_{i+1} d_i f.
std::vector<Poly> alternative_decompose(const Poly& f, const ParabolicSubgroup& w, const Ring& ring) {
  if (!w.is_single()) return decompose_invariant(f, w, ring);
  Poly d = demazure(w.first(), f);
  return {ring.reduce(f + Poly::var(w.first() + 1) * d), ring.reduce(-d)};
}

void check_ring(const Shape& shape, const Ring& ring) {
  if (shape.max_var() > ring.nvars()) throw std::invalid_argument("shape " + shape.str() + " needs more variables than the ring provides");
}

// Normalizes slots[0..k] over the first k separators, adding the result
// (times the already fixed suffix index) into out.
void slide(std::vector<Poly>& slots, int k, const Shape& shape, size_t suffix_idx, size_t suffix_radix, std::vector<Poly>& out,
           const Ring& ring, Decomposer decompose) {
  if (slots[k].is_zero()) return;
  if (k == 0) {
    out[suffix_idx] += slots[0];
    return;
  }
  const ParabolicSubgroup& w = shape.separators()[k - 1];
  std::vector<Poly> parts = decompose(slots[k], w, ring);
  Poly saved = slots[k - 1];
  for (size_t b = 0; b < parts.size(); ++b) {
    if (parts[b].is_zero()) continue;
    slots[k - 1] = ring.reduce(saved * parts[b]);
    slide(slots, k - 1, shape, suffix_idx + b * suffix_radix, suffix_radix * static_cast<size_t>(w.size()), out, ring, decompose);
  }
  slots[k - 1] = std::move(saved);
}

std::vector<Poly> normalize_with(const RawTensor& rt, const Shape& shape, const Ring& ring, Decomposer decompose) {
  if (static_cast<int>(rt.size()) != shape.length() + 1) throw std::invalid_argument("raw tensor has the wrong number of slots");
  check_ring(shape, ring);
  std::vector<Poly> out(shape.basis_size());
  std::vector<Poly> slots = rt;
  for (auto& s : slots) s = ring.reduce(s);
  slide(slots, shape.length(), shape, 0, 1, out, ring, decompose);
  return out;
}

}  // namespace

BSElement normalize(const RawTensor& rt, const Shape& shape, const Ring& ring) {
  BSElement e(shape);
  std::vector<Poly> coords = normalize_with(rt, shape, ring, standard_decompose);
  for (size_t k = 0; k < coords.size(); ++k) e.coord(k) = std::move(coords[k]);
  return e;
}

namespace {

RawTensor basis_raw(const Shape& shape, size_t idx) {
  RawTensor rt(shape.length() + 1);
  rt[0] = 1;
  auto digits = shape.decode(idx);
  for (int k = 0; k < shape.length(); ++k) rt[k + 1] = Poly::monomial(shape.separators()[k].basis()[digits[k]]);
  return rt;
}

}  // namespace

BSElement right_mul(const BSElement& e, const Poly& f, const Ring& ring) {
  const Shape& shape = e.shape();
  BSElement r(shape);
  if (f.is_zero()) return r;
  Poly g = ring.reduce(f);
  if (g.is_constant()) return e.scaled(g.constant_term());
  for (size_t idx = 0; idx < shape.basis_size(); ++idx) {
    const Poly& c = e.coord(idx);
    if (c.is_zero()) continue;
    RawTensor rt = basis_raw(shape, idx);
    rt.back() = rt.back() * g;
    BSElement part = normalize(rt, shape, ring);
    for (size_t k = 0; k < shape.basis_size(); ++k)
      if (!part.coord(k).is_zero()) r.coord(k) += ring.reduce(c * part.coord(k));
  }
  return r;
}

BSElement left_mul(const BSElement& e, const Poly& f, const Ring& ring) {
  BSElement r(e.shape());
  Poly g = ring.reduce(f);
  for (size_t k = 0; k < e.coords().size(); ++k)
    if (!e.coord(k).is_zero()) r.coord(k) = ring.reduce(g * e.coord(k));
  return r;
}

BSElement tensor_elements(const BSElement& a, const BSElement& b, const Ring& ring) {
  const Shape shape = a.shape().concat(b.shape());
  BSElement r(shape);
  const size_t nb = b.shape().basis_size();
  for (size_t t = 0; t < nb; ++t) {
    const Poly& bt = b.coord(t);
    if (bt.is_zero()) continue;
    // a * bt, then the tuple t is appended unchanged.
    BSElement moved = right_mul(a, bt, ring);
    for (size_t s = 0; s < a.shape().basis_size(); ++s)
      if (!moved.coord(s).is_zero()) r.coord(s * nb + t) += moved.coord(s);
  }
  return r;
}

std::vector<Poly> alternative_residue_coords(const BSElement& e, const Ring& ring) {
  const Shape& shape = e.shape();
  std::vector<Poly> out(shape.basis_size());
  for (size_t idx = 0; idx < shape.basis_size(); ++idx) {
    if (e.coord(idx).is_zero()) continue;
    RawTensor rt = basis_raw(shape, idx);
    rt[0] = e.coord(idx);
    auto part = normalize_with(rt, shape, ring, alternative_decompose);
    for (size_t k = 0; k < out.size(); ++k) out[k] += part[k];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generators

std::vector<GenTerm> express_in_generators(const BSElement& e, const std::vector<BSElement>& gens, const Ring& ring) {
  const Shape& shape = e.shape();
  std::vector<int> gen_deg(gens.size());
  for (size_t k = 0; k < gens.size(); ++k) {
    if (!(gens[k].shape() == shape)) throw std::invalid_argument("generator has a different shape");
    gen_deg[k] = gens[k].degree();
  }
  const int nvars = ring.quotient ? ring.n : ring.nvars();
  std::vector<GenTerm> result;
  for (int D : e.degrees()) {
    BSElement target = e.homogeneous_part(D);
    // Candidates left * gen * right with monomials on both sides.
    struct Candidate {
      size_t gen;
      Monomial left, right;
    };
    std::vector<Candidate> cands;
    std::vector<BSElement> images;
    for (size_t k = 0; k < gens.size(); ++k) {
      int rest = D - gen_deg[k];
      if (rest < 0 || rest % 2) continue;
      for (int rd = 0; rd <= rest / 2; ++rd) {
        for (const Monomial& r : monomials_of_degree(nvars, rd)) {
          BSElement gr = right_mul(gens[k], Poly::monomial(r), ring);
          if (gr.is_zero()) continue;
          for (const Monomial& l : monomials_of_degree(nvars, rest / 2 - rd)) {
            cands.push_back({k, l, r});
            images.push_back(left_mul(gr, Poly::monomial(l), ring));
          }
        }
      }
    }
    // One equation per (tuple, monomial).
    std::map<std::pair<size_t, std::vector<std::uint8_t>>, int> row_of;
    auto row_key = [](size_t idx, const Monomial& m) { return std::make_pair(idx, std::vector<std::uint8_t>(m.e.begin(), m.e.end())); };
    std::vector<std::map<int, mpq_class>> rows;
    auto row_index = [&](size_t idx, const Monomial& m) {
      auto key = row_key(idx, m);
      auto it = row_of.find(key);
      if (it != row_of.end()) return it->second;
      int r = static_cast<int>(rows.size());
      row_of.emplace(key, r);
      rows.emplace_back();
      return r;
    };
    for (size_t c = 0; c < images.size(); ++c)
      for (size_t idx = 0; idx < shape.basis_size(); ++idx)
        for (const auto& [m, v] : images[c].coord(idx).terms()) rows[row_index(idx, m)][static_cast<int>(c)] += v;
    std::vector<mpq_class> rhs(rows.size(), 0);
    for (size_t idx = 0; idx < shape.basis_size(); ++idx)
      for (const auto& [m, v] : target.coord(idx).terms()) {
        int r = row_index(idx, m);
        if (static_cast<size_t>(r) >= rhs.size()) rhs.resize(rows.size(), 0);
        rhs[r] += v;
      }
    rhs.resize(rows.size(), 0);
    Eliminator elim(static_cast<int>(cands.size()));
    for (size_t r = 0; r < rows.size(); ++r) elim.add_row(make_row(rows[r]), rhs[r]);
    auto sol = elim.solution();
    if (!sol) throw std::domain_error("element is not in the sub-bimodule spanned by the generators");
    std::map<std::pair<size_t, std::vector<std::uint8_t>>, Poly> grouped;
    for (size_t c = 0; c < cands.size(); ++c) {
      if ((*sol)[c] == 0) continue;
      auto key = std::make_pair(cands[c].gen, std::vector<std::uint8_t>(cands[c].right.e.begin(), cands[c].right.e.end()));
      grouped[key] += Poly::monomial(cands[c].left, (*sol)[c]);
    }
    for (auto& [key, left] : grouped) {
      Monomial r;
      std::copy(key.second.begin(), key.second.end(), r.e.begin());
      result.push_back({std::move(left), key.first, Poly::monomial(r)});
    }
  }
  return result;
}

BSElement reassemble(const std::vector<GenTerm>& terms, const std::vector<BSElement>& gens, const Ring& ring) {
  if (gens.empty()) throw std::invalid_argument("no generators to reassemble from");
  BSElement r(gens[0].shape());
  for (const auto& t : terms) r += left_mul(right_mul(gens.at(t.gen), t.right, ring), t.left, ring);
  return r;
}

std::vector<BSElement> spanning_set(const Shape& shape, const Ring& ring) {
  std::vector<int> colors = shape.colors();
  // Consecutive same-color pairs, by the position of the first member.
  std::vector<std::pair<int, int>> pairs;  // (slot, color)
  for (size_t r = 0; r < colors.size(); ++r)
    for (size_t s = r + 1; s < colors.size(); ++s)
      if (colors[s] == colors[r]) {
        pairs.emplace_back(static_cast<int>(r) + 1, colors[r]);
        break;
      }
  std::vector<BSElement> out;
  for (size_t mask = 0; mask < (size_t{1} << pairs.size()); ++mask) {
    RawTensor rt(colors.size() + 1, Poly(1));
    for (size_t p = 0; p < pairs.size(); ++p)
      if (mask >> p & 1) rt[pairs[p].first] *= Poly::var(pairs[p].second);
    out.push_back(normalize(rt, shape, ring));
  }
  return out;
}

std::vector<GenTerm> generator_form(const BSElement& e, const Ring& ring) {
  if (!e.shape().is_bs()) throw std::invalid_argument("generator_form needs a shape with single-color separators only");
  return express_in_generators(e, spanning_set(e.shape(), ring), ring);
}

}  // namespace soergel
