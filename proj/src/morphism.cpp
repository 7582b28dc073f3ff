#include "soergel/morphism.hpp"

#include <algorithm>
#include <map>
#include <omp.h>
#include <stdexcept>
#include <unordered_map>

namespace soergel {

int available_threads() { return omp_get_max_threads(); }

// ---------------------------------------------------------------------------
// MorphismMatrix

MorphismMatrix::MorphismMatrix(Shape source, Shape target, int degree)
    : source_(std::move(source)), target_(std::move(target)), degree_(degree), cols_(source_.basis_size()) {}

MorphismMatrix MorphismMatrix::identity(const Shape& shape) {
  MorphismMatrix m(shape, shape, 0);
  for (size_t s = 0; s < shape.basis_size(); ++s) m.cols_[s].emplace_back(s, Poly(1));
  return m;
}

Poly MorphismMatrix::at(size_t t, size_t s) const {
  const Column& c = cols_.at(s);
  auto it = std::lower_bound(c.begin(), c.end(), t, [](const auto& e, size_t v) { return e.first < v; });
  return it != c.end() && it->first == t ? it->second : Poly();
}

void MorphismMatrix::set_column(size_t s, const BSElement& image) {
  if (!(image.shape() == target_)) throw std::invalid_argument("column image has the wrong shape");
  Column c;
  for (size_t t = 0; t < image.coords().size(); ++t)
    if (!image.coord(t).is_zero()) c.emplace_back(t, image.coord(t));
  cols_.at(s) = std::move(c);
}

BSElement MorphismMatrix::image(size_t s) const {
  BSElement e(target_);
  for (const auto& [t, p] : cols_.at(s)) e.coord(t) = p;
  return e;
}

BSElement MorphismMatrix::apply(const BSElement& e, const Ring& ring) const {
  if (!(e.shape() == source_)) throw std::invalid_argument("applying a map to an element of the wrong shape");
  BSElement r(target_);
  for (size_t s = 0; s < cols_.size(); ++s) {
    const Poly& c = e.coord(s);
    if (c.is_zero()) continue;
    for (const auto& [t, p] : cols_[s]) r.coord(t) += ring.reduce(c * p);
  }
  return r;
}

bool MorphismMatrix::is_zero() const {
  return std::all_of(cols_.begin(), cols_.end(), [](const Column& c) { return c.empty(); });
}

bool MorphismMatrix::is_homogeneous() const {
  for (size_t s = 0; s < cols_.size(); ++s)
    for (const auto& [t, p] : cols_[s]) {
      int want = source_.basis_degree(s) + degree_ - target_.basis_degree(t);
      if (want < 0 || want % 2 != 0) return false;
      for (const auto& [m, c] : p.terms())
        if (2 * m.degree() != want) return false;
    }
  return true;
}

namespace {

MorphismMatrix::Column add_columns(const MorphismMatrix::Column& a, const MorphismMatrix::Column& b, const mpq_class& fb) {
  MorphismMatrix::Column out;
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, fb * b[j].second);
      ++j;
    } else {
      Poly p = a[i].second + fb * b[j].second;
      if (!p.is_zero()) out.emplace_back(a[i].first, std::move(p));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

MorphismMatrix& MorphismMatrix::operator+=(const MorphismMatrix& o) {
  if (!(o.source_ == source_) || !(o.target_ == target_)) throw std::invalid_argument("adding maps between different shapes");
  if (is_zero()) degree_ = o.degree_;
  for (size_t s = 0; s < cols_.size(); ++s) cols_[s] = add_columns(cols_[s], o.cols_[s], 1);
  return *this;
}

MorphismMatrix& MorphismMatrix::operator-=(const MorphismMatrix& o) {
  if (!(o.source_ == source_) || !(o.target_ == target_)) throw std::invalid_argument("subtracting maps between different shapes");
  if (is_zero()) degree_ = o.degree_;
  for (size_t s = 0; s < cols_.size(); ++s) cols_[s] = add_columns(cols_[s], o.cols_[s], -1);
  return *this;
}

MorphismMatrix MorphismMatrix::scaled(const mpq_class& c) const {
  MorphismMatrix m(source_, target_, degree_);
  if (c == 0) return m;
  for (size_t s = 0; s < cols_.size(); ++s)
    for (const auto& [t, p] : cols_[s]) m.cols_[s].emplace_back(t, c * p);
  return m;
}

bool MorphismMatrix::operator==(const MorphismMatrix& o) const {
  if (!(source_ == o.source_) || !(target_ == o.target_) || cols_ != o.cols_) return false;
  return degree_ == o.degree_ || is_zero();
}

std::string MorphismMatrix::dump() const {
  // Ordered by target tuple, then source tuple.
  std::vector<std::tuple<size_t, size_t, const Poly*>> entries;
  for (size_t s = 0; s < cols_.size(); ++s)
    for (const auto& [t, p] : cols_[s]) entries.emplace_back(t, s, &p);
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
  });
  std::string out;
  for (const auto& [t, s, p] : entries) out += "(" + target_.tuple_str(t) + ", " + source_.tuple_str(s) + ") = " + p->str() + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Composition

MorphismMatrix compose_v(const MorphismMatrix& g, const MorphismMatrix& f, const Ring& ring, Exec exec) {
  if (!(f.target() == g.source()))
    throw std::invalid_argument("vertical composition: " + f.target().str() + " does not match " + g.source().str());
  MorphismMatrix r(f.source(), g.target(), f.degree() + g.degree());
  const size_t nt = g.target().basis_size();
  std::vector<BSElement> cols(f.source().basis_size());
  for_each_index(cols.size(), exec, [&](size_t c) {
    std::vector<Poly> acc(nt);
    for (const auto& [k, fk] : f.column(c))
      for (const auto& [t, gk] : g.column(k)) acc[t] += ring.reduce(fk * gk);
    BSElement e(g.target());
    for (size_t t = 0; t < nt; ++t) e.coord(t) = std::move(acc[t]);
    cols[c] = std::move(e);
  });
  for (size_t c = 0; c < cols.size(); ++c) r.set_column(c, cols[c]);
  return r;
}

namespace {

// Sparse normal form of (1 (x) tuple s) * g, cached per thread.
const MorphismMatrix::Column& basis_right_mul(const Shape& shape, size_t s, const Poly& g, const Ring& ring) {
  thread_local std::unordered_map<std::string, MorphismMatrix::Column> cache;
  std::string key = shape.str() + "#" + std::to_string(s) + "#" + g.str() + "#" + std::to_string(ring.n) + (ring.quotient ? "q" : "");
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  BSElement e = right_mul(BSElement::basis(shape, s), g, ring);
  MorphismMatrix::Column col;
  for (size_t t = 0; t < e.coords().size(); ++t)
    if (!e.coord(t).is_zero()) col.emplace_back(t, e.coord(t));
  if (cache.size() > 200000) cache.clear();
  return cache.emplace(std::move(key), std::move(col)).first->second;
}

}  // namespace

MorphismMatrix compose_h(const MorphismMatrix& f, const MorphismMatrix& g, const Ring& ring) {
  const Shape src = f.source().concat(g.source());
  const Shape tgt = f.target().concat(g.target());
  MorphismMatrix r(src, tgt, f.degree() + g.degree());
  const size_t nB = g.source().basis_size(), nBt = g.target().basis_size();
  const size_t nAt = f.target().basis_size();
  // T[s][v] = (1 (x) s) (x) G(e_v) in the target shape.
  std::vector<std::vector<std::vector<Poly>>> T(nAt);
  std::vector<bool> needed(nAt, false);
  for (size_t u = 0; u < f.source().basis_size(); ++u)
    for (const auto& [s, p] : f.column(u)) needed[s] = true;
  const size_t nTot = tgt.basis_size();
  for (size_t s = 0; s < nAt; ++s) {
    if (!needed[s]) continue;
    T[s].resize(nB);
    for (size_t v = 0; v < nB; ++v) {
      std::vector<Poly> acc;
      for (const auto& [t, gp] : g.column(v)) {
        if (acc.empty()) acc.resize(nTot);
        if (gp.is_constant()) {
          acc[s * nBt + t] += gp;
          continue;
        }
        for (const auto& [s2, p] : basis_right_mul(f.target(), s, gp, ring)) acc[s2 * nBt + t] += p;
      }
      T[s][v] = std::move(acc);
    }
  }
  for (size_t u = 0; u < f.source().basis_size(); ++u)
    for (size_t v = 0; v < nB; ++v) {
      std::vector<Poly> acc(nTot);
      bool any = false;
      for (const auto& [s, fp] : f.column(u)) {
        const auto& tsv = T[s][v];
        if (tsv.empty()) continue;
        for (size_t k = 0; k < nTot; ++k)
          if (!tsv[k].is_zero()) {
            acc[k] += fp.is_constant() ? fp.constant_term() * tsv[k] : ring.reduce(fp * tsv[k]);
            any = true;
          }
      }
      if (!any) continue;
      BSElement e(tgt);
      for (size_t k = 0; k < nTot; ++k) e.coord(k) = std::move(acc[k]);
      r.set_column(u * nB + v, e);
    }
  return r;
}

bool check_bimodule(const MorphismMatrix& m, const Ring& ring) {
  for (size_t s = 0; s < m.source().basis_size(); ++s) {
    BSElement img = m.image(s);
    for (int k = 1; k <= ring.nvars(); ++k) {
      Poly xk = Poly::var(k);
      BSElement lhs = m.apply(right_mul(BSElement::basis(m.source(), s), xk, ring), ring);
      BSElement rhs = right_mul(img, xk, ring);
      if (!(lhs == rhs)) return false;
    }
  }
  return true;
}

MorphismMatrix from_generator_images(const Shape& source, const Shape& target, int degree, const std::vector<BSElement>& gens,
                                     const std::vector<BSElement>& images, const Ring& ring) {
  if (gens.size() != images.size()) throw std::invalid_argument("one image per generator is required");
  MorphismMatrix m(source, target, degree);
  for (size_t s = 0; s < source.basis_size(); ++s) {
    auto terms = express_in_generators(BSElement::basis(source, s), gens, ring);
    BSElement img(target);
    for (const auto& t : terms) img += left_mul(right_mul(images[t.gen], t.right, ring), t.left, ring);
    m.set_column(s, img);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Tokens

GenToken id_token(int i) { return {Gen::Id, {i}, {}}; }
GenToken end_dot(int i) { return {Gen::EndDot, {i}, {}}; }
GenToken start_dot(int i) { return {Gen::StartDot, {i}, {}}; }
GenToken merge_token(int i) { return {Gen::Merge, {i}, {}}; }
GenToken split_token(int i) { return {Gen::Split, {i}, {}}; }
GenToken cup_token(int i) { return {Gen::Cup, {i}, {}}; }
GenToken cap_token(int i) { return {Gen::Cap, {i}, {}}; }
GenToken box_token(const Poly& f) { return {Gen::Box, {}, f}; }
GenToken four_token(int i, int j) { return {Gen::Four, {i, j}, {}}; }
GenToken six_token(int a, int b) { return {Gen::Six, {a, b}, {}}; }
GenToken aux_token(Gen kind, std::vector<int> colors) { return {kind, std::move(colors), {}}; }

Shape GenToken::source() const {
  const auto& c = colors;
  switch (kind) {
    case Gen::Id: case Gen::EndDot: case Gen::Split: return Shape::bs({c[0]});
    case Gen::StartDot: case Gen::Cup: case Gen::Box: return Shape::bs({});
    case Gen::Merge: case Gen::Cap: return Shape::bs({c[0], c[0]});
    case Gen::Four: return Shape::bs({c[0], c[1]});
    case Gen::Six: return Shape::bs({c[0], c[1], c[0]});
    case Gen::IJUp: return Shape::bs({c[0], c[1]});
    case Gen::IJDown: return Shape::aux(c[0], c[1]);
    case Gen::IpiUp: return Shape::bs({c[0], c[0] + 1, c[0]});
    case Gen::PipUp: return Shape::bs({c[0] + 1, c[0], c[0] + 1});
    case Gen::IpiDown: case Gen::PipDown: return Shape::aux(c[0], c[0] + 1);
  }
  throw std::logic_error("unknown generator");
}

Shape GenToken::target() const {
  const auto& c = colors;
  switch (kind) {
    case Gen::Id: case Gen::Merge: case Gen::StartDot: return Shape::bs({c[0]});
    case Gen::EndDot: case Gen::Cap: case Gen::Box: return Shape::bs({});
    case Gen::Split: case Gen::Cup: return Shape::bs({c[0], c[0]});
    case Gen::Four: return Shape::bs({c[1], c[0]});
    case Gen::Six: return Shape::bs({c[1], c[0], c[1]});
    case Gen::IJUp: return Shape::aux(c[0], c[1]);
    case Gen::IJDown: return Shape::bs({c[0], c[1]});
    case Gen::IpiUp: case Gen::PipUp: return Shape::aux(c[0], c[0] + 1);
    case Gen::IpiDown: return Shape::bs({c[0], c[0] + 1, c[0]});
    case Gen::PipDown: return Shape::bs({c[0] + 1, c[0], c[0] + 1});
  }
  throw std::logic_error("unknown generator");
}

int GenToken::degree() const {
  switch (kind) {
    case Gen::EndDot: case Gen::StartDot: return 1;
    case Gen::Merge: case Gen::Split: return -1;
    case Gen::Box: return poly.is_zero() ? 0 : 2 * poly.degree();
    default: return 0;
  }
}

std::string GenToken::str() const {
  auto one = [&](const char* name) { return std::string(name) + ":" + std::to_string(colors.at(0)); };
  auto two = [&](const char* name) { return std::string(name) + ":" + std::to_string(colors.at(0)) + "," + std::to_string(colors.at(1)); };
  switch (kind) {
    case Gen::Id: return one("id");
    case Gen::EndDot: return one("dot_e");
    case Gen::StartDot: return one("dot_s");
    case Gen::Merge: return one("merge");
    case Gen::Split: return one("split");
    case Gen::Cup: return one("cup");
    case Gen::Cap: return one("cap");
    case Gen::Box: {
      std::string p = poly.str();
      return p.find(' ') == std::string::npos ? "box:" + p : "box:(" + p + ")";
    }
    case Gen::Four: return two("four");
    case Gen::Six: return two("six");
    case Gen::IJUp: return two("ij_up");
    case Gen::IJDown: return two("ij_down");
    case Gen::IpiUp: return one("ipi_up");
    case Gen::IpiDown: return one("ipi_down");
    case Gen::PipUp: return one("pip_up");
    case Gen::PipDown: return one("pip_down");
  }
  throw std::logic_error("unknown generator");
}

void GenToken::validate(int n) const {
  auto fail = [&](const std::string& why) { throw std::invalid_argument("generator " + str() + ": " + why); };
  size_t want = 1;
  if (kind == Gen::Box) want = 0;
  if (kind == Gen::Four || kind == Gen::Six || kind == Gen::IJUp || kind == Gen::IJDown) want = 2;
  if (colors.size() != want) throw std::invalid_argument("generator has the wrong number of colors");
  for (int c : colors)
    if (c < 1 || c > n) fail("color " + std::to_string(c) + " outside 1.." + std::to_string(n));
  switch (kind) {
    case Gen::Four: case Gen::IJUp: case Gen::IJDown:
      if (std::abs(colors[0] - colors[1]) < 2) fail("colors must be distant");
      break;
    case Gen::Six:
      if (std::abs(colors[0] - colors[1]) != 1) fail("colors must be adjacent");
      break;
    case Gen::IpiUp: case Gen::IpiDown: case Gen::PipUp: case Gen::PipDown:
      if (colors[0] + 1 > n) fail("needs the colors i and i+1");
      break;
    case Gen::Box:
      if (!poly.is_homogeneous()) fail("box polynomial must be homogeneous");
      if (poly.max_var() > n + 1) fail("box polynomial uses a variable beyond x" + std::to_string(n + 1));
      break;
    default: break;
  }
}

namespace {

Poly x(int i) { return Poly::var(i); }

MorphismMatrix build_generator(const GenToken& tok, const Ring& ring) {
  tok.validate(ring.n);
  const Shape src = tok.source(), tgt = tok.target();
  const int deg = tok.degree();
  auto raw = [&](const Shape& s, RawTensor rt) { return normalize(rt, s, ring); };
  auto one = [&](const Shape& s) { return BSElement::one_tensor(s); };
  const int i = tok.colors.empty() ? 0 : tok.colors[0];
  switch (tok.kind) {
    case Gen::Id: return MorphismMatrix::identity(src);
    case Gen::EndDot:  // f (x) g -> fg
      return from_generator_images(src, tgt, deg, {one(src)}, {one(tgt)}, ring);
    case Gen::StartDot:  // 1 -> x_i (x) 1 - 1 (x) x_{i+1}
      return from_generator_images(src, tgt, deg, {one(src)}, {raw(tgt, {x(i), 1}) - raw(tgt, {1, x(i + 1)})}, ring);
    case Gen::Merge:  // 1(x)1(x)1 -> 0, 1(x)x_i(x)1 -> 1(x)1
      return from_generator_images(src, tgt, deg, {one(src), raw(src, {1, x(i), 1})}, {BSElement(tgt), one(tgt)}, ring);
    case Gen::Split:
      return from_generator_images(src, tgt, deg, {one(src)}, {one(tgt)}, ring);
    case Gen::Cup:  // 1 -> x_i (x) 1 (x) 1 - 1 (x) 1 (x) x_{i+1}
      return from_generator_images(src, tgt, deg, {one(src)}, {raw(tgt, {x(i), 1, 1}) - raw(tgt, {1, 1, x(i + 1)})}, ring);
    case Gen::Cap:  // f(x)1(x)g -> 0, f(x)x_i(x)g -> fg
      return from_generator_images(src, tgt, deg, {one(src), raw(src, {1, x(i), 1})}, {BSElement(tgt), one(tgt)}, ring);
    case Gen::Box: {
      BSElement img(tgt);
      img.coord(0) = ring.reduce(tok.poly);
      return from_generator_images(src, tgt, deg, {one(src)}, {img}, ring);
    }
    case Gen::Four: case Gen::IJUp: case Gen::IJDown: case Gen::IpiDown: case Gen::PipDown:
      return from_generator_images(src, tgt, deg, {one(src)}, {one(tgt)}, ring);
    case Gen::IpiUp:  // 1(x)x_i(x)1(x)1 -> (x_i + x_{i+1}) (x) 1 - 1 (x) x_{i+2}
      return from_generator_images(src, tgt, deg, {one(src), raw(src, {1, x(i), 1, 1})},
                                   {one(tgt), raw(tgt, {x(i) + x(i + 1), 1}) - raw(tgt, {1, x(i + 2)})}, ring);
    case Gen::PipUp:  // 1(x)x_{i+2}(x)1(x)1 -> 1 (x) (x_{i+1} + x_{i+2}) - x_i (x) 1
      return from_generator_images(src, tgt, deg, {one(src), raw(src, {1, x(i + 2), 1, 1})},
                                   {one(tgt), raw(tgt, {1, x(i + 1) + x(i + 2)}) - raw(tgt, {x(i), 1})}, ring);
    case Gen::Six: {
      // The 6-valent vertex factors through R (x)_{R^{i,i+1}} R.
      int a = tok.colors[0], b = tok.colors[1];
      int lo = std::min(a, b);
      GenToken up = aux_token(a < b ? Gen::IpiUp : Gen::PipUp, {lo});
      GenToken down = aux_token(a < b ? Gen::PipDown : Gen::IpiDown, {lo});
      return compose_v(gen_matrix(down, ring), gen_matrix(up, ring), ring);
    }
  }
  throw std::logic_error("unknown generator");
}

}  // namespace

const MorphismMatrix& gen_matrix(const GenToken& token, const Ring& ring) {
  thread_local std::map<std::string, MorphismMatrix> cache;
  std::string key = token.str() + "@" + std::to_string(ring.n) + (ring.quotient ? "q" : "");
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  MorphismMatrix m = build_generator(token, ring);
  return cache.emplace(std::move(key), std::move(m)).first->second;
}

MorphismMatrix gen_matrix(const GenToken& token, const std::vector<int>& left, const std::vector<int>& right, const Ring& ring) {
  const MorphismMatrix& local = gen_matrix(token, ring);
  MorphismMatrix m = local;
  if (!left.empty()) m = compose_h(MorphismMatrix::identity(Shape::bs(left)), m, ring);
  if (!right.empty()) m = compose_h(m, MorphismMatrix::identity(Shape::bs(right)), ring);
  return m;
}

// ---------------------------------------------------------------------------

MorphismMatrix twist(const MorphismMatrix& m, Twist how, const Ring& ring) {
  auto id = [](const std::vector<int>& c) { return MorphismMatrix::identity(Shape::bs(c)); };
  std::vector<int> src = m.source().colors(), tgt = m.target().colors();
  switch (how) {
    case Twist::TopRightDown: {
      if (tgt.empty()) throw std::invalid_argument("no target strand to twist");
      int i = tgt.back();
      tgt.pop_back();
      return compose_v(compose_h(id(tgt), gen_matrix(cap_token(i), ring), ring), compose_h(m, id({i}), ring), ring);
    }
    case Twist::TopLeftDown: {
      if (tgt.empty()) throw std::invalid_argument("no target strand to twist");
      int i = tgt.front();
      tgt.erase(tgt.begin());
      return compose_v(compose_h(gen_matrix(cap_token(i), ring), id(tgt), ring), compose_h(id({i}), m, ring), ring);
    }
    case Twist::BottomRightUp: {
      if (src.empty()) throw std::invalid_argument("no source strand to twist");
      int i = src.back();
      src.pop_back();
      return compose_v(compose_h(m, id({i}), ring), compose_h(id(src), gen_matrix(cup_token(i), ring), ring), ring);
    }
    case Twist::BottomLeftUp: {
      if (src.empty()) throw std::invalid_argument("no source strand to twist");
      int i = src.front();
      src.erase(src.begin());
      return compose_v(compose_h(id({i}), m, ring), compose_h(gen_matrix(cup_token(i), ring), id(src), ring), ring);
    }
  }
  throw std::logic_error("unknown twist");
}

}  // namespace soergel
