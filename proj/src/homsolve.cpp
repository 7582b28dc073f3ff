#include "soergel/homsolve.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

#include "soergel/hecke.hpp"
#include "soergel/linalg.hpp"

namespace soergel {

namespace {

// Unknown block: the coefficient polynomial of target tuple t in the image
// of source tuple s, spanned by the monomials of one degree.
struct Block {
  size_t s, t;
  int offset;
  std::vector<Monomial> monos;
};

struct System {
  Shape src, tgt;
  std::vector<Block> blocks;
  std::vector<std::vector<int>> block_of;  // [s][t] -> block index or -1
  int ncols = 0;
};

System unknowns(const HomQuery& q, const Ring& ring) {
  System sys{Shape::bs(q.source), Shape::bs(q.target), {}, {}, 0};
  sys.block_of.assign(sys.src.basis_size(), std::vector<int>(sys.tgt.basis_size(), -1));
  for (size_t s = 0; s < sys.src.basis_size(); ++s)
    for (size_t t = 0; t < sys.tgt.basis_size(); ++t) {
      int twice = sys.src.basis_degree(s) + q.degree - sys.tgt.basis_degree(t);
      if (twice < 0 || twice % 2) continue;
      auto monos = monomials_of_degree(ring.nvars(), twice / 2);
      sys.block_of[s][t] = static_cast<int>(sys.blocks.size());
      sys.blocks.push_back({s, t, sys.ncols, monos});
      sys.ncols += static_cast<int>(monos.size());
    }
  return sys;
}

struct KeyLess {
  bool operator()(const std::pair<size_t, Monomial>& a, const std::pair<size_t, Monomial>& b) const {
    if (a.first != b.first) return a.first < b.first;
    return GrlexLess{}(a.second, b.second);
  }
};
using Rows = std::map<std::pair<size_t, Monomial>, std::map<int, mpq_class>, KeyLess>;

// rows[(w, mono)] += sign * coef(x^alpha * poly at w) for the unknowns of
// block b, where `image` is what one unit of the block's tuple becomes.
void accumulate(Rows& rows, const Block& b, const BSElement& image, const Poly& left, int sign) {
  for (size_t w = 0; w < image.coords().size(); ++w) {
    const Poly& p = image.coord(w);
    if (p.is_zero()) continue;
    Poly lp = left * p;
    for (size_t k = 0; k < b.monos.size(); ++k)
      for (const auto& [m, c] : lp.terms()) {
        auto& entry = rows[{w, b.monos[k] * m}][b.offset + static_cast<int>(k)];
        entry += sign * c;
      }
  }
}

Eliminator solve(const HomQuery& q, const Ring& ring, System& sys) {
  if (ring.quotient) throw std::invalid_argument("hom dimensions are computed over the polynomial ring only");
  sys = unknowns(q, ring);
  Eliminator el(sys.ncols);
  // right multiplication tables: tuple -> (tuple) * x_v
  std::vector<std::vector<BSElement>> src_mul(ring.nvars() + 1), tgt_mul(ring.nvars() + 1);
  for (int v = 1; v <= ring.nvars(); ++v) {
    for (size_t s = 0; s < sys.src.basis_size(); ++s)
      src_mul[v].push_back(right_mul(BSElement::basis(sys.src, s), Poly::var(v), ring));
    for (size_t t = 0; t < sys.tgt.basis_size(); ++t)
      tgt_mul[v].push_back(right_mul(BSElement::basis(sys.tgt, t), Poly::var(v), ring));
  }
  for (size_t s = 0; s < sys.src.basis_size(); ++s)
    for (int v = 1; v <= ring.nvars(); ++v) {
      Rows rows;
      // f(e_s) x_v
      for (size_t t = 0; t < sys.tgt.basis_size(); ++t)
        if (int b = sys.block_of[s][t]; b >= 0) accumulate(rows, sys.blocks[b], tgt_mul[v][t], Poly(1), 1);
      // f(e_s x_v) = sum_u q_u f(e_u)
      const BSElement& sx = src_mul[v][s];
      for (size_t u = 0; u < sys.src.basis_size(); ++u) {
        const Poly& qu = sx.coord(u);
        if (qu.is_zero()) continue;
        for (size_t t = 0; t < sys.tgt.basis_size(); ++t)
          if (int b = sys.block_of[u][t]; b >= 0) accumulate(rows, sys.blocks[b], BSElement::basis(sys.tgt, t), qu, -1);
      }
      for (auto& [key, entries] : rows) {
        SparseRow row;
        for (auto& [col, c] : entries)
          if (c != 0) row.emplace_back(col, c);
        if (!row.empty()) el.add_row(std::move(row));
      }
    }
  return el;
}

long long binomial(long long a, long long b) {
  if (b < 0 || a < b) return 0;
  long long r = 1;
  for (long long k = 1; k <= b; ++k) r = r * (a - b + k) / k;
  return r;
}

}  // namespace

int hom_dimension(const HomQuery& q, const Ring& ring) {
  System sys;
  Eliminator el = solve(q, ring, sys);
  return sys.ncols - el.rank();
}

std::vector<MorphismMatrix> hom_basis(const HomQuery& q, const Ring& ring) {
  System sys;
  Eliminator el = solve(q, ring, sys);
  std::vector<MorphismMatrix> out;
  for (const auto& vec : el.kernel_basis()) {
    MorphismMatrix m(sys.src, sys.tgt, q.degree);
    for (size_t s = 0; s < sys.src.basis_size(); ++s) {
      BSElement image(sys.tgt);
      for (size_t t = 0; t < sys.tgt.basis_size(); ++t) {
        int b = sys.block_of[s][t];
        if (b < 0) continue;
        const Block& blk = sys.blocks[b];
        Poly p;
        for (size_t k = 0; k < blk.monos.size(); ++k)
          if (vec[blk.offset + k] != 0) p += Poly::monomial(blk.monos[k], vec[blk.offset + k]);
        image.coord(t) = p;
      }
      m.set_column(s, image);
    }
    out.push_back(std::move(m));
  }
  return out;
}

long long predicted_dimension(const HomQuery& q, int n) {
  LaurentPoly pair = pairing(b_monomial(q.source, n), b_monomial(q.target, n));
  // graded dimension of R in degree 2k: monomials of degree k in n+1 variables
  long long total = 0;
  for (const auto& [e, c] : pair.coeffs()) {
    int rest = q.degree - e;
    if (rest < 0 || rest % 2) continue;
    total += c * binomial(rest / 2 + n, n);
  }
  return total;
}

std::string seq_str(const std::vector<int>& s) {
  if (s.empty()) return "-";
  std::string out;
  for (size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + std::to_string(s[k]);
  return out;
}

std::vector<int> parse_seq(std::string_view text) {
  std::vector<int> out;
  if (text.empty() || text == "-") return out;
  std::string item;
  std::stringstream ss{std::string(text)};
  while (std::getline(ss, item, ',')) {
    size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || v < 1) throw std::invalid_argument("bad color '" + item + "' in sequence");
    out.push_back(v);
  }
  return out;
}

std::string CompareLine::str() const {
  return seq_str(query.source) + " " + seq_str(query.target) + " deg=" + std::to_string(query.degree) +
         " solver=" + std::to_string(solver) + " hecke=" + std::to_string(hecke) + (ok() ? " OK" : " MISMATCH");
}

std::vector<CompareLine> compare_all(const std::vector<std::pair<std::vector<int>, std::vector<int>>>& pairs, int lo, int hi,
                                     int n, Exec exec) {
  if (hi < lo) throw std::invalid_argument("empty degree range");
  const size_t width = static_cast<size_t>(hi - lo + 1);
  std::vector<CompareLine> out(pairs.size() * width);
  Ring ring{n, false};
  for_each_index(out.size(), exec, [&](size_t k) {
    const auto& [src, tgt] = pairs[k / width];
    HomQuery q{src, tgt, lo + static_cast<int>(k % width)};
    out[k] = {q, hom_dimension(q, ring), predicted_dimension(q, n)};
  });
  return out;
}

std::vector<CompareLine> compare(const std::vector<int>& source, const std::vector<int>& target, int lo, int hi, int n,
                                 Exec exec) {
  return compare_all({{source, target}}, lo, hi, n, exec);
}

std::vector<std::vector<int>> sequences_up_to(int n, int len) {
  std::vector<std::vector<int>> out{{}};
  size_t begin = 0;
  for (int l = 1; l <= len; ++l) {
    size_t end = out.size();
    for (size_t k = begin; k < end; ++k)
      for (int c = 1; c <= n; ++c) {
        auto s = out[k];
        s.push_back(c);
        out.push_back(std::move(s));
      }
    begin = end;
  }
  return out;
}

}  // namespace soergel
