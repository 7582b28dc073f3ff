#pragma once

// Reference computations shared by the unit tests. Nothing here calls the
// sliding code: elements are compared through the localization embedding
// f0 (x) f1 (x) ... (x) fd  ->  ( f0 * w1(f1) * w1 w2(f2) * ... )_{w_k in W_k},
// which is injective for every shape used in this project.

#include <functional>
#include <random>
#include <vector>

#include "soergel/bimodule.hpp"

namespace oracle {

using namespace soergel;

inline std::vector<Perm> group_elements(const ParabolicSubgroup& w, int nvars) {
  std::vector<Perm> out{Perm::identity(nvars)};
  // Closure under right multiplication by the generators.
  for (size_t k = 0; k < out.size(); ++k)
    for (int s : w.generators()) {
      Perm p = out[k].times_simple(s);
      if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
  std::sort(out.begin(), out.end());
  return out;
}

// All products w1, w1 w2, ... along choice sequences, flattened.
inline std::vector<std::vector<Perm>> prefix_products(const Shape& shape, int nvars) {
  std::vector<std::vector<Perm>> seqs{{}};
  for (const auto& sep : shape.separators()) {
    std::vector<std::vector<Perm>> next;
    for (const auto& seq : seqs)
      for (const Perm& w : group_elements(sep, nvars)) {
        auto s = seq;
        s.push_back(s.empty() ? w : s.back() * w);
        next.push_back(std::move(s));
      }
    seqs = std::move(next);
  }
  return seqs;
}

inline std::vector<Poly> localize_raw(const RawTensor& rt, const Shape& shape, const Ring& ring) {
  std::vector<Poly> out;
  for (const auto& seq : prefix_products(shape, ring.nvars())) {
    Poly v = rt[0];
    for (size_t k = 0; k < seq.size(); ++k) v = v * act(seq[k], rt[k + 1]);
    out.push_back(ring.reduce(v));
  }
  return out;
}

inline std::vector<Poly> localize(const BSElement& e, const Ring& ring) {
  const Shape& shape = e.shape();
  auto seqs = prefix_products(shape, ring.nvars());
  std::vector<Poly> out(seqs.size());
  for (size_t idx = 0; idx < shape.basis_size(); ++idx) {
    if (e.coord(idx).is_zero()) continue;
    auto digits = shape.decode(idx);
    for (size_t q = 0; q < seqs.size(); ++q) {
      Poly v = e.coord(idx);
      for (size_t k = 0; k < digits.size(); ++k) v = v * act(seqs[q][k], Poly::monomial(shape.separators()[k].basis()[digits[k]]));
      out[q] += v;
    }
  }
  for (auto& p : out) p = ring.reduce(p);
  return out;
}

inline Poly random_poly(std::mt19937_64& rng, int nvars, int maxdeg, int nterms, bool homogeneous = false) {
  std::uniform_int_distribution<int> var(1, nvars), deg(0, maxdeg), coef(-3, 3);
  Poly p;
  for (int k = 0; k < nterms; ++k) {
    Poly m = coef(rng);
    for (int d = homogeneous ? maxdeg : deg(rng); d > 0; --d) m *= Poly::var(var(rng));
    p += m;
  }
  return p;
}

inline BSElement random_element(std::mt19937_64& rng, const Shape& shape, const Ring& ring, int maxdeg = 2) {
  BSElement e(shape);
  std::uniform_int_distribution<size_t> pick(0, shape.basis_size() - 1);
  for (int k = 0; k < 3; ++k) e.coord(pick(rng)) += ring.reduce(random_poly(rng, ring.nvars(), maxdeg, 2));
  return e;
}

}  // namespace oracle
