#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "soergel/morphism.hpp"

using namespace soergel;

namespace {

Poly x(int i) { return Poly::var(i); }

const Ring kRing{4, false};

BSElement raw(const Shape& s, RawTensor rt) { return normalize(rt, s, kRing); }

std::vector<GenToken> all_tokens(int n) {
  std::vector<GenToken> out;
  for (int i = 1; i <= n; ++i) {
    for (Gen g : {Gen::Id, Gen::EndDot, Gen::StartDot, Gen::Merge, Gen::Split, Gen::Cup, Gen::Cap}) out.push_back({g, {i}, {}});
    if (i < n) {
      out.push_back(six_token(i, i + 1));
      out.push_back(six_token(i + 1, i));
      for (Gen g : {Gen::IpiUp, Gen::IpiDown, Gen::PipUp, Gen::PipDown}) out.push_back(aux_token(g, {i}));
    }
    for (int j = 1; j <= n; ++j)
      if (std::abs(i - j) >= 2) {
        out.push_back(four_token(i, j));
        out.push_back(aux_token(Gen::IJUp, {i, j}));
        out.push_back(aux_token(Gen::IJDown, {i, j}));
      }
  }
  out.push_back(box_token(x(1) * x(2) - x(3) * x(3)));
  return out;
}

}  // namespace

TEST_CASE("every generator is a homogeneous bimodule map of the stated degree") {
  for (const auto& tok : all_tokens(kRing.n)) {
    CAPTURE(tok.str());
    const MorphismMatrix& m = gen_matrix(tok, kRing);
    CHECK(m.source() == tok.source());
    CHECK(m.target() == tok.target());
    CHECK(m.is_homogeneous());
    CHECK(check_bimodule(m, kRing));
  }
  CHECK(end_dot(1).degree() == 1);
  CHECK(start_dot(1).degree() == 1);
  CHECK(merge_token(1).degree() == -1);
  CHECK(split_token(1).degree() == -1);
  CHECK(box_token(x(1)).degree() == 2);
  CHECK(cup_token(1).degree() == 0);
  CHECK(six_token(1, 2).degree() == 0);
}

TEST_CASE("generator images on bimodule generators") {
  const int i = 2;
  Shape bi = Shape::bs({i}), bii = Shape::bs({i, i}), r = Shape::bs({});
  // EndDot sends x_i (x) 1 to x_i.
  BSElement e = gen_matrix(end_dot(i), kRing).apply(raw(bi, {x(i), 1}), kRing);
  CHECK(e.coord(0) == x(i));
  // Merge kills the 1-tensor and sends 1 (x) x_i (x) 1 to 1 (x) 1.
  CHECK(gen_matrix(merge_token(i), kRing).apply(BSElement::one_tensor(bii), kRing).is_zero());
  CHECK(gen_matrix(merge_token(i), kRing).apply(raw(bii, {1, x(i), 1}), kRing) == BSElement::one_tensor(bi));
  // StartDot.
  CHECK(gen_matrix(start_dot(i), kRing).apply(BSElement::one_tensor(r), kRing) == raw(bi, {x(i), 1}) - raw(bi, {1, x(i + 1)}));
  // FourValent keeps the 1-tensor.
  CHECK(gen_matrix(four_token(1, 3), kRing).apply(BSElement::one_tensor(Shape::bs({1, 3})), kRing) == BSElement::one_tensor(Shape::bs({3, 1})));
  // psi on the second generator.
  Shape ipi = Shape::bs({i, i + 1, i}), w = Shape::aux(i, i + 1);
  CHECK(gen_matrix(aux_token(Gen::IpiUp, {i}), kRing).apply(raw(ipi, {1, x(i), 1, 1}), kRing) ==
        raw(w, {x(i) + x(i + 1), 1}) - raw(w, {1, x(i + 2)}));
}

TEST_CASE("six-valent images of the middle variable") {
  const int i = 2;
  Shape ipi = Shape::bs({i, i + 1, i}), pip = Shape::bs({i + 1, i, i + 1});
  const MorphismMatrix& up = gen_matrix(six_token(i, i + 1), kRing);
  CHECK(up.apply(raw(ipi, {1, x(i + 1), 1, 1}), kRing) == raw(pip, {1, 1, 1, x(i + 2)}));
  CHECK(up.apply(raw(ipi, {1, 1, x(i + 1), 1}), kRing) == raw(pip, {x(i + 2), 1, 1, 1}));
  CHECK(up.apply(raw(ipi, {1, x(i), 1, 1}), kRing) == raw(pip, {x(i) + x(i + 1), 1, 1, 1}) - raw(pip, {1, 1, 1, x(i + 2)}));
  CHECK(up.apply(BSElement::one_tensor(ipi), kRing) == BSElement::one_tensor(pip));
  const MorphismMatrix& down = gen_matrix(six_token(i + 1, i), kRing);
  CHECK(down.apply(raw(pip, {1, x(i + 1), 1, 1}), kRing) == raw(ipi, {1, 1, 1, x(i)}));
  CHECK(down.apply(raw(pip, {1, 1, x(i + 1), 1}), kRing) == raw(ipi, {x(i), 1, 1, 1}));
  CHECK(down.apply(raw(pip, {1, x(i + 2), 1, 1}), kRing) == raw(ipi, {1, 1, 1, x(i + 1) + x(i + 2)}) - raw(ipi, {x(i), 1, 1, 1}));
}

TEST_CASE("shorthand generators agree with their composites") {
  for (int i = 1; i <= 3; ++i) {
    CHECK(gen_matrix(cup_token(i), kRing) == compose_v(gen_matrix(split_token(i), kRing), gen_matrix(start_dot(i), kRing), kRing));
    CHECK(gen_matrix(cap_token(i), kRing) == compose_v(gen_matrix(end_dot(i), kRing), gen_matrix(merge_token(i), kRing), kRing));
    MorphismMatrix dd = compose_v(gen_matrix(end_dot(i), kRing), gen_matrix(start_dot(i), kRing), kRing);
    CHECK(dd == gen_matrix(box_token(x(i)), kRing) - gen_matrix(box_token(x(i + 1)), kRing));
  }
  // The crossing factors through R (x)_{R^{i,j}} R.
  CHECK(gen_matrix(four_token(1, 3), kRing) ==
        compose_v(gen_matrix(aux_token(Gen::IJDown, {3, 1}), kRing), gen_matrix(aux_token(Gen::IJUp, {1, 3}), kRing), kRing));
}

TEST_CASE("aux round trips are identities") {
  for (int i = 1; i <= 3; ++i) {
    MorphismMatrix idw = MorphismMatrix::identity(Shape::aux(i, i + 1));
    CHECK(compose_v(gen_matrix(aux_token(Gen::IpiUp, {i}), kRing), gen_matrix(aux_token(Gen::IpiDown, {i}), kRing), kRing) == idw);
    CHECK(compose_v(gen_matrix(aux_token(Gen::PipUp, {i}), kRing), gen_matrix(aux_token(Gen::PipDown, {i}), kRing), kRing) == idw);
  }
  MorphismMatrix idw = MorphismMatrix::identity(Shape::aux(1, 4));
  CHECK(compose_v(gen_matrix(aux_token(Gen::IJUp, {4, 1}), kRing), gen_matrix(aux_token(Gen::IJDown, {4, 1}), kRing), kRing) == idw);
  CHECK(compose_v(gen_matrix(aux_token(Gen::IJDown, {1, 4}), kRing), gen_matrix(aux_token(Gen::IJUp, {1, 4}), kRing), kRing) ==
        MorphismMatrix::identity(Shape::bs({1, 4})));
}

TEST_CASE("one-tensors") {
  for (const auto& tok : all_tokens(3)) {
    if (tok.kind == Gen::Box || tok.kind == Gen::EndDot || tok.kind == Gen::StartDot || tok.kind == Gen::Cup) continue;
    CAPTURE(tok.str());
    BSElement img = gen_matrix(tok, kRing).apply(BSElement::one_tensor(tok.source()), kRing);
    if (tok.kind == Gen::Merge || tok.kind == Gen::Cap)
      CHECK(img.is_zero());
    else
      CHECK(img == BSElement::one_tensor(tok.target()));
  }
}

TEST_CASE("corrupted maps fail the bimodule check") {
  MorphismMatrix bad = gen_matrix(merge_token(1), kRing);
  bad.set_column(0, BSElement::one_tensor(Shape::bs({1})));
  CHECK_FALSE(check_bimodule(bad, kRing));
  CHECK(check_bimodule(MorphismMatrix::identity(Shape::bs({1, 2, 1})), kRing));
}

TEST_CASE("composition laws") {
  const MorphismMatrix& sp = gen_matrix(split_token(1), kRing);
  CHECK(compose_v(MorphismMatrix::identity(sp.target()), sp, kRing) == sp);
  CHECK(compose_h(MorphismMatrix::identity(Shape::bs({1})), MorphismMatrix::identity(Shape::bs({2})), kRing) ==
        MorphismMatrix::identity(Shape::bs({1, 2})));
  CHECK(compose_h(gen_matrix(box_token(x(1)), kRing), gen_matrix(box_token(x(2) + x(3)), kRing), kRing) ==
        gen_matrix(box_token(x(1) * (x(2) + x(3))), kRing));
  // Interchange on pairs of generators.
  auto toks = all_tokens(3);
  std::mt19937_64 rng(53);
  std::uniform_int_distribution<size_t> pick(0, toks.size() - 1);
  for (int k = 0; k < 20; ++k) {
    const MorphismMatrix& f = gen_matrix(toks[pick(rng)], kRing);
    const MorphismMatrix& g = gen_matrix(toks[pick(rng)], kRing);
    MorphismMatrix lhs = compose_v(compose_h(f, MorphismMatrix::identity(g.target()), kRing),
                                   compose_h(MorphismMatrix::identity(f.source()), g, kRing), kRing);
    MorphismMatrix rhs = compose_v(compose_h(MorphismMatrix::identity(f.target()), g, kRing),
                                   compose_h(f, MorphismMatrix::identity(g.source()), kRing), kRing);
    CHECK(lhs == compose_h(f, g, kRing));
    CHECK(rhs == compose_h(f, g, kRing));
    CHECK(compose_h(f, g, kRing).is_homogeneous());
  }
  // Horizontal composition through the localization oracle.
  const MorphismMatrix& sx = gen_matrix(six_token(1, 2), kRing);
  MorphismMatrix big = compose_h(gen_matrix(start_dot(3), kRing), sx, kRing);
  CHECK(check_bimodule(big, kRing));
}

TEST_CASE("parallel matrix product equals the serial one") {
  MorphismMatrix a = gen_matrix(six_token(1, 2), {3}, {1}, kRing);
  MorphismMatrix b = gen_matrix(six_token(2, 1), {3}, {1}, kRing);
  CHECK(compose_v(b, a, kRing, Exec::Parallel) == compose_v(b, a, kRing, Exec::Serial));
}

TEST_CASE("twisting") {
  for (int i = 1; i <= 3; ++i) {
    CHECK(twist(gen_matrix(split_token(i), kRing), Twist::TopRightDown, kRing) == gen_matrix(merge_token(i), kRing));
    CHECK(twist(gen_matrix(split_token(i), kRing), Twist::TopLeftDown, kRing) == gen_matrix(merge_token(i), kRing));
    CHECK(twist(gen_matrix(start_dot(i), kRing), Twist::TopRightDown, kRing) == gen_matrix(end_dot(i), kRing));
    CHECK(twist(gen_matrix(end_dot(i), kRing), Twist::BottomLeftUp, kRing) == gen_matrix(start_dot(i), kRing));
  }
  for (const auto& tok : all_tokens(3)) {
    if (tok.kind == Gen::Box || !tok.source().is_bs() || !tok.target().is_bs()) continue;
    const MorphismMatrix& m = gen_matrix(tok, kRing);
    if (m.target().length() > 0) {
      CHECK(twist(twist(m, Twist::TopRightDown, kRing), Twist::BottomRightUp, kRing) == m);
      CHECK(twist(twist(m, Twist::TopLeftDown, kRing), Twist::BottomLeftUp, kRing) == m);
    }
  }
  CHECK_THROWS(twist(gen_matrix(box_token(x(1)), kRing), Twist::TopRightDown, kRing));
}

TEST_CASE("invalid tokens") {
  CHECK_THROWS(gen_matrix(four_token(1, 2), kRing));
  CHECK_THROWS(gen_matrix(six_token(1, 3), kRing));
  CHECK_THROWS(gen_matrix(merge_token(5), kRing));
  CHECK_THROWS(gen_matrix(box_token(x(1) + 1), kRing));
  CHECK_THROWS(gen_matrix(box_token(x(7)), kRing));
}

TEST_CASE("dump format") {
  std::string d = gen_matrix(merge_token(1), kRing).dump();
  CHECK(d.find("(<1>, <x1|1>) = 1\n") != std::string::npos);
}
