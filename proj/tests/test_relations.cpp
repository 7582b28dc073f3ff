#include <doctest.h>

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "soergel/relations.hpp"

using namespace soergel;

namespace {

const Relation& find(const std::vector<Relation>& rels, const std::string& name, const std::string& colors) {
  auto it = std::find_if(rels.begin(), rels.end(), [&](const Relation& r) { return r.name == name && r.colors == colors; });
  REQUIRE_MESSAGE(it != rels.end(), name << " " << colors);
  return *it;
}

// Multiplication by f as a map R -> R.
MorphismMatrix scalar_map(const Poly& f) {
  MorphismMatrix m(Shape(), Shape(), 2 * f.degree());
  BSElement e(Shape{});
  e.coord(0) = f;
  m.set_column(0, e);
  return m;
}

}  // namespace

TEST_CASE("combination text") {
  LinearCombo c = parse_combo("[box:x1] - 1/2*[box:x2] + 3 [dot_s:1 ; dot_e:1]");
  REQUIRE(c.terms.size() == 3);
  CHECK(c.terms[0].first == 1);
  CHECK(c.terms[1].first == mpq_class(-1, 2));
  CHECK(c.terms[2].first == 3);
  CHECK_THROWS_AS(parse_combo("0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_combo("[id:1] [id:1]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_combo("[id:1] + [id:2]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_combo("[id:1"), std::invalid_argument);
}

TEST_CASE("relations reject mismatched sides") {
  CHECK_THROWS_AS(parse_relation("bad", "", "[dot_s:1]", "[dot_e:1]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_relation("bad", "", "[dot_s:1 ; dot_e:1]", "[id:1 ; id:1]"), std::invalid_argument);
  // same boundary, different degree
  CHECK_THROWS_AS(parse_relation("bad", "", "[box:x1]", "[dot_s:1 ; split:1 ; merge:1 ; dot_e:1]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_relation("bad", "", "0", "0"), std::invalid_argument);
  Relation z = parse_relation("needle", "", "[cup:1 ; merge:1]", "0");
  CHECK(z.rhs.terms.empty());
  CHECK(z.rhs.codomain == std::vector<int>{1});
}

TEST_CASE("template expansion") {
  CHECK(expand_template("id:{i} box:x{i+1} dot_s:{i-1}", {{"i", 3}}) == "id:3 box:x4 dot_s:2");
  CHECK(expand_template("[{f} id:{i}]", {{"i", 2}}, {{"f", "box:(x1)"}}) == "[box:(x1) id:2]");
  CHECK_THROWS_AS(expand_template("{j}", {{"i", 1}}), std::invalid_argument);
}

TEST_CASE("family shapes") {
  auto rels = builtin_relations(5);
  const Relation& two = find(rels, "twoLines", "i=2");
  CHECK(two.lhs.terms.size() == 1);
  CHECK(two.rhs.terms.size() == 3);

  const Relation& t23 = find(rels, "threeLines", "a=2 b=3");
  const Relation& t32 = find(rels, "threeLines", "a=3 b=2");
  CHECK(t23.lhs.domain != t32.lhs.domain);

  const Relation& r3 = find(rels, "R3", "i=1 j=3 k=5");
  CHECK(r3.lhs.terms.size() == 1);
  CHECK(r3.rhs.terms.size() == 1);

  // every color order of {1, 3, 5}
  CHECK(std::count_if(rels.begin(), rels.end(), [](const Relation& r) { return r.name == "R3"; }) == 6);
  CHECK(std::count_if(rels.begin(), rels.end(), [](const Relation& r) { return r.name == "tripleOverlap"; }) == 3);

  for (const auto& r : rels) {
    INFO(r.name << " " << r.colors);
    CHECK(r.lhs.domain == r.rhs.domain);
    CHECK(r.lhs.codomain == r.rhs.codomain);
    int deg = r.lhs.terms.empty() ? r.rhs.terms[0].second.degree() : r.lhs.terms[0].second.degree();
    for (const auto* side : {&r.lhs, &r.rhs})
      for (const auto& t : side->terms) CHECK(t.second.degree() == deg);
  }
}

TEST_CASE("double dot and needle evaluate as stated") {
  Ring ring{3, false};
  auto rels = builtin_relations(3);
  for (int i = 1; i <= 3; ++i) {
    const Relation& dd = find(rels, "doubleDot", "i=" + std::to_string(i));
    CHECK(verify(dd, ring).pass);
    MorphismMatrix expect = scalar_map(Poly::var(i) - Poly::var(i + 1));
    CHECK(evaluate_combo(dd.lhs, ring) == expect);
    CHECK(evaluate_combo(dd.rhs, ring) == expect);

    const Relation& needle = find(rels, "needle", "i=" + std::to_string(i));
    CHECK(verify(needle, ring).pass);
    CHECK(evaluate_combo(needle.lhs, ring).is_zero());
    CHECK(evaluate_combo(needle.rhs, ring).is_zero());
  }
}

TEST_CASE("full suite at n = 5") {
  SuiteReport rep = verify_suite(5, false);
  for (const auto& l : rep.lines)
    if (!l.pass) FAIL_CHECK(l.str() << "\n" << l.detail);
  CHECK(rep.ok());
  CHECK(rep.lines.size() >= 100);
  CHECK(rep.skipped.empty());
  CHECK(rep.summary() == "summary: total=" + std::to_string(rep.lines.size()) + " passed=" + std::to_string(rep.lines.size()) +
                             " failed=0 skipped_families=0");
  std::set<std::string> families;
  for (const auto& l : rep.lines) families.insert(l.name.substr(0, l.name.find('.')));
  for (const char* f : {"slide1", "slide2", "slide3", "slide5", "slide6", "assoc", "coassoc", "counit", "unit", "biadjoint",
                        "twistMerge", "twistSplit", "twistDot1", "twistDot2", "associativity", "dotSpaceDot", "doubleDot",
                        "needle", "needleWithEye", "circle", "polygon", "twoLines", "threeLines", "ipipipRot", "ipipipDot",
                        "ipipipAss", "ipipipAssWDot", "ijijRot", "R2", "ijijDot", "pullFarThruTrivalent",
                        "pullFarThru6Valent", "R3", "tripleOverlap", "biadjointComposite", "colorElim"})
    CHECK_MESSAGE(families.count(f), f);
}

TEST_CASE("serial and parallel suites agree") {
  SuiteReport a = verify_suite(4, false, Exec::Serial);
  SuiteReport b = verify_suite(4, false, Exec::Parallel);
  REQUIRE(a.lines.size() == b.lines.size());
  for (size_t k = 0; k < a.lines.size(); ++k) {
    CHECK(a.lines[k].str() == b.lines[k].str());
    CHECK(a.lines[k].detail == b.lines[k].detail);
  }
}

TEST_CASE("mutated relations fail") {
  Ring ring{3, false};
  auto rels = builtin_relations(3);
  int mutated = 0;
  for (const auto& r : rels) {
    INFO(r.name << " " << r.colors);
    if (r.rhs.terms.empty()) {
      // nothing to flip: a vanishing relation stays true under any rescaling
      CHECK(evaluate_combo(r.lhs, ring).is_zero());
      continue;
    }
    VerifyResult v = verify(mutate(r), ring);
    CHECK_FALSE(v.pass);
    CHECK_FALSE(v.diff.empty());
    ++mutated;
  }
  CHECK(mutated > 150);
}

TEST_CASE("small n reports skipped families") {
  std::vector<SkippedFamily> skipped;
  auto rels = builtin_relations(2, &skipped);
  CHECK_FALSE(rels.empty());
  auto has = [&](const std::string& name) {
    return std::any_of(skipped.begin(), skipped.end(), [&](const SkippedFamily& s) { return s.name == name; });
  };
  CHECK(has("R3"));
  CHECK(has("tripleOverlap"));
  CHECK(has("distant-color relations"));
  CHECK_FALSE(has("adjacent-color relations"));
  for (const auto& r : rels) CHECK(r.name != "R2");
  SuiteReport rep = verify_suite(2, false);
  CHECK(rep.ok());
  CHECK(rep.skipped.size() == skipped.size());
  CHECK(rep.to_json().find("\"skipped\"") != std::string::npos);
  CHECK_THROWS_AS(builtin_relations(0), std::invalid_argument);
}

TEST_CASE("quotient mode") {
  SuiteReport rep = verify_suite(5, true);
  for (const auto& l : rep.lines)
    if (!l.pass) FAIL_CHECK(l.str() << "\n" << l.detail);
  CHECK(rep.ok());

  Ring q1{1, true};
  for (const auto& r : quotient_relations(1)) {
    INFO(r.name);
    CHECK(verify(r, q1).pass);
  }
  // without the quotient the e1 box is not zero
  Ring plain{1, false};
  auto qr = quotient_relations(1);
  CHECK_FALSE(verify(find(qr, "quotient.e1", "n=1"), plain).pass);
  CHECK_FALSE(verify(find(qr, "quotient.halfDoubleDot", "n=1"), plain).pass);
}

TEST_CASE("triple overlap on generators") {
  for (int n : {3, 5}) {
    for (int i = 2; i + 1 <= n; ++i) {
      SuiteReport rep = verify_triple_overlap_generators(n, i);
      CHECK(rep.lines.size() == 9);
      for (const auto& l : rep.lines) {
        INFO(l.str() << "\n" << l.detail);
        CHECK(l.pass);
      }
    }
  }
  CHECK_THROWS_AS(verify_triple_overlap_generators(3, 3), std::invalid_argument);
}

TEST_CASE("triple overlap sides agree with the localization oracle") {
  Ring ring{3, false};
  Relation rel = triple_overlap(2);
  MorphismMatrix left = evaluate_combo(rel.lhs, ring), right = evaluate_combo(rel.rhs, ring);
  auto gens = triple_overlap_generators(2, ring);
  // x' = x1 x2 x3 between the 2-colored strands goes to x2 x1 on the left and x1 on the right
  Shape tgt = Shape::bs({2, 3, 1, 2, 1, 3});
  RawTensor want(7, Poly(1));
  want[0] = Poly::var(2) * Poly::var(1);
  want[6] = Poly::var(1);
  CHECK(oracle::localize(left.apply(gens[7], ring), ring) == oracle::localize_raw(want, tgt, ring));
  CHECK(oracle::localize(right.apply(gens[7], ring), ring) == oracle::localize_raw(want, tgt, ring));
}

TEST_CASE("idempotent and adjunction identities") {
  for (int n : {1, 3, 5}) {
    SuiteReport rep = verify_identities(idempotent_identities(Ring{n, false}));
    for (const auto& l : rep.lines) {
      INFO(l.str() << "\n" << l.detail);
      CHECK(l.pass);
    }
  }
  auto ids = idempotent_identities(Ring{4, false});
  auto count = [&](const std::string& name) {
    return std::count_if(ids.begin(), ids.end(), [&](const MatrixIdentity& m) { return m.name == name; });
  };
  CHECK(count("twoLines.p1a1") == 4);
  CHECK(count("threeLines.sum") == 6);  // three adjacent pairs, both orders
  CHECK(count("aux.ijRoundTrip") == 3);
}

TEST_CASE("color elimination instances") {
  for (int n : {3, 4, 5}) {
    auto checks = color_elimination_checks(n);
    CHECK(checks.size() == 10);
    Ring ring{n, false};
    for (const auto& r : checks) {
      INFO(r.name << " " << r.colors);
      CHECK(verify(r, ring).pass);
      // the right side only uses the color that reaches the boundary
      int i = n >= 5 ? 2 : 1;
      for (const auto& t : r.rhs.terms)
        for (const auto& slice : t.second.slices())
          for (const auto& tok : slice)
            for (int c : tok.colors) CHECK(c == i);
    }
  }
  CHECK(color_elimination_checks(2).empty());
}
