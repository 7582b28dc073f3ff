#include <doctest.h>

#include <json.hpp>
#include <random>
#include <regex>

#include "oracles.hpp"
#include "soergel/diagram.hpp"

using namespace soergel;

namespace {

const Ring kRing{4, false};

Poly x(int i) { return Poly::var(i); }

MorphismMatrix ev(const std::string& text) { return evaluate(Diagram::parse(text), kRing); }

// Minimal XML well-formedness check: balanced tags and quoted attributes.
bool well_formed_xml(const std::string& s) {
  std::vector<std::string> open;
  size_t k = 0;
  while ((k = s.find('<', k)) != std::string::npos) {
    size_t end = s.find('>', k);
    if (end == std::string::npos) return false;
    std::string tag = s.substr(k + 1, end - k - 1);
    k = end + 1;
    if (tag.empty()) return false;
    if (tag[0] == '?' || tag[0] == '!') continue;
    if (std::count(tag.begin(), tag.end(), '"') % 2) return false;
    if (tag[0] == '/') {
      if (open.empty() || open.back() != tag.substr(1)) return false;
      open.pop_back();
      continue;
    }
    if (tag.back() == '/') continue;
    open.push_back(tag.substr(0, tag.find(' ')));
  }
  return open.empty();
}

size_t count_of(const std::string& s, const std::string& needle) {
  size_t c = 0;
  for (size_t k = s.find(needle); k != std::string::npos; k = s.find(needle, k + 1)) ++c;
  return c;
}

}  // namespace

TEST_CASE("parsing and printing") {
  auto d = Diagram::parse("id:1");
  CHECK(d.domain() == std::vector<int>{1});
  CHECK(d.codomain() == std::vector<int>{1});
  CHECK(d.degree() == 0);

  auto cup = Diagram::parse("dot_s:1 ; split:1");
  CHECK(cup.slices().size() == 2);
  CHECK(cup.domain().empty());
  CHECK(cup.codomain() == std::vector<int>{1, 1});
  CHECK(cup.degree() == 0);

  auto boxed = Diagram::parse("id:1 box:(x1 - x2) id:3 ; four:1,3 ; id:3 box:x5 id:1");
  CHECK(Diagram::parse(boxed.str()).str() == boxed.str());
  CHECK(boxed.degree() == 4);
  CHECK(Diagram::parse("six:2").str() == "six:2,3");
  CHECK(Diagram::parse("").domain().empty());

  CHECK_THROWS(Diagram::parse("merge:1 ; merge:1"));  // (1) cannot feed a merge
  CHECK_THROWS(Diagram::parse("frob:1"));
  CHECK_THROWS(Diagram::parse("id:0"));
  CHECK_THROWS(Diagram::parse("four:1,2"));
  CHECK_THROWS(Diagram::parse("six:1,3"));
  CHECK_THROWS(Diagram::parse("merge:1,2"));
  CHECK_THROWS(Diagram::parse("box:(x1 + x2^2)"));
  CHECK_THROWS(Diagram::parse("box:(x1"));
  CHECK_THROWS(Diagram::parse("id:2 six:3 ; cap:3 id:2"));
  CHECK_NOTHROW(Diagram::parse("merge:1 merge:1"));  // one slice, (1,1,1,1) -> (1,1)
  try {
    Diagram::parse("id:1 ; id:1 bogus:2");
    FAIL("expected an error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("slice 2, column 13") != std::string::npos);
  }
}

TEST_CASE("degrees") {
  CHECK(Diagram::parse("dot_s:1").degree() == 1);
  CHECK(Diagram::parse("cup:1").degree() == 0);
  CHECK(Diagram::parse("dot_s:1 dot_s:2 dot_s:3").degree() == 3);
  CHECK(Diagram::parse("merge:2 ; split:2").degree() == -2);
  CHECK(Diagram::parse("box:(x1*x2)").degree() == 4);
}

TEST_CASE("evaluation examples") {
  const int i = 2;
  Shape bi = Shape::bs({i});
  MorphismMatrix sd = ev("dot_s:2");
  CHECK(sd.degree() == 1);
  BSElement expected = normalize({x(i), 1}, bi, kRing) - normalize({1, x(i + 1)}, bi, kRing);
  CHECK(sd.apply(BSElement::one_tensor(Shape::bs({})), kRing) == expected);

  MorphismMatrix dd = ev("dot_s:2 ; dot_e:2");
  CHECK(dd == gen_matrix(box_token(x(i) - x(i + 1)), kRing));
  CHECK(ev("cup:2 ; merge:2").is_zero());
  CHECK(ev("dot_s:1 ; split:1") == ev("cup:1"));
  CHECK(ev("merge:1 ; dot_e:1") == ev("cap:1"));
  CHECK(ev("id:1 id:1") == MorphismMatrix::identity(Shape::bs({1, 1})));
  CHECK(ev("id:1 id:1").source().basis_size() == 4);
  CHECK(ev("").source() == Shape::bs({}));

  LinearCombo c(Diagram::parse("id:1"));
  c.add(0, Diagram::parse("dot_e:1 ; dot_s:1"));
  CHECK(evaluate_combo(c, kRing) == ev("id:1"));
  LinearCombo empty({1}, {1, 1});
  CHECK(evaluate_combo(empty, kRing).is_zero());
  CHECK(evaluate_combo(empty, kRing).target() == Shape::bs({1, 1}));
  CHECK_THROWS(c.add(1, Diagram::parse("id:2")));
  CHECK_THROWS(evaluate(Diagram::parse("id:5"), kRing));
}

TEST_CASE("random diagrams evaluate to homogeneous bimodule maps of their degree") {
  std::mt19937_64 rng(11);
  int nonzero = 0;
  for (int k = 0; k < 100; ++k) {
    Diagram d = random_diagram(kRing.n, rng);
    CAPTURE(d.str());
    MorphismMatrix m = evaluate(d, kRing);
    CHECK(m.source() == Shape::bs(d.domain()));
    CHECK(m.target() == Shape::bs(d.codomain()));
    CHECK(m.is_homogeneous());
    if (!m.is_zero()) {
      ++nonzero;
      CHECK(m.degree() == d.degree());
    }
    CHECK(check_bimodule(m, kRing));
    CHECK(Diagram::parse(d.str()).str() == d.str());
  }
  CHECK(nonzero > 50);
}

TEST_CASE("stacking and juxtaposition are functorial") {
  std::mt19937_64 rng(12);
  RandomDiagramOptions opt;
  opt.max_width = 3;
  opt.max_slices = 2;
  for (int k = 0; k < 100; ++k) {
    Diagram d1 = random_diagram(kRing.n, rng, opt);
    Diagram d2 = random_diagram_from(d1.codomain(), kRing.n, rng, opt);
    CAPTURE(d1.str());
    CAPTURE(d2.str());
    MorphismMatrix m1 = evaluate(d1, kRing), m2 = evaluate(d2, kRing);
    MorphismMatrix st = evaluate(stack(d1, d2), kRing);
    CHECK(st == compose_v(m2, m1, kRing));
    // Elementwise, on random inputs.
    for (int r = 0; r < 2; ++r) {
      BSElement e = oracle::random_element(rng, Shape::bs(d1.domain()), kRing, 1);
      CHECK(st.apply(e, kRing) == m2.apply(m1.apply(e, kRing), kRing));
    }
  }
  for (int k = 0; k < 100; ++k) {
    Diagram d1 = random_diagram(kRing.n, rng, opt);
    Diagram d2 = random_diagram(kRing.n, rng, opt);
    CAPTURE(d1.str());
    CAPTURE(d2.str());
    CHECK(evaluate(beside(d1, d2), kRing) == compose_h(evaluate(d1, kRing), evaluate(d2, kRing), kRing));
  }
}

TEST_CASE("planar isotopies leave the evaluation unchanged") {
  std::mt19937_64 rng(13);
  RandomDiagramOptions one;
  one.max_slices = 1;
  one.max_width = 2;
  for (int k = 0; k < 40; ++k) {
    // Two far-apart pieces exchange heights.
    Diagram a = random_diagram(kRing.n, rng, one), b = random_diagram(kRing.n, rng, one);
    CAPTURE(a.str());
    CAPTURE(b.str());
    Diagram a_first = stack(beside(a, Diagram::identity(b.domain())), beside(Diagram::identity(a.codomain()), b));
    Diagram b_first = stack(beside(Diagram::identity(a.domain()), b), beside(a, Diagram::identity(b.codomain())));
    CHECK(evaluate(a_first, kRing) == evaluate(b_first, kRing));
    // Sliding a piece through an identity region.
    Diagram slid = stack(Diagram::identity(a.domain()), a);
    CHECK(evaluate(slid, kRing) == evaluate(a, kRing));
  }
  // Zigzag: the cup and cap straighten.
  CHECK(ev("id:2 cup:2 ; cap:2 id:2") == ev("id:2"));
  CHECK(ev("cup:2 id:2 ; id:2 cap:2") == ev("id:2"));
  // A dot slides around a cap.
  CHECK(ev("dot_s:3 id:3 ; cap:3") == ev("id:3 dot_s:3 ; cap:3"));
}

TEST_CASE("one-color subgraphs") {
  auto g = i_graph(Diagram::parse("four:1,3"), 1);
  CHECK(g.boundary.size() == 2);
  CHECK(g.edge_count() == 1);
  CHECK(g.internal_vertex_count() == 0);

  auto six = i_graph(Diagram::parse("six:1,2"), 1);
  CHECK(six.internal_vertex_count() == 1);
  CHECK(six.boundary.size() == 3);
  CHECK(is_simple_tree(six));
  auto six_top = i_graph(Diagram::parse("six:1,2"), 2);
  CHECK(six_top.internal_vertex_count() == 1);
  CHECK(six_top.boundary.size() == 3);

  auto none = i_graph(Diagram::parse("merge:2 dot_s:3"), 1);
  CHECK(none == OneColorGraph{});

  auto circle = i_graph(Diagram::parse("cup:1 ; cap:1"), 1);
  CHECK(circle.circles == 1);
  CHECK(circle.vertex_count() == 0);

  // The needle: one loop at a trivalent vertex plus a boundary line.
  auto needle = i_graph(Diagram::parse("cup:1 ; merge:1"), 1);
  CHECK(needle.cycle_rank() == 1);
  CHECK(reduce_to_simple_forest(needle) == OneColorGraph::parse("vertices: b1(bd) d1(dot); edges: b1-d1; boundary: [b1]"));

  std::mt19937_64 rng(14);
  for (int k = 0; k < 100; ++k) {
    Diagram d = random_diagram(kRing.n, rng);
    for (int c = 1; c <= kRing.n; ++c) {
      CAPTURE(d.str());
      CAPTURE(c);
      auto gi = i_graph(d, c);
      CHECK_NOTHROW(gi.validate());
      auto dom = d.domain(), cod = d.codomain();
      size_t expect = std::count(dom.begin(), dom.end(), c) + std::count(cod.begin(), cod.end(), c);
      CHECK(gi.boundary.size() == expect);
      CHECK(is_simple_forest(reduce_to_simple_forest(gi)));
    }
  }
}

TEST_CASE("svg and json output") {
  std::string id = render_svg(Diagram::parse("id:1"));
  CHECK(well_formed_xml(id));
  CHECK(count_of(id, "<line") == 1);
  std::smatch m;
  REQUIRE(std::regex_search(id, m, std::regex("<line x1=\"([0-9.]+)\" y1=\"[0-9.]+\" x2=\"([0-9.]+)\"")));
  CHECK(m[1] == m[2]);  // vertical

  std::string cup = render_svg(Diagram::parse("cup:2"));
  CHECK(well_formed_xml(cup));
  CHECK(count_of(cup, "<path") == 1);
  CHECK(count_of(cup, "<line") == 0);

  std::mt19937_64 rng(15);
  for (int k = 0; k < 30; ++k) {
    Diagram d = random_diagram(kRing.n, rng);
    std::string svg = render_svg(d);
    CHECK(well_formed_xml(svg));
    CHECK(svg == render_svg(d));
  }
  std::string boxed = render_svg(Diagram::parse("id:1 box:(x1 - x2) id:1 ; merge:1 box:x1"));
  CHECK(false == well_formed_xml("<svg><g></svg>"));
  CHECK(well_formed_xml(boxed));
  CHECK(count_of(boxed, "<rect") == 2);

  auto j = nlohmann::json::parse(Diagram::parse("dot_s:1 ; split:1 box:(x1 - x2)").to_json());
  CHECK(j["domain"].empty());
  CHECK(j["codomain"] == nlohmann::json::array({1, 1}));
  CHECK(j["slices"].size() == 2);
  CHECK(j["slices"][1]["tokens"][0]["name"] == "split");
  CHECK(j["slices"][1]["tokens"][0]["colors"] == nlohmann::json::array({1}));
  CHECK(j["slices"][1]["tokens"][1]["poly"] == "x1 - x2");
}
