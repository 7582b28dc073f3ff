#include "soergel/relations.hpp"

#include <cctype>
#include <json.hpp>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace soergel {

// ---------------------------------------------------------------------------
// Combination text

namespace {

struct ComboTerm {
  mpq_class coef;
  Diagram diagram;
};

std::vector<ComboTerm> parse_terms(std::string_view text, bool& is_zero) {
  std::vector<ComboTerm> out;
  size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("combination, column " + std::to_string(pos + 1) + ": " + what);
  };
  std::string_view trimmed = text;
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back()))) trimmed.remove_suffix(1);
  skip();
  if (trimmed.substr(pos) == "0") {
    is_zero = true;
    return out;
  }
  is_zero = false;
  bool first = true;
  while (true) {
    skip();
    if (pos == text.size()) break;
    mpq_class sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      if (text[pos] == '-') sign = -1;
      ++pos;
      skip();
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    mpq_class coef = 1;
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      size_t start = pos;
      while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/')) ++pos;
      try {
        coef = mpq_class(std::string(text.substr(start, pos - start)));
        coef.canonicalize();
      } catch (const std::exception&) {
        fail("bad coefficient");
      }
      skip();
      if (pos < text.size() && text[pos] == '*') ++pos;
      skip();
    }
    if (pos == text.size() || text[pos] != '[') fail("expected '['");
    size_t close = text.find(']', pos);
    if (close == std::string_view::npos) fail("missing ']'");
    Diagram d = Diagram::parse(text.substr(pos + 1, close - pos - 1));
    out.push_back({sign * coef, std::move(d)});
    pos = close + 1;
    first = false;
  }
  if (out.empty()) fail("no terms");
  return out;
}

LinearCombo build(const std::vector<ComboTerm>& terms, const std::vector<int>& dom, const std::vector<int>& cod) {
  LinearCombo c(dom, cod);
  for (const auto& t : terms) c.add(t.coef, t.diagram);
  return c;
}

std::string colors_str(const std::vector<int>& c) {
  std::string s = "(";
  for (size_t k = 0; k < c.size(); ++k) s += (k ? "," : "") + std::to_string(c[k]);
  return s + ")";
}

}  // namespace

LinearCombo parse_combo(std::string_view text) {
  bool zero = false;
  auto terms = parse_terms(text, zero);
  if (zero) throw std::invalid_argument("a bare 0 has no boundary; use parse_relation");
  return build(terms, terms[0].diagram.domain(), terms[0].diagram.codomain());
}

Relation parse_relation(std::string name, std::string colors, std::string_view lhs, std::string_view rhs) {
  bool lz = false, rz = false;
  auto lt = parse_terms(lhs, lz);
  auto rt = parse_terms(rhs, rz);
  if (lz && rz) throw std::invalid_argument(name + ": both sides are 0");
  const Diagram& ref = lz ? rt[0].diagram : lt[0].diagram;
  int deg = ref.degree();
  for (const auto* side : {&lt, &rt})
    for (const auto& t : *side)
      if (t.diagram.degree() != deg)
        throw std::invalid_argument(name + ": term [" + t.diagram.str() + "] has degree " + std::to_string(t.diagram.degree()) +
                                    ", expected " + std::to_string(deg));
  Relation r{std::move(name), std::move(colors), std::string(lhs), std::string(rhs),
             LinearCombo(ref.domain(), ref.codomain()), LinearCombo(ref.domain(), ref.codomain())};
  try {
    r.lhs = build(lt, ref.domain(), ref.codomain());
    r.rhs = build(rt, ref.domain(), ref.codomain());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(r.name + ": " + e.what());
  }
  return r;
}

std::string expand_template(std::string_view text, const std::map<std::string, int>& ints,
                            const std::map<std::string, std::string>& strings) {
  static const std::regex ph(R"(\{([A-Za-z_]+)([+-][0-9]+)?\})");
  std::string src(text), out;
  auto begin = std::sregex_iterator(src.begin(), src.end(), ph);
  size_t last = 0;
  for (auto it = begin; it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    out += src.substr(last, m.position() - last);
    std::string key = m[1];
    if (auto s = strings.find(key); s != strings.end() && !m[2].matched) {
      out += s->second;
    } else if (auto v = ints.find(key); v != ints.end()) {
      int value = v->second + (m[2].matched ? std::stoi(m[2]) : 0);
      out += std::to_string(value);
    } else {
      throw std::invalid_argument("template placeholder " + m.str() + " is unbound");
    }
    last = m.position() + m.length();
  }
  out += src.substr(last);
  return out;
}

// ---------------------------------------------------------------------------
// The relation library

namespace {

using Ints = std::map<std::string, int>;
using Strings = std::map<std::string, std::string>;

struct Library {
  std::vector<Relation>& out;

  void add(const std::string& name, const std::string& colors, std::string_view lhs, std::string_view rhs, const Ints& ints,
           const Strings& strings = {}) {
    std::string l = expand_template(lhs, ints, strings), r = expand_template(rhs, ints, strings);
    try {
      out.push_back(parse_relation(name, colors, l, r));
    } catch (const std::invalid_argument& e) {
      throw std::logic_error("built-in relation " + name + " " + colors + " is malformed: " + e.what());
    }
  }
};

std::string box(const Poly& f) { return "box:(" + f.str() + ")"; }

std::string repeat(const std::string& tok, int k) {
  std::string s;
  for (int a = 0; a < k; ++a) s += " " + tok;
  return s;
}

// Polynomials fed to the slide and eye relations for color i: both the
// invariant part and the divided difference are nonzero for each of them.
std::vector<Poly> test_polys(int i, int n) {
  auto x = [](int v) { return Poly::var(v); };
  int far = i + 2 <= n + 1 ? i + 2 : i - 1;
  std::vector<Poly> fs{x(i) * x(i), x(i + 1) * x(i + 1) * x(i + 1)};
  if (far >= 1)
    fs.push_back(x(i) * x(i) * x(far) + x(i + 1) * x(far) * x(far));
  else
    fs.push_back(x(i) * x(i) * x(i + 1) + 2 * (x(i + 1) * x(i + 1) * x(i + 1)));
  return fs;
}

// k-gon with one spoke per corner: k-1 strands in, one out, the first
// region to the right of the leftmost strand is the inner face.
std::string polygon_text(int i, int k, const std::string& inside) {
  std::string c = std::to_string(i), id = "id:" + c;
  std::string s = "split:" + c + repeat(id, k - 2);
  if (!inside.empty()) s += " ; " + id + " " + inside + " " + id + repeat(id, k - 2);
  for (int left = k - 1; left >= 2; --left) s += " ; " + id + " merge:" + c + repeat(id, left - 2);
  s += " ; merge:" + c;
  return s;
}

// Left comb of merges from k-1 strands to one; the identity for k = 2.
std::string tree_text(int i, int k) {
  std::string c = std::to_string(i);
  if (k == 2) return "id:" + c;
  std::string s;
  for (int left = k - 1; left >= 2; --left) s += (s.empty() ? "" : " ; ") + std::string("merge:") + c + repeat("id:" + c, left - 2);
  return s;
}

void one_color(Library& lib, int n) {
  for (int i = 1; i <= n; ++i) {
    Ints I{{"i", i}};
    std::string col = "i=" + std::to_string(i);

    // polynomial slides
    lib.add("slide1", col, "[box:x{i} id:{i}] + [box:x{i+1} id:{i}]", "[id:{i} box:x{i}] + [id:{i} box:x{i+1}]", I);
    lib.add("slide2", col, "[box:x{i} box:x{i+1} id:{i}]", "[id:{i} box:x{i} box:x{i+1}]", I);
    for (int v = 1; v <= n + 1; ++v) {
      if (v == i || v == i + 1) continue;
      lib.add("slide3", col + " v=" + std::to_string(v), "[box:x{v} id:{i}]", "[id:{i} box:x{v}]", {{"i", i}, {"v", v}});
    }
    int fk = 0;
    for (const Poly& f : test_polys(i, n)) {
      ++fk;
      Poly df = demazure(i, f), pf = p_part(i, f);
      Strings S{{"f", box(f)}, {"df", box(df)}, {"pf", box(pf)}};
      std::string fc = col + " f=" + f.str();
      lib.add("slide5", fc, "[{f} id:{i}]", "[id:{i} {pf}] + [box:x{i} id:{i} {df}]", I, S);
      lib.add("slide6", fc, "[id:{i} {f}]", "[{pf} id:{i}] + [{df} id:{i} box:x{i}]", I, S);
      lib.add("needle.poly", fc, "[cup:{i} ; id:{i} {f} id:{i} ; merge:{i}]", "[{df} dot_s:{i}]", I, S);
      lib.add("needleWithEye.poly", fc, "[split:{i} ; id:{i} {f} id:{i} ; merge:{i}]", "[{df} id:{i}]", I, S);
      lib.add("circle.poly", fc, "[cup:{i} ; id:{i} {f} id:{i} ; cap:{i}]", "[{df} ; dot_s:{i} ; dot_e:{i}]", I, S);
      if (fk == 1) {
        for (int k = 3; k <= 4; ++k)
          lib.add("polygon.poly", fc + " k=" + std::to_string(k), "[" + polygon_text(i, k, "{f}") + "]",
                  "[{df} " + tree_text(i, k) + "]", I, S);
      }
    }

    // Frobenius structure
    lib.add("assoc", col, "[merge:{i} id:{i} ; merge:{i}]", "[id:{i} merge:{i} ; merge:{i}]", I);
    lib.add("coassoc", col, "[split:{i} ; split:{i} id:{i}]", "[split:{i} ; id:{i} split:{i}]", I);
    lib.add("counit.1", col, "[split:{i} ; dot_e:{i} id:{i}]", "[id:{i}]", I);
    lib.add("counit.2", col, "[split:{i} ; id:{i} dot_e:{i}]", "[id:{i}]", I);
    lib.add("unit.1", col, "[dot_s:{i} id:{i} ; merge:{i}]", "[id:{i}]", I);
    lib.add("unit.2", col, "[id:{i} dot_s:{i} ; merge:{i}]", "[id:{i}]", I);
    lib.add("biadjoint.1", col, "[cup:{i} id:{i} ; id:{i} cap:{i}]", "[id:{i}]", I);
    lib.add("biadjoint.2", col, "[id:{i} cup:{i} ; cap:{i} id:{i}]", "[id:{i}]", I);
    lib.add("twistMerge.1", col, "[merge:{i}]", "[id:{i} split:{i} ; cap:{i} id:{i}]", I);
    lib.add("twistMerge.2", col, "[merge:{i}]", "[split:{i} id:{i} ; id:{i} cap:{i}]", I);
    lib.add("twistSplit.1", col, "[split:{i}]", "[cup:{i} id:{i} ; id:{i} merge:{i}]", I);
    lib.add("twistSplit.2", col, "[split:{i}]", "[id:{i} cup:{i} ; merge:{i} id:{i}]", I);
    lib.add("twistDot1.1", col, "[dot_e:{i}]", "[id:{i} dot_s:{i} ; cap:{i}]", I);
    lib.add("twistDot1.2", col, "[dot_e:{i}]", "[dot_s:{i} id:{i} ; cap:{i}]", I);
    lib.add("twistDot2.1", col, "[dot_s:{i}]", "[cup:{i} ; dot_e:{i} id:{i}]", I);
    lib.add("twistDot2.2", col, "[dot_s:{i}]", "[cup:{i} ; id:{i} dot_e:{i}]", I);
    lib.add("associativity.1", col, "[merge:{i} ; split:{i}]", "[split:{i} id:{i} ; id:{i} merge:{i}]", I);
    lib.add("associativity.2", col, "[merge:{i} ; split:{i}]", "[id:{i} split:{i} ; merge:{i} id:{i}]", I);

    // dots and needles
    lib.add("dotSpaceDot.1", col, "[dot_e:{i} ; dot_s:{i}]", "[box:x{i} id:{i}] - [id:{i} box:x{i+1}]", I);
    lib.add("dotSpaceDot.2", col, "[dot_e:{i} ; dot_s:{i}]", "-[box:x{i+1} id:{i}] + [id:{i} box:x{i}]", I);
    lib.add("doubleDot", col, "[dot_s:{i} ; dot_e:{i}]", "[box:x{i}] - [box:x{i+1}]", I);
    lib.add("needle", col, "[cup:{i} ; merge:{i}]", "0", I);
    lib.add("needle.mirror", col, "[split:{i} ; cap:{i}]", "0", I);
    lib.add("needle.dot", col, "[cup:{i} ; id:{i} box:x{i} id:{i} ; merge:{i}]", "[dot_s:{i}]", I);
    lib.add("needleWithEye", col, "[split:{i} ; merge:{i}]", "0", I);
    lib.add("needleWithEye.line", col, "[split:{i} ; id:{i} box:x{i} id:{i} ; merge:{i}]", "[id:{i}]", I);
    lib.add("circle", col, "[cup:{i} ; cap:{i}]", "0", I);
    lib.add("circle.dots", col, "[cup:{i} ; dot_e:{i} id:{i} ; dot_s:{i} id:{i} ; cap:{i}]", "[dot_s:{i} ; dot_e:{i}]", I);
    for (int k = 2; k <= 4; ++k) {
      std::string kc = col + " k=" + std::to_string(k);
      lib.add("polygon", kc, "[" + polygon_text(i, k, "") + "]", "0", I);
      lib.add("polygon.line", kc, "[" + polygon_text(i, k, "box:x{i}") + "]", "[" + tree_text(i, k) + "]", I);
    }

    // decomposition of ii
    lib.add("twoLines", col, "[id:{i} id:{i}]",
            "[id:{i} dot_e:{i} ; split:{i}] + [merge:{i} box:x{i+1} ; split:{i}] - [merge:{i} ; split:{i} ; id:{i} box:x{i+1} id:{i}]", I);
    lib.add("twoLines.lower", col, "[id:{i} id:{i}]",
            "[id:{i} box:x{i} id:{i} ; merge:{i} ; split:{i}] - [merge:{i} ; split:{i} ; id:{i} box:x{i+1} id:{i}]", I);
    lib.add("twoLines.upper", col, "[id:{i} id:{i}]",
            "[merge:{i} ; split:{i} ; id:{i} box:x{i} id:{i}] - [id:{i} box:x{i+1} id:{i} ; merge:{i} ; split:{i}]", I);

    // moving a strand between the boundaries and back is the identity
    lib.add("biadjointComposite.split", col, "[id:{i} cup:{i} ; split:{i} id:{i} id:{i} ; id:{i} cap:{i} id:{i}]", "[split:{i}]", I);
    lib.add("biadjointComposite.dot", col, "[cup:{i} ; dot_s:{i} id:{i} id:{i} ; cap:{i} id:{i}]", "[dot_s:{i}]", I);
  }
}

void adjacent(Library& lib, int n) {
  for (int i = 1; i + 1 <= n; ++i) {
    for (auto [a, b] : {std::pair{i, i + 1}, std::pair{i + 1, i}}) {
      Ints I{{"a", a}, {"b", b}};
      std::string col = "a=" + std::to_string(a) + " b=" + std::to_string(b);
      lib.add("threeLines", col, "[id:{a} id:{b} id:{a}]",
              "[six:{a},{b} ; six:{b},{a}] - [id:{a} dot_e:{b} id:{a} ; merge:{a} ; split:{a} ; id:{a} dot_s:{b} id:{a}]", I);
      lib.add("ipipipRot.ccw", col, "[six:{b},{a}]",
              "[cup:{a} id:{b} id:{a} id:{b} ; id:{a} six:{a},{b} id:{b} ; id:{a} id:{b} id:{a} cap:{b}]", I);
      lib.add("ipipipRot.cw", col, "[six:{b},{a}]",
              "[id:{b} id:{a} id:{b} cup:{a} ; id:{b} six:{a},{b} id:{a} ; cap:{b} id:{a} id:{b} id:{a}]", I);
      lib.add("ipipipDot", col, "[six:{a},{b} ; id:{b} dot_e:{a} id:{b}]",
              "[dot_e:{a} id:{b} dot_e:{a} ; split:{b}] + [id:{a} dot_e:{b} id:{a} ; merge:{a} ; dot_e:{a} ; cup:{b}]", I);
      lib.add("ipipipAss.right", col, "[six:{a},{b} id:{b} ; id:{b} id:{a} merge:{b}]",
              "[id:{a} six:{b},{a} ; merge:{a} id:{b} id:{a} ; six:{a},{b}]", I);
      lib.add("ipipipAss.left", col, "[id:{b} six:{a},{b} ; merge:{b} id:{a} id:{b}]",
              "[six:{b},{a} id:{a} ; id:{a} id:{b} merge:{a} ; six:{a},{b}]", I);
      lib.add("ipipipAssWDot", col, "[six:{a},{b}]",
              "[id:{a} id:{b} id:{a} dot_s:{b} ; id:{a} six:{b},{a} ; merge:{a} id:{b} id:{a} ; six:{a},{b}]", I);
      lib.add("biadjointComposite.six", col,
              "[id:{a} id:{b} id:{a} cup:{b} ; six:{a},{b} id:{b} id:{b} ; id:{b} id:{a} cap:{b} id:{b}]", "[six:{a},{b}]", I);
    }
  }
}

void distant(Library& lib, int n) {
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (std::abs(i - j) < 2) continue;
      Ints I{{"i", i}, {"j", j}};
      std::string col = "i=" + std::to_string(i) + " j=" + std::to_string(j);
      lib.add("ijijRot.ccw", col, "[four:{j},{i}]", "[cup:{i} id:{j} id:{i} ; id:{i} four:{i},{j} id:{i} ; id:{i} id:{j} cap:{i}]", I);
      lib.add("ijijRot.cw", col, "[four:{j},{i}]", "[id:{j} id:{i} cup:{j} ; id:{j} four:{i},{j} id:{j} ; cap:{j} id:{i} id:{j}]", I);
      lib.add("R2", col, "[four:{i},{j} ; four:{j},{i}]", "[id:{i} id:{j}]", I);
      lib.add("ijijDot.start", col, "[dot_s:{i} id:{j} ; four:{i},{j}]", "[id:{j} dot_s:{i}]", I);
      lib.add("ijijDot.end", col, "[four:{i},{j} ; id:{j} dot_e:{i}]", "[dot_e:{i} id:{j}]", I);
      lib.add("pullFarThruTrivalent.merge", col, "[merge:{i} id:{j} ; four:{i},{j}]",
              "[id:{i} four:{i},{j} ; four:{i},{j} id:{i} ; id:{j} merge:{i}]", I);
      lib.add("pullFarThruTrivalent.split", col, "[split:{i} id:{j} ; id:{i} four:{i},{j} ; four:{i},{j} id:{i}]",
              "[four:{i},{j} ; id:{j} split:{i}]", I);
    }
  for (int i = 1; i + 1 <= n; ++i)
    for (auto [a, b] : {std::pair{i, i + 1}, std::pair{i + 1, i}})
      for (int j = 1; j <= n; ++j) {
        if (std::abs(j - a) < 2 || std::abs(j - b) < 2) continue;
        Ints I{{"a", a}, {"b", b}, {"j", j}};
        std::string col = "a=" + std::to_string(a) + " b=" + std::to_string(b) + " j=" + std::to_string(j);
        lib.add("pullFarThru6Valent", col,
                "[six:{a},{b} id:{j} ; id:{b} id:{a} four:{b},{j} ; id:{b} four:{a},{j} id:{b} ; four:{b},{j} id:{a} id:{b}]",
                "[id:{a} id:{b} four:{a},{j} ; id:{a} four:{b},{j} id:{a} ; four:{a},{j} id:{b} id:{a} ; id:{j} six:{a},{b}]", I);
      }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k) {
        if (std::abs(i - j) < 2 || std::abs(i - k) < 2 || std::abs(j - k) < 2) continue;
        Ints I{{"i", i}, {"j", j}, {"k", k}};
        std::string col = "i=" + std::to_string(i) + " j=" + std::to_string(j) + " k=" + std::to_string(k);
        lib.add("R3", col, "[four:{i},{j} id:{k} ; id:{j} four:{i},{k} ; four:{j},{k} id:{i}]",
                "[id:{i} four:{j},{k} ; four:{i},{k} id:{j} ; id:{k} four:{i},{j}]", I);
      }
}

// The two ways around the reduced expressions of the longest element of the
// parabolic subgroup on {c, i, p}: source c p i p c i, target i p c i c p.
const char* kTripleLeft =
    "four:{c},{p} id:{i} id:{p} id:{c} id:{i} ; id:{p} id:{c} id:{i} four:{p},{c} id:{i} ; id:{p} six:{c},{i} id:{p} id:{i} ; "
    "id:{p} id:{i} id:{c} six:{i},{p} ; id:{p} id:{i} four:{c},{p} id:{i} id:{p} ; six:{p},{i} id:{c} id:{i} id:{p} ; "
    "id:{i} id:{p} six:{i},{c} id:{p}";
const char* kTripleRight =
    "id:{c} six:{p},{i} id:{c} id:{i} ; id:{c} id:{i} id:{p} six:{i},{c} ; id:{c} id:{i} four:{p},{c} id:{i} id:{c} ; "
    "six:{c},{i} id:{p} id:{i} id:{c} ; id:{i} id:{c} six:{i},{p} id:{c} ; id:{i} four:{c},{p} id:{i} id:{p} id:{c} ; "
    "id:{i} id:{p} id:{c} id:{i} four:{p},{c}";

void triple(Library& lib, int n) {
  for (int i = 2; i + 1 <= n; ++i) {
    std::string col = "i=" + std::to_string(i);
    lib.add("tripleOverlap", col, std::string("[") + kTripleLeft + "]", std::string("[") + kTripleRight + "]",
            {{"c", i - 1}, {"i", i}, {"p", i + 1}});
    // the same relation turned by a quarter, which swaps the outer colors
    lib.add("tripleOverlap.turned", col, std::string("[") + kTripleLeft + "]", std::string("[") + kTripleRight + "]",
            {{"c", i + 1}, {"i", i}, {"p", i - 1}});
  }
}

}  // namespace

std::vector<Relation> builtin_relations(int n, std::vector<SkippedFamily>* skipped) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  std::vector<Relation> out;
  Library lib{out};
  one_color(lib, n);
  adjacent(lib, n);
  distant(lib, n);
  triple(lib, n);
  if (skipped) {
    skipped->clear();
    if (n < 2) skipped->push_back({"adjacent-color relations", "need two adjacent colors (n >= 2)"});
    if (n < 3) skipped->push_back({"distant-color relations", "need two distant colors (n >= 3)"});
    if (n < 4) skipped->push_back({"pullFarThru6Valent", "needs a color distant from an adjacent pair (n >= 4)"});
    if (n < 5) skipped->push_back({"R3", "needs three mutually distant colors (n >= 5)"});
    if (n < 3) skipped->push_back({"tripleOverlap", "needs colors i-1, i, i+1 (n >= 3)"});
    if (n < 3) skipped->push_back({"colorElimination", "needs a distant pair next to an adjacent pair (n >= 3)"});
  }
  return out;
}

std::vector<Relation> color_elimination_checks(int n) {
  std::vector<Relation> out;
  if (n < 3) return out;
  Library lib{out};
  int i = n >= 5 ? 2 : 1;
  Ints I{{"i", i}, {"p", i + 1}, {"j", i + 2}};
  std::string col = "i=" + std::to_string(i) + " p=" + std::to_string(i + 1) + " j=" + std::to_string(i + 2);
  lib.add("colorElim.1", col, "[cup:{p} ; id:{p} box:x{p} id:{p} ; cap:{p}]", "[box:(x{p} - x{p+1})]", I);
  lib.add("colorElim.2", col, "[cup:{p} ; cap:{p}]", "0", I);
  lib.add("colorElim.3", col, "[id:{i} dot_s:{p} ; id:{i} dot_e:{p}]", "[id:{i} box:(x{p} - x{p+1})]", I);
  lib.add("colorElim.4", col, "[dot_s:{p} ; split:{p} ; merge:{p} ; dot_e:{p}]", "0", I);
  lib.add("colorElim.5", col, "[dot_s:{p} ; split:{p} ; id:{p} box:x{p} id:{p} ; merge:{p} ; dot_e:{p}]", "[box:(x{p} - x{p+1})]", I);
  lib.add("colorElim.6", col, "[cup:{j} id:{i} ; id:{j} four:{j},{i} ; four:{j},{i} id:{j} ; id:{i} cap:{j}]", "0", I);
  lib.add("colorElim.7", col,
          "[cup:{j} id:{i} ; id:{j} box:x{j} id:{j} id:{i} ; id:{j} four:{j},{i} ; four:{j},{i} id:{j} ; id:{i} cap:{j}]",
          "[box:(x{j} - x{j+1}) id:{i}]", I);
  lib.add("colorElim.8", col, "[id:{i} cup:{p} id:{i} ; id:{i} id:{p} box:x{p} id:{p} id:{i} ; id:{i} cap:{p} id:{i}]",
          "[id:{i} box:(x{p} - x{p+1}) id:{i}]", I);
  lib.add("colorElim.9", col, "[dot_s:{j} id:{i} ; four:{j},{i} ; four:{i},{j} ; dot_e:{j} id:{i}]", "[box:(x{j} - x{j+1}) id:{i}]", I);
  lib.add("colorElim.10", col, "[id:{i} dot_s:{p} id:{i} ; six:{i},{p} ; six:{p},{i} ; id:{i} dot_e:{p} id:{i}]",
          "[id:{i} box:(x{p} - x{p+1}) id:{i}] + "
          "[id:{i} box:(x{p} - x{p+1}) id:{i} ; merge:{i} ; split:{i} ; id:{i} box:(x{p} - x{p+1}) id:{i}]",
          I);
  return out;
}

std::vector<Relation> quotient_relations(int n) {
  std::vector<Relation> out;
  Library lib{out};
  std::string e1;
  for (int v = 1; v <= n + 1; ++v) e1 += (v > 1 ? " + x" : "x") + std::to_string(v);
  lib.add("quotient.e1", "n=" + std::to_string(n), "[box:(" + e1 + ")]", "0", {});
  lib.add("quotient.e1Strand", "n=" + std::to_string(n), "[id:1 box:(" + e1 + ")]", "0", {});
  // (n+1) x1 = sum_k (n+1-k) (x_k - x_{k+1}) once e1 = 0
  std::string rhs;
  for (int k = 1; k <= n; ++k) {
    mpq_class c(n + 1 - k, n + 1);
    c.canonicalize();
    rhs += (k > 1 ? " + " : "") + c.get_str() + "*[dot_s:" + std::to_string(k) + " ; dot_e:" + std::to_string(k) + "]";
  }
  if (n == 1) lib.add("quotient.halfDoubleDot", "n=1", "[box:x1]", "1/2*[box:x1] - 1/2*[box:x2]", {});
  lib.add("quotient.boxFromDoubleDots", "n=" + std::to_string(n), "[box:x1]", rhs, {});
  return out;
}

// ---------------------------------------------------------------------------
// Verification

namespace {

std::string matrix_diff(const MorphismMatrix& a, const MorphismMatrix& b, size_t limit = 8) {
  std::ostringstream os;
  size_t shown = 0, total = 0;
  for (size_t s = 0; s < a.source().basis_size(); ++s) {
    BSElement x = a.image(s), y = b.image(s);
    for (size_t t = 0; t < a.target().basis_size(); ++t) {
      if (x.coord(t) == y.coord(t)) continue;
      ++total;
      if (shown < limit) {
        os << "  entry (" << a.target().tuple_str(t) << ", " << a.source().tuple_str(s) << "): lhs=" << x.coord(t).str()
           << " rhs=" << y.coord(t).str() << "\n";
        ++shown;
      }
    }
  }
  if (total > shown) os << "  ... " << (total - shown) << " more\n";
  return os.str();
}

}  // namespace

VerifyResult verify(const Relation& r, const Ring& ring, Exec exec) {
  VerifyResult v;
  try {
    MorphismMatrix a = evaluate_combo(r.lhs, ring, exec);
    MorphismMatrix b = evaluate_combo(r.rhs, ring, exec);
    v.pass = a == b;
    if (!v.pass) v.diff = matrix_diff(a, b);
  } catch (const std::exception& e) {
    v.pass = false;
    v.diff = std::string("  error: ") + e.what() + "\n";
  }
  return v;
}

Relation mutate(const Relation& r) {
  Relation m = r;
  m.name = r.name + ".mutated";
  if (!m.rhs.terms.empty()) {
    m.rhs.terms[0].first = -m.rhs.terms[0].first;
    m.rhs_text = m.rhs.str();
  } else {
    for (const auto& [c, d] : r.lhs.terms) m.rhs.add(c, d);
    m.rhs_text = m.rhs.str();
  }
  return m;
}

std::string SuiteLine::str() const { return std::string(pass ? "PASS " : "FAIL ") + name + " " + colors; }

int SuiteReport::passed() const {
  int k = 0;
  for (const auto& l : lines) k += l.pass;
  return k;
}
int SuiteReport::failed() const { return static_cast<int>(lines.size()) - passed(); }

std::string SuiteReport::summary() const {
  return "summary: total=" + std::to_string(lines.size()) + " passed=" + std::to_string(passed()) +
         " failed=" + std::to_string(failed()) + " skipped_families=" + std::to_string(skipped.size());
}

std::string SuiteReport::to_json() const {
  nlohmann::json j;
  j["total"] = lines.size();
  j["passed"] = passed();
  j["failed"] = failed();
  auto& arr = j["results"] = nlohmann::json::array();
  for (const auto& l : lines) arr.push_back({{"name", l.name}, {"colors", l.colors}, {"pass", l.pass}, {"detail", l.detail}});
  auto& sk = j["skipped"] = nlohmann::json::array();
  for (const auto& s : skipped) sk.push_back({{"family", s.name}, {"reason", s.reason}});
  return j.dump(2);
}

SuiteReport verify_all(const std::vector<Relation>& rels, const Ring& ring, Exec exec) {
  SuiteReport rep;
  rep.lines.resize(rels.size());
  // Parallelism is across relations; each evaluation runs serially.
  for_each_index(rels.size(), exec, [&](size_t k) {
    VerifyResult v = verify(rels[k], ring, Exec::Serial);
    rep.lines[k] = {v.pass, rels[k].name, rels[k].colors, v.diff};
  });
  return rep;
}

SuiteReport verify_suite(int n, bool quotient, Exec exec) {
  std::vector<SkippedFamily> skipped;
  auto rels = builtin_relations(n, &skipped);
  auto ce = color_elimination_checks(n);
  rels.insert(rels.end(), ce.begin(), ce.end());
  if (quotient) {
    auto q = quotient_relations(n);
    rels.insert(rels.end(), q.begin(), q.end());
  }
  SuiteReport rep = verify_all(rels, Ring{n, quotient}, exec);
  rep.skipped = std::move(skipped);
  return rep;
}

// ---------------------------------------------------------------------------
// Three-color associativity by generators

Relation triple_overlap(int i) {
  if (i < 2) throw std::invalid_argument("triple overlap needs i >= 2");
  Ints I{{"c", i - 1}, {"i", i}, {"p", i + 1}};
  return parse_relation("tripleOverlap", "i=" + std::to_string(i), expand_template(std::string("[") + kTripleLeft + "]", I),
                        expand_template(std::string("[") + kTripleRight + "]", I));
}

namespace {

// (slot, polynomial) placements on top of the 1-tensor, slots numbered 0..6.
using Placement = std::vector<std::pair<int, Poly>>;

BSElement placed(const Shape& shape, const Placement& p, const Ring& ring) {
  RawTensor rt(shape.length() + 1, Poly(1));
  for (const auto& [slot, f] : p) rt[slot] = rt[slot] * f;
  return normalize(rt, shape, ring);
}

std::vector<Placement> generator_placements(int i) {
  auto x = [](int v) { return Poly::var(v); };
  // slot 1 lies between the two (i-1) strands, slot 2 between the (i+1)
  // strands, slots 3..5 between the i strands; slot 3 serves both.
  return {
      {},
      {{1, x(i)}},
      {{2, x(i + 1)}},
      {{3, x(i + 1)}},
      {{1, x(i)}, {2, x(i + 1)}},
      {{1, x(i - 1)}, {3, x(i + 1)}},
      {{2, x(i + 1)}, {4, x(i + 1)}},
      {{3, x(i - 1) * x(i) * x(i + 1)}},
  };
}

// Expected images as (first slot, last slot) polynomials.
std::vector<std::pair<Poly, Poly>> expected_images(int i) {
  auto x = [](int v) { return Poly::var(v); };
  Poly one(1);
  return {
      {one, one},
      {one, x(i + 2)},
      {one, x(i - 1)},
      {one, x(i + 2)},
      {one, x(i - 1) * x(i + 2)},
      {x(i) * x(i - 1), one},
      {x(i + 1) * x(i + 2), one},
      {x(i) * x(i - 1), x(i - 1)},
  };
}

}  // namespace

std::vector<BSElement> triple_overlap_generators(int i, const Ring& ring) {
  Shape src = Shape::bs({i - 1, i + 1, i, i + 1, i - 1, i});
  std::vector<BSElement> out;
  for (const auto& p : generator_placements(i)) out.push_back(placed(src, p, ring));
  return out;
}

SuiteReport verify_triple_overlap_generators(int n, int i) {
  if (n < 3 || i < 2 || i + 1 > n) throw std::invalid_argument("triple overlap generators need 2 <= i <= n-1");
  Ring ring{n, false};
  Relation rel = triple_overlap(i);
  MorphismMatrix left = evaluate_combo(rel.lhs, ring), right = evaluate_combo(rel.rhs, ring);
  Shape tgt = Shape::bs({i, i + 1, i - 1, i, i - 1, i + 1});
  auto gens = triple_overlap_generators(i, ring);
  auto want = expected_images(i);
  SuiteReport rep;
  std::string col = "i=" + std::to_string(i);
  for (size_t g = 0; g < gens.size(); ++g) {
    BSElement a = left.apply(gens[g], ring), b = right.apply(gens[g], ring);
    BSElement w = placed(tgt, {{0, want[g].first}, {6, want[g].second}}, ring);
    bool ok = a == w && b == w;
    std::string detail;
    if (!ok) detail = "  expected " + w.str() + "\n  left " + a.str() + "\n  right " + b.str() + "\n";
    rep.lines.push_back({ok, "tripleOverlap.generator" + std::to_string(g + 1), col, detail});
  }
  // The eight elements generate the source as a bimodule.
  bool spans = true;
  std::string detail;
  for (const auto& e : spanning_set(gens[0].shape(), ring)) {
    try {
      express_in_generators(e, gens, ring);
    } catch (const std::domain_error&) {
      spans = false;
      detail = "  " + e.str() + " is not generated\n";
    }
  }
  rep.lines.push_back({spans, "tripleOverlap.generatorsSpan", col, detail});
  return rep;
}

// ---------------------------------------------------------------------------
// Idempotents, auxiliary bimodules and biadjunction

std::vector<MatrixIdentity> idempotent_identities(const Ring& ring) {
  const int n = ring.n;
  std::vector<MatrixIdentity> out;
  auto D = [&](const std::string& text) { return evaluate(Diagram::parse(text), ring); };
  auto G = [&](Gen g, std::vector<int> c) { return gen_matrix(aux_token(g, std::move(c)), ring); };
  auto V = [&](const MorphismMatrix& g, const MorphismMatrix& f) { return compose_v(g, f, ring); };
  auto zero_like = [](const MorphismMatrix& m) { return MorphismMatrix(m.source(), m.target(), m.degree()); };
  auto add = [&](std::string name, std::string col, MorphismMatrix l, MorphismMatrix r) {
    out.push_back({std::move(name), std::move(col), std::move(l), std::move(r)});
  };

  for (int i = 1; i <= n; ++i) {
    std::string c = std::to_string(i), c1 = std::to_string(i + 1), col = "i=" + c;
    // ii = i{1} + i{-1}
    MorphismMatrix p1 = D("id:" + c + " box:x" + c + " id:" + c + " ; merge:" + c);
    MorphismMatrix a1 = D("split:" + c);
    MorphismMatrix p2 = D("merge:" + c);
    MorphismMatrix a2 = D("split:" + c + " ; id:" + c + " box:x" + c1 + " id:" + c).scaled(-1);
    MorphismMatrix id1 = MorphismMatrix::identity(Shape::bs({i})), id2 = MorphismMatrix::identity(Shape::bs({i, i}));
    add("twoLines.p1a1", col, V(p1, a1), id1);
    add("twoLines.p2a2", col, V(p2, a2), id1);
    add("twoLines.p1a2", col, V(p1, a2), zero_like(id1));
    add("twoLines.p2a1", col, V(p2, a1), zero_like(id1));
    add("twoLines.sum", col, V(a1, p1) + V(a2, p2), id2);

    MorphismMatrix split = gen_matrix(split_token(i), ring);
    add("biadjoint.twistRight", col, twist(twist(split, Twist::TopRightDown, ring), Twist::BottomRightUp, ring), split);
    add("biadjoint.twistLeft", col, twist(twist(split, Twist::TopLeftDown, ring), Twist::BottomLeftUp, ring), split);
    add("biadjoint.twistMerge", col, twist(split, Twist::TopRightDown, ring), D("id:" + c + " split:" + c + " ; cap:" + c + " id:" + c));
  }

  for (int i = 1; i + 1 <= n; ++i) {
    for (auto [a, b] : {std::pair{i, i + 1}, std::pair{i + 1, i}}) {
      std::string A = std::to_string(a), B = std::to_string(b), col = "a=" + A + " b=" + B;
      bool ipi = a < b;
      MorphismMatrix up = G(ipi ? Gen::IpiUp : Gen::PipUp, {i});
      MorphismMatrix down = G(ipi ? Gen::IpiDown : Gen::PipDown, {i});
      MorphismMatrix other_down = G(ipi ? Gen::PipDown : Gen::IpiDown, {i});
      MorphismMatrix p2 = D("id:" + A + " dot_e:" + B + " id:" + A + " ; merge:" + A);
      MorphismMatrix a2 = D("split:" + A + " ; id:" + A + " dot_s:" + B + " id:" + A).scaled(-1);
      MorphismMatrix idw = MorphismMatrix::identity(up.target()), ida = MorphismMatrix::identity(Shape::bs({a}));
      MorphismMatrix idaba = MorphismMatrix::identity(Shape::bs({a, b, a}));
      add("threeLines.p1a1", col, V(up, down), idw);
      add("threeLines.p2a2", col, V(p2, a2), ida);
      add("threeLines.p1a2", col, V(up, a2), zero_like(V(up, a2)));
      add("threeLines.p2a1", col, V(p2, down), zero_like(V(p2, down)));
      add("threeLines.sum", col, V(down, up) + V(a2, p2), idaba);
      add("aux.sixThroughW", col, V(other_down, up), D("six:" + A + "," + B));
    }
  }

  for (int i = 1; i <= n; ++i)
    for (int j = i + 2; j <= n; ++j) {
      std::string col = "i=" + std::to_string(i) + " j=" + std::to_string(j);
      MorphismMatrix up = G(Gen::IJUp, {i, j}), down = G(Gen::IJDown, {i, j});
      MorphismMatrix up_ji = G(Gen::IJUp, {j, i}), down_ji = G(Gen::IJDown, {j, i});
      add("aux.ijRoundTrip", col, V(down, up), MorphismMatrix::identity(Shape::bs({i, j})));
      add("aux.wRoundTrip", col, V(up, down), MorphismMatrix::identity(up.target()));
      add("aux.fourThroughW", col, V(down_ji, up), D("four:" + std::to_string(i) + "," + std::to_string(j)));
      add("aux.fourBackThroughW", col, V(down, up_ji), D("four:" + std::to_string(j) + "," + std::to_string(i)));
    }
  return out;
}

SuiteReport verify_identities(const std::vector<MatrixIdentity>& ids) {
  SuiteReport rep;
  for (const auto& m : ids) {
    bool ok = m.lhs == m.rhs;
    rep.lines.push_back({ok, m.name, m.colors, ok ? "" : matrix_diff(m.lhs, m.rhs)});
  }
  return rep;
}

}  // namespace soergel
