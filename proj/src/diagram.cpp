#include "soergel/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace soergel {

namespace {

// Any color is acceptable at parse time; the ring bound is checked on
// evaluation.
constexpr int kParseColorBound = 1 << 20;

std::vector<int> parse_colors(const std::string& args, const std::string& where) {
  std::vector<int> out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) throw std::invalid_argument(where + ": missing color");
    for (char c : cur)
      if (!std::isdigit(static_cast<unsigned char>(c)) && c != '-')
        throw std::invalid_argument(where + ": bad color '" + cur + "'");
    try {
      out.push_back(std::stoi(cur));
    } catch (const std::logic_error&) {
      throw std::invalid_argument(where + ": bad color '" + cur + "'");
    }
    cur.clear();
  };
  for (char c : args) {
    if (c == ',') flush();
    else cur += c;
  }
  flush();
  return out;
}

GenToken parse_token(const std::string& word, const std::string& where) {
  auto colon = word.find(':');
  if (colon == std::string::npos) throw std::invalid_argument(where + ": token '" + word + "' needs ':' and colors");
  std::string name = word.substr(0, colon), args = word.substr(colon + 1);
  GenToken t;
  if (name == "box") {
    std::string body = args;
    if (body.size() >= 2 && body.front() == '(' && body.back() == ')') body = body.substr(1, body.size() - 2);
    try {
      t = box_token(Poly::parse(body));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(where + ": bad box polynomial '" + args + "': " + e.what());
    }
  } else {
    auto c = parse_colors(args, where);
    auto need = [&](size_t k) {
      if (c.size() != k) throw std::invalid_argument(where + ": '" + name + "' takes " + std::to_string(k) + " color(s)");
    };
    if (name == "id") need(1), t = id_token(c[0]);
    else if (name == "dot_s") need(1), t = start_dot(c[0]);
    else if (name == "dot_e") need(1), t = end_dot(c[0]);
    else if (name == "merge") need(1), t = merge_token(c[0]);
    else if (name == "split") need(1), t = split_token(c[0]);
    else if (name == "cup") need(1), t = cup_token(c[0]);
    else if (name == "cap") need(1), t = cap_token(c[0]);
    else if (name == "four") need(2), t = four_token(c[0], c[1]);
    else if (name == "six") {
      // "six:i" is shorthand for the vertex i (i+1) i -> (i+1) i (i+1).
      if (c.size() == 1) c.push_back(c[0] + 1);
      need(2);
      t = six_token(c[0], c[1]);
    } else {
      throw std::invalid_argument(where + ": unknown token '" + name + "'");
    }
  }
  try {
    t.validate(kParseColorBound);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(where + ": " + e.what());
  }
  return t;
}

std::string colors_str(const std::vector<int>& c) {
  std::string out = "(";
  for (size_t k = 0; k < c.size(); ++k) out += (k ? "," : "") + std::to_string(c[k]);
  return out + ")";
}

bool allowed_in_diagram(Gen g) {
  switch (g) {
    case Gen::IJUp: case Gen::IJDown: case Gen::IpiUp: case Gen::IpiDown: case Gen::PipUp: case Gen::PipDown:
      return false;
    default:
      return true;
  }
}

}  // namespace

std::vector<int> Diagram::lower(const Slice& s) {
  std::vector<int> out;
  for (const auto& t : s)
    for (int c : t.source().colors()) out.push_back(c);
  return out;
}

std::vector<int> Diagram::upper(const Slice& s) {
  std::vector<int> out;
  for (const auto& t : s)
    for (int c : t.target().colors()) out.push_back(c);
  return out;
}

Diagram::Diagram(std::vector<Slice> slices) : slices_(std::move(slices)) {
  if (slices_.empty()) slices_.emplace_back();
  for (const auto& s : slices_)
    for (const auto& t : s)
      if (!allowed_in_diagram(t.kind)) throw std::invalid_argument("token " + t.str() + " cannot appear in a diagram");
  for (size_t k = 0; k + 1 < slices_.size(); ++k) {
    auto up = upper(slices_[k]), lo = lower(slices_[k + 1]);
    if (up != lo)
      throw std::invalid_argument("boundary mismatch between slices " + std::to_string(k + 1) + " and " + std::to_string(k + 2) +
                                  ": " + colors_str(up) + " vs " + colors_str(lo));
  }
}

Diagram Diagram::identity(const std::vector<int>& colors) {
  Slice s;
  for (int c : colors) s.push_back(id_token(c));
  return Diagram({s});
}

Diagram Diagram::token(const GenToken& t) { return Diagram({Slice{t}}); }

Diagram Diagram::parse(std::string_view text) {
  std::vector<Slice> slices(1);
  size_t k = 0;
  while (k < text.size()) {
    char c = text[k];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++k;
      continue;
    }
    if (c == ';') {
      slices.emplace_back();
      ++k;
      continue;
    }
    size_t start = k;
    int depth = 0;
    while (k < text.size()) {
      char d = text[k];
      if (d == '(') ++depth;
      if (d == ')') --depth;
      if (depth < 0) throw std::invalid_argument("column " + std::to_string(k + 1) + ": unbalanced ')'");
      if (depth == 0 && (std::isspace(static_cast<unsigned char>(d)) || d == ';')) break;
      ++k;
    }
    if (depth != 0) throw std::invalid_argument("column " + std::to_string(start + 1) + ": unbalanced '('");
    std::string where = "slice " + std::to_string(slices.size()) + ", column " + std::to_string(start + 1);
    slices.back().push_back(parse_token(std::string(text.substr(start, k - start)), where));
  }
  return Diagram(std::move(slices));
}

std::vector<int> Diagram::domain() const { return lower(slices_.front()); }
std::vector<int> Diagram::codomain() const { return upper(slices_.back()); }

int Diagram::degree() const {
  int d = 0;
  for (const auto& s : slices_)
    for (const auto& t : s) d += t.degree();
  return d;
}

std::string Diagram::str() const {
  std::string out;
  for (size_t k = 0; k < slices_.size(); ++k) {
    if (k) out += " ; ";
    for (size_t j = 0; j < slices_[k].size(); ++j) out += (j ? " " : "") + slices_[k][j].str();
  }
  return out;
}

std::string Diagram::to_json() const {
  using nlohmann::json;
  json slices = json::array();
  for (const auto& s : slices_) {
    json tokens = json::array();
    for (const auto& t : s) {
      std::string text = t.str();
      json tok = {{"name", text.substr(0, text.find(':'))}, {"colors", t.colors}};
      if (t.kind == Gen::Box) tok["poly"] = t.poly.str();
      tokens.push_back(tok);
    }
    slices.push_back({{"tokens", tokens}});
  }
  json j = {{"slices", slices}, {"domain", domain()}, {"codomain", codomain()}, {"degree", degree()}};
  return j.dump(2);
}

Diagram stack(const Diagram& d1, const Diagram& d2) {
  if (d1.codomain() != d2.domain())
    throw std::invalid_argument("stacking " + colors_str(d2.domain()) + " on top of " + colors_str(d1.codomain()));
  auto s = d1.slices();
  s.insert(s.end(), d2.slices().begin(), d2.slices().end());
  return Diagram(std::move(s));
}

Diagram beside(const Diagram& d1, const Diagram& d2) {
  auto a = d1.slices(), b = d2.slices();
  auto pad = [](std::vector<Diagram::Slice>& s, size_t n) {
    auto top = Diagram::upper(s.back());
    while (s.size() < n) s.push_back(Diagram::identity(top).slices().front());
  };
  size_t n = std::max(a.size(), b.size());
  pad(a, n);
  pad(b, n);
  for (size_t k = 0; k < n; ++k) a[k].insert(a[k].end(), b[k].begin(), b[k].end());
  return Diagram(std::move(a));
}

LinearCombo::LinearCombo(const Diagram& d) : domain(d.domain()), codomain(d.codomain()) { terms.emplace_back(1, d); }

LinearCombo& LinearCombo::add(const mpq_class& c, const Diagram& d) {
  if (d.domain() != domain || d.codomain() != codomain)
    throw std::invalid_argument("combination term " + d.str() + " has boundary " + colors_str(d.domain()) + " -> " +
                                colors_str(d.codomain()) + ", expected " + colors_str(domain) + " -> " + colors_str(codomain));
  terms.emplace_back(c, d);
  return *this;
}

std::string LinearCombo::str() const {
  if (terms.empty()) return "0";
  std::string out;
  for (size_t k = 0; k < terms.size(); ++k) {
    std::string c = terms[k].first.get_str();
    if (k) out += " + ";
    out += c + " * [" + terms[k].second.str() + "]";
  }
  return out;
}

MorphismMatrix evaluate(const Diagram& d, const Ring& ring, Exec exec) {
  auto slice_matrix = [&](const Diagram::Slice& s) {
    if (s.empty()) return MorphismMatrix::identity(Shape::bs({}));
    bool all_id = std::all_of(s.begin(), s.end(), [](const GenToken& t) { return t.kind == Gen::Id; });
    if (all_id) {
      for (const auto& t : s) t.validate(ring.n);
      return MorphismMatrix::identity(Shape::bs(Diagram::lower(s)));
    }
    MorphismMatrix m = gen_matrix(s[0], ring);
    for (size_t k = 1; k < s.size(); ++k) m = compose_h(m, gen_matrix(s[k], ring), ring);
    return m;
  };
  MorphismMatrix acc = slice_matrix(d.slices().front());
  for (size_t k = 1; k < d.slices().size(); ++k) acc = compose_v(slice_matrix(d.slices()[k]), acc, ring, exec);
  return acc;
}

MorphismMatrix evaluate_combo(const LinearCombo& c, const Ring& ring, Exec exec) {
  MorphismMatrix acc(Shape::bs(c.domain), Shape::bs(c.codomain), 0);
  for (const auto& [coef, d] : c.terms) {
    if (d.domain() != c.domain || d.codomain() != c.codomain) throw std::invalid_argument("combination mixes boundaries");
    acc += evaluate(d, ring, exec).scaled(coef);
  }
  return acc;
}

// ---------------------------------------------------------------------------

namespace {

// Strand bookkeeping for i_graph: nodes are graph vertices (with rotation
// slots) or virtual joints of strands without a vertex, such as the bottom of
// a cup.
struct StrandNet {
  struct Node {
    bool real;
    OneColorGraph::Kind kind;
    int slots;
  };
  struct End {
    int node, slot;
  };
  std::vector<Node> nodes;
  std::vector<std::pair<End, End>> links;

  int real(OneColorGraph::Kind k, int slots) {
    nodes.push_back({true, k, slots});
    return static_cast<int>(nodes.size()) - 1;
  }
  int joint() {
    nodes.push_back({false, OneColorGraph::Kind::Dot, 2});
    return static_cast<int>(nodes.size()) - 1;
  }
  void link(End a, End b) { links.push_back({a, b}); }
};

}  // namespace

OneColorGraph i_graph(const Diagram& d, int i) {
  using K = OneColorGraph::Kind;
  using End = StrandNet::End;
  StrandNet net;
  std::vector<int> bottom, top;
  std::vector<End> level;  // open strand ends of color i, left to right
  for (int c : d.domain())
    if (c == i) {
      int b = net.real(K::Boundary, 1);
      bottom.push_back(b);
      level.push_back({b, 0});
    }
  for (const auto& slice : d.slices()) {
    std::vector<End> next;
    size_t pos = 0;
    auto take = [&]() { return level.at(pos++); };
    // Counterclockwise slots: top, bottom left, bottom right.
    auto merge_vertex = [&] {
      int v = net.real(K::Tri, 3);
      net.link(take(), {v, 1});
      net.link(take(), {v, 2});
      next.push_back({v, 0});
    };
    // Counterclockwise slots: top right, top left, bottom.
    auto split_vertex = [&] {
      int v = net.real(K::Tri, 3);
      net.link(take(), {v, 2});
      next.push_back({v, 1});
      next.push_back({v, 0});
    };
    for (const auto& t : slice) {
      const auto& c = t.colors;
      switch (t.kind) {
        case Gen::Id:
          if (c[0] == i) next.push_back(take());
          break;
        case Gen::Four:
          if (c[0] == i) next.push_back(take());
          if (c[1] == i) next.push_back(take());
          break;
        case Gen::EndDot:
          if (c[0] == i) net.link(take(), {net.real(K::Dot, 1), 0});
          break;
        case Gen::StartDot:
          if (c[0] == i) next.push_back({net.real(K::Dot, 1), 0});
          break;
        case Gen::Merge:
          if (c[0] == i) merge_vertex();
          break;
        case Gen::Split:
          if (c[0] == i) split_vertex();
          break;
        case Gen::Six:
          // a b a -> b a b: color a meets once from below, b once from above.
          if (c[0] == i) merge_vertex();
          if (c[1] == i) split_vertex();
          break;
        case Gen::Cup:
          if (c[0] == i) {
            int j = net.joint();
            next.push_back({j, 0});
            next.push_back({j, 1});
          }
          break;
        case Gen::Cap:
          if (c[0] == i) {
            End a = take(), b = take();
            net.link(a, b);
          }
          break;
        default:
          break;
      }
    }
    if (pos != level.size()) throw std::logic_error("i_graph: strand count mismatch");
    level = std::move(next);
  }
  for (size_t k = level.size(); k-- > 0;) {
    int b = net.real(K::Boundary, 1);
    top.push_back(b);
    net.link(level[k], {b, 0});
  }

  // Smooth the virtual joints away.
  const int N = static_cast<int>(net.nodes.size());
  std::vector<std::vector<int>> incident(N);  // link ids, one per slot
  for (int v = 0; v < N; ++v) incident[v].assign(net.nodes[v].slots, -1);
  for (size_t l = 0; l < net.links.size(); ++l) {
    auto [a, b] = net.links[l];
    incident[a.node][a.slot] = static_cast<int>(l);
    incident[b.node][b.slot] = static_cast<int>(l);
  }
  OneColorGraph g;
  std::vector<int> vid(N, -1);
  for (int v = 0; v < N; ++v)
    if (net.nodes[v].real) {
      vid[v] = g.add_vertex(net.nodes[v].kind);
      g.rot[vid[v]].assign(net.nodes[v].slots, -1);
    }
  for (int b : bottom) g.boundary.push_back(vid[b]);
  for (int b : top) g.boundary.push_back(vid[b]);
  std::vector<bool> used(net.links.size(), false);
  auto other = [&](int l, End from) {
    auto [a, b] = net.links[l];
    return (a.node == from.node && a.slot == from.slot) ? b : a;
  };
  for (int v = 0; v < N; ++v) {
    if (!net.nodes[v].real) continue;
    for (int s = 0; s < net.nodes[v].slots; ++s) {
      int l = incident[v][s];
      if (l < 0) throw std::logic_error("i_graph: dangling strand");
      if (used[l]) continue;
      End cur{v, s};
      End far = other(l, cur);
      used[l] = true;
      while (!net.nodes[far.node].real) {
        int l2 = incident[far.node][1 - far.slot];
        used[l2] = true;
        far = other(l2, {far.node, 1 - far.slot});
      }
      int e = g.edge_count();
      g.edges.push_back({{vid[v], vid[far.node]}});
      g.rot[vid[v]][s] = 2 * e;
      g.rot[vid[far.node]][far.slot] = 2 * e + 1;
    }
  }
  // Whatever is left runs through joints only: free circles.
  for (size_t l = 0; l < net.links.size(); ++l) {
    if (used[l]) continue;
    ++g.circles;
    End cur = net.links[l].first;
    int link = static_cast<int>(l);
    while (!used[link]) {
      used[link] = true;
      End far = other(link, cur);
      cur = {far.node, 1 - far.slot};
      link = incident[cur.node][cur.slot];
    }
  }
  return g;
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kUnit = 40, kBand = 70, kGap = 12, kMargin = 20;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  std::string s = buf;
  if (s.size() > 2 && s.compare(s.size() - 2, 2, ".0") == 0) s.resize(s.size() - 2);
  return s;
}

std::string stroke(int color) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
  return palette[(color - 1 + 8000) % 8];
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '&') out += "&amp;";
    else if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '"') out += "&quot;";
    else out += c;
  }
  return out;
}

struct Placed {
  double x0, width;
  std::vector<double> in, out;
};

std::vector<Placed> layout(const Diagram::Slice& s) {
  std::vector<Placed> out;
  double x = kMargin;
  for (const auto& t : s) {
    size_t nin = t.source().colors().size(), nout = t.target().colors().size();
    double w = kUnit * static_cast<double>(std::max<size_t>({1, nin, nout}));
    Placed p{x, w, {}, {}};
    for (size_t k = 0; k < nin; ++k) p.in.push_back(x + (k + 0.5) * w / nin);
    for (size_t k = 0; k < nout; ++k) p.out.push_back(x + (k + 0.5) * w / nout);
    out.push_back(p);
    x += w;
  }
  return out;
}

}  // namespace

std::string render_svg(const Diagram& d) {
  const auto& slices = d.slices();
  const size_t S = slices.size();
  std::vector<std::vector<Placed>> lay;
  double width = 2 * kMargin + kUnit;
  for (const auto& s : slices) {
    lay.push_back(layout(s));
    if (!lay.back().empty()) width = std::max(width, lay.back().back().x0 + lay.back().back().width + kMargin);
  }
  const double height = 2 * kMargin + S * kBand;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width) << "\" height=\"" << num(height)
     << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n"
     << "<title>" << escape(d.str()) << "</title>\n"
     << "<g fill=\"none\" stroke-width=\"2.5\" stroke-linecap=\"round\">\n";
  auto line = [&](double x1, double y1, double x2, double y2, int c) {
    os << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\"" << num(y2) << "\" stroke=\""
       << stroke(c) << "\"/>\n";
  };
  auto mark = [&](double x, double y, double r, int c) {
    os << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"" << num(r) << "\" fill=\"" << stroke(c) << "\" stroke=\"none\"/>\n";
  };
  for (size_t k = 0; k < S; ++k) {
    // Slice k occupies a band counted from the bottom of the picture.
    double yb = kMargin + (S - k) * kBand - kGap, yt = kMargin + (S - k - 1) * kBand + kGap, ym = (yb + yt) / 2;
    if (k > 0) {
      // Connect the previous slice's upper pins to this slice's lower pins.
      std::vector<double> from, to;
      for (const auto& p : lay[k - 1]) from.insert(from.end(), p.out.begin(), p.out.end());
      for (const auto& p : lay[k]) to.insert(to.end(), p.in.begin(), p.in.end());
      auto colors = Diagram::lower(slices[k]);
      for (size_t j = 0; j < to.size(); ++j) line(from[j], yb + 2 * kGap, to[j], yb, colors[j]);
    }
    for (size_t j = 0; j < slices[k].size(); ++j) {
      const auto& t = slices[k][j];
      const auto& p = lay[k][j];
      auto in = t.source().colors(), out = t.target().colors();
      double cx = p.x0 + p.width / 2;
      switch (t.kind) {
        case Gen::Id: line(p.in[0], yb, p.out[0], yt, in[0]); break;
        case Gen::EndDot:
          line(p.in[0], yb, p.in[0], ym, in[0]);
          mark(p.in[0], ym, 5, in[0]);
          break;
        case Gen::StartDot:
          line(p.out[0], ym, p.out[0], yt, out[0]);
          mark(p.out[0], ym, 5, out[0]);
          break;
        case Gen::Cup:
        case Gen::Cap: {
          bool cup = t.kind == Gen::Cup;
          const auto& xs = cup ? p.out : p.in;
          double y = cup ? yt : yb;
          os << "<path d=\"M " << num(xs[0]) << " " << num(y) << " C " << num(xs[0]) << " " << num(ym) << " " << num(xs[1]) << " "
             << num(ym) << " " << num(xs[1]) << " " << num(y) << "\" stroke=\"" << stroke(t.colors[0]) << "\"/>\n";
          break;
        }
        case Gen::Box: {
          std::string label = t.poly.str();
          double w = std::max(kUnit - 8, 7.0 * label.size() + 8);
          os << "<rect x=\"" << num(cx - w / 2) << "\" y=\"" << num(ym - 10) << "\" width=\"" << num(w)
             << "\" height=\"20\" stroke=\"#000000\" stroke-width=\"1\" fill=\"#ffffff\"/>\n"
             << "<text x=\"" << num(cx) << "\" y=\"" << num(ym + 4) << "\" font-family=\"monospace\" font-size=\"11\" "
             << "text-anchor=\"middle\" fill=\"#000000\" stroke=\"none\">" << escape(label) << "</text>\n";
          break;
        }
        default: {
          // Vertices: every pin runs to the centre.
          for (size_t a = 0; a < in.size(); ++a) line(p.in[a], yb, cx, ym, in[a]);
          for (size_t a = 0; a < out.size(); ++a) line(cx, ym, p.out[a], yt, out[a]);
          if (t.kind != Gen::Four) mark(cx, ym, 3, t.colors[0]);
          break;
        }
      }
    }
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

Poly random_homogeneous(int degree, int nvars, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(-2, 2), var(1, nvars);
  Poly p;
  while (p.is_zero()) {
    for (int term = 0; term < 2; ++term) {
      Poly m(coef(rng));
      for (int k = 0; k < degree; ++k) m = m * Poly::var(var(rng));
      p += m;
    }
  }
  return p;
}

}  // namespace

Diagram random_diagram_from(const std::vector<int>& domain, int n, std::mt19937_64& rng, const RandomDiagramOptions& opt) {
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  int nslices = uniform(1, std::max(1, opt.max_slices));
  std::vector<Diagram::Slice> slices;
  std::vector<int> cur = domain;
  for (int s = 0; s < nslices; ++s) {
    Diagram::Slice slice;
    std::vector<int> up;
    size_t p = 0;
    auto room = [&](int extra) {
      return static_cast<int>(up.size() + (cur.size() - p)) + extra <= opt.max_width;
    };
    while (true) {
      // Occasionally insert a token without lower strands.
      if (uniform(0, 5) == 0 || (cur.empty() && up.empty() && uniform(0, 4) != 0)) {
        int c = uniform(1, n);
        int kind = uniform(0, 2);
        if (kind == 0 && room(1)) slice.push_back(start_dot(c)), up.push_back(c);
        else if (kind == 1 && room(2)) slice.push_back(cup_token(c)), up.push_back(c), up.push_back(c);
        else if (kind == 2) slice.push_back(box_token(random_homogeneous(uniform(0, opt.max_box_degree), n + 1, rng)));
      }
      if (p == cur.size()) break;
      int a = cur[p];
      std::vector<GenToken> choices{id_token(a), id_token(a), end_dot(a)};
      if (room(1)) choices.push_back(split_token(a));
      if (p + 1 < cur.size()) {
        int b = cur[p + 1];
        if (a == b) choices.push_back(merge_token(a)), choices.push_back(cap_token(a));
        if (std::abs(a - b) >= 2) choices.push_back(four_token(a, b));
        if (p + 2 < cur.size() && cur[p + 2] == a && std::abs(a - b) == 1)
          choices.insert(choices.end(), 2, six_token(a, b));
      }
      GenToken t = choices[uniform(0, static_cast<int>(choices.size()) - 1)];
      slice.push_back(t);
      p += t.source().colors().size();
      for (int c : t.target().colors()) up.push_back(c);
    }
    slices.push_back(std::move(slice));
    cur = std::move(up);
  }
  return Diagram(std::move(slices));
}

Diagram random_diagram(int n, std::mt19937_64& rng, const RandomDiagramOptions& opt) {
  // Mostly nonempty lower boundaries; empty ones still occur.
  int w = std::uniform_int_distribution<int>(0, 5)(rng) == 0 ? 0 : std::uniform_int_distribution<int>(1, std::max(1, opt.max_width - 1))(rng);
  std::vector<int> dom;
  for (int k = 0; k < w; ++k) dom.push_back(std::uniform_int_distribution<int>(1, n)(rng));
  return random_diagram_from(dom, n, rng, opt);
}

}  // namespace soergel
