#include "soergel/rewrite.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace soergel {

using Kind = OneColorGraph::Kind;

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

int valence(Kind k) { return k == Kind::Tri ? 3 : 1; }

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Dot: return "dot";
    case Kind::Tri: return "tri";
    case Kind::Boundary: return "bd";
  }
  return "?";
}

// The rotation at v read counterclockwise from dart d.
std::vector<int> rotation_from(const OneColorGraph& g, int v, int d) {
  const auto& r = g.rot[v];
  auto it = std::find(r.begin(), r.end(), d);
  if (it == r.end()) throw std::logic_error("dart missing from rotation");
  std::vector<int> out(r.size());
  size_t k = static_cast<size_t>(it - r.begin());
  for (size_t j = 0; j < r.size(); ++j) out[j] = r[(k + j) % r.size()];
  return out;
}

void replace_dart(std::vector<int>& rot, int from, int to) {
  auto it = std::find(rot.begin(), rot.end(), from);
  if (it == rot.end()) throw std::logic_error("dart missing from rotation");
  *it = to;
}

// Drops dead vertices and edges and renumbers darts.
OneColorGraph compact(const OneColorGraph& g, const std::vector<bool>& vdead, const std::vector<bool>& edead) {
  std::vector<int> vmap(g.vertex_count(), -1), emap(g.edge_count(), -1);
  OneColorGraph out;
  out.circles = g.circles;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (!vdead[v]) vmap[v] = out.add_vertex(g.kinds[v]);
  for (int e = 0; e < g.edge_count(); ++e) {
    if (edead[e]) continue;
    emap[e] = static_cast<int>(out.edges.size());
    out.edges.push_back({{vmap.at(g.edges[e].end[0]), vmap.at(g.edges[e].end[1])}});
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (vdead[v]) continue;
    for (int d : g.rot[v]) {
      if (emap[d >> 1] < 0) throw std::logic_error("live vertex keeps a dead edge");
      out.rot[vmap[v]].push_back(2 * emap[d >> 1] + (d & 1));
    }
  }
  for (int b : g.boundary) out.boundary.push_back(vmap.at(b));
  return out;
}

// Splits the edge of dart d (running u -> v) with a new trivalent vertex w.
// Returns w; rot[w] = {back to u, slot, forward to v} where the slot (still
// -1) faces the right-hand side of d.
int subdivide(OneColorGraph& g, int d) {
  int t = OneColorGraph::twin(d);
  int v = g.vertex_of(t);
  int w = g.add_vertex(Kind::Tri);
  int f = static_cast<int>(g.edges.size());
  g.edges.push_back({{w, v}});
  g.edges[d >> 1].end[t & 1] = w;
  replace_dart(g.rot[v], t, 2 * f + 1);
  g.rot[w] = {t, -1, 2 * f};
  return w;
}

void attach(OneColorGraph& g, int w, int slot, int z, std::vector<int> zrot_with_placeholder) {
  int c = static_cast<int>(g.edges.size());
  g.edges.push_back({{w, z}});
  g.rot[w][slot] = 2 * c;
  for (int& d : zrot_with_placeholder)
    if (d == -1) d = 2 * c + 1;
  g.rot[z] = std::move(zrot_with_placeholder);
}

}  // namespace

int OneColorGraph::add_vertex(Kind k) {
  kinds.push_back(k);
  rot.emplace_back();
  return vertex_count() - 1;
}

int OneColorGraph::add_edge(int u, int v) {
  int e = edge_count();
  edges.push_back({{u, v}});
  rot[u].push_back(2 * e);
  rot[v].push_back(2 * e + 1);
  return e;
}

int OneColorGraph::internal_vertex_count() const {
  return static_cast<int>(std::count_if(kinds.begin(), kinds.end(), [](Kind k) { return k != Kind::Boundary; }));
}

std::vector<OneColorGraph::Face> OneColorGraph::faces() const {
  const int V = vertex_count(), E = edge_count(), m = static_cast<int>(boundary.size());
  const int total = 2 * (E + m);
  // Augmented rotations; vertex V is the outer vertex.
  std::vector<std::vector<int>> arot(rot);
  arot.emplace_back();
  std::vector<int> dv(total);
  for (int d = 0; d < 2 * E; ++d) dv[d] = vertex_of(d);
  for (int k = 0; k < m; ++k) {
    int e = E + k;
    dv[2 * e] = V;
    dv[2 * e + 1] = boundary[k];
    arot[boundary[k]].push_back(2 * e + 1);
  }
  // Seen from outside the disk the boundary order is reversed.
  for (int k = m - 1; k >= 0; --k) arot[V].push_back(2 * (E + k));
  std::vector<int> pos(total, -1);
  for (auto& r : arot)
    for (size_t j = 0; j < r.size(); ++j) pos[r[j]] = static_cast<int>(j);
  std::vector<Face> out;
  std::vector<bool> seen(total, false);
  for (int start = 0; start < total; ++start) {
    if (seen[start] || pos[start] < 0) continue;
    Face f;
    int d = start;
    do {
      seen[d] = true;
      f.darts.push_back(d);
      if (d >= 2 * E) f.outer = true;
      int t = d ^ 1;
      const auto& r = arot[dv[t]];
      d = r[(pos[t] + 1) % r.size()];
    } while (d != start);
    out.push_back(std::move(f));
  }
  return out;
}

void OneColorGraph::validate() const {
  auto fail = [](const std::string& why) { throw std::invalid_argument("invalid graph: " + why); };
  const int V = vertex_count(), E = edge_count();
  if (static_cast<int>(rot.size()) != V) fail("rotation table size");
  if (circles < 0) fail("negative circle count");
  std::vector<int> count(2 * E, 0);
  for (int v = 0; v < V; ++v) {
    if (static_cast<int>(rot[v].size()) != valence(kinds[v]))
      fail("vertex " + std::to_string(v) + " has valence " + std::to_string(rot[v].size()));
    for (int d : rot[v]) {
      if (d < 0 || d >= 2 * E) fail("dart out of range");
      if (vertex_of(d) != v) fail("dart listed at the wrong vertex");
      ++count[d];
    }
  }
  for (int c : count)
    if (c != 1) fail("every dart must appear exactly once");
  std::vector<int> bpos(V, -1);
  for (size_t k = 0; k < boundary.size(); ++k) {
    int b = boundary[k];
    if (b < 0 || b >= V || kinds[b] != Kind::Boundary || bpos[b] >= 0) fail("bad boundary list");
    bpos[b] = static_cast<int>(k);
  }
  for (int v = 0; v < V; ++v)
    if (kinds[v] == Kind::Boundary && bpos[v] < 0) fail("boundary vertex missing from boundary list");
  // Euler characteristic per component of the augmented map.
  UnionFind uf(V + 1);
  for (const auto& e : edges) uf.unite(e.end[0], e.end[1]);
  for (int b : boundary) uf.unite(b, V);
  std::map<int, long> chi;
  for (int v = 0; v < V; ++v) chi[uf.find(v)] += 1;
  if (!boundary.empty()) chi[uf.find(V)] += 1;
  for (const auto& e : edges) chi[uf.find(e.end[0])] -= 1;
  for (int b : boundary) chi[uf.find(b)] -= 1;
  for (const auto& f : faces()) {
    int d = f.darts.front();
    int v = d < 2 * E ? vertex_of(d) : (d & 1 ? boundary[d / 2 - E] : V);
    chi[uf.find(v)] += 1;
  }
  for (auto& [root, c] : chi)
    if (c != 2) fail("rotation system is not planar with this boundary order");
}

std::vector<int> OneColorGraph::component_ids() const {
  UnionFind uf(vertex_count());
  for (const auto& e : edges) uf.unite(e.end[0], e.end[1]);
  std::vector<int> out(vertex_count());
  for (int v = 0; v < vertex_count(); ++v) out[v] = uf.find(v);
  return out;
}

int OneColorGraph::cycle_rank() const {
  auto comp = component_ids();
  int c = 0;
  for (int v = 0; v < vertex_count(); ++v) c += comp[v] == v;
  return edge_count() - vertex_count() + c + circles;
}

std::vector<int> OneColorGraph::boundary_partition() const {
  auto comp = component_ids();
  std::map<int, int> renum;
  std::vector<int> out;
  for (int b : boundary) {
    auto it = renum.emplace(comp[b], static_cast<int>(renum.size())).first;
    out.push_back(it->second);
  }
  return out;
}

namespace {

// Code of the component reached from root dart r: vertices are labelled in
// discovery order and each vertex lists its neighbours counterclockwise,
// starting from the dart it was discovered through.
std::string rooted_code(const OneColorGraph& g, int r, const std::vector<int>& bindex) {
  std::vector<int> label(g.vertex_count(), -1), entry(g.vertex_count(), -1);
  std::vector<int> order;
  int v0 = g.vertex_of(r);
  label[v0] = 0;
  entry[v0] = r;
  order.push_back(v0);
  std::string out;
  for (size_t k = 0; k < order.size(); ++k) {
    int v = order[k];
    out += kind_name(g.kinds[v]);
    if (g.kinds[v] == Kind::Boundary) out += "#" + std::to_string(bindex[v]);
    out += "(";
    for (int d : rotation_from(g, v, entry[v])) {
      int t = d ^ 1, w = g.vertex_of(t);
      if (label[w] < 0) {
        label[w] = static_cast<int>(order.size());
        entry[w] = t;
        order.push_back(w);
      }
      // Loops: distinguish which end of the loop comes first.
      out += std::to_string(label[w]) + (w == v ? (d < t ? "a" : "b") : "") + ",";
    }
    out += ")";
  }
  return out;
}

}  // namespace

std::string OneColorGraph::canonical() const {
  std::vector<int> bindex(vertex_count(), -1);
  for (size_t k = 0; k < boundary.size(); ++k) bindex[boundary[k]] = static_cast<int>(k);
  auto comp = component_ids();
  std::string out;
  std::vector<bool> done(vertex_count(), false);
  for (int b : boundary) {
    if (done[comp[b]]) continue;
    done[comp[b]] = true;
    out += "[" + rooted_code(*this, rot[b][0], bindex) + "]";
  }
  std::vector<std::string> floating;
  for (int v = 0; v < vertex_count(); ++v) {
    if (done[comp[v]]) continue;
    done[comp[v]] = true;
    std::string best;
    for (int d = 0; d < 2 * edge_count(); ++d) {
      if (comp[vertex_of(d)] != comp[v]) continue;
      // Loops carry a dart-order mark, so try the darts in both labellings.
      std::string code = rooted_code(*this, d, bindex);
      if (best.empty() || code < best) best = code;
    }
    floating.push_back(best);
  }
  std::sort(floating.begin(), floating.end());
  for (auto& f : floating) out += "{" + f + "}";
  return out + "c" + std::to_string(circles);
}

std::string OneColorGraph::str() const {
  std::vector<std::string> names(vertex_count());
  int nt = 0, nd = 0;
  for (size_t k = 0; k < boundary.size(); ++k) names[boundary[k]] = "b" + std::to_string(k + 1);
  for (int v = 0; v < vertex_count(); ++v) {
    if (kinds[v] == Kind::Tri) names[v] = "t" + std::to_string(++nt);
    if (kinds[v] == Kind::Dot) names[v] = "d" + std::to_string(++nd);
  }
  std::ostringstream os;
  os << "vertices:";
  for (int b : boundary) os << " " << names[b] << "(bd)";
  for (int v = 0; v < vertex_count(); ++v)
    if (kinds[v] != Kind::Boundary) os << " " << names[v] << "(" << kind_name(kinds[v]) << ")";
  os << "; edges:";
  for (const auto& e : edges) os << " " << names[e.end[0]] << "-" << names[e.end[1]];
  os << "; boundary: [";
  for (size_t k = 0; k < boundary.size(); ++k) os << (k ? "," : "") << names[boundary[k]];
  os << "]; circles: " << circles << "; rotation:";
  for (int v = 0; v < vertex_count(); ++v) {
    if (kinds[v] != Kind::Tri) continue;
    os << " " << names[v] << ":";
    for (size_t j = 0; j < rot[v].size(); ++j) os << (j ? "," : "") << (rot[v][j] >> 1);
  }
  return os.str();
}

namespace {

std::string trim(std::string_view s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

}  // namespace

OneColorGraph OneColorGraph::parse(std::string_view text) {
  auto fail = [](const std::string& why) { throw std::invalid_argument("graph text: " + why); };
  std::map<std::string, std::string> sections;
  for (const auto& part : split(std::string(text), ';')) {
    if (part.empty()) continue;
    auto colon = part.find(':');
    if (colon == std::string::npos) fail("section without ':' near '" + part + "'");
    std::string key = trim(part.substr(0, colon));
    if (key != "vertices" && key != "edges" && key != "boundary" && key != "circles" && key != "rotation")
      fail("unknown section '" + key + "'");
    if (!sections.emplace(key, trim(part.substr(colon + 1))).second) fail("duplicate section '" + key + "'");
  }
  OneColorGraph g;
  std::map<std::string, int> id;
  for (const auto& w : words(sections["vertices"])) {
    auto open = w.find('(');
    if (open == std::string::npos || w.back() != ')') fail("vertex '" + w + "' needs a kind, e.g. t1(tri)");
    std::string name = w.substr(0, open), kind = w.substr(open + 1, w.size() - open - 2);
    Kind k;
    if (kind == "dot") k = Kind::Dot;
    else if (kind == "tri") k = Kind::Tri;
    else if (kind == "bd" || kind == "boundary") k = Kind::Boundary;
    else fail("unknown vertex kind '" + kind + "'");
    if (name.empty() || !id.emplace(name, g.add_vertex(k)).second) fail("bad or duplicate vertex name '" + name + "'");
  }
  auto vertex = [&](const std::string& name) {
    auto it = id.find(name);
    if (it == id.end()) fail("undeclared vertex '" + name + "'");
    return it->second;
  };
  for (const auto& w : words(sections["edges"])) {
    auto dash = w.find('-');
    if (dash == std::string::npos) fail("edge '" + w + "' must look like u-v");
    g.add_edge(vertex(w.substr(0, dash)), vertex(w.substr(dash + 1)));
  }
  std::string b = sections["boundary"];
  if (!b.empty()) {
    if (b.front() != '[' || b.back() != ']') fail("boundary must be a bracketed list");
    for (const auto& name : split(b.substr(1, b.size() - 2), ','))
      if (!name.empty()) g.boundary.push_back(vertex(name));
  }
  if (sections.count("circles")) {
    try {
      size_t used = 0;
      g.circles = std::stoi(sections["circles"], &used);
      if (used != sections["circles"].size()) fail("bad circle count");
    } catch (const std::logic_error&) {
      fail("bad circle count '" + sections["circles"] + "'");
    }
  }
  for (const auto& w : words(sections["rotation"])) {
    auto colon = w.find(':');
    if (colon == std::string::npos) fail("rotation entry '" + w + "' must look like t1:0,1,2");
    int v = vertex(w.substr(0, colon));
    std::vector<int> r;
    std::vector<bool> used(2 * g.edge_count(), false);
    for (const auto& es : split(w.substr(colon + 1), ',')) {
      int e = -1;
      try {
        e = std::stoi(es);
      } catch (const std::logic_error&) {
        fail("bad edge index '" + es + "'");
      }
      if (e < 0 || e >= g.edge_count()) fail("edge index out of range in rotation");
      int d = (g.edges[e].end[0] == v && !used[2 * e]) ? 2 * e : 2 * e + 1;
      if (g.edges[e].end[d & 1] != v || used[d]) fail("rotation of " + w.substr(0, colon) + " lists a foreign edge");
      used[d] = true;
      r.push_back(d);
    }
    if (r.size() != g.rot[v].size()) fail("rotation of " + w.substr(0, colon) + " has the wrong length");
    g.rot[v] = r;
  }
  g.validate();
  return g;
}

// ---------------------------------------------------------------------------

std::string move_name(Move m) {
  switch (m) {
    case Move::Associativity: return "associativity";
    case Move::Needle: return "needle";
    case Move::DoubleDotRemoval: return "double-dot-removal";
    case Move::DotContraction: return "dot-contraction";
    case Move::Connecting: return "connecting";
  }
  return "?";
}

OneColorGraph apply_move(const OneColorGraph& g0, const MoveSite& site) {
  auto fail = [&](const std::string& why) { throw std::invalid_argument(move_name(site.move) + ": " + why); };
  OneColorGraph g = g0;
  std::vector<bool> vdead(g.vertex_count(), false), edead(g.edge_count(), false);
  auto need_edge = [&](int e) {
    if (e < 0 || e >= g.edge_count()) fail("edge " + std::to_string(e) + " out of range");
  };
  switch (site.move) {
    case Move::Associativity: {
      int e = site.a;
      need_edge(e);
      int u = g.edges[e].end[0], v = g.edges[e].end[1];
      if (u == v || g.kinds[u] != Kind::Tri || g.kinds[v] != Kind::Tri) fail("edge must join two distinct trivalent vertices");
      auto ru = rotation_from(g, u, 2 * e), rv = rotation_from(g, v, 2 * e + 1);
      int p = ru[1], q = ru[2], r = rv[1], s = rv[2];
      g.rot[u] = {2 * e, q, r};
      g.rot[v] = {2 * e + 1, s, p};
      g.edges[r >> 1].end[r & 1] = u;
      g.edges[p >> 1].end[p & 1] = v;
      return g;
    }
    case Move::Needle: {
      if (site.a == -1) {
        if (g.circles == 0) fail("no free circle");
        --g.circles;
        g.add_edge(g.add_vertex(Kind::Dot), g.add_vertex(Kind::Dot));
        return g;
      }
      int e = site.a;
      need_edge(e);
      int v = g.edges[e].end[0];
      if (g.edges[e].end[1] != v || g.kinds[v] != Kind::Tri) fail("edge must be a loop at a trivalent vertex");
      int t = -1;
      for (int d : g.rot[v])
        if ((d >> 1) != e) t = d;
      g.kinds[v] = Kind::Dot;
      g.rot[v] = {t};
      edead[e] = true;
      break;
    }
    case Move::DoubleDotRemoval: {
      int e = site.a;
      need_edge(e);
      int u = g.edges[e].end[0], v = g.edges[e].end[1];
      if (u == v || g.kinds[u] != Kind::Dot || g.kinds[v] != Kind::Dot) fail("edge must join two dots");
      vdead[u] = vdead[v] = edead[e] = true;
      break;
    }
    case Move::DotContraction: {
      int e = site.a;
      need_edge(e);
      int side = g.kinds[g.edges[e].end[0]] == Kind::Dot ? 0 : 1;
      int d = g.edges[e].end[side], v = g.edges[e].end[1 - side];
      if (g.kinds[d] != Kind::Dot || g.kinds[v] != Kind::Tri) fail("edge must join a dot to a trivalent vertex");
      auto rv = rotation_from(g, v, 2 * e + (1 - side));
      int a = rv[1], b = rv[2];
      vdead[d] = vdead[v] = edead[e] = true;
      if ((a >> 1) == (b >> 1)) {
        edead[a >> 1] = true;
        ++g.circles;
        break;
      }
      int y = b ^ 1, Y = g.vertex_of(y);
      g.edges[a >> 1].end[a & 1] = Y;
      replace_dart(g.rot[Y], y, a);
      edead[b >> 1] = true;
      break;
    }
    case Move::Connecting: {
      int d1 = site.a, d2 = site.b;
      if (d1 < 0 || d2 < 0 || d1 >= 2 * g.edge_count() || d2 >= 2 * g.edge_count()) fail("dart out of range");
      if ((d1 >> 1) == (d2 >> 1)) fail("darts must lie on different edges");
      bool together = false;
      for (const auto& f : g.faces()) {
        bool h1 = std::find(f.darts.begin(), f.darts.end(), d1) != f.darts.end();
        bool h2 = std::find(f.darts.begin(), f.darts.end(), d2) != f.darts.end();
        together |= h1 && h2;
      }
      if (!together) fail("darts do not border a common face");
      int w1 = subdivide(g, d1);
      int w2 = subdivide(g, d2);
      int c = static_cast<int>(g.edges.size());
      g.edges.push_back({{w1, w2}});
      g.rot[w1][1] = 2 * c;
      g.rot[w2][1] = 2 * c + 1;
      return g;
    }
  }
  return compact(g, vdead, edead);
}

ReductionMeasure reduction_measure(const OneColorGraph& g) {
  ReductionMeasure m{g.cycle_rank(), g.internal_vertex_count(), 0};
  const int E = g.edge_count();
  auto fs = g.faces();
  std::vector<int> face_of(2 * E, -1);
  for (size_t k = 0; k < fs.size(); ++k)
    for (int d : fs[k].darts)
      if (d < 2 * E) face_of[d] = static_cast<int>(k);
  for (size_t k = 0; k < fs.size(); ++k) {
    if (fs[k].outer) continue;
    bool cyclic = false;
    for (int d : fs[k].darts) cyclic |= face_of[d ^ 1] != static_cast<int>(k);
    int len = static_cast<int>(fs[k].darts.size());
    if (cyclic && (m.face == 0 || len < m.face)) m.face = len;
  }
  return m;
}

std::pair<int, int> component_count(const OneColorGraph& g) {
  auto comp = g.component_ids();
  std::vector<bool> has_boundary(g.vertex_count(), false);
  for (int b : g.boundary) has_boundary[comp[b]] = true;
  int with = 0, without = g.circles;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (comp[v] == v) (has_boundary[v] ? with : without) += 1;
  return {with, without};
}

bool is_simple_forest(const OneColorGraph& g) {
  if (g.circles != 0) return false;
  auto comp = g.component_ids();
  std::map<int, int> verts, edges_in, bpoints, dots;
  for (int v = 0; v < g.vertex_count(); ++v) {
    verts[comp[v]]++;
    if (g.kinds[v] == Kind::Boundary) bpoints[comp[v]]++;
    if (g.kinds[v] == Kind::Dot) dots[comp[v]]++;
  }
  for (const auto& e : g.edges) edges_in[comp[e.end[0]]]++;
  for (auto& [c, nv] : verts) {
    if (edges_in[c] != nv - 1) return false;  // not a tree
    int m = bpoints[c];
    if (m == 0) return false;
    if (m == 1) {
      if (nv != 2 || dots[c] != 1) return false;
    } else if (dots[c] != 0) {
      return false;  // leaves are boundary points, so the tree has m-2 trivalent vertices
    }
  }
  return true;
}

bool is_simple_tree(const OneColorGraph& g) {
  auto [with, without] = component_count(g);
  return is_simple_forest(g) && with <= 1 && without == 0;
}

namespace {

// Next move of the forest reduction, in the fixed greedy order.
bool next_forest_move(const OneColorGraph& g, MoveSite& site) {
  const int E = g.edge_count();
  for (int e = 0; e < E; ++e) {
    int u = g.edges[e].end[0], v = g.edges[e].end[1];
    if (u == v && g.kinds[u] == Kind::Tri) {
      site = {Move::Needle, e};
      return true;
    }
  }
  if (g.circles > 0) {
    site = {Move::Needle, -1};
    return true;
  }
  for (int e = 0; e < E; ++e)
    if (g.kinds[g.edges[e].end[0]] == Kind::Dot && g.kinds[g.edges[e].end[1]] == Kind::Dot) {
      site = {Move::DoubleDotRemoval, e};
      return true;
    }
  for (int e = 0; e < E; ++e) {
    Kind a = g.kinds[g.edges[e].end[0]], b = g.kinds[g.edges[e].end[1]];
    if ((a == Kind::Dot && b == Kind::Tri) || (a == Kind::Tri && b == Kind::Dot)) {
      site = {Move::DotContraction, e};
      return true;
    }
  }
  if (g.cycle_rank() == 0) return false;
  // Shrink the shortest inner face that meets a cycle.
  auto fs = g.faces();
  std::vector<int> face_of(2 * E, -1);
  for (size_t k = 0; k < fs.size(); ++k)
    for (int d : fs[k].darts)
      if (d < 2 * E) face_of[d] = static_cast<int>(k);
  int best = -1, best_edge = -1;
  for (size_t k = 0; k < fs.size(); ++k) {
    if (fs[k].outer) continue;
    for (int d : fs[k].darts) {
      int e = d >> 1;
      int u = g.edges[e].end[0], v = g.edges[e].end[1];
      if (face_of[d ^ 1] == static_cast<int>(k) || u == v) continue;
      if (best < 0 || fs[k].darts.size() < fs[best].darts.size()) {
        best = static_cast<int>(k);
        best_edge = e;
      }
      break;
    }
  }
  if (best < 0) throw std::logic_error("graph has a cycle but no inner face to shrink");
  site = {Move::Associativity, best_edge};
  return true;
}

}  // namespace

OneColorGraph reduce_to_simple_forest(const OneColorGraph& g0, std::vector<ReductionStep>* trace) {
  OneColorGraph g = g0;
  ReductionMeasure cur = reduction_measure(g);
  MoveSite site{Move::Needle};
  while (next_forest_move(g, site)) {
    OneColorGraph next = apply_move(g, site);
    ReductionMeasure after = reduction_measure(next);
    if (!(after < cur)) throw std::logic_error("reduction measure did not decrease after " + move_name(site.move));
    if (trace) trace->push_back({site, cur, after});
    g = std::move(next);
    cur = after;
  }
  if (!is_simple_forest(g) && !(g.vertex_count() == 0 && g.circles == 0))
    throw std::logic_error("forest reduction stopped early: " + g.str());
  return g;
}

OneColorGraph reduce_to_simple_tree(const OneColorGraph& g0, std::vector<ReductionStep>* trace) {
  OneColorGraph g = reduce_to_simple_forest(g0, trace);
  while (component_count(g).first > 1) {
    auto comp = g.component_ids();
    const int m = static_cast<int>(g.boundary.size());
    int k = 0;
    while (comp[g.boundary[k]] == comp[g.boundary[(k + 1) % m]]) ++k;
    int e1 = g.rot[g.boundary[k]][0] >> 1, e2 = g.rot[g.boundary[(k + 1) % m]][0] >> 1;
    MoveSite site{Move::Connecting};
    for (const auto& f : g.faces()) {
      int a = -1, b = -1;
      for (int d : f.darts) {
        if (d < 2 * g.edge_count() && (d >> 1) == e1) a = d;
        if (d < 2 * g.edge_count() && (d >> 1) == e2) b = d;
      }
      if (a >= 0 && b >= 0) {
        site.a = a;
        site.b = b;
        break;
      }
    }
    ReductionMeasure before = reduction_measure(g);
    g = apply_move(g, site);
    if (trace) trace->push_back({site, before, reduction_measure(g)});
    g = reduce_to_simple_forest(g, trace);
  }
  return g;
}

// ---------------------------------------------------------------------------

OneColorGraph random_graph(std::mt19937_64& rng, int max_edges) {
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  OneColorGraph g;
  int m = uniform(0, 4);
  for (int k = 0; k < m; ++k) g.boundary.push_back(g.add_vertex(Kind::Boundary));
  // Non-crossing strands via a stack; unmatched points get boundary dots.
  std::vector<int> open;
  for (int k = 0; k < m; ++k) {
    if (!open.empty() && uniform(0, 1)) {
      g.add_edge(open.back(), g.boundary[k]);
      open.pop_back();
    } else {
      open.push_back(g.boundary[k]);
    }
  }
  for (int b : open) g.add_edge(b, g.add_vertex(Kind::Dot));
  if (uniform(0, 2) == 0) g.add_edge(g.add_vertex(Kind::Dot), g.add_vertex(Kind::Dot));
  int steps = uniform(0, 8);
  for (int s = 0; s < steps; ++s) {
    int op = uniform(0, 5);
    if (g.edge_count() == 0 || op == 5) {
      if (g.edge_count() + 0 <= max_edges && uniform(0, 1)) ++g.circles;
      continue;
    }
    int d = uniform(0, 2 * g.edge_count() - 1);
    if (op <= 2) {
      if (g.edge_count() + 3 > max_edges) continue;
      auto fs = g.faces();
      for (const auto& f : fs) {
        if (std::find(f.darts.begin(), f.darts.end(), d) == f.darts.end()) continue;
        std::vector<int> others;
        for (int x : f.darts)
          if (x < 2 * g.edge_count() && (x >> 1) != (d >> 1)) others.push_back(x);
        if (!others.empty()) g = apply_move(g, {Move::Connecting, d, others[uniform(0, static_cast<int>(others.size()) - 1)]});
        break;
      }
    } else if (op == 3) {
      if (g.edge_count() + 2 > max_edges) continue;
      int w = subdivide(g, d);
      int z = g.add_vertex(Kind::Dot);
      attach(g, w, 1, z, {-1});
    } else {
      if (g.edge_count() + 3 > max_edges) continue;
      int w = subdivide(g, d);
      int z = g.add_vertex(Kind::Tri);
      int loop = static_cast<int>(g.edges.size());
      g.edges.push_back({{z, z}});
      attach(g, w, 1, z, {-1, 2 * loop, 2 * loop + 1});
    }
  }
  g.validate();
  return g;
}

OneColorGraph polygon_graph(int k) {
  if (k <= 0) return circle_graph();
  OneColorGraph g;
  for (int i = 0; i < k; ++i) g.boundary.push_back(g.add_vertex(Kind::Boundary));
  std::vector<int> p(k);
  for (int i = 0; i < k; ++i) p[i] = g.add_vertex(Kind::Tri);
  for (int i = 0; i < k; ++i) g.edges.push_back({{g.boundary[i], p[i]}});
  for (int i = 0; i < k; ++i) g.edges.push_back({{p[i], p[(i + 1) % k]}});
  for (int i = 0; i < k; ++i) {
    g.rot[g.boundary[i]] = {2 * i};
    int next = 2 * (k + i), prev = 2 * (k + (i + k - 1) % k) + 1;
    g.rot[p[i]] = {2 * i + 1, next, prev};
  }
  g.validate();
  return g;
}

OneColorGraph circle_graph() {
  OneColorGraph g;
  g.circles = 1;
  return g;
}

}  // namespace soergel
