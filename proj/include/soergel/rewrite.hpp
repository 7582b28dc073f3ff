#pragma once

#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace soergel {

// Planar one-color graph in a disk. Edge e owns darts 2e (at edges[e].end[0])
// and 2e+1 (at edges[e].end[1]). rot[v] lists the darts at v counterclockwise.
// Boundary vertices are univalent and listed counterclockwise around the disk.
struct OneColorGraph {
  enum class Kind { Dot, Tri, Boundary };
  struct Edge {
    int end[2];
  };

  std::vector<Kind> kinds;
  std::vector<std::vector<int>> rot;
  std::vector<Edge> edges;
  std::vector<int> boundary;
  int circles = 0;

  int add_vertex(Kind k);
  // Appends the new darts at the end of both rotations.
  int add_edge(int u, int v);

  int vertex_count() const { return static_cast<int>(kinds.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  int internal_vertex_count() const;
  static int twin(int dart) { return dart ^ 1; }
  static int edge_of(int dart) { return dart >> 1; }
  int vertex_of(int dart) const { return edges[dart >> 1].end[dart & 1]; }

  // Faces of the map with an extra outer vertex joined to every boundary
  // vertex. Darts >= 2 * edge_count() belong to those outer edges. Each face
  // keeps the traversed darts with the face on their right.
  struct Face {
    std::vector<int> darts;
    bool outer = false;  // touches the disk boundary
  };
  std::vector<Face> faces() const;

  // Valences, rotation consistency, boundary order and planarity (Euler
  // characteristic of every component). Throws std::invalid_argument.
  void validate() const;

  // Component id per vertex (union of real edges only).
  std::vector<int> component_ids() const;
  // Number of independent cycles, free circles included.
  int cycle_rank() const;
  // Component id of each boundary point, renumbered by first appearance.
  std::vector<int> boundary_partition() const;

  // Isomorphism invariant of the embedded graph with its boundary labels.
  std::string canonical() const;
  bool operator==(const OneColorGraph& o) const { return canonical() == o.canonical(); }

  // "vertices: b1(bd) t1(tri) d1(dot); edges: b1-t1 ...; boundary: [b1,...];
  //  circles: k; rotation: t1:0,2,1 ..." (rotation lists edge indices).
  std::string str() const;
  static OneColorGraph parse(std::string_view text);
};

enum class Move { Associativity, Needle, DoubleDotRemoval, DotContraction, Connecting };

// Where a move applies. For Connecting, `a` and `b` are two darts traversing
// the same face; for all other moves `a` is an edge. Needle with a = -1 turns
// a free circle into a double dot (a dot is added on the circle first).
struct MoveSite {
  Move move;
  int a = -1;
  int b = -1;
};

std::string move_name(Move m);

// Throws std::invalid_argument when the site does not match the pattern.
OneColorGraph apply_move(const OneColorGraph& g, const MoveSite& site);

// (cycle rank, internal vertices, shortest inner face meeting a cycle).
struct ReductionMeasure {
  int cycles = 0;
  int internal = 0;
  int face = 0;
  auto operator<=>(const ReductionMeasure&) const = default;
};
ReductionMeasure reduction_measure(const OneColorGraph& g);

bool is_simple_forest(const OneColorGraph& g);
bool is_simple_tree(const OneColorGraph& g);
// (components meeting the boundary, components without boundary incl. circles)
std::pair<int, int> component_count(const OneColorGraph& g);

struct ReductionStep {
  MoveSite site;
  ReductionMeasure before, after;
};

// Uses needle, double dot removal, dot contraction and associativity only.
// Every step strictly lowers reduction_measure; a violation throws
// std::logic_error.
OneColorGraph reduce_to_simple_forest(const OneColorGraph& g, std::vector<ReductionStep>* trace = nullptr);
// Adds connecting moves between neighbouring components.
OneColorGraph reduce_to_simple_tree(const OneColorGraph& g, std::vector<ReductionStep>* trace = nullptr);

// Random planar graph built from boundary strands and dots by connecting
// moves, dot stems, needles and circles; at most max_edges edges.
OneColorGraph random_graph(std::mt19937_64& rng, int max_edges = 12);

// Boundary points 0..k-1 joined to a k-cycle (one spoke per polygon vertex).
OneColorGraph polygon_graph(int k);
OneColorGraph circle_graph();

}  // namespace soergel
