#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rpmlab {

/// Surface kind of a triangulation: a disc has a single boundary cycle,
/// a sphere has no boundary at all.
enum class SurfaceKind { Disc, Sphere };

/// Exact rational value, used for combinatorial distances (0 or 1/(k+1)).
struct Rational {
  long long num = 0;
  long long den = 1;
  double value() const { return double(num) / double(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// A rooted oriented triangulation of a disc or sphere, stored as a half-edge
/// complex in face-major order: half-edges 3f, 3f+1, 3f+2 belong to face f and
/// run along its positively oriented sides.  Loop edges are forbidden;
/// parallel edges are allowed.  The root is a distinguished half-edge: its
/// face is the root face, its origin the root vertex, and (origin, target)
/// the oriented root edge.
class RootedTriangulation {
 public:
  /// Builds from explicit half-edge data and validates the complex:
  /// twin involution, loop-freeness, connectivity, vertex manifoldness,
  /// Euler count, and the boundary structure matching `kind`.
  RootedTriangulation(int n_vertices, std::vector<std::array<int, 3>> faces,
                      std::vector<int> twin, int root_halfedge,
                      SurfaceKind kind);

  int n_vertices() const { return n_vertices_; }
  int n_faces() const { return int(face_.size()); }
  int n_halfedges() const { return 3 * n_faces(); }
  int n_edges() const { return n_edges_; }
  SurfaceKind kind() const { return kind_; }
  bool is_disc() const { return kind_ == SurfaceKind::Disc; }

  const std::array<int, 3>& face(int f) const { return face_[f]; }
  const std::vector<std::array<int, 3>>& faces() const { return face_; }

  static int face_of(int h) { return h / 3; }
  static int next(int h) { return 3 * (h / 3) + (h % 3 + 1) % 3; }
  static int prev(int h) { return 3 * (h / 3) + (h % 3 + 2) % 3; }
  int origin(int h) const { return face_[h / 3][h % 3]; }
  int target(int h) const { return face_[h / 3][(h % 3 + 1) % 3]; }
  int twin(int h) const { return twin_[h]; }
  bool is_boundary_halfedge(int h) const { return twin_[h] < 0; }

  int root_halfedge() const { return root_; }
  int root_face() const { return root_ / 3; }
  int root_vertex() const { return origin(root_); }

  /// Out-going half-edges around a vertex in counterclockwise fan order.
  /// For a boundary vertex the fan starts at the boundary out-edge.
  const std::vector<int>& vertex_fan(int v) const { return fan_[v]; }
  int degree(int v) const { return degree_[v]; }
  bool is_boundary_vertex(int v) const { return boundary_vertex_[v]; }

  /// Boundary half-edges in cycle order (empty for a sphere).
  const std::vector<int>& boundary_cycle() const { return boundary_cycle_; }
  /// Vertices lying on the boundary, in cycle order.
  std::vector<int> boundary_vertices() const;

  /// Combinatorial graph distance from every vertex to the boundary
  /// (std::nullopt everywhere for a sphere).
  std::optional<std::vector<int>> distances_to_boundary() const;

  /// Moves the root to another half-edge of the same complex.
  RootedTriangulation rerooted(int halfedge) const;

 private:
  int n_vertices_;
  std::vector<std::array<int, 3>> face_;
  std::vector<int> twin_;
  int root_;
  SurfaceKind kind_;

  int n_edges_ = 0;
  std::vector<int> degree_;
  std::vector<char> boundary_vertex_;
  std::vector<std::vector<int>> fan_;
  std::vector<int> boundary_cycle_;

  void validate_and_index();
};

/// Graph distance from a vertex to the boundary; std::nullopt for spheres.
std::optional<int> boundary_distance(const RootedTriangulation& t, int vertex);

/// The combinatorial ball of radius r: the root vertex for r = 0, and
/// inductively every face incident to a vertex of the previous ball, together
/// with all vertices and edges of those faces.
struct CombinatorialBall {
  int radius = 0;
  std::vector<int> face_ids;    // sorted parent face indices
  std::vector<int> vertex_ids;  // sorted parent vertex indices (the inclusion)
  bool covers_parent = false;   // ball already contains every face
};

CombinatorialBall ball(const RootedTriangulation& t, int radius);

/// Canonical breadth-first encoding of the ball as a rooted oriented
/// complex; two balls are equivalent iff their encodings are equal.
std::vector<int32_t> ball_encoding(const RootedTriangulation& t,
                                   const CombinatorialBall& b);

/// Faces of the ball in first-visit order of the encoding traversal.
/// Two maps whose ball encodings agree list matching faces at the same
/// positions, giving the face correspondence between equivalent balls.
std::vector<int> ball_face_order(const RootedTriangulation& t,
                                 const CombinatorialBall& b);

/// Canonical encoding of the whole rooted map.
std::vector<int32_t> canonical_encoding(const RootedTriangulation& t);

/// Canonical encoding of the map rooted at an arbitrary half-edge.
std::vector<int32_t> canonical_encoding_from(const RootedTriangulation& t,
                                             int root_dart);

/// Half-edges in the breadth-first discovery order of the canonical
/// encoding; the layout module develops faces in this order.
std::vector<int> encoding_dart_order(const RootedTriangulation& t,
                                     int root_dart);

/// The half-edge whose encoding is lexicographically least over all roots.
/// Depends only on the unrooted map, up to its automorphisms.
int canonical_root_dart(const RootedTriangulation& t);

/// Orientation-preserving root-respecting isomorphism test.
bool rooted_isomorphic(const RootedTriangulation& a,
                       const RootedTriangulation& b);

/// 1/(k+1) where k is the largest radius at which the balls around the two
/// roots are equivalent; exactly 0 when the maps are rooted-isomorphic.
Rational combinatorial_distance(const RootedTriangulation& a,
                                const RootedTriangulation& b);

/// Adjacency structure of the dual graph: one node per face, one arc per
/// interior edge.  Each node has at most three neighbours.
struct DualGraph {
  int n = 0;
  std::vector<std::vector<int>> nbr;
};

DualGraph dual_graph(const RootedTriangulation& t);

/// Midpoint subdivision: every face splits into four, new vertices sit on
/// edge midpoints.  Intrinsic edge lengths halve, so the piecewise-flat
/// surface (and its conformal structure) is unchanged.
struct Subdivision {
  RootedTriangulation tri;
  // Child faces of parent face f: three corner faces then the middle face.
  std::vector<std::array<int, 4>> child_faces;
  // Midpoint vertex of each parent half-edge's underlying edge.
  std::vector<int> edge_midpoint;
  int parent_vertices = 0;
};

Subdivision subdivide_midpoint(const RootedTriangulation& t);

}  // namespace rpmlab
