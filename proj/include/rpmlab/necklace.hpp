#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rpmlab/triangulation.hpp"

namespace rpmlab {

/// Words over the growth alphabet.  B adds a blue vertex, R a red one;
/// b and r move the blue/red endpoint of the active edge instead, pulling
/// in a boundary neighbour or extending the integer line.
enum class Letter : char { B = 'B', b = 'b', R = 'R', r = 'r' };

bool valid_word(const std::string& word);

/// One growth step on the explicit boundary state; the word-level builders
/// below drive this.  Exposed for step-by-step oracle tests.
class NecklaceBuilder {
 public:
  NecklaceBuilder();
  void step(Letter x);
  int steps() const { return int(faces_.size()); }

  /// Current active edge as internal vertex ids (blue endpoint, red one).
  std::pair<int, int> active() const { return {active_b_, active_r_}; }
  /// Integer label of an internal vertex; non-line vertices return nullopt.
  std::optional<int> integer_label(int v) const;
  int vertex_count() const { return int(int_label_.size()); }
  const std::vector<std::array<int, 3>>& faces() const { return faces_; }

  /// The grown disc rooted at the face created at step k (1-based),
  /// at the half-edge along that step's active edge, blue to red.
  RootedTriangulation rooted(int k) const;

  /// Boundary half-edges lying on the integer line (the map-side dart of
  /// each line edge), keyed by the left integer of the edge.
  const std::vector<std::pair<int, int>>& line_darts() const {
    return line_darts_;
  }

 private:
  // Face triples are always (b, r, x) with the creation edge in slot 0.
  std::vector<std::array<int, 3>> faces_;
  std::vector<int> twin_;
  std::vector<int> int_label_;  // per vertex: integer, or INT_MIN sentinel
  std::vector<std::pair<int, int>> line_darts_;
  // Boundary cycle as a vertex ring (boundary vertices are distinct),
  // plus the map dart of each step v -> nxt[v].
  std::vector<int> nxt_, prv_, bdart_;
  int active_b_ = 0, active_r_ = 1;
  int min_int_ = 0, max_int_ = 1;

  int new_vertex(std::optional<int> integer);
  void splice_in(int after, int v);
  void splice_out(int v);
};

/// T_+(X): the upper half-plane growth of a nonempty word, rooted at the
/// first face's blue-to-red half-edge.
RootedTriangulation build_plus(const std::string& word);

/// T_-(Y): the lower half-plane mirror (orientation flip of build_plus).
RootedTriangulation build_minus(const std::string& word);

/// T(X, k): build_plus(X) re-rooted to the face created at step k.
RootedTriangulation build_rooted(const std::string& word, int k);

/// T_+(X) glued to T_-(Y) along the shared part of the integer line,
/// rooted at the root of T_+(X).  Y may be empty.
RootedTriangulation build_glued(const std::string& x, const std::string& y);

/// Z = y'_m ... y'_1 x_1 ... x_n under the prime swap B<->b, R<->r.
std::string glue_word(const std::string& x, const std::string& y);

/// Lattice path S_0..S_n with increments (1,0),(-1,0),(0,1),(0,-1)
/// for B, b, R, r.
struct WalkTrace {
  std::vector<int> x, y;  // both of size |word|+1, starting at 0
};

WalkTrace walk(const std::string& word);

/// Exact degree of vertex 0 in T_+(X), read off the X-coordinate path:
/// one edge for every step that lands on 0 or leaves 0, while 0 is still
/// unburied, plus the initial active edge.
int degree_of_origin_from_walk(const std::string& word);

/// The degree bound 2 |{1 <= j <= n: X_j = 0, X_i >= 0 for i < j}| + 2.
int degree_bound_from_walk(const std::string& word);

/// True iff X_j >= 0 for all j, i.e. vertex 0 keeps a non-line boundary
/// edge in T_+(X).
bool origin_on_outer_boundary(const std::string& word);

/// a + b + |X_n + a| + |Y_n + b| with a = |min(0, min_k X_k)| and b its
/// Y counterpart; dominates the boundary size of T_+(X) up to +2 (the
/// count misses vertex 0 and one red integer).
int boundary_size_bound(const std::string& word);

}  // namespace rpmlab
