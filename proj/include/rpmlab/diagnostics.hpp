#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "rpmlab/triangulation.hpp"
#include "rpmlab/uniformize.hpp"

namespace rpmlab {

// Face centers of a laid-out disc, renormalized so the root center is
// 0 and the nearest other center has modulus exactly 1.
struct CenterEmbedding {
  std::vector<std::complex<double>> g;  // per face
  int root_face = 0;
};

// Restrict a layout to its face centers and renormalize.  `root` picks
// the face pinned at 0 (default: the layout's root face).  Throws
// std::invalid_argument on duplicate centers: the embedding must be
// injective.  The layout-only form trusts the layout's face count.
CenterEmbedding center_embedding(const ConformalLayout& l, int root = -1);
CenterEmbedding center_embedding(const RootedTriangulation& t,
                                 const ConformalLayout& l, int root = -1);

// Metric on center embeddings: the combinatorial distance d between
// the rooted maps plus ball-by-ball center discrepancies
//   sum_n (2^{n+1} |B_n|)^{-1} sum_{f in B_n} psi(|g(f) - g'(f')|)
// with psi(x) = x/(1+x), faces matched through the ball equivalence,
// and n running while the balls still agree (all n for isomorphic
// maps; the tail beyond full coverage is summed exactly).
double embedding_distance(const RootedTriangulation& a, const CenterEmbedding& ga,
                          const RootedTriangulation& b, const CenterEmbedding& gb);

// Isolation radius of each point: distance to its nearest distinct
// neighbor.  Requires at least 2 points.
std::vector<double> isolation_radii(const std::vector<std::complex<double>>& pts);

// Smallest count of points left in D(v, rho_v/delta) after deleting
// the worst closed disc D(p, rho_v*delta).  The optimal center sits on
// a point of the set or where two radius-r circles around a close pair
// intersect; all such candidates are tried, with containment padded by
// a 1e-9 relative slack so boundary contacts survive rounding.
int min_annulus_count(const std::vector<std::complex<double>>& pts, int v,
                      double delta);

bool is_supported(const std::vector<std::complex<double>>& pts, int v,
                  double delta, int s);

// Fraction of points whose worst-case annulus still holds >= s points.
// Requires |pts| >= 2, delta in (0,1), s >= 2.
double supported_fraction(const std::vector<std::complex<double>>& pts,
                          double delta, int s);

// Effective resistance between `source` and the shorted node set
// `sinks`, unit conductance per dual edge (parallel edges add).
double effective_resistance_to(const DualGraph& g, int source,
                               const std::vector<int>& sinks);

// Resistance from the source out to the shorted shell of nodes at
// hop distance exactly r.  Throws std::invalid_argument if no node
// sits at that distance.
double effective_resistance(const DualGraph& g, int source, int r);

// True iff the faces outside ball r form exactly one dual-connected
// component touching the boundary of T (any component, for spheres).
// Throws std::invalid_argument when the ball already covers T.
bool one_ended_check(const RootedTriangulation& t, int r);

// Radius-k combinatorial ball of the d-regular triangulation of the
// plane, grown layer by layer, rooted at the center.  d >= 6, k >= 1.
RootedTriangulation regular_ball(int d, int k);

// Point-set text form: one `p <x> <y>` line per point.
void emit_points(std::ostream& out, const std::vector<std::complex<double>>& pts);
std::vector<std::complex<double>> parse_points(std::istream& in);

}  // namespace rpmlab
