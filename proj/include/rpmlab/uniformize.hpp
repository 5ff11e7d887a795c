#pragma once

#include <array>
#include <complex>
#include <iosfwd>
#include <vector>

#include "rpmlab/triangulation.hpp"

namespace rpmlab {

// Clausen integral Cl2 and Milnor's Lobachevsky function; the latter
// enters the flattening energy per corner angle.
double clausen(double theta);
double lobachevsky(double alpha);

struct FlattenOptions {
  int max_iterations = 200;
  double damping = 0.5;       // line-search shrink factor
  double tolerance = 1e-12;   // target max |angle sum - 2 pi|
  bool allow_subdivision = true;
};

// Per-vertex log scale factors making every interior vertex flat.
// Boundary factors stay 0, so the boundary develops freely.  `tri` is
// the triangulation the factors live on: the input itself, or its
// midpoint subdivision when the first solve left the triangle
// inequalities unrepairable and the fallback kicked in.
struct ConformalFactors {
  RootedTriangulation tri;
  std::vector<double> u;       // per vertex
  std::vector<double> length;  // per halfedge: exp((u_org + u_dst) / 2)
  bool subdivided = false;
  bool converged = false;
  int iterations = 0;
  double max_residual = 0;  // max over interior v of |angle sum - 2 pi|
  double energy = 0;
};

// Damped Newton descent of the convex flattening energy: gradient
// component (2 pi - angle sum) at each interior vertex, cotangent form
// as the second derivative, steps shrunk until all triangle
// inequalities hold and the energy does not increase.  Never throws on
// a shortfall; inspect `converged` and `max_residual`.
ConformalFactors flatten(const RootedTriangulation& t,
                         const FlattenOptions& opt = {});

// Interior angle sum at v computed from the flattened lengths alone.
double angle_sum(const ConformalFactors& f, int v);

// Flattening energy at arbitrary factors; its partial derivative at an
// interior vertex v is 2 pi minus the angle sum at v.
double flattening_energy(const RootedTriangulation& t,
                         const std::vector<double>& u);

// Plane development of a flattened disc.  Coordinates are complex;
// each face's interstice image is the midpoint triangle of its laid
// out corners, and the face center is the corner barycenter.
struct ConformalLayout {
  std::vector<std::complex<double>> vertex;
  std::vector<std::complex<double>> center;
  std::vector<std::array<std::complex<double>, 3>> interstice;
  int root_face = 0;
  double a = 1;                   // similarity applied by normalize
  std::complex<double> b = 0;
  double max_angle_residual = 0;  // carried over from the factors
  double max_edge_defect = 0;     // worst reclosure error, non-tree edges
  double total_edge_defect = 0;
  bool norm2_applicable = false;  // root at graph distance >= 2 from boundary
  bool norm2_attained = false;    // normalizing face found inside ball 2
};

// Develop faces breadth-first from the root face using the flattened
// lengths, then normalize.  Throws std::runtime_error if an edge
// recloses with defect above 1e-8 (the flattening residual was too
// large to develop consistently).
ConformalLayout layout(const ConformalFactors& f);

// Recenter and rescale: root center to 0, nearest other interstice to
// distance 1.  Idempotent; a and b record the transform this call
// applied.  Throws std::runtime_error when all centers coincide.
ConformalLayout normalize(ConformalLayout l, const RootedTriangulation& tri);

// Shape statistics of the laid-out interstices for faces at graph
// distance >= 2 from the boundary: outradius/inradius about the
// center, and center spacing over interstice diameter per neighbor.
struct FaceRatios {
  int face = -1;
  double outradius = 0;
  double inradius = 0;
  double diameter = 0;
  std::vector<std::pair<int, double>> center_ratios;  // neighbor face, ratio
};
struct GeometryRatios {
  std::vector<FaceRatios> faces;
  double max_shape_ratio = 0;    // outradius / inradius
  double max_center_ratio = 0;   // |c_f - c_f'| / diam I_f
  double min_center_ratio = 0;
};
GeometryRatios geometry_ratios(const ConformalLayout& l,
                               const RootedTriangulation& tri);

// Fraction of total interstice area covered more than once: sum of
// pairwise intersection areas over the area sum.  Zero for injective
// developments.
double interstice_overlap_fraction(const ConformalLayout& l);

// Text form: header `layout <nv> <nf>`, `root <face>`,
// `norm <a> <b_re> <b_im>`, `residual <angle> <defect>`, then
// `v <id> <x> <y>` per vertex and `c <faceid> <x> <y>` per center.
void emit_layout(std::ostream& out, const ConformalLayout& l);
ConformalLayout parse_layout(std::istream& in);

}  // namespace rpmlab
