#pragma once

#include <array>
#include <complex>
#include <vector>

#include "rpmlab/triangulation.hpp"

namespace rpmlab {

// Midpoint sub-triangle of a face, in local coordinates that place the
// face as the unit equilateral triangle (0,0), (1,0), (1/2, sqrt(3)/2).
struct Interstice {
  int face = -1;
  std::array<std::array<double, 2>, 3> corners{};  // edge midpoints, ccw
  std::array<double, 2> center{};                  // barycenter
  double side = 0.5;
};

// All faces incident to a vertex, in fan order.
struct Flower {
  int vertex = -1;
  std::vector<int> faces;
};

// The polygon on the edge midpoints around a vertex.  Only its
// combinatorics and area are meaningful; it carries no embedding.
struct HalfFlower {
  int vertex = -1;
  std::vector<int> faces;  // one corner triangle per incident face
  int gon = 0;             // polygon corner count
  int area_units = 0;      // area in units of sqrt(3)/16
};

// Exact area bookkeeping in units of sqrt(3)/16 per piece.
struct AreaPartition {
  long long half_flower_units = 0;
  long long interstice_units = 0;
  long long total_units = 0;  // always 4 * n_faces
};

// A triangulation with every face carrying the metric of a unit
// equilateral triangle.  Interior vertices of degree d become cone
// points of angle d*pi/3; degree 6 is flat.  The surface itself is
// never embedded in the plane, so all geometry here is per-face or
// per-flower in local isometric coordinates.
//
// Holds a reference to the triangulation; the caller keeps it alive.
class EquilateralSurface {
 public:
  explicit EquilateralSurface(const RootedTriangulation& t) : t_(&t) {}

  const RootedTriangulation& triangulation() const { return *t_; }

  // Total cone angle at an interior vertex: deg(v) * pi / 3.
  // Throws std::invalid_argument for boundary vertices.
  double cone_angle(int v) const;

  // Conformal coordinate on the flower of an interior vertex of degree
  // n.  The flower is developed so that triangle `sector` (1-based,
  // counted around v) occupies angles [pi*(sector-1)/3, pi*sector/3];
  // the input is the developed polar point (rho, t) with rho in [0,1]
  // and t inside that range.  Returns rho^(6/n) * exp(6*t*i/n), which
  // maps the cone of total angle n*pi/3 onto the unit disc; rho = 0
  // maps to 0.  Throws std::domain_error if the point lies outside the
  // flower or outside the sector.
  std::complex<double> chart(int v, double rho, int sector, double t) const;

  Interstice interstice(int f) const;
  Flower flower(int v) const;
  HalfFlower half_flower(int v) const;

  // Exact decomposition check: every face splits into three corner
  // triangles (one per half-flower) and one interstice, each of area
  // sqrt(3)/16, so total_units == 4 * n_faces always holds.
  AreaPartition area_partition() const;

  // Upper bound on the intrinsic path metric between two vertices:
  // graph distance in the 1-skeleton of the midpoint subdivision,
  // whose edges all have length 1/2.  Exact geodesics through cone
  // points are out of scope.
  double metric_upper_bound(int u, int v) const;

 private:
  const RootedTriangulation* t_;
};

}  // namespace rpmlab
