#pragma once

#include <string>

#include "rpmlab/triangulation.hpp"
#include "rpmlab/uniformize.hpp"

namespace rpmlab {

struct RenderOptions {
  double width = 640;        // pixel width; height follows the aspect
  double margin = 24;        // blank border in pixels
  bool half_flowers = false; // tint the corner pieces around each vertex
};

// Deterministic standalone SVG of a laid-out disc.  Every face is drawn
// as its triangle, its interstice (the midpoint triangle, a quarter of
// the face) is shaded on top, and with half_flowers the three corner
// quarters are tinted by vertex so the pieces around one vertex read as
// a single flower.  Polygons carry class attributes face / flower /
// interstice.  Throws std::invalid_argument when the layout does not
// match the map.
std::string render_svg(const RootedTriangulation& t, const ConformalLayout& l,
                       const RenderOptions& opt = {});

}  // namespace rpmlab
