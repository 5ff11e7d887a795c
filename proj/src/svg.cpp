#include "rpmlab/svg.hpp"

#include <algorithm>
#include <complex>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace rpmlab {

namespace {

using C = std::complex<double>;

// Muted, print-safe fills; a vertex keeps one color in every face it
// touches, so its corner pieces assemble into one visible flower.
const char* const kFlowerFill[6] = {"#c6dbef", "#fdd0a2", "#c7e9c0",
                                    "#dadaeb", "#fcbba1", "#fff7bc"};

struct PixelMap {
  double scale, min_x, max_y, margin;
  C operator()(C z) const {
    return {margin + (z.real() - min_x) * scale,
            margin + (max_y - z.imag()) * scale};
  }
};

void put_points(std::ostringstream& out, const PixelMap& px, const C* tri) {
  char buf[96];
  out << " points=\"";
  for (int i = 0; i < 3; ++i) {
    const C p = px(tri[i]);
    std::snprintf(buf, sizeof buf, "%s%.4f,%.4f", i ? " " : "", p.real(),
                  p.imag());
    out << buf;
  }
  out << '"';
}

}  // namespace

std::string render_svg(const RootedTriangulation& t, const ConformalLayout& l,
                       const RenderOptions& opt) {
  if (int(l.vertex.size()) != t.n_vertices())
    throw std::invalid_argument("render_svg: vertex count mismatch");
  if (opt.width <= 0 || opt.margin < 0)
    throw std::invalid_argument("render_svg: bad page dimensions");

  double min_x = l.vertex[0].real(), max_x = min_x;
  double min_y = l.vertex[0].imag(), max_y = min_y;
  for (const C& z : l.vertex) {
    min_x = std::min(min_x, z.real());
    max_x = std::max(max_x, z.real());
    min_y = std::min(min_y, z.imag());
    max_y = std::max(max_y, z.imag());
  }
  const double span = std::max({max_x - min_x, max_y - min_y, 1e-12});
  const double usable = opt.width - 2 * opt.margin;
  if (usable <= 0)
    throw std::invalid_argument("render_svg: margin swallows the page");
  const PixelMap px{usable / span, min_x, max_y, opt.margin};
  const double w = (max_x - min_x) * px.scale + 2 * opt.margin;
  const double h = (max_y - min_y) * px.scale + 2 * opt.margin;

  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.2f\" "
                "height=\"%.2f\" viewBox=\"0 0 %.2f %.2f\">\n",
                w, h, w, h);
  out << buf;

  const int nf = t.n_faces();
  std::vector<std::array<C, 3>> corner(nf);
  for (int f = 0; f < nf; ++f) {
    const auto& vs = t.face(f);
    for (int i = 0; i < 3; ++i) corner[f][i] = l.vertex[vs[i]];
  }

  out << "<g fill=\"#ffffff\" stroke=\"#40403e\" stroke-width=\"1\" "
         "stroke-linejoin=\"round\">\n";
  for (int f = 0; f < nf; ++f) {
    out << "<polygon class=\"face\"";
    put_points(out, px, corner[f].data());
    out << "/>\n";
  }
  out << "</g>\n";

  if (opt.half_flowers) {
    out << "<g stroke=\"none\">\n";
    for (int f = 0; f < nf; ++f) {
      const auto& vs = t.face(f);
      for (int i = 0; i < 3; ++i) {
        const C p = corner[f][i];
        const C tri[3] = {p, (p + corner[f][(i + 1) % 3]) / 2.0,
                          (p + corner[f][(i + 2) % 3]) / 2.0};
        out << "<polygon class=\"flower\" fill=\"" << kFlowerFill[vs[i] % 6]
            << '"';
        put_points(out, px, tri);
        out << "/>\n";
      }
    }
    out << "</g>\n";
  }

  out << "<g fill=\"#8c8c88\" stroke=\"none\">\n";
  for (int f = 0; f < nf; ++f) {
    const C tri[3] = {(corner[f][0] + corner[f][1]) / 2.0,
                      (corner[f][1] + corner[f][2]) / 2.0,
                      (corner[f][2] + corner[f][0]) / 2.0};
    out << "<polygon class=\"interstice\"";
    put_points(out, px, tri);
    out << "/>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace rpmlab
