#include "rpmlab/uniformize.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace rpmlab {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2 * std::numbers::pi;
}  // namespace

// Cl2(t) = -integral_0^t log|2 sin(x/2)| dx on [0, pi], via
// t - t log t + sum_m zeta(2m)/(m(2m+1)) (t/2pi)^{2m} t,
// then extended by oddness and 2pi periodicity.
double clausen(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0) t += kTwoPi;
  double sign = 1;
  if (t > kPi) {
    t = kTwoPi - t;
    sign = -1;
  }
  if (t == 0) return 0;
  static const std::vector<double> coef = [] {
    // zeta(2m): exact closed forms while the k-sum tail is material,
    // a short sum beyond (tail < 21^(1-2m), negligible from m = 6 on).
    const double p2 = kPi * kPi;
    std::vector<double> zetas{p2 / 6, p2 * p2 / 90, std::pow(kPi, 6) / 945,
                              std::pow(kPi, 8) / 9450,
                              std::pow(kPi, 10) / 93555};
    std::vector<double> c;
    for (int m = 1; m <= 40; ++m) {
      double zeta;
      if (m <= int(zetas.size())) {
        zeta = zetas[m - 1];
      } else {
        zeta = 0;
        for (int k = 20; k >= 1; --k) zeta += std::pow(double(k), -2.0 * m);
      }
      c.push_back(zeta / (double(m) * (2 * m + 1)));
    }
    return c;
  }();
  const double q = (t / kTwoPi) * (t / kTwoPi);
  double qpow = q, series = 0;
  for (double c : coef) {
    const double term = c * qpow;
    series += term;
    if (term < 1e-18 * (1 + series)) break;
    qpow *= q;
  }
  return sign * (t - t * std::log(t) + t * series);
}

double lobachevsky(double alpha) { return clausen(2 * alpha) / 2; }

namespace {

// Corner angle opposite side a, adjacent sides b and c, by the
// half-angle form; stable for thin triangles.
double corner_angle(double a, double b, double c) {
  const double s = (a + b + c) / 2;
  const double x = std::max(s - b, 0.0) * std::max(s - c, 0.0);
  const double y = s * std::max(s - a, 0.0);
  return 2 * std::atan2(std::sqrt(x), std::sqrt(y));
}

struct Solver {
  const RootedTriangulation& t;
  std::vector<int> interior;       // interior vertex list
  std::vector<int> idx;            // vertex -> interior index or -1
  std::vector<double> fan_faces;   // per interior vertex: incident face count

  explicit Solver(const RootedTriangulation& tri) : t(tri), idx(tri.n_vertices(), -1) {
    for (int v = 0; v < t.n_vertices(); ++v)
      if (!t.is_boundary_vertex(v)) {
        idx[v] = int(interior.size());
        interior.push_back(v);
        fan_faces.push_back(double(t.vertex_fan(v).size()));
      }
  }

  std::vector<double> lengths(const std::vector<double>& u) const {
    std::vector<double> l(t.n_halfedges());
    for (int h = 0; h < t.n_halfedges(); ++h)
      l[h] = std::exp((u[t.origin(h)] + u[t.target(h)]) / 2);
    return l;
  }

  bool feasible(const std::vector<double>& l) const {
    for (int f = 0; f < t.n_faces(); ++f) {
      const double a = l[3 * f], b = l[3 * f + 1], c = l[3 * f + 2];
      const double m = std::max({a, b, c}), p = a + b + c;
      if (!(p - 2 * m > 1e-14 * p)) return false;
    }
    return true;
  }

  // Angle at the origin of each half-edge h, i.e. the corner its face
  // has at origin(h); the opposite side is next(h).
  std::vector<double> corner_angles(const std::vector<double>& l) const {
    std::vector<double> ang(t.n_halfedges());
    for (int h = 0; h < t.n_halfedges(); ++h)
      ang[h] = corner_angle(l[RootedTriangulation::next(h)], l[h],
                            l[RootedTriangulation::prev(h)]);
    return ang;
  }

  std::vector<double> angle_sums(const std::vector<double>& ang) const {
    std::vector<double> th(t.n_vertices(), 0.0);
    for (int h = 0; h < t.n_halfedges(); ++h) th[t.origin(h)] += ang[h];
    return th;
  }

  double residual(const std::vector<double>& th) const {
    double r = 0;
    for (int v : interior) r = std::max(r, std::abs(th[v] - kTwoPi));
    return r;
  }

  // Convex flattening energy: per corner, angle times the log of the
  // squared opposite length plus twice the Lobachevsky integral, with
  // a linear term steering every interior angle sum to 2 pi.
  double energy(const std::vector<double>& u, const std::vector<double>& ang) const {
    double e = 0;
    for (int h = 0; h < t.n_halfedges(); ++h) {
      const int nx = RootedTriangulation::next(h);
      const double lam = u[t.origin(nx)] + u[t.target(nx)];
      e += ang[h] * lam + 2 * lobachevsky(ang[h]);
    }
    for (size_t i = 0; i < interior.size(); ++i)
      e += (2.0 - fan_faces[i]) * kPi * u[interior[i]];
    return e;
  }

  // Newton direction from the cotangent form restricted to interior
  // vertices.  Returns false if the factorization fails.
  bool direction(const std::vector<double>& ang, const std::vector<double>& th,
                 std::vector<double>& delta) const {
    const int n = int(interior.size());
    std::vector<Eigen::Triplet<double>> trip;
    std::vector<double> diag(n, 0.0);
    for (int h = 0; h < t.n_halfedges(); ++h) {
      // cot of the angle opposite edge next(h) weights that edge.
      const double w = 0.5 / std::tan(std::clamp(ang[h], 1e-12, kPi - 1e-12));
      const int nx = RootedTriangulation::next(h);
      const int a = t.origin(nx), b = t.target(nx);
      const int ia = idx[a], ib = idx[b];
      if (ia >= 0) diag[ia] += w;
      if (ib >= 0) diag[ib] += w;
      if (ia >= 0 && ib >= 0) {
        trip.emplace_back(ia, ib, -w);
        trip.emplace_back(ib, ia, -w);
      }
    }
    for (int i = 0; i < n; ++i) trip.emplace_back(i, i, diag[i] + 1e-12);
    Eigen::SparseMatrix<double> L(n, n);
    L.setFromTriplets(trip.begin(), trip.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> chol(L);
    if (chol.info() != Eigen::Success) return false;
    Eigen::VectorXd r(n);
    for (int i = 0; i < n; ++i) r[i] = th[interior[i]] - kTwoPi;
    const Eigen::VectorXd d = chol.solve(r);
    if (chol.info() != Eigen::Success) return false;
    delta.assign(t.n_vertices(), 0.0);
    for (int i = 0; i < n; ++i) delta[interior[i]] = d[i];
    return true;
  }
};

ConformalFactors solve_once(const RootedTriangulation& t, const FlattenOptions& opt) {
  Solver s(t);
  std::vector<double> u(t.n_vertices(), 0.0);
  auto l = s.lengths(u);
  auto ang = s.corner_angles(l);
  auto th = s.angle_sums(ang);
  double res = s.residual(th);
  double en = s.energy(u, ang);
  int iter = 0;

  while (res > opt.tolerance && iter < opt.max_iterations) {
    std::vector<double> delta;
    if (!s.direction(ang, th, delta)) break;
    double step = 1.0;
    bool accepted = false;
    while (step > 1e-14) {
      std::vector<double> u2 = u;
      for (int v : s.interior) u2[v] += step * delta[v];
      auto l2 = s.lengths(u2);
      if (s.feasible(l2)) {
        auto ang2 = s.corner_angles(l2);
        const double en2 = s.energy(u2, ang2);
        if (en2 <= en + 1e-12 * (1 + std::abs(en))) {
          u = std::move(u2);
          l = std::move(l2);
          ang = std::move(ang2);
          en = en2;
          accepted = true;
          break;
        }
      }
      step *= opt.damping;
    }
    if (!accepted) break;
    th = s.angle_sums(ang);
    res = s.residual(th);
    ++iter;
  }

  ConformalFactors out{t, std::move(u), std::move(l), false,
                       res < 1e-10,     iter,         res, en};
  return out;
}

}  // namespace

ConformalFactors flatten(const RootedTriangulation& t, const FlattenOptions& opt) {
  if (!t.is_disc()) throw std::invalid_argument("flatten: disc input required");
  ConformalFactors first = solve_once(t, opt);
  if (first.converged || !opt.allow_subdivision) return first;
  ConformalFactors second = solve_once(subdivide_midpoint(t).tri, opt);
  second.subdivided = true;
  return second;
}

double angle_sum(const ConformalFactors& f, int v) {
  const RootedTriangulation& t = f.tri;
  double th = 0;
  for (int h : t.vertex_fan(v))
    th += corner_angle(f.length[RootedTriangulation::next(h)], f.length[h],
                       f.length[RootedTriangulation::prev(h)]);
  return th;
}

double flattening_energy(const RootedTriangulation& t,
                         const std::vector<double>& u) {
  Solver s(t);
  return s.energy(u, s.corner_angles(s.lengths(u)));
}

namespace {

using cplx = std::complex<double>;

// Third corner of a positively oriented face developed from the
// placed endpoints of its entry half-edge h: A = origin, B = target;
// the corner sits left of A -> B.
cplx third_corner(const RootedTriangulation& t, const std::vector<double>& l,
                  int h, cplx A, cplx B) {
  const double c = l[h];                            // |AB|
  const double b = l[RootedTriangulation::prev(h)]; // |CA|
  const double a = l[RootedTriangulation::next(h)]; // |BC|
  const double alpha = corner_angle(a, b, c);       // angle at A
  const cplx dir = (B - A) / std::abs(B - A);
  return A + dir * std::polar(b, alpha);
}

double point_segment_dist(cplx p, cplx a, cplx b) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  double s = len2 > 0 ? ((p - a) * std::conj(ab)).real() / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return std::abs(p - (a + s * ab));
}

double point_triangle_dist(cplx p, const std::array<cplx, 3>& tri) {
  bool pos = false, neg = false;
  for (int i = 0; i < 3; ++i) {
    const cplx a = tri[i], b = tri[(i + 1) % 3];
    const double cr = ((b - a) * std::conj(p - a)).imag();
    (cr >= 0 ? pos : neg) = true;
  }
  if (!(pos && neg)) return 0.0;  // inside or on the edge
  double d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i)
    d = std::min(d, point_segment_dist(p, tri[i], tri[(i + 1) % 3]));
  return d;
}

void apply_similarity(ConformalLayout& l, double a, cplx b) {
  for (auto& z : l.vertex) z = a * z + b;
  for (auto& z : l.center) z = a * z + b;
  for (auto& tr : l.interstice)
    for (auto& z : tr) z = a * z + b;
}

}  // namespace

ConformalLayout layout(const ConformalFactors& f) {
  const RootedTriangulation& t = f.tri;
  const std::vector<double>& l = f.length;
  const cplx nan{std::numeric_limits<double>::quiet_NaN(), 0};

  ConformalLayout out;
  out.vertex.assign(t.n_vertices(), nan);
  out.root_face = t.root_face();
  out.max_angle_residual = f.max_residual;

  auto placed = [&](int v) { return !std::isnan(out.vertex[v].real()); };

  // Root face at a fixed pose: root dart along the positive real axis.
  const int h0 = t.root_halfedge();
  out.vertex[t.origin(h0)] = {0, 0};
  out.vertex[t.target(h0)] = {l[h0], 0};

  std::vector<char> face_done(t.n_faces(), 0);
  std::queue<int> q;
  q.push(h0);
  while (!q.empty()) {
    const int h = q.front();
    q.pop();
    const int fface = RootedTriangulation::face_of(h);
    if (face_done[fface]) continue;
    face_done[fface] = 1;
    const int vC = t.target(RootedTriangulation::next(h));
    const cplx C = third_corner(t, l, h, out.vertex[t.origin(h)],
                                out.vertex[t.target(h)]);
    if (!placed(vC)) out.vertex[vC] = C;
    for (int d : {h, RootedTriangulation::next(h), RootedTriangulation::prev(h)}) {
      const int tw = t.twin(d);
      if (tw >= 0 && !face_done[RootedTriangulation::face_of(tw)]) q.push(tw);
    }
  }

  // Reclose every interior edge: develop the far face's opposite
  // corner from this side's stored endpoints and compare.
  for (int h = 0; h < t.n_halfedges(); ++h) {
    const int tw = t.twin(h);
    if (tw < 0 || tw < h) continue;
    const cplx C = third_corner(t, l, tw, out.vertex[t.origin(tw)],
                                out.vertex[t.target(tw)]);
    const double d = std::abs(C - out.vertex[t.target(RootedTriangulation::next(tw))]);
    out.max_edge_defect = std::max(out.max_edge_defect, d);
    out.total_edge_defect += d;
  }
  if (out.max_edge_defect > 1e-8)
    throw std::runtime_error("layout: development mismatch " +
                             std::to_string(out.max_edge_defect));

  out.center.resize(t.n_faces());
  out.interstice.resize(t.n_faces());
  for (int ff = 0; ff < t.n_faces(); ++ff) {
    const auto& fc = t.face(ff);
    const cplx A = out.vertex[fc[0]], B = out.vertex[fc[1]], C = out.vertex[fc[2]];
    out.center[ff] = (A + B + C) / 3.0;
    out.interstice[ff] = {(A + B) / 2.0, (B + C) / 2.0, (C + A) / 2.0};
  }
  return normalize(std::move(out), t);
}

ConformalLayout normalize(ConformalLayout l, const RootedTriangulation& tri) {
  const int o = l.root_face;
  const cplx c0 = l.center[o];
  double m = std::numeric_limits<double>::infinity();
  int argmin = -1;
  for (int f = 0; f < int(l.interstice.size()); ++f) {
    if (f == o) continue;
    const double d = point_triangle_dist(c0, l.interstice[f]);
    if (d < m) {
      m = d;
      argmin = f;
    }
  }
  double a = 1;
  if (argmin >= 0) {
    if (!(m > 0)) throw std::runtime_error("normalize: degenerate layout");
    a = 1 / m;
  }
  const cplx b = -a * c0;
  apply_similarity(l, a, b);
  l.a = a;
  l.b = b;

  l.norm2_applicable = false;
  l.norm2_attained = false;
  if (const auto dist = tri.distances_to_boundary(); dist && argmin >= 0) {
    int dface = std::numeric_limits<int>::max();
    for (int v : tri.face(o)) dface = std::min(dface, (*dist)[v]);
    if (dface >= 2) {
      l.norm2_applicable = true;
      const auto b2 = ball(tri, 2);
      l.norm2_attained = std::find(b2.face_ids.begin(), b2.face_ids.end(),
                                   argmin) != b2.face_ids.end();
    }
  }
  return l;
}

GeometryRatios geometry_ratios(const ConformalLayout& l,
                               const RootedTriangulation& tri) {
  GeometryRatios out;
  const auto dist = tri.distances_to_boundary();
  auto face_depth = [&](int f) {
    if (!dist) return std::numeric_limits<int>::max();
    int d = std::numeric_limits<int>::max();
    for (int v : tri.face(f)) d = std::min(d, (*dist)[v]);
    return d;
  };
  double minc = std::numeric_limits<double>::infinity();
  for (int f = 0; f < tri.n_faces(); ++f) {
    if (face_depth(f) < 2) continue;
    FaceRatios fr;
    fr.face = f;
    const auto& tr = l.interstice[f];
    const cplx c = l.center[f];
    for (int i = 0; i < 3; ++i) {
      fr.outradius = std::max(fr.outradius, std::abs(tr[i] - c));
      fr.diameter = std::max(fr.diameter, std::abs(tr[i] - tr[(i + 1) % 3]));
      fr.inradius = std::min(i ? fr.inradius : std::numeric_limits<double>::infinity(),
                             point_segment_dist(c, tr[i], tr[(i + 1) % 3]));
    }
    out.max_shape_ratio = std::max(out.max_shape_ratio, fr.outradius / fr.inradius);
    for (int i = 0; i < 3; ++i) {
      const int tw = tri.twin(3 * f + i);
      if (tw < 0) continue;
      const int g = RootedTriangulation::face_of(tw);
      const double ratio = std::abs(l.center[g] - c) / fr.diameter;
      fr.center_ratios.emplace_back(g, ratio);
      out.max_center_ratio = std::max(out.max_center_ratio, ratio);
      minc = std::min(minc, ratio);
    }
    out.faces.push_back(std::move(fr));
  }
  out.min_center_ratio = std::isfinite(minc) ? minc : 0;
  return out;
}

namespace {

// Area of the intersection of two convex polygons by half-plane
// clipping of `poly` against each directed edge of `clip`.
double convex_intersection_area(std::vector<cplx> poly,
                                const std::array<cplx, 3>& clip) {
  auto cross = [](cplx u, cplx v) { return u.real() * v.imag() - u.imag() * v.real(); };
  // Ensure ccw clip orientation.
  std::array<cplx, 3> c = clip;
  if (cross(c[1] - c[0], c[2] - c[0]) < 0) std::swap(c[1], c[2]);
  for (int i = 0; i < 3 && !poly.empty(); ++i) {
    const cplx a = c[i], b = c[(i + 1) % 3];
    std::vector<cplx> next;
    for (size_t j = 0; j < poly.size(); ++j) {
      const cplx p = poly[j], q = poly[(j + 1) % poly.size()];
      const double sp = cross(b - a, p - a), sq = cross(b - a, q - a);
      if (sp >= 0) next.push_back(p);
      if ((sp > 0 && sq < 0) || (sp < 0 && sq > 0))
        next.push_back(p + (q - p) * (sp / (sp - sq)));
    }
    poly = std::move(next);
  }
  double area = 0;
  for (size_t j = 0; j + 1 < poly.size(); ++j)
    area += cross(poly[j] - poly[0], poly[j + 1] - poly[0]);
  return std::abs(area) / 2;
}

double triangle_area(const std::array<cplx, 3>& t) {
  return std::abs(((t[1] - t[0]) * std::conj(t[2] - t[0])).imag()) / 2;
}

}  // namespace

double interstice_overlap_fraction(const ConformalLayout& l) {
  const int F = int(l.interstice.size());
  double total = 0, overlap = 0;
  std::vector<std::array<double, 4>> box(F);  // minx maxx miny maxy
  for (int f = 0; f < F; ++f) {
    total += triangle_area(l.interstice[f]);
    auto& bb = box[f];
    bb = {1e300, -1e300, 1e300, -1e300};
    for (const cplx& z : l.interstice[f]) {
      bb[0] = std::min(bb[0], z.real());
      bb[1] = std::max(bb[1], z.real());
      bb[2] = std::min(bb[2], z.imag());
      bb[3] = std::max(bb[3], z.imag());
    }
  }
  for (int f = 0; f < F; ++f)
    for (int g = f + 1; g < F; ++g) {
      if (box[f][1] < box[g][0] || box[g][1] < box[f][0] ||
          box[f][3] < box[g][2] || box[g][3] < box[f][2])
        continue;
      std::vector<cplx> poly(l.interstice[f].begin(), l.interstice[f].end());
      overlap += convex_intersection_area(std::move(poly), l.interstice[g]);
    }
  return total > 0 ? overlap / total : 0;
}

void emit_layout(std::ostream& out, const ConformalLayout& l) {
  out.precision(17);
  out << "layout " << l.vertex.size() << ' ' << l.center.size() << '\n';
  out << "root " << l.root_face << '\n';
  out << "norm " << l.a << ' ' << l.b.real() << ' ' << l.b.imag() << '\n';
  out << "residual " << l.max_angle_residual << ' ' << l.max_edge_defect << '\n';
  for (size_t v = 0; v < l.vertex.size(); ++v)
    out << "v " << v << ' ' << l.vertex[v].real() << ' ' << l.vertex[v].imag() << '\n';
  for (size_t f = 0; f < l.center.size(); ++f)
    out << "c " << f << ' ' << l.center[f].real() << ' ' << l.center[f].imag() << '\n';
}

ConformalLayout parse_layout(std::istream& in) {
  ConformalLayout l;
  std::string line, tag;
  size_t nv = 0, nf = 0;
  bool header = false;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "layout") {
      if (!(ls >> nv >> nf)) throw std::runtime_error("bad layout header");
      l.vertex.assign(nv, {0, 0});
      l.center.assign(nf, {0, 0});
      header = true;
    } else if (!header) {
      throw std::runtime_error("layout record before header");
    } else if (tag == "root") {
      if (!(ls >> l.root_face) || l.root_face < 0 ||
          size_t(l.root_face) >= nf)
        throw std::runtime_error("bad root line");
    } else if (tag == "norm") {
      double br, bi;
      if (!(ls >> l.a >> br >> bi)) throw std::runtime_error("bad norm line");
      l.b = {br, bi};
    } else if (tag == "residual") {
      if (!(ls >> l.max_angle_residual >> l.max_edge_defect))
        throw std::runtime_error("bad residual line");
    } else if (tag == "v" || tag == "c") {
      size_t id;
      double x, y;
      if (!(ls >> id >> x >> y)) throw std::runtime_error("bad coordinate line");
      auto& arr = tag == "v" ? l.vertex : l.center;
      if (id >= arr.size()) throw std::runtime_error("coordinate id out of range");
      arr[id] = {x, y};
    } else {
      throw std::runtime_error("unknown layout record: " + tag);
    }
  }
  if (!header) throw std::runtime_error("missing layout header");
  return l;
}

}  // namespace rpmlab
