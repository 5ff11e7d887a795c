#include <algorithm>

#include "rpmlab/triangulation.hpp"

namespace rpmlab {

namespace {

// A subcomplex is a face subset with the structure it inherits from the
// parent: next as usual, twin only where both sides are present, and the
// rotation around each vertex restricted to present half-edges.  The
// restriction keeps the parent's cyclic order, wrapping at interior
// vertices; at a parent-boundary vertex the fan stays linear.
struct SubView {
  const RootedTriangulation* t;
  std::vector<int> twin;
  std::vector<int> rot;
};

SubView make_view(const RootedTriangulation& t,
                  const std::vector<char>& in_face) {
  const int H = 3 * t.n_faces();
  SubView v{&t, std::vector<int>(H, -1), std::vector<int>(H, -1)};
  for (int h = 0; h < H; ++h) {
    if (!in_face[h / 3]) continue;
    const int tw = t.twin(h);
    v.twin[h] = (tw >= 0 && in_face[tw / 3]) ? tw : -1;
  }
  for (int vert = 0; vert < t.n_vertices(); ++vert) {
    const auto& fan = t.vertex_fan(vert);
    std::vector<int> present;
    for (int h : fan)
      if (in_face[h / 3]) present.push_back(h);
    if (present.empty()) continue;
    const bool cyclic = !t.is_boundary_vertex(vert);
    for (size_t i = 0; i + 1 < present.size(); ++i)
      v.rot[present[i]] = present[i + 1];
    v.rot[present.back()] = cyclic ? present.front() : -1;
  }
  return v;
}

// Breadth-first canonical form.  Half-edges get ids in discovery order
// under the generators [next, twin, rot]; vertices are labelled the first
// time they appear as an origin.  The flattened id tuples identify the
// rooted subcomplex up to orientation-preserving isomorphism.
std::vector<int32_t> encode_view(const SubView& view, int root_dart) {
  const auto& t = *view.t;
  const int H = 3 * t.n_faces();
  std::vector<int> dart_id(H, -1);
  std::vector<int> order;
  order.reserve(H);
  dart_id[root_dart] = 0;
  order.push_back(root_dart);
  for (size_t qi = 0; qi < order.size(); ++qi) {
    const int d = order[qi];
    const int gens[3] = {RootedTriangulation::next(d), view.twin[d],
                         view.rot[d]};
    for (int g : gens)
      if (g >= 0 && dart_id[g] < 0) {
        dart_id[g] = int(order.size());
        order.push_back(g);
      }
  }
  std::vector<int> vlabel(t.n_vertices(), -1);
  int next_label = 0;
  std::vector<int32_t> out;
  out.reserve(1 + 4 * order.size());
  out.push_back(int32_t(order.size()));
  for (int d : order) {
    int& lab = vlabel[t.origin(d)];
    if (lab < 0) lab = next_label++;
    out.push_back(lab);
    out.push_back(dart_id[RootedTriangulation::next(d)]);
    out.push_back(view.twin[d] < 0 ? -1 : dart_id[view.twin[d]]);
    out.push_back(view.rot[d] < 0 ? -1 : dart_id[view.rot[d]]);
  }
  return out;
}

std::vector<int> bfs_order(const SubView& view, int root_dart) {
  const auto& t = *view.t;
  const int H = 3 * t.n_faces();
  std::vector<int> dart_id(H, -1);
  std::vector<int> order;
  dart_id[root_dart] = 0;
  order.push_back(root_dart);
  for (size_t qi = 0; qi < order.size(); ++qi) {
    const int d = order[qi];
    const int gens[3] = {RootedTriangulation::next(d), view.twin[d],
                         view.rot[d]};
    for (int g : gens)
      if (g >= 0 && dart_id[g] < 0) {
        dart_id[g] = int(order.size());
        order.push_back(g);
      }
  }
  return order;
}

}  // namespace

CombinatorialBall ball(const RootedTriangulation& t, int radius) {
  CombinatorialBall b;
  b.radius = radius;
  std::vector<char> vin(t.n_vertices(), 0), fin(t.n_faces(), 0);
  vin[t.root_vertex()] = 1;
  for (int step = 0; step < radius; ++step) {
    bool grew = false;
    for (int f = 0; f < t.n_faces(); ++f) {
      if (fin[f]) continue;
      const auto& fc = t.face(f);
      if (vin[fc[0]] || vin[fc[1]] || vin[fc[2]]) {
        fin[f] = 1;
        grew = true;
      }
    }
    for (int f = 0; f < t.n_faces(); ++f)
      if (fin[f])
        for (int v : t.face(f)) vin[v] = 1;
    if (!grew) break;
  }
  for (int f = 0; f < t.n_faces(); ++f)
    if (fin[f]) b.face_ids.push_back(f);
  for (int v = 0; v < t.n_vertices(); ++v)
    if (vin[v]) b.vertex_ids.push_back(v);
  b.covers_parent = int(b.face_ids.size()) == t.n_faces();
  return b;
}

std::vector<int32_t> ball_encoding(const RootedTriangulation& t,
                                   const CombinatorialBall& b) {
  if (b.face_ids.empty()) return {0};
  std::vector<char> in(t.n_faces(), 0);
  for (int f : b.face_ids) in[f] = 1;
  return encode_view(make_view(t, in), t.root_halfedge());
}

std::vector<int32_t> canonical_encoding_from(const RootedTriangulation& t,
                                             int root_dart) {
  std::vector<char> in(t.n_faces(), 1);
  return encode_view(make_view(t, in), root_dart);
}

std::vector<int32_t> canonical_encoding(const RootedTriangulation& t) {
  return canonical_encoding_from(t, t.root_halfedge());
}

std::vector<int> encoding_dart_order(const RootedTriangulation& t,
                                     int root_dart) {
  std::vector<char> in(t.n_faces(), 1);
  return bfs_order(make_view(t, in), root_dart);
}

std::vector<int> ball_face_order(const RootedTriangulation& t,
                                 const CombinatorialBall& b) {
  std::vector<int> faces;
  if (b.face_ids.empty()) return faces;
  std::vector<char> in(t.n_faces(), 0);
  for (int f : b.face_ids) in[f] = 1;
  std::vector<char> seen(t.n_faces(), 0);
  for (int d : bfs_order(make_view(t, in), t.root_halfedge())) {
    const int f = RootedTriangulation::face_of(d);
    if (!seen[f]) {
      seen[f] = 1;
      faces.push_back(f);
    }
  }
  return faces;
}

int canonical_root_dart(const RootedTriangulation& t) {
  int best = 0;
  std::vector<int32_t> best_enc = canonical_encoding_from(t, 0);
  for (int d = 1; d < t.n_halfedges(); ++d) {
    std::vector<int32_t> enc = canonical_encoding_from(t, d);
    if (enc < best_enc) {
      best_enc = std::move(enc);
      best = d;
    }
  }
  return best;
}

bool rooted_isomorphic(const RootedTriangulation& a,
                       const RootedTriangulation& b) {
  return canonical_encoding(a) == canonical_encoding(b);
}

Rational combinatorial_distance(const RootedTriangulation& a,
                                const RootedTriangulation& b) {
  if (rooted_isomorphic(a, b)) return {0, 1};
  const int guard = a.n_faces() + b.n_faces() + 2;
  for (int k = 1; k <= guard; ++k) {
    if (ball_encoding(a, ball(a, k)) != ball_encoding(b, ball(b, k)))
      return {1, k};
  }
  return {1, guard + 1};
}

}  // namespace rpmlab
