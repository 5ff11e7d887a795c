// Brute-force reference computations and small fixture maps for the tests.
// Everything here recomputes results from first principles (face lists and
// twin pairs only), independent of the library's fan/encoding machinery.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "rpmlab/triangulation.hpp"

namespace oracles {

using rpmlab::RootedTriangulation;
using rpmlab::SurfaceKind;

// Disc wheel: hub 0, rim 1..k, faces (0, i, i+1) with rim edges on the
// boundary.
inline RootedTriangulation wheel(int k, int root = 0) {
  std::vector<std::array<int, 3>> faces(k);
  std::vector<int> twin(3 * k, -1);
  for (int i = 0; i < k; ++i) {
    faces[i] = {0, 1 + i, 1 + (i + 1) % k};
    const int prev = (i + k - 1) % k;
    twin[3 * i] = 3 * prev + 2;  // 0 -> rim_i reverses rim_i -> 0
    twin[3 * prev + 2] = 3 * i;
  }
  return RootedTriangulation(k + 1, faces, twin, root, SurfaceKind::Disc);
}

// Triangle bipyramid: equator 0,1,2 and apexes 3,4; the smallest sphere
// triangulation with 5 vertices.
inline RootedTriangulation bipyramid(int root = 0) {
  std::vector<std::array<int, 3>> faces = {{0, 1, 3}, {1, 2, 3}, {2, 0, 3},
                                           {1, 0, 4}, {2, 1, 4}, {0, 2, 4}};
  const int F = int(faces.size());
  std::vector<int> twin(3 * F, -1);
  std::map<std::pair<int, int>, int> dart;
  for (int d = 0; d < 3 * F; ++d) {
    const auto& f = faces[d / 3];
    dart[{f[d % 3], f[(d % 3 + 1) % 3]}] = d;
  }
  for (auto [e, d] : dart) twin[d] = dart.at({e.second, e.first});
  return RootedTriangulation(5, faces, twin, root, SurfaceKind::Sphere);
}

// Distinct edge objects incident to v, counted from raw twin pairs.
inline int degree(const RootedTriangulation& t, int v) {
  int deg = 0;
  for (int d = 0; d < t.n_halfedges(); ++d) {
    if (t.twin(d) >= 0 && t.twin(d) < d) continue;  // one dart per edge
    if (t.origin(d) == v || t.target(d) == v) ++deg;
  }
  return deg;
}

// Inductive combinatorial ball via a plain incidence scan.
struct BallSets {
  std::set<int> faces, verts;
};

inline BallSets ball(const RootedTriangulation& t, int r) {
  BallSets b;
  b.verts.insert(t.root_vertex());
  for (int i = 0; i < r; ++i) {
    std::set<int> nf;
    for (int f = 0; f < t.n_faces(); ++f)
      for (int s = 0; s < 3; ++s)
        if (b.verts.count(t.face(f)[s])) {
          nf.insert(f);
          break;
        }
    b.faces = nf;
    for (int f : b.faces)
      for (int s = 0; s < 3; ++s) b.verts.insert(t.face(f)[s]);
  }
  return b;
}

// Multi-source BFS to the boundary over the vertex graph read off the faces.
inline std::optional<int> boundary_distance(const RootedTriangulation& t,
                                            int v) {
  std::set<int> bdry;
  for (int d : t.boundary_cycle()) bdry.insert(t.origin(d));
  if (bdry.empty()) return std::nullopt;
  std::vector<std::set<int>> adj(t.n_vertices());
  for (int f = 0; f < t.n_faces(); ++f)
    for (int s = 0; s < 3; ++s) {
      adj[t.face(f)[s]].insert(t.face(f)[(s + 1) % 3]);
      adj[t.face(f)[(s + 1) % 3]].insert(t.face(f)[s]);
    }
  std::vector<int> dist(t.n_vertices(), -1);
  std::queue<int> q;
  for (int b : bdry) {
    dist[b] = 0;
    q.push(b);
  }
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int w : adj[u])
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        q.push(w);
      }
  }
  return dist[v];
}

// Root-preserving oriented map isomorphism by propagating the dart
// correspondence through the generators next and twin.  Completely
// independent of the canonical-encoding path.
inline bool rooted_iso(const RootedTriangulation& A,
                       const RootedTriangulation& B) {
  if (A.n_faces() != B.n_faces() || A.n_vertices() != B.n_vertices() ||
      A.kind() != B.kind())
    return false;
  const int n = A.n_halfedges();
  std::vector<int> fw(n, -1), bw(n, -1);
  std::vector<int> vmap(A.n_vertices(), -1), wmap(B.n_vertices(), -1);
  auto assign = [&](int a, int b) {
    if (fw[a] == -1 && bw[b] == -1) {
      fw[a] = b;
      bw[b] = a;
      return 1;  // newly paired
    }
    return fw[a] == b && bw[b] == a ? 0 : -1;
  };
  std::vector<int> stack;
  if (assign(A.root_halfedge(), B.root_halfedge()) < 0) return false;
  stack.push_back(A.root_halfedge());
  while (!stack.empty()) {
    const int a = stack.back(), b = fw[stack.back()];
    stack.pop_back();
    const int va = A.origin(a), vb = B.origin(b);
    if (vmap[va] == -1 && wmap[vb] == -1) {
      vmap[va] = vb;
      wmap[vb] = va;
    } else if (vmap[va] != vb || wmap[vb] != va) {
      return false;
    }
    const int r = assign(RootedTriangulation::next(a),
                         RootedTriangulation::next(b));
    if (r < 0) return false;
    if (r > 0) stack.push_back(RootedTriangulation::next(a));
    const int at = A.twin(a), bt = B.twin(b);
    if ((at < 0) != (bt < 0)) return false;
    if (at >= 0) {
      const int s = assign(at, bt);
      if (s < 0) return false;
      if (s > 0) stack.push_back(at);
    }
  }
  return std::all_of(fw.begin(), fw.end(), [](int x) { return x >= 0; });
}

// Random relabeling: permute vertex names, reorder faces, rotate each face's
// starting slot.  The result is the same rooted map under different labels.
inline RootedTriangulation scrambled(const RootedTriangulation& t,
                                     std::mt19937_64& rng) {
  const int V = t.n_vertices(), F = t.n_faces();
  std::vector<int> vperm(V), fperm(F), rot(F);
  for (int i = 0; i < V; ++i) vperm[i] = i;
  for (int i = 0; i < F; ++i) fperm[i] = i;
  std::shuffle(vperm.begin(), vperm.end(), rng);
  std::shuffle(fperm.begin(), fperm.end(), rng);
  for (int i = 0; i < F; ++i) rot[i] = int(rng() % 3);

  auto img = [&](int d) {
    const int f = d / 3, s = d % 3;
    return 3 * fperm[f] + (s + 3 - rot[f]) % 3;
  };
  std::vector<std::array<int, 3>> faces(F);
  std::vector<int> twin(3 * F, -1);
  for (int f = 0; f < F; ++f)
    for (int s = 0; s < 3; ++s) {
      faces[fperm[f]][(s + 3 - rot[f]) % 3] = vperm[t.face(f)[s]];
      twin[img(3 * f + s)] =
          t.twin(3 * f + s) < 0 ? -1 : img(t.twin(3 * f + s));
    }
  return RootedTriangulation(V, faces, twin, img(t.root_halfedge()), t.kind());
}

// All words over {B,b,R,r} of exactly length n, lexicographic in B<b<R<r.
inline void each_word(int n, const std::function<void(const std::string&)>& f) {
  static const char alphabet[4] = {'B', 'b', 'R', 'r'};
  std::string w(n, 'B');
  std::vector<int> digit(n, 0);
  while (true) {
    f(w);
    int i = n - 1;
    while (i >= 0 && digit[i] == 3) {
      digit[i] = 0;
      w[i] = alphabet[0];
      --i;
    }
    if (i < 0) return;
    ++digit[i];
    w[i] = alphabet[digit[i]];
  }
}

inline std::string random_word(int n, std::mt19937_64& rng) {
  static const char alphabet[4] = {'B', 'b', 'R', 'r'};
  std::string w(n, 'B');
  for (auto& c : w) c = alphabet[rng() % 4];
  return w;
}

// Twin pairing by unordered endpoints; valid only when no two edges
// share an endpoint pair.
inline RootedTriangulation from_faces(int V,
                                      const std::vector<std::array<int, 3>>& faces,
                                      int root, SurfaceKind kind) {
  std::map<std::pair<int, int>, int> open;
  std::vector<int> twin(3 * faces.size(), -1);
  for (int h = 0; h < int(twin.size()); ++h) {
    const int a = faces[h / 3][h % 3], b = faces[h / 3][(h % 3 + 1) % 3];
    const auto key = std::minmax(a, b);
    if (auto it = open.find(key); it != open.end()) {
      twin[h] = it->second;
      twin[it->second] = h;
      open.erase(it);
    } else {
      open[key] = h;
    }
  }
  return RootedTriangulation(V, faces, twin, root, kind);
}

// Parallelogram patch of the unit triangular lattice, (m+1) x (n+1)
// vertices; every interior vertex has degree 6.
inline RootedTriangulation lattice_patch(int m, int n) {
  auto v = [m](int i, int j) { return j * (m + 1) + i; };
  std::vector<std::array<int, 3>> faces;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) {
      faces.push_back({v(i, j), v(i + 1, j), v(i, j + 1)});
      faces.push_back({v(i + 1, j), v(i + 1, j + 1), v(i, j + 1)});
    }
  return from_faces((m + 1) * (n + 1), faces, 0, SurfaceKind::Disc);
}

inline std::complex<double> lattice_pos(int i, int j) {
  return {i + j / 2.0, j * std::sqrt(3.0) / 2.0};
}

// Clausen integral by quadrature: split off the log singularity
// analytically and integrate the smooth remainder by Simpson.
inline double clausen_quadrature(double theta) {
  auto g = [](double x) {
    return x == 0 ? 0.0 : -std::log(std::sin(x / 2) / (x / 2));
  };
  const int N = 1 << 14;
  const double h = theta / N;
  double s = g(0) + g(theta);
  for (int i = 1; i < N; ++i) s += g(i * h) * (i % 2 ? 4 : 2);
  return theta - theta * std::log(theta) + s * h / 3;
}

}  // namespace oracles
