#include "rpmlab/necklace.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <stdexcept>

namespace rpmlab {

bool valid_word(const std::string& word) {
  return std::all_of(word.begin(), word.end(), [](char c) {
    return c == 'B' || c == 'b' || c == 'R' || c == 'r';
  });
}

namespace {

void require_word(const std::string& word) {
  if (!valid_word(word))
    throw std::invalid_argument("word must use letters B, b, R, r");
  if (word.empty())
    throw std::invalid_argument("empty word builds no triangulation");
}

}  // namespace

NecklaceBuilder::NecklaceBuilder()
    : int_label_{0, 1}, nxt_{1, 0}, prv_{1, 0}, bdart_{-1, -1} {}

int NecklaceBuilder::new_vertex(std::optional<int> integer) {
  const int id = int(int_label_.size());
  int_label_.push_back(integer ? *integer : INT_MIN);
  nxt_.push_back(-1);
  prv_.push_back(-1);
  bdart_.push_back(-1);
  return id;
}

std::optional<int> NecklaceBuilder::integer_label(int v) const {
  if (int_label_[v] == INT_MIN) return std::nullopt;
  return int_label_[v];
}

void NecklaceBuilder::splice_in(int after, int v) {
  const int b = nxt_[after];
  nxt_[after] = v;
  prv_[v] = after;
  nxt_[v] = b;
  prv_[b] = v;
}

void NecklaceBuilder::splice_out(int v) {
  nxt_[prv_[v]] = nxt_[v];
  prv_[nxt_[v]] = prv_[v];
}

void NecklaceBuilder::step(Letter letter) {
  const int b = active_b_, r = active_r_;
  const int f = int(faces_.size());
  const int d0 = 3 * f, d1 = 3 * f + 1, d2 = 3 * f + 2;
  const bool first = f == 0;

  // Every letter glues one face onto the active edge; its triple is
  // (b, r, x) so the creation half-edge b->r is always slot 0.
  twin_.resize(3 * f + 3, -1);
  if (first) {
    // The initial segment [0,1] has no face below; slot 0 stays boundary
    // and is the first piece of the integer line.
    line_darts_.push_back({0, d0});
  } else {
    const int t = bdart_[r];  // dart of the active step r -> b
    twin_[d0] = t;
    twin_[t] = d0;
  }

  int x;
  switch (letter) {
    case Letter::B: {
      x = new_vertex(std::nullopt);
      splice_in(r, x);
      bdart_[r] = d1;  // r -> x, the next active edge
      bdart_[x] = d2;  // x -> b
      active_b_ = x;
      break;
    }
    case Letter::R: {
      x = new_vertex(std::nullopt);
      splice_in(r, x);
      bdart_[r] = d1;  // r -> x
      bdart_[x] = d2;  // x -> b, the next active edge
      active_r_ = x;
      break;
    }
    case Letter::b: {
      if (int_label_[b] != INT_MIN) {
        const int m = int_label_[b];
        x = new_vertex(m - 1);
        min_int_ = m - 1;
        splice_in(r, x);
        bdart_[r] = d1;  // r -> x, the next active edge
        bdart_[x] = d2;  // x -> b runs (m-1) -> m along the line
        line_darts_.push_back({m - 1, d2});
      } else {
        x = nxt_[b];  // counterclockwise boundary neighbour of b
        const int consumed = bdart_[b];  // dart b -> x
        twin_[d2] = consumed;            // d2 is x -> b
        twin_[consumed] = d2;
        splice_out(b);
        bdart_[r] = d1;  // r -> x, the next active edge
      }
      active_b_ = x;
      break;
    }
    case Letter::r: {
      if (int_label_[r] != INT_MIN) {
        const int m = int_label_[r];
        x = new_vertex(m + 1);
        max_int_ = m + 1;
        splice_in(r, x);
        bdart_[r] = d1;  // r -> x runs m -> (m+1) along the line
        bdart_[x] = d2;  // x -> b, the next active edge
        line_darts_.push_back({m, d1});
      } else {
        x = prv_[r];  // clockwise boundary neighbour of r
        const int consumed = bdart_[x];  // dart x -> r
        twin_[d1] = consumed;            // d1 is r -> x
        twin_[consumed] = d1;
        splice_out(r);
        bdart_[x] = d2;  // x -> b, the next active edge
      }
      active_r_ = x;
      break;
    }
    default:
      throw std::invalid_argument("bad letter");
  }
  if (first) bdart_[b] = d0;
  faces_.push_back({b, r, x});
}

RootedTriangulation NecklaceBuilder::rooted(int k) const {
  if (k < 1 || k > steps())
    throw std::out_of_range("root step index out of range");
  return RootedTriangulation(vertex_count(), faces_, twin_, 3 * (k - 1),
                             SurfaceKind::Disc);
}

RootedTriangulation build_plus(const std::string& word) {
  require_word(word);
  NecklaceBuilder nb;
  for (char c : word) nb.step(Letter(c));
  return nb.rooted(1);
}

RootedTriangulation build_rooted(const std::string& word, int k) {
  require_word(word);
  NecklaceBuilder nb;
  for (char c : word) nb.step(Letter(c));
  return nb.rooted(k);
}

namespace {

// Orientation flip: face (a,b,c) is stored as (a,c,b); each half-edge is
// replaced by its reverse, which sits at slot 2-s of the same face.
struct Flipped {
  std::vector<std::array<int, 3>> faces;
  std::vector<int> twin;
  int root;
};

Flipped flip_data(const std::vector<std::array<int, 3>>& faces,
                  const std::vector<int>& twin, int root) {
  const int F = int(faces.size());
  Flipped out;
  out.faces.resize(F);
  out.twin.assign(3 * F, -1);
  auto sigma = [](int d) { return 3 * (d / 3) + (2 - d % 3); };
  for (int f = 0; f < F; ++f)
    out.faces[f] = {faces[f][0], faces[f][2], faces[f][1]};
  for (int d = 0; d < 3 * F; ++d)
    out.twin[sigma(d)] = twin[d] < 0 ? -1 : sigma(twin[d]);
  out.root = sigma(root);
  return out;
}

}  // namespace

RootedTriangulation build_minus(const std::string& word) {
  RootedTriangulation t = build_plus(word);
  std::vector<int> tw(t.n_halfedges());
  for (int d = 0; d < t.n_halfedges(); ++d) tw[d] = t.twin(d);
  Flipped fl = flip_data(t.faces(), tw, t.root_halfedge());
  return RootedTriangulation(t.n_vertices(), std::move(fl.faces),
                             std::move(fl.twin), fl.root, SurfaceKind::Disc);
}

RootedTriangulation build_glued(const std::string& x, const std::string& y) {
  require_word(x);
  if (y.empty()) return build_plus(x);
  if (!valid_word(y))
    throw std::invalid_argument("word must use letters B, b, R, r");

  NecklaceBuilder up, down;
  for (char c : x) up.step(Letter(c));
  for (char c : y) down.step(Letter(c));

  const int FU = up.steps(), FD = down.steps();
  std::vector<int> up_twin(3 * FU), down_twin(3 * FD);
  {
    RootedTriangulation tu = up.rooted(1);
    for (int d = 0; d < 3 * FU; ++d) up_twin[d] = tu.twin(d);
    RootedTriangulation td = down.rooted(1);
    for (int d = 0; d < 3 * FD; ++d) down_twin[d] = td.twin(d);
  }
  Flipped lower = flip_data(down.faces(), down_twin, 0);

  // Shared vertices: integers materialized on both sides.
  std::map<int, int> up_int;  // integer -> upper vertex id
  for (int v = 0; v < up.vertex_count(); ++v)
    if (auto m = up.integer_label(v)) up_int[*m] = v;

  std::vector<int> down_map(down.vertex_count(), -1);
  int next_id = up.vertex_count();
  for (int v = 0; v < down.vertex_count(); ++v) {
    auto m = down.integer_label(v);
    if (m && up_int.count(*m))
      down_map[v] = up_int[*m];
    else
      down_map[v] = next_id++;
  }

  std::vector<std::array<int, 3>> faces(up.faces().begin(), up.faces().end());
  faces.reserve(FU + FD);
  for (const auto& fc : lower.faces)
    faces.push_back({down_map[fc[0]], down_map[fc[1]], down_map[fc[2]]});

  std::vector<int> twin(3 * (FU + FD), -1);
  for (int d = 0; d < 3 * FU; ++d) twin[d] = up_twin[d];
  for (int d = 0; d < 3 * FD; ++d)
    twin[3 * FU + d] = lower.twin[d] < 0 ? -1 : 3 * FU + lower.twin[d];

  // Weld the line: edge [m, m+1] materialized on both sides pairs the
  // upper dart m -> m+1 with the flipped lower dart (m+1) -> m.
  auto sigma = [](int d) { return 3 * (d / 3) + (2 - d % 3); };
  std::map<int, int> lower_line;  // left integer -> flipped dart id
  for (auto [m, d] : down.line_darts()) lower_line[m] = 3 * FU + sigma(d);
  for (auto [m, d] : up.line_darts()) {
    auto it = lower_line.find(m);
    if (it == lower_line.end()) continue;
    twin[d] = it->second;
    twin[it->second] = d;
  }

  return RootedTriangulation(next_id, std::move(faces), std::move(twin), 0,
                             SurfaceKind::Disc);
}

std::string glue_word(const std::string& x, const std::string& y) {
  auto prime = [](char c) -> char {
    switch (c) {
      case 'B': return 'b';
      case 'b': return 'B';
      case 'R': return 'r';
      case 'r': return 'R';
    }
    throw std::invalid_argument("word must use letters B, b, R, r");
  };
  std::string z;
  z.reserve(x.size() + y.size());
  for (auto it = y.rbegin(); it != y.rend(); ++it) z.push_back(prime(*it));
  z += x;
  return z;
}

WalkTrace walk(const std::string& word) {
  if (!valid_word(word))
    throw std::invalid_argument("word must use letters B, b, R, r");
  WalkTrace w;
  w.x.assign(word.size() + 1, 0);
  w.y.assign(word.size() + 1, 0);
  for (size_t i = 0; i < word.size(); ++i) {
    w.x[i + 1] = w.x[i] + (word[i] == 'B') - (word[i] == 'b');
    w.y[i + 1] = w.y[i] + (word[i] == 'R') - (word[i] == 'r');
  }
  return w;
}

int degree_of_origin_from_walk(const std::string& word) {
  WalkTrace w = walk(word);
  int deg = 1, lo = 0;
  for (size_t j = 1; j < w.x.size(); ++j) {
    if (lo < 0) break;  // vertex 0 is buried once the walk has gone negative
    if (w.x[j] == 0 || w.x[j - 1] == 0) ++deg;
    lo = std::min(lo, w.x[j]);
  }
  return deg;
}

int degree_bound_from_walk(const std::string& word) {
  WalkTrace w = walk(word);
  int count = 0, lo = 0;
  for (size_t j = 1; j < w.x.size(); ++j) {
    if (lo >= 0 && w.x[j] == 0) ++count;
    lo = std::min(lo, w.x[j]);
  }
  return 2 * count + 2;
}

bool origin_on_outer_boundary(const std::string& word) {
  WalkTrace w = walk(word);
  return std::all_of(w.x.begin(), w.x.end(), [](int v) { return v >= 0; });
}

int boundary_size_bound(const std::string& word) {
  WalkTrace w = walk(word);
  const int a = -std::min(0, *std::min_element(w.x.begin(), w.x.end()));
  const int b = -std::min(0, *std::min_element(w.y.begin(), w.y.end()));
  return a + b + std::abs(w.x.back() + a) + std::abs(w.y.back() + b);
}

}  // namespace rpmlab
