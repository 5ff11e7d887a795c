#include "rpmlab/io.hpp"

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <queue>
#include <sstream>

namespace rpmlab {

std::string emit(const RootedTriangulation& t) {
  std::ostringstream out;
  out << "tri " << t.n_vertices() << ' ' << t.n_faces() << ' '
      << (t.is_disc() ? "disc" : "sphere") << '\n';
  for (int f = 0; f < t.n_faces(); ++f) {
    const auto& fc = t.face(f);
    out << "f " << fc[0] << ' ' << fc[1] << ' ' << fc[2] << '\n';
  }
  out << "root " << t.root_face() << ' ' << t.origin(t.root_halfedge())
      << '\n';
  return out.str();
}

namespace {

[[noreturn]] void bad(ParseErrorKind k, const std::string& msg) {
  throw ParseError(k, msg);
}

struct Group {
  std::vector<int> fwd;  // darts u -> v, u < v, in text order
  std::vector<int> bwd;  // darts v -> u, in text order
};

// Twin reconstruction.  The text has no twin table; darts are grouped per
// undirected edge and matched within groups.  Necklace maps stack parallel
// edges chronologically, so the true matching is always order-preserving
// on a contiguous window of each group; we search those windows under the
// exact boundary budget and take the first assignment that validates.
struct Matcher {
  int V, F, root_dart;
  SurfaceKind kind;
  const std::vector<std::array<int, 3>>& faces;
  std::vector<Group> groups;
  std::vector<int> twin;
  int budget = 0;
  std::vector<int> min_rest, max_rest;  // suffix sums over groups
  long tries = 0, try_cap = 0;

  Matcher(int V_, const std::vector<std::array<int, 3>>& faces_,
          int root_dart_, SurfaceKind kind_)
      : V(V_), F(int(faces_.size())), root_dart(root_dart_), kind(kind_),
        faces(faces_) {}

  std::optional<RootedTriangulation> run() {
    // Boundary budget forced by the Euler characteristic:
    // E = (3F + B)/2 and V - E + F = chi gives B = 2V - F - 2 chi.
    const int chi = kind == SurfaceKind::Disc ? 1 : 2;
    budget = 2 * V - F - 2 * chi;
    if (budget < 0 || (kind == SurfaceKind::Sphere && budget != 0))
      bad(ParseErrorKind::InvalidComplex,
          "vertex/face counts admit no valid glueing");

    std::map<std::pair<int, int>, Group> by_edge;
    for (int h = 0; h < 3 * F; ++h) {
      const int u = faces[h / 3][h % 3];
      const int v = faces[h / 3][(h % 3 + 1) % 3];
      auto& g = by_edge[{std::min(u, v), std::max(u, v)}];
      (u < v ? g.fwd : g.bwd).push_back(h);
    }
    groups.reserve(by_edge.size());
    for (auto& [key, g] : by_edge) groups.push_back(std::move(g));
    std::sort(groups.begin(), groups.end(), [](const Group& a,
                                               const Group& b) {
      const int fa = std::min(a.fwd.empty() ? INT32_MAX : a.fwd.front(),
                              a.bwd.empty() ? INT32_MAX : a.bwd.front());
      const int fb = std::min(b.fwd.empty() ? INT32_MAX : b.fwd.front(),
                              b.bwd.empty() ? INT32_MAX : b.bwd.front());
      return fa < fb;
    });

    const int G = int(groups.size());
    min_rest.assign(G + 1, 0);
    max_rest.assign(G + 1, 0);
    for (int i = G - 1; i >= 0; --i) {
      const int p = int(groups[i].fwd.size()), q = int(groups[i].bwd.size());
      min_rest[i] = min_rest[i + 1] + std::abs(p - q);
      max_rest[i] = max_rest[i + 1] + p + q;
    }
    if (budget < min_rest[0] || budget > max_rest[0])
      bad(ParseErrorKind::InvalidComplex,
          "boundary budget cannot be met by any twin matching");

    twin.assign(3 * F, -1);
    try_cap = F > 5000 ? 50 : 20000;
    std::optional<RootedTriangulation> out;
    dfs(0, budget, out);
    return out;
  }

  bool dfs(int gi, int left, std::optional<RootedTriangulation>& out) {
    if (gi == int(groups.size())) {
      if (left != 0) return false;
      if (++tries > try_cap)
        bad(ParseErrorKind::InvalidComplex,
            "twin structure is ambiguous beyond the search bound");
      try {
        out.emplace(V, faces, twin, root_dart, kind);
        return true;
      } catch (const std::invalid_argument&) {
        return false;
      }
    }
    const Group& g = groups[gi];
    const int p = int(g.fwd.size()), q = int(g.bwd.size());

    auto try_cand = [&](int k, int dP, int dQ) {
      const int rest = left - (p + q - 2 * k);
      if (rest < min_rest[gi + 1] || rest > max_rest[gi + 1]) return false;
      for (int i = 0; i < k; ++i) {
        twin[g.fwd[dP + i]] = g.bwd[dQ + i];
        twin[g.bwd[dQ + i]] = g.fwd[dP + i];
      }
      const bool hit = dfs(gi + 1, rest, out);
      if (!hit)
        for (int i = 0; i < k; ++i) {
          twin[g.fwd[dP + i]] = -1;
          twin[g.bwd[dQ + i]] = -1;
        }
      return hit;
    };

    // A parallel pair whose forward dart comes first is the mouth of a
    // growth-order stack: the older dart is the bottom of the stack and
    // stays on the boundary along with the newest top, so try leaving
    // both unpaired before folding them onto each other.
    const bool mouth = p == 1 && q == 1 && g.fwd[0] < g.bwd[0];
    if (mouth && try_cand(0, 0, 0)) return true;

    for (int k = std::min(p, q); k >= 0; --k) {
      if (k == 0) {
        if (!mouth && try_cand(0, 0, 0)) return true;
        continue;
      }
      // Contiguous order-preserving windows; (dP,dQ) = (1,0) is the
      // chronological stack with its oldest forward dart on the boundary.
      for (int sum = 0; sum <= (p - k) + (q - k); ++sum)
        for (int dP = std::min(sum, p - k); dP >= 0; --dP) {
          const int dQ = sum - dP;
          if (dQ < 0 || dQ > q - k) continue;
          if (try_cand(k, dP, dQ)) return true;
        }
    }
    return false;
  }
};

}  // namespace

RootedTriangulation parse_stream(std::istream& in) {
  std::string line;
  int V = -1, F = -1;
  SurfaceKind kind = SurfaceKind::Disc;
  bool have_header = false, have_root = false;
  int root_face = -1, root_vertex = -1;
  std::vector<std::array<int, 3>> faces;

  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "tri") {
      std::string kind_word;
      if (!(ls >> V >> F >> kind_word) || V < 0 || F < 0)
        bad(ParseErrorKind::MalformedHeader, "bad tri header: " + line);
      if (kind_word == "disc")
        kind = SurfaceKind::Disc;
      else if (kind_word == "sphere")
        kind = SurfaceKind::Sphere;
      else
        bad(ParseErrorKind::MalformedHeader,
            "surface kind must be disc or sphere");
      have_header = true;
    } else if (tag == "f") {
      if (!have_header)
        bad(ParseErrorKind::MalformedHeader, "face before tri header");
      std::array<int, 3> fc;
      std::string extra;
      if (!(ls >> fc[0] >> fc[1] >> fc[2]) || (ls >> extra))
        bad(ParseErrorKind::NonTriangularFace,
            "face line must have exactly three vertices: " + line);
      if (fc[0] == fc[1] || fc[1] == fc[2] || fc[2] == fc[0])
        bad(ParseErrorKind::LoopEdge, "face repeats a vertex: " + line);
      for (int v : fc)
        if (v < 0 || v >= V)
          bad(ParseErrorKind::InvalidComplex,
              "face vertex out of range: " + line);
      faces.push_back(fc);
    } else if (tag == "root") {
      if (!(ls >> root_face >> root_vertex))
        bad(ParseErrorKind::BadRoot, "bad root line: " + line);
      have_root = true;
    } else {
      bad(ParseErrorKind::MalformedHeader, "unknown record: " + line);
    }
  }
  if (!have_header) bad(ParseErrorKind::MalformedHeader, "missing tri header");
  if (int(faces.size()) != F)
    bad(ParseErrorKind::MalformedHeader,
        "header face count does not match body");
  if (!have_root) bad(ParseErrorKind::BadRoot, "missing root line");
  if (root_face < 0 || root_face >= F)
    bad(ParseErrorKind::BadRoot, "root face out of range");
  int root_dart = -1;
  for (int s = 0; s < 3; ++s)
    if (faces[root_face][s] == root_vertex) root_dart = 3 * root_face + s;
  if (root_dart < 0)
    bad(ParseErrorKind::BadRoot, "root vertex is not in the root face");

  // Faces must already be connected through potential shared edges; no
  // twin matching can connect what shares no edge.
  {
    std::map<std::pair<int, int>, std::vector<int>> edge_faces;
    for (int f = 0; f < F; ++f)
      for (int s = 0; s < 3; ++s) {
        int u = faces[f][s], v = faces[f][(s + 1) % 3];
        edge_faces[{std::min(u, v), std::max(u, v)}].push_back(f);
      }
    std::vector<char> seen(F, 0);
    std::queue<int> bfs;
    bfs.push(0);
    seen[0] = 1;
    int reached = 1;
    std::map<std::pair<int, int>, char> used;
    while (!bfs.empty()) {
      int f = bfs.front();
      bfs.pop();
      for (int s = 0; s < 3; ++s) {
        int u = faces[f][s], v = faces[f][(s + 1) % 3];
        for (int g : edge_faces[{std::min(u, v), std::max(u, v)}])
          if (!seen[g]) {
            seen[g] = 1;
            ++reached;
            bfs.push(g);
          }
      }
    }
    if (reached != F)
      bad(ParseErrorKind::Disconnected, "faces do not form a connected complex");
  }

  Matcher m(V, faces, root_dart, kind);
  auto result = m.run();
  if (!result)
    bad(ParseErrorKind::InvalidComplex,
        "no twin matching yields a valid complex");
  return *std::move(result);
}

RootedTriangulation parse(const std::string& text) {
  std::istringstream in(text);
  return parse_stream(in);
}

}  // namespace rpmlab
