#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "rpmlab/triangulation.hpp"

namespace rpmlab {

enum class ParseErrorKind {
  MalformedHeader,
  NonTriangularFace,
  LoopEdge,
  Disconnected,
  BadRoot,
  InvalidComplex,
};

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ParseErrorKind kind() const { return kind_; }

 private:
  ParseErrorKind kind_;
};

/// Text form:
///   tri <nvertices> <nfaces> disc|sphere
///   f <v1> <v2> <v3>        (one per face, positive orientation)
///   root <faceindex> <first-vertex>
///
/// The format carries no twin table, so parallel edges make the glueing
/// under-determined (a two-face pillow already has three non-isomorphic
/// disc readings).  parse resolves this deterministically: darts are
/// grouped per undirected edge, matchings are enumerated in a fixed order
/// under the exact boundary budget forced by the Euler characteristic
/// (2V - F - 2 boundary darts for a disc, none for a sphere), and the
/// first assignment that validates as a manifold complex wins.  Emitted
/// necklace maps round-trip; genuinely ambiguous inputs parse to the
/// first valid reading in that order.
std::string emit(const RootedTriangulation& t);
RootedTriangulation parse(const std::string& text);
RootedTriangulation parse_stream(std::istream& in);

}  // namespace rpmlab
