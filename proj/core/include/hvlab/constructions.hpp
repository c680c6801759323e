#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hvlab/hermitian.hpp"

namespace hvlab {

enum class ExtremalKind {
  EdoukouExtremal,
  SorensenExtremal,
  DegenerateConeExtremal,
  QuadricTypeI,
  QuadricTypeII,
  QuadricTypeIII,
  SerreExtremal,
};
const char* to_string(ExtremalKind k) noexcept;

/// What a constructor built and the count it was checked against.
struct ExtremalCertificate {
  ExtremalKind kind;
  int q = 0;
  int d = 0;
  int m = 0;
  std::uint64_t claimed_count = 0;
  std::uint64_t verified_count = 0;
  std::vector<Flat> flats;    // common flat first (plane, line or codim-2 flat), then components
  std::vector<Coords> forms;  // linear forms whose product is the polynomial
};

/// A polynomial together with the Hermitian form it was counted against
/// (absent for Serre, which counts all of V(F)).
struct Construction {
  HomogeneousPoly poly;
  std::optional<HermitianForm> form;
  ExtremalCertificate cert;
};

/// d non-tangent hyperplanes through a plane whose section is a
/// non-degenerate Hermitian curve. V must be non-degenerate on P^4.
Construction edoukou_extremal(const HermitianVariety& v, int d, unsigned threads = 1);
/// d tangent planes through a secant line of a non-degenerate surface in P^3.
Construction sorensen_extremal(const HermitianVariety& v, int d, unsigned threads = 1);
/// Cone from the vertex of diag(1,1,1,0) over d secant lines of the base
/// Hermitian curve with pairwise disjoint meeting sets.
Construction degenerate_extremal(unsigned q, int d);
Construction quadric_of_type(QuadricTag kind, const HermitianVariety& v, unsigned threads = 1);
/// d hyperplanes through x_0 = x_1 = 0 in P^m over F_{q^2}.
Construction serre_extremal(unsigned q, int d, int m, unsigned threads = 1);

/// The cone diag(1,1,1,0) on P^3: a cone over a Hermitian curve.
HermitianForm rank3_surface(unsigned q);

/// Points of the cone with vertex P over V(C), C given in the parameter
/// coordinates of `base`. Throws VertexOnBase when P lies in the base.
std::set<ProjPoint> cone(const Field& f, const ProjPoint& p, const Flat& base, const HomogeneousPoly& c);
/// A polynomial on the ambient space whose zero set is that cone; `base`
/// must be a hyperplane.
HomogeneousPoly cone_poly(const Field& f, const ProjPoint& p, const Flat& base, const HomogeneousPoly& c);

/// Closed forms claimed by the constructions.
std::uint64_t edoukou_count(std::uint64_t q, std::uint64_t d);
std::uint64_t sorensen_count(std::uint64_t q, std::uint64_t d);
std::uint64_t degenerate_count(std::uint64_t q, std::uint64_t d);
std::uint64_t quadric_count(QuadricTag kind, std::uint64_t q);
std::uint64_t serre_count(std::uint64_t s, std::uint64_t d, int m);

}  // namespace hvlab
