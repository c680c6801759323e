#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hvlab/linalg.hpp"
#include "hvlab/polynomial.hpp"
#include "hvlab/projective.hpp"

namespace hvlab {

/// Hermitian matrix A (A^T = A^(q), A != 0) over F_{q^2} defining
/// h(x) = x^T A x^(q) on P^m.
class HermitianForm {
 public:
  static HermitianForm identity(FieldPtr f, int m);
  /// Diagonal entries must lie in F_q.
  static HermitianForm diagonal(FieldPtr f, std::span<const Elem> d);
  /// Throws NotHermitian unless A is square, nonzero and A^T = A^(q).
  static HermitianForm from_matrix(FieldPtr f, Matrix a);

  const Field& field() const noexcept { return *f_; }
  const FieldPtr& field_ptr() const noexcept { return f_; }
  int m() const noexcept { return static_cast<int>(a_.rows()) - 1; }
  const Matrix& matrix() const noexcept { return a_; }
  int rank() const noexcept { return rank_; }
  bool nondegenerate() const noexcept { return rank_ == m() + 1; }
  bool is_diagonal() const noexcept { return diagonal_; }

  /// Sesquilinear pairing u^T A v^(q).
  Elem pair(std::span<const Elem> u, std::span<const Elem> v) const noexcept;
  /// h(x); lies in F_q.
  Elem value(std::span<const Elem> x) const noexcept;
  /// Coefficients A x^(q) of the hyperplane {y : y^T A x^(q) = 0}.
  Coords polar(std::span<const Elem> x) const;

 private:
  HermitianForm(FieldPtr f, Matrix a);

  FieldPtr f_;
  Matrix a_;
  int rank_ = 0;
  bool diagonal_ = false;
};

/// x^T A x^(q) as a degree q+1 polynomial.
HomogeneousPoly hermitian_poly(const HermitianForm& h);

/// Change of coordinates x = M y bringing the form to the diagonal
/// diag(1,...,1,0,...,0) with `rank` ones: M^T A M^(q) = D.
struct NormalForm {
  Matrix m;
  int rank = 0;
  Matrix diagonal;
};
NormalForm normal_form(const HermitianForm& h);

/// Form induced on a flat in its parameter coordinates.
HermitianForm restrict_form(const HermitianForm& h, const Flat& x);
/// Rank of the induced form (0 when it vanishes identically, which
/// from_matrix would reject).
int restricted_rank(const HermitianForm& h, const Flat& x);

/// The rational points of a Hermitian variety, precomputed once as a
/// membership mask over P^m and a coordinate table.
class HermitianVariety {
 public:
  explicit HermitianVariety(HermitianForm h, unsigned threads = 1);

  const HermitianForm& form() const noexcept { return h_; }
  const PointSpace& space() const noexcept { return space_; }
  const std::vector<std::uint8_t>& mask() const noexcept { return mask_; }
  const std::vector<PointIndex>& indices() const noexcept { return idx_; }
  std::size_t size() const noexcept { return idx_.size(); }
  /// Coordinates of the i-th variety point (i in [0, size())).
  std::span<const Elem> coords(std::size_t i) const noexcept {
    const auto n = static_cast<std::size_t>(space_.ncoords());
    return {coords_.data() + i * n, n};
  }
  bool contains(std::span<const Elem> normalized) const noexcept { return mask_[space_.rank(normalized)]; }
  std::vector<ProjPoint> points() const;

  /// |V(F) ∩ V| by one pass over the variety points.
  std::uint64_t count_zeros_of(const HomogeneousPoly& f, unsigned threads = 1) const;

 private:
  HermitianForm h_;
  PointSpace space_;
  std::vector<std::uint8_t> mask_;
  std::vector<PointIndex> idx_;
  std::vector<Elem> coords_;
};

/// Points of a flat lying on the variety of h.
std::uint64_t section_count(const HermitianForm& h, const Flat& x);

/// Pole of a hyperplane: the point P with A P^(q) proportional to the
/// hyperplane's coefficients. Requires a non-degenerate form.
ProjPoint pole(const HermitianForm& h, const Flat& hyperplane);
/// A hyperplane is tangent iff its pole lies on the variety.
bool is_tangent_hyperplane(const HermitianForm& h, const Flat& hyperplane);
/// T_P = {x : x^T A P^(q) = 0}. Throws DegenerateForm, PointNotOnVariety.
Flat tangent_hyperplane(const HermitianForm& h, const ProjPoint& p);

enum class LineTag { Tangent, Secant, Generator };
struct LineClass {
  LineTag tag;
  std::uint64_t meeting_count;
};
const char* to_string(LineTag t) noexcept;
LineClass classify_line(const HermitianForm& h, const Flat& line);

enum class PlaneSectionTag { NonDegenerateCurve, ConcurrentLines, SingleLine };
struct PlaneSectionClass {
  PlaneSectionTag tag;
  std::uint64_t count;
  std::optional<ProjPoint> center;
};
const char* to_string(PlaneSectionTag t) noexcept;
PlaneSectionClass classify_plane_section(const HermitianForm& h, const Flat& plane);

enum class HyperplaneSectionTag { NonTangent, TangentAt };
struct HyperplaneSectionClass {
  HyperplaneSectionTag tag;
  std::uint64_t count;
  std::optional<ProjPoint> point;  // set for TangentAt
};
const char* to_string(HyperplaneSectionTag t) noexcept;
/// With `verify_cone`, a tangent section is also checked to be the union of
/// the lines joining P to a base curve.
HyperplaneSectionClass classify_hyperplane_section(const HermitianForm& h, const Flat& hyperplane,
                                                   bool verify_cone = true);

/// Lines of the variety through P (P on the variety, m = 4 or m = 3).
std::vector<Flat> generators_through(const HermitianForm& h, const ProjPoint& p);
/// All lines of the variety, each listed once, ordered by their first point.
std::vector<Flat> generators(const HermitianVariety& v);

enum class QuadricTag { TypeI, TypeII, TypeIII, Other };
struct QuadricType {
  QuadricTag tag;
  std::vector<Coords> components;  // hyperplane forms when Q = L1 L2 over F_{q^2}
};
const char* to_string(QuadricTag t) noexcept;
/// Throws NotAQuadric for anything but a nonzero quadratic form on P^4.
QuadricType classify_quadric(const HomogeneousPoly& q, const HermitianForm& h);

}  // namespace hvlab
