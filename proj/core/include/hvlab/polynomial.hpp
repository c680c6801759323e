#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "hvlab/field.hpp"
#include "hvlab/projective.hpp"

namespace hvlab {

/// Exponent vector of a monomial.
using Monomial = std::vector<std::uint16_t>;

/// Among monomials of one total degree, lexicographically larger exponent
/// vectors come first: graded-lex descending, x_0^d leads.
struct GrlexDesc {
  bool operator()(const Monomial& a, const Monomial& b) const { return a > b; }
};

/// All monomials of the given degree in graded-lex descending order.
std::vector<Monomial> all_monomials(int nvars, int degree);

/// Sparse homogeneous polynomial over a finite field. No zero coefficients
/// are stored; the zero polynomial keeps its degree tag.
class HomogeneousPoly {
 public:
  using TermMap = std::map<Monomial, Elem, GrlexDesc>;

  HomogeneousPoly(FieldPtr f, int nvars, int degree);

  static HomogeneousPoly linear(FieldPtr f, std::span<const Elem> coeffs);
  static HomogeneousPoly variable(FieldPtr f, int nvars, int i);
  static HomogeneousPoly monomial(FieldPtr f, Monomial exps, Elem coeff);
  static HomogeneousPoly constant(FieldPtr f, int nvars, Elem c);

  const Field& field() const noexcept { return *f_; }
  const FieldPtr& field_ptr() const noexcept { return f_; }
  int nvars() const noexcept { return nvars_; }
  int degree() const noexcept { return degree_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Elem coeff(const Monomial& m) const;

  /// Adds c·x^m to the polynomial.
  void add_term(const Monomial& m, Elem c);

  HomogeneousPoly operator+(const HomogeneousPoly& o) const;
  HomogeneousPoly operator-(const HomogeneousPoly& o) const;
  HomogeneousPoly operator*(const HomogeneousPoly& o) const;
  HomogeneousPoly scaled(Elem c) const;
  bool operator==(const HomogeneousPoly& o) const;

  /// F(x) at a coordinate vector. Throws ArityMismatch on length mismatch.
  Elem evaluate(std::span<const Elem> x) const;
  Elem evaluate(const ProjPoint& p) const { return evaluate(p.coords); }

  /// ∂F/∂x_i (degree - 1; the zero polynomial of degree 0 for constants).
  HomogeneousPoly partial(int i) const;
  /// Exact quotient by a nonzero linear form, or nullopt when it does not divide.
  std::optional<HomogeneousPoly> divide_exact(const HomogeneousPoly& linear) const;
  /// Image of every coefficient under an embedding into a larger field.
  HomogeneousPoly embedded(const FieldEmbedding& e) const;

 private:
  void check_compatible(const HomogeneousPoly& o) const;

  FieldPtr f_;
  int nvars_;
  int degree_;
  TermMap terms_;
};

/// Log-table evaluator for hot loops. Holds a reference to the field of the
/// polynomial it was built from.
class PolyEvaluator {
 public:
  explicit PolyEvaluator(const HomogeneousPoly& poly);

  int nvars() const noexcept { return nvars_; }
  Elem operator()(std::span<const Elem> x) const noexcept;

 private:
  struct Term {
    std::uint32_t log_coeff;
    std::uint32_t mask;
    std::vector<std::uint32_t> exps;
  };
  const Field* f_;
  int nvars_;
  std::vector<Term> terms_;
};

/// V(F): all rational points where F vanishes. Throws ZeroPolynomial.
std::vector<ProjPoint> zero_set(const HomogeneousPoly& poly);
/// V(F) as a membership mask over the point indices of `space`.
std::vector<std::uint8_t> zero_mask(const HomogeneousPoly& poly, const PointSpace& space, unsigned threads = 1);

/// F(z L): variable j of F becomes Σ_r L(r, j) z_r, giving a polynomial in
/// L.rows() variables.
HomogeneousPoly compose_linear(const HomogeneousPoly& poly, const Matrix& l);

/// F composed with the parametrization of X by its RREF basis: a polynomial in
/// dim(X)+1 variables whose zeros are exactly V(F) ∩ X in parameter coordinates.
HomogeneousPoly restrict_to_flat(const HomogeneousPoly& poly, const Flat& x);
/// X ⊆ V(F). Throws ZeroPolynomial for F = 0.
bool contains_flat(const HomogeneousPoly& poly, const Flat& x);

/// Linear forms (up to scalar, normalized) over an extension of the
/// coefficient field that divide a plane polynomial.
struct LinearFactors {
  FieldPtr field;                 // field the forms live in
  std::vector<Coords> forms;      // distinct, normalized, sorted
};

/// extension_degree ∈ {1, 2, 3}. Lines dividing C are found by intersecting
/// with the fixed line x_2 = 0: every factor line other than it passes through
/// one of the at most deg(C) zeros of C there, and each candidate line is
/// checked by vanishing at deg(C)+1 of its points.
LinearFactors linear_factors_over(const HomogeneousPoly& plane_poly, int extension_degree);

enum class PlaneCubicTag { AbsolutelyIrreducible, IrreducibleNotAbsolutely, Reducible };

struct PlaneCubicClass {
  PlaneCubicTag tag;
  LinearFactors witnesses;  // empty for AbsolutelyIrreducible
};

const char* to_string(PlaneCubicTag t) noexcept;
PlaneCubicClass classify_plane_cubic(const HomogeneousPoly& cubic);

/// L · L^σ · L^{σ²} for a linear form L over the cubic extension E of the
/// coefficient field of `base`, σ the s-power Frobenius; the product has
/// coefficients in the base field and is returned there.
HomogeneousPoly conjugate_line_product(const FieldPtr& base, const FieldEmbedding& ext,
                                       std::span<const Elem> linear_over_ext);

}  // namespace hvlab
