#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hvlab/bounds.hpp"
#include "hvlab/hermitian.hpp"

namespace hvlab {

/// Three-valued predicate: Unknown when the exhaustive scan is out of budget.
enum class Tri { False, True, Unknown };
const char* to_string(Tri t) noexcept;

struct StructuralPredicates {
  Tri contains_hyperplane = Tri::Unknown;
  Tri contains_plane = Tri::Unknown;
  Tri contains_generator = Tri::Unknown;
  Tri contains_tangent_line = Tri::Unknown;
  std::optional<int> max_generators_in_one_plane;
  std::optional<Flat> hyperplane_witness;
  std::optional<Flat> plane_witness;
  std::optional<Flat> generator_witness;
  std::optional<Flat> tangent_line_witness;
  std::optional<Flat> max_generators_plane;
};

struct BoundCheck {
  BoundName name;
  std::int64_t value = 0;
  std::uint64_t count = 0;
  bool strict = false;  // count must stay below value
  bool ok = true;
};

struct AuditReport {
  unsigned q = 0;
  int d = 0;
  int m = 0;
  std::string mode;  // "exhaustive" when predicates were scanned, else "budgeted"
  std::uint64_t intersection_count = 0;
  std::optional<std::uint64_t> hypersurface_count;  // |V(F)| when the whole space was evaluated
  StructuralPredicates predicates;
  std::vector<BoundCheck> bounds;
  std::optional<std::int64_t> conjecture_bound;
  bool conjecture_ok = true;
  bool conjecture_proven = false;
  std::optional<QuadricType> quadric;
  std::vector<std::string> violations;
  std::vector<std::string> findings;
};

/// Evaluates many polynomials of one degree on a fixed point list through a
/// precomputed monomial-value table. Needs a field of at most 256 elements.
class BatchEvaluator {
 public:
  BatchEvaluator(FieldPtr f, int nvars, int degree, std::vector<Elem> coords, unsigned threads = 1);

  const std::vector<Monomial>& monomials() const noexcept { return monos_; }
  std::size_t size() const noexcept { return npts_; }
  /// coeffs follow monomials(); out[i] = 1 iff the polynomial vanishes at point i.
  void zeros(std::span<const Elem> coeffs, std::uint8_t* out) const;
  std::uint64_t count_zeros(std::span<const Elem> coeffs) const;
  std::vector<Elem> coefficients_of(const HomogeneousPoly& f) const;

 private:
  FieldPtr f_;
  int nvars_;
  std::vector<Monomial> monos_;
  std::size_t npts_;
  std::vector<std::uint8_t> table_;
  std::vector<std::uint8_t> mul_;
  std::vector<std::uint8_t> add_;
};

/// Everything that depends only on (H, d): the variety, an evaluator for
/// degree-d forms, and for non-degenerate V_3 at q <= 3 the generator,
/// tangent-line and coplanar-generator tables used by the predicate scans.
class AuditContext {
 public:
  AuditContext(HermitianForm h, int degree, unsigned threads = 1);

  const HermitianVariety& variety() const noexcept { return v_; }
  const HermitianForm& form() const noexcept { return v_.form(); }
  const Field& field() const noexcept { return v_.form().field(); }
  unsigned q() const noexcept { return q_; }
  int m() const noexcept { return v_.form().m(); }
  int degree() const noexcept { return degree_; }
  unsigned threads() const noexcept { return threads_; }
  bool exhaustive() const noexcept { return exhaustive_; }
  /// True when forms are evaluated on all of P^m rather than only on V.
  bool full_space() const noexcept { return full_space_; }
  const BatchEvaluator& evaluator() const noexcept { return *eval_; }
  /// Position of a P^m point in the variety's point list, or -1.
  std::int32_t vpos(PointIndex i) const noexcept { return vpos_[i]; }

  /// Zero mask of F: over P^m when full_space(), else over the variety points.
  std::vector<std::uint8_t> zero_mask_of(std::span<const Elem> coeffs) const;

  // Tables (exhaustive mode only).
  std::size_t generator_count() const noexcept { return gens_.size(); }
  const Flat& generator(std::size_t g) const noexcept { return gens_[g]; }
  std::span<const PointIndex> generator_points(std::size_t g) const noexcept {
    return {gen_pts_.data() + g * line_len_, line_len_};
  }
  std::span<const std::uint32_t> generators_at(std::size_t vp) const noexcept {
    return {gens_at_.data() + gens_at_off_[vp], gens_at_off_[vp + 1] - gens_at_off_[vp]};
  }
  /// Coplanar groups of generators through the vp-th variety point, flattened
  /// in blocks of q+1 generator ids.
  std::span<const std::uint32_t> coplanar_groups_at(std::size_t vp) const noexcept {
    return {groups_.data() + groups_off_[vp], groups_off_[vp + 1] - groups_off_[vp]};
  }
  /// Tangent lines through the vp-th variety point, as blocks of q^2 point
  /// indices (the line minus its point of contact).
  std::span<const PointIndex> tangent_lines_at(std::size_t vp) const noexcept {
    return {tangent_.data() + tangent_off_[vp], tangent_off_[vp + 1] - tangent_off_[vp]};
  }
  /// Lines of the hyperplane x_0 = 0, in blocks of s+1 point indices.
  const std::vector<PointIndex>& base_lines() const noexcept { return base_lines_; }
  const std::vector<Flat>& base_line_flats() const noexcept { return base_line_flats_; }

 private:
  void build_tables(unsigned threads);

  HermitianVariety v_;
  unsigned q_;
  int degree_;
  unsigned threads_;
  bool exhaustive_ = false;
  bool full_space_ = false;
  std::optional<BatchEvaluator> eval_;
  std::vector<std::int32_t> vpos_;
  std::size_t line_len_ = 0;
  std::vector<Flat> gens_;
  std::vector<PointIndex> gen_pts_;
  std::vector<std::uint32_t> gens_at_;
  std::vector<std::size_t> gens_at_off_;
  std::vector<std::uint32_t> groups_;
  std::vector<std::size_t> groups_off_;
  std::vector<PointIndex> tangent_;
  std::vector<std::size_t> tangent_off_;
  std::vector<PointIndex> base_lines_;
  std::vector<Flat> base_line_flats_;
};

/// |V(F) ∩ V| by a pass over the variety points.
std::uint64_t count_intersection(const HomogeneousPoly& f, const HermitianForm& h, unsigned threads = 1);

StructuralPredicates structural_predicates(const HomogeneousPoly& f, const AuditContext& ctx);
/// Same, from a full-space zero mask.
StructuralPredicates structural_predicates(const std::vector<std::uint8_t>& zf, const AuditContext& ctx);

AuditReport audit(const HomogeneousPoly& f, const AuditContext& ctx);
AuditReport audit(const HomogeneousPoly& f, const HermitianForm& h, unsigned threads = 1);

/// Incidences between V(F) ∩ V_3 and the generators, counted per point
/// (lhs) and per generator (rhs).
struct DoubleCount {
  std::uint64_t lhs = 0;
  std::uint64_t rhs = 0;
};
DoubleCount incidence_double_count(const HomogeneousPoly& f, const AuditContext& ctx);
/// Same, from a zero mask in the layout of ctx.zero_mask_of.
DoubleCount incidence_double_count(const std::vector<std::uint8_t>& mask, const AuditContext& ctx);

/// Lines through P contained in V(G). Throws PointNotOnSurface.
std::vector<Flat> lines_through_point_on_surface(const HomogeneousPoly& g, const ProjPoint& p);

/// True when F is a product of linear forms over its field (small spaces only).
bool is_union_of_hyperplanes(const HomogeneousPoly& f);

struct IdentityCheck {
  std::string name;
  std::string expected;
  std::string observed;
  bool ok = false;
  std::string witness;
};

struct IdentityReport {
  unsigned q = 0;
  std::string tier;  // "exhaustive" or "sub-suite"
  std::vector<IdentityCheck> checks;
  bool all_ok() const;
};

/// Counting identities of the Hermitian varieties over F_{q^2}: exhaustive
/// flat scans for q <= 3, a per-point sub-suite for larger q.
IdentityReport verify_identity_suite(unsigned q, unsigned threads = 1, std::uint64_t seed = 0);
/// Every construction at this q, checked against its closed form and audited.
IdentityReport verify_bound_suite(unsigned q, unsigned threads = 1);

struct SampleConfig {
  unsigned q = 2;
  int d = 2;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  int m = 4;
  std::string form = "nondegenerate";  // or "rank3" (m = 3 only)
  unsigned threads = 1;
};

struct SampleRecord {
  std::uint64_t index = 0;
  std::uint64_t count = 0;
  std::string bound;
  std::int64_t value = 0;
  std::vector<Elem> coeffs;
};

struct SampleReport {
  SampleConfig config;
  std::string mode;
  std::uint64_t samples = 0;
  std::uint64_t rejected_zero = 0;
  std::string reference_name;
  std::int64_t reference_bound = 0;
  std::uint64_t max_count = 0;
  std::optional<std::uint64_t> argmax;
  std::vector<Elem> argmax_coeffs;
  std::uint64_t attaining_reference = 0;
  std::map<std::int64_t, std::uint64_t> margin_histogram;  // floor((bound - count) / q^3)
  std::map<std::string, std::uint64_t> bound_applications;
  std::map<std::string, std::uint64_t> quadric_types;
  std::uint64_t double_counts_checked = 0;
  std::uint64_t double_count_failures = 0;
  std::vector<Monomial> monomials;
  std::vector<SampleRecord> violations;
  std::vector<SampleRecord> findings;
};

/// The i-th sample's coefficients (uniform iid over the monomial basis, the
/// zero vector redrawn); depends only on (seed, i).
std::vector<Elem> sample_coefficients(const Field& f, std::size_t nmonos, std::uint64_t seed, std::uint64_t i,
                                      std::uint64_t* redraws = nullptr);
SampleReport sample_hypersurfaces(const SampleConfig& cfg);

}  // namespace hvlab
