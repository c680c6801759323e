#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "hvlab/errors.hpp"

namespace hvlab {

/// Canonical element encoding: the residue polynomial's coefficients packed as
/// base-p digits, constant term least significant. 0 and 1 are the additive
/// and multiplicative identities.
using Elem = std::uint32_t;

/// Largest field the table-driven implementation will build.
inline constexpr std::uint64_t kMaxFieldSize = std::uint64_t{1} << 20;

/// F_{p^k} with log/exp multiplication tables.
///
/// The modulus is the lexicographically smallest monic irreducible polynomial
/// of degree k over F_p, comparing coefficients from the constant term upward.
/// When k is even the field is also viewed as F_{q^2} with q = p^{k/2}, which
/// enables `conj` (x -> x^q) and `norm` (x -> x^{q+1}).
///
/// Immutable after construction; share it through `std::shared_ptr`.
class Field {
 public:
  static std::shared_ptr<const Field> create(unsigned p, unsigned k);
  /// F_{q^2} for a prime power q.
  static std::shared_ptr<const Field> for_q(unsigned q);

  unsigned characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return k_; }
  Elem size() const noexcept { return n_; }
  /// Modulus coefficients, constant term first, including the leading 1.
  const std::vector<unsigned>& modulus() const noexcept { return modulus_; }
  Elem generator() const noexcept { return exp_[1]; }

  Elem add(Elem a, Elem b) const noexcept {
    if (!add_.empty()) return add_[static_cast<std::size_t>(a) * n_ + b];
    return add_digits(a, b);
  }
  Elem neg(Elem a) const noexcept { return neg_[a]; }
  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg_[b]); }
  Elem mul(Elem a, Elem b) const noexcept {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const noexcept;

  /// Discrete log w.r.t. `generator()`; undefined for 0.
  std::uint32_t log(Elem a) const noexcept { return log_[a]; }
  /// generator()^e for 0 <= e < 2(size-1).
  Elem exp(std::uint32_t e) const noexcept { return exp_[e]; }

  /// Image of an integer in the prime subfield.
  Elem from_int(long long v) const noexcept;

  bool is_quadratic_extension() const noexcept { return k_ % 2 == 0; }
  /// q with size() == q^2. Throws OddExtension for odd k.
  unsigned q() const;
  Elem conj(Elem a) const {
    require_quadratic();
    return conj_[a];
  }
  Elem norm(Elem a) const {
    require_quadratic();
    return norm_[a];
  }
  bool in_subfield(Elem a) const { return conj(a) == a; }
  /// Some y with y^{q+1} = a, for a nonzero element of F_q (the smallest
  /// index among the q+1 preimages). Throws InvalidArgument otherwise.
  Elem norm_root(Elem a) const;

  /// Unchecked fast paths for hot loops in a known quadratic extension.
  const Elem* conj_table() const noexcept { return conj_.data(); }
  const Elem* norm_table() const noexcept { return norm_.data(); }

  /// Schoolbook product of residue polynomials modulo the modulus; independent
  /// of the log tables and used to build and cross-check them.
  Elem mul_schoolbook(Elem a, Elem b) const;

  std::vector<unsigned> digits(Elem a) const;
  Elem from_digits(std::span<const unsigned> digits) const;

  bool same_as(const Field& other) const noexcept {
    return p_ == other.p_ && k_ == other.k_;
  }

 private:
  Field(unsigned p, unsigned k);
  Elem add_digits(Elem a, Elem b) const noexcept;
  void require_quadratic() const;

  unsigned p_;
  unsigned k_;
  Elem n_;
  unsigned q_ = 0;
  std::vector<unsigned> modulus_;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> neg_;
  std::vector<Elem> add_;
  std::vector<Elem> conj_;
  std::vector<Elem> norm_;
  std::vector<Elem> norm_root_;
};

using FieldPtr = std::shared_ptr<const Field>;

bool is_prime(unsigned n) noexcept;
/// Returns (p, e) with q = p^e, or throws InvalidArgument if q is not a prime power.
std::pair<unsigned, unsigned> prime_power(unsigned q);

/// All elements of a field in index order.
std::vector<Elem> enumerate_field(const Field& f);

/// Checked element value: arithmetic between elements of different Field
/// objects throws FieldMismatch.
class FieldElement {
 public:
  FieldElement(const Field& f, Elem v) : f_(&f), v_(v) {}

  const Field& field() const noexcept { return *f_; }
  Elem index() const noexcept { return v_; }

  FieldElement operator+(const FieldElement& o) const { return {*f_, f_->add(v_, check(o))}; }
  FieldElement operator-(const FieldElement& o) const { return {*f_, f_->sub(v_, check(o))}; }
  FieldElement operator*(const FieldElement& o) const { return {*f_, f_->mul(v_, check(o))}; }
  FieldElement operator/(const FieldElement& o) const { return {*f_, f_->div(v_, check(o))}; }
  FieldElement operator-() const { return {*f_, f_->neg(v_)}; }
  FieldElement inv() const { return {*f_, f_->inv(v_)}; }
  FieldElement conj() const { return {*f_, f_->conj(v_)}; }
  FieldElement norm() const { return {*f_, f_->norm(v_)}; }

  bool operator==(const FieldElement& o) const { return v_ == check(o); }

 private:
  Elem check(const FieldElement& o) const {
    if (o.f_ != f_) throw Error(Errc::FieldMismatch, "operands belong to different fields");
    return o.v_;
  }

  const Field* f_;
  Elem v_;
};

/// Embedding of a subfield F_{p^a} into F_{p^b} (a | b), fixed by sending the
/// small field's residue class t to the smallest-index root of its modulus.
class FieldEmbedding {
 public:
  FieldEmbedding(FieldPtr small, FieldPtr big);

  const FieldPtr& small() const noexcept { return small_; }
  const FieldPtr& big() const noexcept { return big_; }
  Elem image(Elem a) const noexcept { return image_[a]; }
  /// Preimage of a big-field element, or -1 when it is outside the subfield.
  std::int64_t preimage(Elem b) const noexcept { return preimage_[b]; }

 private:
  FieldPtr small_;
  FieldPtr big_;
  std::vector<Elem> image_;
  std::vector<std::int64_t> preimage_;
};

}  // namespace hvlab
