#include "hvlab/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>

namespace hvlab {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NonPrimeCharacteristic: return "NonPrimeCharacteristic";
    case Errc::SizeBudgetExceeded: return "SizeBudgetExceeded";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::OddExtension: return "OddExtension";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::ContainmentViolated: return "ContainmentViolated";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::PointNotOnVariety: return "PointNotOnVariety";
    case Errc::DegenerateForm: return "DegenerateForm";
    case Errc::TrichotomyViolated: return "TrichotomyViolated";
    case Errc::NotAQuadric: return "NotAQuadric";
    case Errc::InsufficientNonTangent: return "InsufficientNonTangent";
    case Errc::InsufficientPlanes: return "InsufficientPlanes";
    case Errc::VertexOnBase: return "VertexOnBase";
    case Errc::BaseCurveSearchFailed: return "BaseCurveSearchFailed";
    case Errc::ConstructionNotFound: return "ConstructionNotFound";
    case Errc::PointNotOnSurface: return "PointNotOnSurface";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

using Poly = std::vector<unsigned>;  // coefficients over F_p, constant first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a monic b over F_p.
Poly poly_rem(Poly a, const Poly& b, unsigned p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const unsigned lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = (a[shift + i] + (p - lead) * b[i]) % p;
    }
    trim(a);
  }
  return a;
}

bool is_irreducible(const Poly& f, unsigned p) {
  const unsigned k = static_cast<unsigned>(f.size() - 1);
  if (k <= 1) return true;
  // Every monic divisor candidate of degree 1..k/2.
  for (unsigned dg = 1; dg <= k / 2; ++dg) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < dg; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Poly g(dg + 1, 0);
      std::uint64_t v = idx;
      for (unsigned i = 0; i < dg; ++i) {
        g[i] = static_cast<unsigned>(v % p);
        v /= p;
      }
      g[dg] = 1;
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

// Lexicographically smallest monic irreducible of degree k, comparing the
// constant coefficient first.
Poly smallest_irreducible(unsigned p, unsigned k) {
  std::uint64_t count = 1;
  for (unsigned i = 0; i < k; ++i) count *= p;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Poly f(k + 1, 0);
    std::uint64_t v = idx;
    for (unsigned i = k; i-- > 0;) {  // c_0 is the most significant digit
      f[i] = static_cast<unsigned>(v % p);
      v /= p;
    }
    f[k] = 1;
    if (is_irreducible(f, p)) return f;
  }
  throw Error(Errc::InvalidArgument, "no irreducible polynomial found");
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(unsigned n) noexcept {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::pair<unsigned, unsigned> prime_power(unsigned q) {
  if (q < 2) throw Error(Errc::InvalidArgument, "q must be a prime power, got " + std::to_string(q));
  unsigned p = 2;
  while (q % p != 0) ++p;
  unsigned e = 0;
  unsigned r = q;
  while (r % p == 0) {
    r /= p;
    ++e;
  }
  if (r != 1) throw Error(Errc::InvalidArgument, "q must be a prime power, got " + std::to_string(q));
  return {p, e};
}

std::shared_ptr<const Field> Field::create(unsigned p, unsigned k) {
  if (!is_prime(p)) {
    throw Error(Errc::NonPrimeCharacteristic, std::to_string(p) + " is not prime");
  }
  if (k == 0) throw Error(Errc::InvalidArgument, "extension degree must be positive");
  std::uint64_t n = 1;
  for (unsigned i = 0; i < k; ++i) {
    n *= p;
    if (n > kMaxFieldSize) {
      throw Error(Errc::SizeBudgetExceeded,
                  std::to_string(p) + "^" + std::to_string(k) + " exceeds 2^20 elements");
    }
  }
  static std::mutex mu;
  static std::map<std::pair<unsigned, unsigned>, std::shared_ptr<const Field>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{p, k}];
  if (!slot) slot = std::shared_ptr<const Field>(new Field(p, k));
  return slot;
}

std::shared_ptr<const Field> Field::for_q(unsigned q) {
  const auto [p, e] = prime_power(q);
  return create(p, 2 * e);
}

Field::Field(unsigned p, unsigned k) : p_(p), k_(k) {
  std::uint64_t n = 1;
  for (unsigned i = 0; i < k; ++i) n *= p;
  n_ = static_cast<Elem>(n);
  modulus_ = smallest_irreducible(p, k);

  neg_.resize(n_);
  for (Elem a = 0; a < n_; ++a) {
    auto d = digits(a);
    for (auto& x : d) x = (p_ - x) % p_;
    neg_[a] = from_digits(d);
  }
  if (n_ <= 1024) {
    add_.resize(static_cast<std::size_t>(n_) * n_);
    for (Elem a = 0; a < n_; ++a) {
      for (Elem b = 0; b < n_; ++b) add_[static_cast<std::size_t>(a) * n_ + b] = add_digits(a, b);
    }
  }

  // Primitive element: smallest index whose order is n - 1.
  const std::uint64_t order = n_ - 1;
  const auto factors = prime_factors(order);
  auto slow_pow = [&](Elem a, std::uint64_t e) {
    Elem r = 1;
    while (e) {
      if (e & 1) r = mul_schoolbook(r, a);
      a = mul_schoolbook(a, a);
      e >>= 1;
    }
    return r;
  };
  Elem g = 1;
  if (n_ > 2) {
    for (g = 2; g < n_; ++g) {
      bool primitive = true;
      for (auto r : factors) {
        if (slow_pow(g, order / r) == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) break;
    }
  }
  exp_.resize(2 * order);
  log_.assign(n_, 0);
  Elem x = 1;
  for (std::uint64_t i = 0; i < order; ++i) {
    exp_[i] = x;
    log_[x] = static_cast<std::uint32_t>(i);
    x = mul_schoolbook(x, g);
  }
  for (std::uint64_t i = 0; i < order; ++i) exp_[order + i] = exp_[i];

  if (k_ % 2 == 0) {
    q_ = 1;
    for (unsigned i = 0; i < k_ / 2; ++i) q_ *= p_;
    conj_.resize(n_);
    norm_.resize(n_);
    norm_root_.assign(n_, 0);
    for (Elem a = 0; a < n_; ++a) {
      conj_[a] = pow(a, q_);
      norm_[a] = mul(a, conj_[a]);
    }
    for (Elem y = n_; y-- > 1;) norm_root_[norm_[y]] = y;  // keeps the smallest preimage
  }
}

Elem Field::add_digits(Elem a, Elem b) const noexcept {
  if (p_ == 2) return a ^ b;
  Elem out = 0;
  Elem scale = 1;
  for (unsigned i = 0; i < k_; ++i) {
    out += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return out;
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw Error(Errc::DivisionByZero, "inverse of zero");
  const std::uint32_t l = log_[a];
  return l == 0 ? 1 : exp_[(n_ - 1) - l];
}

Elem Field::pow(Elem a, std::uint64_t e) const noexcept {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t l = (static_cast<std::uint64_t>(log_[a]) * (e % (n_ - 1))) % (n_ - 1);
  return exp_[l];
}

Elem Field::from_int(long long v) const noexcept {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

unsigned Field::q() const {
  require_quadratic();
  return q_;
}

void Field::require_quadratic() const {
  if (k_ % 2 != 0) {
    throw Error(Errc::OddExtension, "F_" + std::to_string(n_) + " is not a quadratic extension");
  }
}

Elem Field::norm_root(Elem a) const {
  require_quadratic();
  if (a == 0 || a >= n_ || conj_[a] != a) {
    throw Error(Errc::InvalidArgument, "norm_root needs a nonzero element of F_q");
  }
  return norm_root_[a];
}

std::vector<unsigned> Field::digits(Elem a) const {
  std::vector<unsigned> d(k_);
  for (unsigned i = 0; i < k_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

Elem Field::from_digits(std::span<const unsigned> d) const {
  Elem out = 0;
  for (std::size_t i = d.size(); i-- > 0;) out = out * p_ + (d[i] % p_);
  return out;
}

Elem Field::mul_schoolbook(Elem a, Elem b) const {
  const auto da = digits(a);
  const auto db = digits(b);
  Poly prod(2 * k_ - 1, 0);
  for (unsigned i = 0; i < k_; ++i) {
    if (!da[i]) continue;
    for (unsigned j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
  }
  Poly r = poly_rem(prod, modulus_, p_);
  r.resize(k_, 0);
  return from_digits(r);
}

std::vector<Elem> enumerate_field(const Field& f) {
  std::vector<Elem> out(f.size());
  for (Elem a = 0; a < f.size(); ++a) out[a] = a;
  return out;
}

FieldEmbedding::FieldEmbedding(FieldPtr small, FieldPtr big)
    : small_(std::move(small)), big_(std::move(big)) {
  if (small_->characteristic() != big_->characteristic() ||
      big_->degree() % small_->degree() != 0) {
    throw Error(Errc::FieldMismatch, "not a subfield");
  }
  const Field& B = *big_;
  const auto& mod = small_->modulus();
  // Image of t: smallest-index root of the small modulus in the big field.
  Elem root = 0;
  bool found = false;
  for (Elem x = 0; x < B.size() && !found; ++x) {
    Elem acc = 0;
    for (std::size_t i = mod.size(); i-- > 0;) acc = B.add(B.mul(acc, x), B.from_int(mod[i]));
    if (acc == 0) {
      root = x;
      found = true;
    }
  }
  if (!found) throw Error(Errc::FieldMismatch, "modulus has no root in the extension");
  image_.resize(small_->size());
  preimage_.assign(B.size(), -1);
  for (Elem a = 0; a < small_->size(); ++a) {
    const auto d = small_->digits(a);
    Elem acc = 0;
    for (std::size_t i = d.size(); i-- > 0;) acc = B.add(B.mul(acc, root), B.from_int(d[i]));
    image_[a] = acc;
    preimage_[acc] = a;
  }
}

}  // namespace hvlab
