#include "hvlab/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "hvlab/parallel.hpp"

namespace hvlab {

std::vector<Monomial> all_monomials(int nvars, int degree) {
  std::vector<Monomial> out;
  if (nvars <= 0) return out;
  Monomial cur(static_cast<std::size_t>(nvars), 0);
  // Recursive fill in descending lexicographic order.
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == nvars - 1) {
      cur[pos] = static_cast<std::uint16_t>(remaining);
      out.push_back(cur);
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      cur[pos] = static_cast<std::uint16_t>(e);
      self(self, pos + 1, remaining - e);
    }
  };
  rec(rec, 0, degree);
  return out;
}

HomogeneousPoly::HomogeneousPoly(FieldPtr f, int nvars, int degree)
    : f_(std::move(f)), nvars_(nvars), degree_(degree) {
  if (nvars <= 0) throw Error(Errc::InvalidArgument, "polynomial needs at least one variable");
  if (degree < 0) throw Error(Errc::InvalidArgument, "negative degree");
}

HomogeneousPoly HomogeneousPoly::linear(FieldPtr f, std::span<const Elem> coeffs) {
  HomogeneousPoly out(std::move(f), static_cast<int>(coeffs.size()), 1);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Monomial m(coeffs.size(), 0);
    m[i] = 1;
    out.add_term(m, coeffs[i]);
  }
  return out;
}

HomogeneousPoly HomogeneousPoly::variable(FieldPtr f, int nvars, int i) {
  Monomial m(static_cast<std::size_t>(nvars), 0);
  m[static_cast<std::size_t>(i)] = 1;
  return monomial(std::move(f), std::move(m), 1);
}

HomogeneousPoly HomogeneousPoly::monomial(FieldPtr f, Monomial exps, Elem coeff) {
  const int d = std::accumulate(exps.begin(), exps.end(), 0);
  HomogeneousPoly out(std::move(f), static_cast<int>(exps.size()), d);
  out.add_term(exps, coeff);
  return out;
}

HomogeneousPoly HomogeneousPoly::constant(FieldPtr f, int nvars, Elem c) {
  HomogeneousPoly out(std::move(f), nvars, 0);
  out.add_term(Monomial(static_cast<std::size_t>(nvars), 0), c);
  return out;
}

Elem HomogeneousPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0 : it->second;
}

void HomogeneousPoly::add_term(const Monomial& m, Elem c) {
  if (static_cast<int>(m.size()) != nvars_) throw Error(Errc::ArityMismatch, "monomial length");
  if (std::accumulate(m.begin(), m.end(), 0) != degree_) {
    throw Error(Errc::InvalidArgument, "monomial degree does not match the polynomial");
  }
  if (c >= f_->size()) throw Error(Errc::InvalidArgument, "coefficient is not a field element");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second = f_->add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

void HomogeneousPoly::check_compatible(const HomogeneousPoly& o) const {
  if (f_ != o.f_ && !f_->same_as(*o.f_)) throw Error(Errc::FieldMismatch, "polynomials over different fields");
  if (nvars_ != o.nvars_) throw Error(Errc::ArityMismatch, "polynomials in different variable counts");
}

HomogeneousPoly HomogeneousPoly::operator+(const HomogeneousPoly& o) const {
  check_compatible(o);
  if (degree_ != o.degree_) throw Error(Errc::InvalidArgument, "sum of forms of different degree");
  HomogeneousPoly out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, c);
  return out;
}

HomogeneousPoly HomogeneousPoly::operator-(const HomogeneousPoly& o) const {
  return *this + o.scaled(f_->neg(1));
}

HomogeneousPoly HomogeneousPoly::operator*(const HomogeneousPoly& o) const {
  check_compatible(o);
  HomogeneousPoly out(f_, nvars_, degree_ + o.degree_);
  Monomial m(static_cast<std::size_t>(nvars_));
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = static_cast<std::uint16_t>(ma[i] + mb[i]);
      out.add_term(m, f_->mul(ca, cb));
    }
  }
  return out;
}

HomogeneousPoly HomogeneousPoly::scaled(Elem c) const {
  HomogeneousPoly out(f_, nvars_, degree_);
  if (c == 0) return out;
  for (const auto& [m, v] : terms_) out.terms_.emplace(m, f_->mul(v, c));
  return out;
}

bool HomogeneousPoly::operator==(const HomogeneousPoly& o) const {
  return f_->same_as(*o.f_) && nvars_ == o.nvars_ && degree_ == o.degree_ && terms_ == o.terms_;
}

Elem HomogeneousPoly::evaluate(std::span<const Elem> x) const {
  if (static_cast<int>(x.size()) != nvars_) {
    throw Error(Errc::ArityMismatch, "point has " + std::to_string(x.size()) + " coordinates, polynomial has " +
                                         std::to_string(nvars_) + " variables");
  }
  Elem acc = 0;
  for (const auto& [m, c] : terms_) {
    Elem t = c;
    for (std::size_t i = 0; i < m.size() && t != 0; ++i) {
      if (m[i]) t = f_->mul(t, f_->pow(x[i], m[i]));
    }
    acc = f_->add(acc, t);
  }
  return acc;
}

HomogeneousPoly HomogeneousPoly::partial(int i) const {
  HomogeneousPoly out(f_, nvars_, std::max(degree_ - 1, 0));
  for (const auto& [m, c] : terms_) {
    const std::uint16_t e = m[static_cast<std::size_t>(i)];
    if (e == 0) continue;
    Monomial d = m;
    --d[static_cast<std::size_t>(i)];
    out.add_term(d, f_->mul(c, f_->from_int(e)));
  }
  return out;
}

std::optional<HomogeneousPoly> HomogeneousPoly::divide_exact(const HomogeneousPoly& lin) const {
  check_compatible(lin);
  if (lin.degree_ != 1 || lin.is_zero()) throw Error(Errc::InvalidArgument, "divisor must be a nonzero linear form");
  if (degree_ == 0) {
    if (is_zero()) return HomogeneousPoly(f_, nvars_, 0);
    return std::nullopt;
  }
  // Eliminate the variable with the last nonzero coefficient of the divisor.
  std::size_t j = 0;
  Elem lead = 0;
  for (const auto& [m, c] : lin.terms_) {
    const auto pos = static_cast<std::size_t>(std::find(m.begin(), m.end(), 1) - m.begin());
    if (pos >= j) {
      j = pos;
      lead = c;
    }
  }
  const Elem inv_lead = f_->inv(lead);
  HomogeneousPoly rem = *this;
  HomogeneousPoly quot(f_, nvars_, degree_ - 1);
  for (;;) {
    const Monomial* best = nullptr;
    for (const auto& [m, c] : rem.terms_) {
      if (m[j] > 0 && (!best || m[j] > (*best)[j])) best = &m;
    }
    if (!best) break;
    Monomial qm = *best;
    --qm[j];
    const Elem qc = f_->mul(rem.coeff(*best), inv_lead);
    quot.add_term(qm, qc);
    HomogeneousPoly step(f_, nvars_, degree_ - 1);
    step.add_term(qm, qc);
    rem = rem - step * lin;
  }
  if (!rem.is_zero()) return std::nullopt;
  return quot;
}

HomogeneousPoly HomogeneousPoly::embedded(const FieldEmbedding& e) const {
  if (!e.small()->same_as(*f_)) throw Error(Errc::FieldMismatch, "embedding source differs from coefficient field");
  HomogeneousPoly out(e.big(), nvars_, degree_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, e.image(c));
  return out;
}

PolyEvaluator::PolyEvaluator(const HomogeneousPoly& poly) : f_(&poly.field()), nvars_(poly.nvars()) {
  if (nvars_ > 32) throw Error(Errc::InvalidArgument, "too many variables for the fast evaluator");
  for (const auto& [m, c] : poly.terms()) {
    Term t;
    t.log_coeff = f_->log(c);
    t.mask = 0;
    t.exps.assign(m.begin(), m.end());
    for (int i = 0; i < nvars_; ++i) {
      if (m[static_cast<std::size_t>(i)]) t.mask |= (1u << i);
    }
    terms_.push_back(std::move(t));
  }
}

Elem PolyEvaluator::operator()(std::span<const Elem> x) const noexcept {
  std::uint32_t logs[32];
  std::uint32_t zero_mask = 0;
  for (int i = 0; i < nvars_; ++i) {
    if (x[i] == 0) {
      zero_mask |= (1u << i);
      logs[i] = 0;
    } else {
      logs[i] = f_->log(x[i]);
    }
  }
  const std::uint64_t order = f_->size() - 1;
  Elem acc = 0;
  for (const Term& t : terms_) {
    if (t.mask & zero_mask) continue;
    std::uint64_t e = t.log_coeff;
    for (int i = 0; i < nvars_; ++i) e += static_cast<std::uint64_t>(t.exps[i]) * logs[i];
    acc = f_->add(acc, f_->exp(static_cast<std::uint32_t>(e % order)));
  }
  return acc;
}

std::vector<ProjPoint> zero_set(const HomogeneousPoly& poly) {
  if (poly.is_zero()) throw Error(Errc::ZeroPolynomial, "V(0) is not a hypersurface");
  PointSpace space(poly.field_ptr(), poly.nvars() - 1);
  PolyEvaluator ev(poly);
  std::vector<ProjPoint> out;
  space.for_each([&](PointIndex, std::span<const Elem> x) {
    if (ev(x) == 0) out.push_back({Coords(x.begin(), x.end())});
  });
  return out;
}

std::vector<std::uint8_t> zero_mask(const HomogeneousPoly& poly, const PointSpace& space, unsigned threads) {
  if (poly.is_zero()) throw Error(Errc::ZeroPolynomial, "V(0) is not a hypersurface");
  if (poly.nvars() != space.ncoords()) throw Error(Errc::ArityMismatch, "polynomial and space disagree");
  PolyEvaluator ev(poly);
  std::vector<std::uint8_t> mask(space.count(), 0);
  parallel_chunks(space.count(), threads, [&](std::uint64_t b, std::uint64_t e) {
    space.for_each_in_range(b, e, [&](PointIndex i, std::span<const Elem> x) { mask[i] = ev(x) == 0; });
  });
  return mask;
}

HomogeneousPoly compose_linear(const HomogeneousPoly& poly, const Matrix& l) {
  if (static_cast<int>(l.cols()) != poly.nvars()) throw Error(Errc::ArityMismatch, "substitution has wrong width");
  const auto& f = poly.field_ptr();
  const int k = static_cast<int>(l.rows());
  HomogeneousPoly out(f, k, poly.degree());
  if (poly.is_zero()) return out;
  // Cache powers of each substituted linear form.
  std::vector<std::vector<HomogeneousPoly>> powers(static_cast<std::size_t>(poly.nvars()));
  for (int j = 0; j < poly.nvars(); ++j) {
    Coords col(static_cast<std::size_t>(k));
    for (int r = 0; r < k; ++r) col[static_cast<std::size_t>(r)] = l(static_cast<std::size_t>(r), static_cast<std::size_t>(j));
    auto& pw = powers[static_cast<std::size_t>(j)];
    pw.push_back(HomogeneousPoly::constant(f, k, 1));
    const HomogeneousPoly lin = HomogeneousPoly::linear(f, col);
    for (int e = 1; e <= poly.degree(); ++e) pw.push_back(pw.back() * lin);
  }
  for (const auto& [m, c] : poly.terms()) {
    HomogeneousPoly t = HomogeneousPoly::constant(f, k, c);
    for (int j = 0; j < poly.nvars() && !t.is_zero(); ++j) {
      if (m[static_cast<std::size_t>(j)]) t = t * powers[static_cast<std::size_t>(j)][m[static_cast<std::size_t>(j)]];
    }
    for (const auto& [tm, tc] : t.terms()) out.add_term(tm, tc);
  }
  return out;
}

HomogeneousPoly restrict_to_flat(const HomogeneousPoly& poly, const Flat& x) {
  if (x.m + 1 != poly.nvars()) throw Error(Errc::DimensionMismatch, "flat not in the polynomial's ambient space");
  return compose_linear(poly, x.basis);
}

bool contains_flat(const HomogeneousPoly& poly, const Flat& x) {
  if (poly.is_zero()) throw Error(Errc::ZeroPolynomial, "V(0) is not a hypersurface");
  return restrict_to_flat(poly, x).is_zero();
}

namespace {

// Lines over the polynomial's own field dividing a plane form of degree >= 1.
void collect_line_factors(const HomogeneousPoly& g, std::set<Coords>& found) {
  if (g.degree() == 0 || g.is_zero()) return;
  const Field& f = g.field();
  const FieldPtr& fp = g.field_ptr();
  const Coords z_form{0, 0, 1};
  const HomogeneousPoly z = HomogeneousPoly::linear(fp, z_form);
  if (auto quot = g.divide_exact(z)) {
    found.insert(z_form);
    collect_line_factors(*quot, found);
    return;
  }
  PolyEvaluator ev(g);
  const int d = g.degree();
  // Zeros of g on the line x_2 = 0: (0,1,0) and (1,t,0).
  std::vector<ProjPoint> roots;
  Coords pt{0, 1, 0};
  if (ev(pt) == 0) roots.push_back({pt});
  for (Elem t = 0; t < f.size(); ++t) {
    pt = {1, t, 0};
    if (ev(pt) == 0) roots.push_back({pt});
  }
  for (const ProjPoint& r : roots) {
    for (const Flat& line : lines_through(f, r, 2)) {
      const Coords form = hyperplane_coeffs(f, line);
      if (form == z_form || found.count(form)) continue;
      // Vanishing at d+1 distinct points of the line forces the restriction to vanish.
      bool divides = true;
      Coords p(3);
      for (int i = 0; i <= d && divides; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
          p[j] = (i == d) ? line.basis(1, j)
                          : f.add(line.basis(0, j), f.mul(static_cast<Elem>(i), line.basis(1, j)));
        }
        divides = ev(p) == 0;
      }
      if (divides) found.insert(form);
    }
  }
}

}  // namespace

LinearFactors linear_factors_over(const HomogeneousPoly& poly, int extension_degree) {
  if (poly.nvars() != 3) throw Error(Errc::ArityMismatch, "plane polynomial expected");
  if (extension_degree < 1 || extension_degree > 3) throw Error(Errc::InvalidArgument, "extension degree must be 1, 2 or 3");
  if (poly.is_zero()) throw Error(Errc::ZeroPolynomial, "zero polynomial has no factorization");
  const Field& base = poly.field();
  if (poly.degree() >= static_cast<int>(base.size()) * extension_degree) {
    throw Error(Errc::InvalidArgument, "degree too large for the line test");
  }
  FieldPtr ext = Field::create(base.characteristic(), base.degree() * static_cast<unsigned>(extension_degree));
  std::set<Coords> found;
  if (extension_degree == 1) {
    collect_line_factors(poly, found);
  } else {
    FieldEmbedding emb(poly.field_ptr(), ext);
    collect_line_factors(poly.embedded(emb), found);
  }
  return LinearFactors{ext, std::vector<Coords>(found.begin(), found.end())};
}

const char* to_string(PlaneCubicTag t) noexcept {
  switch (t) {
    case PlaneCubicTag::AbsolutelyIrreducible: return "AbsolutelyIrreducible";
    case PlaneCubicTag::IrreducibleNotAbsolutely: return "IrreducibleNotAbsolutely";
    case PlaneCubicTag::Reducible: return "Reducible";
  }
  return "?";
}

PlaneCubicClass classify_plane_cubic(const HomogeneousPoly& cubic) {
  if (cubic.nvars() != 3 || cubic.degree() != 3) throw Error(Errc::InvalidArgument, "plane cubic expected");
  if (cubic.is_zero()) throw Error(Errc::ZeroPolynomial, "zero cubic");
  auto base = linear_factors_over(cubic, 1);
  if (!base.forms.empty()) return {PlaneCubicTag::Reducible, std::move(base)};
  auto cubic_ext = linear_factors_over(cubic, 3);
  if (cubic_ext.forms.empty()) return {PlaneCubicTag::AbsolutelyIrreducible, std::move(cubic_ext)};
  if (cubic_ext.forms.size() != 3) {
    throw Error(Errc::TrichotomyViolated, "irreducible cubic split into " + std::to_string(cubic_ext.forms.size()) +
                                              " lines over the cubic extension");
  }
  return {PlaneCubicTag::IrreducibleNotAbsolutely, std::move(cubic_ext)};
}

HomogeneousPoly conjugate_line_product(const FieldPtr& base, const FieldEmbedding& ext,
                                       std::span<const Elem> lin) {
  if (!ext.small()->same_as(*base)) throw Error(Errc::FieldMismatch, "embedding source differs from base field");
  const Field& E = *ext.big();
  if (E.degree() != 3 * base->degree()) throw Error(Errc::InvalidArgument, "need the cubic extension");
  const std::uint64_t s = base->size();
  HomogeneousPoly prod = HomogeneousPoly::constant(ext.big(), static_cast<int>(lin.size()), 1);
  Coords cur(lin.begin(), lin.end());
  for (int i = 0; i < 3; ++i) {
    prod = prod * HomogeneousPoly::linear(ext.big(), cur);
    for (auto& c : cur) c = E.pow(c, s);
  }
  HomogeneousPoly out(base, prod.nvars(), prod.degree());
  for (const auto& [m, c] : prod.terms()) {
    const auto pre = ext.preimage(c);
    if (pre < 0) throw Error(Errc::InvalidArgument, "product not defined over the base field");
    out.add_term(m, static_cast<Elem>(pre));
  }
  return out;
}

}  // namespace hvlab
