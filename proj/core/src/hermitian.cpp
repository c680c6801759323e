#include "hvlab/hermitian.hpp"

#include <algorithm>
#include <atomic>
#include <set>

#include "hvlab/parallel.hpp"

namespace hvlab {

namespace {

// Points of a non-degenerate Hermitian variety in P^k.
std::uint64_t hermitian_count(std::uint64_t q, int k) {
  if (k < 0) return 0;
  // (q^{k+1} - (-1)^{k+1}) (q^k - (-1)^k) / (q^2 - 1), kept in signed arithmetic.
  auto ipow = [](std::int64_t b, int e) {
    std::int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
  };
  const std::int64_t sq = static_cast<std::int64_t>(q);
  const std::int64_t sa = (k + 1) % 2 ? -1 : 1;
  const std::int64_t sb = k % 2 ? -1 : 1;
  return static_cast<std::uint64_t>((ipow(sq, k + 1) - sa) * (ipow(sq, k) - sb) / (sq * sq - 1));
}

std::size_t lead_of(std::span<const Elem> p) {
  std::size_t i = 0;
  while (p[i] == 0) ++i;
  return i;
}

Coords combine(const Field& f, std::span<const Elem> y, const Matrix& basis) {
  Coords pt(basis.cols(), 0);
  for (std::size_t r = 0; r < basis.rows(); ++r) {
    if (y[r] == 0) continue;
    for (std::size_t j = 0; j < pt.size(); ++j) pt[j] = f.add(pt[j], f.mul(y[r], basis(r, j)));
  }
  return pt;
}

}  // namespace

HermitianForm::HermitianForm(FieldPtr f, Matrix a) : f_(std::move(f)), a_(std::move(a)) {
  rank_ = static_cast<int>(hvlab::rank(*f_, a_));
  diagonal_ = true;
  for (std::size_t i = 0; i < a_.rows(); ++i) {
    for (std::size_t j = 0; j < a_.cols(); ++j) {
      if (i != j && a_(i, j) != 0) diagonal_ = false;
    }
  }
}

HermitianForm HermitianForm::identity(FieldPtr f, int m) {
  return HermitianForm(std::move(f), Matrix::identity(static_cast<std::size_t>(m + 1)));
}

HermitianForm HermitianForm::diagonal(FieldPtr f, std::span<const Elem> d) {
  Matrix a(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) a(i, i) = d[i];
  return from_matrix(std::move(f), std::move(a));
}

HermitianForm HermitianForm::from_matrix(FieldPtr f, Matrix a) {
  if (!f->is_quadratic_extension()) throw Error(Errc::OddExtension, "Hermitian forms live over F_{q^2}");
  if (a.rows() != a.cols() || a.rows() < 1) throw Error(Errc::NotHermitian, "matrix must be square");
  bool nonzero = false;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) >= f->size()) throw Error(Errc::NotHermitian, "entry is not a field element");
      if (a(j, i) != f->conj(a(i, j))) throw Error(Errc::NotHermitian, "A^T differs from A^(q)");
      nonzero = nonzero || a(i, j) != 0;
    }
  }
  if (!nonzero) throw Error(Errc::NotHermitian, "zero matrix");
  return HermitianForm(std::move(f), std::move(a));
}

Elem HermitianForm::pair(std::span<const Elem> u, std::span<const Elem> v) const noexcept {
  const Field& f = *f_;
  const Elem* cj = f.conj_table();
  const std::size_t n = a_.rows();
  Elem acc = 0;
  if (diagonal_) {
    for (std::size_t i = 0; i < n; ++i) {
      if (u[i] && v[i] && a_(i, i)) acc = f.add(acc, f.mul(a_(i, i), f.mul(u[i], cj[v[i]])));
    }
    return acc;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i] == 0) continue;
    Elem row = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (v[j] && a_(i, j)) row = f.add(row, f.mul(a_(i, j), cj[v[j]]));
    }
    acc = f.add(acc, f.mul(u[i], row));
  }
  return acc;
}

Elem HermitianForm::value(std::span<const Elem> x) const noexcept {
  if (diagonal_) {
    const Field& f = *f_;
    const Elem* nt = f.norm_table();
    Elem acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] && a_(i, i)) acc = f.add(acc, f.mul(a_(i, i), nt[x[i]]));
    }
    return acc;
  }
  return pair(x, x);
}

Coords HermitianForm::polar(std::span<const Elem> x) const {
  const Field& f = *f_;
  Coords out(a_.rows(), 0);
  for (std::size_t i = 0; i < a_.rows(); ++i) {
    for (std::size_t j = 0; j < a_.cols(); ++j) out[i] = f.add(out[i], f.mul(a_(i, j), f.conj(x[j])));
  }
  return out;
}

HomogeneousPoly hermitian_poly(const HermitianForm& h) {
  const Field& f = h.field();
  const int n = h.m() + 1;
  const unsigned q = f.q();
  HomogeneousPoly out(h.field_ptr(), n, static_cast<int>(q) + 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Elem c = h.matrix()(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      if (c == 0) continue;
      Monomial m(static_cast<std::size_t>(n), 0);
      m[static_cast<std::size_t>(i)] += 1;
      m[static_cast<std::size_t>(j)] += static_cast<std::uint16_t>(q);
      out.add_term(m, c);
    }
  }
  return out;
}

NormalForm normal_form(const HermitianForm& h) {
  const Field& f = h.field();
  const std::size_t n = static_cast<std::size_t>(h.m() + 1);
  std::vector<Coords> b(n, Coords(n, 0));
  for (std::size_t i = 0; i < n; ++i) b[i][i] = 1;
  std::size_t k = 0;
  for (; k < n; ++k) {
    // Find an anisotropic vector among b[k..], or make one from a non-orthogonal pair.
    std::size_t pick = n;
    for (std::size_t i = k; i < n && pick == n; ++i) {
      if (h.value(b[i]) != 0) pick = i;
    }
    for (std::size_t i = k; i < n && pick == n; ++i) {
      for (std::size_t j = k; j < n && pick == n; ++j) {
        if (i == j || h.pair(b[i], b[j]) == 0) continue;
        for (Elem c = 1; c < f.size(); ++c) {
          Coords v = b[i];
          for (std::size_t t = 0; t < n; ++t) v[t] = f.add(v[t], f.mul(c, b[j][t]));
          if (h.value(v) != 0) {
            b[i] = std::move(v);
            pick = i;
            break;
          }
        }
      }
    }
    if (pick == n) break;  // the rest spans the radical
    std::swap(b[k], b[pick]);
    const Elem lambda = f.norm_root(f.inv(h.value(b[k])));
    for (auto& e : b[k]) e = f.mul(e, lambda);
    for (std::size_t j = k + 1; j < n; ++j) {
      const Elem t = h.pair(b[j], b[k]);
      if (t == 0) continue;
      for (std::size_t c = 0; c < n; ++c) b[j][c] = f.sub(b[j][c], f.mul(t, b[k][c]));
    }
  }
  NormalForm out;
  out.rank = static_cast<int>(k);
  out.m = Matrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < n; ++r) out.m(r, c) = b[c][r];
  }
  out.diagonal = multiply(f, multiply(f, transpose(out.m), h.matrix()), conjugate(f, out.m));
  return out;
}

HermitianForm restrict_form(const HermitianForm& h, const Flat& x) {
  const Field& f = h.field();
  Matrix b = multiply(f, multiply(f, x.basis, h.matrix()), transpose(conjugate(f, x.basis)));
  return HermitianForm::from_matrix(h.field_ptr(), std::move(b));
}

int restricted_rank(const HermitianForm& h, const Flat& x) {
  const Field& f = h.field();
  Matrix b = multiply(f, multiply(f, x.basis, h.matrix()), transpose(conjugate(f, x.basis)));
  return static_cast<int>(rank(f, std::move(b)));
}

HermitianVariety::HermitianVariety(HermitianForm h, unsigned threads)
    : h_(std::move(h)), space_(h_.field_ptr(), h_.m()) {
  mask_.assign(space_.count(), 0);
  parallel_chunks(space_.count(), threads, [&](std::uint64_t b, std::uint64_t e) {
    space_.for_each_in_range(b, e, [&](PointIndex i, std::span<const Elem> x) { mask_[i] = h_.value(x) == 0; });
  });
  const auto n = static_cast<std::size_t>(space_.ncoords());
  space_.for_each([&](PointIndex i, std::span<const Elem> x) {
    if (!mask_[i]) return;
    idx_.push_back(i);
    coords_.insert(coords_.end(), x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
  });
}

std::vector<ProjPoint> HermitianVariety::points() const {
  std::vector<ProjPoint> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    auto c = coords(i);
    out.push_back({Coords(c.begin(), c.end())});
  }
  return out;
}

std::uint64_t HermitianVariety::count_zeros_of(const HomogeneousPoly& f, unsigned threads) const {
  if (f.is_zero()) throw Error(Errc::ZeroPolynomial, "V(0) is not a hypersurface");
  if (f.nvars() != space_.ncoords()) throw Error(Errc::ArityMismatch, "polynomial and variety disagree");
  PolyEvaluator ev(f);
  std::atomic<std::uint64_t> total{0};
  parallel_chunks(size(), threads, [&](std::uint64_t b, std::uint64_t e) {
    std::uint64_t c = 0;
    for (std::uint64_t i = b; i < e; ++i) c += ev(coords(i)) == 0;
    total += c;
  });
  return total.load();
}

std::uint64_t section_count(const HermitianForm& h, const Flat& x) {
  std::uint64_t c = 0;
  for_each_flat_point(h.field(), x, [&](std::span<const Elem> p) { c += h.value(p) == 0; });
  return c;
}

ProjPoint pole(const HermitianForm& h, const Flat& hyperplane) {
  if (!h.nondegenerate()) throw Error(Errc::DegenerateForm, "poles need a non-degenerate form");
  const Field& f = h.field();
  const Coords a = hyperplane_coeffs(f, hyperplane);
  const auto inv = inverse(f, h.matrix());
  Coords p(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) p[i] = f.add(p[i], f.mul((*inv)(i, j), a[j]));
    p[i] = f.conj(p[i]);
  }
  return normalize(f, std::move(p));
}

bool is_tangent_hyperplane(const HermitianForm& h, const Flat& hyperplane) {
  return h.value(pole(h, hyperplane).coords) == 0;
}

Flat tangent_hyperplane(const HermitianForm& h, const ProjPoint& p) {
  if (!h.nondegenerate()) throw Error(Errc::DegenerateForm, "tangent hyperplanes need a non-degenerate form");
  if (static_cast<int>(p.coords.size()) != h.m() + 1) throw Error(Errc::DimensionMismatch, "point not in P^m");
  if (h.value(p.coords) != 0) throw Error(Errc::PointNotOnVariety, "P is not on the variety");
  return hyperplane_from_coeffs(h.field(), h.polar(p.coords));
}

const char* to_string(LineTag t) noexcept {
  switch (t) {
    case LineTag::Tangent: return "Tangent";
    case LineTag::Secant: return "Secant";
    case LineTag::Generator: return "Generator";
  }
  return "?";
}

const char* to_string(PlaneSectionTag t) noexcept {
  switch (t) {
    case PlaneSectionTag::NonDegenerateCurve: return "NonDegenerateCurve";
    case PlaneSectionTag::ConcurrentLines: return "ConcurrentLines";
    case PlaneSectionTag::SingleLine: return "SingleLine";
  }
  return "?";
}

const char* to_string(HyperplaneSectionTag t) noexcept {
  switch (t) {
    case HyperplaneSectionTag::NonTangent: return "NonTangent";
    case HyperplaneSectionTag::TangentAt: return "TangentAt";
  }
  return "?";
}

const char* to_string(QuadricTag t) noexcept {
  switch (t) {
    case QuadricTag::TypeI: return "TypeI";
    case QuadricTag::TypeII: return "TypeII";
    case QuadricTag::TypeIII: return "TypeIII";
    case QuadricTag::Other: return "Other";
  }
  return "?";
}

LineClass classify_line(const HermitianForm& h, const Flat& line) {
  if (line.dim != 1) throw Error(Errc::DimensionMismatch, "not a line");
  if (!h.nondegenerate()) throw Error(Errc::DegenerateForm, "line classes need a non-degenerate form");
  const std::uint64_t q = h.field().q();
  const std::uint64_t c = section_count(h, line);
  if (c == 1) return {LineTag::Tangent, c};
  if (c == q + 1) return {LineTag::Secant, c};
  if (c == q * q + 1) return {LineTag::Generator, c};
  throw Error(Errc::TrichotomyViolated, "line meets the variety in " + std::to_string(c) + " points");
}

PlaneSectionClass classify_plane_section(const HermitianForm& h, const Flat& plane) {
  if (plane.dim != 2) throw Error(Errc::DimensionMismatch, "not a plane");
  if (!h.nondegenerate()) throw Error(Errc::DegenerateForm, "plane classes need a non-degenerate form");
  const Field& f = h.field();
  const std::uint64_t q = f.q();
  const std::uint64_t c = section_count(h, plane);
  const int r = restricted_rank(h, plane);
  if (c == q * q * q + 1 && r == 3) return {PlaneSectionTag::NonDegenerateCurve, c, std::nullopt};
  if (c == q * q + 1 && r == 1) return {PlaneSectionTag::SingleLine, c, std::nullopt};
  if (c == q * q * q + q * q + 1 && r == 2) {
    Matrix b = multiply(f, multiply(f, plane.basis, h.matrix()), transpose(conjugate(f, plane.basis)));
    // The radical is {y : B y^(q) = 0}, the conjugate of B's null space.
    Coords y = nullspace(f, b).row(0);
    for (auto& e : y) e = f.conj(e);
    const ProjPoint center = normalize(f, combine(f, y, plane.basis));
    // Every other section point must span a line of the variety with the center.
    bool cone = h.value(center.coords) == 0;
    for_each_flat_point(f, plane, [&](std::span<const Elem> p) {
      if (!cone || h.value(p) != 0) return;
      cone = h.pair(p, center.coords) == 0;
    });
    if (cone) return {PlaneSectionTag::ConcurrentLines, c, center};
  }
  throw Error(Errc::TrichotomyViolated,
              "plane section with " + std::to_string(c) + " points and rank " + std::to_string(r));
}

HyperplaneSectionClass classify_hyperplane_section(const HermitianForm& h, const Flat& hyperplane,
                                                   bool verify_cone) {
  if (hyperplane.dim != hyperplane.m - 1) throw Error(Errc::DimensionMismatch, "not a hyperplane");
  if (!h.nondegenerate()) throw Error(Errc::DegenerateForm, "hyperplane classes need a non-degenerate form");
  const Field& f = h.field();
  const std::uint64_t q = f.q();
  const int m = h.m();
  const std::uint64_t c = section_count(h, hyperplane);
  const ProjPoint p = pole(h, hyperplane);
  if (h.value(p.coords) != 0) {
    if (c != hermitian_count(q, m - 1) || restricted_rank(h, hyperplane) != m) {
      throw Error(Errc::TrichotomyViolated, "non-tangent hyperplane section with " + std::to_string(c) + " points");
    }
    return {HyperplaneSectionTag::NonTangent, c, std::nullopt};
  }
  if (c != 1 + q * q * hermitian_count(q, m - 2) || !incidence(f, p, hyperplane)) {
    throw Error(Errc::TrichotomyViolated, "tangent hyperplane section with " + std::to_string(c) + " points");
  }
  if (verify_cone && m >= 2) {
    // Base: the section by x_i = 0 inside the hyperplane, i the lead of P, which avoids P.
    Coords e(static_cast<std::size_t>(m + 1), 0);
    e[lead_of(p.coords)] = 1;
    const auto base = intersect(f, hyperplane, hyperplane_from_coeffs(f, e));
    std::uint64_t base_count = 0;
    bool ok = true;
    for_each_flat_point(f, *base, [&](std::span<const Elem> r) {
      if (!ok || h.value(r) != 0) return;
      ++base_count;
      ok = h.pair(r, p.coords) == 0;
    });
    if (!ok || base_count != hermitian_count(q, m - 2) || c != 1 + base_count * q * q) {
      throw Error(Errc::TrichotomyViolated, "tangent section is not a cone over its base");
    }
  }
  return {HyperplaneSectionTag::TangentAt, c, p};
}

std::vector<Flat> generators_through(const HermitianForm& h, const ProjPoint& p) {
  const Field& f = h.field();
  if (h.value(p.coords) != 0) throw Error(Errc::PointNotOnVariety, "P is not on the variety");
  const std::size_t n = p.coords.size();
  // Each line through P meets x_lead = 0 once; it lies in the variety iff that
  // point R is on the variety and orthogonal to P.
  Coords e(n, 0);
  e[lead_of(p.coords)] = 1;
  Matrix rows(2, n);
  const Coords pol = h.polar(p.coords);
  for (std::size_t j = 0; j < n; ++j) {
    rows(0, j) = e[j];
    rows(1, j) = pol[j];
  }
  const Flat cut = *annihilator(f, make_flat(f, std::move(rows)));
  std::vector<Flat> out;
  for_each_flat_point(f, cut, [&](std::span<const Elem> r) {
    if (h.value(r) != 0) return;
    ProjPoint rp{Coords(r.begin(), r.end())};
    std::vector<ProjPoint> two{p, std::move(rp)};
    out.push_back(span(f, two));
  });
  return out;
}

std::vector<Flat> generators(const HermitianVariety& v) {
  const HermitianForm& h = v.form();
  std::vector<Flat> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto c = v.coords(i);
    ProjPoint p{Coords(c.begin(), c.end())};
    for (Flat& g : generators_through(h, p)) {
      // The second RREF row is the line's lowest-ranked point; keep the line once.
      if (g.basis.row(1) == p.coords) out.push_back(std::move(g));
    }
  }
  return out;
}

QuadricType classify_quadric(const HomogeneousPoly& q, const HermitianForm& h) {
  if (q.degree() != 2 || q.is_zero()) throw Error(Errc::NotAQuadric, "expected a nonzero quadratic form");
  if (q.nvars() != 5 || h.m() != 4) throw Error(Errc::NotAQuadric, "quadric types are defined in P^4");
  if (!h.nondegenerate()) throw Error(Errc::DegenerateForm, "types are relative to a non-degenerate V_3");
  const FieldPtr& fp = q.field_ptr();
  const Field& f = *fp;
  PointSpace space(fp, 4);
  PolyEvaluator ev(q);
  std::vector<PolyEvaluator> grad;
  for (int i = 0; i < 5; ++i) grad.emplace_back(q.partial(i));
  std::optional<ProjPoint> sing;
  space.for_each([&](PointIndex, std::span<const Elem> x) {
    if (sing || ev(x) != 0) return;
    for (const auto& g : grad) {
      if (g(x) != 0) return;
    }
    sing = ProjPoint{Coords(x.begin(), x.end())};
  });
  QuadricType out{QuadricTag::Other, {}};
  if (!sing) return out;
  // Q vanishes on a hyperplane iff it vanishes at the basis rows and their pairwise sums.
  auto vanishes_on = [&](const Flat& hp) {
    const std::size_t r = hp.basis.rows();
    std::vector<Coords> rows;
    for (std::size_t i = 0; i < r; ++i) rows.push_back(hp.basis.row(i));
    for (std::size_t i = 0; i < r; ++i) {
      if (ev(rows[i]) != 0) return false;
      for (std::size_t j = i + 1; j < r; ++j) {
        Coords s(rows[i].size());
        for (std::size_t t = 0; t < s.size(); ++t) s[t] = f.add(rows[i][t], rows[j][t]);
        if (ev(s) != 0) return false;
      }
    }
    return true;
  };
  for (const Flat& hp : flats_through(fp, point_flat(*sing), 3)) {
    if (!vanishes_on(hp)) continue;
    const Coords a = hyperplane_coeffs(f, hp);
    const auto quot = q.divide_exact(HomogeneousPoly::linear(fp, a));
    if (!quot) continue;
    Coords b(5, 0);
    for (const auto& [mono, c] : quot->terms()) {
      b[static_cast<std::size_t>(std::find(mono.begin(), mono.end(), 1) - mono.begin())] = c;
    }
    b = normalize(f, b).coords;
    out.components = {a, b};
    break;
  }
  if (out.components.empty() || out.components[0] == out.components[1]) return out;
  const Flat s1 = hyperplane_from_coeffs(f, out.components[0]);
  const Flat s2 = hyperplane_from_coeffs(f, out.components[1]);
  const bool t1 = is_tangent_hyperplane(h, s1);
  const bool t2 = is_tangent_hyperplane(h, s2);
  const PlaneSectionTag sec = classify_plane_section(h, *intersect(f, s1, s2)).tag;
  if (!t1 && !t2 && sec == PlaneSectionTag::NonDegenerateCurve) out.tag = QuadricTag::TypeI;
  else if (!t1 && !t2 && sec == PlaneSectionTag::ConcurrentLines) out.tag = QuadricTag::TypeII;
  else if (t1 != t2 && sec == PlaneSectionTag::NonDegenerateCurve) out.tag = QuadricTag::TypeIII;
  return out;
}

}  // namespace hvlab
