#include "hvlab/constructions.hpp"

#include <string>

namespace hvlab {

namespace {

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

void check_degree(int d, unsigned q) {
  if (d < 2 || d > static_cast<int>(q)) {
    throw Error(Errc::InvalidArgument, "need 2 <= d <= q, got d = " + std::to_string(d) + ", q = " + std::to_string(q));
  }
}

void require_nondegenerate(const HermitianVariety& v, int m) {
  if (v.form().m() != m) throw Error(Errc::DimensionMismatch, "wrong ambient dimension for this construction");
  if (!v.form().nondegenerate()) throw Error(Errc::DegenerateForm, "construction needs a non-degenerate form");
}

HomogeneousPoly product_of(const FieldPtr& f, const std::vector<Coords>& forms) {
  HomogeneousPoly out = HomogeneousPoly::constant(f, static_cast<int>(forms.front().size()), 1);
  for (const Coords& a : forms) out = out * HomogeneousPoly::linear(f, a);
  return out;
}

void verify(ExtremalCertificate& cert) {
  if (cert.verified_count != cert.claimed_count) {
    throw Error(Errc::ConstructionNotFound, std::string(to_string(cert.kind)) + " counted " +
                                                std::to_string(cert.verified_count) + " points, expected " +
                                                std::to_string(cert.claimed_count));
  }
}

}  // namespace

const char* to_string(ExtremalKind k) noexcept {
  switch (k) {
    case ExtremalKind::EdoukouExtremal: return "EdoukouExtremal";
    case ExtremalKind::SorensenExtremal: return "SorensenExtremal";
    case ExtremalKind::DegenerateConeExtremal: return "DegenerateConeExtremal";
    case ExtremalKind::QuadricTypeI: return "QuadricTypeI";
    case ExtremalKind::QuadricTypeII: return "QuadricTypeII";
    case ExtremalKind::QuadricTypeIII: return "QuadricTypeIII";
    case ExtremalKind::SerreExtremal: return "SerreExtremal";
  }
  return "?";
}

std::uint64_t edoukou_count(std::uint64_t q, std::uint64_t d) { return d * (ipow(q, 5) + q * q) + q * q * q + 1; }
std::uint64_t sorensen_count(std::uint64_t q, std::uint64_t d) { return d * (q * q * q + q * q - q) + q + 1; }
std::uint64_t degenerate_count(std::uint64_t q, std::uint64_t d) { return d * (q + 1) * q * q + 1; }
std::uint64_t quadric_count(QuadricTag kind, std::uint64_t q) {
  const std::uint64_t q5 = ipow(q, 5);
  switch (kind) {
    case QuadricTag::TypeI: return 2 * (q5 + q * q) + q * q * q + 1;
    case QuadricTag::TypeII: return 2 * q5 + q * q * q + q * q + 1;
    case QuadricTag::TypeIII: return 2 * q5 + 2 * q * q + 1;
    case QuadricTag::Other: break;
  }
  throw Error(Errc::InvalidArgument, "no closed form for Other quadrics");
}
std::uint64_t serre_count(std::uint64_t s, std::uint64_t d, int m) {
  return d * ipow(s, m - 1) + (ipow(s, m - 1) - 1) / (s - 1);
}

Construction edoukou_extremal(const HermitianVariety& v, int d, unsigned threads) {
  require_nondegenerate(v, 4);
  const HermitianForm& h = v.form();
  const FieldPtr& fp = h.field_ptr();
  const unsigned q = fp->q();
  check_degree(d, q);
  FlatSpace planes(fp, 4, 2);
  constexpr std::uint64_t kPlaneBudget = 100000;
  for (std::uint64_t i = 0; i < planes.count() && i < kPlaneBudget; ++i) {
    const Flat plane = planes.unrank(i);
    if (classify_plane_section(h, plane).tag != PlaneSectionTag::NonDegenerateCurve) continue;
    std::vector<Coords> forms;
    std::vector<Flat> flats{plane};
    for (const Flat& s : hyperplanes_through_plane(fp, plane)) {
      if (static_cast<int>(forms.size()) == d) break;
      if (is_tangent_hyperplane(h, s)) continue;
      forms.push_back(hyperplane_coeffs(*fp, s));
      flats.push_back(s);
    }
    if (static_cast<int>(forms.size()) < d) continue;
    HomogeneousPoly f = product_of(fp, forms);
    ExtremalCertificate cert{ExtremalKind::EdoukouExtremal, static_cast<int>(q), d, 4, edoukou_count(q, d),
                             v.count_zeros_of(f, threads), std::move(flats), std::move(forms)};
    verify(cert);
    return {std::move(f), h, std::move(cert)};
  }
  throw Error(Errc::InsufficientNonTangent, "no scanned plane carries " + std::to_string(d) + " non-tangent hyperplanes");
}

Construction sorensen_extremal(const HermitianVariety& v, int d, unsigned threads) {
  require_nondegenerate(v, 3);
  const HermitianForm& h = v.form();
  const FieldPtr& fp = h.field_ptr();
  const unsigned q = fp->q();
  check_degree(d, q);
  FlatSpace lines(fp, 3, 1);
  for (std::uint64_t i = 0; i < lines.count(); ++i) {
    const Flat line = lines.unrank(i);
    if (classify_line(h, line).tag != LineTag::Secant) continue;
    std::vector<Coords> forms;
    std::vector<Flat> flats{line};
    for (const Flat& pl : flats_through(fp, line, 2)) {
      if (static_cast<int>(forms.size()) == d) break;
      if (!is_tangent_hyperplane(h, pl)) continue;
      forms.push_back(hyperplane_coeffs(*fp, pl));
      flats.push_back(pl);
    }
    if (static_cast<int>(forms.size()) < d) {
      throw Error(Errc::InsufficientPlanes, "secant line has only " + std::to_string(forms.size()) + " tangent planes");
    }
    HomogeneousPoly f = product_of(fp, forms);
    ExtremalCertificate cert{ExtremalKind::SorensenExtremal, static_cast<int>(q), d, 3, sorensen_count(q, d),
                             v.count_zeros_of(f, threads), std::move(flats), std::move(forms)};
    verify(cert);
    return {std::move(f), h, std::move(cert)};
  }
  throw Error(Errc::InsufficientPlanes, "no secant line found");
}

HermitianForm rank3_surface(unsigned q) {
  const Elem d[4] = {1, 1, 1, 0};
  return HermitianForm::diagonal(Field::for_q(q), d);
}

Construction degenerate_extremal(unsigned q, int d) {
  check_degree(d, q);
  const HermitianForm h = rank3_surface(q);
  const FieldPtr& fp = h.field_ptr();
  const Field& f = *fp;
  const HermitianForm curve = HermitianForm::identity(fp, 2);
  // Greedy choice of secant lines of the base curve in x_3 = 0 whose meeting sets are disjoint.
  std::set<ProjPoint> used;
  std::vector<Coords> forms;
  std::vector<Flat> flats;
  Matrix base_rows(3, 4);
  for (std::size_t i = 0; i < 3; ++i) base_rows(i, i) = 1;
  flats.push_back(make_flat(f, base_rows));
  FlatSpace lines(fp, 2, 1);
  for (std::uint64_t i = 0; i < lines.count() && static_cast<int>(forms.size()) < d; ++i) {
    const Flat line = lines.unrank(i);
    std::vector<ProjPoint> meet;
    for_each_flat_point(f, line, [&](std::span<const Elem> p) {
      if (curve.value(p) == 0) meet.push_back({Coords(p.begin(), p.end())});
    });
    if (meet.size() != q + 1) continue;
    bool disjoint = true;
    for (const auto& p : meet) disjoint = disjoint && !used.count(p);
    if (!disjoint) continue;
    used.insert(meet.begin(), meet.end());
    Coords a = hyperplane_coeffs(f, line);
    a.push_back(0);
    forms.push_back(a);
    Matrix lifted(2, 4);
    for (std::size_t r = 0; r < 2; ++r) {
      for (std::size_t c = 0; c < 3; ++c) lifted(r, c) = line.basis(r, c);
    }
    flats.push_back(make_flat(f, lifted));
  }
  if (static_cast<int>(forms.size()) < d) {
    throw Error(Errc::BaseCurveSearchFailed, "found only " + std::to_string(forms.size()) + " disjoint secant lines");
  }
  HomogeneousPoly poly = product_of(fp, forms);
  HermitianVariety v(h);
  ExtremalCertificate cert{ExtremalKind::DegenerateConeExtremal, static_cast<int>(q), d, 3, degenerate_count(q, d),
                           v.count_zeros_of(poly), std::move(flats), std::move(forms)};
  verify(cert);
  return {std::move(poly), h, std::move(cert)};
}

Construction quadric_of_type(QuadricTag kind, const HermitianVariety& v, unsigned threads) {
  require_nondegenerate(v, 4);
  if (kind == QuadricTag::Other) throw Error(Errc::InvalidArgument, "Other is not a constructible type");
  const HermitianForm& h = v.form();
  const FieldPtr& fp = h.field_ptr();
  const unsigned q = fp->q();
  const PlaneSectionTag want =
      kind == QuadricTag::TypeII ? PlaneSectionTag::ConcurrentLines : PlaneSectionTag::NonDegenerateCurve;
  const int tangent_wanted = kind == QuadricTag::TypeIII ? 1 : 0;
  FlatSpace planes(fp, 4, 2);
  constexpr std::uint64_t kPlaneBudget = 100000;
  for (std::uint64_t i = 0; i < planes.count() && i < kPlaneBudget; ++i) {
    const Flat plane = planes.unrank(i);
    if (classify_plane_section(h, plane).tag != want) continue;
    std::vector<Coords> forms;
    std::vector<Flat> flats{plane};
    int tangent = 0;
    int non_tangent = 0;
    for (const Flat& s : hyperplanes_through_plane(fp, plane)) {
      const bool t = is_tangent_hyperplane(h, s);
      if (t && tangent < tangent_wanted) {
        ++tangent;
      } else if (!t && non_tangent < 2 - tangent_wanted) {
        ++non_tangent;
      } else {
        continue;
      }
      forms.push_back(hyperplane_coeffs(*fp, s));
      flats.push_back(s);
      if (forms.size() == 2) break;
    }
    if (forms.size() < 2) continue;
    HomogeneousPoly poly = product_of(fp, forms);
    if (classify_quadric(poly, h).tag != kind) {
      throw Error(Errc::ConstructionNotFound, std::string("built quadric does not classify as ") + to_string(kind));
    }
    const ExtremalKind ek = kind == QuadricTag::TypeI    ? ExtremalKind::QuadricTypeI
                            : kind == QuadricTag::TypeII ? ExtremalKind::QuadricTypeII
                                                         : ExtremalKind::QuadricTypeIII;
    ExtremalCertificate cert{ek, static_cast<int>(q), 2, 4, quadric_count(kind, q),
                             v.count_zeros_of(poly, threads), std::move(flats), std::move(forms)};
    verify(cert);
    return {std::move(poly), h, std::move(cert)};
  }
  throw Error(Errc::ConstructionNotFound, std::string("no plane supports ") + to_string(kind));
}

Construction serre_extremal(unsigned q, int d, int m, unsigned threads) {
  const FieldPtr fp = Field::for_q(q);
  const Elem s = fp->size();
  if (m < 2) throw Error(Errc::DimensionMismatch, "need m >= 2 for a codimension-2 flat");
  if (d < 1 || static_cast<Elem>(d) > s) throw Error(Errc::InvalidArgument, "need 1 <= d <= q^2");
  const auto n = static_cast<std::size_t>(m + 1);
  std::vector<Coords> forms;
  Coords a(n, 0);
  a[1] = 1;
  forms.push_back(a);
  for (Elem b = 0; static_cast<int>(forms.size()) < d; ++b) {
    Coords c(n, 0);
    c[0] = 1;
    c[1] = b;
    forms.push_back(c);
  }
  Matrix common(n - 2, n);
  for (std::size_t i = 0; i + 2 < n; ++i) common(i, i + 2) = 1;
  std::vector<Flat> flats{make_flat(*fp, common)};
  for (const Coords& c : forms) flats.push_back(hyperplane_from_coeffs(*fp, c));
  HomogeneousPoly poly = product_of(fp, forms);
  PointSpace space(fp, m);
  std::uint64_t count = 0;
  for (auto b : zero_mask(poly, space, threads)) count += b;
  ExtremalCertificate cert{ExtremalKind::SerreExtremal, static_cast<int>(q), d, m, serre_count(s, d, m),
                           count, std::move(flats), std::move(forms)};
  verify(cert);
  return {std::move(poly), std::nullopt, std::move(cert)};
}

std::set<ProjPoint> cone(const Field& f, const ProjPoint& p, const Flat& base, const HomogeneousPoly& c) {
  if (incidence(f, p, base)) throw Error(Errc::VertexOnBase, "vertex lies in the base flat");
  if (c.nvars() != base.dim + 1) throw Error(Errc::ArityMismatch, "base curve not in the base's coordinates");
  if (c.is_zero()) throw Error(Errc::ZeroPolynomial, "base curve must be nonzero");
  std::set<ProjPoint> out{p};
  PolyEvaluator ev(c);
  // Walk the base in parameter coordinates so each base point is met once.
  PointSpace params(c.field_ptr(), base.dim);
  params.for_each([&](PointIndex, std::span<const Elem> y) {
    if (ev(y) != 0) return;
    Coords r(base.basis.cols(), 0);
    for (std::size_t k = 0; k < base.basis.rows(); ++k) {
      for (std::size_t j = 0; j < r.size(); ++j) r[j] = f.add(r[j], f.mul(y[k], base.basis(k, j)));
    }
    std::vector<ProjPoint> two{p, normalize(f, r)};
    for (auto& pt : flat_points(f, span(f, two))) out.insert(std::move(pt));
  });
  return out;
}

HomogeneousPoly cone_poly(const Field& f, const ProjPoint& p, const Flat& base, const HomogeneousPoly& c) {
  if (base.dim != base.m - 1) throw Error(Errc::DimensionMismatch, "cone_poly needs a hyperplane base");
  if (incidence(f, p, base)) throw Error(Errc::VertexOnBase, "vertex lies in the base flat");
  if (c.nvars() != base.dim + 1) throw Error(Errc::ArityMismatch, "base curve not in the base's coordinates");
  // x = y B + λ P, so (y, λ) = x M^{-1} with M the basis rows stacked over P.
  const std::size_t n = base.basis.cols();
  Matrix m(n, n);
  for (std::size_t r = 0; r + 1 < n; ++r) {
    for (std::size_t j = 0; j < n; ++j) m(r, j) = base.basis(r, j);
  }
  for (std::size_t j = 0; j < n; ++j) m(n - 1, j) = p.coords[j];
  const Matrix minv = *inverse(f, m);
  Matrix l(n, n - 1);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t j = 0; j + 1 < n; ++j) l(r, j) = minv(r, j);
  }
  return compose_linear(c, l);
}

}  // namespace hvlab
