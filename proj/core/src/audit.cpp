#include "hvlab/audit.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "audit_internal.hpp"
#include "hvlab/constructions.hpp"
#include "hvlab/parallel.hpp"

namespace hvlab {

const char* to_string(Tri t) noexcept {
  switch (t) {
    case Tri::False: return "false";
    case Tri::True: return "true";
    case Tri::Unknown: return "unknown";
  }
  return "?";
}

// ---- batch evaluation -------------------------------------------------------

BatchEvaluator::BatchEvaluator(FieldPtr f, int nvars, int degree, std::vector<Elem> coords, unsigned threads)
    : f_(std::move(f)), nvars_(nvars), monos_(all_monomials(nvars, degree)) {
  const Elem s = f_->size();
  if (s > 256) throw Error(Errc::SizeBudgetExceeded, "batch evaluation needs a field of at most 256 elements");
  if (nvars <= 0 || coords.size() % static_cast<std::size_t>(nvars) != 0)
    throw Error(Errc::DimensionMismatch, "coordinate table does not match the variable count");
  npts_ = coords.size() / static_cast<std::size_t>(nvars);
  const auto dp1 = static_cast<std::size_t>(degree + 1);
  std::vector<std::uint8_t> pw(static_cast<std::size_t>(s) * dp1);
  for (Elem a = 0; a < s; ++a) {
    Elem v = 1;
    for (std::size_t e = 0; e < dp1; ++e) {
      pw[a * dp1 + e] = static_cast<std::uint8_t>(v);
      v = f_->mul(v, a);
    }
  }
  const std::size_t nm = monos_.size();
  table_.resize(npts_ * nm);
  parallel_chunks(npts_, threads, [&](std::uint64_t b, std::uint64_t e) {
    for (std::uint64_t p = b; p < e; ++p) {
      const Elem* x = coords.data() + p * static_cast<std::size_t>(nvars);
      for (std::size_t k = 0; k < nm; ++k) {
        Elem v = 1;
        for (int i = 0; i < nvars && v != 0; ++i) {
          if (monos_[k][i]) v = f_->mul(v, pw[x[i] * dp1 + monos_[k][i]]);
        }
        table_[p * nm + k] = static_cast<std::uint8_t>(v);
      }
    }
  });
  mul_.assign(256 * 256, 0);
  add_.assign(256 * 256, 0);
  for (Elem a = 0; a < s; ++a) {
    for (Elem b = 0; b < s; ++b) {
      mul_[a * 256 + b] = static_cast<std::uint8_t>(f_->mul(a, b));
      add_[a * 256 + b] = static_cast<std::uint8_t>(f_->add(a, b));
    }
  }
}

namespace {

// acc ← acc + c_k·m_k(x) over the nonzero coefficients, with 256-wide tables.
template <class Sink>
void batch_eval(std::span<const Elem> coeffs, std::size_t nmonos, std::size_t npts, const std::uint8_t* table,
                const std::uint8_t* mul, const std::uint8_t* add, Sink&& sink) {
  if (coeffs.size() != nmonos) throw Error(Errc::DimensionMismatch, "coefficient vector does not match monomials");
  std::vector<std::uint32_t> idx;
  std::vector<const std::uint8_t*> rows;
  for (std::size_t k = 0; k < nmonos; ++k) {
    if (coeffs[k] == 0) continue;
    idx.push_back(static_cast<std::uint32_t>(k));
    rows.push_back(mul + static_cast<std::size_t>(coeffs[k]) * 256);
  }
  const std::size_t nt = idx.size();
  for (std::size_t p = 0; p < npts; ++p) {
    const std::uint8_t* t = table + p * nmonos;
    unsigned acc = 0;
    for (std::size_t j = 0; j < nt; ++j) acc = add[(acc << 8) | rows[j][t[idx[j]]]];
    sink(p, acc == 0);
  }
}

}  // namespace

void BatchEvaluator::zeros(std::span<const Elem> coeffs, std::uint8_t* out) const {
  batch_eval(coeffs, monos_.size(), npts_, table_.data(), mul_.data(), add_.data(),
             [&](std::size_t p, bool z) { out[p] = z; });
}

std::uint64_t BatchEvaluator::count_zeros(std::span<const Elem> coeffs) const {
  std::uint64_t n = 0;
  batch_eval(coeffs, monos_.size(), npts_, table_.data(), mul_.data(), add_.data(),
             [&](std::size_t, bool z) { n += z; });
  return n;
}

std::vector<Elem> BatchEvaluator::coefficients_of(const HomogeneousPoly& f) const {
  if (f.nvars() != nvars_) throw Error(Errc::ArityMismatch, "polynomial has the wrong number of variables");
  if (!f.field().same_as(*f_)) throw Error(Errc::FieldMismatch, "polynomial over a different field");
  if (f.degree() != static_cast<int>(std::accumulate(monos_.front().begin(), monos_.front().end(), 0)))
    throw Error(Errc::InvalidArgument, "polynomial degree differs from the evaluator's");
  std::vector<Elem> out(monos_.size(), 0);
  for (const auto& [m, c] : f.terms()) {
    auto it = std::lower_bound(monos_.begin(), monos_.end(), m, GrlexDesc{});
    out[static_cast<std::size_t>(it - monos_.begin())] = c;
  }
  return out;
}

// ---- context ----------------------------------------------------------------

namespace {

constexpr std::uint64_t kFullSpaceBudget = 200000;

}  // namespace

AuditContext::AuditContext(HermitianForm h, int degree, unsigned threads)
    : v_(std::move(h), threads), q_(v_.form().field().q()), degree_(degree), threads_(std::max(1u, threads)) {
  if (degree < 1) throw Error(Errc::InvalidArgument, "degree must be positive");
  const PointSpace& sp = v_.space();
  vpos_.assign(sp.count(), -1);
  for (std::size_t i = 0; i < v_.size(); ++i) vpos_[v_.indices()[i]] = static_cast<std::int32_t>(i);
  full_space_ = sp.count() <= kFullSpaceBudget;
  exhaustive_ = m() == 4 && form().nondegenerate() && q_ <= 3;
  const auto nc = static_cast<std::size_t>(sp.ncoords());
  std::vector<Elem> coords;
  if (full_space_) {
    coords.reserve(sp.count() * nc);
    sp.for_each([&](PointIndex, std::span<const Elem> x) { coords.insert(coords.end(), x.begin(), x.end()); });
  } else {
    coords.reserve(v_.size() * nc);
    for (std::size_t i = 0; i < v_.size(); ++i) {
      auto x = v_.coords(i);
      coords.insert(coords.end(), x.begin(), x.end());
    }
  }
  eval_.emplace(form().field_ptr(), sp.ncoords(), degree, std::move(coords), threads);
  if (exhaustive_) build_tables(threads);
}

std::vector<std::uint8_t> AuditContext::zero_mask_of(std::span<const Elem> coeffs) const {
  std::vector<std::uint8_t> out(eval_->size());
  eval_->zeros(coeffs, out.data());
  return out;
}

void AuditContext::build_tables(unsigned threads) {
  const Field& f = field();
  const FieldPtr& fp = form().field_ptr();
  const PointSpace& sp = v_.space();
  const std::size_t nv = v_.size();
  const std::size_t s = f.size();

  gens_ = generators(v_);
  line_len_ = s + 1;
  gen_pts_.reserve(gens_.size() * line_len_);
  for (const Flat& g : gens_) {
    auto ids = flat_point_indices(sp, g);
    gen_pts_.insert(gen_pts_.end(), ids.begin(), ids.end());
  }

  gens_at_off_.assign(nv + 1, 0);
  for (PointIndex p : gen_pts_) ++gens_at_off_[static_cast<std::size_t>(vpos_[p]) + 1];
  std::partial_sum(gens_at_off_.begin(), gens_at_off_.end(), gens_at_off_.begin());
  gens_at_.resize(gen_pts_.size());
  {
    std::vector<std::size_t> fill(gens_at_off_.begin(), gens_at_off_.end() - 1);
    for (std::size_t g = 0; g < gens_.size(); ++g) {
      for (std::size_t j = 0; j < line_len_; ++j) {
        gens_at_[fill[static_cast<std::size_t>(vpos_[gen_pts_[g * line_len_ + j]])]++] = static_cast<std::uint32_t>(g);
      }
    }
  }

  std::vector<std::vector<std::uint32_t>> groups(nv);
  std::vector<std::vector<PointIndex>> tangent(nv);
  const std::size_t nc = static_cast<std::size_t>(sp.ncoords());
  parallel_chunks(nv, threads, [&](std::uint64_t b, std::uint64_t e) {
    Coords pc(nc), dir(nc), x(nc);
    for (std::uint64_t vp = b; vp < e; ++vp) {
      const PointIndex pidx = v_.indices()[vp];
      auto pv = v_.coords(vp);
      pc.assign(pv.begin(), pv.end());

      // Generators through P sharing a plane: every pair spans one plane, and
      // the plane's section is q+1 concurrent generators.
      auto ids = generators_at(vp);
      const std::size_t k = ids.size();
      std::vector<Coords> dirs(k);
      for (std::size_t i = 0; i < k; ++i) {
        const PointIndex* pts = &gen_pts_[ids[i] * line_len_];
        sp.unrank(pts[0] == pidx ? pts[1] : pts[0], dir);
        dirs[i] = dir;
      }
      std::vector<std::uint8_t> covered(k * k, 0);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
          if (covered[i * k + j]) continue;
          Matrix rows(3, nc);
          for (std::size_t c = 0; c < nc; ++c) {
            rows(0, c) = pc[c];
            rows(1, c) = dirs[i][c];
            rows(2, c) = dirs[j][c];
          }
          const Flat plane = make_flat(f, rows);
          std::vector<std::size_t> members;
          for (std::size_t t = 0; t < k; ++t) {
            if (t == i || t == j || incidence(f, std::span<const Elem>(dirs[t]), plane)) members.push_back(t);
          }
          for (std::size_t a : members) {
            for (std::size_t c : members) covered[a * k + c] = 1;
          }
          for (std::size_t a : members) groups[vp].push_back(ids[a]);
        }
      }

      // Tangent lines through P: lines PR with R in T_P ∩ {x_lead = 0} off V.
      std::size_t lead = 0;
      while (pc[lead] == 0) ++lead;
      Coords ei(nc, 0);
      ei[lead] = 1;
      const auto cut = intersect(f, tangent_hyperplane(form(), ProjPoint{pc}), hyperplane_from_coeffs(f, ei));
      for_each_flat_point(f, *cut, [&](std::span<const Elem> r) {
        if (form().value(r) == 0) return;
        tangent[vp].push_back(sp.rank(r));
        for (Elem t = 1; t < s; ++t) {
          for (std::size_t c = 0; c < nc; ++c) x[c] = f.add(pc[c], f.mul(t, r[c]));
          tangent[vp].push_back(sp.rank(x));
        }
      });
    }
  });
  groups_off_.assign(nv + 1, 0);
  tangent_off_.assign(nv + 1, 0);
  for (std::size_t vp = 0; vp < nv; ++vp) {
    groups_off_[vp + 1] = groups_off_[vp] + groups[vp].size();
    tangent_off_[vp + 1] = tangent_off_[vp] + tangent[vp].size();
  }
  groups_.reserve(groups_off_[nv]);
  tangent_.reserve(tangent_off_[nv]);
  for (std::size_t vp = 0; vp < nv; ++vp) {
    groups_.insert(groups_.end(), groups[vp].begin(), groups[vp].end());
    tangent_.insert(tangent_.end(), tangent[vp].begin(), tangent[vp].end());
  }

  // Lines of x_0 = 0: lines of P^3 with a zero column prepended.
  FlatSpace lines3(fp, 3, 1);
  base_line_flats_.reserve(lines3.count());
  lines3.for_each([&](const Flat& l) {
    Matrix b(2, nc);
    for (std::size_t r = 0; r < 2; ++r) {
      for (std::size_t c = 1; c < nc; ++c) b(r, c) = l.basis(r, c - 1);
    }
    Flat line{4, 1, b};
    auto ids = flat_point_indices(sp, line);
    base_lines_.insert(base_lines_.end(), ids.begin(), ids.end());
    base_line_flats_.push_back(std::move(line));
  });
}

// ---- counting and predicates --------------------------------------------------

namespace {

void check_poly(const HomogeneousPoly& f, const HermitianForm& h) {
  if (f.is_zero()) throw Error(Errc::ZeroPolynomial, "the zero polynomial vanishes everywhere");
  if (f.nvars() != h.m() + 1) throw Error(Errc::ArityMismatch, "polynomial and form live on different spaces");
  if (!f.field().same_as(h.field())) throw Error(Errc::FieldMismatch, "polynomial and form over different fields");
}

bool all_zero(const std::vector<std::uint8_t>& zf, std::span<const PointIndex> pts) {
  for (PointIndex p : pts) {
    if (!zf[p]) return false;
  }
  return true;
}

}  // namespace

std::uint64_t count_intersection(const HomogeneousPoly& f, const HermitianForm& h, unsigned threads) {
  check_poly(f, h);
  return HermitianVariety(h, threads).count_zeros_of(f, threads);
}

StructuralPredicates structural_predicates(const HomogeneousPoly& f, const AuditContext& ctx) {
  check_poly(f, ctx.form());
  if (!ctx.exhaustive()) return {};
  return structural_predicates(ctx.zero_mask_of(ctx.evaluator().coefficients_of(f)), ctx);
}

StructuralPredicates structural_predicates(const std::vector<std::uint8_t>& zf, const AuditContext& ctx) {
  StructuralPredicates out;
  if (!ctx.exhaustive()) return out;
  const PointSpace& sp = ctx.variety().space();
  if (zf.size() != sp.count()) throw Error(Errc::DimensionMismatch, "predicates need a mask over all of P^4");
  const Field& f = ctx.field();
  const FieldPtr& fp = ctx.form().field_ptr();
  const auto& vidx = ctx.variety().indices();
  const std::uint64_t s = f.size();

  std::vector<std::uint8_t> inside(ctx.generator_count(), 0);
  std::size_t ngen = 0;
  for (std::size_t g = 0; g < ctx.generator_count(); ++g) {
    if (all_zero(zf, ctx.generator_points(g))) {
      inside[g] = 1;
      if (ngen++ == 0) out.generator_witness = ctx.generator(g);
    }
  }
  out.contains_generator = ngen ? Tri::True : Tri::False;
  int best = ngen ? 1 : 0;
  if (ngen > 1) {
    const std::size_t block = ctx.q() + 1;
    for (std::size_t vp = 0; vp < vidx.size(); ++vp) {
      if (!zf[vidx[vp]]) continue;
      int through = 0;
      for (std::uint32_t g : ctx.generators_at(vp)) through += inside[g];
      if (through < 2) continue;
      auto groups = ctx.coplanar_groups_at(vp);
      for (std::size_t b = 0; b < groups.size(); b += block) {
        int c = 0;
        std::vector<std::uint32_t> hit;
        for (std::size_t j = 0; j < block; ++j) {
          if (inside[groups[b + j]]) {
            ++c;
            hit.push_back(groups[b + j]);
          }
        }
        if (c > best) {
          best = c;
          out.max_generators_plane = join(f, ctx.generator(hit[0]), ctx.generator(hit[1]));
        }
      }
    }
  }
  out.max_generators_in_one_plane = best;

  out.contains_tangent_line = Tri::False;
  const std::size_t tl = s;
  for (std::size_t vp = 0; vp < vidx.size() && out.contains_tangent_line == Tri::False; ++vp) {
    if (!zf[vidx[vp]]) continue;
    auto lines = ctx.tangent_lines_at(vp);
    for (std::size_t b = 0; b < lines.size(); b += tl) {
      if (all_zero(zf, lines.subspan(b, tl))) {
        out.contains_tangent_line = Tri::True;
        std::vector<ProjPoint> two{sp.point(vidx[vp]), sp.point(lines[b])};
        out.tangent_line_witness = span(f, two);
        break;
      }
    }
  }

  // Planes and hyperplanes: any contained plane meets x_0 = 0 in a contained
  // line (or lies in it), and any contained hyperplane other than x_0 = 0 meets
  // it in a contained plane.
  const std::uint64_t n0 = projective_count(s, 4);
  bool sigma0 = true;
  for (std::uint64_t i = 0; i < n0 && sigma0; ++i) sigma0 = zf[i] != 0;
  if (sigma0) {
    Coords e0(5, 0);
    e0[0] = 1;
    out.contains_hyperplane = out.contains_plane = Tri::True;
    out.hyperplane_witness = hyperplane_from_coeffs(f, e0);
    Matrix b(3, 5);
    b(0, 2) = b(1, 3) = b(2, 4) = 1;
    out.plane_witness = Flat{4, 2, b};
    return out;
  }
  out.contains_plane = out.contains_hyperplane = Tri::False;
  std::set<Flat> seen;
  const auto& bl = ctx.base_lines();
  const std::size_t ll = s + 1;
  for (std::size_t l = 0; l * ll < bl.size(); ++l) {
    if (!all_zero(zf, std::span<const PointIndex>(bl).subspan(l * ll, ll))) continue;
    for (const Flat& plane : book_of_planes(fp, ctx.base_line_flats()[l])) {
      if (!seen.insert(plane).second) continue;
      if (!all_zero(zf, flat_point_indices(sp, plane))) continue;
      if (out.contains_plane == Tri::False) {
        out.contains_plane = Tri::True;
        out.plane_witness = plane;
      }
      bool in_sigma0 = true;
      for (std::size_t r = 0; r < 3; ++r) in_sigma0 = in_sigma0 && plane.basis(r, 0) == 0;
      if (!in_sigma0) continue;
      for (const Flat& hp : hyperplanes_through_plane(fp, plane)) {
        if (all_zero(zf, flat_point_indices(sp, hp))) {
          out.contains_hyperplane = Tri::True;
          out.hyperplane_witness = hp;
          out.plane_witness = plane;
          return out;
        }
      }
    }
  }
  return out;
}

// ---- audit ------------------------------------------------------------------

namespace detail {

HomogeneousPoly poly_from_coeffs(const FieldPtr& f, const std::vector<Monomial>& monos, std::span<const Elem> coeffs) {
  const int nv = static_cast<int>(monos.front().size());
  int deg = 0;
  for (auto e : monos.front()) deg += e;
  HomogeneousPoly out(f, nv, deg);
  for (std::size_t k = 0; k < monos.size(); ++k) {
    if (coeffs[k]) out.add_term(monos[k], coeffs[k]);
  }
  return out;
}

AuditReport audit_mask(const std::vector<std::uint8_t>& mask, const AuditContext& ctx,
                       const std::function<const HomogeneousPoly&()>& poly, bool classify_quadrics) {
  const HermitianForm& h = ctx.form();
  AuditReport r;
  r.q = ctx.q();
  r.d = ctx.degree();
  r.m = ctx.m();
  r.mode = ctx.exhaustive() ? "exhaustive" : "budgeted";
  const auto& vmask = ctx.variety().mask();
  if (ctx.full_space()) {
    std::uint64_t all = 0, on = 0;
    for (std::size_t i = 0; i < mask.size(); ++i) {
      all += mask[i];
      on += mask[i] & vmask[i];
    }
    r.intersection_count = on;
    r.hypersurface_count = all;
  } else {
    r.intersection_count = static_cast<std::uint64_t>(std::count(mask.begin(), mask.end(), std::uint8_t{1}));
  }
  if (ctx.exhaustive()) r.predicates = structural_predicates(mask, ctx);

  const std::uint64_t q = r.q;
  const auto d = static_cast<std::uint64_t>(r.d);
  const std::uint64_t n = r.intersection_count;
  BoundParams bp{q, d, r.m, 0, 0};
  auto add = [&](BoundName b, std::int64_t value, std::uint64_t count, bool strict) {
    BoundCheck c{b, value, count, strict, true};
    c.ok = strict ? static_cast<std::int64_t>(count) < value : static_cast<std::int64_t>(count) <= value;
    if (!c.ok) {
      r.violations.push_back(std::string(to_string(b)) + ": count " + std::to_string(count) +
                             (strict ? " reaches " : " exceeds ") + std::to_string(value));
    }
    r.bounds.push_back(c);
    return c.ok;
  };

  const std::uint64_t s = q * q;
  if (r.hypersurface_count && d <= s) add(BoundName::Serre, bound_value(BoundName::Serre, bp), *r.hypersurface_count, false);

  const bool nondeg = h.nondegenerate();
  if (r.m == 4 && nondeg && d <= q) {
    bp.deg = d * (q + 1);
    bp.delta = 2;
    add(BoundName::LachaudRolland, bound_value(BoundName::LachaudRolland, bp), n, false);
    const auto& p = r.predicates;
    bool proven = d <= 2;
    const std::int64_t conj = bound_value(BoundName::EdoukouConjecture, bp);
    auto case_bound = [&](BoundName b) {
      const std::int64_t v = bound_value(b, bp);
      add(b, v, n, false);
      if (v <= conj) proven = true;
    };
    if (d == 2) add(BoundName::EdoukouQuadric, bound_value(BoundName::EdoukouQuadric, bp), n, false);
    if (d == 3 && (q >= 7 || p.contains_hyperplane == Tri::True)) {
      add(BoundName::MainCubic, bound_value(BoundName::MainCubic, bp), n, false);
      proven = true;
    }
    if (p.contains_generator == Tri::False) case_bound(BoundName::NoGenerator);
    if (p.contains_plane == Tri::True && p.contains_hyperplane == Tri::False)
      case_bound(BoundName::ContainsPlaneNoHyperplane);
    if (p.contains_plane == Tri::False && p.max_generators_in_one_plane) {
      if (*p.max_generators_in_one_plane >= static_cast<int>(d)) case_bound(BoundName::DGeneratorsInPlane);
      if (*p.max_generators_in_one_plane <= 1) case_bound(BoundName::AtMostOneGenerator);
    }
    if (p.contains_tangent_line == Tri::True && p.contains_plane == Tri::False) case_bound(BoundName::TangentLineCase);

    r.conjecture_bound = conj;
    r.conjecture_ok = static_cast<std::int64_t>(n) <= conj;
    r.conjecture_proven = proven;
    BoundCheck c{BoundName::EdoukouConjecture, conj, n, false, r.conjecture_ok};
    r.bounds.push_back(c);
    if (!r.conjecture_ok) {
      const std::string msg = "EdoukouConjecture: count " + std::to_string(n) + " exceeds " + std::to_string(conj);
      (proven ? r.violations : r.findings).push_back(msg);
    }

    if (d == 2 && classify_quadrics && q <= 5) {
      r.quadric = classify_quadric(poly(), h);
      const QuadricTag tag = r.quadric->tag;
      if (tag != QuadricTag::Other) {
        const std::uint64_t want = quadric_count(tag, q);
        if (n != want) {
          r.violations.push_back(std::string("quadric ") + to_string(tag) + ": count " + std::to_string(n) +
                                 " differs from " + std::to_string(want));
        }
      } else if (n > 2 * q * q * q * q * q + q * q + 1) {
        r.findings.push_back("quadric of type Other meets V in " + std::to_string(n) + " points, above 2q^5+q^2+1");
      }
      if (static_cast<std::int64_t>(n) == bound_value(BoundName::EdoukouQuadric, bp) && tag != QuadricTag::TypeI)
        r.violations.push_back("quadric bound attained by a quadric that is not a Type I split");
    }
  } else if (r.m == 3 && nondeg && d <= q) {
    bp.deg = d * (q + 1);
    bp.delta = 1;
    add(BoundName::LachaudRolland, bound_value(BoundName::LachaudRolland, bp), n, false);
    const std::int64_t v = bound_value(BoundName::Sorensen, bp);
    // Equality is only allowed for a union of planes.
    const bool strict = static_cast<std::int64_t>(n) == v && !is_union_of_hyperplanes(poly());
    add(BoundName::Sorensen, v, n, strict);
  } else if (r.m == 3 && h.rank() == 3 && d <= q) {
    add(BoundName::DegenerateSurface, bound_value(BoundName::DegenerateSurface, bp), n, false);
  }
  return r;
}

}  // namespace detail

AuditReport audit(const HomogeneousPoly& f, const AuditContext& ctx) {
  check_poly(f, ctx.form());
  if (f.degree() != ctx.degree()) throw Error(Errc::InvalidArgument, "polynomial degree differs from the context's");
  if (static_cast<unsigned>(f.degree()) > ctx.q()) throw Error(Errc::InvalidArgument, "audit needs d <= q");
  const auto mask = ctx.zero_mask_of(ctx.evaluator().coefficients_of(f));
  return detail::audit_mask(mask, ctx, [&]() -> const HomogeneousPoly& { return f; }, true);
}

AuditReport audit(const HomogeneousPoly& f, const HermitianForm& h, unsigned threads) {
  check_poly(f, h);
  if (static_cast<unsigned>(f.degree()) > h.field().q()) throw Error(Errc::InvalidArgument, "audit needs d <= q");
  return audit(f, AuditContext(h, f.degree(), threads));
}

// ---- incidence double count --------------------------------------------------

DoubleCount incidence_double_count(const HomogeneousPoly& f, const AuditContext& ctx) {
  check_poly(f, ctx.form());
  return incidence_double_count(ctx.zero_mask_of(ctx.evaluator().coefficients_of(f)), ctx);
}

DoubleCount incidence_double_count(const std::vector<std::uint8_t>& mask, const AuditContext& ctx) {
  const HermitianForm& h = ctx.form();
  if (h.m() != 4 || !h.nondegenerate()) throw Error(Errc::DegenerateForm, "the double count needs a non-degenerate V_3");
  if (mask.size() != ctx.evaluator().size()) throw Error(Errc::DimensionMismatch, "mask layout does not match the context");
  const bool full = ctx.full_space();
  auto zero = [&](PointIndex p) -> std::uint64_t {
    return full ? mask[p] : mask[static_cast<std::size_t>(ctx.vpos(p))];
  };
  const auto& vidx = ctx.variety().indices();
  DoubleCount out;
  if (ctx.exhaustive()) {
    for (std::size_t vp = 0; vp < vidx.size(); ++vp) {
      if (zero(vidx[vp])) out.lhs += ctx.generators_at(vp).size();
    }
    for (std::size_t g = 0; g < ctx.generator_count(); ++g) {
      for (PointIndex p : ctx.generator_points(g)) out.rhs += zero(p);
    }
    return out;
  }
  // Streaming: the generators through P are the lines PR with R on V inside
  // T_P ∩ {x_lead = 0}. A generator is summed once, at its first RREF basis
  // row: the P with lead(P) < j = lead(R) and P_j = 0.
  const Field& f = ctx.field();
  const PointSpace& sp = ctx.variety().space();
  const std::size_t nc = 5;
  const Elem s = f.size();
  std::vector<DoubleCount> parts(vidx.size());
  parallel_chunks(vidx.size(), ctx.threads(), [&](std::uint64_t b, std::uint64_t e) {
    Coords pc(nc), x(nc);
    for (std::uint64_t vp = b; vp < e; ++vp) {
      auto pv = ctx.variety().coords(vp);
      pc.assign(pv.begin(), pv.end());
      const std::uint64_t zp = zero(vidx[vp]);
      std::size_t lead = 0;
      while (pc[lead] == 0) ++lead;
      Coords ei(nc, 0);
      ei[lead] = 1;
      const auto cut = intersect(f, tangent_hyperplane(h, ProjPoint{pc}), hyperplane_from_coeffs(f, ei));
      DoubleCount& part = parts[vp];
      for_each_flat_point(f, *cut, [&](std::span<const Elem> r) {
        if (h.value(r) != 0) return;
        part.lhs += zp;
        std::size_t j = 0;
        while (r[j] == 0) ++j;
        if (j < lead || pc[j] != 0) return;
        part.rhs += zp + zero(sp.rank(r));
        for (Elem t = 1; t < s; ++t) {
          for (std::size_t c = 0; c < nc; ++c) x[c] = f.add(pc[c], f.mul(t, r[c]));
          part.rhs += zero(sp.rank(x));
        }
      });
    }
  });
  for (const auto& p : parts) {
    out.lhs += p.lhs;
    out.rhs += p.rhs;
  }
  return out;
}

// ---- surfaces -------------------------------------------------------------------

std::vector<Flat> lines_through_point_on_surface(const HomogeneousPoly& g, const ProjPoint& p) {
  if (g.is_zero()) throw Error(Errc::ZeroPolynomial, "the zero polynomial has no surface");
  if (g.nvars() != 4 || p.coords.size() != 4) throw Error(Errc::DimensionMismatch, "expected a surface in P^3");
  if (g.evaluate(p) != 0) throw Error(Errc::PointNotOnSurface, "G does not vanish at P");
  std::vector<Flat> out;
  for (const Flat& l : lines_through(g.field(), normalize(g.field(), p.coords), 3)) {
    if (contains_flat(g, l)) out.push_back(l);
  }
  return out;
}

bool is_union_of_hyperplanes(const HomogeneousPoly& f) {
  if (f.is_zero()) throw Error(Errc::ZeroPolynomial, "the zero polynomial has no zero set");
  if (f.degree() == 0) return true;
  const PointSpace dual(f.field_ptr(), f.nvars() - 1);
  if (dual.count() > 2'000'000) throw Error(Errc::BudgetExceeded, "hyperplane scan too large");
  std::optional<HomogeneousPoly> quotient;
  dual.for_each([&](PointIndex, std::span<const Elem> a) {
    if (quotient) return;
    quotient = f.divide_exact(HomogeneousPoly::linear(f.field_ptr(), a));
  });
  return quotient && is_union_of_hyperplanes(*quotient);
}

}  // namespace hvlab
