#include <algorithm>
#include <bit>
#include <map>
#include <random>
#include <set>

#include "hvlab/audit.hpp"
#include "hvlab/constructions.hpp"
#include "hvlab/parallel.hpp"

namespace hvlab {

bool IdentityReport::all_ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.ok; });
}

namespace {

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::string flat_text(const Flat& x) {
  std::string out = "[";
  for (std::size_t r = 0; r < x.basis.rows(); ++r) {
    out += r ? ",(" : "(";
    for (std::size_t c = 0; c < x.basis.cols(); ++c) out += (c ? "," : "") + std::to_string(x.basis(r, c));
    out += ")";
  }
  return out + "]";
}

std::string point_text(std::span<const Elem> p) {
  std::string out = "(";
  for (std::size_t c = 0; c < p.size(); ++c) out += (c ? "," : "") + std::to_string(p[c]);
  return out + ")";
}

class Suite {
 public:
  explicit Suite(IdentityReport& r) : r_(r) {}

  void equal(std::string name, std::uint64_t expected, std::uint64_t observed, std::string witness = {}) {
    r_.checks.push_back({std::move(name), std::to_string(expected), std::to_string(observed), expected == observed,
                         expected == observed ? std::string{} : std::move(witness)});
  }
  void holds(std::string name, std::string expected, std::string observed, bool ok, std::string witness = {}) {
    r_.checks.push_back({std::move(name), std::move(expected), std::move(observed), ok, ok ? std::string{} : std::move(witness)});
  }

 private:
  IdentityReport& r_;
};

// Tally of a chunked scan; merged in chunk order.
struct Tally {
  std::map<std::string, std::uint64_t> by_tag;
  std::uint64_t bad = 0;
  std::uint64_t sum = 0;
  std::string witness;

  void fail(std::string w) {
    if (bad++ == 0) witness = std::move(w);
  }
  void merge(const Tally& o) {
    for (const auto& [k, v] : o.by_tag) by_tag[k] += v;
    if (!bad && o.bad) witness = o.witness;
    bad += o.bad;
    sum += o.sum;
  }
};

template <class Fn>
Tally scan_flats(const FieldPtr& f, int m, int dim, unsigned threads, Fn&& fn) {
  FlatSpace space(f, m, dim);
  const unsigned workers = std::max(1u, threads);
  const std::uint64_t n = space.count();
  const std::uint64_t chunks = std::min<std::uint64_t>(n, workers * 8ull);
  std::vector<Tally> parts(chunks);
  const std::uint64_t step = chunks ? (n + chunks - 1) / chunks : 0;
  parallel_chunks(chunks, workers, [&](std::uint64_t b, std::uint64_t e) {
    for (std::uint64_t c = b; c < e; ++c) {
      for (std::uint64_t i = c * step; i < std::min(n, (c + 1) * step); ++i) fn(space.unrank(i), parts[c]);
    }
  });
  Tally out;
  for (const auto& p : parts) out.merge(p);
  return out;
}

std::string tally_text(const Tally& t) {
  std::string out;
  for (const auto& [k, v] : t.by_tag) out += (out.empty() ? "" : ", ") + k + ": " + std::to_string(v);
  return out;
}

Matrix random_invertible(const Field& f, std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    Matrix c(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) c(i, j) = static_cast<Elem>(rng() % f.size());
    }
    if (rank(f, c) == n) return c;
  }
}

// C^T A C^(q).
Matrix congruence(const Field& f, const Matrix& a, const Matrix& c) {
  return multiply(f, multiply(f, transpose(c), a), conjugate(f, c));
}

void normal_form_checks(Suite& suite, const HermitianForm& base, std::uint64_t seed, unsigned threads,
                        const std::string& label) {
  const Field& f = base.field();
  std::mt19937_64 rng(seed ^ 0x6e6f726d616cull);
  const Matrix c = random_invertible(f, base.matrix().rows(), rng);
  const HermitianForm moved = HermitianForm::from_matrix(base.field_ptr(), congruence(f, base.matrix(), c));
  const NormalForm nf = normal_form(moved);
  suite.holds("normal_form_congruence_" + label, "M^T A M^(q) = D", "checked",
              congruence(f, moved.matrix(), nf.m) == nf.diagonal, "normal form does not diagonalize");
  suite.equal("normal_form_rank_" + label, static_cast<std::uint64_t>(base.rank()), static_cast<std::uint64_t>(nf.rank));
  suite.equal("normal_form_count_preserved_" + label, HermitianVariety(base, threads).size(),
              HermitianVariety(moved, threads).size());
}

void small_variety_checks(Suite& suite, const FieldPtr& fp, unsigned q, unsigned threads, bool exhaustive) {
  const std::uint64_t q2 = q * q, q3 = q2 * q;
  const HermitianForm h3 = HermitianForm::identity(fp, 3);
  HermitianVariety v2(h3, threads);
  suite.equal("surface_points", (q3 + 1) * (q2 + 1), v2.size());
  suite.equal("curve_points", q3 + 1, HermitianVariety(HermitianForm::identity(fp, 2), threads).size());
  const HermitianForm cone3 = rank3_surface(q);
  suite.equal("rank3_surface_points", q2 * (q3 + 1) + 1, HermitianVariety(cone3, threads).size());
  if (!exhaustive) return;

  // Plane sections of the non-degenerate surface, and of the cone for planes
  // missing its vertex.
  const Tally surf = scan_flats(fp, 3, 2, threads, [&](const Flat& pl, Tally& t) {
    const auto n = section_count(h3, pl);
    if (n == q3 + 1) ++t.by_tag["curve"];
    else if (n == q3 + q2 + 1) ++t.by_tag["concurrent_lines"];
    else t.fail(flat_text(pl) + " meets the surface in " + std::to_string(n));
  });
  suite.holds("surface_plane_sections", "every count in {q^3+1, q^3+q^2+1}", tally_text(surf), surf.bad == 0,
              surf.witness);
  const ProjPoint vertex{{0, 0, 0, 1}};
  const Tally avoid = scan_flats(fp, 3, 2, threads, [&](const Flat& pl, Tally& t) {
    if (incidence(*fp, vertex, pl)) return;
    ++t.by_tag["planes"];
    const auto n = section_count(cone3, pl);
    if (n != q3 + 1) t.fail(flat_text(pl) + " meets the cone in " + std::to_string(n));
  });
  suite.equal("planes_avoiding_vertex", ipow(q2, 3), avoid.by_tag.count("planes") ? avoid.by_tag.at("planes") : 0);
  suite.holds("planes_avoiding_vertex_meet_curve", "every count q^3+1", tally_text(avoid), avoid.bad == 0,
              avoid.witness);
}

void exhaustive_suite(Suite& suite, const FieldPtr& fp, unsigned q, unsigned threads, std::uint64_t seed) {
  const Field& f = *fp;
  const std::uint64_t q2 = q * q, q3 = q2 * q, q5 = q3 * q2;
  const std::uint64_t s = q2;
  const HermitianForm h = HermitianForm::identity(fp, 4);
  const HermitianVariety v(h, threads);
  const PointSpace& sp = v.space();
  const auto& vidx = v.indices();
  std::vector<std::int32_t> vpos(sp.count(), -1);
  for (std::size_t i = 0; i < vidx.size(); ++i) vpos[vidx[i]] = static_cast<std::int32_t>(i);

  suite.equal("variety_points", (q5 + 1) * (q2 + 1), v.size());

  // Hyperplane sections, with per-hyperplane V-bitsets kept for the pair scan.
  FlatSpace hs(fp, 4, 3);
  const std::size_t words = (v.size() + 63) / 64;
  std::vector<std::uint64_t> bits(hs.count() * words, 0);
  std::vector<std::uint8_t> tangent_flag(hs.count(), 0);
  std::vector<Tally> parts(hs.count());
  parallel_chunks(hs.count(), threads, [&](std::uint64_t b, std::uint64_t e) {
    for (std::uint64_t i = b; i < e; ++i) {
      const Flat hp = hs.unrank(i);
      Tally& t = parts[i];
      for (PointIndex p : flat_point_indices(sp, hp)) {
        if (vpos[p] >= 0) bits[i * words + static_cast<std::size_t>(vpos[p]) / 64] |= 1ull << (vpos[p] % 64);
      }
      try {
        const auto c = classify_hyperplane_section(h, hp, true);
        if (c.tag == HyperplaneSectionTag::NonTangent) {
          ++t.by_tag["non_tangent"];
          if (c.count != q5 + q3 + q2 + 1) t.fail(flat_text(hp) + " non-tangent with " + std::to_string(c.count));
        } else {
          ++t.by_tag["tangent"];
          tangent_flag[i] = 1;
          if (c.count != q5 + q2 + 1) t.fail(flat_text(hp) + " tangent with " + std::to_string(c.count));
        }
      } catch (const Error& err) {
        t.fail(flat_text(hp) + ": " + err.what());
      }
    }
  });
  Tally hyper;
  for (const auto& p : parts) hyper.merge(p);
  parts.clear();
  suite.holds("hyperplane_sections", "non-tangent " + std::to_string(q5 + q3 + q2 + 1) + ", tangent " +
                                         std::to_string(q5 + q2 + 1) + " (cone verified)",
              tally_text(hyper), hyper.bad == 0, hyper.witness);
  suite.equal("tangent_hyperplanes", v.size(), hyper.by_tag["tangent"]);

  {
    std::set<Flat> images;
    std::string witness;
    bool ok = true;
    for (std::size_t i = 0; i < vidx.size(); ++i) {
      const ProjPoint p = sp.point(vidx[i]);
      const Flat t = tangent_hyperplane(h, p);
      const auto c = classify_hyperplane_section(h, t, false);
      if (c.tag != HyperplaneSectionTag::TangentAt || *c.point != p) {
        ok = false;
        if (witness.empty()) witness = point_text(p.coords);
      }
      images.insert(t);
    }
    suite.holds("tangent_map_bijective", std::to_string(v.size()) + " distinct tangent hyperplanes",
                std::to_string(images.size()) + " distinct", ok && images.size() == v.size() &&
                                                                 images.size() == hyper.by_tag["tangent"],
                witness);
  }

  // Every non-tangent Σ1 and any Σ share at least q^3+1 points of V.
  {
    std::vector<std::size_t> nontangent;
    for (std::size_t i = 0; i < tangent_flag.size(); ++i) {
      if (!tangent_flag[i]) nontangent.push_back(i);
    }
    std::vector<std::uint64_t> mins(nontangent.size(), ~0ull);
    std::vector<std::uint64_t> arg(nontangent.size(), 0);
    parallel_chunks(nontangent.size(), threads, [&](std::uint64_t b, std::uint64_t e) {
      for (std::uint64_t a = b; a < e; ++a) {
        const std::uint64_t* x = &bits[nontangent[a] * words];
        for (std::size_t j = 0; j < hs.count(); ++j) {
          const std::uint64_t* y = &bits[j * words];
          std::uint64_t c = 0;
          for (std::size_t w = 0; w < words; ++w) c += static_cast<std::uint64_t>(std::popcount(x[w] & y[w]));
          if (c < mins[a]) {
            mins[a] = c;
            arg[a] = j;
          }
        }
      }
    });
    const auto it = std::min_element(mins.begin(), mins.end());
    const std::size_t a = static_cast<std::size_t>(it - mins.begin());
    suite.equal("hyperplane_pair_minimum", q3 + 1, *it,
                flat_text(hs.unrank(nontangent[a])) + " & " + flat_text(hs.unrank(arg[a])));
  }

  const auto gens = generators(v);
  suite.equal("generators_total", (q5 + 1) * (q3 + 1), gens.size());
  {
    std::string witness;
    std::uint64_t bad = 0;
    for (PointIndex pi : vidx) {
      const ProjPoint p = sp.point(pi);
      const auto n = generators_through(h, p).size();
      if (n != q3 + 1 && bad++ == 0) witness = point_text(p.coords) + " has " + std::to_string(n);
    }
    suite.equal("generators_through_each_point", 0, bad, witness);
  }

  // All planes.
  const Tally planes = scan_flats(fp, 4, 2, threads, [&](const Flat& pl, Tally& t) {
    try {
      const auto c = classify_plane_section(h, pl);
      ++t.by_tag[to_string(c.tag)];
      const std::uint64_t want = c.tag == PlaneSectionTag::NonDegenerateCurve ? q3 + 1
                                 : c.tag == PlaneSectionTag::ConcurrentLines  ? q3 + q2 + 1
                                                                              : q2 + 1;
      if (c.count != want) t.fail(flat_text(pl) + " count " + std::to_string(c.count));
    } catch (const Error& err) {
      t.fail(flat_text(pl) + ": " + err.what());
    }
  });
  suite.holds("plane_sections", "every count in {q^3+1, q^3+q^2+1, q^2+1}", tally_text(planes), planes.bad == 0,
              planes.witness);
  {
    // Each generator lies in s^2+s+1 planes; a concurrent-lines plane holds q+1.
    const std::uint64_t conc = planes.by_tag.count("ConcurrentLines") ? planes.by_tag.at("ConcurrentLines") : 0;
    const std::uint64_t single = planes.by_tag.count("SingleLine") ? planes.by_tag.at("SingleLine") : 0;
    suite.equal("plane_generator_incidences", gens.size() * (s * s + s + 1), conc * (q + 1) + single);
    suite.equal("planes_inside_variety", 0, planes.bad);
  }

  // All lines.
  const Tally lines = scan_flats(fp, 4, 1, threads, [&](const Flat& l, Tally& t) {
    const auto c = classify_line(h, l);
    ++t.by_tag[to_string(c.tag)];
    t.sum += c.meeting_count;
    const std::uint64_t want = c.tag == LineTag::Tangent ? 1 : c.tag == LineTag::Secant ? q + 1 : q2 + 1;
    if (c.meeting_count != want) t.fail(flat_text(l) + " meets in " + std::to_string(c.meeting_count));
  });
  suite.holds("line_meets", "every count in {1, q+1, q^2+1}", tally_text(lines), lines.bad == 0, lines.witness);
  suite.equal("lines_generator_total", gens.size(), lines.by_tag.count("Generator") ? lines.by_tag.at("Generator") : 0);
  suite.equal("line_point_incidences", v.size() * (s * s * s + s * s + s + 1), lines.sum);

  // Books.
  {
    FlatSpace ls(fp, 4, 1);
    std::uint64_t bad = 0;
    std::string witness;
    const std::uint64_t k = std::min<std::uint64_t>(ls.count(), 40);
    for (std::uint64_t i = 0; i < k; ++i) {
      const Flat l = ls.unrank(i * (ls.count() / k));
      const Flat hp = flats_through(fp, l, 3).front();
      const auto book = book_of_planes(fp, l).size();
      const auto inner = book_in_hyperplane(fp, l, hp).size();
      const auto through = hyperplanes_through_plane(fp, flats_through(fp, l, 2).front()).size();
      if ((book != s * s + s + 1 || inner != s + 1 || through != s + 1) && bad++ == 0) witness = flat_text(l);
    }
    suite.holds("book_sizes", "|B(l)| = " + std::to_string(s * s + s + 1) + ", |B_S(l)| = " + std::to_string(s + 1),
                std::to_string(k) + " lines checked", bad == 0, witness);
  }

  // Lines through P, and the tangent-line counts.
  {
    const std::size_t k = q <= 2 ? vidx.size() : 24;
    std::uint64_t bad_lines = 0, bad_books = 0, tangent_lines = 0;
    std::string wl, wb;
    for (std::size_t i = 0; i < k; ++i) {
      const ProjPoint p = sp.point(vidx[i]);
      const Flat tp = tangent_hyperplane(h, p);
      for (const Flat& l : lines_through(f, p, 4)) {
        const auto c = classify_line(h, l);
        const bool inside = contains(f, tp, l);
        const bool ok = inside ? (c.meeting_count == 1 || c.meeting_count == s + 1) : c.meeting_count == q + 1;
        if (!ok && bad_lines++ == 0) wl = flat_text(l);
        if (!inside || c.tag != LineTag::Tangent) continue;
        ++tangent_lines;
        std::uint64_t in_tp = 0;
        bool clean = true;
        for (const Flat& pl : book_of_planes(fp, l)) {
          if (contains(f, tp, pl)) {
            ++in_tp;
          } else if (classify_plane_section(h, pl).tag != PlaneSectionTag::NonDegenerateCurve) {
            clean = false;
          }
        }
        if ((in_tp != s + 1 || !clean) && bad_books++ == 0) wb = flat_text(l);
      }
    }
    suite.equal("lines_through_point", 0, bad_lines, wl);
    suite.equal("tangent_line_count", k * (s * s + s + 1 - (q3 + 1)), tangent_lines);
    suite.equal("tangent_line_books", 0, bad_books, wb);
  }

  normal_form_checks(suite, h, seed, threads, "nondegenerate");
  {
    std::vector<Elem> diag{1, 1, 1, 0, 0};
    normal_form_checks(suite, HermitianForm::diagonal(fp, diag), seed + 1, threads, "rank3");
  }

  {
    const AuditContext ctx(h, static_cast<int>(q) + 1, threads);
    const auto dc = incidence_double_count(hermitian_poly(h), ctx);
    suite.equal("double_count_variety_lhs", v.size() * (q3 + 1), dc.lhs);
    suite.equal("double_count_variety_rhs", dc.lhs, dc.rhs);
    const AuditContext lin(h, 1, threads);
    std::vector<Elem> x0{1, 0, 0, 0, 0};
    const auto dl = incidence_double_count(HomogeneousPoly::linear(fp, x0), lin);
    suite.equal("double_count_hyperplane_lhs", (q5 + q3 + q2 + 1) * (q3 + 1), dl.lhs);
    suite.equal("double_count_hyperplane_rhs", dl.lhs, dl.rhs);
  }

  small_variety_checks(suite, fp, q, threads, true);
}

void sub_suite(Suite& suite, const FieldPtr& fp, unsigned q, unsigned threads, std::uint64_t seed) {
  const Field& f = *fp;
  const std::uint64_t q2 = q * q, q3 = q2 * q, q5 = q3 * q2;
  const std::uint64_t s = q2;
  const HermitianForm h = HermitianForm::identity(fp, 4);
  const HermitianVariety v(h, threads);
  const PointSpace& sp = v.space();
  suite.equal("variety_points", (q5 + 1) * (q2 + 1), v.size());

  const std::size_t k = 4;
  for (std::size_t i = 0; i < k; ++i) {
    const ProjPoint p = sp.point(v.indices()[i * (v.size() / k)]);
    const std::string tag = "_" + std::to_string(i);
    const auto c = classify_hyperplane_section(h, tangent_hyperplane(h, p), true);
    suite.holds("tangent_section" + tag, "TangentAt P with " + std::to_string(q5 + q2 + 1) + " points",
                std::to_string(c.count), c.tag == HyperplaneSectionTag::TangentAt && *c.point == p &&
                                             c.count == q5 + q2 + 1,
                point_text(p.coords));
    suite.equal("generators_through_point" + tag, q3 + 1, generators_through(h, p).size(), point_text(p.coords));
  }
  {
    FlatSpace hs(fp, 4, 3);
    std::size_t found = 0;
    std::uint64_t bad = 0;
    std::string witness;
    for (std::uint64_t i = 0; i < hs.count() && found < k; ++i) {
      const Flat hp = hs.unrank(i);
      if (is_tangent_hyperplane(h, hp)) continue;
      ++found;
      const auto n = section_count(h, hp);
      if (n != q5 + q3 + q2 + 1 && bad++ == 0) witness = flat_text(hp);
    }
    suite.holds("non_tangent_sections", std::to_string(q5 + q3 + q2 + 1) + " points each",
                std::to_string(found) + " hyperplanes checked", bad == 0 && found == k, witness);
  }
  {
    FlatSpace ls(fp, 4, 1);
    std::uint64_t bad = 0;
    std::string witness;
    for (std::size_t i = 0; i < k; ++i) {
      const Flat l = ls.unrank(i * (ls.count() / k));
      const Flat hp = flats_through(fp, l, 3).front();
      const auto book = book_of_planes(fp, l).size();
      const auto inner = book_in_hyperplane(fp, l, hp).size();
      const auto through = hyperplanes_through_plane(fp, flats_through(fp, l, 2).front()).size();
      if ((book != s * s + s + 1 || inner != s + 1 || through != s + 1) && bad++ == 0) witness = flat_text(l);
    }
    suite.holds("book_sizes", "|B(l)| = " + std::to_string(s * s + s + 1) + ", |B_S(l)| = " + std::to_string(s + 1),
                std::to_string(k) + " lines checked", bad == 0, witness);
  }
  {
    const ProjPoint p = sp.point(v.indices().front());
    const Flat tp = tangent_hyperplane(h, p);
    std::uint64_t bad = 0;
    std::string witness;
    for (const Flat& l : lines_through(f, p, 4)) {
      const auto n = classify_line(h, l).meeting_count;
      const bool ok = contains(f, tp, l) ? (n == 1 || n == s + 1) : n == q + 1;
      if (!ok && bad++ == 0) witness = flat_text(l);
    }
    suite.equal("lines_through_point", 0, bad, witness);
  }
  normal_form_checks(suite, h, seed, threads, "nondegenerate");
  small_variety_checks(suite, fp, q, threads, false);
}

}  // namespace

IdentityReport verify_identity_suite(unsigned q, unsigned threads, std::uint64_t seed) {
  if (q < 2 || q > 9) throw Error(Errc::InvalidArgument, "identity suites cover 2 <= q <= 9");
  const FieldPtr fp = Field::for_q(q);
  threads = std::max(1u, threads);
  IdentityReport rep;
  rep.q = q;
  rep.tier = q <= 3 ? "exhaustive" : "sub-suite";
  Suite suite(rep);
  if (q <= 3) exhaustive_suite(suite, fp, q, threads, seed);
  else sub_suite(suite, fp, q, threads, seed);
  return rep;
}

IdentityReport verify_bound_suite(unsigned q, unsigned threads) {
  if (q < 2 || q > 9) throw Error(Errc::InvalidArgument, "bound suites cover 2 <= q <= 9");
  const FieldPtr fp = Field::for_q(q);
  threads = std::max(1u, threads);
  IdentityReport rep;
  rep.q = q;
  rep.tier = q <= 3 ? "exhaustive" : "sub-suite";
  Suite suite(rep);
  const HermitianVariety v3(HermitianForm::identity(fp, 4), threads);
  const HermitianVariety v2(HermitianForm::identity(fp, 3), threads);
  const std::uint64_t s = std::uint64_t{q} * q;
  const int dmax = q <= 3 ? static_cast<int>(q) : 3;

  auto audited = [&](const std::string& name, const Construction& c, std::uint64_t want, bool double_count) {
    suite.equal(name + "_count", want, c.cert.verified_count);
    if (!c.form) return;
    const AuditContext ctx(*c.form, c.poly.degree(), threads);
    const AuditReport r = audit(c.poly, ctx);
    std::string why;
    for (const auto& v : r.violations) why += (why.empty() ? "" : "; ") + v;
    suite.holds(name + "_audit", "no violations", std::to_string(r.bounds.size()) + " bounds checked",
                r.violations.empty() && r.intersection_count == want, why);
    if (double_count && ctx.m() == 4 && ctx.exhaustive()) {
      const auto dc = incidence_double_count(c.poly, ctx);
      suite.equal(name + "_double_count", dc.lhs, dc.rhs);
    }
  };

  for (int d = 2; d <= dmax; ++d) {
    const std::string sd = "_d" + std::to_string(d);
    const auto e = edoukou_extremal(v3, d, threads);
    audited("edoukou" + sd, e, edoukou_count(q, static_cast<std::uint64_t>(d)), true);
    suite.equal("edoukou_meets_conjecture" + sd,
                static_cast<std::uint64_t>(bound_value(BoundName::EdoukouConjecture, {q, static_cast<std::uint64_t>(d)})),
                e.cert.verified_count);
    audited("sorensen" + sd, sorensen_extremal(v2, d, threads), sorensen_count(q, static_cast<std::uint64_t>(d)), false);
    audited("degenerate" + sd, degenerate_extremal(q, d), degenerate_count(q, static_cast<std::uint64_t>(d)), false);
    for (int m : {3, 4}) {
      const auto c = serre_extremal(q, d, m, threads);
      BoundParams bp{q, static_cast<std::uint64_t>(d), m};
      suite.equal("serre_m" + std::to_string(m) + sd, static_cast<std::uint64_t>(bound_value(BoundName::Serre, bp)),
                  c.cert.verified_count);
      suite.equal("serre_formula_m" + std::to_string(m) + sd, serre_count(s, static_cast<std::uint64_t>(d), m),
                  c.cert.verified_count);
    }
  }
  for (QuadricTag t : {QuadricTag::TypeI, QuadricTag::TypeII, QuadricTag::TypeIII}) {
    const auto c = quadric_of_type(t, v3, threads);
    const std::string name = std::string("quadric_") + to_string(t);
    audited(name, c, quadric_count(t, q), true);
    if (q <= 5) {
      const auto cls = classify_quadric(c.poly, *c.form);
      suite.holds(name + "_classified", to_string(t), to_string(cls.tag), cls.tag == t);
    }
  }
  return rep;
}

}  // namespace hvlab
