// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "hvlab/serialize.hpp"
#include "oracle.hpp"

using namespace hvlab;

namespace {

struct Criterion {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  template <class A, class B>
  void equal(const A& got, const B& want, const std::string& what) {
    if (!(got == want)) {
      std::ostringstream os;
      os << what << ": got " << got << ", want " << want;
      failures.push_back(os.str());
    }
  }
};

const IdentityCheck* find_check(const IdentityReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

void expect_checks(Criterion& c, const IdentityReport& r, const std::vector<std::pair<std::string, std::string>>& want) {
  for (const auto& ch : r.checks) c.expect(ch.ok, "identity " + ch.name + " failed: " + ch.observed + " vs " + ch.expected);
  for (const auto& [name, observed] : want) {
    const IdentityCheck* ch = find_check(r, name);
    if (!ch) {
      c.failures.push_back("missing identity " + name);
      continue;
    }
    c.equal(ch->observed, observed, name);
  }
}

std::uint64_t brute(unsigned q, const HomogeneousPoly& f, std::size_t r) {
  const auto [p, e] = prime_power(q);
  const oracle::GF g(p, 2 * e);
  const oracle::Tables t(g);
  std::vector<oracle::Term> terms;
  for (const auto& [m, c] : f.terms()) terms.push_back({{m.begin(), m.end()}, c});
  return oracle::count_common(t, q, terms, f.nvars() - 1, r);
}

void expect_sample(Criterion& c, const SampleConfig& cfg, std::uint64_t ceiling, const std::string& label) {
  const SampleReport r = sample_hypersurfaces(cfg);
  c.equal(r.samples, cfg.n, label + " samples");
  c.expect(r.max_count <= ceiling, label + ": max " + std::to_string(r.max_count) + " exceeds " + std::to_string(ceiling));
  c.expect(r.violations.empty(), label + ": " + std::to_string(r.violations.size()) + " violations");
  c.equal(r.double_count_failures, 0u, label + " double count failures");
}

HermitianVariety fermat(unsigned q, int m) { return HermitianVariety(HermitianForm::identity(Field::for_q(q), m)); }

// 1. Identity suite at q = 2.
void identities_q2(Criterion& c) {
  const auto r = verify_identity_suite(2);
  c.equal(r.tier, std::string("exhaustive"), "tier");
  expect_checks(c, r,
                {{"variety_points", "165"},
                 {"tangent_hyperplanes", "165"},
                 {"hyperplane_sections", "non_tangent: 176, tangent: 165"},
                 {"surface_points", "45"},
                 {"rank3_surface_points", "37"},
                 {"plane_sections", "ConcurrentLines: 1980, NonDegenerateCurve: 3520, SingleLine: 297"},
                 {"line_meets", "Generator: 297, Secant: 3520, Tangent: 1980"},
                 {"generators_total", "297"},
                 {"generators_through_each_point", "0"},
                 {"hyperplane_pair_minimum", "9"}});
  // Book sizes, checked directly on a few lines.
  const auto f = Field::for_q(2);
  const Flat line = FlatSpace(f, 4, 1).unrank(17);
  c.equal(book_of_planes(f, line).size(), 21u, "|B(l)|");
  const Flat sigma = hyperplane_from_coeffs(*f, std::vector<Elem>{0, 0, 0, 0, 1});
  const Flat inside = FlatSpace(f, 4, 1).unrank(0);
  c.expect(contains(*f, sigma, inside), "line 0 lies in x_4 = 0");
  c.equal(book_in_hyperplane(f, inside, sigma).size(), 5u, "|B_S(l)|");
}

// 2. Identity suite at q = 3.
void identities_q3(Criterion& c) {
  const auto r = verify_identity_suite(3);
  expect_checks(c, r,
                {{"variety_points", std::to_string((243 + 1) * (9 + 1))},
                 {"generators_total", "6832"},
                 {"surface_points", "280"},
                 {"rank3_surface_points", "253"}});
}

// 3. Quadrics: exact constructions, sampled ceiling.
void quadrics(Criterion& c) {
  const std::pair<QuadricTag, const char*> tags[] = {{QuadricTag::TypeI, "I"}, {QuadricTag::TypeII, "II"}, {QuadricTag::TypeIII, "III"}};
  const std::map<unsigned, std::vector<std::uint64_t>> want{{2, {81, 77, 73}}, {3, {532, 523, 505}}};
  for (const auto& [q, counts] : want) {
    const auto v = fermat(q, 4);
    for (std::size_t i = 0; i < 3; ++i) {
      const auto built = quadric_of_type(tags[i].first, v);
      const std::string label = "Type " + std::string(tags[i].second) + " at q = " + std::to_string(q);
      c.equal(built.cert.verified_count, counts[i], label);
      c.equal(quadric_count(tags[i].first, q), counts[i], label + " closed form");
      c.equal(std::string(to_string(classify_quadric(built.poly, *built.form).tag)), std::string(to_string(tags[i].first)), label + " classified");
      if (q == 2) c.equal(brute(q, built.poly, 5), counts[i], label + " brute force");
    }
  }
  for (unsigned q : {2u, 3u}) {
    SampleConfig cfg;
    cfg.q = q;
    cfg.d = 2;
    cfg.n = 1000;
    cfg.seed = 20240601;
    const std::uint64_t q2 = q * q, q3 = q2 * q, q5 = q3 * q2;
    expect_sample(c, cfg, 2 * q5 + q3 + 2 * q2 + 1, "quadrics q = " + std::to_string(q));
  }
}

// 4. Surfaces against V_2.
void sorensen(Criterion& c) {
  const auto a = sorensen_extremal(fermat(2, 3), 2);
  const auto b = sorensen_extremal(fermat(3, 3), 3);
  c.equal(a.cert.verified_count, 23u, "sorensen(2,2)");
  c.equal(b.cert.verified_count, 103u, "sorensen(3,3)");
  c.equal(brute(2, a.poly, 4), 23u, "sorensen(2,2) brute force");
  c.equal(brute(3, b.poly, 4), 103u, "sorensen(3,3) brute force");
  SampleConfig cfg;
  cfg.q = 2;
  cfg.d = 2;
  cfg.m = 3;
  cfg.n = 1000;
  cfg.seed = 7;
  expect_sample(c, cfg, 23, "surfaces q = 2, d = 2");
}

// 5. Surfaces against the rank-3 cone.
void degenerate(Criterion& c) {
  const auto a = degenerate_extremal(2, 2);
  const auto b = degenerate_extremal(3, 3);
  c.equal(a.cert.verified_count, 25u, "degenerate(2,2)");
  c.equal(b.cert.verified_count, 109u, "degenerate(3,3)");
  c.equal(brute(2, a.poly, 3), 25u, "degenerate(2,2) brute force");
  c.equal(brute(3, b.poly, 3), 109u, "degenerate(3,3) brute force");
  for (auto [q, d] : {std::pair{2u, 1}, {2u, 2}, {3u, 2}, {3u, 3}}) {
    SampleConfig cfg;
    cfg.q = q;
    cfg.d = d;
    cfg.m = 3;
    cfg.form = "rank3";
    cfg.n = 1000;
    cfg.seed = 11;
    const std::uint64_t dd = static_cast<std::uint64_t>(d);
    expect_sample(c, cfg, dd * (q + 1) * q * q + 1, "rank-3 q = " + std::to_string(q) + ", d = " + std::to_string(d));
  }
}

// 6. The cubic extremal at q = 7 and the sampling campaign.
void cubic_campaign(Criterion& c) {
  const auto e = edoukou_extremal(fermat(7, 4), 3);
  const std::uint64_t want = 3 * (16807 + 49) + 343 + 1;
  c.equal(want, 50912u, "closed form");
  c.equal(e.cert.verified_count, want, "edoukou(7,3)");
  c.equal(brute(7, e.poly, 5), want, "edoukou(7,3) over all of P^4(F_49)");

  SampleConfig cfg;
  cfg.d = 3;
  cfg.seed = 1;
  cfg.q = 3;
  cfg.n = 10000;
  expect_sample(c, cfg, 3 * (243 + 9) + 27 + 1, "cubics q = 3");
  cfg.q = 7;
  cfg.n = 1000;
  expect_sample(c, cfg, want, "cubics q = 7");
}

// 7. Incidence double counts.
void double_counts(Criterion& c) {
  for (unsigned q : {2u, 3u}) {
    const auto v = fermat(q, 4);
    // Every point of V_3 lies on q^3+1 generators.
    const std::uint64_t per_point = q * q * q + 1;
    std::vector<Construction> built;
    for (int d = 2; d <= static_cast<int>(q); ++d) built.push_back(edoukou_extremal(v, d));
    for (auto t : {QuadricTag::TypeI, QuadricTag::TypeII, QuadricTag::TypeIII}) built.push_back(quadric_of_type(t, v));
    for (int d = 1; d <= static_cast<int>(q); ++d) built.push_back(serre_extremal(q, d, 4));
    for (int deg = 1; deg <= static_cast<int>(q); ++deg) {
      const AuditContext ctx(v.form(), deg);
      if (deg == 1) {
        const auto mask = std::vector<std::uint8_t>(ctx.evaluator().size(), 1);
        const auto dc = incidence_double_count(mask, ctx);
        c.equal(dc.lhs, dc.rhs, "variety q = " + std::to_string(q));
        c.equal(dc.lhs, v.size() * per_point, "variety incidences q = " + std::to_string(q));
      }
      for (const auto& b : built) {
        if (b.poly.degree() != deg) continue;
        const auto dc = incidence_double_count(b.poly, ctx);
        const std::string label = to_string(b.cert.kind) + std::string(" q = ") + std::to_string(q) + " d = " + std::to_string(deg);
        c.equal(dc.lhs, dc.rhs, label);
        c.equal(dc.lhs, count_intersection(b.poly, v.form()) * per_point, label + " per point");
      }
    }
    for (int d = 1; d <= static_cast<int>(q); ++d) {
      SampleConfig cfg;
      cfg.q = q;
      cfg.d = d;
      cfg.n = q == 2 ? 1000 : 300;
      cfg.seed = 99;
      const SampleReport r = sample_hypersurfaces(cfg);
      const std::string label = "samples q = " + std::to_string(q) + " d = " + std::to_string(d);
      c.equal(r.double_counts_checked, cfg.n, label + " checked");
      c.equal(r.double_count_failures, 0u, label + " failures");
    }
  }
}

// 8. Plane cubics over F_9.
void plane_cubics(Criterion& c) {
  const auto f = Field::for_q(3);
  const auto big = Field::create(3, 6);
  const FieldEmbedding ext(f, big);
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<Elem> pick(0, big->size() - 1);
  int built = 0;
  while (built < 100) {
    std::vector<Elem> l{1, pick(rng), pick(rng)};
    // Skip forms that are defined over a proper subfield of the extension.
    bool sub = true;
    for (Elem a : l) sub = sub && ext.preimage(a) >= 0;
    if (sub) continue;
    const auto cubic = conjugate_line_product(f, ext, l);
    ++built;
    const auto n = zero_set(cubic).size();
    c.expect(n <= 1, "conjugate-line cubic with " + std::to_string(n) + " points");
    c.expect(classify_plane_cubic(cubic).tag != PlaneCubicTag::AbsolutelyIrreducible, "conjugate-line cubic classified absolutely irreducible");
  }

  const auto monos = all_monomials(3, 3);
  std::uniform_int_distribution<Elem> coeff(0, f->size() - 1);
  int found = 0, tried = 0;
  while (found < 100 && tried < 10000) {
    ++tried;
    HomogeneousPoly g(f, 3, 3);
    for (const auto& m : monos) g.add_term(m, coeff(rng));
    if (g.is_zero() || classify_plane_cubic(g).tag != PlaneCubicTag::AbsolutelyIrreducible) continue;
    ++found;
    const auto n = static_cast<std::int64_t>(zero_set(g).size());
    c.expect(std::llabs(n - 10) <= 6, "absolutely irreducible cubic with " + std::to_string(n) + " points");
  }
  c.equal(found, 100, "absolutely irreducible cubics found");
}

// 9. Byte-identical reports across reruns and thread counts.
void determinism(Criterion& c) {
  const std::string dir = std::filesystem::temp_directory_path() / "hvlab_acceptance";
  std::filesystem::create_directories(dir);
  const std::string cubic = dir + "/cubic.json";
  const std::vector<std::vector<std::string>> cmds{
      {"construct", "edoukou", "--q", "3", "--d", "3"},
      {"construct", "quadric", "--q", "3", "--kind", "II"},
      {"construct", "serre", "--q", "2", "--d", "2", "--m", "3"},
      {"count", "--in", cubic},
      {"count", "--in", cubic, "--all"},
      {"audit", "--in", cubic, "--double-count"},
      {"classify", "plane", "--q", "3", "--index", "1234"},
      {"classify", "hyperplane", "--q", "2", "--index", "7"},
      {"verify", "identities", "--q", "2"},
      {"verify", "bounds", "--q", "2"},
      {"sample", "--q", "3", "--d", "3", "--n", "200", "--seed", "5"},
      {"sample", "--q", "2", "--d", "2", "--m", "3", "--variety", "rank3", "--n", "200", "--seed", "5"},
  };
  auto run = [&](std::vector<std::string> args, const std::string& threads) {
    args.insert(args.end(), {"--threads", threads});
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    Json j = Json::parse(out.str());
    j.erase("runtime");
    return std::pair{code, j.dump()};
  };
  {
    std::ostringstream out, err;
    c.equal(cli::run({"construct", "edoukou", "--q", "3", "--d", "3", "--out", cubic}, out, err), 0, "construct to file");
  }
  for (const auto& cmd : cmds) {
    std::string label;
    for (const auto& a : cmd) label += (label.empty() ? "" : " ") + a;
    const auto a = run(cmd, "1"), b = run(cmd, "1"), d = run(cmd, "4");
    c.equal(a.first, 0, label + " exit");
    c.expect(a == b, label + ": rerun differs");
    c.expect(a == d, label + ": thread count changes the report");
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria{
      {"identity suite q = 2", identities_q2},
      {"identity suite q = 3", identities_q3},
      {"quadric constructions and sampled quadrics", quadrics},
      {"surface extremals and sampled surfaces at q = 2", sorensen},
      {"degenerate surface extremals and rank-3 sampling", degenerate},
      {"cubic extremal at q = 7 and cubic sampling campaign", cubic_campaign},
      {"incidence double counts", double_counts},
      {"plane cubic point counts", plane_cubics},
      {"determinism across reruns and thread counts", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Criterion c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = c.failures.empty();
    failed += !ok;
    std::printf("%s criterion %zu: %s (%.1fs)\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs);
    for (const auto& f : c.failures) std::printf("    %s\n", f.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
