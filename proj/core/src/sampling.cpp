#include <limits>
#include <random>

#include "audit_internal.hpp"
#include "hvlab/constructions.hpp"
#include "hvlab/parallel.hpp"

namespace hvlab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

struct Outcome {
  std::uint64_t count = 0;
  std::uint64_t redraws = 0;
  std::vector<Elem> coeffs;
  std::vector<std::string> applied;
  std::vector<std::string> violations;
  std::vector<std::string> findings;
  std::string quadric;
  bool dc_checked = false;
  bool dc_ok = true;
};

}  // namespace

std::vector<Elem> sample_coefficients(const Field& f, std::size_t nmonos, std::uint64_t seed, std::uint64_t i,
                                      std::uint64_t* redraws) {
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(i)));
  const std::uint64_t s = f.size();
  const std::uint64_t limit = (std::numeric_limits<std::uint64_t>::max() / s) * s;
  auto draw = [&] {
    std::uint64_t x;
    do x = rng();
    while (x >= limit);
    return static_cast<Elem>(x % s);
  };
  std::vector<Elem> out(nmonos);
  for (;;) {
    bool any = false;
    for (auto& c : out) {
      c = draw();
      any = any || c != 0;
    }
    if (any) return out;
    if (redraws) ++*redraws;
  }
}

SampleReport sample_hypersurfaces(const SampleConfig& cfg) {
  const FieldPtr fp = Field::for_q(cfg.q);
  if (cfg.d < 1 || static_cast<unsigned>(cfg.d) > cfg.q) throw Error(Errc::InvalidArgument, "sampling needs 1 <= d <= q");
  if (cfg.m != 3 && cfg.m != 4) throw Error(Errc::InvalidArgument, "sampling covers m = 3 and m = 4");
  const bool rank3 = cfg.form == "rank3";
  if (!rank3 && cfg.form != "nondegenerate") throw Error(Errc::InvalidArgument, "form must be nondegenerate or rank3");
  if (rank3 && cfg.m != 3) throw Error(Errc::InvalidArgument, "the rank-3 form is the cone surface in P^3");

  SampleReport rep;
  rep.config = cfg;
  const std::uint64_t q = cfg.q;
  const auto d = static_cast<std::uint64_t>(cfg.d);
  const BoundName ref = cfg.m == 4 ? BoundName::EdoukouConjecture : rank3 ? BoundName::DegenerateSurface : BoundName::Sorensen;
  rep.reference_name = to_string(ref);
  rep.reference_bound = bound_value(ref, {q, d, cfg.m});
  rep.monomials = all_monomials(cfg.m + 1, cfg.d);
  if (cfg.n == 0) {
    rep.mode = "empty";
    return rep;
  }

  const HermitianForm h = rank3 ? rank3_surface(cfg.q) : HermitianForm::identity(fp, cfg.m);
  const unsigned threads = std::max(1u, cfg.threads);
  const AuditContext ctx(h, cfg.d, threads);
  rep.mode = ctx.exhaustive() ? "exhaustive" : "sampled";
  const bool quadrics = cfg.m == 4 && cfg.d == 2 && q <= 3;

  std::vector<Outcome> out(cfg.n);
  parallel_chunks(cfg.n, threads, [&](std::uint64_t b, std::uint64_t e) {
    for (std::uint64_t i = b; i < e; ++i) {
      Outcome& o = out[i];
      o.coeffs = sample_coefficients(*fp, rep.monomials.size(), cfg.seed, i, &o.redraws);
      const auto mask = ctx.zero_mask_of(o.coeffs);
      std::optional<HomogeneousPoly> poly;
      auto get = [&]() -> const HomogeneousPoly& {
        if (!poly) poly = detail::poly_from_coeffs(fp, rep.monomials, o.coeffs);
        return *poly;
      };
      const AuditReport r = detail::audit_mask(mask, ctx, get, quadrics);
      o.count = r.intersection_count;
      for (const auto& c : r.bounds) o.applied.push_back(to_string(c.name));
      o.violations = r.violations;
      o.findings = r.findings;
      if (r.quadric) o.quadric = to_string(r.quadric->tag);
      if (ctx.exhaustive()) {
        const auto dc = incidence_double_count(mask, ctx);
        o.dc_checked = true;
        o.dc_ok = dc.lhs == dc.rhs && dc.lhs == r.intersection_count * (q * q * q + 1);
        if (!o.dc_ok) {
          o.violations.push_back("incidence double count: " + std::to_string(dc.lhs) + " vs " + std::to_string(dc.rhs));
        }
      }
    }
  });

  const auto width = static_cast<std::int64_t>(q * q * q);
  for (std::uint64_t i = 0; i < cfg.n; ++i) {
    Outcome& o = out[i];
    ++rep.samples;
    rep.rejected_zero += o.redraws;
    if (!rep.argmax || o.count > rep.max_count) {
      rep.max_count = o.count;
      rep.argmax = i;
      rep.argmax_coeffs = o.coeffs;
    }
    const auto margin = rep.reference_bound - static_cast<std::int64_t>(o.count);
    ++rep.margin_histogram[floor_div(margin, width)];
    if (margin == 0) ++rep.attaining_reference;
    for (const auto& a : o.applied) ++rep.bound_applications[a];
    if (!o.quadric.empty()) ++rep.quadric_types[o.quadric];
    if (o.dc_checked) {
      ++rep.double_counts_checked;
      rep.double_count_failures += !o.dc_ok;
    }
    for (const auto& v : o.violations) rep.violations.push_back({i, o.count, v, rep.reference_bound, o.coeffs});
    for (const auto& v : o.findings) rep.findings.push_back({i, o.count, v, rep.reference_bound, o.coeffs});
  }
  return rep;
}

}  // namespace hvlab
