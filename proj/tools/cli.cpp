#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hvlab/audit.hpp"
#include "hvlab/constructions.hpp"
#include "hvlab/parallel.hpp"
#include "hvlab/serialize.hpp"

namespace hvlab::cli {

namespace {

struct RunConfig {
  std::string command;
  std::string subcommand;
  unsigned q = 0;
  int d = 0;
  int m = 4;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  std::string in;
  std::string out;
  std::string form;
  std::string format = "json";
  std::string kind;
  std::string variety = "nondegenerate";
  std::int64_t index = -1;
  bool all = false;
  bool double_count = false;
  unsigned threads = 0;
};

/// Bad flags or inputs the parser could not catch.
struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Outcome {
  Json result;
  int code = kOk;
};

// Threads are left out on purpose: reports must not depend on them.
Json config_json(const RunConfig& c) {
  return Json{{"command", c.command}, {"subcommand", c.subcommand}, {"q", c.q},           {"d", c.d},
              {"m", c.m},             {"seed", c.seed},             {"samples", c.samples}, {"in", c.in},
              {"out", c.out},         {"form", c.form},             {"format", c.format},   {"kind", c.kind},
              {"variety", c.variety}, {"index", c.index},           {"all", c.all},         {"double_count", c.double_count}};
}

Json read_json(const std::string& path) {
  if (path.empty()) throw Usage("--in is required");
  std::ifstream in(path);
  if (!in) throw Usage("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(Errc::ParseError, path + ": " + e.what());
  }
}

// Inputs may be a bare object or a report from `construct` wrapping it.
const Json* find_key(const Json& j, const char* key) {
  if (j.is_object() && j.contains("result") && j["result"].is_object() && j["result"].contains(key))
    return &j["result"][key];
  if (j.is_object() && j.contains(key)) return &j[key];
  return nullptr;
}

HomogeneousPoly load_poly(const Json& j) {
  const Json* p = find_key(j, "poly");
  return poly_from_json(p ? *p : j);
}

void check_q(const RunConfig& cfg, const Field& f) {
  if (cfg.q && f.q() != cfg.q)
    throw Usage("input lives over F_" + std::to_string(f.size()) + ", not q = " + std::to_string(cfg.q));
}

HermitianForm choose_form(const RunConfig& cfg, const Json& input, const FieldPtr& f, int m) {
  if (!cfg.form.empty()) {
    const Json j = read_json(cfg.form);
    const Json* fj = find_key(j, "form");
    return form_from_json(fj && !fj->is_null() ? *fj : j);
  }
  if (const Json* fj = find_key(input, "form"); fj && !fj->is_null()) return form_from_json(*fj);
  return HermitianForm::identity(f, m);
}

void need_q(const RunConfig& cfg) {
  if (!cfg.q) throw Usage("--q is required");
}

void need_d(const RunConfig& cfg) {
  if (cfg.d < 1) throw Usage("--d is required");
}

Outcome do_construct(const RunConfig& cfg, unsigned threads) {
  need_q(cfg);
  const FieldPtr f = Field::for_q(cfg.q);
  const std::string& what = cfg.subcommand;
  auto built = [&]() -> Construction {
    if (what == "quadric") {
      const QuadricTag t = cfg.kind == "I" ? QuadricTag::TypeI : cfg.kind == "II" ? QuadricTag::TypeII
                         : cfg.kind == "III" ? QuadricTag::TypeIII
                                             : throw Usage("--kind must be I, II or III");
      return quadric_of_type(t, HermitianVariety(HermitianForm::identity(f, 4), threads), threads);
    }
    need_d(cfg);
    if (what == "edoukou") return edoukou_extremal(HermitianVariety(HermitianForm::identity(f, 4), threads), cfg.d, threads);
    if (what == "sorensen") return sorensen_extremal(HermitianVariety(HermitianForm::identity(f, 3), threads), cfg.d, threads);
    if (what == "degenerate") return degenerate_extremal(cfg.q, cfg.d);
    return serre_extremal(cfg.q, cfg.d, cfg.m, threads);
  }();
  Json r = to_json(built);
  r["count"] = built.cert.verified_count;
  return {r, kOk};
}

Outcome do_count(const RunConfig& cfg, unsigned threads) {
  const Json input = read_json(cfg.in);
  const HomogeneousPoly f = load_poly(input);
  check_q(cfg, f.field());
  if (cfg.all) {
    const PointSpace space(f.field_ptr(), f.nvars() - 1);
    if (f.is_zero()) throw Error(Errc::ZeroPolynomial, "the zero polynomial vanishes everywhere");
    const auto mask = zero_mask(f, space, threads);
    const auto n = static_cast<std::uint64_t>(std::count(mask.begin(), mask.end(), std::uint8_t{1}));
    return {Json{{"scope", "hypersurface"}, {"count", n}}, kOk};
  }
  const HermitianForm h = choose_form(cfg, input, f.field_ptr(), f.nvars() - 1);
  return {Json{{"scope", "intersection"}, {"count", count_intersection(f, h, threads)}, {"form", to_json(h)}}, kOk};
}

Outcome do_classify(const RunConfig& cfg, unsigned threads) {
  (void)threads;
  const std::string& what = cfg.subcommand;
  if (what == "quadric" || what == "plane-cubic") {
    const Json input = read_json(cfg.in);
    const HomogeneousPoly f = load_poly(input);
    check_q(cfg, f.field());
    if (what == "plane-cubic") {
      if (f.nvars() != 3 || f.degree() != 3) throw Usage("expected a cubic in three variables");
      Json r = to_json(classify_plane_cubic(f));
      r["rational_points"] = zero_set(f).size();
      return {r, kOk};
    }
    return {to_json(classify_quadric(f, choose_form(cfg, input, f.field_ptr(), 4))), kOk};
  }
  Json input;
  std::optional<Flat> flat;
  FieldPtr f;
  if (cfg.index >= 0) {
    need_q(cfg);
    f = Field::for_q(cfg.q);
    const int dim = what == "line" ? 1 : what == "plane" ? 2 : cfg.m - 1;
    FlatSpace fs(f, cfg.m, dim);
    if (static_cast<std::uint64_t>(cfg.index) >= fs.count())
      throw Usage("--index must be below " + std::to_string(fs.count()));
    flat = fs.unrank(static_cast<std::uint64_t>(cfg.index));
  } else {
    input = read_json(cfg.in);
    if (const Json* fj = find_key(input, "field")) {
      f = field_from_json(*fj);
      check_q(cfg, *f);
    } else {
      need_q(cfg);
      f = Field::for_q(cfg.q);
    }
    const Json* xj = find_key(input, "flat");
    flat = flat_from_json(xj ? *xj : input, *f);
  }
  const int want = what == "line" ? 1 : what == "plane" ? 2 : flat->m - 1;
  if (flat->dim != want) throw Usage("input flat has dimension " + std::to_string(flat->dim));
  const HermitianForm h = choose_form(cfg, input, f, flat->m);
  if (h.m() != flat->m) throw Error(Errc::DimensionMismatch, "form and flat live in different spaces");
  Json r{{"flat", to_json(*flat)}};
  if (what == "line") r["classification"] = to_json(classify_line(h, *flat));
  else if (what == "plane") r["classification"] = to_json(classify_plane_section(h, *flat));
  else r["classification"] = to_json(classify_hyperplane_section(h, *flat, true));
  return {r, kOk};
}

Outcome do_audit(const RunConfig& cfg, unsigned threads) {
  const Json input = read_json(cfg.in);
  const HomogeneousPoly f = load_poly(input);
  check_q(cfg, f.field());
  const HermitianForm h = choose_form(cfg, input, f.field_ptr(), f.nvars() - 1);
  if (static_cast<unsigned>(f.degree()) > h.field().q()) throw Usage("audit needs deg F <= q");
  const AuditContext ctx(h, f.degree(), threads);
  const AuditReport rep = audit(f, ctx);
  Json r = to_json(rep);
  int code = rep.violations.empty() ? kOk : kViolation;
  if (cfg.double_count) {
    const auto dc = incidence_double_count(f, ctx);
    r["double_count"] = Json{{"lhs", dc.lhs}, {"rhs", dc.rhs}, {"ok", dc.lhs == dc.rhs}};
    if (dc.lhs != dc.rhs) code = kViolation;
  }
  return {r, code};
}

Outcome do_verify(const RunConfig& cfg, unsigned threads) {
  need_q(cfg);
  const IdentityReport rep = cfg.subcommand == "identities" ? verify_identity_suite(cfg.q, threads, cfg.seed)
                                                            : verify_bound_suite(cfg.q, threads);
  return {to_json(rep), rep.all_ok() ? kOk : kViolation};
}

Outcome do_sample(const RunConfig& cfg, unsigned threads) {
  need_q(cfg);
  need_d(cfg);
  SampleConfig sc;
  sc.q = cfg.q;
  sc.d = cfg.d;
  sc.n = cfg.samples;
  sc.seed = cfg.seed;
  sc.m = cfg.m;
  sc.form = cfg.variety;
  sc.threads = threads;
  const SampleReport rep = sample_hypersurfaces(sc);
  return {to_json(rep), rep.violations.empty() ? kOk : kViolation};
}

void flatten(const Json& j, const std::string& path, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, os);
  } else if (j.is_array() && !j.empty() && (j[0].is_object() || j[0].is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", os);
  } else {
    os << path << "\t" << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

int exit_for(Errc c) {
  switch (c) {
    case Errc::TrichotomyViolated:
    case Errc::ConstructionNotFound:
    case Errc::InsufficientNonTangent:
    case Errc::InsufficientPlanes:
    case Errc::BaseCurveSearchFailed:
      return kInternal;
    default:
      return kUsage;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Rational points on Hermitian varieties over F_{q^2}: extremal constructions, intersection counts,\n"
               "section classification, bound audits and reproducible verification campaigns.",
               "hvlab"};
  app.require_subcommand(1);
  const std::vector<unsigned> qs{2, 3, 4, 5, 7, 8, 9};

  auto common = [&](CLI::App* s) {
    s->add_option("--threads", cfg.threads, "Worker threads (default: HVLAB_THREADS, else all cores)");
    s->add_option("--out", cfg.out, "Write the report here instead of stdout");
    s->add_option("--format", cfg.format, "json (stable) or table (human readable)")
        ->check(CLI::IsMember({"json", "table"}));
  };
  auto add_q = [&](CLI::App* s) { s->add_option("--q", cfg.q, "Field is F_{q^2}; q in {2,3,4,5,7,8,9}")->check(CLI::IsMember(qs)); };
  auto add_form = [&](CLI::App* s) {
    s->add_option("--form", cfg.form, "Hermitian form JSON (default: the form embedded in --in, else the identity)");
  };

  auto* construct = app.add_subcommand(
      "construct",
      "Build an extremal hypersurface and verify its count by enumeration.\n"
      "  edoukou     d non-tangent hyperplanes through a plane cutting a non-degenerate Hermitian curve (P^4)\n"
      "  sorensen    d tangent planes through a secant line of the Hermitian surface (P^3)\n"
      "  degenerate  cone over d disjoint secant lines of the base curve of diag(1,1,1,0) (P^3)\n"
      "  quadric     reducible quadric of type I, II or III against V_3 (--kind)\n"
      "  serre       d hyperplanes through a common codimension-2 flat (all of V(F) in P^m)");
  construct->add_option("what", cfg.subcommand)->required()->check(CLI::IsMember({"edoukou", "sorensen", "degenerate", "quadric", "serre"}));
  add_q(construct);
  construct->add_option("--d", cfg.d, "Degree, 2 <= d <= q");
  construct->add_option("--m", cfg.m, "Ambient dimension for serre");
  construct->add_option("--kind", cfg.kind, "Quadric type: I, II or III");
  common(construct);

  auto* classify = app.add_subcommand(
      "classify",
      "Classify a flat's section of a Hermitian variety (line: 1, q+1 or q^2+1 points; plane: curve, q+1\n"
      "concurrent lines or one line; hyperplane: non-tangent or tangent cone), a quadric against V_3 (types\n"
      "I/II/III or other), or a plane cubic (absolutely irreducible, irreducible but not absolutely, reducible).");
  classify->add_option("what", cfg.subcommand)->required()->check(CLI::IsMember({"line", "plane", "hyperplane", "quadric", "plane-cubic"}));
  add_q(classify);
  classify->add_option("--in", cfg.in, "Flat or polynomial JSON");
  classify->add_option("--index", cfg.index, "Instead of --in: the index-th flat of P^m in enumeration order");
  classify->add_option("--m", cfg.m, "Ambient dimension for --index");
  add_form(classify);
  common(classify);

  auto* count = app.add_subcommand("count", "Count |V(F) ∩ V| by one pass over the Hermitian variety's points (--all: |V(F)| in P^m)");
  add_q(count);
  count->add_option("--in", cfg.in, "Polynomial JSON or a construct report");
  count->add_flag("--all", cfg.all, "Count every zero of F in P^m instead");
  add_form(count);
  common(count);

  auto* aud = app.add_subcommand(
      "audit",
      "Structural predicates of V(F) against V_3 (exhaustive for q <= 3) and every bound whose hypothesis holds,\n"
      "including the conjectured d(q^5+q^2)+q^3+1 ceiling; exit 1 on a violated proven bound");
  add_q(aud);
  aud->add_option("--in", cfg.in, "Polynomial JSON or a construct report");
  aud->add_flag("--double-count", cfg.double_count, "Also count point/generator incidences both ways");
  add_form(aud);
  common(aud);

  auto* verify = app.add_subcommand(
      "verify",
      "identities: counting identities of Hermitian varieties (exhaustive flat scans for q <= 3, per-point\n"
      "sub-suite for larger q). bounds: every construction checked against its closed form and audited.");
  verify->add_option("what", cfg.subcommand)->required()->check(CLI::IsMember({"identities", "bounds"}));
  add_q(verify);
  verify->add_option("--seed", cfg.seed, "Seed for the random congruence in the normal-form check");
  common(verify);

  auto* sample = app.add_subcommand(
      "sample",
      "Audit n random hypersurfaces of degree d (iid uniform coefficients, zero polynomial redrawn); reports the\n"
      "maximum count, a margin histogram against the reference bound, and any violations or findings");
  add_q(sample);
  sample->add_option("--d", cfg.d, "Degree, 1 <= d <= q");
  sample->add_option("--n,--samples", cfg.samples, "Number of samples");
  sample->add_option("--seed", cfg.seed, "Master seed (default 0)");
  sample->add_option("--m", cfg.m, "Ambient dimension: 4 (threefolds) or 3 (surfaces)");
  sample->add_option("--variety", cfg.variety, "nondegenerate or rank3 (the cone surface, m = 3)")
      ->check(CLI::IsMember({"nondegenerate", "rank3"}));
  common(sample);

  std::vector<std::string> argv_store{"hvlab"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    const unsigned threads = resolve_threads(cfg.threads);
    Outcome o;
    if (app.got_subcommand(construct)) cfg.command = "construct", o = do_construct(cfg, threads);
    else if (app.got_subcommand(classify)) cfg.command = "classify", o = do_classify(cfg, threads);
    else if (app.got_subcommand(count)) cfg.command = "count", o = do_count(cfg, threads);
    else if (app.got_subcommand(aud)) cfg.command = "audit", o = do_audit(cfg, threads);
    else if (app.got_subcommand(verify)) cfg.command = "verify", o = do_verify(cfg, threads);
    else cfg.command = "sample", o = do_sample(cfg, threads);

    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    Json env{{"command", cfg.command}, {"config", config_json(cfg)}, {"result", o.result},
             {"runtime", Json{{"threads", threads}, {"elapsed_ms", ms}}}};
    std::ostringstream text;
    if (cfg.format == "table") flatten(env, "", text);
    else text << env.dump(2) << "\n";
    if (cfg.out.empty()) {
      out << text.str();
    } else {
      std::ofstream f(cfg.out);
      if (!f) throw Usage("cannot write " + cfg.out);
      f << text.str();
    }
    return o.code;
  } catch (const Usage& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_for(e.code());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace hvlab::cli
