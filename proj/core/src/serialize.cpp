#include "hvlab/serialize.hpp"

#include <numeric>

namespace hvlab {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::ParseError, what); }

const Json& field_at(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing key '") + key + "'");
  return j.at(key);
}

std::uint64_t uint_at(const Json& j, const char* key) {
  const Json& v = field_at(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    bad(std::string("'") + key + "' must be a non-negative integer");
  return v.get<std::uint64_t>();
}

Elem elem_of(const Json& v, const Field& f) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0 || v.get<std::uint64_t>() >= f.size())
    bad("field element out of range");
  return static_cast<Elem>(v.get<std::uint64_t>());
}

Coords coords_of(const Json& v, const Field& f) {
  if (!v.is_array()) bad("expected an array of field elements");
  Coords out;
  for (const auto& e : v) out.push_back(elem_of(e, f));
  return out;
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  return rows;
}

Matrix matrix_of(const Json& v, const Field& f) {
  if (!v.is_array() || v.empty()) bad("expected a non-empty matrix");
  const std::size_t rows = v.size();
  const std::size_t cols = v[0].is_array() ? v[0].size() : 0;
  if (cols == 0) bad("matrix rows must be non-empty arrays");
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const Coords row = coords_of(v[r], f);
    if (row.size() != cols) bad("ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = row[c];
  }
  return m;
}

template <class Fn>
auto guarded(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    bad(e.what());
  }
}

}  // namespace

Json to_json(const Field& f) {
  return Json{{"p", f.characteristic()}, {"k", f.degree()}, {"modulus", f.modulus()}};
}

FieldPtr field_from_json(const Json& j) {
  return guarded([&] {
    const auto p = uint_at(j, "p"), k = uint_at(j, "k");
    if (p < 2 || p > 1000 || k < 1 || k > 20) bad("field parameters out of range");
    FieldPtr f;
    try {
      f = Field::create(static_cast<unsigned>(p), static_cast<unsigned>(k));
    } catch (const Error& e) {
      bad(e.what());
    }
    if (j.contains("modulus") && j.at("modulus").get<std::vector<unsigned>>() != f->modulus())
      bad("modulus differs from the canonical one");
    return f;
  });
}

Json to_json(const ProjPoint& p) { return Json(p.coords); }

ProjPoint point_from_json(const Json& j, const Field& f) {
  return guarded([&] {
    Coords c = coords_of(j, f);
    if (std::all_of(c.begin(), c.end(), [](Elem e) { return e == 0; })) bad("the zero vector is not a point");
    return normalize(f, std::move(c));
  });
}

Json to_json(const Flat& x) { return Json{{"m", x.m}, {"dim", x.dim}, {"basis", matrix_json(x.basis)}}; }

Flat flat_from_json(const Json& j, const Field& f) {
  return guarded([&] {
    const Matrix rows = matrix_of(field_at(j, "basis"), f);
    Flat x;
    try {
      x = make_flat(f, rows);
    } catch (const Error& e) {
      bad(e.what());
    }
    if (j.contains("dim") && j.at("dim").get<int>() != x.dim) bad("basis rank does not match 'dim'");
    if (j.contains("m") && j.at("m").get<int>() != x.m) bad("basis width does not match 'm'");
    return x;
  });
}

Json to_json(const HomogeneousPoly& f) {
  Json terms = Json::array();
  for (const auto& [m, c] : f.terms()) terms.push_back(Json{{"exps", m}, {"coeff", c}});
  return Json{{"field", to_json(f.field())}, {"nvars", f.nvars()}, {"degree", f.degree()}, {"terms", terms}};
}

HomogeneousPoly poly_from_json(const Json& j) {
  return guarded([&] {
    const FieldPtr fp = field_from_json(field_at(j, "field"));
    const auto nv = uint_at(j, "nvars"), deg = uint_at(j, "degree");
    if (nv < 1 || nv > 32 || deg > 64) bad("nvars or degree out of range");
    HomogeneousPoly out(fp, static_cast<int>(nv), static_cast<int>(deg));
    const Json& terms = field_at(j, "terms");
    if (!terms.is_array()) bad("'terms' must be an array");
    for (const auto& t : terms) {
      const Json& e = field_at(t, "exps");
      if (!e.is_array() || e.size() != nv) bad("exponent vector has the wrong length");
      Monomial m;
      for (const auto& x : e) {
        if (!x.is_number_integer() || x.get<std::int64_t>() < 0 || x.get<std::int64_t>() > 64) bad("bad exponent");
        m.push_back(static_cast<std::uint16_t>(x.get<std::int64_t>()));
      }
      if (std::accumulate(m.begin(), m.end(), 0u) != deg) bad("term degree differs from 'degree'");
      out.add_term(m, elem_of(field_at(t, "coeff"), *fp));
    }
    return out;
  });
}

Json to_json(const HermitianForm& h) {
  return Json{{"field", to_json(h.field())}, {"m", h.m()}, {"matrix", matrix_json(h.matrix())}};
}

HermitianForm form_from_json(const Json& j) {
  return guarded([&] {
    const FieldPtr fp = field_from_json(field_at(j, "field"));
    Matrix a = matrix_of(field_at(j, "matrix"), *fp);
    if (a.rows() != a.cols()) bad("form matrix must be square");
    if (j.contains("m") && j.at("m").get<std::size_t>() + 1 != a.rows()) bad("matrix size does not match 'm'");
    try {
      return HermitianForm::from_matrix(fp, std::move(a));
    } catch (const Error& e) {
      bad(e.what());
    }
  });
}

Json to_json(const ExtremalCertificate& c) {
  Json flats = Json::array(), forms = Json::array();
  for (const auto& x : c.flats) flats.push_back(to_json(x));
  for (const auto& l : c.forms) forms.push_back(l);
  return Json{{"kind", to_string(c.kind)}, {"q", c.q},          {"d", c.d},         {"m", c.m},
              {"claimed_count", c.claimed_count}, {"verified_count", c.verified_count},
              {"flats", flats},     {"forms", forms}};
}

Json to_json(const Construction& c) {
  Json j{{"certificate", to_json(c.cert)}, {"poly", to_json(c.poly)}};
  j["form"] = c.form ? to_json(*c.form) : Json(nullptr);
  return j;
}

Json to_json(const LineClass& c) { return Json{{"class", to_string(c.tag)}, {"meeting_count", c.meeting_count}}; }

Json to_json(const PlaneSectionClass& c) {
  Json j{{"class", to_string(c.tag)}, {"count", c.count}};
  j["center"] = c.center ? to_json(*c.center) : Json(nullptr);
  return j;
}

Json to_json(const HyperplaneSectionClass& c) {
  Json j{{"class", to_string(c.tag)}, {"count", c.count}};
  j["point"] = c.point ? to_json(*c.point) : Json(nullptr);
  return j;
}

Json to_json(const QuadricType& c) {
  Json comps = Json::array();
  for (const auto& l : c.components) comps.push_back(l);
  return Json{{"type", to_string(c.tag)}, {"components", comps}};
}

Json to_json(const PlaneCubicClass& c) {
  Json forms = Json::array();
  for (const auto& l : c.witnesses.forms) forms.push_back(l);
  Json j{{"class", to_string(c.tag)}, {"witness_forms", forms}};
  j["witness_field"] = c.witnesses.field ? to_json(*c.witnesses.field) : Json(nullptr);
  return j;
}

Json to_json(const StructuralPredicates& p) {
  auto opt = [](const std::optional<Flat>& x) { return x ? to_json(*x) : Json(nullptr); };
  Json j;
  j["contains_hyperplane"] = to_string(p.contains_hyperplane);
  j["contains_plane"] = to_string(p.contains_plane);
  j["contains_generator"] = to_string(p.contains_generator);
  j["contains_tangent_line"] = to_string(p.contains_tangent_line);
  j["max_generators_in_one_plane"] = p.max_generators_in_one_plane ? Json(*p.max_generators_in_one_plane) : Json(nullptr);
  j["witnesses"] = Json{{"hyperplane", opt(p.hyperplane_witness)},
                        {"plane", opt(p.plane_witness)},
                        {"generator", opt(p.generator_witness)},
                        {"tangent_line", opt(p.tangent_line_witness)},
                        {"generator_plane", opt(p.max_generators_plane)}};
  return j;
}

Json to_json(const AuditReport& r) {
  Json bounds = Json::array();
  for (const auto& b : r.bounds) {
    bounds.push_back(Json{{"name", to_string(b.name)}, {"value", b.value}, {"count", b.count}, {"strict", b.strict}, {"ok", b.ok}});
  }
  Json j{{"q", r.q}, {"d", r.d}, {"m", r.m}, {"mode", r.mode}, {"intersection_count", r.intersection_count}};
  j["hypersurface_count"] = r.hypersurface_count ? Json(*r.hypersurface_count) : Json(nullptr);
  j["predicates"] = to_json(r.predicates);
  j["bounds"] = bounds;
  j["conjecture"] = r.conjecture_bound ? Json{{"bound", *r.conjecture_bound}, {"ok", r.conjecture_ok}, {"proven", r.conjecture_proven}}
                                       : Json(nullptr);
  j["quadric"] = r.quadric ? to_json(*r.quadric) : Json(nullptr);
  j["violations"] = r.violations;
  j["findings"] = r.findings;
  return j;
}

Json to_json(const IdentityReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json e{{"name", c.name}, {"expected", c.expected}, {"observed", c.observed}, {"ok", c.ok}};
    if (!c.witness.empty()) e["witness"] = c.witness;
    checks.push_back(e);
  }
  return Json{{"q", r.q}, {"tier", r.tier}, {"ok", r.all_ok()}, {"identities", checks}};
}

Json to_json(const SampleReport& r) {
  auto records = [](const std::vector<SampleRecord>& v) {
    Json a = Json::array();
    for (const auto& x : v) {
      a.push_back(Json{{"index", x.index}, {"count", x.count}, {"message", x.bound}, {"reference", x.value}, {"coeffs", x.coeffs}});
    }
    return a;
  };
  Json hist = Json::array();
  for (const auto& [bucket, n] : r.margin_histogram) hist.push_back(Json{{"bucket", bucket}, {"samples", n}});
  Json applied = Json::object(), quad = Json::object();
  for (const auto& [k, v] : r.bound_applications) applied[k] = v;
  for (const auto& [k, v] : r.quadric_types) quad[k] = v;
  Json j{{"q", r.config.q},
         {"d", r.config.d},
         {"m", r.config.m},
         {"form", r.config.form},
         {"mode", r.mode},
         {"samples", r.samples},
         {"rejected_zero", r.rejected_zero},
         {"reference", Json{{"name", r.reference_name}, {"value", r.reference_bound}}},
         {"max_count", r.max_count}};
  j["argmax"] = r.argmax ? Json(*r.argmax) : Json(nullptr);
  j["coefficient_order"] = "graded-lex descending monomials";
  j["argmax_coeffs"] = r.argmax_coeffs;
  j["attaining_reference"] = r.attaining_reference;
  j["margin_bucket_width"] = r.config.q * r.config.q * r.config.q;
  j["margin_histogram"] = hist;
  j["bound_applications"] = applied;
  j["quadric_types"] = quad;
  j["double_counts"] = Json{{"checked", r.double_counts_checked}, {"failures", r.double_count_failures}};
  j["violations"] = records(r.violations);
  j["findings"] = records(r.findings);
  return j;
}

}  // namespace hvlab
