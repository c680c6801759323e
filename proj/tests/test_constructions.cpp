#include <doctest.h>

#include "hvlab/constructions.hpp"
#include "oracle.hpp"

using namespace hvlab;

namespace {

std::vector<oracle::Term> terms_of(const HomogeneousPoly& f) {
  std::vector<oracle::Term> out;
  for (const auto& [m, c] : f.terms()) out.push_back({{m.begin(), m.end()}, c});
  return out;
}

// Brute-force |V(F) ∩ V| with the Fermat form on the first r coordinates.
std::uint64_t brute(unsigned q, const HomogeneousPoly& f, std::size_t r) {
  const auto [p, e] = prime_power(q);
  const oracle::GF g(p, 2 * e);
  const oracle::Tables t(g);
  return oracle::count_common(t, q, terms_of(f), f.nvars() - 1, r);
}

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::InvalidArgument;
}

}  // namespace

TEST_CASE("closed forms") {
  for (std::uint64_t q : {2u, 3u, 4u, 5u, 7u}) {
    const std::uint64_t q2 = q * q, q3 = q2 * q, q5 = q3 * q2;
    for (std::uint64_t d = 1; d <= q; ++d) {
      CHECK(edoukou_count(q, d) == d * (q5 + q2) + q3 + 1);
      CHECK(sorensen_count(q, d) == d * (q3 + q2 - q) + q + 1);
      CHECK(degenerate_count(q, d) == d * (q + 1) * q2 + 1);
    }
    CHECK(quadric_count(QuadricTag::TypeI, q) == 2 * (q5 + q2) + q3 + 1);
    CHECK(quadric_count(QuadricTag::TypeII, q) == 2 * q5 + q3 + q2 + 1);
    CHECK(quadric_count(QuadricTag::TypeIII, q) == 2 * q5 + 2 * q2 + 1);
  }
  CHECK(serre_count(4, 3, 4) == 3 * 64 + 21);
  CHECK(serre_count(4, 2, 2) == 9);
  CHECK(serre_count(4, 1, 4) == 85);
}

TEST_CASE("edoukou_extremal") {
  const auto f2 = Field::for_q(2);
  const auto h2 = HermitianForm::identity(f2, 4);
  const HermitianVariety v2(h2);
  const auto c = edoukou_extremal(v2, 2);
  CHECK(c.cert.verified_count == 81);
  CHECK(c.cert.claimed_count == 81);
  CHECK(brute(2, c.poly, 5) == 81);

  const HermitianVariety v3(HermitianForm::identity(Field::for_q(3), 4));
  const auto c3 = edoukou_extremal(v3, 3);
  CHECK(c3.cert.verified_count == 784);
  CHECK(brute(3, c3.poly, 5) == 784);

  // Attainment conditions: d distinct non-tangent hyperplanes through a plane
  // whose section is a non-degenerate curve.
  for (const auto* cc : {&c, &c3}) {
    const auto& h = *cc->form;
    const Flat& plane = cc->cert.flats.front();
    CHECK(classify_plane_section(h, plane).tag == PlaneSectionTag::NonDegenerateCurve);
    std::set<Flat> hyps;
    for (std::size_t i = 1; i < cc->cert.flats.size(); ++i) {
      const Flat& s = cc->cert.flats[i];
      CHECK(s.dim == 3);
      CHECK(contains(h.field(), s, plane));
      CHECK_FALSE(is_tangent_hyperplane(h, s));
      hyps.insert(s);
    }
    CHECK(static_cast<int>(hyps.size()) == cc->cert.d);
  }

  CHECK(code_of([&] { edoukou_extremal(v2, 3); }) == Errc::InvalidArgument);
  CHECK(code_of([&] { edoukou_extremal(v2, 1); }) == Errc::InvalidArgument);
}

TEST_CASE("edoukou_extremal at q = 7 by full enumeration") {
  const HermitianVariety v(HermitianForm::identity(Field::for_q(7), 4));
  const auto c = edoukou_extremal(v, 3);
  CHECK(c.cert.verified_count == 50912);
  CHECK(brute(7, c.poly, 5) == 50912);
}

TEST_CASE("sorensen_extremal") {
  const HermitianVariety v2(HermitianForm::identity(Field::for_q(2), 3));
  const auto c = sorensen_extremal(v2, 2);
  CHECK(c.cert.verified_count == 23);
  CHECK(brute(2, c.poly, 4) == 23);
  const HermitianVariety v3(HermitianForm::identity(Field::for_q(3), 3));
  const auto c3 = sorensen_extremal(v3, 3);
  CHECK(c3.cert.verified_count == 103);
  CHECK(brute(3, c3.poly, 4) == 103);
  // The common line is a secant and every plane contains it.
  const Flat& line = c3.cert.flats.front();
  CHECK(classify_line(*c3.form, line).tag == LineTag::Secant);
  for (std::size_t i = 1; i < c3.cert.flats.size(); ++i) CHECK(contains(*Field::for_q(3), c3.cert.flats[i], line));
  CHECK(code_of([&] { sorensen_extremal(v2, 1); }) == Errc::InvalidArgument);
}

TEST_CASE("cone") {
  const auto f = Field::for_q(2);
  const ProjPoint vertex{{0, 0, 0, 1}};
  const Flat base = hyperplane_from_coeffs(*f, std::vector<Elem>{0, 0, 0, 1});
  const auto herm = hermitian_poly(HermitianForm::identity(f, 2));
  const auto pts = cone(*f, vertex, base, herm);
  CHECK(pts.size() == 1 + 9 * 4);
  // Line-by-line: each base zero contributes the q^2 points of its line other than P.
  const oracle::GF g(2, 2);
  const oracle::Tables t(g);
  std::set<ProjPoint> ref{vertex};
  for (const auto& z : zero_set(herm)) {
    const oracle::Vec a{z.coords[0], z.coords[1], z.coords[2], 0};
    for (const auto& x : oracle::span_points(t, {a, {0, 0, 0, 1}})) ref.insert(ProjPoint{{x.begin(), x.end()}});
  }
  CHECK(pts == ref);

  const auto line = HomogeneousPoly::variable(f, 3, 0);
  CHECK(cone(*f, vertex, base, line).size() == 21);

  // A conjugate triangle without rational points gives just the vertex.
  const auto big = Field::create(2, 6);
  const FieldEmbedding ext(f, big);
  std::optional<HomogeneousPoly> empty;
  for (Elem a = 2; a < big->size() && !empty; ++a) {
    const std::vector<Elem> l{1, a, big->mul(a, a)};
    auto c = conjugate_line_product(f, ext, l);
    if (zero_set(c).empty()) empty = c;
  }
  REQUIRE(empty);
  CHECK(cone(*f, vertex, base, *empty) == std::set<ProjPoint>{vertex});

  CHECK(code_of([&] { cone(*f, ProjPoint{{1, 0, 0, 0}}, base, herm); }) == Errc::VertexOnBase);

  // The cone polynomial cuts out the same set.
  const auto cp = cone_poly(*f, vertex, base, herm);
  const auto zs = zero_set(cp);
  CHECK(std::set<ProjPoint>(zs.begin(), zs.end()) == pts);
}

TEST_CASE("rank3_surface") {
  const auto h = rank3_surface(2);
  CHECK(h.rank() == 3);
  CHECK(HermitianVariety(h).size() == brute(2, HomogeneousPoly::constant(Field::for_q(2), 4, 0), 3));
  CHECK(HermitianVariety(h).size() == 37);
  const auto f = Field::for_q(2);
  const ProjPoint vertex{{0, 0, 0, 1}};
  std::size_t planes = 0;
  FlatSpace(f, 3, 2).for_each([&](const Flat& pl) {
    if (incidence(*f, vertex, pl)) return;
    CHECK(section_count(h, pl) == 9);
    ++planes;
  });
  CHECK(planes == 64);
}

TEST_CASE("degenerate_extremal") {
  for (auto [q, d, expected] : {std::tuple{2u, 2, 25ull}, {3u, 3, 109ull}, {3u, 2, 73ull}}) {
    const auto c = degenerate_extremal(q, d);
    CHECK(c.cert.verified_count == expected);
    CHECK(brute(q, c.poly, 3) == expected);
  }
  CHECK(code_of([] { degenerate_extremal(2, 3); }) == Errc::InvalidArgument);
}

TEST_CASE("quadric_of_type") {
  const HermitianVariety v(HermitianForm::identity(Field::for_q(2), 4));
  const std::pair<QuadricTag, std::uint64_t> cases[] = {{QuadricTag::TypeI, 81}, {QuadricTag::TypeII, 77}, {QuadricTag::TypeIII, 73}};
  for (auto [tag, n] : cases) {
    const auto c = quadric_of_type(tag, v);
    CHECK(c.cert.verified_count == n);
    CHECK(brute(2, c.poly, 5) == n);
  }
  CHECK(code_of([&] { quadric_of_type(QuadricTag::Other, v); }) == Errc::InvalidArgument);
}

TEST_CASE("serre_extremal") {
  const auto c = serre_extremal(2, 3, 4);
  CHECK(c.cert.verified_count == 213);
  CHECK(brute(2, c.poly, 0) == 213);
  CHECK_FALSE(c.form);
  CHECK(serre_extremal(2, 2, 2).cert.verified_count == 9);
  CHECK(brute(2, serre_extremal(2, 2, 2).poly, 0) == 9);
  CHECK(serre_extremal(2, 1, 4).cert.verified_count == 85);
  CHECK(code_of([] { serre_extremal(2, 5, 4); }) == Errc::InvalidArgument);
}

TEST_CASE("certificates are self-consistent") {
  const HermitianVariety v(HermitianForm::identity(Field::for_q(3), 4));
  for (int d : {2, 3}) {
    const auto c = edoukou_extremal(v, d);
    CHECK(c.cert.claimed_count == c.cert.verified_count);
    CHECK(c.cert.forms.size() == static_cast<std::size_t>(d));
    HomogeneousPoly prod = HomogeneousPoly::constant(Field::for_q(3), 5, 1);
    for (const auto& l : c.cert.forms) prod = prod * HomogeneousPoly::linear(Field::for_q(3), l);
    CHECK(prod == c.poly);
  }
}
