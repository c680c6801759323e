#include <doctest.h>

#include <random>

#include "hvlab/constructions.hpp"
#include "hvlab/hermitian.hpp"
#include "oracle.hpp"

using namespace hvlab;

namespace {

std::vector<oracle::Vec> rows_of(const Flat& x) {
  std::vector<oracle::Vec> rows;
  for (std::size_t r = 0; r < x.basis.rows(); ++r) {
    const auto row = x.basis.row(r);
    rows.emplace_back(row.begin(), row.end());
  }
  return rows;
}

// |X ∩ V| for the identity form, by brute span enumeration.
std::size_t brute_section(const oracle::Tables& t, unsigned q, const Flat& x) {
  std::size_t n = 0;
  for (const auto& p : oracle::span_points(t, rows_of(x))) n += oracle::fermat(t, q, p, p.size()) == 0;
  return n;
}

// A random invertible matrix and the Hermitian matrix M0^T M0^(q).
Matrix random_congruent_identity(const Field& f, std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    Matrix m0(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m0(i, j) = static_cast<Elem>(rng() % f.size());
    if (rank(f, m0) == n) return multiply(f, transpose(m0), conjugate(f, m0));
  }
}

}  // namespace

TEST_CASE("hermitian_poly") {
  for (unsigned q : {2u, 3u}) {
    const auto f = Field::for_q(q);
    const auto h = hermitian_poly(HermitianForm::identity(f, 4));
    CHECK(h.degree() == static_cast<int>(q + 1));
    CHECK(h.terms().size() == 5);
    for (int i = 0; i < 5; ++i) {
      Monomial m(5, 0);
      m[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(q + 1);
      CHECK(h.coeff(m) == 1);
    }
  }
  const auto f = Field::for_q(2);
  const std::vector<Elem> d{1, 1, 1, 0, 0};
  const auto h3 = HermitianForm::diagonal(f, d);
  CHECK(h3.rank() == 3);
  CHECK(hermitian_poly(h3).nvars() == 5);

  // The coefficient of x_i x_j^q is a_ij and a_ji = conj(a_ij).
  std::mt19937_64 rng(5);
  const auto f9 = Field::for_q(3);
  const auto a = random_congruent_identity(*f9, 4, rng);
  const auto hf = HermitianForm::from_matrix(f9, a);
  const auto hp = hermitian_poly(hf);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      Monomial m(4, 0), mt(4, 0);
      m[static_cast<std::size_t>(i)] = 1;
      m[static_cast<std::size_t>(j)] = 3;
      mt[static_cast<std::size_t>(j)] = 1;
      mt[static_cast<std::size_t>(i)] = 3;
      CHECK(hp.coeff(m) == a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
      CHECK(hp.coeff(mt) == f9->conj(hp.coeff(m)));
    }
  Matrix bad(2, 2, {1, 3, 3, 1});  // a_01 = t but conj(a_10) = -t over F_9
  CHECK_THROWS_AS(HermitianForm::from_matrix(f9, bad), Error);
  CHECK_THROWS_AS(HermitianForm::from_matrix(f9, Matrix(3, 3)), Error);
}

TEST_CASE("rank and normal_form") {
  const auto f = Field::for_q(3);
  const auto id = normal_form(HermitianForm::identity(f, 4));
  CHECK(id.rank == 5);
  CHECK(id.m == Matrix::identity(5));
  const std::vector<Elem> d{1, 1, 1, 0, 0};
  CHECK(normal_form(HermitianForm::diagonal(f, d)).rank == 3);

  std::mt19937_64 rng(11);
  const oracle::GF g(3, 2);
  const oracle::Tables t(g);
  std::size_t ref = 0;
  for (const auto& x : oracle::projective_points(t, 4)) ref += oracle::fermat(t, 3, x, 5) == 0;
  CHECK(ref == 2440);
  for (int trial = 0; trial < 3; ++trial) {
    const auto a = random_congruent_identity(*f, 5, rng);
    const auto h = HermitianForm::from_matrix(f, a);
    const auto nf = normal_form(h);
    CHECK(nf.rank == 5);
    CHECK(multiply(*f, multiply(*f, transpose(nf.m), a), conjugate(*f, nf.m)) == nf.diagonal);
    CHECK(nf.diagonal == Matrix::identity(5));
    CHECK(HermitianVariety(h).size() == ref);
  }
}

TEST_CASE("variety_points") {
  const auto f = Field::for_q(2);
  CHECK(HermitianVariety(HermitianForm::identity(f, 2)).size() == 9);   // q^3 + 1
  CHECK(HermitianVariety(HermitianForm::identity(f, 3)).size() == 45);  // q^5 + q^3 + q^2 + 1
  const oracle::GF g(2, 2);
  const oracle::Tables t(g);
  std::set<ProjPoint> ref;
  for (const auto& x : oracle::projective_points(t, 4))
    if (oracle::fermat(t, 2, x, 5) == 0) ref.insert(ProjPoint{{x.begin(), x.end()}});
  const auto pts = HermitianVariety(HermitianForm::identity(f, 4)).points();
  CHECK(std::set<ProjPoint>(pts.begin(), pts.end()) == ref);
  CHECK(ref.size() == (32 + 1) * (4 + 1));
}

TEST_CASE("tangent_hyperplane") {
  const auto f = Field::for_q(2);
  const auto h = HermitianForm::identity(f, 4);
  const HermitianVariety v(h);
  const oracle::GF g(2, 2);
  const oracle::Tables t(g);
  for (const auto& p : v.points()) {
    const Flat tp = tangent_hyperplane(h, p);
    CHECK(incidence(*f, p, tp));
    CHECK(section_count(h, tp) == 37);  // q^5 + q^2 + 1
  }
  // Lines through P: inside T_P they meet V in 1 or q^2+1 points, outside in q+1.
  for (std::size_t i = 0; i < v.size(); i += 20) {
    const auto p = v.points()[i];
    const Flat tp = tangent_hyperplane(h, p);
    for (const auto& l : lines_through(*f, p, 4)) {
      const std::size_t n = brute_section(t, 2, l);
      if (contains(*f, tp, l)) CHECK((n == 1 || n == 5));
      else CHECK(n == 3);
    }
  }
  CHECK_THROWS_AS(tangent_hyperplane(h, ProjPoint{{0, 0, 0, 0, 1}}), Error);
  const std::vector<Elem> d{1, 1, 1, 0, 0};
  CHECK_THROWS_AS(tangent_hyperplane(HermitianForm::diagonal(f, d), ProjPoint{{0, 0, 0, 0, 1}}), Error);
}

TEST_CASE("classify_line") {
  const auto f = Field::for_q(2);
  const auto h = HermitianForm::identity(f, 4);
  const HermitianVariety v(h);
  for (const auto& gl : generators(v)) CHECK(classify_line(h, gl).tag == LineTag::Generator);

  // A line through a point of V transverse to T_P.
  const ProjPoint p = v.points()[0];
  const Flat tp = tangent_hyperplane(h, p);
  for (const auto& l : lines_through(*f, p, 4))
    if (!contains(*f, tp, l)) {
      const auto c = classify_line(h, l);
      CHECK(c.tag == LineTag::Secant);
      CHECK(c.meeting_count == 3);
      break;
    }

  const oracle::GF g(2, 2);
  const oracle::Tables t(g);
  std::map<std::uint64_t, std::size_t> hist;
  FlatSpace(f, 4, 1).for_each([&](const Flat& l) {
    const auto c = classify_line(h, l);
    REQUIRE(c.meeting_count == brute_section(t, 2, l));
    ++hist[c.meeting_count];
  });
  CHECK(hist.size() == 3);
  CHECK(hist.count(1));
  CHECK(hist.count(3));
  CHECK(hist.count(5));
}

TEST_CASE("classify_plane_section") {
  const auto f = Field::for_q(2);
  const auto h = HermitianForm::identity(f, 4);
  const oracle::GF g(2, 2);
  const oracle::Tables t(g);
  std::map<PlaneSectionTag, std::set<std::uint64_t>> seen;
  FlatSpace(f, 4, 2).for_each([&](const Flat& pl) {
    const auto c = classify_plane_section(h, pl);
    REQUIRE(c.count == brute_section(t, 2, pl));
    seen[c.tag].insert(c.count);
    if (c.tag == PlaneSectionTag::ConcurrentLines) {
      REQUIRE(c.center);
      CHECK(incidence(*f, *c.center, pl));
    }
  });
  CHECK(seen[PlaneSectionTag::NonDegenerateCurve] == std::set<std::uint64_t>{9});
  CHECK(seen[PlaneSectionTag::ConcurrentLines] == std::set<std::uint64_t>{13});
  CHECK(seen[PlaneSectionTag::SingleLine] == std::set<std::uint64_t>{5});

  // Planes inside T_P avoiding P.
  const HermitianVariety v(h);
  const ProjPoint p = v.points()[3];
  std::size_t checked = 0;
  for (const auto& pl : subflats(f, tangent_hyperplane(h, p), 2)) {
    if (incidence(*f, p, pl)) continue;
    CHECK(classify_plane_section(h, pl).tag == PlaneSectionTag::NonDegenerateCurve);
    ++checked;
  }
  CHECK(checked == 64);  // planes of a P^3 missing a point: s^3
}

TEST_CASE("classify_hyperplane_section") {
  const auto f = Field::for_q(2);
  const auto h = HermitianForm::identity(f, 4);
  const HermitianVariety v(h);
  const ProjPoint p = v.points()[10];
  const auto c = classify_hyperplane_section(h, tangent_hyperplane(h, p));
  CHECK(c.tag == HyperplaneSectionTag::TangentAt);
  CHECK(c.count == 37);
  CHECK(*c.point == p);

  std::set<ProjPoint> poles;
  std::size_t tangent = 0;
  FlatSpace(f, 4, 3).for_each([&](const Flat& sigma) {
    const auto k = classify_hyperplane_section(h, sigma);
    if (k.tag == HyperplaneSectionTag::TangentAt) {
      ++tangent;
      CHECK(k.count == 37);
      poles.insert(*k.point);
      CHECK(tangent_hyperplane(h, *k.point) == sigma);
    } else {
      CHECK(k.count == 45);
      CHECK(restricted_rank(h, sigma) == 4);
    }
  });
  CHECK(tangent == 165);
  CHECK(poles.size() == 165);
}

TEST_CASE("generators") {
  const auto f2 = Field::for_q(2);
  const auto h2 = HermitianForm::identity(f2, 4);
  const HermitianVariety v2(h2);
  CHECK(generators(v2).size() == (32 + 1) * (8 + 1));
  for (const auto& p : v2.points()) CHECK(generators_through(h2, p).size() == 9);
  CHECK_THROWS_AS(generators_through(h2, ProjPoint{{0, 0, 0, 0, 1}}), Error);

  const auto f3 = Field::for_q(3);
  const HermitianVariety v3(HermitianForm::identity(f3, 4));
  CHECK(generators(v3).size() == 6832);  // (q^5 + 1)(q^3 + 1)
}

TEST_CASE("classify_quadric") {
  const auto f = Field::for_q(2);
  const auto h = HermitianForm::identity(f, 4);
  const HermitianVariety v(h);
  const std::pair<QuadricTag, std::uint64_t> cases[] = {
      {QuadricTag::TypeI, 2 * (32 + 4) + 8 + 1}, {QuadricTag::TypeII, 2 * 32 + 8 + 4 + 1}, {QuadricTag::TypeIII, 2 * 32 + 2 * 4 + 1}};
  for (auto [tag, expected] : cases) {
    const auto c = quadric_of_type(tag, v);
    CHECK(classify_quadric(c.poly, h).tag == tag);
    CHECK(v.count_zeros_of(c.poly) == expected);
  }
  const auto x0 = HomogeneousPoly::variable(f, 5, 0);
  const auto irreducible = x0 * x0 + HomogeneousPoly::variable(f, 5, 1) * HomogeneousPoly::variable(f, 5, 2);
  CHECK(classify_quadric(irreducible, h).tag == QuadricTag::Other);
  CHECK_THROWS_AS(classify_quadric(x0, h), Error);
  CHECK_THROWS_AS(classify_quadric(HomogeneousPoly(f, 5, 2), h), Error);
}
