#include <doctest.h>

#include "hvlab/serialize.hpp"

using namespace hvlab;

namespace {

Errc parse_code(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::InvalidArgument;
}

}  // namespace

TEST_CASE("field round trip") {
  for (unsigned q : {2u, 3u, 4u, 7u, 9u}) {
    const auto f = Field::for_q(q);
    const auto j = to_json(*f);
    CHECK(j["p"] == f->characteristic());
    CHECK(j["modulus"] == f->modulus());
    CHECK(field_from_json(j) == f);
  }
  CHECK(parse_code([] { field_from_json(Json{{"p", 4}, {"k", 1}}); }) == Errc::ParseError);
  CHECK(parse_code([] { field_from_json(Json{{"p", 2}, {"k", 2}, {"modulus", {1, 0, 1}}}); }) == Errc::ParseError);
  CHECK(parse_code([] { field_from_json(Json{{"p", "two"}, {"k", 2}}); }) == Errc::ParseError);
}

TEST_CASE("points and flats") {
  const auto f = Field::for_q(3);
  const auto p = point_from_json(Json::array({0, 3, 6, 1, 0}), *f);
  CHECK(p.coords[1] == 1);  // normalized
  CHECK(to_json(p) == Json(p.coords));
  CHECK(parse_code([&] { point_from_json(Json::array({0, 0, 0}), *f); }) == Errc::ParseError);
  CHECK(parse_code([&] { point_from_json(Json::array({0, 9, 0}), *f); }) == Errc::ParseError);

  const FlatSpace fs(f, 4, 2);
  for (std::uint64_t i = 0; i < fs.count(); i += 977) {
    const Flat x = fs.unrank(i);
    CHECK(flat_from_json(to_json(x), *f) == x);
  }
  // A non-canonical basis comes back in RREF.
  const Json messy{{"basis", {{2, 2, 0, 0, 0}, {1, 0, 1, 0, 0}}}};
  const Flat x = flat_from_json(messy, *f);
  CHECK(x.dim == 1);
  CHECK(x.basis(0, 0) == 1);
  CHECK(parse_code([&] { flat_from_json(Json{{"dim", 2}, {"basis", {{1, 0}, {2, 0}}}}, *f); }) == Errc::ParseError);
  CHECK(parse_code([&] { flat_from_json(Json{{"basis", {{1, 0}, {2}}}}, *f); }) == Errc::ParseError);
}

TEST_CASE("polynomials") {
  const auto f = Field::for_q(2);
  const auto h = hermitian_poly(HermitianForm::identity(f, 4)) +
                 HomogeneousPoly::variable(f, 5, 0) * HomogeneousPoly::monomial(f, {0, 1, 1, 0, 0}, 2);
  const auto j = to_json(h);
  CHECK(j["degree"] == 3);
  // Graded-lex descending: x_0^3 leads.
  CHECK(j["terms"][0]["exps"] == Json::array({3, 0, 0, 0, 0}));
  CHECK(poly_from_json(j) == h);
  CHECK(poly_from_json(Json::parse(j.dump())) == h);

  Json bad = j;
  bad["terms"][0]["exps"] = Json::array({1, 0, 0, 0, 0});
  CHECK(parse_code([&] { poly_from_json(bad); }) == Errc::ParseError);
  bad = j;
  bad["terms"][0]["coeff"] = 4;
  CHECK(parse_code([&] { poly_from_json(bad); }) == Errc::ParseError);
  bad = j;
  bad.erase("terms");
  CHECK(parse_code([&] { poly_from_json(bad); }) == Errc::ParseError);
}

TEST_CASE("forms") {
  const auto f = Field::for_q(3);
  const auto h = HermitianForm::from_matrix(f, Matrix(2, 2, {0, 3, 6, 0}));
  CHECK(form_from_json(to_json(h)).matrix() == h.matrix());
  Json bad = to_json(h);
  bad["matrix"] = Json::array({Json::array({0, 3}), Json::array({3, 0})});
  CHECK(parse_code([&] { form_from_json(bad); }) == Errc::ParseError);
}
