#include <doctest.h>

#include <numeric>

#include "hvlab/field.hpp"
#include "oracle.hpp"

using namespace hvlab;

TEST_CASE("field_create picks the smallest irreducible modulus") {
  for (auto [p, k] : {std::pair{2u, 2u}, {3u, 2u}, {2u, 4u}, {5u, 2u}, {7u, 2u}, {2u, 6u}, {3u, 4u}, {2u, 3u}, {3u, 3u}}) {
    const auto f = Field::create(p, k);
    const oracle::GF g(p, k);
    CHECK(f->size() == g.size);
    CHECK(f->modulus() == g.modulus);
  }
  const auto f4 = Field::create(2, 2);
  CHECK(f4->modulus() == std::vector<unsigned>{1, 1, 1});  // t^2 + t + 1
  CHECK(Field::create(7, 2)->size() == 49);
}

TEST_CASE("field_create rejects bad parameters") {
  auto code_of = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::InvalidArgument;
  };
  CHECK(code_of([] { Field::create(4, 1); }) == Errc::NonPrimeCharacteristic);
  CHECK(code_of([] { Field::create(2, 21); }) == Errc::SizeBudgetExceeded);
  CHECK(code_of([] { Field::create(1, 2); }) == Errc::NonPrimeCharacteristic);
}

TEST_CASE("table arithmetic matches schoolbook products") {
  for (unsigned q : {2u, 3u, 4u, 5u, 7u}) {
    const auto f = Field::for_q(q);
    const oracle::GF g(f->characteristic(), f->degree());
    for (Elem a = 0; a < f->size(); ++a) {
      CHECK(f->neg(a) == g.neg(a));
      for (Elem b = 0; b < f->size(); ++b) {
        REQUIRE(f->mul(a, b) == g.mul(a, b));
        REQUIRE(f->add(a, b) == g.add(a, b));
      }
    }
  }
}

TEST_CASE("arith examples") {
  const auto f4 = Field::create(2, 2);
  // t is index 2, t+1 is index 3.
  CHECK(f4->mul(2, 3) == 1);
  const auto f9 = Field::create(3, 2);
  for (Elem x = 0; x < 9; ++x) CHECK(f9->add(x, f9->neg(x)) == 0);
  const auto f49 = Field::create(7, 2);
  for (Elem x = 1; x < 49; ++x) CHECK(f49->mul(x, f49->inv(x)) == 1);
  CHECK_THROWS_AS(f49->inv(0), Error);
}

TEST_CASE("checked elements reject cross-field operations") {
  const auto a = Field::create(3, 2), b = Field::create(2, 2);
  const FieldElement x(*a, 2), y(*b, 2);
  CHECK_THROWS_AS(x + y, Error);
  CHECK((x * FieldElement(*a, 1)).index() == 2);
  CHECK_THROWS_AS(FieldElement(*a, 0).inv(), Error);
}

TEST_CASE("conjugation") {
  const auto f4 = Field::for_q(2);
  CHECK(f4->conj(0) == 0);
  CHECK(f4->conj(2) == 3);  // t -> t + 1
  const auto f9 = Field::for_q(3);
  for (Elem x = 0; x < 9; ++x) CHECK(f9->conj(f9->conj(x)) == x);
  CHECK_THROWS_AS(Field::create(2, 3)->conj(1), Error);

  for (unsigned q : {2u, 3u, 4u, 5u, 7u}) {
    const auto f = Field::for_q(q);
    const oracle::GF g(f->characteristic(), f->degree());
    unsigned fixed = 0;
    for (Elem x = 0; x < f->size(); ++x) {
      CHECK(f->conj(x) == g.pow(x, q));
      CHECK(f->norm(x) == g.pow(x, q + 1));
      fixed += f->conj(x) == x;
    }
    CHECK(fixed == q);
  }
}

TEST_CASE("Frobenius is an automorphism and norms land in F_q") {
  for (unsigned q : {2u, 3u, 4u, 5u, 7u}) {
    const auto f = Field::for_q(q);
    for (Elem x = 0; x < f->size(); ++x) {
      CHECK(f->in_subfield(f->norm(x)));
      for (Elem y = 0; y < f->size(); ++y) {
        REQUIRE(f->conj(f->mul(x, y)) == f->mul(f->conj(x), f->conj(y)));
        REQUIRE(f->conj(f->add(x, y)) == f->add(f->conj(x), f->conj(y)));
      }
    }
  }
}

TEST_CASE("norm examples and fibre sizes") {
  const auto f4 = Field::for_q(2);
  CHECK(f4->norm(0) == 0);
  CHECK(f4->norm(2) == 1);
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    const auto f = Field::for_q(q);
    std::map<Elem, unsigned> fibre;
    for (Elem x = 1; x < f->size(); ++x) ++fibre[f->norm(x)];
    CHECK(fibre.size() == q - 1);
    for (auto [a, n] : fibre) {
      CHECK(n == q + 1);
      const Elem r = f->norm_root(a);
      CHECK(f->norm(r) == a);
    }
    // Outside F_q the equation x^{q+1} = a has no solution.
    for (Elem a = 0; a < f->size(); ++a)
      if (!f->in_subfield(a)) CHECK(fibre.count(a) == 0);
  }
}

TEST_CASE("enumerate_field") {
  const auto f4 = enumerate_field(*Field::create(2, 2));
  CHECK(f4.size() == 4);
  CHECK(f4.front() == 0);
  CHECK(enumerate_field(*Field::create(7, 2)).size() == 49);
  const auto f9 = Field::create(3, 2);
  Elem sum = 0;
  for (Elem x : enumerate_field(*f9)) sum = f9->add(sum, x);
  CHECK(sum == 0);
}

TEST_CASE("embedding respects arithmetic") {
  const auto small = Field::for_q(2), big = Field::create(2, 6);
  const FieldEmbedding e(small, big);
  for (Elem a = 0; a < 4; ++a) {
    CHECK(e.preimage(e.image(a)) == a);
    for (Elem b = 0; b < 4; ++b) {
      CHECK(e.image(small->mul(a, b)) == big->mul(e.image(a), e.image(b)));
      CHECK(e.image(small->add(a, b)) == big->add(e.image(a), e.image(b)));
    }
  }
}
