#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "fusionforge/cyclo.hpp"

using namespace fusionforge;

TEST_CASE("roots of unity") {
  CHECK(Cyclotomic::root_of_unity(1, 0) == Cyclotomic(1));
  CHECK(Cyclotomic::root_of_unity(2, 1) == Cyclotomic(-1));
  Cyclotomic sum(0);
  for (int k = 0; k < 3; ++k) sum += Cyclotomic::root_of_unity(3, k);
  CHECK(sum == Cyclotomic(0));
  CHECK_THROWS(Cyclotomic::root_of_unity(0, 1));
  CHECK_THROWS(Cyclotomic::root_of_unity(-3, 1));
  // exponents wrap
  CHECK(Cyclotomic::root_of_unity(5, 7) == Cyclotomic::root_of_unity(5, 2));
  CHECK(Cyclotomic::root_of_unity(5, -1) == Cyclotomic::root_of_unity(5, 4));
}

TEST_CASE("basic arithmetic identities") {
  auto z4 = Cyclotomic::root_of_unity(4, 1);
  CHECK(arith(z4, z4, "mul") == Cyclotomic(-1));
  auto z3 = Cyclotomic::root_of_unity(3, 1);
  auto z3sq = Cyclotomic::root_of_unity(3, 2);
  CHECK(arith(z3, z3sq, "add") == Cyclotomic(-1));
  auto a = Cyclotomic::root_of_unity(8, 3) + Cyclotomic(2);
  CHECK(arith(a, Cyclotomic(1), "mul") == a);
  CHECK(arith(a, Cyclotomic(0), "sub") == a);
  CHECK_THROWS(arith(a, a, "div"));
}

TEST_CASE("as_integer") {
  CHECK(*(Cyclotomic::root_of_unity(2, 1) + Cyclotomic(1)).as_integer() == 0);
  CHECK_FALSE(Cyclotomic::root_of_unity(5, 1).as_integer().has_value());
  auto three = Rational(3) * Cyclotomic::root_of_unity(6, 6);
  CHECK(*three.as_integer() == 3);
  CHECK_FALSE(Cyclotomic(Rational(1, 2)).as_integer().has_value());
  CHECK(*Cyclotomic(Rational(1, 2) + Rational(1, 2)).as_integer() == 1);
}

TEST_CASE("galois sums vanish") {
  for (unsigned m = 2; m <= 64; ++m) {
    Cyclotomic sum(0);
    for (unsigned k = 0; k < m; ++k)
      sum += Cyclotomic::root_of_unity(long(m), long(k));
    INFO("m = " << m);
    CHECK(sum == Cyclotomic(0));
  }
}

namespace {

Cyclotomic random_value(std::mt19937& rng) {
  static const unsigned conductors[] = {1, 2, 3, 4, 5, 6, 8, 9, 12, 15, 16, 24};
  std::uniform_int_distribution<std::size_t> pick(0, std::size(conductors) - 1);
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> den(1, 4);
  unsigned m = conductors[pick(rng)];
  Cyclotomic acc(0);
  for (unsigned k = 0; k < m; ++k) {
    int c = coeff(rng);
    if (c == 0) continue;
    acc += Rational(c, den(rng)) * Cyclotomic::root_of_unity(long(m), long(k));
  }
  return acc;
}

} // namespace

TEST_CASE("ring axioms on random triples at mixed conductors") {
  std::mt19937 rng(20260811);
  for (int iter = 0; iter < 300; ++iter) {
    Cyclotomic a = random_value(rng), b = random_value(rng),
               c = random_value(rng);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == Cyclotomic(0));
    CHECK(a * Cyclotomic(1) == a);
  }
}

TEST_CASE("conductor lift then reduce is the identity") {
  std::mt19937 rng(424242);
  std::uniform_int_distribution<unsigned> mult(1, 6);
  int done = 0;
  while (done < 1000) {
    Cyclotomic a = random_value(rng);
    unsigned big = a.conductor() * mult(rng);
    if (big > 96) continue;
    Cyclotomic lifted = a.lifted_to(big);
    auto back = lifted.reduced_to(a.conductor());
    REQUIRE(back.has_value());
    CHECK(*back == a);
    CHECK(lifted == a);
    ++done;
  }
}

TEST_CASE("reduction to the wrong subfield is refused") {
  auto z8 = Cyclotomic::root_of_unity(8, 1);
  CHECK_FALSE(z8.reduced_to(4).has_value());
  CHECK_FALSE(z8.reduced_to(2).has_value());
  // but z8^2 lies in the conductor-4 subfield
  auto z8sq = z8 * z8;
  auto down = z8sq.reduced_to(4);
  REQUIRE(down.has_value());
  CHECK(*down == Cyclotomic::root_of_unity(4, 1));
}

TEST_CASE("complex conjugation") {
  for (unsigned m : {3u, 4u, 5u, 8u, 12u}) {
    for (unsigned k = 0; k < m; ++k) {
      auto z = Cyclotomic::root_of_unity(long(m), long(k));
      CHECK(z.conjugate() == Cyclotomic::root_of_unity(long(m), -long(k)));
      CHECK(z.conjugate().conjugate() == z);
    }
  }
}

TEST_CASE("minimal conductor rewrite") {
  auto v = Cyclotomic::root_of_unity(12, 3); // = i
  CHECK(v.reduced().conductor() == 4);
  CHECK(v.reduced() == Cyclotomic::root_of_unity(4, 1));
  CHECK(Cyclotomic(7).reduced().conductor() == 1);
}
