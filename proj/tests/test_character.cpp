#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "fusionforge/character.hpp"
#include "fusionforge/pipeline.hpp"
#include "oracle_helpers.hpp"

using namespace fusionforge;

TEST_CASE("induction of the trivial character is the permutation character") {
  for (const char* name : {"Q8", "C4", "D8", "C2^2", "ES(27,exp_p)"}) {
    auto g = make_group(name);
    for (const auto& h : subgroups(g)) {
      auto ind = induce_to(trivial_character(h), whole_group(g));
      CHECK(ind.degree() == long(g->order() / h.order()));
      for (std::size_t x = 0; x < g->order(); ++x) {
        auto v = ind.at(Elt(x)).as_integer();
        REQUIRE(v.has_value());
        CHECK(*v == oracle::coset_fixed_points(g, h, Elt(x)));
      }
    }
  }
}

TEST_CASE("the induced center character of Q8") {
  auto q8 = make_group("Q8");
  auto z = center(q8);
  REQUIRE(z.order() == 2);
  // faithful character of Z: z -> -1
  std::vector<Cyclotomic> vals{Cyclotomic(1), Cyclotomic(-1)};
  auto chi = Character::from_member_values(z, vals, "faithful");
  auto theta = induce_to(chi, whole_group(q8));
  CHECK(theta.degree() == 4);
  CHECK(theta.at(z.members[1]) == Cyclotomic(-4));
  for (std::size_t x = 0; x < q8->order(); ++x)
    if (!z.contains(Elt(x))) CHECK(theta.at(Elt(x)) == Cyclotomic(0));
  // induction from H = G is the identity operation
  auto whole = whole_group(q8);
  auto again = induce_to(theta, whole);
  CHECK(again == theta);
}

TEST_CASE("induction along a non-inclusion embedding") {
  // push the sign character of one C2 of C2^2 through an embedding onto a
  // different C2, then induce: same as inducing the sign character living on
  // the target directly
  auto v4 = make_group("C2^2");
  Subgroup h1 = generated_subgroup(v4, {1});
  Subgroup h2 = generated_subgroup(v4, {2});
  auto sign = [&](const Subgroup& h) {
    return Character::from_member_values(h, {Cyclotomic(1), Cyclotomic(-1)},
                                         "sign");
  };
  Hom embed = make_hom(h1, whole_group(v4), {0, h2.members[1]});
  auto via_embedding = induce(sign(h1), embed);
  auto direct = induce_to(sign(h2), whole_group(v4));
  CHECK(via_embedding == direct);
}

TEST_CASE("restriction") {
  auto q8 = make_group("Q8");
  auto reg = regular_character(whole_group(q8));
  for (const auto& h : subgroups(q8)) {
    auto res = restrict_character(reg, h);
    auto expect = scale_character(long(q8->order() / h.order()),
                                  regular_character(h));
    CHECK(res == expect);
  }
  auto whole = whole_group(q8);
  CHECK(restrict_character(reg, whole) == reg);
}

TEST_CASE("Frobenius reciprocity on small cases") {
  std::mt19937 rng(5150);
  for (const char* name : {"C4", "C2^2", "Q8", "C9"}) {
    auto g = make_group(name);
    for (const auto& h : subgroups(g)) {
      // random nonnegative-integer combinations of easy characters
      std::uniform_int_distribution<long> coeff(0, 2);
      auto chi = add_characters(
          scale_character(coeff(rng) + 1, trivial_character(h)),
          scale_character(coeff(rng), regular_character(h)));
      auto psi = add_characters(
          scale_character(coeff(rng), trivial_character(whole_group(g))),
          scale_character(coeff(rng) + 1, regular_character(whole_group(g))));
      auto lhs = inner_product(induce_to(chi, whole_group(g)), psi);
      auto rhs = inner_product(chi, restrict_character(psi, h));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("isogation") {
  auto c4 = make_group("C4");
  std::vector<Cyclotomic> vals;
  for (int k = 0; k < 4; ++k) vals.push_back(Cyclotomic::root_of_unity(4, k));
  auto chi = Character::from_member_values(whole_group(c4), vals, "z4");

  auto id = identity_hom(whole_group(c4));
  CHECK(isogate(chi, id) == chi);

  auto auts = automorphisms(c4);
  Hom inv = auts[1];
  auto pulled = isogate(chi, inv);
  // the generator now takes the value at its image, zeta^3
  CHECK(pulled.at(1) == Cyclotomic::root_of_unity(4, 3));
  auto back = isogate(pulled, invert_onto_image(inv));
  CHECK(back == chi);
}

TEST_CASE("fixed dimensions") {
  auto q8 = make_group("Q8");
  auto whole = whole_group(q8);
  auto triv = trivial_character(whole);
  for (std::size_t x = 0; x < q8->order(); ++x)
    CHECK(fixed_dim(triv, Elt(x)) == 1);

  auto reg = regular_character(whole);
  for (std::size_t x = 1; x < q8->order(); ++x)
    CHECK(fixed_dim(reg, Elt(x)) ==
          long(q8->order() / q8->element_order(Elt(x))));
  for (const auto& h : subgroups(q8))
    CHECK(fixed_dim_subgroup(reg, h) == long(q8->order() / h.order()));

  auto v4 = make_group("C2^2");
  auto aug = augmented_regular_character(whole_group(v4));
  CHECK(fixed_dim_subgroup(aug, whole_group(v4)) == 0);

  // conjugation invariance
  auto z = center(q8);
  std::vector<Cyclotomic> vals{Cyclotomic(1), Cyclotomic(-1)};
  auto theta = induce_to(Character::from_member_values(z, vals, "chi"),
                         whole_group(q8));
  for (std::size_t x = 0; x < q8->order(); ++x)
    for (std::size_t t = 0; t < q8->order(); ++t)
      CHECK(fixed_dim(theta, Elt(x)) ==
            fixed_dim(theta, q8->conj(Elt(t), Elt(x))));

  // a corrupted class function fails loudly instead of rounding
  auto c2 = make_group("C2");
  std::vector<Cyclotomic> bad{Cyclotomic(1), Cyclotomic::root_of_unity(4, 1)};
  auto corrupted = Character::from_member_values(whole_group(c2), bad, "bad");
  CHECK_THROWS_AS(fixed_dim_subgroup(corrupted, whole_group(c2)), Error);
}

TEST_CASE("freeness certificates") {
  auto c8 = make_group("C8");
  std::vector<Cyclotomic> vals;
  for (int k = 0; k < 8; ++k) vals.push_back(Cyclotomic::root_of_unity(8, k));
  auto faithful = Character::from_member_values(whole_group(c8), vals, "z8");
  CHECK(free_on_sphere(faithful).free);

  auto q8 = make_group("Q8");
  auto z = center(q8);
  auto theta = induce_to(
      Character::from_member_values(
          z, {Cyclotomic(1), Cyclotomic(-1)}, "chi"),
      whole_group(q8));
  auto cert = free_on_sphere(theta);
  CHECK(cert.free);
  for (auto [rep, d] : cert.fixed_dims) CHECK(d == 0);

  auto bad = free_on_sphere(trivial_character(whole_group(q8)));
  CHECK_FALSE(bad.free);
  REQUIRE(bad.witness.has_value());
  CHECK(*bad.witness != 0);
}

TEST_CASE("character construction validation") {
  auto c4 = make_group("C4");
  // not a class function on a nonabelian group
  auto q8 = make_group("Q8");
  std::vector<Cyclotomic> vals(8, Cyclotomic(0));
  vals[0] = Cyclotomic(2);
  vals[1] = Cyclotomic(1); // a and a^3 are conjugate but get different values
  CHECK_THROWS_AS(
      Character::from_member_values(whole_group(q8), vals, "broken"), Error);
  // degree must be a nonnegative integer
  std::vector<Cyclotomic> frac{Cyclotomic(Rational(1, 2)), Cyclotomic(0),
                               Cyclotomic(0), Cyclotomic(0)};
  CHECK_THROWS_AS(
      Character::from_member_values(whole_group(c4), frac, "frac"), Error);
}
