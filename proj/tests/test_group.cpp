#include <catch2/catch_amalgamated.hpp>

#include "fusionforge/group.hpp"
#include "fusionforge/homs.hpp"
#include "fusionforge/lattice.hpp"
#include "oracle_helpers.hpp"

using namespace fusionforge;

namespace {

void check_group_axioms(const GroupPtr& g) {
  const std::size_t n = g->order();
  for (std::size_t a = 0; a < n; ++a) {
    CHECK(g->mul(Elt(a), 0) == Elt(a));
    CHECK(g->mul(0, Elt(a)) == Elt(a));
    CHECK(g->mul(Elt(a), g->inv(Elt(a))) == 0);
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        REQUIRE(g->mul(g->mul(Elt(a), Elt(b)), Elt(c)) ==
                g->mul(Elt(a), g->mul(Elt(b), Elt(c))));
  }
}

} // namespace

TEST_CASE("constructors satisfy the defining relations") {
  for (const char* name : {"C4", "Q8", "Q16", "C2^2", "C3^2", "D8", "D6",
                           "ES(27,exp_p)", "ES(27,exp_p2)", "Q8xC2"})
    check_group_axioms(make_group(name));

  auto c4 = make_group("C4");
  CHECK(c4->order() == 4);
  bool has_order4 = false;
  for (std::size_t x = 0; x < 4; ++x)
    if (c4->element_order(Elt(x)) == 4) has_order4 = true;
  CHECK(has_order4);

  auto q8 = make_group("Q8");
  std::size_t involutions = 0;
  for (std::size_t x = 1; x < 8; ++x)
    if (q8->element_order(Elt(x)) == 2) ++involutions;
  CHECK(involutions == 1);

  auto v4 = make_group("C2^2");
  for (std::size_t x = 1; x < 4; ++x)
    CHECK(v4->element_order(Elt(x)) == 2);

  CHECK(make_group("ES(27,exp_p)")->order() == 27);
  CHECK(make_group("ES(32,plus)")->order() == 32);
  CHECK(make_group("ES(32,minus)")->order() == 32);
  CHECK(make_group("Q8xC2")->order() == 16);
  CHECK(make_group("C2xC2xC2")->order() == 8);

  // exponent of the two odd extraspecial flavors differs
  auto esp = make_group("ES(27,exp_p)");
  unsigned max_order = 0;
  for (std::size_t x = 0; x < esp->order(); ++x)
    max_order = std::max(max_order, esp->element_order(Elt(x)));
  CHECK(max_order == 3);
  auto esp2 = make_group("ES(27,exp_p2)");
  max_order = 0;
  for (std::size_t x = 0; x < esp2->order(); ++x)
    max_order = std::max(max_order, esp2->element_order(Elt(x)));
  CHECK(max_order == 9);

  CHECK_THROWS_AS(make_group("Q6"), Error);
  CHECK_THROWS_AS(make_group("Q4"), Error);
  CHECK_THROWS_AS(make_group("ES(27,bogus)"), Error);
  CHECK_THROWS_AS(make_group("X7"), Error);
  CHECK_THROWS_AS(make_group(""), Error);
}

TEST_CASE("subgroup enumeration matches the brute-force oracle") {
  CHECK(subgroups(make_group("C4")).size() == 3);
  CHECK(subgroups(make_group("Q8")).size() == 6);
  CHECK(subgroups(make_group("C2^2")).size() == 5);

  for (const char* name : {"C4", "C8", "Q8", "Q16", "C2^2", "C2^3", "C3^2",
                           "D8", "D6", "D16", "ES(27,exp_p)", "ES(32,minus)",
                           "C2xC4", "Q8xC2"}) {
    auto g = make_group(name);
    auto mine = subgroups(g);
    auto expected = oracle::subgroup_sets(g);
    INFO(name);
    REQUIRE(mine.size() == expected.size());
    for (const auto& h : mine) {
      CHECK(expected.count(h.members) == 1);
      CHECK(g->order() % h.order() == 0); // Lagrange
      // closure invariants
      for (Elt a : h.members) {
        CHECK(h.contains(g->inv(a)));
        for (Elt b : h.members) CHECK(h.contains(g->mul(a, b)));
      }
    }
    // each exactly once, canonical order
    for (std::size_t i = 1; i < mine.size(); ++i)
      CHECK(subgroup_less(mine[i - 1], mine[i]));
  }
}

TEST_CASE("enumeration bounds are enforced") {
  auto q8 = make_group("Q8");
  CHECK_THROWS_AS(subgroups(q8, 4), Error);
  CHECK_THROWS_AS(automorphisms(q8, 4), Error);
  CHECK_NOTHROW(subgroups(q8, 8));
}

TEST_CASE("center") {
  CHECK(center(make_group("Q8")).order() == 2);
  auto e9 = make_group("C3^2");
  CHECK(center(e9).order() == 9);
  CHECK(center(make_group("ES(27,exp_p)")).order() == 3);
  CHECK(center(make_group("ES(32,minus)")).order() == 2);
  CHECK(center(make_group("D8")).order() == 2);
}

TEST_CASE("rank") {
  CHECK(rank(make_group("C8")) == 1);
  CHECK(rank(make_group("Q16")) == 1);
  CHECK(rank(make_group("ES(27,exp_p)")) == 2);
  CHECK(rank(make_group("C2^3")) == 3);
  CHECK(rank(make_group("ES(32,minus)")) == 2);
  CHECK_THROWS_AS(rank(make_group("D6")), Error); // not a p-group

  // rank equals the largest elementary abelian subgroup found independently
  for (const char* name : {"Q8", "Q16", "C2^2", "ES(27,exp_p)", "C2xC4"}) {
    auto g = make_group(name);
    auto p = p_group_prime(g);
    REQUIRE(p.has_value());
    unsigned best = 0;
    for (const auto& members : oracle::subgroup_sets(g)) {
      Subgroup h{g, members};
      if (!is_elementary_abelian(h, *p)) continue;
      unsigned k = 0;
      std::size_t m = members.size();
      while (m > 1) {
        m /= *p;
        ++k;
      }
      best = std::max(best, k);
    }
    CHECK(rank(g) == best);
  }

  // monotone under subgroup inclusion
  auto g = make_group("ES(27,exp_p)");
  for (const auto& h : subgroups(g))
    for (const auto& k : subgroups(g))
      if (k.contains_all(h) && h.order() > 1)
        CHECK(subgroup_rank(h) <= subgroup_rank(k));
}

TEST_CASE("automorphisms") {
  CHECK(automorphisms(make_group("C4")).size() == 2);
  CHECK(automorphisms(make_group("C2")).size() == 1);
  CHECK(automorphisms(make_group("C2^2")).size() == oracle::gl_order(2, 2));
  CHECK(automorphisms(make_group("C3^2")).size() == oracle::gl_order(3, 2));
  CHECK(automorphisms(make_group("Q8")).size() == 24);

  // automorphisms form a group under composition
  for (const char* name : {"C4", "C2^2", "Q8", "C9"}) {
    auto g = make_group(name);
    auto auts = automorphisms(g);
    auto find = [&](const Hom& h) {
      return std::any_of(auts.begin(), auts.end(),
                         [&](const Hom& a) { return a.images == h.images; });
    };
    for (const auto& f : auts) {
      CHECK(find(invert_onto_image(f)));
      for (const auto& h : auts) CHECK(find(compose_hom(f, h)));
    }
  }
}

TEST_CASE("conjugation homomorphisms") {
  auto q8 = make_group("Q8");
  // identity conjugation is the inclusion
  auto subs = subgroups(q8);
  for (const auto& h : subs) {
    auto inc = conjugation_hom(q8, 0, h, whole_group(q8));
    CHECK(inc.is_identity_inclusion());
  }
  // a generator of order 4 outside <b> inverts <b>'s generator
  Elt a = 1; // a in the fixed presentation
  REQUIRE(q8->element_order(a) == 4);
  Elt b = Elt(q8->order() / 2); // b
  Subgroup hb = generated_subgroup(q8, {b});
  auto c = conjugation_hom(q8, a, hb, hb);
  CHECK(c.apply(b) == q8->inv(b));

  // abelian: conjugation is the identity on every subgroup
  auto c12 = make_group("C4xC3");
  for (const auto& h : subgroups(c12))
    for (std::size_t t = 0; t < c12->order(); ++t)
      CHECK(conjugation_hom(c12, Elt(t), h, h).is_identity_inclusion());

  // precondition violation
  Subgroup z = generated_subgroup(q8, {q8->mul(b, b)});
  CHECK_THROWS_AS(conjugation_hom(q8, a, hb, z), Error);
}

TEST_CASE("hom validation") {
  auto c4 = make_group("C4");
  auto w = whole_group(c4);
  CHECK_THROWS_AS(make_hom(w, w, std::vector<Elt>{0, 2, 0, 2}), Error);
  CHECK_NOTHROW(make_hom(w, w, std::vector<Elt>{0, 3, 2, 1}));
  // non-homomorphism
  CHECK_THROWS_AS(make_hom(w, w, std::vector<Elt>{0, 1, 3, 2}), Error);
}

TEST_CASE("abelian basis decomposition") {
  auto g = make_group("C2xC4");
  auto basis = abelian_basis(whole_group(g));
  REQUIRE(basis.orders.size() == 2);
  CHECK(basis.orders[0] == 4);
  CHECK(basis.orders[1] == 2);
  // coordinates reproduce every element
  for (std::size_t mi = 0; mi < g->order(); ++mi) {
    Elt acc = 0;
    for (std::size_t j = 0; j < basis.generators.size(); ++j)
      for (unsigned e = 0; e < basis.coords[mi][j]; ++e)
        acc = g->mul(acc, basis.generators[j]);
    CHECK(acc == Elt(mi));
  }
  CHECK_THROWS_AS(abelian_basis(whole_group(make_group("Q8"))), Error);
}
