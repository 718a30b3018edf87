#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "fusionforge/gamma.hpp"
#include "fusionforge/pipeline.hpp"

using namespace fusionforge;

namespace {

GammaElement random_element(const GammaGroup& g, std::mt19937& rng) {
  GammaElement e = g.identity_element();
  std::shuffle(e.perm.begin(), e.perm.end(), rng);
  std::uniform_int_distribution<std::size_t> pick(0, g.s()->order() - 1);
  for (auto& t : e.twists) t = Elt(pick(rng));
  return e;
}

} // namespace

TEST_CASE("gamma over the regular biset is S itself") {
  auto q8 = make_group("Q8");
  auto reg = transitive_biset(q8, identity_hom(whole_group(q8)));
  GammaGroup gamma(reg);
  CHECK(gamma.orbits() == 1);
  // iota is injective and multiplicative, so Gamma contains a copy of S; a
  // single orbit makes |Gamma| = |S|, hence Gamma = iota(S)
  std::vector<GammaElement> images;
  for (std::size_t x = 0; x < q8->order(); ++x)
    images.push_back(gamma.iota(Elt(x)));
  for (std::size_t x = 0; x < q8->order(); ++x)
    for (std::size_t y = 0; y < q8->order(); ++y) {
      if (x < y) CHECK_FALSE(images[x] == images[y]);
      CHECK(gamma.mul(images[x], images[y]) ==
            images[q8->mul(Elt(x), Elt(y))]);
    }
}

TEST_CASE("orbit counts") {
  auto c4 = make_group("C4");
  auto f4 = full_fusion(c4);
  GammaGroup g4(canonical_stable_biset(c4, f4, whole_group(c4)));
  CHECK(g4.orbits() == 2); // |Gamma| = 4^2 * 2! = 32 abstractly

  auto q8 = make_group("Q8");
  auto f8 = full_fusion(q8);
  GammaGroup g8(canonical_stable_biset(q8, f8, unique_involution_subgroup(q8)));
  CHECK(g8.orbits() == 4); // n = |S : C2|
}

TEST_CASE("gamma element action and wreath law") {
  auto c4 = make_group("C4");
  auto f4 = full_fusion(c4);
  GammaGroup gamma(canonical_stable_biset(c4, f4, whole_group(c4)));

  CHECK(gamma.iota(0) == gamma.identity_element());

  // every iota(s) commutes with the right action and acts like left
  // translation
  const Biset& w = gamma.omega();
  for (std::size_t s = 0; s < c4->order(); ++s) {
    auto g = gamma.iota(Elt(s));
    for (std::uint32_t x = 0; x < w.points; ++x)
      CHECK(gamma.act(g, Elt(x)) == w.act_left(Elt(s), Elt(x)));
  }

  // composition of coordinates equals pointwise composition
  std::mt19937 rng(777);
  for (int iter = 0; iter < 200; ++iter) {
    auto a = random_element(gamma, rng);
    auto b = random_element(gamma, rng);
    auto ab = gamma.mul(a, b);
    for (std::uint32_t x = 0; x < w.points; ++x)
      CHECK(gamma.act(ab, Elt(x)) == gamma.act(a, gamma.act(b, Elt(x))));
    auto inv = gamma.inverse(a);
    CHECK(gamma.mul(a, inv) == gamma.identity_element());
    CHECK(gamma.mul(inv, a) == gamma.identity_element());
    auto [twists, perm] = gamma.wreath_coordinates(ab);
    CHECK(twists == ab.twists);
    CHECK(perm == ab.perm);
  }
}

TEST_CASE("iota in the cyclic example has identity permutation part") {
  // over an abelian S each summand is preserved, and the twists are the
  // automorphism values
  auto c4 = make_group("C4");
  auto f4 = full_fusion(c4);
  auto omega = canonical_stable_biset(c4, f4, whole_group(c4));
  GammaGroup gamma(omega);
  REQUIRE(gamma.orbits() == omega.summands.size());
  for (std::size_t s = 0; s < c4->order(); ++s) {
    auto g = gamma.iota(Elt(s));
    for (std::size_t i = 0; i < gamma.orbits(); ++i) {
      CHECK(g.perm[i] == i);
      // the transversal point of summand i is the class of (e, e); the twist
      // is phi_i(s)
      CHECK(g.twists[i] == omega.summands[i].phi.apply(Elt(s)));
    }
  }
}

TEST_CASE("iota permutation part in the quaternion example") {
  auto s = make_group("Q16");
  auto f = full_fusion(s);
  auto c2 = unique_involution_subgroup(s);
  auto omega = canonical_stable_biset(s, f, c2);
  GammaGroup gamma(omega);
  REQUIRE(gamma.orbits() == s->order() / 2);

  // each right orbit corresponds to a left coset s1 * C2 (the first pair
  // component up to C2); iota(s) must permute orbits the way s permutes
  // cosets
  Elt z = c2.members[1];
  auto coset_key = [&](Elt first) {
    return std::min(first, s->mul(Elt(first), z));
  };
  // identify each orbit by the coset of its transversal point: recover the
  // first component from the summand construction (points of S x_Delta S are
  // canonical pairs enumerated lexicographically, so act on (e,e) by left
  // translations to label orbits)
  std::vector<Elt> orbit_coset(gamma.orbits(), 0);
  {
    const Biset& w = gamma.omega();
    // point 0 is the class of (0,0); the orbit of act_left(a, point0)
    // belongs to coset a*C2
    for (std::size_t a = 0; a < s->order(); ++a) {
      Elt pt = w.act_left(Elt(a), 0);
      // find its orbit by scanning the transversal orbits
      auto g = gamma.iota(0); // identity, to access orbit structure via act
      (void)g;
      // decompose pt: find orbit index via transversal + right action
      for (std::size_t i = 0; i < gamma.orbits(); ++i)
        for (std::size_t t = 0; t < s->order(); ++t)
          if (w.act_right(gamma.transversal()[i], Elt(t)) == pt)
            orbit_coset[i] = coset_key(Elt(a));
    }
  }
  for (std::size_t x = 0; x < s->order(); ++x) {
    auto g = gamma.iota(Elt(x));
    for (std::size_t i = 0; i < gamma.orbits(); ++i) {
      // left translation maps the coset of orbit i to the coset of orbit
      // perm[i]
      Elt expect = coset_key(s->mul(Elt(x), orbit_coset[i]));
      CHECK(orbit_coset[g.perm[i]] == expect);
    }
  }
}

TEST_CASE("park witnesses") {
  auto c4 = make_group("C4");
  auto f4 = full_fusion(c4);
  auto omega = canonical_stable_biset(c4, f4, whole_group(c4));
  GammaGroup gamma(omega);

  // inner morphisms are realized by left translations directly
  for (std::size_t t = 0; t < c4->order(); ++t) {
    auto it = gamma.iota(Elt(t));
    auto it_inv = gamma.inverse(it);
    for (std::size_t q = 0; q < c4->order(); ++q) {
      auto lhs = gamma.mul(gamma.mul(it, gamma.iota(Elt(q))), it_inv);
      CHECK(lhs == gamma.iota(c4->conj(Elt(t), Elt(q))));
    }
  }

  // the inversion automorphism needs a witness that swaps the two summands
  auto auts = automorphisms(c4);
  Hom inversion{auts[1].domain, whole_group(c4), auts[1].images};
  auto pw = park_witness(gamma, inversion);
  REQUIRE(pw.eta.has_value());
  CHECK(pw.eta->perm[0] == 1);
  CHECK(pw.eta->perm[1] == 0);

  // the unique monomorphism C2 -> C4 also has a witness
  Subgroup c2;
  for (const auto& h : f4.subs)
    if (h.order() == 2) c2 = h;
  Hom mono{c2, whole_group(c4), c2.members};
  CHECK(park_witness(gamma, mono).eta.has_value());

  // witnesses satisfy the conjugation identity (re-verified externally)
  auto eta = *pw.eta;
  auto eta_inv = gamma.inverse(eta);
  for (Elt q : whole_group(c4).members) {
    auto lhs = gamma.mul(gamma.mul(eta, gamma.iota(q)), eta_inv);
    CHECK(lhs == gamma.iota(inversion.apply(q)));
  }
}

TEST_CASE("fusion containment verdicts") {
  auto c4 = make_group("C4");
  auto f4 = full_fusion(c4);
  GammaGroup g4(canonical_stable_biset(c4, f4, whole_group(c4)));
  CHECK(verify_fusion_containment(g4, f4).contained);

  auto q8 = make_group("Q8");
  auto f8 = full_fusion(q8);
  GammaGroup g8(canonical_stable_biset(q8, f8, unique_involution_subgroup(q8)));
  CHECK(verify_fusion_containment(g8, f8).contained);

  // the identity-summand-only biset does not realize the inversion
  GammaGroup bad(transitive_biset(c4, identity_hom(whole_group(c4))));
  auto report = verify_fusion_containment(bad, f4);
  CHECK_FALSE(report.contained);
  bool inversion_fails = false;
  for (const auto& e : report.entries)
    if (e.q.order() == 4 && !e.ok) inversion_fails = true;
  CHECK(inversion_fails);
}

TEST_CASE("compatible families") {
  // trivial family
  auto q8 = make_group("Q8");
  auto f8 = full_fusion(q8);
  GammaGroup g8(canonical_stable_biset(q8, f8, unique_involution_subgroup(q8)));
  auto fam = build_compatible_family(
      q8, {trivial_subgroup(q8)}, g8, f8,
      {Hom{trivial_subgroup(q8), whole_group(q8), {0}}});
  CHECK(fam.ok);

  // all rank-one subgroups of Q8 mapped into S = Q8 by inclusions
  std::vector<Subgroup> family = subgroups(q8);
  std::vector<Hom> embeddings;
  for (const auto& h : family)
    embeddings.push_back(inclusion_hom(h, whole_group(q8)));
  auto fam2 = build_compatible_family(q8, family, g8, f8, embeddings);
  CHECK(fam2.ok);
  CHECK(fam2.witnesses.size() > 0);
  // re-verify a few witness squares externally
  std::mt19937 rng(99);
  std::uniform_int_distribution<std::size_t> pick(0, fam2.witnesses.size() - 1);
  for (int i = 0; i < 10; ++i) {
    const auto& wt = fam2.witnesses[pick(rng)];
    const auto& h = family[wt.h_index];
    const auto& ih = embeddings[wt.h_index];
    const auto& ik = embeddings[wt.k_index];
    auto gamma_inv = g8.inverse(wt.gamma);
    for (std::size_t mi = 0; mi < h.members.size(); ++mi) {
      auto lhs = g8.mul(
          g8.mul(wt.gamma, g8.iota(ih.apply(h.members[mi]))), gamma_inv);
      CHECK(lhs == g8.iota(ik.apply(wt.cg_images[mi])));
    }
  }
}
