#include <catch2/catch_amalgamated.hpp>

#include "fusionforge/pipeline.hpp"

using namespace fusionforge;

TEST_CASE("blueprint for Q8 gives a free action") {
  auto bp = bigcenter_blueprint(make_group("Q8"));
  REQUIRE(bp.spheres.size() == 1);
  CHECK(bp.spheres[0].degree() == 4);
  REQUIRE(bp.isotropy_family.size() == 1);
  CHECK(bp.isotropy_family[0].order() == 1);
  CHECK(bp.center_free);
  CHECK(bp.family_ok);
  CHECK(bp.rank_bound == 0);
}

TEST_CASE("blueprint for the exponent-p extraspecial group of order 27") {
  auto bp = bigcenter_blueprint(make_group("ES(27,exp_p)"));
  REQUIRE(bp.spheres.size() == 1);
  CHECK(bp.spheres[0].degree() == 9);
  CHECK(bp.center_free);
  CHECK(bp.family_ok);
  CHECK(bp.rank_bound == 1);
  // family members are elementary abelian of rank <= 1
  for (const auto& h : bp.isotropy_family) {
    CHECK((h.order() == 1 || h.order() == 3));
    if (h.order() > 1) CHECK(is_elementary_abelian(h, 3));
  }
  // and there are nontrivial ones
  CHECK(bp.isotropy_family.size() > 1);
}

TEST_CASE("blueprint for C2 x C2") {
  auto bp = bigcenter_blueprint(make_group("C2^2"));
  REQUIRE(bp.spheres.size() == 2);
  CHECK(bp.spheres[0].degree() == 1);
  CHECK(bp.spheres[1].degree() == 1);
  REQUIRE(bp.isotropy_family.size() == 1);
  CHECK(bp.isotropy_family[0].order() == 1);
}

TEST_CASE("blueprint family is subgroup- and conjugation-closed") {
  for (const char* name :
       {"Q8", "D8", "ES(27,exp_p)", "ES(27,exp_p2)", "ES(32,plus)",
        "ES(32,minus)", "C2xC4", "Q16", "C3^2", "Q8xQ8", "C4xC4xC2"}) {
    auto g = make_group(name);
    auto bp = bigcenter_blueprint(g);
    INFO(name);
    CHECK(bp.center_free);
    CHECK(bp.family_ok);
    auto in_family = [&](const std::vector<Elt>& members) {
      return std::any_of(
          bp.isotropy_family.begin(), bp.isotropy_family.end(),
          [&](const Subgroup& h) { return h.members == members; });
    };
    for (const auto& h : bp.isotropy_family) {
      for (const auto& sub : subgroups_within(h))
        CHECK(in_family(sub.members));
      for (std::size_t t = 0; t < g->order(); ++t) {
        std::vector<Elt> conj;
        for (Elt m : h.members) conj.push_back(g->conj(Elt(t), m));
        std::sort(conj.begin(), conj.end());
        CHECK(in_family(conj));
      }
      CHECK(fixed_dim_subgroup(bp.spheres[0], h) > 0);
    }
  }
}

TEST_CASE("blueprint rejects non-p-groups") {
  CHECK_THROWS_AS(bigcenter_blueprint(make_group("D6")), Error);
  CHECK_THROWS_AS(bigcenter_blueprint(make_group("C2xC3")), Error);
}

TEST_CASE("run_example reports pass") {
  CHECK(run_example(ExampleKind::cyclic, 2, 2).all_pass());
  CHECK(run_example(ExampleKind::cyclic, 3, 1).all_pass());
  CHECK(run_example(ExampleKind::quaternion, 2, 3).all_pass());
  CHECK(run_example(ExampleKind::elem_abelian, 2, 2).all_pass());
  CHECK(run_example(ExampleKind::elem_abelian, 3, 2).all_pass());
  CHECK_THROWS_AS(run_example(ExampleKind::quaternion, 3, 3), Error);
  CHECK_THROWS_AS(run_example(ExampleKind::quaternion, 2, 2), Error);
}

TEST_CASE("rank reduction plan for Q8 needs no stages") {
  auto plan = rank_reduction_plan(make_group("Q8"));
  CHECK(plan.stages.empty());
  CHECK(plan.complete);
  CHECK(plan.certificate_ok);
  CHECK(plan_report(plan).all_pass());
}

TEST_CASE("rank reduction plan for the order-27 extraspecial group") {
  auto plan = rank_reduction_plan(make_group("ES(27,exp_p)"));
  REQUIRE(plan.stages.size() == 1);
  CHECK(plan.stages[0].shape == ExampleKind::cyclic);
  CHECK(plan.stages[0].s->label() == "C3");
  CHECK(plan.stages[0].witnesses > 0); // compatible-family squares verified
  CHECK(plan.complete);
  CHECK(plan.certificate_ok);
  // every member that entered the stage was killed there
  for (long d : plan.stages[0].self_fixed_dims) CHECK(d == 0);
  auto rep = plan_report(plan);
  CHECK(rep.all_pass());
}

TEST_CASE("rank reduction with maximal-rank center terminates immediately") {
  for (const char* name : {"C16", "C3^2", "C2xC4"}) {
    auto plan = rank_reduction_plan(make_group(name));
    INFO(name);
    CHECK(plan.stages.empty());
    CHECK(plan.complete);
    CHECK(plan.certificate_ok);
  }
}

TEST_CASE("rank reduction through a quaternion stage") {
  // D8 has noncentral involutions; its residual family is cyclic of order 2
  auto plan = rank_reduction_plan(make_group("D8"));
  REQUIRE(plan.stages.size() == 1);
  CHECK(plan.stages[0].shape == ExampleKind::cyclic);
  CHECK(plan.complete);
  CHECK(plan.certificate_ok);

  // ES(32,minus) mixes C2 and C4 members
  auto plan32 = rank_reduction_plan(make_group("ES(32,minus)"));
  CHECK(plan32.complete);
  CHECK(plan32.certificate_ok);
  CHECK(plan_report(plan32).all_pass());
}

TEST_CASE("two-stage rank reduction for the plus-type order-32 group") {
  // rank 3: the blueprint leaves rank-2 elementary abelian isotropy, the
  // first stage kills it over C2^2, the second kills the surviving C2s
  auto plan = rank_reduction_plan(make_group("ES(32,plus)"));
  REQUIRE(plan.stages.size() == 2);
  CHECK(plan.stages[0].shape == ExampleKind::elem_abelian);
  CHECK(plan.stages[0].s->label() == "C2^2");
  CHECK(plan.stages[1].shape == ExampleKind::cyclic);
  CHECK(plan.stages[1].s->label() == "C2");
  CHECK(plan.complete);
  CHECK(plan.certificate_ok);
  CHECK(plan_report(plan).all_pass());
}

TEST_CASE("plans complete for every blueprint corpus group") {
  for (const char* name :
       {"C2xC4", "D16", "D32", "C2xD8", "C4xD8", "C2^2xD8", "C2xQ16",
        "C4xQ8", "ES(27,exp_p2)", "C2^4", "C3xC9"}) {
    auto plan = rank_reduction_plan(make_group(name));
    INFO(name);
    CHECK(plan.complete);
    CHECK(plan.certificate_ok);
  }
}

TEST_CASE("example packages respect their construction recipe") {
  auto pkg = build_example_package(ExampleKind::quaternion, make_group("Q16"));
  CHECK(pkg.k.order() == 2);
  CHECK(pkg.omega.summands.size() == 1);
  CHECK(pkg.v.degree() == 2);
  // V is faithful: no nontrivial kernel elements
  for (std::size_t x = 1; x < pkg.s->order(); ++x)
    CHECK_FALSE(pkg.v.at(Elt(x)) == Cyclotomic(2));
  // the designated C2 acts freely on S(V)
  CHECK(fixed_dim(pkg.v, pkg.k.members[1]) == 0);
}
