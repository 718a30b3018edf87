#pragma once

// The big-center construction: decompose Z(G) into cyclic factors, induce a
// jointly faithful family of one-dimensional center characters up to G, and
// certify that the center acts freely on the resulting character-level
// product of spheres while every isotropy candidate meets the center
// trivially and obeys the rank bound.

#include <optional>
#include <string>
#include <vector>

#include "fusionforge/character.hpp"
#include "fusionforge/group.hpp"
#include "fusionforge/lattice.hpp"
#include "fusionforge/report.hpp"

namespace fusionforge {

struct ActionBlueprint {
  GroupPtr g;
  unsigned p = 0;
  Subgroup center_sub;
  AbelianBasis center_basis;
  std::vector<Character> center_chars; // chi_j on Z(G)
  std::vector<Character> spheres;      // theta_j = Ind_Z^G chi_j
  std::vector<Subgroup> isotropy_family; // all H with every dim theta_j^H > 0
  unsigned rank_g = 0;
  unsigned rank_z = 0;
  unsigned rank_bound = 0;             // rank_g - rank_z

  // verification results
  bool center_free = true;
  std::optional<Elt> center_stuck;     // central z fixed on every sphere
  bool family_ok = true;
  std::vector<unsigned> family_ranks;  // per family member
  std::optional<std::size_t> family_violation; // index of a bad member
};

/// Builds and verifies the blueprint.
inline ActionBlueprint bigcenter_blueprint(const GroupPtr& g,
                                           const Limits& lim = default_limits()) {
  ActionBlueprint bp;
  bp.g = g;
  if (g->order() > lim.max_g)
    throw Error("bigcenter_blueprint: group exceeds the configured bound");
  auto prime = p_group_prime(g);
  if (g->order() > 1 && !prime)
    throw Error("bigcenter_blueprint requires a p-group");
  bp.p = prime ? *prime : 2;
  bp.center_sub = center(g);
  bp.center_basis = abelian_basis(bp.center_sub);
  bp.rank_g = g->order() == 1 ? 0 : rank(g);
  bp.rank_z = bp.center_sub.order() == 1 ? 0 : subgroup_rank(bp.center_sub);
  bp.rank_bound = bp.rank_g - bp.rank_z;

  const std::size_t k = bp.center_basis.generators.size();
  Subgroup whole = whole_group(g);
  for (std::size_t j = 0; j < k; ++j) {
    // chi_j sends a_j to a primitive p^(n_j)-th root of unity and the other
    // generators to 1
    std::vector<Cyclotomic> vals;
    vals.reserve(bp.center_sub.members.size());
    for (std::size_t mi = 0; mi < bp.center_sub.members.size(); ++mi) {
      unsigned e = bp.center_basis.coords[mi][j];
      vals.push_back(
          Cyclotomic::root_of_unity(long(bp.center_basis.orders[j]), long(e)));
    }
    Character chi = Character::from_member_values(
        bp.center_sub, std::move(vals), "chi_" + std::to_string(j + 1));
    bp.spheres.push_back(induce_to(chi, whole));
    bp.center_chars.push_back(std::move(chi));
  }

  // isotropy family: subgroups fixing a nonzero vector on every sphere
  for (const auto& h : subgroups(g, lim.max_subgroup_enum)) {
    bool all_positive = true;
    for (const auto& theta : bp.spheres)
      if (fixed_dim_subgroup(theta, h) == 0) {
        all_positive = false;
        break;
      }
    if (all_positive) bp.isotropy_family.push_back(h);
  }

  // (i) the center acts freely on the product
  for (Elt z : bp.center_sub.members) {
    if (z == 0) continue;
    bool killed = false;
    for (const auto& theta : bp.spheres)
      if (fixed_dim(theta, z) == 0) {
        killed = true;
        break;
      }
    if (!killed) {
      bp.center_free = false;
      bp.center_stuck = z;
      break;
    }
  }

  // (ii) every family member meets Z trivially and obeys the rank bound
  for (std::size_t i = 0; i < bp.isotropy_family.size(); ++i) {
    const auto& h = bp.isotropy_family[i];
    std::size_t meet = 0;
    for (Elt m : h.members)
      if (bp.center_sub.contains(m)) ++meet;
    unsigned r = h.order() == 1 ? 0 : subgroup_rank(h);
    bp.family_ranks.push_back(r);
    if (meet != 1 || r > bp.rank_bound) {
      bp.family_ok = false;
      if (!bp.family_violation) bp.family_violation = i;
    }
  }
  return bp;
}

/// Report form of the blueprint checks.
inline VerificationReport blueprint_report(const ActionBlueprint& bp) {
  VerificationReport rep;
  rep.scenario = "bigcenter";
  rep.inputs = Json{{"group", bp.g->label()},
                    {"order", bp.g->order()},
                    {"p", bp.p}};
  Json spheres = Json::array();
  for (const auto& theta : bp.spheres)
    spheres.push_back(Json{{"degree", theta.degree()},
                           {"real_sphere_dimension", 2 * theta.degree() - 1}});
  Json family = Json::array();
  for (std::size_t i = 0; i < bp.isotropy_family.size(); ++i)
    family.push_back(Json{{"order", bp.isotropy_family[i].order()},
                          {"members", to_json(bp.isotropy_family[i])["members"]},
                          {"rank", bp.family_ranks[i]}});
  rep.claims.push_back(Claim{
      "center-decomposition",
      "cyclic decomposition of a finite abelian p-group",
      true,
      Json{{"factors", [&] {
              Json arr = Json::array();
              for (std::size_t j = 0; j < bp.center_basis.orders.size(); ++j)
                arr.push_back(Json{{"order", bp.center_basis.orders[j]},
                                   {"generator", bp.center_basis.generators[j]}});
              return arr;
            }()},
           {"spheres", spheres}}});
  rep.claims.push_back(Claim{
      "center-acts-freely",
      "jointly faithful center characters kill every central element",
      bp.center_free,
      bp.center_free
          ? Json{{"checked_elements", bp.center_sub.order() - 1}}
          : Json{{"stuck_element", *bp.center_stuck}}});
  rep.claims.push_back(Claim{
      "isotropy-rank-bound",
      "isotropy meets the center trivially and has rank at most rank(G)-rank(Z)",
      bp.family_ok,
      Json{{"rank_bound", bp.rank_bound}, {"family", family}}});
  return rep;
}

} // namespace fusionforge
