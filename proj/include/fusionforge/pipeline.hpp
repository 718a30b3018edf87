#pragma once

// End-to-end packages: for a base group S of one of the three supported
// shapes, build the full fusion system, the canonical stable biset over the
// designated characteristic subgroup, Gamma_Omega, the base character V and
// the induced module; verify stability, fusion containment, the Mackey
// decomposition for every subgroup, and the shape's freeness or fixed-point
// claim.  The rank-reduction plan iterates blueprint + packages until the
// residual isotropy family is trivial.

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fusionforge/biset.hpp"
#include "fusionforge/blueprint.hpp"
#include "fusionforge/character.hpp"
#include "fusionforge/fusion.hpp"
#include "fusionforge/gamma.hpp"
#include "fusionforge/report.hpp"
#include "fusionforge/tilde.hpp"

namespace fusionforge {

enum class ExampleKind { cyclic, quaternion, elem_abelian };

inline std::string kind_name(ExampleKind k) {
  switch (k) {
    case ExampleKind::cyclic: return "cyclic";
    case ExampleKind::quaternion: return "quaternion";
    case ExampleKind::elem_abelian: return "elem_abelian";
  }
  return "?";
}

inline std::optional<ExampleKind> kind_from_name(const std::string& s) {
  if (s == "cyclic") return ExampleKind::cyclic;
  if (s == "quaternion") return ExampleKind::quaternion;
  if (s == "elem_abelian") return ExampleKind::elem_abelian;
  return std::nullopt;
}

/// The unique subgroup of order 2 of a generalized quaternion group.
inline Subgroup unique_involution_subgroup(const GroupPtr& s) {
  std::vector<Elt> inv;
  for (std::size_t x = 1; x < s->order(); ++x)
    if (s->element_order(Elt(x)) == 2) inv.push_back(Elt(x));
  if (inv.size() != 1)
    throw Error(s->label() + " does not have a unique involution");
  return Subgroup{s, {0, inv.front()}};
}

/// The shape's base character V of S.
inline Character example_base_character(ExampleKind kind, const GroupPtr& s) {
  switch (kind) {
    case ExampleKind::cyclic: {
      // faithful one-dimensional character a^k -> zeta^k
      const long n = long(s->order());
      std::vector<Cyclotomic> vals;
      vals.reserve(s->order());
      for (long k = 0; k < n; ++k)
        vals.push_back(Cyclotomic::root_of_unity(n, k));
      return Character::from_member_values(whole_group(s), std::move(vals),
                                           "faithful-1dim");
    }
    case ExampleKind::quaternion: {
      // degree-2 faithful character: induced from a faithful character of
      // the index-2 cyclic subgroup <a>
      const long m = long(s->order() / 2);
      std::vector<Elt> a_members(static_cast<std::size_t>(m), 0);
      for (long i = 0; i < m; ++i) a_members[std::size_t(i)] = Elt(i);
      Subgroup a{s, std::move(a_members)};
      std::vector<Cyclotomic> vals;
      vals.reserve(a.members.size());
      for (long i = 0; i < m; ++i)
        vals.push_back(Cyclotomic::root_of_unity(m, i));
      Character chi =
          Character::from_member_values(a, std::move(vals), "zeta-cyclic");
      return induce_to(chi, whole_group(s));
    }
    case ExampleKind::elem_abelian:
      return augmented_regular_character(whole_group(s));
  }
  throw Error("unknown example kind");
}

/// A fully built (S, F, K, Omega, Gamma, V, Vtilde) package.
struct ExamplePackage {
  ExampleKind kind;
  GroupPtr s;
  FusionSystem fusion;
  Subgroup k;
  CharacteristicCertificate characteristic;
  Biset omega;
  std::shared_ptr<GammaGroup> gamma;
  Character v;
  TildeModule tilde;
};

inline ExamplePackage build_example_package(ExampleKind kind, const GroupPtr& s,
                                            const Limits& lim = default_limits()) {
  ExamplePackage pkg;
  pkg.kind = kind;
  pkg.s = s;
  pkg.fusion = full_fusion(s, lim);
  pkg.k = kind == ExampleKind::quaternion ? unique_involution_subgroup(s)
                                          : whole_group(s);
  pkg.characteristic = is_characteristic(pkg.fusion, pkg.k);
  pkg.omega = canonical_stable_biset(s, pkg.fusion, pkg.k);
  pkg.gamma = std::make_shared<GammaGroup>(pkg.omega);
  pkg.v = example_base_character(kind, s);
  pkg.tilde = make_tilde_module(pkg.gamma, pkg.v);
  return pkg;
}

inline GroupPtr example_group(ExampleKind kind, unsigned p, unsigned n) {
  switch (kind) {
    case ExampleKind::cyclic: {
      unsigned order = 1;
      for (unsigned i = 0; i < n; ++i) order *= p;
      return cyclic_group(order);
    }
    case ExampleKind::quaternion: {
      if (p != 2) throw Error("quaternion example requires p = 2");
      if (n < 3) throw Error("quaternion example requires N >= 3");
      return quaternion_group(1u << n);
    }
    case ExampleKind::elem_abelian:
      return elementary_abelian_group(p, n);
  }
  throw Error("unknown example kind");
}

/// Runs one example scenario and emits the full report
///.
inline VerificationReport run_example(ExampleKind kind, unsigned p, unsigned n,
                                      const Limits& lim = default_limits(),
                                      bool keep_witnesses = false) {
  GroupPtr s = example_group(kind, p, n);
  ExamplePackage pkg = build_example_package(kind, s, lim);
  VerificationReport rep;
  rep.scenario = "run-example " + kind_name(kind);
  rep.inputs = Json{{"kind", kind_name(kind)},
                    {"p", p},
                    {"N", n},
                    {"S", s->label()},
                    {"K", pkg.k.describe()},
                    {"V_degree", pkg.v.degree()},
                    {"omega", to_json(pkg.omega)}};

  rep.claims.push_back(Claim{
      "characteristic-subgroup",
      "every fusion morphism out of a subgroup of K extends to K",
      pkg.characteristic.holds,
      Json{{"K", pkg.k.describe()},
           {"checked_pairs", pkg.characteristic.entries.size()}}});

  // stability
  {
    auto st = is_left_stable(pkg.omega, pkg.fusion, keep_witnesses, lim);
    std::size_t witnesses = 0;
    Json fail = nullptr;
    for (const auto& e : st.entries)
      if (e.ok) ++witnesses;
      else if (fail.is_null())
        fail = Json{{"Q_order", e.q.order()},
                    {"phi", hom_map_table(e.phi)},
                    {"H_members", to_json(e.mismatch->h)["members"]},
                    {"marks", Json::array({e.mismatch->plain, e.mismatch->twisted})}};
    rep.claims.push_back(Claim{
        "left-stability",
        "mark-vector comparison over the subgroups of QxS",
        st.stable,
        st.stable ? Json{{"pairs_checked", st.entries.size()},
                        {"witnesses", witnesses}}
                  : fail});
  }

  // fusion containment
  {
    auto ct = verify_fusion_containment(*pkg.gamma, pkg.fusion, lim);
    Json fail = nullptr;
    Json sample = nullptr;
    for (const auto& e : ct.entries) {
      if (!e.ok && fail.is_null())
        fail = Json{{"Q_order", e.q.order()}, {"phi", hom_map_table(e.phi)}};
      if (e.ok && sample.is_null() && e.eta)
        sample = Json{{"phi", hom_map_table(e.phi)}, {"eta", to_json(*e.eta)}};
    }
    rep.claims.push_back(Claim{
        "fusion-containment",
        "explicit conjugation witnesses in the wreath group",
        ct.contained,
        ct.contained ? Json{{"pairs_checked", ct.entries.size()},
                           {"sample_witness", sample}}
                     : fail});
  }

  // Mackey decomposition for every subgroup of S
  {
    bool all_equal = true;
    Json fail = nullptr;
    std::size_t checked = 0;
    bool quaternion_multiple_ok = true;
    for (const auto& h : pkg.fusion.subs) {
      auto mk = mackey_check(pkg.tilde, h);
      ++checked;
      if (!mk.equal) {
        all_equal = false;
        if (fail.is_null())
          fail = Json{{"H", h.describe()},
                      {"class", *mk.first_mismatch_class}};
      }
      if (kind == ExampleKind::quaternion) {
        Character unit =
            h.order() > 1
                ? induce_to(restrict_character(pkg.v, pkg.k), h)
                : restrict_character(pkg.v, h);
        if (!multiple_of(mk.assembled, unit)) quaternion_multiple_ok = false;
      }
    }
    rep.claims.push_back(Claim{
        "mackey-decomposition",
        "double-coset decomposition of the restricted induced module",
        all_equal,
        all_equal ? Json{{"subgroups_checked", checked}} : fail});
    if (kind == ExampleKind::quaternion)
      rep.claims.push_back(Claim{
          "restriction-is-multiple",
          "restrictions are multiples of the module induced from the core C2",
          quaternion_multiple_ok,
          Json{{"subgroups_checked", checked}}});
  }

  // shape-specific freeness / fixed-point claims
  switch (kind) {
    case ExampleKind::cyclic:
    case ExampleKind::quaternion: {
      bool all_free = true;
      Json fail = nullptr;
      Json dims = Json::array();
      for (const auto& h : pkg.fusion.subs) {
        if (h.order() == 1) continue;
        auto cert = free_on_sphere(restrict_tilde(pkg.tilde, h));
        Json fd = Json::array();
        for (auto [elt, d] : cert.fixed_dims)
          fd.push_back(Json::array({elt, d}));
        dims.push_back(Json{{"H", h.describe()}, {"fixed_dims", fd}});
        if (!cert.free) {
          all_free = false;
          if (fail.is_null())
            fail = Json{{"H", h.describe()}, {"element", *cert.witness}};
        }
      }
      rep.claims.push_back(Claim{
          "free-on-sphere",
          "every nontrivial element has fixed dimension zero",
          all_free,
          all_free ? Json{{"per_subgroup", dims}} : fail});
      break;
    }
    case ExampleKind::elem_abelian: {
      // alpha_H^*(Vtilde) = iota_H^*(V^(n)) with n = |Aut(S)|
      const long n_aut = long(pkg.gamma->orbits());
      bool identity_ok = true;
      Json fail = nullptr;
      auto auts = automorphisms(pkg.s);
      for (const auto& h : pkg.fusion.subs) {
        Character lhs = restrict_tilde(pkg.tilde, h);
        Character rhs = zero_character(h);
        for (const auto& phi : auts)
          rhs = add_characters(
              rhs, restrict_character(isogate(pkg.v, phi), h));
        if (!(lhs == rhs)) {
          identity_ok = false;
          if (fail.is_null()) fail = Json{{"H", h.describe()}};
        }
      }
      rep.claims.push_back(Claim{
          "twisted-sum-identity",
          "restriction equals the sum of automorphism twists of V",
          identity_ok,
          identity_ok ? Json{{"n", n_aut}} : fail});
      // maximal-rank subgroups have no fixed points on the sphere
      Character top = restrict_tilde(pkg.tilde, whole_group(pkg.s));
      long dim_top = fixed_dim_subgroup(top, whole_group(pkg.s));
      rep.claims.push_back(Claim{
          "maximal-rank-no-fixed-points",
          "the augmented regular character has no invariants on the whole group",
          dim_top == 0,
          Json{{"fixed_dim", dim_top}}});
      break;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Rank-reduction plan.
// ---------------------------------------------------------------------------

struct PlanStage {
  ExampleKind shape;
  GroupPtr s;
  std::vector<std::size_t> members;   // indices into plan.family
  std::vector<Hom> embeddings;        // iota_H per member, into S
  std::vector<Character> alpha_chars; // alpha_H^*(Vtilde) per member
  std::vector<long> self_fixed_dims;  // dim (alpha_H^* Vtilde)^H per member
  std::size_t witnesses = 0;          // compatible-family squares verified
};

struct RankReductionPlan {
  GroupPtr g;
  ActionBlueprint blueprint;
  std::vector<Subgroup> family;       // blueprint isotropy family
  std::vector<PlanStage> stages;
  bool complete = false;

  struct ElementCert {
    std::size_t member;  // index into family
    Elt element;
    std::string killed_by;
  };
  std::vector<ElementCert> certificate;
  bool certificate_ok = false;
};

namespace detail {

inline bool subgroup_is_cyclic(const Subgroup& h) {
  for (Elt m : h.members)
    if (h.parent->element_order(m) == h.order()) return true;
  return h.order() == 1;
}

/// Deterministic embedding of a family member into the stage group S.
inline Hom plan_embedding(ExampleKind shape, const Subgroup& h,
                          const GroupPtr& s) {
  Subgroup target = whole_group(s);
  const auto& g = *h.parent;
  if (h.order() == 1) return Hom{h, target, {0}};
  switch (shape) {
    case ExampleKind::cyclic: {
      // least generator of H to the canonical generator of the unique
      // subgroup of matching order
      Elt gen = 0;
      for (Elt m : h.members)
        if (g.element_order(m) == h.order()) {
          gen = m;
          break;
        }
      Elt t = Elt(s->order() / h.order()); // a^(|S|/|H|)
      std::vector<Elt> images(h.members.size());
      Elt x = 0, y = 0;
      for (std::size_t i = 0; i < h.order(); ++i) {
        images[h.member_index(x)] = y;
        x = g.mul(x, gen);
        y = s->mul(y, t);
      }
      return make_hom(h, target, std::move(images));
    }
    case ExampleKind::quaternion: {
      const unsigned m = unsigned(s->order() / 2); // order of a in S
      if (subgroup_is_cyclic(h)) {
        Elt gen = 0;
        for (Elt mm : h.members)
          if (g.element_order(mm) == h.order()) {
            gen = mm;
            break;
          }
        if (h.order() > m)
          throw Error("cyclic member does not embed in the quaternion stage group");
        Elt t = Elt(m / h.order()); // inside <a>
        std::vector<Elt> images(h.members.size());
        Elt x = 0, y = 0;
        for (std::size_t i = 0; i < h.order(); ++i) {
          images[h.member_index(x)] = y;
          x = g.mul(x, gen);
          y = s->mul(y, t);
        }
        return make_hom(h, target, std::move(images));
      }
      // quaternion member: map a maximal-order generator pair onto (a^k, b)
      const unsigned half_order = unsigned(h.order() / 2);
      Elt a_h = 0;
      for (Elt mm : h.members)
        if (g.element_order(mm) == half_order) {
          a_h = mm;
          break;
        }
      if (a_h == 0) throw Error("family member is not quaternion-shaped");
      Subgroup cyc = generated_subgroup(h.parent, {a_h});
      Elt b_h = 0;
      for (Elt mm : h.members)
        if (!cyc.contains(mm)) {
          b_h = mm;
          break;
        }
      Elt a_img = Elt(m / half_order); // a^(m/|a_h|)
      Elt b_img = Elt(m);              // b
      std::vector<Elt> images(h.members.size());
      Elt xa = 0, ya = 0;
      for (unsigned i = 0; i < half_order; ++i) {
        images[h.member_index(xa)] = ya;
        Elt xb = g.mul(xa, b_h);
        images[h.member_index(xb)] = s->mul(ya, b_img);
        xa = g.mul(xa, a_h);
        ya = s->mul(ya, a_img);
      }
      return make_hom(h, target, std::move(images));
    }
    case ExampleKind::elem_abelian: {
      auto basis = abelian_basis(h);
      const unsigned p = g.element_order(basis.generators.front());
      std::vector<Elt> images(h.members.size());
      for (std::size_t mi = 0; mi < h.members.size(); ++mi) {
        // e_i in S = C_p^R is element index p^i
        std::size_t img = 0, base = 1;
        for (std::size_t j = 0; j < basis.generators.size(); ++j) {
          img += std::size_t(basis.coords[mi][j]) * base;
          base *= p;
        }
        images[mi] = Elt(img);
      }
      return make_hom(h, target, std::move(images));
    }
  }
  throw Error("unknown plan shape");
}

} // namespace detail

/// Builds the staged plan: blueprint first,
/// then example packages over a shape-matched S until every nontrivial
/// isotropy candidate is killed on some sphere.
inline RankReductionPlan rank_reduction_plan(const GroupPtr& g,
                                             const Limits& lim = default_limits()) {
  RankReductionPlan plan;
  plan.g = g;
  plan.blueprint = bigcenter_blueprint(g, lim);
  plan.family = plan.blueprint.isotropy_family;
  const unsigned p = plan.blueprint.p;

  std::vector<std::size_t> residual;
  for (std::size_t i = 0; i < plan.family.size(); ++i)
    if (plan.family[i].order() > 1) residual.push_back(i);

  const std::size_t stage_cap = plan.blueprint.rank_g + 2;
  while (!residual.empty()) {
    if (plan.stages.size() >= stage_cap)
      throw Error("rank reduction did not terminate within the stage cap");
    // classify the residual family shape
    bool all_cyclic = true, all_rank_one = true, all_elem_ab = true;
    unsigned max_cyc = 1, max_quat = 0, max_rank = 1;
    for (std::size_t i : residual) {
      const auto& h = plan.family[i];
      bool cyc = detail::subgroup_is_cyclic(h);
      unsigned r = subgroup_rank(h);
      if (!cyc) all_cyclic = false;
      if (r > 1) all_rank_one = false;
      if (!is_elementary_abelian(h, p)) all_elem_ab = false;
      if (cyc) max_cyc = std::max<unsigned>(max_cyc, unsigned(h.order()));
      else if (r == 1) max_quat = std::max<unsigned>(max_quat, unsigned(h.order()));
      max_rank = std::max(max_rank, r);
    }
    ExampleKind shape;
    GroupPtr s;
    if (all_cyclic) {
      shape = ExampleKind::cyclic;
      s = cyclic_group(max_cyc);
    } else if (p == 2 && all_rank_one) {
      shape = ExampleKind::quaternion;
      // a cyclic C_{2^k} needs the index-2 cyclic subgroup to contain it
      unsigned order = std::max(8u, std::max(2 * max_cyc, max_quat));
      s = quaternion_group(order);
    } else if (all_elem_ab) {
      shape = ExampleKind::elem_abelian;
      s = elementary_abelian_group(p, max_rank);
    } else {
      throw Error("isotropy family shape is not supported by the staged construction");
    }

    ExamplePackage pkg = build_example_package(shape, s, lim);
    PlanStage stage;
    stage.shape = shape;
    stage.s = s;
    stage.members = residual;
    std::vector<Subgroup> fam_subs;
    for (std::size_t i : residual) {
      fam_subs.push_back(plan.family[i]);
      stage.embeddings.push_back(detail::plan_embedding(shape, plan.family[i], s));
    }
    // trivial subgroup is always part of the compatible family
    fam_subs.push_back(trivial_subgroup(g));
    stage.embeddings.push_back(Hom{trivial_subgroup(g), whole_group(s), {0}});
    CompatibleFamily fam = build_compatible_family(
        g, fam_subs, *pkg.gamma, pkg.fusion, stage.embeddings, lim);
    if (!fam.ok)
      throw Error("compatible family construction failed: " + fam.failure);
    stage.witnesses = fam.witnesses.size();
    stage.embeddings.pop_back(); // keep one embedding per residual member

    std::vector<std::size_t> next;
    for (std::size_t idx = 0; idx < residual.size(); ++idx) {
      Character chi =
          restrict_tilde_along(pkg.tilde, stage.embeddings[idx]);
      long d = fixed_dim_subgroup(chi, plan.family[residual[idx]]);
      stage.alpha_chars.push_back(std::move(chi));
      stage.self_fixed_dims.push_back(d);
      if (d > 0) next.push_back(residual[idx]);
    }
    plan.stages.push_back(std::move(stage));
    residual = std::move(next);
  }
  plan.complete = true;

  // total freeness certificate: every nontrivial element of every family
  // member is killed on some constructed sphere
  plan.certificate_ok = true;
  for (std::size_t fi = 0; fi < plan.family.size(); ++fi) {
    const auto& h = plan.family[fi];
    for (Elt m : h.members) {
      if (m == 0) continue;
      std::string killed;
      for (std::size_t j = 0; j < plan.blueprint.spheres.size() && killed.empty();
           ++j)
        if (fixed_dim(plan.blueprint.spheres[j], m) == 0)
          killed = "blueprint sphere " + std::to_string(j + 1);
      // locate <m> in the family and follow it through the stages
      Subgroup cyc = generated_subgroup(g, {m});
      std::size_t cyc_idx = std::size_t(-1);
      for (std::size_t i = 0; i < plan.family.size(); ++i)
        if (plan.family[i].members == cyc.members) {
          cyc_idx = i;
          break;
        }
      for (std::size_t si = 0; si < plan.stages.size() && killed.empty(); ++si) {
        const auto& stage = plan.stages[si];
        for (std::size_t idx = 0; idx < stage.members.size(); ++idx)
          if (stage.members[idx] == cyc_idx &&
              fixed_dim(stage.alpha_chars[idx], m) == 0) {
            killed = "stage " + std::to_string(si + 1) + " sphere";
            break;
          }
      }
      if (killed.empty()) {
        plan.certificate_ok = false;
        killed = "NOT KILLED";
      }
      plan.certificate.push_back(
          RankReductionPlan::ElementCert{fi, m, std::move(killed)});
    }
  }
  return plan;
}

/// Report form of a plan.
inline VerificationReport plan_report(const RankReductionPlan& plan) {
  VerificationReport rep;
  rep.scenario = "plan";
  rep.inputs = Json{{"group", plan.g->label()}, {"order", plan.g->order()}};
  VerificationReport bp_rep = blueprint_report(plan.blueprint);
  for (auto& c : bp_rep.claims) rep.claims.push_back(std::move(c));

  Json stages = Json::array();
  for (const auto& st : plan.stages) {
    Json members = Json::array();
    for (std::size_t idx = 0; idx < st.members.size(); ++idx)
      members.push_back(
          Json{{"H", plan.family[st.members[idx]].describe()},
               {"iota_H", hom_map_table(st.embeddings[idx])},
               {"self_fixed_dim", st.self_fixed_dims[idx]}});
    stages.push_back(Json{{"shape", kind_name(st.shape)},
                          {"S", st.s->label()},
                          {"compatibility_witnesses", st.witnesses},
                          {"members", members}});
  }
  rep.claims.push_back(Claim{
      "stages-terminate",
      "each stage kills its maximal members; the residual family shrinks to 1",
      plan.complete,
      Json{{"stages", stages}}});

  Json cert = Json::array();
  for (const auto& ec : plan.certificate)
    cert.push_back(Json{{"H", plan.family[ec.member].describe()},
                        {"element", ec.element},
                        {"killed_by", ec.killed_by}});
  rep.claims.push_back(Claim{
      "total-freeness-certificate",
      "every nontrivial isotropy element has fixed dimension zero on some sphere",
      plan.certificate_ok,
      Json{{"elements", cert}}});
  rep.claims.push_back(Claim{
      "sphere-realization",
      "realization of the character-level spheres as a smooth action",
      true,
      Json{{"status", "external existence result - not computed"}}});
  return rep;
}

} // namespace fusionforge
