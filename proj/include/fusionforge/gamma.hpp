#pragma once

// The finite group Gamma_Omega of right-S-equivariant bijections of a bifree
// biset Omega, in wreath coordinates: an element is a permutation of the
// right-S-orbit transversal together with one S-twist per orbit,
// f(x_i . s) = x_{perm[i]} . (twist[i] s).  Gamma_Omega is never materialized
// as an element list; every verification is witness-based.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fusionforge/biset.hpp"
#include "fusionforge/fusion.hpp"
#include "fusionforge/group.hpp"

namespace fusionforge {

struct GammaElement {
  std::vector<std::uint16_t> perm; // orbit index -> orbit index
  std::vector<Elt> twists;         // per source orbit

  bool operator==(const GammaElement& o) const {
    return perm == o.perm && twists == o.twists;
  }
};

class GammaGroup {
public:
  /// Builds Gamma_Omega for a bifree S-S biset.
  /// The transversal is the least point of each right orbit.
  explicit GammaGroup(Biset omega) : omega_(std::move(omega)) {
    const std::size_t ns = omega_.s->order();
    if (omega_.points == 0) throw Error("gamma_group needs a non-empty biset");
    // right action must be free
    orbit_of_.assign(omega_.points, std::uint16_t(-1));
    shift_of_.assign(omega_.points, 0);
    for (std::uint32_t x = 0; x < omega_.points; ++x) {
      for (std::size_t t = 1; t < ns; ++t)
        if (omega_.act_right(Elt(x), Elt(t)) == Elt(x))
          throw Error("right S-action is not free");
    }
    for (std::uint32_t x = 0; x < omega_.points; ++x) {
      if (orbit_of_[x] != std::uint16_t(-1)) continue;
      std::uint16_t oi = std::uint16_t(transversal_.size());
      transversal_.push_back(Elt(x));
      for (std::size_t t = 0; t < ns; ++t) {
        Elt y = omega_.act_right(Elt(x), Elt(t));
        if (orbit_of_[y] != std::uint16_t(-1))
          throw Error("right S-action is not free");
        orbit_of_[y] = oi;
        shift_of_[y] = Elt(t);
      }
    }
  }

  const Biset& omega() const { return omega_; }
  const GroupPtr& s() const { return omega_.s; }
  std::size_t orbits() const { return transversal_.size(); }
  const std::vector<Elt>& transversal() const { return transversal_; }

  GammaElement identity_element() const {
    GammaElement e;
    e.perm.resize(orbits());
    for (std::size_t i = 0; i < orbits(); ++i) e.perm[i] = std::uint16_t(i);
    e.twists.assign(orbits(), 0);
    return e;
  }

  /// Applies a GammaElement to a point of Omega.
  Elt act(const GammaElement& g, Elt x) const {
    std::uint16_t i = orbit_of_[x];
    Elt s = shift_of_[x];
    return omega_.act_right(transversal_[g.perm[i]],
                            omega_.s->mul(g.twists[i], s));
  }

  /// Composition f.g (apply g first), in wreath coordinates.
  GammaElement mul(const GammaElement& f, const GammaElement& g) const {
    GammaElement r;
    const std::size_t n = orbits();
    r.perm.resize(n);
    r.twists.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      r.perm[i] = f.perm[g.perm[i]];
      r.twists[i] = omega_.s->mul(f.twists[g.perm[i]], g.twists[i]);
    }
    return r;
  }

  GammaElement inverse(const GammaElement& g) const {
    GammaElement r;
    const std::size_t n = orbits();
    r.perm.resize(n);
    r.twists.resize(n);
    for (std::size_t i = 0; i < n; ++i) r.perm[g.perm[i]] = std::uint16_t(i);
    for (std::size_t j = 0; j < n; ++j)
      r.twists[j] = omega_.s->inv(g.twists[r.perm[j]]);
    return r;
  }

  /// The left-translation embedding iota(s)(x) = s x.
  GammaElement iota(Elt s) const {
    GammaElement g;
    const std::size_t n = orbits();
    g.perm.resize(n);
    g.twists.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      Elt y = omega_.act_left(s, transversal_[i]);
      g.perm[i] = orbit_of_[y];
      g.twists[i] = shift_of_[y];
    }
    return g;
  }

  /// Decomposes a right-equivariant point bijection into wreath coordinates;
  /// verifies right-equivariance pointwise.
  GammaElement from_bijection(const std::vector<Elt>& map) const {
    if (map.size() != omega_.points)
      throw Error("bijection has the wrong number of points");
    for (std::uint32_t x = 0; x < omega_.points; ++x)
      for (std::size_t t = 0; t < omega_.s->order(); ++t)
        if (map[omega_.act_right(Elt(x), Elt(t))] !=
            omega_.act_right(map[x], Elt(t)))
          throw Error("bijection does not commute with the right S-action");
    GammaElement g;
    const std::size_t n = orbits();
    g.perm.resize(n);
    g.twists.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      Elt y = map[transversal_[i]];
      g.perm[i] = orbit_of_[y];
      g.twists[i] = shift_of_[y];
    }
    return g;
  }

  /// Wreath coordinates of gamma.
  std::pair<std::vector<Elt>, std::vector<std::uint16_t>> wreath_coordinates(
      const GammaElement& g) const {
    return {g.twists, g.perm};
  }

private:
  Biset omega_;
  std::vector<Elt> transversal_;
  std::vector<std::uint16_t> orbit_of_;
  std::vector<Elt> shift_of_;
};

/// An element eta of Gamma_Omega with c_eta o iota|_Q = iota o phi, when the
/// Q-S-bisets _Q Omega and _phi Omega are isomorphic.
struct ParkWitness {
  Hom phi;
  std::optional<GammaElement> eta;
  std::optional<MarkMismatch> obstruction;
};

inline ParkWitness park_witness(const GammaGroup& gamma, const Hom& phi,
                                const PairContext& ctx) {
  ParkWitness w;
  w.phi = phi;
  Biset plain = restrict_left(gamma.omega(), phi.domain);
  Biset twisted = twist_left(gamma.omega(), phi);
  BisetIso iso = biset_isomorphism(plain, twisted, ctx);
  if (!iso.isomorphic()) {
    w.obstruction = iso.mismatch;
    return w;
  }
  GammaElement eta = gamma.from_bijection(*iso.bijection);
  // verify the conjugation identity elementwise on Q
  GammaElement eta_inv = gamma.inverse(eta);
  for (std::size_t i = 0; i < phi.domain.members.size(); ++i) {
    GammaElement lhs = gamma.mul(
        gamma.mul(eta, gamma.iota(phi.domain.members[i])), eta_inv);
    GammaElement rhs = gamma.iota(phi.images[i]);
    if (!(lhs == rhs))
      throw Error("internal: park witness fails the conjugation identity");
  }
  w.eta = std::move(eta);
  return w;
}

inline ParkWitness park_witness(const GammaGroup& gamma, const Hom& phi,
                                const Limits& lim = default_limits()) {
  return park_witness(gamma, phi,
                      make_pair_context(phi.domain, gamma.s(), lim));
}

/// Report for the containment F <= F_S(Gamma_Omega): one entry per (Q, phi)
/// with Q up to conjugacy.
struct ContainmentEntry {
  Subgroup q;
  Hom phi;
  bool ok = false;
  std::optional<GammaElement> eta;
  std::optional<MarkMismatch> obstruction;
};

struct ContainmentReport {
  bool contained = true;
  std::vector<ContainmentEntry> entries;
};

inline ContainmentReport verify_fusion_containment(
    const GammaGroup& gamma, const FusionSystem& f,
    const Limits& lim = default_limits()) {
  ContainmentReport report;
  auto classes = subgroup_conjugacy_classes(gamma.s(), f.subs);
  for (std::size_t rep_idx : classes.rep_indices) {
    const Subgroup& q = f.subs[rep_idx];
    PairContext ctx = make_pair_context(q, gamma.s(), lim);
    for (const Hom& phi : f.hom_sets[rep_idx][f.whole_index()]) {
      ParkWitness w = park_witness(gamma, phi, ctx);
      report.entries.push_back(ContainmentEntry{
          q, phi, w.eta.has_value(), std::move(w.eta), w.obstruction});
      if (!report.entries.back().ok) report.contained = false;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Compatible families over Gamma_Omega.
// ---------------------------------------------------------------------------

/// One witness square: the conjugation c_g : H -> K is intertwined by gamma
/// in Gamma_Omega, i.e. gamma . alpha_H(h) . gamma^-1 = alpha_K(g h g^-1).
struct FamilyWitness {
  std::size_t h_index = 0;
  std::size_t k_index = 0;
  Elt g = 0;                   // a conjugating element inducing the map
  std::vector<Elt> cg_images;  // c_g on H.members
  GammaElement gamma;
};

struct CompatibleFamily {
  GroupPtr ambient;                    // G
  std::vector<Subgroup> family;        // subgroups H of G
  std::vector<Hom> embeddings;         // iota_H : H -> S (codomain whole S)
  std::vector<FamilyWitness> witnesses;
  bool ok = true;
  std::string failure;                 // first connecting map outside F, if any
};

/// alpha_H(h) = iota(iota_H(h)) as a GammaElement.
inline GammaElement alpha_of(const GammaGroup& gamma, const Hom& iota_h,
                             Elt h) {
  return gamma.iota(iota_h.apply(h));
}

/// Builds a compatible family over Gamma_Omega for subgroups of G embedded in
/// S: for every conjugation c_g : H -> K within the family, the connecting
/// map iota_K o c_g o iota_H^-1 must lie in F; its park witness intertwines
/// the square.
inline CompatibleFamily build_compatible_family(
    const GroupPtr& g, const std::vector<Subgroup>& family,
    const GammaGroup& gamma, const FusionSystem& f,
    const std::vector<Hom>& embeddings, const Limits& lim = default_limits()) {
  if (family.size() != embeddings.size())
    throw Error("one embedding per family member is required");
  CompatibleFamily fam;
  fam.ambient = g;
  fam.family = family;
  fam.embeddings = embeddings;
  // collect distinct conjugation maps c_g : H -> K
  for (std::size_t hi = 0; hi < family.size(); ++hi) {
    for (std::size_t ki = 0; ki < family.size(); ++ki) {
      std::vector<std::vector<Elt>> seen;
      for (std::size_t t = 0; t < g->order(); ++t) {
        std::vector<Elt> images;
        images.reserve(family[hi].members.size());
        bool inside = true;
        for (Elt m : family[hi].members) {
          Elt y = g->conj(Elt(t), m);
          if (!family[ki].contains(y)) {
            inside = false;
            break;
          }
          images.push_back(y);
        }
        if (!inside) continue;
        auto pos = std::lower_bound(seen.begin(), seen.end(), images);
        if (pos != seen.end() && *pos == images) continue;
        seen.insert(pos, images);
        // connecting map iota_K o c_g o iota_H^-1 on iota_H(H)
        const Hom& ih = embeddings[hi];
        const Hom& ik = embeddings[ki];
        Subgroup q_prime = ih.image_subgroup();
        std::vector<Elt> f_images(q_prime.members.size());
        for (std::size_t i = 0; i < family[hi].members.size(); ++i) {
          Elt from = ih.images[i];
          Elt to = ik.apply(images[i]);
          f_images[q_prime.member_index(from)] = to;
        }
        Hom connecting{q_prime, whole_group(gamma.s()), f_images};
        if (!f.contains_into_whole(connecting)) {
          fam.ok = false;
          fam.failure = "connecting map for c_g : " + family[hi].describe() +
                        " -> " + family[ki].describe() +
                        " (g = " + g->element_name(Elt(t)) +
                        ") is not a morphism of the fusion system";
          return fam;
        }
        ParkWitness pw = park_witness(gamma, connecting, lim);
        if (!pw.eta)
          throw Error("internal: fusion morphism without a park witness");
        // verify the commuting square elementwise on H
        GammaElement eta = *pw.eta;
        GammaElement eta_inv = gamma.inverse(eta);
        for (std::size_t i = 0; i < family[hi].members.size(); ++i) {
          GammaElement lhs = gamma.mul(
              gamma.mul(eta, alpha_of(gamma, ih, family[hi].members[i])),
              eta_inv);
          GammaElement rhs = alpha_of(gamma, ik, images[i]);
          if (!(lhs == rhs))
            throw Error("internal: compatibility square fails");
        }
        fam.witnesses.push_back(
            FamilyWitness{hi, ki, Elt(t), images, std::move(eta)});
      }
    }
  }
  return fam;
}

} // namespace fusionforge
