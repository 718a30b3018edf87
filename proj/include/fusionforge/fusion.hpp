#pragma once

// Fusion systems on a finite group S: hom-sets indexed by ordered pairs of
// subgroups, the conjugation fusion system F_S(G), the full fusion system of
// all monomorphisms, F-characteristic subgroups, and Out_F(K).

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fusionforge/group.hpp"
#include "fusionforge/homs.hpp"
#include "fusionforge/lattice.hpp"
#include "fusionforge/limits.hpp"

namespace fusionforge {

class FusionSystem {
public:
  Subgroup base;                 // S (subgroup of the ambient group)
  std::vector<Subgroup> subs;    // subgroups of S, canonical order
  std::string kind;              // "full" or "F_S(G)" style description

  // hom_sets[p][q]: morphisms subs[p] -> subs[q], sorted by image tuple
  std::vector<std::vector<std::vector<Hom>>> hom_sets;

  std::size_t index_of(const Subgroup& s) const {
    for (std::size_t i = 0; i < subs.size(); ++i)
      if (subs[i].members == s.members) return i;
    throw Error("subgroup is not an object of the fusion system");
  }

  std::size_t whole_index() const { return subs.size() - 1; }

  const std::vector<Hom>& homs(std::size_t p, std::size_t q) const {
    return hom_sets[p][q];
  }

  const std::vector<Hom>& homs(const Subgroup& p, const Subgroup& q) const {
    return hom_sets[index_of(p)][index_of(q)];
  }

  /// Extensional membership: is f one of the stored morphisms into the given
  /// codomain object?
  bool contains(const Hom& f) const {
    std::size_t p = index_of(f.domain);
    std::size_t q = index_of(f.codomain);
    const auto& set = hom_sets[p][q];
    return std::any_of(set.begin(), set.end(),
                       [&](const Hom& h) { return h.images == f.images; });
  }

  /// Is f, viewed as a morphism into S, in the fusion system?
  bool contains_into_whole(const Hom& f) const {
    std::size_t p = index_of(f.domain);
    const auto& set = hom_sets[p][whole_index()];
    return std::any_of(set.begin(), set.end(),
                       [&](const Hom& h) { return h.images == f.images; });
  }
};

/// The fusion system F_S(G): morphisms are the conjugation maps c_g with
/// g in G.
inline FusionSystem fusion_of_group(const Subgroup& s, const GroupPtr& g,
                                    const Limits& lim = default_limits()) {
  if (s.parent != g) throw Error("S must be a subgroup of G");
  if (s.order() > lim.max_s || g->order() > lim.max_g)
    throw Error("fusion_of_group size bound exceeded");
  FusionSystem f;
  f.base = s;
  f.kind = "F_" + s.describe() + "(" + g->label() + ")";
  f.subs = subgroups_within(s);
  const std::size_t k = f.subs.size();
  f.hom_sets.assign(k, std::vector<std::vector<Hom>>(k));
  for (std::size_t p = 0; p < k; ++p) {
    for (std::size_t t = 0; t < g->order(); ++t) {
      // c_t on subs[p], when the image lands inside S
      std::vector<Elt> image;
      image.reserve(f.subs[p].members.size());
      bool ok = true;
      for (Elt m : f.subs[p].members) {
        Elt y = g->conj(Elt(t), m);
        if (!s.contains(y)) {
          ok = false;
          break;
        }
        image.push_back(y);
      }
      if (!ok) continue;
      for (std::size_t q = 0; q < k; ++q) {
        bool inside = std::all_of(image.begin(), image.end(), [&](Elt y) {
          return f.subs[q].contains(y);
        });
        if (!inside) continue;
        Hom h{f.subs[p], f.subs[q], image};
        auto& set = f.hom_sets[p][q];
        auto pos = std::lower_bound(set.begin(), set.end(), h, hom_less);
        if (pos == set.end() || !(pos->images == h.images))
          set.insert(pos, std::move(h));
      }
    }
  }
  return f;
}

/// The full fusion system: every injective homomorphism between subgroups of
/// S is a morphism.
inline FusionSystem full_fusion(const GroupPtr& s,
                                const Limits& lim = default_limits()) {
  if (s->order() > lim.max_s)
    throw Error("full_fusion size bound exceeded for " + s->label());
  FusionSystem f;
  f.base = whole_group(s);
  f.kind = "full";
  f.subs = subgroups_within(f.base);
  const std::size_t k = f.subs.size();
  f.hom_sets.assign(k, std::vector<std::vector<Hom>>(k));
  for (std::size_t p = 0; p < k; ++p)
    for (std::size_t q = 0; q < k; ++q)
      f.hom_sets[p][q] = all_injective_homs(f.subs[p], f.subs[q]);
  return f;
}

/// Certificate data for the F-characteristic property of K.
struct CharacteristicWitness {
  Subgroup l;                      // L <= K
  Hom morphism;                    // phi : L -> S
  std::optional<Hom> extension;    // phi~ : K -> K with phi~|_L = phi
};

struct CharacteristicCertificate {
  bool holds = true;
  Subgroup k;
  std::vector<CharacteristicWitness> entries;
  std::optional<CharacteristicWitness> failure; // first failing (L, phi)
};

/// Checks whether K is F-characteristic: every morphism L -> S with L <= K
/// extends to a morphism K -> K in F.
inline CharacteristicCertificate is_characteristic(const FusionSystem& f,
                                                   const Subgroup& k) {
  CharacteristicCertificate cert;
  cert.k = k;
  std::size_t ki = f.index_of(k);
  std::size_t si = f.whole_index();
  const auto& endos = f.hom_sets[ki][ki];
  for (std::size_t li = 0; li < f.subs.size(); ++li) {
    if (!k.contains_all(f.subs[li])) continue;
    for (const Hom& phi : f.hom_sets[li][si]) {
      CharacteristicWitness w{f.subs[li], phi, std::nullopt};
      for (const Hom& ext : endos) {
        bool agrees = true;
        for (std::size_t i = 0; i < phi.domain.members.size() && agrees; ++i)
          agrees = ext.apply(phi.domain.members[i]) == phi.images[i];
        if (agrees) {
          w.extension = ext;
          break;
        }
      }
      if (!w.extension) {
        cert.holds = false;
        cert.failure = w;
        return cert;
      }
      cert.entries.push_back(std::move(w));
    }
  }
  return cert;
}

/// One representative per coset phi*Inn(K) inside Aut_F(K)
///.  Representatives are the least image
/// tuple in each coset, sorted.
inline std::vector<Hom> outer_automorphism_reps(const FusionSystem& f,
                                                const Subgroup& k) {
  std::size_t ki = f.index_of(k);
  std::vector<Hom> auts;
  for (const Hom& h : f.hom_sets[ki][ki])
    if (h.image_members() == k.members) auts.push_back(h);
  // inner automorphisms of K
  std::vector<std::vector<Elt>> inner;
  for (Elt t : k.members) {
    std::vector<Elt> img;
    img.reserve(k.members.size());
    for (Elt m : k.members) img.push_back(k.parent->conj(t, m));
    inner.push_back(std::move(img));
  }
  std::sort(inner.begin(), inner.end());
  inner.erase(std::unique(inner.begin(), inner.end()), inner.end());

  std::vector<Hom> reps;
  std::vector<std::vector<Elt>> covered;
  for (const Hom& phi : auts) {
    if (std::binary_search(covered.begin(), covered.end(), phi.images))
      continue;
    // coset phi . Inn(K): least representative is phi itself because auts
    // are scanned in image order
    reps.push_back(phi);
    std::vector<std::vector<Elt>> coset;
    for (const auto& innimg : inner) {
      // phi o c_t: first conjugate, then apply phi
      std::vector<Elt> img;
      img.reserve(k.members.size());
      for (std::size_t i = 0; i < k.members.size(); ++i)
        img.push_back(phi.images[k.member_index(innimg[i])]);
      coset.push_back(std::move(img));
    }
    for (auto& c : coset) {
      auto pos = std::lower_bound(covered.begin(), covered.end(), c);
      if (pos == covered.end() || *pos != c) covered.insert(pos, std::move(c));
    }
  }
  return reps;
}

} // namespace fusionforge
