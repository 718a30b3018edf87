#pragma once

// Enumeration of injective homomorphisms between subgroups by depth-first
// search over generator images with partial-closure consistency pruning.

#include <algorithm>
#include <vector>

#include "fusionforge/group.hpp"
#include "fusionforge/lattice.hpp"

namespace fusionforge {

namespace detail {

struct HomSearch {
  const Subgroup& dom;
  const Subgroup& cod;
  const Group& dg;
  const Group& cg;
  std::vector<Elt> gens;
  std::vector<Hom>& out;

  // partial map over domain member positions; kUnset when unknown
  static constexpr Elt kUnset = Elt(0xffff);
  std::vector<Elt> img;          // by domain member position
  std::vector<Elt> known;        // domain elements with assigned images

  HomSearch(const Subgroup& d, const Subgroup& c, std::vector<Hom>& o)
      : dom(d), cod(c), dg(*d.parent), cg(*c.parent),
        gens(generating_sequence(d)), out(o) {
    img.assign(dom.members.size(), kUnset);
    img[dom.member_index(0)] = 0;
    known.push_back(0);
  }

  Elt get(Elt x) const { return img[dom.member_index(x)]; }

  bool assign(Elt x, Elt y, std::vector<std::size_t>& trail) {
    std::size_t pos = dom.member_index(x);
    if (img[pos] != kUnset) return img[pos] == y;
    img[pos] = y;
    trail.push_back(pos);
    known.push_back(x);
    return true;
  }

  /// Closes the partial map under products; returns false on conflict.
  bool close(std::vector<std::size_t>& trail) {
    for (std::size_t i = 0; i < known.size(); ++i) {
      Elt a = known[i];
      Elt fa = get(a);
      for (std::size_t j = 0; j < known.size(); ++j) {
        Elt b = known[j];
        Elt fb = get(b);
        if (!assign(dg.mul(a, b), cg.mul(fa, fb), trail)) return false;
        if (!assign(dg.mul(b, a), cg.mul(fb, fa), trail)) return false;
      }
    }
    return true;
  }

  void undo(const std::vector<std::size_t>& trail, std::size_t known_size) {
    for (std::size_t pos : trail) img[pos] = kUnset;
    known.resize(known_size);
  }

  void run(std::size_t gi) {
    if (gi == gens.size()) {
      // fully determined; keep when injective
      std::vector<Elt> images(img.begin(), img.end());
      std::vector<Elt> sorted = images;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        return;
      out.push_back(Hom{dom, cod, std::move(images)});
      return;
    }
    Elt gen = gens[gi];
    if (get(gen) != HomSearch::kUnset) {
      run(gi + 1); // image already forced by closure
      return;
    }
    unsigned want = dg.element_order(gen);
    for (Elt cand : cod.members) {
      if (cg.element_order(cand) != want) continue;
      std::vector<std::size_t> trail;
      std::size_t ks = known.size();
      if (assign(gen, cand, trail) && close(trail)) run(gi + 1);
      undo(trail, ks);
    }
  }
};

} // namespace detail

/// All injective homomorphisms P -> Q, sorted by image tuple.  Enumerates
/// same-order generator images and prunes by partial closure.
inline std::vector<Hom> all_injective_homs(const Subgroup& p,
                                           const Subgroup& q) {
  std::vector<Hom> out;
  if (q.order() < p.order()) return out;
  detail::HomSearch search(p, q, out);
  search.run(0);
  std::sort(out.begin(), out.end(), hom_less);
  return out;
}

/// All automorphisms of S.
inline std::vector<Hom> automorphisms(const GroupPtr& s,
                                      std::size_t bound = 10000) {
  if (s->order() > bound) throw Error("automorphism enumeration bound exceeded");
  Subgroup w = whole_group(s);
  return all_injective_homs(w, w);
}

} // namespace fusionforge
