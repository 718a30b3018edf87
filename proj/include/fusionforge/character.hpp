#pragma once

// Exact class functions with cyclotomic values.  All representation-level
// claims in this artifact (freeness, decompositions, fixed points) are
// settled at the character level; no matrix models are ever built.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "fusionforge/cyclo.hpp"
#include "fusionforge/group.hpp"
#include "fusionforge/lattice.hpp"

namespace fusionforge {

class Character {
public:
  Subgroup sub;                          // the group the character lives on
  std::vector<Elt> class_reps;           // least element per conjugacy class
  std::vector<Cyclotomic> values;        // one value per class
  std::vector<std::uint16_t> class_of;   // member position -> class index
  std::string build;                     // construction expression

  /// Builds from per-member values; validates the class-function property
  /// and that the degree is a nonnegative rational integer.
  static Character from_member_values(Subgroup sub,
                                      const std::vector<Cyclotomic>& per_member,
                                      std::string build) {
    if (per_member.size() != sub.members.size())
      throw Error("character needs one value per member");
    Character c;
    auto cc = conjugacy_classes(sub);
    c.class_reps = cc.reps;
    c.class_of = cc.class_of;
    c.values.resize(cc.reps.size());
    for (std::size_t i = 0; i < cc.reps.size(); ++i)
      c.values[i] = per_member[sub.member_index(cc.reps[i])];
    for (std::size_t i = 0; i < per_member.size(); ++i)
      if (!(per_member[i] == c.values[c.class_of[i]]))
        throw Error("values are not constant on conjugacy classes");
    c.sub = std::move(sub);
    c.build = std::move(build);
    c.check_degree();
    return c;
  }

  /// Builds from per-class values (the classes of `sub` in canonical order).
  static Character from_class_values(Subgroup sub,
                                     std::vector<Cyclotomic> per_class,
                                     std::string build) {
    Character c;
    auto cc = conjugacy_classes(sub);
    if (per_class.size() != cc.reps.size())
      throw Error("character needs one value per conjugacy class");
    c.class_reps = cc.reps;
    c.class_of = cc.class_of;
    c.values = std::move(per_class);
    c.sub = std::move(sub);
    c.build = std::move(build);
    c.check_degree();
    return c;
  }

  const Cyclotomic& at(Elt x) const {
    return values[class_of[sub.member_index(x)]];
  }

  /// chi(e), as a plain integer.
  long degree() const {
    auto d = values[class_of[sub.member_index(0)]].as_integer();
    if (!d || *d < 0) throw Error("character degree must be a nonnegative integer");
    return static_cast<long>(*d);
  }

  bool operator==(const Character& o) const {
    if (!(sub.members == o.sub.members)) return false;
    for (std::size_t i = 0; i < values.size(); ++i)
      if (!(values[i] == o.values[i])) return false;
    return true;
  }

private:
  void check_degree() const {
    auto d = values[class_of[sub.member_index(0)]].as_integer();
    if (!d || *d < 0)
      throw Error("character degree must be a nonnegative integer");
  }
};

inline Character trivial_character(const Subgroup& h) {
  return Character::from_member_values(
      h, std::vector<Cyclotomic>(h.members.size(), Cyclotomic(1)), "triv");
}

inline Character regular_character(const Subgroup& h) {
  std::vector<Cyclotomic> vals(h.members.size(), Cyclotomic(0));
  vals[h.member_index(0)] = Cyclotomic(long(h.order()));
  return Character::from_member_values(h, std::move(vals), "reg");
}

/// The regular representation minus one trivial summand.
inline Character augmented_regular_character(const Subgroup& h) {
  std::vector<Cyclotomic> vals(h.members.size(), Cyclotomic(-1));
  vals[h.member_index(0)] = Cyclotomic(long(h.order()) - 1);
  return Character::from_member_values(h, std::move(vals), "aug-reg");
}

inline Character add_characters(const Character& a, const Character& b) {
  if (!(a.sub.members == b.sub.members))
    throw Error("character sum needs a common group");
  Character c = a;
  for (std::size_t i = 0; i < c.values.size(); ++i)
    c.values[i] = c.values[i] + b.values[i];
  c.build = "(" + a.build + ")+(" + b.build + ")";
  return c;
}

inline Character scale_character(long k, const Character& a) {
  if (k < 0) throw Error("character multiple must be nonnegative");
  Character c = a;
  for (auto& v : c.values) v = Rational(k) * v;
  c.build = std::to_string(k) + "*(" + a.build + ")";
  return c;
}

inline Character zero_character(const Subgroup& h) {
  return Character::from_member_values(
      h, std::vector<Cyclotomic>(h.members.size(), Cyclotomic(0)), "0");
}

/// Induction along an embedding iota : A -> B:
/// (Ind chi)(b) = (1/|A|) sum over x in B with x^-1 b x in iota(A) of
/// chi(iota^-1(x^-1 b x)), evaluated exactly.
inline Character induce(const Character& chi, const Hom& iota) {
  if (!(iota.domain.members == chi.sub.members))
    throw Error("induce: embedding domain must match the character's group");
  const Subgroup& b = iota.codomain;
  const auto& g = *b.parent;
  Subgroup image = iota.image_subgroup();
  Hom inv = invert_onto_image(iota);
  auto cc = conjugacy_classes(b);
  std::vector<Cyclotomic> vals(cc.reps.size(), Cyclotomic(0));
  const Rational scale(1, long(chi.sub.order()));
  for (std::size_t ci = 0; ci < cc.reps.size(); ++ci) {
    Elt rep = cc.reps[ci];
    Cyclotomic acc(0);
    for (Elt x : b.members) {
      Elt conj = g.mul(g.mul(g.inv(x), rep), x);
      if (image.contains(conj)) acc += chi.at(inv.apply(conj));
    }
    vals[ci] = scale * acc;
  }
  Character out;
  out.sub = b;
  out.class_reps = cc.reps;
  out.class_of = cc.class_of;
  out.values = std::move(vals);
  out.build = "Ind[" + b.describe() + "<-" + chi.sub.describe() + "](" +
              chi.build + ")";
  // induction must produce an honest character degree
  if (out.degree() != long(b.order() / chi.sub.order()) * chi.degree())
    throw Error("induced character has the wrong degree");
  return out;
}

inline Character induce_to(const Character& chi, const Subgroup& b) {
  return induce(chi, inclusion_hom(chi.sub, b));
}

/// Value-wise restriction to A <= B.
inline Character restrict_character(const Character& chi, const Subgroup& a) {
  if (!chi.sub.contains_all(a))
    throw Error("restrict: A must be contained in the character's group");
  std::vector<Cyclotomic> per_member;
  per_member.reserve(a.members.size());
  for (Elt m : a.members) per_member.push_back(chi.at(m));
  return Character::from_member_values(
      a, std::move(per_member),
      "Res[" + a.describe() + "](" + chi.build + ")");
}

/// Pullback along an isomorphism onto the character's group
///: returns chi o phi on dom(phi).
inline Character isogate(const Character& chi, const Hom& phi) {
  if (!(phi.image_members() == chi.sub.members))
    throw Error("isogate: phi must be an isomorphism onto the character's group");
  std::vector<Cyclotomic> per_member;
  per_member.reserve(phi.domain.members.size());
  for (std::size_t i = 0; i < phi.domain.members.size(); ++i)
    per_member.push_back(chi.at(phi.images[i]));
  return Character::from_member_values(
      phi.domain, std::move(per_member),
      "Isog[" + phi.domain.describe() + "](" + chi.build + ")");
}

/// Exact inner product <chi, psi> = (1/|H|) sum chi(h) conj(psi(h)).
inline Cyclotomic inner_product(const Character& chi, const Character& psi) {
  if (!(chi.sub.members == psi.sub.members))
    throw Error("inner product needs a common group");
  Cyclotomic acc(0);
  for (Elt m : chi.sub.members) acc += chi.at(m) * psi.at(m).conjugate();
  return Rational(1, long(chi.sub.order())) * acc;
}

/// dim V^<h>: the fixed-space dimension of the cyclic group generated by h
///.  A non-integral average signals a corrupted
/// character and raises an error.
inline long fixed_dim(const Character& chi, Elt h) {
  const auto& g = *chi.sub.parent;
  Cyclotomic acc(0);
  unsigned ord = g.element_order(h);
  Elt acc_elt = 0;
  for (unsigned k = 0; k < ord; ++k) {
    acc += chi.at(acc_elt);
    acc_elt = g.mul(acc_elt, h);
  }
  auto v = (Rational(1, long(ord)) * acc).as_integer();
  if (!v || *v < 0) throw Error("fixed dimension is not a nonnegative integer");
  return static_cast<long>(*v);
}

/// dim V^H' for a subgroup H' of the character's group
///.
inline long fixed_dim_subgroup(const Character& chi, const Subgroup& hp) {
  if (!chi.sub.contains_all(hp))
    throw Error("fixed_dim_subgroup: H' must be contained in the group");
  Cyclotomic acc(0);
  for (Elt m : hp.members) acc += chi.at(m);
  auto v = (Rational(1, long(hp.order())) * acc).as_integer();
  if (!v || *v < 0) throw Error("fixed dimension is not a nonnegative integer");
  return static_cast<long>(*v);
}

/// Freeness certificate for the action on the unit sphere: every nontrivial
/// element must have fixed dimension 0.
struct FreenessCertificate {
  bool free = true;
  std::vector<std::pair<Elt, long>> fixed_dims; // per nontrivial class rep
  std::optional<Elt> witness;                   // first element with dim > 0
};

inline FreenessCertificate free_on_sphere(const Character& chi) {
  if (chi.degree() < 1) throw Error("free_on_sphere needs a nonzero character");
  FreenessCertificate cert;
  for (std::size_t ci = 0; ci < chi.class_reps.size(); ++ci) {
    Elt rep = chi.class_reps[ci];
    if (rep == 0) continue;
    long d = fixed_dim(chi, rep);
    cert.fixed_dims.emplace_back(rep, d);
    if (d > 0 && cert.free) {
      cert.free = false;
      cert.witness = rep;
    }
  }
  return cert;
}

} // namespace fusionforge
