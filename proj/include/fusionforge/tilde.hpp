#pragma once

// The Gamma_Omega-module built from an S-character V through the bimodule
// C[Omega]: block-monomial with respect to the right-orbit transversal.  Its
// character at gamma sums the base character over the twists of fixed
// orbits.  The Mackey verification compares the direct evaluation against
// the assembled double-coset decomposition, exactly, class by class.

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fusionforge/biset.hpp"
#include "fusionforge/character.hpp"
#include "fusionforge/gamma.hpp"

namespace fusionforge {

struct TildeModule {
  std::shared_ptr<const GammaGroup> gamma;
  Character base; // character of the whole of S

  long degree() const {
    return long(gamma->orbits()) * base.degree();
  }
};

inline TildeModule make_tilde_module(std::shared_ptr<const GammaGroup> gamma,
                                     Character base) {
  if (!base.sub.is_whole() || base.sub.parent != gamma->s())
    throw Error("tilde module needs a character of the whole of S");
  return TildeModule{std::move(gamma), std::move(base)};
}

/// Trace of gamma on the induced module: the sum
/// of base-character values over the twists of orbits fixed by the
/// permutation part.
inline Cyclotomic tilde_character(const TildeModule& t,
                                  const GammaElement& g) {
  Cyclotomic acc(0);
  for (std::size_t i = 0; i < g.perm.size(); ++i)
    if (g.perm[i] == i) acc += t.base.at(g.twists[i]);
  return acc;
}

/// The character of the restriction along iota to a subgroup H <= S.
inline Character restrict_tilde(const TildeModule& t, const Subgroup& h) {
  if (h.parent != t.gamma->s())
    throw Error("restrict_tilde expects a subgroup of S");
  auto cc = conjugacy_classes(h);
  std::vector<Cyclotomic> vals;
  vals.reserve(cc.reps.size());
  for (Elt rep : cc.reps)
    vals.push_back(tilde_character(t, t.gamma->iota(rep)));
  return Character::from_class_values(
      h, std::move(vals), "Res[" + h.describe() + "](tilde(" + t.base.build + "))");
}

/// Restriction along an arbitrary embedding alpha_H = iota o iota_H, as a
/// character of iota_H's domain.
inline Character restrict_tilde_along(const TildeModule& t, const Hom& iota_h) {
  auto cc = conjugacy_classes(iota_h.domain);
  std::vector<Cyclotomic> vals;
  vals.reserve(cc.reps.size());
  for (Elt rep : cc.reps)
    vals.push_back(tilde_character(t, t.gamma->iota(iota_h.apply(rep))));
  return Character::from_class_values(
      iota_h.domain, std::move(vals),
      "alpha*[" + iota_h.domain.describe() + "](tilde(" + t.base.build + "))");
}

/// Least representatives of the double cosets Q\S/H, ascending.
inline std::vector<Elt> double_coset_reps(const GroupPtr& s, const Subgroup& q,
                                          const Subgroup& h) {
  std::vector<char> seen(s->order(), 0);
  std::vector<Elt> reps;
  for (std::size_t x = 0; x < s->order(); ++x) {
    if (seen[x]) continue;
    reps.push_back(Elt(x));
    for (Elt a : q.members)
      for (Elt b : h.members) seen[s->mul(s->mul(a, Elt(x)), b)] = 1;
  }
  return reps;
}

struct MackeySummand {
  Hom phi;        // isotropy label Q -> S
  Elt x;          // double coset representative of Q\S/H
  Subgroup a;     // H n Q^x, the induction source
  long degree;
};

struct MackeyReport {
  Subgroup h;
  Character direct;
  Character assembled;
  std::vector<MackeySummand> parts;
  bool equal = false;
  std::optional<Elt> first_mismatch_class;
};

/// Verifies the Mackey decomposition of the restriction of the induced
/// module to H: the direct character of
/// iota(H)-action equals the sum over isotropy labels phi : Q -> S and
/// double cosets QxH of Ind from H n Q^x of the pullback along
/// phi o c_x of V.
inline MackeyReport mackey_check(const TildeModule& t, const Subgroup& h) {
  const GroupPtr& s = t.gamma->s();
  MackeyReport report;
  report.h = h;
  report.direct = restrict_tilde(t, h);
  Character assembled = zero_character(h);
  for (const Hom& phi : isotropy(t.gamma->omega())) {
    const Subgroup& q = phi.domain;
    for (Elt x : double_coset_reps(s, q, h)) {
      // A = H n Q^x = { a in H : x a x^-1 in Q }
      std::vector<Elt> a_members;
      for (Elt a : h.members)
        if (q.contains(s->conj(x, a))) a_members.push_back(a);
      Subgroup a{s, std::move(a_members)};
      // character a |-> V(phi(x a x^-1)) on A
      std::vector<Cyclotomic> vals;
      vals.reserve(a.members.size());
      for (Elt m : a.members)
        vals.push_back(t.base.at(phi.apply(s->conj(x, m))));
      Character part = Character::from_member_values(
          a, std::move(vals),
          "Isog[phi o c_x]Res(" + t.base.build + ")");
      Character ind = induce_to(part, h);
      report.parts.push_back(MackeySummand{phi, x, a, ind.degree()});
      assembled = add_characters(assembled, ind);
    }
  }
  assembled.build = "mackey-assembled";
  report.assembled = std::move(assembled);
  report.equal = true;
  for (std::size_t ci = 0; ci < report.direct.class_reps.size(); ++ci)
    if (!(report.direct.values[ci] == report.assembled.values[ci])) {
      report.equal = false;
      report.first_mismatch_class = report.direct.class_reps[ci];
      break;
    }
  return report;
}

/// Certifies that chi is an integer multiple of unit; returns the multiple.
inline std::optional<long> multiple_of(const Character& chi,
                                       const Character& unit) {
  if (!(chi.sub.members == unit.sub.members)) return std::nullopt;
  if (unit.degree() == 0 || chi.degree() % unit.degree() != 0)
    return std::nullopt;
  long m = chi.degree() / unit.degree();
  Character scaled = scale_character(m, unit);
  if (!(scaled == chi)) return std::nullopt;
  return m;
}

} // namespace fusionforge
