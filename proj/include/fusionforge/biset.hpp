#pragma once

// Bifree S-S-bisets.  A transitive summand S x_{Delta(phi)} S is stored by
// its canonical point representatives (least pair in each equivalence class
// of (s1 q, s2) ~ (s1, phi(q) s2)); general bisets are disjoint unions with
// explicit left/right action tables.  Mark vectors over the subgroups of
// Q x S up to conjugacy decide isomorphism (Burnside), and matching
// transitive orbits by stabilizer class turns a positive verdict into an
// explicit equivariant bijection.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fusionforge/fusion.hpp"
#include "fusionforge/group.hpp"
#include "fusionforge/homs.hpp"
#include "fusionforge/lattice.hpp"
#include "fusionforge/limits.hpp"

namespace fusionforge {

struct BisetSummand {
  Hom phi;             // monomorphism Q -> S labelling S x_{Delta(phi)} S
  std::uint32_t offset = 0;
  std::uint32_t size = 0;
};

class Biset {
public:
  Subgroup left;                // subgroup of S acting on the left
  GroupPtr s;                   // right group S (= left.parent)
  std::uint32_t points = 0;
  std::vector<Elt> left_act;    // [li * points + x], li indexes left.members
  std::vector<Elt> right_act;   // [x * |S| + t]
  std::vector<BisetSummand> summands; // transitive decomposition (S-S bisets)

  Elt act_left_by_index(std::size_t li, Elt x) const {
    return left_act[li * points + x];
  }
  Elt act_left(Elt q, Elt x) const {
    return left_act[left.member_index(q) * points + x];
  }
  Elt act_right(Elt x, Elt t) const {
    return right_act[std::size_t(x) * s->order() + t];
  }
  /// (q, t) . x = q x t^{-1}
  Elt act_pair(Elt q, Elt t, Elt x) const {
    return act_right(act_left(q, x), s->inv(t));
  }
};

/// The transitive bifree biset S x_{Delta(phi)} S for a monomorphism
/// phi : Q -> S.  Point count is |S|^2/|Q|.
inline Biset transitive_biset(const GroupPtr& s, const Hom& phi) {
  {
    // injectivity and codomain guard
    std::vector<Elt> im = phi.image_members();
    if (std::adjacent_find(im.begin(), im.end()) != im.end())
      throw Error("transitive_biset requires an injective phi");
    if (phi.domain.parent != s || phi.codomain.parent != s)
      throw Error("transitive_biset: phi must map a subgroup of S into S");
  }
  const std::size_t n = s->order();
  const Subgroup& q = phi.domain;
  Biset b;
  b.left = whole_group(s);
  b.s = s;
  // canonical representative: least pair in { (s1 u, phi(u^-1) s2) : u in Q }
  auto canonical = [&](Elt s1, Elt s2) -> std::pair<Elt, Elt> {
    std::pair<Elt, Elt> best{Elt(n), Elt(n)};
    for (std::size_t ui = 0; ui < q.members.size(); ++ui) {
      Elt u = q.members[ui];
      Elt a = s->mul(s1, u);
      Elt bb = s->mul(phi.images[q.member_index(s->inv(u))], s2);
      if (std::pair<Elt, Elt>{a, bb} < best) best = {a, bb};
    }
    return best;
  };
  std::vector<std::pair<Elt, Elt>> pts;
  std::map<std::pair<Elt, Elt>, Elt> index;
  for (std::size_t s1 = 0; s1 < n; ++s1)
    for (std::size_t s2 = 0; s2 < n; ++s2) {
      auto c = canonical(Elt(s1), Elt(s2));
      if (c == std::pair<Elt, Elt>{Elt(s1), Elt(s2)}) {
        index[c] = Elt(pts.size());
        pts.push_back(c);
      }
    }
  if (pts.size() != n * n / q.order())
    throw Error("transitive biset has unexpected size");
  b.points = std::uint32_t(pts.size());
  // raw pair -> point index, for fast action tables
  std::vector<Elt> point_of(n * n);
  for (std::size_t s1 = 0; s1 < n; ++s1)
    for (std::size_t s2 = 0; s2 < n; ++s2)
      point_of[s1 * n + s2] = index.at(canonical(Elt(s1), Elt(s2)));
  b.left_act.resize(n * pts.size());
  b.right_act.resize(pts.size() * n);
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t x = 0; x < pts.size(); ++x) {
      b.left_act[t * pts.size() + x] =
          point_of[std::size_t(s->mul(Elt(t), pts[x].first)) * n + pts[x].second];
      b.right_act[x * n + t] =
          point_of[std::size_t(pts[x].first) * n + s->mul(pts[x].second, Elt(t))];
    }
  b.summands.push_back(BisetSummand{phi, 0, std::uint32_t(pts.size())});
  return b;
}

/// Disjoint union of S-S bisets over the same S.
inline Biset disjoint_union(const std::vector<Biset>& parts) {
  if (parts.empty()) throw Error("disjoint union of no bisets");
  const GroupPtr& s = parts.front().s;
  const std::size_t n = s->order();
  Biset b;
  b.left = parts.front().left;
  b.s = s;
  std::uint32_t total = 0;
  for (const auto& p : parts) {
    if (p.s != s || !(p.left.members == b.left.members))
      throw Error("disjoint union requires a common acting pair");
    total += p.points;
  }
  b.points = total;
  b.left_act.resize(b.left.members.size() * total);
  b.right_act.resize(std::size_t(total) * n);
  std::uint32_t off = 0;
  for (const auto& p : parts) {
    for (std::size_t li = 0; li < b.left.members.size(); ++li)
      for (std::size_t x = 0; x < p.points; ++x)
        b.left_act[li * total + off + x] =
            Elt(p.left_act[li * p.points + x] + off);
    for (std::size_t x = 0; x < p.points; ++x)
      for (std::size_t t = 0; t < n; ++t)
        b.right_act[(off + x) * n + t] = Elt(p.right_act[x * n + t] + off);
    for (const auto& sm : p.summands)
      b.summands.push_back(BisetSummand{sm.phi, sm.offset + off, sm.size});
    off += p.points;
  }
  return b;
}

/// Twisting the left action along psi : Q -> S; the
/// result is a Q-S-biset on the same points with q.x := psi(q) x.
inline Biset twist_left(const Biset& w, const Hom& psi) {
  for (Elt y : psi.images)
    if (!w.left.contains(y))
      throw Error("twist_left: psi must map into the current left group");
  Biset b;
  b.left = psi.domain;
  b.s = w.s;
  b.points = w.points;
  b.right_act = w.right_act;
  b.summands = w.summands;
  b.left_act.resize(psi.domain.members.size() * w.points);
  for (std::size_t qi = 0; qi < psi.domain.members.size(); ++qi) {
    std::size_t src = w.left.member_index(psi.images[qi]);
    for (std::size_t x = 0; x < w.points; ++x)
      b.left_act[qi * w.points + x] = w.left_act[src * w.points + x];
  }
  return b;
}

/// Plain restriction of the left action to Q.
inline Biset restrict_left(const Biset& w, const Subgroup& q) {
  return twist_left(w, inclusion_hom(q, w.left));
}

/// Canonical left F-stable biset for an F-characteristic K:
/// the disjoint union of S x_{Delta(phi)} S over Out_F(K) representatives
///.
inline Biset canonical_stable_biset(const GroupPtr& s, const FusionSystem& f,
                                    const Subgroup& k) {
  if (!f.base.is_whole() || f.base.parent != s)
    throw Error("canonical_stable_biset needs a fusion system on all of S");
  auto cert = is_characteristic(f, k);
  if (!cert.holds)
    throw Error("K is not F-characteristic; the canonical biset lemma does not apply");
  auto reps = outer_automorphism_reps(f, k);
  std::vector<Biset> parts;
  parts.reserve(reps.size());
  Subgroup whole = whole_group(s);
  for (const Hom& rep : reps)
    parts.push_back(transitive_biset(s, Hom{rep.domain, whole, rep.images}));
  return disjoint_union(parts);
}

// ---------------------------------------------------------------------------
// The product group Q x S acting on a Q-S-biset by (q,t).x = q x t^{-1}.
// ---------------------------------------------------------------------------

/// Re-indexes a subgroup as a standalone group (element i is members[i]).
inline GroupPtr subgroup_as_group(const Subgroup& h, std::string label = {}) {
  const std::size_t m = h.members.size();
  if (label.empty()) label = h.describe();
  std::vector<Elt> table(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      table[i * m + j] =
          Elt(h.member_index(h.parent->mul(h.members[i], h.members[j])));
  std::vector<std::string> names;
  names.reserve(m);
  for (Elt x : h.members) names.push_back(h.parent->element_name(x));
  return Group::from_table(std::move(label), m, std::move(table),
                           std::move(names));
}

/// Context for mark-vector computations over one acting pair (Q, S):
/// the product group, its subgroups up to conjugacy, and generators.
struct PairContext {
  Subgroup q;                      // left subgroup of S
  GroupPtr s;
  GroupPtr prod;                   // abstract Q x S, element qi*|S| + t
  std::vector<Subgroup> sub_reps;  // conjugacy class representatives
  std::vector<std::vector<Elt>> rep_gens;

  std::size_t left_index(Elt prod_elt) const { return prod_elt / s->order(); }
  Elt right_elt(Elt prod_elt) const { return Elt(prod_elt % s->order()); }
};

inline PairContext make_pair_context(const Subgroup& q, const GroupPtr& s,
                                     const Limits& lim = default_limits()) {
  if (q.order() * s->order() > lim.max_pair)
    throw Error("|Q x S| exceeds the configured mark-vector cap");
  PairContext ctx;
  ctx.q = q;
  ctx.s = s;
  ctx.prod = Group::direct_product(subgroup_as_group(q, "Q"), s, "QxS");
  auto subs = subgroups(ctx.prod, lim.max_pair);
  auto classes = subgroup_conjugacy_classes(ctx.prod, subs);
  ctx.sub_reps.reserve(classes.rep_indices.size());
  for (std::size_t idx : classes.rep_indices) ctx.sub_reps.push_back(subs[idx]);
  std::sort(ctx.sub_reps.begin(), ctx.sub_reps.end(), subgroup_less);
  ctx.rep_gens.reserve(ctx.sub_reps.size());
  for (const auto& rep : ctx.sub_reps)
    ctx.rep_gens.push_back(generating_sequence(rep));
  return ctx;
}

/// Number of points fixed by every element of H <= Q x S
///.  H is given by product-group members.
inline std::size_t fixed_count(const Biset& w, const PairContext& ctx,
                               const std::vector<Elt>& h_members) {
  std::size_t count = 0;
  for (std::uint32_t x = 0; x < w.points; ++x) {
    bool fixed = true;
    for (Elt e : h_members) {
      std::size_t qi = ctx.left_index(e);
      Elt t = ctx.right_elt(e);
      if (w.act_right(w.act_left_by_index(qi, Elt(x)), w.s->inv(t)) != Elt(x)) {
        fixed = false;
        break;
      }
    }
    if (fixed) ++count;
  }
  return count;
}

/// Mark vector of a Q-S-biset over the subgroup class representatives.
/// Generators suffice for the fixed-point test.
inline std::vector<std::size_t> mark_vector(const Biset& w,
                                            const PairContext& ctx) {
  std::vector<std::size_t> marks(ctx.sub_reps.size(), 0);
  for (std::size_t r = 0; r < ctx.sub_reps.size(); ++r)
    marks[r] = fixed_count(w, ctx, ctx.rep_gens[r].empty()
                                       ? std::vector<Elt>{0}
                                       : ctx.rep_gens[r]);
  return marks;
}

/// Goursat form of a subgroup H <= Q x S: when H meets 1 x S trivially it is
/// the graph of a homomorphism theta : L -> S with L <= Q.
struct GoursatForm {
  Subgroup l;                    // subgroup of S (members inside Q)
  std::vector<Elt> theta_images; // theta(l.members[i])
  bool injective = false;
};

inline std::optional<GoursatForm> graph_form(const PairContext& ctx,
                                             const std::vector<Elt>& h_members) {
  std::map<Elt, Elt> val; // left element of S -> right element
  for (Elt e : h_members) {
    Elt ql = ctx.q.members[ctx.left_index(e)];
    Elt t = ctx.right_elt(e);
    auto [it, inserted] = val.emplace(ql, t);
    if (!inserted) return std::nullopt; // meets 1 x S nontrivially
  }
  GoursatForm g;
  g.l.parent = ctx.q.parent;
  for (const auto& [ql, t] : val) {
    g.l.members.push_back(ql);
    g.theta_images.push_back(t);
  }
  std::vector<Elt> im = g.theta_images;
  std::sort(im.begin(), im.end());
  g.injective = std::adjacent_find(im.begin(), im.end()) == im.end();
  return g;
}

// ---------------------------------------------------------------------------
// Orbits, isomorphism testing, constructive matching.
// ---------------------------------------------------------------------------

namespace detail {

struct BisetOrbits {
  std::vector<std::uint16_t> orbit_of;
  std::vector<Elt> base;                   // least point per orbit
  std::vector<Elt> transporter;            // g with x = g . base[orbit_of[x]]
  std::vector<std::vector<Elt>> stabilizer; // of the base point, sorted
};

inline BisetOrbits compute_orbits(const Biset& w, const PairContext& ctx) {
  BisetOrbits o;
  const std::size_t ns = w.s->order();
  o.orbit_of.assign(w.points, std::uint16_t(-1));
  o.transporter.assign(w.points, 0);
  for (std::uint32_t start = 0; start < w.points; ++start) {
    if (o.orbit_of[start] != std::uint16_t(-1)) continue;
    std::uint16_t oi = std::uint16_t(o.base.size());
    o.base.push_back(Elt(start));
    o.orbit_of[start] = oi;
    o.transporter[start] = 0; // identity of Q x S
    std::vector<Elt> queue{Elt(start)};
    for (std::size_t qi2 = 0; qi2 < queue.size(); ++qi2) {
      Elt x = queue[qi2];
      Elt gx = o.transporter[x];
      // left moves (q, e)
      for (std::size_t li = 0; li < w.left.members.size(); ++li) {
        Elt y = w.act_left_by_index(li, x);
        if (o.orbit_of[y] == std::uint16_t(-1)) {
          o.orbit_of[y] = oi;
          o.transporter[y] =
              ctx.prod->mul(ctx.prod->fuse(Elt(li), 0), gx);
          queue.push_back(y);
        }
      }
      // right moves (e, t): x . t = (e, t^-1) . x
      for (std::size_t t = 0; t < ns; ++t) {
        Elt y = w.act_right(x, Elt(t));
        if (o.orbit_of[y] == std::uint16_t(-1)) {
          o.orbit_of[y] = oi;
          o.transporter[y] =
              ctx.prod->mul(ctx.prod->fuse(0, w.s->inv(Elt(t))), gx);
          queue.push_back(y);
        }
      }
    }
    // stabilizer of the base point
    std::vector<Elt> stab;
    for (std::size_t e = 0; e < ctx.prod->order(); ++e) {
      std::size_t li = ctx.left_index(Elt(e));
      Elt t = ctx.right_elt(Elt(e));
      if (w.act_right(w.act_left_by_index(li, Elt(start)), w.s->inv(t)) ==
          Elt(start))
        stab.push_back(Elt(e));
    }
    o.stabilizer.push_back(std::move(stab));
  }
  return o;
}

inline Elt pair_act(const Biset& w, const PairContext& ctx, Elt g, Elt x) {
  std::size_t li = ctx.left_index(g);
  Elt t = ctx.right_elt(g);
  return w.act_right(w.act_left_by_index(li, x), w.s->inv(t));
}

} // namespace detail

struct MarkMismatch {
  Subgroup h;             // subgroup of the product group Q x S
  std::size_t plain = 0;   // |Omega1^H|
  std::size_t twisted = 0; // |Omega2^H|
};

struct BisetIso {
  std::optional<std::vector<Elt>> bijection; // point map Omega1 -> Omega2
  std::optional<MarkMismatch> mismatch;
  bool isomorphic() const { return bijection.has_value(); }
};

/// Burnside-sound isomorphism test for two bisets over the same (Q, S):
/// compares mark vectors over all subgroup classes of Q x S, and on success
/// constructs an explicit equivariant bijection by matching transitive orbits
/// with conjugate stabilizers.
inline BisetIso biset_isomorphism(const Biset& w1, const Biset& w2,
                                  const PairContext& ctx) {
  if (!(w1.left.members == w2.left.members) || w1.s != w2.s)
    throw Error("biset_isomorphism requires a common acting pair");
  BisetIso result;
  auto m1 = mark_vector(w1, ctx);
  auto m2 = mark_vector(w2, ctx);
  for (std::size_t r = 0; r < m1.size(); ++r)
    if (m1[r] != m2[r]) {
      result.mismatch = MarkMismatch{ctx.sub_reps[r], m1[r], m2[r]};
      return result;
    }
  // marks agree: construct the bijection orbit by orbit
  auto o1 = detail::compute_orbits(w1, ctx);
  auto o2 = detail::compute_orbits(w2, ctx);
  if (o1.base.size() != o2.base.size())
    throw Error("internal: equal marks but different orbit counts");
  const std::size_t n_orbits = o1.base.size();
  std::vector<char> used(n_orbits, 0);
  std::vector<Elt> map(w1.points, 0);
  for (std::size_t a = 0; a < n_orbits; ++a) {
    const auto& st1 = o1.stabilizer[a];
    bool matched = false;
    for (std::size_t b = 0; b < n_orbits && !matched; ++b) {
      if (used[b]) continue;
      const auto& st2 = o2.stabilizer[b];
      if (st2.size() != st1.size()) continue;
      // find c with c st2 c^-1 = st1
      for (std::size_t c = 0; c < ctx.prod->order(); ++c) {
        std::vector<Elt> conj;
        conj.reserve(st2.size());
        for (Elt e : st2) conj.push_back(ctx.prod->conj(Elt(c), e));
        std::sort(conj.begin(), conj.end());
        if (conj == st1) {
          Elt y0 = detail::pair_act(w2, ctx, Elt(c), o2.base[b]);
          for (std::uint32_t x = 0; x < w1.points; ++x)
            if (o1.orbit_of[x] == a)
              map[x] = detail::pair_act(w2, ctx, o1.transporter[x], y0);
          used[b] = 1;
          matched = true;
          break;
        }
      }
    }
    if (!matched)
      throw Error("internal: equal marks but no orbit match found");
  }
  // verify: bijective and equivariant for both actions
  {
    std::vector<char> hit(w2.points, 0);
    for (Elt y : map) {
      if (hit[y]) throw Error("internal: constructed map is not injective");
      hit[y] = 1;
    }
    for (std::uint32_t x = 0; x < w1.points; ++x) {
      for (std::size_t li = 0; li < w1.left.members.size(); ++li)
        if (map[w1.act_left_by_index(li, Elt(x))] !=
            w2.act_left_by_index(li, map[x]))
          throw Error("internal: map is not left equivariant");
      for (std::size_t t = 0; t < w1.s->order(); ++t)
        if (map[w1.act_right(Elt(x), Elt(t))] !=
            w2.act_right(map[x], Elt(t)))
          throw Error("internal: map is not right equivariant");
    }
  }
  result.bijection = std::move(map);
  return result;
}

inline BisetIso biset_isomorphism(const Biset& w1, const Biset& w2,
                                  const Limits& lim = default_limits()) {
  return biset_isomorphism(w1, w2, make_pair_context(w1.left, w1.s, lim));
}

// ---------------------------------------------------------------------------
// Left F-stability and isotropy.
// ---------------------------------------------------------------------------

struct StabilityEntry {
  Subgroup q;
  Hom phi;
  bool ok = false;
  std::optional<MarkMismatch> mismatch;
  std::optional<std::vector<Elt>> witness; // equivariant bijection _Q W -> _phi W
};

struct StabilityReport {
  bool stable = true;
  std::vector<StabilityEntry> entries;
};

/// Checks left F-stability of a bifree S-S biset: for every subgroup Q of S
/// up to conjugacy and every phi in Hom_F(Q, S), the Q-S-bisets _Q W and
/// _phi W must be isomorphic.
inline StabilityReport is_left_stable(const Biset& w, const FusionSystem& f,
                                      bool keep_witnesses = true,
                                      const Limits& lim = default_limits()) {
  if (!w.left.is_whole())
    throw Error("is_left_stable expects an S-S biset");
  StabilityReport report;
  auto classes = subgroup_conjugacy_classes(w.s, f.subs);
  for (std::size_t rep_idx : classes.rep_indices) {
    const Subgroup& q = f.subs[rep_idx];
    PairContext ctx = make_pair_context(q, w.s, lim);
    Biset plain = restrict_left(w, q);
    const auto& homs = f.hom_sets[rep_idx][f.whole_index()];
    for (const Hom& phi : homs) {
      Biset twisted = twist_left(w, phi);
      BisetIso iso = biset_isomorphism(plain, twisted, ctx);
      StabilityEntry entry{q, phi, iso.isomorphic(), iso.mismatch,
                           keep_witnesses ? std::move(iso.bijection)
                                          : std::nullopt};
      if (!entry.ok) report.stable = false;
      report.entries.push_back(std::move(entry));
    }
  }
  return report;
}

/// The multiset of monomorphisms labelling the transitive summands, each
/// normalized to the least representative of its S x S conjugacy class
///.
inline std::vector<Hom> isotropy(const Biset& w) {
  if (!w.left.is_whole()) throw Error("isotropy expects an S-S biset");
  const GroupPtr& s = w.s;
  const std::size_t n = s->order();
  Subgroup whole = whole_group(s);
  std::vector<Hom> out;
  for (const auto& sm : w.summands) {
    // least (domain, images) among (a,b)-conjugates of Delta(phi)
    const Hom& phi = sm.phi;
    std::vector<Elt> best_dom = phi.domain.members;
    std::vector<Elt> best_img = phi.images;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        // graph of q' -> b phi(a^-1 q' a) b^-1 over a Q a^-1
        std::vector<std::pair<Elt, Elt>> graph;
        graph.reserve(phi.domain.members.size());
        for (std::size_t i = 0; i < phi.domain.members.size(); ++i) {
          Elt qa = s->conj(Elt(a), phi.domain.members[i]);
          Elt tb = s->conj(Elt(b), phi.images[i]);
          graph.emplace_back(qa, tb);
        }
        std::sort(graph.begin(), graph.end());
        std::vector<Elt> dom, img;
        dom.reserve(graph.size());
        img.reserve(graph.size());
        for (auto& [x, y] : graph) {
          dom.push_back(x);
          img.push_back(y);
        }
        if (dom < best_dom || (dom == best_dom && img < best_img)) {
          best_dom = std::move(dom);
          best_img = std::move(img);
        }
      }
    out.push_back(Hom{Subgroup{s, std::move(best_dom)}, whole,
                      std::move(best_img)});
  }
  std::sort(out.begin(), out.end(), hom_less);
  return out;
}

/// Rebuilds a biset from its decomposition labels (used by the round-trip
/// checks).
inline Biset rebuild_from_isotropy(const GroupPtr& s,
                                   const std::vector<Hom>& phis) {
  std::vector<Biset> parts;
  parts.reserve(phis.size());
  for (const Hom& phi : phis) parts.push_back(transitive_biset(s, phi));
  return disjoint_union(parts);
}

} // namespace fusionforge
