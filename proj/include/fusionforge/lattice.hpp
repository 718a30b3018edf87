#pragma once

// Subgroup enumeration (cyclic seeding + closure-join walk), conjugacy
// classes of elements and of subgroups, center, p-group rank, and abelian
// basis decomposition.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <unordered_map>
#include <vector>

#include "fusionforge/group.hpp"

namespace fusionforge {

namespace detail {

/// Bitmask over group elements.
struct EltMask {
  std::vector<std::uint64_t> w;

  explicit EltMask(std::size_t n = 0) : w((n + 63) / 64, 0) {}
  void set(Elt x) { w[x >> 6] |= (std::uint64_t(1) << (x & 63)); }
  bool test(Elt x) const {
    return (w[x >> 6] >> (x & 63)) & 1;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto v : w) c += std::size_t(__builtin_popcountll(v));
    return c;
  }
  bool operator==(const EltMask& o) const { return w == o.w; }
  bool operator<(const EltMask& o) const { return w < o.w; }
  bool subset_of(const EltMask& o) const {
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i] & ~o.w[i]) return false;
    return true;
  }
};

struct EltMaskHash {
  std::size_t operator()(const EltMask& m) const {
    std::size_t h = 1469598103934665603ull;
    for (auto v : m.w) {
      h ^= std::size_t(v);
      h *= 1099511628211ull;
    }
    return h;
  }
};

inline std::vector<Elt> mask_members(const EltMask& m, std::size_t n) {
  std::vector<Elt> out;
  for (std::size_t x = 0; x < n; ++x)
    if (m.test(Elt(x))) out.push_back(Elt(x));
  return out;
}

/// Closure of a set of elements under multiplication.  Stops early once the
/// count passes n/2: by Lagrange the result is then the whole group.
inline EltMask closure_mask(const Group& g, const std::vector<Elt>& seed,
                            const EltMask* ambient = nullptr) {
  const std::size_t n = g.order();
  EltMask mask(n);
  std::vector<Elt> list;
  mask.set(0);
  list.push_back(0);
  std::vector<Elt> frontier;
  for (Elt s : seed)
    if (!mask.test(s)) {
      mask.set(s);
      list.push_back(s);
      frontier.push_back(s);
    }
  (void)ambient;
  std::size_t scanned = 1; // elements already fully multiplied against list
  while (scanned < list.size()) {
    Elt u = list[scanned++];
    for (std::size_t i = 0; i < list.size(); ++i) {
      Elt v = list[i];
      for (Elt prod : {g.mul(u, v), g.mul(v, u)}) {
        if (!mask.test(prod)) {
          mask.set(prod);
          list.push_back(prod);
        }
      }
      if (list.size() * 2 > n) {
        // must be the whole group
        EltMask full(n);
        for (std::size_t x = 0; x < n; ++x) full.set(Elt(x));
        return full;
      }
    }
  }
  return mask;
}

} // namespace detail

/// Subgroup generated by the given elements.
inline Subgroup generated_subgroup(const GroupPtr& g,
                                   const std::vector<Elt>& gens) {
  auto mask = detail::closure_mask(*g, gens);
  return Subgroup{g, detail::mask_members(mask, g->order())};
}

/// A short generating sequence for a subgroup (greedy, deterministic).
inline std::vector<Elt> generating_sequence(const Subgroup& h) {
  std::vector<Elt> gens;
  detail::EltMask have(h.parent->order());
  have.set(0);
  std::size_t covered = 1;
  while (covered < h.members.size()) {
    Elt next = 0;
    for (Elt m : h.members)
      if (!have.test(m)) {
        next = m;
        break;
      }
    gens.push_back(next);
    have = detail::closure_mask(*h.parent, gens);
    covered = have.count();
  }
  return gens;
}

/// All subgroups contained in the given subgroup, each exactly once, sorted
/// by (order, member list).  Walks the lattice by joining cyclic seeds.
inline std::vector<Subgroup> subgroups_within(const Subgroup& top) {
  const GroupPtr& g = top.parent;
  const std::size_t n = g->order();
  // cyclic atoms
  std::vector<detail::EltMask> atoms;
  {
    std::unordered_map<detail::EltMask, int, detail::EltMaskHash> seen;
    detail::EltMask triv(n);
    triv.set(0);
    seen.emplace(triv, 1);
    atoms.push_back(triv);
    for (Elt m : top.members) {
      if (m == 0) continue;
      detail::EltMask cyc(n);
      Elt acc = m;
      while (acc != 0) {
        cyc.set(acc);
        acc = g->mul(acc, m);
      }
      cyc.set(0);
      if (seen.emplace(cyc, 1).second) atoms.push_back(cyc);
    }
  }
  detail::EltMask topmask(n);
  for (Elt m : top.members) topmask.set(m);

  std::unordered_map<detail::EltMask, int, detail::EltMaskHash> found;
  std::vector<detail::EltMask> order; // BFS order
  for (const auto& a : atoms)
    if (found.emplace(a, 1).second) order.push_back(a);
  for (std::size_t qi = 0; qi < order.size(); ++qi) {
    detail::EltMask x = order[qi];
    for (const auto& a : atoms) {
      if (a.subset_of(x)) continue;
      std::vector<Elt> seed = detail::mask_members(x, n);
      auto am = detail::mask_members(a, n);
      seed.insert(seed.end(), am.begin(), am.end());
      auto join = detail::closure_mask(*g, seed);
      if (!join.subset_of(topmask)) continue;
      if (found.emplace(join, 1).second) order.push_back(join);
    }
  }
  std::vector<Subgroup> out;
  out.reserve(order.size());
  for (const auto& m : order)
    out.push_back(Subgroup{g, detail::mask_members(m, n)});
  std::sort(out.begin(), out.end(), subgroup_less);
  return out;
}

/// All subgroups of G.  Errors when |G| exceeds the bound.
inline std::vector<Subgroup> subgroups(const GroupPtr& g,
                                       std::size_t bound = 10000) {
  if (g->order() > bound)
    throw Error("subgroup enumeration bound exceeded for " + g->label());
  return subgroups_within(whole_group(g));
}

/// Center of G.
inline Subgroup center(const GroupPtr& g) {
  std::vector<Elt> members;
  for (std::size_t z = 0; z < g->order(); ++z) {
    bool central = true;
    for (std::size_t x = 0; x < g->order() && central; ++x)
      central = g->mul(Elt(z), Elt(x)) == g->mul(Elt(x), Elt(z));
    if (central) members.push_back(Elt(z));
  }
  return Subgroup{g, std::move(members)};
}

/// Prime p when |G| is a nontrivial p-power; nullopt otherwise (|G|=1 gives
/// nullopt as well).
inline std::optional<unsigned> p_group_prime(const GroupPtr& g) {
  std::size_t n = g->order();
  if (n < 2) return std::nullopt;
  unsigned p = 2;
  while (n % p != 0) ++p; // smallest divisor of n is prime
  while (n % p == 0) n /= p;
  if (n != 1) return std::nullopt;
  return p;
}

inline bool is_elementary_abelian(const Subgroup& h, unsigned p) {
  for (Elt a : h.members) {
    if (a != 0 && h.parent->element_order(a) != p) return false;
    for (Elt b : h.members)
      if (h.parent->mul(a, b) != h.parent->mul(b, a)) return false;
  }
  return true;
}

namespace detail {

inline unsigned log_base(std::size_t n, unsigned p) {
  unsigned k = 0;
  while (n > 1) {
    n /= p;
    ++k;
  }
  return k;
}

} // namespace detail

/// Rank of a p-group: the largest k with (C_p)^k embedded.  Computed over the
/// elementary abelian subgroups of H.
inline unsigned subgroup_rank(const Subgroup& h) {
  if (h.order() == 1) return 0;
  auto prime = [&]() -> unsigned {
    std::size_t n = h.order();
    for (unsigned p = 2; p <= n; ++p)
      if (n % p == 0) {
        std::size_t m = n;
        while (m % p == 0) m /= p;
        if (m != 1) throw Error("rank is defined for p-groups only");
        return p;
      }
    throw Error("rank is defined for p-groups only");
  }();
  unsigned best = 0;
  for (const auto& s : subgroups_within(h))
    if (is_elementary_abelian(s, prime) || s.order() == 1) {
      unsigned k = detail::log_base(s.order(), prime);
      best = std::max(best, k);
    }
  return best;
}

inline unsigned rank(const GroupPtr& g) { return subgroup_rank(whole_group(g)); }

/// Conjugacy classes of the elements of a subgroup H (conjugation by H).
struct ConjugacyClasses {
  std::vector<Elt> reps;                 // least element of each class
  std::vector<std::uint16_t> class_of;   // indexed by member position in H
};

inline ConjugacyClasses conjugacy_classes(const Subgroup& h) {
  ConjugacyClasses cc;
  cc.class_of.assign(h.members.size(), std::uint16_t(-1));
  const auto& g = *h.parent;
  for (std::size_t i = 0; i < h.members.size(); ++i) {
    if (cc.class_of[i] != std::uint16_t(-1)) continue;
    std::uint16_t ci = std::uint16_t(cc.reps.size());
    cc.reps.push_back(h.members[i]);
    for (Elt t : h.members) {
      Elt y = g.conj(t, h.members[i]);
      cc.class_of[h.member_index(y)] = ci;
    }
  }
  return cc;
}

/// Conjugacy classes of a list of subgroups of G under G-conjugation.
struct SubgroupClasses {
  std::vector<std::size_t> rep_indices;    // indices into the input list
  std::vector<std::size_t> class_of;       // per input subgroup
};

inline SubgroupClasses subgroup_conjugacy_classes(
    const GroupPtr& g, const std::vector<Subgroup>& subs) {
  SubgroupClasses out;
  out.class_of.assign(subs.size(), std::size_t(-1));
  std::map<std::vector<Elt>, std::size_t> index_of;
  for (std::size_t i = 0; i < subs.size(); ++i)
    index_of[subs[i].members] = i;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (out.class_of[i] != std::size_t(-1)) continue;
    std::size_t ci = out.rep_indices.size();
    out.rep_indices.push_back(i);
    for (std::size_t t = 0; t < g->order(); ++t) {
      std::vector<Elt> conj;
      conj.reserve(subs[i].members.size());
      for (Elt m : subs[i].members) conj.push_back(g->conj(Elt(t), m));
      std::sort(conj.begin(), conj.end());
      auto it = index_of.find(conj);
      if (it == index_of.end())
        throw Error("conjugate subgroup missing from the input list");
      out.class_of[it->second] = ci;
    }
  }
  return out;
}

/// Basis of a finite abelian group: generators a_1..a_k with descending
/// prime-power orders such that the product map is a bijection, plus the
/// exponent coordinates of every member.
struct AbelianBasis {
  std::vector<Elt> generators;
  std::vector<unsigned> orders;
  std::vector<std::vector<unsigned>> coords; // per member position
};

inline AbelianBasis abelian_basis(const Subgroup& z) {
  const auto& g = *z.parent;
  for (Elt a : z.members)
    for (Elt b : z.members)
      if (g.mul(a, b) != g.mul(b, a))
        throw Error("abelian_basis requires an abelian subgroup");
  AbelianBasis basis;
  if (z.order() == 1) {
    basis.coords.assign(1, {});
    return basis;
  }
  // backtracking over candidate generators, highest order first
  std::vector<Elt> cands(z.members.begin(), z.members.end());
  std::stable_sort(cands.begin(), cands.end(), [&](Elt a, Elt b) {
    return g.element_order(a) > g.element_order(b);
  });
  std::vector<Elt> gens;
  std::vector<Elt> span{0};
  std::function<bool()> search = [&]() -> bool {
    if (span.size() == z.order()) return true;
    for (Elt c : cands) {
      if (c == 0) continue;
      if (!gens.empty() &&
          g.element_order(c) > g.element_order(gens.back()))
        continue; // keep orders descending
      // direct-sum condition: <c> meets the current span trivially
      bool indep = true;
      Elt acc = c;
      while (acc != 0 && indep) {
        if (std::binary_search(span.begin(), span.end(), acc)) indep = false;
        acc = g.mul(acc, c);
      }
      if (!indep) continue;
      std::vector<Elt> old_span = span;
      std::vector<Elt> next;
      Elt pow = 0;
      for (unsigned k = 0; k < g.element_order(c); ++k) {
        for (Elt s : old_span) next.push_back(g.mul(s, pow));
        pow = g.mul(pow, c);
      }
      std::sort(next.begin(), next.end());
      gens.push_back(c);
      span = std::move(next);
      if (search()) return true;
      gens.pop_back();
      span = old_span;
    }
    return false;
  };
  if (!search()) throw Error("abelian basis search failed");
  basis.generators = gens;
  for (Elt c : gens) basis.orders.push_back(g.element_order(c));
  // coordinates by full enumeration of exponent tuples
  basis.coords.assign(z.members.size(), {});
  std::vector<unsigned> exps(gens.size(), 0);
  std::vector<char> done(z.members.size(), 0);
  std::size_t filled = 0;
  std::function<void(std::size_t, Elt)> walk = [&](std::size_t gi, Elt acc) {
    if (gi == gens.size()) {
      std::size_t pos = z.member_index(acc);
      if (!done[pos]) {
        done[pos] = 1;
        basis.coords[pos] = exps;
        ++filled;
      }
      return;
    }
    Elt cur = acc;
    for (unsigned e = 0; e < basis.orders[gi]; ++e) {
      exps[gi] = e;
      walk(gi + 1, cur);
      cur = g.mul(cur, gens[gi]);
    }
    exps[gi] = 0;
  };
  walk(0, 0);
  if (filled != z.members.size())
    throw Error("abelian basis does not span the subgroup");
  return basis;
}

} // namespace fusionforge
