#pragma once

// Finite groups with exact multiplication, subgroups, and injective
// homomorphisms.  Elements are canonical integer indices; index 0 is always
// the identity.  Groups up to kDenseTableLimit carry a full multiplication
// table, direct products above that size multiply componentwise.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fusionforge/limits.hpp"

namespace fusionforge {

using Elt = std::uint16_t;

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDenseTableLimit = 4096;

class Group;
using GroupPtr = std::shared_ptr<const Group>;

class Group {
public:
  /// Builds a group from an explicit multiplication table (row-major,
  /// table[x*n+y] = x*y).  Element 0 must be the identity.
  static GroupPtr from_table(std::string label, std::size_t n,
                             std::vector<Elt> table,
                             std::vector<std::string> names = {}) {
    auto g = std::shared_ptr<Group>(new Group());
    g->label_ = std::move(label);
    g->n_ = n;
    g->table_ = std::move(table);
    g->names_ = std::move(names);
    g->finish_init();
    return g;
  }

  /// Direct product A x B; element index is a*|B|+b.  Uses a dense table
  /// when the order allows it, componentwise multiplication otherwise.
  static GroupPtr direct_product(GroupPtr a, GroupPtr b,
                                 std::string label = {}) {
    const std::size_t n = a->order() * b->order();
    if (n > (1u << 14))
      throw Error("direct_product: order " + std::to_string(n) +
                  " exceeds the supported bound 2^14");
    if (label.empty()) label = a->label() + "x" + b->label();
    auto g = std::shared_ptr<Group>(new Group());
    g->label_ = std::move(label);
    g->n_ = n;
    g->pa_ = std::move(a);
    g->pb_ = std::move(b);
    if (n <= kDenseTableLimit) {
      g->table_.resize(n * n);
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          g->table_[x * n + y] = g->product_mul(static_cast<Elt>(x),
                                                static_cast<Elt>(y));
    }
    g->names_.reserve(n);
    for (std::size_t x = 0; x < n; ++x) {
      const auto [xa, xb] = g->split(static_cast<Elt>(x));
      g->names_.push_back("(" + g->pa_->element_name(xa) + "," +
                          g->pb_->element_name(xb) + ")");
    }
    g->finish_init();
    return g;
  }

  std::size_t order() const { return n_; }
  const std::string& label() const { return label_; }
  Elt identity() const { return 0; }

  Elt mul(Elt x, Elt y) const {
    if (!table_.empty()) return table_[std::size_t(x) * n_ + y];
    return product_mul(x, y);
  }

  Elt inv(Elt x) const { return inv_[x]; }

  /// g x g^{-1}
  Elt conj(Elt g, Elt x) const { return mul(mul(g, x), inv(g)); }

  unsigned element_order(Elt x) const { return elt_order_[x]; }

  std::string element_name(Elt x) const {
    if (x < names_.size() && !names_[x].empty()) return names_[x];
    return "g" + std::to_string(x);
  }

  bool is_abelian() const { return abelian_; }

  /// Exponent of the product structure, when this group was built as A x B.
  bool is_product() const { return pa_ != nullptr; }
  const GroupPtr& left_factor() const { return pa_; }
  const GroupPtr& right_factor() const { return pb_; }
  std::pair<Elt, Elt> split(Elt x) const {
    const std::size_t nb = pb_->order();
    return {static_cast<Elt>(x / nb), static_cast<Elt>(x % nb)};
  }
  Elt fuse(Elt xa, Elt xb) const {
    return static_cast<Elt>(std::size_t(xa) * pb_->order() + xb);
  }

private:
  Group() = default;

  Elt product_mul(Elt x, Elt y) const {
    const auto [xa, xb] = split(x);
    const auto [ya, yb] = split(y);
    return fuse(pa_->mul(xa, ya), pb_->mul(xb, yb));
  }

  void finish_init() {
    if (n_ == 0) throw Error("group must be non-empty");
    if (n_ > (1u << 14)) throw Error("group order exceeds 2^14");
    if (!table_.empty()) {
      if (table_.size() != n_ * n_) throw Error("bad table size");
      for (std::size_t x = 0; x < n_; ++x)
        if (table_[x * n_] != x || table_[x] != x)
          throw Error("element 0 is not the identity");
      // Latin-square check: every row and column is a permutation.
      std::vector<char> seen(n_);
      for (std::size_t x = 0; x < n_; ++x) {
        std::fill(seen.begin(), seen.end(), 0);
        for (std::size_t y = 0; y < n_; ++y) {
          Elt v = table_[x * n_ + y];
          if (v >= n_ || seen[v]) throw Error("row is not a permutation");
          seen[v] = 1;
        }
      }
      if (n_ <= 256) {
        for (std::size_t a = 0; a < n_; ++a)
          for (std::size_t b = 0; b < n_; ++b)
            for (std::size_t c = 0; c < n_; ++c)
              if (mul(mul(Elt(a), Elt(b)), Elt(c)) !=
                  mul(Elt(a), mul(Elt(b), Elt(c))))
                throw Error("multiplication is not associative");
      }
    }
    inv_.assign(n_, 0);
    elt_order_.assign(n_, 1);
    if (pa_ && table_.empty()) {
      // componentwise, avoiding quadratic scans on large pair groups
      for (std::size_t x = 0; x < n_; ++x) {
        const auto [xa, xb] = split(Elt(x));
        inv_[x] = fuse(pa_->inv(xa), pb_->inv(xb));
        elt_order_[x] =
            std::lcm(pa_->element_order(xa), pb_->element_order(xb));
      }
      abelian_ = pa_->is_abelian() && pb_->is_abelian();
      return;
    }
    for (std::size_t x = 0; x < n_; ++x) {
      // inverse by scanning; cheap at these sizes
      bool found = false;
      for (std::size_t y = 0; y < n_; ++y)
        if (mul(Elt(x), Elt(y)) == 0) {
          if (mul(Elt(y), Elt(x)) != 0) throw Error("one-sided inverse");
          inv_[x] = Elt(y);
          found = true;
          break;
        }
      if (!found) throw Error("element without inverse");
    }
    for (std::size_t x = 1; x < n_; ++x) {
      unsigned k = 1;
      Elt acc = Elt(x);
      while (acc != 0) {
        acc = mul(acc, Elt(x));
        ++k;
        if (k > n_) throw Error("element order exceeds group order");
      }
      elt_order_[x] = k;
    }
    abelian_ = true;
    for (std::size_t x = 0; x < n_ && abelian_; ++x)
      for (std::size_t y = x + 1; y < n_; ++y)
        if (mul(Elt(x), Elt(y)) != mul(Elt(y), Elt(x))) {
          abelian_ = false;
          break;
        }
  }

  std::string label_;
  std::size_t n_ = 0;
  std::vector<Elt> table_;
  GroupPtr pa_, pb_;
  std::vector<Elt> inv_;
  std::vector<unsigned> elt_order_;
  std::vector<std::string> names_;
  bool abelian_ = false;
};

/// A subgroup is a sorted member list inside a fixed parent group.
struct Subgroup {
  GroupPtr parent;
  std::vector<Elt> members; // sorted ascending; always contains 0

  std::size_t order() const { return members.size(); }

  bool contains(Elt x) const {
    return std::binary_search(members.begin(), members.end(), x);
  }

  bool contains_all(const Subgroup& other) const {
    return std::includes(members.begin(), members.end(),
                         other.members.begin(), other.members.end());
  }

  bool is_whole() const { return members.size() == parent->order(); }

  /// Position of x in the member list; x must be a member.
  std::size_t member_index(Elt x) const {
    auto it = std::lower_bound(members.begin(), members.end(), x);
    if (it == members.end() || *it != x)
      throw Error("element is not a member of the subgroup");
    return std::size_t(it - members.begin());
  }

  bool operator==(const Subgroup& o) const {
    return parent == o.parent && members == o.members;
  }

  std::string describe() const {
    if (is_whole()) return parent->label();
    std::string s = parent->label() + "<";
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(members[i]);
    }
    s += ">";
    return s;
  }
};

inline Subgroup whole_group(const GroupPtr& g) {
  Subgroup s;
  s.parent = g;
  s.members.resize(g->order());
  std::iota(s.members.begin(), s.members.end(), 0);
  return s;
}

inline Subgroup trivial_subgroup(const GroupPtr& g) {
  return Subgroup{g, {0}};
}

inline Subgroup make_subgroup(const GroupPtr& g, std::vector<Elt> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  Subgroup s{g, std::move(members)};
  if (s.members.empty() || s.members.front() != 0)
    throw Error("subgroup must contain the identity");
  for (Elt a : s.members) {
    if (!s.contains(g->inv(a))) throw Error("subgroup not closed under inverse");
    for (Elt b : s.members)
      if (!s.contains(g->mul(a, b))) throw Error("subgroup not closed under product");
  }
  return s;
}

/// Compares subgroups for deterministic orderings: by order, then members.
inline bool subgroup_less(const Subgroup& a, const Subgroup& b) {
  if (a.members.size() != b.members.size())
    return a.members.size() < b.members.size();
  return a.members < b.members;
}

/// An injective homomorphism between subgroups, stored extensionally.
struct Hom {
  Subgroup domain;
  Subgroup codomain;       // ambient target; the image is contained in it
  std::vector<Elt> images; // images[i] is the image of domain.members[i]

  Elt apply(Elt x) const { return images[domain.member_index(x)]; }

  std::vector<Elt> image_members() const {
    std::vector<Elt> im = images;
    std::sort(im.begin(), im.end());
    return im;
  }

  Subgroup image_subgroup() const {
    return Subgroup{codomain.parent, image_members()};
  }

  bool is_identity_inclusion() const {
    return images == domain.members;
  }

  /// Extensional equality: same domain, same values.
  bool operator==(const Hom& o) const {
    return domain.parent == o.domain.parent && domain.members == o.domain.members &&
           images == o.images;
  }
};

inline bool hom_less(const Hom& a, const Hom& b) {
  if (a.domain.members != b.domain.members)
    return a.domain.members < b.domain.members;
  return a.images < b.images;
}

/// Validates the homomorphism property and injectivity, then builds the Hom.
inline Hom make_hom(Subgroup domain, Subgroup codomain, std::vector<Elt> images) {
  if (images.size() != domain.members.size())
    throw Error("hom image list has wrong length");
  Hom h{std::move(domain), std::move(codomain), std::move(images)};
  const auto& dg = *h.domain.parent;
  const auto& cg = *h.codomain.parent;
  for (std::size_t i = 0; i < h.domain.members.size(); ++i) {
    if (!h.codomain.contains(h.images[i]))
      throw Error("hom image leaves the codomain");
    for (std::size_t j = 0; j < h.domain.members.size(); ++j) {
      Elt prod = dg.mul(h.domain.members[i], h.domain.members[j]);
      if (h.apply(prod) != cg.mul(h.images[i], h.images[j]))
        throw Error("map is not a homomorphism");
    }
  }
  std::vector<Elt> im = h.images;
  std::sort(im.begin(), im.end());
  if (std::adjacent_find(im.begin(), im.end()) != im.end())
    throw Error("homomorphism is not injective");
  return h;
}

inline Hom identity_hom(const Subgroup& h) {
  return Hom{h, h, h.members};
}

inline Hom inclusion_hom(const Subgroup& h, const Subgroup& k) {
  if (!k.contains_all(h)) throw Error("inclusion requires H <= K");
  return Hom{h, k, h.members};
}

/// The conjugation homomorphism c_g : H -> K, h |-> g h g^{-1}.
inline Hom conjugation_hom(const GroupPtr& g, Elt a, const Subgroup& h,
                           const Subgroup& k) {
  std::vector<Elt> images;
  images.reserve(h.members.size());
  for (Elt x : h.members) {
    Elt y = g->conj(a, x);
    if (!k.contains(y)) throw Error("conjugate of H by g is not inside K");
    images.push_back(y);
  }
  return Hom{h, k, std::move(images)};
}

/// f after g (domains must compose: image of g inside domain of f).
inline Hom compose_hom(const Hom& f, const Hom& g) {
  std::vector<Elt> images;
  images.reserve(g.domain.members.size());
  for (std::size_t i = 0; i < g.domain.members.size(); ++i)
    images.push_back(f.apply(g.images[i]));
  return Hom{g.domain, f.codomain, std::move(images)};
}

/// Inverse of the corestricted isomorphism domain -> image.
inline Hom invert_onto_image(const Hom& f) {
  Subgroup im = f.image_subgroup();
  std::vector<Elt> images(im.members.size());
  for (std::size_t i = 0; i < f.domain.members.size(); ++i)
    images[im.member_index(f.images[i])] = f.domain.members[i];
  return Hom{im, f.domain, std::move(images)};
}

inline Hom restrict_hom(const Hom& f, const Subgroup& l) {
  if (!f.domain.contains_all(l)) throw Error("restriction requires L <= dom f");
  std::vector<Elt> images;
  images.reserve(l.members.size());
  for (Elt x : l.members) images.push_back(f.apply(x));
  return Hom{l, f.codomain, std::move(images)};
}

/// Corestriction of f onto its image subgroup.
inline Hom corestrict_hom(const Hom& f) {
  return Hom{f.domain, f.image_subgroup(), f.images};
}

// ---------------------------------------------------------------------------
// Constructors for the group families used by the pipeline.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string power_name(const std::string& gen, unsigned k) {
  if (k == 0) return "e";
  if (k == 1) return gen;
  return gen + "^" + std::to_string(k);
}

} // namespace detail

inline GroupPtr cyclic_group(unsigned n) {
  if (n == 0) throw Error("cyclic group order must be positive");
  std::vector<Elt> table(std::size_t(n) * n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      table[std::size_t(i) * n + j] = Elt((i + j) % n);
  std::vector<std::string> names;
  names.reserve(n);
  for (unsigned i = 0; i < n; ++i) names.push_back(detail::power_name("a", i));
  return Group::from_table("C" + std::to_string(n), n, std::move(table),
                           std::move(names));
}

inline GroupPtr elementary_abelian_group(unsigned p, unsigned k) {
  if (p < 2 || k == 0) throw Error("elementary abelian parameters invalid");
  std::size_t n = 1;
  for (unsigned i = 0; i < k; ++i) {
    n *= p;
    if (n > (1u << 14)) throw Error("elementary abelian group too large");
  }
  std::vector<Elt> table(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      std::size_t z = 0, px = x, py = y, base = 1;
      for (unsigned i = 0; i < k; ++i) {
        z += ((px % p + py % p) % p) * base;
        px /= p;
        py /= p;
        base *= p;
      }
      table[x * n + y] = Elt(z);
    }
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::string s = "(";
    std::size_t px = x;
    for (unsigned i = 0; i < k; ++i) {
      if (i) s += ",";
      s += std::to_string(px % p);
      px /= p;
    }
    s += ")";
    names.push_back(std::move(s));
  }
  std::string label = "C" + std::to_string(p);
  if (k > 1) label += "^" + std::to_string(k);
  return Group::from_table(std::move(label), n, std::move(table),
                           std::move(names));
}

/// Generalized quaternion group of order 2^N (N >= 3), with the presentation
/// a^(2^(N-1)) = 1, b^2 = a^(2^(N-2)), b a b^-1 = a^-1.  Element a^i b^j has
/// index i + j*2^(N-1).
inline GroupPtr quaternion_group(unsigned order) {
  if (order < 8 || (order & (order - 1)) != 0)
    throw Error("quaternion order must be a power of 2, at least 8");
  const unsigned m = order / 2;    // order of a
  const unsigned half = m / 2;     // b^2 = a^half
  std::vector<Elt> table(std::size_t(order) * order);
  auto idx = [&](unsigned i, unsigned j) { return Elt(i + j * m); };
  for (unsigned i1 = 0; i1 < m; ++i1)
    for (unsigned j1 = 0; j1 < 2; ++j1)
      for (unsigned i2 = 0; i2 < m; ++i2)
        for (unsigned j2 = 0; j2 < 2; ++j2) {
          // (a^i1 b^j1)(a^i2 b^j2)
          unsigned i, j;
          if (j1 == 0) {
            i = (i1 + i2) % m;
            j = j2;
          } else {
            i = (i1 + m - i2 % m) % m; // b a^i2 = a^-i2 b
            j = 1 + j2;
          }
          if (j == 2) {
            i = (i + half) % m; // b^2 = a^half
            j = 0;
          }
          table[std::size_t(idx(i1, j1)) * order + idx(i2, j2)] = idx(i, j);
        }
  std::vector<std::string> names(order);
  for (unsigned i = 0; i < m; ++i) {
    names[idx(i, 0)] = detail::power_name("a", i);
    names[idx(i, 1)] = i == 0 ? "b" : detail::power_name("a", i) + "*b";
  }
  return Group::from_table("Q" + std::to_string(order), order,
                           std::move(table), std::move(names));
}

/// Dihedral group of the given (even) order, presentation
/// r^(n/2) = s^2 = 1, s r s = r^-1.
inline GroupPtr dihedral_group(unsigned order) {
  if (order < 4 || order % 2 != 0)
    throw Error("dihedral order must be even and at least 4");
  const unsigned m = order / 2;
  std::vector<Elt> table(std::size_t(order) * order);
  auto idx = [&](unsigned i, unsigned j) { return Elt(i + j * m); };
  for (unsigned i1 = 0; i1 < m; ++i1)
    for (unsigned j1 = 0; j1 < 2; ++j1)
      for (unsigned i2 = 0; i2 < m; ++i2)
        for (unsigned j2 = 0; j2 < 2; ++j2) {
          unsigned i, j;
          if (j1 == 0) {
            i = (i1 + i2) % m;
            j = j2;
          } else {
            i = (i1 + m - i2 % m) % m; // s r^i2 = r^-i2 s
            j = (1 + j2) % 2;
          }
          table[std::size_t(idx(i1, j1)) * order + idx(i2, j2)] = idx(i, j);
        }
  std::vector<std::string> names(order);
  for (unsigned i = 0; i < m; ++i) {
    names[idx(i, 0)] = detail::power_name("r", i);
    names[idx(i, 1)] = i == 0 ? "s" : detail::power_name("r", i) + "*s";
  }
  return Group::from_table("D" + std::to_string(order), order,
                           std::move(table), std::move(names));
}

/// Quotient of a dense-table group by a normal subgroup; coset reps are the
/// least member of each coset.
inline GroupPtr quotient_group(const GroupPtr& g, const Subgroup& n,
                               std::string label) {
  for (std::size_t x = 0; x < g->order(); ++x)
    for (Elt m : n.members)
      if (!n.contains(g->conj(Elt(x), m)))
        throw Error("quotient requires a normal subgroup");
  const std::size_t ng = g->order();
  std::vector<Elt> coset_of(ng, Elt(ng)); // element -> coset index (by rep order)
  std::vector<Elt> reps;
  for (std::size_t x = 0; x < ng; ++x) {
    if (coset_of[x] != Elt(ng)) continue;
    Elt rep = Elt(x);
    Elt ci = Elt(reps.size());
    reps.push_back(rep);
    for (Elt m : n.members) coset_of[g->mul(rep, m)] = ci;
  }
  const std::size_t q = reps.size();
  std::vector<Elt> table(q * q);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j)
      table[i * q + j] = coset_of[g->mul(reps[i], reps[j])];
  std::vector<std::string> names;
  names.reserve(q);
  for (Elt r : reps) names.push_back(g->element_name(r));
  return Group::from_table(std::move(label), q, std::move(table),
                           std::move(names));
}

namespace detail {

/// The unique central involution of an extraspecial 2-group component.
inline Elt central_involution(const GroupPtr& g) {
  for (std::size_t z = 1; z < g->order(); ++z) {
    if (g->element_order(Elt(z)) != 2) continue;
    bool central = true;
    for (std::size_t x = 0; x < g->order() && central; ++x)
      central = g->mul(Elt(z), Elt(x)) == g->mul(Elt(x), Elt(z));
    if (central) return Elt(z);
  }
  throw Error("no central involution found");
}

/// Central product identifying the central involutions of A and B.
inline GroupPtr central_product(const GroupPtr& a, const GroupPtr& b,
                                std::string label) {
  GroupPtr prod = Group::direct_product(a, b);
  Elt za = central_involution(a);
  Elt zb = central_involution(b);
  Elt z = prod->fuse(za, zb);
  Subgroup n = make_subgroup(prod, {0, z});
  return quotient_group(prod, n, std::move(label));
}

} // namespace detail

/// Extraspecial groups.  For odd p: order p^3 with exponent p (Heisenberg)
/// or exponent p^2 (modular).  For p = 2: iterated central products of D8
/// ("plus" type) with an optional final Q8 factor ("minus" type), orders
/// 8, 32, 128.
inline GroupPtr extraspecial_group(unsigned order, const std::string& kind) {
  // p = 2 family
  if ((order & (order - 1)) == 0) {
    if (order < 8 || order > 128)
      throw Error("extraspecial 2-group order must be 8, 32, or 128");
    unsigned k = 0; // number of central factors
    for (unsigned o = 8; o < order; o *= 4) ++k;
    if ((8u << (2 * k)) != order)
      throw Error("extraspecial 2-group order must be 8, 32, or 128");
    bool minus;
    if (kind == "plus") minus = false;
    else if (kind == "minus") minus = true;
    else throw Error("extraspecial 2-group kind must be plus or minus");
    std::string label = "ES(" + std::to_string(order) + "," + kind + ")";
    GroupPtr acc = minus ? quaternion_group(8) : dihedral_group(8);
    for (unsigned i = 0; i < k; ++i)
      acc = detail::central_product(acc, dihedral_group(8),
                                    i + 1 == k ? label : std::string("tmp"));
    if (k == 0) {
      // relabel the plain D8/Q8 copy
      std::vector<Elt> table(acc->order() * acc->order());
      std::vector<std::string> names;
      for (std::size_t x = 0; x < acc->order(); ++x) {
        names.push_back(acc->element_name(Elt(x)));
        for (std::size_t y = 0; y < acc->order(); ++y)
          table[x * acc->order() + y] = acc->mul(Elt(x), Elt(y));
      }
      return Group::from_table(label, acc->order(), std::move(table),
                               std::move(names));
    }
    return acc;
  }
  // odd p, order p^3
  unsigned p = 0;
  for (unsigned c = 3; c * c * c <= order; ++c)
    if (c * c * c == order) p = c;
  if (p == 0 || p % 2 == 0)
    throw Error("extraspecial order must be p^3 for an odd prime p (or a 2-power)");
  for (unsigned d = 2; d < p; ++d)
    if (p % d == 0) throw Error("extraspecial base must be prime");
  const std::size_t n = order;
  std::vector<Elt> table(n * n);
  std::vector<std::string> names(n);
  if (kind == "exp_p") {
    // Heisenberg group: triples (x,y,z), (x1,y1,z1)(x2,y2,z2) =
    // (x1+x2, y1+y2, z1+z2+x1*y2) mod p.
    auto idx = [&](unsigned x, unsigned y, unsigned z) {
      return Elt((x * p + y) * p + z);
    };
    for (unsigned x1 = 0; x1 < p; ++x1)
      for (unsigned y1 = 0; y1 < p; ++y1)
        for (unsigned z1 = 0; z1 < p; ++z1)
          for (unsigned x2 = 0; x2 < p; ++x2)
            for (unsigned y2 = 0; y2 < p; ++y2)
              for (unsigned z2 = 0; z2 < p; ++z2)
                table[std::size_t(idx(x1, y1, z1)) * n + idx(x2, y2, z2)] =
                    idx((x1 + x2) % p, (y1 + y2) % p,
                        (z1 + z2 + x1 * y2) % p);
    for (unsigned x = 0; x < p; ++x)
      for (unsigned y = 0; y < p; ++y)
        for (unsigned z = 0; z < p; ++z)
          names[idx(x, y, z)] = "(" + std::to_string(x) + "," +
                                std::to_string(y) + "," + std::to_string(z) + ")";
  } else if (kind == "exp_p2") {
    // Modular group: a of order p^2, b of order p, b a b^-1 = a^(1+p).
    const unsigned p2 = p * p;
    auto idx = [&](unsigned i, unsigned j) { return Elt(i + j * p2); };
    // (1+p)^j mod p^2
    std::vector<unsigned> tw(p);
    tw[0] = 1;
    for (unsigned j = 1; j < p; ++j) tw[j] = (tw[j - 1] * (1 + p)) % p2;
    for (unsigned i1 = 0; i1 < p2; ++i1)
      for (unsigned j1 = 0; j1 < p; ++j1)
        for (unsigned i2 = 0; i2 < p2; ++i2)
          for (unsigned j2 = 0; j2 < p; ++j2)
            table[std::size_t(idx(i1, j1)) * n + idx(i2, j2)] =
                idx((i1 + i2 * tw[j1]) % p2, (j1 + j2) % p);
    for (unsigned i = 0; i < p2; ++i)
      for (unsigned j = 0; j < p; ++j) {
        std::string s = detail::power_name("a", i);
        if (j > 0) s = (i == 0 ? "" : s + "*") + detail::power_name("b", j);
        names[idx(i, j)] = s;
      }
  } else {
    throw Error("extraspecial odd-p kind must be exp_p or exp_p2");
  }
  std::string label = "ES(" + std::to_string(order) + "," + kind + ")";
  return Group::from_table(std::move(label), n, std::move(table),
                           std::move(names));
}

// ---------------------------------------------------------------------------
// Group descriptor grammar: name, optional caret-power, optional parenthesized
// parameters, "x" for products.  Examples: C4, C2^3, Q16, D8, ES(27,exp_p),
// Q8xC2.
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::string> split_product(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == ' ' || c == '\t') continue;
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == 'x' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

inline GroupPtr parse_single_group(const std::string& tok) {
  if (tok.empty()) throw Error("empty group descriptor");
  if (tok == "1" || tok == "C1") return cyclic_group(1);
  auto parse_uint = [&](const std::string& s) -> unsigned {
    if (s.empty()) throw Error("bad number in group descriptor: " + tok);
    unsigned long v = 0;
    for (char c : s) {
      if (c < '0' || c > '9')
        throw Error("bad number in group descriptor: " + tok);
      v = v * 10 + unsigned(c - '0');
      if (v > (1u << 14)) throw Error("group descriptor order too large: " + tok);
    }
    return unsigned(v);
  };
  if (tok.rfind("ES(", 0) == 0) {
    if (tok.back() != ')') throw Error("malformed ES descriptor: " + tok);
    std::string inner = tok.substr(3, tok.size() - 4);
    auto comma = inner.find(',');
    if (comma == std::string::npos)
      throw Error("ES descriptor needs (order,kind): " + tok);
    unsigned order = parse_uint(inner.substr(0, comma));
    return extraspecial_group(order, inner.substr(comma + 1));
  }
  const char head = tok[0];
  std::string rest = tok.substr(1);
  auto caret = rest.find('^');
  unsigned power = 1;
  if (caret != std::string::npos) {
    power = parse_uint(rest.substr(caret + 1));
    rest = rest.substr(0, caret);
  }
  unsigned n = parse_uint(rest);
  GroupPtr base;
  switch (head) {
    case 'C': base = cyclic_group(n); break;
    case 'Q': base = quaternion_group(n); break;
    case 'D': base = dihedral_group(n); break;
    default: throw Error("unknown group descriptor: " + tok);
  }
  if (power == 0) throw Error("zero power in group descriptor: " + tok);
  if (power == 1) return base;
  // direct power; elementary abelian when the base is C_p
  GroupPtr acc = base;
  for (unsigned i = 1; i < power; ++i) acc = Group::direct_product(acc, base);
  // friendlier label for powers
  std::vector<Elt> table;
  if (acc->order() <= kDenseTableLimit) {
    std::string label = tok;
    table.resize(acc->order() * acc->order());
    std::vector<std::string> names;
    names.reserve(acc->order());
    for (std::size_t x = 0; x < acc->order(); ++x) {
      names.push_back(acc->element_name(Elt(x)));
      for (std::size_t y = 0; y < acc->order(); ++y)
        table[x * acc->order() + y] = acc->mul(Elt(x), Elt(y));
    }
    return Group::from_table(label, acc->order(), std::move(table),
                             std::move(names));
  }
  return acc;
}

} // namespace detail

/// Parses a group descriptor string, e.g. "C4", "C2^3", "Q16", "ES(27,exp_p)",
/// "Q8xC2".
inline GroupPtr make_group(const std::string& descriptor,
                           const Limits& lim = default_limits()) {
  auto parts = detail::split_product(descriptor);
  GroupPtr acc;
  for (const auto& part : parts) {
    GroupPtr g = detail::parse_single_group(part);
    acc = acc ? Group::direct_product(acc, g) : g;
  }
  if (acc->order() > lim.max_g)
    throw Error("group order " + std::to_string(acc->order()) +
                " exceeds the configured bound " + std::to_string(lim.max_g));
  return acc;
}

} // namespace fusionforge
