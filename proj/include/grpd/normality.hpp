#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "grpd/errors.hpp"
#include "grpd/groupoid.hpp"
#include "grpd/subgroupoid.hpp"

namespace grpd {

/**
 * g⁻¹ H g: conjugates of the isotropy members of H at r(g), all landing in
 * the isotropy group at d(g).  Sorted.  H need not be normal or wide.
 */
inline std::vector<Elem> conjugate_set(const Groupoid& g, const SubgroupoidView& h, Elem x) {
  if (&h.parent() != &g) throw PreconditionFailed("subgroupoid belongs to another groupoid");
  std::vector<Elem> out;
  const Elem xi = g.inv(x);
  for (Elem m : h.isotropy_members(g.r(x))) out.push_back(g.at(g.at(xi, m), x));
  std::sort(out.begin(), out.end());
  return out;
}

/**
 * Both normality readings, computed independently: containment
 * (g⁻¹ H_{r(g)} g ⊆ H_{d(g)} for every g) and equality
 * (g⁻¹ H_{r(g)} g = H_{d(g)} for every g).  For wide H the two agree;
 * normal means wide plus containment-stable.
 */
struct NormalityCheck {
  bool wide = false;
  bool stable = false;
  bool equal = false;
  std::vector<std::string> witness;  // first failure: conjugating g, then offender

  bool normal() const noexcept { return wide && stable; }
};

inline NormalityCheck check_normal(const Groupoid& g, const SubgroupoidView& h) {
  if (&h.parent() != &g) throw PreconditionFailed("subgroupoid belongs to another groupoid");
  NormalityCheck out;
  out.wide = h.is_wide();
  out.stable = true;
  out.equal = true;
  for (Elem x = 0; x < g.size(); ++x) {
    const std::vector<Elem> conj = conjugate_set(g, h, x);
    for (Elem c : conj)
      if (!h.contains(c)) {
        if (out.stable) {
          out.stable = false;
          if (out.witness.empty()) out.witness = {g.token(x), g.token(c)};
        }
        break;
      }
    if (conj != h.isotropy_members(g.d(x))) {
      if (out.equal && out.witness.empty()) out.witness = {g.token(x)};
      out.equal = false;
    }
  }
  if (!out.wide && out.witness.empty())
    for (Elem e : g.identities())
      if (!h.contains(e)) {
        out.witness = {g.token(e)};
        break;
      }
  return out;
}

inline bool is_normal(const Groupoid& g, const SubgroupoidView& h) {
  return check_normal(g, h).normal();
}

/**
 * N_G(H) = { g : g⁻¹ H_{r(g)} g = H_{d(g)} }, for wide H.  The scan result
 * is certified as a subgroupoid on return; H is normal inside it and it is
 * the greatest wide subgroupoid with that property.
 */
inline SubgroupoidView normalizer(const Groupoid& g, const SubgroupoidView& h) {
  if (&h.parent() != &g) throw PreconditionFailed("subgroupoid belongs to another groupoid");
  if (!h.is_wide()) throw PreconditionFailed("normalizer requires a wide subgroupoid");
  std::vector<Elem> members;
  for (Elem x = 0; x < g.size(); ++x)
    if (conjugate_set(g, h, x) == h.isotropy_members(g.d(x))) members.push_back(x);
  return SubgroupoidView(g, std::move(members), "N(" + h.name() + ")");
}

/**
 * Smallest normal subgroupoid containing the seed: alternate wide closure
 * with adding all conjugates of isotropy members until stable.
 */
inline SubgroupoidView normal_closure(const Groupoid& g, const std::vector<Elem>& seed,
                                      std::string name = "H") {
  SubgroupoidView cur = generate_wide(g, seed, name);
  for (;;) {
    std::vector<Elem> next = cur.members();
    for (Elem x = 0; x < g.size(); ++x)
      for (Elem c : conjugate_set(g, cur, x))
        if (!cur.contains(c)) next.push_back(c);
    if (next.size() == cur.size()) break;
    cur = generate_wide(g, next, name);
  }
  return cur;
}

/**
 * HK for a normal second factor of isotropy arrows: always certifies, and
 * stays normal whenever H is normal too.
 */
inline SubgroupoidView product_with_normal(const Groupoid& g, const SubgroupoidView& h,
                                           const SubgroupoidView& k, std::string name = "HK") {
  if (&h.parent() != &g || &k.parent() != &g)
    throw PreconditionFailed("the factors must be subgroupoids of the given groupoid");
  if (!is_normal(g, k) || !k.is_isotropic())
    throw PreconditionFailed("the second factor must be normal with d = r members");
  SubgroupoidView out(g, set_product(h, k), std::move(name));
  if (is_normal(g, h) && !is_normal(g, out))
    throw Error("internal: the product of normal subgroupoids lost normality");
  return out;
}

/** H ∩ K for wide H and normal K: verified normal as a subgroupoid of H. */
inline SubgroupoidView intersect_normal(const Groupoid& g, const SubgroupoidView& h,
                                        const SubgroupoidView& k, std::string name = "H∩K") {
  if (&h.parent() != &g || &k.parent() != &g)
    throw PreconditionFailed("the factors must be subgroupoids of the given groupoid");
  if (!h.is_wide() || !is_normal(g, k))
    throw PreconditionFailed("needs a wide first factor and a normal second one");
  SubgroupoidView meet = intersect(h, k, std::move(name));  // nonempty: both are wide
  Groupoid inside = h.as_groupoid();
  std::vector<Elem> reindexed;
  for (Elem m : meet.members()) reindexed.push_back(inside.elem(g.token(m)));
  if (!is_normal(inside, SubgroupoidView(inside, reindexed, meet.name())))
    throw Error("internal: the intersection failed to be normal inside the first factor");
  return meet;
}

/**
 * Normal subgroupoids meeting only in identities commute pointwise where
 * both are based at one object.  False would expose an implementation
 * defect, so the scan's verdict is returned rather than asserted.
 */
inline bool check_commuting_trivial_intersection(const Groupoid& g, const SubgroupoidView& h,
                                                 const SubgroupoidView& k) {
  if (&h.parent() != &g || &k.parent() != &g)
    throw PreconditionFailed("the factors must be subgroupoids of the given groupoid");
  if (!is_normal(g, h) || !is_normal(g, k))
    throw PreconditionFailed("both factors must be normal");
  if (intersect(h, k, "M").members() != g.identities())
    throw PreconditionFailed("the factors must meet in the identities only");
  for (Elem a : h.members()) {
    if (g.d(a) != g.r(a)) continue;
    for (Elem b : k.members()) {
      if (g.d(b) != g.r(b) || g.d(b) != g.d(a)) continue;
      if (g.at(a, b) != g.at(b, a)) return false;
    }
  }
  return true;
}

/** g ≡_H l iff l⁻¹g exists and lies in H.  Requires normal H. */
inline bool congruent(const Groupoid& g, const SubgroupoidView& h, Elem a, Elem b) {
  if (!is_normal(g, h))
    throw NotNormal("congruence needs a normal subgroupoid of '" + g.name() + "'");
  auto q = g.compose(g.inv(b), a);
  return q && h.contains(*q);
}

/** Left coset aH = { ah : h ∈ H, r(h) = d(a) }, sorted. */
inline std::vector<Elem> coset(const Groupoid& g, const SubgroupoidView& h, Elem a) {
  std::vector<Elem> out;
  for (Elem m : h.members())
    if (auto z = g.compose(a, m)) out.push_back(*z);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/**
 * Coset partition of a normal subgroupoid, ordered by least member; every
 * element lies in exactly one coset (checked).
 */
inline std::vector<std::vector<Elem>> cosets(const Groupoid& g, const SubgroupoidView& h) {
  if (!is_normal(g, h))
    throw NotNormal("cosets need a normal subgroupoid of '" + g.name() + "'");
  std::vector<std::vector<Elem>> out;
  std::vector<char> seen(g.size(), 0);
  for (Elem a = 0; a < g.size(); ++a) {
    if (seen[a]) continue;
    std::vector<Elem> cls = coset(g, h, a);
    for (Elem x : cls) {
      if (seen[x]) throw Error("internal: cosets of '" + h.name() + "' overlap");
      seen[x] = 1;
    }
    if (cls.empty() || cls.front() != a)
      throw Error("internal: coset representative is not its least member");
    out.push_back(std::move(cls));
  }
  return out;
}

/** Quotient data: coset groupoid plus the partition that produced it. */
struct Quotient {
  GroupoidRef parent;                     // groupoid that was divided
  GroupoidRef groupoid;                   // coset table, tokens "[<least member>]"
  std::vector<std::vector<Elem>> classes; // parent indices, sorted, by least member
  std::vector<Elem> reps;                 // least member of each class
  std::vector<Elem> class_of;             // parent element -> class index
};

/**
 * G/H for a normal subgroupoid whose members are all isotropy arrows.
 * Isotropy keeps d and r constant on each coset, which is exactly what
 * makes [a][b] = [ab] well defined; the coset table is re-validated.
 */
inline Quotient quotient(const Groupoid& g, const SubgroupoidView& h) {
  NormalityCheck nc = check_normal(g, h);
  if (!nc.normal())
    throw NotNormal("quotient of '" + g.name() + "' needs a normal subgroupoid" +
                    (nc.witness.empty() ? "" : " (witness: " + nc.witness.front() + ")"));
  if (!h.is_isotropic())
    throw NotIsotropic("quotient denominator must contain isotropy arrows only");

  Quotient out;
  out.parent = borrow(g);
  out.classes = cosets(g, h);
  out.class_of.assign(g.size(), no_elem);
  for (std::size_t i = 0; i < out.classes.size(); ++i) {
    out.reps.push_back(out.classes[i].front());
    for (Elem x : out.classes[i]) out.class_of[x] = i;
  }

  RawTable t;
  for (Elem rep : out.reps) t.elements.push_back("[" + g.token(rep) + "]");
  const std::size_t k = out.reps.size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (auto z = g.compose(out.reps[i], out.reps[j]))
        t.products[{i, j}] = out.class_of[*z];
  out.groupoid =
      std::make_shared<const Groupoid>(Groupoid(std::move(t), g.name() + "/" + h.name()));
  return out;
}

}  // namespace grpd
