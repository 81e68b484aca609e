#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "grpd/center_commutator.hpp"
#include "grpd/errors.hpp"
#include "grpd/groupoid.hpp"
#include "grpd/morphisms.hpp"
#include "grpd/normality.hpp"
#include "grpd/subgroupoid.hpp"

namespace grpd {

/**
 * An isomorphism between two isotropy groups of one groupoid, stored
 * pointwise: image[i] is where dom[i] goes.  dom is sorted, so equal
 * mappings compare equal componentwise.
 */
struct PartialIso {
  Elem dom_base = no_elem;
  Elem ran_base = no_elem;
  std::vector<Elem> dom;
  std::vector<Elem> image;

  bool same_mapping(const PartialIso& other) const {
    return dom_base == other.dom_base && ran_base == other.ran_base && dom == other.dom &&
           image == other.image;
  }

  bool is_identity_map() const { return dom_base == ran_base && dom == image; }

  Elem apply(Elem x) const {
    auto it = std::lower_bound(dom.begin(), dom.end(), x);
    if (it == dom.end() || *it != x)
      throw UnknownElement("partial isomorphism applied outside its domain");
    return image[static_cast<std::size_t>(it - dom.begin())];
  }
};

namespace detail {

/** Verifies f: G_dom -> G_ran is a bijective product-preserving map. */
inline void verify_partial_iso(const Groupoid& g, const PartialIso& f) {
  std::vector<Elem> ran = g.isotropy_members(f.ran_base);
  std::vector<Elem> sorted_image = f.image;
  std::sort(sorted_image.begin(), sorted_image.end());
  if (f.dom != g.isotropy_members(f.dom_base) || sorted_image != ran)
    throw Error("internal: partial isomorphism is not a bijection of isotropy groups");
  for (std::size_t i = 0; i < f.dom.size(); ++i)
    for (std::size_t j = 0; j < f.dom.size(); ++j)
      if (f.apply(g.at(f.dom[i], f.dom[j])) != g.at(f.image[i], f.image[j]))
        throw Error("internal: partial isomorphism does not preserve products");
}

}  // namespace detail

/** I_g: G_{d(g)} → G_{r(g)}, x ↦ g x g⁻¹.  Verified on construction. */
inline PartialIso inner_iso(const Groupoid& g, Elem x) {
  PartialIso f;
  f.dom_base = g.d(x);
  f.ran_base = g.r(x);
  f.dom = g.isotropy_members(f.dom_base);
  const Elem xi = g.inv(x);
  for (Elem m : f.dom) f.image.push_back(g.at(g.at(x, m), xi));
  detail::verify_partial_iso(g, f);
  return f;
}

/** ∃ f∘g iff D(f) = R(g); apply g first. */
inline std::optional<PartialIso> compose_partial(const Groupoid& g, const PartialIso& f,
                                                 const PartialIso& h) {
  if (f.dom_base != h.ran_base) return std::nullopt;
  PartialIso out;
  out.dom_base = h.dom_base;
  out.ran_base = f.ran_base;
  out.dom = h.dom;
  for (Elem x : h.dom) out.image.push_back(f.apply(h.apply(x)));
  detail::verify_partial_iso(g, out);
  return out;
}

inline PartialIso invert_partial(const Groupoid& g, const PartialIso& f) {
  PartialIso out;
  out.dom_base = f.ran_base;
  out.ran_base = f.dom_base;
  std::vector<std::pair<Elem, Elem>> pairs;
  for (std::size_t i = 0; i < f.dom.size(); ++i) pairs.emplace_back(f.image[i], f.dom[i]);
  std::sort(pairs.begin(), pairs.end());
  for (auto& [from, to] : pairs) {
    out.dom.push_back(from);
    out.image.push_back(to);
  }
  detail::verify_partial_iso(g, out);
  return out;
}

/**
 * A groupoid whose elements are partial isomorphisms of a parent.  The
 * table composes mappings; maps[i] is the mapping behind element i.
 */
struct MapGroupoid {
  GroupoidRef parent;
  GroupoidRef groupoid;
  std::vector<PartialIso> maps;

  /** Index of a mapping inside this package. */
  std::optional<Elem> find(const PartialIso& f) const {
    for (std::size_t i = 0; i < maps.size(); ++i)
      if (maps[i].same_mapping(f)) return i;
    return std::nullopt;
  }
};

namespace detail {

inline Groupoid package_map_table(const Groupoid& parent, const std::vector<PartialIso>& maps,
                                  const std::vector<std::string>& tokens, std::string name) {
  RawTable t;
  t.elements = tokens;
  for (std::size_t i = 0; i < maps.size(); ++i)
    for (std::size_t j = 0; j < maps.size(); ++j) {
      auto c = compose_partial(parent, maps[i], maps[j]);
      if (!c) continue;
      Elem target = no_elem;
      for (std::size_t k = 0; k < maps.size(); ++k)
        if (maps[k].same_mapping(*c)) {
          target = k;
          break;
        }
      if (target == no_elem)
        throw Error("internal: '" + name + "' is not closed under composition");
      t.products[{i, j}] = target;
    }
  return Groupoid(std::move(t), std::move(name));
}

/** All isomorphisms G_a → G_b, ordered by image tuple; backtracking. */
inline std::vector<PartialIso> isos_between(const Groupoid& g, Elem a, Elem b) {
  std::vector<Elem> dom = g.isotropy_members(a);
  std::vector<Elem> ran = g.isotropy_members(b);
  std::vector<PartialIso> out;
  if (dom.size() != ran.size()) return out;

  auto order_of = [&g](Elem x) {
    std::size_t k = 1;
    Elem p = x;
    while (!g.is_identity(p)) {
      p = g.at(p, x);
      ++k;
    }
    return k;
  };
  std::vector<std::size_t> dom_order, ran_order;
  for (Elem x : dom) dom_order.push_back(order_of(x));
  for (Elem y : ran) ran_order.push_back(order_of(y));

  std::vector<Elem> img(dom.size(), no_elem);
  std::vector<char> used(ran.size(), 0);
  auto dom_pos = [&dom](Elem x) {
    return static_cast<std::size_t>(std::lower_bound(dom.begin(), dom.end(), x) - dom.begin());
  };

  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == dom.size()) {
      PartialIso f;
      f.dom_base = a;
      f.ran_base = b;
      f.dom = dom;
      for (std::size_t i = 0; i < dom.size(); ++i) f.image.push_back(ran[img[i]]);
      out.push_back(std::move(f));
      return;
    }
    for (std::size_t yi = 0; yi < ran.size(); ++yi) {
      if (used[yi] || dom_order[pos] != ran_order[yi]) continue;
      if (g.is_identity(dom[pos]) != g.is_identity(ran[yi])) continue;
      bool ok = true;
      for (std::size_t q = 0; ok && q <= pos; ++q) {
        if (img[q] == no_elem) continue;
        std::size_t pq = dom_pos(g.at(dom[pos], dom[q]));
        if (img[pq] != no_elem && ran[img[pq]] != g.at(ran[yi], ran[img[q]])) ok = false;
        std::size_t qp = dom_pos(g.at(dom[q], dom[pos]));
        if (ok && img[qp] != no_elem && ran[img[qp]] != g.at(ran[img[q]], ran[yi])) ok = false;
      }
      std::size_t pp = dom_pos(g.at(dom[pos], dom[pos]));
      if (ok && img[pp] != no_elem && pp != pos && ran[img[pp]] != g.at(ran[yi], ran[yi]))
        ok = false;
      if (ok && pp == pos && ran[yi] != g.at(ran[yi], ran[yi])) ok = false;
      if (!ok) continue;
      img[pos] = yi;
      used[yi] = 1;
      self(self, pos + 1);
      img[pos] = no_elem;
      used[yi] = 0;
    }
  };
  rec(rec, 0);

  std::vector<PartialIso> verified;
  for (auto& f : out) {
    bool iso = true;
    for (std::size_t i = 0; iso && i < f.dom.size(); ++i)
      for (std::size_t j = 0; j < f.dom.size(); ++j)
        if (f.apply(g.at(f.dom[i], f.dom[j])) != g.at(f.image[i], f.image[j])) {
          iso = false;
          break;
        }
    if (iso) verified.push_back(std::move(f));
  }
  return verified;
}

}  // namespace detail

inline std::size_t default_iso_bound() { return 8; }

/**
 * A(G): every isomorphism between isotropy groups, composable when domain
 * meets range.  Enumeration cost grows factorially with isotropy order,
 * hence the bound (override per call or with GRPD_BOUND in the CLI).
 */
inline MapGroupoid partial_iso_groupoid(const Groupoid& g,
                                        std::size_t bound = default_iso_bound()) {
  for (Elem e : g.identities())
    if (g.isotropy_members(e).size() > bound)
      throw BoundExceeded("isotropy group at '" + g.token(e) + "' has order " +
                          std::to_string(g.isotropy_members(e).size()) +
                          ", above the enumeration bound " + std::to_string(bound));
  MapGroupoid out;
  out.parent = borrow(g);
  std::vector<std::string> tokens;
  for (Elem a : g.identities())
    for (Elem b : g.identities())
      for (auto& f : detail::isos_between(g, a, b)) {
        tokens.push_back("phi" + std::to_string(out.maps.size()));
        out.maps.push_back(std::move(f));
      }
  out.groupoid = std::make_shared<const Groupoid>(
      detail::package_map_table(g, out.maps, tokens, "A(" + g.name() + ")"));
  return out;
}

/**
 * I(G): the distinct inner isomorphisms I_g, named after the first witness
 * in element order.  A wide subgroupoid of A(G) by membership.
 */
inline MapGroupoid inner_iso_groupoid(const Groupoid& g) {
  MapGroupoid out;
  out.parent = borrow(g);
  std::vector<std::string> tokens;
  for (Elem x = 0; x < g.size(); ++x) {
    PartialIso f = inner_iso(g, x);
    bool fresh = true;
    for (const auto& known : out.maps)
      if (known.same_mapping(f)) {
        fresh = false;
        break;
      }
    if (fresh) {
      tokens.push_back("I(" + g.token(x) + ")");
      out.maps.push_back(std::move(f));
    }
  }
  out.groupoid = std::make_shared<const Groupoid>(
      detail::package_map_table(g, out.maps, tokens, "I(" + g.name() + ")"));
  return out;
}

/** Θ: G → I(G), g ↦ I_g, packaged with its target. */
struct Theta {
  MapGroupoid inner;
  GroupoidMap map;
};

/**
 * Builds Θ and confirms the structure the construction promises: strong,
 * surjective, and Ker(Θ) = Z(G).
 */
inline Theta theta(const Groupoid& g) {
  MapGroupoid inner = inner_iso_groupoid(g);
  std::vector<Elem> image;
  image.reserve(g.size());
  for (Elem x = 0; x < g.size(); ++x) {
    auto idx = inner.find(inner_iso(g, x));
    if (!idx) throw Error("internal: inner isomorphism missing from its own package");
    image.push_back(*idx);
  }
  GroupoidMap map(borrow(g), inner.groupoid, std::move(image), "Theta");
  HomCheck hc = check_map(map);
  if (!hc.is_hom || !hc.is_strong || !hc.is_surjective)
    throw Error("internal: Theta is not a strong surjection onto I(" + g.name() + ")");
  if (kernel(map).members() != center(g).members())
    throw Error("internal: Ker(Theta) differs from the center of '" + g.name() + "'");
  return Theta{std::move(inner), std::move(map)};
}

/** H is carried onto itself by I_x: the image of H ∩ D(I_x) is H ∩ R(I_x). */
inline bool is_invariant(const Groupoid& g, const SubgroupoidView& h, Elem x) {
  if (&h.parent() != &g) throw PreconditionFailed("subgroupoid belongs to another groupoid");
  if (x >= g.size()) throw UnknownElement("no element " + std::to_string(x) + " to conjugate by");
  PartialIso f = inner_iso(g, x);
  std::vector<Elem> mapped;
  for (Elem m : f.dom)
    if (h.contains(m)) mapped.push_back(f.apply(m));
  std::sort(mapped.begin(), mapped.end());
  return mapped == h.isotropy_members(f.ran_base);
}

/** Invariance under every inner isomorphism; agrees with is_normal. */
inline bool normal_via_invariance(const Groupoid& g, const SubgroupoidView& h) {
  if (!h.is_wide()) return false;
  for (Elem x = 0; x < g.size(); ++x)
    if (!is_invariant(g, h, x)) return false;
  return true;
}

/**
 * Invariance of a member set under every inner isomorphism, computed two
 * ways: I_g(H ∩ D(I_g)) = H ∩ R(I_g) per element, and the conjugation
 * equality g⁻¹ H_{r(g)} g = H_{d(g)} per element.  The two agree; for wide
 * H they characterize normality.
 */
struct InvarianceCheck {
  bool invariant = false;
  bool conjugation_equal = false;
  std::vector<std::string> witness;
};

/** The central quotient next to I(G), with both isomorphism witnesses. */
struct InnerIsoTheorem {
  Quotient by_center;   // G/Z(G)
  Theta theta;          // Θ and the packaged I(G)
  GroupoidMap induced;  // the map the first isomorphism theorem produces
  GroupoidMap found;    // an independent backtracking search witness
};

inline InnerIsoTheorem verify_inner_iso_theorem(const Groupoid& g) {
  Theta th = theta(g);
  Quotient qz = quotient(g, center(g));
  FirstIso fi = first_iso(th.map);  // re-verifies the induced isomorphism
  if (fi.quotient.classes != qz.classes)
    throw Error("internal: cosets of Ker(Theta) differ from cosets of the center");
  auto found = find_isomorphism(*qz.groupoid, *th.inner.groupoid);
  if (!found)
    throw Error("internal: no isomorphism between G/Z(G) and I(G) was found");
  return InnerIsoTheorem{std::move(qz), std::move(th), std::move(fi.iso), std::move(*found)};
}

inline InvarianceCheck check_inner_invariance(const Groupoid& g, const SubgroupoidView& h) {
  if (&h.parent() != &g) throw PreconditionFailed("subgroupoid belongs to another groupoid");
  InvarianceCheck out;
  out.invariant = true;
  out.conjugation_equal = true;
  for (Elem x = 0; x < g.size(); ++x) {
    PartialIso f = inner_iso(g, x);
    std::vector<Elem> mapped;
    for (Elem m : f.dom)
      if (h.contains(m)) mapped.push_back(f.apply(m));
    std::sort(mapped.begin(), mapped.end());
    if (mapped != h.isotropy_members(f.ran_base)) {
      if (out.invariant && out.witness.empty()) out.witness = {g.token(x)};
      out.invariant = false;
    }
    if (conjugate_set(g, h, x) != h.isotropy_members(g.d(x))) out.conjugation_equal = false;
  }
  return out;
}

}  // namespace grpd
