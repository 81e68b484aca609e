#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "grpd/errors.hpp"
#include "grpd/groupoid.hpp"
#include "grpd/morphisms.hpp"
#include "grpd/normality.hpp"
#include "grpd/subgroupoid.hpp"

namespace grpd {

/**
 * Z(G): isotropy arrows commuting with every arrow of their own isotropy
 * group, i.e. the disjoint union of the group centers.  Wide, isotropic,
 * abelian and normal in G.
 */
inline SubgroupoidView center(const Groupoid& g) {
  std::vector<Elem> members;
  for (Elem x = 0; x < g.size(); ++x) {
    if (g.d(x) != g.r(x)) continue;
    bool central = true;
    for (Elem h : g.isotropy_members(g.d(x)))
      if (g.at(x, h) != g.at(h, x)) {
        central = false;
        break;
      }
    if (central) members.push_back(x);
  }
  return SubgroupoidView(g, std::move(members), "Z(" + g.name() + ")");
}

/** [x,y] = x⁻¹y⁻¹xy; defined exactly when x and y share an isotropy group. */
inline Elem commutator(const Groupoid& g, Elem x, Elem y) {
  if (g.d(x) != g.r(x) || g.d(y) != g.r(y) || g.d(x) != g.d(y))
    throw PreconditionFailed("commutator needs two arrows from one isotropy group");
  return g.at(g.at(g.at(g.inv(x), g.inv(y)), x), y);
}

/** All commutator values, sorted; contains every identity ([e,e] = e). */
inline std::vector<Elem> commutator_values(const Groupoid& g) {
  std::vector<char> in(g.size(), 0);
  for (Elem e : g.identities())
    for (Elem x : g.isotropy_members(e))
      for (Elem y : g.isotropy_members(e)) in[commutator(g, x, y)] = 1;
  std::vector<Elem> out;
  for (Elem x = 0; x < g.size(); ++x)
    if (in[x]) out.push_back(x);
  return out;
}

/** Derived subgroupoid G': generated by all commutators; wide and isotropic. */
inline SubgroupoidView derived_subgroupoid(const Groupoid& g) {
  return generate(g, commutator_values(g), g.name() + "'");
}

/**
 * [H,K]: generated by commutators [h,k] with h ∈ H, k ∈ K sharing an
 * isotropy group.  EmptySet when no such pair exists.
 */
inline SubgroupoidView commutator_subgroupoid(const Groupoid& g, const SubgroupoidView& h,
                                              const SubgroupoidView& k, std::string name = "") {
  if (&h.parent() != &g || &k.parent() != &g)
    throw PreconditionFailed("commutator subgroupoid needs subgroupoids of one parent");
  std::vector<char> in(g.size(), 0);
  bool any = false;
  for (Elem x : h.members()) {
    if (g.d(x) != g.r(x)) continue;
    for (Elem y : k.isotropy_members(g.d(x))) {
      in[commutator(g, x, y)] = 1;
      any = true;
    }
  }
  if (!any)
    throw EmptySet("'" + h.name() + "' and '" + k.name() +
                   "' share no isotropy group, so no commutators exist");
  std::vector<Elem> gens;
  for (Elem x = 0; x < g.size(); ++x)
    if (in[x]) gens.push_back(x);
  if (name.empty()) name = "[" + h.name() + "," + k.name() + "]";
  return generate(g, gens, std::move(name));
}

/**
 * One instance of the largest-abelian-quotient property: an abelian
 * quotient by H forces H to contain the derived subgroupoid.  When the
 * quotient does not exist (H has transit arrows) the premise is false.
 */
inline bool largest_abelian_check(const Groupoid& g, const SubgroupoidView& h) {
  if (!is_normal(g, h)) throw NotNormal("the denominator must be normal");
  if (!h.is_isotropic()) return true;
  if (!quotient(g, h).groupoid->is_abelian()) return true;
  const std::vector<Elem> der = derived_subgroupoid(g).members();
  return std::includes(h.members().begin(), h.members().end(), der.begin(), der.end());
}

/** Abelianization: G/G' together with the canonical projection. */
struct Abelianization {
  Quotient quotient;
  GroupoidMap projection;
};

inline Abelianization abelianize(const Groupoid& g) {
  SubgroupoidView derived = derived_subgroupoid(g);
  Quotient q = quotient(g, derived);
  if (!q.groupoid->is_abelian())
    throw Error("internal: abelianization of '" + g.name() + "' is not abelian");
  GroupoidMap proj = projection_map(q, "j");
  return Abelianization{std::move(q), std::move(proj)};
}

/**
 * Universal property: a homomorphism into an abelian target kills every
 * commutator, hence factors uniquely through G/G'.  Returns θ with
 * σ = θ ∘ j; θ is unique because j is surjective.
 */
inline GroupoidMap factor_through_abelianization(const Abelianization& ab,
                                                 const GroupoidMap& sigma) {
  if (&sigma.src() != ab.quotient.parent.get())
    throw PreconditionFailed("homomorphism must start at the abelianized groupoid's parent");
  if (!sigma.dst().is_abelian())
    throw TargetNotAbelian("factoring through the abelianization needs an abelian target");
  if (!check_map(sigma).is_hom)
    throw PreconditionFailed("'" + sigma.name() + "' is not a homomorphism");
  std::vector<Elem> image;
  image.reserve(ab.quotient.reps.size());
  for (std::size_t i = 0; i < ab.quotient.reps.size(); ++i) {
    image.push_back(sigma(ab.quotient.reps[i]));
    for (Elem x : ab.quotient.classes[i])
      if (sigma(x) != image.back())
        throw Error("internal: '" + sigma.name() + "' is not constant on a derived coset");
  }
  GroupoidMap theta(ab.quotient.groupoid, sigma.dst_ref(), std::move(image), "theta");
  if (!check_map(theta).is_hom)
    throw Error("internal: factored map of '" + sigma.name() + "' is not a homomorphism");
  for (Elem x = 0; x < sigma.src().size(); ++x)
    if (theta(ab.projection(x)) != sigma(x))
      throw Error("internal: factored map of '" + sigma.name() + "' does not reproduce it");
  return theta;
}

}  // namespace grpd
