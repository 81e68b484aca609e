#pragma once

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <string>
#include <utility>
#include <vector>

#include "grpd/errors.hpp"
#include "grpd/groupoid.hpp"

namespace grpd {

/**
 * A certified subgroupoid: a sorted member set of a parent groupoid, closed
 * under defined products and inverses.  Construction performs the closure
 * certification, so holding a view is proof of subgroupoid-hood.  The view
 * does not own the parent; keep the parent alive.
 */
class SubgroupoidView {
 public:
  SubgroupoidView(const Groupoid& parent, std::vector<Elem> members, std::string name = "H")
      : parent_(&parent), members_(std::move(members)), name_(std::move(name)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    certify();
  }

  const Groupoid& parent() const noexcept { return *parent_; }
  const std::string& name() const noexcept { return name_; }
  const std::vector<Elem>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }

  bool contains(Elem g) const {
    return std::binary_search(members_.begin(), members_.end(), g);
  }

  /** Identities of the parent that belong to the member set. */
  std::vector<Elem> identities() const {
    std::vector<Elem> out;
    for (Elem e : parent_->identities())
      if (contains(e)) out.push_back(e);
    return out;
  }

  /** Members of the isotropy group at base, i.e. H intersected with G_base. */
  std::vector<Elem> isotropy_members(Elem base) const {
    std::vector<Elem> out;
    for (Elem g : members_)
      if (parent_->d(g) == base && parent_->r(g) == base) out.push_back(g);
    return out;
  }

  /** Contains every identity of the parent. */
  bool is_wide() const {
    for (Elem e : parent_->identities())
      if (!contains(e)) return false;
    return true;
  }

  /** Every member has d = r. */
  bool is_isotropic() const {
    for (Elem g : members_)
      if (parent_->d(g) != parent_->r(g)) return false;
    return true;
  }

  bool same_members(const SubgroupoidView& other) const {
    return parent_ == other.parent_ && members_ == other.members_;
  }

  /** The member set as a groupoid in its own right (induced table). */
  Groupoid as_groupoid() const { return parent_->restrict(members_, name_); }

 private:
  void certify() const {
    if (members_.empty())
      throw EmptySet("subgroupoid of '" + parent_->name() + "' must be nonempty");
    if (members_.back() >= parent_->size())
      throw UnknownElement("member index " + std::to_string(members_.back()) +
                           " out of range in '" + parent_->name() + "'");
    for (Elem a : members_)
      for (Elem b : members_) {
        auto c = parent_->compose(a, b);
        if (c && !contains(*c))
          throw NotASubgroupoid("set is not closed under products: '" + parent_->token(a) +
                                "'*'" + parent_->token(b) + "' = '" + parent_->token(*c) +
                                "' is missing");
      }
    for (Elem a : members_)
      if (!contains(parent_->inv(a)))
        throw NotASubgroupoid("set is not closed under inverses: '" +
                              parent_->token(parent_->inv(a)) + "' is missing");
  }

  const Groupoid* parent_;
  std::vector<Elem> members_;
  std::string name_;
};

/** Certifies an explicit member set. */
inline SubgroupoidView subgroupoid(const Groupoid& g, const std::vector<Elem>& members,
                                   std::string name = "H") {
  return SubgroupoidView(g, members, std::move(name));
}

/** Closure test alone: would certification succeed?  Emptiness still throws. */
inline bool is_subgroupoid(const Groupoid& g, const std::vector<Elem>& members) {
  try {
    SubgroupoidView probe(g, members, "S");
    (void)probe;
    return true;
  } catch (const NotASubgroupoid&) {
    return false;
  }
}

/**
 * Smallest subgroupoid containing the generators: worklist closure under
 * product and inverse (d and r arise as g⁻¹g and gg⁻¹).
 */
inline SubgroupoidView generate(const Groupoid& g, const std::vector<Elem>& gens,
                                std::string name = "H") {
  if (gens.empty()) throw EmptySet("generating set must be nonempty");
  std::vector<char> in(g.size(), 0);
  std::vector<Elem> members;
  std::vector<Elem> queue;
  auto push = [&](Elem x) {
    if (!in[x]) {
      in[x] = 1;
      members.push_back(x);
      queue.push_back(x);
    }
  };
  for (Elem x : gens) {
    if (x >= g.size())
      throw UnknownElement("generator index " + std::to_string(x) + " out of range");
    push(x);
  }
  while (!queue.empty()) {
    Elem x = queue.back();
    queue.pop_back();
    push(g.inv(x));
    // snapshot: members may grow while iterating
    for (std::size_t i = 0; i < members.size(); ++i) {
      Elem y = members[i];
      if (auto z = g.compose(x, y)) push(*z);
      if (auto z = g.compose(y, x)) push(*z);
    }
  }
  return SubgroupoidView(g, std::move(members), std::move(name));
}

/** H together with every identity of the parent; always a subgroupoid. */
inline SubgroupoidView widen(const SubgroupoidView& h) {
  std::vector<Elem> members = h.members();
  for (Elem e : h.parent().identities()) members.push_back(e);
  return SubgroupoidView(h.parent(), std::move(members), h.name());
}

/** Wide closure of a generating set; an empty set yields the identity spine. */
inline SubgroupoidView generate_wide(const Groupoid& g, const std::vector<Elem>& gens,
                                     std::string name = "H") {
  std::vector<Elem> seed = gens;
  for (Elem e : g.identities()) seed.push_back(e);
  return generate(g, seed, std::move(name));
}

/** Intersection of two subgroupoids over one parent; must be nonempty. */
inline SubgroupoidView intersect(const SubgroupoidView& a, const SubgroupoidView& b,
                                 std::string name = "H") {
  if (&a.parent() != &b.parent())
    throw PreconditionFailed("intersection requires a common parent groupoid");
  std::vector<Elem> members;
  std::set_intersection(a.members().begin(), a.members().end(), b.members().begin(),
                        b.members().end(), std::back_inserter(members));
  if (members.empty())
    throw EmptyIntersection("subgroupoids '" + a.name() + "' and '" + b.name() +
                            "' have empty intersection");
  return SubgroupoidView(a.parent(), std::move(members), std::move(name));
}

/** Intersection of a whole family; wide inputs give a wide result. */
inline SubgroupoidView intersect(const std::vector<SubgroupoidView>& family,
                                 std::string name = "H") {
  if (family.empty()) throw EmptySet("intersection of an empty family");
  std::vector<Elem> members = family.front().members();
  for (std::size_t i = 1; i < family.size(); ++i) {
    if (&family[i].parent() != &family.front().parent())
      throw PreconditionFailed("intersection requires a common parent groupoid");
    std::vector<Elem> next;
    std::set_intersection(members.begin(), members.end(), family[i].members().begin(),
                          family[i].members().end(), std::back_inserter(next));
    members = std::move(next);
  }
  if (members.empty())
    throw EmptyIntersection("the family has empty intersection");
  return SubgroupoidView(family.front().parent(), std::move(members), std::move(name));
}

/** HK = {hk | d(h) = r(k)}: the raw product set, not closed in general. */
inline std::vector<Elem> set_product(const SubgroupoidView& h, const SubgroupoidView& k) {
  if (&h.parent() != &k.parent())
    throw PreconditionFailed("set product requires a common parent groupoid");
  const Groupoid& g = h.parent();
  std::vector<char> in(g.size(), 0);
  for (Elem a : h.members())
    for (Elem b : k.members())
      if (auto c = g.compose(a, b)) in[*c] = 1;
  std::vector<Elem> out;
  for (Elem x = 0; x < g.size(); ++x)
    if (in[x]) out.push_back(x);
  return out;
}

/** For wide factors, HK is a subgroupoid exactly when HK = KH. */
inline bool product_is_subgroupoid(const SubgroupoidView& h, const SubgroupoidView& k) {
  if (!h.is_wide() || !k.is_wide())
    throw PreconditionFailed("the product criterion needs wide factors");
  return is_subgroupoid(h.parent(), set_product(h, k));
}

/** Union of all isotropy groups, always a wide subgroupoid. */
inline SubgroupoidView iso_part(const Groupoid& g) {
  return SubgroupoidView(g, g.isotropy_members(), "Iso(" + g.name() + ")");
}

/**
 * All wide subgroupoids, by increasing bitmask over the non-identity
 * elements; guarded because the scan is exponential in their count.
 */
inline std::vector<SubgroupoidView> enumerate_wide_subgroupoids(const Groupoid& g,
                                                                std::size_t max_free = 20) {
  std::vector<Elem> free_elems;
  for (Elem x = 0; x < g.size(); ++x)
    if (!g.is_identity(x)) free_elems.push_back(x);
  const std::size_t k = free_elems.size();
  if (k > max_free)
    throw PreconditionFailed("wide subgroupoid enumeration over " + std::to_string(k) +
                             " non-identities exceeds the limit of " + std::to_string(max_free));

  std::vector<SubgroupoidView> out;
  std::vector<Elem> members;
  std::vector<char> in(g.size(), 0);
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    members.assign(g.identities().begin(), g.identities().end());
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (std::size_t{1} << i)) members.push_back(free_elems[i]);
    std::fill(in.begin(), in.end(), 0);
    for (Elem x : members) in[x] = 1;
    bool closed = true;
    for (std::size_t a = 0; closed && a < members.size(); ++a) {
      if (!in[g.inv(members[a])]) {
        closed = false;
        break;
      }
      for (std::size_t b = 0; b < members.size(); ++b) {
        auto c = g.compose(members[a], members[b]);
        if (c && !in[*c]) {
          closed = false;
          break;
        }
      }
    }
    if (closed)
      out.emplace_back(g, members, "W" + std::to_string(out.size()));
  }
  return out;
}

}  // namespace grpd
