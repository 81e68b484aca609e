#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "grpd/errors.hpp"

namespace grpd {

/** Element handle: a dense index into the carrier, in declaration order. */
using Elem = std::size_t;

/** Marks an undefined product / unset slot in dense tables. */
inline constexpr Elem no_elem = static_cast<Elem>(-1);

/**
 * Unvalidated multiplication table: named carrier plus a partial product
 * map on index pairs.  A pair absent from `products` is an undefined
 * product, not an error.
 */
struct RawTable {
  std::vector<std::string> elements;
  std::map<std::pair<Elem, Elem>, Elem> products;
};

class Groupoid;

/** One isotropy group: all arrows g with d(g) = r(g) = base. */
struct IsotropyGroup {
  Elem base = no_elem;
  std::vector<Elem> members;  // sorted, contains base
  const Groupoid* parent = nullptr;

  std::size_t order() const noexcept { return members.size(); }
};

/**
 * A validated finite groupoid presented as a partial multiplication table.
 *
 * The constructor enforces, in a fixed phase order with lexicographic
 * element scans, the four table axioms (unique left/right identities,
 * two-sided inverses, associativity with matching existence, pair/triple
 * existence coupling) plus the derived composability criterion
 * (xy defined iff d(x) = r(y)).  The first failure wins, so diagnostics
 * are deterministic.  After construction every query is total.
 *
 * All public iteration orders are index order; running the same operation
 * on the same table always yields identical results.
 */
class Groupoid {
 public:
  explicit Groupoid(RawTable table, std::string name = "G") : name_(std::move(name)) {
    build(table);
  }

  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return tokens_.size(); }

  const std::vector<std::string>& tokens() const noexcept { return tokens_; }

  const std::string& token(Elem g) const {
    check_elem(g);
    return tokens_[g];
  }

  bool has_token(std::string_view tok) const { return index_.find(std::string(tok)) != index_.end(); }

  Elem elem(std::string_view tok) const {
    auto it = index_.find(std::string(tok));
    if (it == index_.end())
      throw UnknownElement("no element '" + std::string(tok) + "' in groupoid '" + name_ + "'");
    return it->second;
  }

  /** Resolves tokens to a sorted, duplicate-free index set. */
  std::vector<Elem> elems(const std::vector<std::string>& toks) const {
    std::vector<Elem> out;
    out.reserve(toks.size());
    for (const auto& t : toks) out.push_back(elem(t));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  Elem d(Elem g) const {
    check_elem(g);
    return d_[g];
  }

  Elem r(Elem g) const {
    check_elem(g);
    return r_[g];
  }

  Elem inv(Elem g) const {
    check_elem(g);
    return inv_[g];
  }

  /** xy is defined iff d(x) = r(y). */
  bool composable(Elem x, Elem y) const {
    check_elem(x);
    check_elem(y);
    return prod_[x * size() + y] != no_elem;
  }

  std::optional<Elem> compose(Elem x, Elem y) const {
    check_elem(x);
    check_elem(y);
    Elem z = prod_[x * size() + y];
    if (z == no_elem) return std::nullopt;
    return z;
  }

  /** Product that must exist; throws PreconditionFailed otherwise. */
  Elem at(Elem x, Elem y) const {
    auto z = compose(x, y);
    if (!z)
      throw PreconditionFailed("product '" + tokens_[x] + "'*'" + tokens_[y] +
                               "' is undefined in groupoid '" + name_ + "'");
    return *z;
  }

  /** The object set: all identities, sorted by index. */
  const std::vector<Elem>& identities() const noexcept { return identities_; }

  bool is_identity(Elem g) const {
    check_elem(g);
    return is_identity_[g] != 0;
  }

  bool is_isotropy(Elem g) const {
    check_elem(g);
    return d_[g] == r_[g];
  }

  /** All isotropy arrows (union of the isotropy groups), sorted. */
  std::vector<Elem> isotropy_members() const {
    std::vector<Elem> out;
    for (Elem g = 0; g < size(); ++g)
      if (d_[g] == r_[g]) out.push_back(g);
    return out;
  }

  std::vector<Elem> isotropy_members(Elem base) const {
    check_identity(base);
    std::vector<Elem> out;
    for (Elem g = 0; g < size(); ++g)
      if (d_[g] == base && r_[g] == base) out.push_back(g);
    return out;
  }

  /** Isotropy group at an identity; group axioms are re-checked. */
  IsotropyGroup isotropy(Elem base) const {
    IsotropyGroup iso{base, isotropy_members(base), this};
    for (Elem a : iso.members)
      for (Elem b : iso.members) {
        auto c = compose(a, b);
        if (!c || d_[*c] != base || r_[*c] != base)
          throw Error("internal: isotropy at '" + tokens_[base] + "' is not closed");
      }
    for (Elem a : iso.members)
      if (!std::binary_search(iso.members.begin(), iso.members.end(), inv_[a]))
        throw Error("internal: isotropy at '" + tokens_[base] + "' lacks an inverse");
    return iso;
  }

  /** True when every isotropy group is commutative. */
  bool is_abelian() const {
    for (Elem g = 0; g < size(); ++g) {
      if (d_[g] != r_[g]) continue;
      for (Elem h = g + 1; h < size(); ++h) {
        if (d_[h] != d_[g] || r_[h] != d_[g]) continue;
        if (prod_[g * size() + h] != prod_[h * size() + g]) return false;
      }
    }
    return true;
  }

  /**
   * Induced table on a member subset.  The subset must be closed under
   * defined products (else NotASubgroupoid); the constructor then
   * re-validates, so a subset that drops identities or inverses fails
   * with the precise axiom.
   */
  Groupoid restrict(const std::vector<Elem>& members, std::string name) const {
    std::vector<Elem> sub = members;
    std::sort(sub.begin(), sub.end());
    sub.erase(std::unique(sub.begin(), sub.end()), sub.end());
    if (sub.empty()) throw EmptySet("cannot restrict '" + name_ + "' to an empty member set");
    check_elem(sub.back());

    std::vector<Elem> pos(size(), no_elem);
    for (Elem i = 0; i < sub.size(); ++i) pos[sub[i]] = i;

    RawTable t;
    t.elements.reserve(sub.size());
    for (Elem g : sub) t.elements.push_back(tokens_[g]);
    for (Elem a : sub)
      for (Elem b : sub) {
        Elem c = prod_[a * size() + b];
        if (c == no_elem) continue;
        if (pos[c] == no_elem)
          throw NotASubgroupoid("subset of '" + name_ + "' is not closed: '" + tokens_[a] +
                                "'*'" + tokens_[b] + "' = '" + tokens_[c] + "' is outside");
        t.products[{pos[a], pos[b]}] = pos[c];
      }
    return Groupoid(std::move(t), std::move(name));
  }

  /** Canonical raw table: declaration order, product keys sorted. */
  RawTable table() const {
    RawTable t;
    t.elements = tokens_;
    for (Elem x = 0; x < size(); ++x)
      for (Elem y = 0; y < size(); ++y) {
        Elem z = prod_[x * size() + y];
        if (z != no_elem) t.products[{x, y}] = z;
      }
    return t;
  }

  /** Token-for-token, entry-for-entry table equality; names may differ. */
  bool same_table(const Groupoid& other) const {
    return tokens_ == other.tokens_ && prod_ == other.prod_;
  }

 private:
  void check_elem(Elem g) const {
    if (g >= size())
      throw UnknownElement("element index " + std::to_string(g) + " out of range in groupoid '" +
                           name_ + "'");
  }

  void check_identity(Elem e) const {
    check_elem(e);
    if (!is_identity_[e])
      throw NotAnIdentity("element '" + tokens_[e] + "' is not an identity of '" + name_ + "'");
  }

  void build(const RawTable& t) {
    if (t.elements.empty()) throw Error("groupoid '" + name_ + "' has an empty carrier");
    tokens_ = t.elements;
    const std::size_t n = tokens_.size();
    index_.reserve(n);
    for (Elem i = 0; i < n; ++i) {
      const std::string& tok = tokens_[i];
      if (tok.empty()) throw Error("element " + std::to_string(i) + " has an empty token");
      for (char c : tok)
        if (std::isspace(static_cast<unsigned char>(c)) || c == '#')
          throw Error("element token '" + tok + "' contains whitespace or '#'");
      if (!index_.emplace(tok, i).second) throw Error("duplicate element token '" + tok + "'");
    }

    prod_.assign(n * n, no_elem);
    for (const auto& [key, z] : t.products) {
      auto [x, y] = key;
      if (x >= n || y >= n || z >= n)
        throw Error("product entry (" + std::to_string(x) + "," + std::to_string(y) + ") -> " +
                    std::to_string(z) + " is out of range");
      prod_[x * n + y] = z;
    }

    // Phase 1, axiom 3: each element has exactly one right and one left identity.
    d_.assign(n, no_elem);
    r_.assign(n, no_elem);
    for (Elem g = 0; g < n; ++g) {
      for (Elem x = 0; x < n; ++x) {
        if (prod_[g * n + x] != g) continue;
        if (d_[g] != no_elem)
          throw AxiomViolation(3, {tokens_[g], tokens_[d_[g]], tokens_[x]},
                               "'" + tokens_[g] + "' has two right identities '" +
                                   tokens_[d_[g]] + "' and '" + tokens_[x] + "'");
        d_[g] = x;
      }
      if (d_[g] == no_elem)
        throw AxiomViolation(3, {tokens_[g]}, "'" + tokens_[g] + "' has no right identity");
      for (Elem x = 0; x < n; ++x) {
        if (prod_[x * n + g] != g) continue;
        if (r_[g] != no_elem)
          throw AxiomViolation(3, {tokens_[g], tokens_[r_[g]], tokens_[x]},
                               "'" + tokens_[g] + "' has two left identities '" + tokens_[r_[g]] +
                                   "' and '" + tokens_[x] + "'");
        r_[g] = x;
      }
      if (r_[g] == no_elem)
        throw AxiomViolation(3, {tokens_[g]}, "'" + tokens_[g] + "' has no left identity");
    }

    // Phase 2, axiom 4: exactly one x with xg = d(g) and gx = r(g).
    inv_.assign(n, no_elem);
    for (Elem g = 0; g < n; ++g) {
      for (Elem x = 0; x < n; ++x) {
        if (prod_[x * n + g] != d_[g] || prod_[g * n + x] != r_[g]) continue;
        if (inv_[g] != no_elem)
          throw AxiomViolation(4, {tokens_[g], tokens_[inv_[g]], tokens_[x]},
                               "'" + tokens_[g] + "' has two inverses '" + tokens_[inv_[g]] +
                                   "' and '" + tokens_[x] + "'");
        inv_[g] = x;
      }
      if (inv_[g] == no_elem)
        throw AxiomViolation(4, {tokens_[g]}, "'" + tokens_[g] + "' has no inverse");
    }

    // Phase 3, axioms 1 and 2: triple scan in lexicographic order.
    for (Elem g = 0; g < n; ++g)
      for (Elem h = 0; h < n; ++h) {
        const Elem gh = prod_[g * n + h];
        for (Elem l = 0; l < n; ++l) {
          const Elem hl = prod_[h * n + l];
          const Elem g_hl = hl == no_elem ? no_elem : prod_[g * n + hl];
          const Elem gh_l = gh == no_elem ? no_elem : prod_[gh * n + l];
          const bool e_left = g_hl != no_elem;
          const bool e_right = gh_l != no_elem;
          if (e_left != e_right)
            throw AxiomViolation(
                1, {tokens_[g], tokens_[h], tokens_[l]},
                "exactly one of (" + tokens_[g] + "*" + tokens_[h] + ")*" + tokens_[l] + " and " +
                    tokens_[g] + "*(" + tokens_[h] + "*" + tokens_[l] + ") is defined");
          if (e_left && g_hl != gh_l)
            throw AxiomViolation(1, {tokens_[g], tokens_[h], tokens_[l]},
                                 "(" + tokens_[g] + "*" + tokens_[h] + ")*" + tokens_[l] +
                                     " = '" + tokens_[gh_l] + "' but " + tokens_[g] + "*(" +
                                     tokens_[h] + "*" + tokens_[l] + ") = '" + tokens_[g_hl] +
                                     "'");
          const bool pairs = gh != no_elem && hl != no_elem;
          if (e_left != pairs)
            throw AxiomViolation(2, {tokens_[g], tokens_[h], tokens_[l]},
                                 "triple product of " + tokens_[g] + ", " + tokens_[h] + ", " +
                                     tokens_[l] + " exists iff both pair products do");
        }
      }

    // Phase 4: composability criterion, derivable but cheap to confirm.
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y) {
        const bool defined = prod_[x * n + y] != no_elem;
        if (defined != (d_[x] == r_[y]))
          throw AxiomViolation(5, {tokens_[x], tokens_[y]},
                               defined ? "'" + tokens_[x] + "*" + tokens_[y] +
                                             "' is defined although d(x) != r(y)"
                                       : "'" + tokens_[x] + "*" + tokens_[y] +
                                             "' is undefined although d(x) = r(y)");
      }

    is_identity_.assign(n, 0);
    for (Elem g = 0; g < n; ++g) {
      is_identity_[d_[g]] = 1;
      is_identity_[r_[g]] = 1;
    }
    for (Elem e = 0; e < n; ++e) {
      if (!is_identity_[e]) continue;
      identities_.push_back(e);
      if (d_[e] != e || r_[e] != e || prod_[e * n + e] != e || inv_[e] != e)
        throw Error("internal: identity '" + tokens_[e] + "' fails identity laws");
    }
  }

  std::string name_;
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, Elem> index_;
  std::vector<Elem> prod_;  // n*n dense, no_elem marks undefined
  std::vector<Elem> d_, r_, inv_;
  std::vector<Elem> identities_;
  std::vector<char> is_identity_;
};

/** Shared handle for operations that hand out freshly built groupoids. */
using GroupoidRef = std::shared_ptr<const Groupoid>;

/** Non-owning handle to a caller-managed groupoid (aliasing, no control block). */
inline GroupoidRef borrow(const Groupoid& g) { return GroupoidRef(GroupoidRef{}, &g); }

}  // namespace grpd
