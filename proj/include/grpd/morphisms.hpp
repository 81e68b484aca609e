#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "grpd/errors.hpp"
#include "grpd/groupoid.hpp"
#include "grpd/normality.hpp"
#include "grpd/subgroupoid.hpp"

namespace grpd {

/**
 * A total map between the carriers of two groupoids, stored as one target
 * index per source index.  Shared handles keep owned targets (quotients,
 * packaged map groupoids) alive for the lifetime of the map.
 */
class GroupoidMap {
 public:
  GroupoidMap(GroupoidRef src, GroupoidRef dst, std::vector<Elem> image, std::string name = "f")
      : src_(std::move(src)), dst_(std::move(dst)), image_(std::move(image)),
        name_(std::move(name)) {
    if (!src_ || !dst_) throw PreconditionFailed("map endpoints must be non-null");
    if (image_.size() != src_->size())
      throw NotAFunction("map '" + name_ + "' must assign exactly one target per source element");
    for (Elem v : image_)
      if (v >= dst_->size())
        throw UnknownElement("map '" + name_ + "' hits an out-of-range target index");
  }

  GroupoidMap(const Groupoid& src, const Groupoid& dst, std::vector<Elem> image,
              std::string name = "f")
      : GroupoidMap(borrow(src), borrow(dst), std::move(image), std::move(name)) {}

  const Groupoid& src() const noexcept { return *src_; }
  const Groupoid& dst() const noexcept { return *dst_; }
  GroupoidRef src_ref() const noexcept { return src_; }
  GroupoidRef dst_ref() const noexcept { return dst_; }
  const std::string& name() const noexcept { return name_; }
  const std::vector<Elem>& image() const noexcept { return image_; }

  Elem operator()(Elem x) const {
    if (x >= image_.size())
      throw UnknownElement("map '" + name_ + "' applied outside its source");
    return image_[x];
  }

 private:
  GroupoidRef src_, dst_;
  std::vector<Elem> image_;
  std::string name_;
};

/** Builds a map from token pairs; rejects names missing from either side. */
inline GroupoidMap map_from_pairs(const Groupoid& src, const Groupoid& dst,
                                  const std::vector<std::pair<std::string, std::string>>& pairs,
                                  std::string name = "f") {
  std::vector<Elem> image(src.size(), no_elem);
  for (const auto& [from, to] : pairs) {
    Elem s = src.elem(from);
    if (image[s] != no_elem)
      throw NotAFunction("map '" + name + "' assigns '" + from + "' twice");
    image[s] = dst.elem(to);
  }
  for (Elem x = 0; x < src.size(); ++x)
    if (image[x] == no_elem)
      throw NotAFunction("map '" + name + "' misses source element '" + src.token(x) + "'");
  return GroupoidMap(src, dst, std::move(image), std::move(name));
}

/**
 * Properties of a map.  Homomorphism: xy defined implies φ(x)φ(y) defined
 * and equal to φ(xy).  Strong: φ(x)φ(y) defined implies xy defined.
 * Witnesses hold the first offending tokens in scan order.
 */
struct HomCheck {
  bool is_hom = false;
  bool is_strong = false;
  bool is_injective = false;
  bool is_surjective = false;
  std::vector<std::string> hom_witness;
  std::vector<std::string> strong_witness;
  std::vector<std::string> injective_witness;
  std::vector<std::string> surjective_witness;

  bool is_isomorphism() const noexcept {
    return is_hom && is_strong && is_injective && is_surjective;
  }
};

inline HomCheck check_map(const GroupoidMap& f) {
  const Groupoid& a = f.src();
  const Groupoid& b = f.dst();
  HomCheck out;
  out.is_hom = true;
  out.is_strong = true;
  for (Elem x = 0; x < a.size(); ++x)
    for (Elem y = 0; y < a.size(); ++y) {
      auto xy = a.compose(x, y);
      auto fxy = b.compose(f(x), f(y));
      if (xy) {
        if (!fxy || *fxy != f(*xy)) {
          if (out.is_hom) out.hom_witness = {a.token(x), a.token(y)};
          out.is_hom = false;
        }
      } else if (fxy) {
        if (out.is_strong) out.strong_witness = {a.token(x), a.token(y)};
        out.is_strong = false;
      }
    }
  out.is_injective = true;
  std::vector<Elem> pre(b.size(), no_elem);
  for (Elem x = 0; x < a.size(); ++x) {
    if (pre[f(x)] != no_elem) {
      if (out.is_injective) out.injective_witness = {a.token(pre[f(x)]), a.token(x)};
      out.is_injective = false;
    } else {
      pre[f(x)] = x;
    }
  }
  out.is_surjective = true;
  for (Elem v = 0; v < b.size(); ++v)
    if (pre[v] == no_elem) {
      if (out.is_surjective) out.surjective_witness = {b.token(v)};
      out.is_surjective = false;
      break;
    }
  return out;
}

/**
 * Kernel of a strong homomorphism: preimage of the target identities.
 * Always a wide, isotropic, normal subgroupoid of the source.
 */
inline SubgroupoidView kernel(const GroupoidMap& f) {
  HomCheck hc = check_map(f);
  if (!hc.is_hom)
    throw PreconditionFailed("kernel needs a homomorphism, but '" + f.name() + "' is none");
  if (!hc.is_strong) throw NotStrong("kernel needs a strong homomorphism");
  std::vector<Elem> members;
  for (Elem x = 0; x < f.src().size(); ++x)
    if (f.dst().is_identity(f(x))) members.push_back(x);
  return SubgroupoidView(f.src(), std::move(members), "Ker(" + f.name() + ")");
}

/** Canonical projection onto the coset groupoid of a quotient. */
inline GroupoidMap projection_map(const Quotient& q, std::string name = "pi") {
  return GroupoidMap(q.parent, q.groupoid, q.class_of, std::move(name));
}

/** First isomorphism theorem data: G/Ker(φ) and the induced isomorphism. */
struct FirstIso {
  Quotient quotient;       // G / Ker(φ)
  GroupoidMap projection;  // G -> G/Ker(φ)
  GroupoidMap iso;         // G/Ker(φ) -> target, class ↦ φ(representative)
};

/**
 * Factors a strong surjective homomorphism through its kernel.  The induced
 * map on cosets is verified to be a strong isomorphism satisfying
 * φ = iso ∘ projection; failures of those derived facts surface as errors
 * rather than wrong output.
 */
inline FirstIso first_iso(const GroupoidMap& f) {
  HomCheck hc = check_map(f);
  if (!hc.is_hom)
    throw PreconditionFailed("first isomorphism needs a homomorphism, but '" + f.name() +
                             "' is none");
  if (!hc.is_strong) throw NotStrong("first isomorphism needs a strong homomorphism");
  if (!hc.is_surjective) throw NotSurjective("first isomorphism needs a surjective homomorphism");

  SubgroupoidView ker = kernel(f);
  if (!is_normal(f.src(), ker))
    throw NotNormalKernel("kernel of '" + f.name() + "' is not normal");
  if (!ker.is_isotropic())
    throw NotIsotropic("kernel of '" + f.name() + "' contains non-isotropy arrows");

  Quotient q = quotient(f.src(), ker);
  std::vector<Elem> image;
  image.reserve(q.reps.size());
  for (std::size_t i = 0; i < q.reps.size(); ++i) {
    image.push_back(f(q.reps[i]));
    for (Elem x : q.classes[i])
      if (f(x) != image.back())
        throw Error("internal: induced map of '" + f.name() + "' is not constant on a coset");
  }
  GroupoidMap iso(q.groupoid, f.dst_ref(), std::move(image), f.name() + "~");
  if (!check_map(iso).is_isomorphism())
    throw Error("internal: induced map of '" + f.name() + "' is not a strong isomorphism");
  GroupoidMap proj = projection_map(q);
  for (Elem x = 0; x < f.src().size(); ++x)
    if (iso(proj(x)) != f(x))
      throw Error("internal: '" + f.name() + "' does not factor through its projection");
  return FirstIso{std::move(q), std::move(proj), std::move(iso)};
}

namespace detail {

struct IsoSearch {
  const Groupoid& a;
  const Groupoid& b;
  std::vector<Elem> img;      // a -> b, no_elem when unassigned
  std::vector<char> used;     // b side
  std::vector<Elem> order;    // identities of a first, then the rest
  std::vector<std::size_t> elem_order_a, elem_order_b;  // power order, 0 if non-isotropic

  IsoSearch(const Groupoid& a_, const Groupoid& b_) : a(a_), b(b_) {
    img.assign(a.size(), no_elem);
    used.assign(b.size(), 0);
    for (Elem e : a.identities()) order.push_back(e);
    for (Elem x = 0; x < a.size(); ++x)
      if (!a.is_identity(x)) order.push_back(x);
    elem_order_a = power_orders(a);
    elem_order_b = power_orders(b);
  }

  static std::vector<std::size_t> power_orders(const Groupoid& g) {
    std::vector<std::size_t> out(g.size(), 0);
    for (Elem x = 0; x < g.size(); ++x) {
      if (g.d(x) != g.r(x)) continue;
      std::size_t k = 1;
      Elem p = x;
      while (!g.is_identity(p)) {
        p = g.at(p, x);
        ++k;
      }
      out[x] = k;
    }
    return out;
  }

  bool feasible(Elem x, Elem y) const {
    if (used[y]) return false;
    if (a.is_identity(x) != b.is_identity(y)) return false;
    if (elem_order_a[x] != elem_order_b[y]) return false;
    if (!a.is_identity(x)) {
      if (img[a.d(x)] != b.d(y) || img[a.r(x)] != b.r(y)) return false;
    } else {
      // identity candidates must carry equal isotropy orders
      if (a.isotropy_members(x).size() != b.isotropy_members(y).size()) return false;
    }
    // partial product consistency against everything already assigned
    for (Elem z = 0; z < a.size(); ++z) {
      if (img[z] == no_elem) continue;
      auto xz = a.compose(x, z);
      auto yz = b.compose(y, img[z]);
      if (xz.has_value() != yz.has_value()) return false;
      if (xz && img[*xz] != no_elem && img[*xz] != *yz) return false;
      auto zx = a.compose(z, x);
      auto zy = b.compose(img[z], y);
      if (zx.has_value() != zy.has_value()) return false;
      if (zx && img[*zx] != no_elem && img[*zx] != *zy) return false;
    }
    auto xx = a.compose(x, x);
    auto yy = b.compose(y, y);
    if (xx.has_value() != yy.has_value()) return false;
    if (xx && img[*xx] != no_elem && img[*xx] != *yy) return false;
    return true;
  }

  bool extend(std::size_t pos) {
    if (pos == order.size()) return true;
    const Elem x = order[pos];
    for (Elem y = 0; y < b.size(); ++y) {
      if (!feasible(x, y)) continue;
      img[x] = y;
      used[y] = 1;
      if (extend(pos + 1)) return true;
      img[x] = no_elem;
      used[y] = 0;
    }
    return false;
  }
};

}  // namespace detail

/**
 * Searches for a strong isomorphism A → B; returns the lexicographically
 * least one in A's element order, or nullopt.  The candidate found by the
 * backtracking scan is re-verified with check_map before being returned.
 */
inline std::optional<GroupoidMap> find_isomorphism(const Groupoid& a, const Groupoid& b) {
  if (a.size() != b.size()) return std::nullopt;
  if (a.identities().size() != b.identities().size()) return std::nullopt;
  auto orders = [](const Groupoid& g) {
    std::vector<std::size_t> v;
    for (Elem e : g.identities()) v.push_back(g.isotropy_members(e).size());
    std::sort(v.begin(), v.end());
    return v;
  };
  if (orders(a) != orders(b)) return std::nullopt;

  detail::IsoSearch search(a, b);
  if (!search.extend(0)) return std::nullopt;
  GroupoidMap f(a, b, std::move(search.img), a.name() + "=>" + b.name());
  if (!check_map(f).is_isomorphism())
    throw Error("internal: isomorphism search produced a non-isomorphism");
  return f;
}

}  // namespace grpd
