#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "grpd/errors.hpp"
#include "grpd/groupoid.hpp"

namespace grpd {

/**
 * Total multiplication table of a finite group; index 0 is the identity.
 * Used as one-object groupoid, bundle fiber, or product factor.
 */
struct GroupTable {
  std::string name;
  std::vector<std::string> tokens;
  std::vector<std::vector<Elem>> mul;

  std::size_t order() const noexcept { return tokens.size(); }
};

inline GroupTable cyclic_group(std::size_t n) {
  if (n == 0) throw PreconditionFailed("cyclic group order must be positive");
  GroupTable g;
  g.name = "Z" + std::to_string(n);
  g.tokens.reserve(n);
  g.tokens.push_back("e");
  for (std::size_t k = 1; k < n; ++k) g.tokens.push_back("g" + std::to_string(k));
  g.mul.assign(n, std::vector<Elem>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) g.mul[a][b] = (a + b) % n;
  return g;
}

namespace detail {

// Composition applies the right factor first: (fg)(x) = f(g(x)).
template <std::size_t N>
std::array<int, N> compose_perm(const std::array<int, N>& f, const std::array<int, N>& g) {
  std::array<int, N> c{};
  for (std::size_t i = 0; i < N; ++i) c[i] = f[g[i]];
  return c;
}

template <std::size_t N>
inline GroupTable table_from_perms(std::string name, const std::vector<std::string>& tokens,
                                   const std::vector<std::array<int, N>>& perms) {
  GroupTable g;
  g.name = std::move(name);
  g.tokens = tokens;
  const std::size_t n = perms.size();
  g.mul.assign(n, std::vector<Elem>(n, no_elem));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto c = compose_perm<N>(perms[a], perms[b]);
      for (std::size_t k = 0; k < n; ++k)
        if (perms[k] == c) {
          g.mul[a][b] = k;
          break;
        }
      if (g.mul[a][b] == no_elem) throw Error("internal: permutation set is not closed");
    }
  return g;
}

}  // namespace detail

/** S3 in cycle tokens; products follow (fg)(x) = f(g(x)), e.g. (12)(13) = (132). */
inline GroupTable symmetric_s3() {
  static const std::vector<std::string> toks = {"e", "(12)", "(13)", "(23)", "(123)", "(132)"};
  static const std::vector<std::array<int, 3>> perms = {
      {0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
  return detail::table_from_perms<3>("S3", toks, perms);
}

/** D4 as symmetries of a square, r the 4-cycle rotation, s a diagonal flip. */
inline GroupTable dihedral_d4() {
  const std::array<int, 4> id{0, 1, 2, 3};
  const std::array<int, 4> rot{1, 2, 3, 0};
  const std::array<int, 4> flip{2, 1, 0, 3};
  std::vector<std::array<int, 4>> perms;
  std::vector<std::string> toks;
  std::array<int, 4> rpow = id;
  for (int i = 0; i < 4; ++i) {
    perms.push_back(rpow);
    perms.push_back(detail::compose_perm<4>(rpow, flip));
    rpow = detail::compose_perm<4>(rot, rpow);
  }
  // declaration order e, r, r2, r3, s, rs, r2s, r3s
  std::vector<std::array<int, 4>> ordered;
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 4; ++i) ordered.push_back(perms[2 * i + j]);
  toks = {"e", "r", "r2", "r3", "s", "rs", "r2s", "r3s"};
  return detail::table_from_perms<4>("D4", toks, ordered);
}

/** Looks up "Z<n>" (n >= 1), "S3" or "D4"; nullopt for anything else. */
inline std::optional<GroupTable> group_by_name(std::string_view name) {
  if (name == "S3") return symmetric_s3();
  if (name == "D4") return dihedral_d4();
  if (name.size() >= 2 && name[0] == 'Z') {
    std::size_t n = 0;
    for (char c : name.substr(1)) {
      if (c < '0' || c > '9') return std::nullopt;
      n = n * 10 + static_cast<std::size_t>(c - '0');
      if (n > 256) return std::nullopt;
    }
    if (n == 0) return std::nullopt;
    return cyclic_group(n);
  }
  return std::nullopt;
}

/** The group itself, seen as a groupoid with a single identity. */
inline Groupoid one_object(const GroupTable& g) {
  RawTable t;
  t.elements = g.tokens;
  for (Elem a = 0; a < g.order(); ++a)
    for (Elem b = 0; b < g.order(); ++b) t.products[{a, b}] = g.mul[a][b];
  return Groupoid(std::move(t), g.name);
}

/**
 * Pair groupoid on n objects: arrows (i,j), product (i,j)(j,k) = (i,k),
 * so d((i,j)) = (j,j) and r((i,j)) = (i,i).  Tokens are 1-based.
 */
inline Groupoid pair_groupoid(std::size_t n) {
  if (n == 0) throw PreconditionFailed("pair groupoid needs at least one object");
  RawTable t;
  auto idx = [n](std::size_t i, std::size_t j) { return i * n + j; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      t.elements.push_back("(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) t.products[{idx(i, j), idx(j, k)}] = idx(i, k);
  return Groupoid(std::move(t), "pair(" + std::to_string(n) + ")");
}

/**
 * Disjoint union of groups: fiber i contributes tokens "<i>:<tok>" (1-based)
 * and products stay inside their fiber.  Every element is isotropic.
 */
inline Groupoid group_bundle(const std::vector<GroupTable>& fibers) {
  if (fibers.empty()) throw PreconditionFailed("bundle needs at least one fiber");
  RawTable t;
  std::string name = "bundle(";
  std::vector<Elem> offset;
  for (std::size_t f = 0; f < fibers.size(); ++f) {
    offset.push_back(t.elements.size());
    const std::string pre = std::to_string(f + 1) + ":";
    for (const auto& tok : fibers[f].tokens) t.elements.push_back(pre + tok);
    name += (f ? "," : "") + fibers[f].name;
  }
  name += ")";
  for (std::size_t f = 0; f < fibers.size(); ++f)
    for (Elem a = 0; a < fibers[f].order(); ++a)
      for (Elem b = 0; b < fibers[f].order(); ++b)
        t.products[{offset[f] + a, offset[f] + b}] = offset[f] + fibers[f].mul[a][b];
  return Groupoid(std::move(t), std::move(name));
}

/**
 * Product of pair(n) with a group H: arrows ((i,j),h) with componentwise
 * product, n objects and isotropy H everywhere.  Token "(i,j):<htok>".
 */
inline Groupoid groupoid_product(std::size_t n, const GroupTable& h) {
  if (n == 0) throw PreconditionFailed("product groupoid needs at least one object");
  RawTable t;
  const std::size_t m = h.order();
  auto idx = [n, m](std::size_t i, std::size_t j, std::size_t a) { return (i * n + j) * m + a; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t a = 0; a < m; ++a)
        t.elements.push_back("(" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                             "):" + h.tokens[a]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t a = 0; a < m; ++a)
          for (std::size_t b = 0; b < m; ++b)
            t.products[{idx(i, j, a), idx(j, k, b)}] = idx(i, k, h.mul[a][b]);
  return Groupoid(std::move(t), "product(pair(" + std::to_string(n) + ")," + h.name + ")");
}

}  // namespace grpd
