#pragma once

// Test-side oracles.  Everything here recomputes expected values from
// first principles (permutation arithmetic, modular arithmetic, incidence
// formulas, full-rescan closures) without reusing the library's algorithms,
// so table builders and operations are checked against independent math.

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "grpd/groupoid.hpp"

namespace oracle {

using grpd::Elem;
using Perm = std::vector<int>;

// right factor first: (fg)(x) = f(g(x))
inline Perm pcompose(const Perm& f, const Perm& g) {
  Perm c(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) c[i] = f[g[i]];
  return c;
}

inline Perm pinverse(const Perm& f) {
  Perm c(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) c[f[i]] = static_cast<int>(i);
  return c;
}

/** Token -> permutation table for the S3 cycle tokens. */
inline std::map<std::string, Perm> s3_perms() {
  return {
      {"e", {0, 1, 2}},    {"(12)", {1, 0, 2}},  {"(13)", {2, 1, 0}},
      {"(23)", {0, 2, 1}}, {"(123)", {1, 2, 0}}, {"(132)", {2, 0, 1}},
  };
}

/** Token -> permutation table for D4 acting on square corners. */
inline std::map<std::string, Perm> d4_perms() {
  const Perm e{0, 1, 2, 3};
  const Perm r{1, 2, 3, 0};
  const Perm s{2, 1, 0, 3};
  std::map<std::string, Perm> out;
  Perm rp = e;
  const char* rnames[4] = {"e", "r", "r2", "r3"};
  const char* snames[4] = {"s", "rs", "r2s", "r3s"};
  for (int i = 0; i < 4; ++i) {
    out[rnames[i]] = rp;
    out[snames[i]] = pcompose(rp, s);
    rp = pcompose(r, rp);
  }
  return out;
}

/** Expected Zn product on tokens e, g1, ..., g(n-1). */
inline std::string zn_product(std::size_t n, const std::string& a, const std::string& b) {
  auto val = [](const std::string& t) {
    return t == "e" ? std::size_t{0} : std::stoul(t.substr(1));
  };
  std::size_t k = (val(a) + val(b)) % n;
  return k == 0 ? "e" : "g" + std::to_string(k);
}

/** Parses "(i,j)" into {i,j}. */
inline std::pair<int, int> pair_token(const std::string& t) {
  auto comma = t.find(',');
  return {std::stoi(t.substr(1, comma - 1)),
          std::stoi(t.substr(comma + 1, t.size() - comma - 2))};
}

/** Closure by full rescan until fixpoint; independent of the worklist path. */
inline std::vector<Elem> closure(const grpd::Groupoid& g, std::vector<Elem> seed) {
  std::set<Elem> s(seed.begin(), seed.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Elem> cur(s.begin(), s.end());
    for (Elem a : cur)
      if (!s.count(g.inv(a))) {
        s.insert(g.inv(a));
        grew = true;
      }
    for (Elem a : cur)
      for (Elem b : cur)
        if (auto c = g.compose(a, b))
          if (!s.count(*c)) {
            s.insert(*c);
            grew = true;
          }
  }
  return {s.begin(), s.end()};
}

/** Definition-level subgroupoid test: closed under product and inverse. */
inline bool closed_set(const grpd::Groupoid& g, const std::vector<Elem>& members) {
  std::set<Elem> s(members.begin(), members.end());
  for (Elem a : members) {
    if (!s.count(g.inv(a))) return false;
    for (Elem b : members)
      if (auto c = g.compose(a, b))
        if (!s.count(*c)) return false;
  }
  return true;
}

/** All wide subgroupoid member sets by brute subset scan. */
inline std::vector<std::vector<Elem>> wide_subsets(const grpd::Groupoid& g) {
  std::vector<Elem> non_id;
  for (Elem x = 0; x < g.size(); ++x)
    if (!g.is_identity(x)) non_id.push_back(x);
  std::vector<std::vector<Elem>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << non_id.size()); ++mask) {
    std::vector<Elem> members(g.identities().begin(), g.identities().end());
    for (std::size_t i = 0; i < non_id.size(); ++i)
      if (mask & (std::size_t{1} << i)) members.push_back(non_id[i]);
    std::sort(members.begin(), members.end());
    if (closed_set(g, members)) out.push_back(std::move(members));
  }
  return out;
}

/** Normality straight from the definition. */
inline bool normal_set(const grpd::Groupoid& g, const std::vector<Elem>& members) {
  std::set<Elem> s(members.begin(), members.end());
  for (Elem e : g.identities())
    if (!s.count(e)) return false;
  for (Elem x = 0; x < g.size(); ++x)
    for (Elem h : members)
      if (g.d(h) == g.r(h) && g.d(h) == g.r(x))
        if (!s.count(g.at(g.at(g.inv(x), h), x))) return false;
  return true;
}

/** Group-center scan inside one isotropy group. */
inline std::vector<Elem> center_at(const grpd::Groupoid& g, Elem base) {
  std::vector<Elem> out;
  for (Elem x : g.isotropy_members(base)) {
    bool central = true;
    for (Elem y : g.isotropy_members(base))
      if (g.at(x, y) != g.at(y, x)) {
        central = false;
        break;
      }
    if (central) out.push_back(x);
  }
  return out;
}

}  // namespace oracle
