#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "grpd/center_commutator.hpp"
#include "grpd/errors.hpp"
#include "grpd/groupoid.hpp"
#include "grpd/inner.hpp"
#include "grpd/morphisms.hpp"
#include "grpd/normality.hpp"
#include "grpd/subgroupoid.hpp"

namespace grpd {

struct CheckResult {
  std::string id;
  bool pass = false;
  std::string witness;  // empty on pass
};

struct CheckOptions {
  std::size_t enumeration_limit = 12;       // |G| above which the family is sampled
  std::size_t iso_bound = default_iso_bound();
};

struct CheckReport {
  std::string groupoid;
  std::size_t size = 0;
  std::size_t identity_count = 0;
  bool exhaustive = false;
  std::size_t family_size = 0;
  bool partial_isos_skipped = false;
  std::string partial_isos_note;
  std::vector<CheckResult> results;

  bool all_pass() const {
    for (const auto& r : results)
      if (!r.pass) return false;
    return true;
  }
};

namespace detail {

/** Deterministic stand-ins when exhaustive enumeration is too large. */
inline std::vector<SubgroupoidView> sample_wide_family(const Groupoid& g) {
  std::vector<SubgroupoidView> out;
  auto add = [&](SubgroupoidView v) {
    for (const auto& known : out)
      if (known.members() == v.members()) return;
    out.push_back(std::move(v));
  };
  add(generate_wide(g, {}, "spine"));
  std::vector<Elem> all(g.size());
  for (Elem x = 0; x < g.size(); ++x) all[x] = x;
  add(subgroupoid(g, all, "full"));
  add(iso_part(g));
  add(center(g));
  add(derived_subgroupoid(g));
  for (Elem x = 0; x < g.size(); ++x)
    if (!g.is_identity(x)) add(generate_wide(g, {x}, "w[" + g.token(x) + "]"));
  return out;
}

inline std::string joined(const std::vector<std::string>& toks) {
  std::string out;
  for (const auto& t : toks) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

}  // namespace detail

/**
 * Structural verification suite: re-derives the toolkit's guarantees on one
 * groupoid, quantifying subgroupoid statements over every wide subgroupoid
 * (small carriers) or a deterministic sample (large ones).  Check ids are
 * stable; each failure carries a witness string.
 */
inline CheckReport run_checks(const Groupoid& g, CheckOptions opts = {}) {
  CheckReport report;
  report.groupoid = g.name();
  report.size = g.size();
  report.identity_count = g.identities().size();

  report.exhaustive = g.size() <= opts.enumeration_limit;
  std::vector<SubgroupoidView> family =
      report.exhaustive ? enumerate_wide_subgroupoids(g) : detail::sample_wide_family(g);
  report.family_size = family.size();

  auto run = [&report](const std::string& id, auto&& body) {
    CheckResult res;
    res.id = id;
    try {
      std::string witness = body();
      res.pass = witness.empty();
      res.witness = std::move(witness);
    } catch (const std::exception& e) {
      res.pass = false;
      res.witness = e.what();
    }
    report.results.push_back(std::move(res));
  };

  run("AXIOMS", [&]() -> std::string { return ""; });

  run("P2.2", [&]() -> std::string {
    for (Elem x = 0; x < g.size(); ++x) {
      if (g.d(g.inv(x)) != g.r(x) || g.r(g.inv(x)) != g.d(x)) return "inverse of " + g.token(x);
      if (g.inv(g.inv(x)) != x) return "double inverse of " + g.token(x);
      if (g.at(x, g.d(x)) != x || g.at(g.r(x), x) != x) return "identity action on " + g.token(x);
      for (Elem y = 0; y < g.size(); ++y) {
        auto xy = g.compose(x, y);
        if (!xy) continue;
        if (g.d(*xy) != g.d(y) || g.r(*xy) != g.r(x)) return "d/r of " + g.token(*xy);
        if (g.inv(*xy) != g.at(g.inv(y), g.inv(x)))
          return "inverse of product " + g.token(x) + "*" + g.token(y);
      }
    }
    return "";
  });

  run("P2.3", [&]() -> std::string {
    for (Elem x = 0; x < g.size(); ++x)
      for (Elem y = 0; y < g.size(); ++y)
        if (g.composable(x, y) != (g.d(x) == g.r(y)))
          return g.token(x) + " " + g.token(y);
    return "";
  });

  run("P2.5", [&]() -> std::string {
    for (Elem e : g.identities()) {
      if (g.at(e, e) != e || g.inv(e) != e || g.d(e) != e || g.r(e) != e)
        return "identity laws at " + g.token(e);
      for (Elem x = 0; x < g.size(); ++x) {
        if (g.r(x) == e && g.at(e, x) != x) return "left unit at " + g.token(x);
        if (g.d(x) == e && g.at(x, e) != x) return "right unit at " + g.token(x);
      }
    }
    return "";
  });

  run("P2.6", [&]() -> std::string {
    for (Elem e : g.identities()) {
      IsotropyGroup iso = g.isotropy(e);  // closure and inverses re-checked inside
      Groupoid grp = g.restrict(iso.members, "iso");
      if (grp.identities().size() != 1) return "isotropy at " + g.token(e) + " is no group";
    }
    std::vector<Elem> iso = g.isotropy_members();
    std::vector<Elem> unioned;
    for (Elem e : g.identities())
      for (Elem x : g.isotropy_members(e)) unioned.push_back(x);
    std::sort(unioned.begin(), unioned.end());
    if (unioned != iso) return "isotropy union mismatch";
    if (!iso_part(g).is_wide()) return "Iso(G) is not wide";
    for (const auto& h : family) {
      Groupoid sub = h.as_groupoid();
      if (sub.identities().size() != g.identities().size())
        return "wide subgroupoid '" + h.name() + "' lost identities";
      for (Elem e : sub.identities())
        if (!g.is_identity(g.elem(sub.token(e))))
          return "non-identity became identity in '" + h.name() + "'";
    }
    return "";
  });

  run("P2.7", [&]() -> std::string {
    for (const auto& h : family)
      for (const auto& k : family)
        if (product_is_subgroupoid(h, k) != (set_product(h, k) == set_product(k, h)))
          return "product criterion split on '" + h.name() + "' and '" + k.name() + "'";
    return "";
  });

  run("P3.2", [&]() -> std::string {
    std::vector<const SubgroupoidView*> normals;
    for (const auto& h : family) {
      NormalityCheck nc = check_normal(g, h);
      if (nc.stable != nc.equal)
        return "containment and equality readings disagree on '" + h.name() + "' (" +
               detail::joined(nc.witness) + ")";
      if (nc.normal()) normals.push_back(&h);
    }
    for (const auto* h : normals)
      for (const auto* k : normals) {
        if (!is_normal(g, intersect(*h, *k, "M")))
          return "intersection of '" + h->name() + "' and '" + k->name() + "' lost normality";
        if (intersect(*h, *k, "M").members() == g.identities() &&
            !check_commuting_trivial_intersection(g, *h, *k))
          return "trivially meeting '" + h->name() + "' and '" + k->name() + "' fail to commute";
      }
    for (const auto& h : family)
      for (const auto* k : normals) {
        if (k->is_isotropic()) {
          SubgroupoidView hk = product_with_normal(g, h, *k);  // certification is the claim
          if (is_normal(g, h) && !is_normal(g, hk))
            return "'" + h.name() + "'*'" + k->name() + "' lost normality";
        }
        intersect_normal(g, h, *k);  // normal-inside-H is verified internally
      }
    for (Elem x = 0; x < g.size(); ++x) {
      SubgroupoidView ncl = normal_closure(g, {x});
      if (!is_normal(g, ncl) || !ncl.contains(x))
        return "normal closure of {" + g.token(x) + "} is not a normal superset";
      for (const auto* n : normals)
        if (n->contains(x) &&
            !std::includes(n->members().begin(), n->members().end(), ncl.members().begin(),
                           ncl.members().end()))
          return "normal closure of {" + g.token(x) + "} is not minimal";
    }
    return "";
  });

  run("P3.4", [&]() -> std::string {
    for (const auto& h : family) {
      SubgroupoidView n = normalizer(g, h);
      for (Elem m : h.members())
        if (!n.contains(m)) return "normalizer of '" + h.name() + "' misses " + g.token(m);
      Groupoid rn = n.as_groupoid();
      std::vector<Elem> h_in_rn;
      for (Elem m : h.members()) h_in_rn.push_back(rn.elem(g.token(m)));
      if (!is_normal(rn, SubgroupoidView(rn, h_in_rn, h.name())))
        return "'" + h.name() + "' is not normal in its own normalizer";
      const bool whole = n.size() == g.size();
      if (whole != is_normal(g, h))
        return "normalizer of '" + h.name() + "' equals G iff H is normal: violated";
      for (const auto& k : family) {
        bool h_in_k = std::includes(k.members().begin(), k.members().end(), h.members().begin(),
                                    h.members().end());
        if (!h_in_k) continue;
        Groupoid rk = k.as_groupoid();
        std::vector<Elem> h_in_rk;
        for (Elem m : h.members()) h_in_rk.push_back(rk.elem(g.token(m)));
        bool normal_in_k = is_normal(rk, SubgroupoidView(rk, h_in_rk, h.name()));
        bool k_in_n = std::includes(n.members().begin(), n.members().end(), k.members().begin(),
                                    k.members().end());
        if (normal_in_k != k_in_n)
          return "maximality of the normalizer fails for '" + h.name() + "' inside '" +
                 k.name() + "'";
      }
    }
    return "";
  });

  run("P3.CONG", [&]() -> std::string {
    for (const auto& h : family) {
      if (!is_normal(g, h)) continue;
      auto cong = [&](Elem a, Elem b) {
        auto q = g.compose(g.inv(b), a);
        return q && h.contains(*q);
      };
      for (Elem a = 0; a < g.size(); ++a) {
        if (!cong(a, a)) return "congruence not reflexive at " + g.token(a);
        for (Elem b = 0; b < g.size(); ++b) {
          if (cong(a, b) != cong(b, a)) return "congruence not symmetric";
          if (!cong(a, b)) continue;
          for (Elem c = 0; c < g.size(); ++c)
            if (cong(b, c) && !cong(a, c)) return "congruence not transitive";
        }
      }
      auto parts = cosets(g, h);
      for (const auto& cls : parts)
        for (Elem x : cls)
          for (Elem y = 0; y < g.size(); ++y) {
            bool same = std::binary_search(cls.begin(), cls.end(), y);
            if (cong(x, y) != same)
              return "classes of '" + h.name() + "' differ from cosets at " + g.token(x);
          }
    }
    return "";
  });

  run("P3.QUOT", [&]() -> std::string {
    for (const auto& h : family) {
      if (!is_normal(g, h) || !h.is_isotropic()) continue;
      Quotient q = quotient(g, h);
      GroupoidMap pi = projection_map(q);
      HomCheck hc = check_map(pi);
      if (!hc.is_hom || !hc.is_strong || !hc.is_surjective)
        return "projection onto G/" + h.name() + " is not a strong surjection";
      if (kernel(pi).members() != h.members())
        return "kernel of the projection differs from '" + h.name() + "'";
    }
    return "";
  });

  run("T3.6", [&]() -> std::string {
    for (const auto& h : family) {
      if (!is_normal(g, h) || !h.is_isotropic()) continue;
      Quotient q = quotient(g, h);
      FirstIso fi = first_iso(projection_map(q));  // verifies the induced isomorphism
      if (fi.quotient.classes != q.classes)
        return "first isomorphism rebuilt different cosets for '" + h.name() + "'";
    }
    return "";
  });

  run("P4.2", [&]() -> std::string {
    SubgroupoidView z = center(g);
    if (!z.is_isotropic()) return "center contains a non-isotropy arrow";
    if (!z.is_wide()) return "center is not wide";
    if (!z.as_groupoid().is_abelian()) return "center is not abelian";
    if (!is_normal(g, z)) return "center is not normal";
    std::vector<Elem> by_groups;
    for (Elem e : g.identities()) {
      for (Elem x : g.isotropy_members(e)) {
        bool central = true;
        for (Elem y : g.isotropy_members(e))
          if (g.at(x, y) != g.at(y, x)) {
            central = false;
            break;
          }
        if (central) by_groups.push_back(x);
      }
    }
    std::sort(by_groups.begin(), by_groups.end());
    if (by_groups != z.members()) return "center differs from the union of group centers";
    bool z_is_iso = z.members() == g.isotropy_members();
    if (z_is_iso != g.is_abelian()) return "center = Iso(G) iff G abelian: violated";
    return "";
  });

  run("P4.4", [&]() -> std::string {
    SubgroupoidView der = derived_subgroupoid(g);
    if (!der.is_isotropic()) return "derived subgroupoid contains a non-isotropy arrow";
    if (!der.is_wide()) return "derived subgroupoid is not wide";
    if (!is_normal(g, der)) return "derived subgroupoid is not normal";
    std::vector<Elem> fibered;
    for (Elem e : g.identities()) {
      Groupoid grp = g.restrict(g.isotropy_members(e), "iso");
      SubgroupoidView dgrp = derived_subgroupoid(grp);
      for (Elem m : dgrp.members()) fibered.push_back(g.elem(grp.token(m)));
    }
    std::sort(fibered.begin(), fibered.end());
    if (fibered != der.members())
      return "derived subgroupoid differs from the union of derived subgroups";
    Quotient q = quotient(g, der);
    if (!q.groupoid->is_abelian()) return "abelianization is not abelian";
    std::vector<Elem> spine = g.identities();
    if ((der.members() == spine) != g.is_abelian())
      return "derived = identities iff G abelian: violated";
    std::vector<Elem> all(g.size());
    for (Elem x = 0; x < g.size(); ++x) all[x] = x;
    SubgroupoidView whole = subgroupoid(g, all, "G");
    if (commutator_subgroupoid(g, whole, whole).members() != der.members())
      return "[G,G] differs from the derived subgroupoid";
    for (const auto& h : family) {
      if (!is_normal(g, h) || !h.is_isotropic()) continue;
      bool abelian_quotient = quotient(g, h).groupoid->is_abelian();
      bool contains_derived = std::includes(h.members().begin(), h.members().end(),
                                            der.members().begin(), der.members().end());
      if (abelian_quotient != contains_derived)
        return "G/H abelian iff H contains G': violated for '" + h.name() + "'";
    }
    return "";
  });

  run("P5.1", [&]() -> std::string {
    for (const auto& h : family) {
      InvarianceCheck ic = check_inner_invariance(g, h);
      if (ic.invariant != ic.conjugation_equal)
        return "invariance readings disagree on '" + h.name() + "'";
      if (ic.invariant != normal_via_invariance(g, h))
        return "the per-element and whole-family invariance readings split on '" + h.name() +
               "'";
      if (ic.invariant != is_normal(g, h))
        return "inner invariance does not match normality for '" + h.name() + "'";
    }
    return "";
  });

  run("P5.2", [&]() -> std::string {
    // Theta is verified strong/surjective with kernel Z(G) inside; the
    // theorem wrapper checks both isomorphism routes.
    InnerIsoTheorem thm = verify_inner_iso_theorem(g);
    if (thm.by_center.groupoid->size() != thm.theta.inner.groupoid->size())
      return "G/Z(G) and I(G) have different sizes";
    if (!check_map(thm.induced).is_isomorphism() || !check_map(thm.found).is_isomorphism())
      return "an isomorphism witness between G/Z(G) and I(G) fails re-verification";
    Groupoid iso_g = iso_part(g).as_groupoid();
    MapGroupoid inner_iso_part = inner_iso_groupoid(iso_g);
    bool all_identity = true;
    for (const auto& f : inner_iso_part.maps)
      if (!f.is_identity_map()) {
        all_identity = false;
        break;
      }
    if (all_identity != g.is_abelian())
      return "I(Iso(G)) trivial iff G abelian: violated";
    return "";
  });

  bool skip_partial = false;
  std::string skip_note;
  for (Elem e : g.identities())
    if (g.isotropy_members(e).size() > opts.iso_bound) {
      skip_partial = true;
      skip_note = "isotropy order " + std::to_string(g.isotropy_members(e).size()) + " at '" +
                  g.token(e) + "' exceeds bound " + std::to_string(opts.iso_bound);
      break;
    }
  report.partial_isos_skipped = skip_partial;
  report.partial_isos_note = skip_note;
  if (!skip_partial) {
    run("P5.2.AG", [&]() -> std::string {
      MapGroupoid ag = partial_iso_groupoid(g, opts.iso_bound);
      MapGroupoid ig = inner_iso_groupoid(g);
      std::vector<Elem> inner_in_ag;
      for (const auto& f : ig.maps) {
        auto idx = ag.find(f);
        if (!idx) return "an inner isomorphism is missing from A(G)";
        inner_in_ag.push_back(*idx);
      }
      SubgroupoidView inner_view(*ag.groupoid, inner_in_ag, "I(G)");
      if (!inner_view.is_wide()) return "I(G) is not wide in A(G)";
      for (std::size_t s = 0; s < ag.maps.size(); ++s) {
        const PartialIso& sigma = ag.maps[s];
        PartialIso sigma_inv = invert_partial(g, sigma);
        for (Elem x = 0; x < g.size(); ++x) {
          if (g.d(x) != g.r(x) || g.d(x) != sigma.ran_base) continue;
          PartialIso lhs = *compose_partial(
              g, sigma_inv, *compose_partial(g, inner_iso(g, x), sigma));
          if (!lhs.same_mapping(inner_iso(g, sigma_inv.apply(x))))
            return "conjugation law fails for phi" + std::to_string(s) + " and " + g.token(x);
        }
      }
      return "";
    });
  }

  return report;
}

/** Machine format: one header line, then 'CHECK <id> PASS|FAIL <witness>'. */
inline void print_report_lines(const CheckReport& rep, std::ostream& out) {
  out << "VERIFY " << rep.groupoid << " size=" << rep.size
      << " identities=" << rep.identity_count
      << " mode=" << (rep.exhaustive ? "exhaustive" : "sample") << " family=" << rep.family_size
      << " partial_isos=" << (rep.partial_isos_skipped ? "skipped" : "enumerated") << "\n";
  for (const auto& r : rep.results) {
    out << "CHECK " << r.id << (r.pass ? " PASS" : " FAIL");
    if (!r.pass && !r.witness.empty()) out << " " << r.witness;
    out << "\n";
  }
}

/** Human format: summary header plus one row per check. */
inline void print_report_text(const CheckReport& rep, std::ostream& out) {
  out << "verification of '" << rep.groupoid << "' (" << rep.size << " elements, "
      << rep.identity_count << " identities)\n";
  out << "wide subgroupoid family: " << (rep.exhaustive ? "exhaustive" : "sampled") << ", "
      << rep.family_size << " members\n";
  if (rep.partial_isos_skipped)
    out << "partial isomorphism checks skipped: " << rep.partial_isos_note << "\n";
  std::size_t failed = 0;
  for (const auto& r : rep.results) {
    out << "  " << r.id;
    for (std::size_t pad = r.id.size(); pad < 10; ++pad) out << ' ';
    out << (r.pass ? "pass" : "FAIL");
    if (!r.pass && !r.witness.empty()) out << "  (" << r.witness << ")";
    out << "\n";
    if (!r.pass) ++failed;
  }
  if (failed == 0)
    out << "result: all " << rep.results.size() << " checks pass\n";
  else
    out << "result: " << failed << " of " << rep.results.size() << " checks fail\n";
}

}  // namespace grpd
