#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <iterator>
#include <set>
#include <string>
#include <vector>

#include "fixtures_common.hpp"
#include "grpd/errors.hpp"
#include "grpd/groupoid.hpp"
#include "grpd/normality.hpp"
#include "grpd/subgroupoid.hpp"
#include "oracles.hpp"

using grpd::Elem;
using grpd::Groupoid;
using grpd::SubgroupoidView;
using Perm = oracle::Perm;

namespace {

// recompute x^-1 m x with permutation arithmetic, then map back to tokens
std::vector<Elem> perm_conjugates(const Groupoid& g,
                                  const std::map<std::string, Perm>& perms,
                                  const SubgroupoidView& h, Elem x) {
  std::set<Elem> out;
  const Perm xi = oracle::pinverse(perms.at(g.token(x)));
  const Perm& px = perms.at(g.token(x));
  for (Elem m : h.members()) {
    Perm c = oracle::pcompose(oracle::pcompose(xi, perms.at(g.token(m))), px);
    for (const auto& [tok, p] : perms)
      if (p == c) out.insert(g.elem(tok));
  }
  return {out.begin(), out.end()};
}

}  // namespace

TEST_CASE("conjugate sets match permutation arithmetic") {
  for (Groupoid g : {fixtures::s3(), fixtures::d4()}) {
    auto perms = g.size() == 6 ? oracle::s3_perms() : oracle::d4_perms();
    for (const SubgroupoidView& h : grpd::enumerate_wide_subgroupoids(g))
      for (Elem x = 0; x < g.size(); ++x)
        REQUIRE(grpd::conjugate_set(g, h, x) == perm_conjugates(g, perms, h, x));
  }
}

TEST_CASE("conjugating a reflection subgroup by a 3-cycle") {
  Groupoid s3 = fixtures::s3();
  SubgroupoidView h = grpd::subgroupoid(s3, s3.elems({"e", "(12)"}));
  REQUIRE(grpd::conjugate_set(s3, h, s3.elem("(123)")) == s3.elems({"e", "(13)"}));
  REQUIRE(grpd::conjugate_set(s3, h, s3.elem("(132)")) == s3.elems({"e", "(23)"}));
  REQUIRE(grpd::conjugate_set(s3, h, s3.elem("e")) == h.members());
}

TEST_CASE("conjugation hops between bases in a pair groupoid") {
  Groupoid p3 = fixtures::pair3();
  SubgroupoidView spine = grpd::iso_part(p3);
  Elem x = p3.elem("(1,2)");  // d = (2,2), r = (1,1)
  REQUIRE(grpd::conjugate_set(p3, spine, x) ==
          std::vector<Elem>{p3.elem("(2,2)")});
}

TEST_CASE("normality test agrees with the definition oracle") {
  for (const Groupoid& g : fixtures::all()) {
    if (g.size() - g.identities().size() > 20) continue;  // enumeration guard
    bool saw_normal = false, saw_other = false;
    for (const auto& members : oracle::wide_subsets(g)) {
      SubgroupoidView h = grpd::subgroupoid(g, members);
      grpd::NormalityCheck nc = grpd::check_normal(g, h);
      REQUIRE(nc.wide);
      REQUIRE(nc.stable == nc.equal);  // wide makes the readings coincide
      bool expect = oracle::normal_set(g, members);
      REQUIRE(nc.normal() == expect);
      (expect ? saw_normal : saw_other) = true;
      if (!nc.normal()) {
        // witness must name a conjugating element whose conjugates escape
        REQUIRE(nc.witness.size() == 2);
        Elem x = g.elem(nc.witness[0]);
        Elem c = g.elem(nc.witness[1]);
        auto conj = grpd::conjugate_set(g, h, x);
        REQUIRE(std::find(conj.begin(), conj.end(), c) != conj.end());
        REQUIRE_FALSE(h.contains(c));
      }
    }
    REQUIRE(saw_normal);  // the identity spine at least
    (void)saw_other;
  }
}

TEST_CASE("non-wide subgroupoids are never normal") {
  // a lone object in a connected pair groupoid: instability is seen first,
  // so the witness names the conjugating arrow and the escapee
  Groupoid p3 = fixtures::pair3();
  SubgroupoidView h = grpd::subgroupoid(p3, {p3.elem("(1,1)")});
  grpd::NormalityCheck nc = grpd::check_normal(p3, h);
  REQUIRE_FALSE(nc.wide);
  REQUIRE_FALSE(nc.normal());
  REQUIRE(nc.witness == std::vector<std::string>{"(1,2)", "(2,2)"});

  // one whole fiber of a bundle: conjugation stable, so the only failure
  // is the missing identity, and the witness names it
  Groupoid b22 = fixtures::b22();
  SubgroupoidView fiber = grpd::subgroupoid(b22, b22.elems({"1:e", "1:g1"}));
  grpd::NormalityCheck nf = grpd::check_normal(b22, fiber);
  REQUIRE_FALSE(nf.wide);
  REQUIRE(nf.stable);
  REQUIRE(nf.equal);
  REQUIRE_FALSE(nf.normal());
  REQUIRE(nf.witness == std::vector<std::string>{"2:e"});
}

TEST_CASE("normalizer of a reflection subgroup is itself") {
  Groupoid s3 = fixtures::s3();
  SubgroupoidView h = grpd::subgroupoid(s3, s3.elems({"e", "(12)"}), "H");
  SubgroupoidView n = grpd::normalizer(s3, h);
  REQUIRE(n.members() == h.members());
  REQUIRE(n.name() == "N(H)");
}

TEST_CASE("normalizer of a normal subgroupoid is everything") {
  Groupoid s3 = fixtures::s3();
  SubgroupoidView a3 = grpd::generate(s3, {s3.elem("(123)")}, "A3");
  REQUIRE(grpd::normalizer(s3, a3).size() == 6);

  Groupoid d4 = fixtures::d4();
  SubgroupoidView s = grpd::subgroupoid(d4, d4.elems({"e", "s"}));
  REQUIRE(grpd::normalizer(d4, s).members() == d4.elems({"e", "r2", "s", "r2s"}));
}

TEST_CASE("normalizer demands a wide input") {
  Groupoid p3 = fixtures::pair3();
  SubgroupoidView h = grpd::subgroupoid(p3, {p3.elem("(1,1)")});
  REQUIRE_THROWS_AS(grpd::normalizer(p3, h), grpd::PreconditionFailed);
}

TEST_CASE("normalizer is the largest subgroupoid normalizing H") {
  for (Groupoid g : {fixtures::s3(), fixtures::d4(), fixtures::b22()}) {
    auto family = grpd::enumerate_wide_subgroupoids(g);
    for (const SubgroupoidView& h : family) {
      SubgroupoidView n = grpd::normalizer(g, h);
      // every member of N really fixes H under conjugation, nothing else does
      for (Elem x = 0; x < g.size(); ++x) {
        bool fixes = grpd::conjugate_set(g, h, x) == h.isotropy_members(g.d(x));
        REQUIRE(n.contains(x) == fixes);
      }
      Groupoid ng = n.as_groupoid();
      std::vector<Elem> inside;
      for (Elem m : h.members()) inside.push_back(ng.elem(g.token(m)));
      REQUIRE(grpd::is_normal(ng, grpd::subgroupoid(ng, inside)));
    }
  }
}

TEST_CASE("normal closure is the least normal wide subgroupoid over the seed") {
  for (Groupoid g : {fixtures::p2(), fixtures::b22(), fixtures::z2z3(),
                     fixtures::s3(), fixtures::d4()}) {
    auto all = oracle::wide_subsets(g);
    for (Elem x = 0; x < g.size(); ++x) {
      std::vector<Elem> meet;
      bool first = true;
      for (const auto& s : all) {
        if (!oracle::normal_set(g, s)) continue;
        if (!std::binary_search(s.begin(), s.end(), x)) continue;
        if (first) {
          meet = s;
          first = false;
        } else {
          std::vector<Elem> tmp;
          std::set_intersection(meet.begin(), meet.end(), s.begin(), s.end(),
                                std::back_inserter(tmp));
          meet = std::move(tmp);
        }
      }
      REQUIRE_FALSE(first);  // the whole groupoid always qualifies
      REQUIRE(grpd::normal_closure(g, {x}).members() == meet);
    }
  }
}

TEST_CASE("normal closure worked values") {
  Groupoid s3 = fixtures::s3();
  REQUIRE(grpd::normal_closure(s3, {s3.elem("(12)")}).size() == 6);
  REQUIRE(grpd::normal_closure(s3, {s3.elem("(123)")}).members() ==
          s3.elems({"e", "(123)", "(132)"}));
  REQUIRE(grpd::normal_closure(s3, {}).members() ==
          std::vector<Elem>{s3.elem("e")});
}

TEST_CASE("cosets of the alternating subgroup split S3 by parity") {
  Groupoid s3 = fixtures::s3();
  SubgroupoidView a3 = grpd::generate(s3, {s3.elem("(123)")}, "A3");
  auto parts = grpd::cosets(s3, a3);
  REQUIRE(parts == std::vector<std::vector<Elem>>{
                       s3.elems({"e", "(123)", "(132)"}),
                       s3.elems({"(12)", "(13)", "(23)"})});
  REQUIRE(grpd::congruent(s3, a3, s3.elem("(123)"), s3.elem("(132)")));
  REQUIRE(grpd::congruent(s3, a3, s3.elem("(12)"), s3.elem("(23)")));
  REQUIRE_FALSE(grpd::congruent(s3, a3, s3.elem("(12)"), s3.elem("e")));
}

TEST_CASE("congruence is exactly membership in a common coset") {
  Groupoid t6 = fixtures::t6();
  SubgroupoidView h = grpd::generate_wide(
      t6, {t6.elem("(1,1):(123)"), t6.elem("(2,2):(123)")}, "H");
  REQUIRE(h.size() == 6);
  auto parts = grpd::cosets(t6, h);
  REQUIRE(parts.size() == 8);
  std::vector<std::size_t> cls(t6.size());
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (Elem x : parts[i]) cls[x] = i;
  for (Elem a = 0; a < t6.size(); ++a)
    for (Elem b = 0; b < t6.size(); ++b)
      REQUIRE(grpd::congruent(t6, h, a, b) == (cls[a] == cls[b]));
}

TEST_CASE("identity spine cosets are singletons") {
  Groupoid p3 = fixtures::pair3();
  SubgroupoidView spine = grpd::generate_wide(p3, {});
  auto parts = grpd::cosets(p3, spine);
  REQUIRE(parts.size() == p3.size());
  for (Elem a = 0; a < p3.size(); ++a)
    REQUIRE(parts[a] == std::vector<Elem>{a});
}

TEST_CASE("congruence and cosets refuse non-normal denominators") {
  Groupoid s3 = fixtures::s3();
  SubgroupoidView h = grpd::subgroupoid(s3, s3.elems({"e", "(12)"}));
  REQUIRE_THROWS_AS(grpd::congruent(s3, h, 0, 1), grpd::NotNormal);
  REQUIRE_THROWS_AS(grpd::cosets(s3, h), grpd::NotNormal);
  REQUIRE_THROWS_AS(grpd::quotient(s3, h), grpd::NotNormal);
}

TEST_CASE("quotient of S3 by the alternating subgroup is the sign group") {
  Groupoid s3 = fixtures::s3();
  SubgroupoidView a3 = grpd::generate(s3, {s3.elem("(123)")}, "A3");
  grpd::Quotient q = grpd::quotient(s3, a3);
  const Groupoid& qg = *q.groupoid;
  REQUIRE(qg.size() == 2);
  REQUIRE(qg.name() == "S3/A3");
  REQUIRE(qg.tokens() == std::vector<std::string>{"[e]", "[(12)]"});
  REQUIRE(qg.at(1, 1) == 0);
  REQUIRE(qg.is_identity(0));
  REQUIRE(q.reps == std::vector<Elem>{0, 1});
  REQUIRE(q.class_of == std::vector<Elem>{0, 1, 1, 1, 0, 0});
}

TEST_CASE("product compatibility holds across every quotient cell") {
  Groupoid t6 = fixtures::t6();
  SubgroupoidView h = grpd::generate_wide(
      t6, {t6.elem("(1,1):(123)"), t6.elem("(2,2):(123)")}, "H");
  grpd::Quotient q = grpd::quotient(t6, h);
  REQUIRE(q.groupoid->size() == 8);
  // [a][b] defined exactly when ab is, and then equal to [ab]
  for (Elem a = 0; a < t6.size(); ++a)
    for (Elem b = 0; b < t6.size(); ++b) {
      auto ab = t6.compose(a, b);
      auto qq = q.groupoid->compose(q.class_of[a], q.class_of[b]);
      REQUIRE(ab.has_value() == qq.has_value());
      if (ab) REQUIRE(*qq == q.class_of[*ab]);
    }
  // two objects survive, each with a two element sign group
  REQUIRE(q.groupoid->identities().size() == 2);
  for (Elem e : q.groupoid->identities())
    REQUIRE(q.groupoid->isotropy_members(e).size() == 2);
}

TEST_CASE("quotient by the spine reproduces the groupoid") {
  Groupoid s3 = fixtures::s3();
  SubgroupoidView spine = grpd::generate_wide(s3, {}, "E");
  grpd::Quotient q = grpd::quotient(s3, spine);
  REQUIRE(q.groupoid->size() == 6);
  for (Elem a = 0; a < 6; ++a)
    for (Elem b = 0; b < 6; ++b)
      REQUIRE(q.groupoid->compose(a, b) == s3.compose(a, b));
}

TEST_CASE("a normal denominator with transit arrows is rejected") {
  // the full pair groupoid is wide and conjugation stable, yet dividing by
  // it would have to merge objects; the isotropy gate catches this
  Groupoid p2 = fixtures::p2();
  SubgroupoidView whole = grpd::subgroupoid(p2, {0, 1, 2, 3}, "P2");
  REQUIRE(grpd::is_normal(p2, whole));
  REQUIRE_THROWS_AS(grpd::quotient(p2, whole), grpd::NotIsotropic);
}

TEST_CASE("products with a normal isotropic factor stay subgroupoids") {
  Groupoid s3 = fixtures::s3();
  SubgroupoidView h = grpd::subgroupoid(s3, s3.elems({"e", "(12)"}), "H");
  SubgroupoidView a3 = grpd::generate(s3, {s3.elem("(123)")}, "A3");
  SubgroupoidView hk = grpd::product_with_normal(s3, h, a3);
  REQUIRE(hk.size() == 6);  // {e,(12)} A3 = S3

  Groupoid b = fixtures::b22();
  SubgroupoidView left = grpd::generate_wide(b, {b.elem("1:g1")}, "L");
  SubgroupoidView right = grpd::generate_wide(b, {b.elem("2:g1")}, "R");
  SubgroupoidView both = grpd::product_with_normal(b, left, right, "LR");
  REQUIRE(both.size() == 4);
  REQUIRE(grpd::is_normal(b, both));  // both factors normal, so the product is

  // the factor on the right must be normal and isotropic
  SubgroupoidView refl = grpd::subgroupoid(s3, s3.elems({"e", "(13)"}), "K");
  REQUIRE_THROWS_AS(grpd::product_with_normal(s3, h, refl), grpd::PreconditionFailed);
  Groupoid p2 = fixtures::p2();
  SubgroupoidView whole = grpd::subgroupoid(p2, {0, 1, 2, 3}, "P2");
  SubgroupoidView spine = grpd::generate_wide(p2, {}, "E");
  REQUIRE_THROWS_AS(grpd::product_with_normal(p2, spine, whole), grpd::PreconditionFailed);
}

TEST_CASE("meets with a normal subgroupoid are normal inside the host") {
  Groupoid s3 = fixtures::s3();
  SubgroupoidView h = grpd::subgroupoid(s3, s3.elems({"e", "(12)"}), "H");
  SubgroupoidView a3 = grpd::generate(s3, {s3.elem("(123)")}, "A3");
  SubgroupoidView meet = grpd::intersect_normal(s3, h, a3);
  REQUIRE(meet.members() == std::vector<Elem>{s3.elem("e")});

  SubgroupoidView full = grpd::subgroupoid(s3, {0, 1, 2, 3, 4, 5}, "G");
  REQUIRE(grpd::intersect_normal(s3, full, a3).members() == a3.members());

  // the host must be wide and the other factor normal
  Groupoid p2 = fixtures::p2();
  SubgroupoidView half = grpd::subgroupoid(p2, {p2.elem("(1,1)")}, "half");
  SubgroupoidView spine = grpd::generate_wide(p2, {}, "E");
  REQUIRE_THROWS_AS(grpd::intersect_normal(p2, half, spine), grpd::PreconditionFailed);
  SubgroupoidView refl = grpd::subgroupoid(s3, s3.elems({"e", "(13)"}), "K");
  REQUIRE_THROWS_AS(grpd::intersect_normal(s3, h, refl), grpd::PreconditionFailed);
}

TEST_CASE("normal subgroupoids with trivial meet commute pointwise") {
  Groupoid z6 = grpd::one_object(grpd::cyclic_group(6));
  SubgroupoidView h = grpd::generate_wide(z6, {z6.elem("g2")}, "H");
  SubgroupoidView k = grpd::generate_wide(z6, {z6.elem("g3")}, "K");
  REQUIRE(h.size() == 3);
  REQUIRE(k.size() == 2);
  REQUIRE(grpd::check_commuting_trivial_intersection(z6, h, k));

  // a meet larger than the spine is outside the statement
  Groupoid s3 = fixtures::s3();
  SubgroupoidView a3 = grpd::generate(s3, {s3.elem("(123)")}, "A3");
  REQUIRE_THROWS_AS(grpd::check_commuting_trivial_intersection(s3, a3, a3),
                    grpd::PreconditionFailed);
  SubgroupoidView refl = grpd::subgroupoid(s3, s3.elems({"e", "(12)"}), "H");
  REQUIRE_THROWS_AS(grpd::check_commuting_trivial_intersection(s3, refl, a3),
                    grpd::PreconditionFailed);
}
