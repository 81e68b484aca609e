#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "grpd/builders.hpp"
#include "grpd/errors.hpp"
#include "grpd/groupoid.hpp"
#include "oracles.hpp"

using grpd::Elem;
using grpd::Groupoid;
using grpd::RawTable;
using Perm = oracle::Perm;

namespace {

RawTable z2_table() {
  RawTable t;
  t.elements = {"e", "g"};
  t.products[{0, 0}] = 0;
  t.products[{0, 1}] = 1;
  t.products[{1, 0}] = 1;
  t.products[{1, 1}] = 0;
  return t;
}

}  // namespace

TEST_CASE("S3 table matches permutation arithmetic") {
  Groupoid s3 = grpd::one_object(grpd::symmetric_s3());
  auto perms = oracle::s3_perms();
  REQUIRE(s3.size() == 6);
  REQUIRE(s3.identities().size() == 1);
  for (Elem x = 0; x < s3.size(); ++x)
    for (Elem y = 0; y < s3.size(); ++y) {
      auto z = s3.compose(x, y);
      REQUIRE(z.has_value());
      Perm expected = oracle::pcompose(perms.at(s3.token(x)), perms.at(s3.token(y)));
      REQUIRE(perms.at(s3.token(*z)) == expected);
    }
  for (Elem x = 0; x < s3.size(); ++x)
    REQUIRE(perms.at(s3.token(s3.inv(x))) == oracle::pinverse(perms.at(s3.token(x))));

  // worked products pinning the composition convention
  auto tok = [&s3](const char* t) { return s3.elem(t); };
  REQUIRE(s3.at(tok("(12)"), tok("(13)")) == tok("(132)"));
  REQUIRE(s3.at(tok("(13)"), tok("(12)")) == tok("(123)"));
}

TEST_CASE("D4 table matches its square-symmetry realization") {
  Groupoid d4 = grpd::one_object(grpd::dihedral_d4());
  auto perms = oracle::d4_perms();
  REQUIRE(d4.size() == 8);
  for (Elem x = 0; x < d4.size(); ++x)
    for (Elem y = 0; y < d4.size(); ++y) {
      Perm expected = oracle::pcompose(perms.at(d4.token(x)), perms.at(d4.token(y)));
      REQUIRE(perms.at(d4.token(d4.at(x, y))) == expected);
    }
  REQUIRE_FALSE(d4.is_abelian());
}

TEST_CASE("cyclic tables match modular arithmetic") {
  for (std::size_t n : {1, 2, 3, 4, 5, 6, 9}) {
    Groupoid zn = grpd::one_object(grpd::cyclic_group(n));
    REQUIRE(zn.size() == n);
    REQUIRE(zn.is_abelian());
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y)
        REQUIRE(zn.token(zn.at(x, y)) == oracle::zn_product(n, zn.token(x), zn.token(y)));
  }
}

TEST_CASE("pair groupoid follows the incidence formulas") {
  Groupoid p3 = grpd::pair_groupoid(3);
  REQUIRE(p3.size() == 9);
  REQUIRE(p3.identities().size() == 3);
  for (Elem x = 0; x < p3.size(); ++x) {
    auto [xi, xj] = oracle::pair_token(p3.token(x));
    REQUIRE(oracle::pair_token(p3.token(p3.d(x))) == std::pair{xj, xj});
    REQUIRE(oracle::pair_token(p3.token(p3.r(x))) == std::pair{xi, xi});
    REQUIRE(oracle::pair_token(p3.token(p3.inv(x))) == std::pair{xj, xi});
    for (Elem y = 0; y < p3.size(); ++y) {
      auto [yi, yj] = oracle::pair_token(p3.token(y));
      auto z = p3.compose(x, y);
      REQUIRE(z.has_value() == (xj == yi));
      if (z) REQUIRE(oracle::pair_token(p3.token(*z)) == std::pair{xi, yj});
    }
  }
  REQUIRE(p3.is_abelian());  // all isotropy trivial
}

TEST_CASE("bundle keeps fibers apart") {
  Groupoid b = grpd::group_bundle({grpd::cyclic_group(4), grpd::symmetric_s3()});
  REQUIRE(b.size() == 10);
  REQUIRE(b.identities().size() == 2);
  REQUIRE(b.name() == "bundle(Z4,S3)");
  for (Elem x = 0; x < b.size(); ++x)
    for (Elem y = 0; y < b.size(); ++y) {
      bool same_fiber = b.token(x)[0] == b.token(y)[0];
      REQUIRE(b.compose(x, y).has_value() == same_fiber);
    }
  REQUIRE(b.isotropy_members(b.elem("1:e")).size() == 4);
  REQUIRE(b.isotropy_members(b.elem("2:e")).size() == 6);
}

TEST_CASE("product groupoid multiplies componentwise") {
  Groupoid t6 = grpd::groupoid_product(2, grpd::symmetric_s3());
  auto perms = oracle::s3_perms();
  REQUIRE(t6.size() == 24);
  REQUIRE(t6.identities().size() == 2);
  auto split = [](const std::string& t) {
    auto colon = t.find(':');
    return std::pair{t.substr(0, colon), t.substr(colon + 1)};
  };
  for (Elem x = 0; x < t6.size(); ++x) {
    auto [xp, xg] = split(t6.token(x));
    auto [xi, xj] = oracle::pair_token(xp);
    for (Elem y = 0; y < t6.size(); ++y) {
      auto [yp, yg] = split(t6.token(y));
      auto [yi, yj] = oracle::pair_token(yp);
      auto z = t6.compose(x, y);
      REQUIRE(z.has_value() == (xj == yi));
      if (z) {
        auto [zp, zg] = split(t6.token(*z));
        REQUIRE(oracle::pair_token(zp) == std::pair{xi, yj});
        REQUIRE(perms.at(zg) == oracle::pcompose(perms.at(xg), perms.at(yg)));
      }
    }
  }
}

TEST_CASE("construction is deterministic") {
  Groupoid a = grpd::groupoid_product(2, grpd::symmetric_s3());
  Groupoid b = grpd::groupoid_product(2, grpd::symmetric_s3());
  REQUIRE(a.same_table(b));
  REQUIRE(a.tokens() == b.tokens());
}

TEST_CASE("axiom 3 failures carry witnesses") {
  RawTable t = z2_table();
  t.products.erase({1, 0});  // g loses its right identity? no: g*e gone
  try {
    Groupoid g(std::move(t));
    FAIL("expected an axiom violation");
  } catch (const grpd::AxiomViolation& e) {
    REQUIRE_FALSE(e.witness().empty());
  }
}

TEST_CASE("duplicate identities are rejected") {
  // two left identities for b: a*b = b and e*b = b
  RawTable t;
  t.elements = {"e", "a", "b"};
  t.products[{0, 0}] = 0;
  t.products[{0, 1}] = 1;
  t.products[{0, 2}] = 2;
  t.products[{1, 0}] = 1;
  t.products[{1, 1}] = 0;
  t.products[{1, 2}] = 2;  // a*b = b, the second left identity
  t.products[{2, 0}] = 2;
  t.products[{2, 1}] = 2;
  t.products[{2, 2}] = 0;
  try {
    Groupoid g(std::move(t));
    FAIL("expected an axiom violation");
  } catch (const grpd::AxiomViolation& e) {
    REQUIRE((e.axiom() >= 1 && e.axiom() <= 5));
    REQUIRE_FALSE(e.witness().empty());
  }
}

TEST_CASE("missing inverse is rejected") {
  // N (naturals-style): a has no inverse; also breaks identity existence
  RawTable t;
  t.elements = {"e", "a"};
  t.products[{0, 0}] = 0;
  t.products[{0, 1}] = 1;
  t.products[{1, 0}] = 1;
  t.products[{1, 1}] = 1;  // a*a = a makes a idempotent, not invertible
  REQUIRE_THROWS_AS(Groupoid(std::move(t)), grpd::AxiomViolation);
}

TEST_CASE("malformed carriers are rejected before axioms") {
  RawTable empty;
  REQUIRE_THROWS_AS(Groupoid(std::move(empty)), grpd::Error);

  RawTable dup;
  dup.elements = {"e", "e"};
  dup.products[{0, 0}] = 0;
  REQUIRE_THROWS_AS(Groupoid(std::move(dup)), grpd::Error);

  RawTable spacey;
  spacey.elements = {"a b"};
  REQUIRE_THROWS_AS(Groupoid(std::move(spacey)), grpd::Error);

  RawTable range = z2_table();
  range.products[{1, 1}] = 7;
  REQUIRE_THROWS_AS(Groupoid(std::move(range)), grpd::Error);
}

TEST_CASE("element lookup and guards") {
  Groupoid z2(z2_table(), "Z2");
  REQUIRE(z2.elem("g") == 1);
  REQUIRE(z2.has_token("g"));
  REQUIRE_FALSE(z2.has_token("h"));
  REQUIRE_THROWS_AS(z2.elem("h"), grpd::UnknownElement);
  REQUIRE_THROWS_AS(z2.token(5), grpd::UnknownElement);
  REQUIRE_THROWS_AS(z2.isotropy_members(1), grpd::NotAnIdentity);
  REQUIRE(z2.elems({"g", "e", "g"}) == std::vector<Elem>{0, 1});
}

TEST_CASE("restriction induces valid subtables") {
  Groupoid s3 = grpd::one_object(grpd::symmetric_s3());
  std::vector<Elem> a3 = {s3.elem("e"), s3.elem("(123)"), s3.elem("(132)")};
  Groupoid r = s3.restrict(a3, "A3");
  REQUIRE(r.size() == 3);
  REQUIRE(r.is_abelian());
  REQUIRE(r.name() == "A3");

  // {e,(12),(13)} is not closed: (12)(13) = (132) escapes
  std::vector<Elem> bad = {s3.elem("e"), s3.elem("(12)"), s3.elem("(13)")};
  REQUIRE_THROWS_AS(s3.restrict(bad, "X"), grpd::NotASubgroupoid);

  // dropping the identity of a group leaves elements without d/r
  std::vector<Elem> no_id = {s3.elem("(123)"), s3.elem("(132)")};
  REQUIRE_THROWS_AS(s3.restrict(no_id, "X"), grpd::Error);
}

TEST_CASE("isotropy accessors") {
  Groupoid t6 = grpd::groupoid_product(2, grpd::symmetric_s3());
  REQUIRE(t6.isotropy_members().size() == 12);
  for (Elem e : t6.identities()) {
    grpd::IsotropyGroup iso = t6.isotropy(e);
    REQUIRE(iso.order() == 6);
    REQUIRE(iso.base == e);
  }
  REQUIRE_FALSE(t6.is_abelian());
  Groupoid p2 = grpd::pair_groupoid(2);
  REQUIRE(p2.isotropy_members() == std::vector<Elem>{p2.elem("(1,1)"), p2.elem("(2,2)")});
}
