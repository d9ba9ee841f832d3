#include <catch2/catch_amalgamated.hpp>

#include "axioms.hpp"
#include "incidence.hpp"
#include "posets.hpp"
#include "test_support.hpp"

using namespace decomp;
using testsupport::Rng;

namespace {

Functional random_functional(Rng& rng, const SSetPtr& base) {
  Functional f(base);
  for (int e = 0; e < base->size(1); ++e)
    f.at(e) = Rat(rng.below(11) - 5, 1 + rng.below(4));
  return f;
}

Rat value_at(const Functional& f, const std::string& edge_id) {
  int e = f.base()->index_of(1, edge_id);
  REQUIRE(e >= 0);
  return f.at(e);
}

}  // namespace

TEST_CASE("zeta is constant one") {
  SSetPtr x = nerve(testsupport::chain_poset(2));
  Functional z = zeta(x);
  CHECK(x->size(1) == 3);
  for (int e = 0; e < x->size(1); ++e) CHECK(z.at(e) == Rat(1));
}

TEST_CASE("epsilon indicates the degenerate edges") {
  SSetPtr x = nerve(testsupport::chain_poset(2));
  Functional eps = epsilon(x);
  CHECK(value_at(eps, "(0|0)") == Rat(1));
  CHECK(value_at(eps, "(1|1)") == Rat(1));
  CHECK(value_at(eps, "(0|1)") == Rat(0));
  CHECK(eps == phi(x, 0));

  // Without completeness the indicator is ill-defined.
  SSetPtr bad = testsupport::corrupt_degeneracy(*x, 0, 0, 1, x->degeneracy(0, 0, 0));
  CHECK_THROWS_AS(epsilon(bad), InputError);
}

TEST_CASE("phi counts nondegenerate cells by long edge") {
  SSetPtr x = nerve(testsupport::chain_poset(3));
  CHECK(value_at(phi(x, 2), "(0|2)") == Rat(1));
  CHECK(value_at(phi(x, 1), "(0|2)") == Rat(1));
  CHECK(value_at(phi(x, 0), "(0|2)") == Rat(0));

  SSetPtr b2 = nerve(testsupport::b2_poset());
  CHECK(value_at(phi(b2, 2), "(bot|top)") == Rat(2));
}

TEST_CASE("phi matches the strict chain count oracle on nerves") {
  Rng rng(42);
  for (int round = 0; round < 10; ++round) {
    Poset p = testsupport::random_poset(rng, 2, 6);
    SSetPtr x = nerve(p);
    for (int n = 0; n <= x->cap(); ++n) {
      Functional f = phi(x, n);
      for (int a = 0; a < p.size(); ++a)
        for (int b = 0; b < p.size(); ++b) {
          if (!p.leq(a, b)) continue;
          std::string edge = "(" + p.name(a) + "|" + p.name(b) + ")";
          CHECK(value_at(f, edge) == Rat(testsupport::count_strict_chains(p, a, b, n)));
        }
    }
  }
}

TEST_CASE("epsilon is a two-sided convolution unit") {
  SSetPtr b2 = nerve(testsupport::b2_poset());
  Functional eps = epsilon(b2);
  for (const Functional& f : {zeta(b2), phi(b2, 1)}) {
    CHECK(convolve(eps, f) == f);
    CHECK(convolve(f, eps) == f);
  }
  Functional zero(b2);
  CHECK(convolve(zero, zeta(b2)) == zero);
}

TEST_CASE("phi convolution adds degrees") {
  SSetPtr x = nerve(testsupport::chain_poset(3));
  Functional p11 = convolve(phi(x, 1), phi(x, 1));
  CHECK(value_at(p11, "(0|2)") == Rat(1));
  CHECK(p11 == phi(x, 2));

  Rng rng(7);
  std::vector<SSetPtr> fixtures{x, nerve(testsupport::b2_poset()),
                                nerve(testsupport::random_poset(rng, 2, 6))};
  for (const auto& s : fixtures)
    for (int p = 0; p <= s->cap(); ++p)
      for (int q = 0; p + q <= s->cap(); ++q)
        CHECK(convolve(phi(s, p), phi(s, q)) == phi(s, p + q));
}

TEST_CASE("convolution is associative") {
  Rng rng(99);
  SSetPtr x = nerve(testsupport::b2_poset());
  for (int round = 0; round < 30; ++round) {
    Functional f = random_functional(rng, x);
    Functional g = random_functional(rng, x);
    Functional h = random_functional(rng, x);
    CHECK(convolve(convolve(f, g), h) == convolve(f, convolve(g, h)));
  }
}

TEST_CASE("moebius values on small nerves") {
  {
    SSetPtr x = nerve(testsupport::chain_poset(2));
    Functional mu = moebius(x, certify_finiteness(x));
    CHECK(value_at(mu, "(0|1)") == Rat(-1));
    CHECK(value_at(mu, "(0|0)") == Rat(1));
    CHECK(value_at(mu, "(1|1)") == Rat(1));
  }
  {
    SSetPtr x = nerve(testsupport::chain_poset(3));
    Functional mu = moebius(x, certify_finiteness(x));
    CHECK(value_at(mu, "(0|2)") == Rat(0));
  }
  {
    SSetPtr x = nerve(testsupport::b2_poset());
    Functional mu = moebius(x, certify_finiteness(x));
    CHECK(value_at(mu, "(bot|top)") == Rat(1));
  }
}

TEST_CASE("moebius equals the classical recursion oracle") {
  Rng rng(2718);
  for (int round = 0; round < 20; ++round) {
    Poset p = testsupport::random_poset(rng, 2, 7);
    SSetPtr x = nerve(p);
    Functional mu = moebius(x, certify_finiteness(x));
    auto oracle = testsupport::poset_mobius_oracle(p);
    for (int a = 0; a < p.size(); ++a)
      for (int b = 0; b < p.size(); ++b) {
        if (!p.leq(a, b)) continue;
        std::string edge = "(" + p.name(a) + "|" + p.name(b) + ")";
        CHECK(value_at(mu, edge) ==
              Rat(oracle[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]));
      }
  }
}

TEST_CASE("moebius inversion holds on poset nerves") {
  Rng rng(1414);
  for (int round = 0; round < 12; ++round) {
    Poset p = testsupport::random_poset(rng, 2, 8);
    SSetPtr x = nerve(p);
    InversionReport report = check_inversion(x, certify_finiteness(x));
    CHECK(report.pass());
  }

  SSetPtr b2 = nerve(testsupport::b2_poset());
  Functional lhs = convolve(phi_even(b2), zeta(b2));
  Functional rhs = epsilon(b2) + convolve(phi_odd(b2), zeta(b2));
  CHECK(value_at(lhs, "(bot|top)") == Rat(3));
  CHECK(value_at(rhs, "(bot|top)") == Rat(3));
  CHECK(check_inversion(b2, certify_finiteness(b2)).pass());
}

TEST_CASE("inversion is vacuous on the empty simplicial set") {
  SSetData data;
  data.cap = 2;
  data.cells.resize(3);
  data.faces.resize(3);
  data.degeneracies.resize(3);
  data.faces[1].resize(2);
  data.faces[2].resize(3);
  data.degeneracies[0].resize(1);
  data.degeneracies[1].resize(2);
  SSetPtr empty = std::make_shared<TruncatedSSet>(std::move(data));
  CHECK(check_inversion(empty, certify_finiteness(empty)).pass());
  CHECK(zeta(empty).is_zero());
}

TEST_CASE("pushforward sums over fibers") {
  SSetPtr b2 = nerve(testsupport::b2_poset());
  SimplicialMap id = testsupport::map_by_ids(b2, b2);
  Functional f = phi(b2, 1);
  CHECK(pushforward(id, f) == f);

  SubSSet k = full_hull(b2, {b2->index_of(0, "(bot)"), b2->index_of(0, "(a)")});
  SSetPtr k_space = k.extract();
  SimplicialMap incl = k.inclusion_of(k_space);
  Functional pushed = pushforward(incl, phi(k_space, 0));
  // Supported exactly on the degenerate edges of K's vertices.
  for (int e = 0; e < b2->size(1); ++e) {
    bool is_k_vertex_edge = b2->id(1, e) == "(bot|bot)" || b2->id(1, e) == "(a|a)";
    CHECK(pushed.at(e) == Rat(is_k_vertex_edge ? 1 : 0));
  }
}

TEST_CASE("pushforward along full hulls is multiplicative but not unital") {
  Rng rng(5150);
  for (int round = 0; round < 8; ++round) {
    Poset p = testsupport::random_poset(rng, 3, 6);
    SSetPtr x = nerve(p);
    std::vector<int> verts;
    for (int v = 0; v < x->size(0); ++v)
      if (rng.coin(60)) verts.push_back(v);
    SubSSet k = full_hull(x, verts);
    SSetPtr k_space = k.extract();
    SimplicialMap incl = k.inclusion_of(k_space);
    for (int inner = 0; inner < 4; ++inner) {
      Functional f = random_functional(rng, k_space);
      Functional g = random_functional(rng, k_space);
      CHECK(pushforward(incl, convolve(f, g)) ==
            convolve(pushforward(incl, f), pushforward(incl, g)));
    }
    if (static_cast<int>(verts.size()) < x->size(0))
      CHECK(pushforward(incl, epsilon(k_space)) != epsilon(x));
  }
}

TEST_CASE("finiteness certificates on nerves") {
  SSetPtr x = nerve(testsupport::chain_poset(3));
  FinitenessCertificate cert = certify_finiteness(x);
  CHECK(cert.locally_finite);
  CHECK(cert.moebius_ok);
  CHECK(cert.reason == "nerve-chain-bound");
  CHECK(cert.length[static_cast<std::size_t>(x->index_of(1, "(0|2)"))] == 2);
  CHECK(cert.length[static_cast<std::size_t>(x->index_of(1, "(0|1)"))] == 1);
  for (int v = 0; v < x->size(0); ++v)
    CHECK(cert.length[static_cast<std::size_t>(x->degeneracy(0, 0, v))] == 0);
}

TEST_CASE("raw truncations below the chain bound are denied a certificate") {
  SSetPtr x = nerve(testsupport::chain_poset(4), 3);  // longest chain needs cap 4
  CHECK(x->provenance() == Provenance::Raw);
  FinitenessCertificate cert = certify_finiteness(x);
  CHECK_FALSE(cert.moebius_ok);
  REQUIRE(cert.witness_edge.has_value());
  CHECK(*cert.witness_edge == "(0|3)");
  CHECK_THROWS_AS(moebius(x, cert), InputError);
}

TEST_CASE("certificates propagate to full hulls with shrinking lengths") {
  Rng rng(606);
  for (int round = 0; round < 6; ++round) {
    Poset p = testsupport::random_poset(rng, 2, 7);
    SSetPtr x = nerve(p);
    FinitenessCertificate cert = certify_finiteness(x);
    std::vector<int> verts;
    for (int v = 0; v < x->size(0); ++v)
      if (rng.coin(50)) verts.push_back(v);
    SubSSet hull = full_hull(x, verts);
    SSetPtr extracted = hull.extract();
    FinitenessCertificate inherited = inherit_certificate(cert, hull, extracted);
    CHECK(inherited.moebius_ok);
    for (int e = 0; e < extracted->size(1); ++e) {
      int ambient = x->index_of(1, extracted->id(1, e));
      CHECK(inherited.length[static_cast<std::size_t>(e)] <=
            cert.length[static_cast<std::size_t>(ambient)]);
    }
  }
}

TEST_CASE("rationals are exact") {
  Rat half(1, 2);
  Rat third(1, 3);
  CHECK((half + third) == Rat(5, 6));
  CHECK((half * third) == Rat(1, 6));
  CHECK((half - half).is_zero());
  CHECK(Rat(2, 4) == half);
  CHECK(Rat(-1, -2) == half);
  CHECK(Rat(1, -2) == -half);
  CHECK(Rat(7).is_integer());
  CHECK_FALSE(half.is_integer());
  CHECK(half.str() == "1/2");
  CHECK_THROWS_AS(Rat(1, 0), InputError);
}
