#include <catch2/catch_amalgamated.hpp>

#include "crapo.hpp"
#include "posets.hpp"
#include "test_support.hpp"

using namespace decomp;
using testsupport::Rng;

namespace {

Rat value_at(const Functional& f, const std::string& edge_id) {
  int e = f.base()->index_of(1, edge_id);
  REQUIRE(e >= 0);
  return f.at(e);
}

CrapoContext b2_context(const std::vector<std::string>& seed_names) {
  SSetPtr x = nerve(testsupport::b2_poset());
  std::vector<int> seeds;
  for (const auto& name : seed_names) seeds.push_back(x->index_of(0, "(" + name + ")"));
  return make_crapo_context(x, certify_finiteness(x), seeds);
}

}  // namespace

TEST_CASE("phi_notin restricts by principal edges") {
  CrapoContext ctx = b2_context({"a"});
  CHECK(phi_notin(ctx, 0) == epsilon(ctx.x));
  // Edges into K are allowed; only edges of K are excluded, and this K has
  // no nondegenerate edges.
  CHECK(value_at(phi_notin(ctx, 1), "(bot|b)") == Rat(1));
  CHECK(value_at(phi_notin(ctx, 1), "(bot|a)") == Rat(1));

  CrapoContext ctx2 = b2_context({"a", "top"});
  CHECK(value_at(phi_notin(ctx2, 1), "(a|top)") == Rat(0));
}

TEST_CASE("phi_cap counts cells touching K") {
  {
    CrapoContext ctx = b2_context({});
    for (int n = 0; n <= ctx.x->cap(); ++n) CHECK(phi_cap(ctx, n).is_zero());
  }
  {
    CrapoContext ctx = b2_context({"bot", "top"});  // hull is everything
    REQUIRE(ctx.k_sub.is_everything());
    for (int n = 0; n <= ctx.x->cap(); ++n) CHECK(phi_cap(ctx, n) == ctx.phi_x(n));
  }
  {
    CrapoContext ctx = b2_context({"a"});
    CHECK(value_at(phi_cap(ctx, 2), "(bot|top)") == Rat(1));
  }
}

TEST_CASE("the scholium holds pointwise in every degree") {
  Rng rng(1001);
  for (int round = 0; round < 6; ++round) {
    Poset p = testsupport::random_poset(rng, 2, 6);
    SSetPtr x = nerve(p);
    std::vector<int> seeds;
    for (int v = 0; v < x->size(0); ++v)
      if (rng.coin(40)) seeds.push_back(v);
    CrapoContext ctx = make_crapo_context(x, certify_finiteness(x), seeds);
    for (int n = 0; n <= x->cap(); ++n)
      CHECK(ctx.phi_x(n) == ctx.phi_comp(n) + phi_cap(ctx, n));
  }
}

TEST_CASE("the K-lemma and its two termwise matchings") {
  SSetPtr interval = nerve(testsupport::chain_poset(2));
  CHECK(check_k_lemma(interval, 0).pass);
  CHECK(check_k_lemma(interval, 1).pass);
  SSetPtr chain3 = nerve(testsupport::chain_poset(3));
  for (int m = 0; m <= chain3->cap(); ++m) CHECK(check_k_lemma(chain3, m).pass);

  Rng rng(4040);
  for (int round = 0; round < 6; ++round) {
    SSetPtr x = nerve(testsupport::random_poset(rng, 2, 6));
    for (int m = 0; m <= x->cap(); ++m) CHECK(check_k_lemma(x, m).pass);
  }
}

TEST_CASE("meet, S- and T-lemmas on B2") {
  CrapoContext ctx = b2_context({"a"});
  for (int n = 0; n <= ctx.x->cap(); ++n) {
    CHECK(check_meet_lemma(ctx, n).pass);
    CHECK(check_s_lemma(ctx, n).pass);
    CHECK(check_t_lemma(ctx, n).pass);
  }
  // s = 0 reduces to the K_0 indicator on both sides.
  CHECK(convolve(ctx.phi_x(0), ctx.phi_k(0)) == ctx.phi_k(0));
  // Convolving by Phi_0^K from the right restricts to cells whose last
  // vertex is in K (and from the left, the zeroth vertex), which the strict
  // chain-count oracle reproduces directly.
  const Poset p = testsupport::b2_poset();
  for (int s = 0; s <= ctx.x->cap(); ++s) {
    Functional right = convolve(ctx.phi_x(s), ctx.phi_k(0));
    Functional left = convolve(ctx.phi_k(0), ctx.phi_x(s));
    for (int u = 0; u < p.size(); ++u)
      for (int v = 0; v < p.size(); ++v) {
        if (!p.leq(u, v)) continue;
        std::string edge = "(" + p.name(u) + "|" + p.name(v) + ")";
        long long chains = testsupport::count_strict_chains(p, u, v, s);
        CHECK(value_at(right, edge) == Rat(p.name(v) == "a" ? chains : 0));
        CHECK(value_at(left, edge) == Rat(p.name(u) == "a" ? chains : 0));
      }
  }
}

TEST_CASE("meet lemma degenerates correctly at K = X and K = empty") {
  {
    CrapoContext ctx = b2_context({"bot", "top"});
    for (int n = 0; n <= ctx.x->cap(); ++n) CHECK(check_meet_lemma(ctx, n).pass);
  }
  {
    CrapoContext ctx = b2_context({});
    for (int n = 0; n <= ctx.x->cap(); ++n) {
      LemmaVerdict v = check_meet_lemma(ctx, n);
      CHECK(v.pass);
      CHECK(phi_cap(ctx, n).is_zero());
    }
  }
}

TEST_CASE("key lemma, directly and through the proof replay") {
  CrapoContext ctx = b2_context({"a"});
  for (int n = 0; n <= ctx.x->cap(); ++n) {
    KeyLemmaVerdict v = check_key_lemma(ctx, n);
    CHECK(v.direct);
    CHECK(v.replay);
  }
  // n = 0: both sides are the K_0 indicator.
  Functional rhs0 = convolve(convolve(ctx.phi_x(0), ctx.phi_k(0)), ctx.phi_x(0));
  CHECK(phi_cap(ctx, 0) == rhs0);
  CHECK(rhs0 == ctx.phi_k(0));
  // n = 2 at the long edge: 1 + 0 on the left, the (s,t) = (1,1) term on the
  // right contributing exactly 1.
  Functional middle = convolve(convolve(ctx.phi_x(1), ctx.phi_k(0)), ctx.phi_x(1));
  CHECK(value_at(middle, "(bot|top)") == Rat(1));
  CHECK(value_at(ctx.phi_k(1), "(a|a)") == Rat(0));  // K has no strict edges
}

TEST_CASE("crapo complementation on B2 with K = {a}") {
  CrapoContext ctx = b2_context({"a"});
  CrapoVerdict verdict = check_crapo(ctx);
  CHECK(verdict.pass());
  bool found = false;
  for (const auto& row : verdict.table) {
    if (row.edge != "(bot|top)") continue;
    found = true;
    CHECK(row.mu_x == Rat(1));
    CHECK(row.mu_comp == Rat(0));
    CHECK(row.correction == Rat(1));
  }
  CHECK(found);
}

TEST_CASE("crapo at the degenerate extremes") {
  {
    CrapoContext ctx = b2_context({});
    CHECK(ctx.zeta_k.is_zero());
    CrapoVerdict verdict = check_crapo(ctx);
    CHECK(verdict.pass());
    for (const auto& row : verdict.table) {
      CHECK(row.correction == Rat(0));
      CHECK(row.mu_x == row.mu_comp);
    }
  }
  {
    CrapoContext ctx = b2_context({"bot", "top"});
    CrapoVerdict verdict = check_crapo(ctx);
    CHECK(verdict.pass());
    for (const auto& row : verdict.table) {
      CHECK(row.mu_comp == Rat(0));
      CHECK(row.mu_x == row.correction);
    }
  }
}

TEST_CASE("the whole ladder passes on random poset and hull pairs") {
  Rng rng(90210);
  for (int round = 0; round < 8; ++round) {
    Poset p = testsupport::random_poset(rng, 2, 6);
    SSetPtr x = nerve(p);
    std::vector<int> seeds;
    for (int v = 0; v < x->size(0); ++v)
      if (rng.coin(35)) seeds.push_back(v);
    CrapoContext ctx = make_crapo_context(x, certify_finiteness(x), seeds);
    for (int n = 0; n <= x->cap(); ++n) {
      CHECK(check_k_lemma(ctx.k_space, n).pass);
      CHECK(check_meet_lemma(ctx, n).pass);
      CHECK(check_s_lemma(ctx, n).pass);
      CHECK(check_t_lemma(ctx, n).pass);
      CHECK(check_key_lemma(ctx, n).pass());
    }
    CHECK(check_crapo(ctx).pass());
  }
}

TEST_CASE("crapo reproduces the classical lattice complementation formula") {
  Rng rng(1966);
  int done = 0;
  while (done < 4) {
    Poset lat = testsupport::random_lattice(rng, 9);
    int bot = testsupport::lattice_bottom(lat);
    int top = testsupport::lattice_top(lat);
    std::vector<int> proper;
    for (int z = 0; z < lat.size(); ++z)
      if (z != bot && z != top) proper.push_back(z);
    if (proper.empty()) continue;
    int a = proper[static_cast<std::size_t>(rng.below(static_cast<int>(proper.size())))];

    std::vector<int> complements;
    for (int y = 0; y < lat.size(); ++y)
      if (testsupport::lattice_meet(lat, a, y) == bot &&
          testsupport::lattice_join(lat, a, y) == top)
        complements.push_back(y);

    auto oracle = testsupport::poset_mobius_oracle(lat);
    long long correction = 0;
    for (int u : complements)
      for (int v : complements)
        if (lat.leq(u, v))
          correction += oracle[static_cast<std::size_t>(bot)][static_cast<std::size_t>(u)] *
                        oracle[static_cast<std::size_t>(v)][static_cast<std::size_t>(top)];
    // Crapo: mu(L) equals the complement-set correction sum.
    CHECK(oracle[static_cast<std::size_t>(bot)][static_cast<std::size_t>(top)] == correction);

    SSetPtr x = nerve(lat);
    CrapoContext ctx = make_crapo_context(x, certify_finiteness(x), complements);
    CrapoVerdict verdict = check_crapo(ctx);
    CHECK(verdict.pass());
    std::string long_edge = "(" + lat.name(bot) + "|" + lat.name(top) + ")";
    for (const auto& row : verdict.table) {
      if (row.edge != long_edge) continue;
      CHECK(row.mu_x ==
            Rat(oracle[static_cast<std::size_t>(bot)][static_cast<std::size_t>(top)]));
      CHECK(row.correction == Rat(BigInt(correction)));
      if (!complements.empty()) CHECK(row.mu_comp == Rat(0));
    }
    ++done;
  }
}

TEST_CASE("a non-convex subspace is rejected") {
  SSetPtr b2 = nerve(testsupport::b2_poset());
  SubSSet bad = full_hull(b2, {b2->index_of(0, "(bot)"), b2->index_of(0, "(top)")});
  CHECK_THROWS_AS(make_crapo_context(b2, certify_finiteness(b2), bad), InputError);
}
