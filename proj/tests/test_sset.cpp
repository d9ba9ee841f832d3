#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "axioms.hpp"
#include "posets.hpp"
#include "sset.hpp"
#include "test_support.hpp"

using namespace decomp;
using testsupport::Rng;

namespace {

std::vector<std::string> split_tuple(const std::string& id) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : id) {
    if (c == '(' ) continue;
    if (c == '|' || c == ')') {
      out.push_back(cur);
      cur.clear();
      continue;
    }
    cur += c;
  }
  return out;
}

SSetPtr empty_sset(int cap) {
  SSetData data;
  data.cap = cap;
  data.cells.resize(static_cast<std::size_t>(cap) + 1);
  data.faces.resize(static_cast<std::size_t>(cap) + 1);
  data.degeneracies.resize(static_cast<std::size_t>(cap) + 1);
  for (int n = 1; n <= cap; ++n)
    data.faces[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(n) + 1);
  for (int n = 0; n < cap; ++n)
    data.degeneracies[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(n) + 1);
  return std::make_shared<TruncatedSSet>(std::move(data));
}

FiniteMap random_map(Rng& rng, int dom, int cod) {
  std::vector<int> t(static_cast<std::size_t>(dom));
  for (int i = 0; i < dom; ++i) t[static_cast<std::size_t>(i)] = rng.below(cod);
  return FiniteMap(dom, cod, std::move(t));
}

}  // namespace

TEST_CASE("nerve of a chain validates") {
  SSetPtr x = nerve(testsupport::chain_poset(3));
  CHECK(x->cap() == 3);
  ValidationReport report = validate(*x);
  CHECK(report.valid);
  CHECK(report.violations.empty());
}

TEST_CASE("a corrupted face table is detected and named") {
  SSetPtr good = nerve(testsupport::chain_poset(3), 2);
  int top = good->index_of(2, "(0|1|2)");
  int wrong = good->index_of(1, "(0|2)");
  SSetPtr bad = testsupport::corrupt_face(*good, 2, 2, top, wrong);
  ValidationReport report = validate(*bad);
  REQUIRE_FALSE(report.valid);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].identity == "d_0 d_2 = d_1 d_0");
  CHECK(report.violations[0].level == 2);
  CHECK(report.violations[0].cell == "(0|1|2)");
  // Eager construction refuses the same data.
  SSetData data = testsupport::to_data(*bad);
  CHECK_THROWS_AS(TruncatedSSet(std::move(data)), InputError);
}

TEST_CASE("the empty simplicial set validates") {
  SSetPtr x = empty_sset(2);
  CHECK(validate(*x).valid);
  CHECK(is_complete(*x).pass);
}

TEST_CASE("act implements chain reindexing on nerves") {
  SSetPtr x = nerve(testsupport::b2_poset());  // cap 3
  for (int m = 0; m <= 3; ++m) {
    for (int n = 0; n <= 3; ++n) {
      for (const MonotoneMap& phi : all_monotone_maps(m, n)) {
        std::vector<int> table = x->act(phi);
        for (int c = 0; c < x->size(n); ++c) {
          auto parts = split_tuple(x->id(n, c));
          std::string expect = "(";
          for (int i = 0; i <= m; ++i) {
            if (i) expect += "|";
            expect += parts[static_cast<std::size_t>(phi(i))];
          }
          expect += ")";
          CHECK(x->id(m, table[static_cast<std::size_t>(c)]) == expect);
        }
      }
    }
  }
}

TEST_CASE("act is functorial") {
  SSetPtr x = nerve(testsupport::chain_poset(3));
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      for (int c = 0; c <= 3; ++c)
        for (const MonotoneMap& phi : all_monotone_maps(a, b))
          for (const MonotoneMap& psi : all_monotone_maps(b, c)) {
            std::vector<int> composite = x->act(compose(psi, phi));
            std::vector<int> phi_t = x->act(phi);
            std::vector<int> psi_t = x->act(psi);
            for (int cell = 0; cell < x->size(c); ++cell)
              CHECK(composite[static_cast<std::size_t>(cell)] ==
                    phi_t[static_cast<std::size_t>(psi_t[static_cast<std::size_t>(cell)])]);
          }
}

TEST_CASE("degeneracy detection") {
  SSetPtr x = nerve(testsupport::chain_poset(3));
  for (int v = 0; v < x->size(0); ++v) CHECK(x->is_degenerate(1, x->degeneracy(0, 0, v)));
  CHECK_FALSE(x->is_degenerate(2, x->index_of(2, "(0|1|2)")));
  CHECK_THROWS_AS(x->is_degenerate(0, 0), InputError);

  SSetPtr two = nerve(testsupport::chain_poset(2));
  CHECK(two->is_degenerate(2, two->index_of(2, "(0|0|1)")));
}

TEST_CASE("long edges") {
  SSetPtr x = nerve(testsupport::chain_poset(3));
  int e01 = x->index_of(1, "(0|1)");
  CHECK(x->long_edge(1, e01) == e01);
  CHECK(x->long_edge(2, x->index_of(2, "(0|1|2)")) == x->index_of(1, "(0|2)"));
  int v = x->index_of(0, "(1)");
  CHECK(x->long_edge(0, v) == x->index_of(1, "(1|1)"));
}

TEST_CASE("is_pullback on plain squares") {
  // P = A and B = C with identity horizontals.
  {
    Square sq;
    sq.p_size = sq.a_size = 3;
    sq.b_size = sq.c_size = 2;
    sq.top = FiniteMap::identity(3);
    sq.bottom = FiniteMap::identity(2);
    sq.left = FiniteMap(3, 2, {0, 1, 1});
    sq.right = FiniteMap(3, 2, {0, 1, 1});
    auto check = is_pullback(sq);
    CHECK(check.is_pullback);
  }
  // Two points over distinct images: empty fiber product.
  {
    Square sq;
    sq.p_size = 0;
    sq.a_size = sq.b_size = 1;
    sq.c_size = 2;
    sq.top = FiniteMap(0, 1, {});
    sq.left = FiniteMap(0, 1, {});
    sq.right = FiniteMap(1, 2, {0});
    sq.bottom = FiniteMap(1, 2, {1});
    CHECK(is_pullback(sq).is_pullback);
  }
  // Singleton corners but empty P: the unique fiber element is missed.
  {
    Square sq;
    sq.p_size = 0;
    sq.a_size = sq.b_size = sq.c_size = 1;
    sq.top = FiniteMap(0, 1, {});
    sq.left = FiniteMap(0, 1, {});
    sq.right = FiniteMap(1, 1, {0});
    sq.bottom = FiniteMap(1, 1, {0});
    auto check = is_pullback(sq);
    REQUIRE_FALSE(check.is_pullback);
    REQUIRE(check.witness.has_value());
    CHECK(check.witness->kind == PullbackWitness::Kind::Missing);
  }
  // Duplicate preimages.
  {
    Square sq;
    sq.p_size = 2;
    sq.a_size = sq.b_size = sq.c_size = 1;
    sq.top = FiniteMap(2, 1, {0, 0});
    sq.left = FiniteMap(2, 1, {0, 0});
    sq.right = FiniteMap(1, 1, {0});
    sq.bottom = FiniteMap(1, 1, {0});
    auto check = is_pullback(sq);
    REQUIRE_FALSE(check.is_pullback);
    CHECK(check.witness->kind == PullbackWitness::Kind::Duplicate);
  }
  // Non-commuting squares are rejected.
  {
    Square sq;
    sq.p_size = 1;
    sq.a_size = sq.b_size = 1;
    sq.c_size = 2;
    sq.top = FiniteMap(1, 1, {0});
    sq.left = FiniteMap(1, 1, {0});
    sq.right = FiniteMap(1, 2, {0});
    sq.bottom = FiniteMap(1, 2, {1});
    CHECK_THROWS_AS(is_pullback(sq), InputError);
  }
}

TEST_CASE("prism property for composable squares") {
  Rng rng(2024);
  for (int round = 0; round < 300; ++round) {
    int b1 = 1 + rng.below(5), b2 = 1 + rng.below(5), b3 = 1 + rng.below(5);
    int p3 = 1 + rng.below(5);
    FiniteMap bottom_right = random_map(rng, b2, b3);
    FiniteMap right_edge = random_map(rng, p3, b3);
    // Materialize the right square as an actual pullback.
    std::vector<std::pair<int, int>> p2;
    for (int b = 0; b < b2; ++b)
      for (int q = 0; q < p3; ++q)
        if (bottom_right(b) == right_edge(q)) p2.emplace_back(b, q);
    if (p2.empty()) continue;
    int p1 = 1 + rng.below(5);
    FiniteMap top_left = random_map(rng, p1, static_cast<int>(p2.size()));
    // Pick the left edge so the left square commutes (B1 -> B2 by residue).
    int b1_sz = std::max(b1, b2);
    std::vector<int> bottom_left_t(static_cast<std::size_t>(b1_sz));
    for (int i = 0; i < b1_sz; ++i) bottom_left_t[static_cast<std::size_t>(i)] = i % b2;
    FiniteMap bottom_left(b1_sz, b2, bottom_left_t);
    std::vector<int> left_edge_t(static_cast<std::size_t>(p1));
    for (int i = 0; i < p1; ++i) {
      int target_b2 = p2[static_cast<std::size_t>(top_left(i))].first;
      // Any preimage under bottom_left works; rng picks among them.
      std::vector<int> pre;
      for (int b = 0; b < b1_sz; ++b)
        if (bottom_left(b) == target_b2) pre.push_back(b);
      left_edge_t[static_cast<std::size_t>(i)] = pre[static_cast<std::size_t>(rng.below(
          static_cast<int>(pre.size())))];
    }
    FiniteMap left_edge(p1, b1_sz, left_edge_t);

    Square left_sq;
    left_sq.p_size = p1;
    left_sq.a_size = static_cast<int>(p2.size());
    left_sq.b_size = b1_sz;
    left_sq.c_size = b2;
    left_sq.top = top_left;
    left_sq.left = left_edge;
    std::vector<int> mid(p2.size());
    for (std::size_t i = 0; i < p2.size(); ++i) mid[i] = p2[i].first;
    left_sq.right = FiniteMap(static_cast<int>(p2.size()), b2, mid);
    left_sq.bottom = bottom_left;

    Square right_sq;
    right_sq.p_size = static_cast<int>(p2.size());
    right_sq.a_size = p3;
    right_sq.b_size = b2;
    right_sq.c_size = b3;
    std::vector<int> proj_q(p2.size());
    for (std::size_t i = 0; i < p2.size(); ++i) proj_q[i] = p2[i].second;
    right_sq.top = FiniteMap(static_cast<int>(p2.size()), p3, proj_q);
    right_sq.left = left_sq.right;
    right_sq.right = right_edge;
    right_sq.bottom = bottom_right;
    REQUIRE(is_pullback(right_sq).is_pullback);

    Square rect;
    rect.p_size = p1;
    rect.a_size = p3;
    rect.b_size = b1_sz;
    rect.c_size = b3;
    std::vector<int> top_comp(static_cast<std::size_t>(p1));
    for (int i = 0; i < p1; ++i) top_comp[static_cast<std::size_t>(i)] = right_sq.top(top_left(i));
    rect.top = FiniteMap(p1, p3, top_comp);
    rect.left = left_edge;
    rect.right = right_edge;
    std::vector<int> bottom_comp(static_cast<std::size_t>(b1_sz));
    for (int i = 0; i < b1_sz; ++i)
      bottom_comp[static_cast<std::size_t>(i)] = bottom_right(bottom_left(i));
    rect.bottom = FiniteMap(b1_sz, b3, bottom_comp);

    CHECK(is_pullback(left_sq).is_pullback == is_pullback(rect).is_pullback);
  }
}

TEST_CASE("a map is injective iff its diagonal square is a pullback") {
  Rng rng(77);
  for (int round = 0; round < 300; ++round) {
    int t = 1 + rng.below(5), s = 1 + rng.below(5);
    FiniteMap f = random_map(rng, t, s);
    bool injective = true;
    std::set<int> seen;
    for (int i = 0; i < t; ++i) injective &= seen.insert(f(i)).second;

    Square sq;
    sq.p_size = t;
    sq.a_size = t * t;
    sq.b_size = s;
    sq.c_size = s * s;
    std::vector<int> diag_t(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i) diag_t[static_cast<std::size_t>(i)] = i * t + i;
    sq.top = FiniteMap(t, t * t, diag_t);
    sq.left = f;
    std::vector<int> ff(static_cast<std::size_t>(t * t));
    for (int i = 0; i < t; ++i)
      for (int j = 0; j < t; ++j) ff[static_cast<std::size_t>(i * t + j)] = f(i) * s + f(j);
    sq.right = FiniteMap(t * t, s * s, ff);
    std::vector<int> diag_s(static_cast<std::size_t>(s));
    for (int i = 0; i < s; ++i) diag_s[static_cast<std::size_t>(i)] = i * s + i;
    sq.bottom = FiniteMap(s, s * s, diag_s);

    CHECK(is_pullback(sq).is_pullback == injective);
  }
}

TEST_CASE("fiber products along a mono agree over both bases") {
  Rng rng(99);
  for (int round = 0; round < 300; ++round) {
    int t = 1 + rng.below(4), s = t + rng.below(3);
    // injective f: T -> S
    std::vector<int> values;
    for (int i = 0; i < s; ++i) values.push_back(i);
    for (int i = s - 1; i > 0; --i) std::swap(values[static_cast<std::size_t>(i)],
                                              values[static_cast<std::size_t>(rng.below(i + 1))]);
    std::vector<int> f_t(values.begin(), values.begin() + t);
    FiniteMap f(t, s, f_t);
    int xs = 1 + rng.below(4), ys = 1 + rng.below(4);
    FiniteMap u = random_map(rng, xs, t);
    FiniteMap v = random_map(rng, ys, t);
    std::set<std::pair<int, int>> over_t, over_s;
    for (int a = 0; a < xs; ++a)
      for (int b = 0; b < ys; ++b) {
        if (u(a) == v(b)) over_t.insert({a, b});
        if (f(u(a)) == f(v(b))) over_s.insert({a, b});
      }
    CHECK(over_t == over_s);
  }
}

TEST_CASE("products versus fiber products over monic vertex maps") {
  auto run = [](const SimplicialMap& f) {
    REQUIRE(is_mono_on_objects(f));
    const TruncatedSSet& y = *f.source();
    const TruncatedSSet& x = *f.target();
    auto composable = [](const TruncatedSSet& s) {
      std::vector<std::pair<int, int>> out;
      for (int e1 = 0; e1 < s.size(1); ++e1)
        for (int e2 = 0; e2 < s.size(1); ++e2)
          if (s.face(1, 0, e1) == s.face(1, 1, e2)) out.emplace_back(e1, e2);
      return out;
    };
    auto yc = composable(y);
    auto xc = composable(x);
    auto x_index = [&](int e1, int e2) {
      for (std::size_t i = 0; i < xc.size(); ++i)
        if (xc[i] == std::make_pair(e1, e2)) return static_cast<int>(i);
      throw std::runtime_error("image pair is not composable");
    };

    Square sq;
    sq.p_size = static_cast<int>(yc.size());
    sq.a_size = y.size(1) * y.size(1);
    sq.b_size = static_cast<int>(xc.size());
    sq.c_size = x.size(1) * x.size(1);
    std::vector<int> top(yc.size()), left(yc.size());
    for (std::size_t i = 0; i < yc.size(); ++i) {
      top[i] = yc[i].first * y.size(1) + yc[i].second;
      left[i] = x_index(f.apply(1, yc[i].first), f.apply(1, yc[i].second));
    }
    sq.top = FiniteMap(sq.p_size, sq.a_size, top);
    sq.left = FiniteMap(sq.p_size, sq.b_size, left);
    std::vector<int> right(static_cast<std::size_t>(sq.a_size));
    for (int e1 = 0; e1 < y.size(1); ++e1)
      for (int e2 = 0; e2 < y.size(1); ++e2)
        right[static_cast<std::size_t>(e1 * y.size(1) + e2)] =
            f.apply(1, e1) * x.size(1) + f.apply(1, e2);
    sq.right = FiniteMap(sq.a_size, sq.c_size, right);
    std::vector<int> bottom(xc.size());
    for (std::size_t i = 0; i < xc.size(); ++i)
      bottom[i] = xc[i].first * x.size(1) + xc[i].second;
    sq.bottom = FiniteMap(sq.b_size, sq.c_size, bottom);
    CHECK(is_pullback(sq).is_pullback);
  };

  SSetPtr b2 = nerve(testsupport::b2_poset());
  run(full_hull(b2, {b2->index_of(0, "(bot)"), b2->index_of(0, "(a)"), b2->index_of(0, "(top)")})
          .inclusion());
  SSetPtr interval = nerve(testsupport::chain_poset(2));
  SSetPtr two_points = nerve(testsupport::antichain_poset(2), 2);
  {
    // Rename the antichain vertices into the interval's.
    std::vector<std::vector<int>> comps;
    for (int n = 0; n <= 2; ++n) {
      std::vector<int> comp;
      for (int c = 0; c < two_points->size(n); ++c) {
        std::string id = two_points->id(n, c);
        for (char& ch : id)
          if (ch == 'x') ch = ' ';
        std::string renamed;
        for (char ch : id)
          if (ch != ' ') renamed += ch;
        comp.push_back(interval->index_of(n, renamed));
      }
      comps.push_back(std::move(comp));
    }
    run(SimplicialMap(two_points, interval, std::move(comps)));
  }
  Rng rng(5005);
  for (int round = 0; round < 5; ++round) {
    Poset p = testsupport::random_poset(rng, 3, 5);
    SSetPtr x = nerve(p);
    std::vector<int> subset;
    for (int v = 0; v < x->size(0); ++v)
      if (rng.coin(60)) subset.push_back(v);
    run(full_hull(x, subset).inclusion());
  }
}

TEST_CASE("nondegeneracy agrees with principal-edge nondegeneracy on nerves") {
  Rng rng(31337);
  std::vector<Poset> fixtures{testsupport::b2_poset(), testsupport::chain_poset(4),
                              testsupport::random_poset(rng, 2, 6)};
  for (const Poset& p : fixtures) {
    SSetPtr x = nerve(p);
    for (int n = 1; n <= x->cap(); ++n)
      for (int c = 0; c < x->size(n); ++c) {
        bool some_degenerate_edge = false;
        for (int i = 1; i <= n; ++i)
          some_degenerate_edge |= x->is_degenerate(1, x->principal_edge_of(n, i, c));
        CHECK(x->is_degenerate(n, c) == some_degenerate_edge);
      }
  }
}

TEST_CASE("mono on objects") {
  SSetPtr b2 = nerve(testsupport::b2_poset());
  CHECK(is_mono_on_objects(full_hull(b2, {0, 1}).inclusion()));

  SSetPtr two = nerve(testsupport::antichain_poset(2), 2);
  SSetPtr point = nerve(testsupport::chain_poset(1), 2);
  std::vector<std::vector<int>> comps;
  for (int n = 0; n <= 2; ++n)
    comps.emplace_back(static_cast<std::size_t>(two->size(n)), 0);
  SimplicialMap constant(two, point, std::move(comps));
  CHECK_FALSE(is_mono_on_objects(constant));
}

TEST_CASE("subspaces must be closed under the structure maps") {
  SSetPtr x = nerve(testsupport::chain_poset(2));
  std::vector<std::vector<int>> selected(static_cast<std::size_t>(x->cap()) + 1);
  selected[1].push_back(x->index_of(1, "(0|1)"));
  CHECK_THROWS_AS(SubSSet(x, std::move(selected)), InputError);
}

TEST_CASE("simplicial maps must commute with the structure maps") {
  SSetPtr x = nerve(testsupport::chain_poset(2));
  std::vector<std::vector<int>> comps;
  for (int n = 0; n <= x->cap(); ++n) {
    std::vector<int> comp;
    for (int c = 0; c < x->size(n); ++c) comp.push_back(c);
    comps.push_back(std::move(comp));
  }
  // Swap the two vertices but nothing else: naturality breaks.
  std::swap(comps[0][0], comps[0][1]);
  CHECK_THROWS_AS(SimplicialMap(x, x, std::move(comps)), InputError);
}
