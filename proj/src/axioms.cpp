#include "axioms.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_map>

namespace decomp {

namespace {

using Namer = std::function<std::string(int)>;

Namer level_namer(const TruncatedSSet& s, int level) {
  return [&s, level](int idx) { return std::to_string(level) + ":" + s.id(level, idx); };
}

struct SquareSpec {
  ProductSquare sq;
  std::string family;
  std::string detail;
  Namer p_name;
  Namer a_name;
  std::vector<Namer> b_names;
};

std::optional<SquareFailure> run_square(const SquareSpec& spec) {
  PullbackCheck check = is_pullback(spec.sq);
  if (check.is_pullback) return std::nullopt;
  SquareFailure f;
  f.family = spec.family;
  f.detail = spec.detail;
  const PullbackWitness& w = *check.witness;
  if (w.kind == PullbackWitness::Kind::Duplicate) {
    f.witness = "two cells share the same image in the fiber product";
    f.cells = {spec.p_name(w.p1), spec.p_name(w.p2)};
  } else {
    f.witness = "fiber-product element has no preimage";
    f.cells.push_back(spec.a_name(w.a));
    for (std::size_t i = 0; i < w.b.size(); ++i)
      f.cells.push_back(spec.b_names[i](w.b[i]));
  }
  return f;
}

class ActCache {
 public:
  explicit ActCache(const TruncatedSSet& s) : s_(s) {}
  const std::vector<int>& get(const MonotoneMap& phi) {
    auto it = memo_.find(phi.str());
    if (it != memo_.end()) return it->second;
    return memo_.emplace(phi.str(), s_.act(phi)).first->second;
  }
  FiniteMap map(const MonotoneMap& phi) {
    return FiniteMap(s_.size(phi.target_arity()), s_.size(phi.source_arity()), get(phi));
  }

 private:
  const TruncatedSSet& s_;
  std::unordered_map<std::string, std::vector<int>> memo_;
};

FiniteMap face_map(const TruncatedSSet& s, int level, int i) {
  return FiniteMap(s.size(level), s.size(level - 1), s.face_table(level, i));
}

FiniteMap degeneracy_map(const TruncatedSSet& s, int level, int i) {
  return FiniteMap(s.size(level), s.size(level + 1), s.degeneracy_table(level, i));
}

/// One checker driving a whole family of squares; stops at the first failure.
struct FamilyRunner {
  AxiomReport report;
  bool run(const SquareSpec& spec) {
    ++report.squares_checked;
    auto failure = run_square(spec);
    if (failure) {
      report.pass = false;
      report.failure = std::move(failure);
      return false;
    }
    return true;
  }
};

bool generator_squares(const TruncatedSSet& x, FamilyRunner& r) {
  for (int n = 2; n + 1 <= x.cap(); ++n) {
    for (int i = 1; i < n; ++i) {
      {
        SquareSpec spec;
        spec.family = "decomposition-1";
        spec.detail = "n=" + std::to_string(n) + " i=" + std::to_string(i) +
                      " square (d_" + std::to_string(1 + i) + ", d_bot)";
        spec.sq.p_size = x.size(n + 1);
        spec.sq.a_size = x.size(n);
        spec.sq.p_to_a = face_map(x, n + 1, 0);
        spec.sq.components.push_back(
            {face_map(x, n + 1, 1 + i), face_map(x, n, i), face_map(x, n, 0)});
        spec.p_name = level_namer(x, n + 1);
        spec.a_name = level_namer(x, n);
        spec.b_names = {level_namer(x, n)};
        if (!r.run(spec)) return false;
      }
      {
        SquareSpec spec;
        spec.family = "decomposition-1";
        spec.detail = "n=" + std::to_string(n) + " i=" + std::to_string(i) +
                      " square (d_" + std::to_string(i) + ", d_top)";
        spec.sq.p_size = x.size(n + 1);
        spec.sq.a_size = x.size(n);
        spec.sq.p_to_a = face_map(x, n + 1, n + 1);
        spec.sq.components.push_back(
            {face_map(x, n + 1, i), face_map(x, n, i), face_map(x, n, n)});
        spec.p_name = level_namer(x, n + 1);
        spec.a_name = level_namer(x, n);
        spec.b_names = {level_namer(x, n)};
        if (!r.run(spec)) return false;
      }
    }
  }
  return true;
}

bool inert_active_squares(const TruncatedSSet& x, ActCache& act, FamilyRunner& r) {
  const int cap = x.cap();
  for (int m = 0; m <= cap; ++m) {
    for (int n = m; n <= cap; ++n) {
      for (const MonotoneMap& a : all_active_injections(m, n)) {
        for (int l = 0; l + n <= cap; ++l) {
          for (int t = 0; l + n + t <= cap; ++t) {
            if (l == 0 && t == 0) continue;  // trivial square
            MonotoneMap b = MonotoneMap::interval(m, l, t);
            ActiveInertPushout po = pushout_active_inert(a, b);
            int np = po.inert_leg.target_arity();
            int mp = b.target_arity();
            SquareSpec spec;
            spec.family = "decomposition-2";
            spec.detail = "active " + a.str() + " against inert " + b.str();
            spec.sq.p_size = x.size(np);
            spec.sq.a_size = x.size(n);
            spec.sq.p_to_a = act.map(po.inert_leg);
            spec.sq.components.push_back({act.map(po.active_leg), act.map(a), act.map(b)});
            spec.p_name = level_namer(x, np);
            spec.a_name = level_namer(x, n);
            spec.b_names = {level_namer(x, mp)};
            if (!r.run(spec)) return false;
          }
        }
      }
    }
  }
  return true;
}

bool reduced_cover_squares(const TruncatedSSet& x, ActCache& act, bool general, FamilyRunner& r) {
  const int cap = x.cap();
  for (int n = 1; n <= cap; ++n) {
    for (int k = 1; k <= n; ++k) {
      std::vector<ReducedCover> covers;
      if (general) {
        for (auto& parts : compositions(k)) covers.emplace_back(parts);
      } else {
        covers.push_back(ReducedCover::principal(k));
      }
      for (const MonotoneMap& alpha : all_active_injections(k, n)) {
        for (const ReducedCover& cover : covers) {
          auto factors = cover_chart_factorization(alpha, cover);
          SquareSpec spec;
          spec.family = general ? "decomposition-4" : "decomposition-3";
          spec.detail = "alpha " + alpha.str() + " cover " + cover.str();
          spec.sq.p_size = x.size(n);
          spec.sq.a_size = x.size(k);
          spec.sq.p_to_a = act.map(alpha);
          spec.p_name = level_namer(x, n);
          spec.a_name = level_namer(x, k);
          for (std::size_t i = 0; i < factors.size(); ++i) {
            const MonotoneMap& tau = cover.charts()[i];
            spec.sq.components.push_back(
                {act.map(factors[i].inert), act.map(tau), act.map(factors[i].active)});
            spec.b_names.push_back(level_namer(x, factors[i].inert.source_arity()));
          }
          if (!r.run(spec)) return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

AxiomReport check_decomposition(const TruncatedSSet& x, int condition) {
  if (x.cap() < 2) throw InputError("check_decomposition needs cap >= 2");
  if (condition < 1 || condition > 4) throw InputError("decomposition condition must be 1..4");
  FamilyRunner r;
  r.report.condition = "decomposition-" + std::to_string(condition);
  r.report.cap = x.cap();
  r.report.pass = true;
  ActCache act(x);
  switch (condition) {
    case 1: generator_squares(x, r); break;
    case 2: inert_active_squares(x, act, r); break;
    case 3: reduced_cover_squares(x, act, false, r); break;
    case 4: reduced_cover_squares(x, act, true, r); break;
  }
  return r.report;
}

AxiomReport is_complete(const TruncatedSSet& x) {
  AxiomReport report;
  report.condition = "complete";
  report.cap = x.cap();
  report.pass = true;
  if (x.cap() < 1) return report;
  std::unordered_map<int, int> seen;
  for (int v = 0; v < x.size(0); ++v) {
    auto [it, inserted] = seen.emplace(x.degeneracy(0, 0, v), v);
    if (!inserted) {
      report.pass = false;
      SquareFailure f;
      f.family = "complete";
      f.detail = "s_0 : X_0 -> X_1 is not mono";
      f.witness = "two vertices share the degenerate edge '" +
                  x.id(1, x.degeneracy(0, 0, v)) + "'";
      f.cells = {"0:" + x.id(0, it->second), "0:" + x.id(0, v)};
      report.failure = f;
      return report;
    }
  }
  return report;
}

namespace {

struct EdgeChains {
  std::vector<std::vector<int>> tuples;
  std::unordered_map<std::string, int> index;

  static std::string key(const std::vector<int>& t) {
    std::string k;
    for (int e : t) k += std::to_string(e) + ",";
    return k;
  }

  static EdgeChains build(const TruncatedSSet& s, int n) {
    EdgeChains out;
    std::vector<std::vector<int>> frontier;
    for (int e = 0; e < s.size(1); ++e) frontier.push_back({e});
    for (int step = 2; step <= n; ++step) {
      std::vector<std::vector<int>> next;
      for (const auto& t : frontier) {
        int tail = s.face(1, 0, t.back());  // target vertex of the last edge
        for (int e = 0; e < s.size(1); ++e) {
          if (s.face(1, 1, e) != tail) continue;
          auto ext = t;
          ext.push_back(e);
          next.push_back(std::move(ext));
        }
      }
      frontier = std::move(next);
    }
    out.tuples = std::move(frontier);
    for (std::size_t i = 0; i < out.tuples.size(); ++i)
      out.index.emplace(key(out.tuples[i]), static_cast<int>(i));
    return out;
  }

  int lookup(const std::vector<int>& t) const {
    auto it = index.find(key(t));
    if (it == index.end()) throw CheckError("edge tuple is not composable");
    return it->second;
  }
};

std::vector<int> principal_edges_of(const TruncatedSSet& s, int n, int idx) {
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i)
    out[static_cast<std::size_t>(i - 1)] = s.principal_edge_of(n, i, idx);
  return out;
}

/// rho-tuple square at level n: left corners are Y_1^n over X_1^n.
SquareSpec rho_square(const SimplicialMap& f, int n, const std::string& family) {
  const TruncatedSSet& y = *f.source();
  const TruncatedSSet& x = *f.target();
  SquareSpec spec;
  spec.family = family;
  spec.detail = "principal-edge tuple square at n=" + std::to_string(n);
  spec.sq.p_size = y.size(n);
  spec.sq.a_size = x.size(n);
  spec.sq.p_to_a = FiniteMap(y.size(n), x.size(n), f.component(n));
  spec.p_name = level_namer(y, n);
  spec.a_name = level_namer(x, n);
  for (int i = 1; i <= n; ++i) {
    std::vector<int> yp(static_cast<std::size_t>(y.size(n)));
    std::vector<int> xp(static_cast<std::size_t>(x.size(n)));
    for (int c = 0; c < y.size(n); ++c)
      yp[static_cast<std::size_t>(c)] = y.principal_edge_of(n, i, c);
    for (int c = 0; c < x.size(n); ++c)
      xp[static_cast<std::size_t>(c)] = x.principal_edge_of(n, i, c);
    spec.sq.components.push_back({FiniteMap(y.size(n), y.size(1), std::move(yp)),
                                  FiniteMap(x.size(n), x.size(1), std::move(xp)),
                                  FiniteMap(y.size(1), x.size(1), f.component(1))});
    spec.b_names.push_back(level_namer(y, 1));
  }
  return spec;
}

/// Naturality square of f against an operator phi (tables already computed).
SquareSpec naturality_square(const SimplicialMap& f, int m, int n, std::vector<int> y_op,
                             std::vector<int> x_op, const std::string& family,
                             const std::string& detail) {
  const TruncatedSSet& y = *f.source();
  const TruncatedSSet& x = *f.target();
  SquareSpec spec;
  spec.family = family;
  spec.detail = detail;
  spec.sq.p_size = y.size(n);
  spec.sq.a_size = x.size(n);
  spec.sq.p_to_a = FiniteMap(y.size(n), x.size(n), f.component(n));
  spec.sq.components.push_back({FiniteMap(y.size(n), y.size(m), std::move(y_op)),
                                FiniteMap(x.size(n), x.size(m), std::move(x_op)),
                                FiniteMap(y.size(m), x.size(m), f.component(m))});
  spec.p_name = level_namer(y, n);
  spec.a_name = level_namer(x, n);
  spec.b_names = {level_namer(y, m)};
  return spec;
}

ClassificationFlag run_flag(const std::vector<SquareSpec>& specs) {
  ClassificationFlag flag;
  flag.value = true;
  for (const auto& spec : specs) {
    auto failure = run_square(spec);
    if (failure) {
      flag.value = false;
      flag.failure = std::move(failure);
      return flag;
    }
  }
  return flag;
}

}  // namespace

MapClassification classify_map(const SimplicialMap& f) {
  const TruncatedSSet& y = *f.source();
  const TruncatedSSet& x = *f.target();
  const int cap = y.cap();
  MapClassification out;

  out.mono_on_objects.value = is_mono_on_objects(f);
  if (!out.mono_on_objects.value) {
    SquareFailure fail;
    fail.family = "mono-on-objects";
    fail.detail = "f_0 is not injective";
    out.mono_on_objects.failure = fail;
  }
  out.equiv_on_objects.value =
      out.mono_on_objects.value && y.size(0) == x.size(0);
  if (!out.equiv_on_objects.value) {
    SquareFailure fail;
    fail.family = "equiv-on-objects";
    fail.detail = "f_0 is not a bijection";
    out.equiv_on_objects.failure = fail;
  }

  bool both_decomp = cap >= 2 && check_decomposition(y, 1).pass && check_decomposition(x, 1).pass;
  out.used_shortcuts = both_decomp;

  {  // fully faithful: vertex-tuple squares for every n
    std::vector<SquareSpec> specs;
    for (int n = 0; n <= cap; ++n) {
      SquareSpec spec;
      spec.family = "fully-faithful";
      spec.detail = "vertex tuple square at n=" + std::to_string(n);
      spec.sq.p_size = y.size(n);
      spec.sq.a_size = x.size(n);
      spec.sq.p_to_a = FiniteMap(y.size(n), x.size(n), f.component(n));
      spec.p_name = level_namer(y, n);
      spec.a_name = level_namer(x, n);
      for (int j = 0; j <= n; ++j) {
        std::vector<int> yv(static_cast<std::size_t>(y.size(n)));
        std::vector<int> xv(static_cast<std::size_t>(x.size(n)));
        for (int c = 0; c < y.size(n); ++c) yv[static_cast<std::size_t>(c)] = y.vertex(n, j, c);
        for (int c = 0; c < x.size(n); ++c) xv[static_cast<std::size_t>(c)] = x.vertex(n, j, c);
        spec.sq.components.push_back({FiniteMap(y.size(n), y.size(0), std::move(yv)),
                                      FiniteMap(x.size(n), x.size(0), std::move(xv)),
                                      FiniteMap(y.size(0), x.size(0), f.component(0))});
        spec.b_names.push_back(level_namer(y, 0));
      }
      specs.push_back(std::move(spec));
    }
    out.fully_faithful = run_flag(specs);
  }

  out.full_inclusion.value = out.fully_faithful.value && out.mono_on_objects.value;
  if (!out.full_inclusion.value)
    out.full_inclusion.failure =
        out.fully_faithful.value ? out.mono_on_objects.failure : out.fully_faithful.failure;

  {  // conservative: every degeneracy naturality square
    std::vector<SquareSpec> specs;
    for (int n = 0; n < cap; ++n)
      for (int i = 0; i <= n; ++i)
        specs.push_back(naturality_square(
            f, n + 1, n, y.degeneracy_table(n, i), x.degeneracy_table(n, i), "conservative",
            "s_" + std::to_string(i) + " square at level " + std::to_string(n)));
    out.conservative = run_flag(specs);
  }

  {  // culf: cartesian on active maps
    std::vector<SquareSpec> specs;
    if (both_decomp) {
      if (cap >= 2)
        specs.push_back(naturality_square(f, 1, 2, y.face_table(2, 1), x.face_table(2, 1),
                                          "culf", "single d_1 square (both sides verified)"));
    } else {
      for (int m = 0; m <= cap; ++m)
        for (int n = 0; n <= cap; ++n)
          for (const MonotoneMap& phi : all_active_maps(m, n))
            specs.push_back(naturality_square(f, m, n, y.act(phi), x.act(phi), "culf",
                                              "active " + phi.str()));
    }
    out.culf = run_flag(specs);
  }

  {  // relatively Segal
    std::vector<SquareSpec> specs;
    for (int n = 2; n <= cap; ++n) {
      EdgeChains yc = EdgeChains::build(y, n);
      EdgeChains xc = EdgeChains::build(x, n);
      SquareSpec spec;
      spec.family = "relatively-segal";
      spec.detail = "composable edge tuple square at n=" + std::to_string(n);
      spec.sq.p_size = y.size(n);
      spec.sq.a_size = x.size(n);
      spec.sq.p_to_a = FiniteMap(y.size(n), x.size(n), f.component(n));
      spec.p_name = level_namer(y, n);
      spec.a_name = level_namer(x, n);
      std::vector<int> p_to_b(static_cast<std::size_t>(y.size(n)));
      for (int c = 0; c < y.size(n); ++c)
        p_to_b[static_cast<std::size_t>(c)] = yc.lookup(principal_edges_of(y, n, c));
      std::vector<int> a_to_c(static_cast<std::size_t>(x.size(n)));
      for (int c = 0; c < x.size(n); ++c)
        a_to_c[static_cast<std::size_t>(c)] = xc.lookup(principal_edges_of(x, n, c));
      std::vector<int> b_to_c(yc.tuples.size());
      for (std::size_t t = 0; t < yc.tuples.size(); ++t) {
        std::vector<int> image;
        image.reserve(yc.tuples[t].size());
        for (int e : yc.tuples[t]) image.push_back(f.apply(1, e));
        b_to_c[t] = xc.lookup(image);
      }
      auto y_tuples = std::make_shared<std::vector<std::vector<int>>>(yc.tuples);
      const TruncatedSSet* yp = &y;
      spec.sq.components.push_back(
          {FiniteMap(y.size(n), static_cast<int>(yc.tuples.size()), std::move(p_to_b)),
           FiniteMap(x.size(n), static_cast<int>(xc.tuples.size()), std::move(a_to_c)),
           FiniteMap(static_cast<int>(yc.tuples.size()), static_cast<int>(xc.tuples.size()),
                     std::move(b_to_c))});
      spec.b_names.push_back([y_tuples, yp](int t) {
        std::string s = "edges(";
        for (std::size_t i = 0; i < (*y_tuples)[static_cast<std::size_t>(t)].size(); ++i) {
          if (i) s += "|";
          s += yp->id(1, (*y_tuples)[static_cast<std::size_t>(t)][i]);
        }
        return s + ")";
      });
      specs.push_back(std::move(spec));
    }
    out.relatively_segal = run_flag(specs);
  }

  {  // ikeo and semi-ikeo via the principal-edge tuple family
    std::vector<SquareSpec> ikeo_specs;
    std::vector<SquareSpec> semi_specs;
    if (both_decomp) {
      ikeo_specs.push_back(rho_square(f, 0, "ikeo"));
      ikeo_specs.push_back(rho_square(f, 2, "ikeo"));
      semi_specs.push_back(rho_square(f, 2, "semi-ikeo"));
    } else {
      for (int n = 0; n <= cap; ++n) ikeo_specs.push_back(rho_square(f, n, "ikeo"));
      for (int n = 1; n <= cap; ++n) semi_specs.push_back(rho_square(f, n, "semi-ikeo"));
    }
    out.ikeo = run_flag(ikeo_specs);
    out.semi_ikeo = run_flag(semi_specs);
  }

  out.convex.value = out.full_inclusion.value && out.culf.value;
  if (!out.convex.value)
    out.convex.failure = out.full_inclusion.value ? out.culf.failure : out.full_inclusion.failure;
  return out;
}

SubSSet full_hull(const SSetPtr& x, const std::vector<int>& vertices) {
  const int cap = x->cap();
  std::vector<char> in_v(static_cast<std::size_t>(x->size(0)), 0);
  for (int v : vertices) {
    if (v < 0 || v >= x->size(0)) throw InputError("hull vertex out of range");
    in_v[static_cast<std::size_t>(v)] = 1;
  }
  std::vector<std::vector<int>> selected(static_cast<std::size_t>(cap) + 1);
  for (int n = 0; n <= cap; ++n) {
    for (int c = 0; c < x->size(n); ++c) {
      bool all = true;
      for (int j = 0; j <= n && all; ++j) all = in_v[static_cast<std::size_t>(x->vertex(n, j, c))];
      if (all) selected[static_cast<std::size_t>(n)].push_back(c);
    }
  }
  return SubSSet(x, std::move(selected), /*from_full_hull=*/true);
}

namespace {

std::vector<char> saturate_seeds(const TruncatedSSet& x, const std::vector<char>& seeds) {
  std::vector<char> out = seeds;
  for (int n = 0; n <= x.cap(); ++n) {
    for (int c = 0; c < x.size(n); ++c) {
      if (!seeds[static_cast<std::size_t>(x.vertex(n, 0, c))]) continue;
      if (!seeds[static_cast<std::size_t>(x.vertex(n, n, c))]) continue;
      for (int j = 1; j < n; ++j) out[static_cast<std::size_t>(x.vertex(n, j, c))] = 1;
    }
  }
  return out;
}

}  // namespace

SubSSet convex_hull(const SSetPtr& x, const std::vector<int>& seeds) {
  std::vector<char> seed_mask(static_cast<std::size_t>(x->size(0)), 0);
  for (int v : seeds) {
    if (v < 0 || v >= x->size(0)) throw InputError("convex hull seed out of range");
    seed_mask[static_cast<std::size_t>(v)] = 1;
  }
  std::vector<char> grown = saturate_seeds(*x, seed_mask);
  if (saturate_seeds(*x, grown) != grown)
    throw CheckError(
        "convex hull did not stabilize after one step; the ambient is not a decomposition space");
  std::vector<int> verts;
  for (int v = 0; v < x->size(0); ++v)
    if (grown[static_cast<std::size_t>(v)]) verts.push_back(v);
  SubSSet hull = full_hull(x, verts);
  MapClassification cls = classify_map(hull.inclusion());
  if (!cls.convex.value)
    throw CheckError("convex hull inclusion failed to classify as convex (" +
                     (cls.convex.failure ? cls.convex.failure->family : std::string("?")) + ")");
  return hull;
}

SubSSet complement(const SSetPtr& x, const SubSSet& k, InheritanceCheck check) {
  if (k.ambient().get() != x.get()) throw InputError("complement: K is not a subspace of X");
  std::vector<int> verts;
  for (int v = 0; v < x->size(0); ++v)
    if (!k.contains(0, v)) verts.push_back(v);
  SubSSet comp = full_hull(x, verts);
  if (check == InheritanceCheck::DecompositionAndCompleteness) {
    SSetPtr extracted = comp.extract();
    if (!is_complete(*extracted).pass)
      throw CheckError("complement failed the completeness inheritance check");
    if (extracted->cap() >= 2 && !check_decomposition(*extracted, 1).pass)
      throw CheckError("complement failed the decomposition inheritance check");
  }
  return comp;
}

int convex_index(const SubSSet& k, int level, int cell) {
  const TruncatedSSet& x = *k.ambient();
  if (!k.contains(0, x.vertex(level, level, cell)))
    throw InputError("convex_index: the cell's last vertex is not in K");
  int j = -1;
  for (int i = 0; i <= level; ++i) {
    bool in_k = k.contains(0, x.vertex(level, i, cell));
    if (j < 0 && in_k) j = i;
    if (j >= 0 && !in_k)
      throw CheckError("convex_index: K-membership of vertices is not an upper interval; "
                       "K is not convex");
  }
  // The whole back face from j on lies in K (fullness of the inclusion).
  int back = cell;
  for (int l = level; l > level - j; --l) back = x.face(l, 0, back);
  if (!k.contains(level - j, back))
    throw CheckError("convex_index: back face escapes K; K is not convex");
  return j;
}

}  // namespace decomp
