#include "posets.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <unordered_map>

namespace decomp {

Poset::Poset(std::vector<std::string> elements, const std::vector<std::pair<int, int>>& pairs,
             RelationKind kind)
    : elements_(std::move(elements)) {
  const int n = size();
  {
    std::unordered_map<std::string, int> seen;
    for (int i = 0; i < n; ++i)
      if (!seen.emplace(elements_[static_cast<std::size_t>(i)], i).second)
        throw InputError("duplicate poset element '" + elements_[static_cast<std::size_t>(i)] + "'");
  }
  leq_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  auto at = [&](int a, int b) -> char& { return leq_[static_cast<std::size_t>(a * n + b)]; };
  for (auto [a, b] : pairs) {
    if (a < 0 || a >= n || b < 0 || b >= n) throw InputError("relation pair out of range");
    at(a, b) = 1;
  }
  for (int i = 0; i < n; ++i) at(i, i) = 1;

  if (kind == RelationKind::Covers) {
    for (int k = 0; k < n; ++k)
      for (int a = 0; a < n; ++a)
        if (at(a, k))
          for (int b = 0; b < n; ++b)
            if (at(k, b)) at(a, b) = 1;
  } else {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (at(a, b))
          for (int c = 0; c < n; ++c)
            if (at(b, c) && !at(a, c))
              throw InputError("order relation is not transitive: " +
                               elements_[static_cast<std::size_t>(a)] + " <= " +
                               elements_[static_cast<std::size_t>(b)] + " <= " +
                               elements_[static_cast<std::size_t>(c)]);
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && at(a, b) && at(b, a))
        throw InputError("cycle detected: " + elements_[static_cast<std::size_t>(a)] + " and " +
                         elements_[static_cast<std::size_t>(b)] + " are mutually comparable");
}

int Poset::index_of(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (elements_[static_cast<std::size_t>(i)] == name) return i;
  return -1;
}

int Poset::longest_chain_edges() const {
  const int n = size();
  // Longest strict chain by DP over a linear extension (indices sorted by
  // the number of elements below).
  std::vector<int> below(static_cast<std::size_t>(n), 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && leq(b, a)) ++below[static_cast<std::size_t>(a)];
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return below[static_cast<std::size_t>(a)] < below[static_cast<std::size_t>(b)];
  });
  std::vector<int> best(static_cast<std::size_t>(n), 0);
  int longest = 0;
  for (int a : order) {
    for (int b : order) {
      if (a != b && leq(b, a))
        best[static_cast<std::size_t>(a)] =
            std::max(best[static_cast<std::size_t>(a)], best[static_cast<std::size_t>(b)] + 1);
    }
    longest = std::max(longest, best[static_cast<std::size_t>(a)]);
  }
  return longest;
}

namespace {

std::string tuple_id(const std::vector<std::string>& names, const std::vector<int>& chain) {
  std::string id = "(";
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (i) id += "|";
    id += names[static_cast<std::size_t>(chain[i])];
  }
  return id + ")";
}

}  // namespace

SSetPtr nerve(const Poset& p, std::optional<int> cap_opt) {
  const int bound = p.longest_chain_edges();
  const int cap = cap_opt.value_or(std::max(2, bound + 1));
  if (cap < 2) throw InputError("nerve cap must be at least 2");
  Provenance prov = cap >= bound + 1 ? Provenance::NerveChainBound : Provenance::Raw;

  std::vector<std::string> names;
  for (int i = 0; i < p.size(); ++i) names.push_back(p.name(i));

  // Weakly increasing chains, extended level by level in lexicographic order.
  std::vector<std::vector<std::vector<int>>> chains(static_cast<std::size_t>(cap) + 1);
  std::vector<std::map<std::vector<int>, int>> index(static_cast<std::size_t>(cap) + 1);
  for (int v = 0; v < p.size(); ++v) chains[0].push_back({v});
  for (int n = 1; n <= cap; ++n) {
    for (const auto& c : chains[static_cast<std::size_t>(n - 1)]) {
      for (int v = 0; v < p.size(); ++v) {
        if (!p.leq(c.back(), v)) continue;
        auto ext = c;
        ext.push_back(v);
        chains[static_cast<std::size_t>(n)].push_back(std::move(ext));
      }
    }
  }
  for (int n = 0; n <= cap; ++n)
    for (std::size_t i = 0; i < chains[static_cast<std::size_t>(n)].size(); ++i)
      index[static_cast<std::size_t>(n)].emplace(chains[static_cast<std::size_t>(n)][i],
                                                 static_cast<int>(i));

  SSetData data;
  data.cap = cap;
  data.cells.resize(static_cast<std::size_t>(cap) + 1);
  data.faces.resize(static_cast<std::size_t>(cap) + 1);
  data.degeneracies.resize(static_cast<std::size_t>(cap) + 1);
  for (int n = 0; n <= cap; ++n)
    for (const auto& c : chains[static_cast<std::size_t>(n)])
      data.cells[static_cast<std::size_t>(n)].push_back(tuple_id(names, c));

  for (int n = 1; n <= cap; ++n) {
    data.faces[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
      auto& table = data.faces[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
      for (const auto& c : chains[static_cast<std::size_t>(n)]) {
        std::vector<int> face = c;
        face.erase(face.begin() + i);
        table.push_back(index[static_cast<std::size_t>(n - 1)].at(face));
      }
    }
  }
  for (int n = 0; n < cap; ++n) {
    data.degeneracies[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
      auto& table = data.degeneracies[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
      for (const auto& c : chains[static_cast<std::size_t>(n)]) {
        std::vector<int> degen = c;
        degen.insert(degen.begin() + i, c[static_cast<std::size_t>(i)]);
        table.push_back(index[static_cast<std::size_t>(n + 1)].at(degen));
      }
    }
  }
  return std::make_shared<TruncatedSSet>(std::move(data), prov);
}

Category::Category(std::vector<std::string> object_names, std::vector<CategoryMorphism> morphisms,
                   std::vector<int> identities, const std::vector<std::array<int, 3>>& composition)
    : object_names_(std::move(object_names)), morphisms_(std::move(morphisms)),
      identities_(std::move(identities)) {
  const int nm = static_cast<int>(morphisms_.size());
  {
    std::unordered_map<std::string, int> seen;
    for (int i = 0; i < objects(); ++i)
      if (!seen.emplace(object_names_[static_cast<std::size_t>(i)], i).second)
        throw InputError("duplicate object '" + object_names_[static_cast<std::size_t>(i)] + "'");
    for (int i = 0; i < nm; ++i) {
      const auto& m = morphisms_[static_cast<std::size_t>(i)];
      if (seen.count(m.name))
        throw InputError("morphism name '" + m.name + "' clashes with an object name");
      if (m.dom < 0 || m.dom >= objects() || m.cod < 0 || m.cod >= objects())
        throw InputError("morphism '" + m.name + "' has out-of-range endpoints");
    }
    std::unordered_map<std::string, int> mseen;
    for (int i = 0; i < nm; ++i)
      if (!mseen.emplace(morphisms_[static_cast<std::size_t>(i)].name, i).second)
        throw InputError("duplicate morphism '" + morphisms_[static_cast<std::size_t>(i)].name + "'");
  }
  if (static_cast<int>(identities_.size()) != objects())
    throw InputError("need one identity per object");
  for (int x = 0; x < objects(); ++x) {
    int id = identities_[static_cast<std::size_t>(x)];
    if (id < 0 || id >= nm || morphisms_[static_cast<std::size_t>(id)].dom != x ||
        morphisms_[static_cast<std::size_t>(id)].cod != x)
      throw InputError("identity of '" + object_names_[static_cast<std::size_t>(x)] +
                       "' is not an endomorphism of it");
  }

  table_.assign(static_cast<std::size_t>(nm) * static_cast<std::size_t>(nm), -1);
  for (const auto& t : composition) {
    auto [f, g, gf] = std::tuple{t[0], t[1], t[2]};
    if (f < 0 || f >= nm || g < 0 || g >= nm || gf < 0 || gf >= nm)
      throw InputError("composition entry out of range");
    if (morphisms_[static_cast<std::size_t>(f)].cod != morphisms_[static_cast<std::size_t>(g)].dom)
      throw InputError("composition entry for a non-composable pair ('" +
                       morphisms_[static_cast<std::size_t>(f)].name + "' then '" +
                       morphisms_[static_cast<std::size_t>(g)].name + "')");
    if (morphisms_[static_cast<std::size_t>(gf)].dom != morphisms_[static_cast<std::size_t>(f)].dom ||
        morphisms_[static_cast<std::size_t>(gf)].cod != morphisms_[static_cast<std::size_t>(g)].cod)
      throw InputError("composite '" + morphisms_[static_cast<std::size_t>(gf)].name +
                       "' has the wrong endpoints");
    table_[static_cast<std::size_t>(g * nm + f)] = gf;
  }
  for (int f = 0; f < nm; ++f)
    for (int g = 0; g < nm; ++g) {
      bool composable = morphisms_[static_cast<std::size_t>(f)].cod ==
                        morphisms_[static_cast<std::size_t>(g)].dom;
      int gf = table_[static_cast<std::size_t>(g * nm + f)];
      if (composable && gf < 0)
        throw InputError("composition table is not total: missing '" +
                         morphisms_[static_cast<std::size_t>(g)].name + "' after '" +
                         morphisms_[static_cast<std::size_t>(f)].name + "'");
    }
  for (int f = 0; f < nm; ++f) {
    const auto& m = morphisms_[static_cast<std::size_t>(f)];
    if (compose(f, identities_[static_cast<std::size_t>(m.dom)]) != f ||
        compose(identities_[static_cast<std::size_t>(m.cod)], f) != f)
      throw InputError("composition table is not unital at '" + m.name + "'");
  }
  for (int f = 0; f < nm; ++f)
    for (int g = 0; g < nm; ++g) {
      if (morphisms_[static_cast<std::size_t>(f)].cod != morphisms_[static_cast<std::size_t>(g)].dom)
        continue;
      for (int h = 0; h < nm; ++h) {
        if (morphisms_[static_cast<std::size_t>(g)].cod != morphisms_[static_cast<std::size_t>(h)].dom)
          continue;
        if (compose(h, compose(g, f)) != compose(compose(h, g), f))
          throw InputError("composition table is not associative at ('" +
                           morphisms_[static_cast<std::size_t>(f)].name + "','" +
                           morphisms_[static_cast<std::size_t>(g)].name + "','" +
                           morphisms_[static_cast<std::size_t>(h)].name + "')");
      }
    }
}

int Category::object_index(const std::string& name) const {
  for (int i = 0; i < objects(); ++i)
    if (object_names_[static_cast<std::size_t>(i)] == name) return i;
  return -1;
}

int Category::morphism_index(const std::string& name) const {
  for (int i = 0; i < morphisms(); ++i)
    if (morphisms_[static_cast<std::size_t>(i)].name == name) return i;
  return -1;
}

int Category::compose(int g, int f) const {
  int gf = table_[static_cast<std::size_t>(g * morphisms() + f)];
  if (gf < 0) throw InputError("composing a non-composable pair");
  return gf;
}

SSetPtr nerve_category(const Category& c, int cap) {
  if (cap < 2) throw InputError("nerve cap must be at least 2");

  std::vector<std::string> morphism_names;
  for (int i = 0; i < c.morphisms(); ++i) morphism_names.push_back(c.morphism(i).name);

  std::vector<std::vector<std::vector<int>>> chains(static_cast<std::size_t>(cap) + 1);
  std::vector<std::map<std::vector<int>, int>> index(static_cast<std::size_t>(cap) + 1);
  chains[0].push_back({});  // placeholder; level 0 is the object list
  for (int f = 0; f < c.morphisms(); ++f) chains[1].push_back({f});
  for (int n = 2; n <= cap; ++n) {
    for (const auto& ch : chains[static_cast<std::size_t>(n - 1)]) {
      int tail = c.morphism(ch.back()).cod;
      for (int f = 0; f < c.morphisms(); ++f) {
        if (c.morphism(f).dom != tail) continue;
        auto ext = ch;
        ext.push_back(f);
        chains[static_cast<std::size_t>(n)].push_back(std::move(ext));
      }
    }
  }
  for (int n = 1; n <= cap; ++n)
    for (std::size_t i = 0; i < chains[static_cast<std::size_t>(n)].size(); ++i)
      index[static_cast<std::size_t>(n)].emplace(chains[static_cast<std::size_t>(n)][i],
                                                 static_cast<int>(i));

  SSetData data;
  data.cap = cap;
  data.cells.resize(static_cast<std::size_t>(cap) + 1);
  data.faces.resize(static_cast<std::size_t>(cap) + 1);
  data.degeneracies.resize(static_cast<std::size_t>(cap) + 1);
  for (int x = 0; x < c.objects(); ++x) data.cells[0].push_back("(" + c.object_name(x) + ")");
  for (int n = 1; n <= cap; ++n)
    for (const auto& ch : chains[static_cast<std::size_t>(n)])
      data.cells[static_cast<std::size_t>(n)].push_back(tuple_id(morphism_names, ch));

  for (int n = 1; n <= cap; ++n) {
    data.faces[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
      auto& table = data.faces[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
      for (const auto& ch : chains[static_cast<std::size_t>(n)]) {
        if (n == 1) {
          table.push_back(i == 0 ? c.morphism(ch[0]).cod : c.morphism(ch[0]).dom);
          continue;
        }
        std::vector<int> face;
        if (i == 0) {
          face.assign(ch.begin() + 1, ch.end());
        } else if (i == n) {
          face.assign(ch.begin(), ch.end() - 1);
        } else {
          face.assign(ch.begin(), ch.end());
          int composite = c.compose(face[static_cast<std::size_t>(i)],
                                    face[static_cast<std::size_t>(i - 1)]);
          face[static_cast<std::size_t>(i - 1)] = composite;
          face.erase(face.begin() + i);
        }
        table.push_back(index[static_cast<std::size_t>(n - 1)].at(face));
      }
    }
  }
  for (int n = 0; n < cap; ++n) {
    data.degeneracies[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
      auto& table = data.degeneracies[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
      if (n == 0) {
        for (int x = 0; x < c.objects(); ++x)
          table.push_back(index[1].at({c.identity(x)}));
        continue;
      }
      for (const auto& ch : chains[static_cast<std::size_t>(n)]) {
        std::vector<int> degen = ch;
        int vertex_obj = i < n ? c.morphism(ch[static_cast<std::size_t>(i)]).dom
                               : c.morphism(ch.back()).cod;
        degen.insert(degen.begin() + i, c.identity(vertex_obj));
        table.push_back(index[static_cast<std::size_t>(n + 1)].at(degen));
      }
    }
  }
  return std::make_shared<TruncatedSSet>(std::move(data), Provenance::Raw);
}

Category category_from_poset(const Poset& p) {
  std::vector<std::string> objects;
  for (int i = 0; i < p.size(); ++i) objects.push_back(p.name(i));
  std::vector<CategoryMorphism> morphisms;
  std::vector<std::vector<int>> morph_index(
      static_cast<std::size_t>(p.size()),
      std::vector<int>(static_cast<std::size_t>(p.size()), -1));
  for (int a = 0; a < p.size(); ++a)
    for (int b = 0; b < p.size(); ++b)
      if (p.leq(a, b)) {
        morph_index[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
            static_cast<int>(morphisms.size());
        morphisms.push_back({p.name(a) + "<=" + p.name(b), a, b});
      }
  std::vector<int> identities;
  for (int a = 0; a < p.size(); ++a)
    identities.push_back(morph_index[static_cast<std::size_t>(a)][static_cast<std::size_t>(a)]);
  std::vector<std::array<int, 3>> composition;
  for (int a = 0; a < p.size(); ++a)
    for (int b = 0; b < p.size(); ++b)
      for (int cc = 0; cc < p.size(); ++cc)
        if (p.leq(a, b) && p.leq(b, cc))
          composition.push_back(
              {morph_index[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)],
               morph_index[static_cast<std::size_t>(b)][static_cast<std::size_t>(cc)],
               morph_index[static_cast<std::size_t>(a)][static_cast<std::size_t>(cc)]});
  return Category(std::move(objects), std::move(morphisms), std::move(identities), composition);
}

}  // namespace decomp
