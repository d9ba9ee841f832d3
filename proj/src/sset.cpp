#include "sset.hpp"

#include <algorithm>
#include <sstream>

namespace decomp {

std::string to_string(Provenance p) {
  return p == Provenance::NerveChainBound ? "nerve-chain-bound" : "raw";
}

namespace {

std::string face_face_name(int i, int j) {
  std::ostringstream os;
  os << "d_" << i << " d_" << j << " = d_" << (j - 1) << " d_" << i;
  return os.str();
}

std::string degen_degen_name(int i, int j) {
  std::ostringstream os;
  os << "s_" << i << " s_" << j << " = s_" << (j + 1) << " s_" << i;
  return os.str();
}

std::string face_degen_name(int i, int j) {
  std::ostringstream os;
  if (i < j)
    os << "d_" << i << " s_" << j << " = s_" << (j - 1) << " d_" << i;
  else if (i == j || i == j + 1)
    os << "d_" << i << " s_" << j << " = id";
  else
    os << "d_" << i << " s_" << j << " = s_" << j << " d_" << (i - 1);
  return os.str();
}

}  // namespace

TruncatedSSet::TruncatedSSet(SSetData data, Provenance provenance, Check check)
    : data_(std::move(data)), provenance_(provenance) {
  const int cap = data_.cap;
  if (cap < 0) throw InputError("cap must be >= 0");
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) throw InputError("malformed simplicial set: " + what);
  };
  expect(static_cast<int>(data_.cells.size()) == cap + 1, "need cells for levels 0..cap");
  expect(static_cast<int>(data_.faces.size()) == cap + 1, "face tables must span levels 0..cap");
  expect(static_cast<int>(data_.degeneracies.size()) == cap + 1,
         "degeneracy tables must span levels 0..cap");
  expect(data_.faces[0].empty(), "level 0 has no faces");

  index_.resize(static_cast<std::size_t>(cap) + 1);
  std::unordered_map<std::string, int> global;
  for (int n = 0; n <= cap; ++n) {
    for (int idx = 0; idx < size(n); ++idx) {
      const std::string& id = data_.cells[static_cast<std::size_t>(n)][static_cast<std::size_t>(idx)];
      if (!global.emplace(id, n).second)
        throw InputError("duplicate cell id across levels: '" + id + "'");
      index_[static_cast<std::size_t>(n)].emplace(id, idx);
    }
  }

  for (int n = 1; n <= cap; ++n) {
    auto& tables = data_.faces[static_cast<std::size_t>(n)];
    expect(static_cast<int>(tables.size()) == n + 1,
           "level " + std::to_string(n) + " needs " + std::to_string(n + 1) + " face maps");
    for (int i = 0; i <= n; ++i) {
      expect(static_cast<int>(tables[static_cast<std::size_t>(i)].size()) == size(n),
             "face table d_" + std::to_string(i) + " at level " + std::to_string(n) +
                 " has the wrong size");
      for (int v : tables[static_cast<std::size_t>(i)])
        expect(v >= 0 && v < size(n - 1), "face entry out of range at level " + std::to_string(n));
    }
  }
  for (int n = 0; n <= cap; ++n) {
    auto& tables = data_.degeneracies[static_cast<std::size_t>(n)];
    if (n == cap) {
      expect(tables.empty(), "no degeneracies out of the top level");
      continue;
    }
    expect(static_cast<int>(tables.size()) == n + 1,
           "level " + std::to_string(n) + " needs " + std::to_string(n + 1) + " degeneracy maps");
    for (int i = 0; i <= n; ++i) {
      expect(static_cast<int>(tables[static_cast<std::size_t>(i)].size()) == size(n),
             "degeneracy table s_" + std::to_string(i) + " at level " + std::to_string(n) +
                 " has the wrong size");
      for (int v : tables[static_cast<std::size_t>(i)])
        expect(v >= 0 && v < size(n + 1),
               "degeneracy entry out of range at level " + std::to_string(n));
    }
  }

  if (check == Check::Eager) {
    ValidationReport report = validate();
    if (!report.valid) {
      const auto& v = report.violations.front();
      throw InputError("simplicial identity " + v.identity + " fails at level " +
                       std::to_string(v.level) + " cell '" + v.cell + "'");
    }
  }
}

void TruncatedSSet::check_level(int level) const {
  if (level < 0 || level > data_.cap)
    throw InputError("level " + std::to_string(level) + " exceeds cap " +
                     std::to_string(data_.cap));
}

int TruncatedSSet::size(int level) const {
  check_level(level);
  return static_cast<int>(data_.cells[static_cast<std::size_t>(level)].size());
}

const std::string& TruncatedSSet::id(int level, int idx) const {
  check_level(level);
  return data_.cells[static_cast<std::size_t>(level)][static_cast<std::size_t>(idx)];
}

int TruncatedSSet::index_of(int level, const std::string& id) const {
  check_level(level);
  const auto& m = index_[static_cast<std::size_t>(level)];
  auto it = m.find(id);
  return it == m.end() ? -1 : it->second;
}

int TruncatedSSet::face(int level, int i, int idx) const {
  return face_table(level, i)[static_cast<std::size_t>(idx)];
}

int TruncatedSSet::degeneracy(int level, int i, int idx) const {
  return degeneracy_table(level, i)[static_cast<std::size_t>(idx)];
}

const std::vector<int>& TruncatedSSet::face_table(int level, int i) const {
  check_level(level);
  if (level < 1 || i < 0 || i > level) throw InputError("face index out of range");
  return data_.faces[static_cast<std::size_t>(level)][static_cast<std::size_t>(i)];
}

const std::vector<int>& TruncatedSSet::degeneracy_table(int level, int i) const {
  check_level(level + 1);
  if (i < 0 || i > level) throw InputError("degeneracy index out of range");
  return data_.degeneracies[static_cast<std::size_t>(level)][static_cast<std::size_t>(i)];
}

std::vector<int> TruncatedSSet::act(const MonotoneMap& phi) const {
  const int m = phi.source_arity();
  const int n = phi.target_arity();
  check_level(m);
  check_level(n);
  EpiMonoFactorization em = epi_mono_factor(phi);

  std::vector<int> table(static_cast<std::size_t>(size(n)));
  for (int idx = 0; idx < size(n); ++idx) table[static_cast<std::size_t>(idx)] = idx;

  // X(injection): drop the missing vertices from the top down.
  int level = n;
  {
    const auto& vals = em.injection.values();
    std::vector<char> hit(static_cast<std::size_t>(n) + 1, 0);
    for (int v : vals) hit[static_cast<std::size_t>(v)] = 1;
    for (int j = n; j >= 0; --j) {
      if (hit[static_cast<std::size_t>(j)]) continue;
      const auto& d = face_table(level, j);
      for (auto& x : table) x = d[static_cast<std::size_t>(x)];
      --level;
    }
  }
  // X(surjection): repeat the collapsed positions from the bottom up.
  {
    const auto& vals = em.surjection.values();
    for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
      if (vals[i] != vals[i + 1]) continue;
      const auto& s = degeneracy_table(level, static_cast<int>(i));
      for (auto& x : table) x = s[static_cast<std::size_t>(x)];
      ++level;
    }
  }
  return table;
}

int TruncatedSSet::vertex(int level, int j, int idx) const {
  check_level(level);
  if (j < 0 || j > level) throw InputError("vertex index out of range");
  int cur = idx;
  for (int l = level; l > j; --l) cur = face(l, l, cur);
  for (int l = j; l > 0; --l) cur = face(l, 0, cur);
  return cur;
}

int TruncatedSSet::principal_edge_of(int level, int i, int idx) const {
  check_level(level);
  if (i < 1 || i > level) throw InputError("principal edge index out of range");
  int cur = idx;
  for (int l = level; l > i; --l) cur = face(l, l, cur);
  for (int l = i; l > 1; --l) cur = face(l, 0, cur);
  return cur;
}

int TruncatedSSet::long_edge(int level, int idx) const {
  check_level(level);
  if (level == 0) return degeneracy(0, 0, idx);
  int cur = idx;
  for (int l = level; l > 1; --l) cur = face(l, 1, cur);
  return cur;
}

bool TruncatedSSet::is_degenerate(int level, int idx) const {
  check_level(level);
  if (level == 0) throw InputError("vertices are nondegenerate by convention");
  for (int i = 0; i < level; ++i) {
    if (degeneracy(level - 1, i, face(level, i, idx)) == idx) return true;
  }
  return false;
}

ValidationReport TruncatedSSet::validate() const {
  ValidationReport report;
  const int cap = data_.cap;
  auto fail = [&](const std::string& identity, int level, int idx) {
    report.valid = false;
    report.violations.push_back({identity, level, id(level, idx)});
  };

  // d_i d_j = d_{j-1} d_i for i < j.
  for (int n = 2; n <= cap; ++n)
    for (int j = 1; j <= n; ++j)
      for (int i = 0; i < j; ++i)
        for (int x = 0; x < size(n); ++x)
          if (face(n - 1, i, face(n, j, x)) != face(n - 1, j - 1, face(n, i, x)))
            fail(face_face_name(i, j), n, x);

  // s_i s_j = s_{j+1} s_i for i <= j.
  for (int n = 0; n + 2 <= cap; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= j; ++i)
        for (int x = 0; x < size(n); ++x)
          if (degeneracy(n + 1, i, degeneracy(n, j, x)) !=
              degeneracy(n + 1, j + 1, degeneracy(n, i, x)))
            fail(degen_degen_name(i, j), n, x);

  // d_i s_j mixed identities.
  for (int n = 0; n + 1 <= cap; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n + 1; ++i)
        for (int x = 0; x < size(n); ++x) {
          int lhs = face(n + 1, i, degeneracy(n, j, x));
          int rhs;
          if (i < j)
            rhs = degeneracy(n - 1, j - 1, face(n, i, x));
          else if (i == j || i == j + 1)
            rhs = x;
          else
            rhs = degeneracy(n - 1, j, face(n, i - 1, x));
          if (lhs != rhs) fail(face_degen_name(i, j), n, x);
        }

  return report;
}

ValidationReport validate(const TruncatedSSet& sset) { return sset.validate(); }

SimplicialMap::SimplicialMap(SSetPtr source, SSetPtr target,
                             std::vector<std::vector<int>> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
  if (!source_ || !target_) throw InputError("simplicial map needs source and target");
  if (source_->cap() != target_->cap())
    throw InputError("simplicial map between mismatched caps");
  const int cap = source_->cap();
  if (static_cast<int>(components_.size()) != cap + 1)
    throw InputError("simplicial map needs one component per level");
  for (int n = 0; n <= cap; ++n) {
    const auto& c = components_[static_cast<std::size_t>(n)];
    if (static_cast<int>(c.size()) != source_->size(n))
      throw InputError("map component at level " + std::to_string(n) + " has the wrong size");
    for (int v : c)
      if (v < 0 || v >= target_->size(n))
        throw InputError("map component entry out of range at level " + std::to_string(n));
  }
  for (int n = 1; n <= cap; ++n)
    for (int i = 0; i <= n; ++i)
      for (int x = 0; x < source_->size(n); ++x)
        if (target_->face(n, i, apply(n, x)) != apply(n - 1, source_->face(n, i, x)))
          throw InputError("map does not commute with d_" + std::to_string(i) + " at level " +
                           std::to_string(n) + " cell '" + source_->id(n, x) + "'");
  for (int n = 0; n < cap; ++n)
    for (int i = 0; i <= n; ++i)
      for (int x = 0; x < source_->size(n); ++x)
        if (target_->degeneracy(n, i, apply(n, x)) != apply(n + 1, source_->degeneracy(n, i, x)))
          throw InputError("map does not commute with s_" + std::to_string(i) + " at level " +
                           std::to_string(n) + " cell '" + source_->id(n, x) + "'");
}

int SimplicialMap::apply(int level, int idx) const {
  return components_[static_cast<std::size_t>(level)][static_cast<std::size_t>(idx)];
}

const std::vector<int>& SimplicialMap::component(int level) const {
  return components_[static_cast<std::size_t>(level)];
}

bool is_mono_on_objects(const SimplicialMap& f) {
  std::vector<char> seen(static_cast<std::size_t>(f.target()->size(0)), 0);
  for (int x = 0; x < f.source()->size(0); ++x) {
    auto& s = seen[static_cast<std::size_t>(f.apply(0, x))];
    if (s) return false;
    s = 1;
  }
  return true;
}

SubSSet::SubSSet(SSetPtr ambient, std::vector<std::vector<int>> selected, bool from_full_hull)
    : ambient_(std::move(ambient)), selected_(std::move(selected)), from_full_hull_(from_full_hull) {
  if (!ambient_) throw InputError("subspace needs an ambient simplicial set");
  const int cap = ambient_->cap();
  if (static_cast<int>(selected_.size()) != cap + 1)
    throw InputError("subspace needs a selection per level");
  member_.resize(static_cast<std::size_t>(cap) + 1);
  for (int n = 0; n <= cap; ++n) {
    auto& sel = selected_[static_cast<std::size_t>(n)];
    std::sort(sel.begin(), sel.end());
    sel.erase(std::unique(sel.begin(), sel.end()), sel.end());
    member_[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(ambient_->size(n)), 0);
    for (int idx : sel) {
      if (idx < 0 || idx >= ambient_->size(n))
        throw InputError("subspace selection out of range at level " + std::to_string(n));
      member_[static_cast<std::size_t>(n)][static_cast<std::size_t>(idx)] = 1;
    }
  }
  for (int n = 1; n <= cap; ++n)
    for (int idx : selected_[static_cast<std::size_t>(n)])
      for (int i = 0; i <= n; ++i)
        if (!contains(n - 1, ambient_->face(n, i, idx)))
          throw InputError("subspace not closed under d_" + std::to_string(i) + " at level " +
                           std::to_string(n) + " cell '" + ambient_->id(n, idx) + "'");
  for (int n = 0; n < cap; ++n)
    for (int idx : selected_[static_cast<std::size_t>(n)])
      for (int i = 0; i <= n; ++i)
        if (!contains(n + 1, ambient_->degeneracy(n, i, idx)))
          throw InputError("subspace not closed under s_" + std::to_string(i) + " at level " +
                           std::to_string(n) + " cell '" + ambient_->id(n, idx) + "'");
}

const std::vector<int>& SubSSet::selected(int level) const {
  return selected_[static_cast<std::size_t>(level)];
}

bool SubSSet::contains(int level, int idx) const {
  return member_[static_cast<std::size_t>(level)][static_cast<std::size_t>(idx)] != 0;
}

bool SubSSet::is_empty() const {
  for (const auto& sel : selected_)
    if (!sel.empty()) return false;
  return true;
}

bool SubSSet::is_everything() const {
  for (int n = 0; n <= ambient_->cap(); ++n)
    if (static_cast<int>(selected_[static_cast<std::size_t>(n)].size()) != ambient_->size(n))
      return false;
  return true;
}

SSetPtr SubSSet::extract() const {
  const int cap = ambient_->cap();
  std::vector<std::vector<int>> reindex(static_cast<std::size_t>(cap) + 1);
  SSetData data;
  data.cap = cap;
  data.cells.resize(static_cast<std::size_t>(cap) + 1);
  data.faces.resize(static_cast<std::size_t>(cap) + 1);
  data.degeneracies.resize(static_cast<std::size_t>(cap) + 1);
  for (int n = 0; n <= cap; ++n) {
    reindex[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(ambient_->size(n)), -1);
    int next = 0;
    for (int idx : selected_[static_cast<std::size_t>(n)]) {
      reindex[static_cast<std::size_t>(n)][static_cast<std::size_t>(idx)] = next++;
      data.cells[static_cast<std::size_t>(n)].push_back(ambient_->id(n, idx));
    }
  }
  for (int n = 1; n <= cap; ++n) {
    data.faces[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i)
      for (int idx : selected_[static_cast<std::size_t>(n)])
        data.faces[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)].push_back(
            reindex[static_cast<std::size_t>(n - 1)]
                   [static_cast<std::size_t>(ambient_->face(n, i, idx))]);
  }
  for (int n = 0; n < cap; ++n) {
    data.degeneracies[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i)
      for (int idx : selected_[static_cast<std::size_t>(n)])
        data.degeneracies[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)].push_back(
            reindex[static_cast<std::size_t>(n + 1)]
                   [static_cast<std::size_t>(ambient_->degeneracy(n, i, idx))]);
  }
  Provenance prov = (from_full_hull_ && ambient_->provenance() == Provenance::NerveChainBound)
                        ? Provenance::NerveChainBound
                        : Provenance::Raw;
  return std::make_shared<TruncatedSSet>(std::move(data), prov);
}

SimplicialMap SubSSet::inclusion() const { return inclusion_of(extract()); }

SimplicialMap SubSSet::inclusion_of(const SSetPtr& extracted) const {
  const int cap = ambient_->cap();
  std::vector<std::vector<int>> comps(static_cast<std::size_t>(cap) + 1);
  for (int n = 0; n <= cap; ++n)
    comps[static_cast<std::size_t>(n)] = selected_[static_cast<std::size_t>(n)];
  return SimplicialMap(extracted, ambient_, std::move(comps));
}

FiniteMap::FiniteMap(int dom, int cod, std::vector<int> t)
    : domain_size(dom), codomain_size(cod), table(std::move(t)) {
  if (static_cast<int>(table.size()) != dom) throw InputError("finite map table size mismatch");
  for (int v : table)
    if (v < 0 || v >= cod) throw InputError("finite map entry out of range");
}

FiniteMap FiniteMap::identity(int n) {
  std::vector<int> t(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = i;
  return FiniteMap(n, n, std::move(t));
}

PullbackCheck is_pullback(const Square& sq) {
  ProductSquare p;
  p.p_size = sq.p_size;
  p.a_size = sq.a_size;
  p.p_to_a = sq.top;
  p.components.push_back({sq.left, sq.right, sq.bottom});
  return is_pullback(p);
}

PullbackCheck is_pullback(const ProductSquare& sq) {
  const int k = static_cast<int>(sq.components.size());

  for (int p = 0; p < sq.p_size; ++p) {
    int a = sq.p_to_a(p);
    for (const auto& comp : sq.components)
      if (comp.b_to_c(comp.p_to_b(p)) != comp.a_to_c(a))
        throw InputError("square does not commute");
  }

  // Group the P-elements by their A-image and hash the B-tuples to detect
  // duplicates; commutation guarantees every found tuple lies in the fiber.
  struct TupleHash {
    std::size_t operator()(const std::vector<int>& v) const {
      std::size_t h = 1469598103934665603ull;
      for (int x : v) {
        h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
      }
      return h;
    }
  };
  std::vector<std::unordered_map<std::vector<int>, int, TupleHash>> found(
      static_cast<std::size_t>(sq.a_size));
  for (int p = 0; p < sq.p_size; ++p) {
    std::vector<int> tuple(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
      tuple[static_cast<std::size_t>(i)] = sq.components[static_cast<std::size_t>(i)].p_to_b(p);
    auto [it, inserted] =
        found[static_cast<std::size_t>(sq.p_to_a(p))].emplace(std::move(tuple), p);
    if (!inserted) {
      PullbackWitness w;
      w.kind = PullbackWitness::Kind::Duplicate;
      w.p1 = it->second;
      w.p2 = p;
      return {false, w};
    }
  }

  // Per-component fibers over each C_i element.
  std::vector<std::vector<std::vector<int>>> fibers(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    const auto& comp = sq.components[static_cast<std::size_t>(i)];
    fibers[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(comp.b_to_c.codomain_size));
    for (int b = 0; b < comp.b_to_c.domain_size; ++b)
      fibers[static_cast<std::size_t>(i)][static_cast<std::size_t>(comp.b_to_c(b))].push_back(b);
  }

  for (int a = 0; a < sq.a_size; ++a) {
    unsigned long long expected = 1;
    bool overflow = false;
    for (int i = 0; i < k; ++i) {
      const auto& comp = sq.components[static_cast<std::size_t>(i)];
      std::size_t fs =
          fibers[static_cast<std::size_t>(i)][static_cast<std::size_t>(comp.a_to_c(a))].size();
      if (fs == 0) {
        expected = 0;
        break;
      }
      if (expected > (1ull << 62) / fs) {
        overflow = true;
        break;
      }
      expected *= fs;
    }
    auto& found_here = found[static_cast<std::size_t>(a)];
    if (!overflow && found_here.size() == expected) continue;

    // Mismatch: walk the fiber product with an odometer for the first
    // missing tuple. (found <= expected always, by injectivity.)
    std::vector<int> pos(static_cast<std::size_t>(k), 0);
    std::vector<int> tuple(static_cast<std::size_t>(k));
    while (true) {
      bool done = false;
      for (int i = 0; i < k; ++i) {
        const auto& comp = sq.components[static_cast<std::size_t>(i)];
        const auto& f =
            fibers[static_cast<std::size_t>(i)][static_cast<std::size_t>(comp.a_to_c(a))];
        if (f.empty()) {
          done = true;  // cannot happen unless expected == 0 != found
          break;
        }
        tuple[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(pos[static_cast<std::size_t>(i)])];
      }
      if (done) break;
      if (!found_here.count(tuple)) {
        PullbackWitness w;
        w.kind = PullbackWitness::Kind::Missing;
        w.a = a;
        w.b = tuple;
        return {false, w};
      }
      int i = k - 1;
      for (; i >= 0; --i) {
        const auto& comp = sq.components[static_cast<std::size_t>(i)];
        const auto& f =
            fibers[static_cast<std::size_t>(i)][static_cast<std::size_t>(comp.a_to_c(a))];
        if (++pos[static_cast<std::size_t>(i)] < static_cast<int>(f.size())) break;
        pos[static_cast<std::size_t>(i)] = 0;
      }
      if (i < 0) break;
      if (k == 0) break;
    }
    // k == 0 with expected 1 and found 0: the missing tuple is empty.
    if (k == 0 && found_here.empty()) {
      PullbackWitness w;
      w.kind = PullbackWitness::Kind::Missing;
      w.a = a;
      return {false, w};
    }
  }
  return {true, std::nullopt};
}

}  // namespace decomp
