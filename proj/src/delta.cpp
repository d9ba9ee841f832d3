#include "delta.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace decomp {

MonotoneMap::MonotoneMap(int target_arity, std::vector<int> values)
    : target_(target_arity), values_(std::move(values)) {
  if (target_ < 0 || values_.empty())
    throw InputError("monotone map needs target arity >= 0 and a nonempty value table");
  int prev = 0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    int v = values_[i];
    if (v < 0 || v > target_)
      throw InputError("monotone map value out of range: " + std::to_string(v));
    if (i > 0 && v < prev) throw InputError("monotone map values not weakly increasing");
    prev = v;
  }
}

MonotoneMap MonotoneMap::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n) + 1);
  std::iota(v.begin(), v.end(), 0);
  return MonotoneMap(n, std::move(v));
}

MonotoneMap MonotoneMap::coface(int i, int n) {
  if (n < 1 || i < 0 || i > n) throw InputError("coface index out of range");
  std::vector<int> v;
  v.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j <= n; ++j)
    if (j != i) v.push_back(j);
  return MonotoneMap(n, std::move(v));
}

MonotoneMap MonotoneMap::codegeneracy(int i, int n) {
  if (i < 0 || i > n) throw InputError("codegeneracy index out of range");
  std::vector<int> v;
  v.reserve(static_cast<std::size_t>(n) + 2);
  for (int j = 0; j <= n + 1; ++j) v.push_back(j <= i ? j : j - 1);
  return MonotoneMap(n, std::move(v));
}

MonotoneMap MonotoneMap::long_edge_map(int n) { return MonotoneMap(n, {0, n}); }

MonotoneMap MonotoneMap::interval(int m, int offset, int tail) {
  if (m < 0 || offset < 0 || tail < 0) throw InputError("bad interval parameters");
  std::vector<int> v(static_cast<std::size_t>(m) + 1);
  std::iota(v.begin(), v.end(), offset);
  return MonotoneMap(offset + m + tail, std::move(v));
}

bool MonotoneMap::is_active() const {
  return values_.front() == 0 && values_.back() == target_;
}

bool MonotoneMap::is_inert() const {
  for (std::size_t i = 0; i + 1 < values_.size(); ++i)
    if (values_[i + 1] != values_[i] + 1) return false;
  return true;
}

bool MonotoneMap::is_injective() const {
  for (std::size_t i = 0; i + 1 < values_.size(); ++i)
    if (values_[i + 1] == values_[i]) return false;
  return true;
}

bool MonotoneMap::is_surjective() const {
  int next = 0;
  for (int v : values_) {
    if (v > next) return false;
    if (v == next) ++next;
  }
  return next == target_ + 1;
}

bool MonotoneMap::is_identity() const {
  if (source_arity() != target_) return false;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (values_[i] != static_cast<int>(i)) return false;
  return true;
}

std::string MonotoneMap::str() const {
  std::ostringstream os;
  os << "[" << source_arity() << "]->[" << target_ << "]:(";
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) os << ",";
    os << values_[i];
  }
  os << ")";
  return os.str();
}

MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f) {
  if (f.target_arity() != g.source_arity())
    throw InputError("composition arity mismatch: " + f.str() + " then " + g.str());
  std::vector<int> v;
  v.reserve(f.values().size());
  for (int x : f.values()) v.push_back(g(x));
  return MonotoneMap(g.target_arity(), std::move(v));
}

MapClass classify(const MonotoneMap& map) {
  bool a = map.is_active();
  bool i = map.is_inert();
  if (a && i) return MapClass::Both;
  if (a) return MapClass::Active;
  if (i) return MapClass::Inert;
  return MapClass::Neither;
}

std::string to_string(MapClass c) {
  switch (c) {
    case MapClass::Active: return "active";
    case MapClass::Inert: return "inert";
    case MapClass::Both: return "both";
    case MapClass::Neither: return "neither";
  }
  return "?";
}

ActiveInertFactorization factor_active_inert(const MonotoneMap& map) {
  int lo = map(0);
  int hi = map(map.source_arity());
  std::vector<int> shifted;
  shifted.reserve(map.values().size());
  for (int v : map.values()) shifted.push_back(v - lo);
  MonotoneMap active(hi - lo, std::move(shifted));
  MonotoneMap inert = MonotoneMap::interval(hi - lo, lo, map.target_arity() - hi);
  return {std::move(active), std::move(inert)};
}

EpiMonoFactorization epi_mono_factor(const MonotoneMap& map) {
  std::vector<int> image;
  for (int v : map.values())
    if (image.empty() || image.back() != v) image.push_back(v);
  int p = static_cast<int>(image.size()) - 1;
  std::vector<int> surj;
  surj.reserve(map.values().size());
  for (int v : map.values())
    surj.push_back(static_cast<int>(std::lower_bound(image.begin(), image.end(), v) -
                                    image.begin()));
  return {MonotoneMap(p, std::move(surj)), MonotoneMap(map.target_arity(), std::move(image))};
}

MonotoneMap principal_edge(int i, int k) {
  if (i < 1 || i > k) throw InputError("principal edge index out of range");
  return MonotoneMap(k, {i - 1, i});
}

MonotoneMap join(const MonotoneMap& a, const MonotoneMap& b) {
  if (!a.is_active() || !b.is_active()) throw InputError("join requires active maps");
  std::vector<int> v = a.values();
  int m = a.target_arity();
  for (std::size_t i = 1; i < b.values().size(); ++i) v.push_back(m + b.values()[i]);
  return MonotoneMap(m + b.target_arity(), std::move(v));
}

ReducedCover::ReducedCover(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw InputError("reduced cover needs at least one chart");
  base_ = 0;
  for (int p : parts_) {
    if (p < 1) throw InputError("reduced cover chart of arity 0");
    base_ += p;
  }
  int offset = 0;
  for (int p : parts_) {
    charts_.push_back(MonotoneMap::interval(p, offset, base_ - offset - p));
    offset += p;
  }
}

ReducedCover ReducedCover::principal(int k) {
  if (k < 1) throw InputError("principal cover needs k >= 1");
  return ReducedCover(std::vector<int>(static_cast<std::size_t>(k), 1));
}

MonotoneMap ReducedCover::spine() const {
  std::vector<int> v;
  v.reserve(parts_.size() + 1);
  int offset = 0;
  v.push_back(0);
  for (int p : parts_) {
    offset += p;
    v.push_back(offset);
  }
  return MonotoneMap(base_, std::move(v));
}

std::string ReducedCover::str() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) os << "+";
    os << parts_[i];
  }
  os << ")";
  return os.str();
}

std::vector<CoverChartFactor> cover_chart_factorization(const MonotoneMap& alpha,
                                                        const ReducedCover& cover) {
  if (!alpha.is_active()) throw InputError("cover-chart factorization needs an active map");
  if (cover.base() != alpha.source_arity())
    throw InputError("cover base does not match the map source");
  std::vector<CoverChartFactor> out;
  out.reserve(cover.size());
  for (const MonotoneMap& tau : cover.charts()) {
    auto f = factor_active_inert(compose(alpha, tau));
    out.push_back({std::move(f.active_part), std::move(f.inert_part)});
  }
  return out;
}

ActiveInertPushout pushout_active_inert(const MonotoneMap& active, const MonotoneMap& inert) {
  if (!active.is_active()) throw InputError("pushout: first leg must be active");
  if (!inert.is_inert()) throw InputError("pushout: second leg must be inert");
  if (active.source_arity() != inert.source_arity())
    throw InputError("pushout legs need a common source");
  int m = active.source_arity();
  int n = active.target_arity();
  int offset = inert(0);
  int tail = inert.target_arity() - offset - m;
  // The inert leg transports along the active map's endpoint displacement:
  // left padding stays, the middle is pushed through `active`, the right
  // padding is shifted by n - m.
  std::vector<int> leg;
  leg.reserve(static_cast<std::size_t>(inert.target_arity()) + 1);
  for (int j = 0; j < offset; ++j) leg.push_back(j);
  for (int i = 0; i <= m; ++i) leg.push_back(offset + active(i));
  for (int t = 1; t <= tail; ++t) leg.push_back(offset + n + t);
  return {MonotoneMap(offset + n + tail, std::move(leg)),
          MonotoneMap::interval(n, offset, tail)};
}

std::vector<MonotoneMap> all_monotone_maps(int m, int n) {
  std::vector<MonotoneMap> out;
  std::vector<int> v(static_cast<std::size_t>(m) + 1, 0);
  while (true) {
    out.emplace_back(n, v);
    int i = m;
    while (i >= 0 && v[static_cast<std::size_t>(i)] == n) --i;
    if (i < 0) break;
    int base = ++v[static_cast<std::size_t>(i)];
    for (int j = i + 1; j <= m; ++j) v[static_cast<std::size_t>(j)] = base;
  }
  return out;
}

std::vector<MonotoneMap> all_active_maps(int m, int n) {
  std::vector<MonotoneMap> out;
  for (auto& f : all_monotone_maps(m, n))
    if (f.is_active()) out.push_back(std::move(f));
  return out;
}

std::vector<MonotoneMap> all_active_injections(int k, int n) {
  std::vector<MonotoneMap> out;
  for (auto& f : all_monotone_maps(k, n))
    if (f.is_active() && f.is_injective()) out.push_back(std::move(f));
  return out;
}

std::vector<MonotoneMap> all_inert_maps(int m, int n) {
  std::vector<MonotoneMap> out;
  for (int offset = 0; offset + m <= n; ++offset)
    out.push_back(MonotoneMap::interval(m, offset, n - offset - m));
  return out;
}

std::vector<std::vector<int>> compositions(int k) {
  std::vector<std::vector<int>> out;
  if (k < 1) return out;
  // A composition corresponds to the subset of cut points {1, ..., k-1}.
  for (int mask = 0; mask < (1 << (k - 1)); ++mask) {
    std::vector<int> parts;
    int prev = 0;
    for (int cut = 1; cut < k; ++cut) {
      if (mask & (1 << (cut - 1))) {
        parts.push_back(cut - prev);
        prev = cut;
      }
    }
    parts.push_back(k - prev);
    out.push_back(std::move(parts));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace decomp
