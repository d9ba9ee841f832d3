#pragma once

#include <string>
#include <vector>

#include "errors.hpp"

namespace decomp {

/// An arrow [m] -> [n] of the simplex category: a weakly increasing map of
/// finite nonempty ordinals, stored by its full value table. The canonical
/// form makes classification O(m) and composition table-driven; generator
/// factorizations are computed on demand.
class MonotoneMap {
 public:
  /// values must be weakly increasing with entries in [0, target_arity].
  MonotoneMap(int target_arity, std::vector<int> values);

  static MonotoneMap identity(int n);
  /// d^i : [n-1] -> [n], the injection skipping i (0 <= i <= n, n >= 1).
  static MonotoneMap coface(int i, int n);
  /// s^i : [n+1] -> [n], the surjection repeating i (0 <= i <= n).
  static MonotoneMap codegeneracy(int i, int n);
  /// The unique active map [1] -> [n], values (0, n).
  static MonotoneMap long_edge_map(int n);
  /// Inert interval inclusion [m] -> [m + offset + tail] starting at offset.
  static MonotoneMap interval(int m, int offset, int tail);

  int source_arity() const { return static_cast<int>(values_.size()) - 1; }
  int target_arity() const { return target_; }
  int operator()(int i) const { return values_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& values() const { return values_; }

  bool is_active() const;     // preserves both endpoints
  bool is_inert() const;      // distance preserving
  bool is_injective() const;
  bool is_surjective() const;
  bool is_identity() const;

  std::string str() const;  // "[m]->[n]:(v0,...,vm)"

  friend bool operator==(const MonotoneMap& a, const MonotoneMap& b) {
    return a.target_ == b.target_ && a.values_ == b.values_;
  }

 private:
  int target_;
  std::vector<int> values_;
};

/// g after f (f : [a]->[b], g : [b]->[c]).
MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f);

enum class MapClass { Active, Inert, Both, Neither };
MapClass classify(const MonotoneMap& map);
std::string to_string(MapClass c);

/// Unique factorization map = inert_part ∘ active_part.
struct ActiveInertFactorization {
  MonotoneMap active_part;
  MonotoneMap inert_part;
};
ActiveInertFactorization factor_active_inert(const MonotoneMap& map);

/// Unique factorization map = injection ∘ surjection, with the intermediate
/// ordinal of arity <= min(source, target). Used to evaluate arbitrary
/// simplicial operators inside a truncation.
struct EpiMonoFactorization {
  MonotoneMap surjection;
  MonotoneMap injection;
};
EpiMonoFactorization epi_mono_factor(const MonotoneMap& map);

/// rho_i : [1] -> [k], the inert map picking out the principal edge (i-1, i).
/// Requires 1 <= i <= k.
MonotoneMap principal_edge(int i, int k);

/// Join of active maps: a v b : [p+q] -> [m+n] acting as a on the first p
/// steps and as b (shifted) on the last q.
MonotoneMap join(const MonotoneMap& a, const MonotoneMap& b);

/// A reduced cover of [k]: inert charts tau_i : [k_i] -> [k] in canonical
/// order, k_i >= 1, jointly surjective with every edge hit exactly once.
/// Equivalently, a composition of k into positive parts.
class ReducedCover {
 public:
  /// From the parts (k_1, ..., k_m); they must be positive and sum to k >= 1.
  explicit ReducedCover(std::vector<int> parts);
  /// The principal-edge cover (k ones).
  static ReducedCover principal(int k);

  int base() const { return base_; }  // k
  const std::vector<int>& parts() const { return parts_; }
  const std::vector<MonotoneMap>& charts() const { return charts_; }
  std::size_t size() const { return charts_.size(); }

  /// The active map beta : [m] -> [k] with beta(i) = tau_{i+1}(0).
  MonotoneMap spine() const;

  std::string str() const;  // "(k_1+...+k_m)"

 private:
  int base_;
  std::vector<int> parts_;
  std::vector<MonotoneMap> charts_;
};

/// One chart of a cover-chart factorization: alpha ∘ tau_i = gamma_i ∘ alpha_i
/// with alpha_i : [k_i] -> [n_i] active and gamma_i : [n_i] -> [n] inert.
struct CoverChartFactor {
  MonotoneMap active;  // alpha_i
  MonotoneMap inert;   // gamma_i
};

/// Factor an active alpha : [k] -> [n] over every chart of a reduced cover of
/// its source. The inert parts are jointly surjective and, when alpha is
/// injective, form a reduced cover of [n]; the join of the active parts is
/// alpha again.
std::vector<CoverChartFactor> cover_chart_factorization(const MonotoneMap& alpha,
                                                        const ReducedCover& cover);

/// Pushout of a span [m'] <-inert- [m] -active-> [n], by the explicit
/// interval-transport formula. Legs are again active resp. inert,
/// out of [m'] resp. [n] into [offset + n + tail].
struct ActiveInertPushout {
  MonotoneMap active_leg;  // [m'] -> [n']
  MonotoneMap inert_leg;   // [n]  -> [n']
};
ActiveInertPushout pushout_active_inert(const MonotoneMap& active, const MonotoneMap& inert);

// Enumeration helpers (desk-scale exhaustion).
std::vector<MonotoneMap> all_monotone_maps(int m, int n);
std::vector<MonotoneMap> all_active_maps(int m, int n);
std::vector<MonotoneMap> all_active_injections(int k, int n);
std::vector<MonotoneMap> all_inert_maps(int m, int n);
/// All compositions of k into positive parts (2^(k-1) of them), lexicographic.
std::vector<std::vector<int>> compositions(int k);

}  // namespace decomp
