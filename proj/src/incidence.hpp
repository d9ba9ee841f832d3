#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rational.hpp"
#include "sset.hpp"

namespace decomp {

/// An exact-rational valuation on the 1-cells of a simplicial set. All
/// arithmetic in this module is exact; the functionals coming from counting
/// (zeta, epsilon, Phi_n, Möbius) stay integral, which callers may assert.
class Functional {
 public:
  explicit Functional(SSetPtr base);
  Functional(SSetPtr base, std::vector<Rat> values);

  const SSetPtr& base() const { return base_; }
  const Rat& at(int edge) const { return values_[static_cast<std::size_t>(edge)]; }
  Rat& at(int edge) { return values_[static_cast<std::size_t>(edge)]; }
  int support_size() const;
  bool is_zero() const;
  bool is_integral() const;
  bool is_nonnegative() const;

  friend Functional operator+(const Functional& a, const Functional& b);
  friend Functional operator-(const Functional& a, const Functional& b);
  Functional scaled(const Rat& c) const;
  friend bool operator==(const Functional& a, const Functional& b);
  friend bool operator!=(const Functional& a, const Functional& b) { return !(a == b); }

  /// First edge where the two functionals differ, as a cell id.
  static std::optional<std::string> first_difference(const Functional& a, const Functional& b);

 private:
  SSetPtr base_;
  std::vector<Rat> values_;
};

/// Constant 1 on X_1.
Functional zeta(const SSetPtr& x);
/// Indicator of degenerate 1-cells; requires s_0 mono (completeness), since
/// otherwise the 0/1 indicator is ill-defined.
Functional epsilon(const SSetPtr& x);
/// Phi_n(f) = number of nondegenerate n-cells with long edge f. Phi_0 equals
/// epsilon (same span).
Functional phi(const SSetPtr& x, int n);
Functional phi_even(const SSetPtr& x);
Functional phi_odd(const SSetPtr& x);

/// Convolution through the 2-cells: (F*G)(f) = sum over sigma in X_2 with
/// d_1 sigma = f of F(d_2 sigma) * G(d_0 sigma). Requires cap >= 2 and a
/// common base.
Functional convolve(const Functional& f, const Functional& g);

struct FinitenessCertificate {
  bool locally_finite = true;  // automatic for finite data; recorded
  /// length[a] = max n <= cap with an effective n-cell of long edge a
  /// (effective: all principal edges nondegenerate).
  std::vector<int> length;
  bool moebius_ok = false;
  std::string reason;
  std::optional<std::string> witness_edge;  // when denied
};

/// Build the finiteness certificate. Nerve-with-chain-bound provenance proves
/// the Möbius condition outright (and it is re-asserted by exhaustion at the
/// cap); raw input only earns a truncation-relative certificate, verified by
/// Phi_cap == 0, and is denied with a witness edge otherwise.
FinitenessCertificate certify_finiteness(const SSetPtr& x);

/// Certificate for a full hull inside a certified ambient: the Möbius
/// condition is inherited, and the recomputed lengths are checked against the
/// ambient's (they can only shrink).
FinitenessCertificate inherit_certificate(const FinitenessCertificate& ambient_cert,
                                          const SubSSet& hull, const SSetPtr& extracted);

/// mu = sum of (-1)^n Phi_n up to the cap. Requires moebius_ok.
Functional moebius(const SSetPtr& x, const FinitenessCertificate& cert);

struct InversionReport {
  bool mu_zeta = false;       // mu * zeta == epsilon
  bool zeta_mu = false;       // zeta * mu == epsilon
  bool sign_free = false;     // Phi_even * zeta == epsilon + Phi_odd * zeta
  std::optional<std::string> witness_edge;
  bool pass() const { return mu_zeta && zeta_mu && sign_free; }
};

/// Verify Möbius inversion on a complete decomposition space, both in signed
/// form and in the nonnegative sign-free form.
InversionReport check_inversion(const SSetPtr& x, const FinitenessCertificate& cert);

/// (u_! F)(x) = sum of F over the fiber of u_1. Multiplicative when u is
/// semi-ikeo; never unital unless u is an equivalence on objects.
Functional pushforward(const SimplicialMap& u, const Functional& f);

}  // namespace decomp
