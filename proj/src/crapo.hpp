#pragma once

#include <optional>
#include <string>
#include <vector>

#include "axioms.hpp"
#include "incidence.hpp"

namespace decomp {

/// Everything the complementation checkers need, precomputed once: a complete
/// decomposition space X with a finiteness certificate, a verified convex
/// subspace K, its complement, and all Phi tables up to the cap. K-decorated
/// functionals are always pushforwards along the inclusions; convolution
/// never crosses bases.
struct CrapoContext {
  SSetPtr x;
  FinitenessCertificate cert;
  SubSSet k_sub;
  SubSSet comp_sub;
  SSetPtr k_space;
  SSetPtr comp_space;
  SimplicialMap k_incl;
  SimplicialMap comp_incl;
  FinitenessCertificate k_cert;
  FinitenessCertificate comp_cert;
  std::vector<Functional> phi_x_table;      // Phi_n^X
  std::vector<Functional> phi_k_table;      // f_!(Phi_n^K)
  std::vector<Functional> phi_comp_table;   // g_!(Phi_n^{X minus K})
  std::vector<Functional> phi_notin_table;  // Phi_n^{notin K}
  std::vector<Functional> phi_meet_table;   // Phi_n^{cap K}
  Functional zeta_k;                        // f_!(zeta^K): the K_1 indicator

  const Functional& phi_x(int n) const { return phi_x_table[static_cast<std::size_t>(n)]; }
  const Functional& phi_k(int n) const { return phi_k_table[static_cast<std::size_t>(n)]; }
  const Functional& phi_comp(int n) const { return phi_comp_table[static_cast<std::size_t>(n)]; }
};

/// Build the context from seed vertices (K = their convex hull). The ambient
/// must already be validated, complete, a decomposition space, and certified;
/// the construction re-asserts what the theory guarantees (complement
/// inheritance, Phi_0 agreement, the Scholium) and throws CheckError on any
/// violation.
CrapoContext make_crapo_context(const SSetPtr& x, const FinitenessCertificate& cert,
                                const std::vector<int>& seed_vertices);

/// Same, from an existing subspace; verifies that K classifies as convex.
CrapoContext make_crapo_context(const SSetPtr& x, const FinitenessCertificate& cert,
                                const SubSSet& k);

/// Phi_n restricted to cells with no principal edge in K (vertices may touch
/// K); n = 0 gives Phi_0.
const Functional& phi_notin(const CrapoContext& ctx, int n);
/// Phi_n restricted to cells with at least one vertex in K.
const Functional& phi_cap(const CrapoContext& ctx, int n);

struct LemmaVerdict {
  std::string name;
  bool pass = false;
  std::string detail;
  std::optional<std::string> witness_edge;
};

/// Phi_m + sum_j Phi_j*Phi_1*Phi_{m-(j+1)} = sum_k Phi_k*Phi_{m-k} inside a
/// complete decomposition space, as an exact identity, together with the
/// termwise matching of both proofs (Phi_m against the zeroth summand, and
/// the variant matching against the last).
LemmaVerdict check_k_lemma(const SSetPtr& k_space, int m);

/// Phi_n^{cap K} = sum_{p+m+q=n} Phi_p^{notin K} * Phi_m^K * Phi_q^{notin K}.
LemmaVerdict check_meet_lemma(const CrapoContext& ctx, int n);
/// Phi_s * Phi_0^K = sum_{p+i=s} Phi_p^{notin K} * Phi_i^K.
LemmaVerdict check_s_lemma(const CrapoContext& ctx, int s);
/// Phi_0^K * Phi_t = sum_{j+q=t} Phi_j^K * Phi_q^{notin K}.
LemmaVerdict check_t_lemma(const CrapoContext& ctx, int t);

struct KeyLemmaVerdict {
  bool direct = false;   // Phi_n^{cap K} + sum Phi_s*Phi_1^K*Phi_t = sum Phi_s*Phi_0^K*Phi_t
  bool replay = false;   // expansion through meet/S/T agrees with the
                         // K-lemma convolved by Phi^{notin K} on both sides
  std::optional<std::string> witness_edge;
  bool pass() const { return direct && replay; }
};

/// The Key Lemma in degree n, checked directly and by replaying its proof
/// route through the meet/S/T-lemma expansions.
KeyLemmaVerdict check_key_lemma(const CrapoContext& ctx, int n, bool replay = true);

struct CrapoRow {
  std::string edge;
  Rat mu_x;
  Rat mu_comp;
  Rat correction;  // (mu^X * zeta^K * mu^X)(edge)
};

struct CrapoVerdict {
  bool signed_identity = false;  // mu^X = mu^{X\K} + mu^X * zeta^K * mu^X
  bool signfree_even = false;    // even row of the two-row nonnegative form
  bool signfree_odd = false;     // odd row
  bool k_prop = false;           // mu^K = mu^K * zeta^K * mu^K inside K
  bool k_prop_even = false;      // its even/odd expansions inside K
  bool k_prop_odd = false;
  bool meet_prop = false;        // mu^{cap K} = mu^{notin K} * mu^K * mu^{notin K}
  bool s_prop = false;           // mu^{notin K} * mu^K = mu^X * Phi_0^K
  bool t_prop = false;           // mu^K * mu^{notin K} = Phi_0^K * mu^X
  std::vector<CrapoRow> table;
  std::optional<std::string> witness_edge;

  bool pass() const {
    return signed_identity && signfree_even && signfree_odd && k_prop && k_prop_even &&
           k_prop_odd && meet_prop && s_prop && t_prop;
  }
};

/// The complementation formula and its supporting propositions, per 1-cell
/// with exact integer arithmetic, plus the two-row sign-free form with all
/// terms nonnegative. Returns the per-edge decomposition table.
CrapoVerdict check_crapo(const CrapoContext& ctx);

}  // namespace decomp
