#include "incidence.hpp"

#include <algorithm>

#include "axioms.hpp"

namespace decomp {

Functional::Functional(SSetPtr base) : base_(std::move(base)) {
  if (!base_) throw InputError("functional needs a base simplicial set");
  if (base_->cap() < 1) throw InputError("functional needs 1-cells");
  values_.assign(static_cast<std::size_t>(base_->size(1)), Rat());
}

Functional::Functional(SSetPtr base, std::vector<Rat> values) : Functional(std::move(base)) {
  if (values.size() != values_.size()) throw InputError("functional table size mismatch");
  values_ = std::move(values);
}

int Functional::support_size() const {
  int n = 0;
  for (const Rat& v : values_)
    if (!v.is_zero()) ++n;
  return n;
}

bool Functional::is_zero() const { return support_size() == 0; }

bool Functional::is_integral() const {
  return std::all_of(values_.begin(), values_.end(), [](const Rat& v) { return v.is_integer(); });
}

bool Functional::is_nonnegative() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](const Rat& v) { return v.is_nonnegative(); });
}

static void require_same_base(const Functional& a, const Functional& b) {
  if (a.base().get() != b.base().get())
    throw InputError("functionals live on different simplicial sets");
}

Functional operator+(const Functional& a, const Functional& b) {
  require_same_base(a, b);
  Functional out(a.base());
  for (int e = 0; e < a.base()->size(1); ++e) out.at(e) = a.at(e) + b.at(e);
  return out;
}

Functional operator-(const Functional& a, const Functional& b) {
  require_same_base(a, b);
  Functional out(a.base());
  for (int e = 0; e < a.base()->size(1); ++e) out.at(e) = a.at(e) - b.at(e);
  return out;
}

Functional Functional::scaled(const Rat& c) const {
  Functional out(base_);
  for (int e = 0; e < base_->size(1); ++e) out.at(e) = at(e) * c;
  return out;
}

bool operator==(const Functional& a, const Functional& b) {
  require_same_base(a, b);
  for (int e = 0; e < a.base()->size(1); ++e)
    if (a.at(e) != b.at(e)) return false;
  return true;
}

std::optional<std::string> Functional::first_difference(const Functional& a, const Functional& b) {
  require_same_base(a, b);
  for (int e = 0; e < a.base()->size(1); ++e)
    if (a.at(e) != b.at(e)) return a.base()->id(1, e);
  return std::nullopt;
}

Functional zeta(const SSetPtr& x) {
  Functional out(x);
  for (int e = 0; e < x->size(1); ++e) out.at(e) = Rat(1);
  return out;
}

Functional epsilon(const SSetPtr& x) {
  if (!is_complete(*x).pass)
    throw InputError("epsilon needs s_0 mono; the degenerate-edge indicator is ill-defined");
  Functional out(x);
  for (int v = 0; v < x->size(0); ++v) out.at(x->degeneracy(0, 0, v)) = Rat(1);
  return out;
}

Functional phi(const SSetPtr& x, int n) {
  if (n < 0 || n > x->cap()) throw InputError("phi degree exceeds cap");
  Functional out(x);
  if (n == 0) {
    for (int v = 0; v < x->size(0); ++v) out.at(x->long_edge(0, v)) += Rat(1);
    return out;
  }
  for (int c = 0; c < x->size(n); ++c)
    if (!x->is_degenerate(n, c)) out.at(x->long_edge(n, c)) += Rat(1);
  return out;
}

Functional phi_even(const SSetPtr& x) {
  Functional out(x);
  for (int n = 0; n <= x->cap(); n += 2) out = out + phi(x, n);
  return out;
}

Functional phi_odd(const SSetPtr& x) {
  Functional out(x);
  for (int n = 1; n <= x->cap(); n += 2) out = out + phi(x, n);
  return out;
}

Functional convolve(const Functional& f, const Functional& g) {
  require_same_base(f, g);
  const SSetPtr& x = f.base();
  if (x->cap() < 2) throw InputError("convolution needs cap >= 2");
  Functional out(x);
  for (int s = 0; s < x->size(2); ++s) {
    const Rat& a = f.at(x->face(2, 2, s));
    if (a.is_zero()) continue;
    const Rat& b = g.at(x->face(2, 0, s));
    if (b.is_zero()) continue;
    out.at(x->face(2, 1, s)) += a * b;
  }
  return out;
}

FinitenessCertificate certify_finiteness(const SSetPtr& x) {
  if (x->cap() < 1) throw InputError("finiteness certificate needs 1-cells");
  FinitenessCertificate cert;
  cert.locally_finite = true;
  cert.length.assign(static_cast<std::size_t>(x->size(1)), -1);
  for (int n = 0; n <= x->cap(); ++n) {
    for (int c = 0; c < x->size(n); ++c) {
      bool effective = true;
      for (int i = 1; i <= n && effective; ++i)
        effective = !x->is_degenerate(1, x->principal_edge_of(n, i, c));
      if (!effective) continue;
      int& len = cert.length[static_cast<std::size_t>(x->long_edge(n, c))];
      len = std::max(len, n);
    }
  }

  Functional top = phi(x, x->cap());
  std::optional<std::string> nonzero;
  for (int e = 0; e < x->size(1); ++e)
    if (!top.at(e).is_zero()) {
      nonzero = x->id(1, e);
      break;
    }

  if (x->provenance() == Provenance::NerveChainBound) {
    if (nonzero)
      throw CheckError("nerve chain bound violated: Phi_cap is nonzero at edge '" + *nonzero +
                       "'");
    cert.moebius_ok = true;
    cert.reason = "nerve-chain-bound";
  } else if (!nonzero) {
    cert.moebius_ok = true;
    cert.reason = "verified Phi_cap == 0 (truncation-relative)";
  } else {
    cert.moebius_ok = false;
    cert.reason = "denied: Phi_cap is nonzero";
    cert.witness_edge = nonzero;
  }
  return cert;
}

FinitenessCertificate inherit_certificate(const FinitenessCertificate& ambient_cert,
                                          const SubSSet& hull, const SSetPtr& extracted) {
  if (!hull.from_full_hull())
    throw InputError("certificate inheritance applies to full hulls only");
  FinitenessCertificate cert = certify_finiteness(extracted);
  // Lengths can only shrink along a full inclusion.
  for (int e = 0; e < extracted->size(1); ++e) {
    int ambient_edge = hull.ambient()->index_of(1, extracted->id(1, e));
    if (ambient_edge < 0) throw CheckError("hull edge missing from the ambient");
    if (cert.length[static_cast<std::size_t>(e)] >
        ambient_cert.length[static_cast<std::size_t>(ambient_edge)])
      throw CheckError("full hull increased the length of edge '" + extracted->id(1, e) + "'");
  }
  if (ambient_cert.moebius_ok && !cert.moebius_ok)
    throw CheckError("full hull of a certified space lost the Möbius condition");
  if (ambient_cert.moebius_ok) {
    cert.moebius_ok = true;
    if (cert.reason.find("nerve") == std::string::npos)
      cert.reason = "inherited: full hull of a certified space (" + ambient_cert.reason + ")";
  }
  return cert;
}

Functional moebius(const SSetPtr& x, const FinitenessCertificate& cert) {
  if (!cert.moebius_ok)
    throw InputError("Möbius functional needs a certificate: " + cert.reason);
  Functional out(x);
  for (int n = 0; n <= x->cap(); ++n) {
    Functional p = phi(x, n);
    out = (n % 2 == 0) ? out + p : out - p;
  }
  return out;
}

InversionReport check_inversion(const SSetPtr& x, const FinitenessCertificate& cert) {
  InversionReport report;
  Functional mu = moebius(x, cert);
  Functional z = zeta(x);
  Functional eps = epsilon(x);
  Functional mz = convolve(mu, z);
  Functional zm = convolve(z, mu);
  report.mu_zeta = mz == eps;
  report.zeta_mu = zm == eps;
  Functional lhs = convolve(phi_even(x), z);
  Functional rhs = eps + convolve(phi_odd(x), z);
  if (!lhs.is_nonnegative() || !rhs.is_nonnegative())
    throw CheckError("sign-free inversion produced a negative term");
  report.sign_free = lhs == rhs;
  if (!report.mu_zeta)
    report.witness_edge = Functional::first_difference(mz, eps);
  else if (!report.zeta_mu)
    report.witness_edge = Functional::first_difference(zm, eps);
  else if (!report.sign_free)
    report.witness_edge = Functional::first_difference(lhs, rhs);
  return report;
}

Functional pushforward(const SimplicialMap& u, const Functional& f) {
  if (f.base().get() != u.source().get())
    throw InputError("pushforward: functional does not live on the map source");
  Functional out(u.target());
  for (int e = 0; e < u.source()->size(1); ++e) out.at(u.apply(1, e)) += f.at(e);
  return out;
}

}  // namespace decomp
