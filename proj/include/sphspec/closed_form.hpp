#pragma once

#include <optional>

#include "sphspec/rational.hpp"

namespace sphspec {

// Closed-form eigenvalues on the isotypic summands V_eps(j,q) of the round
// unit sphere S^n. Throughout, J = n/2 + k + j for the higher spin family and
// J = n/2 + j (k = 0) or n/2 + 1 + j (k >= 1) for spinor-forms.

/// Higher spin operator R^(k), n odd: eps (n+2q-2)/(n+2k-2) (n/2+k+j).
Rational higher_spin_eigen(int n, int k, int j, int q, int eps);

/// (R^(k))^2 for n even: [(n+2q-2)/(n+2k-2) (n/2+k+j)]^2.
Rational higher_spin_sq_eigen(int n, int k, int j, int q);

/// Gamma(x+m)/Gamma(x) as the rising factorial x (x+1) ... (x+m-1).
/// Throws PoleError if some factor vanishes (a Gamma argument hits a pole).
Rational gamma_ratio(const Rational& x, int m);

enum class ZVariant { k0, form_k };

/// Arguments of the spectral function Z of the order-2r intertwinor on
/// spinor-forms. eps is present for odd n only; q is used for form_k.
struct GammaRatioSpec {
  int n = 3;
  int j = 0;
  Rational r{1, 2};
  ZVariant variant = ZVariant::k0;
  int k = 0;
  int q = 1;
  std::optional<int> eps;

  Rational J() const;
};

/// Exact spectral function, normalized to eps on V_eps(0) (k = 0) or on
/// V_eps(0,1) (k >= 1); +1 for even n. The Gamma arguments of numerator and
/// denominator differ by the integer j, so the ratio is rational for every
/// rational r > 0.
Rational spectral_Z(const GammaRatioSpec& spec);

/// Floating evaluation through log-Gamma for arbitrary real r > 0
/// (relative accuracy about 1e-12 away from poles).
double spectral_Z_approx(int n, int j, double r, ZVariant variant, int k, int q, int eps);

/// P_k on V_eps(j,q), n odd: eps (n-2k+2q) J.
Rational P_k_eigen(int n, int k, int j, int q, int eps);

/// P_k^2 on V(j,q), n even: (n-2k+2q)^2 J^2.
Rational P_k_sq_eigen(int n, int k, int j, int q);

/// T_{k-1} T*_{k-1}: 0 on q = 1, (n-2k+1)(J^2-(n/2-k+1)^2)/(k(n-2k+2)) on q = 0.
Rational TTstar_eigen(int n, int k, int j, int q);

/// c_i = 16 k i^2 / ((n-2k+2)(n-2k+2-2i)(n-2k+2+2i)).
Rational c_i_const(int n, int k, int i);

/// D_{2l+1} = D prod_{p=1..l}(D^2 - p^2) on V_eps(j): eps J prod (J^2 - p^2).
/// For even n this is the value of the exchanged operator E D_{2l+1}; pass eps = 1.
Rational D_odd_eigen(int n, int l, int j, int eps);

/// D_{2l+1,k} on V_eps(j,q), k >= 1. The q = 0 value carries the factor
/// (n-2k-2l)/(n-2k+2+2l). For even n pass eps = 1 (exchanged operator).
Rational D_odd_k_eigen(int n, int k, int l, int j, int q, int eps);

/// Evaluates the factored definition of D_{2l+1,k} from P_k, c_i and
/// T_{k-1}T*_{k-1} eigenvalues and compares with D_odd_k_eigen. For even n the
/// comparison is between squares, built from P_k_sq_eigen.
bool factored_identity_check(int n, int k, int l, int j, int q, int eps);

/// n(n+2)/4, the factor relating S_3 to D_{3,1} on the round sphere.
Rational s3_ratio(int n);

}  // namespace sphspec
