#pragma once

#include "sphspec/rational.hpp"
#include "sphspec/weights.hpp"

namespace sphspec {

/// <w, w + 2 rho> for Spin(m).
Rational casimir(const Weight& w, int m);

/// Bochner Laplacian on the alpha-isotypic summand of b over the unit sphere:
/// Casimir of alpha for Spin(n+1) minus Casimir of lambda(b) for Spin(n).
Rational bochner(const Weight& alpha, const BundleSpec& b);

/// Weyl dimension formula over the B_l (m odd) or D_l (m even) positive roots.
BigInt weyl_dim(const Weight& w, int m);

/// Square of the Dirac-type operator gamma^a nabla_a on a Clifford-trace-free
/// summand: bochner + n(n-1)/4 + k.
Rational dirac_square(const Weight& alpha, const BundleSpec& b);

bool lichnerowicz_check(const BundleSpec& b, const Weight& alpha, const Rational& mu_sq);

/// T*_{k-1} T_{k-1} on the alpha-summand of the (k-1)-form bundle, assembled
/// from Bochner and Dirac values:
///   (1/k) (nabla*nabla + (n - k + 3/2)(k - 1) - D^2/(n - 2k + 2)).
/// Its value on V_eps(j,1) over T^{k-1} equals T_{k-1} T*_{k-1} on V_eps(j,0)
/// over T^k. Requires k >= 1 and the form family.
Rational ttstar_via_bochner(int n, int k, int j);

}  // namespace sphspec
