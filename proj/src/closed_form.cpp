#include "sphspec/closed_form.hpp"

#include <cmath>
#include <string>

#include "sphspec/errors.hpp"

namespace sphspec {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

void require_eps(int eps) { require(eps == 1 || eps == -1, "eps must be +1 or -1"); }

Rational half(int v) { return Rational(v, 2); }

// J for the spinor-form family.
Rational form_J(int n, int k, int j) { return half(n) + Rational(k >= 1 ? 1 : 0) + Rational(j); }

Rational prod_J_minus_squares(const Rational& J, int l) {
  Rational out = J;
  const Rational J2 = J * J;
  for (int p = 1; p <= l; ++p) out *= J2 - Rational(p * p);
  return out;
}

void require_form_k(int n, int k, int q) {
  require(k >= 1, "operator needs k >= 1");
  require(2 * k < n, "form bundle needs k < n/2");
  require(q == 0 || q == 1, "q must be 0 or 1");
}

}  // namespace

Rational higher_spin_eigen(int n, int k, int j, int q, int eps) {
  require(n >= 3 && n % 2 == 1, "higher_spin_eigen needs odd n >= 3 (use the squared form for even n)");
  require(k >= 0 && q >= 0 && q <= k && j >= 0, "higher_spin_eigen: need 0 <= q <= k, j >= 0");
  require_eps(eps);
  return Rational(eps) * Rational(n + 2 * q - 2, n + 2 * k - 2) * (half(n) + Rational(k + j));
}

Rational higher_spin_sq_eigen(int n, int k, int j, int q) {
  require(n >= 4 && n % 2 == 0, "higher_spin_sq_eigen needs even n >= 4");
  require(k >= 0 && q >= 0 && q <= k && j >= 0, "higher_spin_sq_eigen: need 0 <= q <= k, j >= 0");
  return (Rational(n + 2 * q - 2, n + 2 * k - 2) * (half(n) + Rational(k + j))).pow(2);
}

Rational gamma_ratio(const Rational& x, int m) {
  require(m >= 0, "gamma_ratio needs m >= 0");
  Rational out = 1;
  for (int i = 0; i < m; ++i) {
    Rational f = x + Rational(i);
    if (f.is_zero()) throw PoleError("Gamma argument " + f.to_string() + " is a pole");
    out *= f;
  }
  return out;
}

Rational GammaRatioSpec::J() const {
  return variant == ZVariant::k0 ? half(n) + Rational(j) : half(n) + Rational(1 + j);
}

Rational spectral_Z(const GammaRatioSpec& s) {
  require(s.n >= 3, "spectral_Z needs n >= 3");
  require(s.j >= 0, "spectral_Z needs j >= 0");
  require(s.r.sign() > 0, "spectral_Z needs r > 0");
  require((s.n % 2 == 1) == s.eps.has_value(), "spectral_Z: eps present iff n odd");
  if (s.eps) require_eps(*s.eps);
  if (s.variant == ZVariant::form_k) require_form_k(s.n, s.k, s.q);

  // J at j = 0; Gamma(J + 1/2 +- r) / Gamma(J0 + 1/2 +- r) are rising factorials of length j.
  const Rational J0 = s.variant == ZVariant::k0 ? half(s.n) : half(s.n) + Rational(1);
  const Rational up = gamma_ratio(J0 + Rational(1, 2) + s.r, s.j);
  const Rational down = gamma_ratio(J0 + Rational(1, 2) - s.r, s.j);
  Rational z = up / down;
  if (s.variant == ZVariant::form_k) {
    const Rational base(s.n - 2 * s.k + 1);
    z *= (base + Rational(2 * (2 * s.q - 1)) * s.r) / (base + Rational(2) * s.r);
  }
  if (s.eps) z *= Rational(*s.eps);
  return z;
}

double spectral_Z_approx(int n, int j, double r, ZVariant variant, int k, int q, int eps) {
  require(r > 0, "spectral_Z_approx needs r > 0");
  const double J = n / 2.0 + j + (variant == ZVariant::form_k ? 1.0 : 0.0);
  const double J0 = J - j;
  int sign = 1;
  auto lg = [&sign](double x) {
    int s = 1;
    const double v = lgamma_r(x, &s);
    sign *= s;
    return v;
  };
  const double log_ratio = lg(J + 0.5 + r) - lg(J0 + 0.5 + r) - lg(J + 0.5 - r) + lg(J0 + 0.5 - r);
  double z = sign * std::exp(log_ratio);
  if (variant == ZVariant::form_k) {
    const double base = n - 2 * k + 1;
    z *= (base + 2.0 * (2 * q - 1) * r) / (base + 2.0 * r);
  }
  return eps * z;
}

Rational P_k_eigen(int n, int k, int j, int q, int eps) {
  require(n % 2 == 1, "P_k_eigen needs odd n (use P_k_sq_eigen)");
  require_form_k(n, k, q);
  require(j >= 0, "j must be >= 0");
  require_eps(eps);
  return Rational(eps * (n - 2 * k + 2 * q)) * form_J(n, k, j);
}

Rational P_k_sq_eigen(int n, int k, int j, int q) {
  require(n % 2 == 0, "P_k_sq_eigen needs even n");
  require_form_k(n, k, q);
  require(j >= 0, "j must be >= 0");
  return (Rational(n - 2 * k + 2 * q) * form_J(n, k, j)).pow(2);
}

Rational TTstar_eigen(int n, int k, int j, int q) {
  require(k >= 1, "T_{k-1} is undefined for k = 0");
  require_form_k(n, k, q);
  require(j >= 0, "j must be >= 0");
  if (q == 1) return 0;
  const Rational J = form_J(n, k, j);
  const Rational shift = half(n) - Rational(k - 1);
  return Rational(n - 2 * k + 1) * (J * J - shift * shift) / Rational(k * (n - 2 * k + 2));
}

Rational c_i_const(int n, int k, int i) {
  require(k >= 1, "c_i needs k >= 1");
  const int a = n - 2 * k + 2;
  const long den = static_cast<long>(a) * (a - 2 * i) * (a + 2 * i);
  if (den == 0) {
    throw PoleError("c_i pole at n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                    ", i=" + std::to_string(i));
  }
  return Rational(16L * k * i * i, den);
}

Rational D_odd_eigen(int n, int l, int j, int eps) {
  require(n >= 3 && l >= 0 && j >= 0, "D_odd_eigen needs n >= 3, l >= 0, j >= 0");
  require_eps(eps);
  return Rational(eps) * prod_J_minus_squares(half(n) + Rational(j), l);
}

Rational D_odd_k_eigen(int n, int k, int l, int j, int q, int eps) {
  require_form_k(n, k, q);
  require(l >= 0 && j >= 0, "D_odd_k_eigen needs l >= 0, j >= 0");
  require_eps(eps);
  Rational v = Rational(eps) * prod_J_minus_squares(form_J(n, k, j), l);
  if (q == 0) v *= Rational(n - 2 * k - 2 * l, n - 2 * k + 2 + 2 * l);
  return v;
}

bool factored_identity_check(int n, int k, int l, int j, int q, int eps) {
  const Rational scale(n - 2 * k + 2);
  const Rational tt = TTstar_eigen(n, k, j, q);
  if (n % 2 == 1) {
    const Rational P = P_k_eigen(n, k, j, q, eps);
    Rational v = P / scale;
    for (int i = 1; i <= l; ++i) {
      v *= P * P / (scale * scale) - Rational(i * i) - c_i_const(n, k, i) * tt;
    }
    return v == D_odd_k_eigen(n, k, l, j, q, eps);
  }
  const Rational P2 = P_k_sq_eigen(n, k, j, q);
  Rational v2 = P2 / (scale * scale);
  for (int i = 1; i <= l; ++i) {
    v2 *= (P2 / (scale * scale) - Rational(i * i) - c_i_const(n, k, i) * tt).pow(2);
  }
  return v2 == D_odd_k_eigen(n, k, l, j, q, 1).pow(2);
}

Rational s3_ratio(int n) {
  require(n >= 3, "s3_ratio needs n >= 3");
  return Rational(n * (n + 2), 4);
}

}  // namespace sphspec
