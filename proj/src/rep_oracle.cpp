#include "sphspec/rep_oracle.hpp"

#include <vector>

#include "sphspec/errors.hpp"

namespace sphspec {

namespace {

void require_dominant(const Weight& w, int m) {
  if (!validate_dominant(w, m)) {
    throw DomainError("weight " + w.to_string() + " is not dominant for Spin(" +
                      std::to_string(m) + ")");
  }
}

// Product of <v, beta> over positive roots, with v given doubled.
mpz_class root_product(const std::vector<std::int64_t>& twice_v, bool odd_m) {
  mpz_class prod = 1;
  const std::size_t l = twice_v.size();
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = i + 1; j < l; ++j) {
      prod *= static_cast<long>(twice_v[i] - twice_v[j]);
      prod *= static_cast<long>(twice_v[i] + twice_v[j]);
    }
    if (odd_m) prod *= static_cast<long>(twice_v[i]);
  }
  return prod;
}

}  // namespace

Rational casimir(const Weight& w, int m) {
  require_dominant(w, m);
  const Weight r = rho(m);
  // w_i (w_i + 2 rho_i) = a (a + 2 s) / 4 with a = 2 w_i, s = 2 rho_i.
  __int128 acc = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const __int128 a = w[i].twice();
    acc += a * (a + 2 * r[i].twice());
  }
  if (acc > INT64_MAX || acc < INT64_MIN) throw DomainError("casimir overflow");
  return Rational(static_cast<std::int64_t>(acc), 4);
}

Rational bochner(const Weight& alpha, const BundleSpec& b) {
  const Weight lambda = b.lambda();
  if (!branches(alpha, lambda, b.n)) {
    throw DomainError("alpha " + alpha.to_string() + " does not branch to lambda " +
                      lambda.to_string());
  }
  return casimir(alpha, b.n + 1) - casimir(lambda, b.n);
}

BigInt weyl_dim(const Weight& w, int m) {
  require_dominant(w, m);
  const Weight r = rho(m);
  std::vector<std::int64_t> shifted(w.size()), base(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    shifted[i] = w[i].twice() + r[i].twice();
    base[i] = r[i].twice();
  }
  const bool odd_m = m % 2 == 1;
  mpz_class num = root_product(shifted, odd_m);
  const mpz_class den = root_product(base, odd_m);
  // Both products carry the same number of factors 2, so the quotient is exact.
  mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return BigInt(std::move(num));
}

Rational dirac_square(const Weight& alpha, const BundleSpec& b) {
  return bochner(alpha, b) + Rational(b.n * (b.n - 1), 4) + Rational(b.k);
}

bool lichnerowicz_check(const BundleSpec& b, const Weight& alpha, const Rational& mu_sq) {
  return mu_sq == dirac_square(alpha, b);
}

Rational ttstar_via_bochner(int n, int k, int j) {
  if (k < 1) throw DomainError("T_{k-1} needs k >= 1");
  const BundleSpec top{n, k, Family::form, n % 2 ? Chirality::none : Chirality::plus};
  top.validate();
  const BundleSpec lower{n, k - 1, Family::form, top.chirality};
  IsotypicLabel lab;
  lab.j = j;
  lab.q = 0;
  if (n % 2) lab.eps = 1;
  // K-type of V_eps(j,0) over T^k; it is also the top summand of T^{k-1}.
  const Weight alpha = label_to_weight(top, lab);
  const Rational lap = bochner(alpha, lower);
  const Rational d2 = dirac_square(alpha, lower);
  return (lap + (Rational(n - k) + Rational(3, 2)) * Rational(k - 1) -
          d2 / Rational(n - 2 * k + 2)) /
         Rational(k);
}

}  // namespace sphspec
