#include "doctest.h"

#include "oracles.hpp"
#include "sphspec/closed_form.hpp"
#include "sphspec/errors.hpp"
#include "sphspec/rep_oracle.hpp"

using namespace sphspec;

namespace {

oracle::W2 doubled(const Weight& w) {
  oracle::W2 out;
  for (HalfInt h : w) out.push_back(h.twice());
  return out;
}

Rational as_rational(const oracle::Frac& f) { return Rational(f.p, f.q); }

Chirality chir(int n) { return n % 2 ? Chirality::none : Chirality::plus; }

}  // namespace

TEST_SUITE("rep_oracle") {

TEST_CASE("casimir examples") {
  CHECK(casimir(Weight::parse("(1/2)"), 3) == Rational(3, 4));
  CHECK(casimir(Weight::parse("(0, 0, 0)"), 7) == Rational(0));
  CHECK(casimir(Weight::parse("(0, 0)"), 4) == Rational(0));
  // (3/2)(3/2 + 2) + (1/2)(1/2 + 0).
  CHECK(casimir(Weight::parse("(3/2, 1/2)"), 4) == Rational(11, 2));
  CHECK_THROWS_AS(casimir(Weight::parse("(1/2, 3/2)"), 4), DomainError);
}

TEST_CASE("casimir equals |w + rho|^2 - |rho|^2") {
  for (int n = 3; n <= 10; ++n) {
    for (int k = 0; k <= 3; ++k) {
      const BundleSpec b{n, k, Family::symmetric, chir(n)};
      for (const auto& lab : enumerate_labels(b, 8)) {
        const Weight a = label_to_weight(b, lab);
        CHECK(casimir(a, n + 1) == as_rational(oracle::casimir_shifted(doubled(a), n + 1)));
      }
    }
  }
}

TEST_CASE("casimir difference along e_i is 2 w_i + 1 + 2 rho_i") {
  for (int trial = 0; trial < 2000; ++trial) {
    const int m = oracle::uniform(3, 12);
    const std::size_t l = m / 2;
    std::vector<HalfInt> e(l);
    const int half = oracle::uniform(0, 1);
    std::int64_t cap = 2 * oracle::uniform(0, 6) + half;
    for (auto& x : e) {
      x = HalfInt::from_twice(cap);
      cap = std::max<std::int64_t>(half, cap - 2 * oracle::uniform(0, 2));
    }
    const Weight w(e);
    const std::size_t i = static_cast<std::size_t>(oracle::uniform(0, static_cast<int>(l) - 1));
    Weight up = w;
    up[i] = up[i] + HalfInt(1);
    if (!validate_dominant(up, m)) continue;
    const Rational want = Rational(2) * w[i].to_rational() + Rational(1) + Rational(2) * rho(m)[i].to_rational();
    CHECK(casimir(up, m) - casimir(w, m) == want);
  }
}

TEST_CASE("bochner examples") {
  const BundleSpec d3{3, 0, Family::symmetric};
  CHECK(bochner(Weight::parse("(1/2, 1/2)"), d3) == Rational(3, 4));
  // j = 1: 11/2 - 3/4 = 19/4 = (5/2)^2 - 3/2.
  CHECK(bochner(Weight::parse("(3/2, 1/2)"), d3) == Rational(19, 4));
  const BundleSpec rs{3, 1, Family::symmetric};
  const Rational v = bochner(Weight::parse("(3/2, 3/2)"), rs);
  CHECK(v + Rational(3 * 2, 4) + Rational(1) == Rational(25, 4));
  CHECK_THROWS_AS(bochner(Weight::parse("(5/2, 5/2)"), rs), DomainError);
}

TEST_CASE("bochner grows with j") {
  for (int n = 3; n <= 10; ++n) {
    for (int k = 0; k <= 3; ++k) {
      const BundleSpec b{n, k, Family::symmetric, chir(n)};
      for (int q = 0; q <= k; ++q) {
        IsotypicLabel lab{n % 2 ? std::optional<int>(1) : std::nullopt, 0, q};
        Rational prev = bochner(label_to_weight(b, lab), b);
        for (int j = 1; j <= 10; ++j) {
          lab.j = j;
          const Rational cur = bochner(label_to_weight(b, lab), b);
          CHECK(cur > prev);
          prev = cur;
        }
      }
    }
  }
}

TEST_CASE("weyl dimension examples") {
  CHECK(weyl_dim(Weight::parse("(1/2, 1/2)"), 4) == BigInt(2));
  CHECK(weyl_dim(Weight::parse("(0, 0, 0)"), 7) == BigInt(1));
  CHECK(weyl_dim(Weight::parse("(1, 0)"), 5) == BigInt(5));
  CHECK(weyl_dim(Weight::parse("(1, 0, 0)"), 6) == BigInt(6));
  CHECK(weyl_dim(Weight::parse("(1/2, 1/2, 1/2)"), 7) == BigInt(8));
  CHECK(weyl_dim(Weight::parse("(1, 1)"), 5) == BigInt(10));
}

TEST_CASE("weyl dimension equals branching count down to Spin(2)") {
  for (int m = 4; m <= 10; ++m) {
    for (int k = 0; k <= 2; ++k) {
      const BundleSpec b{m - 1, k, Family::symmetric, chir(m - 1)};
      for (const auto& lab : enumerate_labels(b, 3)) {
        const Weight a = label_to_weight(b, lab);
        const auto want = oracle::branching_dim(doubled(a), m);
        CHECK_MESSAGE(weyl_dim(a, m) == BigInt(static_cast<std::int64_t>(want)), a.to_string() << " m=" << m);
      }
    }
  }
}

TEST_CASE("weyl dimension is invariant under the last sign flip for even m") {
  for (int trial = 0; trial < 500; ++trial) {
    const int m = 2 * oracle::uniform(2, 6);
    const int half = oracle::uniform(0, 1);
    std::vector<HalfInt> e(m / 2);
    std::int64_t cap = 2 * oracle::uniform(1, 8) + half;
    for (auto& x : e) {
      x = HalfInt::from_twice(cap);
      cap = std::max<std::int64_t>(half, cap - 2 * oracle::uniform(0, 2));
    }
    Weight w(e), f(e);
    f[f.size() - 1] = -f[f.size() - 1];
    CHECK(weyl_dim(w, m) == weyl_dim(f, m));
    CHECK(weyl_dim(w, m) >= BigInt(1));
    CHECK(weyl_dim(w, m + 1) >= BigInt(1));
  }
}

TEST_CASE("Dirac multiplicities match the classical binomial formula") {
  for (int n : {3, 5, 7, 9}) {
    const BundleSpec b{n, 0, Family::symmetric};
    for (int j = 0; j <= 20; ++j) {
      for (int eps : {1, -1}) {
        const Weight a = label_to_weight(b, {eps, j, 0});
        CHECK(weyl_dim(a, n + 1) == BigInt(static_cast<std::int64_t>(oracle::dirac_multiplicity(n, j))));
      }
    }
  }
  for (int j = 0; j <= 20; ++j) {
    CHECK(weyl_dim(label_to_weight({3, 0, Family::symmetric}, {1, j, 0}), 4) == BigInt((j + 1) * (j + 2)));
  }
}

TEST_CASE("lichnerowicz examples") {
  const BundleSpec d3{3, 0, Family::symmetric};
  CHECK(lichnerowicz_check(d3, Weight::parse("(3/2, 1/2)"), Rational(25, 4)));
  CHECK(lichnerowicz_check({3, 1, Family::symmetric}, Weight::parse("(3/2, 3/2)"), Rational(25, 4)));
  CHECK_FALSE(lichnerowicz_check(d3, Weight::parse("(3/2, 1/2)"), Rational(6)));
}

TEST_CASE("Bochner normalization is pinned by the Lichnerowicz sweep") {
  // Only scale 1 on the Casimir difference reproduces mu^2 on every top summand.
  for (const Rational& scale : {Rational(1), Rational(2), Rational(1, 2)}) {
    bool all = true;
    for (int n = 3; n <= 9; n += 2) {
      for (int k = 0; k <= 3; ++k) {
        const BundleSpec b{n, k, Family::symmetric};
        for (int j = 0; j <= 10; ++j) {
          const Weight a = label_to_weight(b, {1, j, k});
          const Rational lhs = higher_spin_eigen(n, k, j, k, 1).pow(2);
          const Rational rhs = scale * bochner(a, b) + Rational(n * (n - 1), 4) + Rational(k);
          all = all && lhs == rhs;
        }
      }
    }
    CHECK(all == (scale == Rational(1)));
  }
}

TEST_CASE("TT* from Bochner and Dirac values matches the scalar lemma") {
  CHECK(ttstar_via_bochner(5, 1, 0) == Rational(24, 5));
  CHECK(ttstar_via_bochner(7, 2, 1) == Rational(48, 5));
  for (int n = 3; n <= 10; ++n) {
    for (int k = 1; 2 * k < n && k <= 3; ++k) {
      for (int j = 0; j <= 10; ++j) {
        CHECK(ttstar_via_bochner(n, k, j) == as_rational(oracle::ttstar_lemma(n, k, j)));
      }
    }
  }
  CHECK_THROWS_AS(ttstar_via_bochner(5, 0, 0), DomainError);
}

}
