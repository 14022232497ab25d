#include "sphspec/verify.hpp"

#include <array>
#include <chrono>
#include <stdexcept>

#include "json.hpp"

#include "sphspec/closed_form.hpp"
#include "sphspec/errors.hpp"
#include "sphspec/rep_oracle.hpp"

namespace sphspec {

namespace {

using Clock = std::chrono::steady_clock;

class Timed {
 public:
  explicit Timed(CheckResult& r) : r_(r), t0_(Clock::now()) {}
  ~Timed() { r_.seconds = std::chrono::duration<double>(Clock::now() - t0_).count(); }
  Timed(const Timed&) = delete;
  Timed& operator=(const Timed&) = delete;

 private:
  CheckResult& r_;
  Clock::time_point t0_;
};

void fail(CheckResult& r, const std::string& what) {
  if (r.failures++ == 0) r.first_failure = what;
}

void expect(CheckResult& r, bool ok, const std::string& what) {
  ++r.cases;
  if (!ok) fail(r, what);
}

std::string where(const BundleSpec& b) {
  return std::string(to_string(b.family)) + " n=" + std::to_string(b.n) + " k=" + std::to_string(b.k);
}

Chirality default_chirality(int n) { return n % 2 == 1 ? Chirality::none : Chirality::plus; }

std::vector<BundleSpec> symmetric_bundles(const SuiteParams& p) {
  std::vector<BundleSpec> out;
  for (int n = p.n_min; n <= p.n_max; ++n) {
    for (int k = 0; k <= p.k_max; ++k) out.push_back({n, k, Family::symmetric, default_chirality(n)});
  }
  return out;
}

std::vector<BundleSpec> form_bundles(const SuiteParams& p, int k_min = 0) {
  std::vector<BundleSpec> out;
  for (int n = p.n_min; n <= p.n_max; ++n) {
    for (int k = k_min; k <= p.k_max && 2 * k < n; ++k) out.push_back({n, k, Family::form, default_chirality(n)});
  }
  return out;
}

std::vector<Rational> spectral_orders(const SuiteParams& p) {
  std::vector<Rational> out;
  for (int l = 0; l <= p.l_max; ++l) out.emplace_back(2 * l + 1);
  return out;
}

std::vector<int> eps_values(const BundleSpec& b) {
  return has_eps(b) ? std::vector<int>{1, -1} : std::vector<int>{1};
}

IsotypicLabel make_label(const BundleSpec& b, int eps, int j, int q) {
  IsotypicLabel lab;
  if (has_eps(b)) lab.eps = eps;
  lab.j = j;
  if (has_q(b)) lab.q = q;
  return lab;
}

const Neighbor* find_neighbor(const std::vector<Neighbor>& nbs, EdgeKind kind) {
  for (const Neighbor& nb : nbs) {
    if (nb.kind == kind) return &nb;
  }
  return nullptr;
}

// Compares the quotient on src -> dst with num/den; den = 0 means a pole is expected.
void expect_quotient(CheckResult& r, const BundleSpec& b, const OperatorSpec& op,
                     const IsotypicLabel& src, const IsotypicLabel& dst, const Rational& num,
                     const Rational& den) {
  const std::string ctx = where(b) + " 2r=" + op.order_2r.to_string() + " " + src.to_string() +
                          " -> " + dst.to_string();
  if (den.is_zero()) {
    bool pole = false;
    try {
      transition_quotient(b, src, dst, op);
    } catch (const PoleError&) {
      pole = true;
    }
    expect(r, pole, ctx + ": expected a pole");
    return;
  }
  const Rational want = num / den;
  const Rational got = transition_quotient(b, src, dst, op);
  expect(r, got == want, ctx + ": got " + got.to_string() + ", expected " + want.to_string());
}

// Sign flip between eps = +1 and -1. On a few bundles the two summands are not
// adjacent in the weight lattice; there the relation is evaluated directly.
void expect_flip(CheckResult& r, const BundleSpec& b, const OperatorSpec& op,
                 const std::vector<Neighbor>& nbs, const IsotypicLabel& lab) {
  IsotypicLabel other = lab;
  other.eps = -*lab.eps;
  const bool adjacent = find_neighbor(nbs, EdgeKind::eps_flip) != nullptr;
  const Rational got = adjacent ? transition_quotient(b, lab, other, op)
                                : relation_quotient(b, lab, other, op);
  expect(r, got == Rational(-1),
         where(b) + " flip at " + lab.to_string() + ": got " + got.to_string());
}

void expect_even_structure(CheckResult& r, const BundleSpec& b, const std::vector<Neighbor>& nbs,
                           const IsotypicLabel& lab) {
  const bool self = find_neighbor(nbs, EdgeKind::self) != nullptr;
  const bool flip = find_neighbor(nbs, EdgeKind::eps_flip) != nullptr;
  expect(r, self && !flip, where(b) + " " + lab.to_string() + ": even n needs a self term and no flip");
}

}  // namespace

std::optional<Rational> spectral_value(const BundleSpec& b, const Rational& order_2r,
                                       const IsotypicLabel& lab) {
  if (b.family != Family::form) throw DomainError("spectral functions are defined on the form family");
  validate_label(b, lab);
  GammaRatioSpec s;
  s.n = b.n;
  s.j = lab.j;
  s.r = order_2r / Rational(2);
  s.variant = b.k == 0 ? ZVariant::k0 : ZVariant::form_k;
  s.k = b.k;
  s.q = lab.q.value_or(1);
  s.eps = lab.eps;
  try {
    return spectral_Z(s);
  } catch (const PoleError&) {
    return std::nullopt;
  }
}

std::optional<Rational> closed_form_value(const BundleSpec& b, const OperatorSpec& op,
                                          const IsotypicLabel& lab) {
  b.validate();
  op.validate();
  validate_label(b, lab);
  const int eps = lab.eps.value_or(1);
  switch (op.kind) {
    case OperatorKind::higher_spin: {
      if (b.family != Family::symmetric) throw DomainError("higher spin operators live on the symmetric family");
      const int q = lab.q.value_or(0);
      if (b.odd()) {
        const Rational mu = higher_spin_eigen(b.n, b.k, lab.j, q, eps);
        return op.squared ? mu * mu : mu;
      }
      if (!op.squared) throw DomainError("for even n only the square of a higher spin operator acts on a summand");
      return higher_spin_sq_eigen(b.n, b.k, lab.j, q);
    }
    case OperatorKind::spectral_function:
      return spectral_value(b, op.order_2r, lab);
    case OperatorKind::factored_odd_order: {
      if (b.family != Family::form) throw DomainError("factored operators act on the form family");
      const int l = op.factored_l();
      if (b.k == 0) return D_odd_eigen(b.n, l, lab.j, eps);
      return D_odd_k_eigen(b.n, b.k, l, lab.j, *lab.q, eps);
    }
  }
  throw InternalError("unknown operator kind");
}

bool VerificationReport::pass() const {
  if (!ratio_constant) return false;
  for (const VerificationRow& row : rows) {
    if (!row.equal) return false;
  }
  return true;
}

std::string VerificationReport::first_failure() const {
  auto show = [](const std::optional<Rational>& v) { return v ? v->to_string() : std::string("pole"); };
  for (const VerificationRow& row : rows) {
    if (!row.equal) {
      return where(bundle) + " 2r=" + op.order_2r.to_string() + " " + row.label.to_string() +
             ": engine " + show(row.engine) + ", closed form " + show(row.closed);
    }
  }
  if (!ratio_constant) return where(bundle) + " 2r=" + op.order_2r.to_string() + ": ratio to Z is not constant";
  return {};
}

VerificationReport verify_against_closed_form(const BundleSpec& b, const OperatorSpec& op, int j_max) {
  const SpectrumTable t = propagate(b, op, j_max);
  VerificationReport rep{b, op, {}, std::nullopt, true};
  if (op.kind == OperatorKind::spectral_function) rep.z_constant = Rational(1);
  rep.rows.reserve(t.entries.size());

  for (const SpectrumEntry& e : t.entries) {
    VerificationRow row{e.label, e.eigenvalue, closed_form_value(b, op, e.label), false};
    switch (op.kind) {
      case OperatorKind::higher_spin:
        row.equal = row.engine && row.closed && *row.engine == *row.closed;
        break;
      case OperatorKind::spectral_function:
        row.equal = row.engine == row.closed;
        break;
      case OperatorKind::factored_odd_order: {
        const auto z = spectral_value(b, op.order_2r, e.label);
        row.equal = row.engine && row.closed && *row.engine == *row.closed;
        if (z && row.closed) {
          if (z->is_zero()) {
            rep.ratio_constant = rep.ratio_constant && row.closed->is_zero();
          } else {
            const Rational c = *row.closed / *z;
            if (!rep.z_constant) rep.z_constant = c;
            rep.ratio_constant = rep.ratio_constant && *rep.z_constant == c;
          }
        }
        break;
      }
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

CheckResult check_diagrams(const SuiteParams& p) {
  CheckResult r;
  r.name = "diagrams-higher-spin";
  Timed timer(r);
  const OperatorSpec op = OperatorSpec::higher_spin();
  for (const BundleSpec& b : symmetric_bundles(p)) {
    const int n = b.n;
    for (int eps : eps_values(b)) {
      for (int q = 0; q <= b.k; ++q) {
        for (int j = 0; j <= p.j_max; ++j) {
          const IsotypicLabel lab = make_label(b, eps, j, q);
          const auto nbs = neighbors(b, lab);
          const Rational J = Rational(n, 2) + Rational(b.k + j);
          expect_quotient(r, b, op, lab, make_label(b, eps, j + 1, q), J + Rational(1), J);
          if (j >= 1) expect_quotient(r, b, op, lab, make_label(b, eps, j - 1, q), J - Rational(1), J);
          if (q < b.k) {
            expect_quotient(r, b, op, lab, make_label(b, eps, j, q + 1), n + 2 * q, n + 2 * q - 2);
          }
          if (q >= 1) {
            expect_quotient(r, b, op, lab, make_label(b, eps, j, q - 1), n + 2 * q - 4, n + 2 * q - 2);
          }
          if (b.odd()) {
            expect_flip(r, b, op, nbs, lab);
          } else {
            expect_even_structure(r, b, nbs, lab);
          }
        }
      }
    }
  }
  return r;
}

CheckResult check_form_diagrams(const SuiteParams& p) {
  CheckResult r;
  r.name = "diagrams-spinor-forms";
  Timed timer(r);
  for (const BundleSpec& b : form_bundles(p)) {
    const int n = b.n;
    for (int l = 0; l <= p.l_max; ++l) {
      const OperatorSpec op = OperatorSpec::spectral(Rational(2 * l + 1));
      const Rational rr(2 * l + 1, 2);
      const Rational half(1, 2);
      const int q_top = has_q(b) ? 1 : 0;
      for (int eps : eps_values(b)) {
        for (int q = 0; q <= q_top; ++q) {
          for (int j = 0; j <= p.j_max; ++j) {
            const IsotypicLabel lab = make_label(b, eps, j, q);
            const auto nbs = neighbors(b, lab);
            const Rational J = Rational(n, 2) + Rational((b.k >= 1 ? 1 : 0) + j);
            expect_quotient(r, b, op, lab, make_label(b, eps, j + 1, q), J + half + rr, J + half - rr);
            if (j >= 1) {
              expect_quotient(r, b, op, lab, make_label(b, eps, j - 1, q), -J + half + rr, -J + half - rr);
            }
            if (has_q(b)) {
              const Rational base(n - 2 * b.k + 1);
              const Rational two_r = rr * Rational(2);
              if (q == 1) {
                expect_quotient(r, b, op, lab, make_label(b, eps, j, 0), base - two_r, base + two_r);
              } else {
                expect_quotient(r, b, op, lab, make_label(b, eps, j, 1), base + two_r, base - two_r);
              }
            }
            if (b.odd()) {
              expect_flip(r, b, op, nbs, lab);
            } else {
              expect_even_structure(r, b, nbs, lab);
            }
          }
        }
      }
    }
  }
  return r;
}

CheckResult check_lichnerowicz(const SuiteParams& p) {
  CheckResult r;
  r.name = "lichnerowicz";
  Timed timer(r);
  for (const BundleSpec& b : symmetric_bundles(p)) {
    for (int j = 0; j <= p.j_max; ++j) {
      const IsotypicLabel lab = make_label(b, 1, j, b.k);
      const Weight alpha = label_to_weight(b, lab);
      const Rational mu2 = b.odd() ? higher_spin_eigen(b.n, b.k, j, b.k, 1).pow(2)
                                   : higher_spin_sq_eigen(b.n, b.k, j, b.k);
      expect(r, lichnerowicz_check(b, alpha, mu2),
             where(b) + " j=" + std::to_string(j) + ": mu^2 = " + mu2.to_string() +
                 ", Dirac square " + dirac_square(alpha, b).to_string());
    }
  }
  for (const BundleSpec& b : form_bundles(p)) {
    for (int j = 0; j <= p.j_max; ++j) {
      const IsotypicLabel lab = make_label(b, 1, j, 1);
      const Rational J = Rational(b.n, 2) + Rational((b.k >= 1 ? 1 : 0) + j);
      const Weight alpha = label_to_weight(b, lab);
      expect(r, lichnerowicz_check(b, alpha, J * J),
             where(b) + " j=" + std::to_string(j) + ": J^2 = " + (J * J).to_string() +
                 ", Dirac square " + dirac_square(alpha, b).to_string());
    }
  }
  return r;
}

namespace {

std::vector<std::pair<BundleSpec, OperatorSpec>> engine_cases(const SuiteParams& p) {
  std::vector<std::pair<BundleSpec, OperatorSpec>> out;
  for (const BundleSpec& b : symmetric_bundles(p)) out.emplace_back(b, OperatorSpec::higher_spin(!b.odd()));
  for (const BundleSpec& b : form_bundles(p)) {
    for (const Rational& o : spectral_orders(p)) out.emplace_back(b, OperatorSpec::spectral(o));
    for (int l = 0; l <= p.l_max; ++l) out.emplace_back(b, OperatorSpec::factored(l));
  }
  return out;
}

}  // namespace

CheckResult check_closed_vs_engine(const SuiteParams& p) {
  CheckResult r;
  r.name = "closed-vs-engine";
  Timed timer(r);
  for (const auto& [b, op] : engine_cases(p)) {
    try {
      const VerificationReport rep = verify_against_closed_form(b, op, p.j_max);
      r.cases += rep.rows.size();
      for (const VerificationRow& row : rep.rows) {
        if (!row.engine) ++r.skipped;
      }
      if (!rep.pass()) fail(r, rep.first_failure());
    } catch (const Error& e) {
      fail(r, where(b) + " 2r=" + op.order_2r.to_string() + ": " + e.what());
    }
  }
  return r;
}

CheckResult check_lattice_loops(const SuiteParams& p) {
  CheckResult r;
  r.name = "lattice-loops";
  Timed timer(r);
  for (const auto& [b, op] : engine_cases(p)) {
    const LoopReport rep = check_four_cycles(b, op, p.j_max);
    r.cases += rep.cycles;
    if (!rep.ok()) fail(r, where(b) + " 2r=" + op.order_2r.to_string() + ": " + rep.first_failure);
  }
  return r;
}

CheckResult check_factored_identity(const SuiteParams& p) {
  CheckResult r;
  r.name = "factored-identity";
  Timed timer(r);
  for (const BundleSpec& b : form_bundles(p, 1)) {
    for (int l = 1; l <= p.l_max; ++l) {
      for (int eps : eps_values(b)) {
        for (int q = 0; q <= 1; ++q) {
          for (int j = 0; j <= p.j_max; ++j) {
            const std::string ctx = where(b) + " l=" + std::to_string(l) + " " +
                                    make_label(b, eps, j, q).to_string();
            try {
              expect(r, factored_identity_check(b.n, b.k, l, j, q, eps), ctx);
            } catch (const PoleError&) {
              // Some c_i has a vanishing denominator: the factored form is undefined.
              ++r.skipped;
            }
          }
        }
      }
    }
  }
  return r;
}

CheckResult check_ttstar_two_path(const SuiteParams& p) {
  CheckResult r;
  r.name = "ttstar-two-path";
  Timed timer(r);
  for (const BundleSpec& b : form_bundles(p, 1)) {
    for (int j = 0; j <= p.j_max; ++j) {
      const Rational direct = TTstar_eigen(b.n, b.k, j, 0);
      const Rational via = ttstar_via_bochner(b.n, b.k, j);
      expect(r, direct == via,
             where(b) + " j=" + std::to_string(j) + ": " + direct.to_string() + " vs " + via.to_string());
      expect(r, TTstar_eigen(b.n, b.k, j, 1).is_zero(), where(b) + " j=" + std::to_string(j) + ": q=1 not zero");
    }
  }
  return r;
}

CheckResult check_z_dirac_proportionality(const SuiteParams& p) {
  CheckResult r;
  r.name = "z-half-is-dirac";
  Timed timer(r);
  for (int n = p.n_min; n <= p.n_max; ++n) {
    const BundleSpec b{n, 0, Family::form, default_chirality(n)};
    for (int eps : eps_values(b)) {
      for (int j = 0; j <= p.j_max; ++j) {
        const IsotypicLabel lab = make_label(b, eps, j, 0);
        const auto z = spectral_value(b, Rational(1), lab);
        const Rational want = Rational(eps) * (Rational(n, 2) + Rational(j));
        expect(r, z && *z * Rational(n, 2) == want, where(b) + " " + lab.to_string());
      }
    }
  }
  return r;
}

CheckResult check_d_over_z_constant(const SuiteParams& p) {
  CheckResult r;
  r.name = "d-over-z-constant";
  Timed timer(r);
  for (const BundleSpec& b : form_bundles(p)) {
    for (int l = 0; l <= p.l_max; ++l) {
      const OperatorSpec op = OperatorSpec::factored(l);
      std::optional<Rational> c;
      for (const IsotypicLabel& lab : enumerate_labels(b, p.j_max)) {
        const auto z = spectral_value(b, op.order_2r, lab);
        const auto d = closed_form_value(b, op, lab);
        const std::string ctx = where(b) + " l=" + std::to_string(l) + " " + lab.to_string();
        if (!z) {
          ++r.skipped;
          continue;
        }
        if (z->is_zero()) {
          expect(r, d->is_zero(), ctx + ": Z vanishes but D does not");
          continue;
        }
        const Rational ratio = *d / *z;
        if (!c) c = ratio;
        expect(r, ratio == *c, ctx + ": ratio " + ratio.to_string() + " vs " + c->to_string());
      }
    }
  }
  return r;
}

CheckResult check_rarita_schwinger(const SuiteParams& p) {
  CheckResult r;
  r.name = "rarita-schwinger";
  Timed timer(r);
  for (int n = std::max(p.n_min, 3); n <= p.n_max; ++n) {
    const BundleSpec forms{n, 1, Family::form, default_chirality(n)};
    const BundleSpec sym{n, 1, Family::symmetric, default_chirality(n)};
    for (const IsotypicLabel& lab : enumerate_labels(forms, p.j_max)) {
      const std::string ctx = "n=" + std::to_string(n) + " " + lab.to_string();
      expect(r, label_to_weight(forms, lab) == label_to_weight(sym, lab), ctx + ": bundles disagree");
      const auto z = spectral_value(forms, Rational(1), lab);
      if (!z) {
        fail(r, ctx + ": unexpected pole");
        continue;
      }
      const Rational scaled = *z * Rational(n + 2, 2);
      if (forms.odd()) {
        expect(r, scaled == higher_spin_eigen(n, 1, lab.j, *lab.q, *lab.eps), ctx);
      } else {
        expect(r, scaled * scaled == higher_spin_sq_eigen(n, 1, lab.j, *lab.q), ctx);
      }
    }
  }
  return r;
}

CheckResult check_s3_sphere_identity(const SuiteParams& p) {
  CheckResult r;
  r.name = "s3-sphere";
  Timed timer(r);
  for (int n = std::max(p.n_min, 3); n <= p.n_max; ++n) {
    const BundleSpec b{n, 1, Family::form, default_chirality(n)};
    for (const IsotypicLabel& lab : enumerate_labels(b, p.j_max)) {
      const int eps = lab.eps.value_or(1);
      const int q = *lab.q;
      // For even n, P and D stand for their chirality-exchanged versions.
      const Rational P = b.odd() ? P_k_eigen(n, 1, lab.j, q, eps)
                                 : Rational(n - 2 + 2 * q) * (Rational(n, 2) + Rational(1 + lab.j));
      const Rational tt = TTstar_eigen(n, 1, lab.j, q);
      const Rational s3 = Rational(n + 2, 4 * n * n) * P.pow(3) - Rational(4, n * (n - 2)) * tt * P -
                          Rational(n + 2, 4) * P;
      const Rational d3 = D_odd_k_eigen(n, 1, 1, lab.j, q, eps);
      expect(r, s3 == s3_ratio(n) * d3,
             "n=" + std::to_string(n) + " " + lab.to_string() + ": S3 " + s3.to_string() +
                 ", D3 " + d3.to_string());
    }
  }
  return r;
}

bool is_suite_name(std::string_view suite) {
  static constexpr std::array names{"diagrams", "lichnerowicz", "closed-vs-engine",
                                    "factored-identity", "proportionality", "all"};
  for (std::string_view s : names) {
    if (s == suite) return true;
  }
  return false;
}

std::vector<CheckResult> run_suite(std::string_view suite, const SuiteParams& p) {
  if (!is_suite_name(suite)) throw DomainError("unknown suite: " + std::string(suite));
  if (p.n_min < 3 || p.n_max < p.n_min || p.k_max < 0 || p.l_max < 0 || p.j_max < 0) {
    throw DomainError("invalid suite parameters");
  }
  const bool all = suite == "all";
  std::vector<CheckResult> out;
  if (all || suite == "diagrams") {
    out.push_back(check_diagrams(p));
    out.push_back(check_form_diagrams(p));
  }
  if (all || suite == "lichnerowicz") out.push_back(check_lichnerowicz(p));
  if (all || suite == "closed-vs-engine") {
    out.push_back(check_closed_vs_engine(p));
    out.push_back(check_lattice_loops(p));
  }
  if (all || suite == "factored-identity") {
    out.push_back(check_factored_identity(p));
    out.push_back(check_ttstar_two_path(p));
  }
  if (all || suite == "proportionality") {
    out.push_back(check_z_dirac_proportionality(p));
    out.push_back(check_d_over_z_constant(p));
    out.push_back(check_rarita_schwinger(p));
    out.push_back(check_s3_sphere_identity(p));
  }
  return out;
}

std::string report_json(std::string_view suite, const SuiteParams& p,
                        const std::vector<CheckResult>& checks) {
  nlohmann::ordered_json doc;
  doc["suite"] = suite;
  doc["params"] = {{"n_min", p.n_min}, {"n_max", p.n_max}, {"k_max", p.k_max},
                   {"l_max", p.l_max}, {"j_max", p.j_max}};
  bool pass = true;
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const CheckResult& c : checks) {
    pass = pass && c.pass();
    list.push_back({{"name", c.name},
                    {"pass", c.pass()},
                    {"cases", c.cases},
                    {"skipped", c.skipped},
                    {"failures", c.failures},
                    {"first_failure", c.first_failure.empty() ? nlohmann::ordered_json(nullptr)
                                                              : nlohmann::ordered_json(c.first_failure)},
                    {"seconds", c.seconds}});
  }
  doc["checks"] = std::move(list);
  doc["pass"] = pass;
  return doc.dump(2) + "\n";
}

}  // namespace sphspec
