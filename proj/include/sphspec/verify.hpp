#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sphspec/engine.hpp"

namespace sphspec {

/// Closed-form value of op on one summand of b; nullopt where the spectral
/// function has a pole. Throws DomainError for unsupported combinations.
std::optional<Rational> closed_form_value(const BundleSpec& b, const OperatorSpec& op,
                                          const IsotypicLabel& lab);

/// Spectral function Z of order 2r on a form-family summand; nullopt at a pole.
std::optional<Rational> spectral_value(const BundleSpec& b, const Rational& order_2r,
                                       const IsotypicLabel& lab);

struct VerificationRow {
  IsotypicLabel label;
  std::optional<Rational> engine;
  std::optional<Rational> closed;
  bool equal = false;
};

struct VerificationReport {
  BundleSpec bundle;
  OperatorSpec op;
  std::vector<VerificationRow> rows;
  /// Constant c with value = c * Z on every summand where Z is finite
  /// (factored operators) or 1 (spectral functions).
  std::optional<Rational> z_constant;
  bool ratio_constant = true;

  bool pass() const;
  std::string first_failure() const;
};

/// Propagates with the engine and compares every summand with the closed form.
VerificationReport verify_against_closed_form(const BundleSpec& b, const OperatorSpec& op, int j_max);

struct SuiteParams {
  int n_min = 3;
  int n_max = 9;
  int k_max = 3;
  int l_max = 3;
  int j_max = 10;
};

struct CheckResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t skipped = 0;
  std::size_t failures = 0;
  std::string first_failure;
  double seconds = 0;

  bool pass() const { return failures == 0; }
};

CheckResult check_diagrams(const SuiteParams& p);
CheckResult check_form_diagrams(const SuiteParams& p);
CheckResult check_lichnerowicz(const SuiteParams& p);
CheckResult check_closed_vs_engine(const SuiteParams& p);
CheckResult check_lattice_loops(const SuiteParams& p);
CheckResult check_factored_identity(const SuiteParams& p);
CheckResult check_ttstar_two_path(const SuiteParams& p);
CheckResult check_z_dirac_proportionality(const SuiteParams& p);
CheckResult check_d_over_z_constant(const SuiteParams& p);
CheckResult check_rarita_schwinger(const SuiteParams& p);
CheckResult check_s3_sphere_identity(const SuiteParams& p);

bool is_suite_name(std::string_view suite);

/// suite: diagrams | lichnerowicz | closed-vs-engine | factored-identity |
/// proportionality | all
std::vector<CheckResult> run_suite(std::string_view suite, const SuiteParams& p);

/// Machine-readable report; one object per check.
std::string report_json(std::string_view suite, const SuiteParams& p,
                        const std::vector<CheckResult>& checks);

}  // namespace sphspec
