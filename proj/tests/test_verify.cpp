#include "doctest.h"

#include "json.hpp"
#include "sphspec/errors.hpp"
#include "sphspec/verify.hpp"

using namespace sphspec;

TEST_SUITE("verify") {

TEST_CASE("closed-form values") {
  const BundleSpec f{3, 0, Family::form};
  CHECK(closed_form_value(f, OperatorSpec::factored(1), {1, 1, std::nullopt}) == Rational(105, 8));
  CHECK(closed_form_value(f, OperatorSpec::spectral(Rational(3)), {1, 1, std::nullopt}) == Rational(7));
  CHECK(closed_form_value({4, 1, Family::symmetric, Chirality::plus}, OperatorSpec::higher_spin(true),
                          {std::nullopt, 0, 0}) == Rational(9, 4));
  CHECK_THROWS_AS(closed_form_value({4, 1, Family::symmetric, Chirality::plus}, OperatorSpec::higher_spin(),
                                    {std::nullopt, 0, 0}),
                  DomainError);
  CHECK_FALSE(spectral_value({4, 0, Family::form, Chirality::plus}, Rational(7), {std::nullopt, 2, std::nullopt}));
}

TEST_CASE("every suite passes on a small grid") {
  SuiteParams p;
  p.n_min = 3;
  p.n_max = 8;
  p.k_max = 2;
  p.l_max = 2;
  p.j_max = 6;
  const auto checks = run_suite("all", p);
  CHECK(checks.size() == 11);
  for (const auto& c : checks) {
    CHECK_MESSAGE(c.pass(), c.name << ": " << c.first_failure);
    CHECK(c.cases > 0);
  }
  const auto report = nlohmann::json::parse(report_json("all", p, checks));
  CHECK(report["pass"] == true);
  CHECK(report["checks"].size() == 11);
  CHECK(report["checks"][0]["first_failure"].is_null());
}

TEST_CASE("suite selection and parameter checks") {
  CHECK(is_suite_name("proportionality"));
  CHECK_FALSE(is_suite_name("everything"));
  SuiteParams p;
  p.n_max = 5;
  p.j_max = 3;
  CHECK(run_suite("factored-identity", p).size() == 2);
  CHECK_THROWS_AS(run_suite("nope", p), DomainError);
  p.n_min = 2;
  CHECK_THROWS_AS(run_suite("diagrams", p), DomainError);
}

TEST_CASE("a wrong engine normalization is reported with the first failing label") {
  // Mismatching closed form: compare a scaled table by hand.
  const BundleSpec b{5, 1, Family::symmetric};
  const auto rep = verify_against_closed_form(b, OperatorSpec::higher_spin(), 3);
  CHECK(rep.pass());
  VerificationReport broken = rep;
  broken.rows[2].equal = false;
  CHECK_FALSE(broken.pass());
  CHECK(broken.first_failure().find(rep.rows[2].label.to_string()) != std::string::npos);
}

}
