#include "doctest.h"

#include <sstream>

#include "json.hpp"
#include "sphspec/errors.hpp"
#include "sphspec/table_io.hpp"

using namespace sphspec;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

TableRequest request(BundleSpec b, CliOperator op, int j_max, Rational order = 1) {
  TableRequest r;
  r.bundle = b;
  r.op = op;
  r.j_max = j_max;
  r.order_2r = std::move(order);
  return r;
}

// Checks that every CSV row carries the same exact values as the JSON entry.
void check_csv_matches_json(const TableDocument& doc) {
  const auto json = nlohmann::json::parse(to_json(doc));
  const auto lines = split(to_csv(doc), '\n');
  REQUIRE(lines.front() == "eps,j,q,eig_num,eig_den,multiplicity,weight");
  const auto& entries = json.at("entries");
  REQUIRE(entries.size() + 2 == lines.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    const auto cols = split(lines[i + 1], ',');
    REQUIRE(cols.size() == 7);
    CHECK(cols[0] == (e["eps"].is_null() ? "" : (e["eps"].get<int>() > 0 ? "+1" : "-1")));
    CHECK(cols[1] == std::to_string(e["j"].get<int>()));
    CHECK(cols[2] == (e["q"].is_null() ? "" : std::to_string(e["q"].get<int>())));
    if (e["eigenvalue"].is_null()) {
      CHECK(cols[3] == "pole");
      CHECK(cols[4] == "pole");
    } else {
      CHECK(Rational::parse(cols[3] + "/" + cols[4]) ==
            Rational(BigInt::parse(e["eigenvalue"][0].dump()), BigInt::parse(e["eigenvalue"][1].dump())));
    }
    CHECK(cols[5] == e["multiplicity"].get<std::string>());
    const auto ws = split(cols[6], ';');
    REQUIRE(ws.size() == e["weight"].size());
    for (std::size_t w = 0; w < ws.size(); ++w) {
      CHECK(Rational::parse(ws[w]) == Rational(e["weight"][w][0].get<std::int64_t>(), e["weight"][w][1].get<std::int64_t>()));
    }
  }
}

}  // namespace

TEST_SUITE("table_io") {

TEST_CASE("operator names") {
  for (const char* name : {"higher-spin", "higher-spin-squared", "Z", "D-odd", "P_k", "TTstar"}) {
    const auto op = parse_operator(name);
    REQUIRE(op.has_value());
    CHECK(to_string(*op) == name);
  }
  CHECK_FALSE(parse_operator("dirac").has_value());
}

TEST_CASE("request validation") {
  CHECK_THROWS_AS(validate_request(request({4, 1, Family::symmetric, Chirality::plus}, CliOperator::higher_spin, 1)), DomainError);
  CHECK_THROWS_AS(validate_request(request({5, 3, Family::form}, CliOperator::Z, 1, 3)), DomainError);
  CHECK_THROWS_AS(validate_request(request({5, 1, Family::form}, CliOperator::D_odd, 1, 4)), DomainError);
  CHECK_THROWS_AS(validate_request(request({5, 0, Family::form}, CliOperator::TTstar, 1)), DomainError);
  CHECK_THROWS_AS(validate_request(request({5, 1, Family::symmetric}, CliOperator::P_k, 1)), DomainError);
  CHECK_NOTHROW(validate_request(request({5, 1, Family::form}, CliOperator::Z, 1, Rational(5, 3))));
}

TEST_CASE("table rows follow (j, q, eps)") {
  const auto doc = build_table(request({3, 1, Family::symmetric}, CliOperator::higher_spin, 0));
  REQUIRE(doc.entries.size() == 4);
  CHECK(doc.entries[0].eigenvalue == Rational(5, 6));
  CHECK(doc.entries[1].eigenvalue == Rational(-5, 6));
  CHECK(doc.entries[2].eigenvalue == Rational(5, 2));
  CHECK(doc.entries[3].eigenvalue == Rational(-5, 2));
  CHECK(doc.entries[0].multiplicity == BigInt(6));
  CHECK(doc.entries[2].multiplicity == BigInt(4));
}

TEST_CASE("engine and closed-form sources agree") {
  const std::vector<TableRequest> reqs{
      request({7, 2, Family::symmetric}, CliOperator::higher_spin, 8),
      request({6, 2, Family::symmetric, Chirality::minus}, CliOperator::higher_spin_squared, 8),
      request({7, 2, Family::form}, CliOperator::Z, 8, 5),
      request({6, 1, Family::form, Chirality::plus}, CliOperator::Z, 8, 7),
      request({5, 1, Family::form}, CliOperator::D_odd, 8, 3),
      request({4, 0, Family::form, Chirality::plus}, CliOperator::D_odd, 8, 7),
  };
  for (TableRequest r : reqs) {
    r.source = Source::engine;
    const std::string a = to_json(build_table(r));
    r.source = Source::closed_form;
    const std::string b = to_json(build_table(r));
    CHECK(a == b);
  }
}

TEST_CASE("JSON and CSV carry identical values") {
  check_csv_matches_json(build_table(request({5, 2, Family::symmetric}, CliOperator::higher_spin, 6)));
  check_csv_matches_json(build_table(request({4, 1, Family::symmetric, Chirality::plus}, CliOperator::higher_spin_squared, 6)));
  check_csv_matches_json(build_table(request({4, 0, Family::form, Chirality::plus}, CliOperator::Z, 6, 7)));
  check_csv_matches_json(build_table(request({5, 1, Family::form}, CliOperator::TTstar, 6)));
  check_csv_matches_json(build_table(request({6, 2, Family::form, Chirality::plus}, CliOperator::P_k, 6)));
}

TEST_CASE("JSON document shape") {
  const auto doc = build_table(request({4, 0, Family::form, Chirality::plus}, CliOperator::Z, 3, 7));
  const auto j = nlohmann::json::parse(to_json(doc));
  CHECK(j["schema_version"] == 1);
  CHECK(j["bundle"]["n"] == 4);
  CHECK(j["bundle"]["chirality"] == "+");
  CHECK(j["operator"]["kind"] == "Z");
  CHECK(j["operator"]["order_2r"] == nlohmann::json::array({7, 1}));
  CHECK(j["has_pole"] == true);
  CHECK(j["entries"][2]["eigenvalue"].is_null());
  CHECK(j["entries"][1]["eigenvalue"] == nlohmann::json::array({-6, 1}));
}

TEST_CASE("rendering is independent of the worker count") {
  auto r = request({9, 3, Family::symmetric}, CliOperator::higher_spin, 300);
  r.threads = 1;
  const auto one = build_table(r);
  r.threads = 4;
  const auto four = build_table(r);
  CHECK(to_json(one, 1) == to_json(four, 4));
  CHECK(to_csv(one, 1) == to_csv(four, 3));
  r.source = Source::closed_form;
  CHECK(to_csv(build_table(r), 2) == to_csv(one, 1));
}

TEST_CASE("even n odd-order values are the exchanged operators") {
  const auto pk = build_table(request({6, 2, Family::form, Chirality::plus}, CliOperator::P_k, 2));
  for (const auto& e : pk.entries) {
    const Rational J = Rational(3) + Rational(1 + e.label.j);
    CHECK(*e.eigenvalue == Rational(6 - 4 + 2 * *e.label.q) * J);
  }
}

}
