#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sphspec/engine.hpp"

namespace sphspec {

enum class CliOperator { higher_spin, higher_spin_squared, Z, D_odd, P_k, TTstar };

std::optional<CliOperator> parse_operator(std::string_view name);
std::string_view to_string(CliOperator op);

enum class Source { engine, closed_form };

struct TableRequest {
  BundleSpec bundle;
  CliOperator op = CliOperator::higher_spin;
  Rational order_2r{1};
  int j_max = 0;
  /// P_k and TTstar are always evaluated in closed form.
  Source source = Source::engine;
  unsigned threads = 1;
};

/// Throws DomainError when the operator does not act on the requested bundle.
void validate_request(const TableRequest& req);

/// Engine operator behind a request; nullopt for closed-form-only operators.
std::optional<OperatorSpec> engine_operator(const TableRequest& req);

/// Closed-form value on one summand; nullopt at a pole of Z.
/// Even n reports chirality-exchanged values (E P_k, E D) without a sign.
std::optional<Rational> closed_form_eigen(const TableRequest& req, const IsotypicLabel& lab);

struct TableDocument {
  static constexpr int schema_version = 1;
  BundleSpec bundle;
  CliOperator op = CliOperator::higher_spin;
  Rational order_2r{1};
  std::vector<SpectrumEntry> entries;

  bool has_pole() const;
};

TableDocument build_table(const TableRequest& req);

/// Deterministic renderings; threads only splits the work by j-blocks.
std::string to_json(const TableDocument& doc, unsigned threads = 1);
std::string to_csv(const TableDocument& doc, unsigned threads = 1);

}  // namespace sphspec
