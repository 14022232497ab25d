#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sphspec/rational.hpp"
#include "sphspec/weights.hpp"

namespace sphspec {

enum class OperatorKind { higher_spin, spectral_function, factored_odd_order };

/// An intertwinor A_{2r} of order 2r acting on one of the bundles.
struct OperatorSpec {
  OperatorKind kind = OperatorKind::higher_spin;
  Rational order_2r{1};
  /// Report mu^2 instead of mu. Used for even n, where R^(k) swaps chirality
  /// and only its square acts on each summand.
  bool squared = false;

  static OperatorSpec higher_spin(bool squared = false) {
    return {OperatorKind::higher_spin, Rational(1), squared};
  }
  static OperatorSpec spectral(Rational order_2r) {
    return {OperatorKind::spectral_function, std::move(order_2r), false};
  }
  /// D_{2l+1} (k = 0) or D_{2l+1,k} (k >= 1).
  static OperatorSpec factored(int l) {
    return {OperatorKind::factored_odd_order, Rational(2 * l + 1), false};
  }

  void validate() const;
  /// l with order_2r = 2l + 1; factored_odd_order only.
  int factored_l() const;
};

struct SpectrumEntry {
  IsotypicLabel label;
  Weight weight;
  /// nullopt marks a pole: the summand is cut off from the base by an edge
  /// whose compressed relation degenerates (Delta = 2r).
  std::optional<Rational> eigenvalue;
  BigInt multiplicity;
};

struct SpectrumTable {
  BundleSpec bundle;
  OperatorSpec op;
  std::vector<SpectrumEntry> entries;
  /// Edges whose relation was re-checked after the spanning-tree pass.
  std::size_t checked_relations = 0;

  bool has_pole() const;
  const SpectrumEntry& at(const IsotypicLabel& lab) const;
};

enum class EdgeKind { j_up, j_down, q_up, q_down, eps_flip, self };

std::string_view to_string(EdgeKind e);

struct Neighbor {
  IsotypicLabel label;
  EdgeKind kind;
  /// The even-n self term gives 0 * mu = 0 * mu and carries no constraint.
  bool constraining() const { return kind != EdgeKind::self; }
};

/// Summands reached from lab by multiplication with a conformal factor:
/// the K-types alpha +- e_i (and alpha itself when n is even) that still
/// branch to lambda(b). Ordered j_up, j_down, q_up, q_down, eps_flip, self.
std::vector<Neighbor> neighbors(const BundleSpec& b, const IsotypicLabel& lab);

/// (Delta + 2r)/(Delta - 2r) with Delta = bochner(dst) - bochner(src), for any
/// two valid labels. Throws PoleError when Delta = 2r.
Rational relation_quotient(const BundleSpec& b, const IsotypicLabel& src,
                           const IsotypicLabel& dst, const OperatorSpec& op);

/// relation_quotient restricted to constraining lattice edges.
Rational transition_quotient(const BundleSpec& b, const IsotypicLabel& src,
                             const IsotypicLabel& dst, const OperatorSpec& op);

/// Normalization used by propagate(b, op, j_max):
///   higher_spin: mu = +sqrt(bochner + n(n-1)/4 + k) on (+1, 0, q=k), where
///     R^(k) coincides with the Dirac-type operator;
///   spectral_function: mu = +1 on V_+(0) (k = 0) or V_+(0,1) (k >= 1);
///   factored_odd_order: D prod (D^2 - p^2) on the same summand, with D from
///     the same Bochner identity.
std::pair<IsotypicLabel, Rational> default_base(const BundleSpec& b, const OperatorSpec& op);

struct PropagateOptions {
  /// Workers for the multiplicity pass; output does not depend on it.
  unsigned threads = 1;
};

SpectrumTable propagate(const BundleSpec& b, const OperatorSpec& op,
                        const std::pair<IsotypicLabel, Rational>& base, int j_max,
                        const PropagateOptions& opts = {});
/// Uses default_base. For factored operators, every block of summands cut off
/// from the base by a pole edge is seeded the same way at its lowest
/// (+1, j, q=1) summand, so the table has no pole markers.
SpectrumTable propagate(const BundleSpec& b, const OperatorSpec& op, int j_max,
                        const PropagateOptions& opts = {});

struct LoopReport {
  std::size_t cycles = 0;
  std::size_t failures = 0;
  std::string first_failure;
  bool ok() const { return failures == 0; }
};

/// Products of transition quotients around every elementary 4-cycle built
/// from two distinct edge directions (j, q, eps), skipping cycles through a pole.
LoopReport check_four_cycles(const BundleSpec& b, const OperatorSpec& op, int j_max);

}  // namespace sphspec
