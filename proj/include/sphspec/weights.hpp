#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sphspec/rational.hpp"

namespace sphspec {

/// Element of (1/2)Z, stored as twice its value.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr HalfInt(std::int64_t integer) : twice_(2 * integer) {}  // NOLINT: integers are half-integers
  static constexpr HalfInt from_twice(std::int64_t twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }
  /// 1/2 + v, the common shape of spinor weight entries.
  static constexpr HalfInt half_plus(std::int64_t v) { return from_twice(2 * v + 1); }
  /// Accepts "3/2", "-1/2", "2".
  static HalfInt parse(std::string_view text);

  constexpr std::int64_t twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  Rational to_rational() const { return Rational(twice_, 2); }
  std::string to_string() const;

  constexpr HalfInt abs() const { return from_twice(twice_ < 0 ? -twice_ : twice_); }
  constexpr HalfInt operator-() const { return from_twice(-twice_); }
  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return from_twice(a.twice_ + b.twice_); }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return from_twice(a.twice_ - b.twice_); }
  friend constexpr bool operator==(HalfInt, HalfInt) = default;
  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

 private:
  std::int64_t twice_ = 0;
};

/// Highest weight of a Spin(m) representation: floor(m/2) half-integers.
class Weight {
 public:
  Weight() = default;
  explicit Weight(std::vector<HalfInt> entries) : entries_(std::move(entries)) {}
  Weight(std::initializer_list<HalfInt> entries) : entries_(entries) {}
  /// Comma separated entries, optional surrounding parentheses: "(3/2, 1/2)".
  static Weight parse(std::string_view text);

  std::size_t size() const { return entries_.size(); }
  HalfInt operator[](std::size_t i) const { return entries_[i]; }
  HalfInt& operator[](std::size_t i) { return entries_[i]; }
  const std::vector<HalfInt>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  std::string to_string() const;

  friend bool operator==(const Weight&, const Weight&) = default;
  friend auto operator<=>(const Weight&, const Weight&) = default;

 private:
  std::vector<HalfInt> entries_;
};

enum class Family { symmetric, form };
enum class Chirality { none, plus, minus };

std::string_view to_string(Family f);
std::string_view to_string(Chirality c);

/// Homogeneous bundle over S^n given by the Spin(n) type lambda it carries.
///   symmetric: V(1/2+k, 1/2, ..., [+-]1/2)  spinor-valued symmetric k-tensors
///   form:      V(3/2 x k, 1/2, ..., [+-]1/2) spinor-valued k-forms, 0 <= k < n/2
/// Both are restricted to the kernel of Clifford multiplication.
struct BundleSpec {
  int n = 3;
  int k = 0;
  Family family = Family::symmetric;
  Chirality chirality = Chirality::none;

  /// Throws DomainError unless n >= 3, k in range and chirality matches parity.
  void validate() const;
  /// The M = Spin(n) highest weight of the bundle.
  Weight lambda() const;
  bool odd() const { return n % 2 == 1; }

  friend bool operator==(const BundleSpec&, const BundleSpec&) = default;
};

/// Coordinates (eps, j, q) of a K-isotypic summand. eps is present only for
/// odd n; q is absent only for the k = 0 form bundle.
struct IsotypicLabel {
  std::optional<int> eps;
  int j = 0;
  std::optional<int> q;

  std::string to_string() const;

  friend bool operator==(const IsotypicLabel&, const IsotypicLabel&) = default;
  /// Lexicographic (j, q, eps) with eps = +1 ordered before -1.
  friend std::strong_ordering operator<=>(const IsotypicLabel& a, const IsotypicLabel& b);
};

bool validate_dominant(const Weight& w, int m);
Weight rho(int m);

/// Spin(n+1) -> Spin(n) interlacing rule. Both weights must be dominant.
bool branches(const Weight& alpha, const Weight& lambda, int n);

/// Number of admissible q values (1 when q is a fixed 0 or absent).
int q_count(const BundleSpec& b);
bool has_q(const BundleSpec& b);
bool has_eps(const BundleSpec& b);

void validate_label(const BundleSpec& b, const IsotypicLabel& lab);
Weight label_to_weight(const BundleSpec& b, const IsotypicLabel& lab);
/// Inverse of label_to_weight; nullopt if alpha is not a summand of b.
std::optional<IsotypicLabel> weight_to_label(const BundleSpec& b, const Weight& alpha);

std::vector<IsotypicLabel> enumerate_labels(const BundleSpec& b, int j_max);

/// Dense index of a label inside enumerate_labels(b, j_max) order.
std::size_t label_index(const BundleSpec& b, const IsotypicLabel& lab);

}  // namespace sphspec
