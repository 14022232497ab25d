#include "sphspec/weights.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "sphspec/errors.hpp"

namespace sphspec {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw StructuralError("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

int sign_of(int eps) { return eps >= 0 ? 1 : -1; }

}  // namespace

HalfInt HalfInt::parse(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return HalfInt(parse_int(text));
  std::int64_t num = parse_int(text.substr(0, slash));
  std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 1) return HalfInt(num);
  if (den == 2) return from_twice(num);
  if (den == -2) return from_twice(-num);
  throw StructuralError("not a half-integer: '" + std::string(text) + "'");
}

std::string HalfInt::to_string() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

Weight Weight::parse(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '(') text.remove_prefix(1);
  if (!text.empty() && text.back() == ')') text.remove_suffix(1);
  std::vector<HalfInt> entries;
  while (!trim(text).empty()) {
    auto comma = text.find(',');
    entries.push_back(HalfInt::parse(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return Weight(std::move(entries));
}

std::string Weight::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ", ";
    out += entries_[i].to_string();
  }
  return out + ")";
}

std::string_view to_string(Family f) { return f == Family::symmetric ? "symmetric" : "form"; }

std::string_view to_string(Chirality c) {
  switch (c) {
    case Chirality::plus: return "+";
    case Chirality::minus: return "-";
    case Chirality::none: break;
  }
  return "none";
}

void BundleSpec::validate() const {
  if (n < 3) throw DomainError("sphere dimension must be >= 3, got " + std::to_string(n));
  if (k < 0) throw DomainError("tensor valence must be >= 0");
  if (family == Family::form && 2 * k >= n) {
    throw DomainError("form bundle needs 0 <= k < n/2 (n=" + std::to_string(n) +
                      ", k=" + std::to_string(k) + ")");
  }
  if (odd() && chirality != Chirality::none) {
    throw DomainError("chirality only applies to even n");
  }
  if (!odd() && chirality == Chirality::none) {
    throw DomainError("even n requires chirality + or -");
  }
}

Weight BundleSpec::lambda() const {
  validate();
  const int l = n / 2;
  std::vector<HalfInt> w(l, HalfInt::half_plus(0));
  if (family == Family::symmetric) {
    w[0] = HalfInt::half_plus(k);
  } else {
    for (int i = 0; i < k; ++i) w[i] = HalfInt::half_plus(1);
  }
  if (chirality == Chirality::minus) w[l - 1] = -w[l - 1];
  return Weight(std::move(w));
}

std::string IsotypicLabel::to_string() const {
  std::ostringstream os;
  os << "(eps=";
  if (eps) os << (*eps > 0 ? "+1" : "-1"); else os << "none";
  os << ", j=" << j << ", q=";
  if (q) os << *q; else os << "none";
  os << ")";
  return os.str();
}

std::strong_ordering operator<=>(const IsotypicLabel& a, const IsotypicLabel& b) {
  if (auto c = a.j <=> b.j; c != 0) return c;
  if (auto c = a.q.value_or(-1) <=> b.q.value_or(-1); c != 0) return c;
  // +1 sorts before -1; absent eps sorts first.
  auto rank = [](const std::optional<int>& e) { return !e ? 0 : (*e > 0 ? 1 : 2); };
  return rank(a.eps) <=> rank(b.eps);
}

bool validate_dominant(const Weight& w, int m) {
  if (m < 3) throw DomainError("Spin(m) requires m >= 3");
  const std::size_t l = static_cast<std::size_t>(m / 2);
  if (w.size() != l) {
    throw StructuralError("weight " + w.to_string() + " has length " + std::to_string(w.size()) +
                          ", Spin(" + std::to_string(m) + ") needs " + std::to_string(l));
  }
  const bool integral = w[0].is_integer();
  for (auto e : w) {
    if (e.is_integer() != integral) return false;
  }
  for (std::size_t i = 0; i + 2 < l; ++i) {
    if (w[i] < w[i + 1]) return false;
  }
  if (m % 2 == 1) {
    if (l >= 2 && w[l - 2] < w[l - 1]) return false;
    return w[l - 1] >= HalfInt(0);
  }
  return l < 2 || w[l - 2] >= w[l - 1].abs();
}

Weight rho(int m) {
  if (m < 3) throw DomainError("Spin(m) requires m >= 3");
  std::vector<HalfInt> r;
  for (int i = 1; i <= m / 2; ++i) r.push_back(HalfInt::from_twice(m - 2 * i));
  return Weight(std::move(r));
}

bool branches(const Weight& alpha, const Weight& lambda, int n) {
  if (!validate_dominant(alpha, n + 1)) {
    throw DomainError("alpha " + alpha.to_string() + " is not dominant for Spin(" +
                      std::to_string(n + 1) + ")");
  }
  if (!validate_dominant(lambda, n)) {
    throw DomainError("lambda " + lambda.to_string() + " is not dominant for Spin(" +
                      std::to_string(n) + ")");
  }
  if (!(alpha[0] - lambda[0]).is_integer()) return false;
  const std::size_t l = lambda.size();
  // alpha_1 >= lambda_1 >= alpha_2 >= ... ; the tail differs by parity.
  for (std::size_t i = 0; i < l; ++i) {
    if (alpha[i] < lambda[i]) return false;
    const bool last = i + 1 == l;
    if (n % 2 == 1) {
      const HalfInt next = last ? alpha[i + 1].abs() : alpha[i + 1];
      if (lambda[i] < next) return false;
    } else if (!last) {
      if (lambda[i] < alpha[i + 1]) return false;
    } else if (alpha[i] < lambda[i].abs()) {
      return false;
    }
  }
  return true;
}

bool has_eps(const BundleSpec& b) { return b.odd(); }

bool has_q(const BundleSpec& b) { return b.family == Family::symmetric || b.k >= 1; }

int q_count(const BundleSpec& b) {
  if (b.family == Family::symmetric) return b.k + 1;
  return b.k >= 1 ? 2 : 1;
}

void validate_label(const BundleSpec& b, const IsotypicLabel& lab) {
  b.validate();
  if (lab.j < 0) throw DomainError("label j must be >= 0: " + lab.to_string());
  if (has_eps(b) != lab.eps.has_value()) {
    throw DomainError(std::string("label eps must be ") + (has_eps(b) ? "present" : "absent") +
                      " for n=" + std::to_string(b.n) + ": " + lab.to_string());
  }
  if (lab.eps && *lab.eps != 1 && *lab.eps != -1) {
    throw DomainError("label eps must be +1 or -1: " + lab.to_string());
  }
  if (has_q(b) != lab.q.has_value()) {
    throw DomainError(std::string("label q must be ") + (has_q(b) ? "present" : "absent") +
                      ": " + lab.to_string());
  }
  if (lab.q && (*lab.q < 0 || *lab.q >= q_count(b))) {
    throw DomainError("label q out of range 0.." + std::to_string(q_count(b) - 1) + ": " +
                      lab.to_string());
  }
}

Weight label_to_weight(const BundleSpec& b, const IsotypicLabel& lab) {
  validate_label(b, lab);
  const int slots = (b.n + 1) / 2;
  const int last = slots - 1;
  const int q = lab.q.value_or(0);
  std::vector<HalfInt> w(slots, HalfInt::half_plus(0));
  // Slot that carries 1/2 + q.
  int q_slot = -1;
  if (b.family == Family::symmetric) {
    w[0] = HalfInt::half_plus(b.k + lab.j);
    q_slot = 1;
  } else if (b.k == 0) {
    w[0] = HalfInt::half_plus(lab.j);
  } else {
    w[0] = HalfInt::half_plus(1 + lab.j);
    for (int i = 1; i < b.k; ++i) w[i] = HalfInt::half_plus(1);
    q_slot = b.k;
  }
  if (q_slot >= 0) w[q_slot] = HalfInt::half_plus(q);
  if (lab.eps && *lab.eps < 0) w[last] = -w[last];
  return Weight(std::move(w));
}

std::optional<IsotypicLabel> weight_to_label(const BundleSpec& b, const Weight& alpha) {
  b.validate();
  const std::size_t slots = static_cast<std::size_t>((b.n + 1) / 2);
  if (alpha.size() != slots) return std::nullopt;
  IsotypicLabel lab;
  HalfInt base = b.family == Family::symmetric ? HalfInt::half_plus(b.k)
                 : b.k == 0                    ? HalfInt::half_plus(0)
                                               : HalfInt::half_plus(1);
  HalfInt dj = alpha[0] - base;
  if (!dj.is_integer() || dj < HalfInt(0)) return std::nullopt;
  lab.j = static_cast<int>(dj.twice() / 2);
  if (has_q(b)) {
    const std::size_t q_slot = b.family == Family::symmetric ? 1 : static_cast<std::size_t>(b.k);
    HalfInt dq = alpha[q_slot].abs() - HalfInt::half_plus(0);
    if (!dq.is_integer()) return std::nullopt;
    lab.q = static_cast<int>(dq.twice() / 2);
    if (*lab.q < 0 || *lab.q >= q_count(b)) return std::nullopt;
  }
  if (has_eps(b)) {
    if (alpha[slots - 1].twice() == 0) return std::nullopt;
    lab.eps = sign_of(static_cast<int>(alpha[slots - 1].twice()));
  }
  if (label_to_weight(b, lab) != alpha) return std::nullopt;
  return lab;
}

std::vector<IsotypicLabel> enumerate_labels(const BundleSpec& b, int j_max) {
  b.validate();
  std::vector<IsotypicLabel> out;
  if (j_max < 0) return out;
  const int nq = q_count(b);
  out.reserve(static_cast<std::size_t>(j_max + 1) * nq * (has_eps(b) ? 2 : 1));
  for (int j = 0; j <= j_max; ++j) {
    for (int q = 0; q < nq; ++q) {
      IsotypicLabel lab;
      lab.j = j;
      if (has_q(b)) lab.q = q;
      if (has_eps(b)) {
        lab.eps = 1;
        out.push_back(lab);
        lab.eps = -1;
      }
      out.push_back(lab);
    }
  }
  return out;
}

std::size_t label_index(const BundleSpec& b, const IsotypicLabel& lab) {
  const std::size_t nq = static_cast<std::size_t>(q_count(b));
  const std::size_t ne = has_eps(b) ? 2 : 1;
  const std::size_t e = (lab.eps && *lab.eps < 0) ? 1 : 0;
  return (static_cast<std::size_t>(lab.j) * nq + static_cast<std::size_t>(lab.q.value_or(0))) * ne + e;
}

}  // namespace sphspec
