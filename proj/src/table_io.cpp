#include "sphspec/table_io.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <thread>

#include "sphspec/closed_form.hpp"
#include "sphspec/errors.hpp"
#include "sphspec/rep_oracle.hpp"
#include "sphspec/verify.hpp"

namespace sphspec {

namespace {

constexpr std::array<std::pair<std::string_view, CliOperator>, 6> kOperators{{
    {"higher-spin", CliOperator::higher_spin},
    {"higher-spin-squared", CliOperator::higher_spin_squared},
    {"Z", CliOperator::Z},
    {"D-odd", CliOperator::D_odd},
    {"P_k", CliOperator::P_k},
    {"TTstar", CliOperator::TTstar},
}};

std::size_t labels_per_j(const BundleSpec& b) {
  return static_cast<std::size_t>(q_count(b)) * (has_eps(b) ? 2 : 1);
}

// Runs fn over [0, count) split into contiguous j-blocks, one per worker.
void for_j_blocks(std::size_t count, std::size_t per_j, unsigned threads,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
  const std::size_t levels = per_j == 0 ? 0 : count / per_j;
  const std::size_t workers = std::min<std::size_t>(std::max(threads, 1u), std::max<std::size_t>(levels, 1));
  if (workers <= 1) {
    fn(0, count);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back(fn, levels * w / workers * per_j, levels * (w + 1) / workers * per_j);
  }
}

// Intrinsic order of each operator; Z and D-odd take it from the request.
Rational effective_order(const TableRequest& req) {
  switch (req.op) {
    case CliOperator::Z:
    case CliOperator::D_odd:
      return req.order_2r;
    case CliOperator::TTstar:
      return 2;
    default:
      return 1;
  }
}

void append_rational_pair(std::string& out, const Rational& r) {
  out += '[';
  out += r.num().to_string();
  out += ',';
  out += r.den().to_string();
  out += ']';
}

std::string json_entry(const SpectrumEntry& e) {
  std::string out = "    {\"eps\":";
  out += e.label.eps ? std::to_string(*e.label.eps) : "null";
  out += ",\"j\":" + std::to_string(e.label.j);
  out += ",\"q\":";
  out += e.label.q ? std::to_string(*e.label.q) : "null";
  out += ",\"weight\":[";
  for (std::size_t i = 0; i < e.weight.size(); ++i) {
    if (i) out += ',';
    append_rational_pair(out, e.weight[i].to_rational());
  }
  out += "],\"eigenvalue\":";
  if (e.eigenvalue) {
    append_rational_pair(out, *e.eigenvalue);
  } else {
    out += "null";
  }
  out += ",\"multiplicity\":\"" + e.multiplicity.to_string() + "\"}";
  return out;
}

std::string csv_row(const SpectrumEntry& e) {
  std::string out;
  if (e.label.eps) out += *e.label.eps > 0 ? "+1" : "-1";
  out += ',' + std::to_string(e.label.j) + ',';
  if (e.label.q) out += std::to_string(*e.label.q);
  if (e.eigenvalue) {
    out += ',' + e.eigenvalue->num().to_string() + ',' + e.eigenvalue->den().to_string();
  } else {
    out += ",pole,pole";
  }
  out += ',' + e.multiplicity.to_string() + ',';
  for (std::size_t i = 0; i < e.weight.size(); ++i) {
    if (i) out += ';';
    out += e.weight[i].to_rational().to_string();
  }
  out += '\n';
  return out;
}

// Renders rows in parallel j-blocks and joins them in table order.
std::string render_rows(const TableDocument& doc, unsigned threads,
                        const std::function<std::string(const SpectrumEntry&)>& row,
                        std::string_view sep) {
  const std::size_t count = doc.entries.size();
  std::vector<std::string> rows(count);
  for_j_blocks(count, labels_per_j(doc.bundle), threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) rows[i] = row(doc.entries[i]);
  });
  std::size_t total = 0;
  for (const std::string& r : rows) total += r.size() + sep.size();
  std::string out;
  out.reserve(total);
  for (std::size_t i = 0; i < count; ++i) {
    if (i) out += sep;
    out += rows[i];
  }
  return out;
}

}  // namespace

std::optional<CliOperator> parse_operator(std::string_view name) {
  for (const auto& [text, op] : kOperators) {
    if (text == name) return op;
  }
  return std::nullopt;
}

std::string_view to_string(CliOperator op) {
  for (const auto& [text, o] : kOperators) {
    if (o == op) return text;
  }
  return "?";
}

void validate_request(const TableRequest& req) {
  const BundleSpec& b = req.bundle;
  b.validate();
  if (req.j_max < 0) throw DomainError("jmax must be >= 0");
  switch (req.op) {
    case CliOperator::higher_spin:
      if (b.family != Family::symmetric) throw DomainError("higher-spin acts on the symmetric family");
      if (!b.odd()) throw DomainError("higher-spin swaps chirality for even n; use higher-spin-squared");
      break;
    case CliOperator::higher_spin_squared:
      if (b.family != Family::symmetric) throw DomainError("higher-spin-squared acts on the symmetric family");
      break;
    case CliOperator::Z:
      if (b.family != Family::form) throw DomainError("Z is defined on the form family");
      if (req.order_2r.sign() <= 0) throw DomainError("Z needs a positive order 2r");
      break;
    case CliOperator::D_odd:
      if (b.family != Family::form) throw DomainError("D-odd acts on the form family");
      OperatorSpec{OperatorKind::factored_odd_order, req.order_2r, false}.factored_l();
      break;
    case CliOperator::P_k:
    case CliOperator::TTstar:
      if (b.family != Family::form) throw DomainError(std::string(to_string(req.op)) + " acts on the form family");
      if (b.k < 1) throw DomainError(std::string(to_string(req.op)) + " needs k >= 1");
      break;
  }
}

std::optional<OperatorSpec> engine_operator(const TableRequest& req) {
  switch (req.op) {
    case CliOperator::higher_spin: return OperatorSpec::higher_spin(false);
    case CliOperator::higher_spin_squared: return OperatorSpec::higher_spin(true);
    case CliOperator::Z: return OperatorSpec::spectral(req.order_2r);
    case CliOperator::D_odd:
      return OperatorSpec{OperatorKind::factored_odd_order, req.order_2r, false};
    case CliOperator::P_k:
    case CliOperator::TTstar:
      break;
  }
  return std::nullopt;
}

std::optional<Rational> closed_form_eigen(const TableRequest& req, const IsotypicLabel& lab) {
  validate_request(req);
  const BundleSpec& b = req.bundle;
  validate_label(b, lab);
  switch (req.op) {
    case CliOperator::P_k: {
      if (b.odd()) return P_k_eigen(b.n, b.k, lab.j, *lab.q, *lab.eps);
      // n - 2k + 2q and J are positive, so E P_k is the positive root.
      const auto root = P_k_sq_eigen(b.n, b.k, lab.j, *lab.q).exact_sqrt();
      if (!root) throw InternalError("P_k^2 is not a square");
      return *root;
    }
    case CliOperator::TTstar:
      return TTstar_eigen(b.n, b.k, lab.j, *lab.q);
    default:
      return closed_form_value(b, *engine_operator(req), lab);
  }
}

bool TableDocument::has_pole() const {
  return std::any_of(entries.begin(), entries.end(), [](const SpectrumEntry& e) { return !e.eigenvalue; });
}

TableDocument build_table(const TableRequest& req) {
  validate_request(req);
  TableDocument doc{req.bundle, req.op, effective_order(req), {}};
  const auto op = engine_operator(req);
  if (op && req.source == Source::engine) {
    SpectrumTable t = propagate(req.bundle, *op, req.j_max, PropagateOptions{req.threads});
    doc.entries = std::move(t.entries);
    return doc;
  }

  const std::vector<IsotypicLabel> labels = enumerate_labels(req.bundle, req.j_max);
  doc.entries.resize(labels.size());
  const int m = req.bundle.n + 1;
  for_j_blocks(labels.size(), labels_per_j(req.bundle), req.threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      SpectrumEntry& e = doc.entries[i];
      e.label = labels[i];
      e.weight = label_to_weight(req.bundle, labels[i]);
      e.eigenvalue = closed_form_eigen(req, labels[i]);
      e.multiplicity = weyl_dim(e.weight, m);
    }
  });
  return doc;
}

std::string to_json(const TableDocument& doc, unsigned threads) {
  std::string out = "{\n  \"schema_version\": " + std::to_string(TableDocument::schema_version) + ",\n";
  out += "  \"bundle\": {\"n\": " + std::to_string(doc.bundle.n) + ", \"k\": " + std::to_string(doc.bundle.k) +
         ", \"family\": \"" + std::string(to_string(doc.bundle.family)) + "\", \"chirality\": ";
  out += doc.bundle.chirality == Chirality::none
             ? std::string("null")
             : "\"" + std::string(to_string(doc.bundle.chirality)) + "\"";
  out += "},\n  \"operator\": {\"kind\": \"" + std::string(to_string(doc.op)) + "\", \"order_2r\": ";
  append_rational_pair(out, doc.order_2r);
  out += "},\n  \"has_pole\": ";
  out += doc.has_pole() ? "true" : "false";
  out += ",\n  \"entries\": [";
  if (!doc.entries.empty()) out += "\n" + render_rows(doc, threads, json_entry, ",\n") + "\n  ";
  out += "]\n}\n";
  return out;
}

std::string to_csv(const TableDocument& doc, unsigned threads) {
  return "eps,j,q,eig_num,eig_den,multiplicity,weight\n" + render_rows(doc, threads, csv_row, "");
}

}  // namespace sphspec
