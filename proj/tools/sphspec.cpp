// sphspec: exact spectra of higher spin and odd-order conformal operators on
// round spheres.
//
//   sphspec table  --n 3 --k 1 --family symmetric --operator higher-spin --jmax 5
//   sphspec eigen  --n 5 --k 1 --family form --operator P_k --j 0 --q 1 --eps +1
//   sphspec verify --suite all --n-range 3..9 --k-max 3 --l-max 3 --jmax 10
//
// Exit codes: 0 ok, 1 usage, 2 domain error, 3 verification or internal
// failure, 4 pole encountered.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"

#include "sphspec/closed_form.hpp"
#include "sphspec/errors.hpp"
#include "sphspec/table_io.hpp"
#include "sphspec/verify.hpp"

namespace {

using namespace sphspec;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kDomain = 2;
constexpr int kFailure = 3;
constexpr int kPole = 4;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonFlags {
  int n = 0;
  int k = 0;
  std::string family = "symmetric";
  std::string op;
  std::string order_2r;
  std::string chirality;
  std::string source = "engine";
  unsigned threads = 0;
};

struct TableFlags {
  int j_max = 0;
  std::string format = "json";
  std::string out;
  bool strict = false;
};

struct EigenFlags {
  int j = 0;
  std::optional<int> q;
  std::string eps;
  bool as_float = false;
};

struct VerifyFlags {
  std::string suite = "all";
  std::string n_range = "3..9";
  int k_max = 3;
  int l_max = 3;
  int j_max = 10;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--n", f.n, "sphere dimension (>= 3)")->required();
  cmd->add_option("--k", f.k, "tensor rank / form degree")->capture_default_str();
  cmd->add_option("--family", f.family, "symmetric | form")
      ->check(CLI::IsMember({"symmetric", "form"}))
      ->capture_default_str();
  cmd->add_option("--operator", f.op, "higher-spin | higher-spin-squared | Z | D-odd | P_k | TTstar")
      ->required()
      ->check(CLI::IsMember({"higher-spin", "higher-spin-squared", "Z", "D-odd", "P_k", "TTstar"}));
  cmd->add_option("--order-2r", f.order_2r, "order 2r (Z: positive rational; D-odd: odd integer)");
  cmd->add_option("--chirality", f.chirality, "+ or - (even n only, default +)");
  cmd->add_option("--source", f.source, "engine | closed-form")
      ->check(CLI::IsMember({"engine", "closed-form"}))
      ->capture_default_str();
  cmd->add_option("--threads", f.threads, "worker threads (0 = hardware concurrency)");
}

Chirality parse_chirality(const CommonFlags& f) {
  if (f.chirality.empty()) return f.n % 2 == 1 ? Chirality::none : Chirality::plus;
  if (f.n % 2 == 1) throw DomainError("--chirality is only meaningful for even n");
  if (f.chirality == "+" || f.chirality == "plus") return Chirality::plus;
  if (f.chirality == "-" || f.chirality == "minus") return Chirality::minus;
  throw UsageError("--chirality must be + or -");
}

std::optional<Rational> try_rational(const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

TableRequest make_request(const CommonFlags& f) {
  TableRequest req;
  req.bundle = {f.n, f.k, f.family == "form" ? Family::form : Family::symmetric, parse_chirality(f)};
  req.op = *parse_operator(f.op);
  req.source = f.source == "closed-form" ? Source::closed_form : Source::engine;
  req.threads = f.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : f.threads;
  const bool takes_order = req.op == CliOperator::Z || req.op == CliOperator::D_odd;
  if (takes_order) {
    if (f.order_2r.empty()) throw UsageError("--order-2r is required for " + f.op);
    const auto r = try_rational(f.order_2r);
    if (!r) throw UsageError("--order-2r must be an exact rational such as 3 or 5/2");
    req.order_2r = *r;
  } else if (!f.order_2r.empty()) {
    throw UsageError("--order-2r applies to Z and D-odd only");
  }
  validate_request(req);
  return req;
}

int write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text << std::flush;
    return kOk;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return kFailure;
  }
  return kOk;
}

int run_table(const CommonFlags& cf, const TableFlags& tf) {
  TableRequest req = make_request(cf);
  req.j_max = tf.j_max;
  validate_request(req);
  const TableDocument doc = build_table(req);
  const bool pole = doc.has_pole();
  if (pole && tf.strict) {
    std::cerr << "error: table contains poles\n";
    return kPole;
  }
  const std::string text = tf.format == "csv" ? to_csv(doc, req.threads) : to_json(doc, req.threads);
  const int rc = write_output(text, tf.out);
  if (rc != kOk) return rc;
  if (pole) {
    std::cerr << "warning: table contains poles\n";
    return kPole;
  }
  return kOk;
}

IsotypicLabel make_label(const BundleSpec& b, const EigenFlags& ef) {
  IsotypicLabel lab;
  lab.j = ef.j;
  if (has_eps(b)) {
    if (ef.eps.empty() || ef.eps == "+1" || ef.eps == "1" || ef.eps == "+") {
      lab.eps = 1;
    } else if (ef.eps == "-1" || ef.eps == "-") {
      lab.eps = -1;
    } else {
      throw UsageError("--eps must be +1 or -1");
    }
  } else if (!ef.eps.empty()) {
    throw DomainError("--eps applies to odd n only");
  }
  if (has_q(b)) {
    if (!ef.q && q_count(b) > 1) throw UsageError("--q is required for this bundle");
    lab.q = ef.q.value_or(0);
  } else if (ef.q && *ef.q != 0) {
    throw DomainError("this bundle has no q coordinate");
  }
  validate_label(b, lab);
  return lab;
}

void print_float(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::cout << buf << "\n";
}

// Z at a real order that is not given as an exact rational.
int run_eigen_real(const CommonFlags& cf, const EigenFlags& ef) {
  if (cf.op != "Z") throw UsageError("--order-2r must be an exact rational");
  double two_r = 0;
  try {
    std::size_t used = 0;
    two_r = std::stod(cf.order_2r, &used);
    if (used != cf.order_2r.size()) throw UsageError("bad --order-2r");
  } catch (const std::logic_error&) {
    throw UsageError("--order-2r must be a number");
  }
  if (!ef.as_float) throw UsageError("a non-rational --order-2r needs --float");
  if (!(two_r > 0) || !std::isfinite(two_r)) throw DomainError("Z needs a positive order 2r");
  CommonFlags exact = cf;
  exact.order_2r = "1";
  const TableRequest req = make_request(exact);
  const IsotypicLabel lab = make_label(req.bundle, ef);
  const double z = spectral_Z_approx(req.bundle.n, lab.j, two_r / 2,
                                     req.bundle.k == 0 ? ZVariant::k0 : ZVariant::form_k,
                                     req.bundle.k, lab.q.value_or(1), lab.eps.value_or(1));
  if (!std::isfinite(z)) {
    std::cout << "pole\n";
    return kPole;
  }
  print_float(z);
  return kOk;
}

int run_eigen(const CommonFlags& cf, const EigenFlags& ef) {
  if (!cf.order_2r.empty() && (cf.op == "Z" || cf.op == "D-odd") && !try_rational(cf.order_2r)) {
    return run_eigen_real(cf, ef);
  }
  const TableRequest req = make_request(cf);
  const IsotypicLabel lab = make_label(req.bundle, ef);
  std::optional<Rational> v;
  if (const auto op = engine_operator(req); op && req.source == Source::engine) {
    v = propagate(req.bundle, *op, lab.j).at(lab).eigenvalue;
  } else {
    v = closed_form_eigen(req, lab);
  }
  if (!v) {
    std::cout << "pole\n";
    return kPole;
  }
  std::cout << v->to_string() << "\n";
  if (ef.as_float) print_float(v->to_double());
  return kOk;
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::logic_error&) {
    throw UsageError("--n-range must look like 3..9");
  }
}

int run_verify(const VerifyFlags& vf) {
  SuiteParams p;
  std::tie(p.n_min, p.n_max) = parse_range(vf.n_range);
  p.k_max = vf.k_max;
  p.l_max = vf.l_max;
  p.j_max = vf.j_max;
  const auto checks = run_suite(vf.suite, p);
  std::cout << report_json(vf.suite, p, checks);
  for (const CheckResult& c : checks) {
    if (!c.pass()) {
      std::cerr << "FAIL " << c.name << ": " << c.first_failure << "\n";
      return kFailure;
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact spectra of higher spin and odd-order conformal operators on round spheres"};
  app.require_subcommand(1);

  CommonFlags table_common;
  TableFlags tf;
  CLI::App* table = app.add_subcommand("table", "generate a spectrum table");
  add_common(table, table_common);
  table->add_option("--jmax", tf.j_max, "largest j")->required();
  table->add_option("--format", tf.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  table->add_option("--out", tf.out, "write to a file instead of standard output");
  table->add_flag("--strict", tf.strict, "emit nothing when the table contains a pole");

  CommonFlags eigen_common;
  EigenFlags ef;
  CLI::App* eigen = app.add_subcommand("eigen", "evaluate one eigenvalue");
  add_common(eigen, eigen_common);
  eigen->add_option("--j", ef.j, "j >= 0")->required();
  eigen->add_option("--q", ef.q, "q coordinate");
  eigen->add_option("--eps", ef.eps, "+1 or -1 (odd n, default +1)");
  eigen->add_flag("--float", ef.as_float, "also print a decimal value");

  VerifyFlags vf;
  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", vf.suite, "diagrams | lichnerowicz | closed-vs-engine | factored-identity | "
                                          "proportionality | all")
      ->check(CLI::IsMember({"diagrams", "lichnerowicz", "closed-vs-engine", "factored-identity",
                             "proportionality", "all"}))
      ->capture_default_str();
  verify->add_option("--n-range", vf.n_range, "inclusive range lo..hi")->capture_default_str();
  verify->add_option("--k-max", vf.k_max)->capture_default_str();
  verify->add_option("--l-max", vf.l_max)->capture_default_str();
  verify->add_option("--jmax", vf.j_max)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (table->parsed()) return run_table(table_common, tf);
    if (eigen->parsed()) return run_eigen(eigen_common, ef);
    return run_verify(vf);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const PoleError& e) {
    std::cerr << "pole: " << e.what() << "\n";
    return kPole;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kDomain;
  } catch (const StructuralError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}
