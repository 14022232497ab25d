#include "sphspec/engine.hpp"

#include <algorithm>
#include <thread>

#include "sphspec/errors.hpp"
#include "sphspec/rep_oracle.hpp"

namespace sphspec {

namespace {

// 4 * <w, w + 2 rho> for the K = Spin(n+1) weights of one bundle.
std::int64_t casimir4(const Weight& w, const Weight& rho_k) {
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    acc += w[i].twice() * (w[i].twice() + 2 * rho_k[i].twice());
  }
  return acc;
}

EdgeKind classify(const IsotypicLabel& src, const IsotypicLabel& dst) {
  if (dst.j != src.j) return dst.j > src.j ? EdgeKind::j_up : EdgeKind::j_down;
  if (dst.q != src.q) return dst.q > src.q ? EdgeKind::q_up : EdgeKind::q_down;
  if (dst.eps != src.eps) return EdgeKind::eps_flip;
  return EdgeKind::self;
}

std::vector<Neighbor> neighbors_of(const BundleSpec& b, const Weight& lambda,
                                   const IsotypicLabel& lab, const Weight& alpha) {
  std::vector<Neighbor> out;
  const int m = b.n + 1;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    for (int step : {1, -1}) {
      Weight cand = alpha;
      cand[i] = HalfInt::from_twice(cand[i].twice() + 2 * step);
      if (!validate_dominant(cand, m) || !branches(cand, lambda, b.n)) continue;
      auto dst = weight_to_label(b, cand);
      if (!dst) {
        throw InternalError("weight " + cand.to_string() + " branches but has no label");
      }
      out.push_back({*dst, classify(lab, *dst)});
    }
  }
  // The vector representation of Spin(n+1) has a zero weight for n even.
  if (!b.odd()) out.push_back({lab, EdgeKind::self});
  std::stable_sort(out.begin(), out.end(),
                   [](const Neighbor& x, const Neighbor& y) { return x.kind < y.kind; });
  return out;
}

struct TwoR {
  std::int64_t num;
  std::int64_t den;
};

TwoR split(const Rational& r) { return {r.num().to_int64(), r.den().to_int64()}; }

// (Delta + 2r)/(Delta - 2r) with Delta = delta4 / 4 and 2r = p/q, i.e.
// (delta4 q + 4p)/(delta4 q - 4p). nullopt at the pole.
std::optional<Rational> quotient_from_delta4(std::int64_t delta4, TwoR two_r) {
  const std::int64_t den = delta4 * two_r.den - 4 * two_r.num;
  if (den == 0) return std::nullopt;
  return Rational(delta4 * two_r.den + 4 * two_r.num, den);
}

struct Edge {
  std::size_t to;
  EdgeKind kind;
  std::optional<Rational> quotient;  // nullopt: pole; unused for self edges
};

struct Graph {
  std::vector<IsotypicLabel> labels;
  std::vector<Weight> weights;
  std::vector<std::vector<Edge>> adj;
};

Graph build_graph(const BundleSpec& b, const OperatorSpec& op, int j_max) {
  const Weight lambda = b.lambda();
  const Weight rho_k = rho(b.n + 1);
  const TwoR two_r = split(op.order_2r);
  Graph g;
  g.labels = enumerate_labels(b, j_max);
  const std::size_t count = g.labels.size();
  g.weights.reserve(count);
  std::vector<std::int64_t> c4(count);
  for (std::size_t i = 0; i < count; ++i) {
    g.weights.push_back(label_to_weight(b, g.labels[i]));
    c4[i] = casimir4(g.weights[i], rho_k);
  }
  g.adj.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    for (const Neighbor& nb : neighbors_of(b, lambda, g.labels[i], g.weights[i])) {
      if (nb.label.j > j_max) continue;
      const std::size_t to = label_index(b, nb.label);
      Edge e{to, nb.kind, std::nullopt};
      if (nb.constraining()) e.quotient = quotient_from_delta4(c4[to] - c4[i], two_r);
      g.adj[i].push_back(std::move(e));
    }
  }
  return g;
}

void attach_multiplicities(SpectrumTable& t, unsigned threads) {
  const int m = t.bundle.n + 1;
  auto work = [&t, m](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) t.entries[i].multiplicity = weyl_dim(t.entries[i].weight, m);
  };
  const std::size_t count = t.entries.size();
  if (threads <= 1 || count == 0) {
    work(0, count);
    return;
  }
  // Contiguous j-blocks: every block boundary is a multiple of the labels per j.
  const std::size_t per_j = static_cast<std::size_t>(q_count(t.bundle)) * (has_eps(t.bundle) ? 2 : 1);
  const std::size_t levels = count / per_j;
  const std::size_t workers = std::min<std::size_t>(threads, levels);
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = levels * w / workers * per_j;
    const std::size_t hi = levels * (w + 1) / workers * per_j;
    pool.emplace_back(work, lo, hi);
  }
}

// Value on a summand where the operator reduces to a polynomial in
// gamma^a nabla_a, whose square comes from the Bochner identity.
Rational dirac_seed(const BundleSpec& b, const OperatorSpec& op, const IsotypicLabel& lab) {
  const Rational d2 = dirac_square(label_to_weight(b, lab), b);
  const auto d = d2.exact_sqrt();
  if (!d) throw InternalError("Dirac square " + d2.to_string() + " at " + lab.to_string() + " is not a square");
  Rational v = lab.eps.value_or(1) * *d;
  if (op.kind == OperatorKind::factored_odd_order) {
    for (int p = 1; p <= op.factored_l(); ++p) v *= d2 - Rational(p * p);
  }
  return v;
}

// Labels where a factored operator can be seeded directly.
bool seedable(const IsotypicLabel& lab) { return lab.eps.value_or(1) == 1 && lab.q.value_or(1) == 1; }

}  // namespace

void OperatorSpec::validate() const {
  if (order_2r.sign() <= 0) throw DomainError("operator order 2r must be positive");
  if (kind == OperatorKind::factored_odd_order) factored_l();
  if (kind == OperatorKind::higher_spin && order_2r != Rational(1)) {
    throw DomainError("higher spin operators have order 1");
  }
}

int OperatorSpec::factored_l() const {
  if (kind != OperatorKind::factored_odd_order) throw DomainError("not a factored odd-order operator");
  if (!order_2r.is_integer() || order_2r.sign() <= 0) {
    throw DomainError("factored operator order must be an odd positive integer, got " +
                      order_2r.to_string());
  }
  const std::int64_t o = order_2r.num().to_int64();
  if (o % 2 == 0) {
    throw DomainError("factored operator order must be odd, got " + order_2r.to_string());
  }
  return static_cast<int>((o - 1) / 2);
}

bool SpectrumTable::has_pole() const {
  return std::any_of(entries.begin(), entries.end(),
                     [](const SpectrumEntry& e) { return !e.eigenvalue; });
}

const SpectrumEntry& SpectrumTable::at(const IsotypicLabel& lab) const {
  validate_label(bundle, lab);
  const std::size_t i = label_index(bundle, lab);
  if (i >= entries.size()) throw DomainError("label outside table: " + lab.to_string());
  return entries[i];
}

std::string_view to_string(EdgeKind e) {
  switch (e) {
    case EdgeKind::j_up: return "j_up";
    case EdgeKind::j_down: return "j_down";
    case EdgeKind::q_up: return "q_up";
    case EdgeKind::q_down: return "q_down";
    case EdgeKind::eps_flip: return "eps_flip";
    case EdgeKind::self: break;
  }
  return "self";
}

std::vector<Neighbor> neighbors(const BundleSpec& b, const IsotypicLabel& lab) {
  return neighbors_of(b, b.lambda(), lab, label_to_weight(b, lab));
}

Rational relation_quotient(const BundleSpec& b, const IsotypicLabel& src,
                           const IsotypicLabel& dst, const OperatorSpec& op) {
  op.validate();
  const Rational delta = bochner(label_to_weight(b, dst), b) - bochner(label_to_weight(b, src), b);
  const Rational den = delta - op.order_2r;
  if (den.is_zero()) {
    throw PoleError("pole on edge " + src.to_string() + " -> " + dst.to_string() +
                    ": Delta = 2r = " + op.order_2r.to_string());
  }
  return (delta + op.order_2r) / den;
}

Rational transition_quotient(const BundleSpec& b, const IsotypicLabel& src,
                             const IsotypicLabel& dst, const OperatorSpec& op) {
  const auto nbs = neighbors(b, src);
  auto it = std::find_if(nbs.begin(), nbs.end(), [&](const Neighbor& nb) { return nb.label == dst; });
  if (it == nbs.end()) {
    throw DomainError(dst.to_string() + " is not a lattice neighbor of " + src.to_string());
  }
  if (!it->constraining()) {
    throw DomainError("self edge at " + src.to_string() + " carries no transition quotient");
  }
  return relation_quotient(b, src, dst, op);
}

std::pair<IsotypicLabel, Rational> default_base(const BundleSpec& b, const OperatorSpec& op) {
  b.validate();
  op.validate();
  IsotypicLabel base;
  if (has_eps(b)) base.eps = 1;
  if (op.kind == OperatorKind::higher_spin) {
    if (b.family != Family::symmetric) throw DomainError("higher spin operators live on the symmetric family");
    base.q = b.k;
  } else {
    if (b.family != Family::form) throw DomainError("spectral functions are defined on the form family");
    if (has_q(b)) base.q = 1;
  }
  if (op.kind == OperatorKind::spectral_function) return {base, Rational(1)};
  return {base, dirac_seed(b, op, base)};
}

namespace {

// Spanning-tree propagation from base. With reseed, summands cut off from the
// base by a pole edge are seeded from the Dirac value of their lowest
// seedable label, which is only meaningful for factored operators.
SpectrumTable propagate_impl(const BundleSpec& b, const OperatorSpec& op,
                             const std::pair<IsotypicLabel, Rational>& base, int j_max,
                             const PropagateOptions& opts, bool reseed) {
  b.validate();
  op.validate();
  validate_label(b, base.first);
  if (base.first.j > j_max) throw DomainError("base label lies above j_max");

  Graph g = build_graph(b, op, j_max);
  const std::size_t count = g.labels.size();
  std::vector<std::optional<Rational>> value(count);
  bool pole_seen = false;
  std::size_t reached = 0;

  auto spread = [&](std::size_t root, Rational v) {
    value[root] = std::move(v);
    std::vector<std::size_t> queue{root};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t u = queue[head];
      for (const Edge& e : g.adj[u]) {
        if (e.kind == EdgeKind::self) continue;
        if (!e.quotient) {
          pole_seen = true;
          continue;
        }
        if (value[e.to]) continue;
        value[e.to] = *value[u] * *e.quotient;
        queue.push_back(e.to);
      }
    }
    reached += queue.size();
  };

  spread(label_index(b, base.first), base.second);
  if (reseed) {
    for (std::size_t i = 0; i < count && reached < count; ++i) {
      if (!value[i] && seedable(g.labels[i])) spread(i, dirac_seed(b, op, g.labels[i]));
    }
  }

  SpectrumTable t{b, op, {}, 0};
  // Every remaining edge closes a loop; its relation must hold exactly.
  for (std::size_t u = 0; u < count; ++u) {
    if (!value[u]) continue;
    for (const Edge& e : g.adj[u]) {
      if (e.kind == EdgeKind::self || !e.quotient || !value[e.to]) continue;
      ++t.checked_relations;
      if (*value[u] * *e.quotient != *value[e.to]) {
        throw InternalError("inconsistent loop on edge " + g.labels[u].to_string() + " -> " +
                            g.labels[e.to].to_string() + ": " + value[u]->to_string() + " * " +
                            e.quotient->to_string() + " != " + value[e.to]->to_string());
      }
    }
  }
  if (!pole_seen && reached != count) {
    throw InternalError("lattice is disconnected from the base label");
  }

  t.entries.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::optional<Rational> v = std::move(value[i]);
    if (v && op.squared) v = *v * *v;
    t.entries.push_back({g.labels[i], std::move(g.weights[i]), std::move(v), BigInt()});
  }
  attach_multiplicities(t, opts.threads);
  return t;
}

}  // namespace

SpectrumTable propagate(const BundleSpec& b, const OperatorSpec& op,
                        const std::pair<IsotypicLabel, Rational>& base, int j_max,
                        const PropagateOptions& opts) {
  return propagate_impl(b, op, base, j_max, opts, false);
}

SpectrumTable propagate(const BundleSpec& b, const OperatorSpec& op, int j_max,
                        const PropagateOptions& opts) {
  return propagate_impl(b, op, default_base(b, op), j_max, opts,
                        op.kind == OperatorKind::factored_odd_order);
}

LoopReport check_four_cycles(const BundleSpec& b, const OperatorSpec& op, int j_max) {
  b.validate();
  op.validate();
  const Graph g = build_graph(b, op, j_max);
  auto edge = [&g](std::size_t from, std::size_t to) -> const Edge* {
    for (const Edge& e : g.adj[from]) {
      if (e.to == to && e.kind != EdgeKind::self) return &e;
    }
    return nullptr;
  };
  // Positive steps in each lattice direction; nullopt when leaving the range.
  auto step = [&](const IsotypicLabel& lab, int dir) -> std::optional<IsotypicLabel> {
    IsotypicLabel out = lab;
    if (dir == 0) {
      if (++out.j > j_max) return std::nullopt;
    } else if (dir == 1) {
      if (!out.q || *out.q + 1 >= q_count(b)) return std::nullopt;
      out.q = *out.q + 1;
    } else {
      if (!out.eps) return std::nullopt;
      out.eps = -*out.eps;
    }
    return out;
  };

  LoopReport rep;
  for (std::size_t u = 0; u < g.labels.size(); ++u) {
    for (int d1 = 0; d1 < 3; ++d1) {
      for (int d2 = d1 + 1; d2 < 3; ++d2) {
        auto a = step(g.labels[u], d1);
        auto c = a ? step(*a, d2) : std::nullopt;
        auto bb = step(g.labels[u], d2);
        if (!a || !c || !bb) continue;
        const std::size_t ia = label_index(b, *a), ic = label_index(b, *c), ib = label_index(b, *bb);
        const Edge* path[4] = {edge(u, ia), edge(ia, ic), edge(ic, ib), edge(ib, u)};
        bool usable = true;
        for (const Edge* e : path) usable = usable && e && e->quotient;
        if (!usable) continue;
        ++rep.cycles;
        Rational prod = 1;
        for (const Edge* e : path) prod *= *e->quotient;
        if (prod != Rational(1)) {
          if (rep.failures++ == 0) {
            rep.first_failure = "cycle at " + g.labels[u].to_string() + " multiplies to " + prod.to_string();
          }
        }
      }
    }
  }
  return rep;
}

}  // namespace sphspec
