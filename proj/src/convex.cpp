#include "coalg/convex.hpp"

#include <algorithm>

namespace coalg {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

std::string render_coeffs(const std::vector<Rat>& alpha) {
  std::string out = "(";
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (i) out += ",";
    out += render_rat(alpha[i]);
  }
  return out + ")";
}

std::string render_elems(const std::vector<std::string>& xs) {
  std::string out = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += xs[i];
  }
  return out + ")";
}

/// A positive convex coefficient tuple of length n, denominators bounded.
std::vector<Rat> random_coeffs(std::size_t n, Rng& rng, int denom_bound) {
  long long d = 1 + static_cast<long long>(next_below(rng, denom_bound));
  std::vector<long long> units(n, 0);
  for (long long i = 0; i < d; ++i) ++units[next_below(rng, n)];
  std::vector<Rat> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(units[i], d);
  return out;
}

std::vector<std::string> random_elems(const FinSet& carrier, std::size_t n, Rng& rng) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(carrier.elements()[next_below(rng, carrier.size())]);
  return out;
}

}  // namespace

ConvexStructure sup_support_structure(const std::vector<std::string>& ascending_chain) {
  FinSet carrier{std::vector<std::string>(ascending_chain.begin(), ascending_chain.end())};
  std::map<std::string, std::size_t> rank;
  for (std::size_t i = 0; i < ascending_chain.size(); ++i) rank[ascending_chain[i]] = i;
  return {carrier, [rank, ascending_chain](const std::vector<Rat>& alpha,
                                           const std::vector<std::string>& xs) {
            std::size_t best = 0;
            bool seen = false;
            for (std::size_t i = 0; i < xs.size(); ++i) {
              if (alpha[i] == Rat(0)) continue;
              std::size_t r = rank.at(xs[i]);
              if (!seen || r > best) best = r;
              seen = true;
            }
            if (!seen) fail("empty support in convex combination");
            return ascending_chain[best];
          }};
}

ConvexStructure first_nonzero_structure(const FinSet& carrier) {
  return {carrier, [](const std::vector<Rat>& alpha, const std::vector<std::string>& xs) {
            for (std::size_t i = 0; i < xs.size(); ++i)
              if (alpha[i] != Rat(0)) return xs[i];
            fail("empty support in convex combination");
          }};
}

ConvexStructure structure_from_algebra(const FinSet& carrier,
                                       const std::function<std::string(const FinDist&)>& h) {
  return {carrier, [h](const std::vector<Rat>& alpha, const std::vector<std::string>& xs) {
            FinDist p;
            for (std::size_t i = 0; i < xs.size(); ++i) {
              if (alpha[i] == Rat(0)) continue;
              Rat acc = p.at(xs[i]) + alpha[i];
              p.weights[xs[i]] = acc;
            }
            return h(p);
          }};
}

std::string induced_algebra_value(const ConvexStructure& s, const FinDist& p) {
  std::vector<Rat> alpha;
  std::vector<std::string> xs;
  for (const auto& [x, w] : p.weights) {
    xs.push_back(x);
    alpha.push_back(w);
  }
  return s.combine(alpha, xs);
}

std::string ConvexReport::render() const {
  std::string out;
  for (const LawCheck* c : {&projection, &composition, &algebra_unit, &algebra_mult})
    out += c->law + (c->pass ? " PASS" : " FAIL: " + c->witness) + "\n";
  return out;
}

ConvexReport check_convex_structure(const ConvexStructure& s, int samples,
                                    unsigned long long seed, int denom_bound) {
  if (s.carrier.empty()) fail("convex structure needs a nonempty carrier");
  Rng rng(seed);
  ConvexReport report{{"projection", true, ""},
                      {"composition", true, ""},
                      {"algebra_unit", true, ""},
                      {"algebra_mult", true, ""}};

  auto check_projection = [&](std::size_t n, const std::vector<std::string>& xs) {
    if (!report.projection.pass) return;
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<Rat> delta(n, Rat(0));
      delta[k] = Rat(1);
      std::string got = s.combine(delta, xs);
      if (got != xs[k]) {
        report.projection.pass = false;
        report.projection.witness = "delta_" + std::to_string(k + 1) + " over " +
                                    render_elems(xs) + " gives " + got;
        return;
      }
    }
  };

  auto check_composition = [&](const std::vector<Rat>& alpha,
                               const std::vector<std::vector<Rat>>& beta,
                               const std::vector<std::string>& xs) {
    if (!report.composition.pass) return;
    std::size_t n = alpha.size(), m = xs.size();
    std::vector<std::string> inner;
    for (std::size_t i = 0; i < n; ++i) inner.push_back(s.combine(beta[i], xs));
    std::string lhs = s.combine(alpha, inner);
    std::vector<Rat> mixed(m, Rat(0));
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t i = 0; i < n; ++i) mixed[k] += alpha[i] * beta[i][k];
    std::string rhs = s.combine(mixed, xs);
    if (lhs != rhs) {
      report.composition.pass = false;
      std::string betas;
      for (std::size_t i = 0; i < n; ++i) betas += (i ? ", " : "") + render_coeffs(beta[i]);
      report.composition.witness = "alpha = " + render_coeffs(alpha) + ", beta = [" + betas +
                                   "], xs = " + render_elems(xs) + ": " + lhs + " vs " + rhs;
    }
  };

  // deterministic battery: every pair of carrier elements with the small
  // coefficient tuples; covers the classic (1/2,1/2) / delta witnesses
  std::vector<std::vector<Rat>> small2 = {{Rat(1), Rat(0)},
                                          {Rat(0), Rat(1)},
                                          {Rat(1, 2), Rat(1, 2)}};
  for (const auto& a : s.carrier)
    for (const auto& b : s.carrier) {
      std::vector<std::string> xs{a, b};
      check_projection(2, xs);
      check_projection(1, {a});
      for (const auto& alpha : small2)
        for (const auto& b1 : small2)
          for (const auto& b2 : small2) check_composition(alpha, {b1, b2}, xs);
    }

  // seeded random battery
  for (int i = 0; i < samples; ++i) {
    std::size_t n = 1 + next_below(rng, 3);
    std::size_t m = 1 + next_below(rng, 3);
    auto xs = random_elems(s.carrier, m, rng);
    check_projection(m, xs);
    auto alpha = random_coeffs(n, rng, denom_bound);
    std::vector<std::vector<Rat>> beta;
    for (std::size_t j = 0; j < n; ++j) beta.push_back(random_coeffs(m, rng, denom_bound));
    check_composition(alpha, beta, xs);
  }

  // induced algebra, cross-checked against the algebra laws
  auto h = [&](const FinDist& p) { return induced_algebra_value(s, p); };
  for (const auto& x : s.carrier) {
    FinDist dirac = DistMonad::unit(s.carrier, x);
    std::string got = h(dirac);
    if (got != x) {
      report.algebra_unit.pass = false;
      report.algebra_unit.witness = "h(dirac(" + x + ")) = " + got;
      break;
    }
  }
  for (int i = 0; i < samples && report.algebra_mult.pass; ++i) {
    // M = sum alpha_i dirac_{p_i} in D(D X)
    std::size_t n = 1 + next_below(rng, 3);
    auto alpha = random_coeffs(n, rng, denom_bound);
    std::vector<FinDist> ps;
    for (std::size_t j = 0; j < n; ++j) ps.push_back(random_dist(s.carrier, rng, denom_bound));
    // mu(M) = sum alpha_i p_i
    FinDist mixed;
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [x, w] : ps[j].weights) {
        Rat acc = mixed.at(x) + alpha[j] * w;
        if (acc != Rat(0))
          mixed.weights[x] = acc;
        else
          mixed.weights.erase(x);
      }
    std::string lhs = h(mixed);
    // D h (M) = sum alpha_i dirac_{h(p_i)}
    FinDist pushed;
    for (std::size_t j = 0; j < n; ++j) {
      if (alpha[j] == Rat(0)) continue;
      std::string hx = h(ps[j]);
      Rat acc = pushed.at(hx) + alpha[j];
      pushed.weights[hx] = acc;
    }
    std::string rhs = h(pushed);
    if (lhs != rhs) {
      report.algebra_mult.pass = false;
      report.algebra_mult.witness = "h(mu M) = " + lhs + " but h(Dh M) = " + rhs;
    }
  }

  return report;
}

}  // namespace coalg
