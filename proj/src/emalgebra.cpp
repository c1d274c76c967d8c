#include "coalg/emalgebra.hpp"

namespace coalg {

namespace {
[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }
}  // namespace

std::string PowersetAlgebra::value_at(const Subset& a) const {
  return structure(render_set(a));
}

PowersetAlgebra make_powerset_algebra(const FinSet& carrier,
                                      const std::function<std::string(const Subset&)>& h) {
  Enumerated<PowersetMonad> tx = enumerate_named<PowersetMonad>(carrier);
  std::map<std::string, std::string> table;
  for (const auto& n : tx.names) table[n] = h(tx.by_name.at(n));
  return {carrier, FinFn(tx.names, carrier, std::move(table))};
}

LawReport check_em_algebra(const PowersetAlgebra& alg) {
  LawReport report;
  LawCheck unit{"unit", true, ""};  // h(eta(x)) = x
  LawCheck mult{"mult", true, ""};  // h(mu(A)) = h(P(h)(A)) on P(P(X))

  for (const auto& x : alg.carrier) {
    std::string hx = alg.value_at(Subset{x});
    if (hx != x) {
      unit.pass = false;
      unit.witness = "h({" + x + "}) = " + hx;
      break;
    }
  }

  std::vector<Subset> subsets = all_subsets(alg.carrier);
  // iterate over P(P(X)) by bitmask over the subsets
  if (subsets.size() > 20) throw CapExceeded("P(P(X)) too large to enumerate");
  std::size_t n = subsets.size();
  for (std::size_t mask = 0; mask < (std::size_t(1) << n) && mult.pass; ++mask) {
    std::set<Subset> big;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t(1) << i)) big.insert(subsets[i]);
    Subset flattened = pow_mu(big);
    Subset h_image;
    for (const auto& a : big) h_image.insert(alg.value_at(a));
    std::string lhs = alg.value_at(flattened);
    std::string rhs = alg.value_at(h_image);
    if (lhs != rhs) {
      mult.pass = false;
      mult.witness = "A = " + render_family(big) + ": h(mu A) = " + lhs + " but h(P(h) A) = " + rhs;
    }
  }

  report.checks = {unit, mult};
  return report;
}

PowersetAlgebra free_powerset_algebra(const FinSet& x) {
  Enumerated<PowersetMonad> tx = enumerate_named<PowersetMonad>(x);
  // carrier is T X by name; the structure map is mu, i.e. flat union
  return make_powerset_algebra(tx.names, [&tx](const Subset& names) {
    std::set<Subset> big;
    for (const auto& n : names) big.insert(tx.by_name.at(n));
    return PowersetMonad::render(pow_mu(big));
  });
}

void validate_poset(const Poset& p) {
  if (p.leq.left() != p.carrier || p.leq.right() != p.carrier)
    fail("order relation must live on the carrier");
  if (!p.leq.reflexive()) fail("order is not reflexive");
  if (!p.leq.transitive()) fail("order is not transitive");
  for (const auto& [a, b] : p.leq.pairs())
    if (a != b && p.leq.contains(b, a)) fail("order is not antisymmetric at " + a + ", " + b);
}

std::optional<std::string> poset_sup(const Poset& p, const Subset& a) {
  Subset uppers;
  for (const auto& u : p.carrier) {
    bool above = true;
    for (const auto& x : a)
      if (!p.leq.contains(x, u)) {
        above = false;
        break;
      }
    if (above) uppers.insert(u);
  }
  for (const auto& u : uppers) {
    bool least = true;
    for (const auto& v : uppers)
      if (!p.leq.contains(u, v)) {
        least = false;
        break;
      }
    if (least) return u;
  }
  return std::nullopt;
}

PowersetAlgebra semilattice_to_algebra(const Poset& p) {
  validate_poset(p);
  for (const auto& a : all_subsets(p.carrier))
    if (!poset_sup(p, a)) fail("no supremum for " + render_set(a));
  return make_powerset_algebra(p.carrier,
                               [&p](const Subset& a) { return *poset_sup(p, a); });
}

Poset algebra_to_order(const PowersetAlgebra& alg) {
  PairSet pairs;
  for (const auto& x : alg.carrier)
    for (const auto& y : alg.carrier)
      if (alg.value_at(Subset{x, y}) == y) pairs.emplace(x, y);
  Poset p{alg.carrier, FinRel(alg.carrier, alg.carrier, std::move(pairs))};
  validate_poset(p);
  return p;
}

}  // namespace coalg
