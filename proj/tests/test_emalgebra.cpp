#include <doctest.h>

#include "coalg/convex.hpp"
#include "coalg/emalgebra.hpp"

using namespace coalg;

namespace {

Poset chain01() {
  FinSet c{"0", "1"};
  PairSet leq{{"0", "0"}, {"0", "1"}, {"1", "1"}};
  return {c, FinRel(c, c, leq)};
}

Poset diamond() {
  // bot < l, r < top
  FinSet c{"bot", "l", "r", "top"};
  PairSet leq;
  for (const auto& x : c) leq.emplace(x, x);
  leq.emplace("bot", "l");
  leq.emplace("bot", "r");
  leq.emplace("bot", "top");
  leq.emplace("l", "top");
  leq.emplace("r", "top");
  return {c, FinRel(c, c, leq)};
}

}  // namespace

TEST_CASE("sup algebra on the 2-chain satisfies both laws exhaustively") {
  PowersetAlgebra alg = semilattice_to_algebra(chain01());
  CHECK(alg.value_at(Subset{}) == "0");       // sup of nothing is the bottom
  CHECK(alg.value_at(Subset{"0", "1"}) == "1");
  LawReport report = check_em_algebra(alg);
  CHECK(report.all_pass());
}

TEST_CASE("sup algebra on the diamond lattice satisfies both laws") {
  PowersetAlgebra alg = semilattice_to_algebra(diamond());
  CHECK(alg.value_at(Subset{"l", "r"}) == "top");
  CHECK(check_em_algebra(alg).all_pass());
}

TEST_CASE("a constant pretender fails the unit law with a witness") {
  FinSet c{"0", "1"};
  PowersetAlgebra fake = make_powerset_algebra(c, [](const Subset&) { return "0"; });
  LawReport report = check_em_algebra(fake);
  CHECK_FALSE(report.all_pass());
  CHECK_FALSE(report.checks[0].pass);
  CHECK(report.checks[0].witness.find("h({1}) = 0") != std::string::npos);
}

TEST_CASE("free algebras satisfy the laws") {
  CHECK(check_em_algebra(free_powerset_algebra(FinSet{"x", "y"})).all_pass());
}

TEST_CASE("order to algebra to order is the identity") {
  for (const Poset& p : {chain01(), diamond()}) {
    PowersetAlgebra alg = semilattice_to_algebra(p);
    Poset back = algebra_to_order(alg);
    CHECK(back.leq == p.leq);
  }
}

TEST_CASE("posets without all sups are rejected") {
  // antichain {a, b} with no top
  FinSet c{"a", "b"};
  PairSet leq{{"a", "a"}, {"b", "b"}};
  CHECK_THROWS_AS(semilattice_to_algebra(Poset{c, FinRel(c, c, leq)}), std::invalid_argument);
}

TEST_CASE("algebra to order validates the order axioms and sup property") {
  PowersetAlgebra alg = semilattice_to_algebra(diamond());
  Poset p = algebra_to_order(alg);
  validate_poset(p);
  // h is the supremum with respect to the recovered order
  for (const auto& a : all_subsets(p.carrier)) CHECK(*poset_sup(p, a) == alg.value_at(a));
}

TEST_CASE("a singleton carrier is trivially positive convex") {
  ConvexStructure s = sup_support_structure({"only"});
  CHECK(check_convex_structure(s, 100, 0).all_pass());
}

TEST_CASE("sup-of-support on the 2-chain is a positive convex structure") {
  ConvexStructure s = sup_support_structure({"0", "1"});
  ConvexReport report = check_convex_structure(s, 500, 0);
  CHECK(report.all_pass());
}

TEST_CASE("first-nonzero projection violates the composition axiom") {
  ConvexStructure s = first_nonzero_structure(FinSet{"a", "b"});
  ConvexReport report = check_convex_structure(s, 500, 0);
  CHECK_FALSE(report.composition.pass);
  CHECK_FALSE(report.composition.witness.empty());

  // the documented witness: alpha = (1/2,1/2), beta1 = delta_2, beta2 = delta_1
  std::vector<Rat> alpha{Rat(1, 2), Rat(1, 2)};
  std::vector<std::vector<Rat>> beta{{Rat(0), Rat(1)}, {Rat(1), Rat(0)}};
  std::vector<std::string> xs{"a", "b"};
  std::string lhs = s.combine(alpha, {s.combine(beta[0], xs), s.combine(beta[1], xs)});
  std::vector<Rat> mixed{Rat(1, 2), Rat(1, 2)};
  std::string rhs = s.combine(mixed, xs);
  CHECK(lhs == "b");
  CHECK(rhs == "a");
  CHECK(lhs != rhs);
}

TEST_CASE("induced algebra of a convex structure matches the sup algebra") {
  ConvexStructure s = sup_support_structure({"0", "1"});
  FinDist p;
  p.weights = {{"0", Rat(1, 3)}, {"1", Rat(2, 3)}};
  CHECK(induced_algebra_value(s, p) == "1");
  FinDist q;
  q.weights = {{"0", Rat(1)}};
  CHECK(induced_algebra_value(s, q) == "0");
}
