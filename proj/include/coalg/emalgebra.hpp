// emalgebra.hpp -- Eilenberg-Moore algebras for the powerset monad, their
// correspondence with sup-semilattices, and the free algebras (T X, mu).

#pragma once

#include "coalg/finset.hpp"
#include "coalg/monads.hpp"

namespace coalg {

/// An algebra h: P(X) -> X, with the structure map given on the canonical
/// subset names of Enumerated<PowersetMonad>.
struct PowersetAlgebra {
  FinSet carrier;
  FinFn structure;  // subset names -> carrier
  std::string value_at(const Subset& a) const;
};

PowersetAlgebra make_powerset_algebra(const FinSet& carrier,
                                      const std::function<std::string(const Subset&)>& h);

/// Verifies h . eta = id and h . mu = h . P(h) over all of P(P(X)).
LawReport check_em_algebra(const PowersetAlgebra& alg);

/// The free algebra (P(X), mu) on a carrier.
PowersetAlgebra free_powerset_algebra(const FinSet& x);

struct Poset {
  FinSet carrier;
  FinRel leq;  // reflexive, antisymmetric, transitive
};

/// Checks partial-order axioms, throws std::invalid_argument otherwise.
void validate_poset(const Poset& p);

/// sup A for a subset, if it exists in the order.
std::optional<std::string> poset_sup(const Poset& p, const Subset& a);

/// h(A) := sup A; requires every subset (including the empty one) to have a
/// supremum.
PowersetAlgebra semilattice_to_algebra(const Poset& p);

/// x <= x' iff h({x, x'}) = x'.
Poset algebra_to_order(const PowersetAlgebra& alg);

}  // namespace coalg
