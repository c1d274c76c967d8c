// convex.hpp -- positive convex structures on finite carriers and their
// correspondence with algebras for the distribution monad.  Only the
// probability case (coefficients summing to one) is handled; the axioms are
// checked on a deterministic battery of small coefficient tuples plus
// seeded random samples with bounded denominators.

#pragma once

#include <functional>

#include "coalg/finset.hpp"
#include "coalg/monads.hpp"

namespace coalg {

struct ConvexStructure {
  FinSet carrier;
  /// combine(alpha, xs): the abstract convex combination sum alpha_i * x_i;
  /// alpha has positive length, entries >= 0 summing to exactly one.
  std::function<std::string(const std::vector<Rat>&, const std::vector<std::string>&)> combine;
};

/// The sup-of-support structure on a chain (elements in ascending order).
ConvexStructure sup_support_structure(const std::vector<std::string>& ascending_chain);

/// A pseudo-structure that projects onto the first nonzero coefficient; it
/// violates the composition axiom.
ConvexStructure first_nonzero_structure(const FinSet& carrier);

/// The structure induced by an algebra h: D(X) -> X.
ConvexStructure structure_from_algebra(const FinSet& carrier,
                                       const std::function<std::string(const FinDist&)>& h);

struct ConvexReport {
  LawCheck projection;   // sum delta_{i,k} x_i = x_k
  LawCheck composition;  // the double-sum axiom
  LawCheck algebra_unit; // induced h satisfies h(dirac(x)) = x
  LawCheck algebra_mult; // induced h satisfies h . mu = h . D h (sampled)
  bool all_pass() const {
    return projection.pass && composition.pass && algebra_unit.pass && algebra_mult.pass;
  }
  std::string render() const;
};

ConvexReport check_convex_structure(const ConvexStructure& s, int samples,
                                    unsigned long long seed, int denom_bound = 6);

/// The induced algebra value h(p) = combine(weights(p), support(p)).
std::string induced_algebra_value(const ConvexStructure& s, const FinDist& p);

}  // namespace coalg
