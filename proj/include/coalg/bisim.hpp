// bisim.hpp -- bisimulation machinery: relation checkers with mediating
// coalgebra construction, largest bisimulations by partition refinement,
// quotient models, coalgebra morphism and congruence checks, and the
// modal-equivalence refinement used for the Hennessy-Milner comparison.

#pragma once

#include <optional>
#include <variant>

#include "coalg/finset.hpp"
#include "coalg/monads.hpp"
#include "coalg/semantics.hpp"

namespace coalg {

enum class FunctorTag { Pow, Lts, Nbhd, Mealy };

struct PowDynamics {
  std::map<std::string, Subset> succ;
};

struct LtsDynamics {
  FinSet actions;
  std::map<std::string, std::map<std::string, Subset>> succ;  // action -> state -> set
};

struct NbhdDynamics {
  std::map<std::string, Family> nbhd;
};

struct MealyStep {
  std::string next;
  std::string out;
};

struct MealyDynamics {
  FinSet inputs;
  std::map<std::string, std::map<std::string, MealyStep>> step;  // state -> input -> step
};

/// A coalgebra under one of the supported functors.  A nonempty valuation
/// adds the P(Phi) component (atomic harmony is then part of every check).
struct CoalgebraView {
  FinSet carrier;
  std::variant<PowDynamics, LtsDynamics, NbhdDynamics, MealyDynamics> dynamics;
  Valuation valuation;

  FunctorTag tag() const { return static_cast<FunctorTag>(dynamics.index()); }
  const PowDynamics& pow() const { return std::get<PowDynamics>(dynamics); }
  const LtsDynamics& lts() const { return std::get<LtsDynamics>(dynamics); }
  const NbhdDynamics& nbhd() const { return std::get<NbhdDynamics>(dynamics); }
  const MealyDynamics& mealy() const { return std::get<MealyDynamics>(dynamics); }
};

CoalgebraView view_of(const KripkeModel& m);
CoalgebraView ts_view(const FinSet& states, const FinRel& rel);  // no valuation
CoalgebraView view_of(const LabeledTS& m);
CoalgebraView view_of(const NeighborhoodModel& m);
CoalgebraView mealy_view(const FinSet& states, const FinSet& inputs,
                         const std::map<std::string, std::map<std::string, MealyStep>>& step);

struct CheckResult {
  bool ok = true;
  std::string violation;  // first violation in lexicographic pair order
  std::string note;       // extra observations (e.g. projection surjectivity)
};

/// Atomic harmony, forth and back for Kripke models.
CheckResult check_kripke_bisimulation(const KripkeModel& m, const KripkeModel& n, const FinRel& b);

/// Functor-generic checker; requires matching tags.
CheckResult check_coalg_bisimulation(const CoalgebraView& s, const CoalgebraView& t,
                                     const FinRel& b);

struct Mediating {
  CoalgebraView on_pairs;  // carrier: pair names of the relation
  FinFn to_left;
  FinFn to_right;
};

/// The canonical mediating structure on the relation's pair set; present
/// exactly when the relation is a bisimulation.  Not available for the
/// neighborhood tag, whose checker works clause-wise.
std::optional<Mediating> construct_mediating(const CoalgebraView& s, const CoalgebraView& t,
                                             const FinRel& b);

/// Largest bisimulation between two systems of the same tag, computed by
/// partition refinement on the disjoint union (greatest-fixpoint clause
/// iteration for the neighborhood tag) and restricted to cross pairs.
FinRel largest_bisimulation(const CoalgebraView& s, const CoalgebraView& t);
FinRel largest_bisimulation(const KripkeModel& m, const KripkeModel& n);

struct QuotientResult {
  KripkeModel model;
  FinFn class_map;
  Partition classes;
};

/// Quotient of a model by a bisimulation equivalence; the class map is
/// verified to be a model morphism.
QuotientResult quotient(const KripkeModel& m, const FinRel& alpha);

/// Commuting-square check per tag (bounded-morphism condition for the
/// powerset family); valuations, when present, must agree along the map.
CheckResult check_coalgebra_morphism(const FinFn& f, const CoalgebraView& s,
                                     const CoalgebraView& t);

// Bisimulation algebra; each result is re-checked before being returned and
// a failed re-check raises std::runtime_error.
FinRel bisim_invert(const FinRel& b, const CoalgebraView& s, const CoalgebraView& t);
FinRel bisim_compose(const FinRel& b1, const FinRel& b2, const CoalgebraView& s,
                     const CoalgebraView& t, const CoalgebraView& u);
FinRel bisim_union(const std::vector<FinRel>& family, const CoalgebraView& s,
                   const CoalgebraView& t);

/// True iff the classwise dynamics is well defined and the class map is a
/// coalgebra morphism onto the induced quotient structure.
CheckResult check_congruence(const CoalgebraView& s, const FinRel& alpha);

/// Pairs of states satisfying the same formulas of modal depth <= depth,
/// via depth-indexed refinement (round 0 = valuation agreement).
FinRel modal_equivalence_partition(const KripkeModel& m, const KripkeModel& n, int depth);

}  // namespace coalg
