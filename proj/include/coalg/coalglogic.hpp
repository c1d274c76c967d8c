// coalglogic.hpp -- predicate liftings for the Kripke functor
// T X = P(X) x P(Phi) and the neighborhood functor G X = V(X) x P(Phi),
// the L(L) evaluation pipeline over coalgebras, naturality and
// monotonicity checks, depth-stratified theories and behavioral
// equivalence.

#pragma once

#include <functional>

#include "coalg/bisim.hpp"
#include "coalg/finset.hpp"
#include "coalg/logic.hpp"
#include "coalg/semantics.hpp"

namespace coalg {

enum class CFunctor { Pk, Nb };

/// An element of T X = P(X) x P(Phi).
struct PkElem {
  Subset next;
  Subset props;
  bool operator==(const PkElem& o) const { return next == o.next && props == o.props; }
  bool operator<(const PkElem& o) const {
    if (next != o.next) return next < o.next;
    return props < o.props;
  }
};

/// An element of G X = V(X) x P(Phi).
struct NbElem {
  Family fam;
  Subset props;
  bool operator==(const NbElem& o) const { return fam == o.fam && props == o.props; }
  bool operator<(const NbElem& o) const {
    if (fam != o.fam) return fam < o.fam;
    return props < o.props;
  }
};

struct PkCoalgebra {
  FinSet carrier;
  FinSet letters;
  std::map<std::string, PkElem> gamma;
};

struct NbCoalgebra {
  FinSet carrier;
  FinSet letters;
  std::map<std::string, NbElem> gamma;
};

PkCoalgebra model_to_coalgebra(const KripkeModel& m);
KripkeModel coalgebra_to_model(const PkCoalgebra& c);
NbCoalgebra nbhd_to_coalgebra(const NeighborhoodModel& m);
NeighborhoodModel coalgebra_to_nbhd(const NbCoalgebra& c);

std::vector<PkElem> enumerate_pk(const FinSet& x, const FinSet& letters);
std::vector<NbElem> enumerate_nb(const FinSet& x, const FinSet& letters);

/// Functor action on maps (the P(Phi) component is left alone).
PkElem pk_map(const FinFn& f, const PkElem& c);
NbElem nb_map(const FinFn& f, const NbElem& c);

/// A predicate lifting given in predicate form: membership of a T X element
/// in lambda_X(D).  The set form is recovered by filtering the enumeration.
struct PredicateLifting {
  std::string name;
  CFunctor functor;
  std::function<bool(const FinSet&, const FinSet&, const Subset&, const PkElem&)> pk_member;
  std::function<bool(const FinSet&, const FinSet&, const Subset&, const NbElem&)> nb_member;
};

PredicateLifting lift_box();                      // pk: D' subset of D
PredicateLifting lift_diamond();                  // pk: D' meets D
PredicateLifting lift_const(const std::string& p);  // pk and nb: p in Q
PredicateLifting lift_box_nb();                   // nb: D in V
PredicateLifting lift_neg(const PredicateLifting& l);
/// From a natural transformation eta: T -> P into the powerset functor:
/// lambda_X(D) = { c | eta_X(c) subset of D }.
PredicateLifting lift_from_nat(
    const std::string& name,
    const std::function<Subset(const FinSet&, const FinSet&, const PkElem&)>& nat);

/// lambda_X(D) as an explicit subset of the enumerated T X.
std::set<PkElem> lift_set_pk(const PredicateLifting& l, const FinSet& x, const FinSet& letters,
                             const Subset& d);
std::set<NbElem> lift_set_nb(const PredicateLifting& l, const FinSet& x, const FinSet& letters,
                             const Subset& d);

/// lambda_X(f^{-1} G) = (T f)^{-1} (lambda_Y(G)), decided pointwise on the
/// enumerated T X.  Carriers are capped at size 4 and letters at 2.
bool check_naturality(const PredicateLifting& l, const FinFn& f, const FinSet& letters,
                      const Subset& g);
bool check_monotone(const PredicateLifting& l, const FinSet& x, const FinSet& letters,
                    const Subset& d, const Subset& e);

/// A coalgebra with its registered liftings compiled to validity-set
/// transformers gamma^{-1} . lambda_X.
struct PreparedCoalgebra {
  FinSet carrier;
  FinSet letters;
  std::map<std::string, std::function<Subset(const Subset&)>> modalities;
  std::map<std::string, Subset> letter_sets;  // letters as constant liftings
};

PreparedCoalgebra prepare(const PkCoalgebra& c, const std::vector<PredicateLifting>& lifts);
PreparedCoalgebra prepare(const NbCoalgebra& c, const std::vector<PredicateLifting>& lifts);

/// Standard registries: box/dia (pk) resp. box (nb), plus the constant
/// lifting of every letter.
std::vector<PredicateLifting> standard_liftings_pk();
std::vector<PredicateLifting> standard_liftings_nb();

/// Recursive L(L) clauses; [name]phi uses the registered transformer, a
/// bare letter abbreviates the constant lifting applied to truth.
Subset eval_coalg(const PreparedCoalgebra& c, const logic::FormulaPtr& f);

/// Depth-stratified theory: the state's logical-equivalence class within
/// its own coalgebra, per stratum 0..depth.
struct Theory {
  std::string state;
  std::vector<Subset> strata;
};

Theory theory_of(const PreparedCoalgebra& c, const std::string& state, int depth);

/// Cross pairs of states with equal depth-bounded theories.
FinRel logical_equiv(const PreparedCoalgebra& c, const PreparedCoalgebra& d, int depth);

struct BehavioralResult {
  bool equal;
  FinFn into_quotient_left;
  FinFn into_quotient_right;
};

/// True iff the quotient maps into the minimized disjoint union agree on
/// the two states; the witness morphisms are re-verified.
BehavioralResult behavioral_equiv(const PkCoalgebra& s, const PkCoalgebra& t,
                                  const std::string& a, const std::string& b);

}  // namespace coalg
