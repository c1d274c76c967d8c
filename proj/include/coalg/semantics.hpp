// semantics.hpp -- finite models for all implemented languages and their
// evaluation engines: Kripke and tau-model validity sets, neighborhood
// semantics, the PDL relation builder, game effectivity, the CTL fixpoint
// engine with its lasso-path oracle, and bounded satisfiability search.

#pragma once

#include <optional>

#include "coalg/finset.hpp"
#include "coalg/logic.hpp"
#include "coalg/monads.hpp"

namespace coalg {

using Valuation = std::map<std::string, Subset>;

struct KripkeModel {
  FinSet worlds;
  FinRel rel;  // worlds -> worlds
  Valuation valuation;
};

struct LabeledTS {
  FinSet worlds;
  FinSet actions;
  std::map<std::string, FinRel> rel;  // per action
};

struct TauModel {
  FinSet worlds;
  std::map<std::string, int> arity;  // operator table (O, rho)
  std::map<std::string, std::set<std::vector<std::string>>> rel;  // tuples of length rho+1
  Valuation valuation;
};

struct NeighborhoodModel {
  FinSet worlds;
  std::map<std::string, Family> nbhd;  // upward closed per world
  Valuation valuation;
};

struct PdlModel {
  FinSet worlds;
  std::map<std::string, FinRel> atomic;  // per atomic program
  Valuation valuation;
};

struct GameModel {
  FinSet worlds;
  std::map<std::string, std::map<std::string, Family>> eff;  // game -> world -> family
  Valuation valuation;
};

/// An ultimately periodic path: prefix followed by the cycle repeated
/// forever.  Consecutive pairs, the prefix-to-cycle seam and the cycle wrap
/// must all be edges of the model the lasso belongs to.
struct Lasso {
  std::vector<std::string> prefix;
  std::vector<std::string> cycle;  // nonempty
};

void validate(const KripkeModel& m);
void validate(const TauModel& m);
void validate(const NeighborhoodModel& m);
void validate(const PdlModel& m);
void validate(const GameModel& m);
void validate_lasso(const KripkeModel& m, const Lasso& l);

// --- evaluation -------------------------------------------------------------

Subset eval_basic(const KripkeModel& m, const logic::FormulaPtr& f);
Subset eval_extended(const TauModel& m, const logic::FormulaPtr& f);
Subset eval_neighborhood(const NeighborhoodModel& m, const logic::FormulaPtr& f);
NeighborhoodModel kripke_to_neighborhood(const KripkeModel& m);

FinRel pdl_relation(const PdlModel& m, const logic::ProgramPtr& p);
Subset eval_pdl(const PdlModel& m, const logic::FormulaPtr& f);

/// P'_g applied to A; monotone in A.
Subset game_effectivity(const GameModel& m, const logic::GamePtr& g, const Subset& a);
Subset eval_game(const GameModel& m, const logic::FormulaPtr& f);

/// The CTL fixpoint engine; rejects formulas outside the CTL pairing
/// restriction.  The accessibility relation need not be left total: states
/// without an infinite outgoing path satisfy no E-quantified formula and
/// every A-quantified one.
Subset ctl_eval(const KripkeModel& m, const logic::FormulaPtr& f);

/// Literal path-semantics oracle: evaluates E/A-quantified path formulas by
/// enumerating every lasso within the given bounds and unfolding the path
/// clauses on the resulting ultimately periodic paths.  On the CTL fragment
/// with prefix_bound >= 2|W| and cycle_bound >= |W| this agrees with
/// ctl_eval.
Subset lasso_oracle(const KripkeModel& m, const logic::FormulaPtr& f,
                    std::size_t prefix_bound, std::size_t cycle_bound);

struct SatWitness {
  KripkeModel model;
  std::string world;
};

/// Bounded satisfiability search for basic formulas: relations and
/// valuations enumerated in a fixed order, first witness returned.
/// Caps: max_states <= 4 and at most 3 letters.
std::optional<SatWitness> find_model_bounded(const logic::FormulaPtr& f, std::size_t max_states);

}  // namespace coalg
