// modelio.hpp -- the line-oriented model file format.
//
//   # comment
//   kind: kripke|lts|tau|nbhd|pdl|game
//   states: w1 w2 ...
//   rel: a->b a->c            (kripke)
//   rel act: a->b             (lts, pdl; one line per action/program)
//   rel Op/2: (u,v,w) (u,v,s) (tau; arity after the slash)
//   nbhd w: {a,b} {c}         (nbhd; the loader takes the upward closure)
//   eff g w: {a,b} {c}        (game; upward closure as well)
//   val p: w1 w2              (valuation; may be empty)
//
// Braced sets must not contain spaces.  Loading validates every type
// invariant and reports the offending line.

#pragma once

#include <iosfwd>
#include <variant>

#include "coalg/semantics.hpp"

namespace coalg {

struct LoadError : std::runtime_error {
  int line;
  LoadError(const std::string& msg, int at)
      : std::runtime_error("line " + std::to_string(at) + ": " + msg), line(at) {}
};

enum class ModelKind { Kripke, Lts, Tau, Nbhd, Pdl, Game };

struct ModelFile {
  ModelKind kind;
  std::variant<KripkeModel, LabeledTS, TauModel, NeighborhoodModel, PdlModel, GameModel> model;

  const KripkeModel& kripke() const { return std::get<KripkeModel>(model); }
  const LabeledTS& lts() const { return std::get<LabeledTS>(model); }
  const TauModel& tau() const { return std::get<TauModel>(model); }
  const NeighborhoodModel& nbhd() const { return std::get<NeighborhoodModel>(model); }
  const PdlModel& pdl() const { return std::get<PdlModel>(model); }
  const GameModel& game() const { return std::get<GameModel>(model); }
};

ModelFile load_model(std::istream& in);
ModelFile load_model_file(const std::string& path);
std::string save_model(const ModelFile& m);

}  // namespace coalg
