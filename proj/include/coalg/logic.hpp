// logic.hpp -- formula ASTs for the basic modal language, extended
// (operator-table) languages, PDL, game logic and the CTL fragment, plus
// the coalgebraic lifting language; parser, renderer, desugaring, nablas,
// substitution and modal depth.
//
// Concrete grammar (ASCII):
//   basic      false true p ~phi phi&psi phi|psi phi->psi <>phi []phi
//   extended   op(phi1, ..., phik), nullary operators written op()
//   PDL        <pi>phi [pi]phi with pi ::= t | pi;pi | pi u pi | pi* | phi?
//   games      <g>phi [g]phi with g ::= gamma | g;g | g u g | g cap g
//                                      | g* | g x | g d | phi?
//   CTL        E psi, A psi with psi ::= X psi | F psi | G psi | ~psi
//                                      | psi & psi | (psi U psi) | phi
//   lifted     [name] phi, letters as sugar for constant liftings
// Precedence: unary (~, modalities, quantifiers) > & > | > -> (right
// associative).  Identifiers are [A-Za-z_][A-Za-z0-9_]*.  In program
// position `u` is the choice keyword, in game position also `cap`, `d`,
// `x`; in CTL position `E A X F G U` are keywords.

#pragma once

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace coalg::logic {

enum class Lang { Basic, Extended, Pdl, Game, Ctl, Lifted };

struct Formula;
struct Program;
struct GameTerm;
struct PathFormula;
using FormulaPtr = std::shared_ptr<const Formula>;
using ProgramPtr = std::shared_ptr<const Program>;
using GamePtr = std::shared_ptr<const GameTerm>;
using PathPtr = std::shared_ptr<const PathFormula>;

struct Formula {
  enum class Kind {
    False, True, Letter, Not, And, Or, Implies,
    Diamond, Box,            // basic modalities
    Modal,                   // extended: name, args
    DiamondProg, BoxProg,    // PDL: prog, one arg
    DiamondGame, BoxGame,    // game logic: game, one arg
    Exists, All,             // CTL: path
    Lift                     // coalgebraic: name, one arg
  };
  Kind kind;
  std::string name;
  std::vector<FormulaPtr> args;
  ProgramPtr prog;
  GamePtr game;
  PathPtr path;
};

struct Program {
  enum class Kind { Atomic, Seq, Union, Star, Test };
  Kind kind;
  std::string name;
  ProgramPtr left, right;
  FormulaPtr test;
};

struct GameTerm {
  enum class Kind { Atomic, Seq, AngelicChoice, DemonicChoice, Dual, AngelicIter, DemonicIter, Test };
  Kind kind;
  std::string name;
  GamePtr left, right;
  FormulaPtr test;
};

struct PathFormula {
  enum class Kind { Embed, Not, And, Next, Future, Globally, Until };
  Kind kind;
  FormulaPtr state;            // Embed
  std::vector<PathPtr> args;   // the rest
};

// constructors
FormulaPtr f_false();
FormulaPtr f_true();
FormulaPtr f_letter(const std::string& p);
FormulaPtr f_not(FormulaPtr a);
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr f_diamond(FormulaPtr a);
FormulaPtr f_box(FormulaPtr a);
FormulaPtr f_modal(const std::string& op, std::vector<FormulaPtr> args);
FormulaPtr f_diamond_prog(ProgramPtr p, FormulaPtr a);
FormulaPtr f_box_prog(ProgramPtr p, FormulaPtr a);
FormulaPtr f_diamond_game(GamePtr g, FormulaPtr a);
FormulaPtr f_box_game(GamePtr g, FormulaPtr a);
FormulaPtr f_exists(PathPtr p);
FormulaPtr f_all(PathPtr p);
FormulaPtr f_lift(const std::string& name, FormulaPtr a);

ProgramPtr p_atomic(const std::string& t);
ProgramPtr p_seq(ProgramPtr a, ProgramPtr b);
ProgramPtr p_union(ProgramPtr a, ProgramPtr b);
ProgramPtr p_star(ProgramPtr a);
ProgramPtr p_test(FormulaPtr f);

GamePtr g_atomic(const std::string& t);
GamePtr g_seq(GamePtr a, GamePtr b);
GamePtr g_angelic(GamePtr a, GamePtr b);
GamePtr g_demonic(GamePtr a, GamePtr b);
GamePtr g_dual(GamePtr a);
GamePtr g_angelic_iter(GamePtr a);
GamePtr g_demonic_iter(GamePtr a);
GamePtr g_test(FormulaPtr f);

PathPtr path_embed(FormulaPtr f);
PathPtr path_not(PathPtr a);
PathPtr path_and(PathPtr a, PathPtr b);
PathPtr path_next(PathPtr a);
PathPtr path_future(PathPtr a);
PathPtr path_globally(PathPtr a);
PathPtr path_until(PathPtr a, PathPtr b);

struct ParseError : std::runtime_error {
  std::size_t pos;
  ParseError(const std::string& msg, std::size_t at)
      : std::runtime_error(msg + " (at position " + std::to_string(at) + ")"), pos(at) {}
};

FormulaPtr parse(const std::string& text, Lang lang);
std::string render(const FormulaPtr& f);
std::string render(const ProgramPtr& p);
std::string render(const GamePtr& g);
std::string render(const PathPtr& p);

bool equal(const FormulaPtr& a, const FormulaPtr& b);
bool equal(const ProgramPtr& a, const ProgramPtr& b);
bool equal(const GamePtr& a, const GamePtr& b);
bool equal(const PathPtr& a, const PathPtr& b);

/// Rewrites to the primitive connectives: false, letters, &, ~ and the
/// primitive modalities (<>, operator applications, <pi>, <g>, E).
FormulaPtr desugar(const FormulaPtr& f);

/// nabla(op, args) = ~op(~arg1, ..., ~argk).
FormulaPtr nabla(const std::string& op, std::vector<FormulaPtr> args);

/// Letter substitution; letters not mentioned are left alone.
using Substitution = std::map<std::string, FormulaPtr>;
FormulaPtr substitute(const FormulaPtr& f, const Substitution& sigma);

int modal_depth(const FormulaPtr& f);
std::set<std::string> letters(const FormulaPtr& f);

/// True iff every path operator sits immediately under a path quantifier
/// and has state-formula operands (the CTL pairing restriction).
bool is_ctl_state_formula(const FormulaPtr& f);

}  // namespace coalg::logic
