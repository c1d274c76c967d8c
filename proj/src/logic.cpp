#include "coalg/logic.hpp"

#include <cctype>
#include <map>

namespace coalg::logic {

// --- constructors -----------------------------------------------------------

namespace {
FormulaPtr mk(Formula f) { return std::make_shared<const Formula>(std::move(f)); }
ProgramPtr mkp(Program p) { return std::make_shared<const Program>(std::move(p)); }
GamePtr mkg(GameTerm g) { return std::make_shared<const GameTerm>(std::move(g)); }
PathPtr mkpath(PathFormula p) { return std::make_shared<const PathFormula>(std::move(p)); }
using FK = Formula::Kind;
using PK = Program::Kind;
using GK = GameTerm::Kind;
using TK = PathFormula::Kind;
}  // namespace

FormulaPtr f_false() { return mk({FK::False, "", {}, nullptr, nullptr, nullptr}); }
FormulaPtr f_true() { return mk({FK::True, "", {}, nullptr, nullptr, nullptr}); }
FormulaPtr f_letter(const std::string& p) { return mk({FK::Letter, p, {}, nullptr, nullptr, nullptr}); }
FormulaPtr f_not(FormulaPtr a) { return mk({FK::Not, "", {std::move(a)}, nullptr, nullptr, nullptr}); }
FormulaPtr f_and(FormulaPtr a, FormulaPtr b) {
  return mk({FK::And, "", {std::move(a), std::move(b)}, nullptr, nullptr, nullptr});
}
FormulaPtr f_or(FormulaPtr a, FormulaPtr b) {
  return mk({FK::Or, "", {std::move(a), std::move(b)}, nullptr, nullptr, nullptr});
}
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b) {
  return mk({FK::Implies, "", {std::move(a), std::move(b)}, nullptr, nullptr, nullptr});
}
FormulaPtr f_diamond(FormulaPtr a) { return mk({FK::Diamond, "", {std::move(a)}, nullptr, nullptr, nullptr}); }
FormulaPtr f_box(FormulaPtr a) { return mk({FK::Box, "", {std::move(a)}, nullptr, nullptr, nullptr}); }
FormulaPtr f_modal(const std::string& op, std::vector<FormulaPtr> args) {
  return mk({FK::Modal, op, std::move(args), nullptr, nullptr, nullptr});
}
FormulaPtr f_diamond_prog(ProgramPtr p, FormulaPtr a) {
  return mk({FK::DiamondProg, "", {std::move(a)}, std::move(p), nullptr, nullptr});
}
FormulaPtr f_box_prog(ProgramPtr p, FormulaPtr a) {
  return mk({FK::BoxProg, "", {std::move(a)}, std::move(p), nullptr, nullptr});
}
FormulaPtr f_diamond_game(GamePtr g, FormulaPtr a) {
  return mk({FK::DiamondGame, "", {std::move(a)}, nullptr, std::move(g), nullptr});
}
FormulaPtr f_box_game(GamePtr g, FormulaPtr a) {
  return mk({FK::BoxGame, "", {std::move(a)}, nullptr, std::move(g), nullptr});
}
FormulaPtr f_exists(PathPtr p) { return mk({FK::Exists, "", {}, nullptr, nullptr, std::move(p)}); }
FormulaPtr f_all(PathPtr p) { return mk({FK::All, "", {}, nullptr, nullptr, std::move(p)}); }
FormulaPtr f_lift(const std::string& name, FormulaPtr a) {
  return mk({FK::Lift, name, {std::move(a)}, nullptr, nullptr, nullptr});
}

ProgramPtr p_atomic(const std::string& t) { return mkp({PK::Atomic, t, nullptr, nullptr, nullptr}); }
ProgramPtr p_seq(ProgramPtr a, ProgramPtr b) { return mkp({PK::Seq, "", std::move(a), std::move(b), nullptr}); }
ProgramPtr p_union(ProgramPtr a, ProgramPtr b) { return mkp({PK::Union, "", std::move(a), std::move(b), nullptr}); }
ProgramPtr p_star(ProgramPtr a) { return mkp({PK::Star, "", std::move(a), nullptr, nullptr}); }
ProgramPtr p_test(FormulaPtr f) { return mkp({PK::Test, "", nullptr, nullptr, std::move(f)}); }

GamePtr g_atomic(const std::string& t) { return mkg({GK::Atomic, t, nullptr, nullptr, nullptr}); }
GamePtr g_seq(GamePtr a, GamePtr b) { return mkg({GK::Seq, "", std::move(a), std::move(b), nullptr}); }
GamePtr g_angelic(GamePtr a, GamePtr b) { return mkg({GK::AngelicChoice, "", std::move(a), std::move(b), nullptr}); }
GamePtr g_demonic(GamePtr a, GamePtr b) { return mkg({GK::DemonicChoice, "", std::move(a), std::move(b), nullptr}); }
GamePtr g_dual(GamePtr a) { return mkg({GK::Dual, "", std::move(a), nullptr, nullptr}); }
GamePtr g_angelic_iter(GamePtr a) { return mkg({GK::AngelicIter, "", std::move(a), nullptr, nullptr}); }
GamePtr g_demonic_iter(GamePtr a) { return mkg({GK::DemonicIter, "", std::move(a), nullptr, nullptr}); }
GamePtr g_test(FormulaPtr f) { return mkg({GK::Test, "", nullptr, nullptr, std::move(f)}); }

PathPtr path_embed(FormulaPtr f) { return mkpath({TK::Embed, std::move(f), {}}); }
PathPtr path_not(PathPtr a) { return mkpath({TK::Not, nullptr, {std::move(a)}}); }
PathPtr path_and(PathPtr a, PathPtr b) { return mkpath({TK::And, nullptr, {std::move(a), std::move(b)}}); }
PathPtr path_next(PathPtr a) { return mkpath({TK::Next, nullptr, {std::move(a)}}); }
PathPtr path_future(PathPtr a) { return mkpath({TK::Future, nullptr, {std::move(a)}}); }
PathPtr path_globally(PathPtr a) { return mkpath({TK::Globally, nullptr, {std::move(a)}}); }
PathPtr path_until(PathPtr a, PathPtr b) { return mkpath({TK::Until, nullptr, {std::move(a), std::move(b)}}); }

// --- tokenizer --------------------------------------------------------------

namespace {

struct Token {
  enum class Type { Ident, Punct, End };
  Type type;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      out.push_back({Token::Type::Ident, text.substr(i, j - i), i});
      i = j;
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      out.push_back({Token::Type::Punct, "->", i});
      i += 2;
      continue;
    }
    static const std::string singles = "~&|<>[]();*?,";
    if (singles.find(c) != std::string::npos) {
      out.push_back({Token::Type::Punct, std::string(1, c), i});
      ++i;
      continue;
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", i);
  }
  out.push_back({Token::Type::End, "", text.size()});
  return out;
}

struct Parser {
  std::vector<Token> toks;
  std::size_t pos = 0;
  Lang lang;

  const Token& peek() const { return toks[pos]; }
  const Token& get() { return toks[pos++]; }
  bool at_punct(const std::string& p) const {
    return peek().type == Token::Type::Punct && peek().text == p;
  }
  bool at_ident(const std::string& w) const {
    return peek().type == Token::Type::Ident && peek().text == w;
  }
  void expect_punct(const std::string& p) {
    if (!at_punct(p)) throw ParseError("expected '" + p + "'", peek().pos);
    ++pos;
  }

  bool is_ctl_keyword(const std::string& w) const {
    return lang == Lang::Ctl &&
           (w == "E" || w == "A" || w == "X" || w == "F" || w == "G" || w == "U");
  }

  FormulaPtr parse_formula() { return parse_implies(); }

  FormulaPtr parse_implies() {
    FormulaPtr left = parse_or();
    if (at_punct("->")) {
      ++pos;
      return f_implies(std::move(left), parse_implies());
    }
    return left;
  }

  FormulaPtr parse_or() {
    FormulaPtr left = parse_and();
    while (at_punct("|")) {
      ++pos;
      left = f_or(std::move(left), parse_and());
    }
    return left;
  }

  FormulaPtr parse_and() {
    FormulaPtr left = parse_unary();
    while (at_punct("&")) {
      ++pos;
      left = f_and(std::move(left), parse_unary());
    }
    return left;
  }

  FormulaPtr parse_unary() {
    if (at_punct("~")) {
      ++pos;
      return f_not(parse_unary());
    }
    if (at_punct("<")) {
      std::size_t at = peek().pos;
      ++pos;
      if (at_punct(">")) {
        if (lang != Lang::Basic && lang != Lang::Extended)
          throw ParseError("'<>' is only available in the basic language", at);
        ++pos;
        return f_diamond(parse_unary());
      }
      if (lang == Lang::Pdl) {
        ProgramPtr p = parse_program();
        expect_punct(">");
        return f_diamond_prog(std::move(p), parse_unary());
      }
      if (lang == Lang::Game) {
        GamePtr g = parse_game();
        expect_punct(">");
        return f_diamond_game(std::move(g), parse_unary());
      }
      throw ParseError("unexpected '<'", at);
    }
    if (at_punct("[")) {
      std::size_t at = peek().pos;
      ++pos;
      if (at_punct("]")) {
        if (lang != Lang::Basic && lang != Lang::Extended)
          throw ParseError("'[]' is only available in the basic language", at);
        ++pos;
        return f_box(parse_unary());
      }
      if (lang == Lang::Pdl) {
        ProgramPtr p = parse_program();
        expect_punct("]");
        return f_box_prog(std::move(p), parse_unary());
      }
      if (lang == Lang::Game) {
        GamePtr g = parse_game();
        expect_punct("]");
        return f_box_game(std::move(g), parse_unary());
      }
      if (lang == Lang::Lifted) {
        if (peek().type != Token::Type::Ident) throw ParseError("expected a lifting name", peek().pos);
        std::string name = get().text;
        expect_punct("]");
        return f_lift(name, parse_unary());
      }
      throw ParseError("unexpected '['", at);
    }
    if (lang == Lang::Ctl && peek().type == Token::Type::Ident) {
      if (at_ident("E")) {
        ++pos;
        return f_exists(parse_path_term());
      }
      if (at_ident("A")) {
        ++pos;
        return f_all(parse_path_term());
      }
    }
    return parse_primary();
  }

  FormulaPtr parse_primary() {
    if (at_punct("(")) {
      ++pos;
      FormulaPtr f = parse_formula();
      expect_punct(")");
      return f;
    }
    if (peek().type != Token::Type::Ident)
      throw ParseError("expected a formula", peek().pos);
    std::string word = peek().text;
    if (word == "false") {
      ++pos;
      return f_false();
    }
    if (word == "true") {
      ++pos;
      return f_true();
    }
    if (is_ctl_keyword(word)) throw ParseError("'" + word + "' is a CTL keyword", peek().pos);
    ++pos;
    if (lang == Lang::Extended && at_punct("(")) {
      ++pos;
      std::vector<FormulaPtr> args;
      if (!at_punct(")")) {
        args.push_back(parse_formula());
        while (at_punct(",")) {
          ++pos;
          args.push_back(parse_formula());
        }
      }
      expect_punct(")");
      return f_modal(word, std::move(args));
    }
    return f_letter(word);
  }

  // programs ---------------------------------------------------------------

  ProgramPtr parse_program() {
    ProgramPtr left = parse_program_seq();
    while (at_ident("u")) {
      ++pos;
      left = p_union(std::move(left), parse_program_seq());
    }
    return left;
  }

  ProgramPtr parse_program_seq() {
    ProgramPtr left = parse_program_postfix();
    while (at_punct(";")) {
      ++pos;
      left = p_seq(std::move(left), parse_program_postfix());
    }
    return left;
  }

  ProgramPtr parse_program_postfix() {
    ProgramPtr p = parse_program_primary();
    while (at_punct("*")) {
      ++pos;
      p = p_star(std::move(p));
    }
    return p;
  }

  ProgramPtr parse_program_primary() {
    // a test: a formula followed by '?', recognized by trial parse
    std::size_t save = pos;
    try {
      FormulaPtr f = parse_formula();
      if (at_punct("?")) {
        ++pos;
        return p_test(std::move(f));
      }
    } catch (const ParseError&) {
    }
    pos = save;
    if (at_punct("(")) {
      ++pos;
      ProgramPtr p = parse_program();
      expect_punct(")");
      return p;
    }
    if (peek().type != Token::Type::Ident || at_ident("u"))
      throw ParseError("expected a program", peek().pos);
    return p_atomic(get().text);
  }

  // games --------------------------------------------------------------------

  GamePtr parse_game() {
    GamePtr left = parse_game_seq();
    while (at_ident("u") || at_ident("cap")) {
      bool angelic = at_ident("u");
      ++pos;
      GamePtr right = parse_game_seq();
      left = angelic ? g_angelic(std::move(left), std::move(right))
                     : g_demonic(std::move(left), std::move(right));
    }
    return left;
  }

  GamePtr parse_game_seq() {
    GamePtr left = parse_game_postfix();
    while (at_punct(";")) {
      ++pos;
      left = g_seq(std::move(left), parse_game_postfix());
    }
    return left;
  }

  GamePtr parse_game_postfix() {
    GamePtr g = parse_game_primary();
    while (true) {
      if (at_punct("*")) {
        ++pos;
        g = g_angelic_iter(std::move(g));
      } else if (at_ident("d")) {
        ++pos;
        g = g_dual(std::move(g));
      } else if (at_ident("x")) {
        ++pos;
        g = g_demonic_iter(std::move(g));
      } else {
        break;
      }
    }
    return g;
  }

  GamePtr parse_game_primary() {
    std::size_t save = pos;
    try {
      FormulaPtr f = parse_formula();
      if (at_punct("?")) {
        ++pos;
        return g_test(std::move(f));
      }
    } catch (const ParseError&) {
    }
    pos = save;
    if (at_punct("(")) {
      ++pos;
      GamePtr g = parse_game();
      expect_punct(")");
      return g;
    }
    if (peek().type != Token::Type::Ident || at_ident("u") || at_ident("cap") ||
        at_ident("d") || at_ident("x"))
      throw ParseError("expected a game", peek().pos);
    return g_atomic(get().text);
  }

  // path formulas ----------------------------------------------------------------

  PathPtr parse_path_term() {
    PathPtr left = parse_path_unary();
    if (at_ident("U")) {
      ++pos;
      PathPtr right = parse_path_unary();
      return path_until(std::move(left), std::move(right));
    }
    return left;
  }

  PathPtr parse_path_unary() {
    if (at_ident("X")) {
      ++pos;
      return path_next(parse_path_unary());
    }
    if (at_ident("F")) {
      ++pos;
      return path_future(parse_path_unary());
    }
    if (at_ident("G")) {
      ++pos;
      return path_globally(parse_path_unary());
    }
    if (at_punct("~")) {
      ++pos;
      return path_not(parse_path_unary());
    }
    if (at_punct("(")) {
      // either an embedded state formula or a parenthesized path formula
      std::size_t save = pos;
      try {
        ++pos;
        FormulaPtr f = parse_formula();
        expect_punct(")");
        return path_embed(std::move(f));
      } catch (const ParseError&) {
      }
      pos = save;
      ++pos;
      PathPtr p = parse_path_expr();
      expect_punct(")");
      return p;
    }
    return path_embed(parse_unary());
  }

  PathPtr parse_path_expr() {
    PathPtr left = parse_path_and();
    if (at_ident("U")) {
      ++pos;
      return path_until(std::move(left), parse_path_expr());
    }
    return left;
  }

  PathPtr parse_path_and() {
    PathPtr left = parse_path_unary();
    while (at_punct("&")) {
      ++pos;
      left = path_and(std::move(left), parse_path_unary());
    }
    return left;
  }
};

}  // namespace

FormulaPtr parse(const std::string& text, Lang lang) {
  Parser p{tokenize(text), 0, lang};
  FormulaPtr f = p.parse_formula();
  if (p.peek().type != Token::Type::End)
    throw ParseError("trailing input '" + p.peek().text + "'", p.peek().pos);
  return f;
}

// --- rendering --------------------------------------------------------------------

namespace {

int prec_of(const FormulaPtr& f) {
  switch (f->kind) {
    case FK::Implies: return 1;
    case FK::Or: return 2;
    case FK::And: return 3;
    case FK::Not:
    case FK::Diamond:
    case FK::Box:
    case FK::DiamondProg:
    case FK::BoxProg:
    case FK::DiamondGame:
    case FK::BoxGame:
    case FK::Exists:
    case FK::All:
    case FK::Lift: return 4;
    default: return 5;
  }
}

std::string render_at(const FormulaPtr& f, int need);

int prog_prec(const ProgramPtr& p) {
  switch (p->kind) {
    case PK::Union: return 1;
    case PK::Seq: return 2;
    case PK::Star: return 3;
    default: return 4;
  }
}

std::string render_prog_at(const ProgramPtr& p, int need);

std::string render_prog(const ProgramPtr& p) {
  switch (p->kind) {
    case PK::Atomic: return p->name;
    case PK::Seq: return render_prog_at(p->left, 2) + " ; " + render_prog_at(p->right, 3);
    case PK::Union: return render_prog_at(p->left, 1) + " u " + render_prog_at(p->right, 2);
    case PK::Star: return render_prog_at(p->left, 4) + "*";
    case PK::Test: {
      const FormulaPtr& f = p->test;
      if (prec_of(f) == 5 && f->kind != FK::Modal) return render_at(f, 5) + "?";
      return "(" + render_at(f, 0) + ")?";
    }
  }
  return "?";
}

std::string render_prog_at(const ProgramPtr& p, int need) {
  std::string s = render_prog(p);
  if (prog_prec(p) < need) return "(" + s + ")";
  return s;
}

int game_prec(const GamePtr& g) {
  switch (g->kind) {
    case GK::AngelicChoice:
    case GK::DemonicChoice: return 1;
    case GK::Seq: return 2;
    case GK::Dual:
    case GK::AngelicIter:
    case GK::DemonicIter: return 3;
    default: return 4;
  }
}

std::string render_game_at(const GamePtr& g, int need);

std::string render_game(const GamePtr& g) {
  switch (g->kind) {
    case GK::Atomic: return g->name;
    case GK::Seq: return render_game_at(g->left, 2) + " ; " + render_game_at(g->right, 3);
    case GK::AngelicChoice: return render_game_at(g->left, 1) + " u " + render_game_at(g->right, 2);
    case GK::DemonicChoice: return render_game_at(g->left, 1) + " cap " + render_game_at(g->right, 2);
    case GK::Dual: return render_game_at(g->left, 3) + " d";
    case GK::AngelicIter: return render_game_at(g->left, 3) + "*";
    case GK::DemonicIter: return render_game_at(g->left, 3) + " x";
    case GK::Test: {
      const FormulaPtr& f = g->test;
      if (prec_of(f) == 5 && f->kind != FK::Modal) return render_at(f, 5) + "?";
      return "(" + render_at(f, 0) + ")?";
    }
  }
  return "?";
}

std::string render_game_at(const GamePtr& g, int need) {
  std::string s = render_game(g);
  if (game_prec(g) < need) return "(" + s + ")";
  return s;
}

int path_prec(const PathPtr& p) {
  switch (p->kind) {
    case TK::Until: return 1;
    case TK::And: return 2;
    case TK::Not:
    case TK::Next:
    case TK::Future:
    case TK::Globally: return 3;
    default: return 4;
  }
}

std::string render_path_at(const PathPtr& p, int need);

std::string render_path(const PathPtr& p) {
  switch (p->kind) {
    case TK::Embed: {
      const FormulaPtr& f = p->state;
      if (f->kind == FK::Letter || f->kind == FK::False || f->kind == FK::True)
        return render_at(f, 5);
      return "(" + render_at(f, 0) + ")";
    }
    case TK::Not: return "~" + render_path_at(p->args[0], 3);
    case TK::And: return render_path_at(p->args[0], 2) + " & " + render_path_at(p->args[1], 3);
    case TK::Next: return "X " + render_path_at(p->args[0], 3);
    case TK::Future: return "F " + render_path_at(p->args[0], 3);
    case TK::Globally: return "G " + render_path_at(p->args[0], 3);
    case TK::Until:
      return render_path_at(p->args[0], 3) + " U " + render_path_at(p->args[1], 3);
  }
  return "?";
}

std::string render_path_at(const PathPtr& p, int need) {
  std::string s = render_path(p);
  if (path_prec(p) < need) return "(" + s + ")";
  return s;
}

std::string render_body(const FormulaPtr& f) {
  switch (f->kind) {
    case FK::False: return "false";
    case FK::True: return "true";
    case FK::Letter: return f->name;
    case FK::Not: return "~" + render_at(f->args[0], 4);
    case FK::And: return render_at(f->args[0], 3) + " & " + render_at(f->args[1], 4);
    case FK::Or: return render_at(f->args[0], 2) + " | " + render_at(f->args[1], 3);
    case FK::Implies: return render_at(f->args[0], 2) + " -> " + render_at(f->args[1], 1);
    case FK::Diamond: return "<>" + render_at(f->args[0], 4);
    case FK::Box: return "[]" + render_at(f->args[0], 4);
    case FK::Modal: {
      std::string out = f->name + "(";
      for (std::size_t i = 0; i < f->args.size(); ++i) {
        if (i) out += ", ";
        out += render_at(f->args[i], 0);
      }
      return out + ")";
    }
    case FK::DiamondProg: return "<" + render_prog(f->prog) + ">" + render_at(f->args[0], 4);
    case FK::BoxProg: return "[" + render_prog(f->prog) + "]" + render_at(f->args[0], 4);
    case FK::DiamondGame: return "<" + render_game(f->game) + ">" + render_at(f->args[0], 4);
    case FK::BoxGame: return "[" + render_game(f->game) + "]" + render_at(f->args[0], 4);
    case FK::Exists: return "E " + render_path_at(f->path, 1);
    case FK::All: return "A " + render_path_at(f->path, 1);
    case FK::Lift: return "[" + f->name + "]" + render_at(f->args[0], 4);
  }
  return "?";
}

std::string render_at(const FormulaPtr& f, int need) {
  std::string s = render_body(f);
  if (prec_of(f) < need) return "(" + s + ")";
  return s;
}

}  // namespace

std::string render(const FormulaPtr& f) { return render_at(f, 0); }
std::string render(const ProgramPtr& p) { return render_prog(p); }
std::string render(const GamePtr& g) { return render_game(g); }
std::string render(const PathPtr& p) { return render_path(p); }

// --- equality --------------------------------------------------------------------

bool equal(const ProgramPtr& a, const ProgramPtr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind || a->name != b->name) return false;
  return equal(a->left, b->left) && equal(a->right, b->right) && equal(a->test, b->test);
}

bool equal(const GamePtr& a, const GamePtr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind || a->name != b->name) return false;
  return equal(a->left, b->left) && equal(a->right, b->right) && equal(a->test, b->test);
}

bool equal(const PathPtr& a, const PathPtr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind || a->args.size() != b->args.size()) return false;
  if (!equal(a->state, b->state)) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!equal(a->args[i], b->args[i])) return false;
  return true;
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind || a->name != b->name || a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!equal(a->args[i], b->args[i])) return false;
  return equal(a->prog, b->prog) && equal(a->game, b->game) && equal(a->path, b->path);
}

// --- desugaring --------------------------------------------------------------------

namespace {

ProgramPtr desugar_prog(const ProgramPtr& p);
GamePtr desugar_game(const GamePtr& g);
PathPtr desugar_path(const PathPtr& p);

}  // namespace

FormulaPtr desugar(const FormulaPtr& f) {
  switch (f->kind) {
    case FK::False:
    case FK::Letter: return f;
    case FK::True: return f_not(f_false());
    case FK::Not: return f_not(desugar(f->args[0]));
    case FK::And: return f_and(desugar(f->args[0]), desugar(f->args[1]));
    case FK::Or:
      return f_not(f_and(f_not(desugar(f->args[0])), f_not(desugar(f->args[1]))));
    case FK::Implies:
      return f_not(f_and(desugar(f->args[0]), f_not(desugar(f->args[1]))));
    case FK::Diamond: return f_diamond(desugar(f->args[0]));
    case FK::Box: return f_not(f_diamond(f_not(desugar(f->args[0]))));
    case FK::Modal: {
      std::vector<FormulaPtr> args;
      for (const auto& a : f->args) args.push_back(desugar(a));
      return f_modal(f->name, std::move(args));
    }
    case FK::DiamondProg: return f_diamond_prog(desugar_prog(f->prog), desugar(f->args[0]));
    case FK::BoxProg:
      return f_not(f_diamond_prog(desugar_prog(f->prog), f_not(desugar(f->args[0]))));
    case FK::DiamondGame: return f_diamond_game(desugar_game(f->game), desugar(f->args[0]));
    case FK::BoxGame:
      return f_not(f_diamond_game(desugar_game(f->game), f_not(desugar(f->args[0]))));
    case FK::Exists: return f_exists(desugar_path(f->path));
    case FK::All: return f_all(desugar_path(f->path));
    case FK::Lift: return f_lift(f->name, desugar(f->args[0]));
  }
  return f;
}

namespace {

ProgramPtr desugar_prog(const ProgramPtr& p) {
  switch (p->kind) {
    case PK::Atomic: return p;
    case PK::Seq: return p_seq(desugar_prog(p->left), desugar_prog(p->right));
    case PK::Union: return p_union(desugar_prog(p->left), desugar_prog(p->right));
    case PK::Star: return p_star(desugar_prog(p->left));
    case PK::Test: return p_test(desugar(p->test));
  }
  return p;
}

GamePtr desugar_game(const GamePtr& g) {
  switch (g->kind) {
    case GK::Atomic: return g;
    case GK::Seq: return g_seq(desugar_game(g->left), desugar_game(g->right));
    case GK::AngelicChoice: return g_angelic(desugar_game(g->left), desugar_game(g->right));
    case GK::DemonicChoice: return g_demonic(desugar_game(g->left), desugar_game(g->right));
    case GK::Dual: return g_dual(desugar_game(g->left));
    case GK::AngelicIter: return g_angelic_iter(desugar_game(g->left));
    case GK::DemonicIter: return g_demonic_iter(desugar_game(g->left));
    case GK::Test: return g_test(desugar(g->test));
  }
  return g;
}

PathPtr desugar_path(const PathPtr& p) {
  switch (p->kind) {
    case TK::Embed: return path_embed(desugar(p->state));
    case TK::Not: return path_not(desugar_path(p->args[0]));
    case TK::And: return path_and(desugar_path(p->args[0]), desugar_path(p->args[1]));
    case TK::Next: return path_next(desugar_path(p->args[0]));
    case TK::Future: return path_future(desugar_path(p->args[0]));
    case TK::Globally: return path_globally(desugar_path(p->args[0]));
    case TK::Until: return path_until(desugar_path(p->args[0]), desugar_path(p->args[1]));
  }
  return p;
}

}  // namespace

FormulaPtr nabla(const std::string& op, std::vector<FormulaPtr> args) {
  std::vector<FormulaPtr> negated;
  for (auto& a : args) negated.push_back(f_not(std::move(a)));
  return f_not(f_modal(op, std::move(negated)));
}

// --- substitution --------------------------------------------------------------------

namespace {

ProgramPtr substitute_prog(const ProgramPtr& p, const Substitution& sigma);
GamePtr substitute_game(const GamePtr& g, const Substitution& sigma);
PathPtr substitute_path(const PathPtr& p, const Substitution& sigma);

}  // namespace

FormulaPtr substitute(const FormulaPtr& f, const Substitution& sigma) {
  switch (f->kind) {
    case FK::False:
    case FK::True: return f;
    case FK::Letter: {
      auto it = sigma.find(f->name);
      return it == sigma.end() ? f : it->second;
    }
    default: break;
  }
  std::vector<FormulaPtr> args;
  for (const auto& a : f->args) args.push_back(substitute(a, sigma));
  Formula out = *f;
  out.args = std::move(args);
  if (f->prog) out.prog = substitute_prog(f->prog, sigma);
  if (f->game) out.game = substitute_game(f->game, sigma);
  if (f->path) out.path = substitute_path(f->path, sigma);
  return std::make_shared<const Formula>(std::move(out));
}

namespace {

ProgramPtr substitute_prog(const ProgramPtr& p, const Substitution& sigma) {
  Program out = *p;
  if (p->left) out.left = substitute_prog(p->left, sigma);
  if (p->right) out.right = substitute_prog(p->right, sigma);
  if (p->test) out.test = substitute(p->test, sigma);
  return std::make_shared<const Program>(std::move(out));
}

GamePtr substitute_game(const GamePtr& g, const Substitution& sigma) {
  GameTerm out = *g;
  if (g->left) out.left = substitute_game(g->left, sigma);
  if (g->right) out.right = substitute_game(g->right, sigma);
  if (g->test) out.test = substitute(g->test, sigma);
  return std::make_shared<const GameTerm>(std::move(out));
}

PathPtr substitute_path(const PathPtr& p, const Substitution& sigma) {
  PathFormula out = *p;
  if (p->state) out.state = substitute(p->state, sigma);
  std::vector<PathPtr> args;
  for (const auto& a : p->args) args.push_back(substitute_path(a, sigma));
  out.args = std::move(args);
  return std::make_shared<const PathFormula>(std::move(out));
}

int prog_depth(const ProgramPtr& p) {
  int d = 0;
  if (p->left) d = std::max(d, prog_depth(p->left));
  if (p->right) d = std::max(d, prog_depth(p->right));
  if (p->test) d = std::max(d, modal_depth(p->test));
  return d;
}

int game_depth(const GamePtr& g) {
  int d = 0;
  if (g->left) d = std::max(d, game_depth(g->left));
  if (g->right) d = std::max(d, game_depth(g->right));
  if (g->test) d = std::max(d, modal_depth(g->test));
  return d;
}

int path_depth(const PathPtr& p) {
  int d = 0;
  if (p->state) d = std::max(d, modal_depth(p->state));
  for (const auto& a : p->args) d = std::max(d, path_depth(a));
  return d;
}

}  // namespace

int modal_depth(const FormulaPtr& f) {
  int sub = 0;
  for (const auto& a : f->args) sub = std::max(sub, modal_depth(a));
  switch (f->kind) {
    case FK::Diamond:
    case FK::Box:
    case FK::Modal:
    case FK::Lift: return 1 + sub;
    case FK::DiamondProg:
    case FK::BoxProg: return 1 + std::max(sub, prog_depth(f->prog));
    case FK::DiamondGame:
    case FK::BoxGame: return 1 + std::max(sub, game_depth(f->game));
    case FK::Exists:
    case FK::All: return 1 + path_depth(f->path);
    default: return sub;
  }
}

namespace {

void collect_letters(const FormulaPtr& f, std::set<std::string>& out);

void collect_prog(const ProgramPtr& p, std::set<std::string>& out) {
  if (!p) return;
  collect_prog(p->left, out);
  collect_prog(p->right, out);
  if (p->test) collect_letters(p->test, out);
}

void collect_game(const GamePtr& g, std::set<std::string>& out) {
  if (!g) return;
  collect_game(g->left, out);
  collect_game(g->right, out);
  if (g->test) collect_letters(g->test, out);
}

void collect_path(const PathPtr& p, std::set<std::string>& out) {
  if (!p) return;
  if (p->state) collect_letters(p->state, out);
  for (const auto& a : p->args) collect_path(a, out);
}

void collect_letters(const FormulaPtr& f, std::set<std::string>& out) {
  if (f->kind == FK::Letter) out.insert(f->name);
  for (const auto& a : f->args) collect_letters(a, out);
  collect_prog(f->prog, out);
  collect_game(f->game, out);
  collect_path(f->path, out);
}

/// A path formula built from embeds, negation and conjunction only; such
/// operands are state formulas in disguise.
bool state_like(const PathPtr& p) {
  switch (p->kind) {
    case TK::Embed: return is_ctl_state_formula(p->state);
    case TK::Not: return state_like(p->args[0]);
    case TK::And: return state_like(p->args[0]) && state_like(p->args[1]);
    default: return false;
  }
}

bool ctl_path_pair_ok(const PathPtr& p) {
  switch (p->kind) {
    case TK::Next:
    case TK::Future:
    case TK::Globally: return state_like(p->args[0]);
    case TK::Until: return state_like(p->args[0]) && state_like(p->args[1]);
    default: return false;
  }
}

}  // namespace

std::set<std::string> letters(const FormulaPtr& f) {
  std::set<std::string> out;
  collect_letters(f, out);
  return out;
}

bool is_ctl_state_formula(const FormulaPtr& f) {
  switch (f->kind) {
    case FK::False:
    case FK::True:
    case FK::Letter: return true;
    case FK::Not: return is_ctl_state_formula(f->args[0]);
    case FK::And:
    case FK::Or:
    case FK::Implies:
      return is_ctl_state_formula(f->args[0]) && is_ctl_state_formula(f->args[1]);
    case FK::Exists:
    case FK::All: return ctl_path_pair_ok(f->path);
    default: return false;
  }
}

}  // namespace coalg::logic
