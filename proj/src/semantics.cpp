#include "coalg/semantics.hpp"

#include <algorithm>

namespace coalg {

namespace logic_ns = coalg::logic;
using logic_ns::Formula;
using logic_ns::FormulaPtr;
using logic_ns::GamePtr;
using logic_ns::GameTerm;
using logic_ns::PathFormula;
using logic_ns::PathPtr;
using logic_ns::Program;
using logic_ns::ProgramPtr;
using FK = Formula::Kind;
using PK = Program::Kind;
using GK = GameTerm::Kind;
using TK = PathFormula::Kind;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

void check_valuation(const FinSet& worlds, const Valuation& val) {
  for (const auto& [p, set] : val)
    for (const auto& w : set)
      if (!worlds.contains(w)) fail("valuation of '" + p + "' mentions unknown world '" + w + "'");
}

const Subset& lookup_letter(const Valuation& val, const std::string& p) {
  auto it = val.find(p);
  if (it == val.end()) fail("undeclared letter '" + p + "'");
  return it->second;
}

Subset complement(const FinSet& worlds, const Subset& a) {
  Subset out;
  for (const auto& w : worlds)
    if (!a.count(w)) out.insert(w);
  return out;
}

Subset intersect(const Subset& a, const Subset& b) {
  Subset out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.begin()));
  return out;
}

Subset unite(const Subset& a, const Subset& b) {
  Subset out = a;
  out.insert(b.begin(), b.end());
  return out;
}

}  // namespace

void validate(const KripkeModel& m) {
  if (m.rel.left() != m.worlds || m.rel.right() != m.worlds)
    fail("accessibility relation must live on the worlds");
  check_valuation(m.worlds, m.valuation);
}

void validate(const TauModel& m) {
  for (const auto& [op, tuples] : m.rel) {
    auto it = m.arity.find(op);
    if (it == m.arity.end()) fail("relation for undeclared operator '" + op + "'");
    for (const auto& t : tuples) {
      if (static_cast<int>(t.size()) != it->second + 1)
        fail("tuple arity mismatch for operator '" + op + "'");
      for (const auto& w : t)
        if (!m.worlds.contains(w)) fail("tuple mentions unknown world '" + w + "'");
    }
  }
  check_valuation(m.worlds, m.valuation);
}

void validate(const NeighborhoodModel& m) {
  for (const auto& w : m.worlds) {
    auto it = m.nbhd.find(w);
    if (it == m.nbhd.end()) fail("no neighborhood family for world '" + w + "'");
    for (const auto& a : it->second)
      for (const auto& v : a)
        if (!m.worlds.contains(v)) fail("neighborhood mentions unknown world '" + v + "'");
    if (!is_upper_closed(m.worlds, it->second))
      fail("neighborhood family of '" + w + "' is not upward closed");
  }
  check_valuation(m.worlds, m.valuation);
}

void validate(const PdlModel& m) {
  for (const auto& [t, r] : m.atomic)
    if (r.left() != m.worlds || r.right() != m.worlds)
      fail("relation of atomic program '" + t + "' must live on the worlds");
  check_valuation(m.worlds, m.valuation);
}

void validate(const GameModel& m) {
  for (const auto& [g, table] : m.eff)
    for (const auto& w : m.worlds) {
      auto it = table.find(w);
      if (it == table.end()) fail("no effectivity family for '" + g + "' at world '" + w + "'");
      if (!is_upper_closed(m.worlds, it->second))
        fail("effectivity of '" + g + "' at '" + w + "' is not upward closed");
    }
  check_valuation(m.worlds, m.valuation);
}

void validate_lasso(const KripkeModel& m, const Lasso& l) {
  if (l.cycle.empty()) fail("lasso cycle must be nonempty");
  auto edge = [&](const std::string& a, const std::string& b) {
    if (!m.rel.contains(a, b)) fail("lasso uses the non-edge (" + a + "," + b + ")");
  };
  for (std::size_t i = 0; i + 1 < l.prefix.size(); ++i) edge(l.prefix[i], l.prefix[i + 1]);
  if (!l.prefix.empty()) edge(l.prefix.back(), l.cycle.front());
  for (std::size_t i = 0; i + 1 < l.cycle.size(); ++i) edge(l.cycle[i], l.cycle[i + 1]);
  edge(l.cycle.back(), l.cycle.front());
}

// --- basic Kripke semantics ---------------------------------------------------

Subset eval_basic(const KripkeModel& m, const FormulaPtr& f) {
  switch (f->kind) {
    case FK::False: return {};
    case FK::True: return m.worlds.as_subset();
    case FK::Letter: return lookup_letter(m.valuation, f->name);
    case FK::Not: return complement(m.worlds, eval_basic(m, f->args[0]));
    case FK::And: return intersect(eval_basic(m, f->args[0]), eval_basic(m, f->args[1]));
    case FK::Or: return unite(eval_basic(m, f->args[0]), eval_basic(m, f->args[1]));
    case FK::Implies:
      return unite(complement(m.worlds, eval_basic(m, f->args[0])),
                   eval_basic(m, f->args[1]));
    case FK::Diamond: {
      Subset arg = eval_basic(m, f->args[0]);
      Subset out;
      for (const auto& w : m.worlds)
        if (!intersect(m.rel.successors(w), arg).empty()) out.insert(w);
      return out;
    }
    case FK::Box: {
      Subset arg = eval_basic(m, f->args[0]);
      Subset out;
      for (const auto& w : m.worlds) {
        Subset succ = m.rel.successors(w);
        if (std::includes(arg.begin(), arg.end(), succ.begin(), succ.end())) out.insert(w);
      }
      return out;
    }
    default: fail("formula outside the basic modal language");
  }
}

// --- tau-model semantics ---------------------------------------------------------

Subset eval_extended(const TauModel& m, const FormulaPtr& f) {
  switch (f->kind) {
    case FK::False: return {};
    case FK::True: return m.worlds.as_subset();
    case FK::Letter: return lookup_letter(m.valuation, f->name);
    case FK::Not: return complement(m.worlds, eval_extended(m, f->args[0]));
    case FK::And: return intersect(eval_extended(m, f->args[0]), eval_extended(m, f->args[1]));
    case FK::Or: return unite(eval_extended(m, f->args[0]), eval_extended(m, f->args[1]));
    case FK::Implies:
      return unite(complement(m.worlds, eval_extended(m, f->args[0])),
                   eval_extended(m, f->args[1]));
    case FK::Modal: {
      auto ar = m.arity.find(f->name);
      if (ar == m.arity.end()) fail("undeclared operator '" + f->name + "'");
      if (static_cast<int>(f->args.size()) != ar->second)
        fail("operator '" + f->name + "' expects " + std::to_string(ar->second) + " arguments");
      std::vector<Subset> argsets;
      for (const auto& a : f->args) argsets.push_back(eval_extended(m, a));
      Subset out;
      auto tuples = m.rel.find(f->name);
      if (tuples == m.rel.end()) return out;
      for (const auto& t : tuples->second) {
        bool ok = true;
        for (std::size_t i = 0; i < argsets.size(); ++i)
          if (!argsets[i].count(t[i + 1])) {
            ok = false;
            break;
          }
        if (ok) out.insert(t[0]);
      }
      return out;
    }
    default: fail("formula outside the extended modal language");
  }
}

// --- neighborhood semantics --------------------------------------------------------

Subset eval_neighborhood(const NeighborhoodModel& m, const FormulaPtr& f) {
  switch (f->kind) {
    case FK::False: return {};
    case FK::True: return m.worlds.as_subset();
    case FK::Letter: return lookup_letter(m.valuation, f->name);
    case FK::Not: return complement(m.worlds, eval_neighborhood(m, f->args[0]));
    case FK::And:
      return intersect(eval_neighborhood(m, f->args[0]), eval_neighborhood(m, f->args[1]));
    case FK::Or:
      return unite(eval_neighborhood(m, f->args[0]), eval_neighborhood(m, f->args[1]));
    case FK::Implies:
      return unite(complement(m.worlds, eval_neighborhood(m, f->args[0])),
                   eval_neighborhood(m, f->args[1]));
    case FK::Box: {
      Subset arg = eval_neighborhood(m, f->args[0]);
      Subset out;
      for (const auto& w : m.worlds)
        if (m.nbhd.at(w).count(arg)) out.insert(w);
      return out;
    }
    case FK::Diamond: {
      Subset arg = complement(m.worlds, eval_neighborhood(m, f->args[0]));
      Subset out;
      for (const auto& w : m.worlds)
        if (!m.nbhd.at(w).count(arg)) out.insert(w);
      return out;
    }
    default: fail("formula outside the basic modal language");
  }
}

NeighborhoodModel kripke_to_neighborhood(const KripkeModel& m) {
  NeighborhoodModel out{m.worlds, {}, m.valuation};
  for (const auto& w : m.worlds)
    out.nbhd[w] = upward_closure(m.worlds, Family{m.rel.successors(w)});
  return out;
}

// --- PDL ----------------------------------------------------------------------------

FinRel pdl_relation(const PdlModel& m, const ProgramPtr& p) {
  switch (p->kind) {
    case PK::Atomic: {
      auto it = m.atomic.find(p->name);
      if (it == m.atomic.end()) fail("undeclared atomic program '" + p->name + "'");
      return it->second;
    }
    case PK::Union: return rel_union(pdl_relation(m, p->left), pdl_relation(m, p->right));
    case PK::Seq: return rel_compose(pdl_relation(m, p->left), pdl_relation(m, p->right));
    case PK::Star: {
      FinRel step = pdl_relation(m, p->left);
      FinRel acc = FinRel::diagonal(m.worlds);
      while (true) {
        FinRel next = rel_union(acc, rel_compose(acc, step));
        if (next == acc) return acc;
        acc = std::move(next);
      }
    }
    case PK::Test: {
      Subset holds = eval_pdl(m, p->test);
      PairSet pairs;
      for (const auto& w : holds) pairs.emplace(w, w);
      return FinRel(m.worlds, m.worlds, std::move(pairs));
    }
  }
  fail("unreachable program kind");
}

Subset eval_pdl(const PdlModel& m, const FormulaPtr& f) {
  switch (f->kind) {
    case FK::False: return {};
    case FK::True: return m.worlds.as_subset();
    case FK::Letter: return lookup_letter(m.valuation, f->name);
    case FK::Not: return complement(m.worlds, eval_pdl(m, f->args[0]));
    case FK::And: return intersect(eval_pdl(m, f->args[0]), eval_pdl(m, f->args[1]));
    case FK::Or: return unite(eval_pdl(m, f->args[0]), eval_pdl(m, f->args[1]));
    case FK::Implies:
      return unite(complement(m.worlds, eval_pdl(m, f->args[0])), eval_pdl(m, f->args[1]));
    case FK::DiamondProg: {
      FinRel r = pdl_relation(m, f->prog);
      Subset arg = eval_pdl(m, f->args[0]);
      Subset out;
      for (const auto& w : m.worlds)
        if (!intersect(r.successors(w), arg).empty()) out.insert(w);
      return out;
    }
    case FK::BoxProg: {
      FinRel r = pdl_relation(m, f->prog);
      Subset arg = eval_pdl(m, f->args[0]);
      Subset out;
      for (const auto& w : m.worlds) {
        Subset succ = r.successors(w);
        if (std::includes(arg.begin(), arg.end(), succ.begin(), succ.end())) out.insert(w);
      }
      return out;
    }
    default: fail("formula outside PDL");
  }
}

// --- game logic ------------------------------------------------------------------------

Subset game_effectivity(const GameModel& m, const GamePtr& g, const Subset& a) {
  switch (g->kind) {
    case GK::Atomic: {
      auto it = m.eff.find(g->name);
      if (it == m.eff.end()) fail("undeclared atomic game '" + g->name + "'");
      Subset out;
      for (const auto& w : m.worlds)
        if (it->second.at(w).count(a)) out.insert(w);
      return out;
    }
    case GK::AngelicChoice:
      return unite(game_effectivity(m, g->left, a), game_effectivity(m, g->right, a));
    case GK::Seq: return game_effectivity(m, g->left, game_effectivity(m, g->right, a));
    case GK::Dual:
      return complement(m.worlds,
                        game_effectivity(m, g->left, complement(m.worlds, a)));
    case GK::DemonicChoice:
      return game_effectivity(
          m, logic_ns::g_dual(logic_ns::g_angelic(logic_ns::g_dual(g->left),
                                                  logic_ns::g_dual(g->right))), a);
    case GK::AngelicIter: {
      // stabilizing union of the iterates P'_{g^n}(A), starting at A
      Subset iterate = a;
      Subset acc = a;
      std::set<Subset> seen{a};
      while (true) {
        iterate = game_effectivity(m, g->left, iterate);
        if (seen.count(iterate)) break;
        seen.insert(iterate);
        acc = unite(acc, iterate);
      }
      return acc;
    }
    case GK::DemonicIter:
      return game_effectivity(
          m, logic_ns::g_dual(logic_ns::g_angelic_iter(logic_ns::g_dual(g->left))), a);
    case GK::Test: return intersect(eval_game(m, g->test), a);
  }
  fail("unreachable game kind");
}

Subset eval_game(const GameModel& m, const FormulaPtr& f) {
  switch (f->kind) {
    case FK::False: return {};
    case FK::True: return m.worlds.as_subset();
    case FK::Letter: return lookup_letter(m.valuation, f->name);
    case FK::Not: return complement(m.worlds, eval_game(m, f->args[0]));
    case FK::And: return intersect(eval_game(m, f->args[0]), eval_game(m, f->args[1]));
    case FK::Or: return unite(eval_game(m, f->args[0]), eval_game(m, f->args[1]));
    case FK::Implies:
      return unite(complement(m.worlds, eval_game(m, f->args[0])), eval_game(m, f->args[1]));
    case FK::DiamondGame: return game_effectivity(m, f->game, eval_game(m, f->args[0]));
    case FK::BoxGame:
      return complement(m.worlds, game_effectivity(m, f->game,
                                                   complement(m.worlds, eval_game(m, f->args[0]))));
    default: fail("formula outside game logic");
  }
}

// --- CTL fixpoint engine ------------------------------------------------------------------

namespace {

Subset pre_exists(const KripkeModel& m, const Subset& target) {
  Subset out;
  for (const auto& w : m.worlds)
    if (!intersect(m.rel.successors(w), target).empty()) out.insert(w);
  return out;
}

/// States with at least one infinite outgoing path.
Subset infinite_states(const KripkeModel& m) {
  Subset s = m.worlds.as_subset();
  while (true) {
    Subset next = pre_exists(m, s);
    if (next == s) return s;
    s = std::move(next);
  }
}

Subset ctl_eg(const KripkeModel& m, const Subset& a) {
  Subset s = a;
  while (true) {
    Subset next = intersect(a, pre_exists(m, s));
    if (next == s) return s;
    s = std::move(next);
  }
}

Subset ctl_eu(const KripkeModel& m, const Subset& inf, const Subset& a, const Subset& b) {
  Subset s = intersect(b, inf);
  while (true) {
    Subset next = unite(s, intersect(a, pre_exists(m, s)));
    if (next == s) return s;
    s = std::move(next);
  }
}

}  // namespace

Subset ctl_eval(const KripkeModel& m, const FormulaPtr& f) {
  switch (f->kind) {
    case FK::False: return {};
    case FK::True: return m.worlds.as_subset();
    case FK::Letter: return lookup_letter(m.valuation, f->name);
    case FK::Not: return complement(m.worlds, ctl_eval(m, f->args[0]));
    case FK::And: return intersect(ctl_eval(m, f->args[0]), ctl_eval(m, f->args[1]));
    case FK::Or: return unite(ctl_eval(m, f->args[0]), ctl_eval(m, f->args[1]));
    case FK::Implies:
      return unite(complement(m.worlds, ctl_eval(m, f->args[0])), ctl_eval(m, f->args[1]));
    case FK::Exists:
    case FK::All: break;
    default: fail("formula outside the CTL fragment");
  }

  const PathPtr& path = f->path;
  bool exists = f->kind == FK::Exists;
  // operands of the paired path operator: embeds possibly wrapped in
  // path-level negation/conjunction, which are state connectives here
  std::function<Subset(const PathPtr&)> embed = [&](const PathPtr& p) -> Subset {
    switch (p->kind) {
      case TK::Embed: return ctl_eval(m, p->state);
      case TK::Not: return complement(m.worlds, embed(p->args[0]));
      case TK::And: return intersect(embed(p->args[0]), embed(p->args[1]));
      default: fail("formula outside the CTL fragment (nested path operators)");
    }
  };
  Subset inf = infinite_states(m);
  Subset full = m.worlds.as_subset();

  switch (path->kind) {
    case TK::Next: {
      Subset a = embed(path->args[0]);
      Subset ex = pre_exists(m, intersect(a, inf));
      if (exists) return ex;
      // A X a = ~ E X ~a
      Subset exneg = pre_exists(m, intersect(complement(m.worlds, a), inf));
      return complement(m.worlds, exneg);
    }
    case TK::Future: {
      Subset a = embed(path->args[0]);
      if (exists) return ctl_eu(m, inf, full, a);
      // A F a = ~ E G ~a
      return complement(m.worlds, ctl_eg(m, complement(m.worlds, a)));
    }
    case TK::Globally: {
      Subset a = embed(path->args[0]);
      if (exists) return ctl_eg(m, a);
      // A G a = ~ E F ~a
      return complement(m.worlds, ctl_eu(m, inf, full, complement(m.worlds, a)));
    }
    case TK::Until: {
      Subset a = embed(path->args[0]);
      Subset b = embed(path->args[1]);
      if (exists) return ctl_eu(m, inf, a, b);
      // A (a U b) = ~( E(~b U ~a&~b) | E G ~b )
      Subset nb = complement(m.worlds, b);
      Subset na = complement(m.worlds, a);
      Subset bad = unite(ctl_eu(m, inf, nb, intersect(na, nb)), ctl_eg(m, nb));
      return complement(m.worlds, bad);
    }
    default: fail("formula outside the CTL fragment (path operator required)");
  }
  fail("unreachable");
}

// --- lasso oracle ---------------------------------------------------------------------------

namespace {

struct LassoEval {
  const std::vector<std::string>* seq;  // prefix followed by cycle
  std::size_t prefix_len;
  std::size_t total;
  const std::map<const Formula*, Subset>* states;

  std::size_t step(std::size_t pos) const {
    return pos + 1 < total ? pos + 1 : prefix_len;
  }
  std::size_t advance(std::size_t pos, std::size_t k) const {
    for (std::size_t i = 0; i < k; ++i) pos = step(pos);
    return pos;
  }

  bool eval(const PathPtr& p, std::size_t pos) const {
    switch (p->kind) {
      case TK::Embed: return states->at(p->state.get()).count((*seq)[pos]) > 0;
      case TK::Not: return !eval(p->args[0], pos);
      case TK::And: return eval(p->args[0], pos) && eval(p->args[1], pos);
      case TK::Next: return eval(p->args[0], step(pos));
      case TK::Future: {
        std::size_t cursor = pos;
        for (std::size_t k = 0; k < total; ++k) {
          if (eval(p->args[0], cursor)) return true;
          cursor = step(cursor);
        }
        return false;
      }
      case TK::Globally: {
        std::size_t cursor = pos;
        for (std::size_t k = 0; k < total; ++k) {
          if (!eval(p->args[0], cursor)) return false;
          cursor = step(cursor);
        }
        return true;
      }
      case TK::Until: {
        std::size_t cursor = pos;
        for (std::size_t k = 0; k < total; ++k) {
          if (eval(p->args[1], cursor)) return true;
          if (!eval(p->args[0], cursor)) return false;
          cursor = step(cursor);
        }
        return false;
      }
    }
    return false;
  }
};

void collect_embeds(const PathPtr& p, std::vector<FormulaPtr>& out) {
  if (p->kind == TK::Embed) {
    out.push_back(p->state);
    return;
  }
  for (const auto& a : p->args) collect_embeds(a, out);
}

/// Quantify a path formula over every lasso from w within the bounds.
/// Returns whether the quantified formula holds; `exists` selects E vs A.
bool quantify_lassos(const KripkeModel& m, const std::string& w, const PathPtr& path,
                     bool exists, std::size_t prefix_bound, std::size_t cycle_bound,
                     const std::map<const Formula*, Subset>& states) {
  std::vector<std::string> walk{w};
  bool any_lasso = false;
  bool verdict = !exists;  // E: false until a witness, A: true until a counterexample
  bool done = false;

  std::function<void()> dfs = [&]() {
    if (done) return;
    std::size_t k = walk.size() - 1;  // index of the last node
    // try every split of the current walk into prefix + cycle
    for (std::size_t mlen = 0; mlen <= k && !done; ++mlen) {
      if (mlen > prefix_bound) break;
      if (k - mlen + 1 > cycle_bound) continue;
      if (!m.rel.contains(walk[k], walk[mlen])) continue;
      any_lasso = true;
      LassoEval ev{&walk, mlen, k + 1, &states};
      bool sat = ev.eval(path, 0);
      if (exists && sat) {
        verdict = true;
        done = true;
      }
      if (!exists && !sat) {
        verdict = false;
        done = true;
      }
    }
    if (done) return;
    if (walk.size() >= prefix_bound + cycle_bound) return;
    for (const auto& next : m.rel.successors(walk.back())) {
      walk.push_back(next);
      dfs();
      walk.pop_back();
      if (done) return;
    }
  };
  dfs();

  if (!any_lasso) return !exists;  // no paths: E is false, A vacuously true
  return verdict;
}

}  // namespace

Subset lasso_oracle(const KripkeModel& m, const FormulaPtr& f, std::size_t prefix_bound,
                    std::size_t cycle_bound) {
  if (prefix_bound + cycle_bound > 24) throw CapExceeded("lasso bounds too large");
  if (cycle_bound == 0) fail("cycle bound must be positive");
  switch (f->kind) {
    case FK::False: return {};
    case FK::True: return m.worlds.as_subset();
    case FK::Letter: return lookup_letter(m.valuation, f->name);
    case FK::Not:
      return complement(m.worlds, lasso_oracle(m, f->args[0], prefix_bound, cycle_bound));
    case FK::And:
      return intersect(lasso_oracle(m, f->args[0], prefix_bound, cycle_bound),
                       lasso_oracle(m, f->args[1], prefix_bound, cycle_bound));
    case FK::Or:
      return unite(lasso_oracle(m, f->args[0], prefix_bound, cycle_bound),
                   lasso_oracle(m, f->args[1], prefix_bound, cycle_bound));
    case FK::Implies:
      return unite(complement(m.worlds, lasso_oracle(m, f->args[0], prefix_bound, cycle_bound)),
                   lasso_oracle(m, f->args[1], prefix_bound, cycle_bound));
    case FK::Exists:
    case FK::All: {
      std::vector<FormulaPtr> embeds;
      collect_embeds(f->path, embeds);
      std::map<const Formula*, Subset> states;
      for (const auto& e : embeds)
        states.emplace(e.get(), lasso_oracle(m, e, prefix_bound, cycle_bound));
      Subset out;
      bool exists = f->kind == FK::Exists;
      for (const auto& w : m.worlds)
        if (quantify_lassos(m, w, f->path, exists, prefix_bound, cycle_bound, states))
          out.insert(w);
      return out;
    }
    default: fail("formula outside the lasso oracle's language");
  }
}

// --- bounded satisfiability ---------------------------------------------------------------

std::optional<SatWitness> find_model_bounded(const FormulaPtr& f, std::size_t max_states) {
  if (max_states > 4) throw CapExceeded("satisfiability search capped at 4 states");
  std::set<std::string> props = logic_ns::letters(f);
  if (props.size() > 3) throw CapExceeded("satisfiability search capped at 3 letters");
  std::vector<std::string> letters_sorted(props.begin(), props.end());

  for (std::size_t n = 1; n <= max_states; ++n) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i) names.push_back("w" + std::to_string(i));
    FinSet worlds(names);
    std::vector<ElemPair> pairs;
    for (const auto& a : worlds)
      for (const auto& b : worlds) pairs.emplace_back(a, b);
    std::size_t rel_count = std::size_t(1) << pairs.size();
    std::size_t val_count = std::size_t(1) << (letters_sorted.size() * n);

    for (std::size_t rmask = 0; rmask < rel_count; ++rmask) {
      PairSet rel;
      for (std::size_t i = 0; i < pairs.size(); ++i)
        if (rmask & (std::size_t(1) << i)) rel.insert(pairs[i]);
      for (std::size_t vmask = 0; vmask < val_count; ++vmask) {
        Valuation val;
        for (const auto& p : letters_sorted) val[p] = {};
        std::size_t bit = 0;
        for (const auto& p : letters_sorted)
          for (const auto& w : worlds) {
            if (vmask & (std::size_t(1) << bit)) val[p].insert(w);
            ++bit;
          }
        KripkeModel m{worlds, FinRel(worlds, worlds, rel), std::move(val)};
        Subset sat = eval_basic(m, f);
        if (!sat.empty()) {
          std::string witness = *sat.begin();
          // the witness is re-verified by the same engine before returning
          if (eval_basic(m, f).count(witness)) return SatWitness{std::move(m), witness};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace coalg
