#include "coalg/bisim.hpp"

#include <algorithm>

namespace coalg {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

Subset letters_of(const CoalgebraView& v) {
  Subset out;
  for (const auto& [p, set] : v.valuation) out.insert(p);
  return out;
}

bool letter_holds(const CoalgebraView& v, const std::string& p, const std::string& w) {
  auto it = v.valuation.find(p);
  return it != v.valuation.end() && it->second.count(w) > 0;
}

void check_tags(const CoalgebraView& s, const CoalgebraView& t) {
  if (s.tag() != t.tag()) fail("functor tags do not match");
}

void check_rel_carriers(const CoalgebraView& s, const CoalgebraView& t, const FinRel& b) {
  if (b.left() != s.carrier || b.right() != t.carrier)
    fail("relation endpoints do not match the carriers");
}

}  // namespace

CoalgebraView view_of(const KripkeModel& m) {
  PowDynamics dyn;
  for (const auto& w : m.worlds) dyn.succ[w] = m.rel.successors(w);
  return {m.worlds, std::move(dyn), m.valuation};
}

CoalgebraView ts_view(const FinSet& states, const FinRel& rel) {
  PowDynamics dyn;
  for (const auto& w : states) dyn.succ[w] = rel.successors(w);
  return {states, std::move(dyn), {}};
}

CoalgebraView view_of(const LabeledTS& m) {
  LtsDynamics dyn;
  dyn.actions = m.actions;
  for (const auto& a : m.actions) {
    auto it = m.rel.find(a);
    for (const auto& w : m.worlds)
      dyn.succ[a][w] = it == m.rel.end() ? Subset{} : it->second.successors(w);
  }
  return {m.worlds, std::move(dyn), {}};
}

CoalgebraView view_of(const NeighborhoodModel& m) {
  NbhdDynamics dyn;
  dyn.nbhd = m.nbhd;
  return {m.worlds, std::move(dyn), m.valuation};
}

CoalgebraView mealy_view(const FinSet& states, const FinSet& inputs,
                         const std::map<std::string, std::map<std::string, MealyStep>>& step) {
  for (const auto& s : states) {
    auto it = step.find(s);
    if (it == step.end()) fail("mealy dynamics missing state '" + s + "'");
    for (const auto& i : inputs)
      if (!it->second.count(i)) fail("mealy dynamics missing input '" + i + "' at '" + s + "'");
  }
  return {states, MealyDynamics{inputs, step}, {}};
}

// --- checking given relations ------------------------------------------------

namespace {

/// Harmony + per-tag clauses for one pair; returns an empty string when the
/// pair is fine, otherwise the first violation for that pair.
std::string pair_violation(const CoalgebraView& s, const CoalgebraView& t, const FinRel& b,
                           const std::string& w, const std::string& x) {
  Subset props = letters_of(s);
  for (const auto& p : letters_of(t)) props.insert(p);
  for (const auto& p : props)
    if (letter_holds(s, p, w) != letter_holds(t, p, x))
      return "atomic harmony fails at (" + w + "," + x + ") on letter " + p;

  switch (s.tag()) {
    case FunctorTag::Pow: {
      for (const auto& w2 : s.pow().succ.at(w)) {
        bool matched = false;
        for (const auto& x2 : t.pow().succ.at(x))
          if (b.contains(w2, x2)) {
            matched = true;
            break;
          }
        if (!matched)
          return "forth fails at (" + w + "," + x + "): transition " + w + "->" + w2 +
                 " unmatched";
      }
      for (const auto& x2 : t.pow().succ.at(x)) {
        bool matched = false;
        for (const auto& w2 : s.pow().succ.at(w))
          if (b.contains(w2, x2)) {
            matched = true;
            break;
          }
        if (!matched)
          return "back fails at (" + w + "," + x + "): transition " + x + "->" + x2 +
                 " unmatched";
      }
      return "";
    }
    case FunctorTag::Lts: {
      if (s.lts().actions != t.lts().actions) fail("labeled systems use different action sets");
      for (const auto& a : s.lts().actions) {
        for (const auto& w2 : s.lts().succ.at(a).at(w)) {
          bool matched = false;
          for (const auto& x2 : t.lts().succ.at(a).at(x))
            if (b.contains(w2, x2)) {
              matched = true;
              break;
            }
          if (!matched)
            return "forth fails at (" + w + "," + x + ") on action " + a;
        }
        for (const auto& x2 : t.lts().succ.at(a).at(x)) {
          bool matched = false;
          for (const auto& w2 : s.lts().succ.at(a).at(w))
            if (b.contains(w2, x2)) {
              matched = true;
              break;
            }
          if (!matched)
            return "back fails at (" + w + "," + x + ") on action " + a;
        }
      }
      return "";
    }
    case FunctorTag::Nbhd: {
      const Family& fw = s.nbhd().nbhd.at(w);
      const Family& gx = t.nbhd().nbhd.at(x);
      // for all X in f(w) there is Y in g(x) with: every y in Y sees some
      // x' in X with (x',y) in B
      for (const auto& setx : fw) {
        bool witnessed = false;
        for (const auto& sety : gx) {
          bool all_covered = true;
          for (const auto& y : sety) {
            bool has = false;
            for (const auto& x2 : setx)
              if (b.contains(x2, y)) {
                has = true;
                break;
              }
            if (!has) {
              all_covered = false;
              break;
            }
          }
          if (all_covered) {
            witnessed = true;
            break;
          }
        }
        if (!witnessed)
          return "clause 1 fails at (" + w + "," + x + ") for " + render_set(setx);
      }
      for (const auto& sety : gx) {
        bool witnessed = false;
        for (const auto& setx : fw) {
          bool all_covered = true;
          for (const auto& x2 : setx) {
            bool has = false;
            for (const auto& y : sety)
              if (b.contains(x2, y)) {
                has = true;
                break;
              }
            if (!has) {
              all_covered = false;
              break;
            }
          }
          if (all_covered) {
            witnessed = true;
            break;
          }
        }
        if (!witnessed)
          return "clause 2 fails at (" + w + "," + x + ") for " + render_set(sety);
      }
      return "";
    }
    case FunctorTag::Mealy: {
      if (s.mealy().inputs != t.mealy().inputs) fail("mealy systems use different input sets");
      for (const auto& i : s.mealy().inputs) {
        const MealyStep& a = s.mealy().step.at(w).at(i);
        const MealyStep& c = t.mealy().step.at(x).at(i);
        if (a.out != c.out)
          return "outputs differ at (" + w + "," + x + ") on input " + i;
        if (!b.contains(a.next, c.next))
          return "successor pair (" + a.next + "," + c.next + ") on input " + i +
                 " escapes the relation at (" + w + "," + x + ")";
      }
      return "";
    }
  }
  return "";
}

}  // namespace

CheckResult check_coalg_bisimulation(const CoalgebraView& s, const CoalgebraView& t,
                                     const FinRel& b) {
  check_tags(s, t);
  check_rel_carriers(s, t, b);
  CheckResult result;
  for (const auto& [w, x] : b.pairs()) {
    std::string v = pair_violation(s, t, b, w, x);
    if (!v.empty()) {
      result.ok = false;
      result.violation = v;
      break;
    }
  }
  if (s.tag() == FunctorTag::Nbhd) {
    Subset lefts, rights;
    for (const auto& [w, x] : b.pairs()) {
      lefts.insert(w);
      rights.insert(x);
    }
    bool surj = lefts.size() == s.carrier.size() && rights.size() == t.carrier.size();
    result.note = std::string("projections surjective: ") + (surj ? "yes" : "no");
  }
  return result;
}

CheckResult check_kripke_bisimulation(const KripkeModel& m, const KripkeModel& n,
                                      const FinRel& b) {
  return check_coalg_bisimulation(view_of(m), view_of(n), b);
}

std::optional<Mediating> construct_mediating(const CoalgebraView& s, const CoalgebraView& t,
                                             const FinRel& b) {
  check_tags(s, t);
  check_rel_carriers(s, t, b);
  if (s.tag() == FunctorTag::Nbhd) return std::nullopt;

  std::vector<std::string> names;
  std::map<std::string, ElemPair> decode;
  for (const auto& [w, x] : b.pairs()) {
    std::string n = pair_name(w, x);
    names.push_back(n);
    decode[n] = {w, x};
  }
  FinSet carrier(std::move(names));
  std::map<std::string, std::string> pl, pr;
  for (const auto& [n, p] : decode) {
    pl[n] = p.first;
    pr[n] = p.second;
  }
  FinFn to_left(carrier, s.carrier, std::move(pl));
  FinFn to_right(carrier, t.carrier, std::move(pr));

  CoalgebraView med;
  med.carrier = carrier;
  for (const auto& [p, set] : s.valuation) {
    Subset lifted;
    for (const auto& n : carrier)
      if (set.count(decode.at(n).first)) lifted.insert(n);
    med.valuation[p] = lifted;
  }

  switch (s.tag()) {
    case FunctorTag::Pow: {
      PowDynamics dyn;
      for (const auto& n : carrier) {
        const auto& [w, x] = decode.at(n);
        Subset h;
        for (const auto& [w2, x2] : b.pairs())
          if (s.pow().succ.at(w).count(w2) && t.pow().succ.at(x).count(x2))
            h.insert(pair_name(w2, x2));
        dyn.succ[n] = std::move(h);
      }
      med.dynamics = std::move(dyn);
      break;
    }
    case FunctorTag::Lts: {
      LtsDynamics dyn;
      dyn.actions = s.lts().actions;
      for (const auto& a : dyn.actions)
        for (const auto& n : carrier) {
          const auto& [w, x] = decode.at(n);
          Subset h;
          for (const auto& [w2, x2] : b.pairs())
            if (s.lts().succ.at(a).at(w).count(w2) && t.lts().succ.at(a).at(x).count(x2))
              h.insert(pair_name(w2, x2));
          dyn.succ[a][n] = std::move(h);
        }
      med.dynamics = std::move(dyn);
      break;
    }
    case FunctorTag::Mealy: {
      MealyDynamics dyn;
      dyn.inputs = s.mealy().inputs;
      for (const auto& n : carrier) {
        const auto& [w, x] = decode.at(n);
        for (const auto& i : dyn.inputs) {
          const MealyStep& a = s.mealy().step.at(w).at(i);
          const MealyStep& c = t.mealy().step.at(x).at(i);
          if (a.out != c.out || !b.contains(a.next, c.next)) return std::nullopt;
          dyn.step[n][i] = MealyStep{pair_name(a.next, c.next), a.out};
        }
      }
      med.dynamics = std::move(dyn);
      break;
    }
    default: return std::nullopt;
  }

  Mediating result{std::move(med), to_left, to_right};
  if (!check_coalgebra_morphism(result.to_left, result.on_pairs, s).ok) return std::nullopt;
  if (!check_coalgebra_morphism(result.to_right, result.on_pairs, t).ok) return std::nullopt;
  return result;
}

// --- largest bisimulation by partition refinement -----------------------------------

namespace {

struct UnionState {
  bool left;
  std::string name;
  bool operator<(const UnionState& o) const {
    if (left != o.left) return left;
    return name < o.name;
  }
};

/// Partition refinement over the disjoint union of two same-tag systems.
/// Returns the block index of every state.
std::map<UnionState, int> refine(const CoalgebraView& s, const CoalgebraView& t,
                                 int max_rounds) {
  std::vector<UnionState> states;
  for (const auto& w : s.carrier) states.push_back({true, w});
  for (const auto& x : t.carrier) states.push_back({false, x});

  auto side = [&](const UnionState& u) -> const CoalgebraView& { return u.left ? s : t; };

  // initial partition: agreement on the letter profile (and, for mealy,
  // everything starts together; outputs are part of each round's signature)
  Subset props = letters_of(s);
  for (const auto& p : letters_of(t)) props.insert(p);
  std::map<UnionState, int> block;
  {
    std::map<std::vector<bool>, int> profile_ids;
    for (const auto& u : states) {
      std::vector<bool> profile;
      for (const auto& p : props) profile.push_back(letter_holds(side(u), p, u.name));
      auto [it, fresh] = profile_ids.emplace(profile, static_cast<int>(profile_ids.size()));
      block[u] = it->second;
    }
  }

  // output alphabet ids for mealy signatures
  std::map<std::string, int> out_ids;
  for (const CoalgebraView* v : {&s, &t})
    if (v->tag() == FunctorTag::Mealy)
      for (const auto& [st, row] : v->mealy().step)
        for (const auto& [i, step] : row) out_ids.emplace(step.out, static_cast<int>(out_ids.size()));

  for (int round = 0; max_rounds < 0 || round < max_rounds; ++round) {
    // signature of a state: its block plus the blocks reachable per tag
    std::map<std::vector<int>, int> sig_ids;
    std::map<UnionState, int> next;
    for (const auto& u : states) {
      std::vector<int> sig{block.at(u)};
      const CoalgebraView& v = side(u);
      switch (v.tag()) {
        case FunctorTag::Pow: {
          std::set<int> seen;
          for (const auto& w2 : v.pow().succ.at(u.name)) seen.insert(block.at({u.left, w2}));
          sig.insert(sig.end(), seen.begin(), seen.end());
          break;
        }
        case FunctorTag::Lts: {
          for (const auto& a : v.lts().actions) {
            std::set<int> seen;
            for (const auto& w2 : v.lts().succ.at(a).at(u.name))
              seen.insert(block.at({u.left, w2}));
            sig.push_back(-1);  // action separator
            sig.insert(sig.end(), seen.begin(), seen.end());
          }
          break;
        }
        case FunctorTag::Mealy: {
          for (const auto& i : v.mealy().inputs) {
            const MealyStep& st = v.mealy().step.at(u.name).at(i);
            sig.push_back(-1);
            sig.push_back(out_ids.at(st.out));
            sig.push_back(block.at({u.left, st.next}));
          }
          break;
        }
        case FunctorTag::Nbhd: fail("refinement does not handle the neighborhood tag");
      }
      auto [it, fresh] = sig_ids.emplace(sig, static_cast<int>(sig_ids.size()));
      next[u] = it->second;
    }
    std::set<int> old_ids;
    for (const auto& [u, bidx] : block) old_ids.insert(bidx);
    // the signature refines the previous partition, so equal block counts
    // mean the refinement is stable
    if (sig_ids.size() == old_ids.size()) return block;
    block = std::move(next);
  }
  return block;
}

FinRel cross_relation(const CoalgebraView& s, const CoalgebraView& t,
                      const std::map<UnionState, int>& block) {
  PairSet pairs;
  for (const auto& w : s.carrier)
    for (const auto& x : t.carrier)
      if (block.at({true, w}) == block.at({false, x})) pairs.emplace(w, x);
  return FinRel(s.carrier, t.carrier, std::move(pairs));
}

FinRel nbhd_largest(const CoalgebraView& s, const CoalgebraView& t) {
  // greatest fixpoint of the clause operator starting from atomic harmony
  PairSet pairs;
  Subset props = letters_of(s);
  for (const auto& p : letters_of(t)) props.insert(p);
  for (const auto& w : s.carrier)
    for (const auto& x : t.carrier) {
      bool harmony = true;
      for (const auto& p : props)
        if (letter_holds(s, p, w) != letter_holds(t, p, x)) {
          harmony = false;
          break;
        }
      if (harmony) pairs.emplace(w, x);
    }
  FinRel b(s.carrier, t.carrier, std::move(pairs));
  while (true) {
    PairSet keep;
    for (const auto& [w, x] : b.pairs())
      if (pair_violation(s, t, b, w, x).empty()) keep.emplace(w, x);
    FinRel next(s.carrier, t.carrier, std::move(keep));
    if (next == b) return b;
    b = std::move(next);
  }
}

}  // namespace

FinRel largest_bisimulation(const CoalgebraView& s, const CoalgebraView& t) {
  check_tags(s, t);
  if (s.tag() == FunctorTag::Nbhd) return nbhd_largest(s, t);
  return cross_relation(s, t, refine(s, t, -1));
}

FinRel largest_bisimulation(const KripkeModel& m, const KripkeModel& n) {
  return largest_bisimulation(view_of(m), view_of(n));
}

FinRel modal_equivalence_partition(const KripkeModel& m, const KripkeModel& n, int depth) {
  if (depth < 0) fail("depth must be nonnegative");
  CoalgebraView s = view_of(m), t = view_of(n);
  return cross_relation(s, t, refine(s, t, depth));
}

// --- quotient ----------------------------------------------------------------------------

QuotientResult quotient(const KripkeModel& m, const FinRel& alpha) {
  if (alpha.left() != m.worlds || alpha.right() != m.worlds)
    fail("equivalence must live on the model's worlds");
  if (!alpha.is_equivalence()) fail("relation is not an equivalence");
  CheckResult accepted = check_kripke_bisimulation(m, m, alpha);
  if (!accepted.ok) fail("relation is not a bisimulation: " + accepted.violation);

  Partition classes = Partition::from_equivalence(alpha);
  FinSet blocks = classes.block_set();
  FinFn class_map = classes.class_map();

  PairSet rel;
  for (const auto& [w, w2] : m.rel.pairs()) rel.emplace(class_map(w), class_map(w2));
  Valuation val;
  for (const auto& [p, set] : m.valuation) {
    Subset lifted;
    for (const auto& block : classes.blocks()) {
      const std::string& repr = *block.begin();
      bool holds = set.count(repr) > 0;
      for (const auto& member : block)
        if ((set.count(member) > 0) != holds)
          fail("valuation of '" + p + "' is split across the block " +
               Partition::block_name(block));
      if (holds) lifted.insert(Partition::block_name(block));
    }
    val[p] = lifted;
  }

  QuotientResult out{KripkeModel{blocks, FinRel(blocks, blocks, std::move(rel)), std::move(val)},
                     class_map, classes};
  CheckResult morph = check_coalgebra_morphism(class_map, view_of(m), view_of(out.model));
  if (!morph.ok) fail("class map is not a model morphism: " + morph.violation);
  return out;
}

// --- coalgebra morphisms ----------------------------------------------------------------------

CheckResult check_coalgebra_morphism(const FinFn& f, const CoalgebraView& s,
                                     const CoalgebraView& t) {
  check_tags(s, t);
  if (f.domain() != s.carrier || f.codomain() != t.carrier)
    fail("map endpoints do not match the carriers");
  CheckResult result;

  Subset props = letters_of(s);
  for (const auto& p : letters_of(t)) props.insert(p);
  for (const auto& w : s.carrier)
    for (const auto& p : props)
      if (letter_holds(s, p, w) != letter_holds(t, p, f(w))) {
        result.ok = false;
        result.violation = "letter " + p + " differs at " + w + " vs " + f(w);
        return result;
      }

  switch (s.tag()) {
    case FunctorTag::Pow: {
      for (const auto& w : s.carrier) {
        Subset image;
        for (const auto& w2 : s.pow().succ.at(w)) image.insert(f(w2));
        if (image != t.pow().succ.at(f(w))) {
          result.ok = false;
          result.violation = "square fails at " + w + ": f[succ] = " + render_set(image) +
                             " but succ(f(" + w + ")) = " + render_set(t.pow().succ.at(f(w)));
          return result;
        }
      }
      return result;
    }
    case FunctorTag::Lts: {
      if (s.lts().actions != t.lts().actions) fail("labeled systems use different action sets");
      for (const auto& a : s.lts().actions)
        for (const auto& w : s.carrier) {
          Subset image;
          for (const auto& w2 : s.lts().succ.at(a).at(w)) image.insert(f(w2));
          if (image != t.lts().succ.at(a).at(f(w))) {
            result.ok = false;
            result.violation = "square fails at " + w + " on action " + a;
            return result;
          }
        }
      return result;
    }
    case FunctorTag::Nbhd: {
      for (const auto& w : s.carrier) {
        Family lifted;
        for (const auto& target : all_subsets(t.carrier))
          if (s.nbhd().nbhd.at(w).count(f.preimage_of(target))) lifted.insert(target);
        if (lifted != t.nbhd().nbhd.at(f(w))) {
          result.ok = false;
          result.violation = "square fails at " + w;
          return result;
        }
      }
      return result;
    }
    case FunctorTag::Mealy: {
      if (s.mealy().inputs != t.mealy().inputs) fail("mealy systems use different input sets");
      for (const auto& w : s.carrier)
        for (const auto& i : s.mealy().inputs) {
          const MealyStep& a = s.mealy().step.at(w).at(i);
          const MealyStep& c = t.mealy().step.at(f(w)).at(i);
          if (a.out != c.out || f(a.next) != c.next) {
            result.ok = false;
            result.violation = "square fails at " + w + " on input " + i;
            return result;
          }
        }
      return result;
    }
  }
  return result;
}

// --- bisimulation algebra --------------------------------------------------------------------------

namespace {

FinRel checked(const FinRel& r, const CoalgebraView& s, const CoalgebraView& t,
               const std::string& what) {
  CheckResult c = check_coalg_bisimulation(s, t, r);
  if (!c.ok) throw std::runtime_error(what + " is not a bisimulation: " + c.violation);
  return r;
}

}  // namespace

FinRel bisim_invert(const FinRel& b, const CoalgebraView& s, const CoalgebraView& t) {
  check_rel_carriers(s, t, b);
  return checked(b.inverse(), t, s, "inverse");
}

FinRel bisim_compose(const FinRel& b1, const FinRel& b2, const CoalgebraView& s,
                     const CoalgebraView& t, const CoalgebraView& u) {
  check_rel_carriers(s, t, b1);
  check_rel_carriers(t, u, b2);
  return checked(rel_compose(b1, b2), s, u, "composition");
}

FinRel bisim_union(const std::vector<FinRel>& family, const CoalgebraView& s,
                   const CoalgebraView& t) {
  if (family.empty()) fail("union of an empty family");
  FinRel acc = family.front();
  check_rel_carriers(s, t, acc);
  for (std::size_t i = 1; i < family.size(); ++i) acc = rel_union(acc, family[i]);
  return checked(acc, s, t, "union");
}

// --- congruences --------------------------------------------------------------------------------------

CheckResult check_congruence(const CoalgebraView& s, const FinRel& alpha) {
  if (alpha.left() != s.carrier || alpha.right() != s.carrier)
    fail("equivalence must live on the carrier");
  if (!alpha.is_equivalence()) fail("relation is not an equivalence");
  Partition classes = Partition::from_equivalence(alpha);
  FinFn class_map = classes.class_map();
  CheckResult result;

  // classwise dynamics must be independent of the representative
  for (const auto& block : classes.blocks()) {
    const std::string& repr = *block.begin();
    for (const auto& member : block) {
      bool same = true;
      switch (s.tag()) {
        case FunctorTag::Pow: {
          Subset a, b;
          for (const auto& w2 : s.pow().succ.at(repr)) a.insert(class_map(w2));
          for (const auto& w2 : s.pow().succ.at(member)) b.insert(class_map(w2));
          same = a == b;
          break;
        }
        case FunctorTag::Lts: {
          for (const auto& act : s.lts().actions) {
            Subset a, b;
            for (const auto& w2 : s.lts().succ.at(act).at(repr)) a.insert(class_map(w2));
            for (const auto& w2 : s.lts().succ.at(act).at(member)) b.insert(class_map(w2));
            if (a != b) {
              same = false;
              break;
            }
          }
          break;
        }
        case FunctorTag::Nbhd: {
          Family a, b;
          for (const auto& target : all_subsets(classes.block_set())) {
            if (s.nbhd().nbhd.at(repr).count(class_map.preimage_of(target))) a.insert(target);
            if (s.nbhd().nbhd.at(member).count(class_map.preimage_of(target))) b.insert(target);
          }
          same = a == b;
          break;
        }
        case FunctorTag::Mealy: {
          for (const auto& i : s.mealy().inputs) {
            const MealyStep& x = s.mealy().step.at(repr).at(i);
            const MealyStep& y = s.mealy().step.at(member).at(i);
            if (x.out != y.out || class_map(x.next) != class_map(y.next)) {
              same = false;
              break;
            }
          }
          break;
        }
      }
      if (!same) {
        result.ok = false;
        result.violation = "classwise dynamics is ill-defined on block " +
                           Partition::block_name(block) + " (members " + repr + ", " + member +
                           ")";
        return result;
      }
      for (const auto& [p, set] : s.valuation)
        if ((set.count(repr) > 0) != (set.count(member) > 0)) {
          result.ok = false;
          result.violation = "letter " + p + " is split across block " +
                             Partition::block_name(block);
          return result;
        }
    }
  }

  // the induced quotient structure makes the class map a morphism
  CoalgebraView q;
  q.carrier = classes.block_set();
  for (const auto& [p, set] : s.valuation) {
    Subset lifted;
    for (const auto& w : s.carrier)
      if (set.count(w)) lifted.insert(class_map(w));
    q.valuation[p] = lifted;
  }
  switch (s.tag()) {
    case FunctorTag::Pow: {
      PowDynamics dyn;
      for (const auto& block : classes.blocks()) {
        Subset succ;
        for (const auto& w2 : s.pow().succ.at(*block.begin())) succ.insert(class_map(w2));
        dyn.succ[Partition::block_name(block)] = succ;
      }
      q.dynamics = std::move(dyn);
      break;
    }
    case FunctorTag::Lts: {
      LtsDynamics dyn;
      dyn.actions = s.lts().actions;
      for (const auto& act : dyn.actions)
        for (const auto& block : classes.blocks()) {
          Subset succ;
          for (const auto& w2 : s.lts().succ.at(act).at(*block.begin()))
            succ.insert(class_map(w2));
          dyn.succ[act][Partition::block_name(block)] = succ;
        }
      q.dynamics = std::move(dyn);
      break;
    }
    case FunctorTag::Nbhd: {
      NbhdDynamics dyn;
      for (const auto& block : classes.blocks()) {
        Family fam;
        for (const auto& target : all_subsets(classes.block_set()))
          if (s.nbhd().nbhd.at(*block.begin()).count(class_map.preimage_of(target)))
            fam.insert(target);
        dyn.nbhd[Partition::block_name(block)] = fam;
      }
      q.dynamics = std::move(dyn);
      break;
    }
    case FunctorTag::Mealy: {
      MealyDynamics dyn;
      dyn.inputs = s.mealy().inputs;
      for (const auto& block : classes.blocks())
        for (const auto& i : dyn.inputs) {
          const MealyStep& st = s.mealy().step.at(*block.begin()).at(i);
          dyn.step[Partition::block_name(block)][i] = MealyStep{class_map(st.next), st.out};
        }
      q.dynamics = std::move(dyn);
      break;
    }
  }
  return check_coalgebra_morphism(class_map, s, q);
}

}  // namespace coalg
