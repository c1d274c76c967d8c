#include "coalg/coalglogic.hpp"

#include <algorithm>

namespace coalg {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

Subset set_of_letters(const Valuation& val) {
  Subset out;
  for (const auto& [p, s] : val) out.insert(p);
  return out;
}

}  // namespace

PkCoalgebra model_to_coalgebra(const KripkeModel& m) {
  PkCoalgebra c;
  c.carrier = m.worlds;
  c.letters = FinSet::from(set_of_letters(m.valuation));
  for (const auto& w : m.worlds) {
    PkElem e;
    e.next = m.rel.successors(w);
    for (const auto& [p, set] : m.valuation)
      if (set.count(w)) e.props.insert(p);
    c.gamma[w] = std::move(e);
  }
  return c;
}

KripkeModel coalgebra_to_model(const PkCoalgebra& c) {
  PairSet pairs;
  Valuation val;
  for (const auto& p : c.letters) val[p] = {};
  for (const auto& [w, e] : c.gamma) {
    for (const auto& v : e.next) pairs.emplace(w, v);
    for (const auto& p : e.props) val[p].insert(w);
  }
  return {c.carrier, FinRel(c.carrier, c.carrier, std::move(pairs)), std::move(val)};
}

NbCoalgebra nbhd_to_coalgebra(const NeighborhoodModel& m) {
  NbCoalgebra c;
  c.carrier = m.worlds;
  c.letters = FinSet::from(set_of_letters(m.valuation));
  for (const auto& w : m.worlds) {
    NbElem e;
    e.fam = m.nbhd.at(w);
    for (const auto& [p, set] : m.valuation)
      if (set.count(w)) e.props.insert(p);
    c.gamma[w] = std::move(e);
  }
  return c;
}

NeighborhoodModel coalgebra_to_nbhd(const NbCoalgebra& c) {
  NeighborhoodModel m;
  m.worlds = c.carrier;
  for (const auto& p : c.letters) m.valuation[p] = {};
  for (const auto& [w, e] : c.gamma) {
    m.nbhd[w] = e.fam;
    for (const auto& p : e.props) m.valuation[p].insert(w);
  }
  return m;
}

std::vector<PkElem> enumerate_pk(const FinSet& x, const FinSet& letters) {
  std::vector<PkElem> out;
  for (const auto& a : all_subsets(x))
    for (const auto& q : all_subsets(letters)) out.push_back({a, q});
  return out;
}

std::vector<NbElem> enumerate_nb(const FinSet& x, const FinSet& letters) {
  std::vector<NbElem> out;
  for (const auto& v : UpperClosedMonad::enumerate(x))
    for (const auto& q : all_subsets(letters)) out.push_back({v, q});
  return out;
}

PkElem pk_map(const FinFn& f, const PkElem& c) { return {f.image_of(c.next), c.props}; }

NbElem nb_map(const FinFn& f, const NbElem& c) {
  return {UpperClosedMonad::map_concrete(f, c.fam), c.props};
}

// --- liftings ---------------------------------------------------------------

PredicateLifting lift_box() {
  PredicateLifting l;
  l.name = "box";
  l.functor = CFunctor::Pk;
  l.pk_member = [](const FinSet&, const FinSet&, const Subset& d, const PkElem& c) {
    return std::includes(d.begin(), d.end(), c.next.begin(), c.next.end());
  };
  return l;
}

PredicateLifting lift_diamond() {
  PredicateLifting l;
  l.name = "dia";
  l.functor = CFunctor::Pk;
  l.pk_member = [](const FinSet&, const FinSet&, const Subset& d, const PkElem& c) {
    for (const auto& v : c.next)
      if (d.count(v)) return true;
    return false;
  };
  return l;
}

PredicateLifting lift_const(const std::string& p) {
  PredicateLifting l;
  l.name = "const_" + p;
  l.functor = CFunctor::Pk;  // usable for both functors
  l.pk_member = [p](const FinSet&, const FinSet&, const Subset&, const PkElem& c) {
    return c.props.count(p) > 0;
  };
  l.nb_member = [p](const FinSet&, const FinSet&, const Subset&, const NbElem& c) {
    return c.props.count(p) > 0;
  };
  return l;
}

PredicateLifting lift_box_nb() {
  PredicateLifting l;
  l.name = "box";
  l.functor = CFunctor::Nb;
  l.nb_member = [](const FinSet&, const FinSet&, const Subset& d, const NbElem& c) {
    return c.fam.count(d) > 0;
  };
  return l;
}

PredicateLifting lift_neg(const PredicateLifting& inner) {
  PredicateLifting l;
  l.name = "neg_" + inner.name;
  l.functor = inner.functor;
  if (inner.pk_member)
    l.pk_member = [inner](const FinSet& x, const FinSet& letters, const Subset& d,
                          const PkElem& c) {
      Subset comp;
      for (const auto& w : x)
        if (!d.count(w)) comp.insert(w);
      return !inner.pk_member(x, letters, comp, c);
    };
  if (inner.nb_member)
    l.nb_member = [inner](const FinSet& x, const FinSet& letters, const Subset& d,
                          const NbElem& c) {
      Subset comp;
      for (const auto& w : x)
        if (!d.count(w)) comp.insert(w);
      return !inner.nb_member(x, letters, comp, c);
    };
  return l;
}

PredicateLifting lift_from_nat(
    const std::string& name,
    const std::function<Subset(const FinSet&, const FinSet&, const PkElem&)>& nat) {
  PredicateLifting l;
  l.name = name;
  l.functor = CFunctor::Pk;
  l.pk_member = [nat](const FinSet& x, const FinSet& letters, const Subset& d, const PkElem& c) {
    Subset image = nat(x, letters, c);
    return std::includes(d.begin(), d.end(), image.begin(), image.end());
  };
  return l;
}

std::set<PkElem> lift_set_pk(const PredicateLifting& l, const FinSet& x, const FinSet& letters,
                             const Subset& d) {
  for (const auto& w : d)
    if (!x.contains(w)) fail("lifting argument is not a subset of the carrier");
  if (!l.pk_member) fail("lifting '" + l.name + "' has no Kripke-functor face");
  std::set<PkElem> out;
  for (const auto& c : enumerate_pk(x, letters))
    if (l.pk_member(x, letters, d, c)) out.insert(c);
  return out;
}

std::set<NbElem> lift_set_nb(const PredicateLifting& l, const FinSet& x, const FinSet& letters,
                             const Subset& d) {
  for (const auto& w : d)
    if (!x.contains(w)) fail("lifting argument is not a subset of the carrier");
  if (!l.nb_member) fail("lifting '" + l.name + "' has no neighborhood-functor face");
  std::set<NbElem> out;
  for (const auto& c : enumerate_nb(x, letters))
    if (l.nb_member(x, letters, d, c)) out.insert(c);
  return out;
}

bool check_naturality(const PredicateLifting& l, const FinFn& f, const FinSet& letters,
                      const Subset& g) {
  if (f.domain().size() > 4 || f.codomain().size() > 4 || letters.size() > 2)
    throw CapExceeded("naturality check capped at carriers of size 4 and 2 letters");
  Subset pre = f.preimage_of(g);
  if (l.pk_member) {
    for (const auto& c : enumerate_pk(f.domain(), letters))
      if (l.pk_member(f.domain(), letters, pre, c) !=
          l.pk_member(f.codomain(), letters, g, pk_map(f, c)))
        return false;
  }
  if (l.nb_member) {
    for (const auto& c : enumerate_nb(f.domain(), letters))
      if (l.nb_member(f.domain(), letters, pre, c) !=
          l.nb_member(f.codomain(), letters, g, nb_map(f, c)))
        return false;
  }
  return true;
}

bool check_monotone(const PredicateLifting& l, const FinSet& x, const FinSet& letters,
                    const Subset& d, const Subset& e) {
  if (!std::includes(e.begin(), e.end(), d.begin(), d.end()))
    fail("monotonicity check expects D subset of E");
  if (x.size() > 4 || letters.size() > 2)
    throw CapExceeded("monotonicity check capped at carriers of size 4 and 2 letters");
  if (l.pk_member) {
    for (const auto& c : enumerate_pk(x, letters))
      if (l.pk_member(x, letters, d, c) && !l.pk_member(x, letters, e, c)) return false;
  }
  if (l.nb_member) {
    for (const auto& c : enumerate_nb(x, letters))
      if (l.nb_member(x, letters, d, c) && !l.nb_member(x, letters, e, c)) return false;
  }
  return true;
}

// --- prepared evaluation ------------------------------------------------------

std::vector<PredicateLifting> standard_liftings_pk() { return {lift_box(), lift_diamond()}; }

std::vector<PredicateLifting> standard_liftings_nb() { return {lift_box_nb()}; }

PreparedCoalgebra prepare(const PkCoalgebra& c, const std::vector<PredicateLifting>& lifts) {
  PreparedCoalgebra out;
  out.carrier = c.carrier;
  out.letters = c.letters;
  for (const auto& l : lifts) {
    if (!l.pk_member) fail("lifting '" + l.name + "' has no Kripke-functor face");
    auto member = l.pk_member;
    FinSet carrier = c.carrier;
    FinSet letters = c.letters;
    auto gamma = c.gamma;
    out.modalities[l.name] = [member, carrier, letters, gamma](const Subset& d) {
      Subset res;
      for (const auto& [w, e] : gamma)
        if (member(carrier, letters, d, e)) res.insert(w);
      return res;
    };
  }
  for (const auto& p : c.letters) {
    Subset holds;
    for (const auto& [w, e] : c.gamma)
      if (e.props.count(p)) holds.insert(w);
    out.letter_sets[p] = holds;
  }
  return out;
}

PreparedCoalgebra prepare(const NbCoalgebra& c, const std::vector<PredicateLifting>& lifts) {
  PreparedCoalgebra out;
  out.carrier = c.carrier;
  out.letters = c.letters;
  for (const auto& l : lifts) {
    if (!l.nb_member) fail("lifting '" + l.name + "' has no neighborhood-functor face");
    auto member = l.nb_member;
    FinSet carrier = c.carrier;
    FinSet letters = c.letters;
    auto gamma = c.gamma;
    out.modalities[l.name] = [member, carrier, letters, gamma](const Subset& d) {
      Subset res;
      for (const auto& [w, e] : gamma)
        if (member(carrier, letters, d, e)) res.insert(w);
      return res;
    };
  }
  for (const auto& p : c.letters) {
    Subset holds;
    for (const auto& [w, e] : c.gamma)
      if (e.props.count(p)) holds.insert(w);
    out.letter_sets[p] = holds;
  }
  return out;
}

Subset eval_coalg(const PreparedCoalgebra& c, const logic::FormulaPtr& f) {
  using FK = logic::Formula::Kind;
  switch (f->kind) {
    case FK::False: return {};
    case FK::True: return c.carrier.as_subset();
    case FK::Letter: {
      auto it = c.letter_sets.find(f->name);
      if (it == c.letter_sets.end()) fail("undeclared letter '" + f->name + "'");
      return it->second;
    }
    case FK::Not: {
      Subset inner = eval_coalg(c, f->args[0]);
      Subset out;
      for (const auto& w : c.carrier)
        if (!inner.count(w)) out.insert(w);
      return out;
    }
    case FK::And: {
      Subset a = eval_coalg(c, f->args[0]);
      Subset b = eval_coalg(c, f->args[1]);
      Subset out;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                            std::inserter(out, out.begin()));
      return out;
    }
    case FK::Or: {
      Subset a = eval_coalg(c, f->args[0]);
      Subset b = eval_coalg(c, f->args[1]);
      a.insert(b.begin(), b.end());
      return a;
    }
    case FK::Implies: {
      Subset a = eval_coalg(c, f->args[0]);
      Subset b = eval_coalg(c, f->args[1]);
      Subset out;
      for (const auto& w : c.carrier)
        if (!a.count(w) || b.count(w)) out.insert(w);
      return out;
    }
    case FK::Lift: {
      auto it = c.modalities.find(f->name);
      if (it == c.modalities.end()) fail("unregistered lifting '" + f->name + "'");
      return it->second(eval_coalg(c, f->args[0]));
    }
    default: fail("formula outside L(L)");
  }
}

// --- theories and logical equivalence ---------------------------------------------

namespace {

struct JointState {
  bool left;
  std::string name;
  bool operator<(const JointState& o) const {
    if (left != o.left) return left;
    return name < o.name;
  }
};

/// Depth-indexed logical-equivalence refinement over the disjoint union of
/// two prepared coalgebras with the same modality names.
std::vector<std::map<JointState, int>> logical_refinement(const PreparedCoalgebra& c,
                                                          const PreparedCoalgebra& d,
                                                          int depth) {
  std::vector<JointState> states;
  for (const auto& w : c.carrier) states.push_back({true, w});
  for (const auto& w : d.carrier) states.push_back({false, w});
  Subset props;
  for (const auto& [p, s] : c.letter_sets) props.insert(p);
  for (const auto& [p, s] : d.letter_sets) props.insert(p);

  auto holds = [&](const JointState& u, const std::string& p) {
    const PreparedCoalgebra& side = u.left ? c : d;
    auto it = side.letter_sets.find(p);
    return it != side.letter_sets.end() && it->second.count(u.name) > 0;
  };

  std::vector<std::map<JointState, int>> strata;
  std::map<JointState, int> block;
  {
    std::map<std::vector<bool>, int> ids;
    for (const auto& u : states) {
      std::vector<bool> profile;
      for (const auto& p : props) profile.push_back(holds(u, p));
      block[u] = ids.emplace(profile, static_cast<int>(ids.size())).first->second;
    }
  }
  strata.push_back(block);

  std::set<std::string> modality_names;
  for (const auto& [n, t] : c.modalities) modality_names.insert(n);
  for (const auto& [n, t] : d.modalities) modality_names.insert(n);

  for (int round = 0; round < depth; ++round) {
    // the definable validity sets of this stratum are unions of blocks
    std::set<int> ids;
    for (const auto& [u, b] : block) ids.insert(b);
    std::vector<int> id_list(ids.begin(), ids.end());
    if (id_list.size() > 14) throw CapExceeded("too many blocks for theory refinement");

    std::map<JointState, std::vector<int>> sig;
    for (const auto& u : states) sig[u] = {block.at(u)};

    for (std::size_t mask = 0; mask < (std::size_t(1) << id_list.size()); ++mask) {
      std::set<int> chosen;
      for (std::size_t i = 0; i < id_list.size(); ++i)
        if (mask & (std::size_t(1) << i)) chosen.insert(id_list[i]);
      Subset union_c, union_d;
      for (const auto& u : states)
        if (chosen.count(block.at(u))) (u.left ? union_c : union_d).insert(u.name);
      for (const auto& name : modality_names) {
        Subset in_c = c.modalities.count(name) ? c.modalities.at(name)(union_c) : Subset{};
        Subset in_d = d.modalities.count(name) ? d.modalities.at(name)(union_d) : Subset{};
        for (const auto& u : states) {
          bool inside = u.left ? in_c.count(u.name) > 0 : in_d.count(u.name) > 0;
          sig[u].push_back(inside ? 1 : 0);
        }
      }
    }

    std::map<std::vector<int>, int> ids2;
    std::map<JointState, int> next;
    for (const auto& u : states)
      next[u] = ids2.emplace(sig.at(u), static_cast<int>(ids2.size())).first->second;
    block = std::move(next);
    strata.push_back(block);
  }
  return strata;
}

}  // namespace

Theory theory_of(const PreparedCoalgebra& c, const std::string& state, int depth) {
  if (!c.carrier.contains(state)) fail("unknown state '" + state + "'");
  if (depth > 5) throw CapExceeded("theory depth capped at 5");
  auto strata = logical_refinement(c, c, depth);
  Theory t;
  t.state = state;
  for (const auto& block : strata) {
    int mine = block.at({true, state});
    Subset cls;
    for (const auto& w : c.carrier)
      if (block.at({true, w}) == mine) cls.insert(w);
    t.strata.push_back(std::move(cls));
  }
  return t;
}

FinRel logical_equiv(const PreparedCoalgebra& c, const PreparedCoalgebra& d, int depth) {
  if (depth > 5) throw CapExceeded("theory depth capped at 5");
  auto strata = logical_refinement(c, d, depth);
  const auto& last = strata.back();
  PairSet pairs;
  for (const auto& w : c.carrier)
    for (const auto& x : d.carrier)
      if (last.at({true, w}) == last.at({false, x})) pairs.emplace(w, x);
  return FinRel(c.carrier, d.carrier, std::move(pairs));
}

// --- behavioral equivalence --------------------------------------------------------

BehavioralResult behavioral_equiv(const PkCoalgebra& s, const PkCoalgebra& t,
                                  const std::string& a, const std::string& b) {
  if (!s.carrier.contains(a) || !t.carrier.contains(b)) fail("unknown designated state");
  KripkeModel ms = coalgebra_to_model(s);
  KripkeModel mt = coalgebra_to_model(t);

  // disjoint union with tagged worlds
  CoproductResult sum = coproduct({ms.worlds, mt.worlds});
  PairSet rel;
  for (const auto& [w, v] : ms.rel.pairs()) rel.emplace(sum.injections[0](w), sum.injections[0](v));
  for (const auto& [w, v] : mt.rel.pairs()) rel.emplace(sum.injections[1](w), sum.injections[1](v));
  Valuation val;
  Subset props;
  for (const auto& [p, set] : ms.valuation) props.insert(p);
  for (const auto& [p, set] : mt.valuation) props.insert(p);
  for (const auto& p : props) {
    Subset lifted;
    auto its = ms.valuation.find(p);
    if (its != ms.valuation.end())
      for (const auto& w : its->second) lifted.insert(sum.injections[0](w));
    auto itt = mt.valuation.find(p);
    if (itt != mt.valuation.end())
      for (const auto& w : itt->second) lifted.insert(sum.injections[1](w));
    val[p] = lifted;
  }
  KripkeModel united{sum.object, FinRel(sum.object, sum.object, std::move(rel)), std::move(val)};

  FinRel alpha = largest_bisimulation(united, united);
  QuotientResult q = quotient(united, alpha);

  FinFn f = compose(sum.injections[0], q.class_map);
  FinFn g = compose(sum.injections[1], q.class_map);
  CheckResult fok = check_coalgebra_morphism(f, view_of(ms), view_of(q.model));
  CheckResult gok = check_coalgebra_morphism(g, view_of(mt), view_of(q.model));
  if (!fok.ok || !gok.ok) throw std::runtime_error("quotient witnesses failed verification");
  return {f(a) == g(b), f, g};
}

}  // namespace coalg
