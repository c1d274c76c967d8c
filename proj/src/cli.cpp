#include "coalg/cli.hpp"

#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "coalg/bisim.hpp"
#include "coalg/coalglogic.hpp"
#include "coalg/convex.hpp"
#include "coalg/emalgebra.hpp"
#include "coalg/modelio.hpp"
#include "coalg/monads.hpp"
#include "coalg/semantics.hpp"

namespace coalg {

namespace {

namespace lg = coalg::logic;

FinSet sized_carrier(const std::string& prefix, int n) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back(prefix + std::to_string(i));
  return FinSet(names);
}

/// Relations are passed on the command line as space-separated "a:b" pairs.
FinRel parse_rel(const std::string& text, const FinSet& left, const FinSet& right) {
  PairSet pairs;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    auto pos = tok.find(':');
    if (pos == std::string::npos)
      throw std::invalid_argument("expected 'a:b' pairs, got '" + tok + "'");
    pairs.emplace(tok.substr(0, pos), tok.substr(pos + 1));
  }
  return FinRel(left, right, std::move(pairs));
}

FinFn parse_map(const std::string& text, const FinSet& dom, const FinSet& cod) {
  std::map<std::string, std::string> table;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    auto pos = tok.find(':');
    if (pos == std::string::npos)
      throw std::invalid_argument("expected 'a:b' entries, got '" + tok + "'");
    table[tok.substr(0, pos)] = tok.substr(pos + 1);
  }
  return FinFn(dom, cod, std::move(table));
}

void print_validity(std::ostream& out, const FinSet& worlds, const Subset& holds) {
  for (const auto& w : worlds)
    out << w << ": " << (holds.count(w) ? "true" : "false") << "\n";
  out << render_set(holds) << "\n";
}

CoalgebraView view_from_file(const ModelFile& mf) {
  switch (mf.kind) {
    case ModelKind::Kripke: return view_of(mf.kripke());
    case ModelKind::Lts: return view_of(mf.lts());
    case ModelKind::Nbhd: return view_of(mf.nbhd());
    default: throw std::invalid_argument("bisimulation commands take kripke, lts or nbhd models");
  }
}

int eval_command(const std::string& path, const std::string& formula, std::ostream& out) {
  ModelFile mf = load_model_file(path);
  switch (mf.kind) {
    case ModelKind::Kripke: {
      lg::FormulaPtr f = lg::parse(formula, lg::Lang::Basic);
      print_validity(out, mf.kripke().worlds, eval_basic(mf.kripke(), f));
      return 0;
    }
    case ModelKind::Tau: {
      lg::FormulaPtr f = lg::parse(formula, lg::Lang::Extended);
      print_validity(out, mf.tau().worlds, eval_extended(mf.tau(), f));
      return 0;
    }
    default: throw std::invalid_argument("eval takes a kripke or tau model");
  }
}

int monad_laws_command(const std::string& name, int max, int samples, unsigned long long seed,
                       std::ostream& out) {
  FinSet x = sized_carrier("x", max);
  FinSet y = sized_carrier("y", max);
  FinSet z = sized_carrier("z", max);
  LawReport report;
  if (name == "powerset") report = check_kleisli_laws_exhaustive<PowersetMonad>(x, y, z);
  else if (name == "upperclosed") report = check_kleisli_laws_exhaustive<UpperClosedMonad>(x, y, z);
  else if (name == "ultrafilter") report = check_kleisli_laws_exhaustive<UltrafilterMonad>(x, y, z);
  else if (name == "dist") report = check_kleisli_laws_sampled<DistMonad>(x, y, z, samples, seed);
  else if (name == "seq") report = check_kleisli_laws_sampled<SeqMonad>(x, y, z, samples, seed);
  else throw CLI::ValidationError("unknown monad '" + name + "'");
  out << report.render();
  return report.all_pass() ? 0 : 1;
}

int monad_manes_command(const std::string& name, int max, int samples, unsigned long long seed,
                        std::ostream& out) {
  FinSet x = sized_carrier("x", std::min(max, 2));
  FinSet y = sized_carrier("y", std::min(max, 2));
  LawReport report;
  if (name == "powerset") report = manes_roundtrip<PowersetMonad>(x, y, samples, seed, true);
  else if (name == "upperclosed") report = manes_roundtrip<UpperClosedMonad>(x, y, samples, seed, true);
  else if (name == "ultrafilter") {
    FinSet bigger = sized_carrier("x", std::min(max, 4));
    report = manes_roundtrip<UltrafilterMonad>(bigger, sized_carrier("y", std::min(max, 4)),
                                               samples, seed, true);
  } else if (name == "dist") report = manes_roundtrip<DistMonad>(x, y, samples, seed, false);
  else if (name == "seq") report = manes_roundtrip<SeqMonad>(x, y, samples, seed, false);
  else throw CLI::ValidationError("unknown monad '" + name + "'");
  out << report.render();
  return report.all_pass() ? 0 : 1;
}

int monad_algebra_command(const std::string& poset_spec, int free_size, std::ostream& out) {
  PowersetAlgebra alg;
  if (free_size > 0) {
    alg = free_powerset_algebra(sized_carrier("x", free_size));
  } else {
    std::istringstream in(poset_spec);
    std::string tok;
    std::set<std::string> elems;
    PairSet edges;
    while (in >> tok) {
      auto pos = tok.find('<');
      if (pos == std::string::npos) {
        elems.insert(tok);
      } else {
        std::string a = tok.substr(0, pos), b = tok.substr(pos + 1);
        elems.insert(a);
        elems.insert(b);
        edges.emplace(a, b);
      }
    }
    FinSet carrier = FinSet::from(Subset(elems.begin(), elems.end()));
    // reflexive-transitive closure of the edges
    PairSet leq;
    for (const auto& e : carrier) leq.emplace(e, e);
    leq.insert(edges.begin(), edges.end());
    bool changed = true;
    while (changed) {
      changed = false;
      PairSet next = leq;
      for (const auto& [a, b] : leq)
        for (const auto& [c, d] : leq)
          if (b == c && !next.count({a, d})) {
            next.emplace(a, d);
            changed = true;
          }
      leq = std::move(next);
    }
    alg = semilattice_to_algebra(Poset{carrier, FinRel(carrier, carrier, leq)});
  }
  LawReport report = check_em_algebra(alg);
  out << report.render();
  return report.all_pass() ? 0 : 1;
}

int lift_check_command(const std::string& functor, int samples, unsigned long long seed, int max,
                       std::ostream& out) {
  Rng rng(seed);
  FinSet letters{"p", "q"};
  std::vector<PredicateLifting> lifts;
  if (functor == "pk") {
    lifts = standard_liftings_pk();
    lifts.push_back(lift_const("p"));
  } else if (functor == "nb") {
    lifts = standard_liftings_nb();
    lifts.push_back(lift_const("p"));
  } else {
    throw CLI::ValidationError("functor must be pk or nb");
  }
  bool all_ok = true;
  for (const auto& l : lifts) {
    bool natural = true, monotone = true;
    for (int i = 0; i < samples; ++i) {
      int nx = 1 + static_cast<int>(next_below(rng, static_cast<std::uint64_t>(max)));
      int ny = 1 + static_cast<int>(next_below(rng, static_cast<std::uint64_t>(max)));
      FinSet xs = sized_carrier("a", nx);
      FinSet ys = sized_carrier("b", ny);
      std::map<std::string, std::string> table;
      for (const auto& a : xs) table[a] = ys.elements()[next_below(rng, ys.size())];
      FinFn f(xs, ys, std::move(table));
      Subset g = PowersetMonad::random_elem(ys, rng);
      if ((functor == "pk" && l.pk_member) || (functor == "nb" && l.nb_member)) {
        if (!check_naturality(l, f, letters, g)) natural = false;
        Subset d = PowersetMonad::random_elem(xs, rng);
        Subset e = d;
        for (const auto& a : xs)
          if (next_below(rng, 2)) e.insert(a);
        if (!check_monotone(l, xs, letters, d, e)) monotone = false;
      }
    }
    out << l.name << " naturality " << (natural ? "PASS" : "FAIL") << "\n";
    out << l.name << " monotonicity " << (monotone ? "PASS" : "FAIL") << "\n";
    all_ok = all_ok && natural && monotone;
  }
  return all_ok ? 0 : 1;
}

int lift_eval_command(const std::string& path, const std::string& formula, std::ostream& out) {
  ModelFile mf = load_model_file(path);
  lg::FormulaPtr f = lg::parse(formula, lg::Lang::Lifted);
  if (mf.kind == ModelKind::Kripke) {
    PkCoalgebra c = model_to_coalgebra(mf.kripke());
    std::vector<PredicateLifting> lifts = standard_liftings_pk();
    for (const auto& p : c.letters) lifts.push_back(lift_const(p));
    PreparedCoalgebra prep = prepare(c, lifts);
    print_validity(out, c.carrier, eval_coalg(prep, f));
    return 0;
  }
  if (mf.kind == ModelKind::Nbhd) {
    NbCoalgebra c = nbhd_to_coalgebra(mf.nbhd());
    std::vector<PredicateLifting> lifts = standard_liftings_nb();
    for (const auto& p : c.letters) lifts.push_back(lift_const(p));
    PreparedCoalgebra prep = prepare(c, lifts);
    print_validity(out, c.carrier, eval_coalg(prep, f));
    return 0;
  }
  throw std::invalid_argument("lift eval takes a kripke or nbhd model");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"finite-state workbench for modal logics, monads and coalgebras"};
  app.require_subcommand(1);

  std::string model_path, other_path, formula, rel_text, map_text, monad_name, poset_spec;
  std::string functor = "pk";
  int max = 3, depth = -1, samples = 200, free_size = 0;
  unsigned long long seed = 0;
  std::size_t sat_max = 3;

  auto add_eval_like = [&](const std::string& name, const std::string& desc) {
    CLI::App* cmd = app.add_subcommand(name, desc);
    cmd->add_option("model", model_path, "model file")->required();
    cmd->add_option("formula", formula, "formula")->required();
    return cmd;
  };

  CLI::App* eval_cmd = add_eval_like("eval", "evaluate a basic or extended formula");
  CLI::App* pdl_cmd = add_eval_like("pdl", "evaluate a PDL formula");
  CLI::App* game_cmd = add_eval_like("game", "evaluate a game-logic formula");
  CLI::App* ctl_cmd = add_eval_like("ctl", "evaluate a CTL state formula");
  CLI::App* nbhd_cmd = add_eval_like("nbhd", "evaluate in neighborhood semantics");

  CLI::App* sat_cmd = app.add_subcommand("sat", "bounded satisfiability search");
  sat_cmd->add_option("formula", formula, "basic formula")->required();
  sat_cmd->add_option("--max", sat_max, "state bound (<= 4)");

  CLI::App* bisim_cmd = app.add_subcommand("bisim", "bisimulation toolbox");
  bisim_cmd->require_subcommand(1);
  CLI::App* b_check = bisim_cmd->add_subcommand("check", "check a relation");
  b_check->add_option("left", model_path)->required();
  b_check->add_option("right", other_path)->required();
  b_check->add_option("--rel", rel_text, "space-separated a:b pairs")->required();
  CLI::App* b_largest = bisim_cmd->add_subcommand("largest", "largest bisimulation");
  b_largest->add_option("left", model_path)->required();
  b_largest->add_option("right", other_path)->required();
  b_largest->add_option("--depth", depth,
                        "stop after this many refinement rounds (modal equivalence at bounded "
                        "depth); -1 runs to the fixpoint");
  CLI::App* b_quot = bisim_cmd->add_subcommand("quotient", "quotient by an equivalence");
  b_quot->add_option("model", model_path)->required();
  b_quot->add_option("--rel", rel_text, "equivalence pairs; defaults to the largest self-bisimulation");
  CLI::App* b_morph = bisim_cmd->add_subcommand("morphism", "check a coalgebra morphism");
  b_morph->add_option("left", model_path)->required();
  b_morph->add_option("right", other_path)->required();
  b_morph->add_option("--map", map_text, "space-separated a:b entries")->required();
  CLI::App* b_cong = bisim_cmd->add_subcommand("congruence", "check a congruence");
  b_cong->add_option("model", model_path)->required();
  b_cong->add_option("--rel", rel_text, "equivalence pairs")->required();

  CLI::App* monad_cmd = app.add_subcommand("monad", "monad law checking");
  monad_cmd->require_subcommand(1);
  CLI::App* m_laws = monad_cmd->add_subcommand("laws", "Kleisli laws");
  m_laws->add_option("monad", monad_name, "powerset|upperclosed|ultrafilter|dist|seq")->required();
  m_laws->add_option("--max", max, "carrier size");
  m_laws->add_option("--samples", samples, "sample count");
  m_laws->add_option("--seed", seed, "random seed");
  CLI::App* m_manes = monad_cmd->add_subcommand("manes", "Manes round trip");
  m_manes->add_option("monad", monad_name)->required();
  m_manes->add_option("--max", max, "carrier size");
  m_manes->add_option("--samples", samples, "sample count");
  m_manes->add_option("--seed", seed, "random seed");
  CLI::App* m_alg = monad_cmd->add_subcommand("algebra", "Eilenberg-Moore algebra check");
  m_alg->add_option("--poset", poset_spec, "order edges like 'a<b b<c'");
  m_alg->add_option("--free", free_size, "check the free algebra on n points");

  CLI::App* lift_cmd = app.add_subcommand("lift", "predicate liftings");
  lift_cmd->require_subcommand(1);
  CLI::App* l_check = lift_cmd->add_subcommand("check", "naturality and monotonicity");
  l_check->add_option("--functor", functor, "pk|nb");
  l_check->add_option("--samples", samples, "sample count");
  l_check->add_option("--seed", seed, "random seed");
  l_check->add_option("--max", max, "carrier size bound");
  CLI::App* l_eval = lift_cmd->add_subcommand("eval", "evaluate an L(L) formula");
  l_eval->add_option("model", model_path)->required();
  l_eval->add_option("formula", formula)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help lands here
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (eval_cmd->parsed()) return eval_command(model_path, formula, out);
    if (pdl_cmd->parsed()) {
      ModelFile mf = load_model_file(model_path);
      lg::FormulaPtr f = lg::parse(formula, lg::Lang::Pdl);
      print_validity(out, mf.pdl().worlds, eval_pdl(mf.pdl(), f));
      return 0;
    }
    if (game_cmd->parsed()) {
      ModelFile mf = load_model_file(model_path);
      lg::FormulaPtr f = lg::parse(formula, lg::Lang::Game);
      print_validity(out, mf.game().worlds, eval_game(mf.game(), f));
      return 0;
    }
    if (ctl_cmd->parsed()) {
      ModelFile mf = load_model_file(model_path);
      lg::FormulaPtr f = lg::parse(formula, lg::Lang::Ctl);
      print_validity(out, mf.kripke().worlds, ctl_eval(mf.kripke(), f));
      return 0;
    }
    if (nbhd_cmd->parsed()) {
      ModelFile mf = load_model_file(model_path);
      lg::FormulaPtr f = lg::parse(formula, lg::Lang::Basic);
      NeighborhoodModel m =
          mf.kind == ModelKind::Kripke ? kripke_to_neighborhood(mf.kripke()) : mf.nbhd();
      print_validity(out, m.worlds, eval_neighborhood(m, f));
      return 0;
    }
    if (sat_cmd->parsed()) {
      lg::FormulaPtr f = lg::parse(formula, lg::Lang::Basic);
      auto witness = find_model_bounded(f, sat_max);
      if (!witness) {
        out << "unsatisfiable within " << sat_max << " states\n";
        return 1;
      }
      out << save_model(ModelFile{ModelKind::Kripke, witness->model});
      out << "witness: " << witness->world << "\n";
      return 0;
    }
    if (b_check->parsed()) {
      ModelFile ml = load_model_file(model_path), mr = load_model_file(other_path);
      CoalgebraView vs = view_from_file(ml), vt = view_from_file(mr);
      FinRel b = parse_rel(rel_text, vs.carrier, vt.carrier);
      CheckResult r = check_coalg_bisimulation(vs, vt, b);
      out << (r.ok ? "bisimulation" : "not a bisimulation: " + r.violation) << "\n";
      if (!r.note.empty()) out << r.note << "\n";
      return r.ok ? 0 : 1;
    }
    if (b_largest->parsed()) {
      ModelFile ml = load_model_file(model_path), mr = load_model_file(other_path);
      if (depth >= 0) {
        if (ml.kind != ModelKind::Kripke || mr.kind != ModelKind::Kripke)
          throw std::invalid_argument("--depth applies to kripke models");
        out << render_rel(modal_equivalence_partition(ml.kripke(), mr.kripke(), depth)) << "\n";
        return 0;
      }
      out << render_rel(largest_bisimulation(view_from_file(ml), view_from_file(mr))) << "\n";
      return 0;
    }
    if (b_quot->parsed()) {
      ModelFile mf = load_model_file(model_path);
      const KripkeModel& m = mf.kripke();
      FinRel alpha = rel_text.empty() ? largest_bisimulation(m, m)
                                      : parse_rel(rel_text, m.worlds, m.worlds);
      QuotientResult q = quotient(m, alpha);
      out << render_partition(q.classes) << "\n";
      out << save_model(ModelFile{ModelKind::Kripke, q.model});
      return 0;
    }
    if (b_morph->parsed()) {
      CoalgebraView vs = view_from_file(load_model_file(model_path));
      CoalgebraView vt = view_from_file(load_model_file(other_path));
      FinFn f = parse_map(map_text, vs.carrier, vt.carrier);
      CheckResult r = check_coalgebra_morphism(f, vs, vt);
      out << (r.ok ? "morphism" : "not a morphism: " + r.violation) << "\n";
      return r.ok ? 0 : 1;
    }
    if (b_cong->parsed()) {
      CoalgebraView vs = view_from_file(load_model_file(model_path));
      FinRel alpha = parse_rel(rel_text, vs.carrier, vs.carrier);
      CheckResult r = check_congruence(vs, alpha);
      out << (r.ok ? "congruence" : "not a congruence: " + r.violation) << "\n";
      return r.ok ? 0 : 1;
    }
    if (m_laws->parsed()) return monad_laws_command(monad_name, max, samples, seed, out);
    if (m_manes->parsed()) return monad_manes_command(monad_name, max, samples, seed, out);
    if (m_alg->parsed()) return monad_algebra_command(poset_spec, free_size, out);
    if (l_check->parsed()) return lift_check_command(functor, samples, seed, std::min(max, 4), out);
    if (l_eval->parsed()) return lift_eval_command(model_path, formula, out);
  } catch (const lg::ParseError& e) {
    err << "formula error: " << e.what() << "\n";
    return 2;
  } catch (const LoadError& e) {
    err << "model error: " << e.what() << "\n";
    return 2;
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace coalg
