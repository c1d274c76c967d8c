#include <doctest.h>

#include "coalg/semantics.hpp"
#include "fixtures.hpp"
#include "gen.hpp"

using namespace coalg;
namespace lg = coalg::logic;

namespace {

Subset eval_b(const KripkeModel& m, const std::string& text) {
  return eval_basic(m, lg::parse(text, lg::Lang::Basic));
}

/// Independent reflexive-transitive closure oracle (Warshall style).
FinRel rt_closure_oracle(const FinRel& r) {
  PairSet pairs = r.pairs();
  for (const auto& x : r.left()) pairs.emplace(x, x);
  for (const auto& k : r.left())
    for (const auto& i : r.left())
      for (const auto& j : r.left())
        if (pairs.count({i, k}) && pairs.count({k, j})) pairs.emplace(i, j);
  return FinRel(r.left(), r.right(), pairs);
}

}  // namespace

TEST_CASE("basic semantics on the chain model") {
  KripkeModel m = fixtures::chain_model();
  CHECK(eval_b(m, "<>[]p").count("1"));
  CHECK_FALSE(eval_b(m, "<>[]p -> p").count("1"));
  CHECK(eval_b(m, "<>(p & ~r)").count("2"));
  CHECK(eval_b(m, "[]q") == m.worlds.as_subset());

  // phi = q & <>(q & <>(q & <>(q & <>q))) holds at 1 but not at 2
  std::string phi = "q & <>(q & <>(q & <>(q & <>q)))";
  CHECK(eval_b(m, phi).count("1"));
  CHECK_FALSE(eval_b(m, phi).count("2"));
  CHECK_FALSE(eval_b(m, "<>(" + phi + ") & q").count("1"));
}

TEST_CASE("basic semantics on the divisibility model") {
  KripkeModel m = fixtures::divisibility_model();
  Subset boxp = eval_b(m, "[]p");
  CHECK(boxp.count("4"));
  CHECK(boxp.count("6"));
  CHECK_FALSE(boxp.count("2"));
  CHECK(eval_b(m, "<>(q & []p) & <>(~q & []p)").count("2"));
}

TEST_CASE("boolean clauses on random models") {
  Rng rng(31);
  std::vector<std::string> letters{"p", "q"};
  for (int i = 0; i < 60; ++i) {
    KripkeModel m = testgen::random_kripke(rng, 1 + next_below(rng, 5), letters);
    lg::FormulaPtr f = testgen::random_basic(rng, letters, 4);
    lg::FormulaPtr g = testgen::random_basic(rng, letters, 4);
    Subset sf = eval_basic(m, f);
    Subset sg = eval_basic(m, g);
    Subset neg = eval_basic(m, lg::f_not(f));
    for (const auto& w : m.worlds) CHECK(sf.count(w) + neg.count(w) == 1);
    Subset conj = eval_basic(m, lg::f_and(f, g));
    for (const auto& w : m.worlds) CHECK((conj.count(w) > 0) == (sf.count(w) && sg.count(w)));
    // desugared and sugared forms agree
    CHECK(eval_basic(m, lg::desugar(f)) == sf);
    CHECK(eval_basic(m, lg::f_box(f)) == eval_basic(m, lg::desugar(lg::f_box(f))));
  }
}

TEST_CASE("tau semantics: unary operator model") {
  TauModel m = fixtures::unary_tau_model();
  lg::FormulaPtr f = lg::parse("a(p) -> b(p)", lg::Lang::Extended);
  Subset holds = eval_extended(m, f);
  CHECK_FALSE(holds.count("w1"));
  // the antecedent really holds at w1 and the consequent fails
  CHECK(eval_extended(m, lg::parse("a(p)", lg::Lang::Extended)).count("w1"));
  CHECK_FALSE(eval_extended(m, lg::parse("b(p)", lg::Lang::Extended)).count("w1"));
}

TEST_CASE("tau semantics: higher arities") {
  TauModel m = fixtures::arity_tau_model();
  CHECK(eval_extended(m, lg::parse("diam(p0, p1)", lg::Lang::Extended)) == Subset{"u"});
  CHECK(eval_extended(m, lg::parse("club(p0, p1, p2)", lg::Lang::Extended)).count("u"));
  CHECK(eval_extended(m, lg::parse("diam(p0, p1) -> club(p0, p1, p2)", lg::Lang::Extended)) ==
        Subset{"u", "s", "v", "w"});

  // nabla clause by duality: nabla(diam)(p0,p1) = ~diam(~p0,~p1)
  lg::FormulaPtr nab = lg::nabla("diam", {lg::f_letter("p0"), lg::f_letter("p1")});
  Subset direct = eval_extended(m, nab);
  for (const auto& w : m.worlds) {
    // at worlds without diam-tuples the nabla holds vacuously
    if (w != "u") CHECK(direct.count(w));
  }

  CHECK_THROWS_AS(eval_extended(m, lg::parse("diam(p0)", lg::Lang::Extended)),
                  std::invalid_argument);
  CHECK_THROWS_AS(eval_extended(m, lg::parse("mystery(p0)", lg::Lang::Extended)),
                  std::invalid_argument);
}

TEST_CASE("nullary operators read membership of the world") {
  TauModel m;
  m.worlds = FinSet{"u", "v"};
  m.arity = {{"flag", 0}};
  m.rel["flag"] = {{"u"}};
  CHECK(eval_extended(m, lg::parse("flag()", lg::Lang::Extended)) == Subset{"u"});
  // nabla of a nullary operator is its complement
  CHECK(eval_extended(m, lg::nabla("flag", {})) == Subset{"v"});
}

TEST_CASE("neighborhood semantics") {
  KripkeModel k = fixtures::chain_model();
  NeighborhoodModel n = kripke_to_neighborhood(k);
  validate(n);

  // N(w) = supersets of R(w); world 5 has no successors, so N(5) is everything
  CHECK(n.nbhd.at("5").size() == 32);
  CHECK(n.nbhd.at("1").count(Subset{"2"}));
  CHECK(n.nbhd.at("1").count(Subset{"2", "3"}));
  CHECK_FALSE(n.nbhd.at("1").count(Subset{"3"}));

  // box true holds where the family contains the full set
  Subset boxtop = eval_neighborhood(n, lg::parse("[]true", lg::Lang::Basic));
  CHECK(boxtop == n.worlds.as_subset());

  // agreement with the Kripke engine on the generated model
  Rng rng(41);
  for (int i = 0; i < 40; ++i) {
    lg::FormulaPtr f = testgen::random_basic(rng, {"p", "q", "r"}, 4);
    CHECK(eval_neighborhood(n, f) == eval_basic(k, f));
  }

  // dia = ~box~ on random neighborhood models
  for (int i = 0; i < 40; ++i) {
    NeighborhoodModel rm = testgen::random_nbhd(rng, 1 + next_below(rng, 4), {"p"});
    lg::FormulaPtr f = testgen::random_basic(rng, {"p"}, 3);
    CHECK(eval_neighborhood(rm, lg::f_diamond(f)) ==
          eval_neighborhood(rm, lg::f_not(lg::f_box(lg::f_not(f)))));
  }
}

TEST_CASE("PDL relations on the printer model") {
  PdlModel m = fixtures::printer_model();
  FinRel run_print = pdl_relation(m, lg::parse("<run ; print>true", lg::Lang::Pdl)->prog);
  CHECK(run_print == FinRel(m.worlds, m.worlds, {{"-1", "-1"}, {"0", "1"}, {"1", "1"}}));

  // star over a single edge
  PdlModel tiny;
  tiny.worlds = FinSet{"1", "2"};
  tiny.atomic.emplace("e", FinRel(tiny.worlds, tiny.worlds, {{"1", "2"}}));
  FinRel star = pdl_relation(tiny, lg::p_star(lg::p_atomic("e")));
  CHECK(star == FinRel(tiny.worlds, tiny.worlds, {{"1", "1"}, {"2", "2"}, {"1", "2"}}));

  // the zeroth power is the diagonal
  PdlModel empty_step = tiny;
  empty_step.atomic.at("e") = FinRel(tiny.worlds, tiny.worlds, {});
  CHECK(pdl_relation(empty_step, lg::p_star(lg::p_atomic("e"))) == FinRel::diagonal(tiny.worlds));
}

TEST_CASE("PDL verdicts of the printer exercise") {
  PdlModel m = fixtures::printer_model();
  auto eval = [&](const std::string& s) { return eval_pdl(m, lg::parse(s, lg::Lang::Pdl)); };
  CHECK_FALSE(eval("<run ; print> did_print").count("-1"));
  CHECK(eval("<init ; run ; print> did_print") == m.worlds.as_subset());
  CHECK(eval("<(~is_init)? ; print> did_print") == Subset{});
}

TEST_CASE("PDL star equals an independent closure oracle") {
  Rng rng(43);
  for (int i = 0; i < 50; ++i) {
    PdlModel m = testgen::random_pdl_model(rng, 1 + next_below(rng, 4), {"a", "b"}, {"p"});
    lg::ProgramPtr pi = testgen::random_program(rng, {"a", "b"}, {"p"}, 2);
    FinRel base = pdl_relation(m, pi);
    CHECK(pdl_relation(m, lg::p_star(pi)) == rt_closure_oracle(base));
  }
}

TEST_CASE("sequential composition agrees with nested modalities") {
  Rng rng(47);
  for (int i = 0; i < 50; ++i) {
    PdlModel m = testgen::random_pdl_model(rng, 1 + next_below(rng, 4), {"a", "b"}, {"p", "q"});
    lg::ProgramPtr p1 = testgen::random_program(rng, {"a", "b"}, {"p"}, 2);
    lg::ProgramPtr p2 = testgen::random_program(rng, {"a", "b"}, {"q"}, 2);
    lg::FormulaPtr f = testgen::random_pdl(rng, {"a", "b"}, {"p", "q"}, 2);
    Subset seq = eval_pdl(m, lg::f_diamond_prog(lg::p_seq(p1, p2), f));
    Subset nested = eval_pdl(m, lg::f_diamond_prog(p1, lg::f_diamond_prog(p2, f)));
    CHECK(seq == nested);
  }
}

TEST_CASE("game effectivity clauses") {
  Rng rng(53);
  std::vector<std::string> atoms{"g1", "g2"};
  std::vector<std::string> letters{"p"};
  for (int i = 0; i < 50; ++i) {
    GameModel m = testgen::random_game_model(rng, 1 + next_below(rng, 4), atoms, letters);
    Subset a = PowersetMonad::random_elem(m.worlds, rng);
    Subset b = a;
    for (const auto& w : m.worlds)
      if (next_below(rng, 2)) b.insert(w);

    // test clause: P'_{phi?}(A) = validity(phi) n A
    lg::FormulaPtr phi = testgen::random_game_formula(rng, atoms, letters, 2);
    Subset tested = game_effectivity(m, lg::g_test(phi), a);
    Subset expect;
    Subset holds = eval_game(m, phi);
    for (const auto& w : a)
      if (holds.count(w)) expect.insert(w);
    CHECK(tested == expect);

    // angelic choice is union
    lg::GamePtr u = lg::g_angelic(lg::g_atomic("g1"), lg::g_atomic("g2"));
    Subset lhs = game_effectivity(m, u, a);
    Subset rhs = game_effectivity(m, lg::g_atomic("g1"), a);
    for (const auto& w : game_effectivity(m, lg::g_atomic("g2"), a)) rhs.insert(w);
    CHECK(lhs == rhs);

    // monotonicity and dual involution on random games
    lg::GamePtr g = testgen::random_game(rng, atoms, letters, 3);
    Subset ga = game_effectivity(m, g, a);
    Subset gb = game_effectivity(m, g, b);
    CHECK(std::includes(gb.begin(), gb.end(), ga.begin(), ga.end()));
    CHECK(game_effectivity(m, lg::g_dual(lg::g_dual(g)), a) == ga);
  }
}

TEST_CASE("CTL fixpoints on the looped chain") {
  FinSet w{"1", "2", "3"};
  KripkeModel m{w, FinRel(w, w, {{"1", "2"}, {"2", "3"}, {"3", "3"}}), {{"p", {"3"}}}};
  auto eval = [&](const std::string& s) { return ctl_eval(m, lg::parse(s, lg::Lang::Ctl)); };
  CHECK(eval("A G true") == w.as_subset());
  CHECK(eval("E F p") == w.as_subset());
  CHECK(eval("E (~p U p)") == w.as_subset());
  CHECK(eval("E X p") == Subset{"2", "3"});
  CHECK(eval("A X p") == Subset{"2", "3"});
  CHECK(eval("E G p") == Subset{"3"});
  CHECK(eval("A F p") == w.as_subset());

  CHECK_THROWS_AS(ctl_eval(m, lg::parse("E ~X p", lg::Lang::Ctl)), std::invalid_argument);
}

TEST_CASE("states without paths satisfy A vacuously and E never") {
  FinSet w{"d", "l"};
  // l loops, d is a dead end
  KripkeModel m{w, FinRel(w, w, {{"l", "l"}}), {{"p", {"d", "l"}}}};
  auto eval = [&](const std::string& s) { return ctl_eval(m, lg::parse(s, lg::Lang::Ctl)); };
  CHECK_FALSE(eval("E G p").count("d"));
  CHECK_FALSE(eval("E F p").count("d"));
  CHECK(eval("A G false").count("d"));  // vacuous truth
  CHECK(eval("A X false").count("d"));
  CHECK(eval("E G p").count("l"));
}

TEST_CASE("lasso validation") {
  KripkeModel m = fixtures::chain_model();
  CHECK_THROWS_AS(validate_lasso(m, Lasso{{"1"}, {}}), std::invalid_argument);
  CHECK_THROWS_AS(validate_lasso(m, Lasso{{"1"}, {"3"}}), std::invalid_argument);
  KripkeModel looped{FinSet{"1", "2"},
                     FinRel(FinSet{"1", "2"}, FinSet{"1", "2"}, {{"1", "2"}, {"2", "2"}}),
                     {}};
  validate_lasso(looped, Lasso{{"1"}, {"2"}});
  validate_lasso(looped, Lasso{{}, {"2"}});
}

TEST_CASE("the lasso oracle matches hand verdicts") {
  FinSet w{"1", "2"};
  KripkeModel m{w, FinRel(w, w, {{"1", "2"}, {"2", "2"}}), {{"p", {"2"}}}};
  // G true on every lasso
  CHECK(lasso_oracle(m, lg::parse("A G true", lg::Lang::Ctl), 4, 2) == w.as_subset());
  // X p: the second state of every path from 1 is 2
  CHECK(lasso_oracle(m, lg::parse("A X p", lg::Lang::Ctl), 4, 2) == w.as_subset());
  CHECK(lasso_oracle(m, lg::parse("E X p", lg::Lang::Ctl), 4, 2) == w.as_subset());
}

TEST_CASE("fixpoint engine equals the lasso oracle on random models") {
  Rng rng(59);
  std::vector<std::string> letters{"p", "q"};
  for (int i = 0; i < 30; ++i) {
    int n = 1 + static_cast<int>(next_below(rng, 4));
    KripkeModel m = testgen::random_kripke(rng, n, letters);
    lg::FormulaPtr f = testgen::random_ctl_state(rng, letters, 2);
    Subset fix = ctl_eval(m, f);
    Subset oracle = lasso_oracle(m, f, 2 * m.worlds.size(), m.worlds.size());
    CAPTURE(lg::render(f));
    CHECK(fix == oracle);
  }
}

TEST_CASE("bounded satisfiability search") {
  CHECK_FALSE(find_model_bounded(lg::parse("false", lg::Lang::Basic), 3));
  CHECK_FALSE(find_model_bounded(lg::parse("p & ~p", lg::Lang::Basic), 2));

  auto witness = find_model_bounded(lg::parse("<>true", lg::Lang::Basic), 3);
  REQUIRE(witness);
  CHECK(eval_basic(witness->model, lg::parse("<>true", lg::Lang::Basic)).count(witness->world));
  // the first witness in enumeration order is the one-state self-loop
  CHECK(witness->model.worlds.size() == 1);

  auto deep = find_model_bounded(lg::parse("<>p & <>~p", lg::Lang::Basic), 3);
  REQUIRE(deep);
  CHECK(eval_basic(deep->model, lg::parse("<>p & <>~p", lg::Lang::Basic)).count(deep->world));

  CHECK_THROWS_AS(find_model_bounded(lg::parse("p", lg::Lang::Basic), 5), CapExceeded);
}

TEST_CASE("double nabla cancels at evaluation time") {
  TauModel m = fixtures::arity_tau_model();
  lg::FormulaPtr plain = lg::parse("diam(p0, p1)", lg::Lang::Extended);
  lg::FormulaPtr twice = lg::f_not(
      lg::nabla("diam", {lg::f_not(lg::f_letter("p0")), lg::f_not(lg::f_letter("p1"))}));
  CHECK(eval_extended(m, plain) == eval_extended(m, twice));
}
