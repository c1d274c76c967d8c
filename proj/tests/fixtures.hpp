// Shared model fixtures used by the unit suites and the acceptance runner.

#pragma once

#include "coalg/semantics.hpp"

namespace fixtures {

using namespace coalg;

/// Five worlds in a line; p on {2,3}, q everywhere, r nowhere.
inline KripkeModel chain_model() {
  FinSet w{"1", "2", "3", "4", "5"};
  PairSet rel{{"1", "2"}, {"2", "3"}, {"3", "4"}, {"4", "5"}};
  Valuation val;
  val["p"] = {"2", "3"};
  val["q"] = {"1", "2", "3", "4", "5"};
  val["r"] = {};
  return {w, FinRel(w, w, rel), val};
}

/// Divisor worlds {1,2,3,4,6,8,12,24}; x -> y iff x != y and x divides y.
inline KripkeModel divisibility_model() {
  std::vector<int> nums{1, 2, 3, 4, 6, 8, 12, 24};
  std::vector<std::string> names;
  for (int n : nums) names.push_back(std::to_string(n));
  FinSet w(names);
  PairSet rel;
  for (int a : nums)
    for (int b : nums)
      if (a != b && b % a == 0) rel.emplace(std::to_string(a), std::to_string(b));
  Valuation val;
  val["p"] = {"4", "8", "12", "24"};
  val["q"] = {"6"};
  return {w, FinRel(w, w, rel), val};
}

/// Unary operators a, b, c over four worlds; p at w2.
inline TauModel unary_tau_model() {
  TauModel m;
  m.worlds = FinSet{"w1", "w2", "w3", "w4"};
  m.arity = {{"a", 1}, {"b", 1}, {"c", 1}};
  m.rel["a"] = {{"w1", "w2"}, {"w4", "w4"}};
  m.rel["b"] = {{"w2", "w3"}};
  m.rel["c"] = {{"w3", "w4"}};
  m.valuation["p"] = {"w2"};
  return m;
}

/// diam/2 and club/3 over {u,v,w,s}.
inline TauModel arity_tau_model() {
  TauModel m;
  m.worlds = FinSet{"u", "v", "w", "s"};
  m.arity = {{"diam", 2}, {"club", 3}};
  m.rel["diam"] = {{"u", "v", "w"}};
  m.rel["club"] = {{"u", "v", "w", "s"}};
  m.valuation["p0"] = {"v"};
  m.valuation["p1"] = {"w"};
  m.valuation["p2"] = {"s"};
  return m;
}

/// The init/run/print machine on {-1,0,1}.
inline PdlModel printer_model() {
  PdlModel m;
  m.worlds = FinSet{"-1", "0", "1"};
  m.atomic.emplace("init", FinRel(m.worlds, m.worlds, {{"-1", "0"}, {"0", "0"}, {"1", "1"}}));
  m.atomic.emplace("run", FinRel(m.worlds, m.worlds, {{"-1", "-1"}, {"0", "0"}, {"1", "1"}}));
  m.atomic.emplace("print", FinRel(m.worlds, m.worlds, {{"-1", "-1"}, {"0", "1"}, {"1", "1"}}));
  m.valuation["is_init"] = {"0", "1"};
  m.valuation["did_print"] = {"1"};
  return m;
}

/// The two five-state bisimilar models, with the six-pair relation.
inline KripkeModel bisimilar_left() {
  FinSet w{"1", "2", "3", "4", "5"};
  PairSet rel{{"1", "2"}, {"2", "3"}, {"3", "4"}, {"3", "5"}};
  Valuation val;
  val["p"] = {"1", "3"};
  val["q"] = {"2", "4", "5"};
  return {w, FinRel(w, w, rel), val};
}

inline KripkeModel bisimilar_right() {
  FinSet w{"a", "b", "c", "d", "e"};
  PairSet rel{{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}, {"d", "e"}};
  Valuation val;
  val["p"] = {"a", "d"};
  val["q"] = {"b", "c", "e"};
  return {w, FinRel(w, w, rel), val};
}

inline PairSet bisimilar_pairs() {
  return {{"1", "a"}, {"2", "b"}, {"2", "c"}, {"3", "d"}, {"4", "e"}, {"5", "e"}};
}

/// The fifteen-state system whose bisimulation equivalence merges
/// {s2,s4}, {s9,s12} and {s13,s14}.
inline KripkeModel fifteen_state_system() {
  std::vector<std::string> names;
  for (int i = 0; i <= 14; ++i) names.push_back("s" + std::to_string(i));
  FinSet w(names);
  PairSet rel{{"s0", "s1"}, {"s1", "s2"}, {"s1", "s3"}, {"s1", "s4"}, {"s2", "s5"},
              {"s4", "s5"}, {"s5", "s6"}, {"s6", "s7"}, {"s6", "s8"}, {"s7", "s9"},
              {"s9", "s12"}, {"s12", "s9"}, {"s8", "s10"}, {"s8", "s11"}, {"s10", "s13"},
              {"s11", "s14"}};
  return {w, FinRel(w, w, rel), {}};
}

inline FinRel fifteen_state_equivalence() {
  const KripkeModel m = fifteen_state_system();
  PairSet pairs;
  for (const auto& s : m.worlds) pairs.emplace(s, s);
  for (const auto& [a, b] : std::vector<std::pair<std::string, std::string>>{
           {"s2", "s4"}, {"s9", "s12"}, {"s13", "s14"}}) {
    pairs.emplace(a, b);
    pairs.emplace(b, a);
  }
  return FinRel(m.worlds, m.worlds, pairs);
}

/// The two seven/six-state systems of the bisimulation-carrier exercise.
inline KripkeModel six_state_system() {
  FinSet w{"s1", "s2", "s3", "s4", "s5", "s6"};
  PairSet rel{{"s1", "s2"}, {"s1", "s3"}, {"s1", "s4"}, {"s2", "s5"},
              {"s3", "s6"}, {"s4", "s6"}, {"s4", "s1"}, {"s5", "s5"}, {"s6", "s2"}};
  return {w, FinRel(w, w, rel), {}};
}

inline KripkeModel seven_state_system() {
  FinSet w{"t1", "t2", "t3", "t4", "t5", "t6", "t7"};
  PairSet rel{{"t1", "t2"}, {"t1", "t3"}, {"t1", "t4"}, {"t2", "t5"}, {"t2", "t1"},
              {"t3", "t6"}, {"t4", "t7"}, {"t4", "t6"}, {"t5", "t3"}, {"t5", "t4"},
              {"t6", "t7"}, {"t7", "t6"}};
  return {w, FinRel(w, w, rel), {}};
}

}  // namespace fixtures
