// monads.hpp -- Kleisli triples on finite carriers: powerset, discrete
// distribution, ultrafilter, upper-closed family and sequence monads, the
// functor action and multiplication derived from the extension operator,
// and the law-checking harnesses.
//
// Each monad is a struct with a uniform static interface:
//   Elem                          representation of an element of T X
//   name()                        display name
//   enumerate(X)                  all of T X (CapExceeded when infeasible)
//   unit(X, x)                    eta_X(x)
//   extend(X, Y, f, v)            f^* applied to v, f given as a value table
//   map_concrete(f, v)            the textbook functor action (direct image,
//                                 pushforward, ...), used as an oracle for
//                                 the derived action (eta . f)^*
//   validate(X, v)                invariant check, throws on violation
//   render(v)                     canonical text form, injective per carrier
//   random_elem(X, rng)           seeded generator for sampled checks

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "coalg/finset.hpp"
#include "coalg/rational.hpp"

namespace coalg {

using Family = std::set<Subset>;
using Rng = std::mt19937_64;

/// rng.next_below replacement with stable cross-platform behavior.
inline std::uint64_t next_below(Rng& rng, std::uint64_t n) { return n ? rng() % n : 0; }

/// A discrete probability distribution with exact rational weights.
/// Zero weights are not stored; the weights of a valid distribution are
/// positive and sum to exactly one.
struct FinDist {
  std::map<std::string, Rat> weights;

  Rat at(const std::string& x) const {
    auto it = weights.find(x);
    return it == weights.end() ? Rat(0) : it->second;
  }
  Rat total() const {
    Rat s(0);
    for (const auto& [x, w] : weights) s += w;
    return s;
  }
  bool operator==(const FinDist& o) const { return weights == o.weights; }
  bool operator<(const FinDist& o) const { return weights < o.weights; }
};

std::string render_family(const Family& fam);
std::string render_dist(const FinDist& d);
std::string render_seq(const std::vector<std::string>& w);

bool is_upper_closed(const FinSet& carrier, const Family& fam);
Family upward_closure(const FinSet& carrier, const Family& generators);
std::vector<Subset> all_subsets(const FinSet& carrier);

struct PowersetMonad {
  using Elem = Subset;
  static std::string name() { return "powerset"; }
  static std::vector<Elem> enumerate(const FinSet& x);
  static Elem unit(const FinSet& x, const std::string& v);
  static Elem extend(const FinSet& x, const FinSet& y,
                     const std::map<std::string, Elem>& f, const Elem& v);
  static Elem map_concrete(const FinFn& f, const Elem& v);
  static void validate(const FinSet& x, const Elem& v);
  static std::string render(const Elem& v) { return render_set(v); }
  static Elem random_elem(const FinSet& x, Rng& rng);
};

/// mu for the powerset monad: the flat union of a set of subsets.
Subset pow_mu(const std::set<Subset>& beta);

struct UpperClosedMonad {
  using Elem = Family;
  static std::string name() { return "upperclosed"; }
  static std::vector<Elem> enumerate(const FinSet& x);
  static Elem unit(const FinSet& x, const std::string& v);
  static Elem extend(const FinSet& x, const FinSet& y,
                     const std::map<std::string, Elem>& f, const Elem& v);
  static Elem map_concrete(const FinFn& f, const Elem& v);
  static void validate(const FinSet& x, const Elem& v);
  static std::string render(const Elem& v) { return render_family(v); }
  static Elem random_elem(const FinSet& x, Rng& rng);
};

struct UltrafilterMonad {
  using Elem = Family;
  static std::string name() { return "ultrafilter"; }
  static std::vector<Elem> enumerate(const FinSet& x);
  static Elem unit(const FinSet& x, const std::string& v);
  static Elem extend(const FinSet& x, const FinSet& y,
                     const std::map<std::string, Elem>& f, const Elem& v);
  static Elem map_concrete(const FinFn& f, const Elem& v);
  static void validate(const FinSet& x, const Elem& v);
  static std::string render(const Elem& v) { return render_family(v); }
  static Elem random_elem(const FinSet& x, Rng& rng);
  /// Every ultrafilter on a finite carrier is principal; extract the point.
  static std::string principal_point(const FinSet& x, const Elem& v);
};

struct DistMonad {
  using Elem = FinDist;
  static std::string name() { return "dist"; }
  static std::vector<Elem> enumerate(const FinSet& x);  // throws CapExceeded
  static Elem unit(const FinSet& x, const std::string& v);
  static Elem extend(const FinSet& x, const FinSet& y,
                     const std::map<std::string, Elem>& f, const Elem& v);
  static Elem map_concrete(const FinFn& f, const Elem& v);
  static void validate(const FinSet& x, const Elem& v);
  static std::string render(const Elem& v) { return render_dist(v); }
  static Elem random_elem(const FinSet& x, Rng& rng);  // denominators <= 6
};

struct SeqMonad {
  using Elem = std::vector<std::string>;
  static constexpr std::size_t kEnumLengthCap = 3;
  static std::string name() { return "seq"; }
  /// Words of length <= kEnumLengthCap; longer words are still legal values.
  static std::vector<Elem> enumerate(const FinSet& x);
  static Elem unit(const FinSet& x, const std::string& v);
  static Elem extend(const FinSet& x, const FinSet& y,
                     const std::map<std::string, Elem>& f, const Elem& v);
  static Elem map_concrete(const FinFn& f, const Elem& v);
  static void validate(const FinSet& x, const Elem& v);
  static std::string render(const Elem& v) { return render_seq(v); }
  static Elem random_elem(const FinSet& x, Rng& rng);
};

// --- reports ---------------------------------------------------------------

struct LawCheck {
  std::string law;
  bool pass = true;
  std::string witness;  // set on failure
};

struct LawReport {
  std::vector<LawCheck> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  std::string render() const {
    std::string out;
    for (const auto& c : checks)
      out += c.law + (c.pass ? " PASS" : " FAIL: " + c.witness) + "\n";
    return out;
  }
};

// --- named enumerations ------------------------------------------------------

/// T X listed with canonical names, so that T X can itself serve as a
/// carrier (needed for mu: T(T X) -> T X and for iterated functors).
template <typename M>
struct Enumerated {
  FinSet names;
  std::map<std::string, typename M::Elem> by_name;
  std::map<typename M::Elem, int> index;  // into names.elements()
  std::vector<typename M::Elem> by_pos;   // aligned with names.elements()
};

template <typename M>
Enumerated<M> enumerate_named(const FinSet& x) {
  Enumerated<M> e;
  std::vector<std::string> names;
  std::map<std::string, typename M::Elem> by_name;
  for (auto& v : M::enumerate(x)) {
    std::string n = M::render(v);
    if (!by_name.emplace(n, v).second)
      throw std::logic_error("non-canonical rendering for " + n);
    names.push_back(n);
  }
  e.names = FinSet(std::move(names));
  e.by_name = std::move(by_name);
  int i = 0;
  for (const auto& n : e.names) {
    e.index.emplace(e.by_name.at(n), i++);
    e.by_pos.push_back(e.by_name.at(n));
  }
  return e;
}

// --- derived structure -------------------------------------------------------

/// T f := (eta . f)^* for a plain map f: X -> Y, applied to v in T X.
template <typename M>
typename M::Elem derived_map(const FinFn& f, const typename M::Elem& v) {
  std::map<std::string, typename M::Elem> table;
  for (const auto& x : f.domain()) table.emplace(x, M::unit(f.codomain(), f(x)));
  return M::extend(f.domain(), f.codomain(), table, v);
}

/// mu := (id_{T X})^*, evaluated at an element of T(T X) whose base points
/// are canonical names of T X.
template <typename M>
typename M::Elem derived_mu(const FinSet& x, const Enumerated<M>& tx,
                            const typename M::Elem& v_of_names) {
  std::map<std::string, typename M::Elem> table;
  for (const auto& n : tx.names) table.emplace(n, tx.by_name.at(n));
  return M::extend(tx.names, x, table, v_of_names);
}

// --- law checking ------------------------------------------------------------

struct KleisliCaps {
  std::size_t max_carrier;       // reject larger carriers in exhaustive mode
  std::size_t max_table_space;   // reject larger function spaces
};

template <typename M>
KleisliCaps default_caps();

/// Exhaustive check of the three Kleisli laws over the given carriers.
/// Law 3 quantifies over all pairs (f: X -> T Y, g: Y -> T Z).
template <typename M>
LawReport check_kleisli_laws_exhaustive(const FinSet& x, const FinSet& y, const FinSet& z);

/// Seeded sampled check (for the distribution and sequence monads).
template <typename M>
LawReport check_kleisli_laws_sampled(const FinSet& x, const FinSet& y, const FinSet& z,
                                     int samples, unsigned long long seed);

/// Manes round trip: f+ := mu . T f equals f^*, and the derived functor
/// action (eta . f)^* equals the monad's concrete one.
template <typename M>
LawReport manes_roundtrip(const FinSet& x, const FinSet& y, int samples,
                          unsigned long long seed, bool exhaustive);

/// The monad diagrams for the derived (T, eta, mu): both unit triangles and
/// the associativity square, on enumerated elements when T^3 X is feasible
/// and on seeded samples otherwise.
template <typename M>
LawReport check_monad_diagrams(const FinSet& x, int samples, unsigned long long seed);

// Instantiations live in monads.cpp.
extern template LawReport check_kleisli_laws_exhaustive<PowersetMonad>(const FinSet&, const FinSet&, const FinSet&);
extern template LawReport check_kleisli_laws_exhaustive<UpperClosedMonad>(const FinSet&, const FinSet&, const FinSet&);
extern template LawReport check_kleisli_laws_exhaustive<UltrafilterMonad>(const FinSet&, const FinSet&, const FinSet&);
extern template LawReport check_kleisli_laws_exhaustive<DistMonad>(const FinSet&, const FinSet&, const FinSet&);
extern template LawReport check_kleisli_laws_exhaustive<SeqMonad>(const FinSet&, const FinSet&, const FinSet&);
extern template LawReport check_kleisli_laws_sampled<DistMonad>(const FinSet&, const FinSet&, const FinSet&, int, unsigned long long);
extern template LawReport check_kleisli_laws_sampled<SeqMonad>(const FinSet&, const FinSet&, const FinSet&, int, unsigned long long);
extern template LawReport manes_roundtrip<PowersetMonad>(const FinSet&, const FinSet&, int, unsigned long long, bool);
extern template LawReport manes_roundtrip<UpperClosedMonad>(const FinSet&, const FinSet&, int, unsigned long long, bool);
extern template LawReport manes_roundtrip<UltrafilterMonad>(const FinSet&, const FinSet&, int, unsigned long long, bool);
extern template LawReport manes_roundtrip<DistMonad>(const FinSet&, const FinSet&, int, unsigned long long, bool);
extern template LawReport manes_roundtrip<SeqMonad>(const FinSet&, const FinSet&, int, unsigned long long, bool);
extern template LawReport check_monad_diagrams<PowersetMonad>(const FinSet&, int, unsigned long long);
extern template LawReport check_monad_diagrams<UpperClosedMonad>(const FinSet&, int, unsigned long long);
extern template LawReport check_monad_diagrams<UltrafilterMonad>(const FinSet&, int, unsigned long long);
extern template LawReport check_monad_diagrams<DistMonad>(const FinSet&, int, unsigned long long);
extern template LawReport check_monad_diagrams<SeqMonad>(const FinSet&, int, unsigned long long);

/// Deliberately corrupted powerset extension (drops the least element of
/// the result); used to demonstrate that the harness catches violations.
LawReport check_corrupted_powerset_laws(const FinSet& x);

FinDist random_dist(const FinSet& carrier, Rng& rng, int denom_bound = 6);

}  // namespace coalg
