// finset.hpp -- finite sets, total functions, relations and partitions,
// together with the categorical constructions on them (kernel, epi/mono
// factorization, pullback, pushout, coproduct, product, currying).
//
// All values are immutable after construction and all operations are pure.
// Elements are strings; every container keeps its contents in lexicographic
// order so that rendered output is reproducible byte for byte.

#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace coalg {

using Subset = std::set<std::string>;
using ElemPair = std::pair<std::string, std::string>;
using PairSet = std::set<ElemPair>;

/// Thrown when an enumeration would exceed a configured cap.
struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// A finite set of named elements, kept sorted and duplicate-free.
class FinSet {
 public:
  FinSet() = default;
  explicit FinSet(std::vector<std::string> elems);
  FinSet(std::initializer_list<std::string> elems);
  static FinSet from(const Subset& s);

  bool contains(const std::string& x) const;
  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  const std::vector<std::string>& elements() const { return elems_; }
  Subset as_subset() const { return Subset(elems_.begin(), elems_.end()); }

  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

  bool operator==(const FinSet& o) const { return elems_ == o.elems_; }
  bool operator!=(const FinSet& o) const { return elems_ != o.elems_; }
  bool operator<(const FinSet& o) const { return elems_ < o.elems_; }

 private:
  std::vector<std::string> elems_;
};

/// A total function between finite sets, given by its value table.
class FinFn {
 public:
  FinFn() = default;
  FinFn(FinSet domain, FinSet codomain, std::map<std::string, std::string> table);

  static FinFn identity(const FinSet& s);
  static FinFn constant(const FinSet& domain, const FinSet& codomain, const std::string& value);

  const std::string& operator()(const std::string& x) const;
  const FinSet& domain() const { return dom_; }
  const FinSet& codomain() const { return cod_; }
  const std::map<std::string, std::string>& table() const { return table_; }

  Subset image() const;
  Subset image_of(const Subset& a) const;
  Subset preimage_of(const Subset& b) const;
  bool injective() const;
  bool surjective() const;

  bool operator==(const FinFn& o) const;
  bool operator!=(const FinFn& o) const { return !(*this == o); }
  bool operator<(const FinFn& o) const;

 private:
  FinSet dom_, cod_;
  std::map<std::string, std::string> table_;
};

/// A relation between two finite sets.
class FinRel {
 public:
  FinRel() = default;
  FinRel(FinSet left, FinSet right, PairSet pairs);

  static FinRel diagonal(const FinSet& s);
  static FinRel full(const FinSet& left, const FinSet& right);

  const FinSet& left() const { return left_; }
  const FinSet& right() const { return right_; }
  const PairSet& pairs() const { return pairs_; }
  bool contains(const std::string& a, const std::string& b) const;
  Subset successors(const std::string& a) const;

  FinRel inverse() const;
  bool reflexive() const;
  bool symmetric() const;
  bool transitive() const;
  bool is_equivalence() const;

  bool operator==(const FinRel& o) const;
  bool operator!=(const FinRel& o) const { return !(*this == o); }

 private:
  FinSet left_, right_;
  PairSet pairs_;
};

/// Relational composition, diagrammatic order: (a,c) iff a r b and b s c.
FinRel rel_compose(const FinRel& r, const FinRel& s);
FinRel rel_union(const FinRel& a, const FinRel& b);

/// A partition of a carrier into nonempty, pairwise disjoint blocks.
class Partition {
 public:
  Partition() = default;
  Partition(FinSet carrier, std::set<Subset> blocks);

  static Partition discrete(const FinSet& carrier);
  static Partition from_equivalence(const FinRel& eq);

  const FinSet& carrier() const { return carrier_; }
  const std::set<Subset>& blocks() const { return blocks_; }
  const Subset& block_of(const std::string& x) const;
  bool same_block(const std::string& x, const std::string& y) const;
  FinRel to_equivalence() const;

  /// Canonical name of a block: "{a,b}".
  static std::string block_name(const Subset& block);
  /// Carrier made of block names, plus the class map into it.
  FinSet block_set() const;
  FinFn class_map() const;

  bool operator==(const Partition& o) const;

 private:
  FinSet carrier_;
  std::set<Subset> blocks_;
  std::map<std::string, Subset> index_;
};

// --- categorical constructions -------------------------------------------

/// compose(f, g)(x) = g(f(x)); requires codomain(f) = domain(g).
FinFn compose(const FinFn& f, const FinFn& g);

/// kernel(f) = { (x1,x2) | f(x1) = f(x2) }, an equivalence on dom(f).
FinRel kernel(const FinFn& f);

struct Factorization {
  FinFn epi;   // onto the kernel classes
  FinFn mono;  // injective into the codomain
  FinSet middle;
};

/// f = mono . epi with epi surjective and mono injective.
Factorization epi_mono_factorize(const FinFn& f);

struct Cone {
  FinSet apex;
  FinFn to_left;   // apex -> dom(f)
  FinFn to_right;  // apex -> dom(g)
};

struct PullbackResult {
  FinSet apex;  // pair names "(x,y)"
  FinFn to_left;
  FinFn to_right;
};

/// Canonical pullback of f: X->Z, g: Y->Z; apex = {(x,y) | f(x)=g(y)}.
PullbackResult pullback(const FinFn& f, const FinFn& g);

/// The unique mediating map from a commuting cone into the canonical
/// pullback; rejects cones that do not commute with f, g.
FinFn pullback_mediator(const FinFn& f, const FinFn& g, const PullbackResult& pb, const Cone& cone);

struct PushoutResult {
  Partition classes;  // partition of the tagged sum B+C
  FinSet object;      // block names
  FinFn from_left;    // B -> object
  FinFn from_right;   // C -> object
};

/// Pushout of f: A->B, g: A->C over the tagged sum (B+C)/~.
PushoutResult pushout(const FinFn& f, const FinFn& g);

/// The unique mediating map out of the pushout for a commuting cocone
/// q_b: B->E, q_c: C->E.
FinFn pushout_mediator(const FinFn& f, const FinFn& g, const PushoutResult& po,
                       const FinFn& q_b, const FinFn& q_c);

struct CoproductResult {
  FinSet object;  // tag names "(x,k)"
  std::vector<FinFn> injections;
};

std::string tagged_name(const std::string& x, std::size_t k);
CoproductResult coproduct(const std::vector<FinSet>& family);

struct ProductResult {
  FinSet object;  // pair names "(x,e)"
  FinFn proj_left;
  FinFn proj_right;
};

std::string pair_name(const std::string& a, const std::string& b);
ProductResult product(const FinSet& x, const FinSet& e);

struct FunctionSpace {
  FinSet names;  // one name per total function E -> A
  std::map<std::string, FinFn> by_name;
};

/// All total functions E -> A, with canonical names "(e->a; e'->b)".
FunctionSpace function_space(const FinSet& e, const FinSet& a);

/// curry(k): X -> (E -> A) for k: X*E -> A given on the canonical product.
/// The codomain is the canonical function-space carrier.
FinFn curry(const FinFn& k, const FinSet& x, const FinSet& e);

/// uncurry(c): X*E -> A for c: X -> function_space(E, A) names.
FinFn uncurry(const FinFn& c, const FinSet& x, const FinSet& e, const FinSet& a);

struct Square {
  FinSet apex;
  FinFn leg_left;   // apex -> X
  FinFn leg_right;  // apex -> Y
  FinFn f;          // X -> Z
  FinFn g;          // Y -> Z
};

/// True iff every commuting cone factors (not necessarily uniquely) through
/// the apex.  Decided by the canonical-cone criterion: the pairing of the
/// legs must reach every pair of the canonical pullback.  Rejects squares
/// that do not commute.
bool is_weak_pullback(const Square& sq);

/// True iff the square is a pullback: the pairing of the legs is a bijection
/// onto the canonical pullback.
bool is_strict_pullback(const Square& sq);

/// Smallest equivalence on `carrier` containing `seed`.
FinRel equivalence_closure(const FinSet& carrier, const PairSet& seed);

// --- rendering -------------------------------------------------------------

std::string render_set(const Subset& s);          // "{a, b}"
std::string render_finset(const FinSet& s);       // "{a, b}"
std::string render_fn(const FinFn& f);            // "a->x; b->y"
std::string render_rel(const FinRel& r);          // "(a,x) (b,y)"
std::string render_partition(const Partition& p); // "{a,b} {c}"

}  // namespace coalg
