#include "coalg/finset.hpp"

#include <algorithm>
#include <sstream>

namespace coalg {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

std::string sig(const FinFn& f) {
  return render_finset(f.domain()) + "->" + render_finset(f.codomain());
}

}  // namespace

FinSet::FinSet(std::vector<std::string> elems) : elems_(std::move(elems)) {
  std::sort(elems_.begin(), elems_.end());
  auto dup = std::adjacent_find(elems_.begin(), elems_.end());
  if (dup != elems_.end()) fail("duplicate element '" + *dup + "' in set");
}

FinSet::FinSet(std::initializer_list<std::string> elems)
    : FinSet(std::vector<std::string>(elems)) {}

FinSet FinSet::from(const Subset& s) {
  return FinSet(std::vector<std::string>(s.begin(), s.end()));
}

bool FinSet::contains(const std::string& x) const {
  return std::binary_search(elems_.begin(), elems_.end(), x);
}

FinFn::FinFn(FinSet domain, FinSet codomain, std::map<std::string, std::string> table)
    : dom_(std::move(domain)), cod_(std::move(codomain)), table_(std::move(table)) {
  for (const auto& x : dom_) {
    auto it = table_.find(x);
    if (it == table_.end()) fail("function has no value for '" + x + "'");
    if (!cod_.contains(it->second))
      fail("image '" + it->second + "' of '" + x + "' lies outside the codomain " +
           render_finset(cod_));
  }
  if (table_.size() != dom_.size()) fail("function table mentions elements outside its domain");
}

FinFn FinFn::identity(const FinSet& s) {
  std::map<std::string, std::string> t;
  for (const auto& x : s) t[x] = x;
  return FinFn(s, s, std::move(t));
}

FinFn FinFn::constant(const FinSet& domain, const FinSet& codomain, const std::string& value) {
  std::map<std::string, std::string> t;
  for (const auto& x : domain) t[x] = value;
  return FinFn(domain, codomain, std::move(t));
}

const std::string& FinFn::operator()(const std::string& x) const {
  auto it = table_.find(x);
  if (it == table_.end()) fail("'" + x + "' is not in the domain " + render_finset(dom_));
  return it->second;
}

Subset FinFn::image() const {
  Subset im;
  for (const auto& [x, y] : table_) im.insert(y);
  return im;
}

Subset FinFn::image_of(const Subset& a) const {
  Subset im;
  for (const auto& x : a) im.insert((*this)(x));
  return im;
}

Subset FinFn::preimage_of(const Subset& b) const {
  Subset pre;
  for (const auto& [x, y] : table_)
    if (b.count(y)) pre.insert(x);
  return pre;
}

bool FinFn::injective() const { return image().size() == dom_.size(); }

bool FinFn::surjective() const { return image().size() == cod_.size(); }

bool FinFn::operator==(const FinFn& o) const {
  return dom_ == o.dom_ && cod_ == o.cod_ && table_ == o.table_;
}

bool FinFn::operator<(const FinFn& o) const {
  if (dom_ != o.dom_) return dom_ < o.dom_;
  if (cod_ != o.cod_) return cod_ < o.cod_;
  return table_ < o.table_;
}

FinRel::FinRel(FinSet left, FinSet right, PairSet pairs)
    : left_(std::move(left)), right_(std::move(right)), pairs_(std::move(pairs)) {
  for (const auto& [a, b] : pairs_) {
    if (!left_.contains(a)) fail("relation pair mentions '" + a + "' outside the left carrier");
    if (!right_.contains(b)) fail("relation pair mentions '" + b + "' outside the right carrier");
  }
}

FinRel FinRel::diagonal(const FinSet& s) {
  PairSet p;
  for (const auto& x : s) p.emplace(x, x);
  return FinRel(s, s, std::move(p));
}

FinRel FinRel::full(const FinSet& left, const FinSet& right) {
  PairSet p;
  for (const auto& a : left)
    for (const auto& b : right) p.emplace(a, b);
  return FinRel(left, right, std::move(p));
}

bool FinRel::contains(const std::string& a, const std::string& b) const {
  return pairs_.count({a, b}) > 0;
}

Subset FinRel::successors(const std::string& a) const {
  Subset s;
  for (auto it = pairs_.lower_bound({a, ""}); it != pairs_.end() && it->first == a; ++it)
    s.insert(it->second);
  return s;
}

FinRel FinRel::inverse() const {
  PairSet p;
  for (const auto& [a, b] : pairs_) p.emplace(b, a);
  return FinRel(right_, left_, std::move(p));
}

bool FinRel::reflexive() const {
  if (left_ != right_) return false;
  for (const auto& x : left_)
    if (!contains(x, x)) return false;
  return true;
}

bool FinRel::symmetric() const {
  for (const auto& [a, b] : pairs_)
    if (!contains(b, a)) return false;
  return true;
}

bool FinRel::transitive() const {
  for (const auto& [a, b] : pairs_)
    for (const auto& c : successors(b))
      if (!contains(a, c)) return false;
  return true;
}

bool FinRel::is_equivalence() const { return reflexive() && symmetric() && transitive(); }

bool FinRel::operator==(const FinRel& o) const {
  return left_ == o.left_ && right_ == o.right_ && pairs_ == o.pairs_;
}

FinRel rel_compose(const FinRel& r, const FinRel& s) {
  if (r.right() != s.left())
    fail("relations do not compose: " + render_finset(r.right()) + " vs " +
         render_finset(s.left()));
  PairSet p;
  for (const auto& [a, b] : r.pairs())
    for (const auto& c : s.successors(b)) p.emplace(a, c);
  return FinRel(r.left(), s.right(), std::move(p));
}

FinRel rel_union(const FinRel& a, const FinRel& b) {
  if (a.left() != b.left() || a.right() != b.right()) fail("relation union: carriers differ");
  PairSet p = a.pairs();
  p.insert(b.pairs().begin(), b.pairs().end());
  return FinRel(a.left(), a.right(), std::move(p));
}

Partition::Partition(FinSet carrier, std::set<Subset> blocks)
    : carrier_(std::move(carrier)), blocks_(std::move(blocks)) {
  std::size_t covered = 0;
  for (const auto& block : blocks_) {
    if (block.empty()) fail("partition contains an empty block");
    for (const auto& x : block) {
      if (!carrier_.contains(x)) fail("block element '" + x + "' outside the carrier");
      if (!index_.emplace(x, block).second) fail("blocks overlap at '" + x + "'");
      ++covered;
    }
  }
  if (covered != carrier_.size()) fail("blocks do not cover the carrier");
}

Partition Partition::discrete(const FinSet& carrier) {
  std::set<Subset> blocks;
  for (const auto& x : carrier) blocks.insert(Subset{x});
  return Partition(carrier, std::move(blocks));
}

Partition Partition::from_equivalence(const FinRel& eq) {
  if (!eq.is_equivalence()) fail("relation is not an equivalence");
  std::set<Subset> blocks;
  for (const auto& x : eq.left()) blocks.insert(eq.successors(x));
  return Partition(eq.left(), std::move(blocks));
}

const Subset& Partition::block_of(const std::string& x) const {
  auto it = index_.find(x);
  if (it == index_.end()) fail("'" + x + "' is not in the carrier");
  return it->second;
}

bool Partition::same_block(const std::string& x, const std::string& y) const {
  return block_of(x) == block_of(y);
}

FinRel Partition::to_equivalence() const {
  PairSet p;
  for (const auto& block : blocks_)
    for (const auto& a : block)
      for (const auto& b : block) p.emplace(a, b);
  return FinRel(carrier_, carrier_, std::move(p));
}

std::string Partition::block_name(const Subset& block) {
  std::string name = "{";
  bool first = true;
  for (const auto& x : block) {
    if (!first) name += ",";
    name += x;
    first = false;
  }
  return name + "}";
}

FinSet Partition::block_set() const {
  std::vector<std::string> names;
  for (const auto& block : blocks_) names.push_back(block_name(block));
  return FinSet(std::move(names));
}

FinFn Partition::class_map() const {
  std::map<std::string, std::string> t;
  for (const auto& x : carrier_) t[x] = block_name(block_of(x));
  return FinFn(carrier_, block_set(), std::move(t));
}

bool Partition::operator==(const Partition& o) const {
  return carrier_ == o.carrier_ && blocks_ == o.blocks_;
}

FinFn compose(const FinFn& f, const FinFn& g) {
  if (f.codomain() != g.domain())
    fail("functions do not compose: f: " + sig(f) + " vs g: " + sig(g));
  std::map<std::string, std::string> t;
  for (const auto& x : f.domain()) t[x] = g(f(x));
  return FinFn(f.domain(), g.codomain(), std::move(t));
}

FinRel kernel(const FinFn& f) {
  PairSet p;
  for (const auto& x1 : f.domain())
    for (const auto& x2 : f.domain())
      if (f(x1) == f(x2)) p.emplace(x1, x2);
  return FinRel(f.domain(), f.domain(), std::move(p));
}

Factorization epi_mono_factorize(const FinFn& f) {
  Partition classes = Partition::from_equivalence(kernel(f));
  FinFn epi = classes.class_map();
  std::map<std::string, std::string> mono_table;
  for (const auto& block : classes.blocks())
    mono_table[Partition::block_name(block)] = f(*block.begin());
  FinSet middle = classes.block_set();
  return {epi, FinFn(middle, f.codomain(), std::move(mono_table)), middle};
}

std::string pair_name(const std::string& a, const std::string& b) {
  return "(" + a + "," + b + ")";
}

PullbackResult pullback(const FinFn& f, const FinFn& g) {
  if (f.codomain() != g.codomain())
    fail("pullback needs a common codomain: f: " + sig(f) + " vs g: " + sig(g));
  std::vector<std::string> names;
  std::map<std::string, std::string> pi_x, pi_y;
  for (const auto& x : f.domain())
    for (const auto& y : g.domain())
      if (f(x) == g(y)) {
        std::string n = pair_name(x, y);
        names.push_back(n);
        pi_x[n] = x;
        pi_y[n] = y;
      }
  FinSet apex(std::move(names));
  return {apex, FinFn(apex, f.domain(), std::move(pi_x)), FinFn(apex, g.domain(), std::move(pi_y))};
}

FinFn pullback_mediator(const FinFn& f, const FinFn& g, const PullbackResult& pb,
                        const Cone& cone) {
  if (cone.to_left.domain() != cone.apex || cone.to_right.domain() != cone.apex)
    fail("cone legs must share the cone apex");
  if (compose(cone.to_left, f) != compose(cone.to_right, g))
    fail("cone does not commute with the cospan");
  std::map<std::string, std::string> t;
  for (const auto& e : cone.apex) t[e] = pair_name(cone.to_left(e), cone.to_right(e));
  return FinFn(cone.apex, pb.apex, std::move(t));
}

std::string tagged_name(const std::string& x, std::size_t k) {
  return "(" + x + "," + std::to_string(k) + ")";
}

CoproductResult coproduct(const std::vector<FinSet>& family) {
  if (family.empty()) fail("coproduct of an empty family");
  std::vector<std::string> names;
  for (std::size_t k = 0; k < family.size(); ++k)
    for (const auto& x : family[k]) names.push_back(tagged_name(x, k));
  FinSet object(std::move(names));
  CoproductResult result{object, {}};
  for (std::size_t k = 0; k < family.size(); ++k) {
    std::map<std::string, std::string> t;
    for (const auto& x : family[k]) t[x] = tagged_name(x, k);
    result.injections.push_back(FinFn(family[k], object, std::move(t)));
  }
  return result;
}

FinRel equivalence_closure(const FinSet& carrier, const PairSet& seed) {
  // union-find over the carrier
  std::map<std::string, std::string> parent;
  for (const auto& x : carrier) parent[x] = x;
  std::function<std::string(const std::string&)> find = [&](const std::string& x) -> std::string {
    std::string r = x;
    while (parent[r] != r) r = parent[r];
    std::string c = x;
    while (parent[c] != c) {
      std::string next = parent[c];
      parent[c] = r;
      c = next;
    }
    return r;
  };
  for (const auto& [a, b] : seed) {
    if (!carrier.contains(a) || !carrier.contains(b)) fail("closure seed outside the carrier");
    parent[find(a)] = find(b);
  }
  PairSet p;
  for (const auto& a : carrier)
    for (const auto& b : carrier)
      if (find(a) == find(b)) p.emplace(a, b);
  return FinRel(carrier, carrier, std::move(p));
}

PushoutResult pushout(const FinFn& f, const FinFn& g) {
  if (f.domain() != g.domain())
    fail("pushout needs a common domain: f: " + sig(f) + " vs g: " + sig(g));
  const FinSet& b = f.codomain();
  const FinSet& c = g.codomain();
  // elements of the tagged sum keep their plain names when unambiguous, so
  // that pushout classes read like "{b1,c1}"
  auto sum_name = [&](const std::string& x, std::size_t k) {
    return (b.contains(x) && c.contains(x)) ? tagged_name(x, k) : x;
  };
  std::vector<std::string> names;
  std::map<std::string, std::string> in_b, in_c;
  for (const auto& x : b) {
    names.push_back(sum_name(x, 0));
    in_b[x] = sum_name(x, 0);
  }
  for (const auto& x : c) {
    names.push_back(sum_name(x, 1));
    in_c[x] = sum_name(x, 1);
  }
  FinSet object(std::move(names));
  FinFn i_b(b, object, std::move(in_b));
  FinFn i_c(c, object, std::move(in_c));
  PairSet seed;
  for (const auto& a : f.domain()) seed.emplace(i_b(f(a)), i_c(g(a)));
  FinRel closure = equivalence_closure(object, seed);
  Partition classes = Partition::from_equivalence(closure);
  FinFn class_map = classes.class_map();
  PushoutResult result{classes, classes.block_set(), compose(i_b, class_map),
                       compose(i_c, class_map)};
  return result;
}

FinFn pushout_mediator(const FinFn& f, const FinFn& g, const PushoutResult& po, const FinFn& q_b,
                       const FinFn& q_c) {
  if (compose(f, q_b) != compose(g, q_c)) fail("cocone does not commute with the span");
  if (q_b.codomain() != q_c.codomain()) fail("cocone legs must share a codomain");
  std::map<std::string, std::string> t;
  for (const auto& b : f.codomain()) t[po.from_left(b)] = q_b(b);
  for (const auto& c : g.codomain()) {
    const std::string& cls = po.from_right(c);
    auto it = t.find(cls);
    if (it != t.end() && it->second != q_c(c)) fail("cocone is inconsistent on a pushout class");
    t[cls] = q_c(c);
  }
  return FinFn(po.object, q_b.codomain(), std::move(t));
}

ProductResult product(const FinSet& x, const FinSet& e) {
  std::vector<std::string> names;
  std::map<std::string, std::string> pl, pr;
  for (const auto& a : x)
    for (const auto& b : e) {
      std::string n = pair_name(a, b);
      names.push_back(n);
      pl[n] = a;
      pr[n] = b;
    }
  FinSet object(std::move(names));
  return {object, FinFn(object, x, std::move(pl)), FinFn(object, e, std::move(pr))};
}

FunctionSpace function_space(const FinSet& e, const FinSet& a) {
  FunctionSpace space;
  std::vector<std::map<std::string, std::string>> tables{{}};
  for (const auto& arg : e) {
    std::vector<std::map<std::string, std::string>> next;
    for (const auto& t : tables)
      for (const auto& val : a) {
        auto t2 = t;
        t2[arg] = val;
        next.push_back(std::move(t2));
      }
    tables = std::move(next);
  }
  if (!e.empty() && a.empty()) tables.clear();  // no total functions into the empty set
  std::vector<std::string> names;
  for (auto& t : tables) {
    std::string name = "(";
    bool first = true;
    for (const auto& [arg, val] : t) {
      if (!first) name += "; ";
      name += arg + "->" + val;
      first = false;
    }
    name += ")";
    names.push_back(name);
    space.by_name.emplace(name, FinFn(e, a, std::move(t)));
  }
  space.names = FinSet(std::move(names));
  return space;
}

FinFn curry(const FinFn& k, const FinSet& x, const FinSet& e) {
  ProductResult xe = product(x, e);
  if (k.domain() != xe.object)
    fail("curry: domain of k is not the canonical product " + render_finset(xe.object));
  FunctionSpace space = function_space(e, k.codomain());
  std::map<std::string, std::string> t;
  for (const auto& a : x) {
    std::map<std::string, std::string> section;
    for (const auto& b : e) section[b] = k(pair_name(a, b));
    FinFn fn(e, k.codomain(), std::move(section));
    for (const auto& [name, candidate] : space.by_name)
      if (candidate == fn) {
        t[a] = name;
        break;
      }
  }
  return FinFn(x, space.names, std::move(t));
}

FinFn uncurry(const FinFn& c, const FinSet& x, const FinSet& e, const FinSet& a) {
  FunctionSpace space = function_space(e, a);
  if (c.domain() != x || c.codomain() != space.names)
    fail("uncurry: expected a map X -> (E -> A) on canonical carriers");
  ProductResult xe = product(x, e);
  std::map<std::string, std::string> t;
  for (const auto& ax : x) {
    const FinFn& section = space.by_name.at(c(ax));
    for (const auto& b : e) t[pair_name(ax, b)] = section(b);
  }
  return FinFn(xe.object, a, std::move(t));
}

namespace {

PairSet canonical_pullback_pairs(const FinFn& f, const FinFn& g) {
  PairSet p;
  for (const auto& x : f.domain())
    for (const auto& y : g.domain())
      if (f(x) == g(y)) p.emplace(x, y);
  return p;
}

PairSet leg_pairing_image(const Square& sq) {
  PairSet p;
  for (const auto& u : sq.apex) p.emplace(sq.leg_left(u), sq.leg_right(u));
  return p;
}

void check_square(const Square& sq) {
  if (compose(sq.leg_left, sq.f) != compose(sq.leg_right, sq.g))
    fail("square does not commute");
}

}  // namespace

bool is_weak_pullback(const Square& sq) {
  check_square(sq);
  // Every commuting cone factors through the apex iff the pairing of the
  // legs reaches every pair of the canonical pullback.
  return leg_pairing_image(sq) == canonical_pullback_pairs(sq.f, sq.g);
}

bool is_strict_pullback(const Square& sq) {
  check_square(sq);
  return leg_pairing_image(sq) == canonical_pullback_pairs(sq.f, sq.g) &&
         sq.apex.size() == canonical_pullback_pairs(sq.f, sq.g).size();
}

std::string render_set(const Subset& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& x : s) {
    if (!first) out += ", ";
    out += x;
    first = false;
  }
  return out + "}";
}

std::string render_finset(const FinSet& s) { return render_set(s.as_subset()); }

std::string render_fn(const FinFn& f) {
  std::string out;
  bool first = true;
  for (const auto& [x, y] : f.table()) {
    if (!first) out += "; ";
    out += x + "->" + y;
    first = false;
  }
  return out;
}

std::string render_rel(const FinRel& r) {
  std::string out;
  bool first = true;
  for (const auto& [a, b] : r.pairs()) {
    if (!first) out += " ";
    out += "(" + a + "," + b + ")";
    first = false;
  }
  return out;
}

std::string render_partition(const Partition& p) {
  std::string out;
  bool first = true;
  for (const auto& block : p.blocks()) {
    if (!first) out += " ";
    out += Partition::block_name(block);
    first = false;
  }
  return out;
}

}  // namespace coalg
