#include "coalg/monads.hpp"

#include <algorithm>

namespace coalg {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

void check_subset_of(const FinSet& carrier, const Subset& s, const std::string& what) {
  for (const auto& x : s)
    if (!carrier.contains(x)) fail(what + " mentions '" + x + "' outside " + render_finset(carrier));
}

}  // namespace

std::string render_family(const Family& fam) {
  std::string out = "{";
  bool first = true;
  for (const auto& s : fam) {
    if (!first) out += ", ";
    out += render_set(s);
    first = false;
  }
  return out + "}";
}

std::string render_dist(const FinDist& d) {
  if (d.weights.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [x, w] : d.weights) {
    if (!first) out += " + ";
    out += render_rat(w) + "*" + x;
    first = false;
  }
  return out;
}

std::string render_seq(const std::vector<std::string>& w) {
  std::string out = "[";
  bool first = true;
  for (const auto& x : w) {
    if (!first) out += ",";
    out += x;
    first = false;
  }
  return out + "]";
}

std::vector<Subset> all_subsets(const FinSet& carrier) {
  if (carrier.size() > 16) throw CapExceeded("2^" + std::to_string(carrier.size()) + " subsets");
  std::vector<Subset> out{Subset{}};
  for (const auto& x : carrier) {
    std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) {
      Subset s = out[i];
      s.insert(x);
      out.push_back(std::move(s));
    }
  }
  return out;
}

bool is_upper_closed(const FinSet& carrier, const Family& fam) {
  for (const auto& a : fam)
    for (const auto& b : all_subsets(carrier))
      if (std::includes(b.begin(), b.end(), a.begin(), a.end()) && !fam.count(b)) return false;
  return true;
}

Family upward_closure(const FinSet& carrier, const Family& generators) {
  Family out;
  for (const auto& b : all_subsets(carrier))
    for (const auto& a : generators)
      if (std::includes(b.begin(), b.end(), a.begin(), a.end())) {
        out.insert(b);
        break;
      }
  return out;
}

// --- powerset ---------------------------------------------------------------

std::vector<Subset> PowersetMonad::enumerate(const FinSet& x) { return all_subsets(x); }

Subset PowersetMonad::unit(const FinSet& x, const std::string& v) {
  if (!x.contains(v)) fail("unit argument '" + v + "' outside the carrier");
  return Subset{v};
}

Subset PowersetMonad::extend(const FinSet& x, const FinSet& y,
                             const std::map<std::string, Subset>& f, const Subset& v) {
  (void)x;
  Subset out;
  for (const auto& s : v) {
    auto it = f.find(s);
    if (it == f.end()) fail("extend: no value for '" + s + "'");
    check_subset_of(y, it->second, "f(" + s + ")");
    out.insert(it->second.begin(), it->second.end());
  }
  return out;
}

Subset PowersetMonad::map_concrete(const FinFn& f, const Subset& v) { return f.image_of(v); }

void PowersetMonad::validate(const FinSet& x, const Subset& v) {
  check_subset_of(x, v, "subset");
}

Subset PowersetMonad::random_elem(const FinSet& x, Rng& rng) {
  Subset s;
  for (const auto& e : x)
    if (next_below(rng, 2)) s.insert(e);
  return s;
}

Subset pow_mu(const std::set<Subset>& beta) {
  Subset out;
  for (const auto& b : beta) out.insert(b.begin(), b.end());
  return out;
}

// --- upper closed families ----------------------------------------------------

std::vector<Family> UpperClosedMonad::enumerate(const FinSet& x) {
  if (x.size() > 4) throw CapExceeded("upper-closed enumeration beyond carrier size 4");
  std::vector<Subset> subs = all_subsets(x);
  std::vector<Family> out;
  // all families, filtered for upward closure
  std::size_t n = subs.size();
  for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
    Family fam;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t(1) << i)) fam.insert(subs[i]);
    bool ok = true;
    for (const auto& a : fam) {
      for (std::size_t i = 0; i < n && ok; ++i)
        if (std::includes(subs[i].begin(), subs[i].end(), a.begin(), a.end()) &&
            !fam.count(subs[i]))
          ok = false;
      if (!ok) break;
    }
    if (ok) out.push_back(std::move(fam));
  }
  return out;
}

Family UpperClosedMonad::unit(const FinSet& x, const std::string& v) {
  if (!x.contains(v)) fail("unit argument '" + v + "' outside the carrier");
  Family fam;
  for (const auto& s : all_subsets(x))
    if (s.count(v)) fam.insert(s);
  return fam;
}

Family UpperClosedMonad::extend(const FinSet& x, const FinSet& y,
                                const std::map<std::string, Family>& f, const Family& v) {
  Family out;
  for (const auto& b : all_subsets(y)) {
    Subset hits;
    for (const auto& s : x) {
      auto it = f.find(s);
      if (it == f.end()) fail("extend: no value for '" + s + "'");
      if (it->second.count(b)) hits.insert(s);
    }
    if (v.count(hits)) out.insert(b);
  }
  return out;
}

Family UpperClosedMonad::map_concrete(const FinFn& f, const Family& v) {
  Family out;
  for (const auto& w : all_subsets(f.codomain()))
    if (v.count(f.preimage_of(w))) out.insert(w);
  return out;
}

void UpperClosedMonad::validate(const FinSet& x, const Family& v) {
  for (const auto& s : v) check_subset_of(x, s, "family member");
  if (!is_upper_closed(x, v)) fail("family is not upward closed");
}

Family UpperClosedMonad::random_elem(const FinSet& x, Rng& rng) {
  Family gen;
  for (const auto& s : all_subsets(x))
    if (next_below(rng, 4) == 0) gen.insert(s);
  return upward_closure(x, gen);
}

// --- ultrafilters -------------------------------------------------------------

std::vector<Family> UltrafilterMonad::enumerate(const FinSet& x) {
  // on a finite carrier every ultrafilter is principal
  std::vector<Family> out;
  for (const auto& v : x) out.push_back(unit(x, v));
  return out;
}

Family UltrafilterMonad::unit(const FinSet& x, const std::string& v) {
  return UpperClosedMonad::unit(x, v);
}

Family UltrafilterMonad::extend(const FinSet& x, const FinSet& y,
                                const std::map<std::string, Family>& f, const Family& v) {
  return UpperClosedMonad::extend(x, y, f, v);
}

Family UltrafilterMonad::map_concrete(const FinFn& f, const Family& v) {
  return UpperClosedMonad::map_concrete(f, v);
}

void UltrafilterMonad::validate(const FinSet& x, const Family& v) {
  for (const auto& s : v) check_subset_of(x, s, "ultrafilter member");
  if (v.count(Subset{})) fail("ultrafilter contains the empty set");
  if (!is_upper_closed(x, v)) fail("ultrafilter is not upward closed");
  for (const auto& a : v)
    for (const auto& b : v) {
      Subset meet;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                            std::inserter(meet, meet.begin()));
      if (!v.count(meet)) fail("ultrafilter is not closed under intersection");
    }
  for (const auto& a : all_subsets(x)) {
    Subset comp;
    for (const auto& e : x)
      if (!a.count(e)) comp.insert(e);
    if (v.count(a) == v.count(comp)) fail("ultrafilter misses maximality at " + render_set(a));
  }
}

Family UltrafilterMonad::random_elem(const FinSet& x, Rng& rng) {
  if (x.empty()) fail("no ultrafilter over the empty carrier");
  return unit(x, x.elements()[next_below(rng, x.size())]);
}

std::string UltrafilterMonad::principal_point(const FinSet& x, const Family& v) {
  Subset core = x.as_subset();
  for (const auto& a : v) {
    Subset meet;
    std::set_intersection(core.begin(), core.end(), a.begin(), a.end(),
                          std::inserter(meet, meet.begin()));
    core = std::move(meet);
  }
  if (core.size() != 1) fail("ultrafilter is not principal");
  return *core.begin();
}

// --- discrete distributions -----------------------------------------------------

std::vector<FinDist> DistMonad::enumerate(const FinSet&) {
  throw CapExceeded("the distribution carrier is not finitely enumerable; use sampling");
}

FinDist DistMonad::unit(const FinSet& x, const std::string& v) {
  if (!x.contains(v)) fail("unit argument '" + v + "' outside the carrier");
  FinDist d;
  d.weights[v] = Rat(1);
  return d;
}

FinDist DistMonad::extend(const FinSet& x, const FinSet& y,
                          const std::map<std::string, FinDist>& f, const FinDist& p) {
  (void)x;
  (void)y;
  FinDist out;
  for (const auto& [t, pt] : p.weights) {
    auto it = f.find(t);
    if (it == f.end()) fail("extend: no value for '" + t + "'");
    for (const auto& [s, w] : it->second.weights) {
      Rat acc = out.at(s) + w * pt;
      if (acc != Rat(0)) out.weights[s] = acc;
    }
  }
  return out;
}

FinDist DistMonad::map_concrete(const FinFn& f, const FinDist& p) {
  FinDist out;
  for (const auto& [x, w] : p.weights) {
    Rat acc = out.at(f(x)) + w;
    out.weights[f(x)] = acc;
  }
  return out;
}

void DistMonad::validate(const FinSet& x, const FinDist& p) {
  for (const auto& [e, w] : p.weights) {
    if (!x.contains(e)) fail("distribution mentions '" + e + "' outside the carrier");
    if (w <= Rat(0)) fail("distribution stores a non-positive weight at '" + e + "'");
  }
  if (p.total() != Rat(1)) fail("distribution weights sum to " + render_rat(p.total()));
}

FinDist DistMonad::random_elem(const FinSet& x, Rng& rng) { return random_dist(x, rng); }

FinDist random_dist(const FinSet& carrier, Rng& rng, int denom_bound) {
  if (carrier.empty()) fail("no distribution over the empty carrier");
  long long d = 1 + static_cast<long long>(next_below(rng, denom_bound));
  std::map<std::string, long long> units;
  for (long long i = 0; i < d; ++i)
    ++units[carrier.elements()[next_below(rng, carrier.size())]];
  FinDist out;
  for (const auto& [e, n] : units) out.weights[e] = Rat(n, d);
  return out;
}

// --- sequences ------------------------------------------------------------------

std::vector<SeqMonad::Elem> SeqMonad::enumerate(const FinSet& x) {
  std::vector<Elem> out{{}};
  std::size_t first = 0;
  for (std::size_t len = 1; len <= kEnumLengthCap; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = first; i < end; ++i)
      for (const auto& e : x) {
        Elem w = out[i];
        w.push_back(e);
        out.push_back(std::move(w));
      }
    first = end;
    if (out.size() > 100000) throw CapExceeded("sequence enumeration too large");
  }
  return out;
}

SeqMonad::Elem SeqMonad::unit(const FinSet& x, const std::string& v) {
  if (!x.contains(v)) fail("unit argument '" + v + "' outside the carrier");
  return {v};
}

SeqMonad::Elem SeqMonad::extend(const FinSet& x, const FinSet& y,
                                const std::map<std::string, Elem>& f, const Elem& v) {
  (void)x;
  (void)y;
  Elem out;
  for (const auto& s : v) {
    auto it = f.find(s);
    if (it == f.end()) fail("extend: no value for '" + s + "'");
    out.insert(out.end(), it->second.begin(), it->second.end());
  }
  return out;
}

SeqMonad::Elem SeqMonad::map_concrete(const FinFn& f, const Elem& v) {
  Elem out;
  for (const auto& s : v) out.push_back(f(s));
  return out;
}

void SeqMonad::validate(const FinSet& x, const Elem& v) {
  for (const auto& s : v)
    if (!x.contains(s)) fail("sequence mentions '" + s + "' outside the carrier");
}

SeqMonad::Elem SeqMonad::random_elem(const FinSet& x, Rng& rng) {
  Elem out;
  if (x.empty()) return out;
  std::size_t len = next_below(rng, kEnumLengthCap + 1);
  for (std::size_t i = 0; i < len; ++i)
    out.push_back(x.elements()[next_below(rng, x.size())]);
  return out;
}

// --- caps ------------------------------------------------------------------------

template <>
KleisliCaps default_caps<PowersetMonad>() { return {3, 1 << 16}; }
template <>
KleisliCaps default_caps<UpperClosedMonad>() { return {3, 1 << 16}; }
template <>
KleisliCaps default_caps<UltrafilterMonad>() { return {4, 1 << 16}; }
template <>
KleisliCaps default_caps<DistMonad>() { return {0, 0}; }
template <>
KleisliCaps default_caps<SeqMonad>() { return {0, 0}; }

// --- harness helpers ----------------------------------------------------------------

namespace {

/// Odometer over tables dom -> [0, base): digits in domain order.
struct Odometer {
  std::vector<int> digits;
  int base;
  bool done = false;
  Odometer(std::size_t len, int base_) : digits(len, 0), base(base_) {
    if (base_ <= 0 && len > 0) done = true;
  }
  void advance() {
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (++digits[i] < base) return;
      digits[i] = 0;
    }
    done = true;
  }
  std::size_t count() const {
    if (done) return 0;
    std::size_t c = 1;
    for (std::size_t i = 0; i < digits.size(); ++i) c *= static_cast<std::size_t>(base);
    return c;
  }
};

template <typename M>
std::map<std::string, typename M::Elem> table_from_digits(const FinSet& dom,
                                                          const Enumerated<M>& cod,
                                                          const std::vector<int>& digits) {
  std::map<std::string, typename M::Elem> t;
  std::size_t i = 0;
  for (const auto& x : dom) t.emplace(x, cod.by_pos[digits[i++]]);
  return t;
}

template <typename M>
std::string describe_table(const FinSet& dom, const std::map<std::string, typename M::Elem>& f) {
  std::string out;
  bool first = true;
  for (const auto& x : dom) {
    if (!first) out += "; ";
    out += x + "->" + M::render(f.at(x));
    first = false;
  }
  return out;
}

/// star tables for every table dom -> T(cod): entry [ti][vi] is the index in
/// T(cod) of extend(table_ti)(TX[vi]).
template <typename M>
std::vector<std::vector<int>> all_star_tables(const FinSet& dom, const Enumerated<M>& tdom,
                                              const FinSet& cod, const Enumerated<M>& tcod) {
  std::vector<std::vector<int>> stars;
  Odometer od(dom.size(), static_cast<int>(tcod.by_pos.size()));
  if (dom.size() == 0) {
    // single empty table
    std::map<std::string, typename M::Elem> f;
    std::vector<int> star;
    for (const auto& v : tdom.by_pos) star.push_back(tcod.index.at(M::extend(dom, cod, f, v)));
    stars.push_back(std::move(star));
    return stars;
  }
  while (!od.done) {
    auto f = table_from_digits<M>(dom, tcod, od.digits);
    std::vector<int> star;
    star.reserve(tdom.by_pos.size());
    for (const auto& v : tdom.by_pos) star.push_back(tcod.index.at(M::extend(dom, cod, f, v)));
    stars.push_back(std::move(star));
    od.advance();
  }
  return stars;
}

std::size_t pow_size(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > (std::size_t(1) << 40) / base) throw CapExceeded("table space too large");
    r *= base;
  }
  return r;
}

}  // namespace

// --- exhaustive Kleisli laws -----------------------------------------------------------

template <typename M>
LawReport check_kleisli_laws_exhaustive(const FinSet& x, const FinSet& y, const FinSet& z) {
  KleisliCaps caps = default_caps<M>();
  if (caps.max_carrier == 0)
    throw CapExceeded(M::name() + " has no exhaustive mode; use sampling");
  for (const FinSet* s : {&x, &y, &z})
    if (s->size() > caps.max_carrier)
      throw CapExceeded(M::name() + " exhaustive check capped at carrier size " +
                        std::to_string(caps.max_carrier));

  Enumerated<M> tx = enumerate_named<M>(x);
  Enumerated<M> ty = enumerate_named<M>(y);
  Enumerated<M> tz = enumerate_named<M>(z);
  if (pow_size(ty.by_pos.size(), x.size()) > caps.max_table_space ||
      pow_size(tz.by_pos.size(), y.size()) > caps.max_table_space)
    throw CapExceeded("function space exceeds the exhaustive cap");

  LawReport report;

  // law 1: eta^* = id
  {
    LawCheck c{"law1", true, ""};
    std::map<std::string, typename M::Elem> eta;
    for (const auto& e : x) eta.emplace(e, M::unit(x, e));
    for (const auto& v : tx.by_pos) {
      auto lhs = M::extend(x, x, eta, v);
      if (!(lhs == v)) {
        c.pass = false;
        c.witness = "eta*(" + M::render(v) + ") = " + M::render(lhs);
        break;
      }
    }
    report.checks.push_back(std::move(c));
  }

  // law 2: f^* . eta = f, for every f: X -> T Y
  {
    LawCheck c{"law2", true, ""};
    Odometer od(x.size(), static_cast<int>(ty.by_pos.size()));
    bool found = false;
    while (!od.done && !found) {
      auto f = table_from_digits<M>(x, ty, od.digits);
      for (const auto& e : x) {
        auto lhs = M::extend(x, y, f, M::unit(x, e));
        if (!(lhs == f.at(e))) {
          c.pass = false;
          c.witness = "f = [" + describe_table<M>(x, f) + "], f*(eta(" + e + ")) = " +
                      M::render(lhs);
          found = true;
          break;
        }
      }
      if (x.empty()) break;
      od.advance();
    }
    report.checks.push_back(std::move(c));
  }

  // law 3: g^* . f^* = (g^* . f)^*, for all pairs
  {
    LawCheck c{"law3", true, ""};
    auto fstars = all_star_tables<M>(x, tx, y, ty);
    auto gstars = all_star_tables<M>(y, ty, z, tz);
    auto hstars = all_star_tables<M>(x, tx, z, tz);
    std::size_t tz_size = tz.by_pos.size();

    auto digit_lists = [](std::size_t len, std::size_t base, std::size_t expected) {
      std::vector<std::vector<int>> out;
      Odometer od(len, static_cast<int>(base));
      while (!od.done && out.size() < expected) {
        out.push_back(od.digits);
        if (len == 0) break;
        od.advance();
      }
      return out;
    };
    auto fdigits = digit_lists(x.size(), ty.by_pos.size(), fstars.size());
    auto gdigits = digit_lists(y.size(), tz_size, gstars.size());

    bool found = false;
    for (std::size_t gi = 0; gi < gstars.size() && !found; ++gi) {
      const auto& gstar = gstars[gi];
      for (std::size_t fi = 0; fi < fstars.size() && !found; ++fi) {
        // h = g^* . f as a table X -> T Z, encoded base |T Z|
        std::size_t hi = 0, mult = 1;
        for (std::size_t j = 0; j < x.size(); ++j) {
          hi += static_cast<std::size_t>(gstar[fdigits[fi][j]]) * mult;
          mult *= tz_size;
        }
        const auto& fstar = fstars[fi];
        const auto& hstar = hstars[hi];
        for (std::size_t vi = 0; vi < tx.by_pos.size(); ++vi)
          if (gstar[fstar[vi]] != hstar[vi]) {
            c.pass = false;
            auto f = table_from_digits<M>(x, ty, fdigits[fi]);
            auto g = table_from_digits<M>(y, tz, gdigits[gi]);
            c.witness = "f = [" + describe_table<M>(x, f) + "], g = [" +
                        describe_table<M>(y, g) + "], at " + M::render(tx.by_pos[vi]);
            found = true;
            break;
          }
      }
    }
    report.checks.push_back(std::move(c));
  }

  return report;
}

// --- sampled Kleisli laws -----------------------------------------------------------

namespace {

template <typename M>
std::map<std::string, typename M::Elem> random_table(const FinSet& dom, const FinSet& cod,
                                                     Rng& rng) {
  std::map<std::string, typename M::Elem> t;
  for (const auto& e : dom) t.emplace(e, M::random_elem(cod, rng));
  return t;
}

}  // namespace

template <typename M>
LawReport check_kleisli_laws_sampled(const FinSet& x, const FinSet& y, const FinSet& z,
                                     int samples, unsigned long long seed) {
  Rng rng(seed);
  LawReport report;
  LawCheck c1{"law1", true, ""}, c2{"law2", true, ""}, c3{"law3", true, ""};
  std::map<std::string, typename M::Elem> eta;
  for (const auto& e : x) eta.emplace(e, M::unit(x, e));
  for (int i = 0; i < samples; ++i) {
    auto v = M::random_elem(x, rng);
    auto f = random_table<M>(x, y, rng);
    auto g = random_table<M>(y, z, rng);
    if (c1.pass) {
      auto lhs = M::extend(x, x, eta, v);
      if (!(lhs == v)) {
        c1.pass = false;
        c1.witness = "eta*(" + M::render(v) + ") = " + M::render(lhs);
      }
    }
    if (c2.pass && !x.empty()) {
      const std::string& e = x.elements()[next_below(rng, x.size())];
      auto lhs = M::extend(x, y, f, M::unit(x, e));
      if (!(lhs == f.at(e))) {
        c2.pass = false;
        c2.witness = "f = [" + describe_table<M>(x, f) + "] at eta(" + e + ")";
      }
    }
    if (c3.pass) {
      auto fv = M::extend(x, y, f, v);
      auto lhs = M::extend(y, z, g, fv);
      std::map<std::string, typename M::Elem> h;
      for (const auto& e : x) h.emplace(e, M::extend(y, z, g, f.at(e)));
      auto rhs = M::extend(x, z, h, v);
      if (!(lhs == rhs)) {
        c3.pass = false;
        c3.witness = "f = [" + describe_table<M>(x, f) + "], g = [" + describe_table<M>(y, g) +
                     "], at " + M::render(v);
      }
    }
  }
  report.checks = {c1, c2, c3};
  return report;
}

// --- Manes round trip -----------------------------------------------------------------

namespace {

/// mu evaluated through an explicitly named finite sub-carrier of T Y.
template <typename M>
typename M::Elem mu_via(const FinSet& names, const std::map<std::string, typename M::Elem>& table,
                        const FinSet& y, const typename M::Elem& v) {
  return M::extend(names, y, table, v);
}

template <typename M>
bool manes_plus_matches(const FinSet& x, const FinSet& y,
                        const std::map<std::string, typename M::Elem>& f,
                        const typename M::Elem& v, std::string& witness) {
  // name the image of f, so that T f and mu can be computed on a finite carrier
  std::map<std::string, typename M::Elem> named;
  std::map<std::string, std::string> fhat_table;
  for (const auto& [e, fv] : f) {
    std::string n = M::render(fv);
    named.emplace(n, fv);
    fhat_table.emplace(e, n);
  }
  std::vector<std::string> names;
  for (const auto& [n, fv] : named) names.push_back(n);
  FinSet carrier(std::move(names));
  FinFn fhat(x, carrier, std::move(fhat_table));
  auto tf_v = derived_map<M>(fhat, v);            // T f (v) in T(carrier)
  auto lhs = mu_via<M>(carrier, named, y, tf_v);  // mu(T f (v))
  auto rhs = M::extend(x, y, f, v);
  if (lhs == rhs) return true;
  witness = "f = [" + describe_table<M>(x, f) + "], at " + M::render(v) + ": mu(Tf(v)) = " +
            M::render(lhs) + " but f*(v) = " + M::render(rhs);
  return false;
}

template <typename M>
bool functor_action_matches(const FinFn& f, const typename M::Elem& v, std::string& witness) {
  auto derived = derived_map<M>(f, v);
  auto concrete = M::map_concrete(f, v);
  if (derived == concrete) return true;
  witness = "map " + render_fn(f) + " at " + M::render(v) + ": derived " + M::render(derived) +
            " vs concrete " + M::render(concrete);
  return false;
}

}  // namespace

template <typename M>
LawReport manes_roundtrip(const FinSet& x, const FinSet& y, int samples,
                          unsigned long long seed, bool exhaustive) {
  LawReport report;
  LawCheck plus{"plus", true, ""};      // f+ = mu . T f  equals  f*
  LawCheck functor{"functor", true, ""};  // (eta . f)^* equals the concrete T f

  if (exhaustive) {
    Enumerated<M> tx = enumerate_named<M>(x);
    Enumerated<M> ty = enumerate_named<M>(y);
    Odometer od(x.size(), static_cast<int>(ty.by_pos.size()));
    while (!od.done && plus.pass) {
      auto f = table_from_digits<M>(x, ty, od.digits);
      for (const auto& v : tx.by_pos)
        if (!manes_plus_matches<M>(x, y, f, v, plus.witness)) {
          plus.pass = false;
          break;
        }
      if (x.empty()) break;
      od.advance();
    }
    // all plain maps f: X -> Y
    FunctionSpace maps = function_space(x, y);
    for (const auto& [n, f] : maps.by_name) {
      if (!functor.pass) break;
      for (const auto& v : tx.by_pos)
        if (!functor_action_matches<M>(f, v, functor.witness)) {
          functor.pass = false;
          break;
        }
    }
  } else {
    Rng rng(seed);
    for (int i = 0; i < samples && (plus.pass || functor.pass); ++i) {
      auto v = M::random_elem(x, rng);
      auto f = random_table<M>(x, y, rng);
      if (plus.pass && !manes_plus_matches<M>(x, y, f, v, plus.witness)) plus.pass = false;
      if (functor.pass && !y.empty()) {
        std::map<std::string, std::string> t;
        for (const auto& e : x) t[e] = y.elements()[next_below(rng, y.size())];
        FinFn fn(x, y, std::move(t));
        if (!functor_action_matches<M>(fn, v, functor.witness)) functor.pass = false;
      }
    }
  }
  report.checks = {plus, functor};
  return report;
}

// --- monad diagrams ----------------------------------------------------------------------

namespace {

template <typename M>
struct NamedBag {
  FinSet names;
  std::map<std::string, typename M::Elem> table;
};

template <typename M>
NamedBag<M> bag_of(const std::vector<typename M::Elem>& elems) {
  NamedBag<M> bag;
  std::map<std::string, typename M::Elem> table;
  for (const auto& e : elems) table.emplace(M::render(e), e);
  std::vector<std::string> names;
  for (const auto& [n, e] : table) names.push_back(n);
  bag.names = FinSet(std::move(names));
  bag.table = std::move(table);
  return bag;
}

}  // namespace

template <typename M>
LawReport check_monad_diagrams(const FinSet& x, int samples, unsigned long long seed) {
  Rng rng(seed);
  LawReport report;
  LawCheck unit_l{"unitL", true, ""};  // mu . eta_{T X} = id
  LawCheck unit_r{"unitR", true, ""};  // mu . T eta = id
  LawCheck assoc{"assoc", true, ""};   // mu . mu_{T X} = mu . T mu

  // level-1 elements: enumerate when possible, sample otherwise
  std::vector<typename M::Elem> level1;
  bool sampled = false;
  try {
    Enumerated<M> tx = enumerate_named<M>(x);
    level1 = tx.by_pos;
    if (level1.size() > 300) {
      level1.resize(300);
      sampled = true;
    }
  } catch (const CapExceeded&) {
    sampled = true;
    for (int i = 0; i < samples; ++i) level1.push_back(M::random_elem(x, rng));
  }
  NamedBag<M> n1 = bag_of<M>(level1);

  // unit laws on every level-1 element
  for (const auto& v : level1) {
    std::string n = M::render(v);
    auto eta_tv = M::unit(n1.names, n);
    auto lhs = mu_via<M>(n1.names, n1.table, x, eta_tv);
    if (!(lhs == v)) {
      unit_l.pass = false;
      unit_l.witness = "mu(eta_T(" + n + ")) = " + M::render(lhs);
      break;
    }
  }
  {
    std::map<std::string, std::string> etahat;
    for (const auto& e : x) etahat[e] = M::render(M::unit(x, e));
    // eta images are level-1 values; make sure they are present in the bag
    NamedBag<M> units = n1;
    for (const auto& e : x) units.table.emplace(M::render(M::unit(x, e)), M::unit(x, e));
    std::vector<std::string> all_names;
    for (const auto& [n, e] : units.table) all_names.push_back(n);
    units.names = FinSet(std::move(all_names));
    FinFn etafn(x, units.names, std::move(etahat));
    for (const auto& v : level1) {
      auto tv = derived_map<M>(etafn, v);
      auto lhs = mu_via<M>(units.names, units.table, x, tv);
      if (!(lhs == v)) {
        unit_r.pass = false;
        unit_r.witness = "mu(T eta(" + M::render(v) + ")) = " + M::render(lhs);
        break;
      }
    }
  }

  // level-2 and level-3 elements for associativity; when the full towers
  // are not enumerable, fall back to a small sampled bag of level-2 values
  // so that level-3 elements stay representable
  std::vector<typename M::Elem> level2;
  std::vector<typename M::Elem> level3;
  bool full_tower = false;
  if (!sampled) {
    try {
      Enumerated<M> t2 = enumerate_named<M>(n1.names);
      if (t2.by_pos.size() <= 300) {
        Enumerated<M> t3 = enumerate_named<M>(t2.names);
        if (t3.by_pos.size() <= 100000) {
          level2 = t2.by_pos;
          level3 = t3.by_pos;
          full_tower = true;
        }
      }
    } catch (const CapExceeded&) {
    }
  }
  if (!full_tower) {
    std::map<std::string, typename M::Elem> few;
    for (int i = 0; i < samples && few.size() < 8; ++i) {
      auto e = M::random_elem(n1.names, rng);
      few.emplace(M::render(e), e);
    }
    for (const auto& [n, e] : few) level2.push_back(e);
  }
  NamedBag<M> n2 = bag_of<M>(level2);
  if (!full_tower)
    for (int i = 0; i < samples; ++i) level3.push_back(M::random_elem(n2.names, rng));

  // mu_X restricted to named level-1 values; muhat: N2 -> N1'
  std::map<std::string, typename M::Elem> mu_of_n2;
  std::map<std::string, std::string> muhat_table;
  for (const auto& [n2name, u] : n2.table) {
    auto m = mu_via<M>(n1.names, n1.table, x, u);
    mu_of_n2.emplace(n2name, m);
    muhat_table.emplace(n2name, M::render(m));
  }
  // extended level-1 bag: original level-1 values plus any mu images
  NamedBag<M> n1x = n1;
  for (const auto& [n2name, m] : mu_of_n2) n1x.table.emplace(M::render(m), m);
  {
    std::vector<std::string> all_names;
    for (const auto& [n, e] : n1x.table) all_names.push_back(n);
    n1x.names = FinSet(std::move(all_names));
  }
  FinFn muhat(n2.names, n1x.names, std::move(muhat_table));

  for (const auto& w : level3) {
    // lhs: mu_X ( mu_{T X} (w) ), where mu_{T X} flattens T(N2) -> T(N1)
    auto mid = mu_via<M>(n2.names, n2.table, n1.names, w);
    auto lhs = mu_via<M>(n1.names, n1.table, x, mid);
    // rhs: mu_X ( T muhat (w) )
    auto tw = derived_map<M>(muhat, w);
    auto rhs = mu_via<M>(n1x.names, n1x.table, x, tw);
    if (!(lhs == rhs)) {
      assoc.pass = false;
      assoc.witness = "at " + M::render(w) + ": " + M::render(lhs) + " vs " + M::render(rhs);
      break;
    }
  }

  report.checks = {unit_l, unit_r, assoc};
  return report;
}

// --- harness self test ----------------------------------------------------------------------

LawReport check_corrupted_powerset_laws(const FinSet& x) {
  // a deliberately wrong extension: drops the least element of the union
  auto bad_extend = [](const std::map<std::string, Subset>& f, const Subset& v) {
    Subset out;
    for (const auto& s : v) {
      const Subset& fs = f.at(s);
      out.insert(fs.begin(), fs.end());
    }
    if (!out.empty()) out.erase(out.begin());
    return out;
  };
  LawReport report;
  LawCheck c{"law1", true, ""};
  std::map<std::string, Subset> eta;
  for (const auto& e : x) eta.emplace(e, Subset{e});
  for (const auto& v : all_subsets(x)) {
    Subset lhs = bad_extend(eta, v);
    if (lhs != v) {
      c.pass = false;
      c.witness = "eta*(" + render_set(v) + ") = " + render_set(lhs);
      break;
    }
  }
  report.checks.push_back(std::move(c));
  return report;
}

// --- explicit instantiations ------------------------------------------------------------------

template LawReport check_kleisli_laws_exhaustive<PowersetMonad>(const FinSet&, const FinSet&, const FinSet&);
template LawReport check_kleisli_laws_exhaustive<UpperClosedMonad>(const FinSet&, const FinSet&, const FinSet&);
template LawReport check_kleisli_laws_exhaustive<UltrafilterMonad>(const FinSet&, const FinSet&, const FinSet&);
template LawReport check_kleisli_laws_exhaustive<DistMonad>(const FinSet&, const FinSet&, const FinSet&);
template LawReport check_kleisli_laws_exhaustive<SeqMonad>(const FinSet&, const FinSet&, const FinSet&);
template LawReport check_kleisli_laws_sampled<DistMonad>(const FinSet&, const FinSet&, const FinSet&, int, unsigned long long);
template LawReport check_kleisli_laws_sampled<SeqMonad>(const FinSet&, const FinSet&, const FinSet&, int, unsigned long long);
template LawReport manes_roundtrip<PowersetMonad>(const FinSet&, const FinSet&, int, unsigned long long, bool);
template LawReport manes_roundtrip<UpperClosedMonad>(const FinSet&, const FinSet&, int, unsigned long long, bool);
template LawReport manes_roundtrip<UltrafilterMonad>(const FinSet&, const FinSet&, int, unsigned long long, bool);
template LawReport manes_roundtrip<DistMonad>(const FinSet&, const FinSet&, int, unsigned long long, bool);
template LawReport manes_roundtrip<SeqMonad>(const FinSet&, const FinSet&, int, unsigned long long, bool);
template LawReport check_monad_diagrams<PowersetMonad>(const FinSet&, int, unsigned long long);
template LawReport check_monad_diagrams<UpperClosedMonad>(const FinSet&, int, unsigned long long);
template LawReport check_monad_diagrams<UltrafilterMonad>(const FinSet&, int, unsigned long long);
template LawReport check_monad_diagrams<DistMonad>(const FinSet&, int, unsigned long long);
template LawReport check_monad_diagrams<SeqMonad>(const FinSet&, int, unsigned long long);

}  // namespace coalg
