#include "coalg/modelio.hpp"

#include <fstream>
#include <sstream>

namespace coalg {

namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::pair<std::string, std::string> split_colon(const std::string& line, int lineno) {
  auto pos = line.find(':');
  if (pos == std::string::npos) throw LoadError("expected 'directive: ...'", lineno);
  std::string head = line.substr(0, pos);
  std::string rest = line.substr(pos + 1);
  return {head, rest};
}

ElemPair parse_edge(const std::string& tok, int lineno) {
  auto pos = tok.find("->");
  if (pos == std::string::npos) throw LoadError("expected an edge 'a->b', got '" + tok + "'", lineno);
  return {tok.substr(0, pos), tok.substr(pos + 2)};
}

Subset parse_braced(const std::string& tok, int lineno) {
  if (tok.size() < 2 || tok.front() != '{' || tok.back() != '}')
    throw LoadError("expected a braced set like {a,b}, got '" + tok + "'", lineno);
  Subset out;
  std::string body = tok.substr(1, tok.size() - 2);
  std::string cur;
  for (char c : body) {
    if (c == ',') {
      if (!cur.empty()) out.insert(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.insert(cur);
  return out;
}

std::vector<std::string> parse_tuple(const std::string& tok, int lineno) {
  if (tok.size() < 2 || tok.front() != '(' || tok.back() != ')')
    throw LoadError("expected a tuple like (w,w1,w2), got '" + tok + "'", lineno);
  std::vector<std::string> out;
  std::string body = tok.substr(1, tok.size() - 2);
  std::string cur;
  for (char c : body) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

void require_world(const FinSet& worlds, const std::string& w, int lineno) {
  if (!worlds.contains(w)) throw LoadError("unknown world '" + w + "'", lineno);
}

}  // namespace

ModelFile load_model(std::istream& in) {
  std::string raw;
  int lineno = 0;
  std::optional<ModelKind> kind;
  std::vector<std::string> state_names;
  bool states_seen = false;

  PairSet kripke_rel;
  std::map<std::string, PairSet> labeled_rel;                       // lts / pdl
  std::map<std::string, int> arity;                                 // tau
  std::map<std::string, std::set<std::vector<std::string>>> tuples; // tau
  std::map<std::string, Family> nbhd_gen;                           // nbhd
  std::map<std::string, std::map<std::string, Family>> eff_gen;     // game
  Valuation valuation;

  struct Pending {
    int line;
    std::function<void(const FinSet&)> check;
  };
  std::vector<Pending> checks;

  FinSet worlds;  // filled once states are read

  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    std::string line = raw;
    if (split_ws(line).empty()) continue;
    auto [head_raw, rest] = split_colon(line, lineno);
    std::vector<std::string> head = split_ws(head_raw);
    std::vector<std::string> toks = split_ws(rest);
    if (head.empty()) throw LoadError("empty directive", lineno);

    if (head[0] == "kind") {
      if (toks.size() != 1) throw LoadError("kind takes exactly one value", lineno);
      static const std::map<std::string, ModelKind> kinds = {
          {"kripke", ModelKind::Kripke}, {"lts", ModelKind::Lts},   {"tau", ModelKind::Tau},
          {"nbhd", ModelKind::Nbhd},     {"pdl", ModelKind::Pdl},   {"game", ModelKind::Game}};
      auto it = kinds.find(toks[0]);
      if (it == kinds.end()) throw LoadError("unknown kind '" + toks[0] + "'", lineno);
      kind = it->second;
      continue;
    }
    if (!kind) throw LoadError("the first directive must be 'kind:'", lineno);

    if (head[0] == "states") {
      if (states_seen) throw LoadError("duplicate states directive", lineno);
      states_seen = true;
      try {
        worlds = FinSet(toks);
      } catch (const std::invalid_argument& e) {
        throw LoadError(e.what(), lineno);
      }
      continue;
    }
    if (!states_seen) throw LoadError("states must be declared before " + head[0], lineno);

    if (head[0] == "rel") {
      switch (*kind) {
        case ModelKind::Kripke: {
          if (head.size() != 1) throw LoadError("kripke relations are unlabeled", lineno);
          for (const auto& tok : toks) {
            ElemPair e = parse_edge(tok, lineno);
            require_world(worlds, e.first, lineno);
            require_world(worlds, e.second, lineno);
            kripke_rel.insert(e);
          }
          break;
        }
        case ModelKind::Lts:
        case ModelKind::Pdl: {
          if (head.size() != 2) throw LoadError("expected 'rel <action>: ...'", lineno);
          for (const auto& tok : toks) {
            ElemPair e = parse_edge(tok, lineno);
            require_world(worlds, e.first, lineno);
            require_world(worlds, e.second, lineno);
            labeled_rel[head[1]].insert(e);
          }
          break;
        }
        case ModelKind::Tau: {
          if (head.size() != 2) throw LoadError("expected 'rel Op/k: ...'", lineno);
          auto slash = head[1].find('/');
          if (slash == std::string::npos) throw LoadError("expected 'Op/k'", lineno);
          std::string op = head[1].substr(0, slash);
          int k = std::stoi(head[1].substr(slash + 1));
          auto [it, fresh] = arity.emplace(op, k);
          if (!fresh && it->second != k)
            throw LoadError("operator '" + op + "' redeclared with a different arity", lineno);
          for (const auto& tok : toks) {
            std::vector<std::string> t = parse_tuple(tok, lineno);
            if (static_cast<int>(t.size()) != k + 1)
              throw LoadError("tuple arity mismatch for '" + op + "'", lineno);
            for (const auto& w : t) require_world(worlds, w, lineno);
            tuples[op].insert(t);
          }
          break;
        }
        default: throw LoadError("'rel' is not valid for this kind", lineno);
      }
      continue;
    }

    if (head[0] == "nbhd") {
      if (*kind != ModelKind::Nbhd) throw LoadError("'nbhd' is only valid for kind nbhd", lineno);
      if (head.size() != 2) throw LoadError("expected 'nbhd <world>: ...'", lineno);
      require_world(worlds, head[1], lineno);
      for (const auto& tok : toks) {
        Subset gen = parse_braced(tok, lineno);
        for (const auto& w : gen) require_world(worlds, w, lineno);
        nbhd_gen[head[1]].insert(gen);
      }
      if (toks.empty()) nbhd_gen[head[1]];  // declared with an empty family
      continue;
    }

    if (head[0] == "eff") {
      if (*kind != ModelKind::Game) throw LoadError("'eff' is only valid for kind game", lineno);
      if (head.size() != 3) throw LoadError("expected 'eff <game> <world>: ...'", lineno);
      require_world(worlds, head[2], lineno);
      for (const auto& tok : toks) {
        Subset gen = parse_braced(tok, lineno);
        for (const auto& w : gen) require_world(worlds, w, lineno);
        eff_gen[head[1]][head[2]].insert(gen);
      }
      if (toks.empty()) eff_gen[head[1]][head[2]];
      continue;
    }

    if (head[0] == "val") {
      if (head.size() != 2) throw LoadError("expected 'val <letter>: ...'", lineno);
      if (*kind == ModelKind::Lts) throw LoadError("labeled transition systems carry no valuation", lineno);
      Subset& set = valuation[head[1]];
      for (const auto& tok : toks) {
        require_world(worlds, tok, lineno);
        set.insert(tok);
      }
      continue;
    }

    throw LoadError("unknown directive '" + head[0] + "'", lineno);
  }

  if (!kind) throw LoadError("empty model file", lineno ? lineno : 1);
  if (!states_seen) throw LoadError("missing states directive", lineno);

  ModelFile out;
  out.kind = *kind;
  switch (*kind) {
    case ModelKind::Kripke: {
      KripkeModel m{worlds, FinRel(worlds, worlds, kripke_rel), valuation};
      validate(m);
      out.model = std::move(m);
      break;
    }
    case ModelKind::Lts: {
      LabeledTS m;
      m.worlds = worlds;
      std::vector<std::string> actions;
      for (const auto& [a, pairs] : labeled_rel) {
        actions.push_back(a);
        m.rel.emplace(a, FinRel(worlds, worlds, pairs));
      }
      m.actions = FinSet(actions);
      out.model = std::move(m);
      break;
    }
    case ModelKind::Tau: {
      TauModel m{worlds, arity, tuples, valuation};
      validate(m);
      out.model = std::move(m);
      break;
    }
    case ModelKind::Nbhd: {
      NeighborhoodModel m;
      m.worlds = worlds;
      m.valuation = valuation;
      for (const auto& w : worlds) {
        auto it = nbhd_gen.find(w);
        m.nbhd[w] = it == nbhd_gen.end() ? Family{} : upward_closure(worlds, it->second);
      }
      validate(m);
      out.model = std::move(m);
      break;
    }
    case ModelKind::Pdl: {
      PdlModel m;
      m.worlds = worlds;
      m.valuation = valuation;
      for (const auto& [t, pairs] : labeled_rel) m.atomic.emplace(t, FinRel(worlds, worlds, pairs));
      validate(m);
      out.model = std::move(m);
      break;
    }
    case ModelKind::Game: {
      GameModel m;
      m.worlds = worlds;
      m.valuation = valuation;
      for (const auto& [g, table] : eff_gen)
        for (const auto& w : worlds) {
          auto it = table.find(w);
          m.eff[g][w] = it == table.end() ? Family{} : upward_closure(worlds, it->second);
        }
      validate(m);
      out.model = std::move(m);
      break;
    }
  }
  return out;
}

ModelFile load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return load_model(in);
}

namespace {

std::string tokens_of(const Subset& s) {
  std::string out;
  for (const auto& x : s) out += " " + x;
  return out;
}

std::string braced(const Subset& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& x : s) {
    if (!first) out += ",";
    out += x;
    first = false;
  }
  return out + "}";
}

void save_valuation(std::ostringstream& out, const Valuation& val) {
  for (const auto& [p, set] : val) out << "val " << p << ":" << tokens_of(set) << "\n";
}

}  // namespace

std::string save_model(const ModelFile& m) {
  std::ostringstream out;
  auto states_line = [&](const FinSet& worlds) {
    out << "states:";
    for (const auto& w : worlds) out << " " << w;
    out << "\n";
  };
  switch (m.kind) {
    case ModelKind::Kripke: {
      const KripkeModel& k = m.kripke();
      out << "kind: kripke\n";
      states_line(k.worlds);
      out << "rel:";
      for (const auto& [a, b] : k.rel.pairs()) out << " " << a << "->" << b;
      out << "\n";
      save_valuation(out, k.valuation);
      break;
    }
    case ModelKind::Lts: {
      const LabeledTS& l = m.lts();
      out << "kind: lts\n";
      states_line(l.worlds);
      for (const auto& [act, rel] : l.rel) {
        out << "rel " << act << ":";
        for (const auto& [a, b] : rel.pairs()) out << " " << a << "->" << b;
        out << "\n";
      }
      break;
    }
    case ModelKind::Tau: {
      const TauModel& t = m.tau();
      out << "kind: tau\n";
      states_line(t.worlds);
      for (const auto& [op, k] : t.arity) {
        out << "rel " << op << "/" << k << ":";
        auto it = t.rel.find(op);
        if (it != t.rel.end())
          for (const auto& tup : it->second) {
            out << " (";
            for (std::size_t i = 0; i < tup.size(); ++i) {
              if (i) out << ",";
              out << tup[i];
            }
            out << ")";
          }
        out << "\n";
      }
      save_valuation(out, t.valuation);
      break;
    }
    case ModelKind::Nbhd: {
      const NeighborhoodModel& n = m.nbhd();
      out << "kind: nbhd\n";
      states_line(n.worlds);
      for (const auto& [w, fam] : n.nbhd) {
        out << "nbhd " << w << ":";
        for (const auto& s : fam) out << " " << braced(s);
        out << "\n";
      }
      save_valuation(out, n.valuation);
      break;
    }
    case ModelKind::Pdl: {
      const PdlModel& p = m.pdl();
      out << "kind: pdl\n";
      states_line(p.worlds);
      for (const auto& [t, rel] : p.atomic) {
        out << "rel " << t << ":";
        for (const auto& [a, b] : rel.pairs()) out << " " << a << "->" << b;
        out << "\n";
      }
      save_valuation(out, p.valuation);
      break;
    }
    case ModelKind::Game: {
      const GameModel& g = m.game();
      out << "kind: game\n";
      states_line(g.worlds);
      for (const auto& [game, table] : g.eff)
        for (const auto& [w, fam] : table) {
          out << "eff " << game << " " << w << ":";
          for (const auto& s : fam) out << " " << braced(s);
          out << "\n";
        }
      save_valuation(out, g.valuation);
      break;
    }
  }
  return out.str();
}

}  // namespace coalg
