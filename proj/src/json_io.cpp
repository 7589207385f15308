#include "contlog/json_io.hpp"

namespace contlog {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string string_of(const Json& j, const char* what) {
  if (!j.is_string()) throw Error(std::string(what) + " must be a string");
  return j.get<std::string>();
}

const Json& array_of(const Json& j, const char* what) {
  if (!j.is_array()) throw Error(std::string(what) + " must be an array");
  return j;
}

// Flattens a table nested `depth` levels deep, each level of length n.
template <class T, class Leaf>
void flatten(const Json& j, std::size_t depth, std::size_t n, std::vector<T>& out, Leaf leaf) {
  if (depth == 0) {
    out.push_back(leaf(j));
    return;
  }
  if (!j.is_array() || j.size() != n) throw Error("table has the wrong shape");
  for (const auto& e : j) flatten(e, depth - 1, n, out, leaf);
}

std::vector<SymbolSpec> symbols_from_json(const Json& j) {
  std::vector<SymbolSpec> out;
  for (const auto& s : array_of(j, "symbol list")) {
    SymbolSpec spec;
    spec.name = string_of(field(s, "name"), "symbol name");
    const Json& arity = field(s, "arity");
    if (!arity.is_number_unsigned()) throw Error("arity must be a non-negative integer");
    spec.arity = arity.get<std::size_t>();
    if (s.contains("lipschitz")) {
      for (const auto& l : array_of(s.at("lipschitz"), "lipschitz")) spec.lipschitz.push_back(rational_from_json(l));
    } else {
      spec.lipschitz.assign(spec.arity, Rational(1));
    }
    out.push_back(std::move(spec));
  }
  return out;
}

}  // namespace

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw Error("rationals must be written \"p/q\"");
}

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const Assignment& v) {
  Json out = Json::object();
  for (const auto& [name, q] : v) out[name] = to_string(q);
  return out;
}

Json to_json(const RandomVariable& x) {
  Json out = Json::array();
  for (const auto& v : x.values) out.push_back(to_string(v));
  return out;
}

FiniteProbSpace space_from_json(const Json& j) {
  std::vector<std::string> ids;
  std::vector<Rational> weights;
  for (const auto& a : array_of(field(j, "atoms"), "atoms")) {
    ids.push_back(string_of(field(a, "id"), "atom id"));
    weights.push_back(rational_from_json(field(a, "w")));
  }
  return FiniteProbSpace(std::move(ids), std::move(weights));
}

Json to_json(const FiniteProbSpace& space) {
  Json atoms = Json::array();
  for (std::size_t k = 0; k < space.size(); ++k) atoms.push_back({{"id", space.id(k)}, {"w", to_string(space.weight(k))}});
  return {{"atoms", atoms}};
}

RandomVariable rv_from_json(const Json& j, const FiniteProbSpace& space) {
  RandomVariable x;
  for (const auto& v : array_of(j, "values")) x.values.push_back(rational_from_json(v));
  check_rv(space, x);
  return x;
}

Event event_from_json(const Json& j, const FiniteProbSpace& space) {
  Event a = Event::none(space.size());
  for (const auto& id : array_of(j, "event")) a.member[space.index_of(string_of(id, "atom id"))] = true;
  return a;
}

Json event_to_json(const Event& a, const FiniteProbSpace& space) {
  Json out = Json::array();
  for (std::size_t k = 0; k < space.size(); ++k)
    if (a.member[k]) out.push_back(space.id(k));
  return out;
}

FamilyFile family_from_json(const Json& j) {
  FiniteProbSpace space = space_from_json(field(j, "space"));
  Signature sig;
  if (j.contains("signature")) {
    const Json& s = j.at("signature");
    if (s.contains("predicates"))
      for (auto& spec : symbols_from_json(s.at("predicates"))) sig.add_predicate(std::move(spec));
    if (s.contains("functions"))
      for (auto& spec : symbols_from_json(s.at("functions"))) sig.add_function(std::move(spec));
  }

  std::vector<FiniteLStructure> structures;
  for (const auto& sj : array_of(field(j, "structures"), "structures")) {
    FiniteLStructure m;
    for (const auto& e : array_of(field(sj, "universe"), "universe")) m.universe.push_back(string_of(e, "element id"));
    const std::size_t n = m.size();
    for (const auto& row : array_of(field(sj, "metric"), "metric")) {
      std::vector<Rational> r;
      for (const auto& v : array_of(row, "metric row")) r.push_back(rational_from_json(v));
      m.metric.push_back(std::move(r));
    }
    if (sj.contains("pred"))
      for (const auto& [name, table] : sj.at("pred").items()) {
        const SymbolSpec* spec = sig.predicate(name);
        if (!spec || name == "d") throw Error("predicate '" + name + "' is not in the signature");
        std::vector<Rational> flat;
        flatten(table, spec->arity, n, flat, [](const Json& v) { return rational_from_json(v); });
        m.predicates.emplace(name, std::move(flat));
      }
    if (sj.contains("func"))
      for (const auto& [name, table] : sj.at("func").items()) {
        const SymbolSpec* spec = sig.function(name);
        if (!spec) throw Error("function '" + name + "' is not in the signature");
        std::vector<std::size_t> flat;
        flatten(table, spec->arity, n, flat, [&](const Json& v) { return m.index_of(string_of(v, "element id")); });
        m.functions.emplace(name, std::move(flat));
      }
    structures.push_back(std::move(m));
  }

  FamilyFile out{RandomFamily(std::move(space), std::move(sig), std::move(structures)), {}};
  if (j.contains("sections"))
    for (const auto& [name, s] : j.at("sections").items()) out.sections.emplace(name, section_from_json(s, out.family));
  return out;
}

Section section_from_json(const Json& j, const RandomFamily& family) {
  if (!j.is_array() || j.size() != family.size()) throw Error("a section needs one element per atom");
  Section s;
  for (std::size_t k = 0; k < family.size(); ++k) s.push_back(family.structure(k).index_of(string_of(j[k], "element id")));
  return s;
}

Json section_to_json(const Section& s, const RandomFamily& family) {
  Json out = Json::array();
  for (std::size_t k = 0; k < s.size(); ++k) out.push_back(family.structure(k).universe[s[k]]);
  return out;
}

HallInstance hall_from_json(const Json& j) {
  HallInstance h{space_from_json(field(j, "space")), {}};
  for (const auto& item : array_of(field(j, "items"), "items"))
    h.items.push_back({string_of(field(item, "id"), "item id"), rational_from_json(field(item, "w")),
                       event_from_json(field(item, "C"), h.space)});
  check_instance(h);
  return h;
}

Proof proof_from_json(const Json& j) {
  Proof proof;
  for (const auto& line : array_of(j, "proof")) {
    Formula f = parse_formula(string_of(field(line, "formula"), "formula"));
    std::string by = string_of(field(line, "by"), "justification");
    auto colon = by.find(':');
    if (colon == std::string::npos) throw Error("malformed justification '" + by + "'");
    std::string kind = by.substr(0, colon), arg = by.substr(colon + 1);
    auto number = [&](const std::string& text) -> std::size_t {
      if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
        throw Error("malformed justification '" + by + "'");
      return std::stoul(text);
    };
    if (kind == "premise") {
      proof.push_back({f, Justification::by_premise(number(arg))});
    } else if (kind == "axiom") {
      Substitution s;
      for (const char* key : {"phi", "psi", "rho"})
        if (line.contains(key)) s.emplace(key, parse_formula(string_of(line.at(key), key)));
      proof.push_back({f, Justification::by_axiom(parse_scheme(arg), std::move(s))});
    } else if (kind == "mp") {
      auto comma = arg.find(',');
      if (comma == std::string::npos) throw Error("malformed justification '" + by + "'");
      proof.push_back({f, Justification::by_mp(number(arg.substr(0, comma)), number(arg.substr(comma + 1)))});
    } else {
      throw Error("malformed justification '" + by + "'");
    }
  }
  return proof;
}

Json to_json(const Proof& p) {
  Json out = Json::array();
  for (const auto& line : p) {
    Json l = {{"formula", print(line.formula)}};
    switch (line.by.kind) {
      case Justification::Kind::Premise:
        l["by"] = "premise:" + std::to_string(line.by.premise);
        break;
      case Justification::Kind::Axiom:
        l["by"] = "axiom:" + scheme_name(line.by.scheme);
        for (const char* key : {"phi", "psi", "rho"})
          if (auto it = line.by.subst.find(key); it != line.by.subst.end()) l[key] = print(it->second);
        break;
      case Justification::Kind::MP:
        l["by"] = "mp:" + std::to_string(line.by.i) + "," + std::to_string(line.by.j);
        break;
    }
    out.push_back(std::move(l));
  }
  return out;
}

}  // namespace contlog
