#include "contlog/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "contlog/json_io.hpp"

namespace contlog {

namespace {

enum class Status { Ok, Fail, Infeasible };

struct Outcome {
  Status status = Status::Ok;
  Json payload = Json::object();
};

const char* status_name(Status s) {
  switch (s) {
    case Status::Ok:
      return "ok";
    case Status::Fail:
      return "fail";
    case Status::Infeasible:
      return "infeasible";
  }
  return "fail";
}

Status verdict(bool ok) { return ok ? Status::Ok : Status::Fail; }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw Error("'" + path + "' is not valid JSON: " + e.what());
  }
}

// Non-empty lines of a file, each one formula.
std::vector<Formula> read_formula_lines(const std::string& path) {
  std::vector<Formula> out;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line))
    if (line.find_first_not_of(" \t\r") != std::string::npos) out.push_back(parse_formula(line));
  return out;
}

std::vector<Formula> parse_all(const std::vector<std::string>& texts) {
  std::vector<Formula> out;
  for (const auto& t : texts) out.push_back(parse_formula(t));
  return out;
}

Json print_all(const std::vector<Formula>& fs) {
  Json out = Json::array();
  for (const auto& f : fs) out.push_back(print(f));
  return out;
}

std::size_t branch_budget() {
  const char* env = std::getenv("CLOG_BRANCH_BUDGET");
  if (!env) return 24;
  std::string text = env;
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw Error("CLOG_BRANCH_BUDGET must be a non-negative integer");
  return std::stoul(text);
}

// Refuses problems whose joint decomposition has too many Monus nodes.
void enforce_budget(const std::vector<Formula>& fs) {
  std::size_t nodes = count_distinct_monus(fs);
  std::size_t budget = branch_budget();
  if (nodes > budget)
    throw Error("problem has " + std::to_string(nodes) + " distinct Monus nodes, over the branch budget of " +
                std::to_string(budget));
}

struct FormulaInput {
  std::vector<std::string> exprs;
  std::string file;

  std::vector<Formula> many() const {
    std::vector<Formula> out = parse_all(exprs);
    if (!file.empty())
      for (auto& f : read_formula_lines(file)) out.push_back(std::move(f));
    return out;
  }

  Formula one() const {
    if (exprs.size() + (file.empty() ? 0 : 1) != 1) throw CLI::ValidationError("give exactly one formula via -e or a file");
    if (!exprs.empty()) return parse_formula(exprs[0]);
    std::string text = read_file(file);
    return parse_formula(text);
  }
};

void add_formula_input(CLI::App* sub, FormulaInput& in, bool many) {
  sub->add_option("-e,--expr", in.exprs, many ? "formula (repeatable)" : "formula");
  sub->add_option("file", in.file, many ? "file with one formula per line" : "file holding the formula")
      ->check(CLI::ExistingFile);
}

Json pair_json(const std::string& key, const Json& value) { return Json{{key, value}}; }

Json lformula_list(const std::vector<LFormula>& fs) {
  Json out = Json::array();
  for (const auto& f : fs) out.push_back(print(f));
  return out;
}

SectionEnv named_sections(const FamilyFile& ff) { return {ff.sections.begin(), ff.sections.end()}; }

Json labelled(const RandomVariable& x, const FiniteProbSpace& space) {
  Json out = Json::object();
  for (std::size_t k = 0; k < space.size(); ++k) out[space.id(k)] = to_string(x.values[k]);
  return out;
}

Json distribution_json(const std::map<std::vector<Rational>, Rational>& d) {
  Json out = Json::array();
  for (const auto& [values, mass] : d) {
    Json v = Json::array();
    for (const auto& q : values) v.push_back(to_string(q));
    out.push_back({{"values", v}, {"mass", to_string(mass)}});
  }
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact continuous propositional logic, finite random-variable models and randomisations", "clog"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "show help for all subcommands");

  std::function<Outcome()> action;
  std::string command;
  auto bind = [&](CLI::App* sub, std::string name, std::function<Outcome()> f) {
    sub->callback([&action, &command, name = std::move(name), f = std::move(f)] {
      command = name;
      action = f;
    });
  };

  // Propositional logic.
  FormulaInput valid_in;
  bool valid_sup = false;
  auto* valid = app.add_subcommand("valid", "decide validity (value 0 under every assignment)");
  add_formula_input(valid, valid_in, false);
  valid->add_flag("--sup", valid_sup, "also report the maximum value and a maximiser");
  bind(valid, "valid", [&] {
    Formula f = valid_in.one();
    enforce_budget({f});
    Outcome o;
    ValidityResult r = is_valid(f);
    o.status = verdict(r.valid);
    o.payload["valid"] = r.valid;
    if (r.counterexample) o.payload["counterexample"] = to_json(*r.counterexample);
    if (valid_sup) {
      SupResult s = sup_value(f);
      o.payload["sup"] = {{"value", to_string(s.value)}, {"witness", to_json(s.witness)}};
    }
    return o;
  });

  FormulaInput sat_in;
  auto* sat = app.add_subcommand("sat", "find a common model of a finite set of formulas");
  add_formula_input(sat, sat_in, true);
  bind(sat, "sat", [&] {
    auto sigma = sat_in.many();
    enforce_budget(sigma);
    Outcome o;
    auto model = is_satisfiable(sigma);
    o.payload["satisfiable"] = model.has_value();
    if (model) {
      o.payload["model"] = to_json(*model);
    } else {
      o.status = Status::Infeasible;
    }
    return o;
  });

  std::vector<std::string> entail_premises;
  std::string entail_goal;
  bool entail_witness = false;
  unsigned entail_cap = 8;
  auto* entail = app.add_subcommand("entail", "decide finite-premise entailment");
  entail->add_option("--premise", entail_premises, "premise formula (repeatable)");
  entail->add_option("--goal", entail_goal, "goal formula")->required();
  entail->add_flag("--witness", entail_witness, "search for the least m making the chained formula valid");
  entail->add_option("--cap", entail_cap, "largest m tried")->capture_default_str();
  bind(entail, "entail", [&] {
    auto sigma = parse_all(entail_premises);
    Formula goal = parse_formula(entail_goal);
    auto all = sigma;
    all.push_back(goal);
    enforce_budget(all);
    Outcome o;
    EntailmentResult r = entails_semantic(sigma, goal);
    o.status = verdict(r.holds);
    o.payload["valid"] = r.holds;
    if (r.countermodel) o.payload["countermodel"] = to_json(*r.countermodel);
    if (entail_witness) {
      auto m = entails_witness(sigma, goal, entail_cap);
      o.payload["m"] = m ? Json(*m) : Json(nullptr);
    }
    return o;
  });

  FormulaInput unsat_in;
  unsigned unsat_cap = 8;
  auto* unsat = app.add_subcommand("unsat-witness", "least n with 1 - n*phi_0 - ... valid");
  add_formula_input(unsat, unsat_in, true);
  unsat->add_option("--cap", unsat_cap, "largest n tried")->capture_default_str();
  bind(unsat, "unsat-witness", [&] {
    auto sigma = unsat_in.many();
    enforce_budget(sigma);
    Outcome o;
    auto n = unsat_witness(sigma, unsat_cap);
    o.status = verdict(n.has_value());
    o.payload["n"] = n ? Json(*n) : Json(nullptr);
    return o;
  });

  // Proofs.
  std::string proof_file;
  std::vector<std::string> proof_premises;
  auto* checkp = app.add_subcommand("check-proof", "check a proof file");
  checkp->add_option("file", proof_file, "proof JSON")->required()->check(CLI::ExistingFile);
  checkp->add_option("--premise", proof_premises, "premise formula (repeatable)");
  bind(checkp, "check-proof", [&] {
    Json j = read_json(proof_file);
    std::vector<Formula> premises = parse_all(proof_premises);
    Json lines = j;
    if (j.is_object()) {
      if (j.contains("premises"))
        for (const auto& p : j.at("premises")) premises.push_back(parse_formula(p.get<std::string>()));
      if (!j.contains("lines")) throw Error("proof object needs 'lines'");
      lines = j.at("lines");
    }
    Proof proof = proof_from_json(lines);
    ProofCheck c = check_proof(proof, premises);
    Outcome o;
    o.status = verdict(c.ok);
    o.payload["valid"] = c.ok;
    o.payload["lines"] = proof.size();
    if (!c.ok) {
      o.payload["line"] = *c.bad_line;
      o.payload["reason"] = c.reason;
    } else if (!proof.empty()) {
      o.payload["conclusion"] = print(proof.back().formula);
    }
    return o;
  });

  std::string find_goal;
  std::vector<std::string> find_premises;
  std::size_t find_depth = 20;
  auto* findp = app.add_subcommand("find-proof", "bounded proof search");
  findp->add_option("--goal,-e", find_goal, "goal formula")->required();
  findp->add_option("--premise", find_premises, "premise formula (repeatable)");
  findp->add_option("--depth", find_depth, "maximum number of proof lines")->capture_default_str();
  bind(findp, "find-proof", [&] {
    auto premises = parse_all(find_premises);
    auto proof = find_proof(parse_formula(find_goal), premises, find_depth);
    Outcome o;
    o.status = verdict(proof.has_value());
    o.payload["found"] = proof.has_value();
    if (proof) o.payload["proof"] = to_json(*proof);
    return o;
  });

  std::vector<std::string> elim_premises;
  std::string elim_goal;
  auto* elim = app.add_subcommand("elim-half", "replace half-subformulas by fresh atoms");
  elim->add_option("--premise", elim_premises, "premise formula (repeatable)");
  elim->add_option("--goal", elim_goal, "goal formula")->required();
  bind(elim, "elim-half", [&] {
    HalfElimResult r = eliminate_half(parse_all(elim_premises), parse_formula(elim_goal));
    Outcome o;
    o.payload["premises"] = print_all(r.sigma);
    o.payload["goal"] = print(r.goal);
    Json fresh = Json::array();
    for (const auto& [name, f] : r.fresh) fresh.push_back({{"atom", name}, {"replaces", print(f)}});
    o.payload["fresh"] = fresh;
    return o;
  });

  // Random variables.
  auto* rv = app.add_subcommand("rv", "finite random-variable models");
  rv->require_subcommand(1);
  std::string rv_file;
  auto rv_sub = [&](const char* name, const char* help) {
    auto* s = rv->add_subcommand(name, help);
    s->add_option("file", rv_file, "input JSON")->required()->check(CLI::ExistingFile);
    return s;
  };

  bind(rv_sub("check", "exact residuals of the RV axioms on sample variables"), "rv check", [&] {
    Json j = read_json(rv_file);
    FiniteProbSpace space = space_from_json(j.at("space"));
    std::vector<RandomVariable> samples;
    for (const auto& s : j.at("samples")) samples.push_back(rv_from_json(s, space));
    RvAxiomReport r = check_rv_axioms(space, samples);
    Outcome o;
    o.status = verdict(r.all_zero());
    o.payload["all_zero"] = r.all_zero();
    o.payload["instances"] = r.instances_checked;
    Json res = Json::array();
    for (const auto& a : r.residuals)
      res.push_back({{"axiom", a.axiom}, {"samples", a.samples}, {"residual", to_string(a.residual)}});
    o.payload["residuals"] = res;
    return o;
  });

  bind(rv_sub("arv-defect", "exact ARV defect of a random variable"), "rv arv-defect", [&] {
    Json j = read_json(rv_file);
    FiniteProbSpace space = space_from_json(j.at("space"));
    RandomVariable x = rv_from_json(j.at("values"), space);
    ArvDefect d = arv_defect(space, x);
    Outcome o;
    o.payload["defect"] = to_string(d.value);
    o.payload["witness"] = to_json(d.witness);
    o.payload["certified"] = arv_body(space, x, d.witness) == d.value;
    return o;
  });

  bind(rv_sub("dist", "expectation, distance to the event algebra, optional L1 distance"), "rv dist", [&] {
    Json j = read_json(rv_file);
    FiniteProbSpace space = space_from_json(j.at("space"));
    RandomVariable x = rv_from_json(j.at("values"), space);
    Outcome o;
    o.payload["expectation"] = to_string(expectation(space, x));
    o.payload["dist_to_algebra"] = to_string(dist_to_algebra(space, x));
    o.payload["nearest_event"] = event_to_json(nearest_event(x), space);
    if (j.contains("other")) o.payload["l1_dist"] = to_string(l1_dist(space, x, rv_from_json(j.at("other"), space)));
    return o;
  });

  bind(rv_sub("joint", "joint distribution; compares two tuples when 'other_tuple' is given"), "rv joint", [&] {
    Json j = read_json(rv_file);
    FiniteProbSpace space = space_from_json(j.at("space"));
    std::vector<RandomVariable> tuple;
    for (const auto& v : j.at("tuple")) tuple.push_back(rv_from_json(v, space));
    Outcome o;
    o.payload["joint"] = distribution_json(joint_distribution(space, tuple));
    if (j.contains("other_tuple")) {
      FiniteProbSpace other = j.contains("other_space") ? space_from_json(j.at("other_space")) : space;
      std::vector<RandomVariable> tuple2;
      for (const auto& v : j.at("other_tuple")) tuple2.push_back(rv_from_json(v, other));
      o.payload["qf_type_equal"] = qf_type_equal(space, tuple, other, tuple2);
    }
    return o;
  });

  bind(rv_sub("condexp", "conditional expectation on a partition"), "rv condexp", [&] {
    Json j = read_json(rv_file);
    FiniteProbSpace space = space_from_json(j.at("space"));
    RandomVariable x = rv_from_json(j.at("values"), space);
    std::vector<Event> blocks;
    if (j.contains("partition")) {
      for (const auto& b : j.at("partition")) blocks.push_back(event_from_json(b, space));
    } else if (j.contains("generators")) {
      std::vector<RandomVariable> gens;
      for (const auto& g : j.at("generators")) gens.push_back(rv_from_json(g, space));
      blocks = generated_partition(space.size(), gens);
    } else {
      throw Error("give 'partition' or 'generators'");
    }
    RandomVariable e = cond_expectation(space, x, blocks);
    Outcome o;
    Json parts = Json::array();
    for (const auto& b : blocks) parts.push_back(event_to_json(b, space));
    o.payload["partition"] = parts;
    o.payload["result"] = to_json(e);
    return o;
  });

  unsigned tau_n = 0;
  auto* tau = rv_sub("tauphi", "level-set approximation of the integral of f over an event");
  tau->add_option("--n", tau_n, "stage n >= 1")->required();
  bind(tau, "rv tauphi", [&] {
    Json j = read_json(rv_file);
    FiniteProbSpace space = space_from_json(j.at("space"));
    RandomVariable f = rv_from_json(j.at("values"), space);
    Event c = j.contains("event") ? event_from_json(j.at("event"), space) : Event::all(space.size());
    TauPhiResult r = tau_phi_interpretation(space, f, tau_n, c);
    Rational error = abs(r.value - r.integral);
    Outcome o;
    o.payload["value"] = to_string(r.value);
    o.payload["integral"] = to_string(r.integral);
    o.payload["error"] = to_string(error);
    o.payload["bound"] = to_string(dyadic(tau_n));
    o.payload["within_bound"] = error < dyadic(tau_n);
    o.payload["levels_coincide"] = r.coincides;
    o.status = verdict(error < dyadic(tau_n) && r.coincides);
    return o;
  });

  // Randomisations.
  auto* rand = app.add_subcommand("rand", "random families of finite metric structures");
  rand->require_subcommand(1);
  std::string rand_file;
  std::vector<std::string> rand_exprs;
  auto rand_sub = [&](const char* name, const char* help, bool formulas) {
    auto* s = rand->add_subcommand(name, help);
    s->add_option("file", rand_file, "family JSON")->required()->check(CLI::ExistingFile);
    if (formulas) s->add_option("-e,--expr", rand_exprs, "formula over the named sections")->required();
    return s;
  };
  auto single_lformula = [&]() {
    if (rand_exprs.size() != 1) throw CLI::ValidationError("give exactly one formula");
    return parse_lformula(rand_exprs[0]);
  };

  bind(rand_sub("eval", "inductive and pointwise values of a formula", true), "rand eval", [&] {
    FamilyFile ff = family_from_json(read_json(rand_file));
    LFormula f = single_lformula();
    SectionEnv env = named_sections(ff);
    RandomVariable b = bracket(f, env, ff.family);
    RandomVariable p = pointwise(f, env, ff.family);
    Outcome o;
    o.payload["bracket"] = labelled(b, ff.family.space());
    o.payload["pointwise"] = labelled(p, ff.family.space());
    o.payload["equal"] = b == p;
    o.payload["expectation"] = to_string(expectation(ff.family.space(), b));
    o.status = verdict(b == p);
    return o;
  });

  bind(rand_sub("axioms", "check R1, R2, R3 on the named sections", false), "rand axioms", [&] {
    FamilyFile ff = family_from_json(read_json(rand_file));
    std::vector<Section> samples;
    for (const auto& [name, s] : ff.sections) samples.push_back(s);
    RAxiomReport r = check_R_axioms(ff.family, samples);
    Outcome o;
    o.status = verdict(r.ok());
    o.payload["R1"] = r.r1;
    o.payload["R2"] = r.r2;
    o.payload["R3"] = r.r3;
    o.payload["instances"] = r.instances;
    o.payload["failures"] = r.failures;
    return o;
  });

  std::string los_dirac;
  auto* los = rand_sub("los", "compare E[[phi]] with the weighted pointwise values", true);
  los->add_option("--dirac", los_dirac, "weight 1 on this atom instead of the space's weights");
  bind(los, "rand los", [&] {
    FamilyFile ff = family_from_json(read_json(rand_file));
    LFormula f = single_lformula();
    std::vector<Rational> w = ff.family.space().weights();
    if (!los_dirac.empty()) w = dirac_weighting(ff.family.size(), ff.family.space().index_of(los_dirac));
    LosResult r = los_check(f, named_sections(ff), ff.family, w);
    Outcome o;
    o.status = verdict(r.equal());
    o.payload["lhs"] = to_string(r.lhs);
    o.payload["rhs"] = to_string(r.rhs);
    o.payload["equal"] = r.equal();
    return o;
  });

  std::vector<std::string> glue_event;
  std::string glue_a, glue_b;
  auto* gl = rand_sub("glue", "section equal to a on the event and to b elsewhere", false);
  gl->add_option("--event", glue_event, "atom ids (comma separated)")->delimiter(',');
  gl->add_option("--a", glue_a, "section name")->required();
  gl->add_option("--b", glue_b, "section name")->required();
  bind(gl, "rand glue", [&] {
    FamilyFile ff = family_from_json(read_json(rand_file));
    Event a = event_from_json(Json(glue_event), ff.family.space());
    auto pick = [&](const std::string& name) {
      auto it = ff.sections.find(name);
      if (it == ff.sections.end()) throw Error("no section named '" + name + "'");
      return it->second;
    };
    Section c = glue(a, pick(glue_a), pick(glue_b));
    Outcome o;
    o.payload["section"] = section_to_json(c, ff.family);
    o.payload["distance_to_a"] = to_string(distance(c, pick(glue_a), ff.family));
    o.payload["distance_to_b"] = to_string(distance(c, pick(glue_b), ff.family));
    return o;
  });

  bind(rand_sub("type-measure", "type measure of the named sections over the listed formulas", true),
       "rand type-measure", [&] {
         FamilyFile ff = family_from_json(read_json(rand_file));
         std::vector<LFormula> fs;
         for (const auto& e : rand_exprs) fs.push_back(parse_lformula(e));
         SectionEnv env = named_sections(ff);
         TypeMeasure nu = type_measure(env, ff.family, fs);
         Outcome o;
         o.payload["formulas"] = lformula_list(fs);
         o.payload["measure"] = distribution_json(nu);
         Json pairs = Json::array();
         bool all = true;
         for (std::size_t i = 0; i < fs.size(); ++i) {
           Rational p = pairing(nu, i);
           Rational e = expectation(ff.family.space(), bracket(fs[i], env, ff.family));
           all = all && p == e;
           pairs.push_back({{"pairing", to_string(p)}, {"expectation", to_string(e)}, {"equal", p == e}});
         }
         o.payload["pairings"] = pairs;
         o.status = verdict(all);
         return o;
       });

  std::string inf_var, inf_eps = "0";
  auto* infw = rand_sub("inf-witness", "pointwise minimising section for a variable", true);
  infw->add_option("--var", inf_var, "the variable to minimise over")->required();
  infw->add_option("--epsilon", inf_eps, "tolerance (p/q, non-negative)")->capture_default_str();
  bind(infw, "rand inf-witness", [&] {
    FamilyFile ff = family_from_json(read_json(rand_file));
    LFormula f = single_lformula();
    SectionEnv env = named_sections(ff);
    env.erase(inf_var);
    Section b = inf_witness(f, inf_var, env, ff.family, parse_rational(inf_eps));
    SectionEnv with = env;
    with[inf_var] = b;
    Outcome o;
    o.payload["section"] = section_to_json(b, ff.family);
    o.payload["value"] = labelled(bracket(f, with, ff.family), ff.family.space());
    o.payload["infimum"] = labelled(bracket(LFormula::inf(inf_var, f), env, ff.family), ff.family.space());
    return o;
  });

  // Hall allocation.
  std::string hall_file;
  auto* hall = app.add_subcommand("hall", "probabilistic Hall condition and exact allocation");
  hall->add_option("file", hall_file, "instance JSON")->required()->check(CLI::ExistingFile);
  bind(hall, "hall", [&] {
    HallInstance h = hall_from_json(read_json(hall_file));
    HallVerdict v = hall_condition(h);
    auto a = solve_allocation(h);
    if (v.holds != a.has_value()) throw Error("internal inconsistency between the Hall check and the flow");
    Outcome o;
    if (!a) {
      o.status = Status::Infeasible;
      Json ids = Json::array();
      for (std::size_t x : *v.violating) ids.push_back(h.items[x].id);
      o.payload["violating"] = ids;
      return o;
    }
    o.payload["verified"] = verify_allocation(h, *a);
    Json alloc = Json::array();
    auto real = realizable_as_events(h, *a);
    for (std::size_t x = 0; x < h.items.size(); ++x) {
      Json mass = Json::object();
      for (std::size_t k = 0; k < h.space.size(); ++k)
        if (sgn(a->mass[x][k]) != 0) mass[h.space.id(k)] = to_string(a->mass[x][k]);
      alloc.push_back({{"id", h.items[x].id}, {"mass", mass}, {"event_realizable", bool(real[x])}});
    }
    o.payload["allocation"] = alloc;
    return o;
  });

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  Json report;
  report["command"] = command;
  Outcome outcome;
  try {
    outcome = action();
  } catch (const CLI::ValidationError& e) {
    err << "clog: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    outcome = Outcome{Status::Fail, pair_json("error", e.what())};
  } catch (const Json::exception& e) {
    outcome = Outcome{Status::Fail, pair_json("error", std::string("malformed input: ") + e.what())};
  }
  report["status"] = status_name(outcome.status);
  for (auto& [key, value] : outcome.payload.items()) report[key] = value;
  out << report.dump(2) << "\n";
  return outcome.status == Status::Ok ? 0 : 1;
}

}  // namespace contlog
