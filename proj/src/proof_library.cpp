#include <array>

#include "contlog/proofs.hpp"

namespace contlog {

namespace {

// Derivation of P - P found offline by condensed detachment
// (tests/oracles/condensed_detachment.py).
struct RecordedLine {
  const char* formula;
  const char* by;  // "A<k>" or "mp"
  const char* phi;
  const char* psi;
  const char* rho;
  std::size_t i, j;
};

constexpr std::array<RecordedLine, 9> kSelfMonus{{
    {"((P - P) - P)", "A1", "P", "P", nullptr, 0, 0},
    {"((((P - P) - P) - (((P - P) - P) - P)) - ((P - P) - P))", "A1", "((P - P) - P)", "(((P - P) - P) - P)", nullptr,
     0, 0},
    {"(((P - P) - P) - (((P - P) - P) - P))", "mp", nullptr, nullptr, nullptr, 0, 1},
    {"((P - (P - ((P - P) - P))) - (((P - P) - P) - (((P - P) - P) - P)))", "A3", "P", "((P - P) - P)", nullptr, 0,
     0},
    {"(P - (P - ((P - P) - P)))", "mp", nullptr, nullptr, nullptr, 2, 3},
    {"((P - ((P - P) - P)) - P)", "A1", "P", "((P - P) - P)", nullptr, 0, 0},
    {"(((P - P) - (P - (P - ((P - P) - P)))) - ((P - ((P - P) - P)) - P))", "A2", "P", "(P - ((P - P) - P))", "P", 0,
     0},
    {"((P - P) - (P - (P - ((P - P) - P))))", "mp", nullptr, nullptr, nullptr, 5, 6},
    {"(P - P)", "mp", nullptr, nullptr, nullptr, 4, 7},
}};

Proof build_self_monus() {
  Proof proof;
  for (const auto& r : kSelfMonus) {
    Formula f = parse_formula(r.formula);
    if (std::string(r.by) == "mp") {
      proof.push_back({f, Justification::by_mp(r.i, r.j)});
      continue;
    }
    Substitution s;
    if (r.phi) s.emplace("phi", parse_formula(r.phi));
    if (r.psi) s.emplace("psi", parse_formula(r.psi));
    if (r.rho) s.emplace("rho", parse_formula(r.rho));
    proof.push_back({f, Justification::by_axiom(parse_scheme(r.by), std::move(s))});
  }
  return proof;
}

}  // namespace

const Proof& library_self_monus() {
  static const Proof proof = build_self_monus();
  return proof;
}

}  // namespace contlog
