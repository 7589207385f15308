#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "contlog/hall.hpp"
#include "contlog/proofs.hpp"
#include "contlog/randomisation.hpp"
#include "contlog/rv.hpp"
#include "contlog/semantics.hpp"

namespace contlog {

using Json = nlohmann::ordered_json;

/// Reads a rational given as "p/q" or as a JSON integer.
Rational rational_from_json(const Json& j);
Json to_json(const Rational& q);
Json to_json(const Assignment& v);
Json to_json(const RandomVariable& x);

/// {"atoms": [{"id": "w1", "w": "1/2"}, ...]}
FiniteProbSpace space_from_json(const Json& j);
Json to_json(const FiniteProbSpace& space);

/// An array of values, one per atom.
RandomVariable rv_from_json(const Json& j, const FiniteProbSpace& space);
/// An array of atom ids.
Event event_from_json(const Json& j, const FiniteProbSpace& space);
Json event_to_json(const Event& a, const FiniteProbSpace& space);

struct FamilyFile {
  RandomFamily family;
  std::map<std::string, Section> sections;  // keyed by name
};

/// {"space": ..., "signature": {"predicates": [...], "functions": [...]},
///  "structures": [{"universe", "pred", "func", "metric"}, ...],
///  "sections": {"a": [element id per atom], ...}}
FamilyFile family_from_json(const Json& j);
Section section_from_json(const Json& j, const RandomFamily& family);
Json section_to_json(const Section& s, const RandomFamily& family);

/// {"space": ..., "items": [{"id": "x", "w": "1/2", "C": ["w1"]}, ...]}
HallInstance hall_from_json(const Json& j);

/// Array of {"formula": ..., "by": "premise:k" | "axiom:Ak" | "mp:i,j"}; axiom
/// lines carry their substitution in "phi", "psi", "rho".
Proof proof_from_json(const Json& j);
Json to_json(const Proof& p);

}  // namespace contlog
