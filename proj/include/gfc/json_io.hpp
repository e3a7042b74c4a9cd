#pragma once

// Canonical JSON documents (fixed key order, rationals as "p/q" strings)
// for actions, decompositions, Betti tables and ring reports.

#include <string>
#include <vector>

#include "json.hpp"

#include "gfc/char_classes.hpp"
#include "gfc/decomposition.hpp"
#include "gfc/linalg.hpp"

namespace gfc::io {

using Json = nlohmann::ordered_json;

enum class ActionKind { Decomposition, RealCyclicBlocks, RealCyclicGenerator, ComplexCyclic, RealMatrixGroup };

/// Input document: either a ready Decomposition or a group action to decompose.
struct Action {
  ActionKind kind = ActionKind::Decomposition;
  rep::Field field = rep::Field::Real;
  rep::Decomposition decomposition;    // Decomposition
  std::size_t order = 0;               // cyclic kinds; 0 = derive from the generator matrix
  rep::RealBlocks blocks;              // RealCyclicBlocks
  rep::Matrix generator;               // RealCyclicGenerator
  std::vector<long long> weights;      // ComplexCyclic
  std::vector<rep::Matrix> matrices;   // RealMatrixGroup: all elements, or generators when `closure`
  bool closure = false;
};

/// Inline JSON when the argument starts with '{', otherwise a file path.
std::string read_input(const std::string& input);
/// Throws InputError on malformed JSON.
Json parse_json(const std::string& text);
Action parse_action(const Json& j);

rep::Decomposition decomposition_from_json(const Json& j);
Rational rational_from_json(const Json& j);
rep::Matrix matrix_from_json(const Json& j);

Json to_json(const rep::Decomposition& d);
Json to_json(const rep::Matrix& m);
/// Known entries as integers, undetermined ones as "unknown".
Json to_json(const linalg::BettiTable& b);
Json to_json(const cc::ClassLabel& c);
Json to_json(const cc::VanishingReport& v);
Json to_json(const cc::RingReport& r);
Json to_json(const cc::InertiaEntry& e);

/// Compact serialization plus a trailing newline.
std::string dump(const Json& j);

}  // namespace gfc::io
