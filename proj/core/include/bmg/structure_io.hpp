#pragma once

#include <string>

#include "bmg/structures.hpp"

namespace bmg {

/// JSON schema: {"universe": [ids], "relations": {"name": [[tuple], ...]}}.
/// indent < 0 emits the compact single-line form.
std::string structure_to_json(const FinStructure& s, int indent = -1);
FinStructure structure_from_json(const Signature& sig, const std::string& text);

/// Undirected DOT (graph signature only).
std::string graph_to_dot(const FinStructure& g);
/// Parses the subset of DOT emitted by graph_to_dot: one "v;" or "u -- v;"
/// statement per line.
FinStructure graph_from_dot(const std::string& text);

}  // namespace bmg
