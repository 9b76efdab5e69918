#pragma once

#include "bmg/structures.hpp"

namespace bmg {

/// Depth-d back-and-forth equivalence: true iff there is a system of
/// partial isomorphisms of size <= depth, each extendable by one point on
/// either side. Decided by computing the nested depth-d extension types of
/// both structures over a shared interning table and comparing them; this
/// agrees with the exhaustive game recursion (the tests keep an independent
/// recursive oracle). Symmetric in (a, b), monotone decreasing in depth.
bool back_and_forth_equiv(const FinStructure& a, const FinStructure& b, int depth);

}  // namespace bmg
