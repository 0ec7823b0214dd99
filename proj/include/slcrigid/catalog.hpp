#pragma once

#include "slcrigid/symgraph.hpp"

namespace slc {

/// C3: a centre vertex with a 3-orbit of loops, joined to three outer
/// vertices carrying one loop each. Rigid with 9 rows on 8 columns.
inline SymmetricGraph rigid_without_isostatic_subgraph() {
  return SymmetricGraph(GroupSpec::cyclic(3), 4, {{0, 1}, {0, 2}, {0, 3}},
                        {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 1, 0}, {4, 2, 0}, {5, 3, 0}},
                        {{0, 2, 3, 1}, {1, 2, 0, 4, 5, 3}});
}

/// C2 with |E| + |L| = 2|V| but an edge fixed by the half-turn: centre
/// vertex 0 with a fixed loop, vertices 1 and 2 swapped and joined.
inline SymmetricGraph half_turn_fixed_edge() {
  return SymmetricGraph(GroupSpec::cyclic(2), 3, {{0, 1}, {0, 2}, {1, 2}},
                        {{0, 0, 0}, {1, 1, 0}, {2, 2, 0}}, {{0, 2, 1}, {0, 2, 1}});
}

/// C3 with a vertex on the rotation centre: three spokes and a loop at each
/// outer vertex.
inline SymmetricGraph rotation_fixed_vertex() {
  return SymmetricGraph(GroupSpec::cyclic(3), 4, {{0, 1}, {0, 2}, {0, 3}},
                        {{0, 1, 0}, {1, 2, 0}, {2, 3, 0}}, {{0, 2, 3, 1}, {1, 2, 0}});
}

}  // namespace slc
