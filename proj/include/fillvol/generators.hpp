#pragma once

#include <cstdint>
#include <string>

#include "fillvol/chain.hpp"

namespace fillvol {

// Test-gallery cycles. Every generator checks isCycle exactly before
// returning; a non-cycle result is a generator bug and throws logic_error.

// Unit square loop with corners (0,0) and (1,1), padded with zeros when the
// ambient dimension exceeds 2.
Chain squareLoop(int ambient = 2);

// Near-regular polygon on the unit circle (z = 0 plane for ambient 3); the
// vertices are exact rational points obtained from rational half-angle
// parameters, so they lie exactly on the circle.
Chain polygonLoop(int sides, int ambient = 3);

// Boundary of the solid octahedron with vertices at +-e_i: eight triangles,
// total area 4*sqrt(3).
Chain octahedron();

// Octahedron subdivided `depth` times, edge midpoints snapped to exact
// rational points of the unit sphere via stereographic rounding.
Chain subdividedSphere(int depth);

// Genus-1 surface: boundary of the box [0,p]x[0,q]x[0,1] with the open hole
// [1,p-1]x[1,q-1]x[0,1] removed, triangulated compatibly. Requires p,q >= 3.
Chain torusGrid(int p, int q);

// Boundary of a random (n+1)-chain with dyadic vertices: a guaranteed
// n-cycle. Redraws if everything cancels.
Chain randomBoundary(int n, int simplexCount, std::uint64_t seed, int ambient = 3,
                     Ring ring = Ring::Z);

// Parses "kind" or "kind:params" specs:
//   square-loop[:ambient]      polygon-loop:sides[,ambient]
//   octahedron                 subdivided-sphere:depth
//   torus-grid:PxQ             random-boundary:n,count[,ambient]
Chain generateCycle(const std::string& spec, std::uint64_t seed = 1);

}  // namespace fillvol
