#pragma once

#include <stdexcept>

#include "fillvol/chain.hpp"
#include "fillvol/metric.hpp"

namespace fillvol {

// Raised when a requested cube boundary passes exactly through a vertex of
// the chain being restricted. Callers retry with a perturbed radius.
class DegenerateRadiusError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Axis-aligned halfspace {x_axis <= threshold} (or >= when keepBelow=false).
struct Halfspace {
    int axis = 0;
    Rational threshold;
    bool keepBelow = true;
};

// Pieces of s on the kept side of the halfspace, as a chain oriented
// consistently with s (coefficient +1). Exact rational cut vertices; the
// piece volumes sum to the volume of s on that side.
Chain clipSimplexToHalfspace(const AffineSimplex& s, const Halfspace& h, Ring ring = Ring::Z);

// Exact restriction of a chain to a cube. The pieces triangulate z, and the
// two degenerate correction chains record the subdivision at chain level:
//
//     z = inside + outside + boundary(prism) + flat
//
// holds with exact canonical equality. Every simplex of prism (dim k+1) and
// flat (dim k) contains its cut point inside the affine span of the piece it
// came from, so both corrections have Gram determinant zero term by term.
// This is what lets the filling recursion keep exact boundaries across
// rounds at zero volume cost.
struct CubeRestriction {
    Chain inside;
    Chain outside;
    Chain prism;
    Chain flat;
};

// Requires that no vertex of z lies exactly on the cube boundary (throws
// DegenerateRadiusError otherwise). The restriction identity above is
// re-checked exactly before returning.
CubeRestriction restrictToBall(const Chain& z, const CubeBall& ball);

// chainVolume(restrictToBall(z, ball).inside) without materializing chains.
// Tolerates vertices on the cube boundary (ties contribute their closed-cube
// pieces), so radius scans can call it on arbitrary radii.
double restrictedVolume(const Chain& z, const CubeBall& ball);

// Same, for a single simplex with coefficient +1.
double restrictedVolume(const AffineSimplex& s, const CubeBall& ball, Ring ring = Ring::Z);

// The slice boundary(restrictToBall(z, ball).inside) of a cycle z, computed
// directly: only simplices touching the boundary band are cut, and only
// their faces landing on the cube boundary are collected. Equal to the full
// restriction's slice as a canonical chain, at a fraction of the cost.
Chain boundarySlice(const Chain& z, const CubeBall& ball);

// boundary(restrictToBall(z, ball).inside) for a cycle z: the slice supported
// on the cube boundary. Exact; the result is a cycle by construction.
Chain sliceAtRadius(const Chain& z, const CubeBall& ball);

// Coordinatewise clamp onto the cube. Simplices are first refined against
// the 2N face planes so the clamp is affine on each piece; then vertices are
// truncated into [center-r, center+r]. Commutes with boundary exactly and
// never increases volume.
Chain clampToBall(const Chain& c, const CubeBall& ball);

// Joins every simplex to the apex: [v0..vk] -> [apex, v0..vk] with the same
// coefficient. For any chain c, boundary(cone(c)) = c - cone(boundary(c))
// exactly; for a cycle z this gives boundary(cone(z)) = z.
Chain coneOverChain(const RationalPoint& apex, const Chain& c);

}  // namespace fillvol
