#pragma once

#include "fillvol/chain.hpp"

namespace fillvol {

enum class MetricKind { LInf, L2 };

// An axis-aligned cube {x : max_j |x_j - center_j| <= radius}. These are the
// only balls the decomposition pipeline uses: their faces are coordinate
// hyperplanes, so restriction and slicing stay exact rational operations.
struct CubeBall {
    RationalPoint center;
    Rational radius;

    CubeBall(RationalPoint c, Rational r);
};

// Exact sup-norm distance.
Rational distanceLInfExact(const RationalPoint& p, const RationalPoint& q);

double distance(const RationalPoint& p, const RationalPoint& q, MetricKind metric);

// Exact Gram determinant of the edge vectors from vertex 0 (Euclidean inner
// products). Zero exactly when the simplex is degenerate.
Rational simplexGramDet(const AffineSimplex& s);

// Euclidean k-dimensional Hausdorff volume: sqrt(det G)/k!. A 0-simplex has
// volume 1, degenerate simplices have volume exactly 0.
double simplexVolume(const AffineSimplex& s);

// Sum of |coefficient| * simplexVolume over the terms.
double chainVolume(const Chain& c);

// Max pairwise vertex distance over the support; exact on vertex pairs.
// Rejects empty chains.
double chainDiameter(const Chain& c, MetricKind metric);

// Bounding-box cube containing the support (not required minimal); a chain
// supported at a single point gets a unit radius so the ball stays a ball.
CubeBall containingBall(const Chain& c);

bool cubeContains(const CubeBall& ball, const RationalPoint& p);
bool cubeContainsChain(const CubeBall& ball, const Chain& c);

// Exact gap test between closed cubes: true iff some axis separates them
// strictly, i.e. the cubes do not intersect at all.
bool cubesDisjoint(const CubeBall& a, const CubeBall& b);

}  // namespace fillvol
