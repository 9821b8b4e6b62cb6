#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fillvol/decompose.hpp"

namespace fillvol {

struct ConeRecord {
    double cycleVolume = 0.0;
    double radius = 0.0;     // sup-norm radius used in the cone bound
    double coneVolume = 0.0;
    double coneBound = 0.0;  // coneFactor * radius * cycleVolume
    bool ok = false;
};

struct BallFillRecord {
    double insideVolume = 0.0;
    double sliceVolume = 0.0;
    double patchVolume = 0.0;  // inductive filling of the slice, clamped
    double patchBound = 0.0;   // fillingBound_{n-1} * sliceVolume^{n/(n-1)}
    bool patchSmall = false;   // patchVolume within patchBound and inside/4
    double roundedVolume = 0.0;
    double massLo = 0.0, massHi = 0.0;
    bool massOK = false;  // 3/4 inside <= rounded <= 5/4 inside
    double diameter = 0.0, roundRhs = 0.0;
    bool roundOK = false;  // diam(rounded) <= (4^{n+1}/(3 dens eps))^{1/n} Vol^{1/n}
    ConeRecord cone;
    bool containment = false;  // cone stays inside its ball, exact
    bool certI = false, certII = false;
};

struct RoundRecord {
    double startVolume = 0.0;
    double coverage = 0.0;
    bool coverageOK = false;
    std::vector<BallFillRecord> balls;
    double residualVolume = 0.0;
    double decayBound = 0.0;
    bool decayOK = false;  // residual <= (1 - (3/4) 5^{-n}) start
    double volumeSumLhs = 0.0;
    bool volumeSumOK = false;  // (3/5) sum rounded + residual <= start
    bool subadditivityOK = false;
    bool correctionsZero = false;  // prism/flat cones contribute exactly 0
    int decomposeAttempts = 0;

    bool allOK() const;
};

struct FillResult {
    bool succeeded = false;
    std::string failure;
    Chain fill;
    bool boundaryExact = false;   // boundary(fill) == z with exact equality
    double totalVolume = 0.0;
    double cycleVolume = 0.0;
    double ratio = 0.0;           // totalVolume / cycleVolume^{1+1/n}
    double certifiedBound = 0.0;  // fillingBound for this dimension
    bool certificatesPass = false;
    std::vector<RoundRecord> rounds;       // inductive stages
    std::vector<ConeRecord> components;    // base-case per-component cones
    std::optional<ConeRecord> residualCone;
    int dimension = 0;

    FillResult(int dim, int ambient, Ring ring) : fill(dim + 1, ambient, ring), dimension(dim) {}
};

struct FillOptions {
    double theta = 1e-2;  // stop when the residual drops below theta * Vol(z)
    int maxRounds = 0;    // 0 = derived from the decay factor, plus slack
    std::uint64_t seed = 1;
    DecomposeOptions decompose;
};

// Cones each connected component of a 1-cycle from its lexicographically
// smallest support vertex. A closed even-degree component has sup-norm
// diameter at most half its length, which certifies
// Vol(fill) <= (coneFactor_1/2) * Vol(z)^2.
FillResult fillBaseCase(const Chain& z);

// The inductive stage for cycles of dimension >= 2: decompose, fill each
// slice one dimension down, clamp the patch into its ball, cone the rounded
// cycles from the ball centers, and iterate on the residual; finally cone
// the residual from its containing ball's center. The degenerate correction
// chains from clipping are coned at exactly zero volume so that
// boundary(fill) == z holds with exact equality.
FillResult fillInductive(const Chain& z, const ConstantsTable& table, const FillOptions& opts = {});

// Dispatch on dimension.
FillResult fillCycle(const Chain& z, const ConstantsTable& table, const FillOptions& opts = {});

struct VerifyReport {
    bool boundaryExact = false;
    bool volumeMatches = false;
    bool ratioMatches = false;
    bool withinBound = false;
    double recomputedVolume = 0.0;
    double recomputedRatio = 0.0;

    bool pass() const { return boundaryExact && volumeMatches && ratioMatches && withinBound; }
    std::string summary() const;
};

// Independent re-check of a fill result: recomputes the boundary, the volume
// and the ratio from the chains alone; trusts nothing stored in the result.
VerifyReport verifyFill(const Chain& z, const FillResult& result);

}  // namespace fillvol
