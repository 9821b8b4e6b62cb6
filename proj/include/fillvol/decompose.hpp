#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fillvol/chain.hpp"
#include "fillvol/constants.hpp"
#include "fillvol/geometry_ops.hpp"
#include "fillvol/metric.hpp"

namespace fillvol {

// r -> Vol(z ∩ B(x, r)) at exact rational radii. Nondecreasing in r;
// saturates at the total volume once r reaches the farthest support vertex.
class VolumeGrowth {
public:
    VolumeGrowth(const Chain& z, RationalPoint center);

    double operator()(const Rational& r) const;

    double totalVolume() const { return total_; }
    const Rational& farthestVertex() const { return distances_.back(); }
    // sorted unique sup-norm distances from the center to support vertices
    const std::vector<Rational>& vertexDistances() const { return distances_; }

private:
    struct Entry {
        const AffineSimplex* simplex;
        double weight;          // |coeff|
        double weightedVolume;  // |coeff| * volume
        double farthest;        // max vertex sup-distance (bounds the body)
        std::vector<double> bboxLo, bboxHi;
    };

    RationalPoint center_;
    std::vector<double> centerD_;
    double total_ = 0.0;
    std::vector<Rational> distances_;
    std::vector<Entry> entries_;
};

struct DecomposeOptions {
    std::uint64_t seed = 1;
    int radiusGridPoints = 48;   // density scan resolution
    int bisectionSteps = 12;
    int validationGridPoints = 16;
    int sliceSamples = 64;       // doubled per retry
    int sliceSampleCap = 4096;
    int randomCandidates = 8;    // doubled per retry
    int candidateCap = 96;       // barycenters strided down to this, doubled per retry
    int retryCap = 6;
    double epsilonOverride = 0.0;  // 0 = use the table value
};

// Approximate last-crossing radius of the density condition at x: a radius
// rhat with V(x,rhat) >= density*eps*rhat^n while every radius on a
// refinement grid over (rhat, 5*rhat] stays below the threshold curve.
// Returns nullopt when no positive radius satisfies the condition (the
// sampled point then simply drops out of the candidate list).
std::optional<Rational> computeR0(const Chain& z, const RationalPoint& x,
                                  const ConstantsTable& table,
                                  const DecomposeOptions& opts = {});

// Greedy disjoint selection: candidates sorted by radius descending (ties by
// input order), a candidate is accepted iff its cube B(x, 2r) is exactly
// disjoint from every previously accepted one. Returns accepted indices in
// selection order.
std::vector<std::size_t> vitaliSelect(
    const std::vector<std::pair<RationalPoint, Rational>>& candidates);

struct SliceChoice {
    Rational radius;
    Chain slice;
    bool boundOK = false;
    double insideVolume = 0.0;
    double sliceVolume = 0.0;
    double sliceBoundRhs = 0.0;
};

// Samples generic rational radii in (rhat, 2*rhat) and returns the first one
// whose slice volume beats the coarea-style bound; otherwise the sampled
// radius minimizing slice volume relative to V^{(n-1)/n}, with boundOK=false.
SliceChoice chooseSliceRadius(const Chain& z, const RationalPoint& x, const Rational& rhat,
                              const ConstantsTable& table, const DecomposeOptions& opts = {});

struct BallCertificate {
    double insideVolume = 0.0;
    double sliceVolume = 0.0;
    double diameter = 0.0;
    double volumeLowerRhs = 0.0;  // 4^{-n} * density * eps * diam^n
    double sliceUpperRhs = 0.0;   // coarea * (density*eps)^{1/n} * n * V^{(n-1)/n}
    bool volumeLowerOK = false;
    bool sliceUpperOK = false;
};

struct DecomposedBall {
    CubeBall ball;
    Rational coreRadius;  // rhat; ball.radius lies in (rhat, 2*rhat)
    Chain inside;
    Chain slice;
    BallCertificate cert;
};

// Output of the decomposition: pairwise disjoint cubes, the restriction of
// the cycle to each, the refined remainder, and the degenerate correction
// chains with  z = sum(inside) + outside + boundary(prism) + flat  exactly.
struct BallDecomposition {
    std::vector<DecomposedBall> balls;
    Chain outside;
    Chain prism;
    Chain flat;
    double cycleVolume = 0.0;
    double coverage = 0.0;     // sum of inside volumes / cycleVolume
    double coverageRhs = 0.0;  // 5^{-n}
    bool coverageOK = false;
    bool disjoint = false;
    bool allCertified = false;
    int attempts = 0;
    double epsilonUsed = 0.0;

    BallDecomposition(int dim, int ambient, Ring ring)
        : outside(dim, ambient, ring), prism(dim + 1, ambient, ring), flat(dim, ambient, ring) {}
};

struct DecomposeOutcome {
    bool success = false;
    std::string message;
    BallDecomposition decomposition;
};

// Assembles a certified decomposition of the cycle z (dimension >= 2,
// positive volume): density radii at simplex barycenters plus seeded random
// support points, Vitali selection, slice-radius choice per selected center,
// then a-posteriori re-verification of all bounds with densified retries.
DecomposeOutcome decompose(const Chain& z, const ConstantsTable& table,
                           const DecomposeOptions& opts = {});

// Independent re-check of an emitted decomposition: re-clips from scratch,
// re-measures, re-tests every bound, and re-checks the exact restriction
// identity. Trusts nothing stored in the certificate fields.
bool verifyDecomposition(const Chain& z, const BallDecomposition& d, const ConstantsTable& table,
                         std::string* why = nullptr);

}  // namespace fillvol
