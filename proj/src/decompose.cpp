#include "fillvol/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace fillvol {

namespace {

constexpr double kRelSlack = 1e-9;

double u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double thresholdCurve(double densityEps, int n, double r) {
    return densityEps * std::pow(r, n);
}

RationalPoint barycenter(const AffineSimplex& s) {
    const int N = s.ambient();
    RationalPoint b;
    b.coords.assign(static_cast<std::size_t>(N), Rational(0));
    for (const auto& v : s.vertices)
        for (int j = 0; j < N; ++j) b.coords[j] += v.coords[j];
    const Rational count(static_cast<long>(s.vertices.size()));
    for (int j = 0; j < N; ++j) b.coords[j] /= count;
    return b;
}

std::vector<RationalPoint> randomSupportPoints(const Chain& z, int count, std::mt19937_64& rng) {
    std::vector<const AffineSimplex*> simplices;
    std::vector<double> cumulative;
    double total = 0.0;
    for (const auto& [s, m] : z.terms()) {
        total += std::abs(static_cast<double>(m)) * simplexVolume(s);
        simplices.push_back(&s);
        cumulative.push_back(total);
    }
    std::vector<RationalPoint> points;
    if (total <= 0.0) return points;
    points.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double pick = u01(rng) * total;
        const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), pick);
        const std::size_t idx = std::min(static_cast<std::size_t>(it - cumulative.begin()),
                                         simplices.size() - 1);
        const AffineSimplex& s = *simplices[idx];
        RationalPoint p;
        p.coords.assign(static_cast<std::size_t>(z.ambient()), Rational(0));
        Rational weightSum = 0;
        for (const auto& v : s.vertices) {
            const long w = 1 + static_cast<long>(rng() % 8);
            weightSum += w;
            for (int j = 0; j < z.ambient(); ++j) p.coords[j] += w * v.coords[j];
        }
        for (int j = 0; j < z.ambient(); ++j) p.coords[j] /= weightSum;
        points.push_back(std::move(p));
    }
    return points;
}

// Bumps r by tiny steps until no vertex of c sits at sup-distance exactly r
// from x. The bad set is finite, so this terminates.
Rational makeGeneric(const Chain& c, const RationalPoint& x, Rational r, const Rational& step0) {
    Rational step = step0;
    auto collides = [&](const Rational& radius) {
        for (const auto& [s, m] : c.terms()) {
            (void)m;
            for (const auto& v : s.vertices)
                if (cmp(distanceLInfExact(v, x), radius) == 0) return true;
        }
        return false;
    };
    while (collides(r)) {
        r += step;
        step /= 2;
    }
    return r;
}

// Same, against a sorted list of exact vertex distances.
Rational makeGenericSorted(const std::vector<Rational>& distances, Rational r,
                           const Rational& step0) {
    Rational step = step0;
    auto collides = [&](const Rational& radius) {
        return std::binary_search(distances.begin(), distances.end(), radius,
                                  [](const Rational& a, const Rational& b) { return cmp(a, b) < 0; });
    };
    while (collides(r)) {
        r += step;
        step /= 2;
    }
    return r;
}

std::uint64_t mixSeed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    return x;
}

}  // namespace

VolumeGrowth::VolumeGrowth(const Chain& z, RationalPoint center) : center_(std::move(center)) {
    const int N = z.ambient();
    centerD_.resize(static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j) centerD_[j] = center_.coords[j].get_d();
    entries_.reserve(z.size());
    for (const auto& [s, m] : z.terms()) {
        const double weight = std::abs(static_cast<double>(m));
        Entry e{&s, weight, weight * simplexVolume(s), 0.0,
                std::vector<double>(static_cast<std::size_t>(N), 1e300),
                std::vector<double>(static_cast<std::size_t>(N), -1e300)};
        for (const auto& v : s.vertices) {
            Rational d = distanceLInfExact(v, center_);
            e.farthest = std::max(e.farthest, d.get_d());
            distances_.push_back(std::move(d));
            for (int j = 0; j < N; ++j) {
                const double x = v.coords[j].get_d();
                e.bboxLo[j] = std::min(e.bboxLo[j], x);
                e.bboxHi[j] = std::max(e.bboxHi[j], x);
            }
        }
        total_ += e.weightedVolume;
        entries_.push_back(std::move(e));
    }
    if (distances_.empty()) distances_.push_back(Rational(0));
    std::sort(distances_.begin(), distances_.end(),
              [](const Rational& a, const Rational& b) { return cmp(a, b) < 0; });
    distances_.erase(std::unique(distances_.begin(), distances_.end(),
                                 [](const Rational& a, const Rational& b) { return cmp(a, b) == 0; }),
                     distances_.end());
}

double VolumeGrowth::operator()(const Rational& r) const {
    if (sgn(r) <= 0) return 0.0;
    if (cmp(r, distances_.back()) >= 0) return total_;
    const CubeBall ball(center_, r);
    const double rd = r.get_d();
    double total = 0.0;
    for (const Entry& e : entries_) {
        const double margin = 1e-9 * (1.0 + rd + e.farthest);
        // conservative double tests; only borderline simplices get cut. The
        // inside test may use vertex distances (convexity); the outside test
        // must use the bounding box, since a body can cross the cube even
        // when every vertex is far away.
        if (e.farthest < rd - margin) {
            total += e.weightedVolume;
            continue;
        }
        bool separated = false;
        for (std::size_t j = 0; j < centerD_.size() && !separated; ++j)
            separated = e.bboxLo[j] > centerD_[j] + rd + margin ||
                        e.bboxHi[j] < centerD_[j] - rd - margin;
        if (separated) continue;
        total += e.weight * restrictedVolume(*e.simplex, ball);
    }
    return total;
}

std::optional<Rational> computeR0(const Chain& z, const RationalPoint& x,
                                  const ConstantsTable& table, const DecomposeOptions& opts) {
    const int n = z.dim();
    const double eps = opts.epsilonOverride > 0.0 ? opts.epsilonOverride : table.at(n).epsilon;
    const double densityEps = table.at(n).density * eps;

    VolumeGrowth growth(z, x);
    const double total = growth.totalVolume();
    if (total <= 0.0) return std::nullopt;
    const Rational& maxDist = growth.farthestVertex();
    if (sgn(maxDist) <= 0) return std::nullopt;
    const double maxDistD = maxDist.get_d();

    std::optional<Rational> rhat;
    if (thresholdCurve(densityEps, n, maxDistD) <= total) {
        // saturated: V stays at the total while the threshold curve still has
        // to climb, so the last crossing is the closed-form root
        const double root = std::pow(total / densityEps, 1.0 / n);
        Rational cand = dyadicApprox(root * (1.0 - 0x1.0p-10), 24);
        if (cmp(cand, maxDist) > 0 && growth(cand) >= thresholdCurve(densityEps, n, cand.get_d()))
            rhat = cand;
    }
    if (!rhat) {
        const int grid = std::max(opts.radiusGridPoints, 4);
        std::optional<int> found;
        for (int i = grid - 1; i >= 1; --i) {
            const Rational r = maxDist * i / grid;
            if (growth(r) >= thresholdCurve(densityEps, n, r.get_d())) {
                found = i;
                break;
            }
        }
        if (!found) return std::nullopt;
        Rational lo = maxDist * (*found) / grid;
        Rational hi = maxDist * (*found + 1) / grid;
        for (int step = 0; step < opts.bisectionSteps; ++step) {
            const Rational mid = (lo + hi) / 2;
            if (growth(mid) >= thresholdCurve(densityEps, n, mid.get_d()))
                lo = mid;
            else
                hi = mid;
        }
        rhat = lo;
    }

    // refinement-grid check over (rhat, 5*rhat]: every sampled radius must
    // stay below the threshold curve, otherwise a later crossing was missed
    // and the scan resumes from there
    const int K = std::max(opts.validationGridPoints, 4);
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::optional<Rational> offender;
        for (int j = 1; j <= K; ++j) {
            const Rational r = *rhat * (K + 4 * j) / K;
            if (growth(r) >= thresholdCurve(densityEps, n, r.get_d())) {
                offender = r;
                break;
            }
        }
        if (!offender) return rhat;
        rhat = *offender;
    }
    return std::nullopt;
}

std::vector<std::size_t> vitaliSelect(
    const std::vector<std::pair<RationalPoint, Rational>>& candidates) {
    if (candidates.empty()) throw std::invalid_argument("vitaliSelect: empty candidate list");
    std::vector<std::size_t> order(candidates.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return cmp(candidates[a].second, candidates[b].second) > 0;
    });
    std::vector<std::size_t> accepted;
    std::vector<CubeBall> cubes;
    for (std::size_t idx : order) {
        if (sgn(candidates[idx].second) <= 0)
            throw std::invalid_argument("vitaliSelect: nonpositive radius");
        CubeBall cube(candidates[idx].first, 2 * candidates[idx].second);
        bool ok = true;
        for (const CubeBall& other : cubes)
            if (!cubesDisjoint(cube, other)) {
                ok = false;
                break;
            }
        if (ok) {
            accepted.push_back(idx);
            cubes.push_back(std::move(cube));
        }
    }
    return accepted;
}

SliceChoice chooseSliceRadius(const Chain& z, const RationalPoint& x, const Rational& rhat,
                              const ConstantsTable& table, const DecomposeOptions& opts) {
    const int n = z.dim();
    if (n < 1) throw std::invalid_argument("chooseSliceRadius: dimension must be >= 1");
    const double eps = opts.epsilonOverride > 0.0 ? opts.epsilonOverride : table.at(n).epsilon;
    const double densityEps = table.at(n).density * eps;
    const double coarea = table.at(n).coareaFactor;

    std::mt19937_64 rng(mixSeed(opts.seed, 0x51cede));
    const int samples = std::max(opts.sliceSamples, 1);
    const Rational nudge = rhat / (1 << 24);
    const VolumeGrowth growth(z, x);

    std::optional<SliceChoice> best;
    double bestScore = 0.0;
    for (int j = 0; j < samples; ++j) {
        // stratified jitter over (1.05, 1.90)*rhat keeps a strict margin to
        // both ends of the admissible interval
        const double u = (j + u01(rng)) / samples;
        Rational r = rhat * dyadicApprox(1.05 + 0.85 * u, 20);
        r = makeGenericSorted(growth.vertexDistances(), std::move(r), nudge);
        const double insideVol = growth(r);
        Chain slice = boundarySlice(z, CubeBall(x, r));
        const double sliceVol = chainVolume(slice);
        const double rhs = coarea * std::pow(densityEps, 1.0 / n) * n *
                           std::pow(std::max(insideVol, 0.0), (n - 1.0) / n);
        if (sliceVol < rhs) {
            return SliceChoice{std::move(r), std::move(slice), true, insideVol, sliceVol, rhs};
        }
        const double score = sliceVol / std::max(std::pow(insideVol, (n - 1.0) / n), 1e-300);
        if (!best || score < bestScore) {
            bestScore = score;
            best = SliceChoice{std::move(r), std::move(slice), false, insideVol, sliceVol, rhs};
        }
    }
    return *best;
}

DecomposeOutcome decompose(const Chain& z, const ConstantsTable& table,
                           const DecomposeOptions& opts) {
    const int n = z.dim();
    if (n < 2) throw std::invalid_argument("decompose: cycle dimension must be >= 2");
    if (!isCycle(z)) throw std::invalid_argument("decompose: input must be a cycle");
    const double cycleVol = chainVolume(z);
    if (!(cycleVol > 0.0)) throw std::invalid_argument("decompose: cycle volume must be positive");

    const double eps = opts.epsilonOverride > 0.0 ? opts.epsilonOverride : table.at(n).epsilon;
    const double densityEps = table.at(n).density * eps;
    const double coarea = table.at(n).coareaFactor;
    const double coverageRhs = std::pow(5.0, -n);

    DecomposeOutcome outcome{false, "", BallDecomposition(n, z.ambient(), z.ring())};
    double bestCoverage = -1.0;

    for (int attempt = 0; attempt <= opts.retryCap; ++attempt) {
        DecomposeOptions local = opts;
        local.seed = mixSeed(opts.seed, static_cast<std::uint64_t>(attempt));
        local.sliceSamples = std::min(opts.sliceSamples << attempt, opts.sliceSampleCap);
        local.randomCandidates = opts.randomCandidates << std::min(attempt, 8);
        local.radiusGridPoints = std::min(opts.radiusGridPoints << std::min(attempt, 3), 1024);

        // candidate centers: simplex barycenters (strided down to the cap on
        // large chains) plus seeded random support points, volume-weighted
        std::vector<RationalPoint> centers;
        const std::size_t cap =
            static_cast<std::size_t>(opts.candidateCap) << std::min(attempt, 6);
        const std::size_t stride = z.size() > cap ? (z.size() + cap - 1) / cap : 1;
        std::size_t index = 0;
        for (const auto& [s, m] : z.terms()) {
            (void)m;
            if (index++ % stride == 0) centers.push_back(barycenter(s));
        }
        std::mt19937_64 rng(mixSeed(local.seed, 0xca11));
        for (auto& p : randomSupportPoints(z, local.randomCandidates, rng))
            centers.push_back(std::move(p));

        std::vector<std::pair<RationalPoint, Rational>> withRadius;
        for (auto& x : centers) {
            auto rhat = computeR0(z, x, table, local);
            if (rhat) withRadius.emplace_back(std::move(x), std::move(*rhat));
        }
        if (withRadius.empty()) continue;

        const std::vector<std::size_t> selected = vitaliSelect(withRadius);

        struct Pending {
            RationalPoint center;
            Rational coreRadius;
            Rational radius;
        };
        std::vector<Pending> pending;
        for (std::size_t idx : selected) {
            SliceChoice choice =
                chooseSliceRadius(z, withRadius[idx].first, withRadius[idx].second, table, local);
            if (!choice.boundOK) continue;
            pending.push_back(
                {withRadius[idx].first, withRadius[idx].second, std::move(choice.radius)});
        }
        if (pending.empty()) continue;

        BallDecomposition d(n, z.ambient(), z.ring());
        d.cycleVolume = cycleVol;
        d.coverageRhs = coverageRhs;
        d.epsilonUsed = eps;
        d.attempts = attempt + 1;

        Chain running = z;
        bool certOK = true;
        double insideTotal = 0.0;
        for (Pending& p : pending) {
            // the running remainder carries cut vertices from earlier balls;
            // stay generic against those too
            const Rational radius =
                makeGeneric(running, p.center, std::move(p.radius), p.coreRadius / (1 << 26));
            CubeBall ball(p.center, radius);
            CubeRestriction restr = restrictToBall(running, ball);
            d.prism = add(d.prism, restr.prism);
            d.flat = add(d.flat, restr.flat);
            running = std::move(restr.outside);

            DecomposedBall entry{std::move(ball), p.coreRadius, std::move(restr.inside),
                                 Chain(n - 1, z.ambient(), z.ring()), BallCertificate{}};
            entry.slice = boundary(entry.inside);
            entry.cert.insideVolume = chainVolume(entry.inside);
            entry.cert.sliceVolume = chainVolume(entry.slice);
            entry.cert.diameter = 2.0 * entry.ball.radius.get_d();
            entry.cert.volumeLowerRhs =
                std::pow(4.0, -n) * densityEps * std::pow(entry.cert.diameter, n);
            entry.cert.sliceUpperRhs = coarea * std::pow(densityEps, 1.0 / n) * n *
                                       std::pow(entry.cert.insideVolume, (n - 1.0) / n);
            entry.cert.volumeLowerOK =
                entry.cert.insideVolume >= entry.cert.volumeLowerRhs * (1.0 - kRelSlack);
            entry.cert.sliceUpperOK =
                entry.cert.sliceVolume <= entry.cert.sliceUpperRhs * (1.0 + kRelSlack);
            certOK = certOK && entry.cert.volumeLowerOK && entry.cert.sliceUpperOK;
            insideTotal += entry.cert.insideVolume;
            d.balls.push_back(std::move(entry));
        }
        d.outside = std::move(running);
        d.coverage = insideTotal / cycleVol;
        d.coverageOK = d.coverage >= coverageRhs * (1.0 - kRelSlack);

        d.disjoint = true;
        for (std::size_t i = 0; i < d.balls.size() && d.disjoint; ++i)
            for (std::size_t j = i + 1; j < d.balls.size(); ++j)
                if (!cubesDisjoint(d.balls[i].ball, d.balls[j].ball)) {
                    d.disjoint = false;
                    break;
                }

        d.allCertified = certOK && d.coverageOK && d.disjoint;
        if (d.allCertified) {
            outcome.success = true;
            outcome.decomposition = std::move(d);
            outcome.message = "certified";
            return outcome;
        }
        if (d.coverage > bestCoverage) {
            bestCoverage = d.coverage;
            outcome.decomposition = std::move(d);
        }
    }

    outcome.success = false;
    outcome.message =
        bestCoverage < 0.0
            ? "retry cap exceeded; no candidate balls assembled (density radii or slice "
              "bounds failed at every sampled center)"
            : "retry cap exceeded; best coverage " + std::to_string(bestCoverage) +
                  " against required " + std::to_string(coverageRhs);
    return outcome;
}

bool verifyDecomposition(const Chain& z, const BallDecomposition& d, const ConstantsTable& table,
                         std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    const int n = z.dim();
    if (d.balls.empty()) return fail("no balls");
    const double eps = d.epsilonUsed > 0.0 ? d.epsilonUsed : table.at(n).epsilon;
    const double densityEps = table.at(n).density * eps;
    const double coarea = table.at(n).coareaFactor;

    for (std::size_t i = 0; i < d.balls.size(); ++i)
        for (std::size_t j = i + 1; j < d.balls.size(); ++j)
            if (!cubesDisjoint(d.balls[i].ball, d.balls[j].ball))
                return fail("balls not exactly disjoint");

    // exact restriction identity of the stored decomposition
    Chain assembled = d.outside;
    for (const auto& b : d.balls) assembled = add(assembled, b.inside);
    assembled = add(assembled, add(boundary(d.prism), d.flat));
    if (assembled != z) return fail("restriction identity violated");

    for (const auto& [s, m] : d.prism.terms()) {
        (void)m;
        if (sgn(simplexGramDet(s)) != 0) return fail("prism correction has nonzero volume");
    }
    for (const auto& [s, m] : d.flat.terms()) {
        (void)m;
        if (sgn(simplexGramDet(s)) != 0) return fail("flat correction has nonzero volume");
    }
    if (isCycle(z) && !isCycle(d.flat)) return fail("flat correction is not a cycle");

    const double cycleVol = chainVolume(z);
    double insideTotal = 0.0;
    for (const auto& b : d.balls) {
        if (boundary(b.inside) != b.slice) return fail("stored slice is not boundary(inside)");
        for (const auto& [s, m] : b.inside.terms()) {
            (void)m;
            for (const auto& v : s.vertices)
                if (!cubeContains(b.ball, v)) return fail("inside chain leaves its ball");
        }
        // re-clip from the original cycle and re-measure
        CubeRestriction fresh = restrictToBall(z, b.ball);
        const double freshVol = chainVolume(fresh.inside);
        const double freshSlice = chainVolume(boundary(fresh.inside));
        const double storedVol = chainVolume(b.inside);
        if (std::abs(freshVol - storedVol) > 1e-9 * std::max(1.0, freshVol))
            return fail("stored inside volume disagrees with re-clip");
        const double diam = 2.0 * b.ball.radius.get_d();
        if (freshVol < std::pow(4.0, -n) * densityEps * std::pow(diam, n) * (1.0 - kRelSlack))
            return fail("bound (volume lower) fails on re-check");
        const double rhs =
            coarea * std::pow(densityEps, 1.0 / n) * n * std::pow(freshVol, (n - 1.0) / n);
        if (freshSlice > rhs * (1.0 + kRelSlack)) return fail("bound (slice upper) fails on re-check");
        insideTotal += freshVol;
    }
    if (insideTotal < std::pow(5.0, -n) * cycleVol * (1.0 - kRelSlack))
        return fail("coverage bound fails on re-check");
    return true;
}

}  // namespace fillvol
