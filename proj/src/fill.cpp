#include "fillvol/fill.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace fillvol {

namespace {

constexpr double kRelSlack = 1e-9;

bool leqSlack(double lhs, double rhs) {
    return lhs <= rhs * (1.0 + kRelSlack) + 1e-300;
}

const RationalPoint& lexMinVertex(const Chain& c) {
    const RationalPoint* best = nullptr;
    for (const auto& [s, m] : c.terms()) {
        (void)m;
        for (const auto& v : s.vertices)
            if (!best || comparePoints(v, *best) < 0) best = &v;
    }
    if (!best) throw std::invalid_argument("lexMinVertex: empty chain");
    return *best;
}

double maxSupDistance(const RationalPoint& apex, const Chain& c) {
    Rational best = 0;
    for (const auto& [s, m] : c.terms()) {
        (void)m;
        for (const auto& v : s.vertices) {
            Rational d = distanceLInfExact(v, apex);
            if (cmp(d, best) > 0) best = std::move(d);
        }
    }
    return best.get_d();
}

// Connected components of the support graph (simplices joined by shared
// vertices), returned as sub-chains.
std::vector<Chain> supportComponents(const Chain& c) {
    std::vector<const AffineSimplex*> simplices;
    std::vector<Coeff> coeffs;
    for (const auto& [s, m] : c.terms()) {
        simplices.push_back(&s);
        coeffs.push_back(m);
    }
    const std::size_t n = simplices.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    };
    auto unite = [&](std::size_t a, std::size_t b) { parent[find(a)] = find(b); };

    std::map<RationalPoint, std::size_t> firstSeen;
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& v : simplices[i]->vertices) {
            auto [it, inserted] = firstSeen.emplace(v, i);
            if (!inserted) unite(i, it->second);
        }

    std::map<std::size_t, Chain> groups;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t root = find(i);
        auto it = groups.find(root);
        if (it == groups.end())
            it = groups.emplace(root, Chain(c.dim(), c.ambient(), c.ring())).first;
        it->second.addTerm(*simplices[i], coeffs[i]);
    }
    std::vector<Chain> out;
    out.reserve(groups.size());
    for (auto& [root, chain] : groups) {
        (void)root;
        out.push_back(std::move(chain));
    }
    return out;
}

// Exact zero-volume test: every term must have Gram determinant zero.
bool exactlyDegenerate(const Chain& c) {
    for (const auto& [s, m] : c.terms()) {
        (void)m;
        if (sgn(simplexGramDet(s)) != 0) return false;
    }
    return true;
}

FillResult failedResult(const Chain& z, double cycleVol, double bound, std::string why) {
    FillResult r(z.dim(), z.ambient(), z.ring());
    r.succeeded = false;
    r.failure = std::move(why);
    r.cycleVolume = cycleVol;
    r.certifiedBound = bound;
    return r;
}

}  // namespace

bool RoundRecord::allOK() const {
    if (!coverageOK || !decayOK || !volumeSumOK || !subadditivityOK || !correctionsZero)
        return false;
    for (const auto& b : balls)
        if (!(b.patchSmall && b.massOK && b.roundOK && b.cone.ok && b.containment && b.certI &&
              b.certII))
            return false;
    return true;
}

FillResult fillBaseCase(const Chain& z) {
    if (z.dim() != 1) throw std::invalid_argument("fillBaseCase: chain dimension must be 1");
    if (!isCycle(z)) throw std::invalid_argument("fillBaseCase: input must be a cycle");

    const double sqrtN = std::sqrt(static_cast<double>(z.ambient()));
    const double coneFactor = sqrtN / 2.0;      // cone over a 1-cycle
    const double bound = coneFactor / 2.0;      // with diameter <= length/2

    FillResult result(1, z.ambient(), z.ring());
    result.certifiedBound = bound;
    result.cycleVolume = chainVolume(z);
    if (z.empty()) {
        result.succeeded = true;
        result.boundaryExact = true;
        result.certificatesPass = true;
        return result;
    }

    bool conesOK = true;
    for (const Chain& component : supportComponents(z)) {
        const RationalPoint apex = lexMinVertex(component);
        Chain cone = coneOverChain(apex, component);
        ConeRecord record;
        record.cycleVolume = chainVolume(component);
        record.radius = maxSupDistance(apex, component);
        record.coneVolume = chainVolume(cone);
        record.coneBound = coneFactor * record.radius * record.cycleVolume;
        // the closed even-degree component keeps apex distances within half
        // its length; both halves of the certificate are checked
        record.ok = leqSlack(record.coneVolume, record.coneBound) &&
                    leqSlack(record.radius, record.cycleVolume / 2.0);
        conesOK = conesOK && record.ok;
        result.components.push_back(record);
        result.fill = add(result.fill, cone);
    }

    result.boundaryExact = boundary(result.fill) == z;
    result.totalVolume = chainVolume(result.fill);
    result.ratio = result.cycleVolume > 0.0
                       ? result.totalVolume / (result.cycleVolume * result.cycleVolume)
                       : 0.0;
    result.certificatesPass =
        conesOK && result.boundaryExact && leqSlack(result.ratio, result.certifiedBound);
    result.succeeded = true;
    return result;
}

FillResult fillInductive(const Chain& z, const ConstantsTable& table, const FillOptions& opts) {
    const int n = z.dim();
    if (n < 2) throw std::invalid_argument("fillInductive: chain dimension must be >= 2");
    if (n > table.n) throw std::invalid_argument("fillInductive: constants table too small");
    if (z.ambient() != table.ambient)
        throw std::invalid_argument("fillInductive: ambient dimension disagrees with table");
    if (!isCycle(z)) throw std::invalid_argument("fillInductive: input must be a cycle");

    const double cycleVol = chainVolume(z);
    const double bound = table.at(n).fillingBound;
    const double coneFactor = table.at(n).coneFactor;
    const double prevBound = table.at(n - 1).fillingBound;
    const double densityEps = table.at(n).density * table.at(n).epsilon;
    const double decay = 1.0 - 0.75 * std::pow(5.0, -n);
    const int maxRounds = opts.maxRounds > 0
                              ? opts.maxRounds
                              : static_cast<int>(std::ceil(std::log(opts.theta) / std::log(decay))) + 8;

    FillResult result(n, z.ambient(), z.ring());
    result.cycleVolume = cycleVol;
    result.certifiedBound = bound;

    Chain current = z;
    double currentVol = cycleVol;
    for (int round = 0; !current.empty() && currentVol > opts.theta * cycleVol; ++round) {
        if (round >= maxRounds) break;

        DecomposeOptions dopts = opts.decompose;
        dopts.seed = opts.seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(round + 1);
        DecomposeOutcome outcome = decompose(current, table, dopts);
        if (!outcome.success) {
            FillResult failed = failedResult(z, cycleVol, bound,
                                             "decomposition failed in round " +
                                                 std::to_string(round) + ": " + outcome.message);
            failed.rounds = std::move(result.rounds);
            return failed;
        }
        const BallDecomposition& d = outcome.decomposition;

        RoundRecord rec;
        rec.startVolume = currentVol;
        rec.coverage = d.coverage;
        rec.coverageOK = d.allCertified;
        rec.decomposeAttempts = d.attempts;

        Chain patchSum(n, z.ambient(), z.ring());
        double roundedSum = 0.0;
        double roundedPowSum = 0.0;
        for (const DecomposedBall& b : d.balls) {
            BallFillRecord br;
            br.insideVolume = b.cert.insideVolume;
            br.sliceVolume = b.cert.sliceVolume;
            br.certI = b.cert.volumeLowerOK;
            br.certII = b.cert.sliceUpperOK;

            FillOptions sub = opts;
            sub.seed = dopts.seed + 0x632be59bd9b4e019ULL * (result.rounds.size() + 1) +
                       static_cast<std::uint64_t>(rec.balls.size());
            FillResult sliceFill = n - 1 == 1 ? fillBaseCase(b.slice)
                                              : fillInductive(b.slice, table, sub);
            if (!sliceFill.succeeded) {
                FillResult failed =
                    failedResult(z, cycleVol, bound, "slice fill failed: " + sliceFill.failure);
                failed.rounds = std::move(result.rounds);
                return failed;
            }
            Chain patch = clampToBall(sliceFill.fill, b.ball);
            if (boundary(patch) != b.slice)
                throw std::logic_error("fillInductive: clamped patch boundary mismatch");
            br.patchVolume = chainVolume(patch);
            br.patchBound =
                prevBound * std::pow(br.sliceVolume, static_cast<double>(n) / (n - 1));
            br.patchSmall = leqSlack(br.patchVolume, br.patchBound) &&
                            leqSlack(br.patchVolume, br.insideVolume / 4.0);

            Chain rounded = subtract(b.inside, patch);
            if (!isCycle(rounded))
                throw std::logic_error("fillInductive: rounded chain is not a cycle");
            br.roundedVolume = chainVolume(rounded);
            br.massLo = 0.75 * br.insideVolume;
            br.massHi = 1.25 * br.insideVolume;
            br.massOK = br.roundedVolume >= br.massLo * (1.0 - kRelSlack) &&
                        leqSlack(br.roundedVolume, br.massHi);
            br.diameter = rounded.empty() ? 0.0 : chainDiameter(rounded, MetricKind::LInf);
            br.roundRhs = std::pow(std::pow(4.0, n + 1) / (3.0 * densityEps), 1.0 / n) *
                          std::pow(br.roundedVolume, 1.0 / n);
            br.roundOK = leqSlack(br.diameter, br.roundRhs);

            Chain cone = coneOverChain(b.ball.center, rounded);
            br.containment = cubeContainsChain(b.ball, cone);
            br.cone.cycleVolume = br.roundedVolume;
            br.cone.radius = b.ball.radius.get_d();
            br.cone.coneVolume = chainVolume(cone);
            br.cone.coneBound = coneFactor * br.cone.radius * br.roundedVolume;
            br.cone.ok = leqSlack(br.cone.coneVolume, br.cone.coneBound);

            result.fill = add(result.fill, cone);
            patchSum = add(patchSum, patch);
            roundedSum += br.roundedVolume;
            roundedPowSum += std::pow(br.roundedVolume, (n + 1.0) / n);
            rec.balls.push_back(std::move(br));
        }

        // the degenerate corrections close the gap between the refined and
        // the stored cycle; they are coned at exactly zero volume
        rec.correctionsZero = exactlyDegenerate(d.prism) && exactlyDegenerate(d.flat);
        result.fill = add(result.fill, d.prism);
        if (!d.flat.empty()) {
            if (!isCycle(d.flat))
                throw std::logic_error("fillInductive: flat correction is not a cycle");
            Chain flatCone = coneOverChain(lexMinVertex(d.flat), d.flat);
            rec.correctionsZero = rec.correctionsZero && exactlyDegenerate(flatCone);
            result.fill = add(result.fill, flatCone);
        }

        Chain residual = add(d.outside, patchSum);
        if (!isCycle(residual))
            throw std::logic_error("fillInductive: residual is not a cycle");
        rec.residualVolume = chainVolume(residual);
        rec.decayBound = decay * rec.startVolume;
        rec.decayOK = leqSlack(rec.residualVolume, rec.decayBound);
        rec.volumeSumLhs = 0.6 * roundedSum + rec.residualVolume;
        rec.volumeSumOK = leqSlack(rec.volumeSumLhs, rec.startVolume);
        rec.subadditivityOK = leqSlack(roundedPowSum, std::pow(roundedSum, (n + 1.0) / n));

        result.rounds.push_back(std::move(rec));
        current = std::move(residual);
        currentVol = result.rounds.back().residualVolume;
    }

    if (!current.empty()) {
        const CubeBall ball = containingBall(current);
        Chain cone = coneOverChain(ball.center, current);
        ConeRecord rc;
        rc.cycleVolume = currentVol;
        rc.radius = ball.radius.get_d();
        rc.coneVolume = chainVolume(cone);
        rc.coneBound = coneFactor * rc.radius * rc.cycleVolume;
        rc.ok = leqSlack(rc.coneVolume, rc.coneBound);
        result.residualCone = rc;
        result.fill = add(result.fill, cone);
    }

    result.boundaryExact = boundary(result.fill) == z;
    result.totalVolume = chainVolume(result.fill);
    result.ratio =
        cycleVol > 0.0 ? result.totalVolume / std::pow(cycleVol, (n + 1.0) / n) : 0.0;
    bool stagesOK = true;
    for (const auto& r : result.rounds) stagesOK = stagesOK && r.allOK();
    if (result.residualCone) stagesOK = stagesOK && result.residualCone->ok;
    result.certificatesPass =
        stagesOK && result.boundaryExact && leqSlack(result.ratio, result.certifiedBound);
    result.succeeded = true;
    return result;
}

FillResult fillCycle(const Chain& z, const ConstantsTable& table, const FillOptions& opts) {
    if (z.dim() == 1) return fillBaseCase(z);
    return fillInductive(z, table, opts);
}

std::string VerifyReport::summary() const {
    std::ostringstream out;
    out << (boundaryExact ? "PASS" : "FAIL") << " boundary identity; "
        << (volumeMatches ? "PASS" : "FAIL") << " volume (recomputed " << recomputedVolume
        << "); " << (ratioMatches ? "PASS" : "FAIL") << " ratio (recomputed " << recomputedRatio
        << "); " << (withinBound ? "PASS" : "FAIL") << " certified bound";
    return out.str();
}

VerifyReport verifyFill(const Chain& z, const FillResult& result) {
    VerifyReport report;
    report.boundaryExact = boundary(result.fill) == z;
    report.recomputedVolume = chainVolume(result.fill);
    report.volumeMatches = std::abs(report.recomputedVolume - result.totalVolume) <=
                           1e-9 * std::max(1.0, std::abs(report.recomputedVolume));
    const double cycleVol = chainVolume(z);
    const double expo = z.dim() >= 1 ? 1.0 + 1.0 / z.dim() : 1.0;
    report.recomputedRatio =
        cycleVol > 0.0 ? report.recomputedVolume / std::pow(cycleVol, expo) : 0.0;
    report.ratioMatches = std::abs(report.recomputedRatio - result.ratio) <=
                          1e-9 * std::max(1.0, std::abs(report.recomputedRatio));
    report.withinBound = report.recomputedRatio <= result.certifiedBound * (1.0 + 1e-9);
    return report;
}

}  // namespace fillvol
