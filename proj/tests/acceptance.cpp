// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Usage: acceptance [path-to-fillvol-cli]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fillvol/chain_io.hpp"
#include "fillvol/constants.hpp"
#include "fillvol/decompose.hpp"
#include "fillvol/fill.hpp"
#include "fillvol/generators.hpp"
#include "fillvol/geometry_ops.hpp"
#include "fillvol/metric.hpp"
#include "test_support.hpp"

using namespace fillvol;
using namespace fillvol::testing;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double u01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// --- criterion 4 oracle: rejection-sampling Hausdorff volume -------------
// Orthonormalize the edge vectors, express the simplex in its own plane
// coordinates, and estimate the k-volume as bbox volume times hit rate.
double monteCarloVolume(const AffineSimplex& s, long samples, std::mt19937_64& rng) {
    const int k = s.dim();
    const int N = s.ambient();
    std::vector<std::vector<double>> edges(k, std::vector<double>(N));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < N; ++j)
            edges[i][j] =
                Rational(s.vertices[i + 1].coords[j] - s.vertices[0].coords[j]).get_d();

    std::vector<std::vector<double>> basis;
    for (int i = 0; i < k; ++i) {
        std::vector<double> q = edges[i];
        for (const auto& b : basis) {
            double dot = 0;
            for (int j = 0; j < N; ++j) dot += edges[i][j] * b[j];
            for (int j = 0; j < N; ++j) q[j] -= dot * b[j];
        }
        double norm = 0;
        for (int j = 0; j < N; ++j) norm += q[j] * q[j];
        norm = std::sqrt(norm);
        if (norm < 1e-12) return 0.0;
        for (int j = 0; j < N; ++j) q[j] /= norm;
        basis.push_back(std::move(q));
    }

    // plane coordinates of the k+1 vertices (v0 at the origin)
    std::vector<std::vector<double>> plane(k + 1, std::vector<double>(k, 0.0));
    for (int v = 1; v <= k; ++v)
        for (int b = 0; b < k; ++b) {
            double dot = 0;
            for (int j = 0; j < N; ++j) dot += edges[v - 1][j] * basis[b][j];
            plane[v][b] = dot;
        }

    std::vector<double> lo(k, 0.0), hi(k, 0.0);
    for (int v = 0; v <= k; ++v)
        for (int b = 0; b < k; ++b) {
            lo[b] = std::min(lo[b], plane[v][b]);
            hi[b] = std::max(hi[b], plane[v][b]);
        }
    double boxVol = 1.0;
    for (int b = 0; b < k; ++b) boxVol *= hi[b] - lo[b];
    if (boxVol <= 0.0) return 0.0;

    // invert the edge matrix in plane coordinates for barycentric tests
    std::vector<std::vector<double>> m(k, std::vector<double>(2 * k, 0.0));
    for (int r = 0; r < k; ++r) {
        for (int c = 0; c < k; ++c) m[r][c] = plane[c + 1][r];
        m[r][k + r] = 1.0;
    }
    for (int col = 0; col < k; ++col) {
        int pivot = col;
        for (int r = col + 1; r < k; ++r)
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        std::swap(m[pivot], m[col]);
        if (std::abs(m[col][col]) < 1e-14) return 0.0;
        const double inv = 1.0 / m[col][col];
        for (int c = 0; c < 2 * k; ++c) m[col][c] *= inv;
        for (int r = 0; r < k; ++r) {
            if (r == col) continue;
            const double f = m[r][col];
            for (int c = 0; c < 2 * k; ++c) m[r][c] -= f * m[col][c];
        }
    }

    long hits = 0;
    std::vector<double> x(k), lambda(k);
    for (long it = 0; it < samples; ++it) {
        for (int b = 0; b < k; ++b) x[b] = lo[b] + u01(rng) * (hi[b] - lo[b]);
        double sum = 0;
        bool ok = true;
        for (int r = 0; r < k && ok; ++r) {
            double l = 0;
            for (int c = 0; c < k; ++c) l += m[r][k + c] * x[c];
            if (l < 0.0) ok = false;
            lambda[r] = l;
            sum += l;
        }
        if (ok && sum <= 1.0) ++hits;
    }
    return boxVol * static_cast<double>(hits) / static_cast<double>(samples);
}

// --------------------------------------------------------------------------

Outcome criterion1() {
    std::mt19937_64 rng(101);
    int tested = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int dim = 2 + static_cast<int>(rng() % 2);  // dd needs dim >= 2
        const int ambient = dim + 1 + static_cast<int>(rng() % (6 - dim));
        const Ring ring = (rng() & 1) ? Ring::Z : Ring::Z2;
        const Chain c = randomChain(dim, ambient, ring, 4 + static_cast<int>(rng() % 5), rng);
        if (!boundary(boundary(c)).empty())
            return {false, "dd != 0 at trial " + std::to_string(trial)};
        ++tested;
    }
    return {true, std::to_string(tested) + " random chains, exact"};
}

Outcome criterion2() {
    std::mt19937_64 rng(202);
    int tested = 0;
    for (int trial = 0; trial < 110; ++trial) {
        Chain z = trial % 11 == 0
                      ? polygonLoop(3 + trial % 9, 3)
                      : randomBoundary(1 + trial % 2, 4 + trial % 4, 7000 + trial, 4);
        if (trial % 17 == 0) z = octahedron();
        const RationalPoint apex =
            trial % 3 == 0 ? randomPoint(z.ambient(), rng) : z.terms().begin()->first.vertices[0];
        const Chain cone = coneOverChain(apex, z);
        if (boundary(cone) != z) return {false, "cone identity broken at trial " + std::to_string(trial)};
        Rational rmax = 0;
        for (const auto& [s, m] : z.terms()) {
            (void)m;
            for (const auto& v : s.vertices) {
                Rational d = distanceLInfExact(v, apex);
                if (cmp(d, rmax) > 0) rmax = d;
            }
        }
        const double bound = std::sqrt(static_cast<double>(z.ambient())) * rmax.get_d() /
                             (z.dim() + 1) * chainVolume(z);
        if (chainVolume(cone) > bound * (1.0 + 1e-9))
            return {false, "cone volume bound broken at trial " + std::to_string(trial)};
        ++tested;
    }
    return {true, std::to_string(tested) + " cycles, identity exact, bound within 1e-9"};
}

Outcome criterion3() {
    std::mt19937_64 rng(303);
    int tested = 0;
    for (int trial = 0; tested < 500 && trial < 1500; ++trial) {
        Chain z = trial % 5 == 0 ? octahedron()
                                 : randomBoundary(1 + trial % 2, 4 + trial % 5,
                                                  11000 + trial, 3);
        if (trial % 7 == 0) z = squareLoop(3);
        CubeBall ball(randomPoint(3, rng), ratio(1 + static_cast<long>(rng() % 24), 8));
        std::optional<CubeRestriction> r;
        try {
            r = restrictToBall(z, ball);
        } catch (const DegenerateRadiusError&) {
            continue;
        }
        const double lhs = chainVolume(r->inside) + chainVolume(r->outside);
        const double rhs = chainVolume(z);
        if (std::abs(lhs - rhs) > 1e-9 * std::max(1.0, rhs))
            return {false, "volume conservation broken at trial " + std::to_string(trial)};
        const Chain slice = r->inside.empty() ? Chain(z.dim() - 1, 3, z.ring())
                                              : boundary(r->inside);
        if (slice.dim() >= 1) {
            if (!isCycle(slice))
                return {false, "slice is not a cycle at trial " + std::to_string(trial)};
        } else {
            Coeff total = 0;  // 0-dimensional slices must have zero net weight
            for (const auto& [s, m] : slice.terms()) {
                (void)s;
                total += m;
            }
            if (z.ring() == Ring::Z2) total %= 2;
            if (total != 0)
                return {false, "slice weights do not cancel at trial " + std::to_string(trial)};
        }
        if (tested % 25 == 0 && sliceAtRadius(z, ball) != slice)
            return {false, "slice law broken at trial " + std::to_string(trial)};
        ++tested;
    }
    if (tested < 500) return {false, "only " + std::to_string(tested) + " generic pairs"};
    return {true, std::to_string(tested) + " cycle/cube pairs within 1e-9, slices exact"};
}

Outcome criterion4() {
    std::mt19937_64 rng(404);
    int tested = 0;
    double worst = 0.0;
    while (tested < 20) {
        const int k = 1 + static_cast<int>(rng() % 3);
        std::vector<RationalPoint> verts;
        for (int v = 0; v <= k; ++v) {
            std::vector<Rational> coords;
            for (int j = 0; j < 5; ++j)
                coords.emplace_back(ratio(static_cast<long>(rng() % 65) - 32, 16));
            verts.emplace_back(std::move(coords));
        }
        const AffineSimplex s{verts};
        const double gram = simplexVolume(s);
        if (gram < 0.3) continue;  // keep the estimator's hit rate workable
        const double mc = monteCarloVolume(s, 2000000, rng);
        const double rel = std::abs(mc - gram) / gram;
        worst = std::max(worst, rel);
        if (rel > 0.01)
            return {false, "relative error " + std::to_string(rel) + " on simplex " +
                               std::to_string(tested)};
        ++tested;
    }
    std::ostringstream detail;
    detail << "20 simplices, worst relative error " << worst;
    return {true, detail.str()};
}

Outcome criterion5() {
    const ConstantsTable table = buildConstants(2, 3);
    const std::vector<std::pair<std::string, Chain>> gallery = {
        {"octahedron", octahedron()},
        {"subdivided-sphere:1", subdividedSphere(1)},
        {"subdivided-sphere:2", subdividedSphere(2)},
        {"torus-grid:4x4", torusGrid(4, 4)},
    };
    std::ostringstream detail;
    for (const auto& [name, z] : gallery) {
        const DecomposeOutcome outcome = decompose(z, table);
        if (!outcome.success) return {false, name + ": " + outcome.message};
        std::string why;
        if (!verifyDecomposition(z, outcome.decomposition, table, &why))
            return {false, name + ": re-verification failed: " + why};
        detail << name << "=" << outcome.decomposition.balls.size() << " balls, coverage "
               << outcome.decomposition.coverage << "; ";
    }
    return {true, detail.str()};
}

Outcome criterion6() {
    const ConstantsTable table = buildConstants(2, 3);
    const Chain oct = octahedron();
    std::vector<std::pair<std::string, Chain>> gallery = {
        {"octahedron", oct},
        {"subdivided-sphere:1", subdividedSphere(1)},
        {"subdivided-sphere:2", subdividedSphere(2)},
        {"torus-grid:4x4", torusGrid(4, 4)},
    };
    Chain pearls = oct;
    for (int k = 1; k < 4; ++k)
        pearls = add(pearls, translate(oct, {Rational(8 * k), Rational(0), Rational(0)}));
    gallery.emplace_back("pearl-chain", std::move(pearls));
    // long thin tube: density balls must cut it, so rounds go through
    // genuine slice fillings rather than swallowing whole components
    gallery.emplace_back("thin-tube",
                         scaleAxes(torusGrid(48, 3), {Rational(1), ratio(1, 8), ratio(1, 8)}));

    const double decay = 0.97;  // 1 - (3/4) * 5^{-2}
    int rounds = 0;
    for (const auto& [name, z] : gallery) {
        const FillResult r = fillInductive(z, table);
        if (!r.succeeded) return {false, name + ": " + r.failure};
        for (const auto& round : r.rounds) {
            if (round.residualVolume > decay * round.startVolume * (1.0 + 1e-9))
                return {false, name + ": residual decay violated"};
            ++rounds;
        }
        if (!r.certificatesPass) return {false, name + ": stage certificates failed"};
    }
    return {true, std::to_string(rounds) + " rounds all within (97/100) decay"};
}

Outcome criterion7() {
    const double bound = std::sqrt(3.0) / 4.0;  // coneFactor/2 for N=3
    std::ostringstream detail;

    const FillResult square = fillBaseCase(squareLoop(3));
    if (!square.succeeded || !square.boundaryExact) return {false, "square fill failed"};
    if (square.ratio != 1.0 / 16.0)
        return {false, "square ratio " + std::to_string(square.ratio) + " != 1/16"};

    for (int sides : {4, 8, 64}) {
        const FillResult r = fillBaseCase(polygonLoop(sides, 3));
        if (!r.succeeded || !r.boundaryExact || !r.certificatesPass)
            return {false, std::to_string(sides) + "-gon fill failed"};
        if (r.ratio > bound * (1.0 + 1e-9))
            return {false, std::to_string(sides) + "-gon ratio exceeds bound"};
    }

    double worst = 0.0;
    for (int seed = 0; seed < 50; ++seed) {
        const Chain z = randomBoundary(1, 5 + seed % 4, 42000 + seed, 3);
        const FillResult r = fillBaseCase(z);
        if (!r.succeeded || !r.boundaryExact)
            return {false, "random loop " + std::to_string(seed) + " fill failed"};
        if (r.ratio > bound * (1.0 + 1e-9))
            return {false, "random loop " + std::to_string(seed) + " ratio " +
                               std::to_string(r.ratio) + " exceeds " + std::to_string(bound)};
        worst = std::max(worst, r.ratio);
    }
    detail << "square exact 1/16; worst random ratio " << worst << " <= " << bound;
    return {true, detail.str()};
}

Outcome criterion8() {
    const ConstantsTable table = buildConstants(2, 3);
    std::ostringstream detail;
    for (const auto& [name, z] : std::vector<std::pair<std::string, Chain>>{
             {"octahedron", octahedron()}, {"subdivided-sphere:1", subdividedSphere(1)}}) {
        const FillResult r = fillInductive(z, table);
        if (!r.succeeded) return {false, name + ": " + r.failure};
        if (!r.boundaryExact) return {false, name + ": boundary not exact"};
        if (!r.certificatesPass) return {false, name + ": certificates failed"};
        if (r.ratio > r.certifiedBound * (1.0 + 1e-9))
            return {false, name + ": ratio exceeds certified bound"};
        if (r.ratio > 27.0 * 27.0 * 2.0)
            return {false, name + ": ratio exceeds the factorial reference bound"};
        if (r.ratio >= 10.0) return {false, name + ": ratio unexpectedly large"};
        const VerifyReport report = verifyFill(z, r);
        if (!report.pass()) return {false, name + ": " + report.summary()};
        detail << name << " ratio " << r.ratio << " <= " << r.certifiedBound << "; ";
    }
    return {true, detail.str()};
}

Outcome criterion9() {
    const ConstantsTable t = buildConstants(3, 6);
    const double sqrtN = std::sqrt(6.0);
    const double c1 = (sqrtN / 2.0) / 2.0;
    if (t.at(1).fillingBound != c1) return {false, "base bound mismatch"};
    double prev = c1;
    for (int m = 2; m <= 3; ++m) {
        const double expected =
            27.0 * m * (sqrtN / (m + 1)) * 1.0 * std::pow(prev, (m - 1.0) / m);
        if (std::abs(t.at(m).fillingBound - expected) > 1e-15 * expected)
            return {false, "recursion mismatch at m=" + std::to_string(m)};
        prev = expected;
    }
    const ConstantsTable t2 = buildConstants(2, 3);
    if (t2.factorialBound != 27.0 * 27.0 * 2.0) return {false, "factorial reference mismatch"};
    return {true, "recursion reproduced exactly at spot values"};
}

Outcome criterion10(const std::string& cli) {
    namespace fs = std::filesystem;
    if (cli.empty()) return {false, "no CLI path provided"};
    const fs::path dir = fs::path("acceptance_tmp");
    fs::create_directories(dir);
    const fs::path gallery = dir / "gallery.txt";
    {
        std::ofstream out(gallery);
        out << "square square-loop:3\n"
               "octagon polygon-loop:8\n"
               "hexacontatetragon polygon-loop:64\n"
               "octahedron octahedron\n"
               "sphere1 subdivided-sphere:1\n"
               "sphere2 subdivided-sphere:2\n"
               "torus torus-grid:4x4\n"
               "loops random-boundary:1,6 11\n"
               "membrane random-boundary:2,10 12\n";
    }
    const fs::path csv1 = dir / "sweep1.csv";
    const fs::path csv2 = dir / "sweep2.csv";
    auto run = [&](const fs::path& out) {
        std::ostringstream cmd;
        cmd << '"' << cli << '"' << " sweep " << gallery << " --csv " << out
            << " --no-timestamp --seed 7 2>/dev/null";
        return std::system(cmd.str().c_str());
    };
    const int rc1 = run(csv1);
    const int rc2 = run(csv2);
    if (rc1 != 0 || rc2 != 0)
        return {false, "sweep exit codes " + std::to_string(rc1) + "/" + std::to_string(rc2)};
    std::ifstream a(csv1, std::ios::binary), b(csv2, std::ios::binary);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    const std::string first = sa.str();
    const std::string second = sb.str();
    if (first.empty()) return {false, "empty CSV"};
    if (first != second) return {false, "CSV runs differ"};
    const auto rows = std::count(first.begin(), first.end(), '\n');
    return {true, "two runs byte-identical (" + std::to_string(rows - 1) + " gallery rows)"};
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    struct Entry {
        int id;
        const char* name;
        double limitSeconds;
        std::function<Outcome()> run;
    };
    const std::vector<Entry> entries = {
        {1, "exact algebra: dd = 0 on 1000 seeded chains", 10, criterion1},
        {2, "cone identity and volume bound on 100+ cycles", 10, criterion2},
        {3, "clipping conservation and slice-cycle law on 500 pairs", 30, criterion3},
        {4, "Gram volume vs Monte-Carlo Hausdorff estimate (1%)", 60, criterion4},
        {5, "decomposition bounds re-verified on the gallery", 300, criterion5},
        {6, "residual decay per round on the gallery", 600, criterion6},
        {7, "end-to-end dimension 1: loops fill within sqrt(3)/4", 30, criterion7},
        {8, "end-to-end dimension 2: fills within the certified bound", 600, criterion8},
        {9, "constant recursion reproduced exactly", 1, criterion9},
        {10, "sweep determinism: byte-identical CSV", 900, [&] { return criterion10(cli); }},
    };

    bool allPass = true;
    for (const auto& e : entries) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = e.run();
        } catch (const std::exception& ex) {
            outcome = {false, std::string("exception: ") + ex.what()};
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool withinBudget = seconds <= e.limitSeconds;
        const bool pass = outcome.pass && withinBudget;
        allPass = allPass && pass;
        std::printf("%s criterion %2d: %s (%s; %.2f s%s)\n", pass ? "PASS" : "FAIL", e.id,
                    e.name, outcome.detail.c_str(), seconds,
                    withinBudget ? "" : ", over budget");
        std::fflush(stdout);
    }
    return allPass ? 0 : 1;
}
