#include "fillvol/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "fillvol/metric.hpp"

namespace fillvol {

namespace {

RationalPoint makePoint(std::vector<Rational> coords) { return RationalPoint(std::move(coords)); }

RationalPoint padTo(RationalPoint p, int ambient) {
    while (p.ambient() < ambient) p.coords.emplace_back(0);
    return p;
}

Chain checkedCycle(Chain z, const char* what) {
    if (!isCycle(z)) throw std::logic_error(std::string(what) + ": generator produced a non-cycle");
    return z;
}

// Exact rational point on the unit circle with half-angle parameter t:
// ((1-t^2)/(1+t^2), 2t/(1+t^2)).
std::pair<Rational, Rational> circlePoint(const Rational& t) {
    const Rational t2 = t * t;
    const Rational den = 1 + t2;
    return {(1 - t2) / den, 2 * t / den};
}

// Exact rational point on the unit sphere near the (unit) double direction,
// via stereographic rounding from whichever pole is farther away.
RationalPoint snapToSphere(double x, double y, double z) {
    const bool fromNorth = z < 0.5;  // project from the pole opposite the point
    const double denom = fromNorth ? 1.0 - z : 1.0 + z;
    const Rational u = dyadicApprox(x / denom, 14);
    const Rational v = dyadicApprox(y / denom, 14);
    const Rational s = u * u + v * v;
    const Rational den = 1 + s;
    Rational px = 2 * u / den;
    Rational py = 2 * v / den;
    Rational pz = (s - 1) / den;
    if (!fromNorth) pz = -pz;
    return makePoint({std::move(px), std::move(py), std::move(pz)});
}

}  // namespace

Chain squareLoop(int ambient) {
    if (ambient < 2) throw std::invalid_argument("squareLoop: ambient must be >= 2");
    const RationalPoint a = padTo(makePoint({0, 0}), ambient);
    const RationalPoint b = padTo(makePoint({1, 0}), ambient);
    const RationalPoint c = padTo(makePoint({1, 1}), ambient);
    const RationalPoint d = padTo(makePoint({0, 1}), ambient);
    Chain z(1, ambient, Ring::Z);
    z.addTerm(AffineSimplex({a, b}), 1);
    z.addTerm(AffineSimplex({b, c}), 1);
    z.addTerm(AffineSimplex({c, d}), 1);
    z.addTerm(AffineSimplex({d, a}), 1);
    return checkedCycle(std::move(z), "squareLoop");
}

Chain polygonLoop(int sides, int ambient) {
    if (sides < 3) throw std::invalid_argument("polygonLoop: need at least 3 sides");
    if (ambient < 2) throw std::invalid_argument("polygonLoop: ambient must be >= 2");
    std::vector<RationalPoint> pts;
    pts.reserve(static_cast<std::size_t>(sides));
    for (int k = 0; k < sides; ++k) {
        const double angle = 2.0 * M_PI * k / sides;
        RationalPoint p;
        if (std::abs(angle - M_PI) < 1e-12) {
            p = makePoint({-1, 0});
        } else {
            const Rational t = dyadicApprox(std::tan(angle / 2.0), 16);
            auto [cx, cy] = circlePoint(t);
            p = makePoint({std::move(cx), std::move(cy)});
        }
        pts.push_back(padTo(std::move(p), ambient));
    }
    for (int k = 0; k < sides; ++k)
        if (pts[static_cast<std::size_t>(k)] == pts[static_cast<std::size_t>((k + 1) % sides)])
            throw std::logic_error("polygonLoop: adjacent vertices collided");
    Chain z(1, ambient, Ring::Z);
    for (int k = 0; k < sides; ++k)
        z.addTerm(AffineSimplex({pts[static_cast<std::size_t>(k)],
                                 pts[static_cast<std::size_t>((k + 1) % sides)]}),
                  1);
    return checkedCycle(std::move(z), "polygonLoop");
}

Chain octahedron() {
    const RationalPoint origin = makePoint({0, 0, 0});
    Chain solid(3, 3, Ring::Z);
    for (int sx : {-1, 1})
        for (int sy : {-1, 1})
            for (int sz : {-1, 1}) {
                const RationalPoint ex = makePoint({sx, 0, 0});
                const RationalPoint ey = makePoint({0, sy, 0});
                const RationalPoint ez = makePoint({0, 0, sz});
                solid.addTerm(AffineSimplex({origin, ex, ey, ez}), sx * sy * sz);
            }
    return checkedCycle(boundary(solid), "octahedron");
}

Chain subdividedSphere(int depth) {
    if (depth < 0) throw std::invalid_argument("subdividedSphere: negative depth");
    Chain z = octahedron();
    for (int round = 0; round < depth; ++round) {
        auto midpoint = [](const RationalPoint& a, const RationalPoint& b) {
            const double mx = (a.coords[0].get_d() + b.coords[0].get_d()) / 2.0;
            const double my = (a.coords[1].get_d() + b.coords[1].get_d()) / 2.0;
            const double mz = (a.coords[2].get_d() + b.coords[2].get_d()) / 2.0;
            const double norm = std::sqrt(mx * mx + my * my + mz * mz);
            return snapToSphere(mx / norm, my / norm, mz / norm);
        };
        Chain next(2, 3, Ring::Z);
        for (const auto& [s, m] : z.terms()) {
            const RationalPoint& a = s.vertices[0];
            const RationalPoint& b = s.vertices[1];
            const RationalPoint& c = s.vertices[2];
            // midpoints are functions of the sorted edge pair, so adjacent
            // triangles subdivide shared edges identically
            const RationalPoint mab = midpoint(a, b);
            const RationalPoint mbc = midpoint(b, c);
            const RationalPoint mac = midpoint(a, c);
            next.addTerm(AffineSimplex({a, mab, mac}), m);
            next.addTerm(AffineSimplex({mab, b, mbc}), m);
            next.addTerm(AffineSimplex({mac, mbc, c}), m);
            next.addTerm(AffineSimplex({mab, mbc, mac}), m);
        }
        z = checkedCycle(std::move(next), "subdividedSphere");
    }
    return z;
}

Chain torusGrid(int p, int q) {
    if (p < 3 || q < 3) throw std::invalid_argument("torusGrid: need p,q >= 3");
    // Kuhn triangulation of each unit cell of the frame footprint; it is
    // translation-invariant, so shared faces cancel in the boundary.
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                    {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    static const int signs[6] = {1, -1, -1, 1, 1, -1};
    Chain solid(3, 3, Ring::Z);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < q; ++j) {
            const bool inHole = i >= 1 && i < p - 1 && j >= 1 && j < q - 1;
            if (inHole) continue;
            for (int t = 0; t < 6; ++t) {
                long corner[3] = {i, j, 0};
                std::vector<RationalPoint> verts;
                verts.reserve(4);
                verts.push_back(makePoint({corner[0], corner[1], corner[2]}));
                for (int step = 0; step < 3; ++step) {
                    corner[perms[t][step]] += 1;
                    verts.push_back(makePoint({corner[0], corner[1], corner[2]}));
                }
                solid.addTerm(AffineSimplex(std::move(verts)), signs[t]);
            }
        }
    return checkedCycle(boundary(solid), "torusGrid");
}

Chain randomBoundary(int n, int simplexCount, std::uint64_t seed, int ambient, Ring ring) {
    if (n < 1) throw std::invalid_argument("randomBoundary: n must be >= 1");
    if (simplexCount < 1) throw std::invalid_argument("randomBoundary: need at least one simplex");
    if (ambient < n + 1)
        throw std::invalid_argument("randomBoundary: ambient must be at least n+1");
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 64; ++attempt) {
        Chain filler(n + 1, ambient, ring);
        for (int i = 0; i < simplexCount; ++i) {
            std::vector<RationalPoint> verts;
            verts.reserve(static_cast<std::size_t>(n + 2));
            for (int v = 0; v < n + 2; ++v) {
                std::vector<Rational> coords;
                coords.reserve(static_cast<std::size_t>(ambient));
                for (int j = 0; j < ambient; ++j) {
                    const long num = static_cast<long>(rng() % 65) - 32;
                    coords.emplace_back(ratio(num, 16));
                }
                verts.push_back(makePoint(std::move(coords)));
            }
            const Coeff m = 1 + static_cast<Coeff>(rng() % 3);
            const Coeff sign = (rng() & 1) ? 1 : -1;
            filler.addTerm(AffineSimplex(std::move(verts)), sign * m);
        }
        Chain z = boundary(filler);
        if (!z.empty()) return checkedCycle(std::move(z), "randomBoundary");
    }
    throw std::logic_error("randomBoundary: all draws cancelled");
}

Chain generateCycle(const std::string& spec, std::uint64_t seed) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    auto parseInts = [&args]() {
        std::vector<int> out;
        std::string token;
        for (const char c : args) {
            if (c == ',' || c == 'x') {
                if (!token.empty()) out.push_back(std::stoi(token));
                token.clear();
            } else {
                token += c;
            }
        }
        if (!token.empty()) out.push_back(std::stoi(token));
        return out;
    };
    const std::vector<int> ints = parseInts();
    if (kind == "square-loop") return squareLoop(ints.empty() ? 2 : ints[0]);
    if (kind == "polygon-loop") {
        if (ints.empty()) throw std::invalid_argument("polygon-loop needs a side count");
        return polygonLoop(ints[0], ints.size() > 1 ? ints[1] : 3);
    }
    if (kind == "octahedron") return octahedron();
    if (kind == "subdivided-sphere") {
        if (ints.empty()) throw std::invalid_argument("subdivided-sphere needs a depth");
        return subdividedSphere(ints[0]);
    }
    if (kind == "torus-grid") {
        if (ints.size() < 2) throw std::invalid_argument("torus-grid needs PxQ");
        return torusGrid(ints[0], ints[1]);
    }
    if (kind == "random-boundary") {
        if (ints.size() < 2) throw std::invalid_argument("random-boundary needs n,count");
        return randomBoundary(ints[0], ints[1], seed, ints.size() > 2 ? ints[2] : 3);
    }
    throw std::invalid_argument("generateCycle: unknown kind '" + kind + "'");
}

}  // namespace fillvol
