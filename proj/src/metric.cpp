#include "fillvol/metric.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fillvol {

CubeBall::CubeBall(RationalPoint c, Rational r) : center(std::move(c)), radius(std::move(r)) {
    if (sgn(radius) <= 0) throw std::invalid_argument("CubeBall: radius must be positive");
}

namespace {

void requireSameAmbient(const RationalPoint& p, const RationalPoint& q) {
    if (p.ambient() != q.ambient())
        throw std::invalid_argument("distance: ambient dimension mismatch");
}

Rational sqDistExact(const RationalPoint& p, const RationalPoint& q) {
    Rational sum = 0;
    for (int j = 0; j < p.ambient(); ++j) {
        const Rational d = p.coords[j] - q.coords[j];
        sum += d * d;
    }
    return sum;
}

}  // namespace

Rational distanceLInfExact(const RationalPoint& p, const RationalPoint& q) {
    requireSameAmbient(p, q);
    Rational best = 0;
    for (int j = 0; j < p.ambient(); ++j) {
        Rational d = abs(p.coords[j] - q.coords[j]);
        if (cmp(d, best) > 0) best = std::move(d);
    }
    return best;
}

double distance(const RationalPoint& p, const RationalPoint& q, MetricKind metric) {
    if (metric == MetricKind::LInf) return distanceLInfExact(p, q).get_d();
    requireSameAmbient(p, q);
    return std::sqrt(sqDistExact(p, q).get_d());
}

Rational simplexGramDet(const AffineSimplex& s) {
    const int k = s.dim();
    if (k <= 0) return 1;
    const int N = s.ambient();
    // G[p][q] = <v_{p+1}-v_0, v_{q+1}-v_0>
    std::vector<std::vector<Rational>> g(k, std::vector<Rational>(k));
    std::vector<std::vector<Rational>> e(k, std::vector<Rational>(N));
    for (int p = 0; p < k; ++p)
        for (int j = 0; j < N; ++j)
            e[p][j] = s.vertices[p + 1].coords[j] - s.vertices[0].coords[j];
    for (int p = 0; p < k; ++p)
        for (int q = p; q < k; ++q) {
            Rational dot = 0;
            for (int j = 0; j < N; ++j) dot += e[p][j] * e[q][j];
            g[p][q] = dot;
            if (q != p) g[q][p] = dot;
        }
    // exact Gaussian elimination over Q
    Rational det = 1;
    for (int col = 0; col < k; ++col) {
        int pivot = -1;
        for (int row = col; row < k; ++row)
            if (sgn(g[row][col]) != 0) {
                pivot = row;
                break;
            }
        if (pivot < 0) return 0;
        if (pivot != col) {
            std::swap(g[pivot], g[col]);
            det = -det;
        }
        det *= g[col][col];
        for (int row = col + 1; row < k; ++row) {
            if (sgn(g[row][col]) == 0) continue;
            const Rational factor = g[row][col] / g[col][col];
            for (int c2 = col; c2 < k; ++c2) g[row][c2] -= factor * g[col][c2];
        }
    }
    return det;
}

double simplexVolume(const AffineSimplex& s) {
    const int k = s.dim();
    if (k <= 0) return 1.0;
    const Rational det = simplexGramDet(s);
    if (sgn(det) <= 0) return 0.0;
    double factorial = 1.0;
    for (int i = 2; i <= k; ++i) factorial *= i;
    return std::sqrt(det.get_d()) / factorial;
}

double chainVolume(const Chain& c) {
    double total = 0.0;
    for (const auto& [s, m] : c.terms()) total += std::abs(static_cast<double>(m)) * simplexVolume(s);
    return total;
}

double chainDiameter(const Chain& c, MetricKind metric) {
    if (c.empty()) throw std::invalid_argument("chainDiameter: empty chain");
    std::vector<const RationalPoint*> pts;
    for (const auto& [s, m] : c.terms()) {
        (void)m;
        for (const auto& v : s.vertices) pts.push_back(&v);
    }
    if (metric == MetricKind::LInf) {
        Rational best = 0;
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                Rational d = distanceLInfExact(*pts[i], *pts[j]);
                if (cmp(d, best) > 0) best = std::move(d);
            }
        return best.get_d();
    }
    Rational best = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            Rational d = sqDistExact(*pts[i], *pts[j]);
            if (cmp(d, best) > 0) best = std::move(d);
        }
    return std::sqrt(best.get_d());
}

CubeBall containingBall(const Chain& c) {
    if (c.empty()) throw std::invalid_argument("containingBall: empty chain");
    const int N = c.ambient();
    std::vector<Rational> lo(N), hi(N);
    bool first = true;
    for (const auto& [s, m] : c.terms()) {
        (void)m;
        for (const auto& v : s.vertices) {
            for (int j = 0; j < N; ++j) {
                if (first) {
                    lo[j] = v.coords[j];
                    hi[j] = v.coords[j];
                } else {
                    if (cmp(v.coords[j], lo[j]) < 0) lo[j] = v.coords[j];
                    if (cmp(v.coords[j], hi[j]) > 0) hi[j] = v.coords[j];
                }
            }
            first = false;
        }
    }
    RationalPoint center;
    center.coords.resize(N);
    Rational radius = 0;
    for (int j = 0; j < N; ++j) {
        center.coords[j] = (lo[j] + hi[j]) / 2;
        Rational half = (hi[j] - lo[j]) / 2;
        if (cmp(half, radius) > 0) radius = std::move(half);
    }
    if (sgn(radius) == 0) radius = 1;
    return CubeBall(std::move(center), std::move(radius));
}

bool cubeContains(const CubeBall& ball, const RationalPoint& p) {
    if (p.ambient() != ball.center.ambient()) return false;
    for (int j = 0; j < p.ambient(); ++j)
        if (cmp(abs(p.coords[j] - ball.center.coords[j]), ball.radius) > 0) return false;
    return true;
}

bool cubeContainsChain(const CubeBall& ball, const Chain& c) {
    for (const auto& [s, m] : c.terms()) {
        (void)m;
        for (const auto& v : s.vertices)
            if (!cubeContains(ball, v)) return false;
    }
    return true;
}

bool cubesDisjoint(const CubeBall& a, const CubeBall& b) {
    for (int j = 0; j < a.center.ambient(); ++j) {
        const Rational gap = abs(a.center.coords[j] - b.center.coords[j]) - (a.radius + b.radius);
        if (sgn(gap) > 0) return true;
    }
    return false;
}

}  // namespace fillvol
