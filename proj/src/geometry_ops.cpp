#include "fillvol/geometry_ops.hpp"

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

namespace fillvol {

namespace {

// Side of a vertex relative to {x_axis = t}: -1 below, 0 on, +1 above.
int vertexSide(const RationalPoint& v, int axis, const Rational& t) {
    return cmp(v.coords[axis], t);
}

struct Piece {
    AffineSimplex simplex;
    Coeff coeff;
};

// First straddling edge in sorted-index scan order. Stored simplices are
// sorted, so this is the straddling edge with the smallest intrinsic key
// (value pair of its endpoints). Intrinsic ordering makes two simplices
// sharing a face refine that face identically, which is what lets shared
// faces cancel exactly afterwards.
std::optional<std::pair<std::size_t, std::size_t>> firstCutEdge(const AffineSimplex& s, int axis,
                                                                const Rational& t) {
    for (std::size_t i = 0; i < s.vertices.size(); ++i)
        for (std::size_t j = i + 1; j < s.vertices.size(); ++j)
            if (vertexSide(s.vertices[i], axis, t) * vertexSide(s.vertices[j], axis, t) < 0)
                return std::make_pair(i, j);
    return std::nullopt;
}

RationalPoint cutPoint(const RationalPoint& a, const RationalPoint& b, int axis,
                       const Rational& t) {
    const Rational lambda = (t - a.coords[axis]) / (b.coords[axis] - a.coords[axis]);
    RationalPoint m;
    m.coords.reserve(a.coords.size());
    for (std::size_t j = 0; j < a.coords.size(); ++j)
        m.coords.push_back(a.coords[j] + lambda * (b.coords[j] - a.coords[j]));
    m.coords[axis] = t;  // exact by construction; assign to keep it literal
    return m;
}

AffineSimplex coneTuple(const RationalPoint& apex, const AffineSimplex& s,
                        std::size_t skipVertex = static_cast<std::size_t>(-1)) {
    AffineSimplex out;
    out.vertices.reserve(s.vertices.size() + 1);
    out.vertices.push_back(apex);
    for (std::size_t j = 0; j < s.vertices.size(); ++j)
        if (j != skipVertex) out.vertices.push_back(s.vertices[j]);
    return out;
}

// Refines one piece until no edge straddles the plane, using the exact
// chain identity for a split at m on edge (i,j):
//
//   p = (-1)^i [m * p\i] + (-1)^j [m * p\j] + boundary([m * p])
//       + sum_{l not in {i,j}} (-1)^l [m * p\l]
//
// The first two terms are the geometric halves; the rest are degenerate
// (m lies in the affine span of every tuple involved) and go to the
// correction chains when the caller tracks them.
void refinePieceAtPlane(const Piece& piece, int axis, const Rational& t, Ring ring,
                        std::vector<Piece>& out, Chain* prism, Chain* flat) {
    const auto cut = firstCutEdge(piece.simplex, axis, t);
    if (!cut) {
        out.push_back(piece);
        return;
    }
    const auto [i, j] = *cut;
    const AffineSimplex& s = piece.simplex;
    const RationalPoint m = cutPoint(s.vertices[i], s.vertices[j], axis, t);

    if (prism) prism->addTerm(coneTuple(m, s), piece.coeff);
    if (flat)
        for (std::size_t l = 0; l < s.vertices.size(); ++l) {
            if (l == i || l == j) continue;
            flat->addTerm(coneTuple(m, s, l), (l % 2 == 0) ? piece.coeff : -piece.coeff);
        }

    for (std::size_t l : {i, j}) {
        auto [half, coeff] =
            canonicalize(coneTuple(m, s, l), (l % 2 == 0) ? piece.coeff : -piece.coeff, ring);
        if (coeff == 0) continue;
        refinePieceAtPlane(Piece{std::move(half), coeff}, axis, t, ring, out, prism, flat);
    }
}

// After refinement a piece has all vertices weakly on one side.
// In-plane pieces count as kept on either side.
bool pieceKept(const AffineSimplex& s, int axis, const Rational& t, bool keepBelow) {
    for (const auto& v : s.vertices) {
        const int side = vertexSide(v, axis, t);
        if (side < 0) return keepBelow;
        if (side > 0) return !keepBelow;
    }
    return true;
}

struct PlaneSplit {
    std::vector<Piece> kept;
    std::vector<Piece> rejected;
};

PlaneSplit splitPiecesAtPlane(std::vector<Piece> pieces, const Halfspace& h, Ring ring,
                              Chain* prism, Chain* flat) {
    PlaneSplit result;
    std::vector<Piece> refined;
    for (const Piece& p : pieces) refinePieceAtPlane(p, h.axis, h.threshold, ring, refined, prism, flat);
    for (Piece& p : refined) {
        if (pieceKept(p.simplex, h.axis, h.threshold, h.keepBelow))
            result.kept.push_back(std::move(p));
        else
            result.rejected.push_back(std::move(p));
    }
    return result;
}

std::vector<Halfspace> cubeFaces(const CubeBall& ball) {
    std::vector<Halfspace> faces;
    const int N = ball.center.ambient();
    faces.reserve(2 * static_cast<std::size_t>(N));
    for (int axis = 0; axis < N; ++axis) {
        faces.push_back({axis, ball.center.coords[axis] - ball.radius, false});
        faces.push_back({axis, ball.center.coords[axis] + ball.radius, true});
    }
    return faces;
}

// Safe fast path: a simplex with no strictly straddling vertex pair for any
// face plane is never cut, and neither is any of its faces (their vertex
// pairs are a subset), so skipping refinement cannot desynchronize shared
// faces between neighbors.
bool simplexUncutByCube(const CubeBall& ball, const AffineSimplex& s) {
    const int N = ball.center.ambient();
    for (int axis = 0; axis < N; ++axis) {
        for (const Rational& t : {Rational(ball.center.coords[axis] - ball.radius),
                                  Rational(ball.center.coords[axis] + ball.radius)}) {
            bool below = false, above = false;
            for (const auto& v : s.vertices) {
                const int side = cmp(v.coords[axis], t);
                below = below || side < 0;
                above = above || side > 0;
                if (below && above) return false;
            }
        }
    }
    return true;
}

bool simplexInsideCube(const CubeBall& ball, const AffineSimplex& s) {
    for (const auto& v : s.vertices)
        if (!cubeContains(ball, v)) return false;
    return true;
}

}  // namespace

Chain clipSimplexToHalfspace(const AffineSimplex& s, const Halfspace& h, Ring ring) {
    const int N = s.ambient();
    if (h.axis < 0 || h.axis >= N)
        throw std::invalid_argument("clipSimplexToHalfspace: axis out of range");
    auto [canonical, coeff] = canonicalize(s, 1, ring);
    Chain kept(s.dim(), N, ring);
    if (coeff != 0) {
        PlaneSplit split =
            splitPiecesAtPlane({{std::move(canonical), coeff}}, h, ring, nullptr, nullptr);
        for (const Piece& p : split.kept) kept.addTerm(p.simplex, p.coeff);
    }
    return kept;
}

CubeRestriction restrictToBall(const Chain& z, const CubeBall& ball) {
    const int N = z.ambient();
    if (ball.center.ambient() != N)
        throw std::invalid_argument("restrictToBall: ambient dimension mismatch");
    for (const auto& [s, m] : z.terms()) {
        (void)m;
        for (const auto& v : s.vertices)
            if (cmp(distanceLInfExact(v, ball.center), ball.radius) == 0)
                throw DegenerateRadiusError("restrictToBall: vertex on cube boundary");
    }

    CubeRestriction result{Chain(z.dim(), N, z.ring()), Chain(z.dim(), N, z.ring()),
                           Chain(z.dim() + 1, N, z.ring()), Chain(z.dim(), N, z.ring())};
    const auto faces = cubeFaces(ball);

    // Pure refinement first (both sides kept at every plane), classification
    // second. The refinement of any simplex is then an intrinsic function of
    // it and the plane set, so two simplices sharing a face subdivide that
    // face identically and the boundary of inside+outside cancels exactly
    // across the cut.
    for (const auto& [s, m] : z.terms()) {
        if (simplexUncutByCube(ball, s)) {
            if (simplexInsideCube(ball, s))
                result.inside.addTerm(s, m);
            else
                result.outside.addTerm(s, m);
            continue;
        }
        std::vector<Piece> working{{s, m}};
        for (const Halfspace& face : faces) {
            std::vector<Piece> refined;
            for (const Piece& p : working)
                refinePieceAtPlane(p, face.axis, face.threshold, z.ring(), refined,
                                   &result.prism, &result.flat);
            working = std::move(refined);
        }
        // every piece is now weakly one-sided for every plane
        for (const Piece& p : working) {
            if (simplexInsideCube(ball, p.simplex))
                result.inside.addTerm(p.simplex, p.coeff);
            else
                result.outside.addTerm(p.simplex, p.coeff);
        }
    }

    // exact restriction identity; any failure here is a splitter bug
    Chain reassembled =
        add(add(result.inside, result.outside), add(boundary(result.prism), result.flat));
    if (reassembled != z)
        throw std::logic_error("restrictToBall: restriction identity violated");
    for (const auto& [s, m] : result.inside.terms()) {
        (void)m;
        for (const auto& v : s.vertices)
            if (!cubeContains(ball, v))
                throw std::logic_error("restrictToBall: inside piece leaves the cube");
    }
    return result;
}

double restrictedVolume(const Chain& z, const CubeBall& ball) {
    const int N = z.ambient();
    if (ball.center.ambient() != N)
        throw std::invalid_argument("restrictedVolume: ambient dimension mismatch");
    const auto faces = cubeFaces(ball);
    double total = 0.0;
    for (const auto& [s, m] : z.terms()) {
        const double weight = std::abs(static_cast<double>(m));
        if (simplexUncutByCube(ball, s)) {
            if (simplexInsideCube(ball, s)) total += weight * simplexVolume(s);
            continue;
        }
        std::vector<Piece> working{{s, 1}};
        for (const Halfspace& face : faces) {
            PlaneSplit split =
                splitPiecesAtPlane(std::move(working), face, z.ring(), nullptr, nullptr);
            working = std::move(split.kept);
            if (working.empty()) break;
        }
        for (const Piece& p : working) total += weight * simplexVolume(p.simplex);
    }
    return total;
}

double restrictedVolume(const AffineSimplex& s, const CubeBall& ball, Ring ring) {
    if (simplexUncutByCube(ball, s)) return simplexInsideCube(ball, s) ? simplexVolume(s) : 0.0;
    std::vector<Piece> working{{s, 1}};
    for (const Halfspace& face : cubeFaces(ball)) {
        PlaneSplit split = splitPiecesAtPlane(std::move(working), face, ring, nullptr, nullptr);
        working = std::move(split.kept);
        if (working.empty()) break;
    }
    double total = 0.0;
    for (const Piece& p : working) total += simplexVolume(p.simplex);
    return total;
}

Chain boundarySlice(const Chain& z, const CubeBall& ball) {
    const int N = z.ambient();
    if (ball.center.ambient() != N)
        throw std::invalid_argument("boundarySlice: ambient dimension mismatch");
    if (z.dim() < 1) throw std::invalid_argument("boundarySlice: chain dimension must be >= 1");
    Chain slice(z.dim() - 1, N, z.ring());
    const auto faces = cubeFaces(ball);
    const double r = ball.radius.get_d();
    std::vector<double> centerD(static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j) centerD[j] = ball.center.coords[j].get_d();
    for (const auto& [s, m] : z.terms()) {
        // cheap double prune before any exact work: strictly-inside via
        // vertex distances (convexity), disjoint via the bounding box
        double dmax = 0.0;
        std::vector<double> lo(static_cast<std::size_t>(N), 1e300);
        std::vector<double> hi(static_cast<std::size_t>(N), -1e300);
        for (const auto& v : s.vertices) {
            dmax = std::max(dmax, distanceLInfExact(v, ball.center).get_d());
            for (int j = 0; j < N; ++j) {
                const double x = v.coords[j].get_d();
                lo[j] = std::min(lo[j], x);
                hi[j] = std::max(hi[j], x);
            }
        }
        const double margin = 1e-9 * (1.0 + r + dmax);
        if (dmax < r - margin) continue;
        bool separated = false;
        for (int j = 0; j < N && !separated; ++j)
            separated = lo[j] > centerD[j] + r + margin || hi[j] < centerD[j] - r - margin;
        if (separated) continue;
        for (const auto& v : s.vertices)
            if (cmp(distanceLInfExact(v, ball.center), ball.radius) == 0)
                throw DegenerateRadiusError("boundarySlice: vertex on cube boundary");
        if (simplexUncutByCube(ball, s)) continue;  // generic vertices: no face on the boundary
        std::vector<Piece> working{{s, m}};
        for (const Halfspace& face : faces) {
            std::vector<Piece> refined;
            for (const Piece& p : working)
                refinePieceAtPlane(p, face.axis, face.threshold, z.ring(), refined, nullptr,
                                   nullptr);
            working = std::move(refined);
        }
        for (const Piece& p : working) {
            if (!simplexInsideCube(ball, p.simplex)) continue;
            for (std::size_t i = 0; i < p.simplex.vertices.size(); ++i) {
                bool onBoundary = true;
                for (std::size_t j = 0; j < p.simplex.vertices.size() && onBoundary; ++j) {
                    if (j == i) continue;
                    onBoundary = cmp(distanceLInfExact(p.simplex.vertices[j], ball.center),
                                     ball.radius) == 0;
                }
                if (!onBoundary) continue;
                AffineSimplex face;
                face.vertices.reserve(p.simplex.vertices.size() - 1);
                for (std::size_t j = 0; j < p.simplex.vertices.size(); ++j)
                    if (j != i) face.vertices.push_back(p.simplex.vertices[j]);
                slice.addTerm(face, (i % 2 == 0) ? p.coeff : -p.coeff);
            }
        }
    }
    return slice;
}

Chain sliceAtRadius(const Chain& z, const CubeBall& ball) {
    if (z.dim() < 1) throw std::invalid_argument("sliceAtRadius: chain dimension must be >= 1");
    if (!isCycle(z)) throw std::invalid_argument("sliceAtRadius: input must be a cycle");
    CubeRestriction r = restrictToBall(z, ball);
    Chain slice = boundary(r.inside);
    // for a cycle the slice lives on the cube boundary: every vertex at
    // sup-distance exactly radius
    for (const auto& [s, m] : slice.terms()) {
        (void)m;
        for (const auto& v : s.vertices)
            if (cmp(distanceLInfExact(v, ball.center), ball.radius) != 0)
                throw std::logic_error("sliceAtRadius: slice vertex off the cube boundary");
    }
    return slice;
}

Chain clampToBall(const Chain& c, const CubeBall& ball) {
    const int N = c.ambient();
    if (ball.center.ambient() != N)
        throw std::invalid_argument("clampToBall: ambient dimension mismatch");
    // refine against every face plane, keeping both sides, so the clamp is
    // affine on each piece
    std::vector<Piece> pieces;
    pieces.reserve(c.size());
    for (const auto& [s, m] : c.terms()) pieces.push_back({s, m});
    for (const Halfspace& face : cubeFaces(ball)) {
        std::vector<Piece> refined;
        for (const Piece& p : pieces)
            refinePieceAtPlane(p, face.axis, face.threshold, c.ring(), refined, nullptr, nullptr);
        pieces = std::move(refined);
    }
    Chain out(c.dim(), N, c.ring());
    for (const Piece& p : pieces) {
        AffineSimplex mapped = p.simplex;
        for (auto& v : mapped.vertices)
            for (int j = 0; j < N; ++j) {
                const Rational lo = ball.center.coords[j] - ball.radius;
                const Rational hi = ball.center.coords[j] + ball.radius;
                if (cmp(v.coords[j], lo) < 0)
                    v.coords[j] = lo;
                else if (cmp(v.coords[j], hi) > 0)
                    v.coords[j] = hi;
            }
        out.addTerm(mapped, p.coeff);
    }
    return out;
}

Chain coneOverChain(const RationalPoint& apex, const Chain& c) {
    if (apex.ambient() != c.ambient())
        throw std::invalid_argument("coneOverChain: ambient dimension mismatch");
    Chain out(c.dim() + 1, c.ambient(), c.ring());
    for (const auto& [s, m] : c.terms()) out.addTerm(coneTuple(apex, s), m);
    return out;
}

}  // namespace fillvol
