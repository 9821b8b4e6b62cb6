#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "fillvol/rational.hpp"

namespace fillvol {

enum class Ring { Z, Z2 };

using Coeff = long long;

// A point with exact rational coordinates.
struct RationalPoint {
    std::vector<Rational> coords;

    RationalPoint() = default;
    explicit RationalPoint(std::vector<Rational> c) : coords(std::move(c)) {}

    int ambient() const { return static_cast<int>(coords.size()); }
};

// Lexicographic comparison on coordinate tuples; total and exact.
int comparePoints(const RationalPoint& a, const RationalPoint& b);
bool operator==(const RationalPoint& a, const RationalPoint& b);
bool operator!=(const RationalPoint& a, const RationalPoint& b);
bool operator<(const RationalPoint& a, const RationalPoint& b);

// An ordered tuple of k+1 vertices; the tuple order carries the orientation.
// Affinely dependent vertex sets are legal and simply have zero volume.
struct AffineSimplex {
    std::vector<RationalPoint> vertices;

    AffineSimplex() = default;
    explicit AffineSimplex(std::vector<RationalPoint> v) : vertices(std::move(v)) {}

    int dim() const { return static_cast<int>(vertices.size()) - 1; }
    int ambient() const { return vertices.empty() ? 0 : vertices.front().ambient(); }
};

int compareSimplices(const AffineSimplex& a, const AffineSimplex& b);

struct SimplexLess {
    bool operator()(const AffineSimplex& a, const AffineSimplex& b) const {
        return compareSimplices(a, b) < 0;
    }
};

// Stable-sorts the vertices lexicographically and reports the permutation
// parity (+1/-1). Stability makes the parity a well-defined function of the
// vertex tuple even when vertices repeat, which keeps the boundary operator
// and vertex-wise maps compatible with canonical forms in every case.
std::pair<AffineSimplex, int> sortedWithParity(const AffineSimplex& s);

// Canonical form of (simplex, coefficient): vertices sorted, the permutation
// sign folded into the coefficient over Z and ignored over Z2.
std::pair<AffineSimplex, Coeff> canonicalize(const AffineSimplex& s, Coeff m, Ring ring);

// A formal finite sum of simplices with Z or Z2 coefficients. Terms are kept
// in canonical form with nonzero coefficients only; equality of chains is
// exact equality of the term maps.
class Chain {
public:
    using TermMap = std::map<AffineSimplex, Coeff, SimplexLess>;

    Chain(int dim, int ambient, Ring ring);

    int dim() const { return dim_; }
    int ambient() const { return ambient_; }
    Ring ring() const { return ring_; }

    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    // Canonicalizes and accumulates; zero coefficients are dropped.
    // Rejects simplices whose dimension or ambient dimension mismatch.
    void addTerm(const AffineSimplex& s, Coeff m);

    std::vector<AffineSimplex> support() const;

    bool operator==(const Chain& other) const;
    bool operator!=(const Chain& other) const { return !(*this == other); }

private:
    int dim_;
    int ambient_;
    Ring ring_;
    TermMap terms_;
};

// Coefficientwise sum; rejects mismatched dimension/ambient/ring.
Chain add(const Chain& a, const Chain& b);
Chain negate(const Chain& a);
Chain subtract(const Chain& a, const Chain& b);

// Alternating-sign sum of vertex-deleted faces; rejects dim-0 input.
Chain boundary(const Chain& c);

// True iff boundary(c) is the zero chain (exact). Empty chains are cycles.
bool isCycle(const Chain& c);

}  // namespace fillvol
