#include "fillvol/chain.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace fillvol {

int comparePoints(const RationalPoint& a, const RationalPoint& b) {
    const std::size_t n = std::min(a.coords.size(), b.coords.size());
    for (std::size_t i = 0; i < n; ++i) {
        const int c = cmp(a.coords[i], b.coords[i]);
        if (c != 0) return c;
    }
    if (a.coords.size() < b.coords.size()) return -1;
    if (a.coords.size() > b.coords.size()) return 1;
    return 0;
}

bool operator==(const RationalPoint& a, const RationalPoint& b) { return comparePoints(a, b) == 0; }
bool operator!=(const RationalPoint& a, const RationalPoint& b) { return comparePoints(a, b) != 0; }
bool operator<(const RationalPoint& a, const RationalPoint& b) { return comparePoints(a, b) < 0; }

int compareSimplices(const AffineSimplex& a, const AffineSimplex& b) {
    if (a.vertices.size() != b.vertices.size())
        return a.vertices.size() < b.vertices.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.vertices.size(); ++i) {
        const int c = comparePoints(a.vertices[i], b.vertices[i]);
        if (c != 0) return c;
    }
    return 0;
}

std::pair<AffineSimplex, int> sortedWithParity(const AffineSimplex& s) {
    const std::size_t n = s.vertices.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return comparePoints(s.vertices[i], s.vertices[j]) < 0;
    });
    // permutation parity by inversion count; tuples are tiny
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (order[i] > order[j]) ++inversions;
    AffineSimplex sorted;
    sorted.vertices.reserve(n);
    for (std::size_t i : order) sorted.vertices.push_back(s.vertices[i]);
    return {std::move(sorted), (inversions % 2 == 0) ? 1 : -1};
}

std::pair<AffineSimplex, Coeff> canonicalize(const AffineSimplex& s, Coeff m, Ring ring) {
    auto [sorted, parity] = sortedWithParity(s);
    if (ring == Ring::Z) return {std::move(sorted), m * parity};
    return {std::move(sorted), ((m % 2) + 2) % 2};
}

Chain::Chain(int dim, int ambient, Ring ring) : dim_(dim), ambient_(ambient), ring_(ring) {
    if (dim < 0) throw std::invalid_argument("Chain: negative dimension");
    if (ambient < 1) throw std::invalid_argument("Chain: ambient dimension must be positive");
}

void Chain::addTerm(const AffineSimplex& s, Coeff m) {
    if (s.dim() != dim_)
        throw std::invalid_argument("Chain::addTerm: simplex dimension mismatch");
    for (const auto& v : s.vertices)
        if (v.ambient() != ambient_)
            throw std::invalid_argument("Chain::addTerm: ambient dimension mismatch");
    auto [key, coeff] = canonicalize(s, m, ring_);
    if (coeff == 0) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), coeff);
        return;
    }
    it->second += coeff;
    if (ring_ == Ring::Z2) it->second = ((it->second % 2) + 2) % 2;
    if (it->second == 0) terms_.erase(it);
}

std::vector<AffineSimplex> Chain::support() const {
    std::vector<AffineSimplex> out;
    out.reserve(terms_.size());
    for (const auto& [s, m] : terms_) {
        (void)m;
        out.push_back(s);
    }
    return out;
}

bool Chain::operator==(const Chain& other) const {
    if (dim_ != other.dim_ || ambient_ != other.ambient_ || ring_ != other.ring_) return false;
    if (terms_.size() != other.terms_.size()) return false;
    auto it = terms_.begin();
    auto jt = other.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt) {
        if (it->second != jt->second) return false;
        if (compareSimplices(it->first, jt->first) != 0) return false;
    }
    return true;
}

namespace {

void requireCompatible(const Chain& a, const Chain& b, const char* what) {
    if (a.dim() != b.dim() || a.ambient() != b.ambient() || a.ring() != b.ring())
        throw std::invalid_argument(std::string(what) + ": dimension or ring mismatch");
}

}  // namespace

Chain add(const Chain& a, const Chain& b) {
    requireCompatible(a, b, "add");
    Chain out = a;
    for (const auto& [s, m] : b.terms()) out.addTerm(s, m);
    return out;
}

Chain negate(const Chain& a) {
    if (a.ring() == Ring::Z2) return a;
    Chain out(a.dim(), a.ambient(), a.ring());
    for (const auto& [s, m] : a.terms()) out.addTerm(s, -m);
    return out;
}

Chain subtract(const Chain& a, const Chain& b) {
    return add(a, negate(b));
}

Chain boundary(const Chain& c) {
    if (c.dim() < 1)
        throw std::invalid_argument("boundary: chains of dimension 0 have no boundary");
    Chain out(c.dim() - 1, c.ambient(), c.ring());
    for (const auto& [s, m] : c.terms()) {
        // stored simplices are sorted, so every face is already canonical
        for (std::size_t i = 0; i < s.vertices.size(); ++i) {
            AffineSimplex face;
            face.vertices.reserve(s.vertices.size() - 1);
            for (std::size_t j = 0; j < s.vertices.size(); ++j)
                if (j != i) face.vertices.push_back(s.vertices[j]);
            out.addTerm(face, (i % 2 == 0) ? m : -m);
        }
    }
    return out;
}

bool isCycle(const Chain& c) {
    if (c.empty()) return true;
    return boundary(c).empty();
}

}  // namespace fillvol
