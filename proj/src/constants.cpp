#include "fillvol/constants.hpp"

#include <cmath>
#include <stdexcept>

namespace fillvol {

const DimensionConstants& ConstantsTable::at(int m) const {
    if (m < 1 || m > static_cast<int>(dims.size()))
        throw std::invalid_argument("ConstantsTable::at: dimension out of range");
    return dims[static_cast<std::size_t>(m - 1)];
}

ConstantsTable buildConstants(int n, int ambient) {
    if (n < 1) throw std::invalid_argument("buildConstants: n must be at least 1");
    if (ambient < n + 1)
        throw std::invalid_argument("buildConstants: ambient dimension must be at least n+1");

    ConstantsTable table;
    table.n = n;
    table.ambient = ambient;
    table.dims.resize(static_cast<std::size_t>(n));

    const double sqrtN = std::sqrt(static_cast<double>(ambient));
    // omega_m via omega_m = omega_{m-2} * 2*pi/m, omega_0 = 1, omega_1 = 2
    std::vector<double> omega(static_cast<std::size_t>(n + 1));
    for (int m = 0; m <= n; ++m) {
        if (m == 0)
            omega[m] = 1.0;
        else if (m == 1)
            omega[m] = 2.0;
        else
            omega[m] = omega[m - 2] * 2.0 * M_PI / m;
    }

    for (int m = 1; m <= n; ++m) {
        DimensionConstants& d = table.dims[static_cast<std::size_t>(m - 1)];
        d.m = m;
        d.unitBallVolume = omega[m];
        d.density = 0.5 * std::pow(static_cast<double>(m), -0.5 * m) * omega[m];
        d.coneFactor = sqrtN / (m + 1);
        d.coareaFactor = 1.0;
        if (m == 1) {
            // a closed curve has sup-norm diameter at most half its length,
            // so coning from a support point certifies coneFactor/2
            d.epsilon = 0.5;
            d.fillingBound = d.coneFactor / 2.0;
        } else {
            const DimensionConstants& prev = table.dims[static_cast<std::size_t>(m - 2)];
            const double raw = 1.0 / (std::pow(4.0, m - 1) * std::pow(prev.fillingBound, m - 1) *
                                      d.density * std::pow(d.coareaFactor, m) *
                                      std::pow(static_cast<double>(m), m));
            d.epsilon = std::min(raw, 0.5);
            d.fillingBound = 27.0 * m * d.coneFactor * d.coareaFactor *
                             std::pow(prev.fillingBound, (m - 1.0) / m);
        }
        if (!(d.epsilon > 0.0) || !(d.fillingBound > 0.0) || !std::isfinite(d.fillingBound))
            throw std::runtime_error("buildConstants: non-finite constant");
    }

    double factorial = 1.0;
    for (int i = 2; i <= n; ++i) factorial *= i;
    table.factorialBound = std::pow(27.0, n) * factorial;
    return table;
}

}  // namespace fillvol
