#pragma once

#include <vector>

namespace fillvol {

// Per-dimension constants driving the decomposition and filling recursion.
// All of them are certified values the pipeline's inequality checks use
// verbatim; none is a tunable.
struct DimensionConstants {
    int m = 0;
    double unitBallVolume = 0.0;  // Euclidean unit-ball volume in R^m
    double density = 0.0;         // lower density constant: unitBallVolume * m^{-m/2} / 2
    double coneFactor = 0.0;      // cone volume factor: sqrt(ambient) / (m+1)
    double coareaFactor = 1.0;    // slice-volume factor for 1-Lipschitz level sets
    double epsilon = 0.0;         // density threshold scale, capped at 1/2
    double fillingBound = 0.0;    // certified bound for Fillvol <= bound * Vol^{1+1/m}
};

struct ConstantsTable {
    int n = 0;        // top chain dimension
    int ambient = 0;  // ambient dimension N
    std::vector<DimensionConstants> dims;  // index m-1 holds dimension m
    double factorialBound = 0.0;           // reference value 27^n * n!

    const DimensionConstants& at(int m) const;
};

// Builds the table for cycles of dimension n in R^N. Requires 1 <= n and
// N >= n+1. The recursion:
//   density_m  = unitBallVolume_m * m^{-m/2} / 2
//   coneFactor_m = sqrt(N)/(m+1),  coareaFactor_m = 1
//   fillingBound_1 = coneFactor_1 / 2
//   epsilon_m  = min{ 1 / (4^{m-1} fillingBound_{m-1}^{m-1} density_m
//                         coareaFactor_m^m m^m), 1/2 }        (m >= 2)
//   fillingBound_m = 27 m coneFactor_m coareaFactor_m
//                         fillingBound_{m-1}^{(m-1)/m}         (m >= 2)
ConstantsTable buildConstants(int n, int ambient);

}  // namespace fillvol
