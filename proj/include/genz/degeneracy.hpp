#ifndef GENZ_DEGENERACY_HPP
#define GENZ_DEGENERACY_HPP

#include <stdexcept>

#include "genz/solver.hpp"

namespace genz {

struct AsymmetricMatrixError : std::runtime_error {
    AsymmetricMatrixError() : std::runtime_error("matrix is not symmetric within 1e-9") {}
};

/// Conditioning of the translational Hessian block.
struct ConditioningReport {
    Mat3 a_bar;
    Vec3 eigenvalues;         // sorted descending, clamped nonnegative
    double condition_number;  // sqrt(l_max / l_min); +inf when rank-deficient
};

/// Top-left 3x3 block of A.
Mat3 TranslationalBlock(const LinearSystem &sys);

/// sqrt(l_max / l_min); returns +inf when l_min <= 1e-12 * l_max.
/// Throws AsymmetricMatrixError if a_bar is asymmetric beyond 1e-9.
double ConditionNumber(const Mat3 &a_bar);

ConditioningReport AnalyzeConditioning(const LinearSystem &sys);

}  // namespace genz

#endif
