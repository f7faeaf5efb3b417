#include "genz/degeneracy.hpp"

#include <cmath>
#include <limits>

#include "genz/planarity.hpp"

namespace genz {

Mat3 TranslationalBlock(const LinearSystem &sys) { return sys.A.topLeftCorner<3, 3>(); }

double ConditionNumber(const Mat3 &a_bar) {
    if ((a_bar - a_bar.transpose()).cwiseAbs().maxCoeff() > 1e-9) throw AsymmetricMatrixError{};
    const EigenTriple eig = Eigen3Sym(a_bar);
    const double l_max = eig.values[0];
    const double l_min = eig.values[2];
    if (l_min <= 1e-12 * l_max) return std::numeric_limits<double>::infinity();
    return std::sqrt(l_max / l_min);
}

ConditioningReport AnalyzeConditioning(const LinearSystem &sys) {
    ConditioningReport report;
    report.a_bar = TranslationalBlock(sys);
    report.eigenvalues = Eigen3Sym(report.a_bar).values;
    report.condition_number = ConditionNumber(report.a_bar);
    return report;
}

}  // namespace genz
