#pragma once

#include "epidyn/linalg.hpp"
#include "epidyn/model.hpp"
#include "epidyn/params.hpp"

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <vector>

namespace epidyn {

enum class Classification { stable_node, stable_spiral, unstable, center_degenerate };

const char* to_string(Classification c);

/// Sign record of the three determinant/trace criteria that are equivalent
/// to a 3x3 matrix having all eigenvalues in the open left half plane.
struct FullerCriteria {
    double det_m = 0.0;
    double trace_m = 0.0;
    double det_g = 0.0; ///< determinant of the bialternate sum
    bool det_negative = false;
    bool trace_negative = false;
    bool det_g_negative = false;
    bool stable = false;
};

struct StabilityReport {
    SquareMatrix matrix;
    std::vector<std::complex<double>> eigenvalues;
    Classification classification = Classification::center_degenerate;
    std::optional<FullerCriteria> criteria; ///< present for 3x3 matrices
};

/// Linearization of the reduced SE(R)IRS system at the endemic point,
/// expressed through epsilon and R0; independent of n.
SquareMatrix jacobian_serirs_endemic(const SerirsParams& p);

/// Linearization of the reduced SE(R)IRS system at (n,0,0).
SquareMatrix jacobian_serirs_dfe(const SerirsParams& p);

/// The three (always real) eigenvalues of the SE(R)IRS DFE linearization:
/// -omega and the two quadratic roots. The middle one satisfies
/// lambda <= -gamma; the largest has the sign of R0 - 1.
std::array<double, 3> dfe_eigs_closed_serirs(const SerirsParams& p);

/// Linearization of the reduced SVE(R)IRS system at the disease-free point.
SquareMatrix jacobian_sverirs_dfe(const SverirsParams& p);

/// The four (always real) eigenvalues of the SVE(R)IRS DFE linearization:
/// -omega, -(phi+psi), and the two quadratic roots with discriminant
/// Z = 4*beta*sigma*(phi+psi)*(psi+rho*phi) + (alpha*beta*(psi+rho*phi) + (gamma-sigma-delta)*(phi+psi))^2.
std::array<double, 4> dfe_eigs_closed_sverirs(const SverirsParams& p);

/// Central-difference Jacobian of a vector field, used as the validation
/// oracle for the analytic matrices and as the only linearization of the
/// SVE(R)IRS endemic point, which has no tractable closed form.
SquareMatrix jacobian_numeric(const std::function<ReducedState(const ReducedState&)>& rhs,
                              const ReducedState& point, double step);

/// Bialternate sum 2*(m (.) I). Rows and columns are indexed by the pairs
/// (1,2),(1,3),(2,3),... of the k(k-1)/2 index pairs i < j in lexicographic
/// order; the eigenvalues are exactly the pairwise sums of m's eigenvalues.
SquareMatrix bialternate_sum(const SquareMatrix& m);

/// Stability test for order 3: det m < 0, trace m < 0, and det of the
/// bialternate sum < 0 together are equivalent to a strict sink.
FullerCriteria fuller_criteria_3x3(const SquareMatrix& m);

/// Classifies a spectrum. Real parts within 1e-12 of zero are reported as
/// center-degenerate rather than forced to a side; a stable point with a
/// complex pair is a spiral (epidemic waves).
Classification classify(const std::vector<std::complex<double>>& eigs);

/// Eigenvalues + classification, with the Fuller record attached for 3x3.
StabilityReport stability_report(const SquareMatrix& m);

} // namespace epidyn
