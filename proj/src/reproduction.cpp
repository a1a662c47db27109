#include "epidyn/reproduction.hpp"

#include "epidyn/errors.hpp"

#include <cmath>
#include <complex>

namespace epidyn {

double r0_serirs(const SerirsParams& p)
{
    return (p.alpha * p.gamma + p.sigma) / (p.delta + p.sigma) * (p.beta / p.gamma);
}

double r0_sverirs(const SverirsParams& p)
{
    return r0_serirs(p.base) * (p.psi + p.rho * p.phi) / (p.psi + p.phi);
}

double r0(const ModelParams& p)
{
    if (const auto* s = std::get_if<SerirsParams>(&p)) return r0_serirs(*s);
    return r0_sverirs(std::get<SverirsParams>(p));
}

NextGenPair build_nextgen_serirs(const SerirsParams& p)
{
    NextGenPair pair{SquareMatrix(2), SquareMatrix(2)};
    pair.F.at(0, 0) = p.alpha * p.beta;
    pair.F.at(0, 1) = p.beta;
    pair.V.at(0, 0) = p.sigma + p.delta;
    pair.V.at(1, 0) = -p.sigma;
    pair.V.at(1, 1) = p.gamma;
    return pair;
}

NextGenPair build_nextgen_sverirs(const SverirsParams& p)
{
    NextGenPair pair = build_nextgen_serirs(p.base);
    const double factor = (p.psi + p.rho * p.phi) / (p.phi + p.psi);
    pair.F.at(0, 0) *= factor;
    pair.F.at(0, 1) *= factor;
    return pair;
}

double next_generation_r0(const NextGenPair& pair)
{
    const int k = pair.V.order;
    const double det = determinant(pair.V);
    if (!(std::abs(det) > 1e-300)) throw NumericError("transition matrix singular");

    // K = F * V^-1 via k solves of V^T y = F_row.
    SquareMatrix K(k);
    SquareMatrix Vt(k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) Vt.at(i, j) = pair.V.at(j, i);
    for (int i = 0; i < k; ++i) {
        std::vector<double> row(k);
        for (int j = 0; j < k; ++j) row[j] = pair.F.at(i, j);
        std::vector<double> sol = solve_linear(Vt, row);
        for (int j = 0; j < k; ++j) K.at(i, j) = sol[j];
    }

    double radius = 0.0;
    for (const auto& ev : eigenvalues(K)) radius = std::max(radius, std::abs(ev));
    return radius;
}

double herd_threshold(double r0)
{
    if (!(r0 > 0.0)) throw ConfigError("herd_threshold requires r0 > 0");
    return 1.0 - 1.0 / r0;
}

R0Side r0_side(double r0)
{
    if (std::abs(r0 - 1.0) <= 1e-12) return R0Side::threshold;
    return r0 < 1.0 ? R0Side::subcritical : R0Side::supercritical;
}

CriticalPhi critical_phi(const SverirsParams& p)
{
    const SerirsParams& b = p.base;
    const double c = b.beta * (b.alpha * b.gamma + b.sigma) / (b.gamma * (b.sigma + b.delta));
    if (c < 1.0) return {std::nullopt, "subcritical for all phi >= 0"};
    if (c == 1.0) return {0.0, ""};
    if (c * p.rho >= 1.0)
        return {std::nullopt, "vaccine cannot reduce R0 below " + std::to_string(c * p.rho)};
    return {p.psi * (c - 1.0) / (1.0 - c * p.rho), ""};
}

} // namespace epidyn
