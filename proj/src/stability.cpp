#include "epidyn/stability.hpp"

#include "epidyn/equilibria.hpp"
#include "epidyn/errors.hpp"
#include "epidyn/reproduction.hpp"

#include <cmath>
#include <stdexcept>

namespace epidyn {

const char* to_string(Classification c)
{
    switch (c) {
    case Classification::stable_node: return "stable-node";
    case Classification::stable_spiral: return "stable-spiral";
    case Classification::unstable: return "unstable";
    case Classification::center_degenerate: return "center-degenerate";
    }
    return "?";
}

SquareMatrix jacobian_serirs_endemic(const SerirsParams& p)
{
    const double R0 = r0_serirs(p);
    if (std::abs(R0 - 1.0) <= 1e-12)
        throw NumericError("degenerate: endemic coincides with DFE at R0 = 1");
    const double eps = epsilon_serirs(p);
    const double ew = eps * p.omega * (p.delta + p.sigma);

    SquareMatrix m(3);
    m.at(0, 0) = -ew - p.omega;
    m.at(0, 1) = -p.alpha * p.beta / R0 - p.omega;
    m.at(0, 2) = -p.beta / R0 - p.omega;
    m.at(1, 0) = ew;
    m.at(1, 1) = -p.beta * p.sigma / (p.gamma * R0);
    m.at(1, 2) = p.beta / R0;
    m.at(2, 1) = p.sigma;
    m.at(2, 2) = -p.gamma;
    return m;
}

SquareMatrix jacobian_serirs_dfe(const SerirsParams& p)
{
    SquareMatrix m(3);
    m.at(0, 0) = -p.omega;
    m.at(0, 1) = -p.alpha * p.beta - p.omega;
    m.at(0, 2) = -p.beta - p.omega;
    m.at(1, 1) = p.alpha * p.beta - p.delta - p.sigma;
    m.at(1, 2) = p.beta;
    m.at(2, 1) = p.sigma;
    m.at(2, 2) = -p.gamma;
    return m;
}

std::array<double, 3> dfe_eigs_closed_serirs(const SerirsParams& p)
{
    const double sum = p.alpha * p.beta - p.gamma - p.delta - p.sigma;
    // The discriminant simplifies to 4*beta*sigma + (alpha*beta + gamma - delta - sigma)^2,
    // manifestly nonnegative, so both roots are real.
    const double disc = 4.0 * p.beta * p.sigma
                        + (p.alpha * p.beta + p.gamma - p.delta - p.sigma)
                              * (p.alpha * p.beta + p.gamma - p.delta - p.sigma);
    const double root = std::sqrt(disc);
    return {-p.omega, 0.5 * (sum - root), 0.5 * (sum + root)};
}

SquareMatrix jacobian_sverirs_dfe(const SverirsParams& p)
{
    const SerirsParams& b = p.base;
    const double tot = p.phi + p.psi;
    const double kap = (p.psi + p.rho * p.phi) / tot;

    SquareMatrix m(4);
    m.at(0, 0) = -p.phi - b.omega;
    m.at(0, 1) = -b.alpha * b.beta * p.psi / tot - b.omega;
    m.at(0, 2) = -b.beta * p.psi / tot - b.omega;
    m.at(0, 3) = p.psi - b.omega;

    m.at(1, 1) = b.alpha * b.beta * kap - b.delta - b.sigma;
    m.at(1, 2) = b.beta * kap;

    m.at(2, 1) = b.sigma;
    m.at(2, 2) = -b.gamma;

    m.at(3, 0) = p.phi;
    m.at(3, 1) = -b.alpha * b.beta * p.rho * p.phi / tot;
    m.at(3, 2) = -b.beta * p.rho * p.phi / tot;
    m.at(3, 3) = -p.psi;
    return m;
}

std::array<double, 4> dfe_eigs_closed_sverirs(const SverirsParams& p)
{
    const SerirsParams& b = p.base;
    const double tot = p.phi + p.psi;
    const double pr = p.psi + p.rho * p.phi;
    const double z = 4.0 * b.beta * b.sigma * tot * pr
                     + (b.alpha * b.beta * pr + (b.gamma - b.sigma - b.delta) * tot)
                           * (b.alpha * b.beta * pr + (b.gamma - b.sigma - b.delta) * tot);
    const double root = std::sqrt(z);
    const double sum = b.alpha * b.beta * pr - tot * (b.gamma + b.delta + b.sigma);
    return {-b.omega, -tot, (sum - root) / (2.0 * tot), (sum + root) / (2.0 * tot)};
}

SquareMatrix jacobian_numeric(const std::function<ReducedState(const ReducedState&)>& rhs,
                              const ReducedState& point, double step)
{
    if (!(step > 0.0)) throw std::invalid_argument("jacobian_numeric: step must be positive");
    const int k = static_cast<int>(point.size());
    SquareMatrix J(k);
    for (int j = 0; j < k; ++j) {
        ReducedState hi = point, lo = point;
        hi[j] += step;
        lo[j] -= step;
        const ReducedState fhi = rhs(hi), flo = rhs(lo);
        for (int i = 0; i < k; ++i) {
            const double d = (fhi[i] - flo[i]) / (2.0 * step);
            if (!std::isfinite(d)) throw NumericError("jacobian_numeric: non-finite field evaluation");
            J.at(i, j) = d;
        }
    }
    return J;
}

SquareMatrix bialternate_sum(const SquareMatrix& m)
{
    const int k = m.order;
    if (k < 2) throw std::invalid_argument("bialternate_sum: order must be >= 2");

    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(k * (k - 1) / 2);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) pairs.emplace_back(i, j);

    SquareMatrix B(static_cast<int>(pairs.size()));
    for (size_t r = 0; r < pairs.size(); ++r) {
        const auto [i, j] = pairs[r];
        for (size_t c = 0; c < pairs.size(); ++c) {
            const auto [kk, ll] = pairs[c];
            double v = 0.0;
            if (kk == i && ll == j) v = m.at(i, i) + m.at(j, j);
            else if (ll == i) v = -m.at(j, kk);
            else if (kk == i) v = m.at(j, ll);
            else if (ll == j) v = m.at(i, kk);
            else if (kk == j) v = -m.at(i, ll);
            B.at(static_cast<int>(r), static_cast<int>(c)) = v;
        }
    }
    return B;
}

FullerCriteria fuller_criteria_3x3(const SquareMatrix& m)
{
    if (m.order != 3) throw std::invalid_argument("fuller_criteria_3x3: order must be 3");
    FullerCriteria f;
    f.det_m = determinant(m);
    f.trace_m = trace(m);
    f.det_g = determinant(bialternate_sum(m));
    f.det_negative = f.det_m < 0.0;
    f.trace_negative = f.trace_m < 0.0;
    f.det_g_negative = f.det_g < 0.0;
    f.stable = f.det_negative && f.trace_negative && f.det_g_negative;
    return f;
}

Classification classify(const std::vector<std::complex<double>>& eigs)
{
    constexpr double band = 1e-12;
    bool any_positive = false, all_negative = true, any_complex = false;
    for (const auto& ev : eigs) {
        if (ev.real() > band) any_positive = true;
        if (!(ev.real() < -band)) all_negative = false;
        if (std::abs(ev.imag()) > band) any_complex = true;
    }
    if (any_positive) return Classification::unstable;
    if (all_negative)
        return any_complex ? Classification::stable_spiral : Classification::stable_node;
    return Classification::center_degenerate;
}

StabilityReport stability_report(const SquareMatrix& m)
{
    StabilityReport rep;
    rep.matrix = m;
    rep.eigenvalues = eigenvalues(m);
    rep.classification = classify(rep.eigenvalues);
    if (m.order == 3) rep.criteria = fuller_criteria_3x3(m);
    return rep;
}

} // namespace epidyn
