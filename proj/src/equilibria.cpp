#include "epidyn/equilibria.hpp"

#include "epidyn/errors.hpp"
#include "epidyn/linalg.hpp"
#include "epidyn/reproduction.hpp"

#include <cmath>
#include <sstream>

namespace epidyn {

const char* to_string(EquilibriumKind k)
{
    return k == EquilibriumKind::disease_free ? "disease-free" : "endemic";
}

bool relevance(const State& point)
{
    for (double c : point)
        if (!(c > 0.0)) return false;
    return true;
}

namespace {

double rhs_residual(const State& x, const SerirsParams& p)
{
    double r = 0.0;
    for (double d : serirs_rhs(x, p)) r = std::max(r, std::abs(d));
    return r;
}

double rhs_residual(const State& x, const SverirsParams& p)
{
    double r = 0.0;
    for (double d : sverirs_rhs(x, p)) r = std::max(r, std::abs(d));
    return r;
}

} // namespace

double epsilon_serirs(const SerirsParams& p)
{
    const double num = p.beta * (p.alpha * p.gamma + p.sigma) - p.gamma * (p.delta + p.sigma);
    const double den = p.sigma * p.omega + p.gamma * (p.delta + p.sigma + p.omega);
    return num / ((p.delta + p.sigma) * den);
}

Equilibrium dfe_serirs(const SerirsParams& p)
{
    Equilibrium eq;
    eq.point = {p.n, 0.0, 0.0, 0.0};
    eq.kind = EquilibriumKind::disease_free;
    eq.relevant = true;
    eq.residual = rhs_residual(eq.point, p);
    return eq;
}

Equilibrium endemic_serirs(const SerirsParams& p)
{
    const double R0 = r0_serirs(p);
    if (std::abs(R0 - 1.0) <= 1e-12)
        throw NumericError("degenerate: endemic coincides with DFE at R0 = 1");
    const double eps = epsilon_serirs(p);
    const double scale = p.n / R0;
    Equilibrium eq;
    eq.point = {
        scale,
        scale * p.omega * eps,
        scale * p.sigma * p.omega * eps / p.gamma,
        scale * (p.sigma + p.delta) * eps,
    };
    eq.kind = EquilibriumKind::endemic;
    eq.relevant = relevance(eq.point);
    eq.residual = rhs_residual(eq.point, p);
    return eq;
}

Equilibrium dfe_sverirs(const SverirsParams& p)
{
    const double n = p.base.n;
    Equilibrium eq;
    eq.point = {p.psi * n / (p.phi + p.psi), 0.0, 0.0, 0.0, p.phi * n / (p.phi + p.psi)};
    eq.kind = EquilibriumKind::disease_free;
    eq.relevant = true;
    eq.residual = rhs_residual(eq.point, p);
    return eq;
}

namespace {

// One square-root-conjugate endemic candidate. The S and E components follow
// the closed form directly; I, R, V come from the exact fixed-point identities
// I = sigma*E/gamma, R = (delta+sigma)*E/omega, V = n - S - E - I - R, which
// any root of the reduced field satisfies.
State endemic_sverirs_candidate(const SverirsParams& p, double root_sign, double sqrt_y)
{
    const SerirsParams& b = p.base;
    const double a = b.alpha, beta = b.beta, g = b.gamma, d = b.delta;
    const double s = b.sigma, w = b.omega, n = b.n;
    const double phi = p.phi, psi = p.psi, rho = p.rho;

    const double K = a * g + s;                      // alpha*gamma + sigma
    const double W = s * w + g * (d + s + w);        // recurring denominator block
    const double pr = psi + phi * rho;               // psi + rho*phi
    const double rY = root_sign * sqrt_y;

    const double S = (beta * beta * g * n * rho * K * K * w
                      + beta * g * n * K
                            * (g * pr * (d + s) + pr * s * w
                               + g * (psi + d * (rho - 2.0) + phi * rho + (rho - 2.0) * s) * w)
                      - rY)
                     / (2.0 * beta * beta * g * (rho - 1.0) * K * K * w);

    const double E = (beta * beta * g * n * rho * K * K * w
                      + beta * g * n * K
                            * (-g * pr * (d + s) - (pr * s + g * (psi + rho * (d + phi + s))) * w)
                      + rY)
                     / (2.0 * beta * beta * rho * K * K * W);

    const double I = s * E / g;
    const double R = (d + s) * E / w;
    const double V = n - S - E - I - R;
    return {S, E, I, R, V};
}

} // namespace

EndemicCandidates endemic_sverirs_closed(const SverirsParams& p)
{
    const SerirsParams& b = p.base;
    if (p.rho == 0.0)
        throw NumericError("closed form undefined at rho=0, use numeric path");

    const double a = b.alpha, beta = b.beta, g = b.gamma, d = b.delta;
    const double s = b.sigma, w = b.omega, n = b.n;
    const double phi = p.phi, psi = p.psi, rho = p.rho;
    const double K = a * g + s;
    const double W = s * w + g * (d + s + w);
    const double pr = psi + phi * rho;

    const double lin = g * pr * (d + s) + (psi + (phi - beta) * rho) * s * w
                       + g * (psi + rho * (d + phi + s - a * beta)) * w;
    const double quad = -beta * pr * s + g * (d * (phi + psi) - a * beta * pr + (phi + psi) * s);
    const double Y = beta * beta * g * g * n * n * K * K * (lin * lin - 4.0 * rho * quad * w * W);

    if (Y < 0.0) throw NumericError("complex pair: no real endemic candidates");
    const double sqrt_y = std::sqrt(Y);

    EndemicCandidates out;
    out.radicand = Y;
    for (auto [eq, sign] : {std::pair{&out.p2, -1.0}, std::pair{&out.p3, +1.0}}) {
        eq->point = endemic_sverirs_candidate(p, sign, sqrt_y);
        eq->kind = EquilibriumKind::endemic;
        eq->relevant = relevance(eq->point);
        eq->residual = rhs_residual(eq->point, p);
    }
    return out;
}

namespace {

// Jacobian of the reduced 4-dimensional field at x = (S,E,I,V).
SquareMatrix sverirs_reduced_jacobian(const ReducedState& x, const SverirsParams& p)
{
    const SerirsParams& b = p.base;
    const double S = x[0], E = x[1], I = x[2], V = x[3];
    const double contact = (I + b.alpha * E) / b.n;

    SquareMatrix J(4);
    J.at(0, 0) = -b.beta * contact - b.omega - p.phi;
    J.at(0, 1) = -b.alpha * b.beta * S / b.n - b.omega;
    J.at(0, 2) = -b.beta * S / b.n - b.omega;
    J.at(0, 3) = -b.omega + p.psi;

    J.at(1, 0) = b.beta * contact;
    J.at(1, 1) = b.alpha * b.beta * S / b.n - (b.sigma + b.delta) + p.rho * b.alpha * b.beta * V / b.n;
    J.at(1, 2) = b.beta * S / b.n + p.rho * b.beta * V / b.n;
    J.at(1, 3) = p.rho * b.beta * contact;

    J.at(2, 1) = b.sigma;
    J.at(2, 2) = -b.gamma;

    J.at(3, 0) = p.phi;
    J.at(3, 1) = -p.rho * b.alpha * b.beta * V / b.n;
    J.at(3, 2) = -p.rho * b.beta * V / b.n;
    J.at(3, 3) = -p.rho * b.beta * contact - p.psi;
    return J;
}

double max_abs_vec(const std::vector<double>& v)
{
    double r = 0.0;
    for (double d : v) r = std::max(r, std::abs(d));
    return r;
}

} // namespace

ReducedState endemic_sverirs_guess(const SverirsParams& p)
{
    const SerirsParams& b = p.base;
    if (p.rho == 0.0 && b.beta > 0.0) {
        // With a perfect vaccine the fixed-point conditions decouple:
        // V = phi*S/psi, S = n/C, and the conservation identity fixes E.
        const double c = b.beta * (b.alpha * b.gamma + b.sigma) / (b.gamma * (b.sigma + b.delta));
        const double s = b.n / c;
        const double e = (b.n - s * (1.0 + p.phi / p.psi))
                         / (1.0 + b.sigma / b.gamma + (b.delta + b.sigma) / b.omega);
        return {s, e, b.sigma * e / b.gamma, p.phi * s / p.psi};
    }
    if (p.rho > 0.0) {
        try {
            return reduce(endemic_sverirs_closed(p).p3.point);
        } catch (const NumericError&) {
            // complex pair: no real candidate to seed from
        }
    }
    return {0.5 * b.n, 0.02 * b.n, 0.02 * b.n, 0.2 * b.n};
}

Equilibrium endemic_sverirs_refine(const SverirsParams& p, const ReducedState& guess)
{
    if (guess.size() != 4)
        throw std::invalid_argument("endemic_sverirs_refine: guess must have 4 components");
    const double n = p.base.n;
    const double tol = 1e-11 * n;
    const int max_iter = 200;

    ReducedState x = guess;
    double res = max_abs_vec(sverirs_reduced_rhs(x, p));

    int iter = 0;
    for (; iter < max_iter && res > tol; ++iter) {
        ReducedState f = sverirs_reduced_rhs(x, p);
        for (double& c : f) c = -c;
        SquareMatrix J = sverirs_reduced_jacobian(x, p);
        std::vector<double> step = solve_linear(J, f);

        // Step halving when the residual does not decrease; the 4D system is
        // stiff near the threshold.
        double lambda = 1.0;
        bool improved = false;
        for (int k = 0; k < 8; ++k, lambda *= 0.5) {
            ReducedState trial(4);
            for (int i = 0; i < 4; ++i) trial[i] = x[i] + lambda * step[i];
            const double trial_res = max_abs_vec(sverirs_reduced_rhs(trial, p));
            if (trial_res < res) {
                x = trial;
                res = trial_res;
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }

    if (res > tol) {
        std::ostringstream os;
        os << "Newton refinement did not converge after " << iter
           << " iterations; last iterate (S,E,I,V)=(" << x[0] << "," << x[1] << "," << x[2] << ","
           << x[3] << "), residual " << res;
        throw NumericError(os.str());
    }

    Equilibrium eq;
    eq.point = recover_full(x, n);
    // A root with no one infected is the disease-free point, not an endemic one.
    const bool disease_free = std::abs(x[1]) <= 1e-9 * n && std::abs(x[2]) <= 1e-9 * n;
    eq.kind = disease_free ? EquilibriumKind::disease_free : EquilibriumKind::endemic;
    eq.relevant = disease_free ? true : relevance(eq.point);
    eq.residual = rhs_residual(eq.point, p);
    return eq;
}

} // namespace epidyn
