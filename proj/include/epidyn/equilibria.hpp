#pragma once

#include "epidyn/model.hpp"
#include "epidyn/params.hpp"

namespace epidyn {

enum class EquilibriumKind { disease_free, endemic };

const char* to_string(EquilibriumKind k);

/// A fixed point of one of the models, in full (S,E,I,R[,V]) coordinates.
/// relevant means every component is strictly positive for endemic points;
/// the disease-free point is relevant by construction. residual is the
/// max-abs of the model RHS at the point, per day.
struct Equilibrium {
    State point;
    EquilibriumKind kind = EquilibriumKind::disease_free;
    bool relevant = false;
    double residual = 0.0;
};

/// Composite rate from the endemic closed form:
/// (1/(delta+sigma)) * (beta*(alpha*gamma+sigma) - gamma*(delta+sigma)) / (sigma*omega + gamma*(delta+sigma+omega)).
/// Positive exactly when R0 > 1.
double epsilon_serirs(const SerirsParams& p);

/// (n, 0, 0, 0).
Equilibrium dfe_serirs(const SerirsParams& p);

/// Closed-form endemic point (n/R0) * (1, omega*eps, sigma*omega*eps/gamma,
/// (sigma+delta)*eps). Throws NumericError when |R0 - 1| <= 1e-12, where the
/// endemic point collides with the disease-free one.
Equilibrium endemic_serirs(const SerirsParams& p);

/// (psi*n/(phi+psi), 0, 0, 0, phi*n/(phi+psi)).
Equilibrium dfe_sverirs(const SverirsParams& p);

/// The two square-root-conjugate endemic candidates of the SVE(R)IRS model.
/// Neither is guaranteed relevant; callers must inspect the flags. Throws
/// NumericError when the radicand is negative (no real candidates) and when
/// rho = 0, where the closed form divides by rho and the numeric path must
/// be used instead.
struct EndemicCandidates {
    Equilibrium p2;
    Equilibrium p3;
    double radicand = 0.0;
};
EndemicCandidates endemic_sverirs_closed(const SverirsParams& p);

/// Damped Newton iteration on the reduced 4-dimensional SVE(R)IRS field,
/// started from guess = (S,E,I,V). Converges to residual <= 1e-11*n or
/// throws NumericError after 200 iterations with the last iterate in the
/// message. A root with empty infected compartments is reported as
/// disease-free.
Equilibrium endemic_sverirs_refine(const SverirsParams& p, const ReducedState& guess);

/// Starting point for the refiner: the closed-form p3 when it exists; at
/// rho = 0 the exact perfect-vaccine endemic point (V = phi*S/psi and
/// S = n/C with C the unvaccinated reproductive number); a generic interior
/// state otherwise.
ReducedState endemic_sverirs_guess(const SverirsParams& p);

/// Strict positivity of every component.
bool relevance(const State& point);

} // namespace epidyn
