#pragma once

#include "epidyn/linalg.hpp"
#include "epidyn/params.hpp"

#include <optional>
#include <string>

namespace epidyn {

/// New-infection and transition matrices evaluated at the disease-free
/// equilibrium; R0 is the spectral radius of F * V^-1.
struct NextGenPair {
    SquareMatrix F;
    SquareMatrix V;
};

/// Closed-form basic reproductive number ((alpha*gamma + sigma)/(delta + sigma)) * beta/gamma.
double r0_serirs(const SerirsParams& p);

/// Closed form with the vaccination factor (psi + rho*phi)/(psi + phi).
double r0_sverirs(const SverirsParams& p);

double r0(const ModelParams& p);

NextGenPair build_nextgen_serirs(const SerirsParams& p);
NextGenPair build_nextgen_sverirs(const SverirsParams& p);

/// Spectral radius of F * V^-1. Throws NumericError("transition matrix
/// singular") when V is not invertible.
double next_generation_r0(const NextGenPair& pair);

/// Immune fraction 1 - 1/r0 above which the disease does not invade.
/// Negative below threshold. Throws ConfigError for r0 <= 0.
double herd_threshold(double r0);

/// Which side of the epidemic threshold R0 sits on. Ties within 1e-12 of 1
/// are reported as threshold rather than silently assigned a side.
enum class R0Side { subcritical, threshold, supercritical };
R0Side r0_side(double r0);

/// Vaccination rate solving R0(phi) = 1, if any. Writing C for the
/// phi-independent factor beta*(alpha*gamma + sigma)/(gamma*(sigma + delta)),
/// the root is phi* = psi*(C - 1)/(1 - C*rho). Absent when C < 1 (subcritical
/// at every vaccination rate) or C*rho >= 1 (no finite rate reaches the
/// threshold); the note says which. p.phi is ignored.
struct CriticalPhi {
    std::optional<double> phi;
    std::string note;
};
CriticalPhi critical_phi(const SverirsParams& p);

} // namespace epidyn
