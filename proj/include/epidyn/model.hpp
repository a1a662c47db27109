#pragma once

#include "epidyn/params.hpp"

#include <vector>

namespace epidyn {

/// Compartment occupancies in canonical order: (S,E,I,R) for SE(R)IRS,
/// (S,E,I,R,V) for SVE(R)IRS. Values are real-valued head counts; the type
/// admits negative entries so that irrelevant equilibria can be represented.
using State = std::vector<double>;

/// Reduced coordinates with R eliminated: (S,E,I) or (S,E,I,V).
using ReducedState = std::vector<double>;

/// d/dt of the full SE(R)IRS system. Components sum to zero.
State serirs_rhs(const State& x, const SerirsParams& p);

/// d/dt of the 3-dimensional reduced system with R = n - S - E - I.
ReducedState serirs_reduced_rhs(const ReducedState& x, const SerirsParams& p);

/// d/dt of the full SVE(R)IRS system. Components sum to zero.
State sverirs_rhs(const State& x, const SverirsParams& p);

/// d/dt of the 4-dimensional reduced system with R = n - S - E - I - V.
ReducedState sverirs_reduced_rhs(const ReducedState& x, const SverirsParams& p);

/// SVE(R)IRS field with the vaccination terms removed. The full field is
/// drift + phi * vaccination_field, which is the affine structure the
/// control module exploits.
State sverirs_drift(const State& x, const SverirsParams& p);

/// The direction vaccination pushes the state: (-S, 0, 0, 0, S).
State sverirs_vaccination_field(const State& x);

/// Reinserts R = n - sum(x) into the canonical slot: (S,E,I) -> (S,E,I,R),
/// (S,E,I,V) -> (S,E,I,R,V).
State recover_full(const ReducedState& x, double n);

/// Drops R from a full state.
ReducedState reduce(const State& x);

} // namespace epidyn
