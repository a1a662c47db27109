#pragma once

#include "epidyn/model.hpp"
#include "epidyn/params.hpp"

#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace epidyn {

struct IntegrationOptions {
    double rel_tol = 1e-6;
    double abs_tol = 1e-8;
    double max_step = 0.0; ///< 0 means unrestricted
    double t_end = 0.0;    ///< days
    double stride = 1.0;   ///< output spacing, days
};

/// A right-hand side f(t, y, dy) with a fixed dimension.
struct OdeSystem {
    int dim = 0;
    std::function<void(double, const double*, double*)> f;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    std::string model; ///< "serirs" or "sverirs"
};

/// Adaptive Dormand-Prince 5(4) integration from t = 0 to opts.t_end, with
/// cubic Hermite samples every opts.stride days (the final time is always
/// included). Roundoff-scale negative excursions (within ten per-step error
/// budgets, 10*abs_tol) are clamped to zero at output and never inside the
/// stepper; an accepted state past that floor raises NumericError, as does
/// step-size underflow.
Trajectory integrate_system(const OdeSystem& sys, const std::vector<double>& x0,
                            const IntegrationOptions& opts, const std::string& model_tag);

/// SE(R)IRS flow from a 4-component initial state.
Trajectory integrate(const SerirsParams& p, const State& x0, const IntegrationOptions& opts);

/// SVE(R)IRS flow from a 5-component initial state.
Trajectory integrate(const SverirsParams& p, const State& x0, const IntegrationOptions& opts);

Trajectory integrate(const ModelParams& p, const State& x0, const IntegrationOptions& opts);

/// Largest deviation of the component sum from n over the whole trajectory.
double conservation_drift(const Trajectory& traj, double n);

/// Euclidean distance to a fixed target at every sample.
std::vector<std::pair<double, double>> distance_series(const Trajectory& traj, const State& target);

/// Header t,S,E,I,R[,V]; one row per sample at 17 significant digits.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

} // namespace epidyn
