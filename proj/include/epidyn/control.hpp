#pragma once

#include "epidyn/integrate.hpp"
#include "epidyn/model.hpp"
#include "epidyn/params.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace epidyn {

/// Piecewise-constant vaccination schedule: values[k] applies on
/// [breakpoints[k], breakpoints[k+1]).
struct ControlSchedule {
    std::vector<double> breakpoints; ///< N+1 increasing times spanning [0,T]
    std::vector<double> values;      ///< N control levels

    double value_at(double t) const;
};

/// Cost functionals for the vaccination problem. The first four are the
/// standard choices; endemic_infected scores the symptomatic count at the
/// endemic equilibrium associated with the terminal control level and is
/// experimental.
enum class CostKind {
    final_infected,                      // J1 = I(T)
    integral_infected,                   // J2 = int I dt
    integral_infected_plus_control,      // J3 = int (I + u) dt
    final_infected_plus_integral_control,// J4 = I(T) + int u dt
    endemic_infected,                    // J5 = I at the endemic point for u(T)
};

CostKind cost_kind_from_string(const std::string& name);
const char* to_string(CostKind c);

struct ControlProblem {
    SverirsParams params; ///< phi is ignored; u replaces it
    State x0;             ///< 5 components
    double horizon = 1825.0;
    double u_min = 0.0;
    double u_max = 1.0 / 360.0;
    CostKind cost = CostKind::integral_infected;
    int intervals = 24;
    int max_iterations = 500;
    /// Cost evaluations run much tighter than plotting simulations so that
    /// finite-difference gradients stay clean.
    double rel_tol = 1e-11;
    double abs_tol = 1e-13;
};

struct ControlSolution {
    ControlSchedule schedule;
    double cost = 0.0;
    Trajectory trajectory;
    int iterations = 0;
    bool converged = false;
    std::vector<double> cost_history; ///< accepted costs of the best start
};

/// SVE(R)IRS field with the vaccination rate supplied as a control value:
/// drift(x) + u * (-S, 0, 0, 0, S).
State controlled_rhs(const State& x, const SverirsParams& p, double u);

ControlSchedule constant_schedule(const ControlProblem& prob, double u);

/// Simulates under the schedule with the infected-count and control
/// integrals carried as extra quadrature states, and assembles the cost.
double evaluate_cost(const ControlProblem& prob, const ControlSchedule& sched);

/// Trajectory of the model states under the schedule, sampled every stride days.
Trajectory simulate_schedule(const ControlProblem& prob, const ControlSchedule& sched,
                             double stride);

/// Forward-difference cost gradient in the interval values (one-sided into
/// the box at the bounds).
std::vector<double> cost_gradient(const ControlProblem& prob, const ControlSchedule& sched);

/// Max deviation of cost_gradient from a central-difference probe at step
/// 1e-6 * u_max, relative to the gradient scale.
double gradient_check(const ControlProblem& prob, const ControlSchedule& sched);

/// Projected-gradient descent over the interval values with backtracking
/// line search and multi-start (both constant extremes plus five random
/// schedules); returns the best run.
ControlSolution optimize(const ControlProblem& prob);

/// Header t_start,t_end,u; one row per interval.
void write_schedule_csv(std::ostream& os, const ControlSchedule& sched);

} // namespace epidyn
