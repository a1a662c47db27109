#include "epidyn/control.hpp"

#include "epidyn/equilibria.hpp"
#include "epidyn/errors.hpp"
#include "epidyn/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>

namespace epidyn {

double ControlSchedule::value_at(double t) const
{
    if (breakpoints.size() < 2 || values.size() + 1 != breakpoints.size())
        throw std::invalid_argument("ControlSchedule: malformed breakpoints/values");
    if (t <= breakpoints.front()) return values.front();
    if (t >= breakpoints.back()) return values.back();
    const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
    const size_t k = static_cast<size_t>(it - breakpoints.begin()) - 1;
    return values[std::min(k, values.size() - 1)];
}

CostKind cost_kind_from_string(const std::string& name)
{
    if (name == "J1") return CostKind::final_infected;
    if (name == "J2") return CostKind::integral_infected;
    if (name == "J3") return CostKind::integral_infected_plus_control;
    if (name == "J4") return CostKind::final_infected_plus_integral_control;
    if (name == "J5") return CostKind::endemic_infected;
    throw ConfigError("unknown cost functional: " + name + " (expected J1..J5)");
}

const char* to_string(CostKind c)
{
    switch (c) {
    case CostKind::final_infected: return "J1";
    case CostKind::integral_infected: return "J2";
    case CostKind::integral_infected_plus_control: return "J3";
    case CostKind::final_infected_plus_integral_control: return "J4";
    case CostKind::endemic_infected: return "J5";
    }
    return "?";
}

State controlled_rhs(const State& x, const SverirsParams& p, double u)
{
    State d = sverirs_drift(x, p);
    d[0] += u * -x[0];
    d[4] += u * x[0];
    return d;
}

ControlSchedule constant_schedule(const ControlProblem& prob, double u)
{
    ControlSchedule s;
    s.breakpoints.resize(prob.intervals + 1);
    for (int k = 0; k <= prob.intervals; ++k)
        s.breakpoints[k] = prob.horizon * static_cast<double>(k) / prob.intervals;
    s.values.assign(prob.intervals, u);
    return s;
}

namespace {

void check_problem(const ControlProblem& prob, const ControlSchedule& sched)
{
    if (prob.x0.size() != 5) throw ConfigError("control: x0 needs 5 components");
    if (!(prob.horizon > 0.0)) throw ConfigError("control: horizon must be positive");
    if (!(prob.u_min >= 0.0) || !(prob.u_max >= prob.u_min))
        throw ConfigError("control: bounds must satisfy 0 <= u_min <= u_max");
    if (sched.breakpoints.size() < 2 || sched.values.size() + 1 != sched.breakpoints.size())
        throw ConfigError("control: malformed schedule");
    if (std::abs(sched.breakpoints.front()) > 1e-9 ||
        std::abs(sched.breakpoints.back() - prob.horizon) > 1e-9 * std::max(1.0, prob.horizon))
        throw ConfigError("control: schedule must span [0, T]");
    for (size_t k = 1; k < sched.breakpoints.size(); ++k)
        if (!(sched.breakpoints[k] > sched.breakpoints[k - 1]))
            throw ConfigError("control: breakpoints must increase");
}

struct AugmentedRun {
    State terminal;        // 5 model components at T
    double integral_i = 0; // int_0^T I dt
    double integral_u = 0; // int_0^T u dt
    Trajectory trajectory; // model components only, when stride > 0
};

// Integrates interval by interval so the control discontinuities land on
// segment boundaries; the infected and control integrals ride along as
// quadrature states 5 and 6.
AugmentedRun run_schedule(const ControlProblem& prob, const ControlSchedule& sched, double stride)
{
    check_problem(prob, sched);
    const SverirsParams& p = prob.params;

    std::vector<double> y(7, 0.0);
    std::copy(prob.x0.begin(), prob.x0.end(), y.begin());

    AugmentedRun out;
    if (stride > 0.0) {
        out.trajectory.model = "sverirs";
        out.trajectory.times.push_back(0.0);
        out.trajectory.states.push_back(prob.x0);
    }

    for (size_t k = 0; k < sched.values.size(); ++k) {
        const double u = sched.values[k];
        const double t0 = sched.breakpoints[k], t1 = sched.breakpoints[k + 1];

        OdeSystem sys;
        sys.dim = 7;
        sys.f = [&p, u](double, const double* x, double* dx) {
            const SerirsParams& b = p.base;
            const double force = b.beta * x[0] * (x[2] + b.alpha * x[1]) / b.n;
            const double leak = p.rho * b.beta * x[4] * (x[2] + b.alpha * x[1]) / b.n;
            dx[0] = -force + b.omega * x[3] + p.psi * x[4] - u * x[0];
            dx[1] = force - (b.sigma + b.delta) * x[1] + leak;
            dx[2] = b.sigma * x[1] - b.gamma * x[2];
            dx[3] = b.delta * x[1] + b.gamma * x[2] - b.omega * x[3];
            dx[4] = -leak - p.psi * x[4] + u * x[0];
            dx[5] = x[2]; // infected-count integral
            dx[6] = u;    // control integral
        };

        IntegrationOptions opts;
        opts.rel_tol = prob.rel_tol;
        opts.abs_tol = prob.abs_tol;
        opts.t_end = t1 - t0;
        opts.stride = stride > 0.0 ? stride : (t1 - t0);
        Trajectory seg = integrate_system(sys, y, opts, "sverirs");

        if (stride > 0.0) {
            for (size_t i = 1; i < seg.times.size(); ++i) {
                out.trajectory.times.push_back(t0 + seg.times[i]);
                State row(seg.states[i].begin(), seg.states[i].begin() + 5);
                out.trajectory.states.push_back(std::move(row));
            }
        }
        // Chained across intervals through the emitted terminal row; at the
        // cost tolerances the output clamp floor is ~1e-12 and both
        // quadrature states are nondecreasing, so the handoff is lossless.
        y = seg.states.back();
    }

    out.terminal.assign(y.begin(), y.begin() + 5);
    out.integral_i = y[5];
    out.integral_u = y[6];
    return out;
}

double endemic_infected_cost(const ControlProblem& prob, double terminal_u)
{
    SverirsParams p = prob.params;
    p.phi = terminal_u;
    const Equilibrium eq = endemic_sverirs_refine(p, endemic_sverirs_guess(p));
    return eq.point[2];
}

} // namespace

double evaluate_cost(const ControlProblem& prob, const ControlSchedule& sched)
{
    if (prob.cost == CostKind::endemic_infected) {
        check_problem(prob, sched);
        return endemic_infected_cost(prob, sched.values.back());
    }

    const AugmentedRun run = run_schedule(prob, sched, 0.0);
    switch (prob.cost) {
    case CostKind::final_infected: return run.terminal[2];
    case CostKind::integral_infected: return run.integral_i;
    case CostKind::integral_infected_plus_control: return run.integral_i + run.integral_u;
    case CostKind::final_infected_plus_integral_control:
        return run.terminal[2] + run.integral_u;
    default: break;
    }
    throw std::logic_error("evaluate_cost: unhandled cost kind");
}

Trajectory simulate_schedule(const ControlProblem& prob, const ControlSchedule& sched, double stride)
{
    return run_schedule(prob, sched, stride > 0.0 ? stride : prob.horizon / 400.0).trajectory;
}

namespace {

std::vector<double> gradient_at(const ControlProblem& prob, const ControlSchedule& sched,
                                double base_cost, double step)
{
    const int n = static_cast<int>(sched.values.size());
    std::vector<double> g(n, 0.0);
    parallel_for(n, [&](int k) {
        ControlSchedule probe = sched;
        // One-sided step into the box.
        const bool backward = sched.values[k] + step > prob.u_max;
        probe.values[k] = backward ? sched.values[k] - step : sched.values[k] + step;
        const double c = evaluate_cost(prob, probe);
        g[k] = (backward ? base_cost - c : c - base_cost) / step;
    });
    return g;
}

std::vector<double> central_gradient(const ControlProblem& prob, const ControlSchedule& sched,
                                     double step)
{
    const int n = static_cast<int>(sched.values.size());
    std::vector<double> g(n, 0.0);
    parallel_for(n, [&](int k) {
        ControlSchedule hi = sched, lo = sched;
        hi.values[k] += step;
        lo.values[k] -= step;
        g[k] = (evaluate_cost(prob, hi) - evaluate_cost(prob, lo)) / (2.0 * step);
    });
    return g;
}

double fd_step(const ControlProblem& prob)
{
    const double scale = prob.u_max > 0.0 ? prob.u_max : 1.0;
    return 1e-4 * scale;
}

struct DescentResult {
    ControlSchedule schedule;
    double cost = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> history;
};

DescentResult descend(const ControlProblem& prob, ControlSchedule u)
{
    DescentResult res;
    double cost = evaluate_cost(prob, u);
    res.history.push_back(cost);

    const double h = fd_step(prob);
    const auto project = [&](double v) { return std::clamp(v, prob.u_min, prob.u_max); };

    for (int iter = 0; iter < prob.max_iterations; ++iter) {
        res.iterations = iter + 1;
        const std::vector<double> g = gradient_at(prob, u, cost, h);

        double gmax = 0.0, pgnorm = 0.0;
        for (size_t k = 0; k < g.size(); ++k) {
            gmax = std::max(gmax, std::abs(g[k]));
            const double moved = u.values[k] - project(u.values[k] - g[k]);
            pgnorm += moved * moved;
        }
        pgnorm = std::sqrt(pgnorm);
        if (pgnorm <= 1e-6) {
            res.converged = true;
            break;
        }
        if (gmax == 0.0) break;

        // First trial step drives the steepest coordinate across the box.
        double t = (prob.u_max - prob.u_min) / gmax;
        bool improved = false;
        for (int ls = 0; ls < 40 && !improved; ++ls, t *= 0.5) {
            ControlSchedule trial = u;
            double predicted = 0.0;
            bool moved_any = false;
            for (size_t k = 0; k < g.size(); ++k) {
                trial.values[k] = project(u.values[k] - t * g[k]);
                predicted += g[k] * (u.values[k] - trial.values[k]);
                moved_any = moved_any || trial.values[k] != u.values[k];
            }
            if (!moved_any) break;
            const double trial_cost = evaluate_cost(prob, trial);
            if (trial_cost < cost && trial_cost <= cost - 1e-4 * predicted) {
                u = std::move(trial);
                cost = trial_cost;
                res.history.push_back(cost);
                improved = true;
            }
        }
        if (!improved) break; // no acceptable descent step
    }

    res.schedule = std::move(u);
    res.cost = cost;
    return res;
}

} // namespace

std::vector<double> cost_gradient(const ControlProblem& prob, const ControlSchedule& sched)
{
    return gradient_at(prob, sched, evaluate_cost(prob, sched), fd_step(prob));
}

double gradient_check(const ControlProblem& prob, const ControlSchedule& sched)
{
    const double base = evaluate_cost(prob, sched);
    const std::vector<double> g = gradient_at(prob, sched, base, fd_step(prob));
    const std::vector<double> ref = central_gradient(prob, sched, 1e-6 * prob.u_max);

    double ref_scale = 0.0;
    for (double v : ref) ref_scale = std::max(ref_scale, std::abs(v));
    if (ref_scale == 0.0) ref_scale = 1.0;

    double worst = 0.0;
    for (size_t k = 0; k < g.size(); ++k)
        worst = std::max(worst, std::abs(g[k] - ref[k]) / ref_scale);
    return worst;
}

ControlSolution optimize(const ControlProblem& prob)
{
    {
        SverirsParams check = prob.params;
        if (check.phi <= 0.0) check.phi = 1.0; // phi is the control here, not a parameter
        require_valid(check);
    }
    if (prob.intervals < 1) throw ConfigError("control: intervals must be >= 1");

    ControlSolution best;
    best.cost = std::numeric_limits<double>::infinity();

    if (prob.u_max == prob.u_min) {
        // Degenerate box: the only feasible schedule.
        best.schedule = constant_schedule(prob, prob.u_min);
        best.cost = evaluate_cost(prob, best.schedule);
        best.cost_history = {best.cost};
        best.converged = true;
        best.trajectory = simulate_schedule(prob, best.schedule, 0.0);
        return best;
    }

    std::vector<ControlSchedule> starts;
    starts.push_back(constant_schedule(prob, prob.u_max));
    starts.push_back(constant_schedule(prob, prob.u_min));
    std::mt19937_64 rng(0x5eed5eedULL);
    std::uniform_real_distribution<double> uni(prob.u_min, prob.u_max);
    for (int s = 0; s < 5; ++s) {
        ControlSchedule r = constant_schedule(prob, prob.u_min);
        for (double& v : r.values) v = uni(rng);
        starts.push_back(std::move(r));
    }

    int total_iterations = 0;
    for (const ControlSchedule& s : starts) {
        DescentResult run = descend(prob, s);
        total_iterations += run.iterations;
        if (run.cost < best.cost) {
            best.schedule = std::move(run.schedule);
            best.cost = run.cost;
            best.converged = run.converged;
            best.cost_history = std::move(run.history);
        }
    }
    best.iterations = total_iterations;
    best.trajectory = simulate_schedule(prob, best.schedule, 0.0);
    return best;
}

void write_schedule_csv(std::ostream& os, const ControlSchedule& sched)
{
    os << "t_start,t_end,u\n";
    char buf[32];
    for (size_t k = 0; k < sched.values.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g", sched.breakpoints[k]);
        os << buf << ',';
        std::snprintf(buf, sizeof buf, "%.17g", sched.breakpoints[k + 1]);
        os << buf << ',';
        std::snprintf(buf, sizeof buf, "%.17g", sched.values[k]);
        os << buf << '\n';
    }
}

} // namespace epidyn
