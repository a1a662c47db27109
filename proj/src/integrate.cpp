#include "epidyn/integrate.hpp"

#include "epidyn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

namespace epidyn {

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double C2 = 1.0 / 5.0, C3 = 3.0 / 10.0, C4 = 4.0 / 5.0, C5 = 8.0 / 9.0;
constexpr double A21 = 1.0 / 5.0;
constexpr double A31 = 3.0 / 40.0, A32 = 9.0 / 40.0;
constexpr double A41 = 44.0 / 45.0, A42 = -56.0 / 15.0, A43 = 32.0 / 9.0;
constexpr double A51 = 19372.0 / 6561.0, A52 = -25360.0 / 2187.0, A53 = 64448.0 / 6561.0,
                 A54 = -212.0 / 729.0;
constexpr double A61 = 9017.0 / 3168.0, A62 = -355.0 / 33.0, A63 = 46732.0 / 5247.0,
                 A64 = 49.0 / 176.0, A65 = -5103.0 / 18656.0;
constexpr double A71 = 35.0 / 384.0, A73 = 500.0 / 1113.0, A74 = 125.0 / 192.0,
                 A75 = -2187.0 / 6784.0, A76 = 11.0 / 84.0;
constexpr double E1 = 71.0 / 57600.0, E3 = -71.0 / 16695.0, E4 = 71.0 / 1920.0,
                 E5 = -17253.0 / 339200.0, E6 = 22.0 / 525.0, E7 = -1.0 / 40.0;

constexpr double SAFE = 0.9, FAC1 = 0.2, FAC2 = 10.0, STEP_BETA = 0.04;

// Cubic Hermite interpolation between accepted steps, for the dense output.
// Written in incremental form so a fixed point interpolates exactly.
void hermite(double theta, double h, const std::vector<double>& y0, const std::vector<double>& f0,
             const std::vector<double>& y1, const std::vector<double>& f1, std::vector<double>& out)
{
    for (size_t i = 0; i < y0.size(); ++i) {
        const double dy = y1[i] - y0[i];
        const double a = h * f0[i] - dy;
        const double b = -h * f1[i] + dy;
        out[i] = y0[i] + theta * (dy + (1.0 - theta) * ((1.0 - theta) * a + theta * b));
    }
}

double error_norm(const std::vector<double>& err, const std::vector<double>& y0,
                  const std::vector<double>& y1, double atol, double rtol)
{
    double sum = 0.0;
    for (size_t i = 0; i < err.size(); ++i) {
        const double sk = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        const double q = err[i] / sk;
        sum += q * q;
    }
    return std::sqrt(sum / static_cast<double>(err.size()));
}

} // namespace

Trajectory integrate_system(const OdeSystem& sys, const std::vector<double>& x0,
                            const IntegrationOptions& opts, const std::string& model_tag)
{
    if (!(opts.t_end > 0.0)) throw ConfigError("integrate: t_end must be positive");
    if (!(opts.rel_tol > 0.0) || !(opts.abs_tol > 0.0))
        throw ConfigError("integrate: tolerances must be positive");
    if (static_cast<int>(x0.size()) != sys.dim)
        throw std::invalid_argument("integrate: initial state has wrong dimension");

    const int dim = sys.dim;
    const double hmax = opts.max_step > 0.0 ? std::min(opts.max_step, opts.t_end) : opts.t_end;
    const double stride = opts.stride > 0.0 ? opts.stride : opts.t_end;

    std::vector<double> y = x0, ynew(dim), ysti(dim), err(dim), sample(dim);
    std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim);

    Trajectory traj;
    traj.model = model_tag;

    // A nonnegative flow can undershoot zero by a small multiple of the
    // per-step error budget; such excursions are clamped at output only.
    // Anything past the floor is a genuine failure.
    const double negativity_floor = 10.0 * opts.abs_tol;
    auto emit = [&](double t, const std::vector<double>& state) {
        State row = state;
        for (double& c : row) {
            if (c < 0.0 && c >= -negativity_floor) c = 0.0; // clamp only at output
        }
        traj.times.push_back(t);
        traj.states.push_back(std::move(row));
    };

    double t = 0.0;
    sys.f(t, y.data(), k1.data());
    emit(0.0, y);
    long next_sample = 1;

    // Initial step: conservative fraction of the horizon bounded by the
    // characteristic scale of the field.
    double h = hmax;
    {
        double fnorm = 0.0, ynorm = 0.0;
        for (int i = 0; i < dim; ++i) {
            fnorm = std::max(fnorm, std::abs(k1[i]));
            ynorm = std::max(ynorm, std::abs(y[i]));
        }
        if (fnorm > 0.0) h = std::min(h, 0.01 * (ynorm + opts.abs_tol) / fnorm);
        h = std::max(h, 1e-10);
    }

    double facold = 1e-4;
    const double expo1 = 0.2 - STEP_BETA * 0.75;
    bool rejected = false;
    long nstep = 0;
    const long max_steps = 100000000L;

    bool last = false;
    while (!last) {
        if (++nstep > max_steps) {
            std::ostringstream os;
            os << "integrate: step limit exceeded at t=" << t;
            throw NumericError(os.str());
        }
        // Judge underflow on the controller's proposed step, before the
        // final-step clamp can legitimately shrink it to a sliver.
        if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
            std::ostringstream os;
            os << "stiffness/step underflow at t=" << t;
            throw NumericError(os.str());
        }
        if (t + 1.01 * h >= opts.t_end) {
            h = opts.t_end - t;
            last = true;
        }

        for (int i = 0; i < dim; ++i) ynew[i] = y[i] + h * A21 * k1[i];
        sys.f(t + C2 * h, ynew.data(), k2.data());
        for (int i = 0; i < dim; ++i) ynew[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
        sys.f(t + C3 * h, ynew.data(), k3.data());
        for (int i = 0; i < dim; ++i)
            ynew[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
        sys.f(t + C4 * h, ynew.data(), k4.data());
        for (int i = 0; i < dim; ++i)
            ynew[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
        sys.f(t + C5 * h, ynew.data(), k5.data());
        for (int i = 0; i < dim; ++i)
            ysti[i] = y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
        sys.f(t + h, ysti.data(), k6.data());
        for (int i = 0; i < dim; ++i)
            ynew[i] = y[i] + h * (A71 * k1[i] + A73 * k3[i] + A74 * k4[i] + A75 * k5[i] + A76 * k6[i]);
        sys.f(t + h, ynew.data(), k7.data());
        for (int i = 0; i < dim; ++i)
            err[i] = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);

        const double errnorm = error_norm(err, y, ynew, opts.abs_tol, opts.rel_tol);
        const double fac11 = std::pow(std::max(errnorm, 1e-32), expo1);

        if (errnorm <= 1.0) {
            // Accepted: dense output over (t, t+h], then advance (FSAL).
            facold = std::max(errnorm, 1e-4);
            const double tnew = t + h;
            while (true) {
                const double ts = static_cast<double>(next_sample) * stride;
                const bool due = ts <= tnew + 1e-12 * std::max(1.0, std::abs(tnew)) && ts < opts.t_end;
                if (!due) break;
                hermite((ts - t) / h, h, y, k1, ynew, k7, sample);
                emit(ts, sample);
                ++next_sample;
            }
            if (last) emit(opts.t_end, ynew);

            for (int i = 0; i < dim; ++i) {
                if (ynew[i] < -negativity_floor) {
                    std::ostringstream os;
                    os << "integrate: component " << i << " fell below the negativity floor at t="
                       << tnew << " (value " << ynew[i] << ")";
                    throw NumericError(os.str());
                }
            }

            y.swap(ynew);
            k1.swap(k7);
            t = tnew;

            double fac = fac11 / std::pow(facold, STEP_BETA);
            fac = std::max(1.0 / FAC2, std::min(1.0 / FAC1, fac / SAFE));
            double hnew = h / fac;
            if (hnew > hmax) hnew = hmax;
            if (rejected) hnew = std::min(hnew, h);
            rejected = false;
            h = hnew;
        } else {
            h = h / std::min(1.0 / FAC1, fac11 / SAFE);
            rejected = true;
            last = false;
        }
    }
    return traj;
}

Trajectory integrate(const SerirsParams& p, const State& x0, const IntegrationOptions& opts)
{
    require_valid(p);
    if (x0.size() != 4) throw ConfigError("integrate: SE(R)IRS initial state needs 4 components");
    OdeSystem sys;
    sys.dim = 4;
    sys.f = [p](double, const double* y, double* dy) {
        const double force = p.beta * y[0] * (y[2] + p.alpha * y[1]) / p.n;
        dy[0] = -force + p.omega * y[3];
        dy[1] = force - (p.sigma + p.delta) * y[1];
        dy[2] = p.sigma * y[1] - p.gamma * y[2];
        dy[3] = p.delta * y[1] + p.gamma * y[2] - p.omega * y[3];
    };
    return integrate_system(sys, x0, opts, "serirs");
}

Trajectory integrate(const SverirsParams& p, const State& x0, const IntegrationOptions& opts)
{
    require_valid(p);
    if (x0.size() != 5) throw ConfigError("integrate: SVE(R)IRS initial state needs 5 components");
    OdeSystem sys;
    sys.dim = 5;
    sys.f = [p](double, const double* y, double* dy) {
        const SerirsParams& b = p.base;
        const double force = b.beta * y[0] * (y[2] + b.alpha * y[1]) / b.n;
        const double leak = p.rho * b.beta * y[4] * (y[2] + b.alpha * y[1]) / b.n;
        dy[0] = -force + b.omega * y[3] - p.phi * y[0] + p.psi * y[4];
        dy[1] = force - (b.sigma + b.delta) * y[1] + leak;
        dy[2] = b.sigma * y[1] - b.gamma * y[2];
        dy[3] = b.delta * y[1] + b.gamma * y[2] - b.omega * y[3];
        dy[4] = -leak + p.phi * y[0] - p.psi * y[4];
    };
    return integrate_system(sys, x0, opts, "sverirs");
}

Trajectory integrate(const ModelParams& p, const State& x0, const IntegrationOptions& opts)
{
    if (const auto* s = std::get_if<SerirsParams>(&p)) return integrate(*s, x0, opts);
    return integrate(std::get<SverirsParams>(p), x0, opts);
}

double conservation_drift(const Trajectory& traj, double n)
{
    double worst = 0.0;
    for (const State& s : traj.states) {
        double sum = 0.0;
        for (double c : s) sum += c;
        worst = std::max(worst, std::abs(sum - n));
    }
    return worst;
}

std::vector<std::pair<double, double>> distance_series(const Trajectory& traj, const State& target)
{
    std::vector<std::pair<double, double>> out;
    out.reserve(traj.times.size());
    for (size_t k = 0; k < traj.times.size(); ++k) {
        const State& s = traj.states[k];
        if (s.size() != target.size())
            throw std::invalid_argument("distance_series: dimension mismatch");
        double sq = 0.0;
        for (size_t i = 0; i < s.size(); ++i) sq += (s[i] - target[i]) * (s[i] - target[i]);
        out.emplace_back(traj.times[k], std::sqrt(sq));
    }
    return out;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj)
{
    const bool vax = !traj.states.empty() && traj.states.front().size() == 5;
    os << (vax ? "t,S,E,I,R,V\n" : "t,S,E,I,R\n");
    char buf[32];
    for (size_t k = 0; k < traj.times.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g", traj.times[k]);
        os << buf;
        for (double c : traj.states[k]) {
            std::snprintf(buf, sizeof buf, "%.17g", c);
            os << ',' << buf;
        }
        os << '\n';
    }
}

} // namespace epidyn
