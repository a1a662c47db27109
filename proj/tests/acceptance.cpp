// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion pins its tolerances in code.

#include "epidyn/control.hpp"
#include "epidyn/equilibria.hpp"
#include "epidyn/integrate.hpp"
#include "epidyn/reproduction.hpp"
#include "epidyn/stability.hpp"
#include "epidyn/sweep.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

using namespace epidyn;

namespace {

struct Criterion {
    std::string label;
    std::vector<std::string> failures;

    void require(bool ok, const std::string& what)
    {
        if (!ok) failures.push_back(what);
    }
    void near(double got, double want, double tol, const std::string& what)
    {
        if (!(std::abs(got - want) <= tol)) {
            char buf[200];
            std::snprintf(buf, sizeof buf, "%s: got %.8g, expected %.8g +/- %.2g", what.c_str(),
                          got, want, tol);
            failures.push_back(buf);
        }
    }
};

int finish(Criterion& c, int index, double seconds)
{
    if (c.failures.empty()) {
        std::printf("criterion %d (%s): PASS  [%.1fs]\n", index, c.label.c_str(), seconds);
        return 0;
    }
    std::printf("criterion %d (%s): FAIL  [%.1fs]\n", index, c.label.c_str(), seconds);
    for (const auto& f : c.failures) std::printf("    %s\n", f.c_str());
    return 1;
}

double now()
{
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

} // namespace

// 1. R0 reproduction for every worked parameter set.
static int criterion1()
{
    const double t0 = now();
    Criterion c{"R0 reproduction"};
    c.near(r0_serirs(oracle::example_serirs(0.4)), 2.053, 0.001, "serirs beta=0.4");
    c.near(r0_serirs(oracle::example_serirs(0.2)), 1.027, 0.001, "serirs beta=0.2");
    c.near(r0_serirs(oracle::example_serirs(0.19)), 0.975, 0.001, "serirs beta=0.19");
    c.near(r0_sverirs(oracle::example_sverirs(0.2)), 0.719, 0.01, "sverirs beta=1/5");
    c.near(r0_sverirs(oracle::example_sverirs(0.9)), 3.23, 0.01, "sverirs beta=9/10");
    return finish(c, 1, now() - t0);
}

// 2. Endemic points of both models.
static int criterion2()
{
    const double t0 = now();
    Criterion c{"endemic points"};
    const Equilibrium e1 = endemic_serirs(oracle::example_serirs(0.4));
    const double want1[] = {49.0, 2.0, 2.0, 46.0};
    for (int k = 0; k < 4; ++k) c.near(e1.point[k], want1[k], 0.5, "beta=0.4 component");

    const Equilibrium e2 = endemic_serirs(oracle::example_serirs(0.2));
    const double want2[] = {97.40, 0.12, 0.12, 2.35};
    for (int k = 0; k < 4; ++k) c.near(e2.point[k], want2[k], 0.01, "beta=0.2 component");

    const EndemicCandidates cand = endemic_sverirs_closed(oracle::example_sverirs(0.9));
    const double want3[] = {21.0, 3.0, 3.0, 66.0, 7.0};
    for (int k = 0; k < 5; ++k) c.near(cand.p3.point[k], want3[k], 0.5, "p3 component");
    c.require(!cand.p2.relevant, "p2 must be flagged irrelevant");
    c.require(cand.p3.relevant, "p3 must be relevant");
    return finish(c, 2, now() - t0);
}

// 3. Eigenvalue reproduction at all three linearizations.
static int criterion3()
{
    const double t0 = now();
    Criterion c{"eigenvalue reproduction"};
    c.require(oracle::spectra_match(eigenvalues(jacobian_serirs_endemic(oracle::example_serirs(0.4))),
                                    {{-0.340, 0.0}, {-0.010, 0.031}, {-0.010, -0.031}}, 0.001),
              "endemic M spectrum (beta=0.4)");
    c.require(oracle::spectra_match(eigenvalues(jacobian_serirs_dfe(oracle::example_serirs(0.19))),
                                    {{-0.336, 0.0}, {-0.011, 0.0}, {-0.002, 0.0}}, 0.001),
              "DFE N spectrum (beta=0.19)");

    const SverirsParams p = oracle::example_sverirs(0.9);
    const Equilibrium p3 = endemic_sverirs_refine(p, reduce(endemic_sverirs_closed(p).p3.point));
    auto reduced = [&p](const ReducedState& x) { return sverirs_reduced_rhs(x, p); };
    c.require(oracle::spectra_match(
                  eigenvalues(jacobian_numeric(reduced, reduce(p3.point), 1e-5)),
                  {{-0.345, 0.0}, {-0.009, 0.0}, {-0.020, 0.053}, {-0.020, -0.053}}, 0.001),
              "vaccinated endemic spectrum (beta=0.9)");
    return finish(c, 3, now() - t0);
}

// 4. Thresholds: critical vaccination rates, herd immunity, endemic burden.
static int criterion4()
{
    const double t0 = now();
    Criterion c{"thresholds"};

    const CriticalPhi low = critical_phi(oracle::example_sverirs(0.2));
    c.require(low.phi.has_value(), "critical phi exists for beta=0.2");
    if (low.phi) c.near(*low.phi, 0.000165, 1e-6, "critical phi (closed form, beta=0.2)");

    const CriticalPhi erad = critical_phi(oracle::example_sverirs(0.3));
    c.require(erad.phi.has_value(), "critical phi exists for beta=0.3");
    if (erad.phi) c.near(*erad.phi, 1.0 / 282.0, 1e-5, "critical phi (closed form, beta=0.3)");

    // The same two thresholds located by bisection sweeps.
    for (const auto& [beta, want, tol] :
         std::vector<std::tuple<double, double, double>>{{0.2, 0.000165, 1e-6},
                                                         {0.3, 1.0 / 282.0, 1e-5}}) {
        SweepSpec spec;
        spec.base = oracle::example_sverirs(beta);
        spec.param = "phi";
        spec.grid = {1e-5, 1e-4, 1e-3, 5e-3};
        const auto found =
            find_threshold(spec, [](const SweepRow& r) { return r.r0 && *r.r0 < 1.0; });
        c.require(found.has_value(), "bisection bracket exists");
        if (found) c.near(found->root, want, tol, "critical phi (bisection)");
    }

    const double r0v = r0_sverirs(oracle::example_sverirs(0.9));
    c.near(herd_threshold(r0v), 0.69, 0.005, "herd threshold at R0~3.23");

    const SverirsParams vax = oracle::example_sverirs(0.9);
    const Equilibrium p3 = endemic_sverirs_refine(vax, reduce(endemic_sverirs_closed(vax).p3.point));
    c.near((p3.point[3] + p3.point[4]) / 100.0, 0.73, 0.01, "endemic immune fraction");
    c.near(p3.point[1], 3.4, 0.2, "endemic E per 100");
    c.near(p3.point[2], 3.4, 0.2, "endemic I per 100");

    const SverirsParams annual = oracle::example_sverirs(0.3);
    const Equilibrium small =
        endemic_sverirs_refine(annual, reduce(endemic_sverirs_closed(annual).p3.point));
    c.near(small.point[1] + small.point[2], 0.73, 0.02, "endemic E+I at phi=1/360, beta=0.3");
    return finish(c, 4, now() - t0);
}

// 5. Endemic threshold property over 500 randomized parameter draws.
static int criterion5()
{
    const double t0 = now();
    Criterion c{"endemic threshold property"};
    std::mt19937_64 rng(0xA11CE);
    std::uniform_real_distribution<double> factor(0.4, 1.8);
    int above = 0, below = 0;
    for (int i = 0; i < 500; ++i) {
        SerirsParams p = oracle::random_serirs(rng);
        const double beta_star = p.gamma * (p.delta + p.sigma) / (p.alpha * p.gamma + p.sigma);
        p.beta = beta_star * factor(rng);
        const double r0 = r0_serirs(p);
        if (std::abs(r0 - 1.0) < 1e-6) continue;

        const Classification dfe = classify(eigenvalues(jacobian_serirs_dfe(p)));
        if (r0 > 1.0) {
            ++above;
            const Classification end = classify(eigenvalues(jacobian_serirs_endemic(p)));
            c.require(end == Classification::stable_node || end == Classification::stable_spiral,
                      "endemic stable when R0 > 1 (draw " + std::to_string(i) + ")");
            c.require(dfe == Classification::unstable,
                      "DFE unstable when R0 > 1 (draw " + std::to_string(i) + ")");
        } else {
            ++below;
            c.require(dfe == Classification::stable_node || dfe == Classification::stable_spiral,
                      "DFE stable when R0 < 1 (draw " + std::to_string(i) + ")");
            c.require(!endemic_serirs(p).relevant,
                      "endemic irrelevant when R0 < 1 (draw " + std::to_string(i) + ")");
        }
    }
    c.require(above >= 100 && below >= 100, "draws must straddle the threshold");
    return finish(c, 5, now() - t0);
}

// 6. Property suites: conservation, reduction, Jacobians, bialternate sums,
// determinant identity, spectral bounds.
static int criterion6()
{
    const double t0 = now();
    Criterion c{"property suites"};
    std::mt19937_64 rng(0xB0B);

    for (int i = 0; i < 1000; ++i) {
        const SerirsParams p = oracle::random_serirs(rng);
        const State x = oracle::random_state(rng, 4, p.n);
        double sum = 0.0;
        for (double d : serirs_rhs(x, p)) sum += d;
        c.require(std::abs(sum) <= 1e-12 * p.n, "serirs conservation");

        const SverirsParams q = oracle::random_sverirs(rng);
        const State y = oracle::random_state(rng, 5, q.base.n);
        sum = 0.0;
        for (double d : sverirs_rhs(y, q)) sum += d;
        c.require(std::abs(sum) <= 1e-12 * q.base.n, "sverirs conservation");

        const ReducedState xr = reduce(x);
        const ReducedState dr = serirs_reduced_rhs(xr, p);
        const State df = serirs_rhs(recover_full(xr, p.n), p);
        for (int k = 0; k < 3; ++k)
            c.require(std::abs(dr[k] - df[k]) <= 1e-12 * p.n, "serirs reduction consistency");
        const ReducedState yr = reduce(y);
        const ReducedState er = sverirs_reduced_rhs(yr, q);
        const State ef = sverirs_rhs(recover_full(yr, q.base.n), q);
        c.require(std::abs(er[0] - ef[0]) + std::abs(er[1] - ef[1]) + std::abs(er[2] - ef[2])
                          + std::abs(er[3] - ef[4])
                      <= 4e-12 * q.base.n,
                  "sverirs reduction consistency");
    }

    for (int i = 0; i < 200; ++i) {
        const SerirsParams p = oracle::random_serirs(rng);
        auto reduced = [&p](const ReducedState& x) { return serirs_reduced_rhs(x, p); };
        const SquareMatrix ndfe = jacobian_numeric(reduced, {p.n, 0.0, 0.0}, 1e-5);
        const SquareMatrix adfe = jacobian_serirs_dfe(p);
        for (size_t k = 0; k < adfe.a.size(); ++k)
            c.require(std::abs(adfe.a[k] - ndfe.a[k]) <= 1e-6, "serirs DFE Jacobian vs FD");

        if (std::abs(r0_serirs(p) - 1.0) > 1e-6) {
            const SquareMatrix nend =
                jacobian_numeric(reduced, reduce(endemic_serirs(p).point), 1e-5);
            const SquareMatrix aend = jacobian_serirs_endemic(p);
            for (size_t k = 0; k < aend.a.size(); ++k)
                c.require(std::abs(aend.a[k] - nend.a[k]) <= 1e-6, "serirs endemic Jacobian vs FD");

            const double det = determinant(aend);
            const double closed =
                -epsilon_serirs(p) * p.omega * (p.delta + p.sigma)
                * (p.sigma * p.omega + p.gamma * (p.delta + p.sigma + p.omega));
            c.require(std::abs(det - closed) <= 1e-10 * std::max(1e-30, std::abs(closed)),
                      "det(M) closed-form identity");
        }

        const SverirsParams q = oracle::random_sverirs(rng);
        auto vreduced = [&q](const ReducedState& x) { return sverirs_reduced_rhs(x, q); };
        const SquareMatrix vn = jacobian_numeric(vreduced, reduce(dfe_sverirs(q).point), 1e-5);
        const SquareMatrix va = jacobian_sverirs_dfe(q);
        for (size_t k = 0; k < va.a.size(); ++k)
            c.require(std::abs(va.a[k] - vn.a[k]) <= 1e-6, "sverirs DFE Jacobian vs FD");
    }

    std::uniform_real_distribution<double> uni(-1.5, 1.5);
    for (int i = 0; i < 100; ++i) {
        const int k = 2 + i % 4;
        SquareMatrix m(k);
        for (double& v : m.a) v = uni(rng);
        const auto base = eigenvalues(m);
        std::vector<std::complex<double>> expected;
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b) expected.push_back(base[a] + base[b]);
        c.require(oracle::spectra_match(eigenvalues(bialternate_sum(m)), expected, 1e-8),
                  "bialternate pairwise eigenvalue sums");
    }

    for (int i = 0; i < 500; ++i) {
        const SerirsParams p = oracle::random_serirs(rng);
        const auto e3 = dfe_eigs_closed_serirs(p);
        c.require(e3[1] <= -p.gamma + 1e-14, "serirs lambda2 <= -gamma");

        const SverirsParams q = oracle::random_sverirs(rng);
        const SerirsParams& b = q.base;
        const double tot = q.phi + q.psi, pr = q.psi + q.rho * q.phi;
        const double z = 4.0 * b.beta * b.sigma * tot * pr
                         + std::pow(b.alpha * b.beta * pr + (b.gamma - b.sigma - b.delta) * tot, 2);
        c.require(z > 0.0, "Z > 0");
        c.require(dfe_eigs_closed_sverirs(q)[2] <= -b.gamma + 1e-14, "sverirs lambda3 <= -gamma");
    }
    return finish(c, 6, now() - t0);
}

// 7. Simulation: the nine-run family settles onto the endemic point; the
// adaptive integrator matches fixed-step RK4.
static int criterion7()
{
    const double t0 = now();
    Criterion c{"simulation"};

    const SerirsParams p = oracle::example_serirs(0.4);
    const State target = endemic_serirs(p).point;
    IntegrationOptions decade;
    decade.t_end = 3650.0;
    decade.stride = 10.0;
    for (int s0 = 10; s0 <= 90; s0 += 10) {
        const double half = (p.n - s0) / 2.0;
        const Trajectory traj = integrate(p, {double(s0), half, half, 0.0}, decade);
        const State& last = traj.states.back();
        for (int k = 0; k < 4; ++k)
            c.near(last[k], target[k], 0.5, "terminal state, S0=" + std::to_string(s0));
        c.require(conservation_drift(traj, p.n) <= 1e-6 * p.n,
                  "conservation, S0=" + std::to_string(s0));
    }

    IntegrationOptions tight;
    tight.t_end = 365.0;
    tight.stride = 365.0;
    tight.rel_tol = 1e-8;
    tight.abs_tol = 1e-10;
    std::mt19937_64 rng(0x5107);
    for (int trial = 0; trial < 20; ++trial) {
        const SerirsParams ps = oracle::random_serirs(rng);
        const State x0 = oracle::random_state(rng, 4, ps.n);
        const State got = integrate(ps, x0, tight).states.back();
        auto rhs = [&ps](const State& x) { return serirs_rhs(x, ps); };
        const State ref = oracle::rk4_terminal(rhs, x0, 365.0, 0.01);
        for (int k = 0; k < 4; ++k)
            c.require(std::abs(got[k] - ref[k]) <= 1e-4 * ps.n, "serirs adaptive vs RK4");

        const SverirsParams qs = oracle::random_sverirs(rng);
        const State y0 = oracle::random_state(rng, 5, qs.base.n);
        const State vgot = integrate(qs, y0, tight).states.back();
        auto vrhs = [&qs](const State& x) { return sverirs_rhs(x, qs); };
        const State vref = oracle::rk4_terminal(vrhs, y0, 365.0, 0.01);
        for (int k = 0; k < 5; ++k)
            c.require(std::abs(vgot[k] - vref[k]) <= 1e-4 * qs.base.n, "sverirs adaptive vs RK4");
    }
    return finish(c, 7, now() - t0);
}

// 8. Control: maximal vaccination for J1-J3, terminal burst for J4.
static int criterion8()
{
    const double t0 = now();
    Criterion c{"control structure"};

    ControlProblem prob;
    prob.params = oracle::example_sverirs(0.3);
    prob.x0 = {30.0, 5.0, 5.0, 10.0, 50.0};
    prob.horizon = 1825.0;
    prob.u_min = 0.0;
    prob.u_max = 1.0 / 360.0;
    prob.intervals = 24;

    for (CostKind kind : {CostKind::final_infected, CostKind::integral_infected,
                          CostKind::integral_infected_plus_control}) {
        prob.cost = kind;
        const ControlSolution sol = optimize(prob);
        double at_max_time = 0.0;
        for (size_t k = 0; k < sol.schedule.values.size(); ++k)
            if (std::abs(sol.schedule.values[k] - prob.u_max) <= 1e-6)
                at_max_time += sol.schedule.breakpoints[k + 1] - sol.schedule.breakpoints[k];
        c.require(at_max_time >= 0.9 * prob.horizon,
                  std::string(to_string(kind)) + ": expected >= 90% of the horizon at u_max, got "
                      + std::to_string(100.0 * at_max_time / prob.horizon) + "%");
    }

    prob.cost = CostKind::final_infected_plus_integral_control;
    const ControlSolution j4 = optimize(prob);
    double first_half_mean = 0.0;
    int first_half_count = 0;
    for (size_t k = 0; k < j4.schedule.values.size(); ++k) {
        if (j4.schedule.breakpoints[k + 1] <= 0.5 * prob.horizon + 1e-9) {
            first_half_mean += j4.schedule.values[k];
            ++first_half_count;
        }
    }
    first_half_mean /= std::max(1, first_half_count);
    c.require(first_half_mean < 0.1 * prob.u_max,
              "J4: first-half mean " + std::to_string(first_half_mean) + " not below 10% of u_max");
    c.require(j4.schedule.values.back() > 0.9 * prob.u_max,
              "J4: final interval " + std::to_string(j4.schedule.values.back())
                  + " not above 90% of u_max");
    return finish(c, 8, now() - t0);
}

int main()
{
    int failures = 0;
    failures += criterion1();
    failures += criterion2();
    failures += criterion3();
    failures += criterion4();
    failures += criterion5();
    failures += criterion6();
    failures += criterion7();
    failures += criterion8();
    if (failures == 0) std::printf("acceptance: all criteria passed\n");
    else std::printf("acceptance: %d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
