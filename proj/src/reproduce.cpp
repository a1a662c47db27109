#include "epidyn/cli.hpp"

#include "epidyn/equilibria.hpp"
#include "epidyn/errors.hpp"
#include "epidyn/reproduction.hpp"
#include "epidyn/stability.hpp"
#include "epidyn/sweep.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace epidyn {

using nlohmann::json;

namespace {

// The worked examples all share these rates; only beta and the vaccination
// block vary between runs.
json base_params()
{
    return json{{"alpha", 0.1},   {"gamma", 1.0 / 7.0}, {"delta", 1.0 / 14.0},
                {"sigma", 1.0 / 7.0}, {"omega", 1.0 / 90.0}, {"n", 100.0}};
}

json serirs_config(double beta)
{
    json params = base_params();
    params["beta"] = beta;
    return json{{"model", "serirs"}, {"params", params}};
}

json sverirs_config(double beta)
{
    json params = base_params();
    params["beta"] = beta;
    params["phi"] = 1.0 / 360.0;
    params["psi"] = 1.0 / 180.0;
    params["rho"] = 0.1;
    return json{{"model", "sverirs"}, {"params", params}};
}

struct Check {
    std::ostream& out;
    int failures = 0;

    void close(bool ok, const std::string& label, const std::string& detail)
    {
        out << (ok ? "PASS " : "FAIL ") << label << ": " << detail << "\n";
        if (!ok) ++failures;
    }

    void near(const std::string& label, double got, double want, double tol)
    {
        char buf[160];
        std::snprintf(buf, sizeof buf, "got %.6g, expected %.6g +/- %.2g", got, want, tol);
        close(std::abs(got - want) <= tol, label, buf);
    }

    void truth(const std::string& label, bool got, bool want)
    {
        std::string detail = std::string("got ") + (got ? "true" : "false") + ", expected "
                             + (want ? "true" : "false");
        close(got == want, label, detail);
    }

    void text(const std::string& label, const std::string& got, const std::string& want)
    {
        close(got == want, label, "got " + got + ", expected " + want);
    }

    // Multiset comparison of a computed spectrum against expected values.
    void spectrum(const std::string& label, const json& eigs,
                  std::vector<std::complex<double>> expected, double tol)
    {
        bool ok = eigs.size() == expected.size();
        if (ok) {
            for (const auto& ev : eigs) {
                const std::complex<double> got(ev["re"].get<double>(), ev["im"].get<double>());
                bool matched = false;
                for (auto it = expected.begin(); it != expected.end(); ++it) {
                    if (std::abs(it->real() - got.real()) <= tol
                        && std::abs(it->imag() - got.imag()) <= tol) {
                        expected.erase(it);
                        matched = true;
                        break;
                    }
                }
                if (!matched) {
                    ok = false;
                    break;
                }
            }
            ok = ok && expected.empty();
        }
        close(ok, label, ok ? "all eigenvalues matched" : "spectrum mismatch");
    }

    void point(const std::string& label, const json& state,
               const std::vector<std::pair<const char*, double>>& expected, double tol)
    {
        for (const auto& [name, want] : expected)
            near(label + " " + name, state[name].get<double>(), want, tol);
    }
};

} // namespace

int run_reproduce(std::ostream& out)
{
    Check ck{out};
    std::ostringstream sink;

    // beta = 0.4: endemic regime with a spiral sink.
    {
        const RunConfig cfg = config_from_json(serirs_config(0.4));
        const json r0rep = run_r0(cfg, sink);
        ck.near("example-1 r0", r0rep["r0"].get<double>(), 2.053, 0.001);
        ck.near("example-1 herd threshold", r0rep["herd_threshold"].get<double>(), 0.513, 0.005);

        const json eq = run_equilibria(cfg, sink);
        ck.point("example-1 endemic", eq["endemic"]["point"],
                 {{"S", 49.0}, {"E", 2.0}, {"I", 2.0}, {"R", 46.0}}, 0.5);
        ck.truth("example-1 endemic relevant", eq["endemic"]["relevant"].get<bool>(), true);

        const json st = run_stability(cfg, sink);
        ck.spectrum("example-1 endemic eigenvalues", st["endemic"]["eigenvalues"],
                    {{-0.340, 0.0}, {-0.010, 0.031}, {-0.010, -0.031}}, 0.001);
        ck.text("example-1 endemic class", st["endemic"]["classification"], "stable-spiral");
        ck.text("example-1 dfe class", st["dfe"]["classification"], "unstable");
    }

    // beta = 0.2: barely supercritical.
    {
        const RunConfig cfg = config_from_json(serirs_config(0.2));
        const json r0rep = run_r0(cfg, sink);
        ck.near("example-2 r0", r0rep["r0"].get<double>(), 1.027, 0.001);
        const json eq = run_equilibria(cfg, sink);
        ck.point("example-2 endemic", eq["endemic"]["point"],
                 {{"S", 97.40}, {"E", 0.12}, {"I", 0.12}, {"R", 2.35}}, 0.01);
    }

    // beta = 0.19: subcritical, stable disease-free point.
    {
        const RunConfig cfg = config_from_json(serirs_config(0.19));
        const json r0rep = run_r0(cfg, sink);
        ck.near("example-3 r0", r0rep["r0"].get<double>(), 0.975, 0.001);
        const json eq = run_equilibria(cfg, sink);
        ck.point("example-3 dfe", eq["dfe"]["point"],
                 {{"S", 100.0}, {"E", 0.0}, {"I", 0.0}, {"R", 0.0}}, 1e-9);
        ck.truth("example-3 endemic irrelevant", eq["endemic"]["relevant"].get<bool>(), false);
        const json st = run_stability(cfg, sink);
        ck.spectrum("example-3 dfe eigenvalues", st["dfe"]["eigenvalues"],
                    {{-0.336, 0.0}, {-0.011, 0.0}, {-0.002, 0.0}}, 0.001);
        ck.text("example-3 dfe class", st["dfe"]["classification"], "stable-node");
    }

    // Vaccinated model, beta = 0.2: no relevant endemic point.
    {
        const RunConfig cfg = config_from_json(sverirs_config(0.2));
        const json r0rep = run_r0(cfg, sink);
        ck.near("vax-subcritical r0", r0rep["r0"].get<double>(), 0.719, 0.001);
        ck.near("vax-subcritical critical phi", r0rep["critical_phi"].get<double>(), 0.000165,
                1e-6);
        const json eq = run_equilibria(cfg, sink);
        ck.truth("vax-subcritical p2 irrelevant",
                 eq["closed_form"]["p2"]["relevant"].get<bool>(), false);
        ck.truth("vax-subcritical p3 irrelevant",
                 eq["closed_form"]["p3"]["relevant"].get<bool>(), false);
        const json st = run_stability(cfg, sink);
        ck.text("vax-subcritical dfe class", st["dfe"]["classification"], "stable-node");
    }

    // Vaccinated model, beta = 0.9: endemic despite herd immunity.
    {
        const RunConfig cfg = config_from_json(sverirs_config(0.9));
        const json r0rep = run_r0(cfg, sink);
        ck.near("vax-endemic r0", r0rep["r0"].get<double>(), 3.23, 0.01);
        ck.near("vax-endemic herd threshold", r0rep["herd_threshold"].get<double>(), 0.69, 0.005);

        const json eq = run_equilibria(cfg, sink);
        ck.point("vax-endemic p3", eq["closed_form"]["p3"]["point"],
                 {{"S", 21.0}, {"E", 3.0}, {"I", 3.0}, {"R", 66.0}, {"V", 7.0}}, 0.5);
        ck.truth("vax-endemic p2 irrelevant", eq["closed_form"]["p2"]["relevant"].get<bool>(),
                 false);
        ck.truth("vax-endemic p3 relevant", eq["closed_form"]["p3"]["relevant"].get<bool>(), true);

        const json ref = eq["refined"]["point"];
        const double immune = (ref["R"].get<double>() + ref["V"].get<double>()) / 100.0;
        ck.near("vax-endemic immune fraction", immune, 0.73, 0.01);
        ck.near("vax-endemic E", ref["E"].get<double>(), 3.4, 0.2);
        ck.near("vax-endemic I", ref["I"].get<double>(), 3.4, 0.2);

        const json st = run_stability(cfg, sink);
        ck.spectrum("vax-endemic p3 eigenvalues", st["endemic"]["eigenvalues"],
                    {{-0.345, 0.0}, {-0.009, 0.0}, {-0.020, 0.053}, {-0.020, -0.053}}, 0.001);
        ck.text("vax-endemic p3 class", st["endemic"]["classification"], "stable-spiral");
    }

    // Eradication example, beta = 0.3: the critical vaccination rate is 1/282,
    // faster than annual revaccination; at phi = 1/360 a small endemic state
    // persists instead.
    {
        const RunConfig cfg = config_from_json(sverirs_config(0.3));
        const json r0rep = run_r0(cfg, sink);
        ck.near("eradication critical phi", r0rep["critical_phi"].get<double>(), 1.0 / 282.0,
                1e-5);
        const json eq = run_equilibria(cfg, sink);
        const json ref = eq["refined"]["point"];
        ck.near("eradication endemic E+I", ref["E"].get<double>() + ref["I"].get<double>(), 0.73,
                0.02);

        // The same threshold located by bisection over a phi sweep.
        SweepSpec spec;
        spec.base = params_from_config(cfg);
        spec.param = "phi";
        spec.grid = {1e-4, 1e-3, 2e-3, 3e-3, 4e-3, 5e-3};
        const auto found =
            find_threshold(spec, [](const SweepRow& r) { return r.r0 && *r.r0 < 1.0; });
        if (found) ck.near("eradication phi threshold by bisection", found->root, 1.0 / 282.0, 1e-5);
        else ck.close(false, "eradication phi threshold by bisection", "no bracket found");
    }

    out << (ck.failures == 0 ? "reproduce: all checks passed\n"
                             : "reproduce: " + std::to_string(ck.failures) + " check(s) failed\n");
    return ck.failures;
}

} // namespace epidyn
