#include "epidyn/model.hpp"

#include <stdexcept>

namespace epidyn {

namespace {

void require_size(const std::vector<double>& x, size_t k, const char* what)
{
    if (x.size() != k) throw std::invalid_argument(std::string(what) + ": wrong state dimension");
}

} // namespace

State serirs_rhs(const State& x, const SerirsParams& p)
{
    require_size(x, 4, "serirs_rhs");
    const double S = x[0], E = x[1], I = x[2], R = x[3];
    const double force = p.beta * S * (I + p.alpha * E) / p.n;
    return {
        -force + p.omega * R,
        force - (p.sigma + p.delta) * E,
        p.sigma * E - p.gamma * I,
        p.delta * E + p.gamma * I - p.omega * R,
    };
}

ReducedState serirs_reduced_rhs(const ReducedState& x, const SerirsParams& p)
{
    require_size(x, 3, "serirs_reduced_rhs");
    const double S = x[0], E = x[1], I = x[2];
    const double force = p.beta * S * (I + p.alpha * E) / p.n;
    return {
        -force + p.omega * (p.n - S - E - I),
        force - (p.sigma + p.delta) * E,
        p.sigma * E - p.gamma * I,
    };
}

State sverirs_drift(const State& x, const SverirsParams& p)
{
    require_size(x, 5, "sverirs_drift");
    const SerirsParams& b = p.base;
    const double S = x[0], E = x[1], I = x[2], R = x[3], V = x[4];
    const double force = b.beta * S * (I + b.alpha * E) / b.n;
    const double leak = p.rho * b.beta * V * (I + b.alpha * E) / b.n;
    return {
        -force + b.omega * R + p.psi * V,
        force - (b.sigma + b.delta) * E + leak,
        b.sigma * E - b.gamma * I,
        b.delta * E + b.gamma * I - b.omega * R,
        -leak - p.psi * V,
    };
}

State sverirs_vaccination_field(const State& x)
{
    require_size(x, 5, "sverirs_vaccination_field");
    return {-x[0], 0.0, 0.0, 0.0, x[0]};
}

State sverirs_rhs(const State& x, const SverirsParams& p)
{
    State d = sverirs_drift(x, p);
    d[0] += p.phi * -x[0];
    d[4] += p.phi * x[0];
    return d;
}

ReducedState sverirs_reduced_rhs(const ReducedState& x, const SverirsParams& p)
{
    require_size(x, 4, "sverirs_reduced_rhs");
    const SerirsParams& b = p.base;
    const double S = x[0], E = x[1], I = x[2], V = x[3];
    const double force = b.beta * S * (I + b.alpha * E) / b.n;
    const double leak = p.rho * b.beta * V * (I + b.alpha * E) / b.n;
    return {
        -force + b.omega * (b.n - S - E - I - V) - p.phi * S + p.psi * V,
        force - (b.sigma + b.delta) * E + leak,
        b.sigma * E - b.gamma * I,
        -leak + p.phi * S - p.psi * V,
    };
}

State recover_full(const ReducedState& x, double n)
{
    if (x.size() != 3 && x.size() != 4)
        throw std::invalid_argument("recover_full: expected 3 or 4 components");
    double sum = 0.0;
    for (double c : x) sum += c;
    const double r = n - sum;
    if (x.size() == 3) return {x[0], x[1], x[2], r};
    return {x[0], x[1], x[2], r, x[3]};
}

ReducedState reduce(const State& x)
{
    if (x.size() == 4) return {x[0], x[1], x[2]};
    if (x.size() == 5) return {x[0], x[1], x[2], x[4]};
    throw std::invalid_argument("reduce: expected 4 or 5 components");
}

} // namespace epidyn
