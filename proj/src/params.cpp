#include "epidyn/params.hpp"

#include "epidyn/errors.hpp"

#include <cmath>
#include <sstream>

namespace epidyn {

std::vector<std::string> validate_params(const SerirsParams& p)
{
    std::vector<std::string> v;
    // Written so that NaN fails every check it appears in.
    if (!(p.alpha >= 0.0 && p.alpha <= 1.0)) v.push_back("alpha out of [0,1]");
    if (!(p.beta >= 0.0) || !std::isfinite(p.beta)) v.push_back("beta negative or not finite");
    if (!(p.gamma > 0.0) || !std::isfinite(p.gamma)) v.push_back("gamma not positive");
    if (!(p.delta >= 0.0) || !std::isfinite(p.delta)) v.push_back("delta negative or not finite");
    if (!(p.sigma > 0.0) || !std::isfinite(p.sigma)) v.push_back("sigma not positive");
    if (!(p.omega > 0.0) || !std::isfinite(p.omega)) v.push_back("omega not positive");
    if (!(p.n > 0.0) || !std::isfinite(p.n)) v.push_back("n not positive");
    return v;
}

std::vector<std::string> validate_params(const SverirsParams& p)
{
    std::vector<std::string> v = validate_params(p.base);
    if (!(p.phi > 0.0) || !std::isfinite(p.phi)) v.push_back("phi not positive");
    if (!(p.psi > 0.0) || !std::isfinite(p.psi)) v.push_back("psi not positive");
    if (!(p.rho >= 0.0 && p.rho <= 1.0)) v.push_back("rho out of [0,1]");
    return v;
}

std::vector<std::string> validate_params(const ModelParams& p)
{
    return std::visit([](const auto& q) { return validate_params(q); }, p);
}

namespace {

[[noreturn]] void throw_violations(const std::vector<std::string>& v)
{
    std::ostringstream os;
    os << "invalid parameters:";
    for (const auto& s : v) os << " " << s << ";";
    throw ConfigError(os.str());
}

} // namespace

void require_valid(const SerirsParams& p)
{
    auto v = validate_params(p);
    if (!v.empty()) throw_violations(v);
}

void require_valid(const SverirsParams& p)
{
    auto v = validate_params(p);
    if (!v.empty()) throw_violations(v);
}

void require_valid(const ModelParams& p)
{
    std::visit([](const auto& q) { require_valid(q); }, p);
}

double population(const ModelParams& p)
{
    if (const auto* s = std::get_if<SerirsParams>(&p)) return s->n;
    return std::get<SverirsParams>(p).base.n;
}

void set_param(SerirsParams& p, const std::string& name, double value)
{
    if (name == "alpha") p.alpha = value;
    else if (name == "beta") p.beta = value;
    else if (name == "gamma") p.gamma = value;
    else if (name == "delta") p.delta = value;
    else if (name == "sigma") p.sigma = value;
    else if (name == "omega") p.omega = value;
    else if (name == "n") p.n = value;
    else throw ConfigError("unknown parameter: " + name);
}

void set_param(SverirsParams& p, const std::string& name, double value)
{
    if (name == "phi") p.phi = value;
    else if (name == "psi") p.psi = value;
    else if (name == "rho") p.rho = value;
    else set_param(p.base, name, value);
}

void set_param(ModelParams& p, const std::string& name, double value)
{
    std::visit([&](auto& q) { set_param(q, name, value); }, p);
}

double get_param(const ModelParams& p, const std::string& name)
{
    auto from_base = [&](const SerirsParams& b) -> const double* {
        if (name == "alpha") return &b.alpha;
        if (name == "beta") return &b.beta;
        if (name == "gamma") return &b.gamma;
        if (name == "delta") return &b.delta;
        if (name == "sigma") return &b.sigma;
        if (name == "omega") return &b.omega;
        if (name == "n") return &b.n;
        return nullptr;
    };
    if (const auto* s = std::get_if<SerirsParams>(&p)) {
        if (const double* d = from_base(*s)) return *d;
    } else {
        const auto& q = std::get<SverirsParams>(p);
        if (name == "phi") return q.phi;
        if (name == "psi") return q.psi;
        if (name == "rho") return q.rho;
        if (const double* d = from_base(q.base)) return *d;
    }
    throw ConfigError("unknown parameter: " + name);
}

} // namespace epidyn
