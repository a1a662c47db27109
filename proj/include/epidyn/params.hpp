#pragma once

#include <string>
#include <variant>
#include <vector>

namespace epidyn {

/// Rate constants of the SE(R)IRS model. All rates are per day; time is
/// measured in days throughout.
struct SerirsParams {
    double alpha = 0.0; ///< relative infectiousness of asymptomatic carriers, in [0,1]
    double beta = 0.0;  ///< transmission rate
    double gamma = 0.0; ///< 1/gamma is the symptomatic period
    double delta = 0.0; ///< 1/delta is the duration of an asymptomatic course
    double sigma = 0.0; ///< 1/sigma is the latency period
    double omega = 0.0; ///< 1/omega is the period of immunity
    double n = 0.0;     ///< population size
};

/// SE(R)IRS extended with a vaccinated compartment. The vaccine has
/// efficacy 1-rho, wears off at rate psi, and is administered at rate phi.
struct SverirsParams {
    SerirsParams base;
    double phi = 0.0; ///< vaccination rate
    double psi = 0.0; ///< 1/psi is the duration of vaccine efficacy
    double rho = 0.0; ///< vaccine leakiness, in [0,1]
};

using ModelParams = std::variant<SerirsParams, SverirsParams>;

/// Returns every violated range constraint, empty when the parameters are usable.
std::vector<std::string> validate_params(const SerirsParams& p);

/// SVE(R)IRS variant. phi must be strictly positive here; a vanishing
/// vaccination rate is only meaningful as a control value, not a model
/// parameter.
std::vector<std::string> validate_params(const SverirsParams& p);

std::vector<std::string> validate_params(const ModelParams& p);

inline bool params_valid(const SerirsParams& p) { return validate_params(p).empty(); }
inline bool params_valid(const SverirsParams& p) { return validate_params(p).empty(); }

/// Throws ConfigError listing all violations when the parameters are invalid.
void require_valid(const SerirsParams& p);
void require_valid(const SverirsParams& p);
void require_valid(const ModelParams& p);

/// Population size regardless of model flavor.
double population(const ModelParams& p);

/// Assigns a named parameter ("beta", "phi", ...). Throws ConfigError for
/// names the model does not have.
void set_param(SerirsParams& p, const std::string& name, double value);
void set_param(SverirsParams& p, const std::string& name, double value);
void set_param(ModelParams& p, const std::string& name, double value);

double get_param(const ModelParams& p, const std::string& name);

} // namespace epidyn
