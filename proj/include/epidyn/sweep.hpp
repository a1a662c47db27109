#pragma once

#include "epidyn/model.hpp"
#include "epidyn/params.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace epidyn {

struct SweepSpec {
    ModelParams base;
    std::string param;        ///< parameter name varied across the grid
    std::vector<double> grid; ///< sorted values
};

/// One grid point: R0, the disease-free classification, and the endemic
/// point when one can be computed. Failures are data, recorded inline
/// instead of aborting the sweep.
struct SweepRow {
    double value = 0.0;
    std::optional<double> r0;
    std::string r0_error;
    std::string dfe_class;
    std::string dfe_error;
    std::optional<bool> endemic_relevant;
    std::optional<State> endemic_point;
    std::string endemic_class;
    std::string endemic_error;
};

SweepRow evaluate_row(const ModelParams& base, const std::string& param, double value);

/// Evaluates every grid point independently (parallel across rows, capped by
/// EPIDYN_THREADS); rows come back ordered by grid position.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// Bracket and bisection root of a predicate that flips once along the grid.
/// Returns nothing when the predicate never changes; throws NumericError
/// when it flips more than once. Bisection runs to 1e-10 on the parameter.
struct ThresholdResult {
    double lo = 0.0;
    double hi = 0.0;
    double root = 0.0;
};
std::optional<ThresholdResult> find_threshold(const SweepSpec& spec,
                                              const std::function<bool(const SweepRow&)>& pred);

/// Columns value,r0,dfe_class,endemic_relevant,endemic_S,...,endemic_class;
/// failed cells render as ERROR:<reason>.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows, bool has_v);

} // namespace epidyn
