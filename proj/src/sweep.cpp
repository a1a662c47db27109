#include "epidyn/sweep.hpp"

#include "epidyn/equilibria.hpp"
#include "epidyn/errors.hpp"
#include "epidyn/parallel.hpp"
#include "epidyn/reproduction.hpp"
#include "epidyn/stability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace epidyn {

namespace {

std::string classify_dfe(const ModelParams& p)
{
    const SquareMatrix j = std::holds_alternative<SerirsParams>(p)
                               ? jacobian_serirs_dfe(std::get<SerirsParams>(p))
                               : jacobian_sverirs_dfe(std::get<SverirsParams>(p));
    return to_string(classify(eigenvalues(j)));
}

void fill_endemic_serirs(const SerirsParams& p, SweepRow& row)
{
    const Equilibrium eq = endemic_serirs(p);
    row.endemic_point = eq.point;
    row.endemic_relevant = eq.relevant;
    if (eq.relevant) {
        row.endemic_class = to_string(classify(eigenvalues(jacobian_serirs_endemic(p))));
    }
}

void fill_endemic_sverirs(const SverirsParams& p, SweepRow& row)
{
    const Equilibrium eq = endemic_sverirs_refine(p, endemic_sverirs_guess(p));
    if (eq.kind == EquilibriumKind::disease_free)
        throw NumericError("refinement collapsed to the disease-free point");
    row.endemic_point = eq.point;
    row.endemic_relevant = eq.relevant;
    if (eq.relevant) {
        const SverirsParams pc = p;
        auto rhs = [&pc](const ReducedState& x) { return sverirs_reduced_rhs(x, pc); };
        const SquareMatrix j = jacobian_numeric(rhs, reduce(eq.point), 1e-5);
        row.endemic_class = to_string(classify(eigenvalues(j)));
    }
}

} // namespace

SweepRow evaluate_row(const ModelParams& base, const std::string& param, double value)
{
    SweepRow row;
    row.value = value;

    ModelParams p = base;
    try {
        set_param(p, param, value);
        require_valid(p);
    } catch (const std::exception& e) {
        row.r0_error = e.what();
        row.dfe_error = e.what();
        row.endemic_error = e.what();
        return row;
    }

    try {
        row.r0 = r0(p);
    } catch (const std::exception& e) {
        row.r0_error = e.what();
    }
    try {
        row.dfe_class = classify_dfe(p);
    } catch (const std::exception& e) {
        row.dfe_error = e.what();
    }
    try {
        if (const auto* s = std::get_if<SerirsParams>(&p)) fill_endemic_serirs(*s, row);
        else fill_endemic_sverirs(std::get<SverirsParams>(p), row);
    } catch (const std::exception& e) {
        row.endemic_error = e.what();
    }
    return row;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec)
{
    if (spec.grid.empty()) throw ConfigError("sweep: empty grid");
    if (!std::is_sorted(spec.grid.begin(), spec.grid.end()))
        throw ConfigError("sweep: grid must be sorted");

    std::vector<SweepRow> rows(spec.grid.size());
    parallel_for(static_cast<int>(spec.grid.size()), [&](int i) {
        rows[i] = evaluate_row(spec.base, spec.param, spec.grid[i]);
    });
    return rows;
}

std::optional<ThresholdResult> find_threshold(const SweepSpec& spec,
                                              const std::function<bool(const SweepRow&)>& pred)
{
    const std::vector<SweepRow> rows = run_sweep(spec);

    int flips = 0;
    size_t flip_at = 0;
    for (size_t i = 1; i < rows.size(); ++i) {
        if (pred(rows[i]) != pred(rows[i - 1])) {
            ++flips;
            flip_at = i;
        }
    }
    if (flips == 0) return std::nullopt;
    if (flips > 1) throw NumericError("non-monotone predicate over the sweep grid");

    double lo = spec.grid[flip_at - 1], hi = spec.grid[flip_at];
    const bool lo_val = pred(rows[flip_at - 1]);
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break; // parameter resolution exhausted
        const SweepRow row = evaluate_row(spec.base, spec.param, mid);
        if (pred(row) == lo_val) lo = mid;
        else hi = mid;
    }
    return ThresholdResult{lo, hi, 0.5 * (lo + hi)};
}

namespace {

void put(std::ostream& os, double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
}

// Error text goes into CSV cells; keep the delimiter out of it.
std::string cell_safe(std::string s)
{
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

} // namespace

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows, bool has_v)
{
    os << "value,r0,dfe_class,endemic_relevant,endemic_S,endemic_E,endemic_I,endemic_R";
    if (has_v) os << ",endemic_V";
    os << ",endemic_class\n";

    for (const SweepRow& row : rows) {
        put(os, row.value);
        os << ',';
        if (row.r0) put(os, *row.r0);
        else os << "ERROR:" << cell_safe(row.r0_error);
        os << ',';
        if (!row.dfe_class.empty()) os << row.dfe_class;
        else os << "ERROR:" << cell_safe(row.dfe_error);
        os << ',';
        if (row.endemic_relevant) os << (*row.endemic_relevant ? "true" : "false");
        else os << "ERROR:" << cell_safe(row.endemic_error);
        const size_t ncomp = has_v ? 5 : 4;
        for (size_t c = 0; c < ncomp; ++c) {
            os << ',';
            if (row.endemic_point && row.endemic_point->size() == ncomp)
                put(os, (*row.endemic_point)[c]);
            else os << "ERROR:" << cell_safe(row.endemic_error);
        }
        os << ',';
        if (!row.endemic_class.empty()) os << row.endemic_class;
        else if (row.endemic_relevant && !*row.endemic_relevant) os << "irrelevant";
        else os << "ERROR:" << cell_safe(row.endemic_error);
        os << '\n';
    }
}

} // namespace epidyn
