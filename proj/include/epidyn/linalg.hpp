#pragma once

#include <complex>
#include <vector>

namespace epidyn {

/// Dense real square matrix, row-major storage.
struct SquareMatrix {
    int order = 0;
    std::vector<double> a;

    SquareMatrix() = default;
    explicit SquareMatrix(int k) : order(k), a(static_cast<size_t>(k) * k, 0.0) {}

    double& at(int i, int j) { return a[static_cast<size_t>(i) * order + j]; }
    double at(int i, int j) const { return a[static_cast<size_t>(i) * order + j]; }

    static SquareMatrix identity(int k);
};

double trace(const SquareMatrix& m);
double determinant(const SquareMatrix& m);

/// Largest absolute entry.
double max_abs(const SquareMatrix& m);

/// All eigenvalues with multiplicity, sorted by descending real part then
/// ascending imaginary part. Supports order <= 16; throws NumericError when
/// the solver fails to converge rather than returning a partial spectrum.
std::vector<std::complex<double>> eigenvalues(const SquareMatrix& m);

/// Solves A x = b by partial-pivot LU. Throws NumericError when A is singular.
std::vector<double> solve_linear(const SquareMatrix& A, const std::vector<double>& b);

} // namespace epidyn
