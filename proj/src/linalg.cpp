#include "epidyn/linalg.hpp"

#include "epidyn/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace epidyn {

namespace {

Eigen::MatrixXd to_eigen(const SquareMatrix& m)
{
    Eigen::MatrixXd e(m.order, m.order);
    for (int i = 0; i < m.order; ++i)
        for (int j = 0; j < m.order; ++j) e(i, j) = m.at(i, j);
    return e;
}

} // namespace

SquareMatrix SquareMatrix::identity(int k)
{
    SquareMatrix m(k);
    for (int i = 0; i < k; ++i) m.at(i, i) = 1.0;
    return m;
}

double trace(const SquareMatrix& m)
{
    double t = 0.0;
    for (int i = 0; i < m.order; ++i) t += m.at(i, i);
    return t;
}

double determinant(const SquareMatrix& m)
{
    if (m.order == 0) return 1.0;
    return to_eigen(m).determinant();
}

double max_abs(const SquareMatrix& m)
{
    double v = 0.0;
    for (double x : m.a) v = std::max(v, std::abs(x));
    return v;
}

std::vector<std::complex<double>> eigenvalues(const SquareMatrix& m)
{
    if (m.order < 1 || m.order > 16)
        throw std::invalid_argument("eigenvalues: order must be in [1,16]");
    for (double x : m.a)
        if (!std::isfinite(x)) throw NumericError("eigenvalues: matrix has non-finite entries");

    Eigen::EigenSolver<Eigen::MatrixXd> solver(to_eigen(m), /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw NumericError("eigenvalues: QR iteration did not converge");

    std::vector<std::complex<double>> eigs(m.order);
    for (int i = 0; i < m.order; ++i) eigs[i] = solver.eigenvalues()(i);
    std::sort(eigs.begin(), eigs.end(), [](const auto& x, const auto& y) {
        if (x.real() != y.real()) return x.real() > y.real();
        return x.imag() < y.imag();
    });
    return eigs;
}

std::vector<double> solve_linear(const SquareMatrix& A, const std::vector<double>& b)
{
    if (static_cast<int>(b.size()) != A.order)
        throw std::invalid_argument("solve_linear: dimension mismatch");
    Eigen::MatrixXd ae = to_eigen(A);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(ae);
    // PartialPivLU never reports singularity; check the residual instead.
    Eigen::VectorXd be(A.order);
    for (int i = 0; i < A.order; ++i) be(i) = b[i];
    Eigen::VectorXd x = lu.solve(be);
    if (!x.allFinite() || (ae * x - be).norm() > 1e-8 * (1.0 + be.norm()))
        throw NumericError("solve_linear: matrix is singular or badly conditioned");
    return std::vector<double>(x.data(), x.data() + A.order);
}

} // namespace epidyn
