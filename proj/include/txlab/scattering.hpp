#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "txlab/model.hpp"

namespace txlab {

using cdouble = std::complex<double>;

// Dense row-major complex matrix, sized for mode counts of a few.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static CMatrix identity(std::size_t n) {
        CMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    cdouble& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cdouble& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cdouble> data_;
};

// Drift matrix A (n x n) and input matrix B (n x m). B is real nonnegative:
// entry (mu, j) is sqrt(rate) when port j drains mode mu, else 0.
struct DynamicalMatrices {
    CMatrix a;
    CMatrix b;
};

struct ScatteringMatrix {
    double omega = 0.0;   // probe frequency [rad/s]
    CMatrix s;            // m x m, dimensionless
};

struct SolveResult {
    CMatrix x;
    double condition = 0.0;   // 1-norm condition estimate of the system matrix
};

// Builds A and B from the chain. Diagonal of A is i*Omega_mu + kappa_mu/2 with
// Omega_mu = ChainModel::effective_frequency(mu); off-diagonals are i*g for
// each coupled pair.
DynamicalMatrices assemble(const ChainModel& model);

// S(omega) = I - B^T (-i omega I + A)^{-1} B.
ScatteringMatrix scattering_matrix(const ChainModel& model, double omega);

// Same, reusing pre-assembled matrices across a frequency sweep.
ScatteringMatrix scattering_matrix(const DynamicalMatrices& dyn, double omega);

// Dense solve M X = RHS by partial-pivot LU with one refinement pass.
// Relative residual is checked against 1e-12; a pivot below 1e-30 or a failed
// residual check raises NumericalError carrying the condition estimate.
SolveResult solve_complex(const CMatrix& m, const CMatrix& rhs);

}  // namespace txlab
