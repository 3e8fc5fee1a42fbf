#include "txlab/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "txlab/errors.hpp"

namespace txlab {

namespace {

double norm1(const CMatrix& m) {
    double best = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < m.rows(); ++i) col += std::abs(m(i, j));
        best = std::max(best, col);
    }
    return best;
}

double max_abs(const CMatrix& m) {
    double best = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) best = std::max(best, std::abs(m(i, j)));
    return best;
}

struct LU {
    CMatrix lu;
    std::vector<std::size_t> perm;
};

LU factor(const CMatrix& m) {
    const std::size_t n = m.rows();
    LU f{m, std::vector<std::size_t>(n)};
    std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(f.lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(f.lu(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best < 1e-30)
            throw NumericalError("singular system: pivot " + std::to_string(best) +
                                 " at column " + std::to_string(k));
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(piv, j));
            std::swap(f.perm[k], f.perm[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            f.lu(i, k) /= f.lu(k, k);
            const cdouble lik = f.lu(i, k);
            for (std::size_t j = k + 1; j < n; ++j) f.lu(i, j) -= lik * f.lu(k, j);
        }
    }
    return f;
}

CMatrix lu_solve(const LU& f, const CMatrix& rhs) {
    const std::size_t n = f.lu.rows();
    const std::size_t k = rhs.cols();
    CMatrix x(n, k);
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            cdouble s = rhs(f.perm[i], c);
            for (std::size_t j = 0; j < i; ++j) s -= f.lu(i, j) * x(j, c);
            x(i, c) = s;
        }
        for (std::size_t i = n; i-- > 0;) {
            cdouble s = x(i, c);
            for (std::size_t j = i + 1; j < n; ++j) s -= f.lu(i, j) * x(j, c);
            x(i, c) = s / f.lu(i, i);
        }
    }
    return x;
}

CMatrix residual(const CMatrix& m, const CMatrix& x, const CMatrix& rhs) {
    CMatrix r(rhs.rows(), rhs.cols());
    for (std::size_t i = 0; i < rhs.rows(); ++i)
        for (std::size_t c = 0; c < rhs.cols(); ++c) {
            cdouble s = rhs(i, c);
            for (std::size_t j = 0; j < m.cols(); ++j) s -= m(i, j) * x(j, c);
            r(i, c) = s;
        }
    return r;
}

}  // namespace

SolveResult solve_complex(const CMatrix& m, const CMatrix& rhs) {
    if (m.rows() != m.cols()) throw NumericalError("solve_complex: matrix must be square");
    if (m.rows() != rhs.rows()) throw NumericalError("solve_complex: dimension mismatch");

    const LU f = factor(m);

    SolveResult out;
    out.x = lu_solve(f, rhs);
    const double inv_norm = norm1(lu_solve(f, CMatrix::identity(m.rows())));
    out.condition = norm1(m) * inv_norm;

    const double rhs_scale = max_abs(rhs);
    if (rhs_scale == 0.0) return out;   // exact zero solution

    CMatrix r = residual(m, out.x, rhs);
    if (max_abs(r) > 1e-13 * rhs_scale) {
        const CMatrix dx = lu_solve(f, r);
        for (std::size_t i = 0; i < out.x.rows(); ++i)
            for (std::size_t c = 0; c < out.x.cols(); ++c) out.x(i, c) += dx(i, c);
        r = residual(m, out.x, rhs);
    }
    if (max_abs(r) > 1e-12 * rhs_scale)
        throw NumericalError("solve_complex: residual " + std::to_string(max_abs(r) / rhs_scale) +
                             " exceeds 1e-12 (condition estimate " +
                             std::to_string(out.condition) + ")");
    return out;
}

DynamicalMatrices assemble(const ChainModel& model) {
    const std::size_t n = model.n_modes();
    const std::size_t m = model.n_ports();
    DynamicalMatrices dyn{CMatrix(n, n), CMatrix(n, m)};

    for (std::size_t mu = 0; mu < n; ++mu)
        dyn.a(mu, mu) = cdouble(0.5 * model.modes[mu].kappa(), model.effective_frequency(mu));
    for (const CouplingSpec& c : model.couplings) {
        dyn.a(c.mode_a, c.mode_b) = cdouble(0.0, c.strength);
        dyn.a(c.mode_b, c.mode_a) = cdouble(0.0, c.strength);
    }
    for (std::size_t j = 0; j < m; ++j)
        dyn.b(model.ports[j].mode, j) = std::sqrt(model.ports[j].rate);
    return dyn;
}

ScatteringMatrix scattering_matrix(const DynamicalMatrices& dyn, double omega) {
    const std::size_t n = dyn.a.rows();
    const std::size_t m = dyn.b.cols();

    CMatrix sys = dyn.a;
    for (std::size_t i = 0; i < n; ++i) sys(i, i) -= cdouble(0.0, omega);

    const CMatrix x = solve_complex(sys, dyn.b).x;

    ScatteringMatrix out{omega, CMatrix::identity(m)};
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = 0; q < m; ++q) {
            cdouble s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s -= dyn.b(i, p) * x(i, q);
            out.s(p, q) += s;
        }
    return out;
}

ScatteringMatrix scattering_matrix(const ChainModel& model, double omega) {
    return scattering_matrix(assemble(model), omega);
}

}  // namespace txlab
