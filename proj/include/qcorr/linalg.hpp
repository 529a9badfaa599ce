// linalg.hpp
// Tensor products, partial trace, Hermitian eigendecomposition and entropy
// functionals on small dense complex matrices.
//
// The eigensolver is a cyclic Jacobi iteration for complex Hermitian input.
// Every matrix in the correlation flows is at most 4x4, where Jacobi is
// exact to machine precision within a handful of sweeps and needs no
// external dependencies.

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "qcorr/complex_matrix.hpp"

namespace qcorr {

constexpr double kHermTol = 1e-10;

// x * log2(x) with the 0 * log 0 = 0 convention
inline double xlog2x(double x) {
    return x <= 0.0 ? 0.0 : x * std::log2(x);
}

// binary entropy in bits, clamped to the unit interval
inline double binary_entropy(double x) {
    x = std::clamp(x, 0.0, 1.0);
    return -xlog2x(x) - xlog2x(1.0 - x);
}

enum class Subsystem { A, B };

struct Spectrum {
    std::vector<double> eigenvalues; // sorted descending
    ComplexMatrix eigenvectors;      // columns, paired with eigenvalues
};

// Kronecker product; the first factor indexes subsystem A, so
// out(i*db + k, j*db + l) = a(i, j) * b(k, l).
inline ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int da = a.dim(), db = b.dim();
    ComplexMatrix out(da * db);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx{}) continue;
            for (int k = 0; k < db; ++k)
                for (int l = 0; l < db; ++l) out(i * db + k, j * db + l) = aij * b(k, l);
        }
    return out;
}

// Reduced state of one qubit of a two-qubit density matrix.
inline ComplexMatrix partial_trace(const ComplexMatrix& rho, Subsystem keep) {
    if (rho.dim() != 4) throw std::invalid_argument("partial_trace: expected a 4x4 matrix");
    if (!rho.is_hermitian(kHermTol)) throw std::invalid_argument("partial_trace: input not Hermitian");
    if (std::abs(rho.trace() - 1.0) > 1e-10)
        throw std::invalid_argument("partial_trace: input trace differs from 1");
    ComplexMatrix out(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < 2; ++k)
                s += (keep == Subsystem::A) ? rho(2 * i + k, 2 * j + k) : rho(2 * k + i, 2 * k + j);
            out(i, j) = s;
        }
    return out;
}

namespace detail {

inline double off_diagonal_frobenius(const ComplexMatrix& m) {
    double s = 0.0;
    for (int r = 0; r < m.dim(); ++r)
        for (int c = 0; c < m.dim(); ++c)
            if (r != c) s += std::norm(m(r, c));
    return std::sqrt(s);
}

} // namespace detail

// Cyclic Jacobi diagonalization of a Hermitian matrix. Sweeps rotate every
// (p, q) pair until the off-diagonal Frobenius norm falls below 1e-13;
// more than 50 sweeps is treated as failure.
inline Spectrum hermitian_eig(const ComplexMatrix& input) {
    if (!input.is_hermitian(kHermTol)) throw std::invalid_argument("hermitian_eig: input not Hermitian");

    const int n = input.dim();
    ComplexMatrix m = input;
    ComplexMatrix v = ComplexMatrix::identity(n);
    constexpr double kOffTol = 1e-13;
    constexpr int kMaxSweeps = 50;

    int sweep = 0;
    while (detail::off_diagonal_frobenius(m) > kOffTol) {
        if (++sweep > kMaxSweeps) throw std::runtime_error("hermitian_eig: no convergence in 50 sweeps");
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx mpq = m(p, q);
                const double apq = std::abs(mpq);
                if (apq < 1e-300) {
                    m(p, q) = m(q, p) = 0.0;
                    continue;
                }
                // Rotation in the (p, q) plane. The phase of m(p, q) is folded
                // into s so the reduced 2x2 problem is real symmetric.
                const cplx phase = mpq / apq;
                const double app = m(p, p).real();
                const double aqq = m(q, q).real();
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0.0 ? -1.0 : 1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const cplx s = t * c * std::conj(phase);

                // columns: [x_p, x_q] <- [c*x_p + s*x_q, -conj(s)*x_p + c*x_q]
                for (int r = 0; r < n; ++r) {
                    const cplx mrp = m(r, p), mrq = m(r, q);
                    m(r, p) = c * mrp + s * mrq;
                    m(r, q) = -std::conj(s) * mrp + c * mrq;
                    const cplx vrp = v(r, p), vrq = v(r, q);
                    v(r, p) = c * vrp + s * vrq;
                    v(r, q) = -std::conj(s) * vrp + c * vrq;
                }
                // rows: conjugate transform
                for (int col = 0; col < n; ++col) {
                    const cplx mpc = m(p, col), mqc = m(q, col);
                    m(p, col) = c * mpc + std::conj(s) * mqc;
                    m(q, col) = -s * mpc + c * mqc;
                }
                m(p, q) = m(q, p) = 0.0;
                m(p, p) = cplx(m(p, p).real(), 0.0);
                m(q, q) = cplx(m(q, q).real(), 0.0);
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return m(a, a).real() > m(b, b).real(); });

    Spectrum out{std::vector<double>(n), ComplexMatrix(n)};
    for (int k = 0; k < n; ++k) {
        out.eigenvalues[k] = m(order[k], order[k]).real();
        for (int r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, order[k]);
    }
    return out;
}

// von Neumann entropy in bits
inline double vn_entropy(const ComplexMatrix& rho) {
    if (std::abs(rho.trace() - 1.0) > 1e-9)
        throw std::invalid_argument("vn_entropy: trace differs from 1");
    const Spectrum s = hermitian_eig(rho);
    double sum = 0.0;
    for (double lam : s.eigenvalues) {
        if (lam < -1e-9) throw std::invalid_argument("vn_entropy: negative eigenvalue");
        sum -= xlog2x(std::clamp(lam, 0.0, 1.0));
    }
    return sum;
}

// (1/2) * sum |eig(a - b)|
inline double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("trace_distance: dimension mismatch");
    if (!a.is_hermitian(kHermTol) || !b.is_hermitian(kHermTol))
        throw std::invalid_argument("trace_distance: inputs must be Hermitian");
    const Spectrum s = hermitian_eig(a - b);
    double sum = 0.0;
    for (double lam : s.eigenvalues) sum += std::abs(lam);
    return 0.5 * sum;
}

// V f(diag) V^dag for a spectral function f on the eigenvalues
inline ComplexMatrix assemble_from_spectrum(const Spectrum& s, const std::vector<double>& lams) {
    const int n = s.eigenvectors.dim();
    ComplexMatrix out(n);
    for (int k = 0; k < n; ++k) {
        if (lams[k] == 0.0) continue;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                out(r, c) += lams[k] * s.eigenvectors(r, k) * std::conj(s.eigenvectors(c, k));
    }
    return out;
}

// principal square root of a PSD Hermitian matrix (eigenvalues clamped at 0)
inline ComplexMatrix hermitian_sqrt(const ComplexMatrix& m) {
    Spectrum s = hermitian_eig(m);
    std::vector<double> roots(s.eigenvalues.size());
    for (std::size_t i = 0; i < roots.size(); ++i)
        roots[i] = s.eigenvalues[i] > 0.0 ? std::sqrt(s.eigenvalues[i]) : 0.0;
    return assemble_from_spectrum(s, roots);
}

} // namespace qcorr
