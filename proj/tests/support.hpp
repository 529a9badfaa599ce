// Shared test helpers: deterministic random state generators and closed-form
// reference values computed without touching the matrix code paths they
// check.

#pragma once

#include <array>
#include <cmath>

#include "qcorr/qcorr.hpp"

namespace testsupport {

using namespace qcorr;

// ---- reference closed forms (kept independent of the matrix pipeline) ----

inline double ref_xlog2x(double x) { return x <= 0.0 ? 0.0 : x * std::log2(x); }

inline double ref_binary_entropy(double x) { return -ref_xlog2x(x) - ref_xlog2x(1.0 - x); }

// Bell weights after one-sided dephasing with coherence factor kappa:
// each pair (x, y) of Phi or Psi weights moves to (x+y)/2 +- kappa (x-y)/2.
inline std::array<double, 4> ref_evolved_weights(const BellMixture& m, double kappa) {
    return {0.5 * (m.a + m.b) + 0.5 * kappa * (m.a - m.b),
            0.5 * (m.a + m.b) - 0.5 * kappa * (m.a - m.b),
            0.5 * (m.c + m.d) + 0.5 * kappa * (m.c - m.d),
            0.5 * (m.c + m.d) - 0.5 * kappa * (m.c - m.d)};
}

inline double ref_entropy_bits(const std::array<double, 4>& w) {
    double s = 0.0;
    for (double x : w) s -= ref_xlog2x(x);
    return s;
}

inline double ref_mutual_information(const BellMixture& m, double kappa) {
    return 2.0 - ref_entropy_bits(ref_evolved_weights(m, kappa));
}

inline double ref_eta(const BellMixture& m, double kappa) {
    return std::max({std::abs(kappa * (m.a - m.b + m.c - m.d)),
                     std::abs(kappa * (m.c - m.d - m.a + m.b)),
                     std::abs(m.a + m.b - m.c - m.d)});
}

inline double ref_classical(const BellMixture& m, double kappa) {
    return 1.0 - ref_binary_entropy(0.5 * (1.0 + ref_eta(m, kappa)));
}

// ---- deterministic random inputs ----

inline cplx random_unit_complex(SplitMix64& rng) {
    return {2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0};
}

inline ComplexMatrix random_hermitian(SplitMix64& rng, int dim) {
    ComplexMatrix m(dim);
    for (int r = 0; r < dim; ++r) {
        m(r, r) = 2.0 * rng.next_double() - 1.0;
        for (int c = r + 1; c < dim; ++c) {
            m(r, c) = random_unit_complex(rng);
            m(c, r) = std::conj(m(r, c));
        }
    }
    return m;
}

// G G^dag / tr, a full-rank random density matrix
inline ComplexMatrix random_density(SplitMix64& rng, int dim = 4) {
    ComplexMatrix g(dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) g(r, c) = random_unit_complex(rng);
    ComplexMatrix rho = g * g.adjoint();
    rho *= 1.0 / rho.trace().real();
    // scrub rounding asymmetry so density checks see an exactly Hermitian matrix
    for (int r = 0; r < dim; ++r) {
        rho(r, r) = rho(r, r).real();
        for (int c = r + 1; c < dim; ++c) {
            const cplx avg = 0.5 * (rho(r, c) + std::conj(rho(c, r)));
            rho(r, c) = avg;
            rho(c, r) = std::conj(avg);
        }
    }
    return rho;
}

inline BellMixture random_mixture(SplitMix64& rng) {
    double w[4], sum = 0.0;
    for (double& x : w) {
        x = -std::log(1.0 - rng.next_double());
        sum += x;
    }
    return {w[0] / sum, w[1] / sum, w[2] / sum, w[3] / sum};
}

} // namespace testsupport
