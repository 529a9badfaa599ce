// states.hpp
// Bell basis, Bell-diagonal mixtures and the two experimental input families.
// Qubit ordering is A (x) B throughout, A being the photon that later passes
// the dephasing plates; 4x4 indices run over {HH, HV, VH, VV}.

#pragma once

#include <array>
#include <optional>
#include <stdexcept>

#include "qcorr/linalg.hpp"

namespace qcorr {

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

struct BellMixture {
    double a = 0.0; // |Phi+>
    double b = 0.0; // |Phi->
    double c = 0.0; // |Psi+>
    double d = 0.0; // |Psi->

    void validate() const {
        for (double w : {a, b, c, d})
            if (w < -1e-12 || w > 1.0 + 1e-12)
                throw std::invalid_argument("BellMixture: weight outside [0, 1]");
        if (std::abs(a + b + c + d - 1.0) > 1e-10)
            throw std::invalid_argument("BellMixture: weights do not sum to 1");
    }
};

inline std::array<cplx, 4> bell_vector(BellKind kind) {
    const double s = 1.0 / std::sqrt(2.0);
    switch (kind) {
        case BellKind::PhiPlus:  return {s, 0.0, 0.0, s};
        case BellKind::PhiMinus: return {s, 0.0, 0.0, -s};
        case BellKind::PsiPlus:  return {0.0, s, s, 0.0};
        case BellKind::PsiMinus: return {0.0, s, -s, 0.0};
    }
    throw std::invalid_argument("bell_vector: unknown kind");
}

// rank-1 projector onto the named Bell state; amplitudes are +-1/sqrt2, so
// every entry is exactly 0, 0.5 or -0.5
inline ComplexMatrix bell_state(BellKind kind) {
    const auto v = bell_vector(kind);
    std::array<double, 4> sign{};
    for (int i = 0; i < 4; ++i) sign[i] = v[i].real() > 0.0 ? 1.0 : (v[i].real() < 0.0 ? -1.0 : 0.0);
    ComplexMatrix m(4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m(r, c) = 0.5 * sign[r] * sign[c];
    return m;
}

inline ComplexMatrix from_mixture(const BellMixture& m) {
    m.validate();
    ComplexMatrix rho(4);
    const std::array<std::pair<BellKind, double>, 4> parts = {{{BellKind::PhiPlus, m.a},
                                                               {BellKind::PhiMinus, m.b},
                                                               {BellKind::PsiPlus, m.c},
                                                               {BellKind::PsiMinus, m.d}}};
    for (const auto& [kind, w] : parts) {
        if (w == 0.0) continue;
        rho += w * bell_state(kind);
    }
    return rho;
}

// b |Phi-><Phi-| + (1-b) |Psi-><Psi-|, the two-path interference input
inline ComplexMatrix interference_state(double b) {
    if (b < 0.0 || b > 1.0) throw std::invalid_argument("interference_state: b outside [0, 1]");
    return from_mixture({0.0, b, 0.0, 1.0 - b});
}

// Mach-Zehnder recombination of the interference state with reflectivity R
inline ComplexMatrix four_mix_state(double b, double R) {
    if (b < 0.0 || b > 1.0) throw std::invalid_argument("four_mix_state: b outside [0, 1]");
    if (R < 0.0 || R > 1.0) throw std::invalid_argument("four_mix_state: R outside [0, 1]");
    const double d = 1.0 - b;
    return from_mixture({d * R, b * (1.0 - R), b * R, d * (1.0 - R)});
}

struct MixtureDecomposition {
    BellMixture weights;
    double off_bell_residual; // trace distance to the Bell-diagonal truncation
};

// Bell-basis diagonal of rho plus the distance to that truncation. Never
// fails on non-Bell-diagonal input; tomography reconstructions land here.
// The contraction <v|rho|v> uses the integer sign pattern of the Bell vector
// so exact inputs give exact weights.
inline MixtureDecomposition to_mixture(const ComplexMatrix& rho) {
    if (rho.dim() != 4) throw std::invalid_argument("to_mixture: expected a 4x4 matrix");
    BellMixture m;
    double* slots[4] = {&m.a, &m.b, &m.c, &m.d};
    const BellKind kinds[4] = {BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus,
                               BellKind::PsiMinus};
    ComplexMatrix truncation(4);
    for (int k = 0; k < 4; ++k) {
        const auto v = bell_vector(kinds[k]);
        std::array<double, 4> sign{};
        for (int i = 0; i < 4; ++i)
            sign[i] = v[i].real() > 0.0 ? 1.0 : (v[i].real() < 0.0 ? -1.0 : 0.0);
        cplx w = 0.0;
        for (int r = 0; r < 4; ++r) {
            if (sign[r] == 0.0) continue;
            for (int c = 0; c < 4; ++c) {
                if (sign[c] == 0.0) continue;
                w += 0.5 * sign[r] * sign[c] * rho(r, c);
            }
        }
        *slots[k] = w.real();
        truncation += w.real() * bell_state(kinds[k]);
    }
    return {m, trace_distance(rho, truncation)};
}

// Hermiticity / trace / positivity gate for externally supplied matrices.
inline void validate_density(const ComplexMatrix& rho) {
    if (!rho.is_hermitian(kHermTol)) throw std::invalid_argument("density matrix: not Hermitian");
    if (std::abs(rho.trace() - 1.0) > 1e-9)
        throw std::invalid_argument("density matrix: trace differs from 1");
    const Spectrum s = hermitian_eig(rho);
    if (s.eigenvalues.back() < -1e-9)
        throw std::invalid_argument("density matrix: negative eigenvalue");
}

struct StateFamilySpec {
    enum class Family { Interference, FourMix, Explicit };

    Family family = Family::Interference;
    double b = 0.75;
    double r = 0.0;
    std::optional<ComplexMatrix> matrix;
};

inline ComplexMatrix build_state(const StateFamilySpec& spec) {
    switch (spec.family) {
        case StateFamilySpec::Family::Interference:
            return interference_state(spec.b);
        case StateFamilySpec::Family::FourMix:
            return four_mix_state(spec.b, spec.r);
        case StateFamilySpec::Family::Explicit:
            if (!spec.matrix) throw std::invalid_argument("build_state: explicit family without matrix");
            validate_density(*spec.matrix);
            return *spec.matrix;
    }
    throw std::invalid_argument("build_state: unknown family");
}

} // namespace qcorr
