// channel.hpp
// One-sided phase damping on qubit A and the quartz-thickness calibration.
//
// The spectral profile of the photon is taken Gaussian, so the decoherence
// parameter decays as |kappa(L)| = 2^{-(L / L_half)^2} with a single anchor
// L_half, the thickness at which |kappa| = 1/2. Only |kappa| enters the
// dynamics; p = 1 - |kappa|.

#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "qcorr/states.hpp"

namespace qcorr {

struct ChannelStrength {
    double p;         // damping probability
    double kappa_abs; // surviving coherence factor, p + kappa_abs = 1

    void validate() const {
        if (p < 0.0 || p > 1.0 || kappa_abs < 0.0 || kappa_abs > 1.0 ||
            std::abs(p + kappa_abs - 1.0) > 1e-12)
            throw std::invalid_argument("ChannelStrength: need p, |kappa| in [0,1] with p + |kappa| = 1");
    }

    static ChannelStrength from_kappa(double kappa_abs) { return {1.0 - kappa_abs, kappa_abs}; }
    static ChannelStrength from_p(double p) { return {p, 1.0 - p}; }
};

struct DephasingModel {
    double l_half_lambda0 = 138.0; // thickness (in lambda_0) at which |kappa| = 1/2

    void validate() const {
        if (!(l_half_lambda0 > 0.0))
            throw std::invalid_argument("DephasingModel: l_half_lambda0 must be positive");
    }

    double kappa_abs(double l_lambda0) const {
        validate();
        if (l_lambda0 < 0.0) throw std::invalid_argument("DephasingModel: negative thickness");
        const double x = l_lambda0 / l_half_lambda0;
        return std::exp2(-x * x);
    }

    // inverse of kappa_abs; kappa = 1 maps to L = 0
    double thickness_of_kappa(double kappa) const {
        validate();
        if (kappa <= 0.0 || kappa > 1.0)
            throw std::invalid_argument("DephasingModel: kappa must lie in (0, 1]");
        return l_half_lambda0 * std::sqrt(std::log2(1.0 / kappa));
    }
};

inline ChannelStrength kappa_of_thickness(const DephasingModel& model, double l_lambda0) {
    return ChannelStrength::from_kappa(model.kappa_abs(l_lambda0));
}

// Kraus set { sqrt(1-p) I, sqrt(p) |0><0|, sqrt(p) |1><1| } on A, extended by
// the identity on B.
inline std::array<ComplexMatrix, 3> dephasing_kraus_A(const ChannelStrength& s) {
    s.validate();
    ComplexMatrix k0(2), k1(2), k2(2);
    k0(0, 0) = k0(1, 1) = std::sqrt(1.0 - s.p);
    k1(0, 0) = std::sqrt(s.p);
    k2(1, 1) = std::sqrt(s.p);
    const ComplexMatrix id2 = ComplexMatrix::identity(2);
    return {tensor(k0, id2), tensor(k1, id2), tensor(k2, id2)};
}

// Phase damping on A: every element whose row and column differ in the A
// index is scaled by |kappa|; populations and B-coherences at fixed A are
// untouched. Identical to summing the Kraus terms, but exact on the diagonal.
inline ComplexMatrix apply_dephasing_A(const ComplexMatrix& rho, const ChannelStrength& s) {
    s.validate();
    if (rho.dim() != 4) throw std::invalid_argument("apply_dephasing_A: expected a 4x4 matrix");
    if (!rho.is_hermitian(kHermTol))
        throw std::invalid_argument("apply_dephasing_A: input not Hermitian");
    ComplexMatrix out = rho;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            if ((r >> 1) != (c >> 1)) out(r, c) *= s.kappa_abs;
    return out;
}

inline ComplexMatrix evolve(const StateFamilySpec& spec, const DephasingModel& model,
                            double l_lambda0) {
    return apply_dephasing_A(build_state(spec), kappa_of_thickness(model, l_lambda0));
}

} // namespace qcorr
