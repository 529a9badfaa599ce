// correlations.hpp
// Correlation quantifiers for two-qubit states: mutual information, classical
// correlation (closed form for Bell-diagonal states, measurement optimization
// otherwise), quantum discord, Wootters concurrence, entanglement of
// formation, relative entropy of entanglement for Bell-diagonal spectra, and
// the non-entanglement quantum correlation D = Q - Rn.
//
// Classical correlation maximizes over rank-1 projective measurements on B,
// which attain the optimum for two qubits. The numeric optimizer is a coarse
// (theta, phi) grid followed by per-coordinate golden-section refinement;
// it is fully deterministic.

#pragma once

#include <array>
#include <limits>
#include <numbers>
#include <optional>

#include "qcorr/channel.hpp"

namespace qcorr {

inline constexpr double kPi = std::numbers::pi;

struct MeasurementDirection {
    double theta = 0.0; // in [0, pi]; |l> = cos(theta)|0> + sin(theta) e^{i phi} |1>
    double phi = 0.0;   // in [0, 2 pi)
};

struct CorrelationReport {
    double mutual_information = 0.0;  // I
    double classical = 0.0;           // C
    double quantum = 0.0;             // Q = I - C
    double eta = 0.0;                 // max |diag of the correlation tensor|
    double lambda = 0.0;              // concurrence precursor, may be negative
    double upsilon = 0.0;             // concurrence, max(0, lambda)
    double eof = 0.0;                 // En
    std::optional<double> ree;        // Rn; only defined for Bell-diagonal states
    std::optional<double> nonent;     // D = Q - Rn when Rn is defined
    std::array<double, 4> lambda_spectrum{}; // eigenvalues of rho, descending
};

inline double mutual_information(const ComplexMatrix& rho) {
    const double sa = vn_entropy(partial_trace(rho, Subsystem::A));
    const double sb = vn_entropy(partial_trace(rho, Subsystem::B));
    return sa + sb - vn_entropy(rho);
}

namespace detail {

// entropy of an unnormalized 2x2 block with trace q, in bits
inline double entropy_2x2(const cplx& t00, const cplx& t01, const cplx& t11, double q) {
    const double a = t00.real() / q;
    const double d = t11.real() / q;
    const double mid = 0.5 * (a + d);
    const double rad = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(t01) / (q * q));
    return binary_entropy(mid + rad);
}

struct ProjectedOutcome {
    double probability;
    double entropy;
};

inline ProjectedOutcome project_B(const ComplexMatrix& rho, const std::array<cplx, 2>& l) {
    cplx t00 = 0.0, t01 = 0.0, t11 = 0.0;
    for (int k = 0; k < 2; ++k)
        for (int m = 0; m < 2; ++m) {
            const cplx w = std::conj(l[k]) * l[m];
            t00 += w * rho(0 + k, 0 + m);
            t01 += w * rho(0 + k, 2 + m);
            t11 += w * rho(2 + k, 2 + m);
        }
    const double q = t00.real() + t11.real();
    if (q < -1e-10 || q > 1.0 + 1e-10)
        throw std::runtime_error("conditional entropy: outcome probability outside [0, 1]");
    if (q < 1e-14) return {0.0, 0.0};
    return {q, entropy_2x2(t00, t01, t11, q)};
}

} // namespace detail

// Conditional entropy of A after measuring B along (theta, phi). The default
// averages both outcomes, sum_j q_j S(rho_A^j); single_outcome reports only
// the |l> branch, matching the measured scans of S(rho_A^l).
inline double conditional_entropy_after_B(const ComplexMatrix& rho, MeasurementDirection dir,
                                          bool single_outcome = false) {
    if (rho.dim() != 4)
        throw std::invalid_argument("conditional_entropy_after_B: expected a 4x4 matrix");
    const cplx eip = std::polar(1.0, dir.phi);
    const std::array<cplx, 2> l = {std::cos(dir.theta), std::sin(dir.theta) * eip};
    const auto first = detail::project_B(rho, l);
    if (single_outcome) return first.entropy;
    const std::array<cplx, 2> lperp = {std::sin(dir.theta), -std::cos(dir.theta) * eip};
    const auto second = detail::project_B(rho, lperp);
    return first.probability * first.entropy + second.probability * second.entropy;
}

struct NumericClassical {
    double classical;
    MeasurementDirection argmin;
};

inline constexpr int kDefaultGridTheta = 64;
inline constexpr int kDefaultGridPhi = 32;
inline constexpr int kDefaultRefineIters = 40;

namespace detail {

template <typename F>
std::pair<double, double> golden_section(F&& f, double lo, double hi, int iters) {
    constexpr double kInvPhi = 0.6180339887498949;
    double c = hi - kInvPhi * (hi - lo);
    double d = lo + kInvPhi * (hi - lo);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iters; ++i) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - kInvPhi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + kInvPhi * (hi - lo);
            fd = f(d);
        }
    }
    return fc < fd ? std::make_pair(c, fc) : std::make_pair(d, fd);
}

} // namespace detail

// C = S(rho_A) - min over measurement directions of the averaged conditional
// entropy. Coarse grid over [0, pi] x [0, 2 pi), then alternating
// golden-section refinement of each coordinate inside its grid cell.
inline NumericClassical classical_correlation_numeric(const ComplexMatrix& rho,
                                                      int grid_theta = kDefaultGridTheta,
                                                      int grid_phi = kDefaultGridPhi,
                                                      int refine_iters = kDefaultRefineIters) {
    if (grid_theta < 8 || grid_phi < 8)
        throw std::invalid_argument("classical_correlation_numeric: grid counts must be >= 8");
    const double sa = vn_entropy(partial_trace(rho, Subsystem::A));

    const double dtheta = kPi / (grid_theta - 1);
    const double dphi = 2.0 * kPi / grid_phi;
    double best = std::numeric_limits<double>::infinity();
    MeasurementDirection best_dir;
    for (int i = 0; i < grid_theta; ++i) {
        const double theta = i * dtheta;
        for (int j = 0; j < grid_phi; ++j) {
            const double phi = j * dphi;
            const double s = conditional_entropy_after_B(rho, {theta, phi});
            if (s < best) {
                best = s;
                best_dir = {theta, phi};
            }
        }
    }

    for (int pass = 0; pass < 2; ++pass) {
        auto [theta, ftheta] = detail::golden_section(
            [&](double t) { return conditional_entropy_after_B(rho, {t, best_dir.phi}); },
            std::max(0.0, best_dir.theta - dtheta), std::min(kPi, best_dir.theta + dtheta),
            refine_iters);
        if (ftheta < best) {
            best = ftheta;
            best_dir.theta = theta;
        }
        auto [phi, fphi] = detail::golden_section(
            [&](double p) { return conditional_entropy_after_B(rho, {best_dir.theta, p}); },
            best_dir.phi - dphi, best_dir.phi + dphi, refine_iters);
        if (fphi < best) {
            best = fphi;
            best_dir.phi = phi < 0.0 ? phi + 2.0 * kPi : phi;
        }
    }
    return {sa - best, best_dir};
}

struct AnalyticClassical {
    double classical;
    double eta;
};

// Closed form for a Bell mixture after damping p: the optimal measurement
// axis beats the two kappa-scaled tensor components against the invariant
// one, eta = max{|alpha|, |beta|, |gamma|}.
inline AnalyticClassical classical_correlation_analytic(const BellMixture& m, double p) {
    m.validate();
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("classical_correlation_analytic: p outside [0, 1]");
    const double kappa = 1.0 - p;
    const double alpha = kappa * (m.a - m.b + m.c - m.d);
    const double beta = kappa * (m.c - m.d - m.a + m.b);
    const double gamma = m.a + m.b - m.c - m.d;
    const double eta = std::max({std::abs(alpha), std::abs(beta), std::abs(gamma)});
    return {1.0 - binary_entropy(0.5 * (1.0 + eta)), eta};
}

inline constexpr double kBellDiagonalResidualTol = 1e-9;

inline double quantum_discord(const ComplexMatrix& rho) {
    const double total = mutual_information(rho);
    const MixtureDecomposition dec = to_mixture(rho);
    const double classical = dec.off_bell_residual <= kBellDiagonalResidualTol
                                 ? classical_correlation_analytic(dec.weights, 0.0).classical
                                 : classical_correlation_numeric(rho).classical;
    return total - classical;
}

struct ConcurrenceResult {
    double lambda;  // sqrt(chi_1) - sqrt(chi_2) - sqrt(chi_3) - sqrt(chi_4)
    double upsilon; // max(0, lambda)
};

// Wootters spin-flip spectrum. chi_j are computed from the Hermitian
// sandwich sqrt(rho) rho_tilde sqrt(rho), which shares the spectrum of
// rho * rho_tilde.
inline ConcurrenceResult concurrence(const ComplexMatrix& rho) {
    if (rho.dim() != 4) throw std::invalid_argument("concurrence: expected a 4x4 matrix");
    validate_density(rho);

    ComplexMatrix yy(4); // sigma_2 (x) sigma_2
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;

    const ComplexMatrix tilde = yy * rho.conjugate() * yy;
    const ComplexMatrix root = hermitian_sqrt(rho);
    const Spectrum chi = hermitian_eig(root * tilde * root);

    double lambda = 0.0;
    for (std::size_t j = 0; j < chi.eigenvalues.size(); ++j) {
        const double r = std::sqrt(std::max(0.0, chi.eigenvalues[j]));
        lambda += (j == 0) ? r : -r;
    }
    return {lambda, std::max(0.0, lambda)};
}

// En = H((1 + sqrt(1 - Upsilon^2)) / 2)
inline double entanglement_of_formation(double upsilon) {
    if (upsilon < 0.0 || upsilon > 1.0)
        throw std::invalid_argument("entanglement_of_formation: concurrence outside [0, 1]");
    return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - upsilon * upsilon)));
}

// Relative entropy of entanglement of a Bell-diagonal state from its largest
// eigenvalue: zero up to 1/2, then 1 - H(lambda_max).
inline double ree_bell_diagonal(double lambda_max) {
    if (lambda_max < 0.0 || lambda_max > 1.0)
        throw std::invalid_argument("ree_bell_diagonal: lambda_max outside [0, 1]");
    if (lambda_max <= 0.5) return 0.0;
    return 1.0 - binary_entropy(lambda_max);
}

// Full bundle of correlation quantifiers for one state. Rn (and with it D)
// is reported only when the state is Bell-diagonal up to the residual
// tolerance; the closed form does not extend further.
inline CorrelationReport full_report(const ComplexMatrix& rho) {
    validate_density(rho);
    CorrelationReport rep;

    const Spectrum spec = hermitian_eig(rho);
    for (int i = 0; i < 4; ++i) rep.lambda_spectrum[i] = spec.eigenvalues[i];

    const MixtureDecomposition dec = to_mixture(rho);
    const bool bell_diagonal = dec.off_bell_residual <= kBellDiagonalResidualTol;

    rep.mutual_information = mutual_information(rho);
    if (bell_diagonal) {
        const AnalyticClassical ac = classical_correlation_analytic(dec.weights, 0.0);
        rep.classical = ac.classical;
        rep.eta = ac.eta;
    } else {
        rep.classical = classical_correlation_numeric(rho).classical;
        // diagonal of the correlation tensor; coincides with the analytic eta
        // on Bell-diagonal states
        const BellMixture& w = dec.weights;
        rep.eta = std::max({std::abs(w.a - w.b + w.c - w.d), std::abs(w.c - w.d - w.a + w.b),
                            std::abs(w.a + w.b - w.c - w.d)});
    }
    rep.quantum = rep.mutual_information - rep.classical;

    const ConcurrenceResult con = concurrence(rho);
    rep.lambda = con.lambda;
    rep.upsilon = con.upsilon;
    rep.eof = entanglement_of_formation(std::min(1.0, con.upsilon));

    if (bell_diagonal) {
        rep.ree = ree_bell_diagonal(std::clamp(spec.eigenvalues.front(), 0.0, 1.0));
        rep.nonent = rep.quantum - *rep.ree;
    }
    return rep;
}

} // namespace qcorr
