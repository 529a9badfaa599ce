// tomography.hpp
// Sixteen-basis two-qubit coincidence counting with Poisson statistics,
// linear-inversion reconstruction, physicality restoration and a bootstrap
// over the counting noise.
//
// The basis order is frozen so that count files are unambiguous:
//   HH HV VV VH RH RV DV DH DR DD RD HD VD VL HL RL
// with D = (H+V)/sqrt2, R = (H+iV)/sqrt2, L = (H-iV)/sqrt2. Flux is
// normalized by the sum of the four computational-basis counts.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qcorr/correlations.hpp"
#include "qcorr/random.hpp"

namespace qcorr {

inline constexpr std::array<const char*, 16> kTomoSettings = {
    "HH", "HV", "VV", "VH", "RH", "RV", "DV", "DH",
    "DR", "DD", "RD", "HD", "VD", "VL", "HL", "RL"};

inline std::array<cplx, 2> analyzer_ket(char label) {
    const double s = 1.0 / std::sqrt(2.0);
    switch (label) {
        case 'H': return {1.0, 0.0};
        case 'V': return {0.0, 1.0};
        case 'D': return {s, s};
        case 'R': return {s, cplx(0.0, s)};
        case 'L': return {s, cplx(0.0, -s)};
    }
    throw std::invalid_argument(std::string("analyzer_ket: unknown label '") + label + "'");
}

// product projectors |s_A s_B><s_A s_B| in the canonical ordering
inline const std::array<ComplexMatrix, 16>& tomo_projectors() {
    static const std::array<ComplexMatrix, 16> projectors = [] {
        std::array<ComplexMatrix, 16> out{
            ComplexMatrix(4), ComplexMatrix(4), ComplexMatrix(4), ComplexMatrix(4),
            ComplexMatrix(4), ComplexMatrix(4), ComplexMatrix(4), ComplexMatrix(4),
            ComplexMatrix(4), ComplexMatrix(4), ComplexMatrix(4), ComplexMatrix(4),
            ComplexMatrix(4), ComplexMatrix(4), ComplexMatrix(4), ComplexMatrix(4)};
        for (int i = 0; i < 16; ++i) {
            const auto ka = analyzer_ket(kTomoSettings[i][0]);
            const auto kb = analyzer_ket(kTomoSettings[i][1]);
            std::array<cplx, 4> v;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) v[2 * a + b] = ka[a] * kb[b];
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) out[i](r, c) = v[r] * std::conj(v[c]);
        }
        return out;
    }();
    return projectors;
}

struct CountRecord {
    int basis_index = 0;
    std::string setting;
    double count = 0.0; // integral for sampled counts; real-valued in exact mode
};

struct TomoCounts {
    long long acquisition_total = 0; // N, per-basis acquisition size
    std::array<double, 16> counts{};

    std::vector<CountRecord> records() const {
        std::vector<CountRecord> out;
        out.reserve(16);
        for (int i = 0; i < 16; ++i) out.push_back({i, kTomoSettings[i], counts[i]});
        return out;
    }
};

// Coincidence counts for every basis: Poisson with mean N Tr(Pi_i rho), or
// the exact means when exact is set. One splitmix64 stream consumed in basis
// order keeps runs byte-reproducible.
inline TomoCounts simulate_counts(const ComplexMatrix& rho, long long n, std::uint64_t seed,
                                  bool exact = false) {
    if (n < 1) throw std::invalid_argument("simulate_counts: N must be >= 1");
    validate_density(rho);
    TomoCounts out;
    out.acquisition_total = n;
    SplitMix64 rng(seed);
    const auto& projectors = tomo_projectors();
    for (int i = 0; i < 16; ++i) {
        cplx expect = 0.0;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) expect += projectors[i](r, c) * rho(c, r);
        const double mean = static_cast<double>(n) * std::clamp(expect.real(), 0.0, 1.0);
        out.counts[i] = exact ? mean : static_cast<double>(poisson_sample(rng, mean));
    }
    return out;
}

namespace detail {

// Hermitian operator basis: four diagonal units, then (E_ij + E_ji) and
// i(E_ij - E_ji) for each pair i < j.
inline const std::array<ComplexMatrix, 16>& hermitian_basis() {
    static const std::array<ComplexMatrix, 16> basis = [] {
        std::array<ComplexMatrix, 16> out{
            ComplexMatrix(4), ComplexMatrix(4), ComplexMatrix(4), ComplexMatrix(4),
            ComplexMatrix(4), ComplexMatrix(4), ComplexMatrix(4), ComplexMatrix(4),
            ComplexMatrix(4), ComplexMatrix(4), ComplexMatrix(4), ComplexMatrix(4),
            ComplexMatrix(4), ComplexMatrix(4), ComplexMatrix(4), ComplexMatrix(4)};
        for (int i = 0; i < 4; ++i) out[i](i, i) = 1.0;
        int k = 4;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                out[k](i, j) = 1.0;
                out[k](j, i) = 1.0;
                ++k;
                out[k](i, j) = cplx(0.0, 1.0);
                out[k](j, i) = cplx(0.0, -1.0);
                ++k;
            }
        return out;
    }();
    return basis;
}

// dense Gaussian elimination with partial pivoting
inline std::array<double, 16> solve_16(std::array<std::array<double, 17>, 16> aug) {
    for (int col = 0; col < 16; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 16; ++r)
            if (std::abs(aug[r][col]) > std::abs(aug[pivot][col])) pivot = r;
        if (std::abs(aug[pivot][col]) < 1e-12)
            throw std::runtime_error("linear_inversion: singular measurement system");
        std::swap(aug[col], aug[pivot]);
        for (int r = 0; r < 16; ++r) {
            if (r == col) continue;
            const double f = aug[r][col] / aug[col][col];
            if (f == 0.0) continue;
            for (int c = col; c < 17; ++c) aug[r][c] -= f * aug[col][c];
        }
    }
    std::array<double, 16> x;
    for (int i = 0; i < 16; ++i) x[i] = aug[i][16] / aug[i][i];
    return x;
}

} // namespace detail

// Solve <Pi_i, rho> = count_i / N_hat for the Hermitian rho, with the flux
// N_hat estimated from the four computational-basis counts. The output has
// unit trace but may carry negative eigenvalues.
inline ComplexMatrix linear_inversion(const TomoCounts& counts) {
    const double flux = counts.counts[0] + counts.counts[1] + counts.counts[2] + counts.counts[3];
    if (!(flux > 0.0))
        throw std::invalid_argument("linear_inversion: computational-basis counts sum to zero");

    const auto& projectors = tomo_projectors();
    const auto& basis = detail::hermitian_basis();
    std::array<std::array<double, 17>, 16> aug{};
    for (int i = 0; i < 16; ++i) {
        for (int k = 0; k < 16; ++k) {
            cplx t = 0.0;
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) t += projectors[i](r, c) * basis[k](c, r);
            aug[i][k] = t.real();
        }
        aug[i][16] = counts.counts[i] / flux;
    }
    const std::array<double, 16> x = detail::solve_16(aug);

    ComplexMatrix rho(4);
    for (int k = 0; k < 16; ++k) {
        if (x[k] == 0.0) continue;
        rho += x[k] * basis[k];
    }
    const double tr = rho.trace().real();
    if (std::abs(tr) < 1e-12) throw std::runtime_error("linear_inversion: traceless solution");
    rho *= 1.0 / tr;
    return rho;
}

// Nearest density matrix in the Frobenius sense: project the eigenvalue
// vector onto the probability simplex and reassemble.
inline ComplexMatrix project_physical(const ComplexMatrix& rho_raw) {
    if (!rho_raw.is_hermitian(kHermTol))
        throw std::invalid_argument("project_physical: input not Hermitian");
    if (std::abs(rho_raw.trace() - 1.0) > 1e-9)
        throw std::invalid_argument("project_physical: input trace differs from 1");
    const Spectrum s = hermitian_eig(rho_raw);
    const std::vector<double>& v = s.eigenvalues; // already descending
    double cumulative = 0.0, shift = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
        cumulative += v[j];
        const double t = (cumulative - 1.0) / static_cast<double>(j + 1);
        if (v[j] - t > 0.0) shift = t;
    }
    std::vector<double> projected(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) projected[j] = std::max(0.0, v[j] - shift);
    return assemble_from_spectrum(s, projected);
}

struct MeanStd {
    double mean = 0.0;
    double stddev = 0.0;
};

struct BootstrapSummary {
    int resamples = 0;
    CorrelationReport point; // reconstruction of the observed counts
    MeanStd mutual_information, classical, quantum, lambda, upsilon, eof;
    std::optional<MeanStd> ree, nonent;
    int ree_count = 0; // resamples whose reconstruction admitted Rn
};

namespace detail {

inline MeanStd mean_std(const std::vector<double>& xs) {
    MeanStd out;
    if (xs.empty()) return out;
    for (double x : xs) out.mean += x;
    out.mean /= static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - out.mean) * (x - out.mean);
        out.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    }
    return out;
}

} // namespace detail

// Poisson bootstrap around the observed counts: resample, reconstruct
// (inversion + physical projection), recompute every measure. Resample r
// uses the derived seed (seed + r), so results are order-independent and
// reproducible. resamples = 0 disables the bootstrap and reports the point
// estimate with zero spread.
inline BootstrapSummary bootstrap_report(const TomoCounts& observed, int resamples,
                                         std::uint64_t seed) {
    if (resamples != 0 && resamples < 50)
        throw std::invalid_argument("bootstrap_report: resamples must be 0 or >= 50");

    BootstrapSummary out;
    out.resamples = resamples;
    out.point = full_report(project_physical(linear_inversion(observed)));
    if (resamples == 0) {
        out.mutual_information = {out.point.mutual_information, 0.0};
        out.classical = {out.point.classical, 0.0};
        out.quantum = {out.point.quantum, 0.0};
        out.lambda = {out.point.lambda, 0.0};
        out.upsilon = {out.point.upsilon, 0.0};
        out.eof = {out.point.eof, 0.0};
        if (out.point.ree) out.ree = MeanStd{*out.point.ree, 0.0};
        if (out.point.nonent) out.nonent = MeanStd{*out.point.nonent, 0.0};
        out.ree_count = out.point.ree ? 1 : 0;
        return out;
    }

    std::vector<double> mi, cl, qu, la, up, en, rn, dn;
    for (int r = 0; r < resamples; ++r) {
        SplitMix64 rng(seed + static_cast<std::uint64_t>(r));
        TomoCounts resampled = observed;
        for (int i = 0; i < 16; ++i)
            resampled.counts[i] = static_cast<double>(poisson_sample(rng, observed.counts[i]));
        const CorrelationReport rep = full_report(project_physical(linear_inversion(resampled)));
        mi.push_back(rep.mutual_information);
        cl.push_back(rep.classical);
        qu.push_back(rep.quantum);
        la.push_back(rep.lambda);
        up.push_back(rep.upsilon);
        en.push_back(rep.eof);
        if (rep.ree) {
            rn.push_back(*rep.ree);
            dn.push_back(*rep.nonent);
        }
    }
    out.mutual_information = detail::mean_std(mi);
    out.classical = detail::mean_std(cl);
    out.quantum = detail::mean_std(qu);
    out.lambda = detail::mean_std(la);
    out.upsilon = detail::mean_std(up);
    out.eof = detail::mean_std(en);
    out.ree_count = static_cast<int>(rn.size());
    if (!rn.empty()) {
        out.ree = detail::mean_std(rn);
        out.nonent = detail::mean_std(dn);
    }
    return out;
}

} // namespace qcorr
