// sweep.hpp
// Thickness sweeps of the correlation report and detection of the dynamical
// events: sudden change of the classical-correlation decay rate,
// entanglement sudden death, Q > C windows and frozen plateaus.
//
// Event solvers are analytic first: both the sudden-change and the ESD
// condition reduce to closed forms in |kappa| for Bell mixtures, which the
// model then inverts to a thickness. Sweep-scan fallbacks cover explicit
// matrices that are not Bell-diagonal.

#pragma once

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "qcorr/correlations.hpp"

namespace qcorr {

struct SweepRow {
    double l_lambda0 = 0.0;
    double p = 0.0;
    double kappa_abs = 1.0;
    double mutual_information = 0.0;
    double classical = 0.0;
    double quantum = 0.0;
    double lambda = 0.0;
    double eof = 0.0;
    std::optional<double> ree;
    std::optional<double> nonent;
};

struct SweepTable {
    StateFamilySpec spec;
    DephasingModel model;
    std::vector<SweepRow> rows;
};

struct Plateau {
    double from = 0.0;
    std::optional<double> to; // open-ended when absent
};

struct EventMarkers {
    std::optional<double> sudden_change_l;
    std::optional<double> esd_l;
    bool sudden_change_extrapolated = false; // analytic value beyond the swept range
    bool esd_extrapolated = false;
    std::vector<std::pair<double, double>> qc_cross_intervals;
    std::optional<Plateau> frozen_quantum;
    std::optional<Plateau> frozen_classical;
};

inline SweepTable sweep(const StateFamilySpec& spec, const DephasingModel& model, double l_max,
                        int steps) {
    if (steps < 2) throw std::invalid_argument("sweep: need at least 2 steps");
    if (!(l_max > 0.0)) throw std::invalid_argument("sweep: l_max must be positive");
    SweepTable table{spec, model, {}};
    table.rows.reserve(steps);
    for (int i = 0; i < steps; ++i) {
        const double l = l_max * static_cast<double>(i) / (steps - 1);
        const ChannelStrength s = kappa_of_thickness(model, l);
        const CorrelationReport rep = full_report(evolve(spec, model, l));
        table.rows.push_back({l, s.p, s.kappa_abs, rep.mutual_information, rep.classical,
                              rep.quantum, rep.lambda, rep.eof, rep.ree, rep.nonent});
    }
    return table;
}

// Thickness at which the optimal measurement axis switches from the
// kappa-scaled tensor components to the invariant one:
// |kappa| * max(|a-b+c-d|, |c-d-a+b|) = |a+b-c-d|.
inline std::optional<double> sudden_change_point(const BellMixture& m, const DephasingModel& model) {
    m.validate();
    constexpr double kBoundaryTol = 1e-12; // a switch within one ulp of the ends is no switch
    const double u = m.a - m.b, v = m.c - m.d;
    const double kappa_branch = std::max(std::abs(u + v), std::abs(v - u));
    const double gamma = std::abs(m.a + m.b - m.c - m.d);
    if (kappa_branch <= 0.0) return std::nullopt; // eta is gamma throughout
    const double kappa_star = gamma / kappa_branch;
    if (kappa_star <= kBoundaryTol || kappa_star >= 1.0 - kBoundaryTol)
        return std::nullopt; // no switch inside (0, 1)
    return model.thickness_of_kappa(kappa_star);
}

// Thickness at which lambda_max drops to 1/2. For each Bell pair (x, y) the
// corresponding eigenvalue pair is (x+y)/2 +- kappa |x-y|/2, so each pair
// crosses 1/2 at kappa = (1 - x - y)/|x - y|; the earliest (largest-kappa)
// crossing of the binding pair is the minimum over pairs.
inline std::optional<double> esd_point(const BellMixture& m, const DephasingModel& model) {
    m.validate();
    constexpr double kBoundaryTol = 1e-12;
    double kappa_star = std::numeric_limits<double>::infinity();
    for (const auto& [x, y] : {std::pair{m.a, m.b}, std::pair{m.c, m.d}}) {
        const double diff = std::abs(x - y);
        if (diff <= 0.0) continue;
        kappa_star = std::min(kappa_star, (1.0 - x - y) / diff);
    }
    if (!std::isfinite(kappa_star)) return std::nullopt;   // both pairs balanced, never entangled
    if (kappa_star >= 1.0 - kBoundaryTol) return std::nullopt; // separable already at L = 0
    if (kappa_star <= kBoundaryTol) return std::nullopt;   // entangled for every finite thickness
    return model.thickness_of_kappa(kappa_star);
}

// Maximal intervals where Q - C > 0, endpoints interpolated linearly between
// adjacent rows. The positivity threshold absorbs floating-point noise where
// the two curves touch exactly.
inline std::vector<std::pair<double, double>> qc_cross_intervals(const SweepTable& table) {
    if (table.rows.empty()) throw std::invalid_argument("qc_cross_intervals: empty table");
    constexpr double kTol = 1e-9;
    std::vector<std::pair<double, double>> intervals;
    std::optional<double> start;
    double prev_l = 0.0, prev_gap = 0.0;
    bool have_prev = false;
    for (const SweepRow& row : table.rows) {
        const double gap = row.quantum - row.classical;
        const bool positive = gap > kTol;
        if (positive && !start) {
            start = have_prev ? prev_l + (kTol - prev_gap) * (row.l_lambda0 - prev_l) / (gap - prev_gap)
                              : row.l_lambda0;
        } else if (!positive && start) {
            const double end =
                prev_l + (kTol - prev_gap) * (row.l_lambda0 - prev_l) / (gap - prev_gap);
            intervals.emplace_back(*start, end);
            start.reset();
        }
        prev_l = row.l_lambda0;
        prev_gap = gap;
        have_prev = true;
    }
    if (start) intervals.emplace_back(*start, table.rows.back().l_lambda0);
    return intervals;
}

namespace detail {

// measurement directions l and l_perp label the same two-outcome measurement
inline double fold_theta(double theta) {
    if (theta > kPi / 2.0) theta = kPi - theta;
    return theta;
}

inline std::optional<double> esd_from_lambda_column(const SweepTable& table) {
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
        const double prev = table.rows[i - 1].lambda;
        const double cur = table.rows[i].lambda;
        if (prev > 0.0 && cur <= 0.0) {
            const double l0 = table.rows[i - 1].l_lambda0, l1 = table.rows[i].l_lambda0;
            return l0 + prev * (l1 - l0) / (prev - cur);
        }
    }
    return std::nullopt;
}

inline std::optional<double> sudden_change_from_argmin_scan(const SweepTable& table) {
    constexpr double kJump = 10.0 * kPi / 180.0;
    std::optional<double> prev_theta;
    double prev_l = 0.0;
    for (const SweepRow& row : table.rows) {
        const ComplexMatrix rho = evolve(table.spec, table.model, row.l_lambda0);
        const double theta = fold_theta(classical_correlation_numeric(rho).argmin.theta);
        if (prev_theta && std::abs(theta - *prev_theta) > kJump)
            return 0.5 * (prev_l + row.l_lambda0);
        prev_theta = theta;
        prev_l = row.l_lambda0;
    }
    return std::nullopt;
}

inline std::optional<Plateau> plateau(const SweepTable& table, double l_from, double l_to,
                                      bool open_ended, double SweepRow::* column) {
    constexpr double kFlatTol = 1e-9;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    int count = 0;
    for (const SweepRow& row : table.rows) {
        if (row.l_lambda0 < l_from - 1e-12 || row.l_lambda0 > l_to + 1e-12) continue;
        lo = std::min(lo, row.*column);
        hi = std::max(hi, row.*column);
        ++count;
    }
    if (count < 2 || hi - lo > kFlatTol) return std::nullopt;
    return Plateau{l_from, open_ended ? std::nullopt : std::optional<double>(l_to)};
}

} // namespace detail

inline EventMarkers detect_events(const SweepTable& table) {
    EventMarkers markers;
    if (table.rows.empty()) return markers;
    const double l_max = table.rows.back().l_lambda0;

    const ComplexMatrix initial = build_state(table.spec);
    const MixtureDecomposition dec = to_mixture(initial);
    if (dec.off_bell_residual <= kBellDiagonalResidualTol) {
        markers.sudden_change_l = sudden_change_point(dec.weights, table.model);
        markers.esd_l = esd_point(dec.weights, table.model);
        markers.sudden_change_extrapolated =
            markers.sudden_change_l && *markers.sudden_change_l > l_max;
        markers.esd_extrapolated = markers.esd_l && *markers.esd_l > l_max;
    } else {
        markers.sudden_change_l = detail::sudden_change_from_argmin_scan(table);
        markers.esd_l = detail::esd_from_lambda_column(table);
    }

    markers.qc_cross_intervals = qc_cross_intervals(table);

    if (markers.sudden_change_l && *markers.sudden_change_l <= l_max) {
        const double lsc = *markers.sudden_change_l;
        markers.frozen_quantum =
            detail::plateau(table, 0.0, lsc, false, &SweepRow::quantum);
        markers.frozen_classical =
            detail::plateau(table, lsc, l_max, true, &SweepRow::classical);
    }
    return markers;
}

// fixed-width significant-digit formatting shared by every emitter
inline std::string format_g9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

inline void emit_csv(const SweepTable& table, std::ostream& os) {
    os << "L_lambda0,p,kappa_abs,I,C,Q,Lambda,En,Rn,D\n";
    for (const SweepRow& r : table.rows) {
        os << format_g9(r.l_lambda0) << ',' << format_g9(r.p) << ',' << format_g9(r.kappa_abs)
           << ',' << format_g9(r.mutual_information) << ',' << format_g9(r.classical) << ','
           << format_g9(r.quantum) << ',' << format_g9(r.lambda) << ',' << format_g9(r.eof) << ','
           << (r.ree ? format_g9(*r.ree) : "nan") << ','
           << (r.nonent ? format_g9(*r.nonent) : "nan") << '\n';
    }
}

} // namespace qcorr
