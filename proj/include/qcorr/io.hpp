// io.hpp
// JSON schemas for matrices, state specs, channel models, reports, count
// files and sweep tables, plus the file emitters used by the CLI.
//
// Failures split into two kinds: IoError for unreadable/unwritable files and
// std::invalid_argument for malformed content; the CLI maps them to exit
// codes 1 and 2.

#pragma once

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qcorr/sweep.hpp"
#include "qcorr/tomography.hpp"

namespace qcorr {

using json = nlohmann::json;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- matrices -------------------------------------------------------------

inline json matrix_to_json(const ComplexMatrix& m) {
    json entries = json::array();
    for (int r = 0; r < m.dim(); ++r)
        for (int c = 0; c < m.dim(); ++c)
            entries.push_back({m(r, c).real(), m(r, c).imag()});
    return {{"dim", m.dim()}, {"entries", entries}};
}

inline ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries"))
        throw std::invalid_argument("matrix: expected an object with 'dim' and 'entries'");
    if (!j["dim"].is_number_integer() || j["dim"].get<int>() <= 0)
        throw std::invalid_argument("matrix: 'dim' must be a positive integer");
    const int dim = j["dim"].get<int>();
    const json& entries = j["entries"];
    if (!entries.is_array() || static_cast<int>(entries.size()) != dim * dim)
        throw std::invalid_argument("matrix: 'entries' must hold dim*dim [re, im] pairs");
    ComplexMatrix m(dim);
    for (int k = 0; k < dim * dim; ++k) {
        const json& e = entries[k];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw std::invalid_argument("matrix: bad entry at row " + std::to_string(k / dim) +
                                        ", col " + std::to_string(k % dim) +
                                        " (expected [re, im])");
        m(k / dim, k % dim) = cplx(e[0].get<double>(), e[1].get<double>());
    }
    return m;
}

// ---- state family specs ----------------------------------------------------

inline json spec_to_json(const StateFamilySpec& spec) {
    switch (spec.family) {
        case StateFamilySpec::Family::Interference:
            return {{"family", "interference"}, {"b", spec.b}};
        case StateFamilySpec::Family::FourMix:
            return {{"family", "four-mix"}, {"b", spec.b}, {"R", spec.r}};
        case StateFamilySpec::Family::Explicit:
            return {{"family", "explicit"}, {"matrix", matrix_to_json(*spec.matrix)}};
    }
    throw std::invalid_argument("spec_to_json: unknown family");
}

inline StateFamilySpec spec_from_json(const json& j) {
    if (!j.is_object() || !j.contains("family"))
        throw std::invalid_argument("state spec: missing 'family'");
    const std::string family = j["family"].get<std::string>();
    StateFamilySpec spec;
    if (family == "interference") {
        spec.family = StateFamilySpec::Family::Interference;
        spec.b = j.at("b").get<double>();
    } else if (family == "four-mix") {
        spec.family = StateFamilySpec::Family::FourMix;
        spec.b = j.at("b").get<double>();
        spec.r = j.at("R").get<double>();
    } else if (family == "explicit") {
        spec.family = StateFamilySpec::Family::Explicit;
        spec.matrix = matrix_from_json(j.at("matrix"));
    } else {
        throw std::invalid_argument("state spec: unknown family '" + family + "'");
    }
    return spec;
}

// ---- dephasing model --------------------------------------------------------

inline json model_to_json(const DephasingModel& model) {
    return {{"profile", "gaussian"}, {"l_half_lambda0", model.l_half_lambda0}};
}

inline DephasingModel model_from_json(const json& j) {
    if (j.contains("profile") && j["profile"].get<std::string>() != "gaussian")
        throw std::invalid_argument("dephasing model: only the gaussian profile is supported");
    DephasingModel model;
    if (j.contains("l_half_lambda0")) model.l_half_lambda0 = j["l_half_lambda0"].get<double>();
    model.validate();
    return model;
}

// ---- correlation reports -----------------------------------------------------

inline json report_to_json(const CorrelationReport& rep) {
    json j = {{"I", rep.mutual_information},
              {"C", rep.classical},
              {"Q", rep.quantum},
              {"eta", rep.eta},
              {"Lambda", rep.lambda},
              {"Upsilon", rep.upsilon},
              {"En", rep.eof},
              {"rn_available", rep.ree.has_value()},
              {"Rn", rep.ree ? json(*rep.ree) : json(nullptr)},
              {"D", rep.nonent ? json(*rep.nonent) : json(nullptr)},
              {"lambda_spectrum", rep.lambda_spectrum}};
    return j;
}

// ---- tomography count files ---------------------------------------------------

inline json counts_to_json(const TomoCounts& counts) {
    json records = json::array();
    for (const CountRecord& rec : counts.records()) {
        const double c = rec.count;
        json value = (c == std::floor(c) && std::abs(c) < 9e15)
                         ? json(static_cast<long long>(c))
                         : json(c);
        records.push_back({{"i", rec.basis_index}, {"setting", rec.setting}, {"count", value}});
    }
    return {{"N", counts.acquisition_total}, {"records", records}};
}

inline TomoCounts counts_from_json(const json& j) {
    if (!j.is_object() || !j.contains("N") || !j.contains("records"))
        throw std::invalid_argument("counts file: expected an object with 'N' and 'records'");
    TomoCounts out;
    out.acquisition_total = j["N"].get<long long>();
    if (out.acquisition_total < 1)
        throw std::invalid_argument("counts file: 'N' must be a positive integer");

    std::array<bool, 16> seen{};
    for (const json& rec : j["records"]) {
        const int i = rec.at("i").get<int>();
        if (i < 0 || i > 15)
            throw std::invalid_argument("counts file: basis index " + std::to_string(i) +
                                        " outside 0..15");
        if (seen[i])
            throw std::invalid_argument("counts file: duplicate basis index " + std::to_string(i));
        if (rec.contains("setting") && rec["setting"].get<std::string>() != kTomoSettings[i])
            throw std::invalid_argument("counts file: setting '" +
                                        rec["setting"].get<std::string>() + "' does not match '" +
                                        kTomoSettings[i] + "' for index " + std::to_string(i));
        const double count = rec.at("count").get<double>();
        if (count < 0.0)
            throw std::invalid_argument("counts file: negative count at index " + std::to_string(i));
        if (count > 10.0 * static_cast<double>(out.acquisition_total))
            throw std::invalid_argument("counts file: count at index " + std::to_string(i) +
                                        " exceeds the plausible ceiling of 10 N");
        seen[i] = true;
        out.counts[i] = count;
    }
    std::string missing;
    for (int i = 0; i < 16; ++i)
        if (!seen[i]) missing += (missing.empty() ? "" : ", ") + std::to_string(i);
    if (!missing.empty())
        throw std::invalid_argument("counts file: missing basis indices: " + missing);
    return out;
}

// ---- sweep tables and markers ---------------------------------------------------

inline json markers_to_json(const EventMarkers& m) {
    auto plateau_json = [](const std::optional<Plateau>& p) -> json {
        if (!p) return nullptr;
        return {{"from", p->from}, {"to", p->to ? json(*p->to) : json(nullptr)}};
    };
    json intervals = json::array();
    for (const auto& [lo, hi] : m.qc_cross_intervals) intervals.push_back({lo, hi});
    return {{"sudden_change_L", m.sudden_change_l ? json(*m.sudden_change_l) : json(nullptr)},
            {"sudden_change_extrapolated", m.sudden_change_extrapolated},
            {"esd_L", m.esd_l ? json(*m.esd_l) : json(nullptr)},
            {"esd_extrapolated", m.esd_extrapolated},
            {"qc_cross_intervals", intervals},
            {"plateaus",
             {{"frozen_Q", plateau_json(m.frozen_quantum)},
              {"frozen_C", plateau_json(m.frozen_classical)}}}};
}

inline json table_to_json(const SweepTable& table, const EventMarkers& markers) {
    json rows = json::array();
    for (const SweepRow& r : table.rows) {
        rows.push_back({{"L_lambda0", r.l_lambda0},
                        {"p", r.p},
                        {"kappa_abs", r.kappa_abs},
                        {"I", r.mutual_information},
                        {"C", r.classical},
                        {"Q", r.quantum},
                        {"Lambda", r.lambda},
                        {"En", r.eof},
                        {"Rn", r.ree ? json(*r.ree) : json(nullptr)},
                        {"D", r.nonent ? json(*r.nonent) : json(nullptr)}});
    }
    return {{"spec", spec_to_json(table.spec)},
            {"model", model_to_json(table.model)},
            {"rows", rows},
            {"markers", markers_to_json(markers)}};
}

inline SweepTable table_from_json(const json& j) {
    SweepTable table{spec_from_json(j.at("spec")), model_from_json(j.at("model")), {}};
    for (const json& r : j.at("rows")) {
        SweepRow row;
        row.l_lambda0 = r.at("L_lambda0").get<double>();
        row.p = r.at("p").get<double>();
        row.kappa_abs = r.at("kappa_abs").get<double>();
        row.mutual_information = r.at("I").get<double>();
        row.classical = r.at("C").get<double>();
        row.quantum = r.at("Q").get<double>();
        row.lambda = r.at("Lambda").get<double>();
        row.eof = r.at("En").get<double>();
        if (!r.at("Rn").is_null()) row.ree = r["Rn"].get<double>();
        if (!r.at("D").is_null()) row.nonent = r["D"].get<double>();
        table.rows.push_back(row);
    }
    return table;
}

// ---- files ------------------------------------------------------------------------

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("'" + path + "': " + e.what());
    }
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw IoError("failed writing '" + path + "'");
}

inline ComplexMatrix load_matrix_file(const std::string& path) {
    return matrix_from_json(load_json_file(path));
}

enum class EmitFormat { Csv, Json };

inline void emit(const SweepTable& table, const EventMarkers& markers, EmitFormat format,
                 const std::string& destination) {
    std::ostringstream os;
    if (format == EmitFormat::Csv) {
        emit_csv(table, os);
    } else {
        os << table_to_json(table, markers).dump(2) << '\n';
    }
    write_text_file(destination, os.str());
}

} // namespace qcorr
