#pragma once

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tvbar/barcode.hpp"
#include "tvbar/certify.hpp"
#include "tvbar/energy.hpp"
#include "tvbar/errors.hpp"
#include "tvbar/kernel.hpp"
#include "tvbar/oracle.hpp"
#include "tvbar/poly.hpp"
#include "tvbar/signal.hpp"
#include "tvbar/solver.hpp"
#include "tvbar/version.hpp"

namespace tvbar {

using json = nlohmann::json;

// -------- bar codes --------

inline json to_json(const BarCode& b) {
    return json{{"interfaces", b.interfaces()}, {"starts_with_bar", b.starts_with_bar()}};
}

inline BarCode barcode_from_json(const json& j) {
    if (!j.is_object() || !j.contains("interfaces")) throw IoError("bar code JSON needs an 'interfaces' array");
    return BarCode(j.at("interfaces").get<std::vector<double>>());
}

// -------- kernels --------

inline json to_json(const Kernel& k) {
    json j;
    j["size"] = k.size();
    switch (k.kind()) {
    case KernelKind::Hat:
        j["kind"] = "hat";
        break;
    case KernelKind::Gaussian:
        j["kind"] = "gaussian";
        j["trunc_mult"] = k.truncation();
        break;
    case KernelKind::Tabulated: {
        j["kind"] = "tabulated";
        json prof = json::array();
        for (const auto& [x, p] : k.profile_samples()) prof.push_back(json{{"x", x}, {"p", p}});
        j["profile"] = prof;
        break;
    }
    }
    return j;
}

inline Kernel kernel_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    const double size = j.at("size").get<double>();
    if (kind == "hat") return Kernel::hat(size);
    if (kind == "gaussian") return Kernel::gaussian(size, j.value("trunc_mult", 4.0));
    if (kind == "tabulated") {
        std::vector<std::pair<double, double>> prof;
        for (const json& row : j.at("profile")) prof.emplace_back(row.at("x").get<double>(), row.at("p").get<double>());
        return Kernel::tabulated(size, prof);
    }
    throw IoError("unknown kernel kind: " + kind);
}

// -------- energies, certificates --------

inline json to_json(const EnergyParams& p) {
    return json{{"functional", to_string(p.functional)}, {"lambda", p.lambda}, {"sigma", p.sigma}, {"rho", p.rho}};
}

inline json to_json(const EnergyReport& r) {
    return json{{"tv", r.tv}, {"fidelity", r.fidelity}, {"total", r.total}};
}

inline json to_json(const TrivialThresholds& t) {
    return json{{"lambda_star", t.lambda_star}, {"lambda0", t.lambda0}};
}

inline json to_json(const CertCondition& c) {
    return json{{"name", c.name},           {"lhs", c.lhs},       {"rhs", c.rhs},
                {"strict", c.strict},       {"satisfied", c.satisfied}, {"margin", c.margin}};
}

inline json to_json(const Certificate& c) {
    json conds = json::array();
    for (const CertCondition& cc : c.conditions) conds.push_back(to_json(cc));
    json j{{"rule", c.rule},     {"omega", c.omega},   {"sigma", c.sigma},       {"rho", c.rho},
           {"lambda", c.lambda}, {"certified", c.certified}, {"conditions", conds}};
    if (!c.notes.empty()) j["notes"] = c.notes;
    return j;
}

// -------- signals --------

inline json to_json(const GridSignal& g) {
    return json{{"type", "grid"}, {"x0", g.x0}, {"h", g.h}, {"samples", g.samples}};
}

inline json to_json(const PiecewisePoly& p) {
    json pieces = json::array();
    for (const Polynomial& piece : p.pieces()) pieces.push_back(piece.coeffs());
    return json{{"type", "poly"}, {"knots", p.knots()}, {"pieces", pieces}};
}

inline json to_json(const Signal& s) {
    json j = s.is_poly() ? to_json(s.poly()) : to_json(s.grid());
    if (!s.provenance().empty()) j["provenance"] = s.provenance();
    return j;
}

inline Signal signal_from_json(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    const std::string prov = j.value("provenance", "");
    if (type == "grid") {
        GridSignal g;
        g.x0 = j.at("x0").get<double>();
        g.h = j.at("h").get<double>();
        g.samples = j.at("samples").get<std::vector<double>>();
        if (!(g.h > 0.0) || g.samples.empty()) throw IoError("grid signal needs positive spacing and samples");
        return Signal(std::move(g), prov);
    }
    if (type == "poly") {
        const std::vector<double> knots = j.at("knots").get<std::vector<double>>();
        std::vector<Polynomial> pieces;
        for (const json& c : j.at("pieces")) pieces.emplace_back(c.get<std::vector<double>>());
        if (knots.empty() && pieces.empty()) return Signal(PiecewisePoly{}, prov);
        return Signal(PiecewisePoly(knots, pieces), prov);
    }
    throw IoError("unknown signal type: " + type);
}

// -------- oracle results --------

inline json to_json(const OracleResult& r) {
    json ties = json::array();
    for (const BarCode& t : r.ties) ties.push_back(to_json(t));
    return json{{"minimizer", to_json(r.minimizer)},
                {"report", to_json(r.report)},
                {"ties", ties},
                {"candidates_evaluated", r.candidates_evaluated}};
}

inline json to_json(const SweepResult& s) {
    json pts = json::array();
    for (const SweepPoint& p : s.points)
        pts.push_back(json{{"lambda", p.lambda},
                           {"tv", p.tv},
                           {"fidelity", p.fidelity},
                           {"total", p.total},
                           {"minimizer", to_json(p.minimizer)}});
    json j{{"points", pts}};
    if (s.transition_lambda)
        j["transition_lambda"] = *s.transition_lambda;
    else
        j["transition_lambda"] = nullptr;
    return j;
}

// -------- kernel admissibility --------

inline json to_json(const KernelAdmissibility& a) {
    return json{{"in_K", a.in_K},
                {"in_K3", a.in_K3},
                {"worst_J", a.worst_J},
                {"sufficient_condition", to_string(a.sufficient_condition)},
                {"notes", a.notes}};
}

// -------- solver --------

inline json to_json(const SolveResult& r) {
    json cps = json::array();
    for (const auto& [step, e] : r.energy_checkpoints) cps.push_back(json{{"step", step}, {"energy", e}});
    return json{{"code", to_json(r.code)},     {"steps", r.steps},
                {"converged", r.converged},    {"residual", r.residual},
                {"final_energy", r.final_energy}, {"energy_checkpoints", cps}};
}

// -------- CSV --------

inline std::string to_csv(const GridSignal& g) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "x,value\n";
    for (std::size_t i = 0; i < g.samples.size(); ++i) os << g.x(i) << ',' << g.samples[i] << '\n';
    return os.str();
}

inline GridSignal grid_from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::vector<double> xs, vs;
    bool first = true;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line.find("x,") == 0 || line == "x,value") continue; // header
        }
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos) throw IoError("CSV row missing comma: " + line);
        try {
            xs.push_back(std::stod(line.substr(0, comma)));
            vs.push_back(std::stod(line.substr(comma + 1)));
        } catch (const std::exception&) {
            throw IoError("CSV row is not numeric: " + line);
        }
    }
    if (xs.size() < 2) throw IoError("CSV signal needs at least two rows");
    const double h = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
    if (!(h > 0.0)) throw IoError("CSV signal abscissae must increase");
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (std::abs(xs[i] - (xs.front() + static_cast<double>(i) * h)) > 1e-9 * std::max(1.0, std::abs(xs[i])))
            throw IoError("CSV signal must be uniformly spaced");
    GridSignal g;
    g.x0 = xs.front();
    g.h = h;
    g.samples = std::move(vs);
    return g;
}

// -------- files --------

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

inline json parse_json(const std::string& text, const std::string& what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw IoError("invalid JSON in " + what);
    return j;
}

// -------- run manifest --------

struct RunManifest {
    std::string command;
    json parameters = json::object();
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::uint64_t seed = 0;
    double wall_time_s = 0.0;
};

inline json to_json(const RunManifest& m) {
    return json{{"command", m.command}, {"parameters", m.parameters}, {"inputs", m.inputs},
                {"outputs", m.outputs}, {"seed", m.seed},             {"version", kVersion},
                {"wall_time_s", m.wall_time_s}};
}

} // namespace tvbar
