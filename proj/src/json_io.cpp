#include "mp/json_io.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "mp/errors.hpp"

namespace mp {

const char* const kSchemaTag = "maass-periods/1";

namespace {

void check_schema(const json_doc& j, const char* what) {
    if (j.contains("schema") && j.at("schema") != kSchemaTag) {
        throw validation_error(std::string(what) + ": unsupported schema tag " +
                               j.at("schema").dump());
    }
}

const json_doc& require(const json_doc& j, const char* field, const char* what) {
    if (!j.contains(field)) {
        throw validation_error(std::string(what) + ": missing field \"" + field +
                               "\"");
    }
    return j.at(field);
}

json_doc cplx_to_json(cplx z) { return json_doc::array({z.real(), z.imag()}); }

cplx cplx_from_json(const json_doc& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw validation_error(std::string(what) +
                               ": complex values must be [re, im] arrays");
    }
    return cplx(j[0].get<double>(), j[1].get<double>());
}

// q-expansion entries may be integers, floats, or exact "p/q" strings.
double number_from_entry(const json_doc& j, const char* what) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        const auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return std::stod(s);
            const double num = std::stod(s.substr(0, slash));
            const double den = std::stod(s.substr(slash + 1));
            if (den == 0.0) {
                throw validation_error(std::string(what) +
                                       ": zero denominator in \"" + s + "\"");
            }
            return num / den;
        } catch (const validation_error&) {
            throw;
        } catch (const std::exception&) {
            throw validation_error(std::string(what) +
                                   ": cannot parse numeric entry \"" + s + "\"");
        }
    }
    throw validation_error(std::string(what) +
                           ": numeric entries must be numbers or \"p/q\" strings");
}

} // namespace

json_doc divisor_to_json(const HeegnerDivisor& dv) {
    json_doc j;
    j["schema"] = kSchemaTag;
    j["N"] = dv.N;
    j["Delta"] = dv.Delta;
    j["rho"] = dv.rho;
    j["D"] = dv.D;
    j["r"] = dv.r;
    j["k"] = dv.k;
    j["scale"] = dv.scale();
    json_doc pts = json_doc::array();
    for (const auto& p : dv.points) {
        json_doc e;
        e["re"] = p.point.real();
        e["im"] = p.point.imag();
        e["weight"] = p.weight;
        e["chi"] = p.chi;
        e["w"] = p.w;
        e["form"] = json_doc::array({p.form.a, p.form.b, p.form.c});
        pts.push_back(std::move(e));
    }
    j["points"] = std::move(pts);
    return j;
}

json_doc coeff_table_to_json(const CoeffTable& table) {
    json_doc j;
    j["schema"] = kSchemaTag;
    j["N"] = table.N;
    j["weight_times_2"] = table.weight_times_2;
    j["dual"] = table.dual;
    std::vector<std::pair<long long, long long>> keys;
    for (const auto& [key, val] : table.holo) keys.push_back(key);
    for (const auto& [key, val] : table.nonholo) {
        if (!table.holo.count(key)) keys.push_back(key);
    }
    std::sort(keys.begin(), keys.end());
    json_doc entries = json_doc::array();
    for (const auto& key : keys) {
        json_doc e;
        e["D"] = key.first;
        e["r"] = key.second;
        auto hit = table.holo.find(key);
        e["cplus"] = cplx_to_json(hit != table.holo.end() ? hit->second : cplx(0));
        auto nit = table.nonholo.find(key);
        e["cminus"] =
            cplx_to_json(nit != table.nonholo.end() ? nit->second : cplx(0));
        auto rit = table.residual.find(key);
        if (rit != table.residual.end()) e["residual"] = rit->second;
        entries.push_back(std::move(e));
    }
    j["entries"] = std::move(entries);
    return j;
}

CoeffTable coeff_table_from_json(const json_doc& j) {
    check_schema(j, "coefficient table");
    CoeffTable t;
    t.N = require(j, "N", "coefficient table").get<long long>();
    t.weight_times_2 = require(j, "weight_times_2", "coefficient table").get<int>();
    if (t.weight_times_2 % 2 == 0) {
        throw validation_error(
            "coefficient table: weight_times_2 must be odd (half-integral "
            "weight)");
    }
    t.dual = require(j, "dual", "coefficient table").get<bool>();
    for (const auto& e : require(j, "entries", "coefficient table")) {
        const long long D = require(e, "D", "table entry").get<long long>();
        const long long r = require(e, "r", "table entry").get<long long>();
        const auto key = std::make_pair(D, r);
        t.holo[key] = cplx_from_json(require(e, "cplus", "table entry"), "cplus");
        t.nonholo[key] =
            cplx_from_json(require(e, "cminus", "table entry"), "cminus");
        if (e.contains("residual")) t.residual[key] = e.at("residual").get<double>();
    }
    return t;
}

json_doc series_to_json(const FourierSeries2k& series) {
    json_doc j;
    j["schema"] = kSchemaTag;
    j["k"] = series.k;
    j["N"] = series.N;
    j["height"] = series.height_used;
    json_doc coeffs = json_doc::array();
    for (const auto& [n, value] : series.coeffs) {
        json_doc e;
        e["n"] = n;
        e["value"] = cplx_to_json(value);
        coeffs.push_back(std::move(e));
    }
    j["coeffs"] = std::move(coeffs);
    json_doc errs = json_doc::array();
    for (const auto& [n, value] : series.error_estimates) {
        json_doc e;
        e["n"] = n;
        e["value"] = value;
        errs.push_back(std::move(e));
    }
    j["error_estimates"] = std::move(errs);
    return j;
}

FourierSeries2k series_from_json(const json_doc& j) {
    check_schema(j, "fourier series");
    FourierSeries2k s;
    s.k = require(j, "k", "fourier series").get<int>();
    s.N = require(j, "N", "fourier series").get<long long>();
    s.height_used = require(j, "height", "fourier series").get<double>();
    for (const auto& e : require(j, "coeffs", "fourier series")) {
        const int n = require(e, "n", "series entry").get<int>();
        s.coeffs[n] = cplx_from_json(require(e, "value", "series entry"), "value");
    }
    if (j.contains("error_estimates")) {
        for (const auto& e : j.at("error_estimates")) {
            s.error_estimates[require(e, "n", "error entry").get<int>()] =
                require(e, "value", "error entry").get<double>();
        }
    }
    return s;
}

json_doc qexp_to_json(long long level, int weight,
                      const std::vector<long long>& coeffs) {
    json_doc j;
    j["schema"] = kSchemaTag;
    j["level"] = level;
    j["weight"] = weight;
    j["coeffs"] = coeffs;
    return j;
}

QExpansion qexp_from_json(const json_doc& j) {
    check_schema(j, "q-expansion");
    QExpansion q;
    q.level = require(j, "level", "q-expansion").get<long long>();
    q.weight = static_cast<int>(require(j, "weight", "q-expansion").get<long long>());
    for (const auto& e : require(j, "coeffs", "q-expansion")) {
        q.coeffs.push_back(number_from_entry(e, "q-expansion"));
    }
    return q;
}

json_doc cycle_to_json(const GeodesicCycle& cycle) {
    json_doc j;
    j["schema"] = kSchemaTag;
    j["gamma"] = json_doc::array({cycle.a, cycle.b, cycle.c, cycle.d});
    j["base_point"] = cplx_to_json(cycle.base_point);
    json_doc wps = json_doc::array();
    for (const auto& w : cycle.waypoints) wps.push_back(cplx_to_json(w));
    j["waypoints"] = std::move(wps);
    return j;
}

GeodesicCycle cycle_from_json(const json_doc& j) {
    check_schema(j, "cycle");
    const auto& g = require(j, "gamma", "cycle");
    if (!g.is_array() || g.size() != 4) {
        throw validation_error("cycle: gamma must be [a, b, c, d]");
    }
    GeodesicCycle cy =
        cycle_from_matrix(g[0].get<long long>(), g[1].get<long long>(),
                          g[2].get<long long>(), g[3].get<long long>());
    if (j.contains("base_point")) {
        cy.base_point = cplx_from_json(j.at("base_point"), "base_point");
    } else {
        cy.base_point = balanced_base_point(cy);
    }
    if (j.contains("waypoints")) {
        cy.waypoints.clear();
        for (const auto& w : j.at("waypoints")) {
            cy.waypoints.push_back(cplx_from_json(w, "waypoint"));
        }
    }
    return cy;
}

json_doc load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open file: " + path);
    json_doc j;
    try {
        j = json_doc::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw validation_error("invalid JSON in " + path + ": " + e.what());
    }
    check_schema(j, path.c_str());
    return j;
}

void write_json_file(const std::string& path, const json_doc& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw validation_error("cannot write file: " + path);
    out << dump_deterministic(j);
}

std::string dump_deterministic(const json_doc& j) { return j.dump(2) + "\n"; }

} // namespace mp
