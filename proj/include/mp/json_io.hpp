#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "mp/cycles.hpp"
#include "mp/maass.hpp"
#include "mp/merom.hpp"
#include "mp/qf.hpp"

namespace mp {

// All documents carry { "schema": "maass-periods/1" }.  Readers accept a
// missing schema field (hand-written inputs) but reject a wrong one.
// ordered_json keeps insertion order, so serialized output is byte-stable
// across runs.
using json_doc = nlohmann::ordered_json;

extern const char* const kSchemaTag;

// Divisor document:
// {"N","Delta","rho","D","r","k","scale","points":[{"re","im","weight",
//  "chi","w","form":[a,b,c]}]}.
json_doc divisor_to_json(const HeegnerDivisor& dv);

// Coefficient-table document:
// {"N","weight_times_2","dual","entries":[{"D","r","cplus":[re,im],
//  "cminus":[re,im]}]}.  Entries are sorted by (D, r).  Residual diagnostics
// serialize when present and load back.
json_doc coeff_table_to_json(const CoeffTable& table);
CoeffTable coeff_table_from_json(const json_doc& j);

// Weight-2k Fourier series document:
// {"k","N","height","coeffs":[{"n","value":[re,im]}],
//  "error_estimates":[{"n","value"}]}.
json_doc series_to_json(const FourierSeries2k& series);
FourierSeries2k series_from_json(const json_doc& j);

// Eigenform q-expansion document: {"level","weight","coeffs":[a1,a2,...]}
// with integer, floating, or "p/q" string entries.
struct QExpansion {
    long long level = 1;
    int weight = 12;
    std::vector<double> coeffs; // a_1, a_2, ...
};
json_doc qexp_to_json(long long level, int weight,
                      const std::vector<long long>& coeffs);
QExpansion qexp_from_json(const json_doc& j);

// Cycle document: {"gamma":[a,b,c,d],"base_point":[re,im],
//  "waypoints":[[re,im],...]}.  base_point is optional on input; when absent
// the balanced axis point is chosen.  waypoints are optional.
json_doc cycle_to_json(const GeodesicCycle& cycle);
GeodesicCycle cycle_from_json(const json_doc& j);

// File round trip.  Parse failures and wrong schema tags raise
// validation_error naming the path.
json_doc load_json_file(const std::string& path);
void write_json_file(const std::string& path, const json_doc& j);

// Canonical serialization: two-space indent, trailing newline.
std::string dump_deterministic(const json_doc& j);

} // namespace mp
