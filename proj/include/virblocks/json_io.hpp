#pragma once

// JSON/CSV serialization of divisors and reports. Rationals are always
// emitted as "p" or "p/q" strings, never floats.

#include "virblocks/indsys.hpp"
#include "virblocks/picbasis.hpp"
#include "virblocks/stability.hpp"

#include <json.hpp>

namespace virblocks {

using json = nlohmann::json;

json to_json(const Divisor0& d);
json to_json(const Divisor1& d);
Divisor0 divisor0_from_json(const json& j);
Divisor1 divisor1_from_json(const json& j);

json to_json(const FCurve& f);
json to_json(const EffectivityResult& e);
json to_json(const PositivityReport& r);
json to_json(const GenvireffRecord& r, int k);
json to_json(const GenvireffReport& r);
json to_json(const StabilizationReport& r);
json to_json(const DifferenceReport& r);
json to_json(const SteffCertificate& c);
json to_json(const NefCertificate& c);
json to_json(const AxiomReport& r);
json to_json(const DnpReport& r);
json to_json(const ContractionKernelReport& r);
json to_json(const PsiCharacterizationReport& r);

json matrix_to_json(const Matrix& m); // array of arrays of "p/q" strings

// CSV schema: "# virblocks stabilization v1" header comment then
// tuple,parity,l,k_first_stable,zero
std::string stabilization_csv_header();
std::string stabilization_csv_row(const StabilizationReport& r);

} // namespace virblocks
