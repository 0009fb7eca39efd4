#pragma once

#include <iosfwd>
#include <nlohmann/json.hpp>

#include "chaoslab/fourier.hpp"

namespace chaoslab {

// {"box": B, "modes": [{"k": [k1,k2], "re": r, "im": i}, ...]} over the
// lexicographically positive half of the box. Zero amplitudes are omitted.
nlohmann::json to_json(const CoefficientField& field);
CoefficientField coefficient_field_from_json(const nlohmann::json& j);

void save_coefficients(std::ostream& os, const CoefficientField& field);
CoefficientField load_coefficients(std::istream& is);

}  // namespace chaoslab
