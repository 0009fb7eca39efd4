#include "chaoslab/coefficient_io.hpp"

#include <istream>
#include <ostream>

#include "chaoslab/errors.hpp"

namespace chaoslab {

nlohmann::json to_json(const CoefficientField& field) {
  nlohmann::json modes = nlohmann::json::array();
  field.for_each_mode([&](WaveVector k, complex w) {
    if (!is_upper_half(k) || w == complex{}) return;
    modes.push_back({{"k", {k.k1, k.k2}}, {"re", w.real()}, {"im", w.imag()}});
  });
  return {{"box", field.box()}, {"modes", std::move(modes)}};
}

CoefficientField coefficient_field_from_json(const nlohmann::json& j) {
  try {
    CoefficientField field(j.at("box").get<int>());
    for (const auto& m : j.at("modes")) {
      const auto& k = m.at("k");
      if (!k.is_array() || k.size() != 2)
        throw PreconditionError("coefficient JSON: \"k\" must be a pair");
      const WaveVector wv{k[0].get<int>(), k[1].get<int>()};
      if (!is_upper_half(wv))
        throw PreconditionError("coefficient JSON: mode (" + std::to_string(wv.k1) + "," +
                                std::to_string(wv.k2) + ") is not in the positive half-lattice");
      field.set(wv, {m.at("re").get<double>(), m.at("im").get<double>()});
    }
    return field;
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("coefficient JSON: ") + e.what());
  }
}

void save_coefficients(std::ostream& os, const CoefficientField& field) {
  os << to_json(field).dump(2) << '\n';
}

CoefficientField load_coefficients(std::istream& is) {
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("coefficient JSON: ") + e.what());
  }
  return coefficient_field_from_json(j);
}

}  // namespace chaoslab
