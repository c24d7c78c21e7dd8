#pragma once

// JSON forms of classes, eigenvalues, module elements and fitted operators.

#include <string>

#include "json.hpp"
#include "pcv/interpolate.hpp"
#include "pcv/kring.hpp"
#include "pcv/operators.hpp"
#include "pcv/wmodule.hpp"

namespace pcv {

using Json = nlohmann::ordered_json;

// {"num": [[exp, "coeff"], ...], "den": [a, b, c]}
Json class_to_json(const LocalizedClass& a);
LocalizedClass class_from_json(const Json& j);

// {"core": {"T2": <class>, ...}, "sky": [{"orbit": "<eigen>", "coeff": <class>}, ...]}
Json module_to_json(const ModuleElement& v);
ModuleElement module_from_json(const Json& j, int symbolic_count = -1);

Json fitted_to_json(const FittedOperator& op);
FittedOperator fitted_from_json(const Json& j);

// {"operators": [<fitted>, ...]}; checksums are verified on load.
Json operator_data_to_json(const OperatorData& data);
OperatorData operator_data_from_json(const std::string& text);
// The committed cache layout: one-space indent and a trailing newline.
std::string render_operator_data(const OperatorData& data);

}  // namespace pcv
