#pragma once

#include <nlohmann/json.hpp>

#include "dmm/value.hpp"

namespace dmm {

// Matrix literals used in spec files and trace records.
//
// Lightweight (dense):   [[1, 0], [0, -2]]            (array of row arrays)
// Countable, FD terms:   {"terms": [{"u": {"default": d, "except": {...}},
//                                    "v": {...}}, ...]}
// Countable, triplets:   [["<row-key>", "<col-key>", w], ...]
nlohmann::json value_to_json(const StreamValue& v);
StreamValue value_from_json(const nlohmann::json& j, Mode mode, int m, int n);

nlohmann::json fdvector_to_json(const FDVector& v);
FDVector fdvector_from_json(const nlohmann::json& j);

}  // namespace dmm
