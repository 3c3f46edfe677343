#pragma once

#include <json.hpp>

#include "bcmk/matrix.hpp"
#include "bcmk/parser.hpp"
#include "bcmk/weights.hpp"

namespace bcmk {

// Reports use insertion-ordered JSON so a fixed input/seed/flags triple
// serializes byte-identically.
using Json = nlohmann::ordered_json;

Json to_json(const BC& z);
Json to_json(const BCQ& z);
Json to_json(const WeightReport& rep);
Json to_json(const BCMatrixD& m);  // nested arrays of bicomplex literals

}  // namespace bcmk
