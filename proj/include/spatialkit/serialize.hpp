#pragma once

// JSON forms of the library's records. Keys are emitted in sorted order so
// identical inputs serialize to identical bytes.

#include "json.hpp"

#include "spatialkit/enhance.hpp"
#include "spatialkit/geometry.hpp"
#include "spatialkit/metrics.hpp"
#include "spatialkit/pipelines.hpp"

namespace spatialkit {

using json = nlohmann::json;

json to_json(const QuantizationMap& map);
QuantizationMap quantization_map_from_json(const json& j);

json to_json(const Line& line);
json to_json(const Circle& circle);
json to_json(const Corner& corner);
json to_json(const Region& region);
json to_json(const FeatureSet& features);

json to_json(const SimilarityReport& report);

json to_json(const ForwardParams& p);
json to_json(const ReverseParams& p);
json to_json(const GridSpec& grid);
GridSpec grid_from_json(const json& j);
json to_json(const TuneResult& result);

}  // namespace spatialkit
