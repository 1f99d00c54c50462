#ifndef ENVRISK_JSON_IO_HPP
#define ENVRISK_JSON_IO_HPP

#include <json.hpp>

#include "envrisk/classical.hpp"
#include "envrisk/distortion.hpp"
#include "envrisk/env_measure.hpp"
#include "envrisk/scenario.hpp"

namespace envrisk {

// Wire formats. ordered_json keeps key order stable so serialized reports
// are byte-reproducible.
using json = nlohmann::ordered_json;

// {"family":"identity"} | {"family":"avar","level":0.95} |
// {"family":"var","level":0.95} | {"family":"power","p":0.5} |
// {"family":"pwl","knots":[[0,0],[0.5,0.8],[1,1]]}
json distortion_to_json(const DistortionFn& g);
DistortionFn distortion_from_json(const json& j);

// {"rule":"constant","fn":{...}} |
// {"rule":"table","entries":[[z,{...}],...],"default":{...}} |
// {"rule":"level-from-state","family":"avar","clamp":[0.01,0.99]}
json rule_to_json(const StateFamilyRule& r);
StateFamilyRule rule_from_json(const json& j);

// {"inner":{...rule...},"outer":{...fn...}}
json spec_to_json(const EnvMeasureSpec& s);
EnvMeasureSpec spec_from_json(const json& j);

// {"atoms":[[0.25,0.5],[0.9,0.5]]}
json level_measure_to_json(const LevelMeasure& mu);
LevelMeasure level_measure_from_json(const json& j);

// {"mode":"distinct-values"} | {"mode":"equiprobable-k","k":4}
json binning_to_json(const Binning& b);
Binning binning_from_json(const json& j);

} // namespace envrisk

#endif
