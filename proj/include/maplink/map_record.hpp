#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maplink/annotation.hpp"
#include "maplink/cost_model.hpp"

namespace maplink {

/// One map sheet: its labels plus, when annotated, the ground-truth
/// multiword phrases over those labels.
struct MapRecord {
    std::string map_id;
    std::optional<int> year;
    std::vector<TextLabel> labels;
    std::vector<PhraseAnnotation> phrases;
    bool annotated{false};  // distinguishes "no phrases recorded" from "none present"
};

}  // namespace maplink
