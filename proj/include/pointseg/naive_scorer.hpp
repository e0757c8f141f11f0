#pragma once

#include <string_view>

#include "pointseg/model.hpp"

namespace pointseg {

// Direct per-boundary evaluation of y_i = sum(w_f * count_f) + b via feature
// enumeration and dictionary scanning. No automata and no precomputation:
// this is the reference every compiled engine must match bit-exactly.
SegmentationResult score_naive(const RawModel& model, std::u32string_view text);

}  // namespace pointseg
