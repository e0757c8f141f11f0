#pragma once

#include <string>
#include <string_view>

#include "pointseg/engine.hpp"
#include "pointseg/model.hpp"

namespace pointseg {

// Binary model format: little-endian, length-prefixed sections, strings as
// UTF-8 with byte-length prefixes, tables sorted by key. Identical models
// serialize to identical bytes. See README for the field layout.
std::string save_model(const RawModel& model);

// Validates everything: magic, version, declared lengths (never reads past
// them), and all RawModel invariants.
RawModel load_model(std::string_view bytes);

void save_model_file(const RawModel& model, const std::string& path);
RawModel load_model_file(const std::string& path);

// Engine files embed the source model and the configuration; loading
// recompiles, which reproduces the engine structurally because compilation is
// deterministic.
std::string save_engine(const CompiledEngine& engine);
CompiledEngine load_engine(std::string_view bytes);

}  // namespace pointseg
