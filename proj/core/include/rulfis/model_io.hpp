#pragma once

#include <filesystem>
#include <string>

#include "rulfis/fis.hpp"

namespace rulfis::fis {

inline constexpr int kModelSchemaVersion = 1;

/// JSON document; doubles are written with round-trip precision.
std::string serialize_model(const Model& model);
Model deserialize_model(const std::string& text);

void save_model(const Model& model, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

}  // namespace rulfis::fis
