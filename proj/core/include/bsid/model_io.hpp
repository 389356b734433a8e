#pragma once

#include "bsid/models.hpp"

namespace bsid {

// Persists a fitted model into the shared container format: a family tag
// byte followed by the family-specific payload. load_model restores the
// concrete type behind the TrainedModel interface.
void save_model(const TrainedModel& model, const std::string& path);
ModelPtr load_model(const std::string& path);

std::vector<std::uint8_t> model_to_bytes(const TrainedModel& model);
ModelPtr model_from_bytes(const std::vector<std::uint8_t>& payload);

}  // namespace bsid
