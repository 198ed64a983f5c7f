#pragma once

#include <string>

#include "hsch/field.hpp"

namespace hsch {

// Flat little-endian float64 snapshot with a JSON sidecar carrying the grid
// metadata. path gets ".f64" and ".json" appended.
void write_snapshot(const std::string& path_base, const std::string& name,
                    const ScalarField& f, double t);
void write_snapshot(const std::string& path_base, const std::string& name,
                    const VectorField& v, double t);

ScalarField read_scalar_snapshot(const std::string& path_base);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace hsch
