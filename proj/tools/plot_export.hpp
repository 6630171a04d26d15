#pragma once

#include <filesystem>
#include <vector>

#include <nlohmann/json.hpp>

namespace minext::tools {

// Writes phi.csv, atoms.csv and support.csv for an analyze report into dir
// and returns the paths written.
std::vector<std::filesystem::path> export_plot(const nlohmann::json& report,
                                               const std::filesystem::path& dir,
                                               int samples = 1024);

}  // namespace minext::tools
