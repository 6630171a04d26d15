#pragma once

#include <optional>
#include <string>
#include <vector>

#include "minext/measure.hpp"

namespace minext {

// Input of one worked example: the measure (when it is discrete) and the
// observed frequencies.
struct ExampleInput {
  std::string id;
  FrequencySet lambda;
  std::optional<DiscreteMeasure> measure;
  SpectralData data;
};

// e1..e6, cantor, twolines.
std::vector<std::string> fixture_ids();
ExampleInput example_input(const std::string& id);

struct CheckRow {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ReproduceResult {
  std::string id;
  std::vector<CheckRow> rows;

  bool all_pass() const;
};

// e1..e6, cantor, twolines, lattice.
std::vector<std::string> example_ids();

// Runs the scripted checks of one example. Throws Error(kInvalidArgument) for
// an unknown id.
ReproduceResult reproduce(const std::string& id);

}  // namespace minext
