// Writes the example inputs as JSON: <id>.json holds the spectral data and
// <id>_measure.json the generating measure when it is discrete.
#include <filesystem>
#include <iostream>

#include "minext/json_io.hpp"
#include "minext/reproduce.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: minext_fixtures <output-dir>\n";
    return 2;
  }
  const std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir);
  for (const auto& id : minext::fixture_ids()) {
    minext::ExampleInput in = minext::example_input(id);
    minext::write_json_file(dir / (id + ".json"), minext::spectral_to_json(in.data));
    if (in.measure) minext::write_json_file(dir / (id + "_measure.json"), minext::measure_to_json(*in.measure));
  }
  return 0;
}
