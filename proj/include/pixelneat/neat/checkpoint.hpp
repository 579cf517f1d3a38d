#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pixelneat/neat/genome.hpp"
#include "pixelneat/neat/species.hpp"

namespace pixelneat::neat {

// Everything besides the population needed to continue a run exactly.
struct RunState {
  int generation = 0;
  double compat_threshold = 0.0;
  Innovation next_innovation = 1;
  NodeId next_node_id = 0;
  int next_species_id = 0;
  std::string rng_state;  // textual std::mt19937_64 state

  friend bool operator==(const RunState&, const RunState&) = default;
};

struct Checkpoint {
  RunState run_state;
  std::vector<Species> species;  // representative == population[members.front()]
  std::vector<Genome> population;
};

// Hexadecimal float text, exact round trip.
std::string format_hex(double value);
double parse_hex(const std::string& text);

void write_genome(std::ostream& out, std::size_t index, const Genome& genome);
void write_checkpoint(std::ostream& out, const Checkpoint& checkpoint);
// Throws FormatError on malformed input.
Checkpoint read_checkpoint(std::istream& in);

// Writes through a temporary file and renames, so a failed write never
// replaces an existing checkpoint.
void save_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint);
Checkpoint load_checkpoint(const std::filesystem::path& path);

std::string rng_to_string(const Rng& rng);
Rng rng_from_string(const std::string& text);

}  // namespace pixelneat::neat
