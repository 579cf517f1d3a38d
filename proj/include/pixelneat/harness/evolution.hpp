#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pixelneat/harness/config.hpp"
#include "pixelneat/harness/trial.hpp"
#include "pixelneat/neat/checkpoint.hpp"

namespace pixelneat::harness {

struct GenerationStats {
  int generation = 0;
  double mean_fitness = 0.0;
  double max_fitness = 0.0;
  double win_rate = 0.0;
  int species = 0;
  double mean_genome_size = 0.0;  // enabled connections per genome

  friend bool operator==(const GenerationStats&, const GenerationStats&) = default;
};

inline constexpr const char* kStatsHeader =
    "generation,mean_fitness,max_fitness,win_rate,species,mean_genome_size";

std::string format_stats_row(const GenerationStats& stats);
void write_stats(std::ostream& out, std::span<const GenerationStats> rows);
// Throws FormatError on a bad header or row.
std::vector<GenerationStats> read_stats(std::istream& in);
std::vector<GenerationStats> load_stats(const std::filesystem::path& path);

// Boss-sequence seed shared by every genome of one generation.
std::uint64_t generation_seed(std::uint64_t run_seed, int generation);
// Seeds never used for training, for held-out evaluation.
std::uint64_t holdout_seed(std::uint64_t run_seed, int index);

enum class Schedule { serial, parallel };

struct GenerationResult {
  std::vector<TrialResult> trials;
  GenerationStats stats;  // species left 0; filled by speciation
  int void_trials = 0;    // genomes zeroed after exhausting re-runs
};

// One trial per genome on the shared seed; writes each fitness back into
// the population.
GenerationResult evaluate_generation(std::vector<neat::Genome>& population,
                                     const vision::VisionSystem& vision, std::uint64_t seed,
                                     const TrialSettings& settings, int trial_attempts = 3,
                                     Schedule schedule = Schedule::parallel);

struct EvolutionResult {
  std::vector<neat::Genome> population;  // last evaluated generation
  std::vector<GenerationStats> stats;    // rows produced by this call
};

using GenerationCallback = std::function<void(const GenerationStats&)>;

// Full loop: evaluate, speciate, checkpoint, record stats, reproduce.
// With a resume checkpoint the run continues after the checkpoint's
// generation exactly as an uninterrupted run would. Stats rows already on
// disk beyond the resume point are discarded.
EvolutionResult evolve(const EvolutionConfig& config, const vision::VisionSystem& vision,
                       const std::optional<std::filesystem::path>& resume = std::nullopt,
                       const GenerationCallback& on_generation = {});

std::filesystem::path checkpoint_file(const std::filesystem::path& dir, int generation);
// Highest-numbered gen_NNNN.ckpt in dir, if any.
std::optional<std::filesystem::path> latest_checkpoint(const std::filesystem::path& dir);

// Index of the fittest genome, lowest index on ties.
std::size_t champion_index(std::span<const neat::Genome> population);

}  // namespace pixelneat::harness
