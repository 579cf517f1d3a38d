#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "pixelneat/neat/reproduction.hpp"
#include "pixelneat/neat/species.hpp"
#include "pixelneat/vision/vision.hpp"

namespace pixelneat::harness {

inline constexpr int kPollInterval = 6;  // ticks per decision, 5 Hz at 30 Hz
inline constexpr long kDefaultTrialTickLimit = 5400;

struct EvolutionConfig {
  std::uint64_t seed = 1;
  int max_generations = 30;
  long trial_tick_limit = kDefaultTrialTickLimit;
  int poll_interval = kPollInterval;
  int inputs_per_output = 8;
  int trial_attempts = 3;

  neat::ReproductionParams reproduction;
  neat::CompatibilityCoeffs compatibility;
  double compat_threshold = 3.0;
  double compat_threshold_step = 0.1;
  double compat_threshold_floor = 0.3;
  int target_species = 6;

  vision::VisionConfig vision;

  std::filesystem::path asset_dir = "assets";
  std::filesystem::path output_dir = "out";
  // Empty means a default location under output_dir.
  std::filesystem::path checkpoint_dir;
  std::filesystem::path stats_file;
  std::filesystem::path calibration_file;

  std::filesystem::path checkpoint_path() const;
  std::filesystem::path stats_path() const;
  std::filesystem::path calibration_path() const;

  // Throws ConfigError naming the offending key.
  void validate() const;
};

// `key = value` lines, `#` comments. Unknown or repeated keys, unparsable
// values and out-of-range settings all raise ConfigError. Relative paths are
// resolved against base_dir.
EvolutionConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {});
// Reads a file; relative paths resolve against the file's directory.
// ARENA_ASSET_DIR, when set, replaces asset_dir.
EvolutionConfig load_config(const std::filesystem::path& path);
void write_config(std::ostream& out, const EvolutionConfig& config);

// Calibration file: `player_full_pixels = N` and `boss_full_pixels = N`.
void save_calibration(const std::filesystem::path& path, const vision::Calibration& calibration);
// Throws ConfigError if the file is missing or malformed.
vision::Calibration load_calibration(const std::filesystem::path& path);

}  // namespace pixelneat::harness
