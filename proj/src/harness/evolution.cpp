#include "pixelneat/harness/evolution.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <istream>
#include <ostream>
#include <regex>
#include <sstream>

#include "pixelneat/errors.hpp"
#include "pixelneat/neat/innovation.hpp"
#include "pixelneat/neat/reproduction.hpp"
#include "pixelneat/neat/species.hpp"

namespace pixelneat::harness {

namespace fs = std::filesystem;

std::string format_stats_row(const GenerationStats& s) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d,%.6f,%.6f,%.4f,%d,%.4f", s.generation, s.mean_fitness, s.max_fitness,
                s.win_rate, s.species, s.mean_genome_size);
  return buf;
}

void write_stats(std::ostream& out, std::span<const GenerationStats> rows) {
  out << kStatsHeader << '\n';
  for (const auto& r : rows) out << format_stats_row(r) << '\n';
}

std::vector<GenerationStats> read_stats(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kStatsHeader) throw FormatError("stats file lacks the expected header");
  std::vector<GenerationStats> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    GenerationStats s;
    char tail = 0;
    if (std::sscanf(line.c_str(), "%d,%lf,%lf,%lf,%d,%lf%c", &s.generation, &s.mean_fitness, &s.max_fitness,
                    &s.win_rate, &s.species, &s.mean_genome_size, &tail) != 6)
      throw FormatError("bad stats row '" + line + "'");
    rows.push_back(s);
  }
  return rows;
}

std::vector<GenerationStats> load_stats(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open stats file " + path.string());
  return read_stats(in);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t generation_seed(std::uint64_t run_seed, int generation) {
  return splitmix64(splitmix64(run_seed) ^ static_cast<std::uint64_t>(generation));
}

std::uint64_t holdout_seed(std::uint64_t run_seed, int index) {
  // Offset far away from generation numbers so the two streams never meet.
  return splitmix64(splitmix64(run_seed ^ 0x686f6c646f7574ULL) + static_cast<std::uint64_t>(index) + (1ULL << 40));
}

GenerationResult evaluate_generation(std::vector<neat::Genome>& population, const vision::VisionSystem& vision,
                                     std::uint64_t seed, const TrialSettings& settings, int trial_attempts,
                                     Schedule schedule) {
  const int n = static_cast<int>(population.size());
  GenerationResult out;
  out.trials.resize(population.size());
  std::vector<char> voided(population.size(), 0);
  std::vector<std::string> reasons(population.size());
  std::exception_ptr failure;

  auto evaluate_one = [&](int i) {
    try {
      for (int attempt = 0; attempt < trial_attempts; ++attempt) {
        try {
          out.trials[static_cast<std::size_t>(i)] = run_genome_trial(population[static_cast<std::size_t>(i)],
                                                                     vision, seed, settings);
          return;
        } catch (const InvalidTrial& e) {
          reasons[static_cast<std::size_t>(i)] = e.what();
        }
      }
      out.trials[static_cast<std::size_t>(i)] = TrialResult{};
      voided[static_cast<std::size_t>(i)] = 1;
    } catch (...) {
#pragma omp critical(pixelneat_eval_failure)
      if (!failure) failure = std::current_exception();
    }
  };

  if (schedule == Schedule::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < n; ++i) evaluate_one(i);
  } else {
    for (int i = 0; i < n; ++i) evaluate_one(i);
  }
  if (failure) std::rethrow_exception(failure);

  double sum = 0.0;
  double best = 0.0;
  int wins = 0;
  double genes = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    if (voided[idx]) {
      ++out.void_trials;
      std::cerr << "warning: genome " << i << " gave no valid trial after " << trial_attempts
                << " attempts (" << reasons[idx] << "); fitness set to 0\n";
    }
    const TrialResult& r = out.trials[idx];
    population[idx].fitness = r.fitness;
    sum += r.fitness;
    best = std::max(best, r.fitness);
    wins += r.won ? 1 : 0;
    genes += static_cast<double>(population[idx].enabled_connection_count());
  }
  if (n > 0) {
    out.stats.mean_fitness = sum / n;
    out.stats.max_fitness = best;
    out.stats.win_rate = static_cast<double>(wins) / n;
    out.stats.mean_genome_size = genes / n;
  }
  return out;
}

fs::path checkpoint_file(const fs::path& dir, int generation) {
  char name[32];
  std::snprintf(name, sizeof name, "gen_%04d.ckpt", generation);
  return dir / name;
}

std::optional<fs::path> latest_checkpoint(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return std::nullopt;
  static const std::regex pattern(R"(gen_(\d+)\.ckpt)");
  std::optional<fs::path> best;
  long best_gen = -1;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::smatch m;
    const std::string name = entry.path().filename().string();
    if (!entry.is_regular_file() || !std::regex_match(name, m, pattern)) continue;
    const long g = std::stol(m[1].str());
    if (g > best_gen) {
      best_gen = g;
      best = entry.path();
    }
  }
  return best;
}

std::size_t champion_index(std::span<const neat::Genome> population) {
  if (population.empty()) throw ContractViolation("empty population has no champion");
  std::size_t best = 0;
  for (std::size_t i = 1; i < population.size(); ++i)
    if (population[i].fitness > population[best].fitness) best = i;
  return best;
}

EvolutionResult evolve(const EvolutionConfig& config, const vision::VisionSystem& vision,
                       const std::optional<fs::path>& resume, const GenerationCallback& on_generation) {
  config.validate();
  const TrialSettings settings{config.trial_tick_limit, config.poll_interval};

  neat::Rng rng(config.seed);
  neat::InnovationRegistry registry = neat::InnovationRegistry::for_topology(neat::kGameTopology);
  std::vector<neat::Genome> population;
  std::vector<neat::Species> species;
  double threshold = config.compat_threshold;
  int next_species_id = 0;
  int first_generation = 1;
  std::vector<GenerationStats> kept_rows;

  if (resume) {
    neat::Checkpoint ck = neat::load_checkpoint(*resume);
    for (const auto& g : ck.population) {
      const neat::Topology t = g.topology();
      if (t.inputs != neat::kGameTopology.inputs || t.outputs != neat::kGameTopology.outputs)
        throw FormatError("checkpoint " + resume->string() + " does not hold arena genomes");
    }
    const neat::RunState& rs = ck.run_state;
    rng = neat::rng_from_string(rs.rng_state);
    registry = neat::InnovationRegistry(rs.next_innovation, rs.next_node_id);
    threshold = rs.compat_threshold;
    next_species_id = rs.next_species_id;
    species = std::move(ck.species);
    population = std::move(ck.population);
    first_generation = rs.generation + 1;
    std::error_code ec;
    if (fs::exists(config.stats_path(), ec)) {
      for (const auto& row : load_stats(config.stats_path()))
        if (row.generation <= rs.generation) kept_rows.push_back(row);
    }
  } else {
    population = neat::initial_population(neat::kGameTopology, config.reproduction.population_size,
                                          config.inputs_per_output, registry, rng);
  }

  fs::create_directories(config.checkpoint_path());
  if (config.stats_path().has_parent_path()) fs::create_directories(config.stats_path().parent_path());
  std::ofstream stats_out(config.stats_path(), std::ios::trunc);
  if (!stats_out) throw std::runtime_error("cannot write stats file " + config.stats_path().string());
  write_stats(stats_out, kept_rows);
  stats_out.flush();

  EvolutionResult result;
  for (int gen = first_generation; gen <= config.max_generations; ++gen) {
    if (gen > 1) {
      registry.new_generation();
      population = neat::reproduce(population, species, config.reproduction, registry, rng);
    }
    GenerationResult eval =
        evaluate_generation(population, vision, generation_seed(config.seed, gen), settings, config.trial_attempts);
    species = neat::speciate(population, std::move(species), threshold, config.compatibility, next_species_id);
    threshold = neat::adjust_threshold(threshold, species.size(), static_cast<std::size_t>(config.target_species),
                                       config.compat_threshold_step, config.compat_threshold_floor);

    neat::Checkpoint ck;
    ck.run_state = {gen, threshold, registry.next_innovation(), registry.next_node_id(), next_species_id,
                    neat::rng_to_string(rng)};
    ck.species = species;
    ck.population = population;
    neat::save_checkpoint(checkpoint_file(config.checkpoint_path(), gen), ck);

    GenerationStats stats = eval.stats;
    stats.generation = gen;
    stats.species = static_cast<int>(species.size());
    stats_out << format_stats_row(stats) << '\n';
    stats_out.flush();
    if (!stats_out) throw std::runtime_error("cannot append to stats file " + config.stats_path().string());
    result.stats.push_back(stats);
    if (on_generation) on_generation(stats);
  }
  result.population = std::move(population);
  return result;
}

}  // namespace pixelneat::harness
