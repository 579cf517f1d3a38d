#include "pixelneat/harness/config.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "pixelneat/errors.hpp"

namespace pixelneat::harness {

namespace fs = std::filesystem;

fs::path EvolutionConfig::checkpoint_path() const {
  return checkpoint_dir.empty() ? output_dir / "checkpoints" : checkpoint_dir;
}
fs::path EvolutionConfig::stats_path() const {
  return stats_file.empty() ? output_dir / "stats.csv" : stats_file;
}
fs::path EvolutionConfig::calibration_path() const {
  return calibration_file.empty() ? output_dir / "calibration.txt" : calibration_file;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* what) {
  throw ConfigError("config key '" + key + "': cannot parse '" + value + "' as " + what);
}

template <typename Int>
Int parse_int(const std::string& key, const std::string& v) {
  Int out{};
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) bad_value(key, v, "an integer");
  return out;
}

double parse_real(const std::string& key, const std::string& v) {
  if (v.empty()) bad_value(key, v, "a number");
  char* end = nullptr;
  const double out = std::strtod(v.c_str(), &end);
  if (end != v.c_str() + v.size()) bad_value(key, v, "a number");
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  return parts;
}

PixelRect parse_rect(const std::string& key, const std::string& v) {
  const auto parts = split(v, ',');
  if (parts.size() != 4) bad_value(key, v, "x,y,width,height");
  return {parse_int<int>(key, parts[0]), parse_int<int>(key, parts[1]), parse_int<int>(key, parts[2]),
          parse_int<int>(key, parts[3])};
}

std::vector<vision::HueWindow> parse_windows(const std::string& key, const std::string& v) {
  std::vector<vision::HueWindow> out;
  for (const auto& part : split(v, ',')) {
    const auto dash = part.find('-', 1);
    if (dash == std::string::npos) bad_value(key, v, "low-high[,low-high...]");
    out.push_back({parse_real(key, trim(part.substr(0, dash))), parse_real(key, trim(part.substr(dash + 1)))});
  }
  return out;
}

std::string real_text(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string rect_text(const PixelRect& r) {
  return std::to_string(r.x) + "," + std::to_string(r.y) + "," + std::to_string(r.width) + "," +
         std::to_string(r.height);
}

std::string windows_text(const std::vector<vision::HueWindow>& ws) {
  std::string out;
  for (const auto& w : ws) {
    if (!out.empty()) out += ",";
    out += real_text(w.low) + "-" + real_text(w.high);
  }
  return out;
}

using Setter = std::function<void(EvolutionConfig&, const std::string& key, const std::string& value,
                                  const fs::path& base)>;
using Getter = std::function<std::string(const EvolutionConfig&)>;

struct Field {
  Setter set;
  Getter get;
};

fs::path resolve(const fs::path& base, const std::string& v) {
  fs::path p(v);
  if (p.empty() || p.is_absolute() || base.empty()) return p;
  return (base / p).lexically_normal();
}

#define INT_FIELD(name, member, type)                                                                      \
  {name,                                                                                                   \
   {[](EvolutionConfig& c, const std::string& k, const std::string& v, const fs::path&) {                  \
      c.member = parse_int<type>(k, v);                                                                    \
    },                                                                                                     \
    [](const EvolutionConfig& c) { return std::to_string(c.member); }}}
#define REAL_FIELD(name, member)                                                                           \
  {name,                                                                                                   \
   {[](EvolutionConfig& c, const std::string& k, const std::string& v, const fs::path&) {                  \
      c.member = parse_real(k, v);                                                                         \
    },                                                                                                     \
    [](const EvolutionConfig& c) { return real_text(c.member); }}}
#define PATH_FIELD(name, member)                                                                           \
  {name,                                                                                                   \
   {[](EvolutionConfig& c, const std::string&, const std::string& v, const fs::path& base) {               \
      c.member = resolve(base, v);                                                                         \
    },                                                                                                     \
    [](const EvolutionConfig& c) { return c.member.string(); }}}

const std::map<std::string, Field>& fields() {
  static const std::map<std::string, Field> table = {
      INT_FIELD("seed", seed, std::uint64_t),
      INT_FIELD("population_size", reproduction.population_size, int),
      INT_FIELD("max_generations", max_generations, int),
      INT_FIELD("trial_tick_limit", trial_tick_limit, long),
      INT_FIELD("poll_interval", poll_interval, int),
      INT_FIELD("inputs_per_output", inputs_per_output, int),
      INT_FIELD("trial_attempts", trial_attempts, int),
      INT_FIELD("elitism", reproduction.elitism, int),
      INT_FIELD("elitism_min_species_size", reproduction.elitism_min_size, int),
      REAL_FIELD("survival_fraction", reproduction.survival_fraction),
      REAL_FIELD("crossover_prob", reproduction.crossover_prob),
      INT_FIELD("staleness_limit", reproduction.staleness_limit, int),
      REAL_FIELD("add_connection_prob", reproduction.add_connection_prob),
      REAL_FIELD("add_node_prob", reproduction.add_node_prob),
      REAL_FIELD("disable_inherit_prob", reproduction.disable_inherit_prob),
      REAL_FIELD("weight_perturb_prob", reproduction.weights.perturb_prob),
      REAL_FIELD("weight_perturb_stddev", reproduction.weights.perturb_stddev),
      REAL_FIELD("weight_replace_prob", reproduction.weights.replace_prob),
      REAL_FIELD("weight_min", reproduction.weights.weight_min),
      REAL_FIELD("weight_max", reproduction.weights.weight_max),
      REAL_FIELD("compat_excess", compatibility.excess),
      REAL_FIELD("compat_disjoint", compatibility.disjoint),
      REAL_FIELD("compat_weight", compatibility.weight),
      INT_FIELD("compat_normalize_threshold", compatibility.normalize_threshold, std::size_t),
      REAL_FIELD("compat_threshold", compat_threshold),
      REAL_FIELD("compat_threshold_step", compat_threshold_step),
      REAL_FIELD("compat_threshold_floor", compat_threshold_floor),
      INT_FIELD("target_species", target_species, int),
      {"mask_hue_windows",
       {[](EvolutionConfig& c, const std::string& k, const std::string& v, const fs::path&) {
          c.vision.mask.hue_windows = parse_windows(k, v);
        },
        [](const EvolutionConfig& c) { return windows_text(c.vision.mask.hue_windows); }}},
      REAL_FIELD("mask_s_min", vision.mask.s_min),
      REAL_FIELD("mask_v_min", vision.mask.v_min),
      {"player_bar",
       {[](EvolutionConfig& c, const std::string& k, const std::string& v, const fs::path&) {
          c.vision.player_bar = parse_rect(k, v);
        },
        [](const EvolutionConfig& c) { return rect_text(c.vision.player_bar); }}},
      {"boss_bar",
       {[](EvolutionConfig& c, const std::string& k, const std::string& v, const fs::path&) {
          c.vision.boss_bar = parse_rect(k, v);
        },
        [](const EvolutionConfig& c) { return rect_text(c.vision.boss_bar); }}},
      REAL_FIELD("match_threshold", vision.match_threshold),
      INT_FIELD("search_margin", vision.search_margin, int),
      PATH_FIELD("asset_dir", asset_dir),
      PATH_FIELD("output_dir", output_dir),
      PATH_FIELD("checkpoint_dir", checkpoint_dir),
      PATH_FIELD("stats_file", stats_file),
      PATH_FIELD("calibration_file", calibration_file),
  };
  return table;
}

#undef INT_FIELD
#undef REAL_FIELD
#undef PATH_FIELD

void require(bool ok, const char* key, const char* rule) {
  if (!ok) throw ConfigError(std::string("config key '") + key + "' " + rule);
}

bool is_prob(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

void EvolutionConfig::validate() const {
  const auto& r = reproduction;
  require(r.population_size >= 2, "population_size", "must be at least 2");
  require(max_generations >= 1, "max_generations", "must be at least 1");
  require(trial_tick_limit > 0, "trial_tick_limit", "must be positive");
  require(poll_interval == kPollInterval, "poll_interval", "must be 6 ticks (5 decisions per second)");
  require(inputs_per_output >= 0, "inputs_per_output", "must not be negative");
  require(trial_attempts >= 1, "trial_attempts", "must be at least 1");
  require(r.elitism >= 0, "elitism", "must not be negative");
  require(r.elitism_min_size >= 0, "elitism_min_species_size", "must not be negative");
  require(r.survival_fraction > 0.0 && r.survival_fraction <= 1.0, "survival_fraction", "must lie in (0, 1]");
  require(is_prob(r.crossover_prob), "crossover_prob", "must lie in [0, 1]");
  require(r.staleness_limit >= 1, "staleness_limit", "must be at least 1");
  require(is_prob(r.add_connection_prob), "add_connection_prob", "must lie in [0, 1]");
  require(is_prob(r.add_node_prob), "add_node_prob", "must lie in [0, 1]");
  require(is_prob(r.disable_inherit_prob), "disable_inherit_prob", "must lie in [0, 1]");
  require(is_prob(r.weights.perturb_prob), "weight_perturb_prob", "must lie in [0, 1]");
  require(is_prob(r.weights.replace_prob), "weight_replace_prob", "must lie in [0, 1]");
  require(r.weights.perturb_prob + r.weights.replace_prob <= 1.0, "weight_perturb_prob",
          "plus weight_replace_prob must not exceed 1");
  require(r.weights.perturb_stddev >= 0.0, "weight_perturb_stddev", "must not be negative");
  require(r.weights.weight_min < r.weights.weight_max, "weight_min", "must be below weight_max");
  require(compatibility.excess >= 0.0, "compat_excess", "must not be negative");
  require(compatibility.disjoint >= 0.0, "compat_disjoint", "must not be negative");
  require(compatibility.weight >= 0.0, "compat_weight", "must not be negative");
  require(compat_threshold > 0.0, "compat_threshold", "must be positive");
  require(compat_threshold_step >= 0.0, "compat_threshold_step", "must not be negative");
  require(compat_threshold_floor > 0.0, "compat_threshold_floor", "must be positive");
  require(target_species >= 1, "target_species", "must be at least 1");
  try {
    vision.mask.validate();
  } catch (const ContractViolation& e) {
    throw ConfigError(std::string("config mask_hue_windows / mask_s_min / mask_v_min: ") + e.what());
  }
  require(vision.player_bar.width > 0 && vision.player_bar.height > 0 &&
              vision.player_bar.inside(kFrameWidth, kFrameHeight),
          "player_bar", "must be a non-empty rectangle inside the 800x600 frame");
  require(vision.boss_bar.width > 0 && vision.boss_bar.height > 0 &&
              vision.boss_bar.inside(kFrameWidth, kFrameHeight),
          "boss_bar", "must be a non-empty rectangle inside the 800x600 frame");
  require(vision.match_threshold > 0.0 && vision.match_threshold <= 1.0, "match_threshold", "must lie in (0, 1]");
  require(vision.search_margin >= 0, "search_margin", "must not be negative");
}

EvolutionConfig parse_config(std::istream& in, const fs::path& base_dir) {
  EvolutionConfig config;
  std::set<std::string> seen;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = fields().find(key);
    if (it == fields().end())
      throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    if (!seen.insert(key).second)
      throw ConfigError("config line " + std::to_string(line_no) + ": key '" + key + "' given twice");
    it->second.set(config, key, value, base_dir);
  }
  config.validate();
  return config;
}

EvolutionConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  EvolutionConfig config = parse_config(in, path.parent_path());
  if (const char* dir = std::getenv("ARENA_ASSET_DIR"); dir != nullptr && *dir != '\0') config.asset_dir = dir;
  return config;
}

void write_config(std::ostream& out, const EvolutionConfig& config) {
  for (const auto& [key, field] : fields()) {
    const std::string value = field.get(config);
    if (!value.empty()) out << key << " = " << value << '\n';
  }
}

void save_calibration(const fs::path& path, const vision::Calibration& calibration) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  out << "player_full_pixels = " << calibration.player_full_pixels << '\n'
      << "boss_full_pixels = " << calibration.boss_full_pixels << '\n';
  if (!out) throw std::runtime_error("cannot write calibration file " + path.string());
}

vision::Calibration load_calibration(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("no calibration file at " + path.string() + " (run calibrate-vision first)");
  vision::Calibration c;
  bool have_player = false;
  bool have_boss = false;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("calibration file " + path.string() + ": bad line '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "player_full_pixels") {
      c.player_full_pixels = parse_int<int>(key, value);
      have_player = true;
    } else if (key == "boss_full_pixels") {
      c.boss_full_pixels = parse_int<int>(key, value);
      have_boss = true;
    } else {
      throw ConfigError("calibration file " + path.string() + ": unknown key '" + key + "'");
    }
  }
  if (!have_player || !have_boss || c.player_full_pixels <= 0 || c.boss_full_pixels <= 0)
    throw ConfigError("calibration file " + path.string() + " lacks positive pixel counts");
  return c;
}

}  // namespace pixelneat::harness
