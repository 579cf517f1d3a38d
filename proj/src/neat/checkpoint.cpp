#include "pixelneat/neat/checkpoint.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "pixelneat/errors.hpp"

namespace pixelneat::neat {

namespace {

constexpr const char* kMagic = "pixelneat-checkpoint 1";

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw FormatError("checkpoint line " + std::to_string(line) + ": " + what);
}

template <typename T>
T read_token(std::istringstream& in, std::size_t line, const char* what) {
  T value{};
  if (!(in >> value)) fail(line, std::string("expected ") + what);
  return value;
}

void expect_keyword(std::istringstream& in, std::size_t line, const char* keyword) {
  std::string word;
  if (!(in >> word) || word != keyword) fail(line, std::string("expected '") + keyword + "'");
}

double read_hex(std::istringstream& in, std::size_t line) {
  auto text = read_token<std::string>(in, line, "number");
  try {
    return parse_hex(text);
  } catch (const FormatError& e) {
    fail(line, e.what());
  }
}

}  // namespace

std::string format_hex(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", value);
  return buf;
}

double parse_hex(const std::string& text) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || errno == ERANGE)
    throw FormatError("malformed number '" + text + "'");
  return v;
}

std::string rng_to_string(const Rng& rng) {
  std::ostringstream out;
  out << rng;
  return out.str();
}

Rng rng_from_string(const std::string& text) {
  Rng rng;
  std::istringstream in(text);
  in >> rng;
  if (in.fail()) throw FormatError("malformed rng state");
  return rng;
}

void write_genome(std::ostream& out, std::size_t index, const Genome& genome) {
  out << "genome " << index << " fitness " << format_hex(genome.fitness) << '\n';
  for (const auto& n : genome.nodes) out << "node " << n.id << ' ' << to_string(n.kind) << '\n';
  for (const auto& c : genome.connections)
    out << "conn " << c.innovation << ' ' << c.source << ' ' << c.target << ' '
        << format_hex(c.weight) << ' ' << (c.enabled ? 1 : 0) << '\n';
}

void write_checkpoint(std::ostream& out, const Checkpoint& checkpoint) {
  const RunState& rs = checkpoint.run_state;
  out << kMagic << '\n';
  out << "run_state generation " << rs.generation << " threshold "
      << format_hex(rs.compat_threshold) << " next_innovation " << rs.next_innovation
      << " next_node " << rs.next_node_id << " next_species " << rs.next_species_id << " rng "
      << rs.rng_state << '\n';
  for (const auto& s : checkpoint.species) {
    out << "species " << s.id << " best " << format_hex(s.best_fitness_ever) << " staleness "
        << s.staleness << " members " << s.members.size();
    for (std::size_t m : s.members) out << ' ' << m;
    out << '\n';
  }
  for (std::size_t i = 0; i < checkpoint.population.size(); ++i)
    write_genome(out, i, checkpoint.population[i]);
}

Checkpoint read_checkpoint(std::istream& in) {
  Checkpoint cp;
  std::string text;
  std::size_t line_no = 0;
  bool have_run_state = false;
  Genome* current = nullptr;

  if (!std::getline(in, text) || text != kMagic) fail(1, "missing checkpoint header");
  ++line_no;
  while (std::getline(in, text)) {
    ++line_no;
    if (text.empty()) continue;
    std::istringstream ls(text);
    std::string kind;
    ls >> kind;
    if (kind == "run_state") {
      RunState& rs = cp.run_state;
      expect_keyword(ls, line_no, "generation");
      rs.generation = read_token<int>(ls, line_no, "generation");
      expect_keyword(ls, line_no, "threshold");
      rs.compat_threshold = read_hex(ls, line_no);
      expect_keyword(ls, line_no, "next_innovation");
      rs.next_innovation = read_token<int>(ls, line_no, "innovation");
      expect_keyword(ls, line_no, "next_node");
      rs.next_node_id = read_token<int>(ls, line_no, "node id");
      expect_keyword(ls, line_no, "next_species");
      rs.next_species_id = read_token<int>(ls, line_no, "species id");
      expect_keyword(ls, line_no, "rng");
      std::getline(ls >> std::ws, rs.rng_state);
      rng_from_string(rs.rng_state);
      have_run_state = true;
    } else if (kind == "species") {
      Species s;
      s.id = read_token<int>(ls, line_no, "species id");
      expect_keyword(ls, line_no, "best");
      s.best_fitness_ever = read_hex(ls, line_no);
      expect_keyword(ls, line_no, "staleness");
      s.staleness = read_token<int>(ls, line_no, "staleness");
      expect_keyword(ls, line_no, "members");
      const auto count = read_token<std::size_t>(ls, line_no, "member count");
      if (count == 0) fail(line_no, "species without members");
      for (std::size_t k = 0; k < count; ++k)
        s.members.push_back(read_token<std::size_t>(ls, line_no, "member index"));
      cp.species.push_back(std::move(s));
    } else if (kind == "genome") {
      const auto index = read_token<std::size_t>(ls, line_no, "genome index");
      if (index != cp.population.size()) fail(line_no, "genome index out of sequence");
      expect_keyword(ls, line_no, "fitness");
      cp.population.emplace_back();
      current = &cp.population.back();
      current->fitness = read_hex(ls, line_no);
    } else if (kind == "node" || kind == "conn") {
      if (current == nullptr) fail(line_no, kind + " before any genome header");
      if (kind == "node") {
        NodeGene n;
        n.id = read_token<int>(ls, line_no, "node id");
        auto kind_text = read_token<std::string>(ls, line_no, "node kind");
        try {
          n.kind = node_kind_from_string(kind_text.c_str());
        } catch (const FormatError& e) {
          fail(line_no, e.what());
        }
        current->nodes.push_back(n);
      } else {
        ConnectionGene c;
        c.innovation = read_token<int>(ls, line_no, "innovation");
        c.source = read_token<int>(ls, line_no, "source");
        c.target = read_token<int>(ls, line_no, "target");
        c.weight = read_hex(ls, line_no);
        const int enabled = read_token<int>(ls, line_no, "enabled flag");
        if (enabled != 0 && enabled != 1) fail(line_no, "enabled flag must be 0 or 1");
        c.enabled = enabled == 1;
        current->connections.push_back(c);
      }
    } else {
      fail(line_no, "unknown record '" + kind + "'");
    }
  }
  if (!have_run_state) fail(line_no, "missing run_state record");

  for (std::size_t i = 0; i < cp.population.size(); ++i) {
    try {
      validate(cp.population[i]);
    } catch (const StructuralError& e) {
      throw FormatError("checkpoint genome " + std::to_string(i) + ": " + e.what());
    }
  }
  for (auto& s : cp.species) {
    for (std::size_t m : s.members)
      if (m >= cp.population.size())
        throw FormatError("species " + std::to_string(s.id) + " references missing genome");
    s.representative = cp.population[s.members.front()];
  }
  return cp;
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    write_checkpoint(out, checkpoint);
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open checkpoint " + path.string());
  return read_checkpoint(in);
}

}  // namespace pixelneat::neat
