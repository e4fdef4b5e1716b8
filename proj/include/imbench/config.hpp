#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "imbench/csv.hpp"
#include "imbench/estimators.hpp"
#include "imbench/graph.hpp"
#include "imbench/prng.hpp"

namespace imbench {

inline constexpr std::uint32_t kConfigVersion = 1;
inline constexpr const char* kToolVersion = "imbench 1.0.0";

/// Sample-number grid: powers of two, powers of two with 3*2^i half steps,
/// or an explicit list. Values are always returned sorted ascending.
struct GridSpec {
  enum class Kind { pow2, pow2h, list };

  Kind kind = Kind::pow2;
  std::uint32_t lo = 0, hi = 10;   // exponents for pow2/pow2h
  std::vector<std::uint64_t> raw;  // for list

  std::vector<std::uint64_t> values() const {
    std::set<std::uint64_t> vals;
    switch (kind) {
      case Kind::pow2:
        for (std::uint32_t e = lo; e <= hi; ++e)
          vals.insert(std::uint64_t{1} << e);
        break;
      case Kind::pow2h:
        for (std::uint32_t e = lo; e <= hi; ++e)
          vals.insert(std::uint64_t{1} << e);
        for (std::uint32_t e = lo; e + 1 < hi; ++e)
          vals.insert(std::uint64_t{3} << e);
        break;
      case Kind::list:
        vals.insert(raw.begin(), raw.end());
        break;
    }
    if (vals.empty() || *vals.begin() == 0)
      throw std::invalid_argument("sample-number grid must be positive");
    return {vals.begin(), vals.end()};
  }

  static GridSpec parse(std::string_view text);
  std::string to_string() const;
};

/// Where the influence graph comes from.
struct GraphSource {
  enum class Kind { edge_list, ba, snapshot };

  Kind kind = Kind::edge_list;
  std::string path;                      // edge_list / snapshot
  std::uint32_t ba_n = 0, ba_attach = 0;  // ba
  std::uint64_t ba_seed = 0;

  static GraphSource parse(std::string_view text);
  std::string to_string() const;
};

/// Declarative experiment description; see README for the file grammar.
struct ExperimentConfig {
  std::string name = "experiment";
  GraphSource source;
  Directedness directed = Directedness::directed;
  std::optional<ProbabilityScheme> scheme = ProbabilityScheme::uniform(0.1);
  std::vector<EstimatorKind::Approach> algorithms = {
      EstimatorKind::Approach::oneshot, EstimatorKind::Approach::snapshot,
      EstimatorKind::Approach::ris};
  std::vector<std::uint32_t> seed_counts = {1};  // k values
  std::uint32_t trials = 1000;
  std::uint64_t experiment_seed = 1;
  GridSpec default_grid;
  std::optional<GridSpec> grid_oneshot, grid_snapshot, grid_ris;
  std::uint64_t evaluator_size = 1000000;
  std::uint64_t evaluator_seed = 7;
  std::string output_dir;
  std::string cache_dir;  // defaults to <output>/cache
  unsigned workers = 0;   // 0 = hardware concurrency
  double time_budget_seconds = 0.0;  // 0 = unlimited

  const GridSpec& grid_for(EstimatorKind::Approach approach) const {
    switch (approach) {
      case EstimatorKind::Approach::oneshot:
        return grid_oneshot ? *grid_oneshot : default_grid;
      case EstimatorKind::Approach::snapshot:
        return grid_snapshot ? *grid_snapshot : default_grid;
      case EstimatorKind::Approach::ris:
        return grid_ris ? *grid_ris : default_grid;
    }
    return default_grid;
  }

  std::string effective_cache_dir() const {
    return cache_dir.empty() ? output_dir + "/cache" : cache_dir;
  }

  void validate() const {
    if (output_dir.empty()) throw std::invalid_argument("output is required");
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (algorithms.empty())
      throw std::invalid_argument("at least one algorithm is required");
    if (seed_counts.empty())
      throw std::invalid_argument("at least one k value is required");
    if (evaluator_size < 1)
      throw std::invalid_argument("evaluator_size must be >= 1");
    default_grid.values();
    for (const auto& g : {grid_oneshot, grid_snapshot, grid_ris})
      if (g) g->values();
  }

  /// Canonical text form; also the basis of the config hash. Output
  /// location and worker count are execution details and excluded from the
  /// hash so that reruns elsewhere are recognizably the same experiment.
  std::string normalized() const;
  std::uint64_t hash() const {
    const std::string text = normalized();
    std::uint64_t h = detail::mix64(0xc0f1c0f1ULL);
    for (const char c : text)
      h = detail::mix64(h ^ static_cast<unsigned char>(c));
    return h;
  }

  static ExperimentConfig parse(std::istream& in);
  static ExperimentConfig parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in.good())
      throw std::runtime_error("cannot open config file: " + path);
    return parse(in);
  }
};

// ---------------------------------------------------------------------------

inline GridSpec GridSpec::parse(std::string_view text) {
  GridSpec spec;
  auto next_token = [&](std::string_view& rest) {
    const auto colon = rest.find(':');
    std::string_view token = rest.substr(0, colon);
    rest = colon == std::string_view::npos ? std::string_view{}
                                           : rest.substr(colon + 1);
    return token;
  };
  std::string_view rest = text;
  const std::string_view head = next_token(rest);
  auto parse_u64 = [](std::string_view token) {
    std::uint64_t value = 0;
    const auto res =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
      throw std::invalid_argument("bad number in grid spec");
    return value;
  };
  if (head == "pow2" || head == "pow2h") {
    spec.kind = head == "pow2" ? Kind::pow2 : Kind::pow2h;
    spec.lo = static_cast<std::uint32_t>(parse_u64(next_token(rest)));
    spec.hi = static_cast<std::uint32_t>(parse_u64(next_token(rest)));
    if (spec.lo > spec.hi || spec.hi > 40)
      throw std::invalid_argument("bad exponent range in grid spec");
  } else if (head == "list") {
    spec.kind = Kind::list;
    std::string csv(rest);
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) spec.raw.push_back(parse_u64(item));
    if (spec.raw.empty())
      throw std::invalid_argument("empty grid list");
  } else {
    throw std::invalid_argument("unknown grid kind: " + std::string(head));
  }
  return spec;
}

inline std::string GridSpec::to_string() const {
  switch (kind) {
    case Kind::pow2:
      return "pow2:" + std::to_string(lo) + ":" + std::to_string(hi);
    case Kind::pow2h:
      return "pow2h:" + std::to_string(lo) + ":" + std::to_string(hi);
    case Kind::list: {
      std::string out = "list:";
      for (std::size_t i = 0; i < raw.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(raw[i]);
      }
      return out;
    }
  }
  return "?";
}

inline GraphSource GraphSource::parse(std::string_view text) {
  GraphSource src;
  if (text.starts_with("file:")) {
    src.kind = Kind::edge_list;
    src.path = std::string(text.substr(5));
  } else if (text.starts_with("snapshot:")) {
    src.kind = Kind::snapshot;
    src.path = std::string(text.substr(9));
  } else if (text.starts_with("ba:")) {
    src.kind = Kind::ba;
    std::string spec(text.substr(3));
    std::replace(spec.begin(), spec.end(), ':', ' ');
    std::istringstream ss(spec);
    if (!(ss >> src.ba_n >> src.ba_attach >> src.ba_seed))
      throw std::invalid_argument("graph = ba:<n>:<attach>:<seed>");
  } else {
    throw std::invalid_argument(
        "graph must be file:<path>, snapshot:<path>, or ba:<n>:<attach>:<seed>");
  }
  return src;
}

inline std::string GraphSource::to_string() const {
  switch (kind) {
    case Kind::edge_list: return "file:" + path;
    case Kind::snapshot: return "snapshot:" + path;
    case Kind::ba:
      return "ba:" + std::to_string(ba_n) + ":" + std::to_string(ba_attach) +
             ":" + std::to_string(ba_seed);
  }
  return "?";
}

namespace detail {

inline ProbabilityScheme parse_scheme(std::string_view text) {
  if (text == "iwc") return ProbabilityScheme::in_degree_weighted();
  if (text == "owc") return ProbabilityScheme::out_degree_weighted();
  if (text.starts_with("uc:")) {
    const std::string num(text.substr(3));
    return ProbabilityScheme::uniform(std::stod(num));
  }
  throw std::invalid_argument("scheme must be uc:<p>, iwc, owc, or none");
}

inline EstimatorKind::Approach parse_approach(std::string_view text) {
  if (text == "oneshot") return EstimatorKind::Approach::oneshot;
  if (text == "snapshot") return EstimatorKind::Approach::snapshot;
  if (text == "ris") return EstimatorKind::Approach::ris;
  throw std::invalid_argument("unknown algorithm: " + std::string(text));
}

}  // namespace detail

inline ExperimentConfig ExperimentConfig::parse(std::istream& in) {
  ExperimentConfig cfg;
  bool have_graph = false;
  std::string line;
  std::uint64_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line.resize(hash_pos);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    const std::string trimmed = trim(line);
    if (trimmed.empty()) continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(line_number) +
                               ": expected key = value");
    const std::string key = trim(trimmed.substr(0, eq));
    const std::string value = trim(trimmed.substr(eq + 1));

    auto split_list = [&](const std::string& text) {
      std::vector<std::string> items;
      std::stringstream ss(text);
      std::string item;
      while (std::getline(ss, item, ','))
        if (!trim(item).empty()) items.push_back(trim(item));
      return items;
    };

    try {
      if (key == "version") {
        if (std::stoul(value) != kConfigVersion)
          throw std::invalid_argument("unsupported config version");
      } else if (key == "name") {
        cfg.name = value;
      } else if (key == "graph") {
        cfg.source = GraphSource::parse(value);
        have_graph = true;
      } else if (key == "directed") {
        cfg.directed = (value == "true" || value == "1")
                           ? Directedness::directed
                           : Directedness::undirected;
      } else if (key == "scheme") {
        if (value == "none")
          cfg.scheme.reset();
        else
          cfg.scheme = detail::parse_scheme(value);
      } else if (key == "algorithms") {
        cfg.algorithms.clear();
        for (const auto& item : split_list(value))
          cfg.algorithms.push_back(detail::parse_approach(item));
      } else if (key == "k") {
        cfg.seed_counts.clear();
        for (const auto& item : split_list(value))
          cfg.seed_counts.push_back(
              static_cast<std::uint32_t>(std::stoul(item)));
      } else if (key == "trials") {
        cfg.trials = static_cast<std::uint32_t>(std::stoul(value));
      } else if (key == "seed") {
        cfg.experiment_seed = std::stoull(value);
      } else if (key == "grid") {
        cfg.default_grid = GridSpec::parse(value);
      } else if (key == "grid.oneshot") {
        cfg.grid_oneshot = GridSpec::parse(value);
      } else if (key == "grid.snapshot") {
        cfg.grid_snapshot = GridSpec::parse(value);
      } else if (key == "grid.ris") {
        cfg.grid_ris = GridSpec::parse(value);
      } else if (key == "evaluator_size") {
        cfg.evaluator_size = std::stoull(value);
      } else if (key == "evaluator_seed") {
        cfg.evaluator_seed = std::stoull(value);
      } else if (key == "output") {
        cfg.output_dir = value;
      } else if (key == "cache_dir") {
        cfg.cache_dir = value;
      } else if (key == "workers") {
        cfg.workers = static_cast<unsigned>(std::stoul(value));
      } else if (key == "time_budget_seconds") {
        cfg.time_budget_seconds = std::stod(value);
      } else {
        throw std::invalid_argument("unknown key");
      }
    } catch (const std::exception& e) {
      throw std::runtime_error("config line " + std::to_string(line_number) +
                               " (" + key + "): " + e.what());
    }
  }
  if (!have_graph) throw std::runtime_error("config is missing a graph source");
  cfg.validate();
  return cfg;
}

inline std::string ExperimentConfig::normalized() const {
  std::ostringstream out;
  out << "version = " << kConfigVersion << "\n";
  out << "name = " << name << "\n";
  out << "graph = " << source.to_string() << "\n";
  out << "directed = "
      << (directed == Directedness::directed ? "true" : "false") << "\n";
  out << "scheme = " << (scheme ? scheme->label() : std::string("none"))
      << "\n";
  out << "algorithms = ";
  for (std::size_t i = 0; i < algorithms.size(); ++i)
    out << (i ? "," : "") << EstimatorKind{algorithms[i], 1}.approach_name();
  out << "\n";
  out << "k = ";
  for (std::size_t i = 0; i < seed_counts.size(); ++i)
    out << (i ? "," : "") << seed_counts[i];
  out << "\n";
  out << "trials = " << trials << "\n";
  out << "seed = " << experiment_seed << "\n";
  out << "grid = " << default_grid.to_string() << "\n";
  if (grid_oneshot) out << "grid.oneshot = " << grid_oneshot->to_string() << "\n";
  if (grid_snapshot)
    out << "grid.snapshot = " << grid_snapshot->to_string() << "\n";
  if (grid_ris) out << "grid.ris = " << grid_ris->to_string() << "\n";
  out << "evaluator_size = " << evaluator_size << "\n";
  out << "evaluator_seed = " << evaluator_seed << "\n";
  out << "time_budget_seconds = " << format_double(time_budget_seconds)
      << "\n";
  return out.str();
}

}  // namespace imbench
