#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ptflab/distributions.hpp"
#include "ptflab/scalar.hpp"

namespace ptflab {

enum class LearnerKind { Iterative, Batch, SampleSearch };

std::string_view to_string(LearnerKind k) noexcept;
LearnerKind parse_learner(std::string_view s);

/// A sweep value that is either a number or a per-n rule:
/// "klmz" (batch alpha = 2/log2 n) or "log2sq" (Dirichlet alpha = ceil(log2(n)^2)).
struct AlphaSpec {
  std::string text;
  double resolve(std::uint64_t n) const;
  static AlphaSpec parse(std::string_view s);
};

struct ExperimentConfig {
  LearnerKind learner = LearnerKind::Iterative;
  std::vector<int> d{1};
  std::vector<std::uint64_t> n{256};
  std::vector<AlphaSpec> alpha{{"klmz"}};            // batch only
  RootModelKind model = RootModelKind::UniformRoots;  // instance roots
  std::vector<AlphaSpec> dirichlet_alpha{{"1"}};      // Dirichlet model only
  std::uint64_t trials = 1;
  std::uint64_t master_seed = 1;
  Backend backend = Backend::Float;
  bool random_leading = false;
  std::string out;  // CSV path; the aggregate goes to <out>.json

  void validate() const;
  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& j);
};

struct TrialRecord {
  std::uint64_t trial = 0;
  std::uint64_t seed_stream = 0;
  int d = 0;
  std::uint64_t n = 0;
  std::optional<double> alpha;
  LearnerKind learner = LearnerKind::Iterative;
  Backend backend = Backend::Float;
  std::uint64_t queries_total = 0;
  std::map<int, std::uint64_t> per_order;
  std::uint64_t rounds = 0;
  std::optional<std::uint64_t> z;
  std::string termination;  // "-", "exhaustive", "iterated", "a", "b", or "error:<Code>"
  bool correct = false;
  double wall_ms = 0.0;
  std::string error;
  /// Runs used at each level (iterative only).
  std::vector<std::size_t> segment_counts;
};

struct Stat {
  double mean = 0.0;
  double sem = 0.0;  // standard error of the mean
  double max = 0.0;
  nlohmann::json to_json() const { return {{"mean", mean}, {"stderr", sem}, {"max", max}}; }
  static Stat of(const std::vector<double>& xs);
};

struct CellAggregate {
  int d = 0;
  std::uint64_t n = 0;
  std::optional<double> alpha;
  std::uint64_t trials = 0;
  std::uint64_t failed = 0;  // learner error or label error
  /// Statistics are only reported when every trial in the cell succeeded.
  std::optional<Stat> queries, rounds, z;
  nlohmann::json to_json() const;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<TrialRecord> records;  // cell-major, trial order
  std::vector<CellAggregate> cells;
  bool passed() const;
  nlohmann::json aggregate_json() const;
  std::string csv() const;
};

/// Hardware concurrency, capped by PTF_LAB_THREADS when set.
unsigned worker_threads();

/// Runs every cell x trial. `threads` = 0 uses worker_threads().
ExperimentResult run(const ExperimentConfig& config, unsigned threads = 0);

/// Writes config.out (CSV) and config.out + ".json" when out is set.
void write_outputs(const ExperimentResult& result);

inline const char* kCsvHeader =
    "trial,seed_stream,d,n,alpha,learner,backend,queries_total,queries_order0,queries_order1,queries_order2,"
    "queries_order3,queries_order_rest,rounds,z,case,correct,wall_ms";

// ---- lower-bound verification grid

struct LowerBoundGrid {
  std::vector<int> interval_n{20};
  std::vector<int> missing_d{3, 4, 5};
  std::vector<int> missing_n{2, 3, 4, 5};
  std::vector<int> linear_d{2, 3, 4, 5};
  std::vector<int> multivariate_n{2, 10, 32};
  std::string fixtures_dir;  // when set, each witness is written as JSON there

  static LowerBoundGrid from_json(const nlohmann::json& j);
};

struct ReportLine {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Report {
  std::vector<ReportLine> lines;
  bool passed() const;
  std::string text() const;
  nlohmann::json to_json() const;
};

/// Roots -(d+1), ..., -2 used for the linear witness grid.
std::vector<Rational> default_linear_roots(int d);

Report verify_lower_bounds(const LowerBoundGrid& grid);

/// Checks sample_search cells of aggregate files against entropy floors:
/// mean queries >= log2 C(n+d, d) - 3 stderr for every cell, and for
/// Dirichlet cells also >= the Dirichlet-Multinomial entropy (exact when
/// enumerable, otherwise the flagged surrogate) - 3 stderr.
Report compare_entropy(const std::vector<nlohmann::json>& aggregates);
Report compare_entropy_files(const std::vector<std::string>& paths);

/// Rows d, n, bound of the iterative learner's query bound.
std::string print_bounds(const std::vector<int>& d, const std::vector<std::uint64_t>& n);

}  // namespace ptflab
