#include "ptflab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "ptflab/adversarial.hpp"
#include "ptflab/avgcase.hpp"
#include "ptflab/batch.hpp"
#include "ptflab/iterative.hpp"

namespace ptflab {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

std::string fmt_fixed(double v, int precision) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, precision);
  return std::string(buf, end);
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

struct Cell {
  int d;
  std::uint64_t n;
  std::optional<double> alpha;  // batch alpha or Dirichlet alpha
  double dirichlet_alpha;
};

std::vector<Cell> expand_cells(const ExperimentConfig& cfg) {
  std::vector<Cell> cells;
  const bool dirichlet = cfg.model == RootModelKind::DirichletGaps;
  for (int d : cfg.d) {
    for (std::uint64_t n : cfg.n) {
      if (cfg.learner == LearnerKind::Batch) {
        const double dir = dirichlet ? cfg.dirichlet_alpha.front().resolve(n) : 1.0;
        for (const auto& a : cfg.alpha) cells.push_back({d, n, a.resolve(n), dir});
      } else if (dirichlet) {
        for (const auto& a : cfg.dirichlet_alpha) {
          const double v = a.resolve(n);
          cells.push_back({d, n, v, v});
        }
      } else {
        cells.push_back({d, n, std::nullopt, 1.0});
      }
    }
  }
  return cells;
}

template <Scalar T>
void run_learner(const ExperimentConfig& cfg, const Cell& cell, std::span<const T> pts, const Polynomial<T>& hidden,
                 Rng& rng, TrialRecord& rec) {
  std::vector<Sign> labels;
  QueryLedger ledger;
  switch (cfg.learner) {
    case LearnerKind::Iterative: {
      Oracle<T> oracle(hidden, QuerySet::full(cell.d));
      auto res = learn_all<T>(pts, oracle);
      labels = std::move(res.labels);
      ledger = res.ledger;
      rec.segment_counts = res.segment_counts;
      rec.termination = "-";
      break;
    }
    case LearnerKind::Batch: {
      Oracle<T> oracle(hidden, QuerySet::full(cell.d));
      const auto params = BatchParams::make(cell.d, cell.n, *cell.alpha);
      auto res = batch_klmz<T>(pts, oracle, params, rng);
      labels = std::move(res.labels);
      ledger = res.ledger;
      rec.termination = res.exhaustive_at_entry ? "exhaustive" : "iterated";
      break;
    }
    case LearnerKind::SampleSearch: {
      Oracle<T> oracle(hidden, QuerySet::labels_only(cell.d));
      auto res = sample_and_search<T>(pts, oracle, cell.d, rng);
      labels = std::move(res.labels);
      ledger = oracle.ledger();
      rec.z = res.z;
      rec.termination = res.termination == SearchCase::Exhausted ? "a" : "b";
      break;
    }
  }
  rec.queries_total = ledger.total;
  rec.per_order = ledger.per_order;
  rec.rounds = ledger.rounds;

  rec.correct = labels.size() == pts.size();
  for (std::size_t i = 0; rec.correct && i < pts.size(); ++i) rec.correct = labels[i] == hidden.sign_at(pts[i]);
  if (!rec.correct) rec.error = "label mismatch against the hidden polynomial";
}

TrialRecord run_trial(const ExperimentConfig& cfg, const Cell& cell, std::uint64_t trial) {
  TrialRecord rec;
  rec.trial = trial;
  rec.d = cell.d;
  rec.n = cell.n;
  rec.alpha = cell.alpha;
  rec.learner = cfg.learner;
  rec.backend = cfg.backend;
  // Instances depend on (master, trial, d, n) only, so learners run on the
  // same config see the same instances.
  const std::uint64_t seed =
      stream_seed(stream_seed(cfg.master_seed, trial), (static_cast<std::uint64_t>(cell.d) << 40) ^ cell.n);
  rec.seed_stream = seed;

  const auto start = std::chrono::steady_clock::now();
  try {
    Rng inst(seed);
    const auto points = uniform_points(cell.n, inst);
    const RootModel model{cfg.model, cell.d, cell.dirichlet_alpha};
    const auto roots = sample_roots(model, inst);
    const Sign leading = cfg.random_leading && (inst() & 1) ? Sign::Minus : Sign::Plus;
    Rng learner_rng(mix64(seed ^ 0x6c8e9cf570932bd5ULL));

    if (cfg.backend == Backend::Exact) {
      std::vector<Rational> pts(points.begin(), points.end());
      run_learner<Rational>(cfg, cell, pts, polynomial_from_roots<Rational>(roots, leading), learner_rng, rec);
    } else {
      run_learner<double>(cfg, cell, points, polynomial_from_roots<double>(roots, leading), learner_rng, rec);
    }
  } catch (const Error& e) {
    rec.correct = false;
    rec.termination = "error:" + std::string(to_string(e.code()));
    rec.error = e.what();
  } catch (const std::exception& e) {
    rec.correct = false;
    rec.termination = "error:Internal";
    rec.error = e.what();
  }
  rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

nlohmann::json alpha_json(const std::optional<double>& a) { return a ? nlohmann::json(*a) : nlohmann::json(nullptr); }

}  // namespace

std::string_view to_string(LearnerKind k) noexcept {
  switch (k) {
    case LearnerKind::Iterative: return "iterative";
    case LearnerKind::Batch: return "batch";
    case LearnerKind::SampleSearch: return "sample_search";
  }
  return "unknown";
}

LearnerKind parse_learner(std::string_view s) {
  if (s == "iterative") return LearnerKind::Iterative;
  if (s == "batch") return LearnerKind::Batch;
  if (s == "sample_search" || s == "sample-search") return LearnerKind::SampleSearch;
  throw Error(ErrorCode::InvalidArgument, "unknown learner '" + std::string(s) + "'");
}

double AlphaSpec::resolve(std::uint64_t n) const {
  if (text == "klmz") return BatchParams::klmz_alpha(n);
  if (text == "log2sq") {
    const double l = std::log2(static_cast<double>(n));
    return std::ceil(l * l);
  }
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::InvalidArgument, "bad alpha '" + text + "'");
  }
  return v;
}

AlphaSpec AlphaSpec::parse(std::string_view s) {
  AlphaSpec a{std::string(s)};
  a.resolve(2);  // validates numbers
  return a;
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  if (d.empty() || n.empty()) throw Error(ErrorCode::InvalidArgument, "sweep lists must be non-empty");
  for (int v : d)
    if (v < 1) throw Error(ErrorCode::InvalidArgument, "d must be >= 1");
  for (auto v : n)
    if (v < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  if (learner == LearnerKind::Batch && alpha.empty()) throw Error(ErrorCode::InvalidArgument, "batch needs --alpha");
  if (model == RootModelKind::DirichletGaps && dirichlet_alpha.empty()) {
    throw Error(ErrorCode::InvalidArgument, "Dirichlet model needs --dirichlet-alpha");
  }
  for (const auto& a : alpha) AlphaSpec::parse(a.text);
  for (const auto& a : dirichlet_alpha) AlphaSpec::parse(a.text);
}

nlohmann::json ExperimentConfig::to_json() const {
  auto texts = [](const std::vector<AlphaSpec>& v) {
    std::vector<std::string> out;
    for (const auto& a : v) out.push_back(a.text);
    return out;
  };
  nlohmann::json j = {{"learner", std::string(to_string(learner))},
                      {"d", d},
                      {"n", n},
                      {"model", model == RootModelKind::UniformRoots ? "uniform" : "dirichlet"},
                      {"trials", trials},
                      {"seed", master_seed},
                      {"backend", std::string(to_string(backend))},
                      {"random_leading", random_leading},
                      {"out", out}};
  if (learner == LearnerKind::Batch) j["alpha"] = texts(alpha);
  if (model == RootModelKind::DirichletGaps) j["dirichlet_alpha"] = texts(dirichlet_alpha);
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  auto specs = [](const nlohmann::json& v) {
    std::vector<AlphaSpec> out;
    if (v.is_array()) {
      for (const auto& e : v) out.push_back(AlphaSpec::parse(e.is_string() ? e.get<std::string>() : fmt_double(e.get<double>())));
    } else {
      out.push_back(AlphaSpec::parse(v.is_string() ? v.get<std::string>() : fmt_double(v.get<double>())));
    }
    return out;
  };
  c.learner = parse_learner(j.at("learner").get<std::string>());
  c.d = j.at("d").is_array() ? j.at("d").get<std::vector<int>>() : std::vector<int>{j.at("d").get<int>()};
  c.n = j.at("n").is_array() ? j.at("n").get<std::vector<std::uint64_t>>()
                             : std::vector<std::uint64_t>{j.at("n").get<std::uint64_t>()};
  if (j.contains("alpha")) c.alpha = specs(j.at("alpha"));
  if (j.contains("model")) {
    const auto m = j.at("model").get<std::string>();
    if (m == "uniform") {
      c.model = RootModelKind::UniformRoots;
    } else if (m == "dirichlet") {
      c.model = RootModelKind::DirichletGaps;
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown model '" + m + "'");
    }
  }
  if (j.contains("dirichlet_alpha")) c.dirichlet_alpha = specs(j.at("dirichlet_alpha"));
  c.trials = j.value("trials", std::uint64_t{1});
  c.master_seed = j.value("seed", std::uint64_t{1});
  c.backend = parse_backend(j.value("backend", std::string("float")));
  c.random_leading = j.value("random_leading", false);
  c.out = j.value("out", std::string());
  c.validate();
  return c;
}

Stat Stat::of(const std::vector<double>& xs) {
  Stat s;
  if (xs.empty()) return s;
  double sum = 0.0;
  s.max = xs.front();
  for (double x : xs) {
    sum += x;
    s.max = std::max(s.max, x);
  }
  s.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.sem = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
  }
  return s;
}

nlohmann::json CellAggregate::to_json() const {
  auto opt = [](const std::optional<Stat>& s) { return s ? s->to_json() : nlohmann::json(nullptr); };
  return {{"d", d},         {"n", n},           {"alpha", alpha_json(alpha)}, {"trials", trials},
          {"failed", failed}, {"valid", failed == 0}, {"queries", opt(queries)},   {"rounds", opt(rounds)},
          {"z", opt(z)}};
}

bool ExperimentResult::passed() const {
  return std::all_of(records.begin(), records.end(), [](const TrialRecord& r) { return r.correct; });
}

nlohmann::json ExperimentResult::aggregate_json() const {
  nlohmann::json cells_j = nlohmann::json::array();
  for (const auto& c : cells) cells_j.push_back(c.to_json());
  return {{"config", config.to_json()}, {"cells", cells_j}, {"passed", passed()}};
}

std::string ExperimentResult::csv() const {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const auto& r : records) {
    nlohmann::json rest = nlohmann::json::object();
    for (const auto& [o, c] : r.per_order)
      if (o > 3) rest[std::to_string(o)] = c;
    auto order = [&](int o) {
      auto it = r.per_order.find(o);
      return it == r.per_order.end() ? std::uint64_t{0} : it->second;
    };
    os << r.trial << ',' << r.seed_stream << ',' << r.d << ',' << r.n << ',' << (r.alpha ? fmt_double(*r.alpha) : "")
       << ',' << to_string(r.learner) << ',' << to_string(r.backend) << ',' << r.queries_total;
    for (int o = 0; o < 4; ++o) os << ',' << order(o);
    os << ',' << (rest.empty() ? std::string() : csv_quote(rest.dump())) << ',' << r.rounds << ','
       << (r.z ? std::to_string(*r.z) : "") << ',' << r.termination << ',' << (r.correct ? "true" : "false") << ','
       << fmt_fixed(r.wall_ms, 3) << '\n';
  }
  return os.str();
}

unsigned worker_threads() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PTF_LAB_THREADS")) {
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(env, env + std::char_traits<char>::length(env), v);
    if (ec == std::errc() && v > 0) return std::min(v, hw);
  }
  return hw;
}

ExperimentResult run(const ExperimentConfig& config, unsigned threads) {
  config.validate();
  ExperimentResult result;
  result.config = config;
  const auto cells = expand_cells(config);
  const std::size_t total = cells.size() * config.trials;
  result.records.resize(total);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      const auto& cell = cells[i / config.trials];
      result.records[i] = run_trial(config, cell, i % config.trials);
    }
  };
  const unsigned nthreads = std::min<std::size_t>(threads ? threads : worker_threads(), std::max<std::size_t>(total, 1));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
  }

  for (std::size_t c = 0; c < cells.size(); ++c) {
    CellAggregate agg;
    agg.d = cells[c].d;
    agg.n = cells[c].n;
    agg.alpha = cells[c].alpha;
    agg.trials = config.trials;
    std::vector<double> q, r, z;
    for (std::uint64_t t = 0; t < config.trials; ++t) {
      const auto& rec = result.records[c * config.trials + t];
      if (!rec.correct) ++agg.failed;
      q.push_back(static_cast<double>(rec.queries_total));
      r.push_back(static_cast<double>(rec.rounds));
      if (rec.z) z.push_back(static_cast<double>(*rec.z));
    }
    if (agg.failed == 0) {
      agg.queries = Stat::of(q);
      agg.rounds = Stat::of(r);
      if (!z.empty()) agg.z = Stat::of(z);
    }
    result.cells.push_back(agg);
  }
  return result;
}

void write_outputs(const ExperimentResult& result) {
  const auto& out = result.config.out;
  if (out.empty()) return;
  std::ofstream csv(out);
  if (!csv) throw Error(ErrorCode::Io, "cannot write " + out);
  csv << result.csv();
  std::ofstream js(out + ".json");
  if (!js) throw Error(ErrorCode::Io, "cannot write " + out + ".json");
  js << result.aggregate_json().dump(2) << '\n';
}

// ---- reports

bool Report::passed() const {
  return std::all_of(lines.begin(), lines.end(), [](const ReportLine& l) { return l.passed; });
}

std::string Report::text() const {
  std::ostringstream os;
  for (const auto& l : lines) os << (l.passed ? "PASS " : "FAIL ") << l.name << (l.detail.empty() ? "" : "  ") << l.detail << '\n';
  return os.str();
}

nlohmann::json Report::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& l : lines) arr.push_back({{"name", l.name}, {"passed", l.passed}, {"detail", l.detail}});
  return {{"lines", arr}, {"passed", passed()}};
}

LowerBoundGrid LowerBoundGrid::from_json(const nlohmann::json& j) {
  LowerBoundGrid g;
  if (j.contains("interval_n")) g.interval_n = j.at("interval_n").get<std::vector<int>>();
  if (j.contains("missing_d")) g.missing_d = j.at("missing_d").get<std::vector<int>>();
  if (j.contains("missing_n")) g.missing_n = j.at("missing_n").get<std::vector<int>>();
  if (j.contains("linear_d")) g.linear_d = j.at("linear_d").get<std::vector<int>>();
  if (j.contains("multivariate_n")) g.multivariate_n = j.at("multivariate_n").get<std::vector<int>>();
  if (j.contains("fixtures_dir")) g.fixtures_dir = j.at("fixtures_dir").get<std::string>();
  return g;
}

std::vector<Rational> default_linear_roots(int d) {
  std::vector<Rational> roots;
  for (int i = d + 1; i >= 2; --i) roots.emplace_back(-i);
  return roots;
}

Report verify_lower_bounds(const LowerBoundGrid& grid) {
  Report rep;
  auto save = [&](const std::string& name, const nlohmann::json& j) {
    if (grid.fixtures_dir.empty()) return;
    std::filesystem::create_directories(grid.fixtures_dir);
    std::ofstream f(std::filesystem::path(grid.fixtures_dir) / (name + ".json"));
    if (!f) throw Error(ErrorCode::Io, "cannot write fixture " + name);
    f << j.dump(2) << '\n';
  };
  auto univariate = [&](const std::string& name, auto build) {
    ReportLine line{name, false, ""};
    try {
      const Witness w = build();
      const auto check = verify(w);
      const auto inferred = withheld_inferences(w);
      line.passed = check.ok() && inferred == 0;
      line.detail = std::to_string(w.points.size()) + " points, " + std::to_string(w.alternatives.size()) +
                    " alternatives, withheld points inferred: " + std::to_string(inferred);
      if (!check.ok()) line.detail += "; " + check.failures.front();
      save(name, w.to_json());
    } catch (const Error& e) {
      line.detail = e.what();
    }
    rep.lines.push_back(std::move(line));
  };

  for (int n : grid.interval_n) univariate("interval_n" + std::to_string(n), [n] { return interval_witness(n); });
  for (int d : grid.missing_d)
    for (int n : grid.missing_n)
      univariate("missing_derivative_d" + std::to_string(d) + "_n" + std::to_string(n),
                 [d, n] { return missing_derivative_witness(d, n); });
  for (int d : grid.linear_d)
    univariate("linear_d" + std::to_string(d), [d] { return linear_lower_witness(default_linear_roots(d)); });
  for (int n : grid.multivariate_n) {
    ReportLine line{"multivariate_n" + std::to_string(n), false, ""};
    try {
      const auto r = multivariate_witness(n);
      line.passed = r.passed();
      line.detail = "c1=" + fmt_double(r.c1) + " c2=" + fmt_double(r.c2) + " base=" + (r.use_h_prime ? "h'" : "h") +
                    " selected=" + std::to_string(r.selected.size());
      if (!r.passed()) line.detail += "; " + r.failures.front();
      save(line.name, r.to_json());
    } catch (const Error& e) {
      line.detail = e.what();
    }
    rep.lines.push_back(std::move(line));
  }
  return rep;
}

Report compare_entropy(const std::vector<nlohmann::json>& aggregates) {
  Report rep;
  for (const auto& agg : aggregates) {
    const auto& cfg = agg.at("config");
    if (parse_learner(cfg.at("learner").get<std::string>()) != LearnerKind::SampleSearch) continue;
    const bool dirichlet = cfg.value("model", std::string("uniform")) == "dirichlet";
    for (const auto& cell : agg.at("cells")) {
      const int d = cell.at("d").get<int>();
      const auto n = cell.at("n").get<std::uint64_t>();
      std::string name = "sample_search d=" + std::to_string(d) + " n=" + std::to_string(n) +
                         (dirichlet ? " dir(" + fmt_double(cell.at("alpha").get<double>()) + ")" : " uniform");
      if (cell.at("queries").is_null()) {
        rep.lines.push_back({name, false, "cell has failed trials; no statistics"});
        continue;
      }
      const double mean = cell.at("queries").at("mean").get<double>();
      const double se = cell.at("queries").at("stderr").get<double>();
      auto check = [&](const std::string& what, double bound) {
        std::ostringstream os;
        os << "mean=" << fmt_fixed(mean, 3) << " stderr=" << fmt_fixed(se, 3) << " " << what << "="
           << fmt_fixed(bound, 3);
        rep.lines.push_back({name, mean >= bound - 3.0 * se, os.str()});
      };
      check("log2C(n+d,d)", entropy_lower_bound_uniform(n, static_cast<std::uint64_t>(d)));
      if (dirichlet) {
        const auto b = entropy_lower_bound_dirichlet(n, d, cell.at("alpha").get<double>());
        check(b.surrogate ? "surrogate(d-1)log2n" : "H(DirMult)", b.bits);
      }
    }
  }
  return rep;
}

Report compare_entropy_files(const std::vector<std::string>& paths) {
  std::vector<nlohmann::json> aggs;
  for (const auto& p : paths) {
    std::ifstream f(p);
    if (!f) throw Error(ErrorCode::Io, "cannot read " + p);
    try {
      aggs.push_back(nlohmann::json::parse(f));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::InvalidArgument, p + ": " + e.what());
    }
  }
  return compare_entropy(aggs);
}

std::string print_bounds(const std::vector<int>& d, const std::vector<std::uint64_t>& n) {
  std::ostringstream os;
  os << "d\tn\tceil_log2_n\tquery_bound\n";
  for (int dv : d)
    for (auto nv : n) os << dv << '\t' << nv << '\t' << ceil_log2(nv) << '\t' << iterative_query_bound(dv, nv) << '\n';
  return os.str();
}

}  // namespace ptflab
