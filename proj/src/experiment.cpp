#include "hsfroute/experiment.hpp"

#include "hsfroute/errors.hpp"
#include "hsfroute/io.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <mutex>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <thread>

namespace hsfroute {

std::string to_string(Mode m) {
  switch (m) {
  case Mode::Simulate: return "simulate";
  case Mode::Verify: return "verify";
  case Mode::Trace: return "trace";
  }
  return "?";
}

Mode parse_mode(const std::string &s) {
  if (s == "simulate") return Mode::Simulate;
  if (s == "verify") return Mode::Verify;
  if (s == "trace") return Mode::Trace;
  throw UsageError("unknown mode '" + s + "' (expected simulate, verify or trace)");
}

void ExperimentSpec::validate() const {
  try {
    grid.validate();
  } catch (const ConfigError &e) {
    throw UsageError(e.what());
  }
  if (fault_pcts.empty()) throw UsageError("at least one fault percentage is required");
  for (double p : fault_pcts) {
    if (!(p >= 0.0 && p < 100.0)) throw UsageError("fault percentage must lie in [0,100)");
  }
  if (runs < 1) throw UsageError("runs must be at least 1");
  if (jobs < 1) throw UsageError("jobs must be at least 1");
  if (mode == Mode::Trace && !trace_dst) throw UsageError("trace mode needs --trace-dst x,y");
  if (trace_dst) {
    const Coord c = *trace_dst;
    if (c.x < 0 || c.y < 0 || c.x >= grid.width || c.y >= grid.height) {
      throw UsageError("--trace-dst " + to_string(c) + " is outside the grid");
    }
  }
}

std::filesystem::path default_out_dir() {
  if (const char *env = std::getenv("HSFROUTE_OUT_DIR"); env && *env) return env;
  return "results";
}

namespace {

Coord parse_coord(const std::string &s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw UsageError("expected x,y but got '" + s + "'");
  try {
    std::size_t n1 = 0, n2 = 0;
    const std::string xs = s.substr(0, comma), ys = s.substr(comma + 1);
    const int x = std::stoi(xs, &n1);
    const int y = std::stoi(ys, &n2);
    if (n1 != xs.size() || n2 != ys.size()) throw std::invalid_argument(s);
    return {x, y};
  } catch (const std::exception &) {
    throw UsageError("expected x,y but got '" + s + "'");
  }
}

} // namespace

ExperimentSpec parse_args(int argc, const char *const *argv, bool *help_requested) {
  if (help_requested) *help_requested = false;
  ExperimentSpec spec;
  spec.out_dir = default_out_dir();

  CLI::App app{"HSF controller-network fault-tolerant routing simulator", "hsfroute"};
  app.set_config("--config", "", "TOML/INI file mirroring the long flags");
  std::string model = "rf", mode = "simulate", trace_dst, out, faults_file;
  app.add_option("--width", spec.grid.width, "Grid width (odd, >= 5)");
  app.add_option("--height", spec.grid.height, "Grid height (odd, >= 5)");
  app.add_option("--model", model, "Fault model: rf or cf");
  app.add_option("--fault-pct", spec.fault_pcts, "Fault percentage (repeatable)")
      ->take_all();
  app.add_option("--runs", spec.runs, "Runs per fault percentage");
  app.add_option("--seed", spec.seed, "Base seed; run i uses seed+i");
  app.add_option("--out", out, "Output directory");
  app.add_option("--mode", mode, "simulate, verify or trace");
  app.add_option("--trace-dst", trace_dst, "Trace destination x,y");
  app.add_option("--faults-file", faults_file, "JSON fault set to use instead of sampling");
  app.add_option("--jobs", spec.jobs, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &) {
    if (help_requested) *help_requested = true;
    throw UsageError(app.help());
  } catch (const CLI::ParseError &e) {
    throw UsageError(e.what());
  }
  try {
    spec.model = parse_fault_model(model);
  } catch (const Error &e) {
    throw UsageError(e.what());
  }
  spec.mode = parse_mode(mode);
  if (!out.empty()) spec.out_dir = out;
  if (!trace_dst.empty()) spec.trace_dst = parse_coord(trace_dst);
  if (!faults_file.empty()) spec.faults_file = faults_file;
  spec.validate();
  return spec;
}

FaultSet sample_faults(const NetworkConfig &grid, FaultModel model, double pct,
                       std::uint64_t seed) {
  Rng rng(seed);
  const int count = fault_count_for_percent(grid, pct);
  FaultSet set;
  set.model = model;
  if (count == 0) {
    set.seed = seed;
    return set;
  }
  set = model == FaultModel::Random
                     ? sample_random_fault_count(grid, count, rng)
                     : sample_correlated_faults(grid, count, std::nullopt, rng);
  set.seed = seed;
  return set;
}

RunOutcome run_configuration(const Network &net, const FaultSet &faults, double pct,
                             bool simulate) {
  RunOutcome out;
  out.faults = faults;
  std::optional<FaultConfiguration> cfg;
  try {
    cfg = build_fault_configuration(net, faults);
  } catch (const Error &e) {
    out.report.width = net.width();
    out.report.height = net.height();
    out.report.config_error = std::string("BoundaryClash: ") + e.what();
    out.error = out.report.config_error;
    return out;
  }
  out.report = verify_all_routes(net, *cfg);
  if (!simulate) return out;
  try {
    SimOptions opts;
    opts.params = {faults.model, pct, faults.seed, static_cast<int>(faults.size())};
    out.metrics = run_simulation(net, *cfg, opts);
  } catch (const Error &e) {
    out.error = e.what();
  }
  return out;
}

std::vector<RunOutcome> run_point(const Network &net, FaultModel model, double pct,
                                  std::uint64_t seed, int count, int jobs, bool simulate) {
  std::vector<RunOutcome> out(static_cast<std::size_t>(count));
  auto one = [&](int i) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
    out[static_cast<std::size_t>(i)] =
        run_configuration(net, sample_faults(net.config(), model, pct, s), pct, simulate);
  };
  if (jobs <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) one(i);
    return out;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> pool;
  for (int t = 0; t < std::min(jobs, count); ++t) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          one(i);
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto &t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

namespace {

std::string pct_tag(double pct) {
  std::string s = format_fixed(pct);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  for (char &c : s) if (c == '.') c = 'p';
  return s;
}

std::string path_string(const Path &p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += " -> ";
    s += to_string(p[i]);
  }
  return s;
}

int run_trace(const ExperimentSpec &spec, const Network &net, std::ostream &log) {
  FaultSet faults;
  if (spec.faults_file) faults = load_fault_set(*spec.faults_file, spec.grid);
  const FaultConfiguration cfg = build_fault_configuration(net, faults);
  const Coord dst = *spec.trace_dst;

  write_file(spec.out_dir / "grid.txt", render_ascii(cfg.classification()));
  write_file(spec.out_dir / "network.dot", to_dot(net));

  FtRoute data;
  try {
    data = trace_ft(net.input_gw(), dst, cfg, net, PacketKind::Directive);
  } catch (const Error &e) {
    log << "directive to " << to_string(dst) << " failed: " << e.what() << '\n';
    return kExitViolation;
  }
  std::string jsonl = trace_to_jsonl(data, PacketKind::Directive);
  log << "directive: " << path_string(data.path) << " (" << data.path.size() - 1 << " hops)\n";

  const Coord src = ack_source(data.path);
  try {
    const FtRoute ack = trace_ft(src, net.ack_gw(), cfg, net, PacketKind::Ack);
    jsonl += trace_to_jsonl(ack, PacketKind::Ack);
    log << "ack:       " << path_string(ack.path) << " (" << ack.path.size() - 1 << " hops)\n";
  } catch (const Error &e) {
    write_file(spec.out_dir / "trace.jsonl", jsonl);
    log << "ack from " << to_string(src) << " failed: " << e.what() << '\n';
    return kExitViolation;
  }
  write_file(spec.out_dir / "trace.jsonl", jsonl);
  write_file(spec.out_dir / "path.json", path_to_json(data.path) + "\n");
  return kExitOk;
}

int run_verify(const ExperimentSpec &spec, const Network &net, std::ostream &log) {
  if (spec.faults_file) {
    const FaultSet faults = load_fault_set(*spec.faults_file, spec.grid);
    const Report rep = verify_fault_set(net, faults);
    write_file(spec.out_dir / "report.json", report_to_json(rep) + "\n");
    try {
      const FaultConfiguration cfg = build_fault_configuration(net, faults);
      write_file(spec.out_dir / "grid.txt", render_ascii(cfg.classification()));
      write_file(spec.out_dir / "cdg.dot", to_dot(build_cdg(net, cfg)));
    } catch (const Error &) {
      // report.json already carries the failure
    }
    log << rep.delivered.size() << " delivered, " << rep.violations() << " violations\n";
    if (!rep.config_error.empty()) log << rep.config_error << '\n';
    return rep.ok() ? kExitOk : kExitViolation;
  }

  std::size_t total_violations = 0;
  std::string reports = "[\n";
  bool first = true;
  for (double pct : spec.fault_pcts) {
    const auto outcomes = run_point(net, spec.model, pct, spec.seed, spec.runs, spec.jobs, false);
    std::size_t violations = 0, delivered = 0;
    for (const RunOutcome &o : outcomes) {
      violations += o.report.violations();
      delivered += o.report.delivered.size();
      if (!first) reports += ",\n";
      first = false;
      reports += report_to_json(o.report);
    }
    total_violations += violations;
    log << to_string(spec.model) << ' ' << format_fixed(pct) << "%: " << outcomes.size()
        << " configurations, ";
    if (outcomes.size() == 1) {
      log << delivered << " delivered, ";
    } else {
      log << format_fixed(static_cast<double>(delivered) / outcomes.size()) << " delivered on average, ";
    }
    log << violations << " violations\n";
  }
  reports += "\n]\n";
  write_file(spec.out_dir / "report.json", reports);
  return total_violations == 0 ? kExitOk : kExitViolation;
}

int run_simulate(const ExperimentSpec &spec, const Network &net, std::ostream &log) {
  const auto baseline = baseline_hops(net);
  std::vector<ResultRow> rows;
  std::vector<Summary> summaries;
  std::size_t total_violations = 0;

  auto emit = [&](double pct, const std::vector<RunOutcome> &outcomes) {
    std::vector<RunMetrics> metrics;
    std::size_t violations = 0;
    for (const RunOutcome &o : outcomes) {
      violations += o.report.violations();
      if (o.metrics) {
        metrics.push_back(*o.metrics);
        rows.push_back(to_result_row(*o.metrics));
      } else {
        ++violations;
        log << "seed " << o.faults.seed << ": " << o.error << '\n';
      }
    }
    total_violations += violations;
    if (metrics.empty()) return;
    Summary s = aggregate(metrics);
    const auto hist = path_length_histogram(metrics, baseline);
    write_file(spec.out_dir / (std::string("histogram_") + to_string(spec.model) + "_" + pct_tag(pct) + ".csv"),
               histogram_to_csv(hist));
    log << to_string(spec.model) << ' ' << format_fixed(pct) << "%: mean hops "
        << format_fixed(s.mean_hops) << ", spanned " << format_fixed(s.spanned_fraction)
        << ", unaffected " << format_fixed(unaffected_fraction(hist)) << ", violations "
        << violations << '\n';
    summaries.push_back(std::move(s));
  };

  if (spec.faults_file) {
    const FaultSet faults = load_fault_set(*spec.faults_file, spec.grid);
    const double pct = 100.0 * static_cast<double>(faults.size()) / net.node_count();
    emit(pct, {run_configuration(net, faults, pct)});
  } else {
    for (double pct : spec.fault_pcts) {
      emit(pct, run_point(net, spec.model, pct, spec.seed, spec.runs, spec.jobs, true));
    }
  }
  write_file(spec.out_dir / "results.csv", results_to_csv(rows));
  write_file(spec.out_dir / "summary.json", summaries_to_json(summaries) + "\n");
  return total_violations == 0 ? kExitOk : kExitViolation;
}

} // namespace

int run_experiment(const ExperimentSpec &spec, std::ostream &log) {
  spec.validate();
  const Network net = build_network(spec.grid);
  switch (spec.mode) {
  case Mode::Trace: return run_trace(spec, net, log);
  case Mode::Verify: return run_verify(spec, net, log);
  case Mode::Simulate: return run_simulate(spec, net, log);
  }
  return kExitUsage;
}

} // namespace hsfroute
