#pragma once

#include "hsfroute/fault_model.hpp"
#include "hsfroute/sim_engine.hpp"
#include "hsfroute/verification.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace hsfroute {

// Fault sets --------------------------------------------------------------
//
// {"width":25,"height":25,"model":"rf","p_f":0.04,"seed":42,
//  "faults":[[x,y],...]}

std::string fault_set_to_json(const FaultSet &faults, const NetworkConfig &config);
/// Grid size in the file, when present, must match `config`.
FaultSet fault_set_from_json(const std::string &text, const NetworkConfig &config);
FaultSet load_fault_set(const std::filesystem::path &path, const NetworkConfig &config);

// Results CSV ---------------------------------------------------------------

struct ResultRow {
  std::string model;
  double fault_pct = 0.0;
  std::uint64_t run_seed = 0;
  std::size_t delivered = 0;
  std::size_t faulty = 0;
  std::size_t unsafe = 0;
  std::size_t boundary = 0;
  double mean_hops = 0.0;
  double mean_ack_hops = 0.0;

  friend bool operator==(const ResultRow &, const ResultRow &) = default;
};

inline constexpr const char *kResultsHeader =
    "model,fault_pct,run_seed,delivered,faulty,unsafe,boundary,mean_hops,mean_ack_hops";

ResultRow to_result_row(const RunMetrics &m);
std::string results_to_csv(const std::vector<ResultRow> &rows);
/// Throws IoError on a malformed header or row.
std::vector<ResultRow> results_from_csv(const std::string &text);

std::string histogram_to_csv(const std::map<int, std::size_t> &hist);
std::map<int, std::size_t> histogram_from_csv(const std::string &text);

std::string summaries_to_json(const std::vector<Summary> &summaries);
std::vector<Summary> summaries_from_json(const std::string &text);

std::string report_to_json(const Report &report);

// Files ---------------------------------------------------------------------

std::string read_file(const std::filesystem::path &path);
/// Creates parent directories. Throws IoError with the path in the message.
void write_file(const std::filesystem::path &path, const std::string &content);

/// Fixed six-decimal formatting so output bytes never depend on locale.
std::string format_fixed(double v);

} // namespace hsfroute
