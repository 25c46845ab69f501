#include "hsfroute/io.hpp"

#include "hsfroute/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hsfroute {

using nlohmann::json;

std::string format_fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string fault_set_to_json(const FaultSet &faults, const NetworkConfig &config) {
  json j{{"width", config.width},
         {"height", config.height},
         {"model", to_string(faults.model)},
         {"p_f", faults.p_f},
         {"seed", faults.seed},
         {"faults", json::array()}};
  for (Coord c : faults.faults) j["faults"].push_back({c.x, c.y});
  return j.dump(2);
}

FaultSet fault_set_from_json(const std::string &text, const NetworkConfig &config) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception &e) {
    throw IoError(std::string("fault set: ") + e.what());
  }
  if (j.contains("width") && j["width"].get<int>() != config.width) {
    throw ConfigError("fault set width does not match the grid");
  }
  if (j.contains("height") && j["height"].get<int>() != config.height) {
    throw ConfigError("fault set height does not match the grid");
  }
  FaultSet set;
  set.model = parse_fault_model(j.value("model", std::string("rf")));
  set.p_f = j.value("p_f", 0.0);
  set.seed = j.value("seed", std::uint64_t{0});
  for (const auto &p : j.at("faults")) set.faults.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
  std::sort(set.faults.begin(), set.faults.end());
  set.faults.erase(std::unique(set.faults.begin(), set.faults.end()), set.faults.end());
  return set;
}

FaultSet load_fault_set(const std::filesystem::path &path, const NetworkConfig &config) {
  return fault_set_from_json(read_file(path), config);
}

ResultRow to_result_row(const RunMetrics &m) {
  return {to_string(m.params.model), m.params.fault_pct, m.params.seed, m.delivered,
          m.faulty, m.unsafe, m.boundary, m.mean_hops(), m.mean_ack_hops()};
}

std::string results_to_csv(const std::vector<ResultRow> &rows) {
  std::string out = kResultsHeader;
  out += '\n';
  for (const ResultRow &r : rows) {
    out += r.model + ',' + format_fixed(r.fault_pct) + ',' + std::to_string(r.run_seed) + ',' +
           std::to_string(r.delivered) + ',' + std::to_string(r.faulty) + ',' +
           std::to_string(r.unsafe) + ',' + std::to_string(r.boundary) + ',' +
           format_fixed(r.mean_hops) + ',' + format_fixed(r.mean_ack_hops) + '\n';
  }
  return out;
}

namespace {

std::vector<std::string> split(const std::string &line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::vector<std::string> lines_of(const std::string &text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

template <typename F> auto parse_field(const std::string &s, F f) {
  try {
    std::size_t used = 0;
    auto v = f(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception &) {
    throw IoError("malformed CSV field '" + s + "'");
  }
}

double to_double(const std::string &s) {
  return parse_field(s, [](const std::string &x, std::size_t *n) { return std::stod(x, n); });
}
unsigned long long to_u64(const std::string &s) {
  return parse_field(s, [](const std::string &x, std::size_t *n) { return std::stoull(x, n); });
}
long long to_i64(const std::string &s) {
  return parse_field(s, [](const std::string &x, std::size_t *n) { return std::stoll(x, n); });
}

} // namespace

std::vector<ResultRow> results_from_csv(const std::string &text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines.front() != kResultsHeader) throw IoError("results CSV: bad header");
  std::vector<ResultRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split(lines[i], ',');
    if (f.size() != 9) throw IoError("results CSV: line " + std::to_string(i + 1) + " has " +
                                     std::to_string(f.size()) + " fields");
    rows.push_back({f[0], to_double(f[1]), to_u64(f[2]), to_u64(f[3]), to_u64(f[4]),
                    to_u64(f[5]), to_u64(f[6]), to_double(f[7]), to_double(f[8])});
  }
  return rows;
}

std::string histogram_to_csv(const std::map<int, std::size_t> &hist) {
  std::string out = "offset,count\n";
  for (const auto &[off, n] : hist) out += std::to_string(off) + ',' + std::to_string(n) + '\n';
  return out;
}

std::map<int, std::size_t> histogram_from_csv(const std::string &text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines.front() != "offset,count") throw IoError("histogram CSV: bad header");
  std::map<int, std::size_t> hist;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split(lines[i], ',');
    if (f.size() != 2) throw IoError("histogram CSV: bad row");
    hist[static_cast<int>(to_i64(f[0]))] = static_cast<std::size_t>(to_u64(f[1]));
  }
  return hist;
}

std::string summaries_to_json(const std::vector<Summary> &summaries) {
  json arr = json::array();
  for (const Summary &s : summaries) {
    json hist = json::array();
    for (const auto &[h, n] : s.hop_histogram) hist.push_back({h, n});
    arr.push_back({{"width", s.width},
                   {"height", s.height},
                   {"model", to_string(s.model)},
                   {"fault_pct", s.fault_pct},
                   {"fault_count", s.fault_count},
                   {"runs", s.runs},
                   {"mean_hops", s.mean_hops},
                   {"stddev_hops", s.stddev_hops},
                   {"mean_ack_hops", s.mean_ack_hops},
                   {"stddev_ack_hops", s.stddev_ack_hops},
                   {"mean_faulty", s.mean_faulty},
                   {"mean_unsafe", s.mean_unsafe},
                   {"mean_boundary", s.mean_boundary},
                   {"mean_delivered", s.mean_delivered},
                   {"spanned_fraction", s.spanned_fraction},
                   {"stddev_spanned", s.stddev_spanned},
                   {"hop_histogram", hist}});
  }
  return arr.dump(2);
}

std::vector<Summary> summaries_from_json(const std::string &text) {
  std::vector<Summary> out;
  try {
    for (const auto &j : json::parse(text)) {
      Summary s;
      s.width = j.at("width");
      s.height = j.at("height");
      s.model = parse_fault_model(j.at("model").get<std::string>());
      s.fault_pct = j.at("fault_pct");
      s.fault_count = j.at("fault_count");
      s.runs = j.at("runs");
      s.mean_hops = j.at("mean_hops");
      s.stddev_hops = j.at("stddev_hops");
      s.mean_ack_hops = j.at("mean_ack_hops");
      s.stddev_ack_hops = j.at("stddev_ack_hops");
      s.mean_faulty = j.at("mean_faulty");
      s.mean_unsafe = j.at("mean_unsafe");
      s.mean_boundary = j.at("mean_boundary");
      s.mean_delivered = j.at("mean_delivered");
      s.spanned_fraction = j.at("spanned_fraction");
      s.stddev_spanned = j.at("stddev_spanned");
      for (const auto &p : j.at("hop_histogram")) s.hop_histogram[p.at(0)] = p.at(1);
      out.push_back(std::move(s));
    }
  } catch (const json::exception &e) {
    throw IoError(std::string("summary JSON: ") + e.what());
  }
  return out;
}

std::string report_to_json(const Report &r) {
  auto coords = [](const auto &range) {
    json a = json::array();
    for (Coord c : range) a.push_back({c.x, c.y});
    return a;
  };
  json issues = json::array();
  for (const RouteIssue &i : r.issues) {
    issues.push_back({{"dest", {i.dest.x, i.dest.y}}, {"kind", to_string(i.kind)}, {"what", i.what}});
  }
  json j{{"width", r.width},
         {"height", r.height},
         {"ok", r.ok()},
         {"violations", r.violations()},
         {"config_error", r.config_error},
         {"destinations", r.destinations},
         {"delivered", r.delivered.size()},
         {"acks_delivered", r.acks_delivered},
         {"turn_violations", r.turn_violations},
         {"core_entries", r.core_entries},
         {"budget_violations", r.budget_violations},
         {"routing_errors", r.routing_errors},
         {"hop_budget", r.hop_budget},
         {"max_hops", r.max_hops},
         {"delivered_equals_safe", r.delivered_equals_safe},
         {"delivered_within_reachable", r.delivered_within_reachable},
         {"unreachable_healthy", coords(r.unreachable_healthy)},
         {"cdg_acyclic", r.cdg_acyclic},
         {"cdg_vertices", r.cdg_vertices},
         {"cdg_edges", r.cdg_edges},
         {"issues", issues}};
  if (r.cycle) {
    json cyc = json::array();
    for (std::size_t i = 0; i < r.cycle->channels.size(); ++i) {
      const Channel &c = r.cycle->channels[i];
      json entry{{"from", {c.from.x, c.from.y}}, {"to", {c.to.x, c.to.y}}};
      if (i < r.cycle->labels.size()) {
        const DependencyLabel &l = r.cycle->labels[i];
        entry["dest"] = {l.dest.x, l.dest.y};
        entry["kind"] = to_string(l.kind);
        entry["mode"] = to_string(l.mode);
      }
      cyc.push_back(entry);
    }
    j["cycle"] = cyc;
  }
  return j.dump(2);
}

std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path &path, const std::string &content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("write failed for " + path.string());
}

} // namespace hsfroute
