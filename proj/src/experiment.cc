// Copyright 2026 The mecsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mecsim/experiment.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <tuple>
#include <utility>

#include "json.hpp"
#include "mecsim/errors.h"

#ifndef MECSIM_VERSION
#define MECSIM_VERSION "dev"
#endif

namespace mecsim {

namespace {

// Raised by value handlers; the caller adds line and key.
struct BadValue {
  std::string message;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double to_double(std::string_view token) {
  double value = 0.0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end || token.empty()) {
    throw BadValue{"'" + std::string(token) + "' is not a number"};
  }
  return value;
}

template <typename Int>
Int to_integer(std::string_view token) {
  Int value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end || token.empty()) {
    throw BadValue{"'" + std::string(token) + "' is not an integer"};
  }
  return value;
}

enum class Unit { kNone, kGain, kPower, kPsd, kFrequency, kTime, kLength, kBits };

double with_unit(std::string_view value, Unit unit) {
  const auto space = value.find_first_of(" \t");
  const std::string_view number = trim(value.substr(0, space));
  const std::string_view suffix =
      space == std::string_view::npos ? std::string_view{} : trim(value.substr(space));
  const double x = to_double(number);
  if (suffix.empty()) return x;
  auto bad = [&]() -> double {
    throw BadValue{"unit '" + std::string(suffix) + "' not accepted here"};
  };
  switch (unit) {
    case Unit::kNone:
      return bad();
    case Unit::kGain:
      if (suffix == "dB") return db_to_linear(x);
      return bad();
    case Unit::kPower:
      if (suffix == "W") return x;
      if (suffix == "mW") return x * 1e-3;
      if (suffix == "dBm") return dbm_to_watt(x);
      if (suffix == "dBW") return db_to_linear(x);
      return bad();
    case Unit::kPsd:
      if (suffix == "W/Hz") return x;
      if (suffix == "dBm/Hz" || suffix == "dBmHz") return dbm_to_watt(x);
      return bad();
    case Unit::kFrequency:
      if (suffix == "Hz") return x;
      if (suffix == "kHz") return x * 1e3;
      if (suffix == "MHz") return x * 1e6;
      if (suffix == "GHz") return x * 1e9;
      return bad();
    case Unit::kTime:
      if (suffix == "s") return x;
      if (suffix == "ms") return x * 1e-3;
      if (suffix == "us") return x * 1e-6;
      return bad();
    case Unit::kLength:
      if (suffix == "m") return x;
      return bad();
    case Unit::kBits:
      if (suffix == "bits" || suffix == "bit") return x;
      return bad();
  }
  return bad();
}

bool to_bool(std::string_view token) {
  if (token == "true" || token == "yes" || token == "on" || token == "1") {
    return true;
  }
  if (token == "false" || token == "no" || token == "off" || token == "0") {
    return false;
  }
  throw BadValue{"'" + std::string(token) + "' is not a boolean"};
}

template <typename T>
std::string join(const std::vector<T>& items,
                 const std::function<std::string(const T&)>& fmt) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += fmt(items[i]);
  }
  return out;
}

struct Field {
  std::function<void(ExperimentSpec&, std::string_view)> parse;
  std::function<std::string(const ExperimentSpec&)> format;
};

using Registry = std::vector<std::pair<std::string, Field>>;

Field real(double SimConfig::*member, Unit unit) {
  return {[=](ExperimentSpec& s, std::string_view v) {
            s.base.*member = with_unit(v, unit);
          },
          [=](const ExperimentSpec& s) { return format_double(s.base.*member); }};
}

Field integer(int SimConfig::*member) {
  return {[=](ExperimentSpec& s, std::string_view v) {
            s.base.*member = to_integer<int>(v);
          },
          [=](const ExperimentSpec& s) {
            return std::to_string(s.base.*member);
          }};
}

const Registry& registry() {
  static const Registry fields = [] {
    Registry r;
    r.emplace_back("servers", integer(&SimConfig::num_servers));
    r.emplace_back("devices", integer(&SimConfig::num_devices));
    r.emplace_back("max_devices_per_server",
                   integer(&SimConfig::max_devices_per_server));
    r.emplace_back("area_side", real(&SimConfig::area_side, Unit::kLength));
    r.emplace_back("slot_length", real(&SimConfig::slot_length, Unit::kTime));
    r.emplace_back("bandwidth", real(&SimConfig::bandwidth, Unit::kFrequency));
    r.emplace_back("noise_psd", real(&SimConfig::noise_psd, Unit::kPsd));
    r.emplace_back("interference",
                   real(&SimConfig::interference, Unit::kPower));
    r.emplace_back("path_loss_ref", real(&SimConfig::path_loss_ref, Unit::kGain));
    r.emplace_back("ref_distance", real(&SimConfig::ref_distance, Unit::kLength));
    r.emplace_back("path_loss_exp", real(&SimConfig::path_loss_exp, Unit::kNone));
    r.emplace_back("max_power", real(&SimConfig::max_power, Unit::kPower));
    r.emplace_back("switched_capacitance",
                   real(&SimConfig::switched_capacitance, Unit::kNone));
    r.emplace_back("cycles_per_bit",
                   real(&SimConfig::cycles_per_bit, Unit::kNone));
    r.emplace_back("max_frequency",
                   real(&SimConfig::max_frequency, Unit::kFrequency));
    r.emplace_back("arrival_min", real(&SimConfig::arrival_min, Unit::kBits));
    r.emplace_back("arrival_max", real(&SimConfig::arrival_max, Unit::kBits));
    r.emplace_back("control_weight",
                   real(&SimConfig::control_weight, Unit::kNone));
    r.emplace_back("horizon", integer(&SimConfig::horizon));
    r.emplace_back(
        "seed",
        Field{[](ExperimentSpec& s, std::string_view v) {
                s.base.seed = to_integer<std::uint64_t>(v);
              },
              [](const ExperimentSpec& s) { return std::to_string(s.base.seed); }});
    r.emplace_back("max_step", real(&SimConfig::max_step, Unit::kLength));
    r.emplace_back(
        "fading",
        Field{[](ExperimentSpec& s, std::string_view v) {
                if (v == "rayleigh") {
                  s.base.fading = FadingModel::kRayleigh;
                } else if (v == "unit") {
                  s.base.fading = FadingModel::kUnit;
                } else {
                  throw BadValue{"expected 'rayleigh' or 'unit'"};
                }
              },
              [](const ExperimentSpec& s) {
                return std::string(s.base.fading == FadingModel::kRayleigh
                                       ? "rayleigh"
                                       : "unit");
              }});
    r.emplace_back("bandwidth_tolerance",
                   real(&SimConfig::bandwidth_tolerance, Unit::kNone));
    r.emplace_back("min_bandwidth_share",
                   real(&SimConfig::min_bandwidth_share, Unit::kNone));
    r.emplace_back("max_lagrange_iterations",
                   integer(&SimConfig::max_lagrange_iterations));
    r.emplace_back("max_gauss_seidel_iterations",
                   integer(&SimConfig::max_gauss_seidel_iterations));
    r.emplace_back("gauss_seidel_threshold",
                   real(&SimConfig::gauss_seidel_threshold, Unit::kNone));
    r.emplace_back("root_tolerance",
                   real(&SimConfig::root_tolerance, Unit::kNone));

    r.emplace_back(
        "sweep.control_weight",
        Field{[](ExperimentSpec& s, std::string_view v) {
                s.control_weights.clear();
                for (auto t : split(v, ',')) {
                  s.control_weights.push_back(to_double(t));
                }
              },
              [](const ExperimentSpec& s) {
                return join<double>(s.control_weights, format_double);
              }});
    r.emplace_back(
        "sweep.arrivals",
        Field{[](ExperimentSpec& s, std::string_view v) {
                s.arrivals.clear();
                for (auto t : split(v, ',')) {
                  const auto bounds = split(t, ':');
                  if (bounds.size() != 2) {
                    throw BadValue{"arrival ranges are written min:max"};
                  }
                  s.arrivals.push_back(
                      {to_double(bounds[0]), to_double(bounds[1])});
                }
              },
              [](const ExperimentSpec& s) {
                return join<ArrivalRange>(s.arrivals, [](const ArrivalRange& a) {
                  return format_double(a.min) + ":" + format_double(a.max);
                });
              }});
    auto int_axis = [](std::vector<int> ExperimentSpec::*axis) {
      return Field{[=](ExperimentSpec& s, std::string_view v) {
                     (s.*axis).clear();
                     for (auto t : split(v, ',')) {
                       (s.*axis).push_back(to_integer<int>(t));
                     }
                   },
                   [=](const ExperimentSpec& s) {
                     return join<int>(s.*axis,
                                      [](const int& i) { return std::to_string(i); });
                   }};
    };
    r.emplace_back("sweep.devices", int_axis(&ExperimentSpec::devices));
    r.emplace_back("sweep.servers", int_axis(&ExperimentSpec::servers));
    r.emplace_back(
        "sweep.policies",
        Field{[](ExperimentSpec& s, std::string_view v) {
                s.policies.clear();
                if (v == "all") {
                  s.policies.assign(kAllPolicies.begin(), kAllPolicies.end());
                  return;
                }
                for (auto t : split(v, ',')) {
                  const auto kind = parse_policy(t);
                  if (!kind) {
                    throw BadValue{"unknown policy '" + std::string(t) + "'"};
                  }
                  s.policies.push_back(*kind);
                }
              },
              [](const ExperimentSpec& s) {
                return join<PolicyKind>(s.policies, [](const PolicyKind& k) {
                  return std::string(to_string(k));
                });
              }});
    r.emplace_back(
        "seeds",
        Field{[](ExperimentSpec& s, std::string_view v) {
                s.seeds.clear();
                for (auto t : split(v, ',')) {
                  s.seeds.push_back(to_integer<std::uint64_t>(t));
                }
              },
              [](const ExperimentSpec& s) {
                return join<std::uint64_t>(s.seeds, [](const std::uint64_t& x) {
                  return std::to_string(x);
                });
              }});
    r.emplace_back(
        "output_dir",
        Field{[](ExperimentSpec& s, std::string_view v) { s.output_dir = v; },
              [](const ExperimentSpec& s) { return s.output_dir.string(); }});
    r.emplace_back(
        "trace",
        Field{[](ExperimentSpec& s, std::string_view v) { s.trace = to_bool(v); },
              [](const ExperimentSpec& s) {
                return std::string(s.trace ? "true" : "false");
              }});
    r.emplace_back(
        "jobs",
        Field{[](ExperimentSpec& s, std::string_view v) {
                s.jobs = to_integer<int>(v);
              },
              [](const ExperimentSpec& s) { return std::to_string(s.jobs); }});
    r.emplace_back(
        "analysis.epsilon_proxy",
        Field{[](ExperimentSpec& s, std::string_view v) {
                s.epsilon_proxy = with_unit(v, Unit::kBits);
              },
              [](const ExperimentSpec& s) {
                return format_double(s.epsilon_proxy);
              }});
    r.emplace_back(
        "analysis.warmup_fraction",
        Field{[](ExperimentSpec& s, std::string_view v) {
                s.warmup_fraction = to_double(v);
              },
              [](const ExperimentSpec& s) {
                return format_double(s.warmup_fraction);
              }});
    return r;
  }();
  return fields;
}

const Field* find_field(std::string_view key) {
  for (const auto& [name, field] : registry()) {
    if (name == key) return &field;
  }
  return nullptr;
}

void apply_line(ExperimentSpec& spec, std::string_view line,
                const std::string& where) {
  const auto hash = line.find('#');
  line = trim(line.substr(0, hash));
  if (line.empty()) return;
  const auto eq = line.find('=');
  if (eq == std::string_view::npos) {
    throw Error(ErrorCode::kParseError, where + ": expected 'key = value'");
  }
  const std::string key(trim(line.substr(0, eq)));
  const std::string_view value = trim(line.substr(eq + 1));
  const Field* field = find_field(key);
  if (field == nullptr) {
    throw Error(ErrorCode::kParseError, where + ": unknown key '" + key + "'");
  }
  try {
    field->parse(spec, value);
  } catch (const BadValue& bad) {
    throw Error(ErrorCode::kParseError,
                where + ": key '" + key + "': " + bad.message);
  }
}

void validation_error(const std::string& field, const std::string& rule) {
  throw Error(ErrorCode::kValidationError, field + " must satisfy " + rule);
}

void finalize(ExperimentSpec& spec) {
  validate(spec.base);
  if (spec.control_weights.empty()) {
    spec.control_weights = {spec.base.control_weight};
  }
  if (spec.arrivals.empty()) {
    spec.arrivals = {{spec.base.arrival_min, spec.base.arrival_max}};
  }
  if (spec.devices.empty()) spec.devices = {spec.base.num_devices};
  if (spec.servers.empty()) spec.servers = {spec.base.num_servers};
  if (spec.policies.empty()) spec.policies = {PolicyKind::kOoraa};
  if (spec.seeds.empty()) spec.seeds = {spec.base.seed};

  for (double v : spec.control_weights) {
    if (!(v > 0.0)) validation_error("sweep.control_weight", "> 0");
  }
  for (const auto& a : spec.arrivals) {
    if (!(a.min >= 0.0 && a.min <= a.max)) {
      validation_error("sweep.arrivals", "0 <= min <= max");
    }
  }
  for (int u : spec.devices) {
    if (u < 1) validation_error("sweep.devices", ">= 1");
  }
  for (int m : spec.servers) {
    if (m < 1) validation_error("sweep.servers", ">= 1");
  }
  if (spec.jobs < 1) validation_error("jobs", ">= 1");
  if (!(spec.epsilon_proxy > 0.0)) {
    validation_error("analysis.epsilon_proxy", "> 0");
  }
  if (!(spec.warmup_fraction >= 0.0 && spec.warmup_fraction < 1.0)) {
    validation_error("analysis.warmup_fraction", "in [0, 1)");
  }
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Text of every field that influences results (no output location, no
// thread count).
std::string result_relevant_config(const ExperimentSpec& spec) {
  std::string out;
  for (const auto& [name, field] : registry()) {
    if (name == "output_dir" || name == "jobs") continue;
    out += name + " = " + field.format(spec) + "\n";
  }
  return out;
}

struct RunTask {
  SweepKey key;
  std::uint64_t seed = 0;
  SimConfig cfg;
};

struct RunOutput {
  LabeledRun labeled;
  BoundConstants constants;
  int drift_failures = 0;
  std::string trace;
};

std::string run_name(const RunTask& t) {
  return "run control_weight=" + format_double(t.key.control_weight) +
         " arrivals=" + format_double(t.key.arrival_min) + ":" +
         format_double(t.key.arrival_max) +
         " devices=" + std::to_string(t.key.devices) +
         " servers=" + std::to_string(t.key.servers) +
         " policy=" + std::string(to_string(t.key.policy)) +
         " seed=" + std::to_string(t.seed);
}

std::string key_columns(const SweepKey& k) {
  return format_double(k.control_weight) + "," + format_double(k.arrival_min) +
         "," + format_double(k.arrival_max) + "," + std::to_string(k.devices) +
         "," + std::to_string(k.servers) + "," + std::string(to_string(k.policy));
}

constexpr const char* kKeyHeader =
    "control_weight,arrival_min_bits,arrival_max_bits,devices,servers,policy";

RunOutput execute(const RunTask& task, const ExperimentSpec& spec) {
  RunResult result = run(task.cfg,
                         Policy{task.key.policy,
                                static_cast<std::uint64_t>(task.key.policy)});
  RunOutput out;
  out.labeled = {task.key, task.seed, result.summary};
  out.constants =
      bound_constants(result.records, task.cfg, spec.warmup_fraction);
  for (const auto& r : result.records) {
    if (!drift_plus_penalty_check(r, out.constants, task.cfg.control_weight).ok) {
      ++out.drift_failures;
    }
  }
  if (spec.trace) {
    const std::string prefix =
        key_columns(task.key) + "," + std::to_string(task.seed) + ",";
    std::string& s = out.trace;
    for (const auto& r : result.records) {
      for (int u = 0; u < task.cfg.num_devices; ++u) {
        s += prefix;
        s += std::to_string(r.slot) + "," + std::to_string(u) + ",";
        s += format_double(r.sample.positions(0, u)) + "," +
             format_double(r.sample.positions(1, u)) + ",";
        s += format_double(r.sample.arrivals(u)) + ",";
        s += format_double(r.before.local(u)) + "," +
             format_double(r.before.offload(u)) + ",";
        s += format_double(r.decision.partition(u)) + ",";
        s += format_double(r.decision.frequency(u)) + ",";
        s += format_double(r.decision.power(u)) + ",";
        s += std::to_string(r.decision.server_of(u)) + "\n";
      }
    }
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  }
  out << body;
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

ExperimentSpec default_spec() {
  ExperimentSpec spec;
  finalize(spec);
  return spec;
}

ExperimentSpec parse_config_text(std::string_view text,
                                 const std::vector<std::string>& overrides) {
  ExperimentSpec spec;
  int line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    apply_line(spec, line, "line " + std::to_string(line_no));
  }
  for (std::size_t i = 0; i < overrides.size(); ++i) {
    apply_line(spec, overrides[i], "override " + std::to_string(i + 1));
  }
  finalize(spec);
  return spec;
}

ExperimentSpec parse_config(const std::filesystem::path& path,
                            const std::vector<std::string>& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kParseError, "cannot open config " + path.string());
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str(), overrides);
}

std::string format_config(const ExperimentSpec& spec) {
  std::string out;
  for (const auto& [name, field] : registry()) {
    out += name + " = " + field.format(spec) + "\n";
  }
  return out;
}

ExperimentReport run_experiment(const ExperimentSpec& spec) {
  if (spec.output_dir.empty()) {
    throw Error(ErrorCode::kIoError, "no output directory given");
  }
  std::error_code ec;
  std::filesystem::create_directories(spec.output_dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIoError,
                "cannot create " + spec.output_dir.string() + ": " + ec.message());
  }

  std::vector<RunTask> tasks;
  for (double v : spec.control_weights) {
    for (const auto& a : spec.arrivals) {
      for (int u : spec.devices) {
        for (int m : spec.servers) {
          for (PolicyKind p : spec.policies) {
            for (std::uint64_t seed : spec.seeds) {
              RunTask t;
              t.key = {v, a.min, a.max, u, m, p};
              t.seed = seed;
              t.cfg = spec.base;
              t.cfg.control_weight = v;
              t.cfg.arrival_min = a.min;
              t.cfg.arrival_max = a.max;
              t.cfg.num_devices = u;
              t.cfg.num_servers = m;
              t.cfg.seed = seed;
              try {
                validate(t.cfg);
              } catch (const Error& e) {
                throw Error(e.code(), run_name(t) + ": " + e.what());
              }
              tasks.push_back(std::move(t));
            }
          }
        }
      }
    }
  }
  std::stable_sort(tasks.begin(), tasks.end(),
                   [](const RunTask& a, const RunTask& b) {
                     return std::tie(a.key, a.seed) < std::tie(b.key, b.seed);
                   });

  std::vector<std::optional<RunOutput>> outputs(tasks.size());
  std::vector<std::exception_ptr> failures(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        outputs[i] = execute(tasks[i], spec);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const int threads =
      std::max(1, std::min<int>(spec.jobs, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (!failures[i]) continue;
    try {
      std::rethrow_exception(failures[i]);
    } catch (const Error& e) {
      throw Error(e.code(), run_name(tasks[i]) + ": " + e.what());
    } catch (const std::exception& e) {
      throw std::runtime_error(run_name(tasks[i]) + ": " + e.what());
    }
  }

  ExperimentReport report;
  report.runs = tasks.size();
  for (const auto& o : outputs) report.labeled.push_back(o->labeled);
  report.points = aggregate_sweep(report.labeled);
  report.summary_rows = report.points.size();

  std::string summary = std::string(kKeyHeader) +
                        ",seeds,network_ee_j_per_bit,avg_delay_s,"
                        "avg_energy_j_per_slot,avg_backlog_bits,"
                        "avg_processed_bits_per_slot\n";
  for (const auto& p : report.points) {
    summary += key_columns(p.key) + "," + std::to_string(p.seeds.size()) + "," +
               format_double(p.network_ee) + "," +
               format_double(p.average_delay) + "," +
               format_double(p.average_energy) + "," +
               format_double(p.average_backlog) + "," +
               format_double(p.average_bits) + "\n";
  }

  // Best EE over the control-weight axis stands in for the optimum.
  std::map<std::tuple<double, double, int, int, PolicyKind, std::uint64_t>,
           double>
      best_ee;
  for (const auto& o : outputs) {
    const auto& k = o->labeled.key;
    const auto id = std::make_tuple(k.arrival_min, k.arrival_max, k.devices,
                                    k.servers, k.policy, o->labeled.seed);
    const double ee = o->labeled.summary.network_ee.value_or(
        std::numeric_limits<double>::infinity());
    auto [it, inserted] = best_ee.emplace(id, ee);
    if (!inserted) it->second = std::min(it->second, ee);
  }

  std::string bounds = std::string(kKeyHeader) +
                       ",seed,slots,drift_bound_failures,c1_bits2,c2_bits2,"
                       "local_min_bits,offload_min_bits,local_max_bits,"
                       "offload_max_bits,eta_star_proxy_j_per_bit,"
                       "epsilon_proxy_bits,ee_gap_bound_j_per_bit,"
                       "observed_ee_gap_j_per_bit,queue_bound_bits,"
                       "observed_backlog_bits\n";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& o : outputs) {
    const auto& k = o->labeled.key;
    const auto& s = o->labeled.summary;
    const double eta_star = best_ee.at(std::make_tuple(
        k.arrival_min, k.arrival_max, k.devices, k.servers, k.policy,
        o->labeled.seed));
    PerformanceBounds b{nan, nan};
    try {
      b = performance_bounds(o->constants, k.control_weight, eta_star,
                             spec.epsilon_proxy);
    } catch (const Error&) {
    }
    const BoundConstants& c = o->constants;
    bounds += key_columns(k) + "," + std::to_string(o->labeled.seed) + "," +
              std::to_string(s.slots) + "," + std::to_string(o->drift_failures) +
              "," + format_double(c.c1) + "," + format_double(c.c2) + "," +
              format_double(c.local_min) + "," + format_double(c.offload_min) +
              "," + format_double(c.local_max) + "," +
              format_double(c.offload_max) + "," + format_double(eta_star) +
              "," + format_double(spec.epsilon_proxy) + "," +
              format_double(b.ee_gap) + "," +
              format_double(s.network_ee.value_or(nan) - eta_star) + "," +
              format_double(b.queue) + "," + format_double(s.average_backlog) +
              "\n";
  }

  const auto& dir = spec.output_dir;
  write_file(dir / "summary.csv", summary);
  report.files.push_back(dir / "summary.csv");
  write_file(dir / "bounds.csv", bounds);
  report.files.push_back(dir / "bounds.csv");
  if (spec.trace) {
    std::string trace = std::string(kKeyHeader) +
                        ",seed,slot,device,x_m,y_m,arrival_bits,"
                        "q_local_bits,q_offload_bits,partition,frequency_hz,"
                        "power_w,server\n";
    for (const auto& o : outputs) trace += o->trace;
    write_file(dir / "trace.csv", trace);
    report.files.push_back(dir / "trace.csv");
  }

  const std::string config_text = result_relevant_config(spec);
  char hash[17];
  std::snprintf(hash, sizeof(hash), "%016llx",
                static_cast<unsigned long long>(fnv1a(config_text)));
  nlohmann::json manifest;
  manifest["software_version"] = MECSIM_VERSION;
  manifest["config_hash_fnv1a64"] = hash;
  manifest["config"] = config_text;
  manifest["seeds"] = spec.seeds;
  manifest["runs"] = tasks.size();
  manifest["summary_rows"] = report.summary_rows;
  nlohmann::json files = nlohmann::json::array();
  for (const auto& f : report.files) files.push_back(f.filename().string());
  manifest["files"] = files;
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  report.files.push_back(dir / "manifest.json");
  return report;
}

}  // namespace mecsim
