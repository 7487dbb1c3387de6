// Copyright 2026 The Authors.
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

// Command-line driver over the libwfalloc C interface.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "wfalloc/wfalloc.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitTooLarge = 3;
constexpr int kExitIo = 4;

const std::vector<std::string> kProfileNames = {
    "iid-unit", "iid-ten", "mixed-half", "sparse-strong", "correlated"};
const std::vector<std::string> kStrategyNames = {"greedy", "greedy-absolute",
                                                 "max-weight"};
const std::vector<std::string> kReferenceNames = {"brute-force",
                                                  "analytic-upper"};

// Thrown to unwind with a library status already reported.
struct Failure {
  wf_status status;
};

int exit_code(wf_status status) {
  switch (status) {
    case WF_OK:
      return kExitOk;
    case WF_ERR_INVALID_ARGUMENT:
      return kExitUsage;
    case WF_ERR_TOO_LARGE:
      return kExitTooLarge;
    case WF_ERR_IO:
    case WF_ERR_PARSE:
      return kExitIo;
    default:
      return kExitInternal;
  }
}

void check(wf_status status) {
  if (status != WF_OK) {
    std::fprintf(stderr, "error: %s: %s\n", wf_status_name(status),
                 wf_last_error());
    throw Failure{status};
  }
}

[[noreturn]] void fail(wf_status status, const std::string& message) {
  std::fprintf(stderr, "error: %s: %s\n", wf_status_name(status),
               message.c_str());
  throw Failure{status};
}

struct MatrixDeleter {
  void operator()(wf_matrix* m) const { wf_matrix_free(m); }
};
struct SolutionDeleter {
  void operator()(wf_solution* s) const { wf_solution_free(s); }
};
struct ReportDeleter {
  void operator()(wf_lab_report* r) const { wf_lab_report_free(r); }
};
struct RecordsDeleter {
  void operator()(wf_records* r) const { wf_records_free(r); }
};
using MatrixPtr = std::unique_ptr<wf_matrix, MatrixDeleter>;

// Output sink: the named file, or stdout when the path is empty.
class Sink {
 public:
  explicit Sink(const std::string& path) : path_(path) {
    if (path.empty()) {
      file_ = stdout;
    } else {
      file_ = std::fopen(path.c_str(), "w");
      if (file_ == nullptr) fail(WF_ERR_IO, "cannot open " + path + " for writing");
    }
  }
  ~Sink() {
    if (file_ != stdout && file_ != nullptr) std::fclose(file_);
  }
  Sink(const Sink&) = delete;
  Sink& operator=(const Sink&) = delete;

  std::FILE* get() const { return file_; }
  void finish() {
    const bool ok = std::fflush(file_) == 0 && !std::ferror(file_);
    if (file_ != stdout) {
      const bool closed = std::fclose(file_) == 0;
      file_ = nullptr;
      if (!closed || !ok) fail(WF_ERR_IO, "failed writing " + path_);
    } else if (!ok) {
      fail(WF_ERR_IO, "failed writing standard output");
    }
  }

 private:
  std::string path_;
  std::FILE* file_;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

// Reads a channel,noise CSV. Channel labels are kept for reporting.
void read_channel_csv(const std::string& path, std::vector<std::string>& labels,
                      std::vector<double>& noises) {
  std::ifstream in(path);
  if (!in) fail(WF_ERR_IO, "cannot open " + path);
  std::string line;
  std::size_t line_no = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto comma = line.find(',');
    const std::string first = trim(line.substr(0, comma));
    const std::string second =
        comma == std::string::npos ? std::string() : trim(line.substr(comma + 1));
    const std::string where = path + ": line " + std::to_string(line_no) + ": ";
    if (header) {
      if (first != "channel" || second != "noise") {
        fail(WF_ERR_PARSE, where + "expected header channel,noise");
      }
      header = false;
      continue;
    }
    if (comma == std::string::npos || second.find(',') != std::string::npos) {
      fail(WF_ERR_PARSE, where + "expected 2 cells");
    }
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(second, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != second.size()) {
      fail(WF_ERR_PARSE, where + "non-numeric noise '" + second + "'");
    }
    labels.push_back(first);
    noises.push_back(value);
  }
  if (in.bad()) fail(WF_ERR_IO, "read error on " + path);
  if (header) fail(WF_ERR_PARSE, path + ": missing header channel,noise");
}

// Noise profile from --noise or --input, with default labels 0..n-1.
struct ChannelOptions {
  std::vector<double> noises;
  std::string input;
  double budget = 1.0;

  std::vector<std::string> labels;

  void resolve() {
    if (noises.empty() && input.empty()) {
      fail(WF_ERR_INVALID_ARGUMENT, "give --noise or --input");
    }
    if (!input.empty()) {
      read_channel_csv(input, labels, noises);
    } else {
      for (std::size_t k = 0; k < noises.size(); ++k) {
        labels.push_back(std::to_string(k));
      }
    }
  }
};

void add_channel_options(CLI::App* cmd, ChannelOptions& opt) {
  auto* noise = cmd->add_option("--noise", opt.noises,
                                "Channel noise variances, comma separated")
                    ->delimiter(',');
  auto* input = cmd->add_option("--input", opt.input,
                                "CSV with header channel,noise");
  noise->excludes(input);
  cmd->add_option("--budget", opt.budget, "Total power budget P")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
}

// Instance options shared by simulate and ratio-experiment.
struct InstanceOptions {
  std::vector<std::string> profiles;
  std::vector<std::size_t> users;
  std::size_t basestations = 10;
  std::vector<std::string> strategies{"greedy"};
  std::string reference = "analytic-upper";
  std::uint64_t seed = 1;
  std::string input;
  std::string output;
};

void add_instance_options(CLI::App* cmd, InstanceOptions& opt) {
  cmd->add_option("--profile", opt.profiles, "SNR profile (repeatable)")
      ->check(CLI::IsMember(kProfileNames));
  cmd->add_option("--users", opt.users, "User count n (repeatable)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--basestations", opt.basestations, "Basestation count m")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--strategy", opt.strategies, "Allocation strategy (repeatable)")
      ->capture_default_str()
      ->check(CLI::IsMember(kStrategyNames));
  cmd->add_option("--reference", opt.reference, "Offline reference")
      ->capture_default_str()
      ->check(CLI::IsMember(kReferenceNames));
  cmd->add_option("--seed", opt.seed, "Base seed")->capture_default_str();
  cmd->add_option("--input", opt.input,
                  "Replay a weight matrix CSV (header user,bs_1,...,bs_m)");
  cmd->add_option("--output", opt.output, "Write CSV here instead of stdout");
}

std::vector<wf_strategy> parse_strategies(const std::vector<std::string>& names) {
  std::vector<wf_strategy> out;
  for (const auto& name : names) {
    wf_strategy s;
    check(wf_strategy_from_name(name.c_str(), &s));
    out.push_back(s);
  }
  return out;
}

wf_reference parse_reference(const std::string& name) {
  wf_reference r;
  check(wf_reference_from_name(name.c_str(), &r));
  return r;
}

wf_profile parse_profile(const std::string& name) {
  wf_profile p;
  check(wf_profile_from_name(name.c_str(), &p));
  return p;
}

// ---- waterfill --------------------------------------------------------------

struct WaterfillCommand {
  ChannelOptions channels;
  std::string output;

  void run() {
    channels.resolve();
    wf_solution* raw = nullptr;
    check(wf_waterfill(channels.noises.data(), channels.noises.size(),
                       channels.budget, &raw));
    std::unique_ptr<wf_solution, SolutionDeleter> sol(raw);
    Sink sink(output);
    std::FILE* f = sink.get();
    std::fprintf(f, "channel,noise,power,active\n");
    for (std::size_t k = 0; k < channels.noises.size(); ++k) {
      std::fprintf(f, "%s,%.12g,%.12g,%d\n", channels.labels[k].c_str(),
                   channels.noises[k], wf_solution_power(sol.get(), k),
                   wf_solution_is_active(sol.get(), k));
    }
    sink.finish();
    if (wf_solution_has_level(sol.get())) {
      std::fprintf(stderr, "water_level=%.12g ", wf_solution_level(sol.get()));
    } else {
      std::fprintf(stderr, "water_level=none ");
    }
    std::fprintf(stderr, "rate_nats=%.12g\n", wf_solution_rate(sol.get()));
  }
};

// ---- check-submodular -------------------------------------------------------

struct CheckCommand {
  ChannelOptions channels;
  double tolerance = 1e-9;
  std::string output;

  void run() {
    channels.resolve();
    wf_lab_report* raw = nullptr;
    check(wf_check_waterfill(channels.noises.data(), channels.noises.size(),
                             channels.budget, tolerance, &raw));
    std::unique_ptr<wf_lab_report, ReportDeleter> rep(raw);
    const auto count_text = [](long c) {
      return c < 0 ? std::string("skipped") : std::to_string(c);
    };
    std::printf("channels=%zu budget=%.12g tolerance=%.3g\n",
                channels.noises.size(), channels.budget, tolerance);
    std::printf("pairwise_violations=%zu\n",
                wf_lab_report_pairwise_count(rep.get()));
    std::printf("setpair_violations=%s\n",
                count_text(wf_lab_report_setpair_count(rep.get())).c_str());
    std::printf("monotone_violations=%s\n",
                count_text(wf_lab_report_monotone_count(rep.get())).c_str());
    std::printf("max_pairwise_gap=%.12g\n", wf_lab_report_max_gap(rep.get()));
    if (!output.empty()) {
      check(wf_lab_report_write_csv(rep.get(), output.c_str()));
    }
  }
};

// ---- simulate ---------------------------------------------------------------

MatrixPtr load_or_generate(const InstanceOptions& opt, const std::string& profile,
                           std::size_t users) {
  wf_matrix* raw = nullptr;
  if (!opt.input.empty()) {
    check(wf_matrix_read_csv(opt.input.c_str(), &raw));
  } else {
    check(wf_matrix_generate(parse_profile(profile), users, opt.basestations,
                             opt.seed, &raw));
  }
  return MatrixPtr(raw);
}

struct SimulateCommand {
  InstanceOptions instance;
  std::string save_instance;

  void run() {
    if (instance.profiles.size() > 1 || instance.users.size() > 1) {
      fail(WF_ERR_INVALID_ARGUMENT, "simulate takes one --profile and one --users");
    }
    const std::string profile =
        instance.profiles.empty() ? "iid-ten" : instance.profiles.front();
    const std::size_t users = instance.users.empty() ? 10 : instance.users.front();
    const auto strategies = parse_strategies(instance.strategies);
    const wf_reference reference = parse_reference(instance.reference);
    const MatrixPtr w = load_or_generate(instance, profile, users);
    if (!save_instance.empty()) {
      check(wf_matrix_write_csv(w.get(), save_instance.c_str()));
    }

    const std::size_t n = wf_matrix_users(w.get());
    const std::size_t m = wf_matrix_basestations(w.get());
    Sink sink(instance.output);
    std::FILE* f = sink.get();
    std::fprintf(f, "strategy,utility,offline_bound,reference_kind,ratio,owners\n");
    std::vector<std::size_t> owners(n);
    for (const wf_strategy s : strategies) {
      wf_ratio_report rep;
      check(wf_competitive_ratio(w.get(), s, reference, &rep));
      check(wf_allocate(w.get(), s, owners.data(), nullptr));
      std::string owner_text;
      for (std::size_t u = 0; u < n; ++u) {
        if (u > 0) owner_text += ';';
        owner_text += std::to_string(owners[u]);
      }
      std::fprintf(f, "%s,%.12g,%.12g,%s,%.12g,%s\n", wf_strategy_name(s),
                   rep.online_utility, rep.offline_reference,
                   wf_reference_name(reference), rep.ratio, owner_text.c_str());
    }
    sink.finish();
    std::fprintf(stderr, "instance n=%zu m=%zu profile=%s seed=%llu rng=%s\n", n,
                 m, instance.input.empty() ? profile.c_str() : "replay",
                 static_cast<unsigned long long>(instance.seed), wf_rng_name());
  }
};

// ---- ratio-experiment ---------------------------------------------------------

struct ExperimentCommand {
  InstanceOptions instance;
  std::size_t trials = 100;
  std::string summary;

  void run() {
    const auto strategies = parse_strategies(instance.strategies);
    const wf_reference reference = parse_reference(instance.reference);
    std::vector<std::string> profiles = instance.profiles;
    if (profiles.empty()) profiles = kProfileNames;
    std::vector<std::size_t> users = instance.users;
    if (users.empty()) users = {10, 20, 50, 100};

    MatrixPtr fixed;
    if (!instance.input.empty()) {
      fixed = load_or_generate(instance, {}, 0);
      profiles = {"replay"};
      users = {wf_matrix_users(fixed.get())};
    }

    wf_records* raw = nullptr;
    check(wf_records_create(&raw));
    std::unique_ptr<wf_records, RecordsDeleter> records(raw);
    for (const auto& profile : profiles) {
      for (const std::size_t n : users) {
        wf_experiment_config cfg{};
        cfg.profile = fixed ? WF_PROFILE_IID_TEN : parse_profile(profile);
        cfg.users = n;
        cfg.basestations = instance.basestations;
        cfg.trials = trials;
        cfg.strategies = strategies.data();
        cfg.strategy_count = strategies.size();
        cfg.reference = reference;
        cfg.seed = instance.seed;
        cfg.fixed_instance = fixed.get();
        check(wf_run_experiment(&cfg, records.get()));
      }
    }
    check(wf_records_write_csv(
        records.get(), instance.output.empty() ? nullptr : instance.output.c_str()));
    if (wf_records_size(records.get()) > 0) {
      check(wf_records_write_summary(
          records.get(), summary.empty() ? nullptr : summary.c_str()));
    }
    std::fprintf(stderr, "records=%zu seed=%llu rng=%s\n",
                 wf_records_size(records.get()),
                 static_cast<unsigned long long>(instance.seed), wf_rng_name());
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Waterfilling utilities and online basestation allocation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", wf_version());

  WaterfillCommand waterfill;
  auto* wf_cmd = app.add_subcommand("waterfill", "Solve one waterfilling problem");
  add_channel_options(wf_cmd, waterfill.channels);
  wf_cmd->add_option("--output", waterfill.output,
                     "Write the per-channel CSV here instead of stdout");

  CheckCommand check_cmd;
  auto* ck_cmd = app.add_subcommand(
      "check-submodular",
      "Exhaustively check submodularity and monotonicity of the rate");
  add_channel_options(ck_cmd, check_cmd.channels);
  ck_cmd->add_option("--tolerance", check_cmd.tolerance, "Violation tolerance")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  ck_cmd->add_option("--output", check_cmd.output,
                     "Write pairwise violations as CSV");

  SimulateCommand simulate;
  auto* sim_cmd = app.add_subcommand(
      "simulate", "Allocate one instance and report utilities and ratios");
  add_instance_options(sim_cmd, simulate.instance);
  sim_cmd->add_option("--save-instance", simulate.save_instance,
                      "Write the weight matrix CSV for later replay");

  ExperimentCommand experiment;
  auto* exp_cmd = app.add_subcommand(
      "ratio-experiment", "Run trials and emit per-record competitive ratios");
  add_instance_options(exp_cmd, experiment.instance);
  exp_cmd->add_option("--trials", experiment.trials, "Trials per (profile, n)")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  exp_cmd->add_option("--summary", experiment.summary,
                      "Write the summary table here instead of stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*wf_cmd) waterfill.run();
    if (*ck_cmd) check_cmd.run();
    if (*sim_cmd) simulate.run();
    if (*exp_cmd) experiment.run();
  } catch (const Failure& f) {
    return exit_code(f.status);
  }
  return kExitOk;
}
