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

#include "wfalloc/wfalloc.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "wfalloc/allocation.hpp"
#include "wfalloc/errors.hpp"
#include "wfalloc/experiment.hpp"
#include "wfalloc/snr_profiles.hpp"
#include "wfalloc/submodularity.hpp"
#include "wfalloc/waterfill.hpp"

struct wf_solution {
  wfalloc::WaterfillSolution solution;
};

struct wf_lab_report {
  std::vector<wfalloc::SubmodularityViolation> pairwise;
  long monotone = -1;
  long setpair = -1;
  double max_gap = 0.0;
};

struct wf_matrix {
  wfalloc::WeightMatrix matrix;
};

struct wf_records {
  std::vector<wfalloc::ExperimentRecord> records;
};

namespace {

thread_local std::string last_error;

wf_status fail(wf_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs body, translating exceptions into status codes.
template <typename Body>
wf_status guarded(Body&& body) {
  try {
    body();
    return WF_OK;
  } catch (const wfalloc::InstanceTooLarge& e) {
    return fail(WF_ERR_TOO_LARGE, e.what());
  } catch (const wfalloc::IoError& e) {
    return fail(WF_ERR_IO, e.what());
  } catch (const wfalloc::ParseError& e) {
    return fail(WF_ERR_PARSE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(WF_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(WF_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(WF_ERR_INTERNAL, e.what());
  }
}

#define WF_REQUIRE(cond, msg) \
  if (!(cond)) return fail(WF_ERR_INVALID_ARGUMENT, msg)

wfalloc::Strategy to_cpp(wf_strategy s) {
  switch (s) {
    case WF_STRATEGY_GREEDY: return wfalloc::Strategy::kGreedy;
    case WF_STRATEGY_GREEDY_ABSOLUTE: return wfalloc::Strategy::kGreedyAbsolute;
    case WF_STRATEGY_MAX_WEIGHT: return wfalloc::Strategy::kMaxWeight;
  }
  throw std::invalid_argument("unknown strategy " + std::to_string(s));
}

wf_strategy to_c(wfalloc::Strategy s) {
  switch (s) {
    case wfalloc::Strategy::kGreedy: return WF_STRATEGY_GREEDY;
    case wfalloc::Strategy::kGreedyAbsolute: return WF_STRATEGY_GREEDY_ABSOLUTE;
    case wfalloc::Strategy::kMaxWeight: return WF_STRATEGY_MAX_WEIGHT;
  }
  return WF_STRATEGY_GREEDY;
}

wfalloc::ReferenceKind to_cpp(wf_reference r) {
  switch (r) {
    case WF_REFERENCE_BRUTE_FORCE: return wfalloc::ReferenceKind::kBruteForceOptimum;
    case WF_REFERENCE_ANALYTIC_UPPER:
      return wfalloc::ReferenceKind::kAnalyticUpperBound;
  }
  throw std::invalid_argument("unknown reference kind " + std::to_string(r));
}

wf_reference to_c(wfalloc::ReferenceKind r) {
  return r == wfalloc::ReferenceKind::kBruteForceOptimum
             ? WF_REFERENCE_BRUTE_FORCE
             : WF_REFERENCE_ANALYTIC_UPPER;
}

wfalloc::ProfileKind to_cpp(wf_profile p) {
  switch (p) {
    case WF_PROFILE_IID_UNIT: return wfalloc::ProfileKind::kIidUnit;
    case WF_PROFILE_IID_TEN: return wfalloc::ProfileKind::kIidTen;
    case WF_PROFILE_MIXED_HALF: return wfalloc::ProfileKind::kMixedHalf;
    case WF_PROFILE_SPARSE_STRONG: return wfalloc::ProfileKind::kSparseStrong;
    case WF_PROFILE_CORRELATED: return wfalloc::ProfileKind::kCorrelated;
  }
  throw std::invalid_argument("unknown profile " + std::to_string(p));
}

// Writes via `emit` to path, or to the fallback stream when path is NULL.
template <typename Emit>
void write_to(const char* path, std::ostream& fallback, Emit&& emit) {
  if (path == nullptr) {
    emit(fallback);
    fallback.flush();
    if (!fallback) throw wfalloc::IoError("write to standard stream failed");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw wfalloc::IoError(std::string("cannot open ") + path);
  emit(out);
  out.flush();
  if (!out) throw wfalloc::IoError(std::string("failed writing ") + path);
}

std::vector<double> span_copy(const double* data, size_t count) {
  return count == 0 ? std::vector<double>{}
                    : std::vector<double>(data, data + count);
}

}  // namespace

extern "C" {

const char* wf_version(void) { return "1.0.0"; }

const char* wf_last_error(void) { return last_error.c_str(); }

const char* wf_status_name(wf_status status) {
  switch (status) {
    case WF_OK: return "ok";
    case WF_ERR_INVALID_ARGUMENT: return "invalid argument";
    case WF_ERR_TOO_LARGE: return "instance too large";
    case WF_ERR_IO: return "i/o error";
    case WF_ERR_PARSE: return "parse error";
    case WF_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* wf_rng_name(void) { return wfalloc::kRngName.data(); }

wf_status wf_profile_from_name(const char* name, wf_profile* out) {
  WF_REQUIRE(name != nullptr && out != nullptr, "null argument");
  const auto kind = wfalloc::parse_profile(name);
  if (!kind) return fail(WF_ERR_INVALID_ARGUMENT, std::string("unknown profile ") + name);
  *out = static_cast<wf_profile>(*kind);
  return WF_OK;
}

wf_status wf_strategy_from_name(const char* name, wf_strategy* out) {
  WF_REQUIRE(name != nullptr && out != nullptr, "null argument");
  const auto s = wfalloc::parse_strategy(name);
  if (!s) return fail(WF_ERR_INVALID_ARGUMENT, std::string("unknown strategy ") + name);
  *out = to_c(*s);
  return WF_OK;
}

wf_status wf_reference_from_name(const char* name, wf_reference* out) {
  WF_REQUIRE(name != nullptr && out != nullptr, "null argument");
  const auto r = wfalloc::parse_reference(name);
  if (!r) return fail(WF_ERR_INVALID_ARGUMENT, std::string("unknown reference ") + name);
  *out = to_c(*r);
  return WF_OK;
}

// to_string returns views of string literals, so data() is NUL-terminated.
const char* wf_profile_name(wf_profile profile) {
  try {
    return wfalloc::to_string(to_cpp(profile)).data();
  } catch (const std::exception&) {
    return "unknown";
  }
}

const char* wf_strategy_name(wf_strategy strategy) {
  try {
    return wfalloc::to_string(to_cpp(strategy)).data();
  } catch (const std::exception&) {
    return "unknown";
  }
}

const char* wf_reference_name(wf_reference reference) {
  try {
    return wfalloc::to_string(to_cpp(reference)).data();
  } catch (const std::exception&) {
    return "unknown";
  }
}

wf_status wf_waterfill(const double* noises, size_t count, double budget,
                       wf_solution** out) {
  WF_REQUIRE(out != nullptr, "null output handle");
  WF_REQUIRE(noises != nullptr || count == 0, "null noise array");
  return guarded([&] {
    const auto values = span_copy(noises, count);
    *out = new wf_solution{wfalloc::waterfill(wfalloc::NoiseProfile(values, budget))};
  });
}

void wf_solution_free(wf_solution* solution) { delete solution; }

size_t wf_solution_channels(const wf_solution* solution) {
  return solution ? solution->solution.powers.size() : 0;
}

int wf_solution_has_level(const wf_solution* solution) {
  return solution && solution->solution.water_level.has_value();
}

double wf_solution_level(const wf_solution* solution) {
  if (!wf_solution_has_level(solution)) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return *solution->solution.water_level;
}

double wf_solution_rate(const wf_solution* solution) {
  return solution ? solution->solution.rate : 0.0;
}

double wf_solution_power(const wf_solution* solution, size_t channel) {
  if (!solution || channel >= solution->solution.powers.size()) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return solution->solution.powers[channel];
}

int wf_solution_is_active(const wf_solution* solution, size_t channel) {
  return solution && solution->solution.is_active(channel);
}

wf_status wf_log_utility(const double* snrs, size_t count, double budget,
                         double* out) {
  WF_REQUIRE(out != nullptr, "null output");
  WF_REQUIRE(snrs != nullptr || count == 0, "null SNR array");
  return guarded([&] {
    const auto values = span_copy(snrs, count);
    *out = wfalloc::log_utility(values, budget);
  });
}

wf_status wf_check_waterfill(const double* noises, size_t count, double budget,
                             double tolerance, wf_lab_report** out) {
  WF_REQUIRE(out != nullptr, "null output handle");
  WF_REQUIRE(noises != nullptr || count == 0, "null noise array");
  return guarded([&] {
    const auto values = span_copy(noises, count);
    const wfalloc::NoiseProfile profile(values, budget);
    const auto oracle = wfalloc::waterfill_rate_oracle(profile);
    auto report = std::make_unique<wf_lab_report>();
    report->pairwise = wfalloc::check_submodular_pairwise(oracle, tolerance);
    report->max_gap = wfalloc::max_pairwise_gap(oracle);
    if (count <= wfalloc::kMonotoneCap) {
      report->monotone = static_cast<long>(
          wfalloc::check_monotone(oracle, tolerance).size());
    }
    if (count <= wfalloc::kSetPairCap) {
      report->setpair = static_cast<long>(
          wfalloc::check_setpair_submodular(oracle, tolerance).size());
    }
    *out = report.release();
  });
}

void wf_lab_report_free(wf_lab_report* report) { delete report; }

size_t wf_lab_report_pairwise_count(const wf_lab_report* report) {
  return report ? report->pairwise.size() : 0;
}

wf_status wf_lab_report_pairwise(const wf_lab_report* report, size_t index,
                                 wf_violation* out) {
  WF_REQUIRE(report != nullptr && out != nullptr, "null argument");
  WF_REQUIRE(index < report->pairwise.size(), "violation index out of range");
  const auto& v = report->pairwise[index];
  *out = {v.base_set.bits(), v.elem_i, v.elem_j, v.lhs, v.rhs, v.gap};
  return WF_OK;
}

long wf_lab_report_monotone_count(const wf_lab_report* report) {
  return report ? report->monotone : -1;
}

long wf_lab_report_setpair_count(const wf_lab_report* report) {
  return report ? report->setpair : -1;
}

double wf_lab_report_max_gap(const wf_lab_report* report) {
  return report ? report->max_gap : 0.0;
}

wf_status wf_lab_report_write_csv(const wf_lab_report* report, const char* path) {
  WF_REQUIRE(report != nullptr, "null report");
  return guarded([&] {
    write_to(path, std::cout, [&](std::ostream& os) {
      wfalloc::write_violations_csv(os, report->pairwise);
    });
  });
}

wf_status wf_matrix_create(const double* row_major, size_t users,
                           size_t basestations, wf_matrix** out) {
  WF_REQUIRE(out != nullptr, "null output handle");
  WF_REQUIRE(row_major != nullptr || users * basestations == 0, "null data");
  return guarded([&] {
    *out = new wf_matrix{wfalloc::WeightMatrix(
        users, basestations, span_copy(row_major, users * basestations))};
  });
}

wf_status wf_matrix_generate(wf_profile profile, size_t users,
                             size_t basestations, uint64_t seed,
                             wf_matrix** out) {
  WF_REQUIRE(out != nullptr, "null output handle");
  return guarded([&] {
    *out = new wf_matrix{
        wfalloc::generate({to_cpp(profile), users, basestations, seed})};
  });
}

wf_status wf_matrix_read_csv(const char* path, wf_matrix** out) {
  WF_REQUIRE(path != nullptr && out != nullptr, "null argument");
  return guarded([&] { *out = new wf_matrix{wfalloc::replay_from_csv(path)}; });
}

wf_status wf_matrix_write_csv(const wf_matrix* matrix, const char* path) {
  WF_REQUIRE(matrix != nullptr, "null matrix");
  return guarded([&] {
    write_to(path, std::cout, [&](std::ostream& os) {
      wfalloc::write_weight_csv(os, matrix->matrix);
    });
  });
}

void wf_matrix_free(wf_matrix* matrix) { delete matrix; }

size_t wf_matrix_users(const wf_matrix* matrix) {
  return matrix ? matrix->matrix.users() : 0;
}

size_t wf_matrix_basestations(const wf_matrix* matrix) {
  return matrix ? matrix->matrix.basestations() : 0;
}

double wf_matrix_at(const wf_matrix* matrix, size_t user, size_t bs) {
  if (!matrix || user >= matrix->matrix.users() ||
      bs >= matrix->matrix.basestations()) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return matrix->matrix.at(user, bs);
}

wf_status wf_allocate(const wf_matrix* matrix, wf_strategy strategy,
                      size_t* owners, double* utility) {
  WF_REQUIRE(matrix != nullptr, "null matrix");
  return guarded([&] {
    const auto alloc = wfalloc::run_strategy(matrix->matrix, to_cpp(strategy));
    const double value = wfalloc::system_utility(alloc, matrix->matrix);
    if (owners) std::copy(alloc.owners().begin(), alloc.owners().end(), owners);
    if (utility) *utility = value;
  });
}

wf_status wf_system_utility(const wf_matrix* matrix, const size_t* owners,
                            double* out) {
  WF_REQUIRE(matrix != nullptr && out != nullptr, "null argument");
  WF_REQUIRE(owners != nullptr || matrix->matrix.users() == 0, "null owners");
  return guarded([&] {
    const std::vector<wfalloc::BasestationId> assignment(
        owners, owners + matrix->matrix.users());
    *out = wfalloc::system_utility(
        wfalloc::Allocation(matrix->matrix.basestations(), assignment),
        matrix->matrix);
  });
}

wf_status wf_offline_optimum(const wf_matrix* matrix, size_t* owners,
                             double* value) {
  WF_REQUIRE(matrix != nullptr, "null matrix");
  return guarded([&] {
    const auto best = wfalloc::offline_bruteforce(matrix->matrix);
    if (owners) {
      std::copy(best.allocation.owners().begin(),
                best.allocation.owners().end(), owners);
    }
    if (value) *value = best.value;
  });
}

wf_status wf_offline_upper_bound(const wf_matrix* matrix, double* out) {
  WF_REQUIRE(matrix != nullptr && out != nullptr, "null argument");
  return guarded([&] { *out = wfalloc::offline_upper_bound(matrix->matrix); });
}

wf_status wf_competitive_ratio(const wf_matrix* matrix, wf_strategy strategy,
                               wf_reference reference, wf_ratio_report* out) {
  WF_REQUIRE(matrix != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    const auto r = wfalloc::competitive_ratio(matrix->matrix, to_cpp(strategy),
                                              to_cpp(reference));
    *out = {r.online_utility, r.offline_reference, to_c(r.reference_kind),
            r.ratio};
  });
}

wf_status wf_records_create(wf_records** out) {
  WF_REQUIRE(out != nullptr, "null output handle");
  return guarded([&] { *out = new wf_records{}; });
}

void wf_records_free(wf_records* records) { delete records; }

wf_status wf_run_experiment(const wf_experiment_config* config,
                            wf_records* records) {
  WF_REQUIRE(config != nullptr && records != nullptr, "null argument");
  WF_REQUIRE(config->strategies != nullptr || config->strategy_count == 0,
             "null strategy array");
  return guarded([&] {
    wfalloc::ExperimentConfig cfg;
    cfg.profile = to_cpp(config->profile);
    cfg.users = config->users;
    cfg.basestations = config->basestations;
    cfg.trials = config->trials;
    cfg.strategies.clear();
    for (size_t k = 0; k < config->strategy_count; ++k) {
      cfg.strategies.push_back(to_cpp(config->strategies[k]));
    }
    cfg.reference = to_cpp(config->reference);
    cfg.seed = config->seed;
    if (config->fixed_instance) cfg.fixed_instance = config->fixed_instance->matrix;
    auto produced = wfalloc::run_experiment(cfg);
    records->records.insert(records->records.end(),
                            std::make_move_iterator(produced.begin()),
                            std::make_move_iterator(produced.end()));
  });
}

size_t wf_records_size(const wf_records* records) {
  return records ? records->records.size() : 0;
}

wf_status wf_records_get(const wf_records* records, size_t index,
                         wf_record* out) {
  WF_REQUIRE(records != nullptr && out != nullptr, "null argument");
  WF_REQUIRE(index < records->records.size(), "record index out of range");
  const auto& r = records->records[index];
  *out = {r.trial,   r.n,       r.m,
          r.profile.c_str(), to_c(r.strategy), r.utility,
          r.offline_bound,   to_c(r.reference_kind), r.ratio,
          r.seed};
  return WF_OK;
}

wf_status wf_records_write_csv(const wf_records* records, const char* path) {
  WF_REQUIRE(records != nullptr, "null records");
  return guarded([&] {
    write_to(path, std::cout, [&](std::ostream& os) {
      wfalloc::write_records_csv(os, records->records);
    });
  });
}

wf_status wf_records_write_summary(const wf_records* records, const char* path) {
  WF_REQUIRE(records != nullptr, "null records");
  return guarded([&] {
    const auto rows = wfalloc::summarize(records->records);
    write_to(path, std::cerr,
             [&](std::ostream& os) { wfalloc::write_summary(os, rows); });
  });
}

}  // extern "C"
