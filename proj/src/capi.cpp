#include "magcav/magcav.h"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "config.hpp"
#include "error.hpp"
#include "io.hpp"
#include "sweep.hpp"
#include "validation.hpp"

struct magcav_config {
  magcav::RunConfig config;
  std::string scratch;
};

struct magcav_point {
  magcav::PointResult result;
  std::string report;
  std::string json;
};

struct magcav_grid {
  magcav::GridResult result;
  std::string summary;
};

struct magcav_validation {
  std::vector<magcav::OracleOutcome> outcomes;
};

namespace {

thread_local std::string g_last_error;

magcav_status to_status(magcav::ErrorKind kind) {
  using magcav::ErrorKind;
  switch (kind) {
    case ErrorKind::kInvalidParameters: return MAGCAV_ERR_INVALID_PARAMETERS;
    case ErrorKind::kSingularSteadyState: return MAGCAV_ERR_SINGULAR;
    case ErrorKind::kNumerical: return MAGCAV_ERR_NUMERICAL;
    case ErrorKind::kNoUniqueSolution: return MAGCAV_ERR_NO_UNIQUE_SOLUTION;
    case ErrorKind::kBudgetExceeded: return MAGCAV_ERR_BUDGET_EXCEEDED;
    case ErrorKind::kUndefinedLocus: return MAGCAV_ERR_UNDEFINED_LOCUS;
    case ErrorKind::kInvalidConfig: return MAGCAV_ERR_INVALID_CONFIG;
    case ErrorKind::kUnknownPreset: return MAGCAV_ERR_UNKNOWN_PRESET;
    case ErrorKind::kIo: return MAGCAV_ERR_IO;
  }
  return MAGCAV_ERR_INTERNAL;
}

magcav_status fail(magcav_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <typename F>
magcav_status guard(F&& body) {
  try {
    body();
    return MAGCAV_OK;
  } catch (const magcav::Error& e) {
    return fail(to_status(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(MAGCAV_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MAGCAV_ERR_INTERNAL, e.what());
  }
}

bool valid_quantity(magcav_quantity q) {
  return q >= MAGCAV_Q_AXIS1 && q < MAGCAV_Q_COUNT;
}

magcav_status null_argument(const char* what) {
  return fail(MAGCAV_ERR_INVALID_ARGUMENT, std::string("null ") + what);
}

}  // namespace

static_assert(MAGCAV_Q_COUNT == magcav::kQuantityCount);
static_assert(MAGCAV_CSV_COLUMNS == magcav::kCsvColumnCount);

extern "C" {

const char* magcav_version(void) { return "1.0.0"; }

const char* magcav_last_error(void) { return g_last_error.c_str(); }

const char* magcav_status_string(magcav_status status) {
  switch (status) {
    case MAGCAV_OK: return "ok";
    case MAGCAV_ERR_INVALID_ARGUMENT: return "invalid argument";
    case MAGCAV_ERR_INVALID_PARAMETERS: return "invalid parameters";
    case MAGCAV_ERR_INVALID_CONFIG: return "invalid configuration";
    case MAGCAV_ERR_UNKNOWN_PRESET: return "unknown preset";
    case MAGCAV_ERR_SINGULAR: return "singular steady state";
    case MAGCAV_ERR_NO_UNIQUE_SOLUTION: return "no unique Lyapunov solution";
    case MAGCAV_ERR_NUMERICAL: return "numerical failure";
    case MAGCAV_ERR_BUDGET_EXCEEDED: return "step budget exceeded";
    case MAGCAV_ERR_UNDEFINED_LOCUS: return "undefined resonance locus";
    case MAGCAV_ERR_IO: return "i/o error";
    case MAGCAV_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* magcav_quantity_name(magcav_quantity q) {
  if (!valid_quantity(q)) return nullptr;
  // Names are literals in the library, so the view is NUL-terminated.
  return magcav::quantity_name(static_cast<magcav::Quantity>(q)).data();
}

magcav_status magcav_config_create(magcav_config** out) {
  if (out == nullptr) return null_argument("output pointer");
  return guard([&] { *out = new magcav_config(); });
}

void magcav_config_destroy(magcav_config* cfg) { delete cfg; }

magcav_status magcav_config_set(magcav_config* cfg, const char* key,
                                const char* value) {
  if (cfg == nullptr || key == nullptr || value == nullptr) {
    return null_argument("config, key or value");
  }
  return guard([&] { cfg->config.set(key, value); });
}

magcav_status magcav_config_load_file(magcav_config* cfg, const char* path) {
  if (cfg == nullptr || path == nullptr) return null_argument("config or path");
  return guard([&] { cfg->config.load_file(path); });
}

const char* magcav_config_get(const magcav_config* cfg, const char* key) {
  if (cfg == nullptr || key == nullptr) return nullptr;
  auto v = cfg->config.get(key);
  if (!v) return nullptr;
  auto* self = const_cast<magcav_config*>(cfg);
  self->scratch = std::move(*v);
  return self->scratch.c_str();
}

size_t magcav_config_key_count(void) { return magcav::config_keys().size(); }

const char* magcav_config_key_name(size_t index) {
  const auto keys = magcav::config_keys();
  return index < keys.size() ? keys[index].name.data() : nullptr;
}

const char* magcav_config_key_default(size_t index) {
  const auto keys = magcav::config_keys();
  return index < keys.size() ? keys[index].default_value.data() : nullptr;
}

const char* magcav_config_key_help(size_t index) {
  const auto keys = magcav::config_keys();
  return index < keys.size() ? keys[index].help.data() : nullptr;
}

unsigned magcav_config_workers(const magcav_config* cfg) {
  if (cfg == nullptr) return 1;
  try {
    return cfg->config.workers();
  } catch (const std::exception&) {
    return 1;
  }
}

size_t magcav_preset_count(void) { return magcav::figure_preset_names().size(); }

const char* magcav_preset_name(size_t index) {
  static const std::vector<std::string> names = magcav::figure_preset_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

magcav_status magcav_point_run(const magcav_config* cfg, magcav_point** out) {
  if (cfg == nullptr || out == nullptr) return null_argument("config or output");
  return guard([&] {
    auto pt = std::make_unique<magcav_point>();
    pt->result = magcav::run_point(cfg->config.params(), cfg->config.point_options());
    pt->report = magcav::point_report(pt->result);
    pt->json = magcav::point_json(pt->result).dump(2);
    *out = pt.release();
  });
}

void magcav_point_destroy(magcav_point* pt) { delete pt; }

magcav_point_status magcav_point_state(const magcav_point* pt) {
  if (pt == nullptr) return MAGCAV_POINT_ERROR;
  switch (pt->result.status) {
    case magcav::PointStatus::kOk: return MAGCAV_POINT_OK;
    case magcav::PointStatus::kUnstable: return MAGCAV_POINT_UNSTABLE;
    case magcav::PointStatus::kError: return MAGCAV_POINT_ERROR;
  }
  return MAGCAV_POINT_ERROR;
}

magcav_status magcav_point_get(const magcav_point* pt, magcav_quantity q,
                               double* out) {
  if (pt == nullptr || out == nullptr) return null_argument("point or output");
  if (!valid_quantity(q)) return fail(MAGCAV_ERR_INVALID_ARGUMENT, "bad quantity");
  *out = magcav::point_quantity(pt->result, static_cast<magcav::Quantity>(q));
  return MAGCAV_OK;
}

magcav_status magcav_point_eigenvalues(const magcav_point* pt, double* re,
                                       double* im) {
  if (pt == nullptr || re == nullptr || im == nullptr) {
    return null_argument("point or output");
  }
  if (!pt->result.stability) {
    return fail(MAGCAV_ERR_INVALID_ARGUMENT, "point has no stability report");
  }
  for (int k = 0; k < 6; ++k) {
    re[k] = pt->result.stability->eigenvalues[k].real();
    im[k] = pt->result.stability->eigenvalues[k].imag();
  }
  return MAGCAV_OK;
}

magcav_status magcav_point_covariance(const magcav_point* pt, double* out36) {
  if (pt == nullptr || out36 == nullptr) return null_argument("point or output");
  if (!pt->result.covariance) {
    return fail(MAGCAV_ERR_INVALID_ARGUMENT, "point is not stable");
  }
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) out36[6 * i + j] = (*pt->result.covariance)(i, j);
  }
  return MAGCAV_OK;
}

const char* magcav_point_report(const magcav_point* pt) {
  return pt ? pt->report.c_str() : nullptr;
}

const char* magcav_point_json(const magcav_point* pt) {
  return pt ? pt->json.c_str() : nullptr;
}

magcav_status magcav_grid_run(const magcav_config* cfg, unsigned workers,
                              magcav_grid** out) {
  if (cfg == nullptr || out == nullptr) return null_argument("config or output");
  return guard([&] {
    auto grid = std::make_unique<magcav_grid>();
    grid->result = magcav::run_grid(cfg->config.grid(), workers);
    grid->summary = magcav::grid_summary_json(grid->result).dump(2);
    *out = grid.release();
  });
}

void magcav_grid_destroy(magcav_grid* grid) { delete grid; }

size_t magcav_grid_size(const magcav_grid* grid) {
  return grid ? grid->result.points.size() : 0;
}

magcav_status magcav_grid_get(const magcav_grid* grid, size_t index,
                              magcav_quantity q, double* out) {
  if (grid == nullptr || out == nullptr) return null_argument("grid or output");
  if (!valid_quantity(q) || index >= grid->result.points.size()) {
    return fail(MAGCAV_ERR_INVALID_ARGUMENT, "bad quantity or index");
  }
  *out = grid->result.value(index, static_cast<magcav::Quantity>(q));
  return MAGCAV_OK;
}

magcav_status magcav_grid_counts(const magcav_grid* grid, size_t* stable,
                                 size_t* unstable, size_t* errors) {
  if (grid == nullptr) return null_argument("grid");
  if (stable) *stable = grid->result.stable_count;
  if (unstable) *unstable = grid->result.unstable_count;
  if (errors) *errors = grid->result.error_count;
  return MAGCAV_OK;
}

magcav_status magcav_grid_max(const magcav_grid* grid, magcav_quantity q,
                              int* found, double* value, double* axis1,
                              double* axis2) {
  if (grid == nullptr || found == nullptr) return null_argument("grid or output");
  if (q < MAGCAV_Q_N1 || q >= MAGCAV_Q_COUNT) {
    return fail(MAGCAV_ERR_INVALID_ARGUMENT, "quantity has no summary");
  }
  const magcav::SummaryEntry& s = grid->result.summary[q];
  *found = s.found ? 1 : 0;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (value) *value = s.found ? s.value : nan;
  if (axis1) *axis1 = s.found ? s.axis1 : nan;
  if (axis2) *axis2 = s.found ? s.axis2 : nan;
  return MAGCAV_OK;
}

magcav_status magcav_grid_write_csv(const magcav_grid* grid, const char* path) {
  if (grid == nullptr || path == nullptr) return null_argument("grid or path");
  return guard([&] {
    std::ostringstream os;
    magcav::write_csv(grid->result, os);
    magcav::write_text_file(path, os.str());
  });
}

const char* magcav_grid_summary_json(const magcav_grid* grid) {
  return grid ? grid->summary.c_str() : nullptr;
}

magcav_status magcav_validate_run(double tolerance, magcav_validation** out) {
  if (out == nullptr) return null_argument("output pointer");
  return guard([&] {
    magcav::ValidationOptions opts;
    if (tolerance > 0.0) opts.tolerance_override = tolerance;
    auto v = std::make_unique<magcav_validation>();
    v->outcomes = magcav::run_validation(opts);
    *out = v.release();
  });
}

void magcav_validation_destroy(magcav_validation* v) { delete v; }

size_t magcav_validation_count(const magcav_validation* v) {
  return v ? v->outcomes.size() : 0;
}

magcav_status magcav_validation_entry(const magcav_validation* v, size_t index,
                                      const char** name, int* passed,
                                      double* worst, double* tolerance,
                                      const char** detail) {
  if (v == nullptr) return null_argument("validation");
  if (index >= v->outcomes.size()) {
    return fail(MAGCAV_ERR_INVALID_ARGUMENT, "index out of range");
  }
  const magcav::OracleOutcome& o = v->outcomes[index];
  if (name) *name = o.name.c_str();
  if (passed) *passed = o.passed ? 1 : 0;
  if (worst) *worst = o.worst;
  if (tolerance) *tolerance = o.tolerance;
  if (detail) *detail = o.detail.c_str();
  return MAGCAV_OK;
}

int magcav_validation_all_passed(const magcav_validation* v) {
  if (v == nullptr) return 0;
  for (const auto& o : v->outcomes) {
    if (!o.passed) return 0;
  }
  return 1;
}

}  // extern "C"
