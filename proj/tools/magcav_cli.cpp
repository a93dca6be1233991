// Command-line front end over the magcav C API.
//
//   magcav point    [--config FILE] [--KEY VALUE ...] [--json PATH]
//   magcav sweep    [--config FILE] [--preset NAME] [--KEY VALUE ...]
//                   [--csv PATH] [--json PATH] [--workers N]
//   magcav validate [--tol X]
//
// Exit codes: 0 success, 1 failure (oracle or numerical), 2 invalid
// configuration, 3 unstable point, 4 output not writable.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "magcav/magcav.h"

namespace {

enum Exit { kOk = 0, kFailure = 1, kBadConfig = 2, kUnstable = 3, kUnwritable = 4 };

struct ConfigDeleter {
  void operator()(magcav_config* c) const { magcav_config_destroy(c); }
};
struct PointDeleter {
  void operator()(magcav_point* p) const { magcav_point_destroy(p); }
};
struct GridDeleter {
  void operator()(magcav_grid* g) const { magcav_grid_destroy(g); }
};
struct ValidationDeleter {
  void operator()(magcav_validation* v) const { magcav_validation_destroy(v); }
};

using ConfigPtr = std::unique_ptr<magcav_config, ConfigDeleter>;

int report_error(magcav_status status, const char* context) {
  std::fprintf(stderr, "magcav: %s: %s: %s\n", context,
               magcav_status_string(status), magcav_last_error());
  switch (status) {
    case MAGCAV_ERR_INVALID_CONFIG:
    case MAGCAV_ERR_INVALID_PARAMETERS:
    case MAGCAV_ERR_UNKNOWN_PRESET:
      return kBadConfig;
    case MAGCAV_ERR_IO:
      return kUnwritable;
    default:
      return kFailure;
  }
}

/// Options shared by `point` and `sweep`: a config file plus one flag per
/// configuration key. Flags are applied after the file, so they win.
struct ConfigOptions {
  std::string file;
  std::map<std::string, std::string> values;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", file, "key = value configuration file");
    for (size_t i = 0; i < magcav_config_key_count(); ++i) {
      const std::string key = magcav_config_key_name(i);
      std::string help = magcav_config_key_help(i);
      if (const char* def = magcav_config_key_default(i); def && *def) {
        help += " [default: " + std::string(def) + "]";
      }
      cmd->add_option_function<std::string>(
             "--" + key,
             [this, key](const std::string& v) { values[key] = v; }, help)
          ->allow_extra_args(false);
    }
  }

  int build(ConfigPtr& out) const {
    magcav_config* raw = nullptr;
    if (magcav_status s = magcav_config_create(&raw); s != MAGCAV_OK) {
      return report_error(s, "config");
    }
    out.reset(raw);
    if (!file.empty()) {
      if (magcav_status s = magcav_config_load_file(raw, file.c_str());
          s != MAGCAV_OK) {
        return report_error(s, "config file");
      }
    }
    for (const auto& [key, value] : values) {
      if (magcav_status s = magcav_config_set(raw, key.c_str(), value.c_str());
          s != MAGCAV_OK) {
        return report_error(s, ("--" + key).c_str());
      }
    }
    return kOk;
  }
};

bool write_file(const std::string& path, const char* text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return false;
  out << text;
  return static_cast<bool>(out.flush());
}

int cmd_point(const ConfigOptions& opts) {
  ConfigPtr cfg;
  if (int rc = opts.build(cfg); rc != kOk) return rc;

  magcav_point* raw = nullptr;
  if (magcav_status s = magcav_point_run(cfg.get(), &raw); s != MAGCAV_OK) {
    return report_error(s, "point");
  }
  std::unique_ptr<magcav_point, PointDeleter> pt(raw);
  std::fputs(magcav_point_report(pt.get()), stdout);

  if (const char* json = magcav_config_get(cfg.get(), "json")) {
    const std::string path = json;
    if (!write_file(path, magcav_point_json(pt.get()))) {
      std::fprintf(stderr, "magcav: cannot write '%s'\n", path.c_str());
      return kUnwritable;
    }
  }
  switch (magcav_point_state(pt.get())) {
    case MAGCAV_POINT_OK: return kOk;
    case MAGCAV_POINT_UNSTABLE: return kUnstable;
    case MAGCAV_POINT_ERROR: return kFailure;
  }
  return kFailure;
}

int cmd_sweep(const ConfigOptions& opts) {
  ConfigPtr cfg;
  if (int rc = opts.build(cfg); rc != kOk) return rc;

  // Probe output paths before the sweep so a bad path fails fast.
  std::optional<std::string> csv, json;
  if (const char* p = magcav_config_get(cfg.get(), "csv")) csv = p;
  if (const char* p = magcav_config_get(cfg.get(), "json")) json = p;
  for (const auto& path : {csv, json}) {
    if (path && !std::ofstream(*path, std::ios::app)) {
      std::fprintf(stderr, "magcav: cannot write '%s'\n", path->c_str());
      return kUnwritable;
    }
  }

  magcav_grid* raw = nullptr;
  if (magcav_status s =
          magcav_grid_run(cfg.get(), magcav_config_workers(cfg.get()), &raw);
      s != MAGCAV_OK) {
    return report_error(s, "sweep");
  }
  std::unique_ptr<magcav_grid, GridDeleter> grid(raw);

  if (csv) {
    if (magcav_status s = magcav_grid_write_csv(grid.get(), csv->c_str());
        s != MAGCAV_OK) {
      return report_error(s, "csv");
    }
  }
  if (json && !write_file(*json, magcav_grid_summary_json(grid.get()))) {
    std::fprintf(stderr, "magcav: cannot write '%s'\n", json->c_str());
    return kUnwritable;
  }

  size_t stable = 0, unstable = 0, errors = 0;
  magcav_grid_counts(grid.get(), &stable, &unstable, &errors);
  std::printf("%zu points: %zu stable, %zu unstable, %zu errors\n",
              magcav_grid_size(grid.get()), stable, unstable, errors);
  std::printf("%-14s %14s %14s %14s\n", "quantity", "max", "axis1", "axis2");
  for (int q = MAGCAV_Q_N1; q < MAGCAV_CSV_COLUMNS; ++q) {
    int found = 0;
    double value = 0, a1 = 0, a2 = 0;
    magcav_grid_max(grid.get(), static_cast<magcav_quantity>(q), &found, &value,
                    &a1, &a2);
    if (!found) continue;
    std::printf("%-14s %14.6g %14.6g %14.6g\n",
                magcav_quantity_name(static_cast<magcav_quantity>(q)), value,
                a1, a2);
  }
  return kOk;
}

int cmd_validate(double tol) {
  magcav_validation* raw = nullptr;
  if (magcav_status s = magcav_validate_run(tol, &raw); s != MAGCAV_OK) {
    return report_error(s, "validate");
  }
  std::unique_ptr<magcav_validation, ValidationDeleter> v(raw);
  for (size_t i = 0; i < magcav_validation_count(v.get()); ++i) {
    const char* name = nullptr;
    const char* detail = nullptr;
    int passed = 0;
    double worst = 0, limit = 0;
    magcav_validation_entry(v.get(), i, &name, &passed, &worst, &limit, &detail);
    std::printf("[%s] %-24s worst %-12.4g tol %-10.3g %s\n",
                passed ? "PASS" : "FAIL", name, worst, limit, detail);
  }
  return magcav_validation_all_passed(v.get()) ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady-state entanglement and squeezing of a squeezed-driven "
               "two-cavity magnon system"};
  app.require_subcommand(1);
  app.set_version_flag("--version", magcav_version());

  ConfigOptions point_opts;
  CLI::App* point = app.add_subcommand("point", "evaluate a single parameter point");
  point_opts.attach(point);

  ConfigOptions sweep_opts;
  CLI::App* sweep = app.add_subcommand("sweep", "evaluate a 1-D or 2-D grid");
  sweep_opts.attach(sweep);

  double tol = 0.0;
  CLI::App* validate = app.add_subcommand("validate", "run the oracle battery");
  validate->add_option("--tol", tol, "override every oracle tolerance")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kBadConfig;
  }

  if (*point) return cmd_point(point_opts);
  if (*sweep) return cmd_sweep(sweep_opts);
  return cmd_validate(tol);
}
