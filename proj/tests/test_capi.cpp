// Exercises the shared library through its C interface only.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include <doctest.h>

#include <magcav/magcav.h>

namespace {

struct Config {
  magcav_config* p = nullptr;
  Config() { REQUIRE(magcav_config_create(&p) == MAGCAV_OK); }
  ~Config() { magcav_config_destroy(p); }
};

}  // namespace

TEST_CASE("c api: basics") {
  CHECK(std::string(magcav_version()).size() > 0);
  CHECK(std::string(magcav_status_string(MAGCAV_ERR_IO)).size() > 0);
  CHECK(std::string(magcav_quantity_name(MAGCAV_Q_E_A1M)) == "E_a1m");
  CHECK(std::string(magcav_quantity_name(MAGCAV_Q_LOW_EXC_RATIO)) == "low_exc_ratio");
  CHECK(MAGCAV_CSV_COLUMNS == 20);
  CHECK(magcav_config_key_count() > 20);
  for (size_t i = 0; i < magcav_config_key_count(); ++i) {
    CHECK(magcav_config_key_name(i) != nullptr);
    CHECK(magcav_config_key_help(i) != nullptr);
  }
  CHECK(magcav_config_key_name(9999) == nullptr);
  CHECK(magcav_preset_count() >= 8);
  CHECK(std::string(magcav_preset_name(0)) == "fig2");
}

TEST_CASE("c api: config errors") {
  Config cfg;
  CHECK(magcav_config_set(cfg.p, "delta1", "-20") == MAGCAV_ERR_INVALID_CONFIG);
  CHECK(std::string(magcav_last_error()).find("delta1") != std::string::npos);
  CHECK(magcav_config_set(cfg.p, "nope", "1") == MAGCAV_ERR_INVALID_CONFIG);
  CHECK(magcav_config_set(cfg.p, nullptr, "1") == MAGCAV_ERR_INVALID_ARGUMENT);
  CHECK(magcav_config_set(nullptr, "gain", "1 kappaM") == MAGCAV_ERR_INVALID_ARGUMENT);
  CHECK(magcav_config_get(cfg.p, "gain") == nullptr);
  CHECK(magcav_config_set(cfg.p, "gain", "2 kappaM") == MAGCAV_OK);
  CHECK(std::string(magcav_config_get(cfg.p, "gain")) == "2 kappaM");
  CHECK(magcav_config_load_file(cfg.p, "/nonexistent/x.cfg") != MAGCAV_OK);
  CHECK(magcav_config_set(cfg.p, "workers", "3") == MAGCAV_OK);
  CHECK(magcav_config_workers(cfg.p) == 3);

  magcav_point* pt = nullptr;
  CHECK(magcav_config_set(cfg.p, "kappa1", "-1 kappaM") == MAGCAV_OK);
  CHECK(magcav_point_run(cfg.p, &pt) == MAGCAV_ERR_INVALID_CONFIG);
  CHECK(pt == nullptr);
}

TEST_CASE("c api: working point") {
  Config cfg;
  magcav_point* pt = nullptr;
  REQUIRE(magcav_point_run(cfg.p, &pt) == MAGCAV_OK);
  CHECK(magcav_point_state(pt) == MAGCAV_POINT_OK);
  double e = 0.0;
  CHECK(magcav_point_get(pt, MAGCAV_Q_E_A1M, &e) == MAGCAV_OK);
  CHECK(e > 0.0);
  double axis = 0.0;
  CHECK(magcav_point_get(pt, MAGCAV_Q_AXIS1, &axis) == MAGCAV_OK);
  CHECK(std::isnan(axis));
  CHECK(magcav_point_get(pt, MAGCAV_Q_COUNT, &e) == MAGCAV_ERR_INVALID_ARGUMENT);

  double re[6], im[6];
  CHECK(magcav_point_eigenvalues(pt, re, im) == MAGCAV_OK);
  for (double r : re) CHECK(r < 0.0);

  double v[36];
  CHECK(magcav_point_covariance(pt, v) == MAGCAV_OK);
  for (int i = 0; i < 6; ++i) {
    CHECK(v[i * 6 + i] > 0.0);
    for (int j = 0; j < 6; ++j) CHECK(v[i * 6 + j] == v[j * 6 + i]);
  }
  CHECK(std::string(magcav_point_report(pt)).find("E_a1m") != std::string::npos);
  CHECK(std::string(magcav_point_json(pt)).find("\"params\"") != std::string::npos);
  magcav_point_destroy(pt);
}

TEST_CASE("c api: unstable point masks covariance") {
  Config cfg;
  REQUIRE(magcav_config_set(cfg.p, "delta1", "0") == MAGCAV_OK);
  REQUIRE(magcav_config_set(cfg.p, "gain", "20 kappaM") == MAGCAV_OK);
  magcav_point* pt = nullptr;
  REQUIRE(magcav_point_run(cfg.p, &pt) == MAGCAV_OK);
  CHECK(magcav_point_state(pt) == MAGCAV_POINT_UNSTABLE);
  double e = 0.0, m = 0.0;
  CHECK(magcav_point_get(pt, MAGCAV_Q_E_A1M, &e) == MAGCAV_OK);
  CHECK(std::isnan(e));
  CHECK(magcav_point_get(pt, MAGCAV_Q_MAX_RE_EIG, &m) == MAGCAV_OK);
  CHECK(m > 0.0);
  double v[36];
  CHECK(magcav_point_covariance(pt, v) == MAGCAV_ERR_INVALID_ARGUMENT);
  magcav_point_destroy(pt);
}

TEST_CASE("c api: grid") {
  Config cfg;
  REQUIRE(magcav_config_set(cfg.p, "axis1", "gain") == MAGCAV_OK);
  REQUIRE(magcav_config_set(cfg.p, "axis1_min", "0") == MAGCAV_OK);
  REQUIRE(magcav_config_set(cfg.p, "axis1_max", "20 kappaM") == MAGCAV_OK);
  REQUIRE(magcav_config_set(cfg.p, "axis1_count", "5") == MAGCAV_OK);
  REQUIRE(magcav_config_set(cfg.p, "axis2", "deltaM") == MAGCAV_OK);
  REQUIRE(magcav_config_set(cfg.p, "axis2_min", "40 kappaM") == MAGCAV_OK);
  REQUIRE(magcav_config_set(cfg.p, "axis2_max", "50 kappaM") == MAGCAV_OK);
  REQUIRE(magcav_config_set(cfg.p, "axis2_count", "3") == MAGCAV_OK);

  magcav_grid* g = nullptr;
  REQUIRE(magcav_grid_run(cfg.p, 2, &g) == MAGCAV_OK);
  CHECK(magcav_grid_size(g) == 15);
  size_t s = 0, u = 0, err = 0;
  CHECK(magcav_grid_counts(g, &s, &u, &err) == MAGCAV_OK);
  CHECK(s + u + err == 15);
  CHECK(s > 0);
  CHECK(u > 0);

  double a1 = 0.0, a2 = 0.0;
  CHECK(magcav_grid_get(g, 4, MAGCAV_Q_AXIS1, &a1) == MAGCAV_OK);
  CHECK(magcav_grid_get(g, 4, MAGCAV_Q_AXIS2, &a2) == MAGCAV_OK);
  CHECK(a1 == doctest::Approx(5.0));
  CHECK(a2 == doctest::Approx(45.0));
  CHECK(magcav_grid_get(g, 15, MAGCAV_Q_N1, &a1) == MAGCAV_ERR_INVALID_ARGUMENT);

  int found = 0;
  double value = 0.0;
  CHECK(magcav_grid_max(g, MAGCAV_Q_E_A1M, &found, &value, &a1, &a2) == MAGCAV_OK);
  CHECK(found == 1);
  CHECK(value > 0.0);

  const std::string path = "capi_grid_test.csv";
  CHECK(magcav_grid_write_csv(g, path.c_str()) == MAGCAV_OK);
  std::ifstream in(path);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 16);
  std::remove(path.c_str());
  CHECK(magcav_grid_write_csv(g, "/nonexistent/dir/x.csv") == MAGCAV_ERR_IO);
  CHECK(std::string(magcav_grid_summary_json(g)).find("E_a1m") != std::string::npos);
  magcav_grid_destroy(g);

  Config empty;
  CHECK(magcav_grid_run(empty.p, 1, &g) == MAGCAV_ERR_INVALID_CONFIG);
}

TEST_CASE("c api: validation with an impossible tolerance fails") {
  magcav_validation* v = nullptr;
  REQUIRE(magcav_validate_run(1e-30, &v) == MAGCAV_OK);
  CHECK(magcav_validation_count(v) == 7);
  CHECK(magcav_validation_all_passed(v) == 0);
  const char* name = nullptr;
  const char* detail = nullptr;
  int passed = 1;
  double worst = 0.0, tol = 0.0;
  CHECK(magcav_validation_entry(v, 0, &name, &passed, &worst, &tol, &detail) == MAGCAV_OK);
  CHECK(std::string(name) == "tmsv_log_negativity");
  CHECK(tol == 1e-30);
  CHECK(magcav_validation_entry(v, 7, &name, &passed, &worst, &tol, &detail) ==
        MAGCAV_ERR_INVALID_ARGUMENT);
  magcav_validation_destroy(v);
}
