#include "io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "error.hpp"

namespace magcav {

namespace {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::json maybe(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

double in_kappa(double rate, const SystemParams& p) { return rate / p.kappa_m; }

}  // namespace

std::string csv_header() {
  std::string h;
  for (int q = 0; q < kCsvColumnCount; ++q) {
    if (q) h += ',';
    h += quantity_name(static_cast<Quantity>(q));
  }
  return h;
}

void write_csv(const GridResult& grid, std::ostream& out) {
  out << csv_header() << '\n';
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    for (int q = 0; q < kCsvColumnCount; ++q) {
      if (q) out << ',';
      const auto quantity = static_cast<Quantity>(q);
      if (quantity == Quantity::kStable) {
        out << (grid.points[i].stable() ? '1' : '0');
      } else {
        out << format_double(grid.value(i, quantity));
      }
    }
    out << '\n';
  }
}

CsvTable read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != csv_header()) {
    throw Error(ErrorKind::kIo, "CSV header does not match the grid schema");
  }
  CsvTable table;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::array<double, kCsvColumnCount> row{};
    std::size_t pos = 0;
    for (int q = 0; q < kCsvColumnCount; ++q) {
      const std::size_t end = line.find(',', pos);
      if ((end == std::string::npos) != (q == kCsvColumnCount - 1)) {
        throw Error(ErrorKind::kIo, "CSV line " + std::to_string(line_no) +
                                        ": wrong field count");
      }
      const std::string_view field(line.data() + pos,
                                   (end == std::string::npos ? line.size() : end) - pos);
      const auto [ptr, ec] =
          std::from_chars(field.data(), field.data() + field.size(), row[q]);
      if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw Error(ErrorKind::kIo, "CSV line " + std::to_string(line_no) +
                                        ": bad number '" + std::string(field) + "'");
      }
      pos = end + 1;
    }
    table.rows.push_back(row);
  }
  return table;
}

nlohmann::json params_json(const SystemParams& p) {
  return {
      {"omega1_GHz", p.omega1 / constants::kTwoPi / 1e9},
      {"kappaM_MHz", p.kappa_m / constants::kTwoPi / 1e6},
      {"kappa1_kappaM", in_kappa(p.kappa1, p)},
      {"kappa2_kappaM", in_kappa(p.kappa2, p)},
      {"g1_kappaM", in_kappa(p.g1, p)},
      {"g2_kappaM", in_kappa(p.g2, p)},
      {"delta1_kappaM", in_kappa(p.delta1, p)},
      {"delta2_kappaM", in_kappa(p.delta2, p)},
      {"deltaM_kappaM", in_kappa(p.delta_m, p)},
      {"epsP_kappaM", in_kappa(p.eps_p, p)},
      {"gain_kappaM", in_kappa(p.gain, p)},
      {"temperature_mK", p.temperature * 1e3},
      {"sphere",
       {{"diameter_m", p.sphere.diameter},
        {"spin_density_m-3", p.sphere.spin_density},
        {"spin_number", p.sphere.spin_number}}},
  };
}

nlohmann::json spec_json(const GridSpec& spec) {
  const auto axis = [](const AxisRange& r) {
    return nlohmann::json{
        {"name", axis_name(r.axis)},
        {"min", r.min},
        {"max", r.max},
        {"count", r.count},
        {"scale", r.scale == AxisScale::kLinear ? "linear" : "log"}};
  };
  return {{"name", spec.name},
          {"base", params_json(spec.base)},
          {"axis1", axis(spec.axis1)},
          {"axis2", spec.axis2 ? axis(*spec.axis2) : nlohmann::json(nullptr)},
          {"stability_margin_kappaM", spec.options.stability_margin_factor},
          {"low_excitation_threshold", spec.options.low_excitation_threshold}};
}

nlohmann::json point_json(const PointResult& r) {
  nlohmann::json j;
  j["params"] = params_json(r.params);
  j["status"] = to_string(r.status);
  j["error"] = r.error.empty() ? nlohmann::json(nullptr) : nlohmann::json(r.error);
  if (r.mean_fields) {
    const MeanFields& mf = *r.mean_fields;
    const auto c = [](std::complex<double> z) {
      return nlohmann::json::array({z.real(), z.imag()});
    };
    j["mean_fields"] = {{"a1", c(mf.a1)}, {"a2", c(mf.a2)}, {"m", c(mf.m)},
                        {"N1", mf.n1},    {"N2", mf.n2},    {"Nm", mf.nm}};
  } else {
    j["mean_fields"] = nullptr;
  }
  j["low_exc_ratio"] =
      r.low_excitation ? maybe(r.low_excitation->ratio) : nlohmann::json(nullptr);
  if (r.stability) {
    nlohmann::json eig = nlohmann::json::array();
    for (const auto& z : r.stability->eigenvalues) {
      eig.push_back({z.real() / r.params.kappa_m, z.imag() / r.params.kappa_m});
    }
    j["stability"] = {{"max_real_part_kappaM",
                       r.stability->max_real_part / r.params.kappa_m},
                      {"stable", r.stability->stable},
                      {"marginal", r.stability->marginal},
                      {"eigenvalues_kappaM", eig}};
  } else {
    j["stability"] = nullptr;
  }
  if (r.covariance) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < 6; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int k = 0; k < 6; ++k) row.push_back((*r.covariance)(i, k));
      rows.push_back(row);
    }
    j["covariance"] = rows;
    j["lyapunov_residual"] = r.lyapunov_residual;
    const EntanglementResult& e = *r.entanglement;
    j["entanglement"] = {{"E_a1m", e.e_a1m},
                         {"E_a2m", e.e_a2m},
                         {"E_a1a2", e.e_a1a2},
                         {"E_1|23", e.e1_23},
                         {"E_2|13", e.e2_13},
                         {"E_3|12", e.e3_12},
                         {"residual_contangles", e.residuals},
                         {"R_tau_min", e.r_tau_min},
                         {"R_tau_min_splitting", e.r_tau_min_mode + 1}};
    const char* names[6] = {"X1", "Y1", "X2", "Y2", "x", "y"};
    nlohmann::json var, db;
    for (int q = 0; q < 6; ++q) {
      var[names[q]] = (*r.variances)[q];
      db[names[q]] = (*r.squeezing_db)[q];
    }
    j["variances"] = var;
    j["squeezing_dB"] = db;
  } else {
    for (const char* key : {"covariance", "lyapunov_residual", "entanglement",
                            "variances", "squeezing_dB"}) {
      j[key] = nullptr;
    }
  }
  return j;
}

nlohmann::json grid_summary_json(const GridResult& grid) {
  nlohmann::json table = nlohmann::json::object();
  for (int q = static_cast<int>(Quantity::kN1); q < kQuantityCount; ++q) {
    const SummaryEntry& s = grid.summary[q];
    const std::string name(quantity_name(static_cast<Quantity>(q)));
    if (!s.found) {
      table[name] = nullptr;
      continue;
    }
    table[name] = {{"max", s.value},
                   {"index", s.index},
                   {"axis1", maybe(s.axis1)},
                   {"axis2", maybe(s.axis2)}};
  }
  return {{"spec", spec_json(grid.spec)},
          {"points", grid.points.size()},
          {"stable", grid.stable_count},
          {"unstable", grid.unstable_count},
          {"errors", grid.error_count},
          {"max", table}};
}

std::string point_report(const PointResult& r) {
  std::ostringstream os;
  char line[160];
  const auto row = [&](const char* label, const std::string& value) {
    std::snprintf(line, sizeof line, "  %-28s %s\n", label, value.c_str());
    os << line;
  };
  const auto num = [](double v) {
    char b[48];
    std::snprintf(b, sizeof b, "%.6g", v);
    return std::string(b);
  };
  const SystemParams& p = r.params;
  const double km = p.kappa_m;

  os << "parameters (rates in kappa_m, kappa_m/2pi = "
     << num(km / constants::kTwoPi / 1e6) << " MHz)\n";
  row("omega1/2pi [GHz]", num(p.omega1 / constants::kTwoPi / 1e9));
  row("delta1, delta2, deltaM",
      num(p.delta1 / km) + ", " + num(p.delta2 / km) + ", " + num(p.delta_m / km));
  row("kappa1, kappa2", num(p.kappa1 / km) + ", " + num(p.kappa2 / km));
  row("g1, g2", num(p.g1 / km) + ", " + num(p.g2 / km));
  row("epsP, gain", num(p.eps_p / km) + ", " + num(p.gain / km));
  row("temperature [mK]", num(p.temperature * 1e3));

  os << "status: " << to_string(r.status);
  if (!r.error.empty()) os << " (" << r.error << ")";
  os << "\n";

  if (r.mean_fields) {
    os << "mean fields\n";
    row("N1, N2, Nm", num(r.mean_fields->n1) + ", " + num(r.mean_fields->n2) +
                          ", " + num(r.mean_fields->nm));
    row("Nm/(2Ns)", num(r.low_excitation->ratio) +
                        (r.low_excitation->ok ? " (ok)" : " (NOT low)"));
  }
  if (r.stability) {
    os << "stability\n";
    row("max Re(eig A) [kappa_m]", num(r.stability->max_real_part / km));
    std::string eig;
    for (const auto& z : r.stability->eigenvalues) {
      if (!eig.empty()) eig += "  ";
      eig += num(z.real() / km) + (z.imag() < 0 ? "-" : "+") +
             num(std::abs(z.imag()) / km) + "i";
    }
    row("eigenvalues [kappa_m]", eig);
  }
  if (r.entanglement) {
    const EntanglementResult& e = *r.entanglement;
    os << "entanglement\n";
    row("E_a1m, E_a2m, E_a1a2",
        num(e.e_a1m) + ", " + num(e.e_a2m) + ", " + num(e.e_a1a2));
    row("E_1|23, E_2|13, E_3|12",
        num(e.e1_23) + ", " + num(e.e2_13) + ", " + num(e.e3_12));
    row("R_tau_min", num(e.r_tau_min) + " (splitting " +
                         std::to_string(e.r_tau_min_mode + 1) + ")");
    os << "quadrature variances (vacuum 1/2) and squeezing [dB]\n";
    const char* names[6] = {"X1", "Y1", "X2", "Y2", "x", "y"};
    for (int q = 0; q < 6; ++q) {
      row(names[q], num((*r.variances)[q]) + "  " + num((*r.squeezing_db)[q]) +
                        " dB" + (r.above_vacuum(q) ? "  (above vacuum)" : ""));
    }
    row("Lyapunov residual", num(r.lyapunov_residual));
  }
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorKind::kIo, "failed writing '" + path + "'");
}

}  // namespace magcav
