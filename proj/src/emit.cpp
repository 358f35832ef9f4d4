#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "landauer/sweep.hpp"

namespace landauer {

namespace {

using nlohmann::json;

constexpr const char* kHeader =
    "tau,delta_S,delta_Q,delta_Q_over_TR,residual,delta_p,j_max,quad_err,flags";

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const std::vector<std::string>& flags) {
  std::string s;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (i) s += ';';
    s += flags[i];
  }
  return s;
}

json config_json(const SweepResult& r) {
  const RunConfig& c = r.config;
  json cavity{{"length", c.cavity.length},
              {"boundary", c.cavity.boundary == Boundary::dirichlet ? "dirichlet"
                                                                    : "periodic"},
              {"mode_cap", c.cavity.mode_cap},
              {"tail_tolerance", c.cavity.tail_tolerance}};
  json det{{"population", c.population}, {"gap", r.gap}};
  if (c.gap.mode_index) det["gap_mode"] = *c.gap.mode_index;
  json traj;
  if (c.trajectory.kind == Trajectory::Kind::at_rest)
    traj = {{"kind", "static"}, {"x0", c.trajectory.x0}};
  else
    traj = {{"kind", "accelerated"}, {"acceleration", c.trajectory.accel}};
  json field;
  if (c.field_kind == FieldState::Kind::vacuum)
    field = {{"kind", "vacuum"}};
  else
    field = {{"kind", "thermal"}, {"temperature", c.reservoir_temperature}};
  json cutoff{{"j_max", r.cutoff.j_max},
              {"converged", r.cutoff.converged},
              {"last_change", r.cutoff.last_change}};
  return json{{"cavity", cavity},
              {"detector", det},
              {"trajectory", traj},
              {"field", field},
              {"coupling", json{{"lambda", c.lambda}}},
              {"grid", json{{"start", c.grid.start},
                            {"stop", c.grid.stop},
                            {"count", c.grid.count}}},
              {"quadrature", json{{"tolerance", c.quadrature.tolerance},
                                  {"panel_cap", c.quadrature.panel_cap}}},
              {"entropy", c.entropy == EntropyMethod::linearized ? "linearized"
                                                                 : "exact"},
              {"normalization", "1/sqrt(omega*L)"},
              {"kernel_backend", r.kernel_backend},
              {"clamped", r.clamped},
              {"cutoff", cutoff}};
}

}  // namespace

void emit_csv(const SweepResult& result, std::ostream& out) {
  out << kHeader << '\n';
  for (const SweepRow& row : result.rows) {
    out << fmt(row.tau) << ',' << fmt(row.entropy_change) << ','
        << fmt(row.heat) << ','
        << (row.heat_over_temperature ? fmt(*row.heat_over_temperature)
                                      : std::string("na"))
        << ',' << fmt(row.residual) << ',' << fmt(row.population_shift) << ','
        << row.modes_used << ',' << fmt(row.max_quad_error) << ','
        << join(row.flags) << '\n';
  }
}

void emit_json(const SweepResult& result, std::ostream& out) {
  json rows = json::array();
  for (const SweepRow& row : result.rows) {
    json r{{"tau", row.tau},
           {"delta_S", row.entropy_change},
           {"delta_Q", row.heat},
           {"delta_Q_over_TR",
            row.heat_over_temperature ? json(*row.heat_over_temperature)
                                      : json(nullptr)},
           {"residual", row.residual},
           {"delta_p", row.population_shift},
           {"j_max", row.modes_used},
           {"quad_err", row.max_quad_error},
           {"flags", row.flags}};
    rows.push_back(std::move(r));
  }
  json doc{{"config", config_json(result)}, {"rows", rows}};
  out << doc.dump(2) << '\n';
}

std::vector<SweepRow> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kHeader)
    throw config_error("CSV header does not match the sweep format");
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    // a trailing empty flags field drops at the split; restore it
    if (cells.size() == 8) cells.push_back("");
    if (cells.size() != 9) throw config_error("CSV row with wrong field count");
    SweepRow row;
    row.tau = std::strtod(cells[0].c_str(), nullptr);
    row.entropy_change = std::strtod(cells[1].c_str(), nullptr);
    row.heat = std::strtod(cells[2].c_str(), nullptr);
    if (cells[3] != "na")
      row.heat_over_temperature = std::strtod(cells[3].c_str(), nullptr);
    row.residual = std::strtod(cells[4].c_str(), nullptr);
    row.population_shift = std::strtod(cells[5].c_str(), nullptr);
    row.modes_used = (int)std::strtol(cells[6].c_str(), nullptr, 10);
    row.max_quad_error = std::strtod(cells[7].c_str(), nullptr);
    if (!cells[8].empty()) {
      std::istringstream fs(cells[8]);
      std::string f;
      while (std::getline(fs, f, ';')) row.flags.push_back(f);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

SweepResult parse_json(std::istream& in) {
  json doc = json::parse(in);
  SweepResult out;
  const json& cfg = doc.at("config");
  const json& cav = cfg.at("cavity");
  out.config.cavity.length = cav.at("length").get<double>();
  out.config.cavity.boundary = cav.at("boundary").get<std::string>() == "periodic"
                                   ? Boundary::periodic
                                   : Boundary::dirichlet;
  out.config.cavity.mode_cap = cav.at("mode_cap").get<int>();
  out.config.cavity.tail_tolerance = cav.at("tail_tolerance").get<double>();
  const json& det = cfg.at("detector");
  out.config.population = det.at("population").get<double>();
  out.gap = det.at("gap").get<double>();
  if (det.contains("gap_mode"))
    out.config.gap.mode_index = det.at("gap_mode").get<int>();
  else
    out.config.gap.value = out.gap;
  const json& traj = cfg.at("trajectory");
  if (traj.at("kind").get<std::string>() == "static")
    out.config.trajectory = Trajectory::at_rest(traj.at("x0").get<double>());
  else
    out.config.trajectory =
        Trajectory::accelerated(traj.at("acceleration").get<double>());
  const json& field = cfg.at("field");
  if (field.at("kind").get<std::string>() == "thermal") {
    out.config.field_kind = FieldState::Kind::thermal;
    out.config.reservoir_temperature = field.at("temperature").get<double>();
  }
  out.config.lambda = cfg.at("coupling").at("lambda").get<double>();
  out.config.grid.start = cfg.at("grid").at("start").get<double>();
  out.config.grid.stop = cfg.at("grid").at("stop").get<double>();
  out.config.grid.count = cfg.at("grid").at("count").get<int>();
  out.config.quadrature.tolerance =
      cfg.at("quadrature").at("tolerance").get<double>();
  out.config.quadrature.panel_cap =
      cfg.at("quadrature").at("panel_cap").get<long>();
  out.config.entropy = cfg.at("entropy").get<std::string>() == "exact"
                           ? EntropyMethod::exact
                           : EntropyMethod::linearized;
  out.kernel_backend = cfg.at("kernel_backend").get<std::string>();
  out.clamped = cfg.at("clamped").get<bool>();
  out.cutoff.j_max = cfg.at("cutoff").at("j_max").get<int>();
  out.cutoff.converged = cfg.at("cutoff").at("converged").get<bool>();
  const json& lc = cfg.at("cutoff").at("last_change");
  out.cutoff.last_change =
      lc.is_null() ? std::nan("") : lc.get<double>();

  for (const json& r : doc.at("rows")) {
    SweepRow row;
    row.tau = r.at("tau").get<double>();
    row.entropy_change = r.at("delta_S").get<double>();
    row.heat = r.at("delta_Q").get<double>();
    if (!r.at("delta_Q_over_TR").is_null())
      row.heat_over_temperature = r.at("delta_Q_over_TR").get<double>();
    row.residual = r.at("residual").get<double>();
    row.population_shift = r.at("delta_p").get<double>();
    row.modes_used = r.at("j_max").get<int>();
    const json& qe = r.at("quad_err");
    row.max_quad_error = qe.is_null()
                             ? std::numeric_limits<double>::infinity()
                             : qe.get<double>();
    for (const json& f : r.at("flags"))
      row.flags.push_back(f.get<std::string>());
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace landauer
