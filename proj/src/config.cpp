#include <fstream>
#include <initializer_list>
#include <string>

#include <json.hpp>

#include "landauer/sweep.hpp"

namespace landauer {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (item.key() == a) {
        ok = true;
        break;
      }
    if (!ok)
      throw config_error("unknown key \"" + item.key() + "\" in " + path);
  }
}

const json& need(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw config_error("missing key \"" + std::string(key) + "\" in " + path);
  return *it;
}

const json* maybe(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double num(const json& v, const std::string& where) {
  if (!v.is_number()) throw config_error(where + " must be a number");
  return v.get<double>();
}

int integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw config_error(where + " must be an integer");
  return v.get<int>();
}

std::string text(const json& v, const std::string& where) {
  if (!v.is_string()) throw config_error(where + " must be a string");
  return v.get<std::string>();
}

const json& object(const json& v, const std::string& where) {
  if (!v.is_object()) throw config_error(where + " must be an object");
  return v;
}

}  // namespace

RunConfig load_config(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw config_error("config root must be an object");
  check_keys(doc, "config", {"cavity", "detector", "trajectory", "field",
                             "coupling", "grid", "quadrature", "entropy",
                             "output"});

  RunConfig cfg;

  const json& cav = object(need(doc, "config", "cavity"), "cavity");
  check_keys(cav, "cavity", {"length", "boundary", "mode_cap", "tail_tolerance"});
  cfg.cavity.length = num(need(cav, "cavity", "length"), "cavity.length");
  if (const json* b = maybe(cav, "boundary")) {
    std::string s = text(*b, "cavity.boundary");
    if (s == "dirichlet")
      cfg.cavity.boundary = Boundary::dirichlet;
    else if (s == "periodic")
      cfg.cavity.boundary = Boundary::periodic;
    else
      throw config_error("cavity.boundary must be dirichlet or periodic");
  }
  if (const json* m = maybe(cav, "mode_cap"))
    cfg.cavity.mode_cap = integer(*m, "cavity.mode_cap");
  if (const json* t = maybe(cav, "tail_tolerance"))
    cfg.cavity.tail_tolerance = num(*t, "cavity.tail_tolerance");

  const json& det = object(need(doc, "config", "detector"), "detector");
  check_keys(det, "detector", {"population", "gap_mode", "gap"});
  cfg.population = num(need(det, "detector", "population"), "detector.population");
  const json* gm = maybe(det, "gap_mode");
  const json* gv = maybe(det, "gap");
  if ((gm != nullptr) == (gv != nullptr))
    throw config_error("detector needs exactly one of gap_mode and gap");
  if (gm) cfg.gap.mode_index = integer(*gm, "detector.gap_mode");
  if (gv) cfg.gap.value = num(*gv, "detector.gap");

  const json& traj = object(need(doc, "config", "trajectory"), "trajectory");
  std::string kind = text(need(traj, "trajectory", "kind"), "trajectory.kind");
  if (kind == "static") {
    check_keys(traj, "trajectory", {"kind", "x0"});
    cfg.trajectory =
        Trajectory::at_rest(num(need(traj, "trajectory", "x0"), "trajectory.x0"));
  } else if (kind == "accelerated") {
    check_keys(traj, "trajectory", {"kind", "acceleration"});
    cfg.trajectory = Trajectory::accelerated(
        num(need(traj, "trajectory", "acceleration"), "trajectory.acceleration"));
  } else {
    throw config_error("trajectory.kind must be static or accelerated");
  }

  const json& field = object(need(doc, "config", "field"), "field");
  std::string fk = text(need(field, "field", "kind"), "field.kind");
  if (fk == "vacuum") {
    check_keys(field, "field", {"kind"});
    cfg.field_kind = FieldState::Kind::vacuum;
  } else if (fk == "thermal") {
    check_keys(field, "field", {"kind", "temperature"});
    cfg.field_kind = FieldState::Kind::thermal;
    cfg.reservoir_temperature =
        num(need(field, "field", "temperature"), "field.temperature");
  } else {
    throw config_error("field.kind must be vacuum or thermal");
  }

  if (const json* c = maybe(doc, "coupling")) {
    const json& cp = object(*c, "coupling");
    check_keys(cp, "coupling", {"lambda"});
    cfg.lambda = num(need(cp, "coupling", "lambda"), "coupling.lambda");
  }

  const json& grid = object(need(doc, "config", "grid"), "grid");
  check_keys(grid, "grid", {"start", "stop", "count"});
  cfg.grid.stop = num(need(grid, "grid", "stop"), "grid.stop");
  if (const json* s = maybe(grid, "start")) cfg.grid.start = num(*s, "grid.start");
  if (const json* c = maybe(grid, "count")) cfg.grid.count = integer(*c, "grid.count");

  if (const json* q = maybe(doc, "quadrature")) {
    const json& qd = object(*q, "quadrature");
    check_keys(qd, "quadrature", {"tolerance", "panel_cap"});
    if (const json* t = maybe(qd, "tolerance"))
      cfg.quadrature.tolerance = num(*t, "quadrature.tolerance");
    if (const json* pc = maybe(qd, "panel_cap"))
      cfg.quadrature.panel_cap = integer(*pc, "quadrature.panel_cap");
  }

  if (const json* e = maybe(doc, "entropy")) {
    std::string s = text(*e, "entropy");
    if (s == "linearized")
      cfg.entropy = EntropyMethod::linearized;
    else if (s == "exact")
      cfg.entropy = EntropyMethod::exact;
    else
      throw config_error("entropy must be linearized or exact");
  }

  if (const json* o = maybe(doc, "output")) {
    const json& out = object(*o, "output");
    check_keys(out, "output", {"path", "format"});
    if (const json* p = maybe(out, "path"))
      cfg.output_path = text(*p, "output.path");
    if (const json* f = maybe(out, "format"))
      cfg.output_format = text(*f, "output.format");
  }

  try {
    cfg.validate();
  } catch (const config_error&) {
    throw;
  } catch (const std::exception& e) {
    throw config_error(e.what());
  }
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  return load_config(in);
}

}  // namespace landauer
