#include "rtm/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rtm {

namespace {

constexpr const char* kHeader = "k,lambda,u,d,x,closed_form_lambda";

double parse_double(const std::string& field, const std::filesystem::path& path,
                    std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != field.size())
    throw std::runtime_error(path.string() + ":" + std::to_string(line) +
                             ": bad numeric field '" + field + "'");
  return v;
}

}  // namespace

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& t,
                          const std::vector<double>* closed_form) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << kHeader << '\n';
  const bool with_cf = closed_form != nullptr && closed_form->size() >= t.size();
  for (std::size_t k = 0; k < t.size(); ++k) {
    out << k << ',' << format_full(t.lambda[k]) << ',' << format_full(t.u[k])
        << ',' << format_full(t.d[k]) << ',' << format_full(t.x[k]) << ',';
    if (with_cf) out << format_full((*closed_form)[k]);
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

TrajectoryCsv read_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path.string());

  std::string line;
  if (!std::getline(in, line) || line != kHeader)
    throw std::runtime_error(path.string() + ":1: unexpected header");

  TrajectoryCsv out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (line.back() == ',') fields.emplace_back();
    if (fields.size() != 6)
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                               ": expected 6 fields");
    out.trajectory.lambda.push_back(parse_double(fields[1], path, lineno));
    out.trajectory.u.push_back(parse_double(fields[2], path, lineno));
    out.trajectory.d.push_back(parse_double(fields[3], path, lineno));
    out.trajectory.x.push_back(parse_double(fields[4], path, lineno));
    if (!fields[5].empty()) {
      out.closed_form.push_back(parse_double(fields[5], path, lineno));
      out.has_closed_form = true;
    }
  }
  if (out.has_closed_form && out.closed_form.size() != out.trajectory.size())
    throw std::runtime_error(path.string() + ": ragged closed_form_lambda column");
  return out;
}

}  // namespace rtm
