#include "thermorelax/scenario/outputs.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <system_error>

namespace thermorelax::scenario {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string cell(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

std::string timeseries_csv(const RunReport& report) {
  std::string out = std::string(kTimeseriesHeader) + "\n";
  for (const Record& r : report.records) {
    out += format_number(r.time) + ',' + cell(r.mean_q) + ',' + cell(r.var_q) + ',' + cell(r.mean_p) + ',' +
           cell(r.var_p) + ',' + cell(r.cov_qp) + ',' + format_number(r.mass) + ',' + format_number(r.min_rho) + ',' +
           format_number(r.lyapunov) + '\n';
  }
  return out;
}

std::string density_csv(const RunReport& report) {
  std::string out;
  if (report.final_density) {
    const DensityField& d = *report.final_density;
    out = report.config.space.space == Space::momentum ? "p,rho\n" : "q,rho\n";
    for (std::size_t i = 0; i < d.rho.size(); ++i) {
      out += format_number(d.grid().node(i)) + ',' + format_number(d.rho[i]) + '\n';
    }
  } else if (report.final_phase_density) {
    const DensityField2D& d = *report.final_phase_density;
    const Grid2D& g = d.grid();
    out = "q,p,rho\n";
    for (std::size_t i = 0; i < g.q.n; ++i) {
      for (std::size_t j = 0; j < g.p.n; ++j) {
        out += format_number(g.q.node(i)) + ',' + format_number(g.p.node(j)) + ',' + format_number(d.rho(i, j)) +
               '\n';
      }
    }
  }
  return out;
}

std::string table_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) out += (i ? "," : "") + table.header[i];
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_number(row[i]);
    out += '\n';
  }
  return out;
}

std::string summary_text(const RunReport& report) {
  std::ostringstream o;
  o << "scenario: " << report.config.name << "\n";
  o << "task: " << to_string(report.config.task) << "\n";
  o << "status: " << to_string(report.status) << "\n";
  if (!report.message.empty()) o << "message: " << report.message << "\n";
  o << "steps: " << report.steps << "\n";
  o << "records: " << report.records.size() << "\n\n";
  o << "[metrics]\n";
  for (const auto& [name, value] : report.metrics) o << name << " = " << format_number(value) << "\n";
  o << "\n[config]\n" << report.config_echo;
  return o.str();
}

std::vector<std::filesystem::path> emit_outputs(const RunReport& report, const std::filesystem::path& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw std::runtime_error("cannot create directory " + directory.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  const auto emit = [&](const std::string& name, const std::string& content) {
    const auto path = directory / name;
    write_file(path, content);
    written.push_back(path);
  };
  const OutputsConfig& o = report.config.outputs;
  if (o.timeseries && !report.records.empty()) emit("timeseries.csv", timeseries_csv(report));
  if (o.density && (report.final_density || report.final_phase_density)) emit("density_final.csv", density_csv(report));
  for (const Table& t : report.tables) emit(t.file_name, table_csv(t));
  if (o.summary) emit("summary.txt", summary_text(report));
  return written;
}

}  // namespace thermorelax::scenario
