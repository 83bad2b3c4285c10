#include <charconv>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "sqpkit/bench.hpp"

namespace sqpkit {

namespace {

// shortest representation that parses back to the same double
std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("double formatting failed");
  return std::string(buf, ptr);
}

}  // namespace

std::string run_record_to_json(const RunRecord& rec) {
  nlohmann::json j;
  j["problem"] = rec.problem;
  j["solver_tag"] = rec.solver_tag;
  j["success"] = rec.success;
  j["wall_time"] = rec.wall_time;
  j["total_fevals"] = rec.total_fevals;
  j["majors"] = rec.majors;
  j["minors"] = rec.minors;
  j["f_final"] = rec.f_final;
  j["max_violation"] = rec.max_violation;
  j["stationarity"] = rec.stationarity;
  j["status"] = rec.status;
  return j.dump();
}

RunRecord run_record_from_json(const std::string& line) {
  const nlohmann::json j = nlohmann::json::parse(line);
  RunRecord rec;
  rec.problem = j.at("problem").get<std::string>();
  rec.solver_tag = j.at("solver_tag").get<std::string>();
  rec.success = j.at("success").get<bool>();
  rec.wall_time = j.at("wall_time").get<double>();
  rec.total_fevals = j.at("total_fevals").get<long>();
  rec.majors = j.at("majors").get<long>();
  rec.minors = j.at("minors").get<long>();
  rec.f_final = j.at("f_final").get<double>();
  rec.max_violation = j.at("max_violation").get<double>();
  rec.stationarity = j.at("stationarity").get<double>();
  rec.status = j.at("status").get<std::string>();
  return rec;
}

void write_jsonl(const std::string& path,
                 const std::vector<RunRecord>& recs) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (const auto& rec : recs) {
    out << run_record_to_json(rec) << '\n';
  }
}

std::vector<RunRecord> read_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::vector<RunRecord> recs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    recs.push_back(run_record_from_json(line));
  }
  return recs;
}

void write_profile_csv(const std::string& path, const ProfileCurves& curves) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "tau";
  for (const auto& solver : curves.solvers) out << ',' << solver;
  out << '\n';
  for (size_t i = 0; i < curves.tau.size(); ++i) {
    out << format_double(curves.tau[i]);
    for (Index s = 0; s < curves.P.cols(); ++s) {
      out << ',' << format_double(curves.P(static_cast<Index>(i), s));
    }
    out << '\n';
  }
}

void write_history_csv(const std::string& path,
                       const std::vector<HistoryRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "k,f,max_violation,stationarity,alpha,rho_norm,gamma,minors\n";
  for (const auto& row : rows) {
    out << row.k << ',' << format_double(row.f) << ','
        << format_double(row.max_violation) << ','
        << format_double(row.stationarity) << ','
        << format_double(row.alpha) << ',' << format_double(row.rho_norm)
        << ',' << format_double(row.gamma) << ',' << row.minors << '\n';
  }
}

}  // namespace sqpkit
