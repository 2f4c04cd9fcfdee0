#include "qgrass/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qgrass {

namespace fs = std::filesystem;

namespace {

Json rows_of(const QuatMatrixd::RealMatrix& m) {
  Json out = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

QuatMatrixd::RealMatrix parse_rows(const Json& j, Index n, Index m, const char* name) {
  if (!j.is_array() || static_cast<Index>(j.size()) != n)
    throw Error(Errc::ParseError, std::string("field '") + name + "' must hold " + std::to_string(n) + " rows");
  QuatMatrixd::RealMatrix out(n, m);
  for (Index r = 0; r < n; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != m)
      throw Error(Errc::ParseError, std::string("row of '") + name + "' must hold " + std::to_string(m) + " values");
    for (Index c = 0; c < m; ++c) out(r, c) = row[static_cast<std::size_t>(c)].get<double>();
  }
  return out;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

Json to_json(const QuatMatrixd& m) {
  return Json{{"n", m.rows()}, {"m", m.cols()}, {"w", rows_of(m.w())},
              {"x", rows_of(m.x())}, {"y", rows_of(m.y())}, {"z", rows_of(m.z())}};
}

QuatMatrixd quat_matrix_from_json(const Json& j) {
  try {
    const Index n = j.at("n").get<Index>();
    const Index m = j.at("m").get<Index>();
    if (n < 0 || m < 0) throw Error(Errc::ParseError, "negative matrix dimension");
    return QuatMatrixd(parse_rows(j.at("w"), n, m, "w"), parse_rows(j.at("x"), n, m, "x"),
                       parse_rows(j.at("y"), n, m, "y"), parse_rows(j.at("z"), n, m, "z"));
  } catch (const Json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

Json to_json(const GrassmannPoint& p, PointEncoding encoding) {
  Json j;
  const bool with_frame = p.has_frame() && encoding != PointEncoding::Projector;
  if (!with_frame || encoding != PointEncoding::Frame) j = to_json(p.projector());
  j["n"] = p.n();
  j["k"] = p.k();
  if (with_frame) j["frame"] = to_json(p.frame());
  return j;
}

GrassmannPoint grassmann_point_from_json(const Json& j) {
  try {
    const Index n = j.at("n").get<Index>();
    const Index k = j.at("k").get<Index>();
    GrassmannPoint p = j.contains("frame") ? GrassmannPoint::from_frame(quat_matrix_from_json(j.at("frame")))
                                           : GrassmannPoint::from_projector(quat_matrix_from_json(j));
    if (p.n() != n || p.k() != k)
      throw Error(Errc::ParseError, "header (n, k) does not match the stored matrix");
    return p;
  } catch (const Json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

std::string to_csv(const DistanceMatrix& d) {
  std::string out = "label";
  for (const auto& l : d.labels) out += "," + l;
  out += "\n";
  for (Index i = 0; i < d.size(); ++i) {
    out += d.labels[static_cast<std::size_t>(i)];
    for (Index j = 0; j < d.size(); ++j) out += "," + format_double(d.d(i, j));
    out += "\n";
  }
  return out;
}

DistanceMatrix distance_matrix_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::ParseError, "empty distance matrix CSV");
  auto header = split_csv_line(line);
  if (header.empty() || header[0] != "label") throw Error(Errc::ParseError, "CSV header must start with 'label'");
  DistanceMatrix out;
  out.labels.assign(header.begin() + 1, header.end());
  const Index n = static_cast<Index>(out.labels.size());
  out.d = Eigen::MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw Error(Errc::ParseError, "CSV ends after " + std::to_string(i) + " rows");
    const auto cells = split_csv_line(line);
    if (static_cast<Index>(cells.size()) != n + 1 || cells[0] != out.labels[static_cast<std::size_t>(i)])
      throw Error(Errc::ParseError, "CSV row " + std::to_string(i) + " is malformed");
    for (Index j = 0; j < n; ++j) {
      const std::string& cell = cells[static_cast<std::size_t>(j + 1)];
      double v = 0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || ptr != cell.data() + cell.size())
        throw Error(Errc::ParseError, "bad number '" + cell + "' in CSV row " + std::to_string(i));
      out.d(i, j) = v;
    }
  }
  return out;
}

Json to_json(const TrialReport& r) {
  return Json{{"protocol",
               {{"train_per_class", r.protocol.train_per_class},
                {"trials", r.protocol.trials},
                {"k", r.protocol.k},
                {"resize", {r.protocol.resize_rows, r.protocol.resize_cols}}}},
              {"seed", r.seed},
              {"per_trial_accuracy", r.per_trial_accuracy},
              {"mean", r.mean},
              {"std", r.stddev}};
}

TrialReport trial_report_from_json(const Json& j) {
  try {
    TrialReport r;
    const Json& p = j.at("protocol");
    r.protocol.train_per_class = p.at("train_per_class").get<int>();
    r.protocol.trials = p.at("trials").get<int>();
    r.protocol.k = p.at("k").get<int>();
    r.protocol.resize_rows = p.at("resize").at(0).get<int>();
    r.protocol.resize_cols = p.at("resize").at(1).get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.per_trial_accuracy = j.at("per_trial_accuracy").get<std::vector<double>>();
    r.mean = j.at("mean").get<double>();
    r.stddev = j.at("std").get<double>();
    return r;
  } catch (const Json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, path.string() + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoError, path.string() + ": cannot open for writing");
  out << text;
  if (!out) throw Error(Errc::IoError, path.string() + ": write failed");
}

Json read_json_file(const fs::path& path) {
  try {
    return Json::parse(read_text_file(path));
  } catch (const Json::exception& e) {
    throw Error(Errc::ParseError, path.string() + ": " + e.what());
  }
}

void write_json_file(const fs::path& path, const Json& j) { write_text_file(path, j.dump(2) + "\n"); }

}  // namespace qgrass
