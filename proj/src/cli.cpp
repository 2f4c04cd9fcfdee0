#include "qgrass/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>

#include <spdlog/spdlog.h>

#include "qgrass/image_io.hpp"
#include "qgrass/imageset.hpp"
#include "qgrass/parallel.hpp"

namespace qgrass::cli {

namespace fs = std::filesystem;

void validate(const RunConfig& config) {
  if (config.resize_rows < 1 || config.resize_cols < 1)
    throw Error(Errc::InvalidArgument, "--resize values must be >= 1");
  if (config.components < 1) throw Error(Errc::InvalidArgument, "--components must be >= 1");
  if (config.trials < 1) throw Error(Errc::InvalidArgument, "--trials must be >= 1");
  if (config.train_per_class < 1) throw Error(Errc::InvalidArgument, "--train-per-class must be >= 1");
}

void apply_config_file(const Json& j, RunConfig& config) {
  try {
    if (j.contains("dataset_root")) config.dataset_root = j.at("dataset_root").get<std::string>();
    if (j.contains("resize")) {
      config.resize_rows = j.at("resize").at(0).get<int>();
      config.resize_cols = j.at("resize").at(1).get<int>();
    }
    if (j.contains("components")) config.components = j.at("components").get<int>();
    if (j.contains("train_per_class")) config.train_per_class = j.at("train_per_class").get<int>();
    if (j.contains("trials")) config.trials = j.at("trials").get<int>();
    if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("threads")) config.threads = j.at("threads").get<unsigned>();
    if (j.contains("out")) config.output_dir = j.at("out").get<std::string>();
    if (j.contains("store_projector")) config.store_projector = j.at("store_projector").get<bool>();
  } catch (const Json::exception& e) {
    throw Error(Errc::ParseError, std::string("config file: ") + e.what());
  }
}

Protocol protocol_of(const RunConfig& config) {
  return {config.train_per_class, config.trials, config.components, config.resize_rows, config.resize_cols};
}

RepresentResult cmd_represent(const RunConfig& config) {
  validate(config);
  const auto objects = scan_dataset(config.dataset_root);
  fs::create_directories(config.output_dir);
  if (objects.empty()) spdlog::warn("no <class>/<object> directories under {}", config.dataset_root.string());

  struct Outcome {
    std::optional<ManifestEntry> entry;
    std::optional<SkippedObject> skip;
  };
  std::vector<Outcome> outcomes(objects.size());
  const PointEncoding encoding = config.store_projector ? PointEncoding::Both : PointEncoding::Frame;

  parallel_for(objects.size(), config.threads, [&](std::size_t i) {
    const DatasetObject& obj = objects[i];
    const auto skip = [&](const std::string& reason) {
      spdlog::warn("skipping {}/{}: {}", obj.label, obj.object_id, reason);
      outcomes[i].skip = SkippedObject{obj.label, obj.object_id, reason};
    };
    if (list_images(obj.dir).empty()) {
      skip(std::string(to_string(Errc::EmptyObjectDirectory)) + ": No images found in: " + obj.dir.string());
      return;
    }
    const ImageSet set = load_image_set(obj.dir, obj.label, obj.object_id);
    try {
      const GrassmannPoint p = set_to_grassmann(set, config.components, config.resize_rows, config.resize_cols);
      const std::string file = obj.label + "_" + obj.object_id + ".qgp.json";
      write_json_file(config.output_dir / file, to_json(p, encoding));
      outcomes[i].entry = ManifestEntry{obj.label, obj.object_id, file};
      spdlog::info("represented {}/{} ({} images)", obj.label, obj.object_id, set.images.size());
    } catch (const Error& e) {
      switch (e.code()) {
        case Errc::RankDeficient:
        case Errc::LinearlyDependent:
        case Errc::ImageSizeMismatch:
          skip(e.what());
          return;
        default:
          throw;
      }
    }
  });

  RepresentResult result;
  Json points = Json::array();
  Json skipped = Json::array();
  for (const auto& o : outcomes) {
    if (o.entry) {
      result.points.push_back(*o.entry);
      points.push_back({{"class", o.entry->label}, {"object", o.entry->object_id}, {"file", o.entry->file}});
    }
    if (o.skip) {
      result.skipped.push_back(*o.skip);
      skipped.push_back({{"class", o.skip->label}, {"object", o.skip->object_id}, {"reason", o.skip->reason}});
    }
  }
  const Json manifest{{"n", config.resize_rows * config.resize_cols},
                      {"k", config.components},
                      {"resize", {config.resize_rows, config.resize_cols}},
                      {"points", points},
                      {"skipped", skipped}};
  write_json_file(config.output_dir / "manifest.json", manifest);
  return result;
}

std::string class_of_row(const std::string& row_id) {
  const auto slash = row_id.find('/');
  return slash == std::string::npos ? row_id : row_id.substr(0, slash);
}

LoadedPoints load_points(const fs::path& dir) {
  std::vector<std::pair<std::string, std::string>> ids;  // (row id, file)
  const fs::path manifest = dir / "manifest.json";
  if (fs::exists(manifest)) {
    const Json j = read_json_file(manifest);
    for (const auto& e : j.at("points"))
      ids.emplace_back(e.at("class").get<std::string>() + "/" + e.at("object").get<std::string>(),
                       e.at("file").get<std::string>());
  } else {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      const std::string name = entry.path().filename().string();
      if (entry.is_regular_file() && name.ends_with(".qgp.json")) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      std::string stem = f.filename().string();
      stem.resize(stem.size() - std::string(".qgp.json").size());
      const auto us = stem.find('_');
      const std::string id = us == std::string::npos ? stem : stem.substr(0, us) + "/" + stem.substr(us + 1);
      ids.emplace_back(id, f.filename().string());
    }
  }

  LoadedPoints out;
  for (const auto& [id, file] : ids) {
    out.points.push_back(grassmann_point_from_json(read_json_file(dir / file)));
    out.labels.push_back(class_of_row(id));
    out.row_ids.push_back(id);
    const GrassmannPoint& first = out.points.front();
    const GrassmannPoint& last = out.points.back();
    if (first.n() != last.n() || first.k() != last.k())
      throw Error(Errc::MixedDimensions, file + " lies in Gr(" + std::to_string(last.n()) + "," +
                                             std::to_string(last.k()) + "), expected Gr(" +
                                             std::to_string(first.n()) + "," + std::to_string(first.k()) + ")");
  }
  return out;
}

DistanceMatrix cmd_distmat(const RunConfig& config, const fs::path& points_dir) {
  const LoadedPoints loaded = load_points(points_dir);
  if (loaded.points.empty()) throw Error(Errc::InvalidArgument, "no points found in " + points_dir.string());
  spdlog::info("computing {} pair distances over {} points", loaded.points.size() * (loaded.points.size() - 1) / 2,
               loaded.points.size());
  DistanceMatrix d = distance_matrix(loaded.points, loaded.row_ids, config.threads);
  for (Index i = 0; i < d.size(); ++i)
    spdlog::debug("row {} ({}) done", i, d.labels[static_cast<std::size_t>(i)]);
  fs::create_directories(config.output_dir);
  write_text_file(config.output_dir / "distmat.csv", to_csv(d));
  return d;
}

TrialReport cmd_crossval(const RunConfig& config, const fs::path& input) {
  validate(config);
  DistanceMatrix d;
  if (fs::is_directory(input)) {
    const LoadedPoints loaded = load_points(input);
    d = distance_matrix(loaded.points, loaded.row_ids, config.threads);
  } else {
    d = distance_matrix_from_csv(read_text_file(input));
  }
  std::vector<std::string> labels;
  for (const auto& id : d.labels) labels.push_back(class_of_row(id));
  const TrialReport report = cross_validate(d, labels, protocol_of(config), config.seed);
  fs::create_directories(config.output_dir);
  write_json_file(config.output_dir / "report.json", to_json(report));
  return report;
}

std::string summary_line(const TrialReport& report) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f ± %.2f", report.mean, report.stddev);
  return buf;
}

ThreeSetVerdict cmd_three(const RunConfig& config, const fs::path& a, const fs::path& b, const fs::path& c) {
  validate(config);
  std::vector<GrassmannPoint> pts;
  for (const fs::path* dir : {&a, &b, &c}) {
    const ImageSet set = load_image_set(*dir, dir->filename().string(), dir->filename().string());
    pts.push_back(set_to_grassmann(set, config.components, config.resize_rows, config.resize_cols));
  }
  return three_set_recognition(pts[0], pts[1], pts[2]);
}

}  // namespace qgrass::cli
