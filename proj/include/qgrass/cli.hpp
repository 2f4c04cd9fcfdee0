#ifndef QGRASS_CLI_HPP
#define QGRASS_CLI_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qgrass/classify.hpp"
#include "qgrass/grassmann.hpp"
#include "qgrass/io.hpp"

namespace qgrass::cli {

struct RunConfig {
  std::filesystem::path dataset_root;
  int resize_rows = 20;
  int resize_cols = 20;
  int components = 9;
  int train_per_class = 5;
  int trials = 10;
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0 = hardware concurrency
  std::filesystem::path output_dir = ".";
  bool store_projector = false;
};

/// Throws InvalidArgument unless t, m, k, trials and train_per_class are >= 1.
void validate(const RunConfig& config);

/// Overlays keys of a JSON config file onto `config`. Recognized keys:
/// dataset_root, resize ([t, m]), components, train_per_class, trials, seed,
/// threads, out, store_projector.
void apply_config_file(const Json& j, RunConfig& config);

Protocol protocol_of(const RunConfig& config);

struct ManifestEntry {
  std::string label;
  std::string object_id;
  std::string file;  // relative to the points directory
};

struct SkippedObject {
  std::string label;
  std::string object_id;
  std::string reason;
};

struct RepresentResult {
  std::vector<ManifestEntry> points;
  std::vector<SkippedObject> skipped;
};

/// Writes one <class>_<object>.qgp.json per object plus manifest.json into
/// config.output_dir. Objects that fail (no images, too few images) are
/// recorded as skipped; undecodable files abort with DecodeError.
RepresentResult cmd_represent(const RunConfig& config);

struct LoadedPoints {
  std::vector<GrassmannPoint> points;
  std::vector<std::string> labels;    // class of each point
  std::vector<std::string> row_ids;   // "<class>/<object>"
};

/// Reads manifest.json from dir, or every *.qgp.json in name order when there
/// is no manifest. Throws MixedDimensions when points disagree on (n, k).
LoadedPoints load_points(const std::filesystem::path& dir);

/// Computes the pairwise matrix and writes distmat.csv into config.output_dir.
DistanceMatrix cmd_distmat(const RunConfig& config, const std::filesystem::path& points_dir);

/// Class of a "<class>/<object>" row id.
std::string class_of_row(const std::string& row_id);

/// Input is distmat.csv or a points directory. Writes report.json into
/// config.output_dir.
TrialReport cmd_crossval(const RunConfig& config, const std::filesystem::path& input);

/// "mean ± std" in percent with two decimals.
std::string summary_line(const TrialReport& report);

ThreeSetVerdict cmd_three(const RunConfig& config, const std::filesystem::path& a, const std::filesystem::path& b,
                          const std::filesystem::path& c);

}  // namespace qgrass::cli

#endif  // QGRASS_CLI_HPP
