#ifndef QGRASS_IO_HPP
#define QGRASS_IO_HPP

#include <filesystem>
#include <string>

#include <json.hpp>

#include "qgrass/classify.hpp"
#include "qgrass/grassmann.hpp"
#include "qgrass/quat_matrix.hpp"

namespace qgrass {

using Json = nlohmann::json;

/// {"n": rows, "m": cols, "w": [[..]], "x": [[..]], "y": [[..]], "z": [[..]]},
/// row-major nested arrays of doubles.
Json to_json(const QuatMatrixd& m);
QuatMatrixd quat_matrix_from_json(const Json& j);

enum class PointEncoding {
  Projector,  ///< P in the QuatMatrix fields plus {"n", "k"}
  Frame,      ///< {"n", "k", "frame": QuatMatrix} only
  Both,
};

/// Projector fields are the QuatMatrix layout of P with an added "k".
/// Frame-backed points may also carry "frame"; readers prefer the frame.
Json to_json(const GrassmannPoint& p, PointEncoding encoding = PointEncoding::Both);
GrassmannPoint grassmann_point_from_json(const Json& j);

/// Header row "label,<l1>,...,<lN>", then one "<li>,d_i1,...,d_iN" row per
/// point. Values use 17 significant digits so they read back exactly.
std::string to_csv(const DistanceMatrix& d);
DistanceMatrix distance_matrix_from_csv(const std::string& text);

/// {"protocol": {...}, "seed", "per_trial_accuracy", "mean", "std"}.
Json to_json(const TrialReport& r);
TrialReport trial_report_from_json(const Json& j);

Json read_json_file(const std::filesystem::path& path);
/// Pretty-printed with two-space indentation and a trailing newline.
void write_json_file(const std::filesystem::path& path, const Json& j);
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace qgrass

#endif  // QGRASS_IO_HPP
