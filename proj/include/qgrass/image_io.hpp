#ifndef QGRASS_IMAGE_IO_HPP
#define QGRASS_IMAGE_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "qgrass/imageset.hpp"

namespace qgrass {

/// Decodes a PNG or JPEG file (chosen by signature) to 8-bit RGB. Grayscale
/// is replicated across channels, alpha is composited onto black, 16-bit samples are
/// reduced to 8 bits. Throws DecodeError naming the file.
ColorImage load_image(const std::filesystem::path& path);

void write_png(const std::filesystem::path& path, const ColorImage& img);
void write_jpeg(const std::filesystem::path& path, const ColorImage& img, int quality = 95);

/// True for .png / .jpg / .jpeg (case-insensitive).
bool is_image_file(const std::filesystem::path& path);

/// Image files directly inside dir, sorted by file name.
std::vector<std::filesystem::path> list_images(const std::filesystem::path& dir);

/// Loads every image in dir as one set.
ImageSet load_image_set(const std::filesystem::path& dir, std::string label, std::string object_id);

/// One object directory of a dataset laid out as root/<class>/<object>/<view>.
struct DatasetObject {
  std::string label;
  std::string object_id;
  std::filesystem::path dir;
};

/// All class/object directories under root, sorted by class then object name.
/// Hidden entries are skipped.
std::vector<DatasetObject> scan_dataset(const std::filesystem::path& root);

}  // namespace qgrass

#endif  // QGRASS_IMAGE_IO_HPP
