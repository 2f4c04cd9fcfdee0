#include "qgrass/image_io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <memory>

#include <jpeglib.h>
#include <png.h>

namespace qgrass {

namespace fs = std::filesystem;

namespace {

using Bytes = std::vector<unsigned char>;

ColorImage from_interleaved_rgb(const Bytes& px, Index height, Index width) {
  ColorImage::Channel r(height, width), g(height, width), b(height, width);
  for (Index y = 0; y < height; ++y) {
    for (Index x = 0; x < width; ++x) {
      const std::size_t o = static_cast<std::size_t>((y * width + x) * 3);
      r(y, x) = px[o];
      g(y, x) = px[o + 1];
      b(y, x) = px[o + 2];
    }
  }
  return ColorImage(std::move(r), std::move(g), std::move(b));
}

Bytes to_interleaved_rgb(const ColorImage& img) {
  Bytes px(static_cast<std::size_t>(img.height() * img.width() * 3));
  const auto q = [](double v) { return static_cast<unsigned char>(std::clamp(std::lround(v), 0L, 255L)); };
  for (Index y = 0; y < img.height(); ++y) {
    for (Index x = 0; x < img.width(); ++x) {
      const std::size_t o = static_cast<std::size_t>((y * img.width() + x) * 3);
      px[o] = q(img.r()(y, x));
      px[o + 1] = q(img.g()(y, x));
      px[o + 2] = q(img.b()(y, x));
    }
  }
  return px;
}

ColorImage decode_png(const fs::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str()))
    throw Error(Errc::DecodeError, path.string() + ": " + image.message);
  // Composite any alpha onto black, expand palette/gray, strip 16-bit.
  image.format = PNG_FORMAT_RGB;
  Bytes px(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, px.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw Error(Errc::DecodeError, path.string() + ": " + msg);
  }
  return from_interleaved_rgb(px, image.height, image.width);
}

struct JpegError {
  jpeg_error_mgr mgr;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegError*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

// No objects with destructors may live between setjmp and the libjpeg calls.
bool decode_jpeg_raw(std::FILE* file, Bytes& px, JDIMENSION& height, JDIMENSION& width, JpegError& err) {
  jpeg_decompress_struct cinfo{};
  cinfo.err = jpeg_std_error(&err.mgr);
  err.mgr.error_exit = jpeg_error_exit;
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    return false;
  }
  jpeg_create_decompress(&cinfo);
  jpeg_stdio_src(&cinfo, file);
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  height = cinfo.output_height;
  width = cinfo.output_width;
  px.resize(static_cast<std::size_t>(height) * width * 3);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = px.data() + static_cast<std::size_t>(cinfo.output_scanline) * width * 3;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return true;
}

ColorImage decode_jpeg(const fs::path& path) {
  FilePtr file(std::fopen(path.c_str(), "rb"));
  if (!file) throw Error(Errc::DecodeError, path.string() + ": cannot open");
  Bytes px;
  JDIMENSION h = 0, w = 0;
  JpegError err{};
  if (!decode_jpeg_raw(file.get(), px, h, w, err))
    throw Error(Errc::DecodeError, path.string() + ": " + err.message);
  return from_interleaved_rgb(px, h, w);
}

bool encode_jpeg_raw(std::FILE* file, const Bytes& px, JDIMENSION height, JDIMENSION width, int quality,
                     JpegError& err) {
  jpeg_compress_struct cinfo{};
  cinfo.err = jpeg_std_error(&err.mgr);
  err.mgr.error_exit = jpeg_error_exit;
  if (setjmp(err.jump)) {
    jpeg_destroy_compress(&cinfo);
    return false;
  }
  jpeg_create_compress(&cinfo);
  jpeg_stdio_dest(&cinfo, file);
  cinfo.image_width = width;
  cinfo.image_height = height;
  cinfo.input_components = 3;
  cinfo.in_color_space = JCS_RGB;
  jpeg_set_defaults(&cinfo);
  jpeg_set_quality(&cinfo, quality, TRUE);
  jpeg_start_compress(&cinfo, TRUE);
  while (cinfo.next_scanline < cinfo.image_height) {
    JSAMPROW row = const_cast<unsigned char*>(px.data()) + static_cast<std::size_t>(cinfo.next_scanline) * width * 3;
    jpeg_write_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_compress(&cinfo);
  jpeg_destroy_compress(&cinfo);
  return true;
}

std::string lower_extension(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext;
}

}  // namespace

ColorImage load_image(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::DecodeError, path.string() + ": cannot open");
  std::array<unsigned char, 8> sig{};
  in.read(reinterpret_cast<char*>(sig.data()), sig.size());
  const auto got = in.gcount();
  in.close();
  if (got >= 8 && png_sig_cmp(sig.data(), 0, 8) == 0) return decode_png(path);
  if (got >= 3 && sig[0] == 0xFF && sig[1] == 0xD8 && sig[2] == 0xFF) return decode_jpeg(path);
  throw Error(Errc::DecodeError, path.string() + ": not a PNG or JPEG file");
}

void write_png(const fs::path& path, const ColorImage& img) {
  const Bytes px = to_interleaved_rgb(img);
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width());
  image.height = static_cast<png_uint_32>(img.height());
  image.format = PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&image, path.c_str(), 0, px.data(), 0, nullptr))
    throw Error(Errc::IoError, path.string() + ": " + image.message);
}

void write_jpeg(const fs::path& path, const ColorImage& img, int quality) {
  const Bytes px = to_interleaved_rgb(img);
  FilePtr file(std::fopen(path.c_str(), "wb"));
  if (!file) throw Error(Errc::IoError, path.string() + ": cannot open for writing");
  JpegError err{};
  if (!encode_jpeg_raw(file.get(), px, static_cast<JDIMENSION>(img.height()),
                       static_cast<JDIMENSION>(img.width()), quality, err))
    throw Error(Errc::IoError, path.string() + ": " + err.message);
}

bool is_image_file(const fs::path& path) {
  const std::string ext = lower_extension(path);
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

std::vector<fs::path> list_images(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const fs::path& p = entry.path();
    if (p.filename().string().starts_with('.')) continue;
    if (is_image_file(p)) files.push_back(p);
  }
  std::sort(files.begin(), files.end());
  return files;
}

ImageSet load_image_set(const fs::path& dir, std::string label, std::string object_id) {
  if (!fs::is_directory(dir)) throw Error(Errc::IoError, dir.string() + ": not a directory");
  ImageSet set{{}, std::move(label), std::move(object_id)};
  for (const auto& file : list_images(dir)) set.images.push_back(load_image(file));
  if (set.images.empty()) throw Error(Errc::EmptyObjectDirectory, "No images found in: " + dir.string());
  return set;
}

std::vector<DatasetObject> scan_dataset(const fs::path& root) {
  if (!fs::is_directory(root)) throw Error(Errc::IoError, root.string() + ": dataset root is not a directory");
  const auto subdirs = [](const fs::path& dir) {
    std::vector<fs::path> out;
    for (const auto& entry : fs::directory_iterator(dir))
      if (entry.is_directory() && !entry.path().filename().string().starts_with('.')) out.push_back(entry.path());
    std::sort(out.begin(), out.end());
    return out;
  };
  std::vector<DatasetObject> objects;
  for (const auto& class_dir : subdirs(root))
    for (const auto& object_dir : subdirs(class_dir))
      objects.push_back({class_dir.filename().string(), object_dir.filename().string(), object_dir});
  return objects;
}

}  // namespace qgrass
