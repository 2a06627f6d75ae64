#include "surfex/pnm.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "surfex/errors.hpp"

namespace surfex {

RasterImage::RasterImage(int w, int h, int c, double fill)
    : width(w), height(h), channels(c), samples(std::size_t(w) * h * c, fill) {
  if (w < 1 || h < 1 || (c != 1 && c != 3)) throw InvalidArgument("RasterImage: bad dimensions");
}

std::vector<double> RasterImage::channel(int c) const {
  std::vector<double> out(std::size_t(width) * height);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = samples[k * channels + c];
  return out;
}

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  int next_int() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      throw IoError("read_pnm: malformed header");
    }
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_++] - '0');
      if (value > 1'000'000'000L) throw IoError("read_pnm: header value too large");
    }
    return static_cast<int>(value);
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t payload_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw IoError("read_pnm: malformed header");
    }
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 2;
};

}  // namespace

RasterImage read_pnm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6')) {
    throw IoError("read_pnm: not a binary P5/P6 file");
  }
  const int channels = bytes[1] == '5' ? 1 : 3;
  HeaderReader header(bytes);
  const int width = header.next_int();
  const int height = header.next_int();
  const int maxval = header.next_int();
  if (width < 1 || height < 1) throw IoError("read_pnm: empty image");
  if (maxval != 255) throw IoError("read_pnm: unsupported maxval " + std::to_string(maxval));
  const std::size_t offset = header.payload_offset();
  const std::size_t count = std::size_t(width) * height * channels;
  if (bytes.size() < offset + count) throw IoError("read_pnm: truncated payload");

  RasterImage image(width, height, channels);
  for (std::size_t k = 0; k < count; ++k) image.samples[k] = bytes[offset + k];
  return image;
}

std::vector<std::uint8_t> write_pnm(const RasterImage& image) {
  if (image.channels != 1 && image.channels != 3) throw InvalidArgument("write_pnm: bad channel count");
  const std::string header = std::string(image.channels == 1 ? "P5" : "P6") + "\n" +
                             std::to_string(image.width) + " " + std::to_string(image.height) +
                             "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(header.size() + image.samples.size());
  for (double v : image.samples) {
    if (!(v >= 0.0 && v <= 255.0) || v != std::floor(v)) {
      throw InvalidArgument("write_pnm: sample is not an integer in [0, 255]");
    }
    out.push_back(static_cast<std::uint8_t>(v));
  }
  return out;
}

}  // namespace surfex
