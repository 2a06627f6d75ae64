#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace surfex {

// Interleaved samples, row-major, `channels` values per pixel.
struct RasterImage {
  int width = 0;
  int height = 0;
  int channels = 1;  // 1 = gray, 3 = RGB
  std::vector<double> samples;

  RasterImage() = default;
  RasterImage(int w, int h, int c, double fill = 0.0);

  double& at(int x, int y, int c = 0) { return samples[index(x, y, c)]; }
  double at(int x, int y, int c = 0) const { return samples[index(x, y, c)]; }
  std::size_t index(int x, int y, int c = 0) const {
    return (static_cast<std::size_t>(y) * width + x) * channels + c;
  }

  // One channel as a row-major lattice field.
  std::vector<double> channel(int c) const;
};

// Binary P5 / P6 with maxval 255. Comments are allowed in the header.
RasterImage read_pnm(std::span<const std::uint8_t> bytes);

// Writes "P5\n<w> <h>\n255\n" (or P6) followed by the samples, which must be
// integers in [0, 255].
std::vector<std::uint8_t> write_pnm(const RasterImage& image);

}  // namespace surfex
