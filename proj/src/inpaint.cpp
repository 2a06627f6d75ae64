#include "surfex/inpaint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "surfex/errors.hpp"

namespace surfex {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string describe(LatticePoint p) {
  return "(" + std::to_string(p.i) + ", " + std::to_string(p.j) + ")";
}

// Second difference of the known pixels around q along one axis (step e).
double axis_second_difference(const RasterImage& image, int channel, const CellClassification& cls,
                              LatticePoint q, LatticePoint e) {
  const auto u = [&](LatticePoint p) { return image.at(p.i, p.j, channel); };
  const LatticePoint fwd = q + e;
  const LatticePoint back{q.i - e.i, q.j - e.j};
  const bool fwd_ok = cls.is_known(fwd);
  const bool back_ok = cls.is_known(back);
  if (fwd_ok && back_ok) return u(fwd) - 2.0 * u(q) + u(back);
  if (!fwd_ok && !back_ok) {
    throw InvalidArgument("extract_boundary_data: no known pixels on either side of " + describe(q));
  }
  const LatticePoint d = fwd_ok ? e : LatticePoint{-e.i, -e.j};
  const LatticePoint out1 = q + d;
  const LatticePoint out2 = out1 + d;
  if (!cls.is_known(out2)) {
    throw InvalidArgument("extract_boundary_data: one-sided Laplacian at " + describe(q) +
                          " needs two known pixels outward (collar too thin)");
  }
  return u(q) - 2.0 * u(out1) + u(out2);
}

}  // namespace

Mask mask_from_image(const RasterImage& image) {
  if (image.channels != 1) throw InvalidArgument("mask image must be grayscale (P5)");
  Mask mask(image.samples.size());
  for (std::size_t k = 0; k < mask.size(); ++k) mask[k] = image.samples[k] >= kMaskThreshold ? 1 : 0;
  return mask;
}

RasterImage mask_to_image(int width, int height, const Mask& mask) {
  RasterImage image(width, height, 1);
  if (mask.size() != image.samples.size()) throw InvalidArgument("mask_to_image: size mismatch");
  for (std::size_t k = 0; k < mask.size(); ++k) image.samples[k] = mask[k] ? 255.0 : 0.0;
  return image;
}

BoundaryData extract_boundary_data(const RasterImage& image, int channel,
                                   const CellClassification& cls, SchemeKind method) {
  if (cls.width() != image.width || cls.height() != image.height) {
    throw InvalidArgument("extract_boundary_data: classification does not match the image");
  }
  if (channel < 0 || channel >= image.channels) throw InvalidArgument("extract_boundary_data: bad channel");

  const std::size_t n = std::size_t(image.width) * image.height;
  BoundaryData data;
  data.g.assign(n, kNaN);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      if (cls.is_known({x, y})) data.g[cls.linear({x, y})] = image.at(x, y, channel);
    }
  }

  if (method == SchemeKind::BiharmonicL) {
    LatticeField f(n, kNaN);
    for (int y = 0; y < image.height; ++y) {
      for (int x = 0; x < image.width; ++x) {
        const LatticePoint q{x, y};
        if (cls.ring(q) != 1) continue;
        f[cls.linear(q)] = axis_second_difference(image, channel, cls, q, {1, 0}) +
                           axis_second_difference(image, channel, cls, q, {0, 1});
      }
    }
    data.f = std::move(f);
  }

  if (method == SchemeKind::BiharmonicN) {
    DirectionalField q;
    for (auto& field : q) field.assign(n, kNaN);
    for (const LatticePoint& p : cls.index_map().points()) {
      for (Direction d : kDirections) {
        const LatticePoint b = p + offset(d);
        const LatticePoint out = b + offset(d);
        if (cls.is_known(b) && cls.is_known(out)) {
          q[int(d)][cls.linear(b)] = image.at(out.i, out.j, channel) - image.at(b.i, b.j, channel);
        }
      }
    }
    data.q = std::move(q);
  }
  return data;
}

InpaintResult inpaint_detailed(const InpaintJob& job) {
  const RasterImage& image = job.image;
  if (job.mask.size() != std::size_t(image.width) * image.height) {
    throw InvalidArgument("inpaint: mask size does not match the image");
  }
  InpaintResult result{image, {}};
  if (std::none_of(job.mask.begin(), job.mask.end(), [](std::uint8_t m) { return m != 0; })) {
    return result;
  }
  if (job.method == SchemeKind::PolyharmonicL) {
    throw InvalidArgument("inpaint: polyharmonic-l is not available for images");
  }

  const CellClassification cls = classify_mask(image.width, image.height, job.mask);
  const Grid2D grid = Grid2D::for_image(image.width, image.height);
  for (int c = 0; c < image.channels; ++c) {
    const BoundaryData data = extract_boundary_data(image, c, cls, job.method);
    CompletedField field = [&] {
      switch (job.method) {
        case SchemeKind::BiharmonicL:
          return complete_biharmonic_laplacian(cls, grid, data.g, *data.f, job.solver);
        case SchemeKind::BiharmonicN:
          return complete_biharmonic_normal(cls, grid, data, job.solver, job.stencil);
        default:
          return complete_harmonic(cls, grid, data.g, job.solver);
      }
    }();
    for (const LatticePoint& p : cls.index_map().points()) {
      const double v = std::clamp(field.values[cls.linear(p)], 0.0, 255.0);
      result.image.at(p.i, p.j, c) = std::round(v);
    }
    result.channels.push_back(std::move(field));
  }
  return result;
}

RasterImage inpaint(const InpaintJob& job) { return inpaint_detailed(job).image; }

InpaintMetrics compute_metrics(const InpaintResult& result, const Mask& mask, const RasterImage* truth) {
  InpaintMetrics metrics;
  for (const auto& field : result.channels) metrics.iterations += field.total_iterations();
  if (truth == nullptr) return metrics;

  const RasterImage& out = result.image;
  if (truth->width != out.width || truth->height != out.height || truth->channels != out.channels) {
    throw InvalidArgument("metrics: ground truth does not match the output image");
  }
  double sup = 0.0;
  double sq = 0.0;
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      for (int c = 0; c < out.channels; ++c) {
        const double e = out.at(x, y, c) - truth->at(x, y, c);
        sq += e * e;
        if (mask[std::size_t(y) * out.width + x]) sup = std::max(sup, std::abs(e));
      }
    }
  }
  const double mse = sq / double(out.samples.size());
  metrics.sup_error = sup;
  metrics.psnr = mse == 0.0 ? std::numeric_limits<double>::infinity()
                            : 10.0 * std::log10(255.0 * 255.0 / mse);
  return metrics;
}

RasterImage make_standin(StandIn kind, int width, int height) {
  using std::numbers::pi;
  const int channels = kind == StandIn::ColorBump ? 3 : 1;
  RasterImage image(width, height, channels);
  const double cx = 0.5 * (width - 1);
  const double cy = 0.5 * (height - 1);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double bx = 1.0 + std::cos(2.0 * pi * (x - cx) / width);
      const double by = 1.0 + std::cos(2.0 * pi * (y - cy) / height);
      switch (kind) {
        case StandIn::SmoothBump:
          image.at(x, y) = std::round(127.5 * bx * by / 2.0);
          break;
        case StandIn::Gradient:
          image.at(x, y) = std::round(255.0 * (x + y) / double(width + height - 2));
          break;
        case StandIn::Edge: {
          const bool right = (x - cx) + 0.3 * (y - cy) > 0.0;
          image.at(x, y) = std::round((right ? 190.0 : 60.0) + 20.0 * std::sin(2.0 * pi * y / height));
          break;
        }
        case StandIn::ColorBump:
          image.at(x, y, 0) = std::round(127.5 * bx * by / 2.0);
          image.at(x, y, 1) = std::round(255.0 * x / double(width - 1));
          image.at(x, y, 2) = std::round(127.5 * (1.0 + std::sin(2.0 * pi * (x + 2 * y) / width)));
          break;
      }
    }
  }
  return image;
}

Mask centered_square_mask(int width, int height, int side) {
  if (side < 0 || side > width || side > height) throw InvalidArgument("centered_square_mask: bad side");
  Mask mask(std::size_t(width) * height, 0);
  const int x0 = (width - side) / 2;
  const int y0 = (height - side) / 2;
  for (int y = y0; y < y0 + side; ++y) {
    for (int x = x0; x < x0 + side; ++x) mask[std::size_t(y) * width + x] = 1;
  }
  return mask;
}

}  // namespace surfex
