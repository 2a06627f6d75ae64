#pragma once

#include <optional>
#include <vector>

#include "surfex/assembly.hpp"
#include "surfex/grid.hpp"
#include "surfex/pnm.hpp"
#include "surfex/schemes.hpp"
#include "surfex/solver.hpp"

namespace surfex {

// Samples >= 128 in a gray mask image mean "missing".
inline constexpr double kMaskThreshold = 128.0;

Mask mask_from_image(const RasterImage& image);
RasterImage mask_to_image(int width, int height, const Mask& mask);

struct InpaintJob {
  RasterImage image;
  Mask mask;
  SchemeKind method = SchemeKind::Harmonic;
  SolverOptions solver;
  BiharmonicOptions stencil;
};

// Boundary data for one channel, pixel spacing 1.
//   g: the channel value at every known pixel;
//   f (BiharmonicL): 5-point Laplacian at ring-1 pixels, with the one-sided
//      second difference u(Q) - 2u(Q+d) + u(Q+2d) on any axis whose centred
//      stencil would read a missing pixel;
//   q (BiharmonicN): u(Q+d) - u(Q) for each outward direction d of Q, where
//      both pixels are known.
// Throws InvalidArgument when a required f tap is missing or off the image.
BoundaryData extract_boundary_data(const RasterImage& image, int channel,
                                   const CellClassification& cls, SchemeKind method);

struct InpaintResult {
  RasterImage image;                    // clamped and rounded
  std::vector<CompletedField> channels;  // raw solutions, one per channel
};

InpaintResult inpaint_detailed(const InpaintJob& job);
RasterImage inpaint(const InpaintJob& job);

struct InpaintMetrics {
  std::optional<double> sup_error;  // over missing pixels
  std::optional<double> psnr;       // over the whole image, peak 255
  int iterations = 0;
};

InpaintMetrics compute_metrics(const InpaintResult& result, const Mask& mask,
                               const RasterImage* truth);

// Deterministic synthetic stand-in images.
enum class StandIn { SmoothBump, Gradient, Edge, ColorBump };

RasterImage make_standin(StandIn kind, int width, int height);
// Centred side x side square of missing pixels.
Mask centered_square_mask(int width, int height, int side);

}  // namespace surfex
