// Writes the synthetic stand-in images and masks used by the examples in the
// README into a directory (default: data/).

#include <filesystem>
#include <iostream>
#include <string>

#include "surfex/errors.hpp"
#include "surfex/inpaint.hpp"
#include "surfex/io.hpp"
#include "surfex/pnm.hpp"

int main(int argc, char** argv) {
  namespace fs = std::filesystem;
  using namespace surfex;
  const fs::path dir = argc > 1 ? fs::path(argv[1]) : fs::path("data");
  try {
    fs::create_directories(dir);
    const int size = 64;
    write_file_atomic(dir / "bump.pgm", write_pnm(make_standin(StandIn::SmoothBump, size, size)));
    write_file_atomic(dir / "gradient.pgm", write_pnm(make_standin(StandIn::Gradient, size, size)));
    write_file_atomic(dir / "edge.pgm", write_pnm(make_standin(StandIn::Edge, size, size)));
    write_file_atomic(dir / "color_bump.ppm", write_pnm(make_standin(StandIn::ColorBump, size, size)));
    write_file_atomic(dir / "mask_square16.pgm",
                      write_pnm(mask_to_image(size, size, centered_square_mask(size, size, 16))));
  } catch (const std::exception& e) {
    std::cerr << "make_standins: " << e.what() << "\n";
    return 1;
  }
  std::cout << "wrote stand-in images to " << dir << "\n";
  return 0;
}
