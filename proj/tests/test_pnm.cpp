#include <doctest.h>

#include <filesystem>
#include <string>

#include "surfex/errors.hpp"
#include "surfex/io.hpp"
#include "surfex/pnm.hpp"

using namespace surfex;

namespace {

std::vector<std::uint8_t> bytes(const std::string& s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("a 1x1 gray image decodes to its single sample") {
  auto data = bytes("P5\n1 1\n255\n");
  data.push_back(128);
  const RasterImage img = read_pnm(data);
  CHECK(img.width == 1);
  CHECK(img.height == 1);
  CHECK(img.channels == 1);
  CHECK(img.at(0, 0) == 128.0);
}

TEST_CASE("header comments and irregular whitespace are skipped") {
  auto data = bytes("P5 # a comment\n# another\n 2\t1 # size\n255\n");
  data.push_back(7);
  data.push_back(250);
  const RasterImage img = read_pnm(data);
  CHECK(img.width == 2);
  CHECK(img.at(0, 0) == 7.0);
  CHECK(img.at(1, 0) == 250.0);
}

TEST_CASE("gray and color images survive a write/read round trip") {
  for (int channels : {1, 3}) {
    RasterImage img(5, 3, channels);
    for (std::size_t k = 0; k < img.samples.size(); ++k) img.samples[k] = double((k * 37) % 256);
    const auto encoded = write_pnm(img);
    const std::string magic(encoded.begin(), encoded.begin() + 2);
    CHECK(magic == (channels == 1 ? "P5" : "P6"));
    const RasterImage back = read_pnm(encoded);
    CHECK(back.width == 5);
    CHECK(back.height == 3);
    CHECK(back.channels == channels);
    CHECK(back.samples == img.samples);
    CHECK(write_pnm(back) == encoded);
  }
}

TEST_CASE("the writer emits the canonical header") {
  RasterImage img(2, 2, 1, 9.0);
  const auto encoded = write_pnm(img);
  const std::string head(encoded.begin(), encoded.begin() + 11);
  CHECK(head == "P5\n2 2\n255\n");
  CHECK(encoded.size() == 15);
}

TEST_CASE("the writer rejects samples that are not bytes") {
  RasterImage img(1, 1, 1, 256.0);
  CHECK_THROWS_AS(write_pnm(img), InvalidArgument);
  img.samples[0] = 1.5;
  CHECK_THROWS_AS(write_pnm(img), InvalidArgument);
}

TEST_CASE("malformed input raises an I/O error") {
  SUBCASE("16-bit maxval") {
    auto data = bytes("P5\n1 1\n65535\n");
    data.push_back(0);
    data.push_back(1);
    CHECK_THROWS_AS(read_pnm(data), IoError);
  }
  SUBCASE("truncated payload") {
    auto data = bytes("P6\n2 2\n255\n");
    data.resize(data.size() + 11, 0);
    CHECK_THROWS_AS(read_pnm(data), IoError);
  }
  SUBCASE("ASCII formats") { CHECK_THROWS_AS(read_pnm(bytes("P2\n1 1\n255\n0\n")), IoError); }
  SUBCASE("missing dimensions") { CHECK_THROWS_AS(read_pnm(bytes("P5\n")), IoError); }
  SUBCASE("zero width") { CHECK_THROWS_AS(read_pnm(bytes("P5\n0 1\n255\n")), IoError); }
  SUBCASE("empty file") { CHECK_THROWS_AS(read_pnm({}), IoError); }
}

TEST_CASE("atomic writes replace the file and leave no temporary behind") {
  const auto dir = std::filesystem::temp_directory_path() / "surfex_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.txt";
  write_file_atomic(path, std::string_view("first"));
  write_file_atomic(path, std::string_view("second"));
  const auto back = read_file(path);
  CHECK(std::string(back.begin(), back.end()) == "second");
  int files = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++files;
  CHECK(files == 1);
  CHECK_THROWS_AS(read_file(dir / "missing.pgm"), IoError);
  CHECK_THROWS_AS(write_file_atomic(dir / "no" / "such" / "dir.txt", std::string_view("x")), IoError);
  std::filesystem::remove_all(dir);
}
