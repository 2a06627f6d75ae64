#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "surfex/cli.hpp"
#include "surfex/harness.hpp"
#include "surfex/inpaint.hpp"
#include "surfex/io.hpp"
#include "surfex/pnm.hpp"

using namespace surfex;

namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("surfex_cli_" + std::to_string(counter_++))) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  return lines;
}

}  // namespace

TEST_CASE("convergence writes the header and one row per level") {
  TempDir dir;
  const Run r = run({"convergence", "--function", "cosine", "--imax", "6", "--grid-n", "50", "--out", dir / "t.csv"});
  REQUIRE(r.code == kExitOk);
  const auto lines = read_lines(dir / "t.csv");
  REQUIRE(!lines.empty());
  CHECK(lines[0] == "i,d,log2_err_uh,log2_err_ul,log2_err_un");
  int rows = 0;
  for (std::size_t k = 1; k < lines.size(); ++k)
    if (!lines[k].empty() && lines[k][0] != '#') ++rows;
  CHECK(rows == 7);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  const Run missing = run({"inpaint", "--image", "a.pgm", "--out", "b.pgm"});
  CHECK(missing.code == kExitUsage);
  CHECK(missing.err.find("--mask") != std::string::npos);
  CHECK(run({"complete", "--method", "nope", "--out", "x.csv"}).code == kExitUsage);
  CHECK(run({"convergence", "--imax", "13", "--out", "x.csv"}).code == kExitUsage);
  CHECK(run({"dump-system", "--method", "polyharmonic-l"}).code == kExitUsage);
}

TEST_CASE("help exits cleanly") {
  const Run r = run({"--help"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("inpaint") != std::string::npos);
}

TEST_CASE("I/O failures exit with code 3") {
  TempDir dir;
  CHECK(run({"inpaint", "--image", dir / "missing.pgm", "--mask", dir / "m.pgm", "--out", dir / "o.pgm"}).code ==
        kExitIo);
  write_file_atomic(dir / "bad.pgm", std::string_view("P5\n2 2\n65535\n"));
  CHECK(run({"inpaint", "--image", dir / "bad.pgm", "--mask", dir / "bad.pgm", "--out", dir / "o.pgm"}).code ==
        kExitIo);
  CHECK(run({"convergence", "--imax", "0", "--grid-n", "10", "--out", dir / "no/such/dir/x.csv"}).code == kExitIo);
}

TEST_CASE("solver failures exit with code 4") {
  TempDir dir;
  const Run r = run({"complete", "--method", "biharmonic-n", "--grid-n", "30", "--max-iter", "2", "--out",
                     dir / "f.csv"});
  CHECK(r.code == kExitSolver);
}

TEST_CASE("dump-system matches the enumeration oracle") {
  TempDir dir;
  const Run r = run({"dump-system", "--method", "biharmonic-n", "--grid-n", "4", "--rhs", dir / "b.mtx"});
  REQUIRE(r.code == kExitOk);
  std::istringstream mm(r.out);
  std::string header;
  std::getline(mm, header);
  CHECK(header == "%%MatrixMarket matrix coordinate real general");
  int rows = 0, cols = 0, nnz = 0;
  mm >> rows >> cols >> nnz;

  const auto surface = make_surface(TestFunction::Cosine);
  const RectProblem p = make_rect_problem(*surface, 1.0, 4);
  const auto ref = oracle::biharmonic(p.cls, p.grid, p.data, false);
  REQUIRE(rows == int(ref.b.size()));
  std::vector<std::vector<double>> a(rows, std::vector<double>(cols, 0.0));
  for (int k = 0; k < nnz; ++k) {
    int i = 0, j = 0;
    double v = 0.0;
    mm >> i >> j >> v;
    a[i - 1][j - 1] = v;
  }
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) CHECK(a[i][j] == doctest::Approx(ref.a[i][j]).epsilon(1e-15));

  const auto rhs = read_lines(dir / "b.mtx");
  REQUIRE(rhs.size() == std::size_t(rows) + 2);
  CHECK(rhs[0] == "%%MatrixMarket matrix array real general");
  for (int i = 0; i < rows; ++i) CHECK(std::stod(rhs[i + 2]) == doctest::Approx(ref.b[i]).epsilon(1e-15));
}

TEST_CASE("complete writes a field CSV with the expected accuracy") {
  TempDir dir;
  const Run r = run({"complete", "--method", "biharmonic-l", "--function", "cubic", "--grid-n", "20", "--out",
                     dir / "f.csv"});
  REQUIRE(r.code == kExitOk);
  const auto lines = read_lines(dir / "f.csv");
  CHECK(lines[0] == "x,y,value,known");
  CHECK(lines.size() == 1 + 21 * 21);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    double x = 0, y = 0, v = 0;
    CHECK(std::sscanf(lines[k].c_str(), "%lf,%lf,%lf", &x, &y, &v) == 3);
    CHECK(v == doctest::Approx(test_function(TestFunction::Cubic, x, y).value).epsilon(1e-8));
  }
  CHECK(run({"complete", "--method", "polyharmonic-l", "--order", "3", "--grid-n", "10", "--out", dir / "p.csv"})
            .code == kExitOk);
  CHECK(run({"complete", "--method", "polyharmonic-l", "--order", "0", "--grid-n", "10", "--out", dir / "p.csv"})
            .code == kExitUsage);
}

TEST_CASE("inpaint round trip with metrics") {
  TempDir dir;
  const RasterImage img = make_standin(StandIn::SmoothBump, 32, 32);
  const Mask mask = centered_square_mask(32, 32, 8);
  write_file_atomic(dir / "img.pgm", write_pnm(img));
  write_file_atomic(dir / "mask.pgm", write_pnm(mask_to_image(32, 32, mask)));
  for (std::string method : {"harmonic", "biharmonic-l", "biharmonic-n"}) {
    const Run r = run({"inpaint", "--image", dir / "img.pgm", "--mask", dir / "mask.pgm", "--method", method,
                       "--out", dir / "out.pgm", "--metrics", dir / "m.csv", "--truth", dir / "img.pgm"});
    REQUIRE(r.code == kExitOk);
    const RasterImage out = read_pnm(read_file(dir / "out.pgm"));
    InpaintJob job;
    job.image = img;
    job.mask = mask;
    job.method = method == "harmonic" ? SchemeKind::Harmonic
                 : method == "biharmonic-l" ? SchemeKind::BiharmonicL
                                            : SchemeKind::BiharmonicN;
    CHECK(out.samples == inpaint(job).samples);
    const auto m = read_lines(dir / "m.csv");
    REQUIRE(m.size() == 2);
    CHECK(m[0] == "method,sup_error,psnr,iterations");
    CHECK(m[1].rfind(method + ",", 0) == 0);
  }
}
