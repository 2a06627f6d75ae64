#include "surfex/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>

#include "surfex/assembly.hpp"
#include "surfex/errors.hpp"
#include "surfex/harness.hpp"
#include "surfex/inpaint.hpp"
#include "surfex/io.hpp"
#include "surfex/pnm.hpp"
#include "surfex/schemes.hpp"
#include "surfex/solver.hpp"

namespace surfex {

namespace {

const std::map<std::string, SchemeKind> kMethods = {
    {"harmonic", SchemeKind::Harmonic},
    {"biharmonic-l", SchemeKind::BiharmonicL},
    {"biharmonic-n", SchemeKind::BiharmonicN},
    {"polyharmonic-l", SchemeKind::PolyharmonicL},
};

const std::map<std::string, TestFunction> kFunctions = {
    {"cubic", TestFunction::Cubic},
    {"cosine", TestFunction::Cosine},
    {"plane", TestFunction::Plane},
};

struct SolverFlags {
  double tol = 1e-12;
  int max_iter = 0;
  std::string solver = "cg";
  std::string precond = "none";
  bool strict = false;

  void attach(CLI::App* app) {
    app->add_option("--tol", tol, "Relative residual tolerance")->check(CLI::PositiveNumber);
    app->add_option("--max-iter", max_iter, "CG iteration cap (0 = 10 x unknowns)")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--solver", solver, "Linear solver")->check(CLI::IsMember({"dense", "cg"}));
    app->add_option("--precond", precond, "CG preconditioner")->check(CLI::IsMember({"none", "jacobi"}));
    app->add_flag("--strict-paper-stencil", strict,
                  "Use the ghost correction on every row next to the boundary");
  }

  StudyOptions options() const {
    StudyOptions o;
    o.solver.method = solver == "dense" ? SolveMethod::DenseDirect : SolveMethod::CG;
    o.solver.tol = tol;
    o.solver.max_iter = max_iter;
    o.solver.precond = precond == "jacobi" ? Preconditioner::Jacobi : Preconditioner::None;
    o.stencil.strict_paper_stencil = strict;
    return o;
  }
};

std::vector<std::string> keys(const auto& map) {
  std::vector<std::string> out;
  for (const auto& [k, v] : map) out.push_back(k);
  return out;
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

struct CompleteCmd {
  std::string method;
  int order = 2;
  std::string function = "cosine";
  double half_width = 1.0;
  int grid_n = 50;
  std::string out;
  SolverFlags flags;

  int run(std::ostream& log) const {
    if (order < 1) throw InvalidArgument("--order must be >= 1");
    const auto surface = make_surface(kFunctions.at(function));
    const RectProblem problem = make_rect_problem(*surface, half_width, grid_n);
    const SchemeKind kind = kMethods.at(method);
    const CompletedField field = complete_rect_problem(*surface, problem, kind, order, flags.options());
    std::ostringstream csv;
    write_field_csv(csv, field, problem.cls, problem.domain);
    write_file_atomic(out, csv.str());
    log << "method=" << method << " sup_error=" << fmt("%.6e", sup_error(field, problem.cls, problem.exact))
        << " iterations=" << field.total_iterations() << "\n";
    return kExitOk;
  }
};

struct InpaintCmd {
  std::string image;
  std::string mask;
  std::string method = "harmonic";
  std::string out;
  std::string metrics;
  std::string truth;
  SolverFlags flags;

  int run(std::ostream& log) const {
    InpaintJob job;
    job.image = read_pnm(read_file(image));
    const RasterImage mask_image = read_pnm(read_file(mask));
    if (mask_image.width != job.image.width || mask_image.height != job.image.height) {
      throw InvalidArgument("mask dimensions do not match the image");
    }
    job.mask = mask_from_image(mask_image);
    job.method = kMethods.at(method);
    const StudyOptions options = flags.options();
    job.solver = options.solver;
    job.stencil = options.stencil;

    const InpaintResult result = inpaint_detailed(job);
    std::optional<RasterImage> truth_image;
    if (!truth.empty()) truth_image = read_pnm(read_file(truth));
    const InpaintMetrics m = compute_metrics(result, job.mask, truth_image ? &*truth_image : nullptr);

    write_file_atomic(out, write_pnm(result.image));
    if (!metrics.empty()) {
      std::string csv = "method,sup_error,psnr,iterations\n" + method + ",";
      csv += m.sup_error ? fmt("%.6g", *m.sup_error) : "";
      csv += ",";
      csv += m.psnr ? fmt("%.6g", *m.psnr) : "";
      csv += "," + std::to_string(m.iterations) + "\n";
      write_file_atomic(metrics, csv);
    }
    log << "method=" << method << " iterations=" << m.iterations;
    if (m.psnr) log << " psnr=" << fmt("%.4f", *m.psnr);
    log << "\n";
    return kExitOk;
  }
};

struct ConvergenceCmd {
  std::string function = "cosine";
  int imax = 6;
  int grid_n = 50;
  std::string out;
  SolverFlags flags;

  int run(std::ostream& log) const {
    const ConvergenceReport report = run_convergence_study(kFunctions.at(function), imax, grid_n, flags.options());
    std::ostringstream csv;
    write_convergence_csv(csv, report);
    write_file_atomic(out, csv.str());
    log << "wrote " << report.rows.size() << " rows to " << out << "\n";
    return kExitOk;
  }
};

struct DumpCmd {
  std::string method = "biharmonic-n";
  int grid_n = 4;
  std::string function = "cosine";
  double half_width = 1.0;
  std::string out;
  std::string rhs;
  SolverFlags flags;

  int run(std::ostream& stdout_stream) const {
    const auto surface = make_surface(kFunctions.at(function));
    const RectProblem problem = make_rect_problem(*surface, half_width, grid_n);
    const SparseSystem system = [&] {
      switch (kMethods.at(method)) {
        case SchemeKind::BiharmonicN:
          return assemble_biharmonic_13pt(problem.cls, problem.grid, problem.data, flags.options().stencil);
        case SchemeKind::BiharmonicL: {
          // First cascade stage: Delta v = 0 with the Laplacian trace.
          const std::vector<double> zero(problem.cls.n_unknown(), 0.0);
          return assemble_poisson(problem.cls, problem.grid, zero, *problem.data.f);
        }
        case SchemeKind::Harmonic: {
          const std::vector<double> zero(problem.cls.n_unknown(), 0.0);
          return assemble_poisson(problem.cls, problem.grid, zero, problem.data.g);
        }
        default:
          throw InvalidArgument("dump-system: method must be harmonic, biharmonic-l or biharmonic-n");
      }
    }();
    std::ostringstream mm;
    write_matrix_market(mm, system);
    if (out.empty()) {
      stdout_stream << mm.str();
    } else {
      write_file_atomic(out, mm.str());
    }
    if (!rhs.empty()) {
      std::ostringstream b;
      write_matrix_market_rhs(b, system);
      write_file_atomic(rhs, b.str());
    }
    return kExitOk;
  }
};

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Harmonic and biharmonic surface completion and image inpainting", "surfex"};
  app.require_subcommand(1);

  CompleteCmd complete;
  auto* c = app.add_subcommand("complete", "Complete a test surface over a square hole");
  c->add_option("--method", complete.method, "Completion scheme")->required()->check(CLI::IsMember(keys(kMethods)));
  c->add_option("--order", complete.order, "Polyharmonic order for polyharmonic-l");
  c->add_option("--function", complete.function, "Test surface")->check(CLI::IsMember(keys(kFunctions)));
  c->add_option("--domain-halfwidth", complete.half_width, "Hole is [-r, r]^2")->check(CLI::PositiveNumber);
  c->add_option("--grid-n", complete.grid_n, "Subdivisions per side")->check(CLI::Range(2, 4096));
  c->add_option("--out", complete.out, "Field CSV (x,y,value,known)")->required();
  complete.flags.attach(c);

  InpaintCmd inpaint_cmd;
  auto* p = app.add_subcommand("inpaint", "Inpaint a PNM image under a PGM mask");
  p->add_option("--image", inpaint_cmd.image, "Input P5/P6 image")->required();
  p->add_option("--mask", inpaint_cmd.mask, "P5 mask, >= 128 means missing")->required();
  p->add_option("--method", inpaint_cmd.method, "Completion scheme")
      ->check(CLI::IsMember({"harmonic", "biharmonic-l", "biharmonic-n"}));
  p->add_option("--out", inpaint_cmd.out, "Output PNM")->required();
  p->add_option("--metrics", inpaint_cmd.metrics, "Metrics CSV");
  p->add_option("--truth", inpaint_cmd.truth, "Ground-truth PNM for error metrics");
  inpaint_cmd.flags.attach(p);

  ConvergenceCmd conv;
  auto* v = app.add_subcommand("convergence", "Domain-shrinking convergence study");
  v->add_option("--function", conv.function, "Test surface")->check(CLI::IsMember(keys(kFunctions)));
  v->add_option("--imax", conv.imax, "Largest level i")->check(CLI::Range(0, kMaxStudyLevel));
  v->add_option("--grid-n", conv.grid_n, "Subdivisions per side")->check(CLI::Range(10, 4096));
  v->add_option("--out", conv.out, "Report CSV")->required();
  conv.flags.attach(v);

  DumpCmd dump;
  auto* d = app.add_subcommand("dump-system", "Write an assembled matrix in MatrixMarket format");
  d->add_option("--method", dump.method, "System to assemble")
      ->check(CLI::IsMember({"harmonic", "biharmonic-l", "biharmonic-n"}));
  d->add_option("--grid-n", dump.grid_n, "Subdivisions per side")->check(CLI::Range(2, 4096));
  d->add_option("--function", dump.function, "Test surface")->check(CLI::IsMember(keys(kFunctions)));
  d->add_option("--domain-halfwidth", dump.half_width, "Hole is [-r, r]^2")->check(CLI::PositiveNumber);
  d->add_option("--out", dump.out, "Matrix file (stdout when omitted)");
  d->add_option("--rhs", dump.rhs, "Right-hand side file");
  dump.flags.attach(d);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "surfex: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (c->parsed()) return complete.run(out);
    if (p->parsed()) return inpaint_cmd.run(out);
    if (v->parsed()) return conv.run(out);
    if (d->parsed()) return dump.run(out);
  } catch (const InvalidArgument& e) {
    err << "surfex: invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "surfex: I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const SolverError& e) {
    err << "surfex: solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    err << "surfex: error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace surfex
