#include "vpscreen_tools/run.hpp"

#include <CLI11.hpp>
#include <iostream>
#include <map>

using namespace vpscreen;

int main(int argc, char **argv) {
  tools::RunConfig cfg;
  CLI::App app{"Vacuum-polarization screening of (1s)^2 ions"};
  app.set_config("--config", "", "key = value file; command-line flags take precedence");

  double rms = 0.0;
  std::string nucleus_name = "fermi";
  std::map<std::string, nucleus::Shape> shapes{{"point", nucleus::Shape::Point},
                                               {"fermi", nucleus::Shape::Fermi},
                                               {"shell", nucleus::Shape::Shell}};
  std::map<std::string, tools::Mode> modes{{"table1", tools::Mode::Table1},
                                           {"table2", tools::Mode::Table2},
                                           {"potentials", tools::Mode::Potentials},
                                           {"properties", tools::Mode::Properties}};
  std::map<std::string, tools::Format> formats{{"table", tools::Format::Table},
                                               {"csv", tools::Format::Csv},
                                               {"json", tools::Format::Json}};

  app.add_option("--z", cfg.z_list, "nuclear charges, e.g. 40,92")->delimiter(',')->required();
  auto *rms_opt = app.add_option("--rms", rms, "rms charge radius in fm (default: built-in table)");
  app.add_option("--nucleus", cfg.shape, "nuclear model")
      ->transform(CLI::CheckedTransformer(shapes, CLI::ignore_case));
  app.add_option("--mode", cfg.mode, "what to compute")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  app.add_option("--format", cfg.format, "output format")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app.add_option("--kappa-max", cfg.settings.wk.kappa_max, "largest |kappa| of the loop")
      ->capture_default_str();
  app.add_option("--splines", cfg.settings.basis.n_splines, "B-splines per component")
      ->capture_default_str();
  app.add_option("--order", cfg.settings.basis.order, "B-spline order")->capture_default_str();
  app.add_option("--rmax", cfg.settings.basis.r_max,
                 "basis box radius, Compton units (0: 40/(alpha Z))")
      ->capture_default_str();
  app.add_option("--tol", cfg.settings.wk.rel_tol, "relative tolerance of the kappa series")
      ->capture_default_str();
  app.add_option("--cache-dir", cfg.settings.cache_dir, "spectrum cache directory");
  app.add_option("--threads", cfg.threads, "worker threads")->capture_default_str();
  app.add_flag("--verbose", cfg.verbose, "progress on stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return tools::kConfigError;
  }
  if (rms_opt->count() > 0)
    cfg.rms_fm = rms;
  return tools::run(cfg, std::cout, std::cerr);
}
