#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lamina/mesh_io.hpp"
#include "lamina/pipeline.hpp"

namespace {

struct CommonOpts {
  std::string config;
  std::string out;
  long long seed = -1;
  std::string k_override;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config, "config file (flat key = value)")->required();
  cmd->add_option("--out", opts.out, "output directory (overrides config)");
  cmd->add_option("--seed", opts.seed, "seed (overrides config)");
  cmd->add_option("--k", opts.k_override, "comma-separated k list (overrides config)");
}

lamina::RunConfig load_config(const CommonOpts& opts) {
  lamina::RunConfig cfg = lamina::parse_config_file(opts.config);
  if (!opts.out.empty()) cfg.out_dir = opts.out;
  if (opts.seed >= 0) {
    cfg.seed = static_cast<std::uint64_t>(opts.seed);
    cfg.family_spec.seed = cfg.seed;
  }
  if (!opts.k_override.empty()) {
    cfg.k_list.clear();
    std::string item;
    std::stringstream ss(opts.k_override);
    while (std::getline(ss, item, ','))
      if (!item.empty()) cfg.k_list.push_back(std::stoi(item));
    lamina::validate_config(cfg);
  }
  return cfg;
}

int report_outcome(const lamina::RunReport& rep, const lamina::RunConfig& cfg) {
  lamina::write_reports(rep, cfg, cfg.out_dir);
  for (const std::string& f : rep.theorem_failures) std::cerr << "THEOREM FAILURE: " << f << "\n";
  for (const std::string& f : rep.hypothesis_flags) std::cout << "finding: " << f << "\n";
  std::cout << "report written to " << cfg.out_dir << " (" << rep.stages.size() << " k stages, "
            << (rep.ok() ? "ok" : "THEOREM FAILURES") << ")\n";
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-scale laminarity pipeline for discretized analytic curves"};
  app.require_subcommand(1);

  CommonOpts run_opts, sweep_opts, gen_opts, cal_opts;
  std::string gen_out_file = "curve.json";

  CLI::App* cmd_generate = app.add_subcommand("generate", "generate a curve and write the mesh file");
  add_common(cmd_generate, gen_opts);
  cmd_generate->add_option("--mesh", gen_out_file, "output mesh file name");

  CLI::App* cmd_run = app.add_subcommand("run", "full pipeline over the configured k list");
  add_common(cmd_run, run_opts);

  CLI::App* cmd_sweep = app.add_subcommand(
      "sweep", "refinement sweep: requires a doubling k list and checks patch compatibility");
  add_common(cmd_sweep, sweep_opts);

  CLI::App* cmd_calibrate = app.add_subcommand("calibrate", "calibrate the covering constant h");
  add_common(cmd_calibrate, cal_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_generate->parsed()) {
      const lamina::RunConfig cfg = load_config(gen_opts);
      const lamina::DiscreteCurve curve = lamina::generate(cfg.family_spec);
      std::filesystem::create_directories(cfg.out_dir);
      const std::string path = (std::filesystem::path(cfg.out_dir) / gen_out_file).string();
      lamina::save_curve(curve, path);
      const lamina::CurveStats stats = lamina::compute_stats(curve);
      std::cout << "wrote " << path << ": area " << stats.area << ", genus " << stats.genus
                << ", boundary loops " << stats.boundary_count << ", faces " << stats.face_count
                << "\n";
      return 0;
    }
    if (cmd_run->parsed()) {
      const lamina::RunConfig cfg = load_config(run_opts);
      return report_outcome(lamina::run_pipeline(cfg), cfg);
    }
    if (cmd_sweep->parsed()) {
      lamina::RunConfig cfg = load_config(sweep_opts);
      if (!lamina::k_list_is_doubling(cfg.k_list))
        throw lamina::config_error("sweep: k_list must double at every step");
      return report_outcome(lamina::run_pipeline(cfg), cfg);
    }
    if (cmd_calibrate->parsed()) {
      const lamina::RunConfig cfg = load_config(cal_opts);
      const std::string path =
          (std::filesystem::path(cfg.out_dir) / "h_calibration.json").string();
      const lamina::HCalibration cal = lamina::run_calibration(cfg, path);
      std::cout << "h = " << lamina::format_double(cal.h) << " (max ratio "
                << lamina::format_double(cal.max_ratio) << " over " << cal.samples
                << " components) written to " << path << "\n";
      return 0;
    }
  } catch (const lamina::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
