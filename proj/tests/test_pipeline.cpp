#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "lamina/generators.hpp"
#include "lamina/mesh_io.hpp"
#include "lamina/pipeline.hpp"

using namespace lamina;

namespace {

RunConfig flat_config(int sheets, const std::string& ks, double resolution = 0.05) {
  return parse_config_text("family = flat_sheets\nsheets = " + std::to_string(sheets) +
                           "\nresolution = " + format_double(resolution) + "\nk_list = " + ks +
                           "\nseed = 5\ndirection_samples = 8\n");
}

}  // namespace

TEST_CASE("config parsing") {
  SUBCASE("defaults and overrides") {
    const RunConfig cfg = parse_config_text(
        "family = branched_cover\ndegree = 3\nk_list = 2,4,8\nseed = 9\n"
        "rho = 0.6\nrho_primes = 0.7, 0.8\ntrim = on\nbudget = 12\n"
        "# a comment\nresolution = 0.04\n");
    CHECK(cfg.family_spec.family == Family::branched_cover);
    CHECK(cfg.family_spec.degree == 3);
    CHECK(cfg.k_list == std::vector<int>{2, 4, 8});
    CHECK(cfg.trim_enabled);
    CHECK(cfg.trim.rho == doctest::Approx(0.6));
    CHECK(cfg.trim.rho_prime_candidates.size() == 2);
    CHECK(cfg.seed == 9);
  }
  SUBCASE("unknown key rejected") {
    CHECK_THROWS_AS(parse_config_text("familly = flat_sheets\n"), config_error);
  }
  SUBCASE("bad k list rejected") {
    CHECK_THROWS_AS(parse_config_text("k_list = 8,4\n"), config_error);
    CHECK_THROWS_AS(parse_config_text("k_list = 4,4\n"), config_error);
    // An empty value means "keep the default".
    CHECK(parse_config_text("k_list = \n").k_list == std::vector<int>{4, 8});
  }
  SUBCASE("doubling detection") {
    CHECK(k_list_is_doubling({4, 8, 16}));
    CHECK_FALSE(k_list_is_doubling({4, 8, 12}));
  }
}

TEST_CASE("flat sheet pipeline: zero defect, full island count") {
  const RunConfig cfg = flat_config(1, "4,8");
  const RunReport rep = run_pipeline(cfg);
  CHECK(rep.ok());
  REQUIRE(rep.stages.size() == 2);
  for (const KStageReport& st : rep.stages) {
    CHECK(st.good_islands == 4 * st.k * st.k);
    CHECK(st.defect <= 1e-9 * st.mass_curve);
    CHECK(st.handshake_ok);
    CHECK(st.euler_agreement_ok);
    CHECK(st.bounds.ok);
    CHECK(st.additivity_ok);
    CHECK(st.other_cross_components == 0);
    CHECK(std::abs(st.epsilon_hat) < 1e-9);
    CHECK(st.s_n == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK(rep.trend.nesting_checked);
  CHECK(rep.trend.nesting_ok);
}

TEST_CASE("pipeline determinism: byte-identical CSVs") {
  const RunConfig cfg = flat_config(1, "2,4");
  const RunReport a = run_pipeline(cfg);
  const RunReport b = run_pipeline(cfg);
  CHECK(a.islands_csv == b.islands_csv);
  CHECK(a.components_csv == b.components_csv);
  CHECK(a.defect_csv == b.defect_csv);
}

TEST_CASE("different seed moves the jitter") {
  RunConfig cfg = flat_config(1, "4");
  const RunReport a = run_pipeline(cfg);
  cfg.seed = 77;
  cfg.family_spec.seed = 77;
  const RunReport b = run_pipeline(cfg);
  CHECK(a.ok());
  CHECK(b.ok());
  // Same invariants hold; outputs may differ in float noise but island
  // counts are stable for the flat sheet.
  CHECK(a.stages[0].good_islands == b.stages[0].good_islands);
}

TEST_CASE("handle body run: no theorem failures, large defect") {
  const RunConfig cfg = parse_config_text(
      "family = handle_body\ntubes = 40\nresolution = 0.05\nsheet_spacing = 0.1\n"
      "k_list = 4\nseed = 5\ndirection_samples = 4\n");
  const RunReport rep = run_pipeline(cfg);
  CHECK(rep.ok());
  CHECK(rep.stats_initial.genus == 40);
  CHECK(rep.stages[0].defect > 0.1 * rep.stages[0].mass_curve);
  CHECK(rep.stages[0].bounds.ok);
}

TEST_CASE("trimmed pipeline on a ball curve") {
  const RunConfig cfg = parse_config_text(
      "family = branched_cover\ndegree = 2\nresolution = 0.04\nk_list = 4\nseed = 5\n"
      "trim = on\nrho = 0.7\nrho_primes = 0.8,0.9\nbudget = 30\ndirection_samples = 6\n");
  const RunReport rep = run_pipeline(cfg);
  CHECK(rep.ok());
  CHECK(rep.trimmed);
  CHECK(rep.trim.rho_prime_selected > 0);
  // The rescaled working curve extends past the unit ball up to rho'/rho.
  CHECK(rep.stats_working.area > 0);
}

TEST_CASE("reports are written") {
  namespace fs = std::filesystem;
  const std::string dir = (fs::temp_directory_path() / "lamina_test_reports").string();
  fs::remove_all(dir);
  RunConfig cfg = flat_config(1, "2");
  cfg.out_dir = dir;
  const RunReport rep = run_pipeline(cfg);
  write_reports(rep, cfg, dir);
  CHECK(fs::exists(fs::path(dir) / "run_report.json"));
  CHECK(fs::exists(fs::path(dir) / "islands.csv"));
  CHECK(fs::exists(fs::path(dir) / "components.csv"));
  CHECK(fs::exists(fs::path(dir) / "defect_vs_k.csv"));
  std::ifstream in(fs::path(dir) / "defect_vs_k.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "k,epsilon_k,mass_Tn,mass_Tkn,defect,good_island_count,ramified_count");
  fs::remove_all(dir);
}

TEST_CASE("pipeline accepts a mesh from file") {
  namespace fs = std::filesystem;
  const std::string mesh_path = (fs::temp_directory_path() / "lamina_from_file.json").string();
  {
    RunConfig gen = flat_config(2, "4", 0.06);
    save_curve(generate(gen.family_spec), mesh_path);
  }
  const RunConfig cfg = parse_config_text("family = from_file\npath = " + mesh_path +
                                          "\nk_list = 4\nseed = 5\ndirection_samples = 4\n");
  const RunReport rep = run_pipeline(cfg);
  CHECK(rep.ok());
  CHECK(rep.stages[0].good_islands == 4 * 16 * 2);
  CHECK(rep.stages[0].defect <= 1e-9 * rep.stages[0].mass_curve);
  fs::remove(mesh_path);
}

TEST_CASE("calibration persists and is deterministic") {
  namespace fs = std::filesystem;
  const std::string path = (fs::temp_directory_path() / "lamina_h_test.json").string();
  RunConfig cfg = parse_config_text(
      "family = flat_sheets\nresolution = 0.06\nk_list = 4\nseed = 5\ndirection_samples = 4\n"
      "calibration_corpus = flat_sheets:1, half_sheet\n");
  const HCalibration a = run_calibration(cfg, path);
  CHECK(a.h > 0);
  CHECK(a.samples > 0);
  CHECK(load_h_file(path) == doctest::Approx(a.h));
  const HCalibration b = run_calibration(cfg, path);
  CHECK(a.h == b.h);

  // Superset corpus never lowers h.
  cfg.calibration_corpus = {"flat_sheets:1", "half_sheet", "branched_cover:2"};
  cfg.family_spec.resolution = 0.06;
  const HCalibration c = run_calibration(cfg, "");
  CHECK(c.h >= a.h - 1e-12);
  fs::remove(path);
}

TEST_CASE("defect sweep requires doubling and reports the trend") {
  RunConfig cfg = flat_config(1, "3,6");
  cfg.k_list = {3, 5};
  CHECK_THROWS_AS(defect_sweep(cfg), config_error);
  const DefectTrend trend = defect_sweep(flat_config(1, "2,4"));
  REQUIRE(trend.rows.size() == 2);
  CHECK(trend.rows[1].defect <= trend.rows[0].defect + 2.0 / trend.rows[0].k);
  CHECK(trend.nesting_checked);
  CHECK(trend.nesting_ok);
}
