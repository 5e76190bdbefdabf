#include "lamina/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lamina/cut.hpp"
#include "lamina/kernels.hpp"
#include "lamina/mesh_io.hpp"
#include "lamina/rng.hpp"

#if defined(LAMINA_HAVE_OPENMP)
#include <omp.h>
#endif

namespace lamina {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

struct CsvBuilders {
  std::ostringstream islands;
  std::ostringstream components;
  std::ostringstream defect;
};

double resolve_h(const RunConfig& cfg, HCalibration& cal) {
  if (cfg.h_estimate > 0.0) {
    cal.h = cfg.h_estimate;
    cal.from_default = false;
    return cal.h;
  }
  if (!cfg.h_file.empty()) {
    cal.h = load_h_file(cfg.h_file);
    cal.from_default = false;
    return cal.h;
  }
  cal.h = cfg.default_h;
  cal.from_default = true;
  return cal.h;
}

int count_islands_over_q(const Decomposition& d) {
  int n = 0;
  for (const FiberComponent& c : d.components)
    if (c.cls == ComponentClass::island || c.cls == ComponentClass::ramified_island) ++n;
  return n;
}

void append_island_rows(CsvBuilders& csv, const CutCurve& cut, const Decomposition& d, int k) {
  struct Row {
    int family, gi, gj, min_face, comp;
    const FiberComponent* c;
  };
  (void)cut;
  std::vector<Row> rows;
  for (std::size_t ci = 0; ci < d.components.size(); ++ci) {
    const FiberComponent& c = d.components[ci];
    const Region& r = d.regions[c.region];
    if (r.kind != RegionKind::q_cell) continue;
    rows.push_back({d.family, r.gi, r.gj, c.faces.empty() ? 0 : c.faces.front(),
                    static_cast<int>(ci), &c});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.family, a.gi, a.gj, a.min_face) < std::tie(b.family, b.gi, b.gj, b.min_face);
  });
  const double cell_area = d.grid.cell_side() * d.grid.cell_side();
  int idx = 0;
  for (const Row& row : rows) {
    csv.islands << k << ',' << row.family << ',' << row.gi << ',' << row.gj << ',' << idx++ << ','
                << component_class_name(row.c->cls) << ',' << format_double(row.c->rel_boundary_length)
                << ',' << format_double(row.c->projected_area) << ',' << row.c->euler << ','
                << format_double(row.c->projected_area / cell_area) << '\n';
  }
}

void append_component_rows(CsvBuilders& csv, const Decomposition& d, int k) {
  struct Row {
    int gi, gj, min_face;
    bool clipped;
    const FiberComponent* c;
  };
  std::vector<Row> rows;
  for (const FiberComponent& c : d.components) {
    const Region& r = d.regions[c.region];
    if (r.kind != RegionKind::cross) continue;
    rows.push_back({r.gi, r.gj, c.faces.empty() ? 0 : c.faces.front(), r.clipped, &c});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.gi, a.gj, a.min_face) < std::tie(b.gi, b.gj, b.min_face);
  });
  int idx = 0;
  for (const Row& row : rows) {
    csv.components << k << ',' << row.gi << ',' << row.gj << ',' << idx++ << ','
                   << component_class_name(row.c->cls) << ','
                   << format_double(row.c->rel_boundary_length) << ','
                   << format_double(row.c->projected_area) << ',' << row.c->euler << ','
                   << row.c->valence << ',' << (row.clipped ? 1 : 0) << '\n';
  }
}

}  // namespace

RunReport run_pipeline(const RunConfig& cfg) {
  validate_config(cfg);
#if defined(LAMINA_HAVE_OPENMP)
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#endif
  RunReport rep;
  rep.family = family_name(cfg.family_spec.family);
  rep.holomorphic = family_is_holomorphic(cfg.family_spec.family);
  rep.seed = cfg.seed;

  DiscreteCurve curve = generate(cfg.family_spec);
  rep.stats_initial = compute_stats(curve);

  if (cfg.trim_enabled) {
    TrimParams tp = cfg.trim;
    tp.seed = cfg.seed;
    auto [trimmed_curve, trim_report] = trim(curve, tp);
    rep.trim = trim_report;
    rep.trimmed = true;
    if (trim_report.budget_exceeded)
      rep.hypothesis_flags.push_back("trim: (L+G+B)/A = " + format_double(trim_report.ratio) +
                                     " exceeds budget " + format_double(tp.budget));
    // The pipeline works inside rho*B rescaled to unit size; the curve keeps
    // extending a bit beyond the unit sphere (up to rho'/rho).
    curve = scale_curve(trimmed_curve, 1.0 / tp.rho);
  }
  rep.stats_working = compute_stats(curve);
  if (rep.stats_working.area <= 0.0) throw error("pipeline: working curve is empty");

  const ProjectionFrame frame = choose_direction(curve, cfg.direction_samples, cfg.seed);
  rep.direction_z = frame.dir_z;
  rep.direction_w = frame.dir_w;
  rep.omega_mass = frame.omega_mass;

  resolve_h(cfg, rep.h);

  const int k_max = cfg.k_list.back();
  rep.shared_cut = true;
  for (int k : cfg.k_list) rep.shared_cut = rep.shared_cut && (k_max % k == 0);

  std::vector<complexd> projected(curve.vertices.size());
  for (std::size_t v = 0; v < curve.vertices.size(); ++v)
    projected[v] = frame.project(curve.vertices[v]);
  const std::vector<complexd> avoid = critical_values(cfg.family_spec);

  CsvBuilders csv;
  csv.islands << "k,family,cell_i,cell_j,component,class,l,a,euler,degree\n";
  csv.components << "k,cross_i,cross_j,component,class,l,a,euler,valence,clipped\n";
  csv.defect << "k,epsilon_k,mass_Tn,mass_Tkn,defect,good_island_count,ramified_count\n";

  CutCurve shared_cut;
  GridSpec master;
  if (rep.shared_cut) {
    JitterOptions jopts;
    jopts.clearance = cfg.grid_clearance;
    jopts.lattice_k = k_max;
    master = build_grid(cfg.k_list.front(), cfg.seed, projected, avoid, jopts);
    shared_cut = grid_cut(curve, frame, master, k_max);
    rep.jitter_x = master.jitter_x;
    rep.jitter_y = master.jitter_y;
    rep.clearance_used = master.clearance_used;
  }

  const double curve_boundary_r4 = rep.stats_working.boundary_length;
  CurrentApprox previous_current;
  bool have_previous = false;

  for (int k : cfg.k_list) {
    KStageReport stage;
    stage.k = k;

    const CutCurve* cut = &shared_cut;
    CutCurve own_cut;
    GridSpec grid;
    if (rep.shared_cut) {
      grid = master;
      grid.k = k;
    } else {
      JitterOptions jopts;
      jopts.clearance = cfg.grid_clearance;
      jopts.lattice_k = k;
      grid = build_grid(k, cfg.seed, projected, avoid, jopts);
      own_cut = grid_cut(curve, frame, grid, k);
      cut = &own_cut;
      rep.jitter_x = grid.jitter_x;
      rep.jitter_y = grid.jitter_y;
      rep.clearance_used = grid.clearance_used;
    }
    grid.epsilon = cfg.epsilon_override > 0.0 ? cfg.epsilon_override : default_epsilon(k);
    stage.epsilon = grid.epsilon;

    grid = select_q(*cut, grid);
    stage.q_family = grid.q_family;
    stage.family_mass = grid.family_mass;

    // Extraction and classification over the selected family, then pruning.
    Decomposition dq_pre = decompose(*cut, grid, grid.q_family, cfg.tol);
    std::vector<std::uint8_t> mask(cut->mesh.faces.size(), 1);
    stage.prune = prune_small(dq_pre, curve_boundary_r4, mask);
    if (!stage.prune.mass_bound_ok || !stage.prune.curve_bound_ok)
      rep.theorem_failures.push_back("k=" + std::to_string(k) +
                                     ": pruned mass exceeds the (4/k) boundary-length bound");

    DiscreteCurve pruned = extract_submesh(cut->mesh, mask, curve.name, false);
    stage.stats_pruned = pruned.faces.empty() ? CurveStats{} : compute_stats(pruned);
    stage.budget_ratio =
        stage.stats_pruned.area > 0.0
            ? (stage.stats_pruned.boundary_length + stage.stats_pruned.genus +
               stage.stats_pruned.boundary_count) /
                  stage.stats_pruned.area
            : 0.0;

    std::array<Decomposition, 4> families;
    for (int f = 0; f < 4; ++f) {
      families[f] = decompose(*cut, grid, f, cfg.tol, mask);
      detect_islands(families[f], cfg.tol);
    }
    Decomposition& dq = families[grid.q_family];

    // No SMALL component may survive its own pruning pass.
    for (const FiberComponent& c : dq.components)
      if (c.cls == ComponentClass::small)
        rep.theorem_failures.push_back("k=" + std::to_string(k) +
                                       ": SMALL component survived pruning");

    CountingGraph graph = build_graph(*cut, dq, mask);
    stage.s = graph.vertex_count;
    stage.a = graph.edge_count;
    stage.circle_arcs = graph.circle_arcs;
    stage.handshake_ok = graph.handshake_ok;
    stage.euler_agreement_ok = graph.euler_agreement_ok;
    stage.euler_crosses_mesh = graph.euler_crosses_mesh;
    stage.euler_off_q_mesh = graph.euler_off_q_mesh;
    stage.sum_euler_vertices = graph.sum_euler_vertices;
    if (!graph.handshake_ok)
      rep.theorem_failures.push_back("k=" + std::to_string(k) + ": handshake 2a != sum of valences");
    if (!graph.euler_agreement_ok)
      rep.theorem_failures.push_back("k=" + std::to_string(k) +
                                     ": mesh and graph Euler characteristics disagree");

    stage.islands_over_q = count_islands_over_q(dq);
    stage.bounds = island_lower_bound(graph, stage.stats_pruned.euler_characteristic,
                                      stage.islands_over_q);
    if (!stage.bounds.ok)
      rep.theorem_failures.push_back("k=" + std::to_string(k) + ": island counting chain violated");

    stage.valence = valence_bound_check(dq, graph, rep.h.h);
    if (stage.valence.ahlfors_violations > 0 || stage.valence.valence_violations > 0)
      rep.hypothesis_flags.push_back(
          "k=" + std::to_string(k) + ": covering bounds violated for " +
          std::to_string(stage.valence.ahlfors_violations) + " sides / " +
          std::to_string(stage.valence.valence_violations) + " valences (h=" +
          format_double(rep.h.h) + ")");
    if (!stage.valence.aggregate_ok)
      rep.hypothesis_flags.push_back("k=" + std::to_string(k) + ": aggregate valence bound violated");
    if (!stage.valence.vertex_bound_ok)
      rep.hypothesis_flags.push_back("k=" + std::to_string(k) + ": vertex count bound violated");

    for (int f = 0; f < 4; ++f)
      for (const FiberComponent& c : families[f].components)
        if (families[f].regions[c.region].kind == RegionKind::cross &&
            c.cls == ComponentClass::other)
          ++stage.other_cross_components;
    if (stage.other_cross_components > 0 && rep.holomorphic)
      rep.hypothesis_flags.push_back(
          "k=" + std::to_string(k) + ": " + std::to_string(stage.other_cross_components) +
          " cross components violate the isoperimetric trichotomy (under-resolution)");

    // Current assembly over all four families.
    CurrentApprox current;
    if (stage.stats_pruned.area > 0.0) {
      current = assemble(*cut, families, stage.stats_pruned.area, cfg.tol);
    }
    stage.good_islands = current.good_island_count;
    stage.ramified_islands = current.ramified_island_count;
    stage.mass_curve = current.curve_mass_in_square;
    stage.mass_current = current.mass_pi_omega;
    stage.defect = current.defect;
    stage.good_island_mass_fraction =
        current.curve_mass_in_square > 0.0 ? current.mass_pi_omega / current.curve_mass_in_square
                                           : 0.0;
    if (current.defect < -1e-12)
      rep.theorem_failures.push_back("k=" + std::to_string(k) + ": negative defect");

    const double square_mass = current.curve_mass_in_square * (stage.stats_pruned.area > 0.0
                                                                   ? stage.stats_pruned.area
                                                                   : 1.0);
    stage.s_n = square_mass / 4.0;
    stage.epsilon_hat =
        stage.s_n > 0.0 ? 1.0 - stage.good_islands / (4.0 * k * k * stage.s_n) : 0.0;

    // Mass additivity: regions plus the outside part reconstitute the curve.
    {
      double total = 0.0;
      for (std::size_t f = 0; f < cut->mesh.faces.size(); ++f)
        if (mask[f]) total += std::abs(cut->face_signed_proj[f]);
      const double assigned = dq.q_mass + dq.cross_mass + dq.outside_mass;
      stage.additivity_error = std::abs(assigned - total) / std::max(1.0, total);
      stage.additivity_ok = stage.additivity_error <= 1e-9;
      if (!stage.additivity_ok)
        rep.theorem_failures.push_back("k=" + std::to_string(k) +
                                       ": projected mass not conserved by clipping");
    }

    // Empirical transverse-measure diagnostics over seeded interior points.
    if (stage.stats_pruned.area > 0.0) {
      SplitMix64 rng(cfg.seed ^ (0xf1beu + static_cast<std::uint64_t>(k)));
      for (int t = 0; t < 5; ++t) {
        const double x = grid.origin_x() + rng.uniform(0.02, 1.98);
        const double y = grid.origin_y() + rng.uniform(0.02, 1.98);
        try {
          const double tm = transversal_measure(current, grid, complexd(x, y));
          stage.transversal_samples.push_back({{x, y}, tm});
        } catch (const error&) {
          // on a cell boundary: skip the sample
        }
      }
    }

    if (cfg.export_patches) {
      std::vector<std::uint8_t> patch_mask(cut->mesh.faces.size(), 0);
      for (const IslandPatch& p : current.patches)
        for (int f : p.faces) patch_mask[f] = 1;
      const DiscreteCurve patch_mesh = extract_submesh(
          cut->mesh, patch_mask, "patches_k" + std::to_string(k), false);
      rep.patch_meshes.emplace_back(k, curve_to_json(patch_mesh));
    }

    DefectRow row;
    row.k = k;
    row.epsilon = grid.epsilon;
    row.mass_curve = stage.mass_curve;
    row.mass_current = stage.mass_current;
    row.defect = stage.defect;
    row.good_islands = stage.good_islands;
    row.ramified_islands = stage.ramified_islands;
    rep.trend.rows.push_back(row);
    csv.defect << k << ',' << format_double(row.epsilon) << ',' << format_double(row.mass_curve)
               << ',' << format_double(row.mass_current) << ',' << format_double(row.defect) << ','
               << row.good_islands << ',' << row.ramified_islands << '\n';

    if (have_previous && rep.shared_cut && k == 2 * previous_current.k) {
      try {
        check_patch_nesting(previous_current, current, rep.trend);
      } catch (const error& e) {
        rep.trend.nesting_ok = false;
        rep.theorem_failures.push_back(std::string("refinement compatibility: ") + e.what());
      }
      const double allowance = 2.0 / previous_current.k;
      if (rep.holomorphic && stage.defect > previous_current.defect + allowance)
        rep.hypothesis_flags.push_back("k=" + std::to_string(k) +
                                       ": defect grew beyond the refinement allowance");
    }
    previous_current = std::move(current);
    have_previous = true;

    append_island_rows(csv, *cut, dq, k);
    for (int f = 0; f < 4; ++f)
      if (f != grid.q_family) append_island_rows(csv, *cut, families[f], k);
    append_component_rows(csv, dq, k);

    rep.stages.push_back(std::move(stage));
  }

  rep.islands_csv = csv.islands.str();
  rep.components_csv = csv.components.str();
  rep.defect_csv = csv.defect.str();
  return rep;
}

DefectTrend defect_sweep(const RunConfig& config) {
  if (!k_list_is_doubling(config.k_list))
    throw config_error("defect sweep: k_list must double at every step");
  return run_pipeline(config).trend;
}

namespace {

nlohmann::json stats_json(const CurveStats& s) {
  return {{"area", s.area},
          {"genus", s.genus},
          {"boundary_count", s.boundary_count},
          {"boundary_length", s.boundary_length},
          {"euler_characteristic", s.euler_characteristic},
          {"holomorphy_residual", s.holomorphy_residual},
          {"components", s.component_count},
          {"vertices", s.vertex_count},
          {"edges", s.edge_count},
          {"faces", s.face_count}};
}

}  // namespace

void write_reports(const RunReport& rep, const RunConfig& cfg, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  auto write_file = [&](const std::string& name, const std::string& text) {
    std::ofstream out(fs::path(out_dir) / name, std::ios::binary);
    if (!out) throw error("cannot write " + name + " in " + out_dir);
    out << text;
  };
  write_file("islands.csv", rep.islands_csv);
  write_file("components.csv", rep.components_csv);
  write_file("defect_vs_k.csv", rep.defect_csv);
  for (const auto& [k, mesh_json] : rep.patch_meshes)
    write_file("patches_k" + std::to_string(k) + ".json", mesh_json);

  nlohmann::json j;
  j["family"] = rep.family;
  j["holomorphic"] = rep.holomorphic;
  j["seed"] = rep.seed;
  j["stats_initial"] = stats_json(rep.stats_initial);
  j["stats_working"] = stats_json(rep.stats_working);
  if (rep.trimmed) {
    j["trim"] = {{"rho", rep.trim.rho},
                 {"rho_prime_selected", rep.trim.rho_prime_selected},
                 {"candidate_boundary_lengths", rep.trim.candidate_boundary_lengths},
                 {"L", rep.trim.boundary_length},
                 {"G", rep.trim.genus},
                 {"B", rep.trim.boundary_count},
                 {"A", rep.trim.area},
                 {"ratio", rep.trim.ratio},
                 {"budget_exceeded", rep.trim.budget_exceeded},
                 {"glued_components", rep.trim.glued_components},
                 {"dropped_components", rep.trim.dropped_components}};
  }
  j["direction"] = {{"z_re", rep.direction_z.real()},
                    {"z_im", rep.direction_z.imag()},
                    {"w_re", rep.direction_w.real()},
                    {"w_im", rep.direction_w.imag()},
                    {"omega_mass", rep.omega_mass}};
  j["grid"] = {{"jitter_x", rep.jitter_x},
               {"jitter_y", rep.jitter_y},
               {"clearance_used", rep.clearance_used}};
  j["h_estimate"] = {{"h", rep.h.h},
                     {"max_ratio", rep.h.max_ratio},
                     {"samples", rep.h.samples},
                     {"from_default", rep.h.from_default}};
  j["shared_cut"] = rep.shared_cut;
  j["out_dir"] = cfg.out_dir;

  auto stages = nlohmann::json::array();
  for (const KStageReport& st : rep.stages) {
    nlohmann::json s;
    s["k"] = st.k;
    s["epsilon_k"] = st.epsilon;
    s["q_family"] = st.q_family;
    s["family_mass"] = st.family_mass;
    s["family_mean_sheets"] = st.family_mass;  // family area is exactly 1
    s["prune"] = {{"removed_components", st.prune.removed_components},
                  {"removed_mass", st.prune.removed_mass},
                  {"mass_bound", st.prune.mass_bound},
                  {"mass_bound_ok", st.prune.mass_bound_ok},
                  {"curve_boundary_bound", st.prune.curve_boundary_bound},
                  {"curve_bound_ok", st.prune.curve_bound_ok}};
    s["stats_pruned"] = stats_json(st.stats_pruned);
    s["budget_ratio"] = st.budget_ratio;
    s["graph"] = {{"s", st.s},
                  {"a", st.a},
                  {"circle_arcs", st.circle_arcs},
                  {"handshake_ok", st.handshake_ok},
                  {"euler_agreement_ok", st.euler_agreement_ok},
                  {"euler_crosses_mesh", st.euler_crosses_mesh},
                  {"euler_off_q_mesh", st.euler_off_q_mesh},
                  {"sum_euler_vertices", st.sum_euler_vertices}};
    s["island_chain"] = {
        {"islands", st.bounds.islands},
        {"chi_curve", st.bounds.chi_curve},
        {"chi_off_q", st.bounds.chi_off_q},
        {"lower_bound", st.bounds.islands_lower_bound},
        {"i", {{"lhs", st.bounds.chi_off_q},
               {"rhs", st.bounds.chi_curve - st.bounds.islands},
               {"slack", st.bounds.slack_i}}},
        {"ii", {{"lhs", st.bounds.chi_off_q},
                {"rhs", st.bounds.s - st.bounds.a},
                {"slack", st.bounds.slack_ii}}},
        {"iii", {{"lhs", st.bounds.islands},
                 {"rhs", st.bounds.islands_lower_bound},
                 {"slack", st.bounds.slack_iii}}},
        {"ok", st.bounds.ok}};
    s["valence"] = {{"h", st.valence.h},
                    {"checked", st.valence.checked},
                    {"valence_violations", st.valence.valence_violations},
                    {"ahlfors_checked", st.valence.ahlfors_checked},
                    {"ahlfors_violations", st.valence.ahlfors_violations},
                    {"max_h_ratio", st.valence.max_h_ratio},
                    {"aggregate_lhs", st.valence.aggregate_lhs},
                    {"aggregate_rhs", st.valence.aggregate_rhs},
                    {"aggregate_ok", st.valence.aggregate_ok},
                    {"vertices_interior", st.valence.vertices_interior},
                    {"vertex_bound_rhs", st.valence.vertex_bound_rhs},
                    {"vertex_bound_ok", st.valence.vertex_bound_ok},
                    {"s_n_cq_interior", st.valence.s_n_cq_interior},
                    {"excluded_clipped", st.valence.excluded_clipped}};
    s["islands_over_q"] = st.islands_over_q;
    s["good_islands"] = st.good_islands;
    s["ramified_islands"] = st.ramified_islands;
    s["other_cross_components"] = st.other_cross_components;
    s["epsilon_hat"] = st.epsilon_hat;
    s["s_n"] = st.s_n;
    s["mass_curve"] = st.mass_curve;
    s["mass_current"] = st.mass_current;
    s["defect"] = st.defect;
    s["good_island_mass_fraction"] = st.good_island_mass_fraction;
    s["additivity_ok"] = st.additivity_ok;
    s["additivity_error"] = st.additivity_error;
    {
      auto samples = nlohmann::json::array();
      for (const auto& [xy, tm] : st.transversal_samples)
        samples.push_back({{"x", xy[0]}, {"y", xy[1]}, {"measure", tm}});
      s["transversal_samples"] = std::move(samples);
    }
    stages.push_back(std::move(s));
  }
  j["stages"] = std::move(stages);
  j["nesting_checked"] = rep.trend.nesting_checked;
  j["nesting_ok"] = rep.trend.nesting_ok;
  j["nested_patch_pairs"] = rep.trend.nested_patch_pairs;
  j["theorem_failures"] = rep.theorem_failures;
  j["hypothesis_flags"] = rep.hypothesis_flags;
  j["ok"] = rep.ok();
  write_file("run_report.json", j.dump(2) + "\n");
}

HCalibration run_calibration(const RunConfig& cfg, const std::string& out_path) {
  std::vector<std::string> corpus = cfg.calibration_corpus;
  if (corpus.empty())
    corpus = {"flat_sheets:1", "flat_sheets:3", "branched_cover:2", "poly_graph", "half_sheet"};

  std::deque<Decomposition> storage;
  std::vector<const Decomposition*> refs;
  for (const std::string& entry : corpus) {
    const FamilySpec spec = corpus_spec(entry, cfg.family_spec);
    const DiscreteCurve curve = generate(spec);
    const ProjectionFrame frame = choose_direction(curve, cfg.direction_samples, cfg.seed);
    std::vector<complexd> projected(curve.vertices.size());
    for (std::size_t v = 0; v < curve.vertices.size(); ++v)
      projected[v] = frame.project(curve.vertices[v]);
    const std::vector<complexd> avoid = critical_values(spec);
    for (int k : cfg.k_list) {
      JitterOptions jopts;
      jopts.clearance = cfg.grid_clearance;
      jopts.lattice_k = k;
      GridSpec grid = build_grid(k, cfg.seed, projected, avoid, jopts);
      grid.epsilon = cfg.epsilon_override > 0.0 ? cfg.epsilon_override : default_epsilon(k);
      const CutCurve cut = grid_cut(curve, frame, grid, k);
      grid = select_q(cut, grid);
      storage.push_back(decompose(cut, grid, grid.q_family, cfg.tol));
      refs.push_back(&storage.back());
    }
  }
  HCalibration cal = calibrate_h(refs, cfg.default_h);
  if (!out_path.empty()) {
    nlohmann::json j = {{"h", cal.h},
                        {"max_ratio", cal.max_ratio},
                        {"samples", cal.samples},
                        {"safety", cal.safety},
                        {"from_default", cal.from_default}};
    const auto parent = std::filesystem::path(out_path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw error("cannot write calibration file: " + out_path);
    out << j.dump(2) << "\n";
  }
  return cal;
}

double load_h_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open calibration file: " + path);
  nlohmann::json j;
  in >> j;
  if (!j.contains("h")) throw error("calibration file has no 'h': " + path);
  return j["h"].get<double>();
}

}  // namespace lamina
