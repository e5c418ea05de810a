// glvortex: command-line front end for the cube/cell energy library.
//
// Subcommands: energy, minimize2d, minimize3d, lattice, schedule, tile, fofb,
// study, verify.  Every artifact starts with a "# config <hash>" line derived
// from the effective options, so identical configurations rerun to identical
// bytes; wall-clock metadata goes to a separate .meta file.
//
// Exit codes: 0 success, 2 validation error or unknown subcommand,
// 3 non-convergence (artifacts are still written), 4 unwritable output dir.

#include "CLI11.hpp"

#include "glv/asymptotics.hpp"
#include "glv/energy.hpp"
#include "glv/io.hpp"
#include "glv/minimize.hpp"
#include "glv/periodic.hpp"
#include "glv/scaling.hpp"
#include "glv/vortex_lattice.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <future>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace glv;

namespace {

// ---------------------------------------------------------------------------
// artifact plumbing
// ---------------------------------------------------------------------------

using KV = std::vector<std::pair<std::string, std::string>>;

class JsonWriter {
public:
  void num(const std::string& k, double v) { field(k, format_g17(v)); }
  void integer(const std::string& k, long long v) { field(k, std::to_string(v)); }
  void boolean(const std::string& k, bool v) { field(k, v ? "true" : "false"); }
  void text(const std::string& k, const std::string& v) { field(k, "\"" + v + "\""); }
  std::string finish() const { return "{\n" + body_ + "\n}\n"; }

private:
  void field(const std::string& k, const std::string& v) {
    if (!body_.empty()) body_ += ",\n";
    body_ += "  \"" + k + "\": " + v;
  }
  std::string body_;
};

// 0 on success, 4 when the directory refuses the file
int write_artifact(const std::string& dir, const std::string& name, const std::string& hash,
                   const std::string& body) {
  const std::string path = dir + "/" + name;
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::fprintf(stderr, "error: cannot write %s\n", path.c_str());
    return 4;
  }
  out << "# config " << hash << "\n" << body;
  out.close();
  return out ? 0 : 4;
}

void write_meta(const std::string& dir, const std::string& stem, const std::string& hash) {
  std::ofstream out(dir + "/" + stem + ".meta", std::ios::binary);
  if (!out) return;
  const std::time_t now = std::time(nullptr);
  char buf[64];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  out << "config " << hash << "\n" << "written " << buf << "\n";
}

int resolve_jobs(int flag_jobs) {
  if (flag_jobs > 0) return flag_jobs;
  if (const char* env = std::getenv("GLVORTEX_JOBS")) {
    const int j = std::atoi(env);
    if (j > 0) return j;
  }
  return 1;
}

void set_run_threads(int threads) {
#ifdef _OPENMP
  omp_set_num_threads(threads > 0 ? threads : 1);
#else
  (void)threads;
#endif
}

// ---------------------------------------------------------------------------
// shared option blocks
// ---------------------------------------------------------------------------

struct MinimizeFlags {
  int n = 64;
  unsigned long long seed = 1;
  int restarts = 3;
  int max_iter = 20000;
  double tol_grad = 1e-6;
  double tol_energy = 1e-12;
  std::string init = "uniform";
  int coarse_start = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--n", n, "sites per axis");
    cmd->add_option("--seed", seed, "base seed for the restart sequence");
    cmd->add_option("--restarts", restarts, "independent starts; best kept");
    cmd->add_option("--max-iter", max_iter, "iteration cap per start");
    cmd->add_option("--tol-grad", tol_grad, "gradient max-norm target");
    cmd->add_option("--tol-energy", tol_energy, "relative energy-stall window");
    cmd->add_option("--init", init, "uniform | random | vortex")
        ->check(CLI::IsMember({"uniform", "random", "vortex"}));
    cmd->add_option("--coarse-start", coarse_start,
                    "2D periodic: pre-solve at this n and refine (0 = off)");
  }

  MinimizeOptions options() const {
    MinimizeOptions o;
    o.max_iter = max_iter;
    o.tol_grad = tol_grad;
    o.tol_energy = tol_energy;
    o.seed = seed;
    o.restarts = restarts;
    o.init = init == "random"   ? InitKind::RandomPhase
             : init == "vortex" ? InitKind::VortexLattice
                                : InitKind::Uniform1;
    o.coarse_start = coarse_start;
    return o;
  }

  void record(KV& kv) const {
    kv.push_back({"n", std::to_string(n)});
    kv.push_back({"seed", std::to_string(seed)});
    kv.push_back({"restarts", std::to_string(restarts)});
    kv.push_back({"max_iter", std::to_string(max_iter)});
    kv.push_back({"tol_grad", format_g17(tol_grad)});
    kv.push_back({"tol_energy", format_g17(tol_energy)});
    kv.push_back({"init", init});
    kv.push_back({"coarse_start", std::to_string(coarse_start)});
  }
};

void echo_minimize(JsonWriter& j, const MinimizeFlags& mf, const MinimizeResult& r) {
  j.integer("n", mf.n);
  j.integer("seed", (long long)mf.seed);
  j.integer("restarts", mf.restarts);
  j.integer("max_iter", mf.max_iter);
  j.num("tol_grad", mf.tol_grad);
  j.num("tol_energy", mf.tol_energy);
  j.text("init", mf.init);
  j.integer("coarse_start", mf.coarse_start);
  j.num("kinetic", r.energy.kinetic);
  j.num("potential", r.energy.potential);
  j.num("total", r.energy.total);
  j.integer("iterations", r.iterations);
  j.boolean("converged", r.converged);
  j.num("grad_norm", r.grad_norm);
  j.integer("best_of", r.best_of);
}

// ---------------------------------------------------------------------------
// subcommand runners (each returns the process exit code)
// ---------------------------------------------------------------------------

int run_energy(const std::string& out, int dim, int n, double h_ex, double eps, double b,
               double R, const std::string& bc, const std::string& load) {
  KV kv{{"cmd", "energy"}, {"dim", std::to_string(dim)}, {"n", std::to_string(n)},
        {"bc", bc}, {"load", load}};
  JsonWriter j;
  j.text("cmd", "energy");
  j.integer("dim", dim);
  j.integer("n", n);
  if (dim == 2) {
    kv.push_back({"h_ex", format_g17(h_ex)});
    kv.push_back({"eps", format_g17(eps)});
    const bool periodic = bc == "periodic";
    double h_used = h_ex;
    if (periodic) h_used = quantize_flux(h_ex).h_ex;
    const UniformGrid g = make_grid_2d(n, 1.0, periodic);
    ComplexField u = load.empty()
                         ? make_field(g, periodic ? FieldBC::MagneticPeriodic : FieldBC::Natural,
                                      periodic ? h_used : 0.0)
                         : load_field(load);
    if (!(u.grid == g)) throw std::invalid_argument("loaded field grid mismatch");
    const LinkPhases l = field_links(g, h_used);
    const EnergyBreakdown e = energy_2d(u, l, {h_used, eps});
    j.text("bc", bc);
    j.num("h_ex_requested", h_ex);
    j.num("h_ex_used", h_used);
    j.num("eps", eps);
    j.num("kinetic", e.kinetic);
    j.num("potential", e.potential);
    j.num("total", e.total);
  } else {
    kv.push_back({"b", format_g17(b)});
    kv.push_back({"R", format_g17(R)});
    const UniformGrid g = make_grid_3d(n, R, false);
    ComplexField u = load.empty() ? make_field(g, FieldBC::Natural) : load_field(load);
    if (!(u.grid == g)) throw std::invalid_argument("loaded field grid mismatch");
    const LinkPhases l = field_links(g, 1.0);
    const EnergyBreakdown e = energy_3d(u, l, GL3DParams::gform(b));
    j.num("b", b);
    j.num("R", R);
    j.num("kinetic", e.kinetic);
    j.num("potential", e.potential);
    j.num("total", e.total);
  }
  const std::string hash = config_hash(kv);
  const int rc = write_artifact(out, "energy.json", hash, j.finish());
  if (rc) return rc;
  write_meta(out, "energy", hash);
  return 0;
}

int run_minimize2d(const std::string& out, double h_ex, double eps, const std::string& bc,
                   const MinimizeFlags& mf, bool dump) {
  KV kv{{"cmd", "minimize2d"}, {"h_ex", format_g17(h_ex)}, {"eps", format_g17(eps)},
        {"bc", bc}};
  mf.record(kv);
  const FieldBC fbc = bc == "periodic" ? FieldBC::MagneticPeriodic : FieldBC::Natural;
  const MinimizeResult r = minimize_2d({h_ex, eps}, fbc, mf.n, mf.options());

  JsonWriter j;
  j.text("cmd", "minimize2d");
  j.num("h_ex_requested", r.h_ex_requested);
  j.num("h_ex_used", r.h_ex_used);
  j.num("eps", eps);
  j.text("bc", bc);
  echo_minimize(j, mf, r);
  const std::string hash = config_hash(kv);
  const int rc = write_artifact(out, "minimize2d.json", hash, j.finish());
  if (rc) return rc;
  write_meta(out, "minimize2d", hash);
  if (dump) dump_field(r.field, out + "/minimize2d_field.dat");
  return r.converged ? 0 : 3;
}

int run_minimize3d(const std::string& out, double b, double R, const MinimizeFlags& mf,
                   bool dump) {
  KV kv{{"cmd", "minimize3d"}, {"b", format_g17(b)}, {"R", format_g17(R)}};
  mf.record(kv);
  const MinimizeResult r = minimize_3d(b, R, mf.n, mf.options());

  JsonWriter j;
  j.text("cmd", "minimize3d");
  j.num("b", b);
  j.num("R", R);
  echo_minimize(j, mf, r);
  const std::string hash = config_hash(kv);
  const int rc = write_artifact(out, "minimize3d.json", hash, j.finish());
  if (rc) return rc;
  write_meta(out, "minimize3d", hash);
  if (dump) dump_field(r.field, out + "/minimize3d_field.dat");
  return r.converged ? 0 : 3;
}

int run_lattice(const std::string& out, double h_ex, double eps, int cell_n) {
  KV kv{{"cmd", "lattice"}, {"h_ex", format_g17(h_ex)}, {"eps", format_g17(eps)},
        {"cell_n", std::to_string(cell_n)}};
  const VortexLatticeConfig cfg = make_lattice_config(h_ex, eps, cell_n);
  const LatticeAssembly a = assemble_and_energy(cfg, cell_n);

  JsonWriter j;
  j.text("cmd", "lattice");
  j.num("h_ex", h_ex);
  j.num("eps", eps);
  j.integer("N", cfg.N);
  j.num("cell_side", cfg.cell_side);
  j.integer("cell_grid_n", cfg.cell_grid_n);
  j.integer("grid_n", a.grid.n);
  j.num("cell_residual", a.cell.residual);
  j.num("kinetic", a.energy.kinetic);
  j.num("potential", a.energy.potential);
  j.num("total", a.energy.total);
  j.num("per_cell_total", a.per_cell_total);
  j.num("mismatch", a.mismatch);
  j.num("unit_winding_total", a.unit_winding_total);
  const std::string hash = config_hash(kv);
  const int rc = write_artifact(out, "lattice.json", hash, j.finish());
  if (rc) return rc;
  write_meta(out, "lattice", hash);
  return 0;
}

int run_schedule(const std::string& out, double kappa, double H) {
  KV kv{{"cmd", "schedule"}, {"kappa", format_g17(kappa)}, {"H", format_g17(H)}};
  const ParamSchedule s = schedule_from_kappaH(kappa, H);
  JsonWriter j;
  j.text("cmd", "schedule");
  j.num("kappa", s.kappa);
  j.num("H", s.H);
  j.num("b", s.b);
  j.num("ell", s.ell);
  j.num("lambda", s.lambda);
  j.num("delta", s.delta);
  j.num("R", s.R);
  j.num("h_ex", s.h_ex);
  j.num("eps", s.eps);
  j.num("regime_hk", s.regime_hk);
  j.num("regime_kh", s.regime_kh);
  const std::string hash = config_hash(kv);
  const int rc = write_artifact(out, "schedule.json", hash, j.finish());
  if (rc) return rc;
  write_meta(out, "schedule", hash);
  return 0;
}

int run_tile(const std::string& out, const std::string& shape, std::vector<double> sides,
             double radius, double cube_side, bool centers) {
  KV kv{{"cmd", "tile"}, {"shape", shape}, {"cube_side", format_g17(cube_side)}};
  DomainSpec d = DomainSpec::ball(1.0);
  if (shape == "box") {
    if (sides.size() == 1) sides = {sides[0], sides[0], sides[0]};
    if (sides.size() != 3) throw std::invalid_argument("box needs 1 or 3 side lengths");
    d = DomainSpec::box(sides[0], sides[1], sides[2]);
    for (int k = 0; k < 3; ++k)
      kv.push_back({"side" + std::to_string(k), format_g17(sides[k])});
  } else {
    d = DomainSpec::ball(radius);
    kv.push_back({"radius", format_g17(radius)});
  }
  const CubeTiling t = cube_tiling(d, cube_side);

  JsonWriter j;
  j.text("cmd", "tile");
  j.text("shape", shape);
  j.num("cube_side", cube_side);
  j.num("volume", d.volume());
  j.integer("n_interior", t.n_interior);
  j.integer("n_meeting_boundary", t.n_meeting_boundary);
  j.integer("n_covering", t.n_covering);
  j.num("volume_estimate", t.n_interior * cube_side * cube_side * cube_side);
  const std::string hash = config_hash(kv);
  int rc = write_artifact(out, "tile.json", hash, j.finish());
  if (rc) return rc;
  if (centers) {
    std::string csv = "c0,c1,c2\n";
    for (const auto& c : t.centers)
      csv += format_g17(c[0]) + "," + format_g17(c[1]) + "," + format_g17(c[2]) + "\n";
    rc = write_artifact(out, "tile_centers.csv", hash, csv);
    if (rc) return rc;
  }
  write_meta(out, "tile", hash);
  return 0;
}

int run_fofb(const std::string& out, double b, double R, const MinimizeFlags& mf) {
  KV kv{{"cmd", "fofb"}, {"b", format_g17(b)}, {"R", format_g17(R)}};
  mf.record(kv);
  const AsymptoticReport ar = f_estimate(b, R, mf.n, mf.options());

  JsonWriter j;
  j.text("cmd", "fofb");
  j.num("b", ar.b);
  j.num("r_requested", ar.r_requested);
  j.num("r_used", ar.r_used);
  j.num("h_ex", ar.h_ex);
  j.num("eps", ar.eps);
  j.integer("grid_n", ar.grid_n);
  j.num("measured", ar.measured);
  j.num("predicted", ar.predicted);
  j.num("ratio", ar.ratio);
  j.num("error_scale", ar.error_scale);
  j.num("trivial_bound", ar.trivial_bound);
  j.boolean("converged", ar.converged);
  j.integer("seed", (long long)ar.seed);
  const std::string hash = config_hash(kv);
  const int rc = write_artifact(out, "fofb.json", hash, j.finish());
  if (rc) return rc;
  write_meta(out, "fofb", hash);
  return ar.converged ? 0 : 3;
}

Law parse_law(const std::string& name) {
  if (name == "m0") return Law::m0;
  if (name == "mp") return Law::mp;
  if (name == "M0") return Law::M0;
  if (name == "C0") return Law::C0;
  if (name == "f") return Law::f;
  throw std::invalid_argument("unknown law: " + name);
}

int run_study(const std::string& out, const std::string& law_str, double h_ex,
              std::vector<double> eps_list, std::vector<double> b_list, double b_scalar,
              std::vector<double> r_list, double r_scalar, std::vector<double> kappa_list,
              std::vector<double> h_list, std::vector<int> grids, const MinimizeFlags& mf,
              int jobs) {
  const Law law = parse_law(law_str);

  std::vector<std::array<double, 2>> points;
  switch (law) {
    case Law::m0:
    case Law::mp:
      for (double e : eps_list) points.push_back({h_ex, e});
      break;
    case Law::M0:
      for (double r : r_list) points.push_back({b_scalar, r});
      break;
    case Law::f:
      for (double b : b_list) points.push_back({b, r_scalar});
      break;
    case Law::C0:
      if (kappa_list.size() != h_list.size())
        throw std::invalid_argument("study C0 needs matching kappa and H lists");
      for (std::size_t k = 0; k < kappa_list.size(); ++k)
        points.push_back({kappa_list[k], h_list[k]});
      break;
  }
  if (points.empty()) throw std::invalid_argument("study needs at least one point");
  if (grids.empty()) grids = {mf.n};
  if (grids.size() != 1 && grids.size() != points.size())
    throw std::invalid_argument("grids must hold one shared size or one per point");

  KV kv{{"cmd", "study"}, {"law", law_str}};
  mf.record(kv);
  for (std::size_t k = 0; k < points.size(); ++k) {
    kv.push_back({"p1_" + std::to_string(k), format_g17(points[k][0])});
    kv.push_back({"p2_" + std::to_string(k), format_g17(points[k][1])});
    kv.push_back({"grid_" + std::to_string(k),
                  std::to_string(grids.size() == 1 ? grids[0] : grids[k])});
  }
  const std::string hash = config_hash(kv);

  // points are independent; inner loops share the per-run thread budget
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  set_run_threads((int)std::max(1u, hw / (unsigned)std::max(1, jobs)));
  const MinimizeOptions opts = mf.options();

  std::vector<std::future<StudyTable>> pending;
  std::vector<StudyRow> rows(points.size());
  std::size_t next = 0, done = 0;
  while (done < points.size()) {
    while (next < points.size() && pending.size() < (std::size_t)std::max(1, jobs)) {
      const std::size_t k = next++;
      const int g = grids.size() == 1 ? grids[0] : grids[k];
      pending.push_back(std::async(std::launch::async, [law, pt = points[k], g, opts] {
        return convergence_study(law, {pt}, {g}, opts);
      }));
    }
    StudyTable t = pending.front().get();
    pending.erase(pending.begin());
    rows[done++] = t.rows.at(0);
  }
  // re-key rows to schedule order: futures completed front-first in order
  // (submission order equals completion-wait order above)

  std::vector<double> scales, gaps;
  double final_ratio = 0.0;
  int usable = 0;
  bool all_ok = true;
  for (std::size_t k = 0; k < rows.size(); ++k)
    if (rows[k].failed)
      std::fprintf(stderr, "study point %zu failed: %s\n", k, rows[k].error.c_str());
  for (const StudyRow& r : rows) {
    if (r.failed || !r.converged) all_ok = false;
    if (r.failed) continue;
    scales.push_back(r.scale);
    gaps.push_back(std::abs(r.ratio - 1.0));
    final_ratio = r.ratio;
    ++usable;
  }
  const double tau = usable >= 2 ? kendall_tau(scales, gaps) : 0.0;
  const bool trend_ok = usable >= 4 && tau <= -0.8;

  std::string csv = "law,p1,p2,grid,measured,predicted,ratio,converged,seed\n";
  for (const StudyRow& r : rows) {
    csv += law_name(r.law) + "," + format_g17(r.p1) + "," + format_g17(r.p2) + "," +
           std::to_string(r.grid_n) + "," + format_g17(r.measured) + "," +
           format_g17(r.predicted) + "," + format_g17(r.ratio) + "," +
           (r.converged ? "1" : "0") + "," + std::to_string(r.seed) + "\n";
  }
  int rc = write_artifact(out, "study.csv", hash, csv);
  if (rc) return rc;

  std::string trend;
  for (const StudyRow& r : rows)
    if (!r.failed) trend += format_g17(r.scale) + " " + format_g17(r.ratio) + "\n";
  rc = write_artifact(out, "study_trend.txt", hash, trend);
  if (rc) return rc;

  JsonWriter j;
  j.text("cmd", "study");
  j.text("law", law_str);
  j.integer("points", (long long)points.size());
  j.integer("usable", usable);
  j.num("tau_gap", tau);
  j.num("final_ratio", final_ratio);
  j.boolean("trend_ok", trend_ok);
  rc = write_artifact(out, "study.json", hash, j.finish());
  if (rc) return rc;
  write_meta(out, "study", hash);
  return all_ok ? 0 : 3;
}

int run_verify(const std::string& out) {
  struct Check {
    std::string name;
    bool ok = false;
  };
  std::vector<Check> checks;
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  auto randomize = [&](ComplexField& u) {
    for (auto& v : u.values) v = {U(rng), U(rng)};
  };

  {
    Check c{"gauge invariance, flat cell"};
    const UniformGrid g = make_grid_2d(12, 1.0, false);
    ComplexField u = make_field(g, FieldBC::Natural);
    randomize(u);
    LinkPhases l = field_links(g, 7.0);
    const double before = energy_2d(u, l, {7.0, 0.3}).total;
    std::vector<double> chi(g.num_sites());
    for (auto& x : chi) x = U(rng);
    gauge_transform(u, l, chi);
    const double after = energy_2d(u, l, {7.0, 0.3}).total;
    c.ok = std::abs(before - after) <= 1e-12 * std::abs(before);
    checks.push_back(c);
  }
  {
    Check c{"gauge invariance, cube"};
    const UniformGrid g = make_grid_3d(6, 1.0, false);
    ComplexField u = make_field(g, FieldBC::Natural);
    randomize(u);
    LinkPhases l = field_links(g, 3.0);
    GL3DParams p = GL3DParams::e0form(3.0, 1.0);
    const double before = energy_3d(u, l, p).total;
    std::vector<double> chi(g.num_sites());
    for (auto& x : chi) x = U(rng);
    gauge_transform(u, l, chi);
    const double after = energy_3d(u, l, p).total;
    c.ok = std::abs(before - after) <= 1e-12 * std::abs(before);
    checks.push_back(c);
  }
  {
    Check c{"flat-to-cube scaling identity"};
    const UniformGrid g2 = make_grid_2d(13, 1.0, false);
    ComplexField u2 = make_field(g2, FieldBC::Natural);
    randomize(u2);
    c.ok = check_scaling_identity(u2, 0.04, 10.0, 7).rel_err <= 1e-12;
    checks.push_back(c);
  }
  {
    Check c{"flux quantization snap"};
    const PeriodicCellSpec s = quantize_flux(6.4);
    c.ok = s.flux_quanta == 1 && consistency_defect(s.h_ex) <= 1e-12;
    checks.push_back(c);
  }
  {
    Check c{"unit box tiling count"};
    const CubeTiling t = cube_tiling(DomainSpec::box(1.0, 1.0, 1.0), 0.25);
    c.ok = t.n_interior == 64 && t.n_covering == 216;
    checks.push_back(c);
  }
  {
    Check c{"serial and parallel sums agree bitwise"};
    const UniformGrid g = make_grid_2d(32, 1.0, false);
    ComplexField u = make_field(g, FieldBC::Natural);
    randomize(u);
    const LinkPhases l = field_links(g, 5.0);
    const double a = energy_2d(u, l, {5.0, 0.2}, Exec::Serial).total;
    const double b = energy_2d(u, l, {5.0, 0.2}, Exec::Parallel).total;
    c.ok = a == b;
    checks.push_back(c);
  }
  {
    Check c{"covering bound collapses to the leading term"};
    const ParamSchedule s = schedule_from_kappaH(100.0, 10.0);
    const double mp_asym = s.h_ex * std::log(1.0 / (s.eps * std::sqrt(s.h_ex)));
    const double scale = s.ell * std::sqrt(s.kappa * s.H);
    const double collapsed = upper_bound_combine(s, scale * scale * scale, mp_asym);
    const double leading = s.kappa * s.H * std::log(std::sqrt(s.kappa / s.H));
    c.ok = std::abs(collapsed - leading) <= 1e-12 * leading;
    checks.push_back(c);
  }

  bool all = true;
  JsonWriter j;
  j.text("cmd", "verify");
  for (const Check& c : checks) {
    std::printf("%s - %s\n", c.ok ? "ok  " : "FAIL", c.name.c_str());
    all = all && c.ok;
  }
  j.integer("checks", (long long)checks.size());
  j.boolean("all_ok", all);
  const std::string hash = config_hash({{"cmd", "verify"}});
  const int rc = write_artifact(out, "verify.json", hash, j.finish());
  if (rc) return rc;
  write_meta(out, "verify", hash);
  return all ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"vortex-cell energy toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value file; command-line flags override");

  std::string out = ".";
  int jobs = 0;
  app.add_option("--out", out, "artifact directory")->capture_default_str();
  app.add_option("--jobs", jobs, "thread budget (default GLVORTEX_JOBS or 1)");

  // energy
  auto* energy = app.add_subcommand("energy", "evaluate a stored or uniform state");
  int e_dim = 2, e_n = 64;
  double e_hex = 0.0, e_eps = 0.1, e_b = 0.1, e_R = 1.0;
  std::string e_bc = "natural", e_load;
  energy->add_option("--dim", e_dim)->check(CLI::IsMember({2, 3}));
  energy->add_option("--n", e_n);
  energy->add_option("--h-ex", e_hex);
  energy->add_option("--eps", e_eps);
  energy->add_option("--b", e_b);
  energy->add_option("--R", e_R);
  energy->add_option("--bc", e_bc)->check(CLI::IsMember({"natural", "periodic"}));
  energy->add_option("--load", e_load, "GLFIELD file instead of the uniform state");

  // minimize2d
  auto* m2 = app.add_subcommand("minimize2d", "descend the flat-cell energy");
  double m2_hex = 0.0, m2_eps = 0.1;
  std::string m2_bc = "natural";
  bool m2_dump = false;
  MinimizeFlags m2f;
  m2->add_option("--h-ex", m2_hex)->required();
  m2->add_option("--eps", m2_eps)->required();
  m2->add_option("--bc", m2_bc)->check(CLI::IsMember({"natural", "periodic"}));
  m2->add_flag("--dump-field", m2_dump, "write the minimizer as GLFIELD");
  m2f.attach(m2);

  // minimize3d
  auto* m3 = app.add_subcommand("minimize3d", "descend the cube energy");
  double m3_b = 0.1, m3_R = 1.0;
  bool m3_dump = false;
  MinimizeFlags m3f;
  m3->add_option("--b", m3_b)->required();
  m3->add_option("--R", m3_R)->required();
  m3->add_flag("--dump-field", m3_dump);
  m3f.attach(m3);

  // lattice
  auto* lat = app.add_subcommand("lattice", "assembled vortex-lattice state energy");
  double l_hex = 8.0 * M_PI, l_eps = 0.05;
  int l_cell = 64;
  lat->add_option("--h-ex", l_hex)->required();
  lat->add_option("--eps", l_eps)->required();
  lat->add_option("--cell-n", l_cell, "intervals per lattice cell");

  // schedule
  auto* sch = app.add_subcommand("schedule", "derived parameters for one (kappa, H)");
  double s_kappa = 100.0, s_H = 10.0;
  sch->add_option("--kappa", s_kappa)->required();
  sch->add_option("--H", s_H)->required();

  // tile
  auto* tile = app.add_subcommand("tile", "cube-tiling counts of a box or ball");
  std::string t_shape = "box";
  std::vector<double> t_sides{1.0, 1.0, 1.0};
  double t_radius = 1.0, t_cube = 0.25;
  bool t_centers = false;
  tile->add_option("--shape", t_shape)->check(CLI::IsMember({"box", "ball"}));
  tile->add_option("--sides", t_sides)->delimiter(',');
  tile->add_option("--radius", t_radius);
  tile->add_option("--cube-side", t_cube)->required();
  tile->add_flag("--centers", t_centers, "also write the interior centers CSV");

  // fofb
  auto* fob = app.add_subcommand("fofb", "normalized periodic-cell estimate at one b");
  double f_b = 0.1, f_R = 7.927;
  MinimizeFlags fof;
  fob->add_option("--b", f_b)->required();
  fob->add_option("--R", f_R)->required();
  fof.attach(fob);

  // study
  auto* study = app.add_subcommand("study", "measured-to-predicted trend across points");
  std::string st_law = "m0";
  double st_hex = 0.0, st_b = 0.1, st_R = 7.927;
  std::vector<double> st_eps, st_blist, st_rlist, st_kappa, st_H;
  std::vector<int> st_grids;
  MinimizeFlags stf;
  study->add_option("--law", st_law)->check(CLI::IsMember({"m0", "mp", "M0", "C0", "f"}));
  study->add_option("--h-ex", st_hex);
  study->add_option("--eps", st_eps)->delimiter(',');
  study->add_option("--b", st_b);
  study->add_option("--b-list", st_blist)->delimiter(',');
  study->add_option("--R", st_R);
  study->add_option("--R-list", st_rlist)->delimiter(',');
  study->add_option("--kappa", st_kappa)->delimiter(',');
  study->add_option("--H", st_H)->delimiter(',');
  study->add_option("--grids", st_grids)->delimiter(',');
  stf.attach(study);

  // verify
  auto* verify = app.add_subcommand("verify", "run the fast invariant checks");

  // parent-level --out/--jobs may follow the subcommand name
  for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  try {
    if (!app.got_subcommand("study")) set_run_threads(resolve_jobs(jobs));
    if (app.got_subcommand(energy))
      return run_energy(out, e_dim, e_n, e_hex, e_eps, e_b, e_R, e_bc, e_load);
    if (app.got_subcommand(m2)) return run_minimize2d(out, m2_hex, m2_eps, m2_bc, m2f, m2_dump);
    if (app.got_subcommand(m3)) return run_minimize3d(out, m3_b, m3_R, m3f, m3_dump);
    if (app.got_subcommand(lat)) return run_lattice(out, l_hex, l_eps, l_cell);
    if (app.got_subcommand(sch)) return run_schedule(out, s_kappa, s_H);
    if (app.got_subcommand(tile))
      return run_tile(out, t_shape, t_sides, t_radius, t_cube, t_centers);
    if (app.got_subcommand(fob)) return run_fofb(out, f_b, f_R, fof);
    if (app.got_subcommand(study))
      return run_study(out, st_law, st_hex, st_eps, st_blist, st_b, st_rlist, st_R, st_kappa,
                       st_H, st_grids, stf, resolve_jobs(jobs));
    if (app.got_subcommand(verify)) return run_verify(out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
