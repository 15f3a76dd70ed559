#include <algorithm>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bsufs/clustering.hpp"
#include "bsufs/csv.hpp"
#include "bsufs/data.hpp"
#include "bsufs/errors.hpp"
#include "bsufs/pam.hpp"
#include "bsufs/sweep.hpp"
#include "bsufs/synthetic.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string hex_fingerprint(std::uint64_t h) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return buf;
}

bool parse_doubles(const std::string& text, std::vector<double>* out) {
  out->clear();
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t pos = text.find(',', start);
    std::string field = text.substr(start, pos == std::string::npos ? pos : pos - start);
    if (field.empty()) return false;
    char* end = nullptr;
    double v = std::strtod(field.c_str(), &end);
    if (end != field.c_str() + field.size()) return false;
    out->push_back(v);
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return !out->empty();
}

bool parse_ints(const std::string& text, std::vector<int>* out) {
  std::vector<double> vals;
  if (!parse_doubles(text, &vals)) return false;
  out->clear();
  for (double v : vals) {
    if (v != static_cast<int>(v)) return false;
    out->push_back(static_cast<int>(v));
  }
  return true;
}

int usage_error(const std::string& msg) {
  std::fprintf(stderr, "%s\n", msg.c_str());
  return 2;
}

struct LoadedData {
  bsufs::DataMatrix data;
  bool has_labels = false;
  bsufs::LabelVector labels;
};

// Reads the samples CSV and resolves labels from --labels / --label-col.
LoadedData load_inputs(const std::string& data_path, const std::string& labels_path,
                       bool has_label_col, int label_col) {
  LoadedData out;
  Eigen::MatrixXd samples = bsufs::load_csv(data_path);
  if (has_label_col) {
    auto [rest, raw] = bsufs::split_label_column(samples, label_col);
    samples = std::move(rest);
    out.labels = bsufs::make_labels(raw);
    out.has_labels = true;
  }
  out.data = bsufs::from_samples(samples);
  if (!labels_path.empty()) {
    std::vector<int> raw = bsufs::load_labels(labels_path);
    if (raw.size() != static_cast<std::size_t>(out.data.n()))
      throw bsufs::LengthMismatch(raw.size(), static_cast<std::size_t>(out.data.n()));
    out.labels = bsufs::make_labels(raw);
    out.has_labels = true;
  }
  return out;
}

int resolve_m(int cli_m, const LoadedData& in) {
  if (cli_m > 0) return cli_m;
  int d = in.data.d();
  if (in.has_labels) return std::max(1, std::min({in.labels.class_count, d - 1, 10}));
  return 0;  // solver default: min(10, d - 1)
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw bsufs::DataError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw bsufs::DataError("failed writing " + path.string());
}

void write_trace_csv(const fs::path& path, const std::vector<bsufs::IterationRow>& trace) {
  std::ofstream out(path);
  if (!out) throw bsufs::DataError("cannot write " + path.string());
  out << "k,total,trace_term,l2p_term,lq_term,coupling_u,coupling_v,grad_norm,inner_iters,ms\n";
  for (const auto& row : trace) {
    out << row.k << ',' << fmt(row.obj.total) << ',' << fmt(row.obj.trace_term) << ','
        << fmt(row.obj.l2p_term) << ',' << fmt(row.obj.lq_term) << ','
        << fmt(row.obj.coupling_u) << ',' << fmt(row.obj.coupling_v) << ','
        << fmt(row.grad_norm) << ',' << row.inner_iters << ',' << fmt(row.ms) << '\n';
  }
  if (!out) throw bsufs::DataError("failed writing " + path.string());
}

json config_json(const bsufs::SolverConfig& cfg, int features) {
  return json{{"lambda1", cfg.lambda1}, {"lambda2", cfg.lambda2}, {"p", cfg.p},
              {"q", cfg.q},             {"beta1", cfg.beta1},     {"beta2", cfg.beta2},
              {"tau1", cfg.tau1},       {"tau2", cfg.tau2},       {"tau3", cfg.tau3},
              {"m", cfg.m},             {"rel_tol", cfg.rel_tol}, {"max_outer", cfg.max_outer},
              {"seed", cfg.seed},       {"features", features}};
}

struct SynthArgs {
  std::string kind = "diamond9";
  int n = 0;
  int noise_dims = 7;
  double scale = 0.0;
  std::uint64_t seed = 0;
  std::string out;
  std::string labels_out;
  std::string noise = "none";
  double sigma = 0.01;
  double fraction = 0.03;
  std::uint64_t noise_seed = 0;
  bool has_noise_seed = false;
};

int run_synth(const SynthArgs& a) {
  bsufs::SyntheticSpec spec;
  spec.kind = a.kind == "diamond9" ? bsufs::SynthKind::diamond9 : bsufs::SynthKind::dartboard1;
  spec.n = a.n;
  spec.noise_dims = a.noise_dims;
  spec.informative_scale = a.scale;
  spec.seed = a.seed;
  auto [data, labels] = bsufs::gen_synthetic(spec);

  if (a.noise != "none") {
    bsufs::NoiseSpec noise;
    noise.kind = a.noise == "gaussian" ? bsufs::NoiseSpec::Kind::gaussian
                                       : bsufs::NoiseSpec::Kind::salt_pepper;
    noise.sigma = a.sigma;
    noise.fraction = a.fraction;
    data = bsufs::corrupt(data, noise, a.has_noise_seed ? a.noise_seed : a.seed);
  }

  bsufs::write_csv(a.out, data.x.transpose());
  if (!a.labels_out.empty()) bsufs::write_labels(a.labels_out, labels.y);
  return 0;
}

struct SelectArgs {
  std::string data;
  std::string labels;
  int label_col = 0;
  bool has_label_col = false;
  bsufs::SolverConfig cfg;
  int m = 0;
  int features = 0;
  std::string out_dir;
};

int run_select(const SelectArgs& a) {
  LoadedData in = load_inputs(a.data, a.labels, a.has_label_col, a.label_col);
  bsufs::SolverConfig cfg = a.cfg;
  cfg.m = resolve_m(a.m, in);
  if (cfg.m == 0) cfg.m = std::min(10, in.data.d() - 1);
  int features = a.features > 0 ? a.features : std::min(10, in.data.d());

  auto [state, sel] = bsufs::pam_solve(in.data, cfg, features);

  fs::create_directories(a.out_dir);
  write_trace_csv(fs::path(a.out_dir) / "trace.csv", state.trace);

  json manifest;
  manifest["command"] = "select";
  manifest["data_fingerprint"] = hex_fingerprint(bsufs::fingerprint(in.data));
  manifest["config"] = config_json(cfg, features);
  manifest["iterations"] = state.iterations;
  manifest["converged"] = state.converged;
  const bsufs::ObjectiveBreakdown& obj = state.trace.back().obj;
  manifest["objective"] = json{{"trace_term", obj.trace_term}, {"l2p_term", obj.l2p_term},
                               {"lq_term", obj.lq_term},       {"coupling_u", obj.coupling_u},
                               {"coupling_v", obj.coupling_v}, {"total", obj.total}};
  manifest["scores"] = sel.scores;
  manifest["ranked"] = sel.ranked;
  manifest["selected"] = sel.selected;
  manifest["trace"] = "trace.csv";
  write_json(fs::path(a.out_dir) / "manifest.json", manifest);
  return 0;
}

struct EvalArgs {
  std::string data;
  std::string labels;
  int label_col = 0;
  bool has_label_col = false;
  std::string features;
  int k = 0;
  int reps = 5;
  std::uint64_t seed = 0;
  std::string out;
};

int run_eval(const EvalArgs& a) {
  if (a.labels.empty() && !a.has_label_col)
    return usage_error("eval needs ground truth: pass --labels or --label-col");
  LoadedData in = load_inputs(a.data, a.labels, a.has_label_col, a.label_col);

  std::vector<int> idx;
  if (a.features.empty()) {
    idx.resize(static_cast<std::size_t>(in.data.d()));
    for (int i = 0; i < in.data.d(); ++i) idx[static_cast<std::size_t>(i)] = i;
  } else if (!parse_ints(a.features, &idx)) {
    return usage_error("--features expects a comma-separated list of indices");
  }
  for (int i : idx)
    if (i < 0 || i >= in.data.d())
      throw bsufs::DataError("feature index " + std::to_string(i) + " outside [0, " +
                             std::to_string(in.data.d()) + ")");

  Eigen::MatrixXd points(in.data.n(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j)
    points.col(static_cast<Eigen::Index>(j)) = in.data.x.row(idx[j]).transpose();

  int k = a.k > 0 ? a.k : in.labels.class_count;
  bsufs::EvaluationReport rep = bsufs::repeated_eval(points, in.labels.y, k, a.reps, a.seed);

  json out;
  out["command"] = "eval";
  out["data_fingerprint"] = hex_fingerprint(bsufs::fingerprint(in.data));
  out["k"] = rep.k;
  out["reps"] = rep.reps;
  out["base_seed"] = rep.base_seed;
  out["feature_count"] = static_cast<int>(idx.size());
  out["features"] = idx;
  out["acc"] = rep.acc;
  out["nmi"] = rep.nmi;
  out["acc_mean"] = rep.acc_mean;
  out["acc_std"] = rep.acc_std;
  out["nmi_mean"] = rep.nmi_mean;
  out["nmi_std"] = rep.nmi_std;
  write_json(a.out, out);
  return 0;
}

struct SweepArgs {
  std::string data;
  std::string labels;
  int label_col = 0;
  bool has_label_col = false;
  std::string l1_grid, l2_grid, p_grid, q_grid, s_grid;
  int reps = 5;
  int workers = 0;
  std::uint64_t eval_seed = 0;
  int m = 0;
  int max_outer = 500;
  double rel_tol = 1e-4;
  std::string out_dir;
  bool dry_run = false;
};

std::string sweep_row(const bsufs::SweepCellResult& r) {
  std::string sel;
  for (std::size_t i = 0; i < r.selected.size(); ++i) {
    if (i) sel += ';';
    sel += std::to_string(r.selected[i]);
  }
  std::string row = fmt(r.cell.lambda1) + "," + fmt(r.cell.lambda2) + "," + fmt(r.cell.p) +
                    "," + fmt(r.cell.q) + "," + std::to_string(r.cell.s) + "," +
                    (r.converged ? "1" : "0") + "," + std::to_string(r.iterations) + "," +
                    fmt(r.objective_total) + "," + fmt(r.wall_ms);
  if (r.eval) {
    row += "," + fmt(r.eval->acc_mean) + "," + fmt(r.eval->acc_std) + "," +
           fmt(r.eval->nmi_mean) + "," + fmt(r.eval->nmi_std);
  } else {
    row += ",,,,";
  }
  return row + "," + sel;
}

int run_sweep_cmd(const SweepArgs& a) {
  if (a.labels.empty() && !a.has_label_col)
    return usage_error("sweep needs ground truth: pass --labels or --label-col");
  LoadedData in = load_inputs(a.data, a.labels, a.has_label_col, a.label_col);

  bsufs::SweepGrid grid = bsufs::SweepGrid::defaults();
  if (!a.l1_grid.empty() && !parse_doubles(a.l1_grid, &grid.lambda1))
    return usage_error("--l1-grid expects comma-separated numbers");
  if (!a.l2_grid.empty() && !parse_doubles(a.l2_grid, &grid.lambda2))
    return usage_error("--l2-grid expects comma-separated numbers");
  if (!a.p_grid.empty() && !parse_doubles(a.p_grid, &grid.p))
    return usage_error("--p-grid expects comma-separated numbers");
  if (!a.q_grid.empty() && !parse_doubles(a.q_grid, &grid.q))
    return usage_error("--q-grid expects comma-separated numbers");
  if (!a.s_grid.empty() && !parse_ints(a.s_grid, &grid.feature_counts))
    return usage_error("--s-grid expects comma-separated integers");

  std::vector<bsufs::SweepCell> cells = bsufs::enumerate_cells(grid, in.data.d());
  if (a.dry_run) {
    std::printf("cells %zu\n", cells.size());
    return 0;
  }

  bsufs::SolverConfig base;
  base.m = resolve_m(a.m, in);
  if (base.m == 0) base.m = std::min(10, in.data.d() - 1);
  base.max_outer = a.max_outer;
  base.rel_tol = a.rel_tol;

  bsufs::SweepOptions opts;
  opts.workers = a.workers;
  opts.reps = a.reps;
  opts.eval_seed = a.eval_seed;
  opts.evaluate = true;

  std::vector<bsufs::SweepCellResult> results =
      bsufs::run_sweep(in.data, &in.labels, base, grid, opts);

  fs::path dir(a.out_dir);
  fs::create_directories(dir / "cells");

  const std::string header =
      "lambda1,lambda2,p,q,s,converged,iterations,objective,wall_ms,acc_mean,acc_std,"
      "nmi_mean,nmi_std,selected";
  {
    std::ofstream res(dir / "results.csv");
    if (!res) throw bsufs::DataError("cannot write results.csv");
    res << header << '\n';
    for (const auto& r : results) res << sweep_row(r) << '\n';
  }

  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    json cell;
    cell["lambda1"] = r.cell.lambda1;
    cell["lambda2"] = r.cell.lambda2;
    cell["p"] = r.cell.p;
    cell["q"] = r.cell.q;
    cell["s"] = r.cell.s;
    cell["selected"] = r.selected;
    cell["scores"] = r.scores;
    cell["iterations"] = r.iterations;
    cell["converged"] = r.converged;
    cell["objective_total"] = r.objective_total;
    cell["wall_ms"] = r.wall_ms;
    if (r.eval) {
      cell["acc_mean"] = r.eval->acc_mean;
      cell["acc_std"] = r.eval->acc_std;
      cell["nmi_mean"] = r.eval->nmi_mean;
      cell["nmi_std"] = r.eval->nmi_std;
    }
    char name[32];
    std::snprintf(name, sizeof(name), "cell_%04zu.json", i);
    write_json(dir / "cells" / name, cell);
  }

  // Best cell (highest mean accuracy, first wins ties) per feature count.
  {
    std::ofstream summary(dir / "summary.csv");
    if (!summary) throw bsufs::DataError("cannot write summary.csv");
    summary << header << '\n';
    std::vector<int> seen;
    for (const auto& r : results) {
      if (std::find(seen.begin(), seen.end(), r.cell.s) != seen.end()) continue;
      seen.push_back(r.cell.s);
      std::size_t best = 0;
      bool found = false;
      for (std::size_t i = 0; i < results.size(); ++i) {
        if (results[i].cell.s != r.cell.s || !results[i].eval) continue;
        if (!found || results[i].eval->acc_mean > results[best].eval->acc_mean) {
          best = i;
          found = true;
        }
      }
      if (found) summary << sweep_row(results[best]) << '\n';
    }
  }

  json manifest;
  manifest["command"] = "sweep";
  manifest["cells"] = static_cast<int>(cells.size());
  manifest["data_fingerprint"] = hex_fingerprint(bsufs::fingerprint(in.data));
  manifest["reps"] = a.reps;
  manifest["eval_seed"] = a.eval_seed;
  manifest["workers"] = a.workers;
  manifest["grid"] = json{{"lambda1", grid.lambda1}, {"lambda2", grid.lambda2},
                          {"p", grid.p},             {"q", grid.q},
                          {"feature_counts", grid.feature_counts}};
  manifest["results"] = "results.csv";
  manifest["summary"] = "summary.csv";
  manifest["cell_dir"] = "cells";
  write_json(dir / "manifest.json", manifest);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bi-sparse unsupervised feature selection"};
  app.require_subcommand(1);

  SynthArgs sy;
  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic benchmark dataset");
  synth->add_option("--kind", sy.kind, "dataset family")
      ->check(CLI::IsMember({"diamond9", "dartboard1"}));
  synth->add_option("--n", sy.n, "sample count (0: family default)");
  synth->add_option("--noise-dims", sy.noise_dims, "appended standard-normal features");
  synth->add_option("--scale", sy.scale, "informative geometry scale (0: family default)");
  synth->add_option("--seed", sy.seed, "generator seed");
  synth->add_option("--out", sy.out, "samples CSV path")->required();
  synth->add_option("--labels-out", sy.labels_out, "labels path (one integer per line)");
  synth->add_option("--noise", sy.noise, "corruption applied after generation")
      ->check(CLI::IsMember({"none", "gaussian", "salt_pepper"}));
  synth->add_option("--sigma", sy.sigma, "gaussian corruption std");
  synth->add_option("--fraction", sy.fraction, "salt/pepper replacement probability");
  CLI::Option* nseed =
      synth->add_option("--noise-seed", sy.noise_seed, "corruption seed (default: --seed)");

  SelectArgs se;
  CLI::App* select = app.add_subcommand("select", "rank and select features");
  select->add_option("--data", se.data, "samples CSV path")->required();
  select->add_option("--labels", se.labels, "labels path (only sets the subspace default)");
  CLI::Option* se_col = select->add_option("--label-col", se.label_col,
                                           "column of --data holding labels (negative: from end)");
  select->add_option("--lambda1", se.cfg.lambda1, "row sparsity weight");
  select->add_option("--lambda2", se.cfg.lambda2, "element sparsity weight");
  select->add_option("--p", se.cfg.p, "row penalty exponent in [0, 1)");
  select->add_option("--q", se.cfg.q, "element penalty exponent in [0, 1)");
  select->add_option("--beta1", se.cfg.beta1, "W-U coupling weight");
  select->add_option("--beta2", se.cfg.beta2, "W-V coupling weight");
  select->add_option("--m", se.m, "subspace dimension (0: automatic)");
  select->add_option("--features", se.features, "how many features to keep (0: min(10, d))");
  select->add_option("--max-outer", se.cfg.max_outer, "outer iteration cap");
  select->add_option("--rel-tol", se.cfg.rel_tol, "relative objective-change stop");
  select->add_option("--seed", se.cfg.seed, "recorded in the manifest");
  select->add_option("--out-dir", se.out_dir, "output directory")->required();

  EvalArgs ev;
  CLI::App* eval = app.add_subcommand("eval", "cluster features against ground truth");
  eval->add_option("--data", ev.data, "samples CSV path")->required();
  eval->add_option("--labels", ev.labels, "labels path");
  CLI::Option* ev_col = eval->add_option("--label-col", ev.label_col,
                                         "column of --data holding labels (negative: from end)");
  eval->add_option("--features", ev.features, "comma-separated feature indices (default: all)");
  eval->add_option("--k", ev.k, "cluster count (0: class count)");
  eval->add_option("--reps", ev.reps, "k-means repetitions");
  eval->add_option("--seed", ev.seed, "base seed; repetition r uses seed + r");
  eval->add_option("--out", ev.out, "report JSON path")->required();

  SweepArgs sw;
  CLI::App* sweep = app.add_subcommand("sweep", "grid-search penalties and feature counts");
  sweep->add_option("--data", sw.data, "samples CSV path")->required();
  sweep->add_option("--labels", sw.labels, "labels path");
  CLI::Option* sw_col = sweep->add_option("--label-col", sw.label_col,
                                          "column of --data holding labels (negative: from end)");
  sweep->add_option("--l1-grid", sw.l1_grid, "row sparsity weights (comma-separated)");
  sweep->add_option("--l2-grid", sw.l2_grid, "element sparsity weights (comma-separated)");
  sweep->add_option("--p-grid", sw.p_grid, "row exponents (comma-separated)");
  sweep->add_option("--q-grid", sw.q_grid, "element exponents (comma-separated)");
  sweep->add_option("--s-grid", sw.s_grid, "feature counts (comma-separated)");
  sweep->add_option("--reps", sw.reps, "k-means repetitions per cell");
  sweep->add_option("--workers", sw.workers, "solver threads (0: hardware)");
  sweep->add_option("--eval-seed", sw.eval_seed, "base seed shared by every cell");
  sweep->add_option("--m", sw.m, "subspace dimension (0: automatic)");
  sweep->add_option("--max-outer", sw.max_outer, "outer iteration cap per solve");
  sweep->add_option("--rel-tol", sw.rel_tol, "relative objective-change stop");
  sweep->add_option("--out-dir", sw.out_dir, "output directory")->required();
  sweep->add_flag("--dry-run", sw.dry_run, "print the cell count and write nothing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  sy.has_noise_seed = nseed->count() > 0;
  se.has_label_col = se_col->count() > 0;
  ev.has_label_col = ev_col->count() > 0;
  sw.has_label_col = sw_col->count() > 0;

  try {
    if (synth->parsed()) return run_synth(sy);
    if (select->parsed()) return run_select(se);
    if (eval->parsed()) return run_eval(ev);
    if (sweep->parsed()) return run_sweep_cmd(sw);
    return usage_error("no command given");
  } catch (const bsufs::DataError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return 3;
  } catch (const bsufs::NumericalError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
