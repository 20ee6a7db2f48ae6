// Command-line front end: dataset generation, SVM / perceptron / variational
// training, and the numerical verification suite. Every command writes its
// resolved configuration next to its outputs and is deterministic given that
// configuration (no timestamps, seeded randomness only).

#include <algorithm>
#include <array>
#include <filesystem>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fockkernel/datasets.hpp"
#include "fockkernel/gates.hpp"
#include "fockkernel/kernels.hpp"
#include "fockkernel/pcg32.hpp"
#include "fockkernel/perceptron.hpp"
#include "fockkernel/separability.hpp"
#include "fockkernel/serialize.hpp"
#include "fockkernel/svm.hpp"
#include "fockkernel/variational.hpp"

namespace fk = fockkernel;
using fk::ordered_json;

namespace {

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  if (out.empty()) throw std::invalid_argument("expected a comma-separated number list");
  return out;
}

void write_json(const std::string& dir, const std::string& name, const ordered_json& j) {
  fk::write_text_file((std::filesystem::path(dir) / name).string(), j.dump(2) + "\n");
}

void write_text(const std::string& dir, const std::string& name, const std::string& content) {
  fk::write_text_file((std::filesystem::path(dir) / name).string(), content);
}

ordered_json dataset_config(const fk::DatasetSpec& spec) {
  return ordered_json{{"family", fk::to_string(spec.family)},
                      {"n_train", spec.n_train},
                      {"n_test", spec.n_test},
                      {"noise", fk::resolved_noise(spec)},
                      {"seed", spec.seed}};
}

struct DatasetFlags {
  std::string family;
  int n_train = -1;
  int n_test = -1;
  double noise = -1.0;

  void attach(CLI::App* cmd, const std::string& default_family) {
    family = default_family;
    cmd->add_option("--family", family, "dataset family: moons, circles, blobs");
    cmd->add_option("--n-train", n_train, "training sample count");
    cmd->add_option("--n-test", n_test, "test sample count");
    cmd->add_option("--noise", noise, "noise std (default 0.1 moons/circles, 0.15 blobs)");
  }

  fk::DatasetSpec resolve(std::uint64_t seed, int default_train, int default_test) const {
    fk::DatasetSpec spec;
    spec.family = fk::dataset_family_from_string(family);
    spec.n_train = n_train >= 0 ? n_train : default_train;
    spec.n_test = n_test >= 0 ? n_test : default_test;
    spec.noise = noise;
    spec.seed = seed;
    return spec;
  }
};

int run_gen(const std::string& out_dir, const DatasetFlags& flags, std::uint64_t seed) {
  fk::DatasetSpec spec = flags.resolve(seed, 50, 150);
  fk::LabeledDataset data = fk::generate(spec);
  write_text(out_dir, fk::to_string(spec.family) + ".csv", fk::dataset_csv(data));
  ordered_json config{{"schema", 1}, {"command", "gen"}, {"dataset", dataset_config(spec)},
                      {"output", fk::to_string(spec.family) + ".csv"}};
  write_json(out_dir, "gen_config.json", config);
  std::cout << "wrote " << fk::to_string(spec.family) << ".csv (" << data.size() << " samples)\n";
  return 0;
}

int run_svm(const std::string& out_dir, const DatasetFlags& flags, std::uint64_t seed,
            const std::string& preset, std::string kernel_name, std::string c_list,
            int degree, std::string realification, double C, double tol, int grid_res) {
  int default_train = 50, default_test = 150;
  if (preset == "fig4-row2") {
    default_train = 500;
    default_test = 100;
  } else if (!preset.empty() && preset != "fig4") {
    throw std::invalid_argument("svm preset must be fig4 or fig4-row2");
  }

  fk::DatasetSpec dspec = flags.resolve(seed, default_train, default_test);
  fk::LabeledDataset data = fk::generate(dspec);
  fk::LabeledDataset train = data.split(false), test = data.split(true);

  std::vector<double> cs = parse_double_list(c_list);
  fk::KernelSpec kspec;
  kspec.family = fk::kernel_family_from_string(kernel_name);
  kspec.degree = degree;
  kspec.realification = fk::realification_from_string(realification);

  ordered_json rows = ordered_json::array();
  fk::SvmModel last_model;
  for (double c : cs) {
    kspec.c = c;
    fk::SvmModel model = fk::svm_train(train, kspec, C, tol);
    double train_acc = fk::svm_accuracy(model, train);
    double test_acc = fk::svm_accuracy(model, test);
    rows.push_back(ordered_json{{"c", c},
                                {"train_accuracy", train_acc},
                                {"test_accuracy", test_acc},
                                {"support_count", model.support_indices.size()},
                                {"iterations", model.iterations},
                                {"converged", model.converged},
                                {"gram_clipped", model.gram_clipped},
                                {"gram_min_eigenvalue", model.gram_min_eigenvalue}});
    std::cout << "c=" << c << " train_acc=" << train_acc << " test_acc=" << test_acc << "\n";
    last_model = std::move(model);
  }

  write_json(out_dir, "svm_metrics.json",
             ordered_json{{"schema", 1}, {"rows", rows}});
  if (cs.size() == 1) {
    write_json(out_dir, "svm_model.json", fk::svm_model_json(last_model));
    if (grid_res > 0) {
      fk::GridEvaluation grid = fk::grid_eval(
          [&](double x, double y) { return fk::svm_decision(last_model, {x, y}); }, grid_res);
      write_text(out_dir, "svm_grid.csv", fk::grid_csv(grid));
    }
  }

  ordered_json config{{"schema", 1},
                      {"command", "svm"},
                      {"preset", preset},
                      {"dataset", dataset_config(dspec)},
                      {"kernel", fk::kernel_spec_json(kspec)},
                      {"c_values", cs},
                      {"C", C},
                      {"tol", tol},
                      {"grid", grid_res}};
  write_json(out_dir, "svm_config.json", config);
  return 0;
}

int run_perceptron(const std::string& out_dir, const DatasetFlags& flags, std::uint64_t seed,
                   double c, int cutoff, std::string realification, double min_captured,
                   double lr, int max_epochs) {
  fk::DatasetSpec dspec = flags.resolve(seed, 70, 20);
  fk::LabeledDataset data = fk::generate(dspec);
  fk::LabeledDataset train = data.split(false), test = data.split(true);

  fk::FeatureRealification real = fk::feature_realification_from_string(realification);
  fk::FeatureMatrix train_features = fk::embed_dataset(train, c, cutoff, real, min_captured);
  fk::PerceptronResult result = fk::perceptron_train(train_features, train.labels, max_epochs, lr);

  double test_acc = 0.0;
  if (test.size() > 0) {
    fk::FeatureMatrix test_features = fk::embed_dataset(test, c, cutoff, real, min_captured);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < test.size(); ++i) {
      double margin = fk::perceptron_decision(result, test_features.rows[i]);
      if ((margin > 0.0 ? 1 : -1) == test.labels[i]) ++hits;
    }
    test_acc = static_cast<double>(hits) / static_cast<double>(test.size());
  }

  double min_cap = train_features.captured[0];
  for (double v : train_features.captured) min_cap = std::min(min_cap, v);

  ordered_json metrics{{"schema", 1},
                       {"epochs_used", result.epochs_used},
                       {"total_updates", result.total_updates},
                       {"converged", result.converged},
                       {"train_accuracy", result.final_train_accuracy},
                       {"test_accuracy", test_acc},
                       {"min_captured_norm", min_cap}};
  write_json(out_dir, "perceptron_metrics.json", metrics);

  ordered_json config{{"schema", 1},
                      {"command", "perceptron"},
                      {"dataset", dataset_config(dspec)},
                      {"c", c},
                      {"cutoff", cutoff},
                      {"realification", fk::to_string(real)},
                      {"min_captured", min_captured},
                      {"learning_rate", lr},
                      {"max_epochs", max_epochs}};
  write_json(out_dir, "perceptron_config.json", config);

  std::cout << "epochs_used=" << result.epochs_used
            << " train_acc=" << result.final_train_accuracy << " test_acc=" << test_acc << "\n";
  return 0;
}

int run_variational(const std::string& out_dir, const DatasetFlags& flags, std::uint64_t seed,
                    double c, int cutoff, int blocks, long steps, int batch, double lr0,
                    double lr_decay, double l2, double fd_step, int grid_res) {
  fk::DatasetSpec dspec = flags.resolve(seed, 150, 50);
  fk::LabeledDataset data = fk::generate(dspec);
  fk::LabeledDataset train = data.split(false), test = data.split(true);

  fk::VariationalModel model = fk::init_model(blocks, c, cutoff, l2, seed);
  fk::TrainOptions topt;
  topt.steps = steps;
  topt.batch_size = batch;
  topt.lr0 = lr0;
  topt.lr_decay = lr_decay;
  topt.fd_step = fd_step;
  topt.seed = seed;

  fk::TrainResult result;
  if (steps > 0) {
    result = fk::train(model, train, topt);
  } else {
    result.model = model;
    result.final_train_accuracy = 0.0;
  }

  write_json(out_dir, "variational_checkpoint.json",
             fk::variational_checkpoint_json(result.model));
  write_text(out_dir, "variational_trace.csv", fk::trace_csv(result.trace));

  fk::VariationalEvaluator ev(result.model);
  auto accuracy_on = [&](const fk::LabeledDataset& d) {
    if (d.size() == 0) return 0.0;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      int truth = d.labels[i] == 1 ? 1 : 0;
      if (ev.predict({d.inputs[i][0], d.inputs[i][1]}) == truth) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(d.size());
  };
  double train_acc = accuracy_on(train);
  double test_acc = accuracy_on(test);

  ordered_json metrics{{"schema", 1},
                       {"train_accuracy", train_acc},
                       {"test_accuracy", test_acc},
                       {"degenerate_samples", result.degenerate_samples},
                       {"guard_violations", result.guard_violations},
                       {"defect_violations", result.defect_violations},
                       {"worst_gate_defect", ev.worst_gate_defect()}};
  if (!result.trace.empty()) {
    metrics["initial_batch_loss"] = result.trace.front().batch_loss;
    metrics["final_batch_loss"] = result.trace.back().batch_loss;
  }
  write_json(out_dir, "variational_metrics.json", metrics);

  if (grid_res > 0) {
    fk::GridEvaluation grid = fk::grid_eval(
        [&](double x, double y) { return ev.forward({x, y}).p1; }, grid_res);
    write_text(out_dir, "variational_grid.csv", fk::grid_csv(grid));
  }

  ordered_json config{{"schema", 1},
                      {"command", "variational"},
                      {"dataset", dataset_config(dspec)},
                      {"c", c},
                      {"cutoff", cutoff},
                      {"blocks", blocks},
                      {"steps", steps},
                      {"batch_size", batch},
                      {"lr0", lr0},
                      {"lr_decay", lr_decay},
                      {"l2_strength", l2},
                      {"fd_step", fd_step},
                      {"seed", seed},
                      {"grid", grid_res}};
  write_json(out_dir, "variational_config.json", config);

  std::cout << "train_acc=" << train_acc << " test_acc=" << test_acc;
  if (!result.trace.empty())
    std::cout << " loss " << result.trace.front().batch_loss << " -> "
              << result.trace.back().batch_loss;
  std::cout << "\n";
  return 0;
}

struct Check {
  std::string name;
  bool pass = false;
  double worst = 0.0;
  double tolerance = 0.0;
  ordered_json details;
};

int run_verify(const std::string& out_dir, int cutoff, int pairs, int psd_sets,
               std::uint64_t seed) {
  std::vector<Check> checks;
  fk::Pcg32 rng(seed);

  {  // closed-form squeezing overlap vs truncated simulation
    Check ck{"squeezing_overlap_vs_truncation", false, 0.0, 1e-5, {}};
    for (double c : {0.25, 0.5, 0.75, 1.0}) {
      for (int k = 0; k < pairs; ++k) {
        double x = rng.uniform(-1.0, 1.0), y = rng.uniform(-1.0, 1.0);
        fk::cplx closed = fk::squeezing_overlap_1d(x, y, c);
        fk::cplx truncated =
            fk::inner(fk::squeezed_vacuum(c, x, cutoff), fk::squeezed_vacuum(c, y, cutoff));
        ck.worst = std::max(ck.worst, std::abs(closed - truncated));
      }
    }
    ck.pass = ck.worst < ck.tolerance;
    ck.details = ordered_json{{"cutoff", cutoff}, {"c_values", {0.25, 0.5, 0.75, 1.0}}};
    checks.push_back(ck);
  }

  {  // Gram positive semidefiniteness for every family
    Check ck{"gram_psd_all_families", false, 0.0, 0.0, ordered_json::object()};
    double worst_scaled = std::numeric_limits<double>::infinity();
    for (fk::KernelFamily family :
         {fk::KernelFamily::delta_basis, fk::KernelFamily::linear_amplitude,
          fk::KernelFamily::polynomial_copies, fk::KernelFamily::cosine_product,
          fk::KernelFamily::squeezing_phase, fk::KernelFamily::coherent_gaussian}) {
      double family_worst = std::numeric_limits<double>::infinity();
      for (int s = 0; s < psd_sets; ++s) {
        int m = 2 + static_cast<int>(rng.bounded(11));  // up to 12
        std::vector<std::vector<double>> data;
        for (int i = 0; i < m; ++i) {
          if (family == fk::KernelFamily::delta_basis)
            data.push_back({static_cast<double>(rng.bounded(2)),
                            static_cast<double>(rng.bounded(2))});
          else
            data.push_back({rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
        }
        fk::KernelSpec spec;
        spec.family = family;
        spec.c = 1.5;
        spec.degree = 2;
        spec.realification = fk::Realification::abs_square;
        double min_eig = fk::gram(spec, data).min_eigenvalue();
        family_worst = std::min(family_worst, min_eig);
        worst_scaled = std::min(worst_scaled, min_eig / (1e-8 * m));
      }
      ck.details[fk::to_string(family)] = family_worst;
    }
    // pass iff min eigenvalue >= -1e-8 * M for every dataset
    ck.worst = worst_scaled;
    ck.tolerance = -1.0;
    ck.pass = worst_scaled >= -1.0;
    checks.push_back(ck);
  }

  {  // coherent overlap: Gaussian identity and truncated cross-check
    Check ck{"coherent_gaussian_identity", false, 0.0, 1e-10, {}};
    double worst_trunc = 0.0;
    for (int k = 0; k < pairs; ++k) {
      fk::cplx a(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
      fk::cplx b(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
      double identity_gap =
          std::abs(std::norm(fk::coherent_overlap(a, b)) - std::exp(-std::norm(a - b)));
      ck.worst = std::max(ck.worst, identity_gap);
      double trunc_gap = std::abs(fk::coherent_overlap(a, b) -
                                  fk::inner(fk::coherent(a, 30), fk::coherent(b, 30)));
      worst_trunc = std::max(worst_trunc, trunc_gap);
    }
    ck.pass = ck.worst < 1e-10 && worst_trunc < 1e-8;
    ck.details = ordered_json{{"worst_truncated_gap", worst_trunc}, {"truncated_tol", 1e-8}};
    checks.push_back(ck);
  }

  {  // determinant-structure check vs direct numerical rank
    Check ck{"vandermonde_vs_rank", false, 0.0, 0.0, {}};
    int agreements = 0, total = 25;
    for (int s = 0; s < total; ++s) {
      int m = 2 + static_cast<int>(rng.bounded(7));
      std::vector<double> phases;
      for (int i = 0; i < m; ++i) phases.push_back(rng.uniform(-1.0, 1.0));
      if (s % 3 == 0 && m >= 2) phases[1] = phases[0];  // deliberate duplicate
      bool distinct = fk::vandermonde_check(phases, 1.0).distinct;
      std::vector<std::vector<double>> points;
      for (double p : phases) points.push_back({p});
      fk::RankReport report = fk::design_matrix_rank(points, 1.0, std::max(16, 2 * m));
      if (distinct == report.independent) ++agreements;
    }
    ck.worst = static_cast<double>(total - agreements);
    ck.pass = agreements == total;
    ck.details = ordered_json{{"sets", total}, {"agreements", agreements}};
    checks.push_back(ck);
  }

  {  // gate suite
    Check ck{"gate_suite", false, 0.0, 1e-6, {}};
    fk::GateOperator bs = fk::beamsplitter(0.7, 0.3, 10);
    double bs_defect = (bs.matrix.adjoint() * bs.matrix -
                        Eigen::MatrixXcd::Identity(100, 100)).cwiseAbs().maxCoeff();
    double disp_worst = 0.0;
    for (int k = 0; k < 10; ++k) {
      fk::cplx alpha(rng.uniform(-0.7, 0.7), rng.uniform(-0.7, 0.7));
      fk::FockVector displaced = fk::apply(fk::displacement(alpha, 30), fk::vacuum(1, 30), {0});
      fk::FockVector direct = fk::coherent(alpha, 30);
      for (std::size_t i = 0; i < displaced.dim(); ++i)
        disp_worst = std::max(disp_worst,
                              std::abs(displaced.amplitudes[i] - direct.amplitudes[i]));
    }
    // cubic spreads far in the number basis: u = 0.05 with six probe levels at
    // cutoff 30 is the regime where the inverse pair closes to 1e-6
    Eigen::MatrixXcd inv_pair =
        fk::cubic_phase(0.05, 30).matrix * fk::cubic_phase(-0.05, 30).matrix;
    double cubic_worst = 0.0;
    for (int j = 0; j < 6; ++j) {
      Eigen::VectorXcd col = inv_pair.col(j);
      col(j) -= 1.0;
      cubic_worst = std::max(cubic_worst, col.cwiseAbs().maxCoeff());
    }
    ck.worst = std::max({disp_worst, cubic_worst});
    ck.pass = bs_defect < 1e-12 && disp_worst < 1e-6 && cubic_worst < 1e-6;
    ck.details = ordered_json{
        {"bs_unitarity_defect", bs_defect},
        {"displacement_vs_coherent", disp_worst},
        {"cubic_inverse_defect", cubic_worst},
        // reported, not gated: crop-edge columns of the quadratic gate lose mass
        {"quadratic_phase_column_defect", fk::quadratic_phase(0.5, 20).column_norm_defect()}};
    checks.push_back(ck);
  }

  ordered_json report{{"schema", 1}, {"checks", ordered_json::array()}};
  bool all_pass = true;
  for (const Check& ck : checks) {
    report["checks"].push_back(ordered_json{{"name", ck.name},
                                            {"pass", ck.pass},
                                            {"worst", ck.worst},
                                            {"tolerance", ck.tolerance},
                                            {"details", ck.details}});
    all_pass = all_pass && ck.pass;
    std::cout << (ck.pass ? "[pass] " : "[FAIL] ") << ck.name << " (worst " << ck.worst << ")\n";
  }
  report["all_pass"] = all_pass;
  write_json(out_dir, "verify_report.json", report);
  write_json(out_dir, "verify_config.json",
             ordered_json{{"schema", 1},
                          {"command", "verify"},
                          {"cutoff", cutoff},
                          {"pairs", pairs},
                          {"psd_sets", psd_sets},
                          {"seed", seed}});
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"continuous-variable kernel and circuit classifier toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // --out / --seed are accepted after the subcommand too

  std::string out_dir = ".";
  std::uint64_t seed = 42;
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_option("--seed", seed, "seed for data generation and training")->capture_default_str();

  // gen
  CLI::App* gen = app.add_subcommand("gen", "generate a benchmark dataset CSV");
  DatasetFlags gen_flags;
  gen_flags.attach(gen, "moons");

  // svm
  CLI::App* svm = app.add_subcommand("svm", "kernel SVM train/eval");
  DatasetFlags svm_flags;
  svm_flags.attach(svm, "moons");
  std::string svm_preset, svm_kernel = "squeezing_phase", svm_c = "1.5";
  std::string svm_real = "abs_square";
  int svm_degree = 2, svm_grid = 0;
  double svm_C = 1.0, svm_tol = 1e-3;
  svm->add_option("--preset", svm_preset, "fig4 (50/150) or fig4-row2 (500/100)");
  svm->add_option("--kernel", svm_kernel, "kernel family")->capture_default_str();
  svm->add_option("--c", svm_c, "squeezing hyperparameter; comma list sweeps")
      ->capture_default_str();
  svm->add_option("--degree", svm_degree, "polynomial_copies degree")->capture_default_str();
  svm->add_option("--realification", svm_real, "abs_square or real_part")->capture_default_str();
  svm->add_option("--C", svm_C, "soft-margin constant")->capture_default_str();
  svm->add_option("--tol", svm_tol, "KKT stopping tolerance")->capture_default_str();
  svm->add_option("--grid", svm_grid, "decision-grid resolution (0 = off)");

  // perceptron
  CLI::App* perc = app.add_subcommand("perceptron", "perceptron on embedded features");
  DatasetFlags perc_flags;
  perc_flags.attach(perc, "blobs");
  std::string perc_preset, perc_real = "real_part";
  double perc_c = 1.5, perc_min_captured = 0.8, perc_lr = 1.0;
  int perc_cutoff = 20, perc_epochs = 5000;
  perc->add_option("--preset", perc_preset, "fig5 (blobs 70/20)");
  perc->add_option("--c", perc_c, "squeezing magnitude")->capture_default_str();
  perc->add_option("--cutoff", perc_cutoff, "Fock levels per mode")->capture_default_str();
  perc->add_option("--realification", perc_real, "real_part or concat_real_imag")
      ->capture_default_str();
  perc->add_option("--min-captured", perc_min_captured, "captured-norm floor per embedded point")
      ->capture_default_str();
  perc->add_option("--lr", perc_lr, "learning rate")->capture_default_str();
  perc->add_option("--max-epochs", perc_epochs, "epoch budget")->capture_default_str();

  // variational
  CLI::App* var = app.add_subcommand("variational", "train the gate-block circuit classifier");
  DatasetFlags var_flags;
  var_flags.attach(var, "moons");
  std::string var_preset;
  double var_c = 1.0, var_lr0 = 0.1, var_decay = 0.005, var_l2 = 1e-3, var_fd = 1e-3;
  int var_cutoff = 14, var_blocks = 4, var_batch = 5, var_grid = 0;
  long var_steps = 5000;
  var->add_option("--preset", var_preset, "fig7 (moons 150/50)");
  var->add_option("--c", var_c, "feature-map squeezing magnitude")->capture_default_str();
  var->add_option("--cutoff", var_cutoff, "Fock levels per mode")->capture_default_str();
  var->add_option("--blocks", var_blocks, "gate blocks (8 parameters each)")
      ->capture_default_str();
  var->add_option("--steps", var_steps, "SGD steps")->capture_default_str();
  var->add_option("--batch", var_batch, "minibatch size")->capture_default_str();
  var->add_option("--lr0", var_lr0, "initial learning rate")->capture_default_str();
  var->add_option("--lr-decay", var_decay, "learning-rate decay")->capture_default_str();
  var->add_option("--l2", var_l2, "l2 regularization strength")->capture_default_str();
  var->add_option("--fd-step", var_fd, "finite-difference half-width")->capture_default_str();
  var->add_option("--grid", var_grid, "p(y=1) grid resolution (0 = off)");

  // verify
  CLI::App* verify = app.add_subcommand("verify", "run the numerical verification suite");
  int verify_cutoff = 40, verify_pairs = 100, verify_psd_sets = 40;
  verify->add_option("--cutoff", verify_cutoff, "Fock levels for overlap checks")
      ->capture_default_str();
  verify->add_option("--pairs", verify_pairs, "random pairs per check")->capture_default_str();
  verify->add_option("--psd-sets", verify_psd_sets, "datasets per kernel family")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help and version succeed, every parse error is usage
  }

  try {
    std::filesystem::create_directories(out_dir);
    if (gen->parsed()) return run_gen(out_dir, gen_flags, seed);
    if (svm->parsed())
      return run_svm(out_dir, svm_flags, seed, svm_preset, svm_kernel, svm_c, svm_degree,
                     svm_real, svm_C, svm_tol, svm_grid);
    if (perc->parsed())
      return run_perceptron(out_dir, perc_flags, seed, perc_c, perc_cutoff, perc_real,
                            perc_min_captured, perc_lr, perc_epochs);
    if (var->parsed())
      return run_variational(out_dir, var_flags, seed, var_c, var_cutoff, var_blocks, var_steps,
                             var_batch, var_lr0, var_decay, var_l2, var_fd, var_grid);
    if (verify->parsed())
      return run_verify(out_dir, verify_cutoff, verify_pairs, verify_psd_sets, seed);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
