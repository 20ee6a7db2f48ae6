#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "fockkernel/datasets.hpp"
#include "fockkernel/fock_state.hpp"

namespace fockkernel {

// Two-mode trainable circuit on squeezing-embedded inputs. Each block applies
// a beamsplitter, then per-mode displacement, quadratic phase and cubic phase
// gates; 8 parameters per block laid out as
//   [bs_u, bs_v, d_mode0, d_mode1, p_mode0, p_mode1, v_mode0, v_mode1].
// Class probabilities come from two Fock outcomes, renormalized against each
// other.
struct VariationalModel {
  int num_blocks = 4;
  std::vector<double> theta;  // 8 * num_blocks
  double c = 1.0;
  int cutoff = 14;
  std::array<std::array<int, 2>, 2> outcomes{{{2, 0}, {0, 2}}};
  double l2_strength = 1e-3;
  int buffer = 10;  // single-mode gates are built at cutoff+buffer, then cropped
  std::uint64_t seed = 42;
  long step = 0;  // training steps already applied to theta
};

// theta drawn uniformly from [-0.1, 0.1], seeded.
VariationalModel init_model(int num_blocks, double c, int cutoff, double l2_strength,
                            std::uint64_t seed);

struct ForwardResult {
  double p0 = 0.0, p1 = 0.0;  // normalized pair
  double o0 = 0.0, o1 = 0.0;  // raw outcome probabilities
};

class CircuitCache;

// Reusable forward pass: gate matrices are built once per parameter vector,
// then shared across inputs. Safe for concurrent forward() calls.
class VariationalEvaluator {
 public:
  explicit VariationalEvaluator(const VariationalModel& model);
  ~VariationalEvaluator();
  VariationalEvaluator(VariationalEvaluator&&) noexcept;
  VariationalEvaluator& operator=(VariationalEvaluator&&) noexcept;

  // Throws if o0 + o1 < 1e-12 (degenerate output).
  ForwardResult forward(const std::array<double, 2>& x) const;
  int predict(const std::array<double, 2>& x) const;  // 0 or 1, tie -> 0
  FockVector output_state(const std::array<double, 2>& x) const;
  // worst column-norm defect among the circuit's single-mode gates
  double worst_gate_defect() const;

 private:
  VariationalModel model_;
  std::unique_ptr<CircuitCache> cache_;
};

ForwardResult forward(const VariationalModel& model, const std::array<double, 2>& x);
int predict(const VariationalModel& model, const std::array<double, 2>& x);

// Mean over samples of |p - onehot(y)|^2 plus l2_strength * |theta|^2.
// Dataset labels -1/0 mean class 0, +1 means class 1.
double loss(const VariationalModel& model, const LabeledDataset& data);

struct TrainOptions {
  long steps = 5000;
  int batch_size = 5;
  double lr0 = 0.1;        // eta_t = lr0 / (1 + lr_decay * t)
  double lr_decay = 0.005;
  double fd_step = 1e-3;   // central-difference half-width
  int accuracy_every = 50; // full-train accuracy cadence in the trace
  std::uint64_t seed = 42; // batch sampling
  double clamp = 5.0;
  double guard_threshold = 0.95;  // captured-norm floor for the leakage log
};

struct TraceRow {
  long step = 0;
  double batch_loss = 0.0;
  double train_accuracy = 0.0;  // refreshed at the cadence, carried between
};

struct TrainResult {
  VariationalModel model;
  std::vector<TraceRow> trace;
  double final_train_accuracy = 0.0;
  long degenerate_samples = 0;   // forwards that fell back to (0.5, 0.5)
  long guard_violations = 0;     // batch forwards with captured norm below the guard
  long defect_violations = 0;    // steps where some gate defect exceeded 0.05
};

// Minibatch SGD with central finite-difference gradients. Batches are drawn
// without replacement per step from the seeded generator; parameters are
// clamped to |theta| <= clamp after each update. A NaN loss aborts with the
// step number in the message.
TrainResult train(const VariationalModel& init, const LabeledDataset& data,
                  const TrainOptions& options);

}  // namespace fockkernel
