#include "fockkernel/variational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "fockkernel/gates.hpp"
#include "fockkernel/pcg32.hpp"

namespace fockkernel {

namespace {

using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr int kParamsPerBlock = 8;
constexpr double kDegenerateFloor = 1e-12;
constexpr double kDefectLimit = 0.05;

Eigen::MatrixXcd from_basis(const detail::EigenBasis& eb, double scale, int cutoff) {
  // exp(i * scale * H) assembled from the cached eigensystem, cropped
  Eigen::VectorXcd phase(eb.values.size());
  for (Eigen::Index p = 0; p < eb.values.size(); ++p)
    phase(p) = std::exp(cplx(0.0, scale * eb.values(p)));
  return (eb.vectors * phase.asDiagonal() * eb.vectors.adjoint())
      .topLeftCorner(cutoff, cutoff);
}

double column_defect(const Eigen::MatrixXcd& m) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    worst = std::max(worst, std::abs(1.0 - m.col(j).norm()));
  return worst;
}

}  // namespace

// Gate matrices for every block, rebuilt lazily one parameter at a time. The
// three single-mode gates of a mode are fused into one matrix so a block
// application is one sector-blocked beamsplitter pass plus two dense
// single-mode passes.
class CircuitCache {
 public:
  CircuitCache(int cutoff, int num_blocks, int buffer)
      : cutoff_(cutoff),
        buffer_(buffer),
        bs_basis_(detail::bs_basis(cutoff)),
        theta_(static_cast<std::size_t>(num_blocks) * kParamsPerBlock, 0.0),
        blocks_(static_cast<std::size_t>(num_blocks)) {
    for (int b = 0; b < num_blocks; ++b) {
      rebuild_bs(b);
      for (int mode = 0; mode < 2; ++mode) rebuild_mode(b, mode);
    }
  }

  int num_blocks() const { return static_cast<int>(blocks_.size()); }
  int cutoff() const { return cutoff_; }
  const std::vector<double>& theta() const { return theta_; }

  void set_theta(const std::vector<double>& theta) {
    if (theta.size() != theta_.size()) throw std::invalid_argument("CircuitCache: theta size");
    for (std::size_t i = 0; i < theta.size(); ++i) set_param(static_cast<int>(i), theta[i]);
  }

  void set_param(int idx, double value) {
    if (theta_[static_cast<std::size_t>(idx)] == value) return;
    theta_[static_cast<std::size_t>(idx)] = value;
    int b = idx / kParamsPerBlock;
    int slot = idx % kParamsPerBlock;
    if (slot < 2)
      rebuild_bs(b);
    else
      rebuild_mode(b, slot % 2);
  }

  // applies blocks [first, last) in place; last = -1 means through the end
  void run(Eigen::VectorXcd& state, int first = 0, int last = -1) const {
    std::size_t stop = last < 0 ? blocks_.size() : static_cast<std::size_t>(last);
    for (std::size_t b = static_cast<std::size_t>(first); b < stop; ++b) {
      apply_bs(blocks_[b], state);
      Eigen::Map<RowMat> view(state.data(), cutoff_, cutoff_);
      view = blocks_[b].fused0 * view;
      view = view * blocks_[b].fused1.transpose();
    }
  }

  double worst_defect() const {
    double worst = 0.0;
    for (const Block& blk : blocks_) worst = std::max({worst, blk.defect0, blk.defect1});
    return worst;
  }

 private:
  struct Block {
    std::vector<Eigen::MatrixXcd> bs;        // per-sector unitaries
    Eigen::MatrixXcd d[2], p[2], v[2];       // cropped single-mode gates
    Eigen::MatrixXcd fused0, fused1;         // v * p * d per mode
    double defect0 = 0.0, defect1 = 0.0;
  };

  void rebuild_bs(int b) {
    double u = theta_[static_cast<std::size_t>(b) * kParamsPerBlock];
    double v = theta_[static_cast<std::size_t>(b) * kParamsPerBlock + 1];
    Block& blk = blocks_[static_cast<std::size_t>(b)];
    blk.bs.resize(bs_basis_.sectors.size());
    for (std::size_t s = 0; s < bs_basis_.sectors.size(); ++s) {
      const detail::EigenBasis& eb = bs_basis_.sectors[s];
      Eigen::VectorXcd phase(eb.values.size());
      for (Eigen::Index p = 0; p < eb.values.size(); ++p)
        phase(p) = std::exp(cplx(0.0, -u * eb.values(p)));
      Eigen::MatrixXcd core = eb.vectors * phase.asDiagonal() * eb.vectors.adjoint();
      if (v != 0.0) {
        const std::vector<int>& idx = bs_basis_.flat_indices[s];
        Eigen::VectorXcd rot(static_cast<Eigen::Index>(idx.size()));
        for (std::size_t p = 0; p < idx.size(); ++p)
          rot(static_cast<Eigen::Index>(p)) = std::polar(1.0, v * (idx[p] / cutoff_));
        core = rot.asDiagonal() * core * rot.conjugate().asDiagonal();
      }
      blk.bs[s] = std::move(core);
    }
  }

  void rebuild_mode(int b, int mode) {
    const std::size_t base = static_cast<std::size_t>(b) * kParamsPerBlock;
    Block& blk = blocks_[static_cast<std::size_t>(b)];
    int dim = cutoff_ + buffer_;
    double dz = theta_[base + 2 + static_cast<std::size_t>(mode)];
    double pu = theta_[base + 4 + static_cast<std::size_t>(mode)];
    double vu = theta_[base + 6 + static_cast<std::size_t>(mode)];
    // D(dz) = exp(dz (a^dag - a)) = exp(-i dz H_drift)
    blk.d[mode] = from_basis(detail::drift_basis(dim), -dz, cutoff_);
    blk.p[mode] = from_basis(detail::position_square_basis(dim), 0.5 * pu, cutoff_);
    blk.v[mode] = from_basis(detail::position_cube_basis(dim), vu / 3.0, cutoff_);
    Eigen::MatrixXcd fused = blk.v[mode] * blk.p[mode] * blk.d[mode];
    if (mode == 0) {
      blk.fused0 = std::move(fused);
      blk.defect0 = column_defect(blk.fused0);
    } else {
      blk.fused1 = std::move(fused);
      blk.defect1 = column_defect(blk.fused1);
    }
  }

  void apply_bs(const Block& blk, Eigen::VectorXcd& state) const {
    for (std::size_t s = 0; s < blk.bs.size(); ++s) {
      const std::vector<int>& idx = bs_basis_.flat_indices[s];
      const Eigen::Index dim = static_cast<Eigen::Index>(idx.size());
      if (dim == 1) continue;  // 1x1 sectors of the generator are identity
      scratch_.resize(dim);
      scratch2_.resize(dim);
      for (Eigen::Index p = 0; p < dim; ++p) scratch_(p) = state(idx[static_cast<std::size_t>(p)]);
      scratch2_.noalias() = blk.bs[s] * scratch_;
      for (Eigen::Index p = 0; p < dim; ++p) state(idx[static_cast<std::size_t>(p)]) = scratch2_(p);
    }
  }

  int cutoff_;
  int buffer_;
  const detail::BsBasis& bs_basis_;
  std::vector<double> theta_;
  std::vector<Block> blocks_;
  mutable Eigen::VectorXcd scratch_, scratch2_;
};

namespace {

Eigen::VectorXcd embedded_input(const VariationalModel& model, const std::array<double, 2>& x) {
  FockVector s0 = squeezed_vacuum(model.c, x[0], model.cutoff);
  FockVector s1 = squeezed_vacuum(model.c, x[1], model.cutoff);
  Eigen::VectorXcd state(static_cast<Eigen::Index>(s0.dim() * s1.dim()));
  std::size_t k = 0;
  for (std::size_t i = 0; i < s0.dim(); ++i)
    for (std::size_t j = 0; j < s1.dim(); ++j)
      state(static_cast<Eigen::Index>(k++)) = s0.amplitudes[i] * s1.amplitudes[j];
  return state;
}

struct RawForward {
  double o0 = 0.0, o1 = 0.0;
  bool degenerate = false;
  double captured = 0.0;
};

RawForward raw_outcomes(const VariationalModel& model, const CircuitCache& cache,
                        Eigen::VectorXcd state, int first_block = 0) {
  cache.run(state, first_block);
  auto flat = [&](const std::array<int, 2>& occ) { return occ[0] * model.cutoff + occ[1]; };
  RawForward rf;
  rf.o0 = std::norm(state(flat(model.outcomes[0])));
  rf.o1 = std::norm(state(flat(model.outcomes[1])));
  rf.degenerate = (rf.o0 + rf.o1) < kDegenerateFloor;
  rf.captured = state.squaredNorm();
  return rf;
}

void validate_model(const VariationalModel& model) {
  if (model.num_blocks < 1) throw std::invalid_argument("variational: need at least one block");
  if (model.theta.size() != static_cast<std::size_t>(model.num_blocks) * kParamsPerBlock)
    throw std::invalid_argument("variational: theta must hold 8 values per block");
  if (model.cutoff < 2) throw std::invalid_argument("variational: cutoff must be >= 2");
  if (model.outcomes[0] == model.outcomes[1])
    throw std::invalid_argument("variational: outcomes must be distinct");
  for (const auto& oc : model.outcomes)
    for (int n : oc)
      if (n < 0 || n >= model.cutoff)
        throw std::invalid_argument("variational: outcome level outside cutoff");
}

int target_class(int label) { return label == 1 ? 1 : 0; }

}  // namespace

VariationalModel init_model(int num_blocks, double c, int cutoff, double l2_strength,
                            std::uint64_t seed) {
  VariationalModel m;
  m.num_blocks = num_blocks;
  m.c = c;
  m.cutoff = cutoff;
  m.l2_strength = l2_strength;
  m.seed = seed;
  Pcg32 rng(seed);
  m.theta.resize(static_cast<std::size_t>(num_blocks) * kParamsPerBlock);
  for (double& t : m.theta) t = rng.uniform(-0.1, 0.1);
  validate_model(m);
  return m;
}

VariationalEvaluator::VariationalEvaluator(const VariationalModel& model)
    : model_(model),
      cache_(std::make_unique<CircuitCache>(model.cutoff, model.num_blocks, model.buffer)) {
  validate_model(model_);
  cache_->set_theta(model_.theta);
}

VariationalEvaluator::~VariationalEvaluator() = default;
VariationalEvaluator::VariationalEvaluator(VariationalEvaluator&&) noexcept = default;
VariationalEvaluator& VariationalEvaluator::operator=(VariationalEvaluator&&) noexcept = default;

ForwardResult VariationalEvaluator::forward(const std::array<double, 2>& x) const {
  RawForward rf = raw_outcomes(model_, *cache_, embedded_input(model_, x));
  if (rf.degenerate)
    throw std::runtime_error("variational forward: degenerate output, o0+o1 < 1e-12");
  ForwardResult fr;
  fr.o0 = rf.o0;
  fr.o1 = rf.o1;
  fr.p0 = rf.o0 / (rf.o0 + rf.o1);
  fr.p1 = rf.o1 / (rf.o0 + rf.o1);
  return fr;
}

int VariationalEvaluator::predict(const std::array<double, 2>& x) const {
  ForwardResult fr = forward(x);
  return fr.p0 >= fr.p1 ? 0 : 1;
}

FockVector VariationalEvaluator::output_state(const std::array<double, 2>& x) const {
  Eigen::VectorXcd state = embedded_input(model_, x);
  cache_->run(state);
  FockVector out;
  out.num_modes = 2;
  out.cutoff = model_.cutoff;
  out.amplitudes.assign(state.data(), state.data() + state.size());
  return out;
}

double VariationalEvaluator::worst_gate_defect() const { return cache_->worst_defect(); }

ForwardResult forward(const VariationalModel& model, const std::array<double, 2>& x) {
  return VariationalEvaluator(model).forward(x);
}

int predict(const VariationalModel& model, const std::array<double, 2>& x) {
  return VariationalEvaluator(model).predict(x);
}

double loss(const VariationalModel& model, const LabeledDataset& data) {
  if (data.size() == 0) throw std::invalid_argument("loss: empty data");
  VariationalEvaluator ev(model);
  double acc = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    ForwardResult fr = ev.forward({data.inputs[i][0], data.inputs[i][1]});
    double t1 = target_class(data.labels[i]) == 1 ? 1.0 : 0.0;
    acc += (fr.p0 - (1.0 - t1)) * (fr.p0 - (1.0 - t1)) + (fr.p1 - t1) * (fr.p1 - t1);
  }
  double l2 = 0.0;
  for (double t : model.theta) l2 += t * t;
  return acc / static_cast<double>(data.size()) + model.l2_strength * l2;
}

TrainResult train(const VariationalModel& init, const LabeledDataset& data,
                  const TrainOptions& options) {
  validate_model(init);
  if (data.size() == 0) throw std::invalid_argument("train: empty data");
  if (options.batch_size < 1 || static_cast<std::size_t>(options.batch_size) > data.size())
    throw std::invalid_argument("train: batch_size must be in [1, M]");
  for (const auto& row : data.inputs)
    if (row.size() != 2) throw std::invalid_argument("train: inputs must be 2-d");

  TrainResult result;
  result.model = init;
  const int nb = init.num_blocks;
  const int np = nb * kParamsPerBlock;

  CircuitCache cache(init.cutoff, nb, init.buffer);
  cache.set_theta(init.theta);

  // embedded inputs are parameter-independent, build them once
  std::vector<Eigen::VectorXcd> embedded(data.size());
  for (std::size_t i = 0; i < data.size(); ++i)
    embedded[i] = embedded_input(init, {data.inputs[i][0], data.inputs[i][1]});

  Pcg32 rng(options.seed);
  std::vector<std::size_t> pool(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) pool[i] = i;

  // per-sample states after each prefix of blocks; [s][b] = after b blocks
  std::vector<std::vector<Eigen::VectorXcd>> prefix(
      static_cast<std::size_t>(options.batch_size));

  auto sample_data_loss = [&](const RawForward& rf, int label, long* degenerate) {
    double p0 = 0.5, p1 = 0.5;
    if (rf.degenerate) {
      if (degenerate) ++*degenerate;
    } else {
      p0 = rf.o0 / (rf.o0 + rf.o1);
      p1 = rf.o1 / (rf.o0 + rf.o1);
    }
    double t1 = target_class(label) == 1 ? 1.0 : 0.0;
    return (p0 - (1.0 - t1)) * (p0 - (1.0 - t1)) + (p1 - t1) * (p1 - t1);
  };

  auto full_accuracy = [&]() {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      Eigen::VectorXcd state = embedded[i];
      cache.run(state);
      double o0 = std::norm(state(result.model.outcomes[0][0] * init.cutoff +
                                  result.model.outcomes[0][1]));
      double o1 = std::norm(state(result.model.outcomes[1][0] * init.cutoff +
                                  result.model.outcomes[1][1]));
      int pred = (o0 + o1) < kDegenerateFloor ? 0 : (o0 >= o1 ? 0 : 1);
      if (pred == target_class(data.labels[i])) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(data.size());
  };

  std::vector<double>& theta = result.model.theta;
  std::vector<double> grad(static_cast<std::size_t>(np), 0.0);
  double tracked_accuracy = 0.0;
  result.trace.reserve(static_cast<std::size_t>(options.steps));

  for (long step = 0; step < options.steps; ++step) {
    // batch without replacement
    for (int k = 0; k < options.batch_size; ++k) {
      std::size_t j =
          k + rng.bounded(static_cast<std::uint32_t>(data.size() - static_cast<std::size_t>(k)));
      std::swap(pool[static_cast<std::size_t>(k)], pool[j]);
    }

    // prefix states and base batch loss
    double base_loss = 0.0;
    bool step_defective = cache.worst_defect() > kDefectLimit;
    for (int k = 0; k < options.batch_size; ++k) {
      std::size_t s = pool[static_cast<std::size_t>(k)];
      auto& pf = prefix[static_cast<std::size_t>(k)];
      pf.assign(static_cast<std::size_t>(nb) + 1, Eigen::VectorXcd());
      pf[0] = embedded[s];
      for (int b = 0; b < nb; ++b) {
        pf[static_cast<std::size_t>(b) + 1] = pf[static_cast<std::size_t>(b)];
        cache.run(pf[static_cast<std::size_t>(b) + 1], b, b + 1);
      }
      RawForward rf;
      rf.o0 = std::norm(pf[static_cast<std::size_t>(nb)](
          result.model.outcomes[0][0] * init.cutoff + result.model.outcomes[0][1]));
      rf.o1 = std::norm(pf[static_cast<std::size_t>(nb)](
          result.model.outcomes[1][0] * init.cutoff + result.model.outcomes[1][1]));
      rf.degenerate = (rf.o0 + rf.o1) < kDegenerateFloor;
      rf.captured = pf[static_cast<std::size_t>(nb)].squaredNorm();
      if (rf.captured < options.guard_threshold) ++result.guard_violations;
      base_loss += sample_data_loss(rf, data.labels[s], &result.degenerate_samples);
    }
    base_loss /= options.batch_size;
    double l2 = 0.0;
    for (double t : theta) l2 += t * t;
    base_loss += init.l2_strength * l2;
    if (step_defective) ++result.defect_violations;

    if (!std::isfinite(base_loss))
      throw std::runtime_error("train: non-finite loss at step " + std::to_string(step + 1) +
                               " (cutoff leakage suspected)");

    if (step == 0 || (step % options.accuracy_every) == 0) tracked_accuracy = full_accuracy();
    result.trace.push_back(TraceRow{step + 1, base_loss, tracked_accuracy});

    // central differences on the data term; the l2 term's central difference
    // is exactly 2*l2*theta (quadratic), added analytically
    const double h = options.fd_step;
    for (int idx = 0; idx < np; ++idx) {
      int b = idx / kParamsPerBlock;
      double original = theta[static_cast<std::size_t>(idx)];
      double plus = 0.0, minus = 0.0;
      cache.set_param(idx, original + h);
      for (int k = 0; k < options.batch_size; ++k) {
        std::size_t s = pool[static_cast<std::size_t>(k)];
        RawForward rf = raw_outcomes(result.model, cache,
                                     prefix[static_cast<std::size_t>(k)][static_cast<std::size_t>(b)], b);
        plus += sample_data_loss(rf, data.labels[s], &result.degenerate_samples);
      }
      cache.set_param(idx, original - h);
      for (int k = 0; k < options.batch_size; ++k) {
        std::size_t s = pool[static_cast<std::size_t>(k)];
        RawForward rf = raw_outcomes(result.model, cache,
                                     prefix[static_cast<std::size_t>(k)][static_cast<std::size_t>(b)], b);
        minus += sample_data_loss(rf, data.labels[s], &result.degenerate_samples);
      }
      cache.set_param(idx, original);
      grad[static_cast<std::size_t>(idx)] =
          (plus - minus) / (2.0 * h * options.batch_size) + 2.0 * init.l2_strength * original;
    }

    double eta = options.lr0 / (1.0 + options.lr_decay * static_cast<double>(step));
    for (int idx = 0; idx < np; ++idx) {
      double next = theta[static_cast<std::size_t>(idx)] - eta * grad[static_cast<std::size_t>(idx)];
      next = std::clamp(next, -options.clamp, options.clamp);
      theta[static_cast<std::size_t>(idx)] = next;
      cache.set_param(idx, next);
    }
    result.model.step = init.step + step + 1;
  }

  result.final_train_accuracy = full_accuracy();
  return result;
}

}  // namespace fockkernel
