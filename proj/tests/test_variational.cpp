#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "fockkernel/pcg32.hpp"
#include "fockkernel/variational.hpp"

using namespace fockkernel;

namespace {

VariationalModel zero_model(int blocks, double c, int cutoff) {
  VariationalModel m;
  m.num_blocks = blocks;
  m.theta.assign(8 * blocks, 0.0);
  m.c = c;
  m.cutoff = cutoff;
  return m;
}

LabeledDataset tiny_moons(int n, std::uint64_t seed) {
  DatasetSpec spec;
  spec.family = DatasetFamily::moons;
  spec.n_train = n;
  spec.n_test = 0;
  spec.seed = seed;
  return generate(spec);
}

}  // namespace

TEST_SUITE("variational") {

TEST_CASE("identity circuit reproduces the squeezed series") {
  VariationalModel m = zero_model(1, 1.2, 12);
  VariationalEvaluator ev(m);
  for (double x1 : {-0.6, 0.2}) {
    for (double x2 : {0.1, 0.8}) {
      FockVector s1 = squeezed_vacuum(1.2, x1, 12), s2 = squeezed_vacuum(1.2, x2, 12);
      double o0 = std::norm(s1.amplitudes[2]) * std::norm(s2.amplitudes[0]);
      double o1 = std::norm(s1.amplitudes[0]) * std::norm(s2.amplitudes[2]);
      ForwardResult f = ev.forward({x1, x2});
      CHECK(f.o0 == doctest::Approx(o0).epsilon(1e-12));
      CHECK(f.o1 == doctest::Approx(o1).epsilon(1e-12));
      CHECK(f.p0 == doctest::Approx(o0 / (o0 + o1)).epsilon(1e-12));
    }
  }
  CHECK(ev.worst_gate_defect() < 1e-12);
}

TEST_CASE("initialization is seeded and bounded") {
  VariationalModel a = init_model(4, 1.0, 14, 1e-3, 42);
  VariationalModel b = init_model(4, 1.0, 14, 1e-3, 42);
  VariationalModel c = init_model(4, 1.0, 14, 1e-3, 43);
  CHECK(a.theta == b.theta);
  CHECK(a.theta != c.theta);
  CHECK(a.theta.size() == 32);
  for (double t : a.theta) {
    CHECK(t >= -0.1);
    CHECK(t <= 0.1);
  }
}

TEST_CASE("probabilities normalize for random parameters") {
  Pcg32 rng(61);
  for (int trial = 0; trial < 40; ++trial) {
    VariationalModel m = zero_model(2, 1.0, 10);
    for (double& t : m.theta) t = rng.uniform(-0.8, 0.8);
    VariationalEvaluator ev(m);
    for (int k = 0; k < 5; ++k) {
      std::array<double, 2> x{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
      ForwardResult f = ev.forward(x);
      CHECK(f.p0 + f.p1 == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(f.p0 >= 0.0);
      CHECK(f.p1 >= 0.0);
      CHECK(f.o0 >= 0.0);
      CHECK(f.o1 >= 0.0);
      // class 1 needs a strict win; a tie falls back to class 0
      CHECK(ev.predict(x) == (f.p1 > f.p0 ? 1 : 0));
    }
  }
}

TEST_CASE("mode-symmetric parameters without beamsplitter give equal outcomes") {
  VariationalModel m = zero_model(2, 1.1, 12);
  // per-mode parameters equal, bs_u = bs_v = 0
  for (int b = 0; b < 2; ++b) {
    m.theta[8 * b + 2] = 0.13;
    m.theta[8 * b + 3] = 0.13;
    m.theta[8 * b + 4] = 0.07;
    m.theta[8 * b + 5] = 0.07;
    m.theta[8 * b + 6] = 0.05;
    m.theta[8 * b + 7] = 0.05;
  }
  VariationalEvaluator ev(m);
  for (double x : {-0.5, 0.0, 0.7}) {
    ForwardResult f = ev.forward({x, x});
    CHECK(std::abs(f.o0 - f.o1) < 1e-12);
    CHECK(f.p0 == doctest::Approx(0.5).epsilon(1e-12));
  }
  // a nonzero beamsplitter angle breaks the exact swap symmetry: the
  // generator is antisymmetric under mode exchange, not symmetric
  m.theta[0] = 0.37;
  VariationalEvaluator tilted(m);
  ForwardResult f = tilted.forward({0.4, 0.4});
  CHECK(std::abs(f.o0 - f.o1) < 1e-3);
}

TEST_CASE("loss matches its definition") {
  VariationalModel m = zero_model(1, 1.0, 10);
  Pcg32 rng(67);
  for (double& t : m.theta) t = rng.uniform(-0.3, 0.3);
  LabeledDataset data = tiny_moons(6, 5);

  VariationalEvaluator ev(m);
  double expected = 0.0;
  for (std::size_t s = 0; s < data.size(); ++s) {
    ForwardResult f = ev.forward({data.inputs[s][0], data.inputs[s][1]});
    double target1 = data.labels[s] == 1 ? 1.0 : 0.0;
    expected += (f.p0 - (1.0 - target1)) * (f.p0 - (1.0 - target1)) +
                (f.p1 - target1) * (f.p1 - target1);
  }
  expected /= static_cast<double>(data.size());
  double theta2 = 0.0;
  for (double t : m.theta) theta2 += t * t;
  expected += m.l2_strength * theta2;

  CHECK(loss(m, data) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("half-probability sample contributes one half to the loss") {
  VariationalModel m = zero_model(1, 1.1, 12);
  m.l2_strength = 0.0;
  LabeledDataset data;
  data.inputs = {{0.4, 0.4}};
  data.labels = {1};
  data.is_test = {0};
  // symmetric input through a trivial circuit gives p = (1/2, 1/2)
  CHECK(loss(m, data) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("relabeling classes and swapping outcomes is a symmetry") {
  VariationalModel m = zero_model(2, 1.0, 10);
  Pcg32 rng(71);
  for (double& t : m.theta) t = rng.uniform(-0.4, 0.4);
  LabeledDataset data = tiny_moons(8, 9);

  VariationalModel swapped = m;
  std::swap(swapped.outcomes[0], swapped.outcomes[1]);
  LabeledDataset flipped = data;
  for (int& y : flipped.labels) y = -y;

  CHECK(loss(m, data) == doctest::Approx(loss(swapped, flipped)).epsilon(1e-14));

  VariationalEvaluator a(m), b(swapped);
  ForwardResult fa = a.forward({0.3, -0.2}), fb = b.forward({0.3, -0.2});
  CHECK(fa.p0 == doctest::Approx(fb.p1).epsilon(1e-14));
}

TEST_CASE("zero learning rate freezes the parameters") {
  VariationalModel m = init_model(1, 1.0, 10, 1e-3, 7);
  TrainOptions opt;
  opt.steps = 5;
  opt.batch_size = 3;
  opt.lr0 = 0.0;
  TrainResult r = train(m, tiny_moons(6, 3), opt);
  CHECK(r.model.theta == m.theta);
  CHECK(r.trace.size() == 5);
  for (std::size_t i = 0; i < r.trace.size(); ++i)
    CHECK(r.trace[i].step == static_cast<long>(i + 1));
}

TEST_CASE("zero steps return the initialization") {
  VariationalModel m = init_model(2, 1.0, 10, 1e-3, 11);
  TrainOptions opt;
  opt.steps = 0;
  TrainResult r = train(m, tiny_moons(6, 3), opt);
  CHECK(r.model.theta == m.theta);
  CHECK(r.trace.empty());
}

TEST_CASE("finite-difference gradients are self-consistent") {
  LabeledDataset data = tiny_moons(6, 13);
  Pcg32 rng(73);
  for (int trial = 0; trial < 3; ++trial) {
    VariationalModel m = zero_model(1, 1.0, 10);
    for (double& t : m.theta) t = rng.uniform(-0.5, 0.5);
    auto grad = [&](double h) {
      std::vector<double> g(m.theta.size());
      for (std::size_t k = 0; k < m.theta.size(); ++k) {
        VariationalModel plus = m, minus = m;
        plus.theta[k] += h;
        minus.theta[k] -= h;
        g[k] = (loss(plus, data) - loss(minus, data)) / (2.0 * h);
      }
      return g;
    };
    std::vector<double> g1 = grad(1e-3), g2 = grad(5e-4);
    double diff2 = 0.0, norm2 = 0.0;
    for (std::size_t k = 0; k < g1.size(); ++k) {
      diff2 += (g1[k] - g2[k]) * (g1[k] - g2[k]);
      norm2 += g2[k] * g2[k];
    }
    CHECK(std::sqrt(diff2) < 1e-3 * std::max(std::sqrt(norm2), 1e-9));
  }
}

TEST_CASE("training makes progress on a small problem") {
  VariationalModel m = init_model(2, 1.0, 10, 1e-3, 21);
  TrainOptions opt;
  opt.steps = 40;
  opt.batch_size = 4;
  opt.accuracy_every = 10;
  LabeledDataset data = tiny_moons(8, 17);
  TrainResult r = train(m, data, opt);
  CHECK(r.trace.size() == 40);
  CHECK(r.model.step == 40);
  for (const TraceRow& row : r.trace) {
    CHECK(std::isfinite(row.batch_loss));
    CHECK(row.train_accuracy >= 0.0);
    CHECK(row.train_accuracy <= 1.0);
  }
  CHECK(loss(r.model, data) < loss(m, data));
  // identical rerun is bit-identical
  TrainResult r2 = train(m, data, opt);
  CHECK(r2.model.theta == r.model.theta);
  for (std::size_t i = 0; i < r.trace.size(); ++i)
    CHECK(r2.trace[i].batch_loss == r.trace[i].batch_loss);
}

TEST_CASE("degenerate outcomes are counted, not fatal, in training") {
  VariationalModel m = zero_model(1, 1.0, 10);
  m.outcomes = {{{1, 1}, {3, 1}}};  // odd levels: exactly zero through a trivial circuit
  VariationalEvaluator ev(m);
  CHECK_THROWS_AS(ev.forward({0.3, 0.3}), std::runtime_error);

  TrainOptions opt;
  opt.steps = 2;
  opt.batch_size = 2;
  TrainResult r = train(m, tiny_moons(4, 19), opt);
  CHECK(r.degenerate_samples > 0);
  CHECK(std::isfinite(r.trace.back().batch_loss));
}

TEST_CASE("leakage guard counts unfaithful forwards") {
  VariationalModel m = zero_model(1, 1.0, 8);
  m.theta[2] = 2.0;  // strong displacement on mode 0 pushes past the cutoff
  TrainOptions opt;
  opt.steps = 1;
  opt.batch_size = 4;
  TrainResult r = train(m, tiny_moons(4, 23), opt);
  CHECK(r.guard_violations > 0);
}

TEST_CASE("model validation") {
  VariationalModel m = zero_model(1, 1.0, 10);
  m.outcomes = {{{2, 0}, {2, 0}}};
  CHECK_THROWS_AS(VariationalEvaluator{m}, std::invalid_argument);

  VariationalModel bad_theta = zero_model(2, 1.0, 10);
  bad_theta.theta.pop_back();
  CHECK_THROWS_AS(VariationalEvaluator{bad_theta}, std::invalid_argument);

  VariationalModel bad_outcome = zero_model(1, 1.0, 10);
  bad_outcome.outcomes = {{{2, 0}, {0, 10}}};
  CHECK_THROWS_AS(VariationalEvaluator{bad_outcome}, std::invalid_argument);
}

}  // TEST_SUITE
