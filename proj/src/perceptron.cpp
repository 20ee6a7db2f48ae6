#include "fockkernel/perceptron.hpp"

#include <cmath>
#include <stdexcept>

#include "fockkernel/thread_pool.hpp"

namespace fockkernel {

FeatureRealification feature_realification_from_string(const std::string& name) {
  if (name == "real_part") return FeatureRealification::real_part;
  if (name == "concat_real_imag") return FeatureRealification::concat_real_imag;
  throw std::invalid_argument("unknown feature realification: " + name);
}

std::string to_string(FeatureRealification real) {
  return real == FeatureRealification::real_part ? "real_part" : "concat_real_imag";
}

FeatureMatrix embed_dataset(const LabeledDataset& data, double c, int cutoff,
                            FeatureRealification realification, double min_captured) {
  if (data.size() == 0) throw std::invalid_argument("embed_dataset: empty data");
  FeatureMatrix fm;
  fm.realification = realification;
  fm.cutoff = cutoff;
  fm.c = c;
  fm.rows.resize(data.size());
  fm.captured.resize(data.size());

  parallel_for(data.size(), [&](std::size_t m) {
    FockVector state = squeezed_vacuum(c, data.inputs[m][0], cutoff);
    for (std::size_t f = 1; f < data.inputs[m].size(); ++f)
      state = tensor(state, squeezed_vacuum(c, data.inputs[m][f], cutoff));
    fm.captured[m] = captured_norm(state);
    std::vector<double>& row = fm.rows[m];
    if (realification == FeatureRealification::real_part) {
      row.resize(state.dim());
      for (std::size_t i = 0; i < state.dim(); ++i) row[i] = state.amplitudes[i].real();
    } else {
      row.resize(2 * state.dim());
      for (std::size_t i = 0; i < state.dim(); ++i) {
        row[i] = state.amplitudes[i].real();
        row[state.dim() + i] = state.amplitudes[i].imag();
      }
    }
  });

  for (std::size_t m = 0; m < data.size(); ++m) {
    if (fm.captured[m] < min_captured)
      throw std::runtime_error("embed_dataset: captured norm " + std::to_string(fm.captured[m]) +
                               " below " + std::to_string(min_captured) +
                               "; cutoff too small for this c");
  }
  return fm;
}

PerceptronResult perceptron_train(const FeatureMatrix& features, const std::vector<int>& labels,
                                  int max_epochs, double learning_rate) {
  if (max_epochs < 1) throw std::invalid_argument("perceptron_train: max_epochs must be >= 1");
  if (features.rows.size() != labels.size())
    throw std::invalid_argument("perceptron_train: label count mismatch");

  const std::size_t m = features.rows.size();
  const std::size_t dim = features.rows[0].size();
  PerceptronResult r;
  r.weights.assign(dim, 0.0);

  for (int epoch = 1; epoch <= max_epochs; ++epoch) {
    std::size_t mistakes = 0;
    for (std::size_t s = 0; s < m; ++s) {
      const std::vector<double>& row = features.rows[s];
      double y = labels[s] == 0 ? -1.0 : static_cast<double>(labels[s]);
      double margin = r.bias;
      for (std::size_t i = 0; i < dim; ++i) margin += r.weights[i] * row[i];
      if (y * margin <= 0.0) {
        for (std::size_t i = 0; i < dim; ++i) r.weights[i] += learning_rate * y * row[i];
        r.bias += learning_rate * y;
        ++mistakes;
      }
    }
    r.total_updates += static_cast<long>(mistakes);
    r.epochs_used = epoch;
    if (mistakes == 0) {
      r.converged = true;
      break;
    }
  }

  std::size_t hits = 0;
  for (std::size_t s = 0; s < m; ++s) {
    double y = labels[s] == 0 ? -1.0 : static_cast<double>(labels[s]);
    double margin = perceptron_decision(r, features.rows[s]);
    if ((margin > 0.0 ? 1.0 : -1.0) == y) ++hits;
  }
  r.final_train_accuracy = static_cast<double>(hits) / static_cast<double>(m);
  return r;
}

double perceptron_decision(const PerceptronResult& model, const std::vector<double>& row) {
  if (row.size() != model.weights.size())
    throw std::invalid_argument("perceptron_decision: dimension mismatch");
  double margin = model.bias;
  for (std::size_t i = 0; i < row.size(); ++i) margin += model.weights[i] * row[i];
  return margin;
}

}  // namespace fockkernel
