#pragma once

#include <vector>

#include "fockkernel/datasets.hpp"
#include "fockkernel/fock_state.hpp"

namespace fockkernel {

// How complex feature amplitudes become real perceptron inputs. real_part
// keeps only Re (the "real subspace"); concat_real_imag keeps everything by
// stacking Re and Im.
enum class FeatureRealification { real_part, concat_real_imag };

FeatureRealification feature_realification_from_string(const std::string& name);
std::string to_string(FeatureRealification real);

struct FeatureMatrix {
  std::vector<std::vector<double>> rows;
  FeatureRealification realification = FeatureRealification::real_part;
  int cutoff = 2;
  double c = 1.5;
  std::vector<double> captured;  // captured_norm per embedded point
};

// Embeds each input as the tensor product over features of squeezed vacua
// with magnitude c and phase x_i, then realifies the amplitudes. Rows are not
// renormalized. Points whose captured_norm falls below min_captured raise an
// error: the cutoff is too small to represent them faithfully.
FeatureMatrix embed_dataset(const LabeledDataset& data, double c, int cutoff,
                            FeatureRealification realification, double min_captured = 0.99);

struct PerceptronResult {
  std::vector<double> weights;
  double bias = 0.0;
  int epochs_used = 0;       // passes over the data, including the clean one
  long total_updates = 0;    // mistakes, i.e. weight updates
  double final_train_accuracy = 0.0;
  bool converged = false;
};

// Standard perceptron: on each misclassified sample, w += lr*y*phi, b += lr*y.
// Zero init, fixed data order, stops at the first mistake-free epoch.
PerceptronResult perceptron_train(const FeatureMatrix& features, const std::vector<int>& labels,
                                  int max_epochs = 5000, double learning_rate = 1.0);

double perceptron_decision(const PerceptronResult& model, const std::vector<double>& row);

}  // namespace fockkernel
