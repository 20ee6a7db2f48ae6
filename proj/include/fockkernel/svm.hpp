#pragma once

#include <vector>

#include "fockkernel/datasets.hpp"
#include "fockkernel/kernels.hpp"

namespace fockkernel {

// Soft-margin C-SVM in representer form: f(x) = sum_m a_m k(x, x_m) + b with
// a_m signed by label. Trained by SMO on the (clipped) Gram matrix.
struct SvmModel {
  std::vector<int> support_indices;
  std::vector<double> alphas;  // signed: y_m * alpha_m
  double bias = 0.0;
  KernelSpec kernel;
  std::vector<std::vector<double>> support_vectors;
  double C = 1.0;
  double tol = 1e-3;
  // training record
  long iterations = 0;
  bool converged = false;
  bool gram_clipped = false;
  double gram_min_eigenvalue = 0.0;
};

// Maximal-violating-pair SMO. Labels may be {-1,+1} or {0,1} (0 maps to -1).
// If the Gram matrix has an eigenvalue below -1e-6*M the spectrum is clipped
// at zero and the model records it. objective_trace, when given, receives the
// dual objective after every update (non-decreasing at convergence scale).
SvmModel svm_train(const LabeledDataset& data, const KernelSpec& spec, double C = 1.0,
                   double tol = 1e-3, std::vector<double>* objective_trace = nullptr);

double svm_decision(const SvmModel& model, const std::vector<double>& x);

// sign of the decision value; an exact 0 goes to +1
int svm_predict(const SvmModel& model, const std::vector<double>& x);

double svm_accuracy(const SvmModel& model, const LabeledDataset& data);

}  // namespace fockkernel
