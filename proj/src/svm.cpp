#include "fockkernel/svm.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fockkernel {

namespace {

constexpr long kMaxIterations = 2000000;

std::vector<int> ingest_labels(const std::vector<int>& raw) {
  std::vector<int> y(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == 1)
      y[i] = 1;
    else if (raw[i] == -1 || raw[i] == 0)
      y[i] = -1;
    else
      throw std::invalid_argument("svm_train: labels must be in {-1,+1} or {0,1}");
  }
  return y;
}

}  // namespace

SvmModel svm_train(const LabeledDataset& data, const KernelSpec& spec, double C, double tol,
                   std::vector<double>* objective_trace) {
  const std::size_t m = data.size();
  if (m < 2) throw std::invalid_argument("svm_train: need at least two samples");
  if (C <= 0.0) throw std::invalid_argument("svm_train: C must be positive");
  if (spec.realification == Realification::complex_overlap)
    throw std::invalid_argument("svm_train: kernel must be realified (abs_square or real_part)");

  std::vector<int> y = ingest_labels(data.labels);
  bool has_pos = false, has_neg = false;
  for (int yi : y) (yi > 0 ? has_pos : has_neg) = true;
  if (!has_pos || !has_neg) throw std::invalid_argument("svm_train: both classes required");

  SvmModel model;
  model.kernel = spec;
  model.C = C;
  model.tol = tol;

  Eigen::MatrixXd k = gram(spec, data.inputs).entries.real();
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k);
    model.gram_min_eigenvalue = es.eigenvalues().minCoeff();
    if (model.gram_min_eigenvalue < -1e-6 * static_cast<double>(m)) {
      // clip the spectrum at zero and train on the repaired matrix
      model.gram_clipped = true;
      Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
      k = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
    }
  }

  std::vector<double> alpha(m, 0.0);
  std::vector<double> grad(m, -1.0);  // G = Q alpha - 1

  auto in_up = [&](std::size_t t) {
    return (y[t] > 0 && alpha[t] < C) || (y[t] < 0 && alpha[t] > 0.0);
  };
  auto in_low = [&](std::size_t t) {
    return (y[t] > 0 && alpha[t] > 0.0) || (y[t] < 0 && alpha[t] < C);
  };

  long iter = 0;
  for (; iter < kMaxIterations; ++iter) {
    double up_best = -std::numeric_limits<double>::infinity();
    double low_best = std::numeric_limits<double>::infinity();
    std::ptrdiff_t i = -1, j = -1;
    for (std::size_t t = 0; t < m; ++t) {
      double v = -y[t] * grad[t];
      if (in_up(t) && v > up_best) {
        up_best = v;
        i = static_cast<std::ptrdiff_t>(t);
      }
      if (in_low(t) && v < low_best) {
        low_best = v;
        j = static_cast<std::ptrdiff_t>(t);
      }
    }
    if (i < 0 || j < 0 || up_best - low_best <= tol) {
      model.converged = (i >= 0 && j >= 0);
      break;
    }

    const std::size_t si = static_cast<std::size_t>(i), sj = static_cast<std::size_t>(j);
    double eta = k(i, i) + k(j, j) - 2.0 * k(i, j);
    if (eta <= 0.0) eta = 1e-12;
    // step d moves alpha_i by +y_i d and alpha_j by -y_j d (keeps sum y.alpha)
    double d = (up_best - low_best) / eta;
    d = std::min(d, y[si] > 0 ? C - alpha[si] : alpha[si]);
    d = std::min(d, y[sj] > 0 ? alpha[sj] : C - alpha[sj]);

    alpha[si] += y[si] * d;
    alpha[sj] -= y[sj] * d;
    for (std::size_t t = 0; t < m; ++t) grad[t] += y[t] * d * (k(t, i) - k(t, j));

    if (objective_trace) {
      double obj = 0.0;
      for (std::size_t t = 0; t < m; ++t) obj += 0.5 * alpha[t] * (1.0 - grad[t]);
      objective_trace->push_back(obj);
    }
  }
  model.iterations = iter;

  // bias from free support vectors, else midpoint of the KKT interval
  double free_sum = 0.0;
  int free_count = 0;
  for (std::size_t t = 0; t < m; ++t) {
    if (alpha[t] > 1e-12 && alpha[t] < C - 1e-12) {
      free_sum += -y[t] * grad[t];
      ++free_count;
    }
  }
  if (free_count > 0) {
    model.bias = free_sum / free_count;
  } else {
    double up_best = -std::numeric_limits<double>::infinity();
    double low_best = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < m; ++t) {
      double v = -y[t] * grad[t];
      if (in_up(t)) up_best = std::max(up_best, v);
      if (in_low(t)) low_best = std::min(low_best, v);
    }
    model.bias = (up_best + low_best) / 2.0;
  }

  for (std::size_t t = 0; t < m; ++t) {
    if (alpha[t] > 1e-12) {
      model.support_indices.push_back(static_cast<int>(t));
      model.alphas.push_back(y[t] * alpha[t]);
      model.support_vectors.push_back(data.inputs[t]);
    }
  }
  return model;
}

double svm_decision(const SvmModel& model, const std::vector<double>& x) {
  if (!model.support_vectors.empty() && x.size() != model.support_vectors[0].size())
    throw std::invalid_argument("svm_decision: dimension mismatch");
  double f = model.bias;
  for (std::size_t s = 0; s < model.support_vectors.size(); ++s)
    f += model.alphas[s] * kernel_eval(model.kernel, x, model.support_vectors[s]).real();
  return f;
}

int svm_predict(const SvmModel& model, const std::vector<double>& x) {
  return svm_decision(model, x) >= 0.0 ? 1 : -1;
}

double svm_accuracy(const SvmModel& model, const LabeledDataset& data) {
  if (data.size() == 0) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    int truth = data.labels[i] == 0 ? -1 : data.labels[i];
    if (svm_predict(model, data.inputs[i]) == truth) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(data.size());
}

}  // namespace fockkernel
