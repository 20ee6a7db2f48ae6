#pragma once

#include <vector>

#include "fockkernel/perceptron.hpp"

namespace fockkernel {

struct RankReport {
  int m = 0;
  int cutoff = 2;
  double c = 0.0;
  int rank = 0;
  double min_singular_value = 0.0;
  bool independent = false;
};

struct VandermondeReport {
  bool distinct = false;              // all pairwise factors above 1e-12
  std::vector<double> pair_products;  // |e^{i phi_j} - e^{i phi_i}| * tanh c per pair (i < j)
};

// Determinant-factor check for linear independence of squeezed states with
// common magnitude c and the given phases: the determinant of the pairwise
// structure vanishes exactly when two phases coincide mod 2pi.
VandermondeReport vandermonde_check(const std::vector<double>& phases, double c);

// Numerical rank of the M x D complex matrix of embedded feature amplitudes,
// singular values thresholded at 1e-10 * sigma_max. For 1-d points, cutoff
// must be at least 2M (even levels need room); every embedded point must keep
// captured norm >= 0.99.
RankReport design_matrix_rank(const std::vector<std::vector<double>>& points, double c, int cutoff);

// True iff exact affine interpolation of the labels is solvable:
// rank([X|1]) == rank([X|1|y]). A stronger condition than sign separability.
bool separability_feasible(const FeatureMatrix& features, const std::vector<int>& labels);

}  // namespace fockkernel
