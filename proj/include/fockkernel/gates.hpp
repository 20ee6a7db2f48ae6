#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fockkernel/fock_state.hpp"

namespace fockkernel {

// Dense gate on a truncated Fock space. Conventions used throughout:
// x = (a + a^dag)/sqrt(2), p = -i(a - a^dag)/sqrt(2) (hbar = 1).
struct GateOperator {
  int num_modes_acted = 1;
  int cutoff = 2;
  Eigen::MatrixXcd matrix;
  std::string label;

  // max_j |1 - ||column j|||; truncation breaks exact unitarity for D/P/V.
  // Circuits reject gates with defect > 0.05 at their working cutoff.
  double column_norm_defect() const;
};

std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> ladder_matrices(int cutoff);
Eigen::MatrixXcd position_operator(int cutoff);
Eigen::MatrixXcd momentum_operator(int cutoff);

// exp(u (e^{iv} a1^dag a2 - e^{-iv} a1 a2^dag)) on the 2-mode space. The
// generator preserves total photon number, so the truncated exponential is
// exactly unitary.
GateOperator beamsplitter(double u, double v, int cutoff);

// Per-total-photon-number blocks of the same unitary; flat_indices[s] are the
// 2-mode flat indices of sector s in the order matching unitaries[s] rows.
struct BeamsplitterBlocks {
  int cutoff = 2;
  std::vector<std::vector<int>> flat_indices;
  std::vector<Eigen::MatrixXcd> unitaries;
};
BeamsplitterBlocks beamsplitter_blocks(double u, double v, int cutoff);

// exp(z a^dag - conj(z) a), built at cutoff+buffer then cropped. For this
// quadrature convention that equals exp(sqrt(2) i (Im z * x - Re z * p)).
GateOperator displacement(cplx z, int cutoff, int buffer = 10);

// exp(i (u/2) x^2), buffered and cropped.
GateOperator quadratic_phase(double u, int cutoff, int buffer = 10);

// exp(i (u/3) x^3), buffered and cropped. x^3 couples n to n+-3, so the
// buffer matters more here than for D and P.
GateOperator cubic_phase(double u, int cutoff, int buffer = 10);

// Applies the gate on the listed modes (identity on the rest). For a 2-mode
// gate on modes (i, j), the gate's own flat ordering treats i as the slower
// index.
FockVector apply(const GateOperator& gate, const FockVector& state, const std::vector<int>& modes);

namespace detail {

// Cached eigensystem of a Hermitian generator; exp(i s H) = V e^{i s lambda} V^dag.
struct EigenBasis {
  Eigen::MatrixXcd vectors;
  Eigen::VectorXd values;
};

EigenBasis eigensystem(const Eigen::MatrixXcd& hermitian);

// Shared, lazily built bases (thread-safe, keyed by dimension):
//   position_cube_basis: x^3
//   position_square_basis: x^2
//   drift_basis: i(a^dag - a)  (generator of exp(z(a^dag - a))/z for real z)
const EigenBasis& position_cube_basis(int dim);
const EigenBasis& position_square_basis(int dim);
const EigenBasis& drift_basis(int dim);

// Per-sector basis of i(a1^dag a2 - a1 a2^dag) at the given cutoff, plus the
// sector flat indices. v-dependence is a diagonal phase conjugation, so one
// cached basis serves every (u, v).
struct BsBasis {
  std::vector<std::vector<int>> flat_indices;
  std::vector<EigenBasis> sectors;
};
const BsBasis& bs_basis(int cutoff);

}  // namespace detail

}  // namespace fockkernel
