#pragma once

#include <complex>
#include <vector>

#include "fockkernel/math_util.hpp"

namespace fockkernel {

// State of num_modes bosonic modes on Fock levels 0..cutoff-1 per mode.
// Flat index is row-major with mode 0 slowest: (n0, n1, ...) ->
// ((n0*cutoff + n1)*cutoff + ...). Truncation loses norm; states are never
// renormalized here, callers inspect captured_norm instead.
struct FockVector {
  int num_modes = 1;
  int cutoff = 2;
  std::vector<cplx> amplitudes;

  std::size_t dim() const { return amplitudes.size(); }
};

std::size_t flat_index(const FockVector& v, const std::vector<int>& occupation);

FockVector vacuum(int num_modes, int cutoff);

// Squeezed vacuum with magnitude r and phase phi: even level 2n carries
// (1/sqrt(cosh r)) * (sqrt((2n)!)/(2^n n!)) * (-e^{i phi} tanh r)^n,
// odd levels are exactly zero.
FockVector squeezed_vacuum(double r, double phi, int cutoff);

// Coherent state: amplitude[n] = e^{-|alpha|^2/2} alpha^n / sqrt(n!).
FockVector coherent(cplx alpha, int cutoff);

FockVector tensor(const FockVector& a, const FockVector& b);

cplx inner(const FockVector& a, const FockVector& b);

double captured_norm(const FockVector& v);

double fock_probability(const FockVector& v, const std::vector<int>& outcome);

}  // namespace fockkernel
