#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fockkernel/math_util.hpp"

namespace fockkernel {

enum class KernelFamily {
  delta_basis,
  linear_amplitude,
  polynomial_copies,
  cosine_product,
  squeezing_phase,
  coherent_gaussian,
};

// How a complex overlap becomes a real kernel value. complex keeps the raw
// overlap (Gram stays Hermitian); classifiers require a real choice.
enum class Realification { abs_square, real_part, complex_overlap };

struct KernelSpec {
  KernelFamily family = KernelFamily::squeezing_phase;
  double c = 1.5;             // squeezing_phase only
  int degree = 2;             // polynomial_copies only
  Realification realification = Realification::abs_square;
};

KernelFamily kernel_family_from_string(const std::string& name);
std::string to_string(KernelFamily family);
Realification realification_from_string(const std::string& name);
std::string to_string(Realification real);

// Single-feature squeezed-state overlap:
// sqrt(sech^2 c / (1 - e^{i(yi - xi)} tanh^2 c)), principal square root.
// The radicand has positive real part for every input, so the branch is
// continuous everywhere.
cplx squeezing_overlap_1d(double xi, double yi, double c);

// Coherent-state overlap exp(-|a|^2/2 - |b|^2/2 + conj(a) b).
cplx coherent_overlap(cplx a, cplx b);

// Closed-form kernel with realification applied last (imaginary part is zero
// for abs_square / real_part).
cplx kernel_eval(const KernelSpec& spec, const std::vector<double>& x,
                 const std::vector<double>& y);

struct GramMatrix {
  Eigen::MatrixXcd entries;
  KernelSpec kernel;
  std::vector<std::vector<double>> inputs;

  // Minimum eigenvalue of the (Hermitian) entry matrix.
  double min_eigenvalue() const;
};

GramMatrix gram(const KernelSpec& spec, const std::vector<std::vector<double>>& data);

}  // namespace fockkernel
