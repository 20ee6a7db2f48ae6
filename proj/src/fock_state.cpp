#include "fockkernel/fock_state.hpp"

#include <cmath>
#include <stdexcept>

namespace fockkernel {

namespace {

std::size_t pow_sz(int base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
  return r;
}

}  // namespace

std::size_t flat_index(const FockVector& v, const std::vector<int>& occupation) {
  if (static_cast<int>(occupation.size()) != v.num_modes)
    throw std::invalid_argument("flat_index: occupation arity mismatch");
  std::size_t idx = 0;
  for (int m = 0; m < v.num_modes; ++m) {
    int n = occupation[m];
    if (n < 0 || n >= v.cutoff) throw std::invalid_argument("flat_index: level out of range");
    idx = idx * static_cast<std::size_t>(v.cutoff) + static_cast<std::size_t>(n);
  }
  return idx;
}

FockVector vacuum(int num_modes, int cutoff) {
  if (num_modes < 1) throw std::invalid_argument("vacuum: num_modes must be >= 1");
  if (cutoff < 2) throw std::invalid_argument("vacuum: cutoff must be >= 2");
  FockVector v;
  v.num_modes = num_modes;
  v.cutoff = cutoff;
  v.amplitudes.assign(pow_sz(cutoff, num_modes), cplx(0.0, 0.0));
  v.amplitudes[0] = cplx(1.0, 0.0);
  return v;
}

FockVector squeezed_vacuum(double r, double phi, int cutoff) {
  if (cutoff < 2) throw std::invalid_argument("squeezed_vacuum: cutoff must be >= 2");
  FockVector v;
  v.num_modes = 1;
  v.cutoff = cutoff;
  v.amplitudes.assign(static_cast<std::size_t>(cutoff), cplx(0.0, 0.0));
  double prefactor = 1.0 / std::sqrt(std::cosh(r));
  double t = std::tanh(r);
  cplx base = -std::polar(t, phi);  // -e^{i phi} tanh r
  for (int n = 0; 2 * n < cutoff; ++n) {
    // sqrt((2n)!) / (2^n n!) in the log domain so cutoff 40+ stays finite
    double log_ratio = 0.5 * log_factorial(2 * n) - n * std::log(2.0) - log_factorial(n);
    v.amplitudes[static_cast<std::size_t>(2 * n)] =
        prefactor * std::exp(log_ratio) * std::pow(base, n);
  }
  return v;
}

FockVector coherent(cplx alpha, int cutoff) {
  if (cutoff < 2) throw std::invalid_argument("coherent: cutoff must be >= 2");
  FockVector v;
  v.num_modes = 1;
  v.cutoff = cutoff;
  v.amplitudes.assign(static_cast<std::size_t>(cutoff), cplx(0.0, 0.0));
  double pref = std::exp(-0.5 * std::norm(alpha));
  cplx term(pref, 0.0);  // alpha^n / sqrt(n!) built iteratively
  for (int n = 0; n < cutoff; ++n) {
    v.amplitudes[static_cast<std::size_t>(n)] = term;
    term *= alpha / std::sqrt(static_cast<double>(n + 1));
  }
  return v;
}

FockVector tensor(const FockVector& a, const FockVector& b) {
  if (a.cutoff != b.cutoff) throw std::invalid_argument("tensor: cutoff mismatch");
  FockVector v;
  v.num_modes = a.num_modes + b.num_modes;
  v.cutoff = a.cutoff;
  v.amplitudes.resize(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const cplx ai = a.amplitudes[i];
    const std::size_t off = i * b.dim();
    for (std::size_t j = 0; j < b.dim(); ++j) v.amplitudes[off + j] = ai * b.amplitudes[j];
  }
  return v;
}

cplx inner(const FockVector& a, const FockVector& b) {
  if (a.num_modes != b.num_modes || a.cutoff != b.cutoff)
    throw std::invalid_argument("inner: shape mismatch");
  cplx s(0.0, 0.0);
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a.amplitudes[i]) * b.amplitudes[i];
  return s;
}

double captured_norm(const FockVector& v) {
  double s = 0.0;
  for (const cplx& amp : v.amplitudes) s += std::norm(amp);
  return s;
}

double fock_probability(const FockVector& v, const std::vector<int>& outcome) {
  return std::norm(v.amplitudes[flat_index(v, outcome)]);
}

}  // namespace fockkernel
