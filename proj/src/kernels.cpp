#include "fockkernel/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "fockkernel/thread_pool.hpp"

namespace fockkernel {

KernelFamily kernel_family_from_string(const std::string& name) {
  if (name == "delta_basis") return KernelFamily::delta_basis;
  if (name == "linear_amplitude") return KernelFamily::linear_amplitude;
  if (name == "polynomial_copies") return KernelFamily::polynomial_copies;
  if (name == "cosine_product") return KernelFamily::cosine_product;
  if (name == "squeezing_phase") return KernelFamily::squeezing_phase;
  if (name == "coherent_gaussian") return KernelFamily::coherent_gaussian;
  throw std::invalid_argument("unknown kernel family: " + name);
}

std::string to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::delta_basis: return "delta_basis";
    case KernelFamily::linear_amplitude: return "linear_amplitude";
    case KernelFamily::polynomial_copies: return "polynomial_copies";
    case KernelFamily::cosine_product: return "cosine_product";
    case KernelFamily::squeezing_phase: return "squeezing_phase";
    case KernelFamily::coherent_gaussian: return "coherent_gaussian";
  }
  throw std::invalid_argument("unknown kernel family tag");
}

Realification realification_from_string(const std::string& name) {
  if (name == "abs_square") return Realification::abs_square;
  if (name == "real_part") return Realification::real_part;
  if (name == "complex") return Realification::complex_overlap;
  throw std::invalid_argument("unknown realification: " + name);
}

std::string to_string(Realification real) {
  switch (real) {
    case Realification::abs_square: return "abs_square";
    case Realification::real_part: return "real_part";
    case Realification::complex_overlap: return "complex";
  }
  throw std::invalid_argument("unknown realification tag");
}

cplx squeezing_overlap_1d(double xi, double yi, double c) {
  if (c < 0.0) throw std::invalid_argument("squeezing_overlap_1d: c must be >= 0");
  double t = std::tanh(c);
  double sech = 1.0 / std::cosh(c);
  cplx radicand = (sech * sech) / (1.0 - std::polar(t * t, yi - xi));
  return std::sqrt(radicand);
}

cplx coherent_overlap(cplx a, cplx b) {
  return std::exp(-0.5 * std::norm(a) - 0.5 * std::norm(b) + std::conj(a) * b);
}

namespace {

cplx raw_overlap(const KernelSpec& spec, const std::vector<double>& x,
                 const std::vector<double>& y) {
  switch (spec.family) {
    case KernelFamily::delta_basis: {
      for (std::size_t i = 0; i < x.size(); ++i)
        if ((x[i] != 0.0 && x[i] != 1.0) || (y[i] != 0.0 && y[i] != 1.0))
          throw std::invalid_argument("delta_basis: inputs must be exactly 0 or 1");
      return x == y ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
    }
    case KernelFamily::linear_amplitude: {
      double dot = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * y[i];
      return cplx(dot, 0.0);
    }
    case KernelFamily::polynomial_copies: {
      double dot = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * y[i];
      return cplx(std::pow(dot, spec.degree), 0.0);
    }
    case KernelFamily::cosine_product: {
      double prod = 1.0;
      for (std::size_t i = 0; i < x.size(); ++i) prod *= std::cos(x[i] - y[i]);
      return cplx(prod, 0.0);
    }
    case KernelFamily::squeezing_phase: {
      cplx prod(1.0, 0.0);
      for (std::size_t i = 0; i < x.size(); ++i) prod *= squeezing_overlap_1d(x[i], y[i], spec.c);
      return prod;
    }
    case KernelFamily::coherent_gaussian: {
      // per-feature real displacement alpha_i = x_i
      cplx prod(1.0, 0.0);
      for (std::size_t i = 0; i < x.size(); ++i)
        prod *= coherent_overlap(cplx(x[i], 0.0), cplx(y[i], 0.0));
      return prod;
    }
  }
  throw std::invalid_argument("unknown kernel family tag");
}

}  // namespace

cplx kernel_eval(const KernelSpec& spec, const std::vector<double>& x,
                 const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("kernel_eval: dimension mismatch");
  if (x.empty()) throw std::invalid_argument("kernel_eval: empty inputs");
  cplx overlap = raw_overlap(spec, x, y);
  switch (spec.realification) {
    case Realification::abs_square: return cplx(std::norm(overlap), 0.0);
    case Realification::real_part: return cplx(overlap.real(), 0.0);
    case Realification::complex_overlap: return overlap;
  }
  throw std::invalid_argument("unknown realification tag");
}

double GramMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries,
                                                         Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

GramMatrix gram(const KernelSpec& spec, const std::vector<std::vector<double>>& data) {
  if (data.empty()) throw std::invalid_argument("gram: empty data");
  const std::size_t m = data.size();
  for (const auto& row : data)
    if (row.size() != data[0].size()) throw std::invalid_argument("gram: ragged data");

  GramMatrix g;
  g.kernel = spec;
  g.inputs = data;
  g.entries.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  // upper triangle computed, lower mirrored with a conjugate
  parallel_for(m, [&](std::size_t i) {
    for (std::size_t j = i; j < m; ++j)
      g.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          kernel_eval(spec, data[i], data[j]);
  });
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < i; ++j)
      g.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          std::conj(g.entries(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)));
  return g;
}

}  // namespace fockkernel
