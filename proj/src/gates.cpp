#include "fockkernel/gates.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace fockkernel {

namespace {

Eigen::MatrixXcd crop(const Eigen::MatrixXcd& m, int cutoff) {
  return m.topLeftCorner(cutoff, cutoff);
}

std::string fmt_params(std::initializer_list<double> vals) {
  std::ostringstream os;
  os.precision(12);
  bool first = true;
  for (double v : vals) {
    if (!first) os << ",";
    os << v;
    first = false;
  }
  return os.str();
}

}  // namespace

double GateOperator::column_norm_defect() const {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < matrix.cols(); ++j)
    worst = std::max(worst, std::abs(1.0 - matrix.col(j).norm()));
  return worst;
}

std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> ladder_matrices(int cutoff) {
  if (cutoff < 2) throw std::invalid_argument("ladder_matrices: cutoff must be >= 2");
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return {a, a.adjoint()};
}

Eigen::MatrixXcd position_operator(int cutoff) {
  auto [a, ad] = ladder_matrices(cutoff);
  return (a + ad) / std::sqrt(2.0);
}

Eigen::MatrixXcd momentum_operator(int cutoff) {
  auto [a, ad] = ladder_matrices(cutoff);
  return cplx(0.0, -1.0) * (a - ad) / std::sqrt(2.0);
}

namespace detail {

EigenBasis eigensystem(const Eigen::MatrixXcd& hermitian) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigensystem: solver did not converge");
  return {solver.eigenvectors(), solver.eigenvalues()};
}

namespace {

template <typename MakeFn>
const EigenBasis& cached_basis(std::map<int, EigenBasis>& cache, std::mutex& mu, int dim,
                               MakeFn make) {
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(dim);
  if (it == cache.end()) it = cache.emplace(dim, make(dim)).first;
  return it->second;
}

}  // namespace

const EigenBasis& position_cube_basis(int dim) {
  static std::mutex mu;
  static std::map<int, EigenBasis> cache;
  return cached_basis(cache, mu, dim, [](int d) {
    Eigen::MatrixXcd x = position_operator(d);
    return eigensystem((x * x * x).eval());
  });
}

const EigenBasis& position_square_basis(int dim) {
  static std::mutex mu;
  static std::map<int, EigenBasis> cache;
  return cached_basis(cache, mu, dim, [](int d) {
    Eigen::MatrixXcd x = position_operator(d);
    return eigensystem((x * x).eval());
  });
}

const EigenBasis& drift_basis(int dim) {
  static std::mutex mu;
  static std::map<int, EigenBasis> cache;
  return cached_basis(cache, mu, dim, [](int d) {
    auto [a, ad] = ladder_matrices(d);
    return eigensystem((cplx(0.0, 1.0) * (ad - a)).eval());
  });
}

const BsBasis& bs_basis(int cutoff) {
  static std::mutex mu;
  static std::map<int, BsBasis> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(cutoff);
  if (it != cache.end()) return it->second;

  BsBasis basis;
  for (int total = 0; total <= 2 * (cutoff - 1); ++total) {
    int n1_lo = std::max(0, total - (cutoff - 1));
    int n1_hi = std::min(total, cutoff - 1);
    int dim = n1_hi - n1_lo + 1;
    std::vector<int> idx(dim);
    for (int p = 0; p < dim; ++p) idx[p] = (n1_lo + p) * cutoff + (total - (n1_lo + p));
    // H = i(a1^dag a2 - a1 a2^dag) restricted to the sector: tridiagonal
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (int p = 0; p + 1 < dim; ++p) {
      int n1 = n1_lo + p;
      int n2 = total - n1;
      double amp = std::sqrt(static_cast<double>(n1 + 1) * static_cast<double>(n2));
      h(p + 1, p) = cplx(0.0, amp);
      h(p, p + 1) = cplx(0.0, -amp);
    }
    basis.flat_indices.push_back(std::move(idx));
    basis.sectors.push_back(eigensystem(h));
  }
  it = cache.emplace(cutoff, std::move(basis)).first;
  return it->second;
}

}  // namespace detail

BeamsplitterBlocks beamsplitter_blocks(double u, double v, int cutoff) {
  if (cutoff < 2) throw std::invalid_argument("beamsplitter_blocks: cutoff must be >= 2");
  const detail::BsBasis& basis = detail::bs_basis(cutoff);
  BeamsplitterBlocks blocks;
  blocks.cutoff = cutoff;
  blocks.flat_indices = basis.flat_indices;
  blocks.unitaries.reserve(basis.sectors.size());
  for (std::size_t s = 0; s < basis.sectors.size(); ++s) {
    const detail::EigenBasis& eb = basis.sectors[s];
    int dim = static_cast<int>(eb.values.size());
    // exp(u A(v)) = R V e^{-i u lambda} V^dag R^dag with R = diag(e^{i v n1})
    Eigen::VectorXcd phase(dim);
    for (int p = 0; p < dim; ++p) phase(p) = std::exp(cplx(0.0, -u * eb.values(p)));
    Eigen::MatrixXcd core = eb.vectors * phase.asDiagonal() * eb.vectors.adjoint();
    if (v != 0.0) {
      Eigen::VectorXcd rot(dim);
      for (int p = 0; p < dim; ++p) {
        int n1 = blocks.flat_indices[s][p] / cutoff;
        rot(p) = std::polar(1.0, v * n1);
      }
      core = rot.asDiagonal() * core * rot.conjugate().asDiagonal();
    }
    blocks.unitaries.push_back(std::move(core));
  }
  return blocks;
}

GateOperator beamsplitter(double u, double v, int cutoff) {
  BeamsplitterBlocks blocks = beamsplitter_blocks(u, v, cutoff);
  GateOperator g;
  g.num_modes_acted = 2;
  g.cutoff = cutoff;
  g.label = "BS(" + fmt_params({u, v}) + ")";
  std::size_t d2 = static_cast<std::size_t>(cutoff) * cutoff;
  g.matrix = Eigen::MatrixXcd::Zero(d2, d2);
  for (std::size_t s = 0; s < blocks.unitaries.size(); ++s) {
    const auto& idx = blocks.flat_indices[s];
    const auto& us = blocks.unitaries[s];
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t c = 0; c < idx.size(); ++c) g.matrix(idx[r], idx[c]) = us(r, c);
  }
  return g;
}

GateOperator displacement(cplx z, int cutoff, int buffer) {
  if (cutoff < 2) throw std::invalid_argument("displacement: cutoff must be >= 2");
  int dim = cutoff + buffer;
  auto [a, ad] = ladder_matrices(dim);
  // exp(z a^dag - conj(z) a) = exp(-i H), H = i(z a^dag - conj(z) a)
  Eigen::MatrixXcd h = cplx(0.0, 1.0) * (z * ad - std::conj(z) * a);
  detail::EigenBasis eb = detail::eigensystem(h);
  Eigen::VectorXcd phase(dim);
  for (int p = 0; p < dim; ++p) phase(p) = std::exp(cplx(0.0, -eb.values(p)));
  GateOperator g;
  g.num_modes_acted = 1;
  g.cutoff = cutoff;
  g.label = "D(" + fmt_params({z.real(), z.imag()}) + ")";
  g.matrix = crop(eb.vectors * phase.asDiagonal() * eb.vectors.adjoint(), cutoff);
  return g;
}

GateOperator quadratic_phase(double u, int cutoff, int buffer) {
  if (cutoff < 2) throw std::invalid_argument("quadratic_phase: cutoff must be >= 2");
  int dim = cutoff + buffer;
  const detail::EigenBasis& eb = detail::position_square_basis(dim);
  Eigen::VectorXcd phase(dim);
  for (int p = 0; p < dim; ++p) phase(p) = std::exp(cplx(0.0, 0.5 * u * eb.values(p)));
  GateOperator g;
  g.num_modes_acted = 1;
  g.cutoff = cutoff;
  g.label = "P(" + fmt_params({u}) + ")";
  g.matrix = crop(eb.vectors * phase.asDiagonal() * eb.vectors.adjoint(), cutoff);
  return g;
}

GateOperator cubic_phase(double u, int cutoff, int buffer) {
  if (cutoff < 2) throw std::invalid_argument("cubic_phase: cutoff must be >= 2");
  int dim = cutoff + buffer;
  const detail::EigenBasis& eb = detail::position_cube_basis(dim);
  Eigen::VectorXcd phase(dim);
  for (int p = 0; p < dim; ++p) phase(p) = std::exp(cplx(0.0, u * eb.values(p) / 3.0));
  GateOperator g;
  g.num_modes_acted = 1;
  g.cutoff = cutoff;
  g.label = "V(" + fmt_params({u}) + ")";
  g.matrix = crop(eb.vectors * phase.asDiagonal() * eb.vectors.adjoint(), cutoff);
  return g;
}

FockVector apply(const GateOperator& gate, const FockVector& state, const std::vector<int>& modes) {
  if (gate.cutoff != state.cutoff) throw std::invalid_argument("apply: cutoff mismatch");
  if (static_cast<int>(modes.size()) != gate.num_modes_acted)
    throw std::invalid_argument("apply: mode count does not match gate arity");
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (modes[i] < 0 || modes[i] >= state.num_modes)
      throw std::invalid_argument("apply: mode index out of range");
    for (std::size_t j = i + 1; j < modes.size(); ++j)
      if (modes[i] == modes[j]) throw std::invalid_argument("apply: modes must be distinct");
  }

  const int d = state.cutoff;
  const int nm = state.num_modes;
  const int arity = gate.num_modes_acted;

  std::vector<std::size_t> stride(nm);
  {
    std::size_t s = 1;
    for (int m = nm - 1; m >= 0; --m) {
      stride[m] = s;
      s *= static_cast<std::size_t>(d);
    }
  }

  std::vector<int> rest;
  for (int m = 0; m < nm; ++m)
    if (std::find(modes.begin(), modes.end(), m) == modes.end()) rest.push_back(m);

  // local offset for each gate-basis index (modes[0] is the slower digit)
  std::size_t local_dim = 1;
  for (int i = 0; i < arity; ++i) local_dim *= static_cast<std::size_t>(d);
  std::vector<std::size_t> local_off(local_dim, 0);
  for (std::size_t l = 0; l < local_dim; ++l) {
    std::size_t rem = l;
    for (int i = arity - 1; i >= 0; --i) {
      local_off[l] += (rem % d) * stride[modes[static_cast<std::size_t>(i)]];
      rem /= d;
    }
  }

  FockVector out = state;
  std::size_t rest_count = state.dim() / local_dim;
  Eigen::VectorXcd gathered(static_cast<Eigen::Index>(local_dim));
  for (std::size_t r = 0; r < rest_count; ++r) {
    std::size_t base = 0;
    std::size_t rem = r;
    for (int i = static_cast<int>(rest.size()) - 1; i >= 0; --i) {
      base += (rem % d) * stride[rest[static_cast<std::size_t>(i)]];
      rem /= d;
    }
    for (std::size_t l = 0; l < local_dim; ++l)
      gathered(static_cast<Eigen::Index>(l)) = state.amplitudes[base + local_off[l]];
    Eigen::VectorXcd transformed = gate.matrix * gathered;
    for (std::size_t l = 0; l < local_dim; ++l)
      out.amplitudes[base + local_off[l]] = transformed(static_cast<Eigen::Index>(l));
  }
  return out;
}

}  // namespace fockkernel
