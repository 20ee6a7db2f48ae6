#include "fockkernel/separability.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

#include "fockkernel/fock_state.hpp"
#include "fockkernel/math_util.hpp"

namespace fockkernel {

namespace {

int svd_rank(const Eigen::MatrixXd& m, double* min_sv = nullptr) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (min_sv) *min_sv = sv.size() ? sv(sv.size() - 1) : 0.0;
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  double thresh = 1e-10 * sv(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > thresh) ++rank;
  return rank;
}

int svd_rank_complex(const Eigen::MatrixXcd& m, double* min_sv = nullptr) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  if (min_sv) *min_sv = sv.size() ? sv(sv.size() - 1) : 0.0;
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  double thresh = 1e-10 * sv(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > thresh) ++rank;
  return rank;
}

}  // namespace

VandermondeReport vandermonde_check(const std::vector<double>& phases, double c) {
  if (phases.empty()) throw std::invalid_argument("vandermonde_check: empty phase list");
  if (c <= 0.0) throw std::invalid_argument("vandermonde_check: c must be positive");
  VandermondeReport rep;
  rep.distinct = true;
  double t = std::tanh(c);
  for (std::size_t i = 0; i < phases.size(); ++i) {
    for (std::size_t j = i + 1; j < phases.size(); ++j) {
      cplx diff = std::polar(1.0, phases[j]) - std::polar(1.0, phases[i]);
      double factor = std::abs(diff) * t;
      rep.pair_products.push_back(factor);
      if (factor <= 1e-12) rep.distinct = false;
    }
  }
  return rep;
}

RankReport design_matrix_rank(const std::vector<std::vector<double>>& points, double c,
                              int cutoff) {
  if (points.empty()) throw std::invalid_argument("design_matrix_rank: no points");
  const int m = static_cast<int>(points.size());
  const std::size_t feat_dim = points[0].size();
  if (feat_dim == 1 && cutoff < 2 * m)
    throw std::invalid_argument(
        "design_matrix_rank: cutoff must be >= 2M for 1-d points (even-level support)");

  std::vector<FockVector> states;
  states.reserve(points.size());
  for (const auto& p : points) {
    if (p.size() != feat_dim) throw std::invalid_argument("design_matrix_rank: ragged points");
    FockVector s = squeezed_vacuum(c, p[0], cutoff);
    for (std::size_t f = 1; f < feat_dim; ++f)
      s = tensor(s, squeezed_vacuum(c, p[f], cutoff));
    if (captured_norm(s) < 0.99)
      throw std::runtime_error("design_matrix_rank: captured norm below 0.99; raise the cutoff");
    states.push_back(std::move(s));
  }

  Eigen::MatrixXcd design(m, static_cast<Eigen::Index>(states[0].dim()));
  for (int r = 0; r < m; ++r)
    for (std::size_t k = 0; k < states[static_cast<std::size_t>(r)].dim(); ++k)
      design(r, static_cast<Eigen::Index>(k)) =
          states[static_cast<std::size_t>(r)].amplitudes[k];

  RankReport rep;
  rep.m = m;
  rep.cutoff = cutoff;
  rep.c = c;
  rep.rank = svd_rank_complex(design, &rep.min_singular_value);
  rep.independent = rep.rank == m;
  return rep;
}

bool separability_feasible(const FeatureMatrix& features, const std::vector<int>& labels) {
  if (features.rows.size() != labels.size())
    throw std::invalid_argument("separability_feasible: label count mismatch");
  const Eigen::Index m = static_cast<Eigen::Index>(features.rows.size());
  const Eigen::Index d = static_cast<Eigen::Index>(features.rows[0].size());

  Eigen::MatrixXd coeff(m, d + 1);
  Eigen::MatrixXd augmented(m, d + 2);
  for (Eigen::Index r = 0; r < m; ++r) {
    for (Eigen::Index k = 0; k < d; ++k) {
      coeff(r, k) = features.rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)];
      augmented(r, k) = coeff(r, k);
    }
    coeff(r, d) = 1.0;
    augmented(r, d) = 1.0;
    int y = labels[static_cast<std::size_t>(r)];
    augmented(r, d + 1) = y == 0 ? -1.0 : static_cast<double>(y);
  }
  return svd_rank(coeff) == svd_rank(augmented);
}

}  // namespace fockkernel
