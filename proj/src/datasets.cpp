#include "fockkernel/datasets.hpp"

#include <cmath>
#include <stdexcept>

#include "fockkernel/math_util.hpp"
#include "fockkernel/pcg32.hpp"
#include "fockkernel/thread_pool.hpp"

namespace fockkernel {

LabeledDataset LabeledDataset::split(bool test) const {
  LabeledDataset out;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if ((is_test[i] != 0) != test) continue;
    out.inputs.push_back(inputs[i]);
    out.labels.push_back(labels[i]);
    out.is_test.push_back(is_test[i]);
  }
  return out;
}

DatasetFamily dataset_family_from_string(const std::string& name) {
  if (name == "moons") return DatasetFamily::moons;
  if (name == "circles") return DatasetFamily::circles;
  if (name == "blobs") return DatasetFamily::blobs;
  throw std::invalid_argument("unknown dataset family: " + name);
}

std::string to_string(DatasetFamily family) {
  switch (family) {
    case DatasetFamily::moons: return "moons";
    case DatasetFamily::circles: return "circles";
    case DatasetFamily::blobs: return "blobs";
  }
  throw std::invalid_argument("unknown dataset family tag");
}

double resolved_noise(const DatasetSpec& spec) {
  if (spec.noise >= 0.0) return spec.noise;
  return spec.family == DatasetFamily::blobs ? 0.15 : 0.1;
}

namespace {

void standardize(std::vector<std::vector<double>>& points) {
  if (points.empty()) return;
  std::size_t dim = points[0].size();
  for (std::size_t f = 0; f < dim; ++f) {
    double lo = points[0][f], hi = points[0][f];
    for (const auto& p : points) {
      lo = std::min(lo, p[f]);
      hi = std::max(hi, p[f]);
    }
    double range = hi - lo;
    for (auto& p : points) p[f] = range == 0.0 ? 0.0 : -1.0 + 2.0 * (p[f] - lo) / range;
  }
}

}  // namespace

LabeledDataset generate(const DatasetSpec& spec) {
  if (spec.n_train < 1 || spec.n_test < 0)
    throw std::invalid_argument("generate: counts must be positive");
  int total = spec.n_train + spec.n_test;
  double noise = resolved_noise(spec);
  Pcg32 rng(spec.seed);

  std::vector<std::vector<double>> points;
  std::vector<int> labels;
  points.reserve(total);
  labels.reserve(total);

  int n_first = (total + 1) / 2;  // class -1 takes the odd extra
  int n_second = total - n_first;

  switch (spec.family) {
    case DatasetFamily::moons: {
      for (int k = 0; k < n_first; ++k) {
        double t = n_first == 1 ? 0.0 : kPi * k / (n_first - 1);
        points.push_back({std::cos(t) + noise * rng.normal(), std::sin(t) + noise * rng.normal()});
        labels.push_back(-1);
      }
      for (int k = 0; k < n_second; ++k) {
        double t = n_second == 1 ? 0.0 : kPi * k / (n_second - 1);
        points.push_back(
            {1.0 - std::cos(t) + noise * rng.normal(), 0.5 - std::sin(t) + noise * rng.normal()});
        labels.push_back(+1);
      }
      break;
    }
    case DatasetFamily::circles: {
      for (int k = 0; k < n_first; ++k) {
        double t = 2.0 * kPi * k / n_first;
        points.push_back({std::cos(t) + noise * rng.normal(), std::sin(t) + noise * rng.normal()});
        labels.push_back(-1);
      }
      for (int k = 0; k < n_second; ++k) {
        double t = 2.0 * kPi * k / n_second;
        points.push_back(
            {0.5 * std::cos(t) + noise * rng.normal(), 0.5 * std::sin(t) + noise * rng.normal()});
        labels.push_back(+1);
      }
      break;
    }
    case DatasetFamily::blobs: {
      // two centers in [-1,1]^2 at least 1.0 apart, then isotropic noise
      double c1x, c1y, c2x, c2y;
      do {
        c1x = rng.uniform(-1.0, 1.0);
        c1y = rng.uniform(-1.0, 1.0);
        c2x = rng.uniform(-1.0, 1.0);
        c2y = rng.uniform(-1.0, 1.0);
      } while (std::hypot(c2x - c1x, c2y - c1y) < 1.0);
      for (int k = 0; k < n_first; ++k) {
        points.push_back({c1x + noise * rng.normal(), c1y + noise * rng.normal()});
        labels.push_back(-1);
      }
      for (int k = 0; k < n_second; ++k) {
        points.push_back({c2x + noise * rng.normal(), c2y + noise * rng.normal()});
        labels.push_back(+1);
      }
      break;
    }
  }

  standardize(points);

  // seeded Fisher-Yates, then the first n_train shuffled points are train
  std::vector<int> order(total);
  for (int i = 0; i < total; ++i) order[i] = i;
  for (int i = total - 1; i > 0; --i) {
    int j = static_cast<int>(rng.bounded(static_cast<std::uint32_t>(i + 1)));
    std::swap(order[i], order[j]);
  }

  LabeledDataset out;
  out.inputs.reserve(total);
  for (int i = 0; i < total; ++i) {
    out.inputs.push_back(points[order[i]]);
    out.labels.push_back(labels[order[i]]);
    out.is_test.push_back(i < spec.n_train ? 0 : 1);
  }
  return out;
}

GridEvaluation grid_eval(const std::function<double(double, double)>& predictor, int resolution) {
  if (resolution < 2) throw std::invalid_argument("grid_eval: resolution must be >= 2");
  GridEvaluation g;
  g.resolution = resolution;
  g.values.assign(static_cast<std::size_t>(resolution) * resolution, 0.0);
  parallel_for(static_cast<std::size_t>(resolution), [&](std::size_t ix) {
    double x = g.x_at(static_cast<int>(ix));
    for (int iy = 0; iy < resolution; ++iy)
      g.values[ix * resolution + iy] = predictor(x, g.x_at(iy));
  });
  return g;
}

}  // namespace fockkernel
