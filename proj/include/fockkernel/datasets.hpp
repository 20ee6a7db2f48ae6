#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace fockkernel {

struct LabeledDataset {
  std::vector<std::vector<double>> inputs;
  std::vector<int> labels;        // -1 or +1
  std::vector<int> is_test;       // 0 = train, 1 = test

  std::size_t size() const { return inputs.size(); }
  LabeledDataset split(bool test) const;
};

enum class DatasetFamily { moons, circles, blobs };

DatasetFamily dataset_family_from_string(const std::string& name);
std::string to_string(DatasetFamily family);

struct DatasetSpec {
  DatasetFamily family = DatasetFamily::moons;
  int n_train = 50;
  int n_test = 150;
  double noise = -1.0;  // < 0 means family default (0.1 moons/circles, 0.15 blobs)
  std::uint64_t seed = 42;
};

double resolved_noise(const DatasetSpec& spec);

// Deterministic per seed. Classes are balanced to within one sample; features
// are min-max standardized (jointly over train+test) so each feature spans
// exactly [-1, 1]. The split is a seeded shuffle: first n_train points train.
LabeledDataset generate(const DatasetSpec& spec);

struct GridEvaluation {
  int resolution = 2;
  double lo = -1.0;
  double hi = 1.0;
  std::vector<double> values;  // row-major: values[ix * resolution + iy]

  double x_at(int ix) const { return lo + (hi - lo) * ix / (resolution - 1); }
};

GridEvaluation grid_eval(const std::function<double(double, double)>& predictor, int resolution);

}  // namespace fockkernel
