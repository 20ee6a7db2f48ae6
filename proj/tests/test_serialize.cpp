#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "fockkernel/serialize.hpp"

using namespace fockkernel;

namespace {

bool same_bits(double a, double b) {
  std::uint64_t ua, ub;
  std::memcpy(&ua, &a, 8);
  std::memcpy(&ub, &b, 8);
  return ua == ub;
}

LabeledDataset sample_data() {
  DatasetSpec spec;
  spec.family = DatasetFamily::blobs;
  spec.n_train = 7;
  spec.n_test = 3;
  spec.seed = 5;
  return generate(spec);
}

}  // namespace

TEST_SUITE("serialize") {

TEST_CASE("format_double survives a parse round trip bit for bit") {
  const double values[] = {3.141592653589793,  0.1,     1.0 / 3.0, -1.0 / 3.0, 1e-300,
                           12345.678901234567, 2.2e-16, 0.0,       -7.25,      1e17};
  for (double v : values) CHECK(same_bits(std::stod(format_double(v)), v));
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-1.0) == "-1");
}

TEST_CASE("text file write and read round trip") {
  auto path = std::filesystem::temp_directory_path() / "fockkernel_serialize_probe.txt";
  std::string content = "line one\nline two,0.5\n";
  write_text_file(path.string(), content);
  CHECK(read_text_file(path.string()) == content);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_text_file(path.string()), std::runtime_error);
}

TEST_CASE("dataset csv round trips exactly") {
  LabeledDataset data = sample_data();
  std::string csv = dataset_csv(data);
  CHECK(csv.rfind("x1,x2,label,split\n", 0) == 0);

  LabeledDataset back = dataset_from_csv(csv);
  REQUIRE(back.size() == data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    REQUIRE(back.inputs[i].size() == data.inputs[i].size());
    for (std::size_t f = 0; f < data.inputs[i].size(); ++f)
      CHECK(same_bits(back.inputs[i][f], data.inputs[i][f]));
    CHECK(back.labels[i] == data.labels[i]);
    CHECK(back.is_test[i] == data.is_test[i]);
  }
}

TEST_CASE("dataset csv parsing normalizes labels and rejects junk") {
  LabeledDataset d =
      dataset_from_csv("x1,x2,label,split\n0.5,-0.25,0,train\n1,2,1,test\n");
  REQUIRE(d.size() == 2);
  CHECK(d.labels[0] == -1);  // 0/1 labels collapse to -1/+1
  CHECK(d.labels[1] == 1);
  CHECK(d.is_test[0] == 0);
  CHECK(d.is_test[1] == 1);
  CHECK(d.inputs[0][1] == -0.25);

  CHECK_THROWS_AS(dataset_from_csv(""), std::runtime_error);
  CHECK_THROWS_AS(dataset_from_csv("x1,x2,label,split\n1,2\n"), std::runtime_error);
}

TEST_CASE("grid csv walks rows in x-major order") {
  GridEvaluation grid;
  grid.resolution = 2;
  grid.values = {1.0, 2.0, 3.0, 4.0};
  CHECK(grid_csv(grid) == "gx,gy,value\n-1,-1,1\n-1,1,2\n1,-1,3\n1,1,4\n");
}

TEST_CASE("trace csv format") {
  std::vector<TraceRow> trace = {{1, 0.5, 0.25}, {2, 0.125, 1.0}};
  CHECK(trace_csv(trace) == "step,batch_loss,train_accuracy\n1,0.5,0.25\n2,0.125,1\n");
}

TEST_CASE("kernel spec json keeps only the relevant knobs") {
  KernelSpec squeezing;
  squeezing.family = KernelFamily::squeezing_phase;
  squeezing.c = 0.75;
  squeezing.realification = Realification::real_part;
  ordered_json js = kernel_spec_json(squeezing);
  CHECK(js.contains("c"));
  CHECK_FALSE(js.contains("degree"));
  KernelSpec back = kernel_spec_from_json(ordered_json::parse(js.dump()));
  CHECK(back.family == squeezing.family);
  CHECK(same_bits(back.c, squeezing.c));
  CHECK(back.realification == squeezing.realification);

  KernelSpec poly;
  poly.family = KernelFamily::polynomial_copies;
  poly.degree = 3;
  ordered_json jp = kernel_spec_json(poly);
  CHECK(jp.contains("degree"));
  CHECK_FALSE(jp.contains("c"));
  CHECK(kernel_spec_from_json(jp).degree == 3);

  ordered_json jl = kernel_spec_json(KernelSpec{KernelFamily::linear_amplitude});
  CHECK_FALSE(jl.contains("c"));
  CHECK_FALSE(jl.contains("degree"));
}

TEST_CASE("svm model json round trip preserves decisions bitwise") {
  LabeledDataset data = sample_data();
  KernelSpec spec;
  spec.family = KernelFamily::squeezing_phase;
  spec.c = 1.0;
  spec.realification = Realification::abs_square;
  SvmModel model = svm_train(data.split(false), spec, 2.0, 1e-6);

  ordered_json j = svm_model_json(model);
  CHECK(j.at("schema").get<int>() == 1);
  SvmModel back = svm_model_from_json(ordered_json::parse(j.dump(2)));

  CHECK(back.support_indices == model.support_indices);
  REQUIRE(back.alphas.size() == model.alphas.size());
  for (std::size_t i = 0; i < model.alphas.size(); ++i)
    CHECK(same_bits(back.alphas[i], model.alphas[i]));
  CHECK(same_bits(back.bias, model.bias));
  CHECK(same_bits(back.C, model.C));
  CHECK(same_bits(back.tol, model.tol));
  CHECK(back.support_vectors == model.support_vectors);
  CHECK(back.iterations == model.iterations);
  CHECK(back.converged == model.converged);
  CHECK(back.gram_clipped == model.gram_clipped);
  CHECK(same_bits(back.gram_min_eigenvalue, model.gram_min_eigenvalue));

  for (const auto& x : data.inputs)
    CHECK(same_bits(svm_decision(back, x), svm_decision(model, x)));
}

TEST_CASE("variational checkpoint json round trips bitwise") {
  VariationalModel model = init_model(2, 1.3, 12, 1e-4, 99);
  model.step = 17;
  model.buffer = 7;
  model.outcomes = {{{1, 0}, {0, 1}}};

  ordered_json j = variational_checkpoint_json(model);
  CHECK(j.at("schema").get<int>() == 1);
  VariationalModel back = variational_from_json(ordered_json::parse(j.dump(2)));

  CHECK(back.num_blocks == model.num_blocks);
  REQUIRE(back.theta.size() == model.theta.size());
  for (std::size_t i = 0; i < model.theta.size(); ++i)
    CHECK(same_bits(back.theta[i], model.theta[i]));
  CHECK(same_bits(back.c, model.c));
  CHECK(back.cutoff == model.cutoff);
  CHECK(back.outcomes == model.outcomes);
  CHECK(same_bits(back.l2_strength, model.l2_strength));
  CHECK(back.buffer == model.buffer);
  CHECK(back.seed == model.seed);
  CHECK(back.step == model.step);
}

}  // TEST_SUITE
