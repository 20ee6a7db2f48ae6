#include "fockkernel/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fockkernel {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string dataset_csv(const LabeledDataset& data) {
  std::ostringstream out;
  out << "x1,x2,label,split\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t f = 0; f < data.inputs[i].size(); ++f)
      out << format_double(data.inputs[i][f]) << ",";
    out << data.labels[i] << "," << (data.is_test[i] ? "test" : "train") << "\n";
  }
  return out.str();
}

LabeledDataset dataset_from_csv(const std::string& text) {
  LabeledDataset data;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("dataset csv: empty");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() < 3) throw std::runtime_error("dataset csv: short row");
    std::vector<double> x;
    for (std::size_t i = 0; i + 2 < cells.size(); ++i) x.push_back(std::stod(cells[i]));
    data.inputs.push_back(std::move(x));
    int label = std::stoi(cells[cells.size() - 2]);
    data.labels.push_back(label == 0 ? -1 : label);
    data.is_test.push_back(cells.back() == "test" ? 1 : 0);
  }
  return data;
}

std::string grid_csv(const GridEvaluation& grid) {
  std::ostringstream out;
  out << "gx,gy,value\n";
  for (int ix = 0; ix < grid.resolution; ++ix)
    for (int iy = 0; iy < grid.resolution; ++iy)
      out << format_double(grid.x_at(ix)) << "," << format_double(grid.x_at(iy)) << ","
          << format_double(grid.values[static_cast<std::size_t>(ix) * grid.resolution + iy])
          << "\n";
  return out.str();
}

std::string trace_csv(const std::vector<TraceRow>& trace) {
  std::ostringstream out;
  out << "step,batch_loss,train_accuracy\n";
  for (const TraceRow& row : trace)
    out << row.step << "," << format_double(row.batch_loss) << ","
        << format_double(row.train_accuracy) << "\n";
  return out.str();
}

ordered_json kernel_spec_json(const KernelSpec& spec) {
  ordered_json j;
  j["family"] = to_string(spec.family);
  j["realification"] = to_string(spec.realification);
  if (spec.family == KernelFamily::squeezing_phase) j["c"] = spec.c;
  if (spec.family == KernelFamily::polynomial_copies) j["degree"] = spec.degree;
  return j;
}

KernelSpec kernel_spec_from_json(const ordered_json& j) {
  KernelSpec spec;
  spec.family = kernel_family_from_string(j.at("family").get<std::string>());
  spec.realification = realification_from_string(j.at("realification").get<std::string>());
  if (j.contains("c")) spec.c = j.at("c").get<double>();
  if (j.contains("degree")) spec.degree = j.at("degree").get<int>();
  return spec;
}

ordered_json svm_model_json(const SvmModel& model) {
  ordered_json j;
  j["schema"] = 1;
  j["kernel"] = kernel_spec_json(model.kernel);
  j["C"] = model.C;
  j["tol"] = model.tol;
  j["bias"] = model.bias;
  j["support_indices"] = model.support_indices;
  j["alphas"] = model.alphas;
  j["support_vectors"] = model.support_vectors;
  j["metadata"] = {{"iterations", model.iterations},
                   {"converged", model.converged},
                   {"gram_clipped", model.gram_clipped},
                   {"gram_min_eigenvalue", model.gram_min_eigenvalue}};
  return j;
}

SvmModel svm_model_from_json(const ordered_json& j) {
  SvmModel model;
  model.kernel = kernel_spec_from_json(j.at("kernel"));
  model.C = j.at("C").get<double>();
  model.tol = j.at("tol").get<double>();
  model.bias = j.at("bias").get<double>();
  model.support_indices = j.at("support_indices").get<std::vector<int>>();
  model.alphas = j.at("alphas").get<std::vector<double>>();
  model.support_vectors = j.at("support_vectors").get<std::vector<std::vector<double>>>();
  const auto& meta = j.at("metadata");
  model.iterations = meta.at("iterations").get<long>();
  model.converged = meta.at("converged").get<bool>();
  model.gram_clipped = meta.at("gram_clipped").get<bool>();
  model.gram_min_eigenvalue = meta.at("gram_min_eigenvalue").get<double>();
  return model;
}

ordered_json variational_checkpoint_json(const VariationalModel& model) {
  ordered_json j;
  j["schema"] = 1;
  j["num_blocks"] = model.num_blocks;
  j["theta"] = model.theta;
  j["c"] = model.c;
  j["cutoff"] = model.cutoff;
  j["outcomes"] = {{model.outcomes[0][0], model.outcomes[0][1]},
                   {model.outcomes[1][0], model.outcomes[1][1]}};
  j["l2_strength"] = model.l2_strength;
  j["buffer"] = model.buffer;
  j["seed"] = model.seed;
  j["step"] = model.step;
  return j;
}

VariationalModel variational_from_json(const ordered_json& j) {
  VariationalModel model;
  model.num_blocks = j.at("num_blocks").get<int>();
  model.theta = j.at("theta").get<std::vector<double>>();
  model.c = j.at("c").get<double>();
  model.cutoff = j.at("cutoff").get<int>();
  auto oc = j.at("outcomes");
  model.outcomes = {{{oc[0][0].get<int>(), oc[0][1].get<int>()},
                     {oc[1][0].get<int>(), oc[1][1].get<int>()}}};
  model.l2_strength = j.at("l2_strength").get<double>();
  model.buffer = j.at("buffer").get<int>();
  model.seed = j.at("seed").get<std::uint64_t>();
  model.step = j.at("step").get<long>();
  return model;
}

}  // namespace fockkernel
