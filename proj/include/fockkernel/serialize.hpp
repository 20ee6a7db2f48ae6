#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fockkernel/datasets.hpp"
#include "fockkernel/svm.hpp"
#include "fockkernel/variational.hpp"

namespace fockkernel {

using ordered_json = nlohmann::ordered_json;

// %.17g: enough digits to reproduce the double bit pattern on parse
std::string format_double(double v);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// header x1,x2,label,split
std::string dataset_csv(const LabeledDataset& data);
LabeledDataset dataset_from_csv(const std::string& text);

// header gx,gy,value
std::string grid_csv(const GridEvaluation& grid);

// header step,batch_loss,train_accuracy
std::string trace_csv(const std::vector<TraceRow>& trace);

ordered_json kernel_spec_json(const KernelSpec& spec);
KernelSpec kernel_spec_from_json(const ordered_json& j);

ordered_json svm_model_json(const SvmModel& model);
SvmModel svm_model_from_json(const ordered_json& j);

ordered_json variational_checkpoint_json(const VariationalModel& model);
VariationalModel variational_from_json(const ordered_json& j);

}  // namespace fockkernel
