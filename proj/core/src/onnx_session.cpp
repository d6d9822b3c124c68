#include <memory>
#include <string>

#include "icpc/encoder.hpp"
#include "icpc/error.hpp"

#ifdef ICPC_HAVE_ONNXRUNTIME

#include <onnxruntime_cxx_api.h>

#include <algorithm>
#include <cstdint>
#include <vector>

namespace icpc {

namespace {

// Runs a masked-LM encoder exported to ONNX. Expected graph contract:
// int64 inputs named like "input_ids" / "attention_mask" (an optional
// "token_type_ids" is fed zeros), one output whose last dimension is the
// vocabulary (per-position logits) and one whose last dimension is the
// hidden size (per-position hidden states).
class OnnxSession final : public EncoderSession {
 public:
  explicit OnnxSession(const std::string& model_path)
      : env_(ORT_LOGGING_LEVEL_ERROR, "icpc"),
        session_(nullptr),
        memory_info_(Ort::MemoryInfo::CreateCpu(OrtArenaAllocator, OrtMemTypeDefault)) {
    Ort::SessionOptions options;
    options.SetIntraOpNumThreads(1);
    try {
      session_ = Ort::Session(env_, model_path.c_str(), options);
    } catch (const Ort::Exception& e) {
      throw BackendError("cannot load ONNX model " + model_path + ": " + e.what());
    }

    Ort::AllocatorWithDefaultOptions allocator;
    const std::size_t n_inputs = session_.GetInputCount();
    for (std::size_t i = 0; i < n_inputs; ++i) {
      input_names_.push_back(session_.GetInputNameAllocated(i, allocator).get());
    }
    const std::size_t n_outputs = session_.GetOutputCount();
    for (std::size_t i = 0; i < n_outputs; ++i) {
      output_names_.push_back(session_.GetOutputNameAllocated(i, allocator).get());
      const auto info = session_.GetOutputTypeInfo(i).GetTensorTypeAndShapeInfo();
      output_last_dims_.push_back(info.GetShape().back());
    }
    if (n_outputs < 2) {
      throw BackendError("ONNX model must expose logits and hidden-state outputs");
    }
    // The larger trailing dimension is the vocabulary.
    logits_index_ = output_last_dims_[0] >= output_last_dims_[1] ? 0 : 1;
    hidden_index_ = 1 - logits_index_;
    vocab_size_ = static_cast<std::size_t>(output_last_dims_[logits_index_]);
  }

  std::size_t vocab_size() const override { return vocab_size_; }
  std::size_t max_positions() const override { return 512; }

  EncoderOutput run(std::span<const std::int32_t> token_ids,
                    std::span<const std::int32_t> attention_mask) override {
    const auto seq = static_cast<std::int64_t>(token_ids.size());
    std::vector<std::int64_t> ids(token_ids.begin(), token_ids.end());
    std::vector<std::int64_t> mask(attention_mask.begin(), attention_mask.end());
    std::vector<std::int64_t> type_ids(token_ids.size(), 0);
    const std::array<std::int64_t, 2> shape{1, seq};

    std::vector<Ort::Value> inputs;
    std::vector<const char*> names;
    for (const std::string& name : input_names_) {
      std::int64_t* data = nullptr;
      if (name.find("mask") != std::string::npos) {
        data = mask.data();
      } else if (name.find("type") != std::string::npos) {
        data = type_ids.data();
      } else {
        data = ids.data();
      }
      inputs.push_back(Ort::Value::CreateTensor<std::int64_t>(
          memory_info_, data, token_ids.size(), shape.data(), shape.size()));
      names.push_back(name.c_str());
    }

    std::vector<const char*> out_names;
    for (const std::string& name : output_names_) out_names.push_back(name.c_str());

    std::vector<Ort::Value> outputs;
    try {
      outputs = session_.Run(Ort::RunOptions{nullptr}, names.data(), inputs.data(),
                             inputs.size(), out_names.data(), out_names.size());
    } catch (const Ort::Exception& e) {
      throw BackendError(std::string("ONNX inference failed: ") + e.what());
    }

    EncoderOutput result;
    result.seq_len = token_ids.size();
    const auto copy_out = [&](std::size_t index, std::vector<float>& dst, std::size_t& dim) {
      const auto info = outputs[index].GetTensorTypeAndShapeInfo();
      const auto shape_v = info.GetShape();
      dim = static_cast<std::size_t>(shape_v.back());
      const float* data = outputs[index].GetTensorData<float>();
      dst.assign(data, data + info.GetElementCount());
    };
    copy_out(logits_index_, result.logits, result.vocab_size);
    copy_out(hidden_index_, result.hidden, result.hidden_dim);
    return result;
  }

 private:
  Ort::Env env_;
  Ort::Session session_;
  Ort::MemoryInfo memory_info_;
  std::vector<std::string> input_names_;
  std::vector<std::string> output_names_;
  std::vector<std::int64_t> output_last_dims_;
  std::size_t logits_index_ = 0;
  std::size_t hidden_index_ = 1;
  std::size_t vocab_size_ = 0;
};

}  // namespace

std::shared_ptr<EncoderSession> open_onnx_session(const std::string& model_path) {
  return std::make_shared<OnnxSession>(model_path);
}

}  // namespace icpc

#else  // !ICPC_HAVE_ONNXRUNTIME

namespace icpc {

std::shared_ptr<EncoderSession> open_onnx_session(const std::string& model_path) {
  throw BackendError("cannot load " + model_path +
                     ": this build has no ONNX Runtime support (configure with "
                     "-DICPC_ONNXRUNTIME_ROOT=<install prefix>)");
}

}  // namespace icpc

#endif
