#pragma once

#include <stdexcept>

namespace ispec {

/// Invalid argument values: bad config fields, mismatched trace metadata.
struct argument_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Evaluation outside a model's declared domain.
struct range_error : std::out_of_range {
  using std::out_of_range::out_of_range;
};

/// A constructible model produced a non-finite value.
struct model_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A statistic that cannot be formed from the data (e.g. no clicks at all).
struct undefined_result_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// File/stream problems; the message carries the byte offset or line number.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Config file problems; the message carries file:line diagnostics.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ispec
