// SPDX-FileCopyrightText: © 2026 The telulab Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace telu {

enum class ErrorCode {
  UnknownMeta,
  InvalidArgument,
  InvalidFilter,
  MaxSubdivisions,
  NoNullRegion,
  NoSignChange,
  BadMagic,
  DimensionMismatch,
  TruncatedFile,
  TooFewSamples,
  NonFiniteLoss,
  BenchBusy,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure the library reports carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  // Numerical failures map to CLI exit code 3, everything else is a usage error.
  bool is_numerical() const noexcept {
    return code_ == ErrorCode::MaxSubdivisions || code_ == ErrorCode::NonFiniteLoss;
  }

 private:
  ErrorCode code_;
};

}  // namespace telu
