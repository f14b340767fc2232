// SPDX-License-Identifier: Apache-2.0
//
// chanhard - massive MIMO channel hardening and reliability analysis toolkit
// Copyright (C) 2026 chanhard developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef CHANHARD_CHT_IO_HPP
#define CHANHARD_CHT_IO_HPP

#include <filesystem>
#include <string>

#include "chanhard/tensor.hpp"

namespace chanhard {

// CHT v1 tensor file: 4-byte magic "CHT1", little-endian uint32 header
// length, UTF-8 JSON metadata header, then N*F*M little-endian float32
// (real, imag) pairs in n-major, then f, then m order. Coefficients are
// float32 on disk and widened to double in memory.

enum class ChtStatus {
    InvalidHeader,     // bad magic/version or malformed metadata
    TruncatedPayload,  // payload cut mid-coefficient
    DimensionMismatch, // payload count does not match N*F*M
};

inline const char *to_string(ChtStatus s)
{
    switch (s) {
    case ChtStatus::InvalidHeader:
        return "invalid-header";
    case ChtStatus::TruncatedPayload:
        return "truncated-payload";
    default:
        return "dimension-mismatch";
    }
}

class ChtError : public DataError
{
  public:
    ChtError(ChtStatus status, const std::string &msg)
        : DataError(std::string(to_string(status)) + ": " + msg), status_(status)
    {
    }

    ChtStatus status() const { return status_; }

  private:
    ChtStatus status_;
};

ChannelTensor read_cht(const std::filesystem::path &path);
void write_cht(const ChannelTensor &tensor, const std::filesystem::path &path);

} // namespace chanhard

#endif
