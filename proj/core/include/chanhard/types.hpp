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

#ifndef CHANHARD_TYPES_HPP
#define CHANHARD_TYPES_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace chanhard {

enum class Polarization { Vertical, Horizontal };
enum class UeOrientation { Vertical, Horizontal };
enum class ArrayKind { CoLocated, Distributed };

inline const char *to_string(Polarization p)
{
    return p == Polarization::Vertical ? "V" : "H";
}

inline const char *to_string(UeOrientation o)
{
    return o == UeOrientation::Vertical ? "vertical" : "horizontal";
}

inline const char *to_string(ArrayKind k)
{
    return k == ArrayKind::CoLocated ? "co-located" : "distributed";
}

// Bad parameters, bad configuration, violated preconditions.
class ConfigError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

// Malformed or inconsistent data encountered while processing.
class DataError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Result depends on a quantile deeper than the sample count supports.
class InsufficientSamplesError : public DataError
{
  public:
    using DataError::DataError;
};

constexpr double speed_of_light_mps = 299792458.0;

inline double db_from_linear(double x)
{
    return 10.0 * std::log10(x);
}

inline double linear_from_db(double x_db)
{
    return std::pow(10.0, x_db / 10.0);
}

} // namespace chanhard

#endif
