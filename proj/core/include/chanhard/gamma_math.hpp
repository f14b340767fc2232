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

#ifndef CHANHARD_GAMMA_MATH_HPP
#define CHANHARD_GAMMA_MATH_HPP

namespace chanhard {

// Regularized lower incomplete gamma function P(a, x). Series expansion for
// x < a + 1, Lentz continued fraction for the complement above that split.
double gamma_p(double a, double x);

// Regularized upper incomplete gamma function Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

// Inverse of P(a, .): returns x with P(a, x) = p, p in (0, 1). Safeguarded
// Newton inside a maintained bracket, 1e-12 relative accuracy.
double gamma_p_inverse(double a, double p);

// Digamma and trigamma, 1e-12 absolute accuracy for x > 0. Small arguments
// are shifted up by the recurrence relations before the asymptotic series.
double digamma(double x);
double trigamma(double x);

// Standard normal CDF and its inverse (Acklam rational approximation
// polished by one Halley step).
double normal_cdf(double z);
double normal_quantile(double p);

// CDF of the MRC reference distribution Gamma(shape, 1/shape) evaluated at
// linear gain x, i.e. P(shape, shape * x). Real-valued shapes are allowed
// so fitted shapes can be fed back in.
double gamma_reference_cdf(double shape, double x);

// Quantile of Gamma(shape, 1/shape): x with gamma_reference_cdf(shape,x)=p.
double gamma_reference_quantile(double shape, double p);

} // namespace chanhard

#endif
