/*
 * Copyright (c) 2026 kuramoto-hebb contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef KURAMOTO_CUBIC_HPP
#define KURAMOTO_CUBIC_HPP

#include <array>
#include <complex>

namespace kuramoto {

/// Roots of c3*x^3 + c2*x^2 + c1*x + c0 with real coefficients, c3 != 0.
struct CubicRoots {
    /// All three roots; real roots come first. When n_real == 1 the last two
    /// entries are a complex-conjugate pair.
    std::array<std::complex<double>, 3> roots;
    /// 3 if all roots are real (counting multiplicity), else 1.
    int n_real = 0;
    /// Polynomial discriminant: > 0 three distinct real roots, = 0 repeated
    /// real root, < 0 one real root and a conjugate pair.
    double discriminant = 0.0;
};

double cubic_discriminant(double c3, double c2, double c1, double c0);
double cubic_eval(double c3, double c2, double c1, double c0, double x);

/// Closed-form solution (trigonometric for the three-real case, Cardano
/// otherwise) followed by one Newton polish per real root.
CubicRoots solve_cubic(double c3, double c2, double c1, double c0);

} // namespace kuramoto

#endif
