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

#include "kuramoto/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kuramoto {

double cubic_discriminant(double a, double b, double c, double d) {
    return 18.0 * a * b * c * d - 4.0 * b * b * b * d + b * b * c * c -
           4.0 * a * c * c * c - 27.0 * a * a * d * d;
}

double cubic_eval(double c3, double c2, double c1, double c0, double x) {
    return ((c3 * x + c2) * x + c1) * x + c0;
}

namespace {

double cubic_deriv(double c3, double c2, double c1, double x) {
    return (3.0 * c3 * x + 2.0 * c2) * x + c1;
}

double newton_polish(double c3, double c2, double c1, double c0, double x) {
    for (int it = 0; it < 2; ++it) {
        const double f = cubic_eval(c3, c2, c1, c0, x);
        const double df = cubic_deriv(c3, c2, c1, x);
        if (df == 0.0) break;
        const double step = f / df;
        if (!std::isfinite(step)) break;
        x -= step;
    }
    return x;
}

} // namespace

CubicRoots solve_cubic(double c3, double c2, double c1, double c0) {
    if (c3 == 0.0) throw std::invalid_argument("solve_cubic: leading coefficient is zero");

    CubicRoots out;
    out.discriminant = cubic_discriminant(c3, c2, c1, c0);

    // Depressed form: x = t - c2/(3 c3),  t^3 + p t + q = 0.
    const double b = c2 / c3;
    const double c = c1 / c3;
    const double d = c0 / c3;
    const double shift = b / 3.0;
    const double p = c - b * b / 3.0;
    const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;

    if (out.discriminant > 0.0) {
        // Three distinct real roots (requires p < 0): trigonometric form.
        const double m = 2.0 * std::sqrt(-p / 3.0);
        double arg = 3.0 * q / (p * m);
        arg = std::clamp(arg, -1.0, 1.0);
        const double theta = std::acos(arg) / 3.0;
        const double two_pi_3 = 2.0943951023931953;
        for (int k = 0; k < 3; ++k) {
            double t = m * std::cos(theta - two_pi_3 * k);
            double x = newton_polish(c3, c2, c1, c0, t - shift);
            out.roots[k] = x;
        }
        out.n_real = 3;
    } else if (out.discriminant == 0.0) {
        // Repeated real roots.
        if (p == 0.0) {
            out.roots[0] = out.roots[1] = out.roots[2] = -shift; // triple root
        } else {
            const double simple = 3.0 * q / p;          // single root
            const double dbl = -3.0 * q / (2.0 * p);    // double root
            out.roots[0] = simple - shift;
            out.roots[1] = out.roots[2] = dbl - shift;
        }
        out.n_real = 3;
    } else {
        // One real root: Cardano, with the sign arranged to avoid cancellation.
        const double disc_t = q * q / 4.0 + p * p * p / 27.0; // > 0 here
        const double s = std::sqrt(disc_t);
        const double u = std::cbrt(-q / 2.0 - (q >= 0.0 ? s : -s));
        const double t = (u == 0.0) ? 0.0 : u - p / (3.0 * u);
        const double x0 = newton_polish(c3, c2, c1, c0, t - shift);
        out.roots[0] = x0;
        // Deflate: remaining quadratic c3*x^2 + (c2 + c3*x0)*x + (c1 + (c2 + c3*x0)*x0).
        const double qb = c2 + c3 * x0;
        const double qc = c1 + qb * x0;
        const double qdisc = qb * qb - 4.0 * c3 * qc;
        const double re = -qb / (2.0 * c3);
        const double im = std::sqrt(std::max(-qdisc, 0.0)) / (2.0 * c3);
        out.roots[1] = {re, std::abs(im)};
        out.roots[2] = {re, -std::abs(im)};
        out.n_real = 1;
    }
    // Real roots in ascending order for stable downstream comparisons.
    if (out.n_real == 3) {
        std::array<double, 3> r = {out.roots[0].real(), out.roots[1].real(), out.roots[2].real()};
        std::sort(r.begin(), r.end());
        for (int k = 0; k < 3; ++k) out.roots[k] = r[k];
    }
    return out;
}

} // namespace kuramoto
