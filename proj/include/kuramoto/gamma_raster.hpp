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

#ifndef KURAMOTO_GAMMA_RASTER_HPP
#define KURAMOTO_GAMMA_RASTER_HPP

#include <ostream>
#include <vector>

#include "kuramoto/pair_system.hpp"

namespace kuramoto::pairsys {

/// Membership raster of the all-real-eigenvalue regions in the (u, v) plane
/// over the square [0, 2(m^2-m+1)/(3m)]^2.
struct GammaRasterCell {
    double u = 0.0;
    double v = 0.0;
    bool in_gamma1 = false;
    bool in_gamma2 = false;
    double disc_p1p3 = 0.0;
    double disc_p2p4 = 0.0;
};

struct GammaRaster {
    double mass = 1.0;
    int n = 0;         ///< grid points per axis
    double bound = 0.0;
    /// Row-major over (i_u, i_v): cells[i_u * n + i_v].
    std::vector<GammaRasterCell> cells;
};

/// OpenMP-parallel raster kernel. Region membership requires 0 <= v <= u
/// (plus u <= bound for the P1/P3 region, v <= bound for P2/P4, both
/// automatic on this grid) and a nonnegative cubic discriminant.
GammaRaster raster_gamma(double mass, int n);

/// Plain serial loop computing the same cells; kept as the reference the
/// parallel kernel is tested against.
GammaRaster raster_gamma_serial(double mass, int n);

/// Header: u,v,m,in_gamma1,in_gamma2,discriminant_p1p3,discriminant_p2p4
void write_csv(const GammaRaster& raster, std::ostream& os);

} // namespace kuramoto::pairsys

#endif
