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

#include "kuramoto/gamma_raster.hpp"

#include <stdexcept>

#include "kuramoto/csv.hpp"

namespace kuramoto::pairsys {

namespace {

GammaRasterCell compute_cell(double mass, double bound, double u, double v) {
    GammaRasterCell cell;
    cell.u = u;
    cell.v = v;
    cell.disc_p1p3 = gamma_discriminant(EquilibriumPair::P1P3, {u, v}, mass);
    cell.disc_p2p4 = gamma_discriminant(EquilibriumPair::P2P4, {u, v}, mass);
    const bool strip = v <= u;
    cell.in_gamma1 = strip && u <= bound && cell.disc_p1p3 >= 0.0;
    cell.in_gamma2 = strip && v <= bound && cell.disc_p2p4 >= 0.0;
    return cell;
}

void check_args(double mass, int n) {
    if (!(mass > 0.0)) throw std::invalid_argument("raster_gamma: mass must be > 0");
    if (n < 2) throw std::invalid_argument("raster_gamma: need at least a 2x2 grid");
}

} // namespace

GammaRaster raster_gamma(double mass, int n) {
    check_args(mass, n);
    GammaRaster raster;
    raster.mass = mass;
    raster.n = n;
    raster.bound = gamma_region_bound(mass);
    raster.cells.resize(static_cast<std::size_t>(n) * n);

    const double h = raster.bound / (n - 1);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        const double u = h * i;
        GammaRasterCell* row = raster.cells.data() + static_cast<std::size_t>(i) * n;
        for (int j = 0; j < n; ++j) row[j] = compute_cell(mass, raster.bound, u, h * j);
    }
    return raster;
}

GammaRaster raster_gamma_serial(double mass, int n) {
    check_args(mass, n);
    GammaRaster raster;
    raster.mass = mass;
    raster.n = n;
    raster.bound = gamma_region_bound(mass);
    raster.cells.reserve(static_cast<std::size_t>(n) * n);

    const double h = raster.bound / (n - 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            raster.cells.push_back(compute_cell(mass, raster.bound, h * i, h * j));
    return raster;
}

void write_csv(const GammaRaster& raster, std::ostream& os) {
    os << "u,v,m,in_gamma1,in_gamma2,discriminant_p1p3,discriminant_p2p4\n";
    for (const auto& c : raster.cells) {
        io::put_double(os, c.u);
        os.put(',');
        io::put_double(os, c.v);
        os.put(',');
        io::put_double(os, raster.mass);
        os.put(',');
        os << (c.in_gamma1 ? 1 : 0) << ',' << (c.in_gamma2 ? 1 : 0) << ',';
        io::put_double(os, c.disc_p1p3);
        os.put(',');
        io::put_double(os, c.disc_p2p4);
        os.put('\n');
    }
}

} // namespace kuramoto::pairsys
