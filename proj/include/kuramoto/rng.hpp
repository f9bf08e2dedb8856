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

#ifndef KURAMOTO_RNG_HPP
#define KURAMOTO_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace kuramoto {

/// Deterministic random source.
///
/// Wraps std::mt19937_64 (whose output sequence is fixed by the standard)
/// and converts raw 64-bit draws to doubles explicitly, so that uniform and
/// normal streams are identical across standard libraries and platforms.
/// Normal variates use Box-Muller on two uniform draws.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Independent substream: mixes (seed, stream) through SplitMix64 so
    /// substream seeds are decorrelated even for consecutive stream ids.
    static Rng substream(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t x = splitmix64(seed + 0x9E3779B97F4A7C15ULL * (stream + 1));
        return Rng(splitmix64(x));
    }

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform_unit() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform_unit();
    }

    /// Standard normal (Box-Muller). Generates pairs; caches the second.
    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        double u1 = uniform_unit();
        double u2 = uniform_unit();
        // avoid log(0)
        while (u1 <= 0.0) u1 = uniform_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(theta);
        has_cached_ = true;
        return r * std::cos(theta);
    }

    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

private:
    std::mt19937_64 gen_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

} // namespace kuramoto

#endif
