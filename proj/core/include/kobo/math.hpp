/*
 * Copyright 2026 kobo authors
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

#ifndef KOBO_MATH_HPP
#define KOBO_MATH_HPP

#include <cstdint>
#include <random>

namespace kobo {

/// Standard normal density phi(z) = exp(-z^2/2) / sqrt(2 pi).
double stdNormalPdf(double z);

/// Standard normal c.d.f. Phi(z), via erfc; |error| well below 1e-12.
double stdNormalCdf(double z);

/// log Phi(z), finite for all z (asymptotic series in the deep lower tail).
double stdNormalLogCdf(double z);

/// Lower hazard phi(z)/Phi(z); stable for arbitrarily negative z.
double stdNormalHazardLower(double z);

/// Mixes a 64-bit value; used to derive independent substream seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for a purpose-tagged substream of a run-level seed.
std::uint64_t deriveSeed(std::uint64_t seed, std::uint64_t purpose, std::uint64_t index);

/// Deterministic uniform generator. Double extraction is done by hand so
/// streams are identical across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : m_Engine(seed) {}

    std::uint64_t next() { return m_Engine(); }

    /// Uniform draw in [0, 1).
    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n); n must be positive.
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }

private:
    std::mt19937_64 m_Engine;
};

} // namespace kobo

#endif // KOBO_MATH_HPP
