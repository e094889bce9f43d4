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

#include <kobo/math.hpp>

#include <cmath>

namespace kobo {
namespace {

constexpr double INV_SQRT_2PI = 0.3989422804014326779;
constexpr double INV_SQRT_2 = 0.7071067811865475244;
constexpr double HALF_LOG_2PI = 0.91893853320467274178;

// Where the direct erfc evaluation starts losing ground to the tail series.
constexpr double LOWER_TAIL_SWITCH = -36.0;

// Phi(z) ~ phi(z)/(-z) * series(z) for z -> -inf.
double lowerTailSeries(double z) {
    double z2 = z * z;
    return 1.0 - 1.0 / z2 + 3.0 / (z2 * z2) - 15.0 / (z2 * z2 * z2);
}
}

double stdNormalPdf(double z) {
    return INV_SQRT_2PI * std::exp(-0.5 * z * z);
}

double stdNormalCdf(double z) {
    return 0.5 * std::erfc(-z * INV_SQRT_2);
}

double stdNormalLogCdf(double z) {
    if (z > LOWER_TAIL_SWITCH) {
        return std::log(stdNormalCdf(z));
    }
    return -0.5 * z * z - HALF_LOG_2PI - std::log(-z) + std::log(lowerTailSeries(z));
}

double stdNormalHazardLower(double z) {
    if (z > LOWER_TAIL_SWITCH) {
        return stdNormalPdf(z) / stdNormalCdf(z);
    }
    return -z / lowerTailSeries(z);
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t deriveSeed(std::uint64_t seed, std::uint64_t purpose, std::uint64_t index) {
    return splitmix64(splitmix64(seed ^ purpose * 0x9E3779B97F4A7C15ULL) + index);
}

} // namespace kobo
