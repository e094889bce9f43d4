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

#ifndef KOBO_OBSERVATIONS_HPP
#define KOBO_OBSERVATIONS_HPP

#include <Eigen/Dense>

#include <cstddef>

namespace kobo {

/// Affine map between raw outputs and standardized (zero-mean, unit-scale)
/// outputs: y_std = (y_raw - mean) / scale.
struct Standardizer {
    double mean = 0.0;
    double scale = 1.0;

    double toStandardized(double yRaw) const { return (yRaw - mean) / scale; }
    double toOriginalUnits(double yStd) const { return mean + scale * yStd; }
};

/// Population-moment standardizer for a raw output vector. A single point or
/// constant outputs fall back to scale = 1 (pure centering).
Standardizer makeStandardizer(const Eigen::VectorXd& yRaw);

/// Paired inputs/outputs for one optimization run. Inputs are kept in
/// normalized [0,1]^d coordinates; outputs are kept both raw and
/// standardized, with the standardizer recomputed on every append so the
/// surrogate always sees unit-scale targets.
class ObservationSet {
public:
    ObservationSet(Eigen::VectorXd lowerBounds, Eigen::VectorXd upperBounds);

    /// Appends one (x, y) pair given in original units and restandardizes.
    void add(const Eigen::VectorXd& xRaw, double yRaw);

    std::size_t size() const { return static_cast<std::size_t>(m_Inputs.rows()); }
    int dim() const { return static_cast<int>(m_Lower.size()); }

    /// n-by-d matrix of normalized inputs, one row per observation.
    const Eigen::MatrixXd& inputs() const { return m_Inputs; }
    const Eigen::VectorXd& outputsRaw() const { return m_OutputsRaw; }
    const Eigen::VectorXd& outputsStd() const { return m_OutputsStd; }
    const Standardizer& standardizer() const { return m_Standardizer; }
    const Eigen::VectorXd& lowerBounds() const { return m_Lower; }
    const Eigen::VectorXd& upperBounds() const { return m_Upper; }

    Eigen::VectorXd normalize(const Eigen::VectorXd& xRaw) const;
    Eigen::VectorXd denormalize(const Eigen::VectorXd& xNorm) const;
    Eigen::VectorXd inputRaw(std::size_t i) const;

    double maxOutputRaw() const;
    double maxOutputStd() const;

private:
    void restandardize();

    Eigen::VectorXd m_Lower;
    Eigen::VectorXd m_Upper;
    Eigen::MatrixXd m_Inputs; // normalized, n x d
    Eigen::VectorXd m_OutputsRaw;
    Eigen::VectorXd m_OutputsStd;
    Standardizer m_Standardizer;
};

} // namespace kobo

#endif // KOBO_OBSERVATIONS_HPP
