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

#ifndef KOBO_TGP_HPP
#define KOBO_TGP_HPP

#include <kobo/gp.hpp>
#include <kobo/observations.hpp>

#include <Eigen/Dense>

namespace kobo {

/// Prior mean of the g-space GP: zero lifts the surrogate toward the
/// optimum; sqrt(2 f*) keeps the implied prior mean of f near zero.
enum class PriorMeanMode {
    ZERO,
    SQRT_TWO_FSTAR,
};

/// g = sqrt(2 max(0, f*_std - y_std)). Throws KnownOptimumViolated when the
/// observation exceeds the declared optimum by more than the clip tolerance.
double toGSpace(double yStd, double fStarStd);

/// Tolerance absorbing floating-point overshoot when y is essentially f*.
constexpr double G_SPACE_CLIP = 1e-9;

/// Linearized predictive moments of f, plus the g-space moments they were
/// derived from (kept for diagnostics; muG can cross zero between
/// observations, collapsing sigmaF even where sigmaG > 0).
struct TgpPosterior {
    double muF = 0.0;
    double sigmaF = 0.0;
    double muG = 0.0;
    double sigmaG = 0.0;
};

/// Optimum-informed surrogate: observations are mapped into g-space via
/// g = sqrt(2 (f* - y)), a GP is fitted to g, and predictive moments of
/// f = f* - g^2/2 follow from linearizing around the posterior mode of g:
/// muF = f* - muG^2/2, sigmaF = |muG| sigmaG. The linearized mean can never
/// exceed f*. Immutable after fit.
class TgpModel {
public:
    /// fStarRaw is standardized with the data's own standardizer. Errors
    /// before fitting anything when fStarRaw < max(yRaw).
    static TgpModel fit(const ObservationSet& data, double fStarRaw, const KernelParams& params,
                        PriorMeanMode mode = PriorMeanMode::SQRT_TWO_FSTAR);

    TgpPosterior predict(const Eigen::VectorXd& x) const;

    double fStarStd() const { return m_FStarStd; }
    double priorMeanG() const { return m_InnerGp.params().priorMean; }
    const Eigen::VectorXd& gValues() const { return m_GValues; }
    const GpModel& innerGp() const { return m_InnerGp; }

private:
    TgpModel(double fStarStd, Eigen::VectorXd gValues, GpModel innerGp)
        : m_FStarStd(fStarStd), m_GValues(std::move(gValues)), m_InnerGp(std::move(innerGp)) {}

    double m_FStarStd;
    Eigen::VectorXd m_GValues;
    GpModel m_InnerGp;
};

} // namespace kobo

#endif // KOBO_TGP_HPP
