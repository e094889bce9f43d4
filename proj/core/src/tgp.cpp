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

#include <kobo/tgp.hpp>

#include <kobo/errors.hpp>

#include <cmath>
#include <sstream>

namespace kobo {

double toGSpace(double yStd, double fStarStd) {
    if (yStd > fStarStd + G_SPACE_CLIP) {
        std::ostringstream what;
        what << "observed value " << yStd << " exceeds the declared optimum " << fStarStd
             << " (standardized units)";
        throw KnownOptimumViolated(what.str());
    }
    return std::sqrt(2.0 * std::max(0.0, fStarStd - yStd));
}

TgpModel TgpModel::fit(const ObservationSet& data, double fStarRaw, const KernelParams& params,
                       PriorMeanMode mode) {
    if (data.size() == 0) {
        throw ContractViolation("transformed GP requires at least one observation");
    }
    if (fStarRaw < data.maxOutputRaw()) {
        std::ostringstream what;
        what << "declared optimum " << fStarRaw << " lies below the best observation "
             << data.maxOutputRaw();
        throw KnownOptimumViolated(what.str());
    }

    double fStarStd = data.standardizer().toStandardized(fStarRaw);
    Eigen::VectorXd gValues(static_cast<Eigen::Index>(data.size()));
    for (Eigen::Index i = 0; i < gValues.size(); ++i) {
        gValues(i) = toGSpace(data.outputsStd()(i), fStarStd);
    }

    KernelParams gParams = params;
    gParams.priorMean =
        mode == PriorMeanMode::ZERO ? 0.0 : std::sqrt(2.0 * std::max(0.0, fStarStd));
    GpModel inner = GpModel::fit(data.inputs(), gValues, gParams);
    return TgpModel{fStarStd, std::move(gValues), std::move(inner)};
}

TgpPosterior TgpModel::predict(const Eigen::VectorXd& x) const {
    PredictiveMoments g = m_InnerGp.predict(x);
    TgpPosterior posterior;
    posterior.muG = g.mean;
    posterior.sigmaG = g.stddev;
    posterior.muF = m_FStarStd - 0.5 * g.mean * g.mean;
    posterior.sigmaF = std::abs(g.mean) * g.stddev;
    return posterior;
}

} // namespace kobo
