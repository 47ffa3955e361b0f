#pragma once

// JSON reports emitted by the command-line tool. Key order is fixed so that
// identical inputs serialize to identical bytes.

#include <json.hpp>

#include "obscorr/correlation.hpp"
#include "obscorr/distributions.hpp"
#include "obscorr/quantities.hpp"
#include "obscorr/synth.hpp"

namespace obscorr {

using Json = nlohmann::ordered_json;

Json to_json(const NetworkQuantities& q);
NetworkQuantities quantities_from_json(const Json& j);

/// Fit parameters plus one row per bin: lower degree, count, p, P, D and the
/// fitted model's pooled probability.
Json distribution_report(const BinnedDistribution& b, const ZipfMandelbrotFit& fit);

Json to_json(const CorrelationCurve& curve);
Json to_json(const CurveFits& fits);

/// A curve together with its three fits.
Json correlation_report(const CorrelationCurve& curve, const CurveFits& fits);

/// The generative parameters of a synthetic dataset.
Json ground_truth(const SynthDataset& data);

}  // namespace obscorr
