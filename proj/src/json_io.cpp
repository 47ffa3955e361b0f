#include "obscorr/json_io.hpp"

#include "obscorr/error.hpp"

namespace obscorr {

namespace {

constexpr const char* kQuantityFields[] = {
    "valid_packets",      "unique_links",        "max_link_packets",
    "unique_sources",     "max_source_packets",  "max_source_fanout",
    "unique_destinations", "max_destination_packets", "max_destination_fanin",
};

std::uint64_t* quantity_slots(NetworkQuantities& q, std::size_t i) {
  std::uint64_t* slots[] = {
      &q.valid_packets,       &q.unique_links,            &q.max_link_packets,
      &q.unique_sources,      &q.max_source_packets,      &q.max_source_fanout,
      &q.unique_destinations, &q.max_destination_packets, &q.max_destination_fanin,
  };
  return slots[i];
}

}  // namespace

Json to_json(const NetworkQuantities& q) {
  Json j = Json::object();
  auto copy = q;
  for (std::size_t i = 0; i < std::size(kQuantityFields); ++i) {
    j[kQuantityFields[i]] = *quantity_slots(copy, i);
  }
  return j;
}

NetworkQuantities quantities_from_json(const Json& j) {
  NetworkQuantities q;
  for (std::size_t i = 0; i < std::size(kQuantityFields); ++i) {
    const auto it = j.find(kQuantityFields[i]);
    if (it == j.end() || !it->is_number_unsigned()) {
      throw ParseError("missing or non-integer quantity field", kQuantityFields[i]);
    }
    *quantity_slots(q, i) = it->get<std::uint64_t>();
  }
  return q;
}

Json distribution_report(const BinnedDistribution& b, const ZipfMandelbrotFit& fit) {
  const auto views = probability_views(b);
  const auto model = ZipfMandelbrot(fit.alpha, fit.delta, fit.support_max).pooled_bins();
  Json bins = Json::array();
  for (std::size_t i = 0; i < b.num_bins(); ++i) {
    bins.push_back({{"bin", i},
                    {"degree_lower", std::uint64_t{1} << i},
                    {"count", b.counts()[i]},
                    {"p", views.p[i]},
                    {"P", views.P[i]},
                    {"D", views.D[i]},
                    {"model_p", model[i]}});
  }
  Json j;
  j["total"] = b.total();
  j["d_max"] = b.d_max();
  j["fit"] = {{"alpha", fit.alpha},
              {"delta", fit.delta},
              {"residual", fit.residual},
              {"support_max", fit.support_max}};
  j["bins"] = std::move(bins);
  return j;
}

Json to_json(const CorrelationCurve& curve) {
  Json points = Json::array();
  for (const auto& p : curve.points) {
    points.push_back({{"t", p.t}, {"fraction", p.fraction}, {"matched", p.matched}, {"eligible", p.eligible}});
  }
  Json j;
  j["reference_time"] = curve.reference_time;
  j["brightness_exponent"] = curve.brightness_exponent;
  j["points"] = std::move(points);
  return j;
}

Json to_json(const CurveFits& fits) {
  Json j;
  j["modified_cauchy"] = {{"alpha", fits.modified_cauchy.alpha},
                          {"beta", fits.modified_cauchy.beta},
                          {"peak", fits.modified_cauchy.peak},
                          {"residual", fits.modified_cauchy.residual},
                          {"one_month_drop", fits.modified_cauchy.one_month_drop}};
  j["cauchy"] = {{"gamma", fits.cauchy.gamma},
                 {"peak", fits.cauchy.peak},
                 {"residual", fits.cauchy.residual}};
  j["gaussian"] = {{"sigma", fits.gaussian.sigma},
                   {"peak", fits.gaussian.peak},
                   {"residual", fits.gaussian.residual}};
  return j;
}

Json correlation_report(const CorrelationCurve& curve, const CurveFits& fits) {
  auto j = to_json(curve);
  j["fits"] = to_json(fits);
  return j;
}

Json ground_truth(const SynthDataset& data) {
  const auto& c = data.config;
  Json j;
  j["seed"] = c.seed;
  j["n_sources"] = c.n_sources;
  j["zm_alpha"] = c.zm_alpha;
  j["zm_delta"] = c.zm_delta;
  j["support_max"] = c.support_max;
  j["n_valid"] = c.n_valid;
  j["months"] = c.months;
  j["drift_alpha"] = c.drift_alpha;
  j["drift_beta"] = c.drift_beta;
  j["share_law"] = share_law_name(c.share_law);
  j["base_rate"] = c.base_rate;
  j["outpost_background"] = c.outpost_background;
  j["capture_date"] = c.capture_date;
  j["internal_cidr"] = c.internal_cidr;
  j["t0"] = data.t0;
  j["telescope_sources"] = data.telescope.sources.size();
  j["telescope_packets"] = data.telescope.sources.sum();
  Json months = Json::array();
  for (const auto& o : data.outposts) {
    months.push_back({{"label", o.label}, {"t", o.t}, {"sources", o.sources.size()}});
  }
  j["outposts"] = std::move(months);
  return j;
}

}  // namespace obscorr
