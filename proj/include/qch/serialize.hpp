#pragma once

#include <string>

#include "json.hpp"

#include "qch/diffraction.hpp"
#include "qch/nonhyper.hpp"
#include "qch/pointset.hpp"

namespace qch {

/// Lattice as {d1, d2, basis row-major, exact?: rational strings "p/q"}.
nlohmann::json lattice_to_json(const LatticeBasis& l,
                               const std::vector<std::string>& exact = {});
LatticeBasis lattice_from_json(const nlohmann::json& j);

nlohmann::json window_to_json(const Window& w);
Window window_from_json(const nlohmann::json& j);

nlohmann::json scheme_to_json(const Scheme& s);
Scheme scheme_from_json(const nlohmann::json& j);

nlohmann::json measure_to_json(const AtomicMeasure& m);
/// CSV body: xi1 components..., weight, after "#" metadata lines carrying
/// eps_max, weight_floor and tail_bound.
std::string measure_to_csv(const AtomicMeasure& m);

nlohmann::json certificate_to_json(const NonHyperCertificate& c);

std::string points_to_csv(const PointSample& p);

}  // namespace qch
