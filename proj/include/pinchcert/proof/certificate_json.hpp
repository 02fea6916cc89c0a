#pragma once

#include <json.hpp>

#include "pinchcert/proof/engine.hpp"

namespace pinchcert::proof {

inline constexpr int kCertificateSchemaVersion = 1;

// Stable key order; rationals as "p/q", functions in canonical text form.
nlohmann::ordered_json to_json(const SosCertificate& cert);
nlohmann::ordered_json to_json(const PinchCertificate& cert);

}  // namespace pinchcert::proof
