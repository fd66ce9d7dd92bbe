#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "qbell/states.hpp"

namespace qbell {

/// A state parsed from the JSON interchange format. `pure` is set when the
/// file carried amplitudes; `density` is always populated.
struct LoadedState {
  DensityMatrix density;
  std::optional<PureState> pure;
};

/// Formats:
///   density matrix: {"re": [[..4x4..]], "im": [[..4x4..]]}, row-major
///   pure state:     {"amplitudes": [[re, im], x4]}
LoadedState parse_state_json(const nlohmann::json& j, const Tolerances& tol = {});
LoadedState load_state_file(const std::string& path, const Tolerances& tol = {});

nlohmann::json state_json(const DensityMatrix& rho);
nlohmann::json state_json(const PureState& psi);

void save_state_file(const std::string& path, const nlohmann::json& j);

}  // namespace qbell
