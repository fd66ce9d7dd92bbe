#include "qbell/io.hpp"

#include <fstream>

namespace qbell {

using nlohmann::json;

namespace {

double as_double(const json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string("expected a number for ") + what);
  return j.get<double>();
}

Eigen::Matrix4d parse_matrix4(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 4)
    throw ParseError(std::string(what) + " must be a 4x4 array");
  Eigen::Matrix4d m;
  for (int i = 0; i < 4; ++i) {
    const json& row = j[i];
    if (!row.is_array() || row.size() != 4)
      throw ParseError(std::string(what) + " must be a 4x4 array");
    for (int k = 0; k < 4; ++k) m(i, k) = as_double(row[k], what);
  }
  return m;
}

}  // namespace

LoadedState parse_state_json(const json& j, const Tolerances& tol) {
  if (!j.is_object()) throw ParseError("state file must hold a JSON object");
  if (j.contains("amplitudes")) {
    const json& amps = j["amplitudes"];
    if (!amps.is_array() || amps.size() != 4)
      throw ParseError("amplitudes must be an array of 4 [re, im] pairs");
    Eigen::Vector4cd a;
    for (int i = 0; i < 4; ++i) {
      const json& pair = amps[i];
      if (!pair.is_array() || pair.size() != 2)
        throw ParseError("amplitudes must be an array of 4 [re, im] pairs");
      a(i) = Complex(as_double(pair[0], "amplitude"), as_double(pair[1], "amplitude"));
    }
    const PureState psi = make_pure(a, tol);
    return LoadedState{to_density(psi), psi};
  }
  if (!j.contains("re") || !j.contains("im"))
    throw ParseError("state file needs either \"amplitudes\" or \"re\"/\"im\"");
  const Eigen::Matrix4d re = parse_matrix4(j["re"], "re");
  const Eigen::Matrix4d im = parse_matrix4(j["im"], "im");
  const Eigen::Matrix4cd m = re.cast<Complex>() + Complex(0, 1) * im.cast<Complex>();
  return LoadedState{validate_density(m, tol), std::nullopt};
}

LoadedState load_state_file(const std::string& path, const Tolerances& tol) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return parse_state_json(j, tol);
}

json state_json(const DensityMatrix& rho) {
  json re = json::array(), im = json::array();
  for (int i = 0; i < 4; ++i) {
    json rrow = json::array(), irow = json::array();
    for (int k = 0; k < 4; ++k) {
      rrow.push_back(rho.m(i, k).real());
      irow.push_back(rho.m(i, k).imag());
    }
    re.push_back(rrow);
    im.push_back(irow);
  }
  return json{{"re", re}, {"im", im}};
}

json state_json(const PureState& psi) {
  json amps = json::array();
  for (int i = 0; i < 4; ++i)
    amps.push_back(json::array({psi.amplitudes(i).real(), psi.amplitudes(i).imag()}));
  return json{{"amplitudes", amps}};
}

void save_state_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace qbell
