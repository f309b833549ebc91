// Copyright 2026 The weakquasi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "weakquasi/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace weakquasi {

namespace {

const std::set<std::string> kKnownFields = {
    "name",   "dimension", "theta0",    "state", "density_matrix", "A",
    "B",      "hamiltonian", "dt",      "K",     "phi",            "shots",
    "noise",  "resamples", "seed",      "engine", "outputs",
};

class Reader {
 public:
  Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void error(const YAML::Node &node, const std::string &field,
                          const std::string &message) const {
    std::ostringstream msg;
    msg << source_;
    if (node.IsDefined() && node.Mark().line >= 0) msg << ":" << node.Mark().line + 1;
    msg << ": field '" << field << "': " << message;
    fail(ErrorKind::Config, msg.str());
  }

  double number(const YAML::Node &node, const std::string &field) const {
    if (!node.IsScalar()) error(node, field, "expected a number");
    double v = 0.0;
    if (!YAML::convert<double>::decode(node, v) || !std::isfinite(v)) {
      error(node, field, "expected a finite number, got '" + node.Scalar() + "'");
    }
    return v;
  }

  std::int64_t integer(const YAML::Node &node, const std::string &field) const {
    if (!node.IsScalar()) error(node, field, "expected an integer");
    long long v = 0;
    if (!YAML::convert<long long>::decode(node, v)) {
      error(node, field, "expected an integer, got '" + node.Scalar() + "'");
    }
    return v;
  }

  std::string text(const YAML::Node &node, const std::string &field) const {
    if (!node.IsScalar()) error(node, field, "expected a string");
    return node.Scalar();
  }

  /// A real scalar or a [re, im] pair.
  cplx complex(const YAML::Node &node, const std::string &field) const {
    if (node.IsScalar()) return number(node, field);
    if (node.IsSequence() && node.size() == 2) {
      return {number(node[0], field), number(node[1], field)};
    }
    error(node, field, "expected a number or a [re, im] pair");
  }

  Vector vector(const YAML::Node &node, const std::string &field) const {
    if (!node.IsSequence() || node.size() == 0) error(node, field, "expected a non-empty list");
    Vector v(static_cast<Eigen::Index>(node.size()));
    for (std::size_t i = 0; i < node.size(); ++i) {
      v(static_cast<Eigen::Index>(i)) = complex(node[i], field);
    }
    return v;
  }

  /// List of rows.
  Matrix matrix(const YAML::Node &node, const std::string &field) const {
    if (!node.IsSequence() || node.size() == 0) error(node, field, "expected a list of rows");
    const auto n = static_cast<Eigen::Index>(node.size());
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const YAML::Node row = node[static_cast<std::size_t>(i)];
      if (!row.IsSequence() || static_cast<Eigen::Index>(row.size()) != n) {
        error(row, field, "expected a square matrix of size " + std::to_string(n));
      }
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) = complex(row[static_cast<std::size_t>(j)], field);
    }
    return m;
  }

  std::vector<double> numbers(const YAML::Node &node, const std::string &field) const {
    std::vector<double> out;
    if (node.IsScalar()) {
      out.push_back(number(node, field));
    } else if (node.IsSequence() && node.size() > 0) {
      for (const auto &item : node) out.push_back(number(item, field));
    } else {
      error(node, field, "expected a number or a list of numbers");
    }
    return out;
  }

 private:
  std::string source_;
};

Observable read_observable(const Reader &r, const YAML::Node &node, const std::string &field,
                           int dim) {
  if (node.IsScalar()) {
    const std::string preset = node.Scalar();
    if (preset == "Z" || preset == "computational") return Observable::computational(dim, preset);
    if (preset == "X" || preset == "fourier") return Observable::fourier(dim, preset);
    r.error(node, field, "unknown observable preset '" + preset + "' (use Z, X, computational, fourier)");
  }
  if (!node.IsMap()) r.error(node, field, "expected a preset name or an eigenbasis mapping");
  for (const auto &kv : node) {
    const std::string key = kv.first.Scalar();
    if (key != "eigenvectors" && key != "eigenvalues" && key != "labels" && key != "name") {
      r.error(kv.first, field + "." + key, "unknown field");
    }
  }
  const YAML::Node vecs = node["eigenvectors"];
  if (!vecs) r.error(node, field + ".eigenvectors", "missing");
  if (!vecs.IsSequence() || static_cast<int>(vecs.size()) != dim) {
    r.error(vecs, field + ".eigenvectors", "expected " + std::to_string(dim) + " vectors");
  }
  Matrix columns(dim, dim);
  for (int k = 0; k < dim; ++k) {
    const Vector v = r.vector(vecs[static_cast<std::size_t>(k)], field + ".eigenvectors");
    if (v.size() != dim) {
      r.error(vecs[static_cast<std::size_t>(k)], field + ".eigenvectors",
              "vector length differs from dimension " + std::to_string(dim));
    }
    columns.col(k) = v;
  }
  std::vector<double> values;
  if (node["eigenvalues"]) {
    values = r.numbers(node["eigenvalues"], field + ".eigenvalues");
  } else {
    for (int k = 0; k < dim; ++k) values.push_back(k);
  }
  std::vector<std::string> labels;
  if (node["labels"]) {
    const YAML::Node l = node["labels"];
    if (!l.IsSequence()) r.error(l, field + ".labels", "expected a list of strings");
    for (const auto &item : l) {
      std::string label = r.text(item, field + ".labels");
      if (label.empty() || label.find_first_of(",\"\n\r") != std::string::npos) {
        r.error(item, field + ".labels", "labels must be non-empty and free of commas and quotes");
      }
      labels.push_back(std::move(label));
    }
  }
  const std::string name = node["name"] ? r.text(node["name"], field + ".name") : field;
  try {
    return Observable::from_eigenbasis(std::move(columns), std::move(values), name,
                                       std::move(labels));
  } catch (const Error &e) {
    r.error(node, field, e.what());
  }
}

std::vector<double> read_K_grid(const Reader &r, const YAML::Node &node) {
  std::vector<double> grid;
  if (node.IsMap()) {
    for (const auto &kv : node) {
      const std::string key = kv.first.Scalar();
      if (key != "from" && key != "to" && key != "points") r.error(kv.first, "K." + key, "unknown field");
    }
    if (!node["from"] || !node["to"] || !node["points"]) {
      r.error(node, "K", "a range needs from, to and points");
    }
    const double from = r.number(node["from"], "K.from");
    const double to = r.number(node["to"], "K.to");
    const std::int64_t points = r.integer(node["points"], "K.points");
    if (points < 1) r.error(node["points"], "K.points", "must be at least 1");
    if (points == 1) {
      grid.push_back(from);
    } else {
      for (std::int64_t i = 0; i < points; ++i) {
        grid.push_back(from + (to - from) * static_cast<double>(i) / static_cast<double>(points - 1));
      }
    }
  } else {
    grid = r.numbers(node, "K");
  }
  for (double K : grid) {
    if (!(K >= 0.0 && K <= 1.0)) {
      r.error(node, "K", "value " + std::to_string(K) + " lies outside [0,1]");
    }
  }
  return grid;
}

std::vector<double> default_K_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
  return grid;
}

}  // namespace

const char *quantity_name(Quantity q) {
  switch (q) {
    case Quantity::PWeak: return "p_weak";
    case Quantity::CQ: return "cq";
    case Quantity::MHQ: return "mhq";
    case Quantity::WeakCQ: return "weak_cq";
    case Quantity::WeakMHQ: return "weak_mhq";
    case Quantity::Coherence: return "C";
    case Quantity::MhqReconstructed: return "mhq_reconstructed";
    case Quantity::Thresholds: return "thresholds";
  }
  return "unknown";
}

const std::vector<Quantity> &all_quantities() {
  static const std::vector<Quantity> all = {
      Quantity::PWeak,     Quantity::CQ,        Quantity::MHQ,
      Quantity::WeakCQ,    Quantity::WeakMHQ,   Quantity::Coherence,
      Quantity::MhqReconstructed, Quantity::Thresholds,
  };
  return all;
}

std::optional<Quantity> quantity_from_name(const std::string &name) {
  for (Quantity q : all_quantities()) {
    if (name == quantity_name(q)) return q;
  }
  return std::nullopt;
}

ScenarioConfig parse_config(const std::string &text, const std::string &source) {
  const Reader r(source);
  YAML::Node loaded;
  try {
    loaded = YAML::Load(text);
  } catch (const YAML::ParserException &e) {
    std::ostringstream msg;
    msg << source << ":" << e.mark.line + 1 << ": syntax error: " << e.msg;
    fail(ErrorKind::Config, msg.str());
  }
  const YAML::Node root = loaded;
  if (!root.IsMap()) {
    fail(ErrorKind::Config, source + ":1: the document must be a mapping of named fields");
  }
  for (const auto &kv : root) {
    const std::string key = kv.first.Scalar();
    if (!kKnownFields.count(key)) r.error(kv.first, key, "unknown field");
  }

  const int state_sources = (root["theta0"] ? 1 : 0) + (root["state"] ? 1 : 0) +
                            (root["density_matrix"] ? 1 : 0);
  if (state_sources == 0) {
    r.error(root, "theta0", "no initial state: give one of theta0, state, density_matrix");
  }
  if (state_sources > 1) {
    r.error(root, "state", "theta0, state and density_matrix are mutually exclusive");
  }

  std::optional<int> dim;
  if (root["dimension"]) {
    const std::int64_t d = r.integer(root["dimension"], "dimension");
    if (d < 2 || d > 32) r.error(root["dimension"], "dimension", "must lie in [2, 32]");
    dim = static_cast<int>(d);
  }

  std::optional<DensityOperator> rho;
  std::string id = "custom";
  if (root["theta0"]) {
    const double theta0 = r.number(root["theta0"], "theta0");
    if (dim && *dim != 2) r.error(root["theta0"], "theta0", "theta0 defines a qubit (dimension 2)");
    dim = 2;
    rho = qubit_scenario(theta0).rho;
    std::ostringstream s;
    s << "qubit theta0=" << theta0;
    id = s.str();
  } else if (root["state"]) {
    const Vector psi = r.vector(root["state"], "state");
    if (dim && psi.size() != *dim) r.error(root["state"], "state", "length differs from dimension");
    dim = static_cast<int>(psi.size());
    try {
      rho = make_pure_state(psi);
    } catch (const Error &e) {
      r.error(root["state"], "state", std::string("non-physical state: ") + e.what());
    }
  } else {
    Matrix m = r.matrix(root["density_matrix"], "density_matrix");
    if (dim && m.rows() != *dim) {
      r.error(root["density_matrix"], "density_matrix", "size differs from dimension");
    }
    dim = static_cast<int>(m.rows());
    try {
      rho = DensityOperator::from_matrix(std::move(m));
    } catch (const Error &e) {
      r.error(root["density_matrix"], "density_matrix", std::string("non-physical state: ") + e.what());
    }
  }
  if (*dim < 2) r.error(root, "dimension", "must be at least 2");
  if (root["name"]) id = r.text(root["name"], "name");

  Observable A = root["A"] ? read_observable(r, root["A"], "A", *dim) : Observable::computational(*dim);
  Observable B = root["B"] ? read_observable(r, root["B"], "B", *dim) : Observable::fourier(*dim);

  if (root["hamiltonian"] || root["dt"]) {
    if (!root["hamiltonian"] || !root["dt"]) {
      r.error(root["hamiltonian"] ? root["hamiltonian"] : root["dt"], "hamiltonian",
              "hamiltonian and dt must be given together");
    }
    const Matrix h = r.matrix(root["hamiltonian"], "hamiltonian");
    const double dt = r.number(root["dt"], "dt");
    if (h.rows() != *dim) r.error(root["hamiltonian"], "hamiltonian", "size differs from dimension");
    try {
      B = B.evolved(h, dt);
    } catch (const Error &e) {
      r.error(root["hamiltonian"], "hamiltonian", e.what());
    }
  }

  SweepOptions sweep;
  if (root["K"] && root["phi"]) {
    r.error(root["phi"], "phi", "K and phi are mutually exclusive; give one of them");
  }
  if (root["K"]) {
    sweep.K_grid = read_K_grid(r, root["K"]);
  } else if (root["phi"]) {
    if (*dim != 2) r.error(root["phi"], "phi", "phi parameterizes the qubit pointer only");
    for (double phi : r.numbers(root["phi"], "phi")) {
      if (!(phi >= 0.0 && phi <= 22.5)) {
        r.error(root["phi"], "phi", "angle " + std::to_string(phi) + " deg lies outside [0, 22.5]");
      }
      sweep.K_grid.push_back(strength_from_phi(phi));
    }
  } else {
    sweep.K_grid = default_K_grid();
  }

  if (root["shots"]) {
    const YAML::Node s = root["shots"];
    if (s.IsScalar() && s.Scalar() == "exact") {
      sweep.shots.reset();
    } else {
      const std::int64_t n = r.integer(s, "shots");
      if (n < 1) r.error(s, "shots", "must be at least 1 or 'exact'");
      sweep.shots = n;
    }
  }
  if (root["noise"]) {
    sweep.noise.visibility = r.number(root["noise"], "noise");
    if (!(sweep.noise.visibility >= 0.0 && sweep.noise.visibility <= 1.0)) {
      r.error(root["noise"], "noise", "gate visibility must lie in [0,1]");
    }
  }
  if (root["resamples"]) {
    const std::int64_t n = r.integer(root["resamples"], "resamples");
    if (n < 100 || n > 1000000) r.error(root["resamples"], "resamples", "must lie in [100, 1e6]");
    sweep.resamples = static_cast<int>(n);
  }
  if (root["seed"]) {
    const std::int64_t seed = r.integer(root["seed"], "seed");
    if (seed < 0) r.error(root["seed"], "seed", "must be nonnegative");
    sweep.seed = static_cast<std::uint64_t>(seed);
  }
  if (root["engine"]) {
    const std::string e = r.text(root["engine"], "engine");
    if (e == "closed") {
      sweep.engine = Engine::Closed;
    } else if (e == "oracle") {
      sweep.engine = Engine::Oracle;
    } else {
      r.error(root["engine"], "engine", "expected 'closed' or 'oracle'");
    }
  }

  std::vector<Quantity> outputs;
  if (root["outputs"]) {
    const YAML::Node o = root["outputs"];
    if (!o.IsSequence() || o.size() == 0) r.error(o, "outputs", "expected a non-empty list");
    for (const auto &item : o) {
      const std::string name = r.text(item, "outputs");
      const auto q = quantity_from_name(name);
      if (!q) r.error(item, "outputs", "unknown quantity '" + name + "'");
      if (std::find(outputs.begin(), outputs.end(), *q) == outputs.end()) outputs.push_back(*q);
    }
  } else {
    outputs = all_quantities();
  }

  return ScenarioConfig{Scenario{std::move(*rho), std::move(A), std::move(B), id}, std::move(sweep),
                        std::move(outputs)};
}

ScenarioConfig load_config(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.string());
}

}  // namespace weakquasi
