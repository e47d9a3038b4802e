#include "sectransfer/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>

namespace sectransfer::io {

namespace {

Json rational_pair(const Rational& r) { return Json::array({r.numerator(), r.denominator()}); }

Rational rational_from_json(const Json& j) {
  if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer()) {
    const auto den = j[1].get<std::int64_t>();
    if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in energy");
    return Rational(j[0].get<std::int64_t>(), den);
  }
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw Error(ErrorKind::Parse, "energy must be [num, den], an integer, or \"p/q\"");
}

Json real_rows(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c) + 0.0);  // folds -0 to 0
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd rows_to_real(const Json& j, const char* field) {
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::Parse, std::string(field) + " must be a nonempty array of rows");
  const auto n_rows = static_cast<Eigen::Index>(j.size());
  const auto n_cols = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXd m(n_rows, n_cols);
  for (Eigen::Index r = 0; r < n_rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n_cols) {
      throw Error(ErrorKind::Parse, std::string(field) + " rows have unequal lengths");
    }
    for (Eigen::Index c = 0; c < n_cols; ++c) m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
  }
  return m;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

Json to_json(const Hamiltonian& h) {
  Json j;
  j["energies"] = Json::array();
  for (const auto& e : h.energies()) j["energies"].push_back(rational_pair(e));
  if (!h.labels().empty()) j["labels"] = h.labels();
  return j;
}

Hamiltonian hamiltonian_from_json(const Json& j) {
  if (!j.contains("energies") || !j["energies"].is_array()) {
    throw Error(ErrorKind::Parse, "Hamiltonian needs an \"energies\" array");
  }
  std::vector<Rational> energies;
  for (const auto& e : j["energies"]) energies.push_back(rational_from_json(e));
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
  return Hamiltonian(std::move(energies), std::move(labels));
}

Json matrix_to_json(const Matrix& m) {
  Json j;
  j["re"] = real_rows(m.real());
  j["im"] = real_rows(m.imag());
  return j;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.contains("re")) throw Error(ErrorKind::Parse, "matrix needs a \"re\" field");
  const Eigen::MatrixXd re = rows_to_real(j["re"], "re");
  Eigen::MatrixXd im = Eigen::MatrixXd::Zero(re.rows(), re.cols());
  if (j.contains("im")) {
    im = rows_to_real(j["im"], "im");
    if (im.rows() != re.rows() || im.cols() != re.cols()) {
      throw Error(ErrorKind::Parse, "re and im parts differ in shape");
    }
  }
  Matrix m(re.rows(), re.cols());
  m.real() = re;
  m.imag() = im;
  return m;
}

Json to_json(const BipartiteState& state) {
  Json j;
  j["dims"] = {state.dim_a(), state.dim_b()};
  const auto parts = matrix_to_json(state.matrix());
  j["re"] = parts["re"];
  j["im"] = parts["im"];
  return j;
}

BipartiteState state_from_json(const Json& j, const Tolerances& tol) {
  if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].size() != 2) {
    throw Error(ErrorKind::Parse, "state needs \"dims\": [dA, dB]");
  }
  return BipartiteState(matrix_from_json(j), j["dims"][0].get<std::size_t>(), j["dims"][1].get<std::size_t>(), tol);
}

Json to_json(const SecUnitary& u) {
  Json blocks = Json::object();
  for (const auto& [energy, m] : u.blocks()) blocks[to_string(energy)] = matrix_to_json(m);
  return Json{{"blocks", blocks}};
}

SecUnitary unitary_from_json(const Json& j) {
  if (!j.contains("blocks") || !j["blocks"].is_object()) {
    throw Error(ErrorKind::Parse, "unitary needs a \"blocks\" object");
  }
  std::map<Rational, Matrix> blocks;
  for (const auto& [key, value] : j["blocks"].items()) blocks.emplace(parse_rational(key), matrix_from_json(value));
  return SecUnitary(std::move(blocks));
}

Json to_json(const StateDecomposition& d) {
  Json j;
  j["blocks"] = Json::array();
  for (const auto& [energy, blk] : d.diag_blocks) {
    j["blocks"].push_back({{"E", to_string(energy)}, {"p_E", blk.total}, {"probs", blk.probs}});
  }
  j["coherences"] = Json::array();
  for (const auto& [key, alpha] : d.coherence_blocks) {
    Json c{{"E", to_string(key.first)}, {"E_prime", to_string(key.second)}};
    const auto parts = matrix_to_json(alpha);
    c["re"] = parts["re"];
    c["im"] = parts["im"];
    j["coherences"].push_back(std::move(c));
  }
  return j;
}

Json to_json(const TransferReport& r) {
  Json j;
  j["target"] = std::string(to_string(r.target));
  j["total"] = r.total;
  j["diagonal"] = r.diagonal;
  j["coherent"] = r.coherent;
  j["eta"] = Json::object();
  for (const auto& [k, v] : r.eta) j["eta"][std::to_string(k)] = v;
  j["per_block_diagonal"] = Json::object();
  for (const auto& [e, v] : r.per_block_diagonal) j["per_block_diagonal"][to_string(e)] = v;
  j["unit"] = kEnergyUnit;
  return j;
}

Json to_json(const OptimizationResult& r) {
  Json j;
  j["value"] = r.value;
  j["method"] = std::string(to_string(r.method));
  j["samples"] = r.samples ? Json(*r.samples) : Json(nullptr);
  j["unitary"] = to_json(r.unitary);
  j["unit"] = kEnergyUnit;
  return j;
}

Json to_json(const FlowClassification& c) {
  Json j;
  j["direction"] = std::string(to_string(c.direction));
  j["member"] = c.direction != FlowDirection::None;
  j["failing_blocks"] = Json::array();
  for (const auto& e : c.failing_blocks) j["failing_blocks"].push_back(to_string(e));
  j["has_useful_coherence"] = c.has_useful_coherence;
  return j;
}

Json to_json(const QubitOptimum& q) {
  return Json{{"value", q.value},
              {"r_star", q.r_star},
              {"x_star", q.x_star},
              {"phi_star", q.phi_star},
              {"alpha_star", {{"re", q.alpha_star.real()}, {"im", q.alpha_star.imag()}}},
              {"unit", kEnergyUnit}};
}

void write_decomposition_csv(std::ostream& os, const StateDecomposition& d) {
  os << "E,p_E,probs,max_abs_coherence\n";
  for (const auto& [energy, blk] : d.diag_blocks) {
    os << to_string(energy) << ',' << format_double(blk.total) << ',';
    for (std::size_t i = 0; i < blk.probs.size(); ++i) {
      if (i > 0) os << ';';
      os << format_double(blk.probs[i]);
    }
    const Matrix* alpha = d.coherence(energy, energy);
    os << ',' << format_double(alpha ? alpha->cwiseAbs().maxCoeff() : 0.0) << '\n';
  }
}

void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
  os << "c_x,c_y,c_z,max_transfer,concurrence,separable\n";
  for (const auto& r : rows) {
    os << format_double(r.cx) << ',' << format_double(r.cy) << ',' << format_double(r.cz) << ','
       << format_double(r.max_transfer) << ',' << format_double(r.concurrence) << ',' << (r.separable ? 1 : 0)
       << '\n';
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, "'" + path + "': " + e.what());
  }
}

}  // namespace sectransfer::io
