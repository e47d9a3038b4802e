#pragma once

#include "sectransfer/classify.hpp"
#include "sectransfer/optimize.hpp"
#include "sectransfer/qubits.hpp"
#include "sectransfer/spectra.hpp"
#include "sectransfer/states.hpp"
#include "sectransfer/transfer.hpp"
#include "sectransfer/unitaries.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace sectransfer::io {

using Json = nlohmann::ordered_json;

// Hamiltonian: {"energies": [[num, den], ...], "labels": [...]}
Json to_json(const Hamiltonian& h);
Hamiltonian hamiltonian_from_json(const Json& j);

// State: {"dims": [dA, dB], "re": [[...]], "im": [[...]]}
Json to_json(const BipartiteState& state);
BipartiteState state_from_json(const Json& j, const Tolerances& tol = default_tolerances());

Json matrix_to_json(const Matrix& m);  // {"re": ..., "im": ...}
Matrix matrix_from_json(const Json& j);

// SecUnitary: {"blocks": {"<E as p/q>": {"re": ..., "im": ...}}}. Each block is
// the operator matrix in member order (column i is U|i_E>).
Json to_json(const SecUnitary& u);
SecUnitary unitary_from_json(const Json& j);

Json to_json(const StateDecomposition& d);
Json to_json(const TransferReport& r);
Json to_json(const OptimizationResult& r);
Json to_json(const FlowClassification& c);
Json to_json(const QubitOptimum& q);

/// Columns: E,p_E,probs,max_abs_coherence. `probs` is a ';'-separated list in
/// member order; the last column is max |alpha| over the (E, E) block.
void write_decomposition_csv(std::ostream& os, const StateDecomposition& d);

/// Columns: c_x,c_y,c_z,max_transfer,concurrence,separable (header included).
void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows);

/// 17 significant digits.
std::string format_double(double x);

Json read_json_file(const std::string& path);

}  // namespace sectransfer::io
