#include <doctest.h>

#include "../support/oracles.hpp"
#include "../support/util.hpp"
#include "sectransfer/qubits.hpp"
#include "sectransfer/transfer.hpp"

using namespace sectransfer;

namespace {

const std::pair<std::size_t, std::size_t> kDims[] = {{2, 2}, {3, 2}, {3, 3}, {4, 4}};

JointSpectrum ladders(std::size_t da, std::size_t db) { return {Hamiltonian::ladder(da), Hamiltonian::ladder(db)}; }

}  // namespace

TEST_CASE("sampled unitaries commute with the total Hamiltonian") {
  for (auto [da, db] : kDims) {
    const auto spec = ladders(da, db);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto u = sample_haar(spec, seed);
      const Matrix full = to_full_matrix(u, spec);
      CHECK(oracle::commutator_norm(full, spec) < 1e-13);
      CHECK((full.adjoint() * full - Matrix::Identity(full.rows(), full.cols())).cwiseAbs().maxCoeff() < 1e-13);
    }
  }
}

TEST_CASE("sample_haar is deterministic in the seed") {
  const auto spec = ladders(3, 3);
  CHECK(to_full_matrix(sample_haar(spec, 1), spec) == to_full_matrix(sample_haar(spec, 1), spec));
  CHECK(to_full_matrix(sample_haar(spec, 1), spec) != to_full_matrix(sample_haar(spec, 2), spec));
}

TEST_CASE("Haar moments of a single matrix element") {
  // E|U00|^2 = 1/d, E|U00|^4 = 2/(d(d+1))
  constexpr int d = 3;
  constexpr int n = 20000;
  CounterRng rng(derive_stream(99, {}));
  double m2 = 0.0, m4 = 0.0;
  for (int k = 0; k < n; ++k) {
    const double x = std::norm(haar_unitary(d, rng)(0, 0));
    m2 += x;
    m4 += x * x;
  }
  m2 /= n;
  m4 /= n;
  const double var2 = (d - 1.0) / (d * d * (d + 1.0));
  CHECK(std::abs(m2 - 1.0 / d) < 4.0 * std::sqrt(var2 / n));
  CHECK(std::abs(m4 - 2.0 / (d * (d + 1.0))) < 0.01);
}

TEST_CASE("unitary validation") {
  std::map<Rational, Matrix> blocks{{Rational(0), Matrix::Identity(1, 1) * 2.0}};
  CHECK(test::error_kind([&] { SecUnitary{blocks}; }) == ErrorKind::NotUnitary);
  const auto u = SecUnitary::identity(ladders(2, 2));
  CHECK(test::error_kind([&] { u.check_matches(ladders(3, 2)); }) == ErrorKind::BlockMismatch);
  CHECK_NOTHROW(u.check_matches(ladders(2, 2)));
}

TEST_CASE("permutations are never potentially coherent") {
  const auto spec = ladders(3, 3);
  const auto perm = permutation_unitary(spec, {{Rational(2), {2, 0, 1}}, {Rational(1), {1, 0}}});
  CHECK_FALSE(is_potentially_coherent(perm));
  CHECK(is_potentially_coherent(sample_haar(spec, 3)));
  // U|i_E> = |perm[i]_E>
  const auto& blk = spec.block(Rational(2));
  const Matrix full = to_full_matrix(perm, spec);
  CHECK(std::abs(full(spec.flat_index(blk.members[2]), spec.flat_index(blk.members[0])) - 1.0) < 1e-15);
  CHECK(std::abs(perm.coefficient(Rational(2), 0, 2) - 1.0) < 1e-15);
}

TEST_CASE("transfer values against Kronecker-product evolution") {
  std::mt19937_64 gen(2024);
  for (auto [da, db] : kDims) {
    const auto spec = ladders(da, db);
    for (int k = 0; k < 5; ++k) {
      const BipartiteState state(oracle::random_density(static_cast<Eigen::Index>(da * db), gen), da, db);
      const auto u = oracle::random_sec(spec, gen);
      const Matrix full = to_full_matrix(u, spec);
      for (auto t : {Subsystem::A, Subsystem::B}) {
        const double ref = oracle::energy_change(state.matrix(), full, spec, t);
        const auto rep = analyze(state, u, spec, t);
        CHECK(std::abs(rep.total - ref) < 1e-13);
        CHECK(std::abs(rep.total - rep.diagonal - rep.coherent) < 1e-13);
        const auto d = decompose(state, spec);
        CHECK(std::abs(rep.diagonal - oracle::energy_change(d.diagonal_matrix(spec), full, spec, t)) < 1e-13);
        double eta_energy = 0.0, eta_sum = 0.0;
        for (const auto& [lvl, eta] : rep.eta) {
          eta_energy += eta * spec.hamiltonian(t).energy_value(lvl);
          eta_sum += eta;
        }
        CHECK(std::abs(eta_energy - rep.coherent) < 1e-13);
        // coherences are traceless, so the populations they move sum to zero
        CHECK(std::abs(eta_sum) < 1e-13);
      }
      CHECK(std::abs(transfer_direct(state, u, spec, Subsystem::A) + transfer_direct(state, u, spec, Subsystem::B)) <
            1e-13);
    }
  }
}

TEST_CASE("only (E, E) coherences move energy") {
  std::mt19937_64 gen(7);
  const auto spec = ladders(3, 3);
  const BipartiteState state(oracle::random_density(9, gen), 3, 3);
  const auto d = decompose(state, spec);
  const Matrix local_only = d.without_cross_block_coherence().reassemble(spec);
  const Matrix no_coherence = d.without_coherence().reassemble(spec);
  for (int k = 0; k < 10; ++k) {
    const auto u = oracle::random_sec(spec, gen);
    CHECK(std::abs(transfer_direct(state, u, spec, Subsystem::A) - transfer_direct(local_only, u, spec, Subsystem::A)) <
          1e-13);
    const auto stripped = decompose(no_coherence, spec);
    CHECK(std::abs(transfer_coherent(stripped, u, spec, Subsystem::A).value) < 1e-13);
  }
}

TEST_CASE("per-block diagonal contributions are independent") {
  const auto spec = ladders(3, 2);
  const auto u = sample_haar(spec, 17);
  const std::vector<double> base{0.10, 0.05, 0.20, 0.15, 0.30, 0.20};
  std::vector<double> moved = base;
  // reshuffle weight inside block E = 1 (members |0,1>, |1,0>)
  moved[1] = 0.15;
  moved[2] = 0.10;
  const auto a = transfer_diagonal(decompose(BipartiteState::diagonal(base, 3, 2), spec), u, spec, Subsystem::A);
  const auto b = transfer_diagonal(decompose(BipartiteState::diagonal(moved, 3, 2), spec), u, spec, Subsystem::A);
  for (const auto& [e, v] : a.per_block) {
    if (e == Rational(1)) {
      CHECK(std::abs(v - b.per_block.at(e)) > 1e-6);
    } else {
      CHECK(v == doctest::Approx(b.per_block.at(e)).epsilon(1e-15));
    }
  }
}

TEST_CASE("two-qubit SEC parametrization reproduces the closed forms") {
  const auto spec = two_qubit_spectrum();
  const TwoQubitParams p{0.25, 0.35, 0.15, 0.25, std::polar(0.2, 0.7)};
  const auto state = p.to_state();
  const auto d = decompose(state, spec);
  for (double r : {0.0, 0.3, 0.7071, 1.0}) {
    for (double phi : {0.0, 1.1, -2.5}) {
      const auto u = sec_unitary_2q({r, phi, 0.4, -1.3, 2.2, 0.9});
      const double diag = transfer_diagonal(d, u, spec, Subsystem::A).value;
      const double coh = transfer_coherent(d, u, spec, Subsystem::A).value;
      CHECK(diag == doctest::Approx((p.p01 - p.p10) * r * r).epsilon(1e-13));
      CHECK(coh == doctest::Approx(2.0 * (p.alpha * std::polar(1.0, phi)).real() * r * std::sqrt(1 - r * r))
                       .epsilon(1e-13));
      CHECK(diag == doctest::Approx(delta_diag_2q(p, r)).epsilon(1e-13));
      CHECK(coh == doctest::Approx(delta_coh_2q(p, r, phi)).epsilon(1e-13));

      // reduced state of A after evolving rho_Diag
      const Matrix ra = partial_trace(evolve(d.diagonal_matrix(spec), u, spec), 2, 2, Subsystem::A);
      CHECK(ra(0, 0).real() == doctest::Approx(p.p00 + p.p01 * (1 - r * r) + p.p10 * r * r).epsilon(1e-13));

      // the individual phases drop out once the effective phase is fixed
      const auto other = sec_unitary_2q({r, phi, -0.8, 0.5, 3.0, 1.7});
      CHECK(transfer_direct(state, other, spec, Subsystem::A) ==
            doctest::Approx(transfer_direct(state, u, spec, Subsystem::A)).epsilon(1e-13));
    }
  }
}
