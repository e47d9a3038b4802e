#include <doctest.h>

#include "../support/oracles.hpp"
#include "../support/util.hpp"
#include "sectransfer/classify.hpp"
#include "sectransfer/qubits.hpp"
#include "sectransfer/states.hpp"

using namespace sectransfer;

TEST_CASE("two resonant qubits split into blocks 0, 1, 2") {
  const JointSpectrum spec(Hamiltonian::ladder(2), Hamiltonian::ladder(2));
  REQUIRE(spec.blocks().size() == 3);
  CHECK(spec.blocks()[0].dim() == 1);
  const auto& mid = spec.block(Rational(1));
  REQUIRE(mid.dim() == 2);
  // ordered by increasing local-A energy
  CHECK(mid.members[0] == BlockMember{0, 1});
  CHECK(mid.members[1] == BlockMember{1, 0});
  CHECK(spec.e_local_energies(Rational(1), Subsystem::A) == std::vector<Rational>{0, 1});
  CHECK(spec.e_local_energies(Rational(1), Subsystem::B) == std::vector<Rational>{1, 0});
}

TEST_CASE("qutrit-qubit block dimensions") {
  const JointSpectrum spec(Hamiltonian::ladder(3), Hamiltonian::ladder(2));
  std::vector<std::size_t> dims;
  for (const auto& b : spec.blocks()) dims.push_back(b.dim());
  CHECK(dims == std::vector<std::size_t>{1, 2, 2, 1});
}

TEST_CASE("non-resonant gaps give one-dimensional blocks") {
  const JointSpectrum spec(Hamiltonian({Rational(0), Rational(1)}), Hamiltonian({Rational(0), Rational(2)}));
  for (const auto& b : spec.blocks()) CHECK(b.dim() == 1);
}

TEST_CASE("block partition invariants") {
  const Hamiltonian h_a({Rational(2), Rational(0), Rational(1, 2), Rational(3, 2)});
  const Hamiltonian h_b({Rational(1), Rational(0), Rational(1, 2)});
  const JointSpectrum spec(h_a, h_b);
  std::size_t total = 0;
  for (std::size_t k = 0; k < spec.blocks().size(); ++k) {
    const auto& b = spec.blocks()[k];
    total += b.dim();
    if (k > 0) CHECK(spec.blocks()[k - 1].energy < b.energy);
    for (std::size_t p = 0; p < b.dim(); ++p) {
      const auto& m = b.members[p];
      CHECK(h_a.energy(m.a) + h_b.energy(m.b) == b.energy);
      if (p > 0) CHECK(h_a.energy(b.members[p - 1].a) < h_a.energy(m.a));
      const auto& pos = spec.locate(spec.flat_index(m));
      CHECK(pos.block == k);
      CHECK(pos.position == p);
    }
  }
  CHECK(total == spec.total_dim());
}

TEST_CASE("Hamiltonian validation") {
  CHECK(test::error_kind([] { Hamiltonian({Rational(0), Rational(1), Rational(1)}); }) ==
        ErrorKind::DegenerateSpectrum);
  CHECK(test::error_kind([] { Hamiltonian({Rational(0)}); }) == ErrorKind::InvalidHamiltonian);
  const JointSpectrum spec(Hamiltonian::ladder(2), Hamiltonian::ladder(2));
  CHECK(test::error_kind([&] { spec.block(Rational(7)); }) == ErrorKind::UnknownBlock);
}

TEST_CASE("floating-point energies snap to rationals") {
  const std::vector<double> e{0.0, 0.5, 1.25, 1.0 / 3.0};
  const auto h = Hamiltonian::from_doubles(e);
  CHECK(h.energy(1) == Rational(1, 2));
  CHECK(h.energy(2) == Rational(5, 4));
  CHECK(h.energy(3) == Rational(1, 3));
  const std::vector<double> close{0.0, 1.0, 1.0 + 1e-12};
  CHECK(test::error_kind([&] { Hamiltonian::from_doubles(close); }) == ErrorKind::AmbiguousEnergy);
}

TEST_CASE("state validation names the violated invariant") {
  Matrix m = Matrix::Identity(4, 4) / 4.0;
  m(0, 1) = 0.1;
  auto msg = test::error_message([&] { BipartiteState(m, 2, 2); });
  CHECK(msg.find("Hermiticity") != std::string::npos);
  CHECK(msg.find("1e-12") != std::string::npos);

  Matrix t = Matrix::Identity(4, 4) / 2.0;
  CHECK(test::error_message([&] { BipartiteState(t, 2, 2); }).find("trace") != std::string::npos);

  Matrix neg = Matrix::Zero(4, 4);
  neg(0, 0) = 1.2;
  neg(1, 1) = -0.2;
  CHECK(test::error_message([&] { BipartiteState(neg, 2, 2); }).find("positivity") != std::string::npos);

  CHECK(test::error_kind([] { BipartiteState(Matrix::Identity(4, 4) / 4.0, 2, 3); }) ==
        ErrorKind::DimensionMismatch);
}

TEST_CASE("decomposition is lossless and stores only nonzero blocks") {
  std::mt19937_64 gen(11);
  for (auto [da, db] : {std::pair<std::size_t, std::size_t>{2, 2}, {3, 2}, {3, 3}, {4, 4}}) {
    const JointSpectrum spec(Hamiltonian::ladder(da), Hamiltonian::ladder(db));
    const BipartiteState state(oracle::random_density(static_cast<Eigen::Index>(da * db), gen), da, db);
    const auto d = decompose(state, spec);
    CHECK((d.reassemble(spec) - state.matrix()).cwiseAbs().maxCoeff() <= 1e-14);
    double ptot = 0.0;
    for (const auto& [e, blk] : d.diag_blocks) ptot += blk.total;
    CHECK(ptot == doctest::Approx(1.0).epsilon(1e-12));
    for (const auto& [key, blk] : d.coherence_blocks) {
      if (key.first == key.second) {
        for (Eigen::Index i = 0; i < blk.rows(); ++i) CHECK(blk(i, i) == Complex(0.0, 0.0));
      }
    }
  }
  // a diagonal state carries no coherence blocks at all
  const JointSpectrum spec(Hamiltonian::ladder(2), Hamiltonian::ladder(2));
  const auto d = decompose(BipartiteState::diagonal({0.1, 0.2, 0.3, 0.4}, 2, 2), spec);
  CHECK(d.coherence_blocks.empty());
  CHECK(d.p(Rational(1)) == doctest::Approx(0.5));
}

TEST_CASE("useful coherence of the max-coherence fixture") {
  const auto spec = two_qubit_spectrum();
  const double a = std::sqrt(0.03);
  const auto state = TwoQubitParams{0.3, 0.3, 0.1, 0.3, Complex(a, 0.0)}.to_state();
  const auto d = decompose(state, spec);
  const Matrix* chi = d.coherence(Rational(1), Rational(1));
  REQUIRE(chi != nullptr);
  CHECK(std::abs((*chi)(0, 1) - Complex(a, 0.0)) < 1e-15);
  CHECK(d.coherence(Rational(0), Rational(1)) == nullptr);
  CHECK(d.p(Rational(1)) == doctest::Approx(0.4));
}

TEST_CASE("E-local populations of thermal qubits") {
  const auto spec = two_qubit_spectrum();
  const auto state = thermal_product(Hamiltonian::ladder(2), Hamiltonian::ladder(2), 2.0, 1.0);
  const auto d = decompose(state, spec);
  // weights e^{-1} on |01> and e^{-2} on |10>, normalized
  const double w01 = std::exp(-1.0), w10 = std::exp(-2.0);
  const auto q = e_local_reduced(d, Rational(1), Subsystem::A);
  CHECK(q[0] == doctest::Approx(w01 / (w01 + w10)).epsilon(1e-15));
  CHECK(q[1] == doctest::Approx(w10 / (w01 + w10)).epsilon(1e-15));
  CHECK(q == e_local_reduced(d, Rational(1), Subsystem::B));

  const auto pure = decompose(BipartiteState::diagonal({1.0, 0.0, 0.0, 0.0}, 2, 2), spec);
  CHECK(test::error_kind([&] { e_local_reduced(pure, Rational(2), Subsystem::A); }) == ErrorKind::ZeroBlock);
}

TEST_CASE("partial trace and local energies agree with Kronecker oracle") {
  std::mt19937_64 gen(5);
  const JointSpectrum spec(Hamiltonian::ladder(3), Hamiltonian({Rational(0), Rational(1, 2)}));
  const Matrix rho = oracle::random_density(6, gen);
  const Matrix ra = partial_trace(rho, 3, 2, Subsystem::A);
  for (Eigen::Index i = 0; i < 3; ++i)
    for (Eigen::Index j = 0; j < 3; ++j) CHECK(std::abs(ra(i, j) - (rho(2 * i, 2 * j) + rho(2 * i + 1, 2 * j + 1))) < 1e-15);
  for (auto s : {Subsystem::A, Subsystem::B}) {
    const double ref = (oracle::embedded_h(spec, s) * rho).trace().real();
    CHECK(local_energy(rho, spec, s) == doctest::Approx(ref).epsilon(1e-14));
    // dephasing in the local energy basis leaves the local energy untouched
    CHECK(local_energy(dephase_local(rho, 3, 2, s), spec, s) == doctest::Approx(ref).epsilon(1e-14));
  }
}

TEST_CASE("random states are valid and reproducible") {
  const auto a = random_state(3, 3, 42);
  const auto b = random_state(3, 3, 42);
  CHECK(a.matrix() == b.matrix());
  CHECK(a.matrix() != random_state(3, 3, 43).matrix());
  const auto pure = random_state(2, 3, 9, 1);
  CHECK((pure.matrix() * pure.matrix()).trace().real() == doctest::Approx(1.0).epsilon(1e-12));
}
