#pragma once

#include <array>
#include <string>
#include <vector>

#include "kronspin/kron.hpp"
#include "kronspin/matrix.hpp"
#include "kronspin/spin.hpp"

namespace kronspin {

/// Isotropic exchange coupling J between two distinct sites, stored with i < j.
struct CouplingEdge {
  int i = 1;
  int j = 2;
  double strength = 0.0;

  friend bool operator==(const CouplingEdge&, const CouplingEdge&) = default;
};

/// n spin-1/2 sites in a field along z (mu_b0 = mu * B0) with pairwise couplings.
///
/// Couplings keep their insertion order; that order fixes the summation order
/// of every Hamiltonian built from the spec.
class HamiltonianSpec {
 public:
  /// Validates and normalises edges. Throws RangeError for n < 1, edge
  /// endpoints outside [1, n], self-loops or duplicate edges, and
  /// ContractError for non-finite values.
  HamiltonianSpec(int n_sites, double mu_b0, std::vector<CouplingEdge> couplings = {});

  /// Open chain 1-2-...-n with uniform coupling.
  static HamiltonianSpec chain(int n_sites, double j, double mu_b0 = 0.0);

  int n_sites() const noexcept { return n_sites_; }
  double mu_b0() const noexcept { return mu_b0_; }
  const std::vector<CouplingEdge>& couplings() const noexcept { return couplings_; }

  friend bool operator==(const HamiltonianSpec&, const HamiltonianSpec&) = default;

 private:
  int n_sites_;
  double mu_b0_;
  std::vector<CouplingEdge> couplings_;
};

/// -mu_b0 (sz (x) E + E (x) sz) + j12 (sx (x) sx + sy (x) sy + sz (x) sz).
ComplexMatrix build_h2(double mu_b0, double j12);

/// Three-site analogue of build_h2 with couplings J12, J23, J31, each
/// operator in the slot of its own site.
ComplexMatrix build_h3(double mu_b0, double j12, double j23, double j31);

/// -mu_b0 sum_k sz_k + sum_edges J_ij sum_axis s_i s_j as a dense matrix.
/// Throws CapacityError above `dense_cap` sites.
ComplexMatrix build_general(const HamiltonianSpec& spec, int dense_cap = kDenseSiteCap);

/// Weights a_x, a_y, a_z of the two-spin total-spin expansion.
struct WeightTriple {
  double a_x = 0.0;
  double a_y = 0.0;
  double a_z = 0.0;
};

/// Result of rebuilding the two-spin Hamiltonian from S_z and S^2.
struct H2DecompositionReport {
  /// Residual of (a_z S_z-part + S_x^2 + S_y^2 + S_z^2 - constant) against
  /// build_h2(zeeman, exchange).
  ResidualReport residual;
  /// S_alpha^2 = 2 a_alpha^2 [E (x) E + s_alpha (x) s_alpha], one per axis.
  std::array<ResidualReport, 3> square_identities;
  bool isotropic = false;
  /// mu_b0 and J used for the comparison. J = 2 a_z^2.
  double zeeman = 0.0;
  double exchange = 0.0;
  /// Multiple of the identity removed from the sum: 2 (a_x^2 + a_y^2 + a_z^2).
  double identity_offset = 0.0;
};

/// Rebuilds the two-spin Hamiltonian from its total-spin expansion.
///
/// The linear term is a_z (sz (x) E + E (x) sz); it matches the Zeeman part of
/// build_h2(mu_b0, .) when mu_b0 = -a_z. Anisotropic weights are reported as
/// a structural mismatch (isotropic = false, residual.passed = false).
H2DecompositionReport verify_h2_decomposition(const WeightTriple& weights, double mu_b0,
                                              double tol = kDefaultTolerance,
                                              double identity_tol = 1e-12);

}  // namespace kronspin
