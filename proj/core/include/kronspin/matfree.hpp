#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kronspin/hamiltonian.hpp"
#include "kronspin/linalg.hpp"
#include "kronspin/matrix.hpp"
#include "kronspin/spin.hpp"

namespace kronspin {

/// Row-major 2x2 single-site operator.
using Local2 = std::array<Complex, 4>;

Local2 to_local(const ComplexMatrix& m);
ComplexMatrix to_matrix(const Local2& m);
Local2 pauli_local(PauliAxis axis);

/// coefficient * F_1 (x) F_2 (x) ... (x) F_n; an empty slot is the identity.
struct KronTerm {
  Complex coefficient{1.0};
  std::vector<std::optional<Local2>> factors;

  /// Sites (1-based) carrying a non-identity factor, ascending.
  std::vector<int> active_sites() const;
};

/// Sum of Kronecker terms over a fixed number of spin-1/2 sites.
///
/// Site 1 is the most significant bit of a basis-state index, so basis state
/// |b_1 b_2 ... b_n> has index sum_k b_k 2^(n-k), matching the left-to-right
/// order of kron.
class KronSum {
 public:
  explicit KronSum(int n_sites);

  int n_sites() const noexcept { return n_sites_; }
  std::size_t dimension() const noexcept { return std::size_t{1} << n_sites_; }
  const std::vector<KronTerm>& terms() const noexcept { return terms_; }

  /// Throws ShapeError if the factor count differs from n_sites.
  KronSum& add_term(KronTerm term);
  KronSum& add_identity(Complex coefficient);
  KronSum& add_single(Complex coefficient, int site, const Local2& op);
  KronSum& add_pair(Complex coefficient, int site_i, const Local2& op_i, int site_j,
                    const Local2& op_j);

 private:
  int n_sites_;
  std::vector<KronTerm> terms_;
};

/// 2^n amplitudes over n spin-1/2 sites.
class StateVector {
 public:
  /// Zero vector.
  explicit StateVector(int n_sites);
  /// Throws ShapeError unless the length is 2^n_sites, ContractError for
  /// non-finite entries.
  StateVector(int n_sites, std::vector<Complex> amplitudes);

  static StateVector basis(int n_sites, std::size_t index);
  /// Entries uniform in [-1, 1]^2, deterministic for a seed.
  static StateVector random(int n_sites, std::uint64_t seed);

  int n_sites() const noexcept { return n_sites_; }
  std::size_t size() const noexcept { return amplitudes_.size(); }
  std::span<Complex> amplitudes() noexcept { return amplitudes_; }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  Complex& operator[](std::size_t k) noexcept { return amplitudes_[k]; }
  const Complex& operator[](std::size_t k) const noexcept { return amplitudes_[k]; }

  double norm() const;

 private:
  int n_sites_;
  std::vector<Complex> amplitudes_;
};

/// <x, y> = sum conj(x_k) y_k.
Complex inner(std::span<const Complex> x, std::span<const Complex> y);

/// Worker count for matvec: $KRONSPIN_THREADS if set to a positive integer,
/// otherwise std::thread::hardware_concurrency() (at least 1).
unsigned default_workers();

/// Terms with at most this many non-identity factors are applied in one
/// gather pass; longer terms go through a per-site scratch buffer.
inline constexpr std::size_t kFusedMaxSites = 3;

/// y = op * x without materialising op. Each term costs O(2^n) work per
/// active site group. The index space is split across `workers` threads; the
/// result is bitwise identical for any worker count.
StateVector matvec(const KronSum& op, const StateVector& x, unsigned workers = default_workers());

/// y += op * x, y and x distinct buffers of length 2^n.
void matvec_accumulate(const KronSum& op, std::span<const Complex> x, std::span<Complex> y,
                       unsigned workers = default_workers());

/// Number of 2^n buffers matvec allocates besides its output (0 or 1).
std::size_t matvec_scratch_buffers(const KronSum& op);

/// Dense 2^n x 2^n matrix of the sum. Throws CapacityError above dense_cap.
ComplexMatrix to_dense(const KronSum& op, int dense_cap = kDenseSiteCap);

/// n Zeeman terms followed by three exchange terms per coupling (x, y, z).
KronSum spec_to_kronsum(const HamiltonianSpec& spec);

/// S_axis as a sum of n single-site terms with coefficient 1/2.
KronSum total_component_sum(PauliAxis axis, int n);

/// S^2 = (3n/4) E + (1/2) sum_{i<j} sum_axis s_i s_j.
KronSum total_spin_squared_sum(int n);

/// Largest |<x, Op y> - conj(<y, Op x>)| relative to ||x|| ||Op y|| over
/// `samples` seeded random pairs.
double hermitian_probe(const KronSum& op, int samples, std::uint64_t seed,
                       unsigned workers = default_workers());

/// ||(A B - B A) x|| for a seeded random unit vector x.
double commutator_probe(const KronSum& a, const KronSum& b, std::uint64_t seed,
                        unsigned workers = default_workers());

enum class Extremal { lowest, highest };

struct LanczosOptions {
  Extremal which = Extremal::lowest;
  std::size_t k = 1;
  double tol = 1e-10;
  std::size_t max_iter = 300;
  std::uint64_t seed = 1;
  bool want_vectors = false;
  unsigned workers = default_workers();
};

/// k extremal eigenvalues of a Hermitian KronSum by Lanczos with full
/// reorthogonalisation.
///
/// Converged when every requested Ritz pair has residual
/// ||Op v - theta v|| <= tol * max|theta|. A single Krylov sequence sees each
/// distinct eigenvalue once, so degenerate eigenvalues are returned once.
/// If the Krylov space closes before k values are found, the values found are
/// returned (all exact). Eigenvalues ascend. Throws ContractError if the
/// Hermitian probe fails and ConvergenceError after max_iter iterations.
Spectrum lanczos_extremal(const KronSum& op, const LanczosOptions& options);

}  // namespace kronspin
