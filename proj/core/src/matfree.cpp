#include "kronspin/matfree.hpp"

#include <cmath>
#include <random>
#include <string>

#include "kronspin/errors.hpp"
#include "kronspin/kron.hpp"
#include "parallel.hpp"

namespace kronspin {

namespace {

constexpr int kMaxSites = 40;

inline Complex cmul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

void require_site_count(int n) {
  if (n < 1 || n > kMaxSites) {
    throw RangeError("site count must lie in [1, " + std::to_string(kMaxSites) + "], got " +
                     std::to_string(n));
  }
}

// Inserts a zero bit at each position of `bits` (ascending) into g.
inline std::size_t spread(std::size_t g, const std::vector<unsigned>& bits) {
  for (unsigned b : bits) {
    const std::size_t low = g & ((std::size_t{1} << b) - 1);
    g = ((g >> b) << (b + 1)) | low;
  }
  return g;
}

struct LocalEntry {
  std::size_t col;
  Complex value;
};

struct LocalRow {
  std::size_t offset;
  std::vector<LocalEntry> entries;
};

// Dense coefficient * F_{s1} (x) ... (x) F_{sm} over the active sites, as
// nonzero rows with global index offsets.
struct FusedKernel {
  std::vector<unsigned> bits_ascending;
  std::vector<std::size_t> col_offsets;
  std::vector<LocalRow> rows;
};

FusedKernel make_fused(const KronTerm& term, int n) {
  const std::vector<int> sites = term.active_sites();
  const std::size_t m = sites.size();
  const std::size_t dim = std::size_t{1} << m;

  ComplexMatrix local(1, 1, {term.coefficient});
  for (int s : sites) local = kron(local, to_matrix(*term.factors[static_cast<std::size_t>(s - 1)]));

  FusedKernel k;
  k.col_offsets.resize(dim);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    std::size_t off = 0;
    for (std::size_t t = 0; t < m; ++t) {
      if ((idx >> (m - 1 - t)) & 1u) off |= std::size_t{1} << (n - sites[t]);
    }
    k.col_offsets[idx] = off;
  }
  for (std::size_t r = 0; r < dim; ++r) {
    LocalRow row{k.col_offsets[r], {}};
    for (std::size_t c = 0; c < dim; ++c) {
      if (local(r, c) != Complex{}) row.entries.push_back({c, local(r, c)});
    }
    if (!row.entries.empty()) k.rows.push_back(std::move(row));
  }
  for (int s : sites) k.bits_ascending.push_back(static_cast<unsigned>(n - s));
  std::sort(k.bits_ascending.begin(), k.bits_ascending.end());
  return k;
}

void apply_fused(const FusedKernel& k, std::span<const Complex> x, std::span<Complex> y,
                 unsigned workers) {
  const std::size_t groups = x.size() >> k.bits_ascending.size();
  const std::size_t dim = k.col_offsets.size();
  detail::parallel_for(groups, workers, [&](std::size_t begin, std::size_t end) {
    Complex xs[std::size_t{1} << kFusedMaxSites];
    for (std::size_t g = begin; g < end; ++g) {
      const std::size_t base = spread(g, k.bits_ascending);
      for (std::size_t c = 0; c < dim; ++c) xs[c] = x[base + k.col_offsets[c]];
      for (const LocalRow& row : k.rows) {
        Complex acc{};
        for (const LocalEntry& e : row.entries) acc += cmul(e.value, xs[e.col]);
        y[base + row.offset] += acc;
      }
    }
  });
}

// Applies one 2x2 factor in place on bit `bit` of every index.
void apply_site(const Local2& f, unsigned bit, std::span<Complex> s, unsigned workers) {
  const std::size_t pairs = s.size() >> 1;
  const std::vector<unsigned> bits{bit};
  const std::size_t stride = std::size_t{1} << bit;
  detail::parallel_for(pairs, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t g = begin; g < end; ++g) {
      const std::size_t i0 = spread(g, bits);
      const std::size_t i1 = i0 | stride;
      const Complex a0 = s[i0];
      const Complex a1 = s[i1];
      s[i0] = cmul(f[0], a0) + cmul(f[1], a1);
      s[i1] = cmul(f[2], a0) + cmul(f[3], a1);
    }
  });
}

void check_lengths(const KronSum& op, std::size_t x, std::size_t y) {
  if (x != op.dimension() || y != op.dimension()) {
    throw ShapeError("matvec: vector length " + std::to_string(x) + " / " + std::to_string(y) +
                     " does not match operator dimension " + std::to_string(op.dimension()));
  }
}

}  // namespace

Local2 to_local(const ComplexMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw ShapeError("local factors must be 2x2");
  return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
}

ComplexMatrix to_matrix(const Local2& m) { return {{m[0], m[1]}, {m[2], m[3]}}; }

Local2 pauli_local(PauliAxis axis) { return to_local(pauli(axis)); }

std::vector<int> KronTerm::active_sites() const {
  std::vector<int> sites;
  for (std::size_t k = 0; k < factors.size(); ++k)
    if (factors[k]) sites.push_back(static_cast<int>(k) + 1);
  return sites;
}

KronSum::KronSum(int n_sites) : n_sites_(n_sites) { require_site_count(n_sites); }

KronSum& KronSum::add_term(KronTerm term) {
  if (term.factors.size() != static_cast<std::size_t>(n_sites_)) {
    throw ShapeError("KronTerm has " + std::to_string(term.factors.size()) + " factors, sum has " +
                     std::to_string(n_sites_) + " sites");
  }
  terms_.push_back(std::move(term));
  return *this;
}

KronSum& KronSum::add_identity(Complex coefficient) {
  return add_term({coefficient, std::vector<std::optional<Local2>>(n_sites_)});
}

KronSum& KronSum::add_single(Complex coefficient, int site, const Local2& op) {
  if (site < 1 || site > n_sites_) throw RangeError("add_single: site out of range");
  KronTerm t{coefficient, std::vector<std::optional<Local2>>(n_sites_)};
  t.factors[static_cast<std::size_t>(site - 1)] = op;
  return add_term(std::move(t));
}

KronSum& KronSum::add_pair(Complex coefficient, int site_i, const Local2& op_i, int site_j,
                           const Local2& op_j) {
  if (site_i < 1 || site_i > n_sites_ || site_j < 1 || site_j > n_sites_ || site_i == site_j) {
    throw RangeError("add_pair: sites must be distinct and in range");
  }
  KronTerm t{coefficient, std::vector<std::optional<Local2>>(n_sites_)};
  t.factors[static_cast<std::size_t>(site_i - 1)] = op_i;
  t.factors[static_cast<std::size_t>(site_j - 1)] = op_j;
  return add_term(std::move(t));
}

StateVector::StateVector(int n_sites) : n_sites_(n_sites) {
  require_site_count(n_sites);
  amplitudes_.assign(std::size_t{1} << n_sites, Complex{});
}

StateVector::StateVector(int n_sites, std::vector<Complex> amplitudes)
    : n_sites_(n_sites), amplitudes_(std::move(amplitudes)) {
  require_site_count(n_sites);
  if (amplitudes_.size() != (std::size_t{1} << n_sites)) {
    throw ShapeError("state vector length " + std::to_string(amplitudes_.size()) +
                     " is not 2^" + std::to_string(n_sites));
  }
  for (const Complex& z : amplitudes_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw ContractError("state vector entries must be finite");
    }
  }
}

StateVector StateVector::basis(int n_sites, std::size_t index) {
  StateVector v(n_sites);
  if (index >= v.size()) throw RangeError("basis index out of range");
  v[index] = 1.0;
  return v;
}

StateVector StateVector::random(int n_sites, std::uint64_t seed) {
  StateVector v(n_sites);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (Complex& z : v.amplitudes_) {
    const double re = dist(rng);
    const double im = dist(rng);
    z = {re, im};
  }
  return v;
}

double StateVector::norm() const {
  double sum = 0.0;
  for (const Complex& z : amplitudes_) sum += std::norm(z);
  return std::sqrt(sum);
}

Complex inner(std::span<const Complex> x, std::span<const Complex> y) {
  if (x.size() != y.size()) throw ShapeError("inner: length mismatch");
  Complex sum{};
  for (std::size_t k = 0; k < x.size(); ++k) sum += std::conj(x[k]) * y[k];
  return sum;
}

std::size_t matvec_scratch_buffers(const KronSum& op) {
  for (const KronTerm& t : op.terms())
    if (t.active_sites().size() > kFusedMaxSites) return 1;
  return 0;
}

void matvec_accumulate(const KronSum& op, std::span<const Complex> x, std::span<Complex> y,
                       unsigned workers) {
  check_lengths(op, x.size(), y.size());
  const int n = op.n_sites();
  std::vector<Complex> scratch;
  for (const KronTerm& term : op.terms()) {
    if (term.coefficient == Complex{}) continue;
    const std::vector<int> sites = term.active_sites();
    if (sites.empty()) {
      const Complex c = term.coefficient;
      detail::parallel_for(x.size(), workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) y[k] += cmul(c, x[k]);
      });
    } else if (sites.size() <= kFusedMaxSites) {
      apply_fused(make_fused(term, n), x, y, workers);
    } else {
      scratch.assign(x.begin(), x.end());
      for (int s : sites) {
        apply_site(*term.factors[static_cast<std::size_t>(s - 1)], static_cast<unsigned>(n - s),
                   scratch, workers);
      }
      const Complex c = term.coefficient;
      detail::parallel_for(x.size(), workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) y[k] += cmul(c, scratch[k]);
      });
    }
  }
}

StateVector matvec(const KronSum& op, const StateVector& x, unsigned workers) {
  if (x.n_sites() != op.n_sites()) {
    throw ShapeError("matvec: state has " + std::to_string(x.n_sites()) + " sites, operator " +
                     std::to_string(op.n_sites()));
  }
  StateVector y(op.n_sites());
  matvec_accumulate(op, x.amplitudes(), y.amplitudes(), workers);
  return y;
}

ComplexMatrix to_dense(const KronSum& op, int dense_cap) {
  const int n = op.n_sites();
  if (n > dense_cap) {
    throw CapacityError("to_dense: " + std::to_string(n) + " sites exceeds the dense cap of " +
                        std::to_string(dense_cap));
  }
  const ComplexMatrix e = identity(2);
  ComplexMatrix out(op.dimension(), op.dimension());
  for (const KronTerm& term : op.terms()) {
    ComplexMatrix chain = term.factors[0] ? to_matrix(*term.factors[0]) : e;
    for (std::size_t k = 1; k < term.factors.size(); ++k) {
      chain = kron(chain, term.factors[k] ? to_matrix(*term.factors[k]) : e);
    }
    add_scaled(out, term.coefficient, chain);
  }
  return out;
}

KronSum spec_to_kronsum(const HamiltonianSpec& spec) {
  KronSum op(spec.n_sites());
  const Local2 sz = pauli_local(PauliAxis::z);
  for (int k = 1; k <= spec.n_sites(); ++k) op.add_single(-spec.mu_b0(), k, sz);
  for (const CouplingEdge& edge : spec.couplings()) {
    for (PauliAxis axis : kPauliAxes) {
      const Local2 s = pauli_local(axis);
      op.add_pair(edge.strength, edge.i, s, edge.j, s);
    }
  }
  return op;
}

KronSum total_component_sum(PauliAxis axis, int n) {
  KronSum op(n);
  const Local2 s = pauli_local(axis);
  for (int k = 1; k <= n; ++k) op.add_single(0.5, k, s);
  return op;
}

KronSum total_spin_squared_sum(int n) {
  KronSum op(n);
  op.add_identity(0.75 * n);
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      for (PauliAxis axis : kPauliAxes) {
        const Local2 s = pauli_local(axis);
        op.add_pair(0.5, i, s, j, s);
      }
    }
  }
  return op;
}

double hermitian_probe(const KronSum& op, int samples, std::uint64_t seed, unsigned workers) {
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const StateVector x = StateVector::random(op.n_sites(), seed + 2 * static_cast<std::uint64_t>(s));
    const StateVector y =
        StateVector::random(op.n_sites(), seed + 2 * static_cast<std::uint64_t>(s) + 1);
    const StateVector opx = matvec(op, x, workers);
    const StateVector opy = matvec(op, y, workers);
    const Complex lhs = inner(x.amplitudes(), opy.amplitudes());
    const Complex rhs = std::conj(inner(y.amplitudes(), opx.amplitudes()));
    const double scale = std::max({x.norm() * opy.norm(), y.norm() * opx.norm(), 1e-300});
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

double commutator_probe(const KronSum& a, const KronSum& b, std::uint64_t seed, unsigned workers) {
  if (a.n_sites() != b.n_sites()) throw ShapeError("commutator_probe: site counts differ");
  StateVector x = StateVector::random(a.n_sites(), seed);
  const double nx = x.norm();
  for (Complex& z : x.amplitudes()) z /= nx;
  const StateVector abx = matvec(a, matvec(b, x, workers), workers);
  const StateVector bax = matvec(b, matvec(a, x, workers), workers);
  double sum = 0.0;
  for (std::size_t k = 0; k < abx.size(); ++k) sum += std::norm(abx[k] - bax[k]);
  return std::sqrt(sum);
}

}  // namespace kronspin
