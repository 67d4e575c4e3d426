#include "cohfreeze/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "cohfreeze/error.hpp"

namespace cohfreeze {

namespace {

constexpr int kMaxAttempts = 1000;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double random_phase(Rng& rng) { return uniform(rng, 0.0, 2.0 * std::numbers::pi); }

Permutation random_permutation(std::size_t d, Rng& rng) {
  std::vector<std::size_t> image(d);
  std::iota(image.begin(), image.end(), std::size_t{0});
  std::shuffle(image.begin(), image.end(), rng);
  return Permutation(std::move(image));
}

// Vector of n magnitudes in [lo, 1], scaled to unit Euclidean norm.
std::vector<double> unit_magnitudes(std::size_t n, double lo, Rng& rng) {
  std::vector<double> v(n);
  double norm = 0.0;
  for (double& x : v) {
    x = uniform(rng, lo, 1.0);
    norm += x * x;
  }
  for (double& x : v) x /= std::sqrt(norm);
  return v;
}

}  // namespace

UnitaryWitness random_si_unitary(std::size_t d, Rng& rng) {
  UnitaryWitness u{random_permutation(d, rng), std::vector<double>(d)};
  for (double& t : u.phases) t = random_phase(rng);
  return u;
}

SioChannel channel_of(const UnitaryWitness& u) { return unitary_channel(u.perm, u.phases); }

SioChannel random_sio(std::size_t d, std::size_t n_kraus, Rng& rng) {
  std::normal_distribution<double> gauss;
  std::vector<SioKraus> kraus;
  for (std::size_t a = 0; a < n_kraus; ++a) {
    SioKraus k{random_permutation(d, rng), std::vector<cplx>(d)};
    for (auto& c : k.coeffs) c = {gauss(rng), gauss(rng)};
    kraus.push_back(std::move(k));
  }
  for (std::size_t i = 0; i < d; ++i) {
    double norm = 0.0;
    for (const auto& k : kraus) norm += std::norm(k.coeffs[i]);
    for (auto& k : kraus) k.coeffs[i] /= std::sqrt(norm);
  }
  return SioChannel::from_kraus(std::move(kraus));
}

AlignedInstance aligned_mixed_unitary_instance(std::size_t d, std::size_t terms, Rng& rng) {
  // P = G Gᵀ with G entrywise positive is entrywise positive.
  std::vector<double> g(d * d);
  for (double& x : g) x = uniform(rng, 0.05, 1.0);
  CMatrix p(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) p(i, j) += g[i * d + k] * g[j * d + k];
  p *= 1.0 / p.trace().real();

  std::vector<double> chi(d), psi(d);
  for (double& x : chi) x = random_phase(rng);
  for (double& x : psi) x = random_phase(rng);
  std::vector<cplx> phases(d);
  for (std::size_t i = 0; i < d; ++i) phases[i] = std::polar(1.0, chi[i]);
  const CMatrix dm = CMatrix::diagonal(std::span<const cplx>(phases));
  const DensityMatrix rho = DensityMatrix::from_matrix(dm * p * dm.adjoint());

  const std::vector<double> weights = [&] {
    std::vector<double> w(terms);
    double total = 0.0;
    for (double& x : w) total += (x = uniform(rng, 0.1, 1.0));
    for (double& x : w) x /= total;
    return w;
  }();

  MixedUnitaryForm form;
  std::vector<SioKraus> kraus;
  for (std::size_t a = 0; a < terms; ++a) {
    UnitaryTerm t{weights[a], random_permutation(d, rng), std::vector<double>(d)};
    SioKraus k{t.f, std::vector<cplx>(d)};
    for (std::size_t i = 0; i < d; ++i) {
      t.phases[i] = psi[t.f(i)] - chi[i];
      k.coeffs[i] = std::polar(std::sqrt(t.weight), t.phases[i]);
    }
    form.terms.push_back(std::move(t));
    kraus.push_back(std::move(k));
  }
  return {rho, std::move(form), SioChannel::from_kraus(std::move(kraus))};
}

DensityMatrix random_in_omega_bounded(std::size_t d, double min_modulus, Rng& rng) {
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    DensityMatrix rho = random_in_omega(d, rng);
    bool ok = true;
    for (std::size_t i = 0; i < d && ok; ++i)
      for (std::size_t j = 0; j < d && ok; ++j) ok = i == j || std::abs(rho(i, j)) >= min_modulus;
    if (ok) return rho;
  }
  throw Error(ErrorKind::SamplingExhausted, "no Ω state with bounded off-diagonals found");
}

double modulus_spread(const SioChannel& phi) {
  double spread = 0.0;
  for (const auto& k : phi.kraus()) {
    double lo = std::abs(k.coeffs.front()), hi = lo;
    for (const auto& c : k.coeffs) {
      lo = std::min(lo, std::abs(c));
      hi = std::max(hi, std::abs(c));
    }
    spread = std::max(spread, hi - lo);
  }
  return spread;
}

SioChannel random_nonuniform_sio(std::size_t d, std::size_t n_kraus, double min_spread,
                                 Rng& rng) {
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    SioChannel phi = random_sio(d, n_kraus, rng);
    if (modulus_spread(phi) >= min_spread) return phi;
  }
  throw Error(ErrorKind::SamplingExhausted, "no SIO with the requested modulus spread found");
}

SioChannel random_two_permutation_mixture(std::size_t d, Rng& rng) {
  const Permutation f = random_permutation(d, rng);
  Permutation g = random_permutation(d, rng);
  while (g == f) g = random_permutation(d, rng);
  const double delta = uniform(rng, 0.2, 0.8);
  SioKraus kf{f, std::vector<cplx>(d)}, kg{g, std::vector<cplx>(d)};
  for (std::size_t i = 0; i < d; ++i) {
    kf.coeffs[i] = std::polar(std::sqrt(delta), random_phase(rng));
    kg.coeffs[i] = std::polar(std::sqrt(1.0 - delta), random_phase(rng));
  }
  return SioChannel::from_kraus({std::move(kf), std::move(kg)});
}

std::string_view scenario_name(BlockScenario s) {
  switch (s) {
    case BlockScenario::SingleUnitary: return "single-unitary";
    case BlockScenario::AlignedMixture: return "aligned-mixture";
    case BlockScenario::RandomPhases: return "random-phases";
    case BlockScenario::SharedRouting: return "shared-routing";
    case BlockScenario::RankOne: return "rank-one";
  }
  return "?";
}

SioChannel random_block_channel(const XDecomposition& x, BlockScenario scenario, Rng& rng) {
  const std::size_t d = x.pairing.dim();
  const std::size_t h = d / 2;
  const bool odd = d % 2 == 1;
  if (scenario == BlockScenario::RankOne && !odd) {
    throw Error(ErrorKind::OutOfRange, "rank-one odd terms need odd d");
  }

  const std::size_t n_block =
      scenario == BlockScenario::SingleUnitary ? 1 : std::uniform_int_distribution<std::size_t>(2, 3)(rng);
  const std::size_t n_rank_one =
      scenario == BlockScenario::RankOne ? std::uniform_int_distribution<std::size_t>(1, 2)(rng) : 0;

  // δ_{αk}: per block, a unit vector over the block-form Kraus operators.
  std::vector<std::vector<double>> delta(h);
  for (auto& v : delta) v = unit_magnitudes(n_block, 0.3, rng);
  const std::vector<double> tail = unit_magnitudes(n_block + n_rank_one, 0.3, rng);

  std::vector<double> psi(h);
  for (double& p : psi) p = random_phase(rng);

  const bool shared = scenario == BlockScenario::SharedRouting;
  const Permutation shared_route = random_permutation(h, rng);
  std::vector<bool> shared_swap(h);
  for (std::size_t k = 0; k < h; ++k) shared_swap[k] = rng() % 2 == 1;

  std::vector<CMatrix> paired;
  for (std::size_t a = 0; a < n_block; ++a) {
    BlockKrausForm form;
    form.d = d;
    form.f_pair = shared ? shared_route : random_permutation(h, rng);
    form.within_swap.resize(h);
    form.deltas.resize(h);
    form.phases.resize(h);
    for (std::size_t k = 0; k < h; ++k) {
      form.within_swap[k] = shared ? shared_swap[k] : rng() % 2 == 1;
      form.deltas[k] = delta[k][a];
      const double t1 = random_phase(rng);
      double t2 = random_phase(rng);
      if (scenario != BlockScenario::RandomPhases) {
        // Land the off-diagonal of block k on target f(k) with phase ψ_{f(k)}.
        const double r = std::arg(x.blocks[k](0, 1));
        const double target = psi[form.f_pair(k)];
        t2 = form.within_swap[k] ? t1 + target + r : t1 - (target - r);
      }
      form.phases[k] = {t1, t2};
    }
    if (odd) {
      form.odd_kind = OddKind::DiagonalTail;
      form.odd_coeff = std::polar(tail[a], random_phase(rng));
    }
    paired.push_back(form.reconstruct());
  }
  for (std::size_t r = 0; r < n_rank_one; ++r) {
    CMatrix m(d);
    const std::size_t t = std::uniform_int_distribution<std::size_t>(0, d - 2)(rng);
    m(t, d - 1) = std::polar(tail[n_block + r], random_phase(rng));
    paired.push_back(m);
  }

  const CMatrix p = perm_matrix(x.pairing);
  std::vector<CMatrix> kraus;
  for (const auto& m : paired) kraus.push_back(p.adjoint() * m * p);
  return validate_sio(kraus);
}

}  // namespace cohfreeze
