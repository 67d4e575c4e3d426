#include "cohfreeze/xfreeze.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>

#include "cohfreeze/error.hpp"

namespace cohfreeze {

namespace {

constexpr double kModulusTol = 1e-9;
constexpr std::size_t kNone = static_cast<std::size_t>(-1);

bool vanishes(cplx c) { return std::abs(c) <= kCoeffZeroTol; }

// P_π ρ P_π†, i.e. out(π(i), π(j)) = ρ(i, j).
CMatrix to_pairing_basis(const CMatrix& m, const Permutation& pairing) {
  CMatrix out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out(pairing(i), pairing(j)) = m(i, j);
  return out;
}

CMatrix from_pairing_basis(const CMatrix& m, const Permutation& pairing) {
  CMatrix out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out(i, j) = m(pairing(i), pairing(j));
  return out;
}

// Block k of ρ̃ after diag(e^{iθ₁}, e^{iθ₂}) and the optional within-pair flip.
CMatrix landed_block(const CMatrix& block, const std::pair<double, double>& phases, bool swap) {
  const cplx u0 = std::polar(1.0, phases.first), u1 = std::polar(1.0, phases.second);
  CMatrix rotated{{block(0, 0), u0 * std::conj(u1) * block(0, 1)},
                  {u1 * std::conj(u0) * block(1, 0), block(1, 1)}};
  if (!swap) return rotated;
  return CMatrix{{rotated(1, 1), rotated(1, 0)}, {rotated(0, 1), rotated(0, 0)}};
}

}  // namespace

Permutation pairing_permutation(std::size_t d) {
  if (d < 2) throw Error(ErrorKind::OutOfRange, "pairing_permutation needs d ≥ 2");
  std::vector<std::size_t> map(d);
  const std::size_t h = d / 2;
  for (std::size_t i = 0; i < h; ++i) {
    map[i] = 2 * i;
    map[d - 1 - i] = 2 * i + 1;
  }
  if (d % 2 == 1) map[h] = d - 1;
  return Permutation(std::move(map));
}

double XDecomposition::total_weight() const {
  double s = tail.value_or(0.0);
  for (double w : weights) s += w;
  return s;
}

CMatrix XDecomposition::reassemble() const {
  const std::size_t d = pairing.dim();
  CMatrix paired(d);
  for (std::size_t k = 0; k < blocks.size(); ++k)
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) paired(2 * k + r, 2 * k + c) = weights[k] * blocks[k](r, c);
  if (tail) paired(d - 1, d - 1) = *tail;
  return from_pairing_basis(paired, pairing);
}

XDecomposition decompose_x(const DensityMatrix& rho) {
  const StateClass cls = classify(rho);
  if (!cls.in_omega_x) throw Error(ErrorKind::NotXState, "not an X state: " + cls.detail);

  const std::size_t d = rho.dim();
  XDecomposition out{pairing_permutation(d), {}, {}, std::nullopt};
  const CMatrix paired = to_pairing_basis(rho.matrix(), out.pairing);
  for (std::size_t k = 0; k < d / 2; ++k) {
    const double w = paired(2 * k, 2 * k).real() + paired(2 * k + 1, 2 * k + 1).real();
    CMatrix block{{paired(2 * k, 2 * k), paired(2 * k, 2 * k + 1)},
                  {paired(2 * k + 1, 2 * k), paired(2 * k + 1, 2 * k + 1)}};
    out.weights.push_back(w);
    out.blocks.push_back(DensityMatrix::from_matrix(block * cplx{1.0 / w}));
  }
  if (d % 2 == 1) out.tail = paired(d - 1, d - 1).real();
  return out;
}

std::string_view odd_kind_name(OddKind k) {
  switch (k) {
    case OddKind::None: return "none";
    case OddKind::DiagonalTail: return "diagonal-tail";
    case OddKind::RankOne: return "rank-one";
  }
  return "?";
}

CMatrix BlockKrausForm::reconstruct() const {
  CMatrix m(d);
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    const std::size_t t = 2 * f_pair(k);
    const std::size_t r0 = within_swap[k] ? t + 1 : t;
    const std::size_t r1 = within_swap[k] ? t : t + 1;
    m(r0, 2 * k) = deltas[k] * std::polar(1.0, phases[k].first);
    m(r1, 2 * k + 1) = deltas[k] * std::polar(1.0, phases[k].second);
  }
  if (odd_kind == OddKind::DiagonalTail) m(d - 1, d - 1) = odd_coeff;
  if (odd_kind == OddKind::RankOne) m(rank_one_target, d - 1) = odd_coeff;
  return m;
}

Permutation BlockKrausForm::full_permutation() const {
  const CMatrix m = reconstruct();
  std::vector<std::size_t> image(d, kNone);
  std::vector<bool> used(d, false);
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t r = 0; r < d; ++r)
      if (!vanishes(m(r, c))) {
        image[c] = r;
        used[r] = true;
      }
  std::size_t next = 0;
  for (std::size_t c = 0; c < d; ++c) {
    if (image[c] != kNone) continue;
    while (used[next]) ++next;
    image[c] = next;
    used[next] = true;
  }
  return Permutation(std::move(image));
}

std::optional<BlockKrausForm> parse_block_form(const SioKraus& k, const Permutation& pairing) {
  const std::size_t d = k.dim();
  if (pairing.dim() != d) throw Error(ErrorKind::DimMismatch, "pairing and Kraus differ in d");
  const std::size_t h = d / 2;

  // Column u of M = P_π K P_π† holds coeff[u] in row row[u].
  std::vector<cplx> coeff(d);
  std::vector<std::size_t> row(d);
  for (std::size_t i = 0; i < d; ++i) {
    coeff[pairing(i)] = k.coeffs[i];
    row[pairing(i)] = pairing(k.f(i));
  }

  BlockKrausForm form;
  form.d = d;
  form.within_swap.assign(h, false);
  form.deltas.assign(h, 0.0);
  form.phases.assign(h, {0.0, 0.0});
  std::vector<std::size_t> target(h, kNone);
  std::vector<bool> target_used(h, false);
  bool any_block = false;

  for (std::size_t b = 0; b < h; ++b) {
    const cplx c0 = coeff[2 * b], c1 = coeff[2 * b + 1];
    const bool z0 = vanishes(c0), z1 = vanishes(c1);
    if (z0 && z1) continue;
    if (z0 != z1) return std::nullopt;
    const std::size_t r0 = row[2 * b], r1 = row[2 * b + 1];
    if (r0 >= 2 * h || r1 >= 2 * h || r0 / 2 != r1 / 2) return std::nullopt;
    if (std::abs(std::abs(c0) - std::abs(c1)) > kModulusTol) return std::nullopt;
    target[b] = r0 / 2;
    target_used[r0 / 2] = true;
    form.within_swap[b] = r0 % 2 == 1;
    form.deltas[b] = 0.5 * (std::abs(c0) + std::abs(c1));
    form.phases[b] = {std::arg(c0), std::arg(c1)};
    any_block = true;
  }

  if (d % 2 == 1) {
    const cplx c = coeff[d - 1];
    if (vanishes(c) || row[d - 1] == d - 1) {
      form.odd_kind = OddKind::DiagonalTail;
      form.odd_coeff = vanishes(c) ? cplx{} : c;
    } else {
      if (any_block) return std::nullopt;
      form.odd_kind = OddKind::RankOne;
      form.rank_one_target = row[d - 1];
      form.odd_coeff = c;
    }
  }

  std::size_t next = 0;
  for (std::size_t b = 0; b < h; ++b) {
    if (target[b] != kNone) continue;
    while (target_used[next]) ++next;
    target[b] = next;
    target_used[next] = true;
  }
  form.f_pair = Permutation(std::move(target));
  return form;
}

XVerdict x_structural_check(const SioChannel& phi, const DensityMatrix& rho, Measure measure,
                            const Tolerances& tol, const XCheckOptions& options) {
  const DensityMatrix sigma = apply(phi, rho);
  if (!classify(rho).in_omega_x || !classify(sigma).in_omega_x) {
    throw Error(ErrorKind::HypothesisNotMet, "ρ and Φ(ρ) must both be X states");
  }

  const std::size_t d = rho.dim();
  const std::size_t h = d / 2;
  const XDecomposition dec = decompose_x(rho);

  XVerdict v;
  v.all_parsed = true;
  for (const auto& k : phi.kraus()) {
    v.forms.push_back(parse_block_form(k, dec.pairing));
    v.all_parsed = v.all_parsed && v.forms.back().has_value();
  }

  if (v.all_parsed) {
    v.blocks_complete = true;
    for (std::size_t b = 0; b < h; ++b) {
      double s = 0.0;
      for (const auto& f : v.forms) s += f->deltas[b] * f->deltas[b];
      v.blocks_complete = v.blocks_complete && std::abs(s - 1.0) <= options.tol;
    }

    // Off-diagonal contributions landing on entry (2m, 2m+1), grouped by
    // target (or by target and source for the narrow reading).
    std::map<std::pair<std::size_t, std::size_t>, std::pair<cplx, double>> groups;
    std::vector<std::vector<CMatrix>> landed(h);
    std::vector<bool> projector_lands(h, false);
    for (const auto& f : v.forms) {
      for (std::size_t b = 0; b < h; ++b) {
        if (f->deltas[b] <= kCoeffZeroTol) continue;
        const std::size_t m = f->f_pair(b);
        const CMatrix& block = dec.blocks[b].matrix();
        const CMatrix l = landed_block(block, f->phases[b], f->within_swap[b]);
        const cplx c = dec.weights[b] * f->deltas[b] * f->deltas[b] * l(0, 1);
        const std::size_t source = options.scope == AlignmentScope::PerSourceBlock ? b : 0;
        auto& g = groups[{m, source}];
        g.first += c;
        g.second += std::abs(c);
        landed[m].push_back(l);
      }
      if (f->odd_kind == OddKind::RankOne && !vanishes(f->odd_coeff)) {
        projector_lands[f->rank_one_target / 2] = true;
      }
    }

    v.phases_aligned = true;
    for (const auto& [key, g] : groups)
      v.phases_aligned = v.phases_aligned && g.second - std::abs(g.first) <= options.tol;

    v.blocks_equal = true;
    for (std::size_t m = 0; m < h; ++m) {
      if (projector_lands[m]) v.blocks_equal = false;
      for (std::size_t a = 1; a < landed[m].size(); ++a)
        v.blocks_equal = v.blocks_equal && max_abs_diff(landed[m][a], landed[m][0]) <= options.tol;
    }
  }

  const bool l1_conditions = v.all_parsed && v.blocks_complete && v.phases_aligned;
  v.frozen = measure == Measure::L1 ? l1_conditions : l1_conditions && v.blocks_equal;

  const double before = coherence(measure, rho).value;
  const double after = coherence(measure, sigma).value;
  v.operational_frozen = std::abs(before - after) <= tol.for_measure(measure);
  if (v.frozen != v.operational_frozen) {
    std::ostringstream os;
    os << std::setprecision(17) << "X-state structural verdict "
       << (v.frozen ? "frozen" : "not frozen") << " but C_" << measure_name(measure) << " goes "
       << before << " -> " << after << "\n"
       << describe_instance(phi, rho);
    v.violation = os.str();
  }
  return v;
}

InvarianceReport omega_invariance_probe(const SioChannel& phi, std::size_t samples,
                                        std::uint64_t seed, double tol_re) {
  const std::size_t d = phi.dim();
  Rng rng(seed);
  InvarianceReport report;
  const auto run = [&](bool x_class, std::size_t& drawn, std::size_t& retained,
                       std::size_t& preserved) {
    for (std::size_t s = 0; s < samples; ++s) {
      const DensityMatrix rho = x_class ? random_x_state(d, rng) : random_in_omega(d, rng);
      const DensityMatrix sigma = apply(phi, rho);
      ++drawn;
      if (std::abs(c_re(rho).value - c_re(sigma).value) > tol_re) continue;
      ++retained;
      const StateClass after = classify(sigma);
      if (x_class ? after.in_omega_x : after.in_omega) {
        ++preserved;
      } else {
        report.failures.push_back(std::string(x_class ? "X state" : "Ω state") +
                                  " left its class (" + after.detail + ")\n" +
                                  describe_instance(phi, rho));
      }
    }
  };
  run(false, report.omega_samples, report.omega_retained, report.omega_preserved);
  run(true, report.x_samples, report.x_retained, report.x_preserved);
  return report;
}

std::vector<CMatrix> qutrit_form_matrices(const QutritForms& p) {
  CMatrix f1(3), f2(3), f3(3), f4(3);
  f1(0, 0) = p.a * std::polar(1.0, p.theta1);
  f1(1, 1) = p.a;
  f1(2, 2) = p.c1;
  f2(0, 1) = p.b;
  f2(1, 0) = p.b * std::polar(1.0, p.theta2);
  f2(2, 2) = p.c2;
  f3(0, 2) = p.c3;
  f4(1, 2) = p.c4;
  return {f1, f2, f3, f4};
}

SioChannel qutrit_form_channel(const QutritForms& p) {
  const Permutation pairing = pairing_permutation(3);
  std::vector<CMatrix> pulled;
  for (const auto& m : qutrit_form_matrices(p)) {
    bool zero = true;
    for (const auto& e : m.entries()) zero = zero && vanishes(e);
    if (!zero) pulled.push_back(from_pairing_basis(m, pairing));
  }
  return validate_sio(pulled);
}

std::vector<BellSweepRow> bell_freeze_sweep(std::size_t grid_n, std::span<const double> qs,
                                            double tol_re) {
  if (grid_n < 2) throw Error(ErrorKind::OutOfRange, "bell_freeze_sweep needs grid_n ≥ 2");
  std::vector<SioChannel> channels;
  for (double q : qs) channels.push_back(local_bit_flip(q));

  const auto grid = [&](std::size_t k) {
    return -1.0 + 2.0 * static_cast<double>(k) / static_cast<double>(grid_n - 1);
  };
  std::vector<BellSweepRow> rows;
  for (std::size_t i = 0; i < grid_n; ++i)
    for (std::size_t j = 0; j < grid_n; ++j)
      for (std::size_t k = 0; k < grid_n; ++k) {
        const double c1 = grid(i), c2 = grid(j), c3 = grid(k);
        const auto eig = bell_diagonal_eigenvalues(c1, c2, c3);
        if (*std::min_element(eig.begin(), eig.end()) < -1e-12) continue;
        const DensityMatrix rho = bell_diagonal(c1, c2, c3);
        const double before = c_re(rho).value;
        for (std::size_t qi = 0; qi < qs.size(); ++qi) {
          const DensityMatrix sigma = apply(channels[qi], rho);
          BellSweepRow row{c1, c2, c3, qs[qi], before, c_re(sigma).value, false, std::nullopt,
                           std::abs(c2 + c1 * c3) <= 1e-9};
          row.frozen = std::abs(row.c_re_before - row.c_re_after) <= tol_re;
          if (classify(rho).in_omega_x && classify(sigma).in_omega_x) {
            row.structural =
                x_structural_check(channels[qi], rho, Measure::RelEnt, {kTolL1, tol_re}).frozen;
          }
          rows.push_back(row);
        }
      }
  return rows;
}

std::string bell_sweep_csv(std::span<const BellSweepRow> rows) {
  std::ostringstream os;
  os << std::setprecision(12);
  os << "c1,c2,c3,q,c_re_before,c_re_after,frozen,structural_verdict\n";
  for (const auto& r : rows) {
    os << r.c1 << ',' << r.c2 << ',' << r.c3 << ',' << r.q << ',' << r.c_re_before << ','
       << r.c_re_after << ',' << (r.frozen ? "true" : "false") << ','
       << (r.structural ? (*r.structural ? "true" : "false") : "na") << '\n';
  }
  return os.str();
}

}  // namespace cohfreeze
