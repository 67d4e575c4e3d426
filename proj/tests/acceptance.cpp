#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cohfreeze/error.hpp"
#include "cohfreeze/oracle.hpp"
#include "cohfreeze/sampling.hpp"
#include "cohfreeze/xfreeze.hpp"

using namespace cohfreeze;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> failures;

  void fail(const std::string& why) {
    pass = false;
    if (failures.size() < 5) failures.push_back(why);
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void qubit_law(Outcome& o) {
  const auto start = Clock::now();
  const SweepResult r = qubit_condition_sweep(32);
  const double elapsed = seconds_since(start);
  std::size_t on = 0, off = 0;
  for (const auto& p : r.points) {
    const double change = std::abs(p.c_before - p.c_after);
    if (p.predicted) {
      ++on;
      if (change > 1e-9) o.fail("on-manifold point changed by " + std::to_string(change));
    } else if (p.manifold_distance >= 0.05) {
      ++off;
      if (change <= 1e-6) o.fail("off-manifold point changed only by " + std::to_string(change));
    }
  }
  for (const auto& d : r.disagreements) o.fail(d);
  for (const auto& d : r.structural_disagreements) o.fail(d);
  if (elapsed >= 5.0) o.fail("runtime " + std::to_string(elapsed) + " s");
  o.detail << r.points.size() << " points, " << on << " on the manifold, " << off
           << " well off it, checker agreed on " << r.structural_agreements << ", " << elapsed
           << " s";
}

void bell_reproduction(Outcome& o) {
  const auto start = Clock::now();
  const double qs[] = {0.1, 0.5, 0.9};
  const auto rows = bell_freeze_sweep(21, qs);
  const double elapsed = seconds_since(start);
  std::size_t frozen = 0, checked = 0;
  for (const auto& r : rows) {
    frozen += r.frozen;
    std::ostringstream where;
    where << "c = (" << r.c1 << ", " << r.c2 << ", " << r.c3 << "), q = " << r.q;
    if (r.frozen != r.predicted) o.fail("law mismatch at " + where.str());
    if (r.structural) {
      ++checked;
      if (*r.structural != r.frozen) o.fail("checker mismatch at " + where.str());
    }
  }
  if (elapsed >= 60.0) o.fail("runtime " + std::to_string(elapsed) + " s");
  o.detail << rows.size() << " rows, " << frozen << " frozen, checker evaluated " << checked
           << ", " << elapsed << " s";
}

void l1_equivalence(Outcome& o) {
  Rng rng(301);
  std::size_t agreements = 0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t d = 2 + t % 5;
    const AlignedInstance inst = aligned_mixed_unitary_instance(d, 2 + t % 3, rng);
    const FreezeReport r = check_frozen(inst.phi, inst.rho, Measure::L1);
    if (!r.operational_frozen) o.fail("aligned instance lost C_l1 at d = " + std::to_string(d));
    if (!r.agreement) o.fail("aligned instance outside the hypothesis at d = " + std::to_string(d));
    else if (!*r.agreement) o.fail(r.violation.value_or("disagreement"));
    else ++agreements;
  }
  for (int t = 0; t < 500; ++t) {
    const std::size_t d = 2 + t % 5;
    const DensityMatrix rho = random_in_omega_bounded(d, 0.01, rng);
    const SioChannel phi = random_nonuniform_sio(d, 2 + t % 2, 0.05, rng);
    const FreezeReport r = check_frozen(phi, rho, Measure::L1);
    if (!(r.c_before.value - r.c_after.value > 1e-12)) {
      o.fail("non-uniform SIO kept C_l1 at d = " + std::to_string(d));
    }
    if (r.agreement && !*r.agreement) o.fail(r.violation.value_or("disagreement"));
    if (r.agreement) ++agreements;
  }
  o.detail << "1000 instances, " << agreements << " structural agreements, 0 tolerated disagreements";
}

void re_equivalence(Outcome& o) {
  Rng rng(401);
  std::size_t oracle_runs = 0;
  const auto oracle_agrees = [&](const DensityMatrix& rho, const DensityMatrix& sigma, bool found) {
    if (rho.dim() != 3) return;
    ++oracle_runs;
    if (exhaustive_unitary_oracle(rho, sigma, 512) != found) o.fail("oracle disagrees at d = 3");
  };
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = 2 + t % 3;
    const DensityMatrix rho = random_in_omega(d, rng);
    const DensityMatrix sigma = apply(channel_of(random_si_unitary(d, rng)), rho);
    const auto w = find_freezing_unitary(rho, sigma);
    if (!w) {
      o.fail("no witness recovered at d = " + std::to_string(d));
    } else if (max_abs_diff(conjugate(rho.matrix(), w->unitary()), sigma.matrix()) > 1e-9) {
      o.fail("witness does not reproduce σ");
    }
    if (std::abs(c_re(rho).value - c_re(sigma).value) > 1e-7) o.fail("C_re moved under a unitary");
    oracle_agrees(rho, sigma, w.has_value());
  }
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = 2 + t % 3;
    const DensityMatrix rho = random_in_omega_bounded(d, 0.05, rng);
    const SioChannel phi = random_two_permutation_mixture(d, rng);
    const DensityMatrix sigma = apply(phi, rho);
    const double drop = c_re(rho).value - c_re(sigma).value;
    if (!(drop > kTolRelEnt)) o.fail("two-permutation mixture kept C_re (drop " + std::to_string(drop) + ")");
    const bool found = find_freezing_unitary(rho, sigma).has_value();
    if (found) o.fail("unitary witness found for a genuine mixture");
    oracle_agrees(rho, sigma, found);
  }
  o.detail << "400 instances, exhaustive oracle run on " << oracle_runs << " d = 3 instances";
}

void x_state_suite(Outcome& o) {
  Rng rng(501);
  const BlockScenario scenarios[] = {BlockScenario::SingleUnitary, BlockScenario::AlignedMixture,
                                     BlockScenario::RandomPhases, BlockScenario::SharedRouting,
                                     BlockScenario::RankOne};
  std::size_t frozen[2] = {0, 0}, melted[2] = {0, 0}, skipped = 0;
  for (int t = 0; t < 300; ++t) {
    const std::size_t d = 3 + t % 6;
    BlockScenario s = scenarios[(t / 6) % 5];
    if (s == BlockScenario::RankOne && d % 2 == 0) s = BlockScenario::AlignedMixture;
    const DensityMatrix rho = random_x_state(d, rng);
    const XDecomposition x = decompose_x(rho);
    if (max_abs_diff(x.reassemble(), rho.matrix()) > 1e-10) o.fail("reassembly off at d = " + std::to_string(d));
    double l1 = 0.0, re = 0.0;
    for (std::size_t k = 0; k < x.blocks.size(); ++k) {
      l1 += x.weights[k] * c_l1(x.blocks[k]).value;
      re += x.weights[k] * c_re(x.blocks[k]).value;
    }
    if (std::abs(l1 - c_l1(rho).value) > 1e-10) o.fail("C_l1 not additive over blocks");
    if (std::abs(re - c_re(rho).value) > 1e-7) o.fail("C_re not additive over blocks");

    const SioChannel phi = random_block_channel(x, s, rng);
    for (int mi = 0; mi < 2; ++mi) {
      const Measure m = mi == 0 ? Measure::L1 : Measure::RelEnt;
      try {
        const XVerdict v = x_structural_check(phi, rho, m);
        if (v.violation) o.fail(std::string(scenario_name(s)) + ": " + *v.violation);
        (v.operational_frozen ? frozen : melted)[mi]++;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::HypothesisNotMet) throw;
        ++skipped;
      }
    }
  }
  o.detail << "300 X states, C_l1 frozen/lost " << frozen[0] << "/" << melted[0] << ", C_re frozen/lost "
           << frozen[1] << "/" << melted[1] << ", outside hypothesis " << skipped;
}

void axioms(Outcome& o) {
  Rng rng(601);
  const double w[] = {0.2, 0.5, 0.3};
  for (std::size_t d = 2; d <= 6; ++d) {
    for (int t = 0; t < 1000; ++t) {
      const DensityMatrix r = random_state(d, rng);
      const SioChannel phi = random_sio(d, 1 + t % 4, rng);
      const DensityMatrix s = apply(phi, r);
      for (Measure m : {Measure::L1, Measure::RelEnt}) {
        const double c = coherence(m, r).value;
        if (c < -1e-9 || std::abs(coherence(m, dephase(r)).value) > 1e-9) o.fail("C1 fails");
        if (coherence(m, s).value > c + 1e-8) o.fail("C2a fails at d = " + std::to_string(d));
      }
      const DensityMatrix states[] = {r, random_state(d, rng), random_state(d, rng)};
      const DensityMatrix mixed = mix(w, states);
      for (Measure m : {Measure::L1, Measure::RelEnt}) {
        double avg = 0.0;
        for (int k = 0; k < 3; ++k) avg += w[k] * coherence(m, states[k]).value;
        if (coherence(m, mixed).value > avg + 1e-8) o.fail("C3 fails at d = " + std::to_string(d));
      }
    }
  }
  o.detail << "5000 (state, SIO) pairs, both measures";
}

void invariance(Outcome& o) {
  Rng rng(701);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t omega_kept = 0, omega_total = 0, x_kept = 0, x_total = 0, skipped = 0;
  for (int t = 0; t < 200; ++t) {
    SioChannel phi = channel_of(random_si_unitary(3, rng));
    if (t % 2 == 1) {
      const double a = std::sqrt(unit(rng)), c1 = std::sqrt(unit(rng));
      QutritForms p{a, std::sqrt(1 - a * a), c1, std::sqrt(1 - c1 * c1), 0.0, 0.0,
                    2 * std::numbers::pi * unit(rng), 2 * std::numbers::pi * unit(rng)};
      phi = qutrit_form_channel(p);
    }
    const InvarianceReport rep = omega_invariance_probe(phi, 20, 7000 + t);
    omega_kept += rep.omega_preserved;
    omega_total += rep.omega_retained;
    x_kept += rep.x_preserved;
    x_total += rep.x_retained;
    skipped += rep.skipped();
    if (!rep.holds()) o.fail(rep.failures.empty() ? "class not preserved" : rep.failures.front());
  }
  o.detail << "200 channels, Omega kept " << omega_kept << "/" << omega_total << ", X kept " << x_kept
           << "/" << x_total << ", " << skipped << " samples skipped";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"qubit freezing law over the 32^3 phase grid", qubit_law},
      {"Bell-diagonal freezing surface c2 = -c1 c3", bell_reproduction},
      {"C_l1 freezing iff aligned mixed unitary on Omega", l1_equivalence},
      {"C_re freezing iff single strictly incoherent unitary on Omega", re_equivalence},
      {"X-state block-form characterization, both measures", x_state_suite},
      {"coherence axioms C1, C2a, C3", axioms},
      {"class invariance under C_re-freezing qutrit channels", invariance},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first
              << " (" << o.detail.str() << ")\n";
    for (const auto& f : o.failures) std::cout << "    " << f << '\n';
    failed += !o.pass;
  }
  std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
