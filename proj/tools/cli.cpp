#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "cohfreeze/error.hpp"
#include "cohfreeze/io.hpp"
#include "cohfreeze/oracle.hpp"
#include "cohfreeze/sampling.hpp"

namespace cohfreeze::cli {

namespace {

enum class Format { Table, Json, Csv };

struct Options {
  std::string state, channel, measure, format, out, which;
  std::uint64_t seed = 1;
  std::size_t trials = 100;
  std::vector<std::size_t> dims{2, 3, 4};
  double tol_l1 = kTolL1;
  double tol_re = kTolRelEnt;
  std::vector<double> qs{0.1, 0.5, 0.9};
  std::size_t grid = 0;
};

struct Outcome {
  std::string report;
  std::vector<std::string> violations;
};

Format format_of(const Options& o, Format fallback) {
  if (o.format.empty()) return fallback;
  if (o.format == "json") return Format::Json;
  if (o.format == "csv") return Format::Csv;
  return Format::Table;
}

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string opt_bool(const std::optional<bool>& b) { return b ? yes_no(*b) : "na"; }

std::string join_tags(const StateClass& c) {
  std::string s;
  for (StateTag t : c.tags()) s += (s.empty() ? "" : ",") + std::string(tag_name(t));
  return s;
}

Tolerances tolerances(const Options& o) { return {o.tol_l1, o.tol_re}; }

DensityMatrix load_state(const Options& o) { return state_from_json(load_json_file(o.state)); }
SioChannel load_channel(const Options& o) { return channel_from_json(load_json_file(o.channel)); }

Outcome cmd_measure(const Options& o) {
  const DensityMatrix rho = load_state(o);
  const StateClass cls = classify(rho);
  std::vector<Measure> ms{Measure::L1, Measure::RelEnt};
  if (!o.measure.empty() && o.measure != "both") ms = {parse_measure(o.measure)};

  std::ostringstream os;
  switch (format_of(o, Format::Table)) {
    case Format::Json: {
      json j = {{"dim", rho.dim()}, {"class", json::array()}, {"detail", cls.detail}};
      for (StateTag t : cls.tags()) j["class"].push_back(tag_name(t));
      for (Measure m : ms) j[std::string(measure_name(m))] = coherence(m, rho).value;
      os << j.dump(2) << '\n';
      break;
    }
    case Format::Csv:
      os << "measure,value\n";
      for (Measure m : ms) os << measure_name(m) << ',' << num(coherence(m, rho).value) << '\n';
      break;
    case Format::Table:
      os << "dim    " << rho.dim() << "\nclass  " << join_tags(cls) << " (" << cls.detail << ")\n";
      for (Measure m : ms) {
        os << "C_" << measure_name(m) << "     "
           << num(coherence(m, rho).value) << (m == Measure::RelEnt ? " bits" : "") << '\n';
      }
      break;
  }
  return {os.str(), {}};
}

Outcome cmd_apply(const Options& o) {
  const DensityMatrix sigma = apply(load_channel(o), load_state(o));
  std::ostringstream os;
  switch (format_of(o, Format::Json)) {
    case Format::Json: os << to_json(sigma).dump(2) << '\n'; break;
    case Format::Csv:
      os << "row,col,re,im\n";
      for (std::size_t r = 0; r < sigma.dim(); ++r)
        for (std::size_t c = 0; c < sigma.dim(); ++c)
          os << r + 1 << ',' << c + 1 << ',' << num(sigma(r, c).real()) << ','
             << num(sigma(r, c).imag()) << '\n';
      break;
    case Format::Table: os << to_string(sigma.matrix(), 8) << '\n'; break;
  }
  return {os.str(), {}};
}

Outcome cmd_check_freeze(const Options& o) {
  const Measure m = parse_measure(o.measure.empty() ? "l1" : o.measure);
  const FreezeReport r = check_frozen(load_channel(o), load_state(o), m, tolerances(o));
  std::ostringstream os;
  switch (format_of(o, Format::Table)) {
    case Format::Json: os << to_json(r).dump(2) << '\n'; break;
    case Format::Csv:
      os << "measure,c_before,c_after,operational_frozen,hypothesis_ok,path,structural_frozen,"
            "agreement\n"
         << measure_name(m) << ',' << num(r.c_before.value) << ',' << num(r.c_after.value) << ','
         << yes_no(r.operational_frozen) << ',' << yes_no(r.hypothesis_ok) << ','
         << path_name(r.path) << ',' << opt_bool(r.structural_frozen) << ','
         << opt_bool(r.agreement) << '\n';
      break;
    case Format::Table:
      os << "measure             C_" << measure_name(m) << '\n'
         << "before -> after     " << num(r.c_before.value) << " -> " << num(r.c_after.value)
         << '\n'
         << "operational frozen  " << yes_no(r.operational_frozen) << '\n'
         << "hypothesis          " << (r.hypothesis_ok ? path_name(r.path) : "not met") << '\n'
         << "structural frozen   " << opt_bool(r.structural_frozen) << '\n'
         << "agreement           " << opt_bool(r.agreement) << '\n';
      break;
  }
  Outcome out{os.str(), {}};
  if (r.violation) out.violations.push_back(*r.violation);
  return out;
}

Outcome cmd_classify_sio(const Options& o) {
  const SioChannel phi = load_channel(o);
  const auto form = decompose_mixed_unitary(phi);
  const Permutation pairing = pairing_permutation(phi.dim());
  std::vector<std::optional<BlockKrausForm>> blocks;
  for (const auto& k : phi.kraus()) blocks.push_back(parse_block_form(k, pairing));

  std::ostringstream os;
  switch (format_of(o, Format::Table)) {
    case Format::Json: {
      json j = to_json(phi);
      j["mixed_unitary"] = nullptr;
      if (form) {
        json terms = json::array();
        for (const auto& t : form->terms)
          terms.push_back({{"weight", t.weight}, {"perm", t.f.one_based()}, {"phases", t.phases}});
        j["mixed_unitary"] = {{"terms", std::move(terms)}};
      }
      j["block_forms"] = json::array();
      for (const auto& b : blocks) j["block_forms"].push_back(b ? to_json(*b) : json(nullptr));
      os << j.dump(2) << '\n';
      break;
    }
    case Format::Csv:
      os << "kraus,perm,weight,block_form\n";
      for (std::size_t a = 0; a < phi.size(); ++a) {
        std::string perm;
        for (long long v : phi.kraus()[a].f.one_based()) perm += (perm.empty() ? "" : " ") + std::to_string(v);
        os << a + 1 << ',' << perm << ',' << (form ? num(form->terms[a].weight) : "na") << ','
           << (blocks[a] ? odd_kind_name(blocks[a]->odd_kind) : "none") << '\n';
      }
      break;
    case Format::Table:
      os << "dim " << phi.dim() << ", " << phi.size() << " Kraus operators\n";
      for (std::size_t a = 0; a < phi.size(); ++a) {
        const auto& k = phi.kraus()[a];
        os << "K" << a + 1 << "  f = " << to_string(k.f) << "  |d| = [";
        for (std::size_t i = 0; i < k.dim(); ++i) os << (i ? ", " : "") << num(std::abs(k.coeffs[i]));
        os << "]\n";
      }
      os << "mixed strictly incoherent unitary: ";
      if (form) {
        os << "yes, weights";
        for (const auto& t : form->terms) os << ' ' << num(t.weight);
        os << '\n';
      } else {
        os << "no\n";
      }
      for (std::size_t a = 0; a < phi.size(); ++a) {
        os << "block form K" << a + 1 << ": ";
        if (blocks[a]) {
          os << "f_pair " << to_string(blocks[a]->f_pair) << ", odd "
             << odd_kind_name(blocks[a]->odd_kind) << '\n';
        } else {
          os << "none\n";
        }
      }
      break;
  }
  return {os.str(), {}};
}

Outcome cmd_x_decompose(const Options& o) {
  const XDecomposition x = decompose_x(load_state(o));
  std::ostringstream os;
  switch (format_of(o, Format::Table)) {
    case Format::Json: os << to_json(x).dump(2) << '\n'; break;
    case Format::Csv:
      os << "block,weight,b11,b12_re,b12_im,b22\n";
      for (std::size_t k = 0; k < x.blocks.size(); ++k) {
        const auto& b = x.blocks[k];
        os << k + 1 << ',' << num(x.weights[k]) << ',' << num(b(0, 0).real()) << ','
           << num(b(0, 1).real()) << ',' << num(b(0, 1).imag()) << ',' << num(b(1, 1).real())
           << '\n';
      }
      if (x.tail) os << "tail," << num(*x.tail) << ",,,,\n";
      break;
    case Format::Table:
      os << "pairing " << to_string(x.pairing) << '\n';
      for (std::size_t k = 0; k < x.blocks.size(); ++k) {
        os << "block " << k + 1 << "  λ = " << num(x.weights[k]) << '\n'
           << to_string(x.blocks[k].matrix(), 8) << '\n';
      }
      if (x.tail) os << "tail  " << num(*x.tail) << '\n';
      break;
  }
  return {os.str(), {}};
}

Outcome reproduce_qubit(const Options& o) {
  const SweepResult r = qubit_condition_sweep(o.grid == 0 ? 32 : o.grid);
  Outcome out;
  for (const auto& d : r.disagreements) out.violations.push_back("qubit law: " + d);
  for (const auto& d : r.structural_disagreements) out.violations.push_back("qubit checker: " + d);

  std::ostringstream os;
  switch (format_of(o, Format::Table)) {
    case Format::Json: os << to_json(r).dump(2) << '\n'; break;
    case Format::Csv: os << sweep_csv(r); break;
    case Format::Table: {
      os << "qubit law: C_l1 frozen <=> theta1 + theta2 + 2 theta = 0 mod 2pi\n"
         << "grid " << r.grid_n << "^3 x delta {0.25, 0.5, 0.75}, |rho12| = "
         << num(r.rho12_modulus) << '\n'
         << "points                 " << r.points.size() << '\n'
         << "law agreements         " << r.agreements << '\n'
         << "law disagreements      " << r.disagreements.size() << '\n'
         << "checker agreements     " << r.structural_agreements << '\n'
         << "checker disagreements  " << r.structural_disagreements.size() << '\n';
      const double pi = std::numbers::pi;
      const struct {
        const char* name;
        double t1, t2, t;
      } spots[] = {{"bit flip, real rho12", 0, 0, 0},
                   {"bit-phase flip, theta = pi/2", 0, pi, pi / 2},
                   {"bit flip, theta = pi/2", 0, 0, pi / 2}};
      for (const auto& s : spots) {
        const cplx off = std::polar(0.4, s.t);
        const DensityMatrix rho = DensityMatrix::from_matrix({{0.7, off}, {std::conj(off), 0.3}});
        const FreezeReport fr = check_frozen(qubit_freeze_channel(0.5, s.t1, s.t2), rho, Measure::L1);
        os << s.name << ": C_l1 " << num(fr.c_before.value) << " -> " << num(fr.c_after.value)
           << (fr.operational_frozen ? " (frozen)" : " (not frozen)") << '\n';
      }
      break;
    }
  }
  out.report = os.str();
  return out;
}

Outcome reproduce_qutrit(const Options& o) {
  const double pi = std::numbers::pi;
  const double theta = pi / 3;
  const cplx off = std::polar(0.3, theta);
  const DensityMatrix rho = DensityMatrix::from_matrix(
      {{0.4, 0.0, off}, {0.0, 0.25, 0.0}, {std::conj(off), 0.0, 0.35}});

  struct Instance {
    std::string name;
    QutritForms forms;
    bool expect_frozen;
  };
  QutritForms aligned;
  aligned.theta1 = pi / 2;
  aligned.theta2 = 5 * pi / 6;
  QutritForms broken = aligned;
  broken.theta2 = 0.0;
  const std::vector<Instance> instances{{"aligned", aligned, true}, {"broken", broken, false}};

  Outcome out;
  json j = {{"forms", json::array()}, {"instances", json::array()}};
  std::ostringstream table, csv;
  table << "d = 3 Kraus forms in the pairing basis (a = b = 1/sqrt2, c1..c4 = 1/2, theta1 = pi/2, "
           "theta2 = 5pi/6):\n";
  const auto mats = qutrit_form_matrices(aligned);
  for (std::size_t f = 0; f < mats.size(); ++f) {
    table << "(" << f + 1 << ")\n" << to_string(mats[f], 6) << '\n';
    json rows = json::array();
    for (std::size_t r = 0; r < 3; ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < 3; ++c) row.push_back({mats[f](r, c).real(), mats[f](r, c).imag()});
      rows.push_back(row);
    }
    j["forms"].push_back(rows);
  }
  table << "state: X state with rho13 = 0.3 e^{i pi/3}\n";
  csv << "instance,theta1,theta2,theta,c_l1_before,c_l1_after,frozen,structural_verdict\n";

  for (const auto& inst : instances) {
    const SioChannel phi = qutrit_form_channel(inst.forms);
    const XVerdict v = x_structural_check(phi, rho, Measure::L1, tolerances(o));
    const double before = c_l1(rho).value, after = c_l1(apply(phi, rho)).value;
    const double sum = inst.forms.theta1 + inst.forms.theta2 + 2 * theta;
    table << inst.name << ": theta1 + theta2 + 2 theta = " << num(sum / pi) << " pi, C_l1 "
          << num(before) << " -> " << num(after) << ", frozen " << yes_no(v.operational_frozen)
          << ", structural " << yes_no(v.frozen) << '\n';
    csv << inst.name << ',' << num(inst.forms.theta1) << ',' << num(inst.forms.theta2) << ','
        << num(theta) << ',' << num(before) << ',' << num(after) << ','
        << yes_no(v.operational_frozen) << ',' << yes_no(v.frozen) << '\n';
    j["instances"].push_back({{"name", inst.name},
                              {"theta1", inst.forms.theta1},
                              {"theta2", inst.forms.theta2},
                              {"theta", theta},
                              {"c_l1_before", before},
                              {"c_l1_after", after},
                              {"frozen", v.operational_frozen},
                              {"structural", v.frozen}});
    if (v.violation) out.violations.push_back(*v.violation);
    if (v.operational_frozen != inst.expect_frozen) {
      out.violations.push_back("qutrit " + inst.name + " instance: expected frozen = " +
                               yes_no(inst.expect_frozen));
    }
  }
  switch (format_of(o, Format::Table)) {
    case Format::Json: out.report = j.dump(2) + "\n"; break;
    case Format::Csv: out.report = csv.str(); break;
    case Format::Table: out.report = table.str(); break;
  }
  return out;
}

Outcome reproduce_bell(const Options& o) {
  const auto rows = bell_freeze_sweep(o.grid == 0 ? 21 : o.grid, o.qs, o.tol_re);
  Outcome out;
  std::size_t frozen = 0, predicted = 0, mismatches = 0, checked = 0;
  for (const auto& r : rows) {
    frozen += r.frozen;
    predicted += r.predicted;
    const std::string where = "c = (" + num(r.c1) + ", " + num(r.c2) + ", " + num(r.c3) +
                              "), q = " + num(r.q) + ", C_re " + num(r.c_re_before) + " -> " +
                              num(r.c_re_after);
    if (r.frozen != r.predicted) {
      ++mismatches;
      out.violations.push_back("Bell law: frozen = " + yes_no(r.frozen) + " at " + where);
    }
    if (r.structural) {
      ++checked;
      if (*r.structural != r.frozen) {
        out.violations.push_back("Bell checker: structural = " + yes_no(*r.structural) + " at " + where);
      }
    }
  }
  std::ostringstream os;
  switch (format_of(o, Format::Csv)) {
    case Format::Csv: os << bell_sweep_csv(rows); break;
    case Format::Json: {
      json arr = json::array();
      for (const auto& r : rows) {
        arr.push_back({{"c1", r.c1}, {"c2", r.c2}, {"c3", r.c3}, {"q", r.q},
                       {"c_re_before", r.c_re_before}, {"c_re_after", r.c_re_after},
                       {"frozen", r.frozen},
                       {"structural_verdict", r.structural ? json(*r.structural) : json(nullptr)},
                       {"predicted", r.predicted}});
      }
      os << arr.dump(2) << '\n';
      break;
    }
    case Format::Table:
      os << "Bell-diagonal states under local bit flip: frozen C_re <=> c2 = -c1 c3\n"
         << "rows (admissible points x q)  " << rows.size() << '\n'
         << "frozen                        " << frozen << '\n'
         << "predicted                     " << predicted << '\n'
         << "law mismatches                " << mismatches << '\n'
         << "X-state checker evaluated     " << checked << '\n'
         << "checker disagreements         " << out.violations.size() - mismatches << '\n';
      break;
  }
  out.report = os.str();
  return out;
}

struct SuiteInstance {
  std::string kind;
  DensityMatrix rho;
  SioChannel phi;
};

SuiteInstance draw_instance(std::size_t trial, std::size_t d, Rng& rng) {
  static const char* kinds[] = {"si-unitary", "aligned-mixture", "nonuniform-sio",
                                "two-permutation", "random-sio", "x-block"};
  const std::string kind = kinds[trial % 6];
  std::uniform_int_distribution<std::size_t> n_kraus(2, 3);
  switch (trial % 6) {
    case 0: {
      const DensityMatrix rho = random_in_omega(d, rng);
      return {kind, rho, channel_of(random_si_unitary(d, rng))};
    }
    case 1: {
      AlignedInstance a = aligned_mixed_unitary_instance(d, n_kraus(rng), rng);
      return {kind, a.rho, a.phi};
    }
    case 2: {
      const DensityMatrix rho = random_in_omega(d, rng);
      return {kind, rho, random_nonuniform_sio(d, n_kraus(rng), 0.05, rng)};
    }
    case 3: {
      const DensityMatrix rho = random_in_omega(d, rng);
      return {kind, rho, random_two_permutation_mixture(d, rng)};
    }
    case 4: {
      const DensityMatrix rho = random_in_omega(d, rng);
      return {kind, rho, random_sio(d, n_kraus(rng), rng)};
    }
    default: {
      const DensityMatrix rho = random_x_state(d, rng);
      return {kind, rho, random_block_channel(decompose_x(rho), BlockScenario::AlignedMixture, rng)};
    }
  }
}

Outcome cmd_random_suite(const Options& o) {
  if (o.dims.empty()) throw Error(ErrorKind::OutOfRange, "--dims needs at least one dimension");
  for (std::size_t d : o.dims) {
    if (d < 2 || d > 8) throw Error(ErrorKind::OutOfRange, "--dims entries must lie in 2..8");
  }

  Outcome out;
  json rows = json::array();
  std::ostringstream csv, table;
  csv << "trial,dim,kind,measure,c_before,c_after,operational_frozen,path,structural_frozen,"
         "agreement\n";
  table << std::left << std::setw(7) << "trial" << std::setw(5) << "dim" << std::setw(17)
        << "kind" << std::setw(4) << "C" << std::setw(16) << "before" << std::setw(16) << "after"
        << std::setw(8) << "frozen" << std::setw(9) << "path" << "structural\n";
  std::size_t evaluated = 0, agreed = 0, outside = 0;

  for (std::size_t t = 0; t < o.trials; ++t) {
    std::seed_seq seq{static_cast<std::uint32_t>(o.seed), static_cast<std::uint32_t>(o.seed >> 32),
                      static_cast<std::uint32_t>(t)};
    Rng rng(seq);
    const std::size_t d = o.dims[t % o.dims.size()];
    const SuiteInstance inst = draw_instance(t, d, rng);
    for (Measure m : {Measure::L1, Measure::RelEnt}) {
      const FreezeReport r = check_frozen(inst.phi, inst.rho, m, tolerances(o));
      if (r.agreement) {
        ++evaluated;
        agreed += *r.agreement;
      } else {
        ++outside;
      }
      if (r.violation) out.violations.push_back("trial " + std::to_string(t + 1) + ": " + *r.violation);

      json row = to_json(r);
      row.erase("violation");
      row["trial"] = t + 1;
      row["dim"] = d;
      row["kind"] = inst.kind;
      rows.push_back(std::move(row));
      csv << t + 1 << ',' << d << ',' << inst.kind << ',' << measure_name(m) << ','
          << num(r.c_before.value) << ',' << num(r.c_after.value) << ','
          << yes_no(r.operational_frozen) << ',' << path_name(r.path) << ','
          << opt_bool(r.structural_frozen) << ',' << opt_bool(r.agreement) << '\n';
      table << std::setw(7) << t + 1 << std::setw(5) << d << std::setw(17) << inst.kind
            << std::setw(4) << measure_name(m) << std::setw(16) << num(r.c_before.value)
            << std::setw(16) << num(r.c_after.value) << std::setw(8) << yes_no(r.operational_frozen)
            << std::setw(9) << path_name(r.path) << opt_bool(r.structural_frozen) << '\n';
    }
  }
  table << "\nstructural checks " << evaluated << ", agreements " << agreed
        << ", outside hypothesis " << outside << '\n';

  switch (format_of(o, Format::Table)) {
    case Format::Json:
      out.report = json{{"seed", o.seed},
                        {"trials", o.trials},
                        {"dims", o.dims},
                        {"structural_checks", evaluated},
                        {"agreements", agreed},
                        {"outside_hypothesis", outside},
                        {"rows", std::move(rows)}}
                       .dump(2) +
                   "\n";
      break;
    case Format::Csv: out.report = csv.str(); break;
    case Format::Table: out.report = table.str(); break;
  }
  return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Coherence measures and freezing checks for strictly incoherent operations",
               "cohfreeze"};
  app.require_subcommand(1);

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "table, json or csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));
    sub->add_option("--out", o.out, "write the report to this file");
  };
  const auto tol_flags = [&](CLI::App* sub) {
    sub->add_option("--tol-l1", o.tol_l1, "freeze tolerance for C_l1")->capture_default_str();
    sub->add_option("--tol-re", o.tol_re, "freeze tolerance for C_re")->capture_default_str();
  };

  auto* measure = app.add_subcommand("measure", "C_l1 and C_re of a state, plus its class");
  measure->add_option("--state", o.state, "state JSON")->required();
  measure->add_option("--measure", o.measure, "l1, re or both")
      ->check(CLI::IsMember({"l1", "re", "both"}));
  common(measure);

  auto* apply_cmd = app.add_subcommand("apply", "apply a channel to a state");
  apply_cmd->add_option("--state", o.state, "state JSON")->required();
  apply_cmd->add_option("--channel", o.channel, "channel JSON")->required();
  common(apply_cmd);

  auto* check = app.add_subcommand("check-freeze", "operational and structural freeze verdicts");
  check->add_option("--state", o.state, "state JSON")->required();
  check->add_option("--channel", o.channel, "channel JSON")->required();
  check->add_option("--measure", o.measure, "l1 or re")->check(CLI::IsMember({"l1", "re"}));
  common(check);
  tol_flags(check);

  auto* classify_sio = app.add_subcommand("classify-sio", "parse a channel and report its forms");
  classify_sio->add_option("--channel", o.channel, "channel JSON")->required();
  common(classify_sio);

  auto* xdec = app.add_subcommand("x-decompose", "block decomposition of an X state");
  xdec->add_option("--state", o.state, "state JSON")->required();
  common(xdec);

  auto* reproduce = app.add_subcommand("reproduce", "rerun a worked example");
  reproduce->add_option("which", o.which, "qubit, qutrit or bell")
      ->required()
      ->check(CLI::IsMember({"qubit", "qutrit", "bell"}));
  reproduce->add_option("--q", o.qs, "bit-flip strengths (bell)")->delimiter(',');
  reproduce->add_option("--grid", o.grid, "grid points per axis");
  common(reproduce);
  tol_flags(reproduce);

  auto* suite = app.add_subcommand("random-suite", "seeded randomized freeze checks");
  suite->add_option("--trials", o.trials, "number of trials")->capture_default_str();
  suite->add_option("--seed", o.seed, "base seed")->capture_default_str();
  suite->add_option("--dims", o.dims, "comma-separated dimensions")->delimiter(',');
  common(suite);
  tol_flags(suite);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInvalid;
  }

  Outcome result;
  try {
    if (measure->parsed()) result = cmd_measure(o);
    else if (apply_cmd->parsed()) result = cmd_apply(o);
    else if (check->parsed()) result = cmd_check_freeze(o);
    else if (classify_sio->parsed()) result = cmd_classify_sio(o);
    else if (xdec->parsed()) result = cmd_x_decompose(o);
    else if (suite->parsed()) result = cmd_random_suite(o);
    else if (o.which == "qubit") result = reproduce_qubit(o);
    else if (o.which == "qutrit") result = reproduce_qutrit(o);
    else result = reproduce_bell(o);
  } catch (const Error& e) {
    err << "error: " << e.name() << ": " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  if (o.out.empty()) {
    out << result.report;
  } else {
    std::ofstream file(o.out);
    if (!file) {
      err << "error: ParseError: cannot write " << o.out << '\n';
      return kExitInvalid;
    }
    file << result.report;
  }
  for (const auto& v : result.violations) err << "TheoremViolation: " << v << '\n';
  return result.violations.empty() ? kExitOk : kExitViolation;
}

}  // namespace cohfreeze::cli
