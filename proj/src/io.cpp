#include "cohfreeze/io.hpp"

#include <fstream>
#include <sstream>

#include "cohfreeze/error.hpp"

namespace cohfreeze {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

json complex_pair(cplx c) { return json::array({c.real(), c.imag()}); }

cplx read_complex(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    fail(where + ": expected [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail(where + ": missing \"" + key + "\"");
  return j.at(key);
}

std::size_t read_dim(const json& j) {
  const json& d = field(j, "dim", "document");
  if (!d.is_number_integer() || d.get<long long>() < 1) fail("\"dim\" must be a positive integer");
  return d.get<std::size_t>();
}

CMatrix read_dense(const json& rows, std::size_t d, const std::string& where) {
  if (!rows.is_array() || rows.size() != d) fail(where + ": expected " + std::to_string(d) + " rows");
  CMatrix m(d);
  for (std::size_t r = 0; r < d; ++r) {
    if (!rows[r].is_array() || rows[r].size() != d) {
      fail(where + ", row " + std::to_string(r + 1) + ": expected " + std::to_string(d) + " entries");
    }
    for (std::size_t c = 0; c < d; ++c) {
      m(r, c) = read_complex(rows[r][c], where + ", entry (" + std::to_string(r + 1) + "," +
                                             std::to_string(c + 1) + ")");
    }
  }
  return m;
}

json dense_json(const CMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.dim(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.dim(); ++c) row.push_back(complex_pair(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

json parse_json(std::string_view text, std::string_view source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // e.byte is the 1-based offset of the last byte read.
    std::size_t line = 1, column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string message = e.what();
    if (const auto pos = message.find("] "); pos != std::string::npos) message.erase(0, pos + 2);
    if (message.rfind("parse error", 0) == 0) {
      if (const auto pos = message.find(": "); pos != std::string::npos) message.erase(0, pos + 2);
    }
    fail(std::string(source) + ":" + std::to_string(line) + ":" + std::to_string(column) +
         ": malformed JSON (" + message + ")");
  }
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str(), path);
}

json to_json(const DensityMatrix& rho) {
  json entries = json::array();
  for (const auto& e : rho.matrix().entries()) entries.push_back(complex_pair(e));
  return {{"dim", rho.dim()}, {"entries", std::move(entries)}};
}

DensityMatrix state_from_json(const json& j) {
  const std::size_t d = read_dim(j);
  const json& entries = field(j, "entries", "state");
  if (!entries.is_array() || entries.size() != d * d) {
    fail("state: \"entries\" must hold dim² = " + std::to_string(d * d) + " values");
  }
  std::vector<cplx> values;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    values.push_back(read_complex(entries[k], "state entry (" + std::to_string(k / d + 1) + "," +
                                                  std::to_string(k % d + 1) + ")"));
  }
  return DensityMatrix::from_matrix(CMatrix(d, std::move(values)));
}

json to_json(const SioChannel& phi) {
  json kraus = json::array();
  for (const auto& k : phi.kraus()) {
    json coeffs = json::array();
    for (const auto& c : k.coeffs) coeffs.push_back(complex_pair(c));
    kraus.push_back({{"perm", k.f.one_based()}, {"coeffs", std::move(coeffs)}});
  }
  return {{"dim", phi.dim()}, {"kraus", std::move(kraus)}};
}

SioChannel channel_from_json(const json& j) {
  if (j.is_object() && j.contains("kraus_dense")) {
    const json& list = j.at("kraus_dense");
    if (!list.is_array() || list.empty()) fail("\"kraus_dense\" must be a nonempty list");
    const std::size_t d = j.contains("dim") ? read_dim(j) : list[0].size();
    std::vector<CMatrix> mats;
    for (std::size_t a = 0; a < list.size(); ++a) {
      mats.push_back(read_dense(list[a], d, "Kraus operator " + std::to_string(a + 1)));
    }
    return validate_sio(mats);
  }

  const std::size_t d = read_dim(j);
  const json& list = field(j, "kraus", "channel");
  if (!list.is_array() || list.empty()) fail("\"kraus\" must be a nonempty list");
  std::vector<SioKraus> kraus;
  for (std::size_t a = 0; a < list.size(); ++a) {
    const std::string where = "Kraus operator " + std::to_string(a + 1);
    const json& perm = field(list[a], "perm", where);
    const json& coeffs = field(list[a], "coeffs", where);
    if (!perm.is_array() || perm.size() != d) fail(where + ": \"perm\" needs " + std::to_string(d) + " entries");
    if (!coeffs.is_array() || coeffs.size() != d) {
      fail(where + ": \"coeffs\" needs " + std::to_string(d) + " entries");
    }
    std::vector<long long> image;
    for (const auto& p : perm) {
      if (!p.is_number_integer()) fail(where + ": \"perm\" entries must be integers");
      image.push_back(p.get<long long>());
    }
    SioKraus k{Permutation::from_one_based(image), {}};
    for (std::size_t i = 0; i < d; ++i) {
      k.coeffs.push_back(read_complex(coeffs[i], where + ", coefficient " + std::to_string(i + 1)));
    }
    kraus.push_back(std::move(k));
  }
  return SioChannel::from_kraus(std::move(kraus));
}

json to_json(const FreezeReport& r) {
  json j = {{"measure", measure_name(r.measure)},
            {"c_before", r.c_before.value},
            {"c_after", r.c_after.value},
            {"operational_frozen", r.operational_frozen},
            {"hypothesis_ok", r.hypothesis_ok},
            {"path", path_name(r.path)},
            {"structural_frozen", nullptr},
            {"agreement", nullptr}};
  if (r.structural_frozen) j["structural_frozen"] = *r.structural_frozen;
  if (r.agreement) j["agreement"] = *r.agreement;
  if (r.violation) j["violation"] = *r.violation;
  return j;
}

json to_json(const XDecomposition& x) {
  json blocks = json::array();
  for (const auto& b : x.blocks) blocks.push_back(dense_json(b.matrix()));
  json j = {{"pairing", x.pairing.one_based()},
            {"weights", x.weights},
            {"blocks", std::move(blocks)},
            {"tail", nullptr}};
  if (x.tail) j["tail"] = *x.tail;
  return j;
}

json to_json(const BlockKrausForm& f) {
  json phases = json::array();
  for (const auto& [a, b] : f.phases) phases.push_back({a, b});
  std::vector<bool> swaps(f.within_swap.begin(), f.within_swap.end());
  json j = {{"f_pair", f.f_pair.one_based()},
            {"within_swap", swaps},
            {"deltas", f.deltas},
            {"phases", std::move(phases)},
            {"odd_kind", odd_kind_name(f.odd_kind)}};
  if (f.odd_kind != OddKind::None) j["odd_coeff"] = complex_pair(f.odd_coeff);
  if (f.odd_kind == OddKind::RankOne) j["rank_one_target"] = f.rank_one_target + 1;
  return j;
}

json to_json(const SweepResult& r) {
  json points = json::array();
  for (const auto& p : r.points) {
    json pt = {{"delta", p.delta},       {"theta1", p.theta1},   {"theta2", p.theta2},
               {"theta", p.theta},       {"c_before", p.c_before}, {"c_after", p.c_after},
               {"frozen", p.frozen},     {"predicted", p.predicted},
               {"manifold_distance", p.manifold_distance}, {"structural", nullptr}};
    if (p.structural) pt["structural"] = *p.structural;
    points.push_back(std::move(pt));
  }
  return {{"grid_n", r.grid_n},
          {"deltas", r.deltas},
          {"rho12_modulus", r.rho12_modulus},
          {"agreements", r.agreements},
          {"disagreements", r.disagreements},
          {"structural_agreements", r.structural_agreements},
          {"structural_disagreements", r.structural_disagreements},
          {"points", std::move(points)}};
}

}  // namespace cohfreeze
