#ifndef SEMIBJ_IO_JSON_HPP
#define SEMIBJ_IO_JSON_HPP

#include <cstdint>
#include <fstream>
#include <string>
#include <utility>

#include <json.hpp>

#include "semibj/distance.hpp"
#include "semibj/errors.hpp"
#include "semibj/generate.hpp"
#include "semibj/matrix.hpp"
#include "semibj/orthogonality.hpp"
#include "semibj/verify.hpp"

namespace semibj {

using Json = nlohmann::json;

inline Json cplx_to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

inline Json vec_to_json(const Vec& v) {
  Json out = Json::array();
  for (const cplx z : v) out.push_back(cplx_to_json(z));
  return out;
}

/// Row-major matrix encoding: {"rows": n, "cols": m, "data": [[[re,im],...]]}.
inline Json matrix_to_json(const Matrix& m) {
  Json data = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(cplx_to_json(m(i, j)));
    data.push_back(std::move(row));
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline Matrix matrix_from_json(const Json& j, const std::string& field) {
  const auto fail = [&](const std::string& what) {
    return ParseError("field '" + field + "': " + what);
  };
  if (!j.is_object()) throw fail("expected an object with rows, cols, data");
  if (!j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    throw fail("missing rows, cols, or data");
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
    throw fail("rows and cols must be integers");
  const long long rs = j["rows"].get<long long>();
  const long long cs = j["cols"].get<long long>();
  if (rs < 0 || cs < 0) throw fail("rows and cols must be nonnegative");
  const std::size_t rows = static_cast<std::size_t>(rs);
  const std::size_t cols = static_cast<std::size_t>(cs);
  const Json& data = j["data"];
  if (!data.is_array() || data.size() != rows)
    throw fail("data must hold exactly " + std::to_string(rows) + " rows");
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const Json& row = data[i];
    if (!row.is_array() || row.size() != cols)
      throw fail("data row " + std::to_string(i) + " must hold " +
                 std::to_string(cols) + " entries");
    for (std::size_t k = 0; k < cols; ++k) {
      const Json& e = row[k];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
          !e[1].is_number())
        throw fail("entry (" + std::to_string(i) + ", " + std::to_string(k) +
                   ") must be a [re, im] pair");
      m(i, k) = cplx{e[0].get<double>(), e[1].get<double>()};
    }
  }
  return m;
}

inline Json problem_to_json(const ProblemInstance& p) {
  Json out{{"A", matrix_to_json(p.a)},
           {"T", matrix_to_json(p.t)},
           {"S", matrix_to_json(p.s)}};
  out["seed"] = p.seed;
  out["metadata"] = Json{{"n", p.n},
                         {"intended_rank", p.intended_rank},
                         {"variant", p.variant},
                         {"orthogonal", p.orthogonal}};
  return out;
}

inline ProblemInstance problem_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("top level: expected a JSON object");
  for (const char* key : {"A", "T", "S"})
    if (!j.contains(key))
      throw ParseError(std::string("top level: missing field '") + key + "'");
  ProblemInstance p;
  p.a = matrix_from_json(j["A"], "A");
  p.t = matrix_from_json(j["T"], "T");
  p.s = matrix_from_json(j["S"], "S");
  if (p.a.rows() != p.a.cols())
    throw ParseError("field 'A': weight must be square");
  for (const auto& [key, m] : {std::pair<const char*, const Matrix*>{"T", &p.t},
                               {"S", &p.s}})
    if (m->rows() != p.a.rows() || m->cols() != p.a.cols())
      throw ParseError(std::string("field '") + key +
                       "': dimensions differ from the weight");
  p.n = p.a.rows();
  if (j.contains("seed") && j["seed"].is_number_integer())
    p.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("metadata") && j["metadata"].is_object()) {
    const Json& md = j["metadata"];
    if (md.contains("intended_rank") && md["intended_rank"].is_number_integer())
      p.intended_rank = md["intended_rank"].get<std::size_t>();
    if (md.contains("variant") && md["variant"].is_number_integer())
      p.variant = md["variant"].get<int>();
    if (md.contains("orthogonal") && md["orthogonal"].is_boolean())
      p.orthogonal = md["orthogonal"].get<bool>();
  }
  return p;
}

inline ProblemInstance load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
  return problem_from_json(j);
}

inline void save_problem(const std::string& path, const ProblemInstance& p) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  out << problem_to_json(p).dump(2) << '\n';
}

inline Json bj_to_json(const BjResult& r) {
  return Json{{"orthogonal", r.orthogonal},
              {"margin", r.margin},
              {"tolerance", r.tol_abs},
              {"degenerate", r.degenerate}};
}

inline Json witness_to_json(const Witness& w) {
  return Json{{"x", vec_to_json(w.x)},
              {"coords", vec_to_json(w.coords)},
              {"seminorm_gap", w.seminorm_gap},
              {"sip_residual", w.sip_residual}};
}

inline Json wset_to_json(const OrthogonalitySet& ws) {
  Json polygon = Json::array();
  for (const SupportSample& s : ws.samples)
    polygon.push_back(Json{{"theta", s.theta},
                           {"h", s.h},
                           {"point", cplx_to_json(s.boundary)}});
  return Json{{"k", ws.c.rows()},
              {"margin", ws.margin},
              {"argmin_theta", ws.argmin_theta},
              {"contains_zero", ws.contains_zero},
              {"tolerance", ws.tol_abs},
              {"norm_product", ws.norm_product},
              {"polygon", std::move(polygon)}};
}

inline Json distance_to_json(const DistanceResult& d) {
  return Json{{"d_gamma", d.d_gamma},
              {"zeta0", cplx_to_json(d.zeta0)},
              {"zeta0_unique", d.zeta0_unique},
              {"d_phi", d.d_phi},
              {"d_pairs", d.d_pairs},
              {"agreement", d.agreement},
              {"maximizer", vec_to_json(d.phi_maximizer)}};
}

inline Json zeta_to_json(const ZetaReport& z) {
  return Json{{"status", z.status == ZetaReport::Status::ok
                             ? "ok"
                             : "min_modulus_zero"},
              {"zeta0", cplx_to_json(z.zeta0)},
              {"d", z.d},
              {"min_modulus", z.min_mod},
              {"worst_slack", z.worst_slack},
              {"perturbations_violated", z.perturbations_violated},
              {"eps", z.eps}};
}

inline Json report_to_json(const VerifyReport& r) {
  Json checks = Json::array();
  for (const CheckRecord& c : r.checks)
    checks.push_back(Json{{"name", c.name},
                          {"status", to_string(c.status)},
                          {"value", c.value},
                          {"tolerance", c.tolerance},
                          {"note", c.note}});
  return Json{{"overall", r.overall},
              {"seed", r.seed},
              {"n", r.n},
              {"rank", r.rank},
              {"restarts", r.restarts},
              {"tolerances", Json{{"rank", r.tol.rank},
                                  {"zero", r.tol.zero},
                                  {"member", r.tol.member},
                                  {"mult", r.tol.mult},
                                  {"witness", r.tol.witness},
                                  {"bound", r.tol.bound}}},
              {"checks", std::move(checks)}};
}

}  // namespace semibj

#endif
