#include "focklab/config.hpp"

#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

namespace focklab {

namespace {

using nlohmann::json;

Complex parse_complex(const json& j, const std::string& where) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error(ErrorKind::ParseError, where + ": complex scalars are [re, im] pairs");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Matrix parse_matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty())
    throw Error(ErrorKind::ParseError, where + ": matrix must be a non-empty array of rows");
  const size_t rows = j.size();
  const size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw Error(ErrorKind::ParseError, where + ": matrix rows must be arrays");
  Matrix m(rows, cols);
  for (size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw Error(ErrorKind::ParseError, where + ": matrix is not rectangular");
    for (size_t k = 0; k < cols; ++k)
      m(i, k) = parse_complex(j[i][k], where);
  }
  return m;
}

const std::set<std::string> kKnownTasks = {
    "covariance", "fourier",    "cesaro",    "membership",
    "commutant",  "bicommutant", "thm41",    "similarity",
    "decompose",  "commuting",  "laca",      "reflexivity"};

}  // namespace

RowOperator row_from_gallery(const std::string& name, int D, Complex lambda,
                             Complex mu, const std::string& part) {
  if (name == "odometer") return gallery_odometer(D);
  if (name == "binary_weight" || name == "binary_weight_unitary")
    return gallery_binary_weight(D, lambda, mu);
  if (name == "bilateral_odometer") return gallery_bilateral_odometer(D);
  if (name == "bilateral_diag") return unitary_row(bilateral_diag_unitary(D, lambda, mu));
  if (name == "bilateral_swap") return unitary_row(bilateral_swap_unitary(D, lambda, mu));
  if (name == "clock_shift") {
    const auto pair = gallery_clock_shift(D);
    if (part == "u") return unitary_row(pair.u);
    if (part == "v") return unitary_row(pair.v);
    throw Error(ErrorKind::ParseError, "clock_shift rows need \"part\": \"u\" or \"v\"");
  }
  if (name == "trivial") return trivial_row(D);
  throw Error(ErrorKind::UnknownName, "unknown gallery name: " + name);
}

SpanBasis named_algebra(const std::string& name, int h) {
  if (name == "full") return full_matrix_algebra(h);
  if (name == "diag") return diagonal_algebra(h);
  if (name == "scalar") return scalar_algebra(h);
  if (name == "I+E21") return algebra_I_E21(h);
  throw Error(ErrorKind::UnknownName, "unknown algebra name: " + name);
}

Config parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("config parse error: ") + e.what());
  }
  Config cfg;
  try {
    const std::string kind = doc.value("kind", "free");
    if (kind == "free")
      cfg.kind = SemigroupKind::Free;
    else if (kind == "abelian")
      cfg.kind = SemigroupKind::Abelian;
    else
      throw Error(ErrorKind::ParseError, "kind must be \"free\" or \"abelian\"");
    if (!doc.contains("d") || !doc.contains("L"))
      throw Error(ErrorKind::ParseError, "config needs \"d\" and \"L\"");
    cfg.d = doc["d"].get<int>();
    cfg.L = doc["L"].get<int>();
    cfg.tol = doc.value("tol", 1e-9);
    cfg.seed = doc.value("seed", static_cast<std::uint64_t>(0));
    cfg.out_path = doc.value("out", "");
    cfg.format = doc.value("format", "json");
    cfg.parallel = doc.value("parallel", false);
    if (cfg.format != "json" && cfg.format != "text")
      throw Error(ErrorKind::ParseError, "format must be \"json\" or \"text\"");

    if (!doc.contains("rows") || !doc["rows"].is_array() ||
        doc["rows"].size() != static_cast<size_t>(cfg.d))
      throw Error(ErrorKind::ParseError, "config needs exactly d entries under \"rows\"");
    for (size_t i = 0; i < doc["rows"].size(); ++i) {
      const auto& rj = doc["rows"][i];
      const std::string where = "rows[" + std::to_string(i) + "]";
      if (rj.contains("gallery")) {
        const Complex lambda =
            rj.contains("lambda") ? parse_complex(rj["lambda"], where) : Complex(1, 0);
        const Complex mu =
            rj.contains("mu") ? parse_complex(rj["mu"], where) : Complex(1, 0);
        cfg.rows.push_back(row_from_gallery(rj["gallery"].get<std::string>(),
                                            rj.value("D", 0), lambda, mu,
                                            rj.value("part", "")));
      } else {
        if (!rj.contains("u") || !rj.contains("v"))
          throw Error(ErrorKind::ParseError, where + ": needs \"u\" and \"v\" (or a gallery)");
        RowOperator row;
        for (const auto& um : rj["u"]) row.u.push_back(parse_matrix(um, where + ".u"));
        for (const auto& vm : rj["v"]) row.v.push_back(parse_matrix(vm, where + ".v"));
        if (row.u.size() != row.v.size() || row.u.empty())
          throw Error(ErrorKind::ParseError, where + ": u and v need matching entry counts");
        if (rj.contains("window"))
          row.window = rj["window"].get<std::vector<int>>();
        cfg.rows.push_back(std::move(row));
      }
    }
    cfg.h = doc.value("h", cfg.rows[0].h());
    for (const auto& r : cfg.rows)
      if (r.h() != cfg.h)
        throw Error(ErrorKind::ParseError, "row operator dimensions disagree with h");

    if (!doc.contains("algebra"))
      throw Error(ErrorKind::ParseError, "config needs \"algebra\"");
    if (doc["algebra"].is_string()) {
      cfg.algebra_name = doc["algebra"].get<std::string>();
      cfg.algebra = named_algebra(cfg.algebra_name, cfg.h);
    } else if (doc["algebra"].is_array()) {
      for (size_t i = 0; i < doc["algebra"].size(); ++i)
        cfg.algebra.mats.push_back(
            parse_matrix(doc["algebra"][i], "algebra[" + std::to_string(i) + "]"));
    } else {
      throw Error(ErrorKind::ParseError, "algebra must be a name or a matrix list");
    }

    if (doc.contains("tasks")) {
      for (const auto& t : doc["tasks"]) {
        const std::string name = t.get<std::string>();
        if (!kKnownTasks.count(name))
          throw Error(ErrorKind::UnknownName, "unknown task: " + name);
        cfg.tasks.push_back(name);
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("config field error: ") + e.what());
  }
  cfg.echo = doc.dump();
  return cfg;
}

Config parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace focklab
