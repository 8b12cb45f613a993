#include "multeig/problem_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace multeig {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& context, const std::string& what) {
  throw ParseError(context + ": " + what);
}

Complex parse_complex(const json& j, const std::string& context) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(context, "complex numbers are two-element arrays [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Matrix parse_matrix(const json& j, int n, const std::string& context) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) {
    std::ostringstream msg;
    msg << "expected " << n << " rows, found " << (j.is_array() ? j.size() : 0);
    fail(context, msg.str());
  }
  Matrix m(n, n);
  for (int r = 0; r < n; ++r) {
    const json& row = j[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      std::ostringstream msg;
      msg << "row " << r << ": expected " << n << " entries";
      fail(context, msg.str());
    }
    for (int c = 0; c < n; ++c) {
      std::ostringstream where;
      where << context << "[" << r << "][" << c << "]";
      m(r, c) = parse_complex(row[static_cast<size_t>(c)], where.str());
    }
  }
  return m;
}

int parse_int(const json& doc, const char* key, const std::string& context) {
  if (!doc.contains(key)) fail(context, std::string("missing field '") + key + "'");
  if (!doc[key].is_number_integer())
    fail(context + "." + key, "expected an integer");
  return doc[key].get<int>();
}

}  // namespace

ProblemSpec parse_problem_json(const json& doc, const std::string& context) {
  if (!doc.is_object()) fail(context, "problem file must be a JSON object");

  const int n = parse_int(doc, "size", context);
  if (n < 1) fail(context + ".size", "matrix size must be positive");
  const int degree = parse_int(doc, "degree", context);
  if (degree < 0) fail(context + ".degree", "degree must be nonnegative");

  if (!doc.contains("coefficients") || !doc["coefficients"].is_array())
    fail(context, "missing 'coefficients' array");
  const json& coeff_list = doc["coefficients"];
  if (static_cast<int>(coeff_list.size()) != degree + 1) {
    std::ostringstream msg;
    msg << "declared degree " << degree << " needs " << degree + 1
        << " coefficient matrices (ascending, constant term first), found "
        << coeff_list.size();
    fail(context + ".coefficients", msg.str());
  }
  std::vector<Matrix> coeffs;
  coeffs.reserve(coeff_list.size());
  for (int j = 0; j <= degree; ++j) {
    std::ostringstream where;
    where << context << ".coefficients[" << j << "]";
    coeffs.push_back(parse_matrix(coeff_list[static_cast<size_t>(j)], n, where.str()));
  }

  if (!doc.contains("mu")) fail(context, "missing field 'mu'");
  const Complex mu = parse_complex(doc["mu"], context + ".mu");

  if (!doc.contains("weights") || !doc["weights"].is_array())
    fail(context, "missing 'weights' array");
  const json& wj = doc["weights"];
  if (static_cast<int>(wj.size()) != degree + 1) {
    std::ostringstream msg;
    msg << "expected " << degree + 1 << " weights, found " << wj.size();
    fail(context + ".weights", msg.str());
  }
  std::vector<double> weights;
  for (size_t j = 0; j < wj.size(); ++j) {
    if (!wj[j].is_number()) fail(context + ".weights", "weights must be numbers");
    weights.push_back(wj[j].get<double>());
  }

  PipelineOptions options;
  if (doc.contains("tolerances")) {
    const json& t = doc["tolerances"];
    if (!t.is_object()) fail(context + ".tolerances", "expected an object");
    const auto get_num = [&](const char* key, double& out) {
      if (!t.contains(key)) return;
      if (!t[key].is_number()) fail(context + ".tolerances." + key, "expected a number");
      out = t[key].get<double>();
    };
    get_num("tol_weak", options.tol_weak);
    get_num("tol_mult", options.tol_mult);
    get_num("tol_eig", options.tol_eig);
    get_num("gamma_max_factor", options.gamma_max_factor);
    if (t.contains("grid_points")) {
      if (!t["grid_points"].is_number_integer())
        fail(context + ".tolerances.grid_points", "expected an integer");
      options.grid_points = t["grid_points"].get<int>();
    }
  }

  try {
    return ProblemSpec{MatrixPolynomial(std::move(coeffs)), mu, WeightSet(std::move(weights)),
                       options};
  } catch (const PreconditionError& e) {
    // Invariants of the parsed values (singular leading coefficient, w_0 = 0,
    // ...) surface as parse diagnostics with the file context attached.
    fail(context, e.what());
  }
}

ProblemSpec parse_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return parse_problem_json(doc, path);
}

nlohmann::json emit_problem(const ProblemSpec& spec) {
  json doc;
  doc["size"] = spec.polynomial.size();
  doc["degree"] = spec.polynomial.degree();
  json coeffs = json::array();
  for (const Matrix& a : spec.polynomial.coeffs()) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < a.cols(); ++c)
        row.push_back(json::array({a(r, c).real(), a(r, c).imag()}));
      rows.push_back(std::move(row));
    }
    coeffs.push_back(std::move(rows));
  }
  doc["coefficients"] = std::move(coeffs);
  doc["mu"] = json::array({spec.mu.real(), spec.mu.imag()});
  doc["weights"] = spec.weights.weights();
  doc["tolerances"] = {{"tol_weak", spec.options.tol_weak},
                       {"tol_mult", spec.options.tol_mult},
                       {"tol_eig", spec.options.tol_eig},
                       {"grid_points", spec.options.grid_points},
                       {"gamma_max_factor", spec.options.gamma_max_factor}};
  return doc;
}

void write_problem(const ProblemSpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open file for writing");
  out << emit_problem(spec).dump(2) << "\n";
}

}  // namespace multeig
