#include "dvkit/json_io.hpp"

#include <cmath>
#include <fstream>

#include "dvkit/error.hpp"

namespace dvkit::json_io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::Parse, path + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

const json& array(const json& j, const std::string& path, std::size_t size) {
  if (!j.is_array()) fail(path, "expected an array");
  if (j.size() != size) {
    fail(path, "expected " + std::to_string(size) + " entries, got " + std::to_string(j.size()));
  }
  return j;
}

const json& any_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

std::string at(const std::string& path, std::size_t k) {
  return path + "[" + std::to_string(k) + "]";
}

// Non-finite values become null.
json real(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json optional_real(const std::optional<double>& x) { return x ? real(*x) : json(nullptr); }

Degree degree_from_json(const json& j, const std::string& path) {
  array(j, path, 2);
  const Degree d{integer(j[0], at(path, 0)), integer(j[1], at(path, 1))};
  if (d.z < 0 || d.w < 0) fail(path, "degrees must be non-negative");
  return d;
}

json degree_json(Degree d) { return json::array({d.z, d.w}); }

}  // namespace

json to_json(cplx c) { return json::array({real(c.real()), real(c.imag())}); }

cplx complex_from_json(const json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_array() || j.size() != 2) fail(path, "expected [re, im]");
  return {number(j[0], at(path, 0)), number(j[1], at(path, 1))};
}

json to_json(const BivariatePolynomial& p) {
  json rows = json::array();
  for (int i = 0; i < p.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < p.cols(); ++j) row.push_back(to_json(p.coeff(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"degree", degree_json(p.degree())}, {"coeffs", std::move(rows)}};
}

BivariatePolynomial polynomial_from_json(const json& j, const std::string& path) {
  const Degree d = degree_from_json(field(j, "degree", path), path + ".degree");
  const std::string cpath = path + ".coeffs";
  const json& rows = array(field(j, "coeffs", path), cpath, static_cast<std::size_t>(d.z + 1));
  BivariatePolynomial p(d);
  for (int i = 0; i <= d.z; ++i) {
    const std::string rpath = at(cpath, static_cast<std::size_t>(i));
    const json& row = array(rows[static_cast<std::size_t>(i)], rpath, static_cast<std::size_t>(d.w + 1));
    for (int k = 0; k <= d.w; ++k) {
      p.coeff(i, k) = complex_from_json(row[static_cast<std::size_t>(k)], at(rpath, static_cast<std::size_t>(k)));
    }
  }
  return p;
}

json to_json(const MatrixPolynomial& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) {
      json coeffs = json::array();
      for (const cplx x : m.entry(r, c)) coeffs.push_back(to_json(x));
      row.push_back(std::move(coeffs));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

MatrixPolynomial matrix_from_json(const json& j, const std::string& path) {
  any_array(j, path);
  const std::size_t rows = j.size();
  if (rows == 0) return {};
  const std::size_t cols = any_array(j[0], at(path, 0)).size();
  if (cols == 0) fail(at(path, 0), "empty row");
  const std::size_t len = any_array(j[0][0], at(at(path, 0), 0)).size();
  if (len == 0) fail(at(at(path, 0), 0), "empty coefficient list");
  MatrixPolynomial m(static_cast<int>(rows), static_cast<int>(cols), static_cast<int>(len) - 1);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rpath = at(path, r);
    const json& row = array(j[r], rpath, cols);
    for (std::size_t c = 0; c < cols; ++c) {
      const std::string epath = at(rpath, c);
      const json& e = array(row[c], epath, len);
      for (std::size_t k = 0; k < len; ++k) {
        m.entry(static_cast<int>(r), static_cast<int>(c))[k] = complex_from_json(e[k], at(epath, k));
      }
    }
  }
  return m;
}

json to_json(const VectorPolynomial& v) {
  json out = json::array();
  for (const auto& p : v) out.push_back(to_json(p));
  return out;
}

VectorPolynomial vector_from_json(const json& j, const std::string& path) {
  any_array(j, path);
  VectorPolynomial v;
  for (std::size_t k = 0; k < j.size(); ++k) v.push_back(polynomial_from_json(j[k], at(path, k)));
  return v;
}

json to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix cmatrix_from_json(const json& j, const std::string& path) {
  any_array(j, path);
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : any_array(j[0], at(path, 0)).size();
  CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = array(j[r], at(path, r), cols);
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          complex_from_json(row[c], at(at(path, r), c));
    }
  }
  return m;
}

json to_json(const SosCertificate& c) {
  json out{{"schema", kSchema},
           {"kind", std::string(to_string(c.kind))},
           {"weights", json::array({c.a, c.b})},
           {"degree", degree_json(c.degree)},
           {"route", c.route},
           {"vec_first", to_json(c.vec_first)},
           {"vec_second", to_json(c.vec_second)}};
  out["matrix_first"] = c.matrix_first ? to_json(*c.matrix_first) : json(nullptr);
  out["matrix_second"] = c.matrix_second ? to_json(*c.matrix_second) : json(nullptr);
  return out;
}

SosCertificate certificate_from_json(const json& j, const std::string& path) {
  SosCertificate c;
  const json& kind = field(j, "kind", path);
  if (!kind.is_string()) fail(path + ".kind", "expected a string");
  try {
    c.kind = certificate_kind_from_string(kind.get<std::string>());
  } catch (const Error& e) {
    fail(path + ".kind", e.what());
  }
  const json& w = array(field(j, "weights", path), path + ".weights", 2);
  c.a = number(w[0], path + ".weights[0]");
  c.b = number(w[1], path + ".weights[1]");
  c.degree = degree_from_json(field(j, "degree", path), path + ".degree");
  if (const auto it = j.find("route"); it != j.end() && it->is_string()) c.route = it->get<std::string>();
  c.vec_first = vector_from_json(field(j, "vec_first", path), path + ".vec_first");
  c.vec_second = vector_from_json(field(j, "vec_second", path), path + ".vec_second");
  if (static_cast<int>(c.vec_first.size()) != c.degree.z) {
    fail(path + ".vec_first", "expected " + std::to_string(c.degree.z) + " components");
  }
  if (static_cast<int>(c.vec_second.size()) != c.degree.w) {
    fail(path + ".vec_second", "expected " + std::to_string(c.degree.w) + " components");
  }
  attach_matrix_forms(c);
  return c;
}

json to_json(const DvCertificate& c) {
  return {{"p", to_json(c.p)},
          {"weights", json::array({c.a, c.b})},
          {"P", to_json(c.P)},
          {"Q", to_json(c.Q)},
          {"qmatrix", to_json(c.qmatrix)},
          {"smooth_on_torus", c.smooth_on_torus}};
}

DvCertificate dv_certificate_from_json(const json& j, const std::string& path) {
  DvCertificate c;
  c.p = polynomial_from_json(field(j, "p", path), path + ".p");
  const json& w = array(field(j, "weights", path), path + ".weights", 2);
  c.a = number(w[0], path + ".weights[0]");
  c.b = number(w[1], path + ".weights[1]");
  c.P = vector_from_json(field(j, "P", path), path + ".P");
  c.Q = vector_from_json(field(j, "Q", path), path + ".Q");
  const Degree d = c.p.degree();
  if (static_cast<int>(c.P.size()) != d.z) fail(path + ".P", "expected " + std::to_string(d.z) + " components");
  if (static_cast<int>(c.Q.size()) != d.w) fail(path + ".Q", "expected " + std::to_string(d.w) + " components");
  c.qmatrix = matrix_from_json(field(j, "qmatrix", path), path + ".qmatrix");
  if (c.qmatrix.rows() != d.w || c.qmatrix.cols() != d.w) {
    fail(path + ".qmatrix", "expected a " + std::to_string(d.w) + " x " + std::to_string(d.w) + " matrix");
  }
  const json& smooth = field(j, "smooth_on_torus", path);
  if (!smooth.is_boolean()) fail(path + ".smooth_on_torus", "expected a boolean");
  c.smooth_on_torus = smooth.get<bool>();
  return c;
}

json to_json(const UnitaryRealization& r) {
  return {{"m", r.m}, {"n", r.n}, {"U", to_json(r.U)}, {"gram_residual", real(r.gram_residual)},
          {"rank", r.rank}};
}

UnitaryRealization realization_from_json(const json& j, const std::string& path) {
  UnitaryRealization r;
  r.m = integer(field(j, "m", path), path + ".m");
  r.n = integer(field(j, "n", path), path + ".n");
  if (r.m < 1 || r.n < 0) fail(path, "block sizes must satisfy m >= 1, n >= 0");
  const std::size_t size = static_cast<std::size_t>(r.m + r.n);
  const json& u = array(field(j, "U", path), path + ".U", size);
  for (std::size_t k = 0; k < size; ++k) array(u[k], at(path + ".U", k), size);
  r.U = cmatrix_from_json(u, path + ".U");
  if (const auto it = j.find("gram_residual"); it != j.end() && it->is_number()) {
    r.gram_residual = it->get<double>();
  }
  if (const auto it = j.find("rank"); it != j.end() && it->is_number_integer()) r.rank = it->get<int>();
  return r;
}

json to_json(const Point2& x) { return json::array({to_json(x.z), to_json(x.w)}); }

json to_json(const ZeroClass& z) {
  json w = json::array();
  for (const auto& p : z.witnesses) w.push_back(to_json(p));
  const char* sym = z.symmetry == SymmetryKind::T2Symmetric             ? "T2Symmetric"
                    : z.symmetry == SymmetryKind::EssentiallyT2Symmetric ? "EssentiallyT2Symmetric"
                                                                         : "NotSymmetric";
  return {{"label", std::string(to_string(z.label))},
          {"witnesses", std::move(w)},
          {"grid", z.grid_n},
          {"tol", z.tol},
          {"torus_margin", z.torus_margin},
          {"symmetry", sym},
          {"squarefree", z.squarefree}};
}

json to_json(const SingularityReport& s) {
  json pts = json::array();
  for (const auto& p : s.points) pts.push_back(to_json(p));
  return {{"points", std::move(pts)}, {"smooth_on_torus", s.smooth_on_torus}};
}

json to_json(const GwReport& g) {
  return {{"min_sigma_first", optional_real(g.min_sigma_first)},
          {"min_sigma_second", optional_real(g.min_sigma_second)},
          {"threshold", g.threshold},
          {"grid", g.grid_n},
          {"passed", g.passed}};
}

json to_json(const VerificationReport& v) {
  return {{"grid", v.grid_n},
          {"grid_residual", real(v.grid_residual)},
          {"random_residual", real(v.random_residual)},
          {"polarized_residual", real(v.polarized_residual)},
          {"max_residual", real(v.max_residual)},
          {"threshold", v.threshold},
          {"passed", v.passed}};
}

json to_json(const RepresentationReport& r) {
  return {{"det_on_variety", real(r.det_on_variety)},
          {"eigen_relation", real(r.eigen_relation)},
          {"det_coefficients", real(r.det_coefficients)},
          {"unitarity", real(r.unitarity)},
          {"boundary_unitarity", real(r.boundary_unitarity)},
          {"gram_residual", real(r.gram_residual)},
          {"d_spectral_radius", real(r.d_spectral_radius)},
          {"smooth_on_torus", r.smooth_on_torus},
          {"qmatrix_min_sigma", optional_real(r.qmatrix_min_sigma)},
          {"passed", r.passed}};
}

json to_json(const BoundReport& b) {
  return {{"C", real(b.C)},
          {"per_point_bound", real(b.per_point_bound)},
          {"interior_excess", real(b.interior_excess)}};
}

json to_json(const ExtensionReport& e) {
  json out{{"bound", to_json(e.bound)},
           {"sup_f_on_variety", real(e.sup_f_on_variety)},
           {"sup_f_interior", real(e.sup_f_interior)},
           {"sup_F_on_bidisk", real(e.sup_F_on_bidisk)},
           {"on_variety_residual", real(e.on_variety_residual)},
           {"ratio", real(e.ratio)},
           {"swapped_C", optional_real(e.swapped_C)},
           {"passed", e.passed}};
  const double best = e.swapped_C ? std::min(e.bound.C, *e.swapped_C) : e.bound.C;
  out["best_C"] = real(best);
  return out;
}

json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, path.string() + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, path.string() + ": " + e.what());
  }
}

}  // namespace dvkit::json_io
