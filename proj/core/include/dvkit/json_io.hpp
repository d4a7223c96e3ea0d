#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "dvkit/classify.hpp"
#include "dvkit/dvrep.hpp"
#include "dvkit/extend.hpp"
#include "dvkit/matrix_poly.hpp"
#include "dvkit/poly2.hpp"
#include "dvkit/soscert.hpp"

// JSON forms shared by the library and the command-line tool. Complex numbers
// are [re, im] pairs. Readers throw Error(Parse) naming the offending field
// path, e.g. "cert.P[1].coeffs[0][2]".
namespace dvkit::json_io {

using nlohmann::json;

inline constexpr const char* kSchema = "dvkit/1";

json to_json(cplx c);
cplx complex_from_json(const json& j, const std::string& path);

// {"degree":[n,m],"coeffs":[[[re,im],...],...]}
json to_json(const BivariatePolynomial& p);
BivariatePolynomial polynomial_from_json(const json& j, const std::string& path = "polynomial");

// rows x cols array of coefficient lists.
json to_json(const MatrixPolynomial& m);
MatrixPolynomial matrix_from_json(const json& j, const std::string& path);

json to_json(const VectorPolynomial& v);
VectorPolynomial vector_from_json(const json& j, const std::string& path);

json to_json(const CMatrix& m);
CMatrix cmatrix_from_json(const json& j, const std::string& path);

json to_json(const SosCertificate& c);
SosCertificate certificate_from_json(const json& j, const std::string& path = "certificate");

json to_json(const DvCertificate& c);
DvCertificate dv_certificate_from_json(const json& j, const std::string& path = "cert");

json to_json(const UnitaryRealization& r);
UnitaryRealization realization_from_json(const json& j, const std::string& path = "realization");

json to_json(const Point2& x);
json to_json(const ZeroClass& z);
json to_json(const SingularityReport& s);
json to_json(const GwReport& g);
json to_json(const VerificationReport& v);
json to_json(const RepresentationReport& r);
json to_json(const BoundReport& b);
json to_json(const ExtensionReport& e);

// Throws Error(Parse) with the file name on I/O or syntax errors.
json read_file(const std::filesystem::path& path);

}  // namespace dvkit::json_io
