#include "dvkit_cli/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>

#include <CLI11.hpp>

#include "dvkit/blaschke.hpp"
#include "dvkit/classify.hpp"
#include "dvkit/dvrep.hpp"
#include "dvkit/error.hpp"
#include "dvkit/extend.hpp"
#include "dvkit/json_io.hpp"
#include "dvkit/soscert.hpp"

namespace dvkit::cli {

namespace jio = dvkit::json_io;
using nlohmann::json;

std::variant<RunConfig, int> parse_args(int argc, const char* const* argv, std::ostream& out,
                                        std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Bidisk polynomial analysis: classification, certificates, representations"};
  app.require_subcommand(1);

  bool json_flag = true;
  auto common = [&](CLI::App* sub, std::size_t inputs, const std::string& input_help) {
    sub->add_option("inputs", cfg.inputs, input_help)->required()->expected(static_cast<int>(inputs));
    sub->add_option("--grid", cfg.grid_n, "grid resolution (>= 16)");
    sub->add_option("-o,--output", cfg.output, "write the report to this file");
    sub->add_flag("--json", json_flag, "machine-readable output (default)");
  };
  auto weights = [&](CLI::App* sub) {
    sub->add_option("--a", cfg.a, "weight on the z-derivative term");
    sub->add_option("--b", cfg.b, "weight on the w-derivative term");
  };

  CLI::App* classify = app.add_subcommand("classify", "locate the zero set relative to the bidisk");
  common(classify, 1, "polynomial JSON");
  classify->add_option("--tol", cfg.tol, "tolerance in (0, 1e-2]");

  CLI::App* reflect = app.add_subcommand("reflect", "reflection and symmetry analysis");
  common(reflect, 1, "polynomial JSON");

  CLI::App* sos = app.add_subcommand("sos", "sums-of-squares certificate");
  common(sos, 1, "polynomial JSON");
  weights(sos);

  CLI::App* represent = app.add_subcommand("represent", "unitary realization of a distinguished variety");
  common(represent, 1, "polynomial JSON");
  weights(represent);
  represent->add_option("--seed", cfg.seed, "variety sampling seed");
  represent->add_option("--samples", cfg.samples, "variety sample size");

  CLI::App* extend = app.add_subcommand("extend", "bounded extension from the variety");
  common(extend, 2, "realization JSON and function JSON");
  weights(extend);

  CLI::App* verify = app.add_subcommand("verify", "verify a certificate or realization");
  common(verify, 2, "certificate or realization JSON, then polynomial JSON");

  CLI::App* demo = app.add_subcommand("demo", "run the built-in corpus");
  demo->add_option("-o,--output", cfg.output, "write the report to this file");
  demo->add_flag("--json", json_flag, "machine-readable output (default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  const std::pair<CLI::App*, Command> table[] = {
      {classify, Command::Classify}, {reflect, Command::Reflect}, {sos, Command::Sos},
      {represent, Command::Represent}, {extend, Command::Extend}, {verify, Command::Verify},
      {demo, Command::Demo}};
  for (const auto& [sub, command] : table) {
    if (sub->parsed()) {
      cfg.command = command;
      if (sub == sos || sub == represent || sub == extend) {
        cfg.weights_given = sub->count("--a") + sub->count("--b") > 0;
      }
    }
  }

  if (cfg.grid_n < 16) {
    err << "error: --grid must be at least 16\n";
    return kExitUsage;
  }
  if (!(cfg.tol > 0.0 && cfg.tol <= 1e-2)) {
    err << "error: --tol must lie in (0, 1e-2]\n";
    return kExitUsage;
  }
  if (cfg.a < 0.0 || cfg.b < 0.0 || (cfg.a == 0.0 && cfg.b == 0.0)) {
    err << "error: --a and --b must be non-negative and not both zero\n";
    return kExitUsage;
  }
  if (cfg.samples < 0) {
    err << "error: --samples must be non-negative\n";
    return kExitUsage;
  }
  return cfg;
}

namespace {

struct Outcome {
  json report;
  int code = kExitPass;
};

BivariatePolynomial read_polynomial(const std::string& file) {
  return jio::polynomial_from_json(jio::read_file(file), file + ":polynomial");
}

json symmetry_json(const SymmetryResult& s) {
  const char* kind = s.kind == SymmetryKind::T2Symmetric             ? "T2Symmetric"
                     : s.kind == SymmetryKind::EssentiallyT2Symmetric ? "EssentiallyT2Symmetric"
                                                                      : "NotSymmetric";
  return {{"kind", kind},
          {"constant", s.constant ? jio::to_json(*s.constant) : json(nullptr)},
          {"symmetrizing_factor",
           s.symmetrizing_factor ? jio::to_json(*s.symmetrizing_factor) : json(nullptr)}};
}

int sample_count(const RunConfig& cfg, Degree d) {
  return cfg.samples > 0 ? cfg.samples : default_sample_count(d);
}

Outcome do_classify(const RunConfig& cfg) {
  const BivariatePolynomial p = read_polynomial(cfg.inputs.at(0));
  ClassifyOptions opts;
  opts.grid_n = cfg.grid_n;
  opts.tol = cfg.tol;
  json report = jio::to_json(classify_zero_set(p, opts));
  if (symmetry_analysis(p).kind != SymmetryKind::NotSymmetric) {
    report["torus_singularities"] = jio::to_json(torus_singularities(p, cfg.grid_n, cfg.tol));
  }
  return {report, kExitPass};
}

Outcome do_reflect(const RunConfig& cfg) {
  const BivariatePolynomial p = read_polynomial(cfg.inputs.at(0));
  json report{{"reflection", jio::to_json(reflect(p))},
              {"symmetry", symmetry_json(symmetry_analysis(p))}};
  const auto [qz, qw] = reflected_derivatives(p);
  report["reflected_derivatives"] = json::array({jio::to_json(qz), jio::to_json(qw)});
  if (p.degree().z > 0 && p.true_degree().z == p.degree().z) {
    report["swap_transform"] = jio::to_json(swap_transform(p));
  }
  return {report, kExitPass};
}

Outcome do_sos(const RunConfig& cfg) {
  const BivariatePolynomial q = read_polynomial(cfg.inputs.at(0));
  SosCertificate cert;
  json extra;
  if (cfg.weights_given) {
    const SymmetryResult s = symmetry_analysis(q);
    if (s.kind == SymmetryKind::NotSymmetric) {
      throw Error(ErrorCode::NotSymmetric, "--a/--b need an essentially T^2-symmetric polynomial");
    }
    // The symmetric identity is unchanged by a unimodular factor.
    cert = sym_sos_certificate(symmetrize(q), cfg.a, cfg.b);
    extra["symmetry"] = symmetry_json(s);
  } else {
    cert = sos_certificate(q);
    extra["gw"] = jio::to_json(gw_invertibility(cert, cfg.grid_n));
  }
  const VerificationReport v = verify_certificate(q, cert, cfg.grid_n);
  json report = jio::to_json(cert);
  report["residual"] = v.max_residual;
  report["verification"] = jio::to_json(v);
  for (auto& [k, val] : extra.items()) report[k] = val;
  return {report, v.passed ? kExitPass : kExitFail};
}

Outcome do_represent(const RunConfig& cfg) {
  const BivariatePolynomial p = read_polynomial(cfg.inputs.at(0));
  const DvCertificate cert = dv_certificate(p, cfg.a, cfg.b);
  const int count = sample_count(cfg, p.degree());
  const VarietySample sample = sample_variety(cert.p, count, cfg.seed);
  const UnitaryRealization rep = lurking_isometry(cert, sample);
  const RepresentationReport r = verify_representation(p, cert, rep, sample, cfg.grid_n);
  json report = jio::to_json(rep);
  report["schema"] = jio::kSchema;
  report["cert"] = jio::to_json(cert);
  report["report"] = jio::to_json(r);
  report["sample"] = {{"seed", cfg.seed}, {"count", count}};
  return {report, r.passed ? kExitPass : kExitFail};
}

struct LoadedRealization {
  UnitaryRealization rep;
  DvCertificate cert;
  std::uint64_t seed = 7;
  int count = 0;
};

LoadedRealization read_realization(const std::string& file) {
  const json j = jio::read_file(file);
  LoadedRealization out;
  out.rep = jio::realization_from_json(j, file + ":realization");
  if (!j.contains("cert")) throw Error(ErrorCode::Parse, file + ":realization.cert: missing");
  out.cert = jio::dv_certificate_from_json(j["cert"], file + ":realization.cert");
  if (out.rep.m != static_cast<int>(out.cert.Q.size()) || out.rep.n != static_cast<int>(out.cert.P.size())) {
    throw Error(ErrorCode::Parse, file + ":realization: block sizes disagree with cert");
  }
  out.count = default_sample_count(out.cert.p.degree());
  if (const auto it = j.find("sample"); it != j.end() && it->is_object()) {
    if (it->contains("seed") && (*it)["seed"].is_number_unsigned()) out.seed = (*it)["seed"].get<std::uint64_t>();
    if (it->contains("count") && (*it)["count"].is_number_integer()) out.count = (*it)["count"].get<int>();
  }
  return out;
}

Outcome do_extend(const RunConfig& cfg) {
  const LoadedRealization loaded = read_realization(cfg.inputs.at(0));
  const BivariatePolynomial f = read_polynomial(cfg.inputs.at(1));
  const VarietySample sample = sample_variety(loaded.cert.p, loaded.count, loaded.seed);
  const ExtensionOperator op = make_extension(loaded.rep, loaded.cert.qmatrix, f);
  ExtensionReport r = verify_extension(op, loaded.cert.p, sample, cfg.grid_n);
  r.swapped_C = swapped_constant(loaded.cert.p, cfg.a, cfg.b, loaded.seed);
  return {jio::to_json(r), r.passed ? kExitPass : kExitFail};
}

Outcome do_verify(const RunConfig& cfg) {
  const std::string& first = cfg.inputs.at(0);
  const json j = jio::read_file(first);
  const BivariatePolynomial p = read_polynomial(cfg.inputs.at(1));
  if (j.is_object() && j.contains("U")) {
    const LoadedRealization loaded = read_realization(first);
    const VarietySample sample = sample_variety(loaded.cert.p, loaded.count, loaded.seed);
    const RepresentationReport r = verify_representation(p, loaded.cert, loaded.rep, sample, cfg.grid_n);
    return {{{"verified", "realization"}, {"report", jio::to_json(r)}}, r.passed ? kExitPass : kExitFail};
  }
  const SosCertificate cert = jio::certificate_from_json(j, first + ":certificate");
  const VerificationReport v = verify_certificate(p, cert, cfg.grid_n);
  return {{{"verified", "certificate"}, {"report", jio::to_json(v)}}, v.passed ? kExitPass : kExitFail};
}

// One row of the demo matrix.
struct Check {
  std::string name;
  std::function<json()> body;  // returns detail with a boolean "passed"
};

BivariatePolynomial poly_z3_w2() { return BivariatePolynomial::from_rows({{0.0, 0.0, -1.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}}); }

json pipeline_detail(const BivariatePolynomial& p, const std::vector<BivariatePolynomial>& fs) {
  const DvCertificate cert = dv_certificate(p);
  const VarietySample sample = sample_variety(cert.p, default_sample_count(p.degree()), 7);
  const UnitaryRealization rep = lurking_isometry(cert, sample);
  const RepresentationReport r = verify_representation(p, cert, rep, sample);
  json detail{{"representation", jio::to_json(r)}};
  bool ok = r.passed;
  json ext = json::array();
  for (const auto& f : fs) {
    const ExtensionReport e = verify_extension(make_extension(rep, cert.qmatrix, f), cert.p, sample);
    ok = ok && e.passed;
    ext.push_back(jio::to_json(e));
  }
  detail["extensions"] = ext;
  detail["passed"] = ok;
  return detail;
}

Outcome do_demo() {
  const BivariatePolynomial z3w2 = poly_z3_w2();
  const BivariatePolynomial w3z2 = swap_variables(z3w2);
  const BlaschkeProduct cube{{0.0, 0.0, 0.0}};
  const BlaschkeProduct mixed{{0.5, 0.0}};
  const BivariatePolynomial zw = BivariatePolynomial::monomial(1, 1);

  std::vector<Check> checks;
  auto classify_check = [](const BivariatePolynomial& p, ZeroLabel want) {
    return [p, want] {
      const ZeroClass z = classify_zero_set(p);
      return json{{"label", std::string(to_string(z.label))},
                  {"expected", std::string(to_string(want))},
                  {"passed", z.label == want}};
    };
  };
  checks.push_back({"classify z^3 - w^2", classify_check(z3w2, ZeroLabel::DVDefining)});
  checks.push_back({"classify w^3 - z^2", classify_check(w3z2, ZeroLabel::DVDefining)});
  checks.push_back({"derived polynomial of z^3 - w^2 stays DV",
                    classify_check(derived_dv_poly(z3w2), ZeroLabel::DVDefining)});
  checks.push_back({"pipeline z^3 - w^2", [&] { return pipeline_detail(z3w2, {zw}); }});
  checks.push_back({"pipeline w^3 - z^2", [&] { return pipeline_detail(w3z2, {zw}); }});
  for (const int m : {2, 3}) {
    for (const auto& [label, b] : {std::pair{"z^3", cube}, std::pair{"z(z-1/2)/(1-z/2)", mixed}}) {
      const std::string suffix = "w^" + std::to_string(m) + " = " + label;
      const BivariatePolynomial p = blaschke_variety(b, m);
      checks.push_back({"pipeline " + suffix, [p, zw] { return pipeline_detail(p, {zw}); }});
      checks.push_back({"companion bound " + suffix, [p, b, m, zw] {
                          const UnitaryRealization rep = companion_realization(b, m);
                          const VarietySample sample = sample_variety(p, default_sample_count(p.degree()), 7);
                          const ExtensionReport e =
                              verify_extension(make_extension(rep, identity_qmatrix(m), zw), p, sample);
                          const double target = std::sqrt(static_cast<double>(m));
                          const bool ok = e.passed && std::abs(e.bound.C - target) <= 1e-6;
                          return json{{"C", e.bound.C}, {"sqrt_m", target}, {"extension", jio::to_json(e)},
                                      {"passed", ok}};
                        }});
    }
  }
  checks.push_back({"Cole-Wermer 2 - z - w", [] {
                      const auto q = BivariatePolynomial::from_rows({{2.0, -1.0}, {-1.0, 0.0}});
                      const SosCertificate c = sos_certificate(q);
                      const VerificationReport v = verify_certificate(q, c);
                      return json{{"route", c.route}, {"verification", jio::to_json(v)},
                                  {"passed", v.max_residual <= 1e-6}};
                    }});
  checks.push_back({"Cole-Wermer 4 - z - w with invertibility", [] {
                      const auto q = BivariatePolynomial::from_rows({{4.0, -1.0}, {-1.0, 0.0}});
                      const SosCertificate c = sos_certificate(q);
                      const VerificationReport v = verify_certificate(q, c);
                      const GwReport g = gw_invertibility(c);
                      return json{{"verification", jio::to_json(v)}, {"gw", jio::to_json(g)},
                                  {"passed", v.passed && g.passed}};
                    }});

  json rows = json::array();
  bool all = true;
  for (const auto& c : checks) {
    json detail;
    try {
      detail = c.body();
    } catch (const Error& e) {
      detail = {{"error", std::string(to_string(e.code()))}, {"message", e.what()}, {"passed", false}};
    }
    const bool ok = detail.value("passed", false);
    all = all && ok;
    rows.push_back({{"name", c.name}, {"passed", ok}, {"detail", detail}});
  }
  return {{{"checks", rows}, {"passed", all}}, all ? kExitPass : kExitFail};
}

void emit(const RunConfig& cfg, json report, std::ostream& out) {
  if (!report.contains("schema")) report["schema"] = jio::kSchema;
  const std::string text = report.dump(2) + "\n";
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.output);
  if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write " + cfg.output);
  file << text;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    Outcome o;
    switch (config.command) {
      case Command::Classify: o = do_classify(config); break;
      case Command::Reflect: o = do_reflect(config); break;
      case Command::Sos: o = do_sos(config); break;
      case Command::Represent: o = do_represent(config); break;
      case Command::Extend: o = do_extend(config); break;
      case Command::Verify: o = do_verify(config); break;
      case Command::Demo: o = do_demo(); break;
    }
    emit(config, std::move(o.report), out);
    return o.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    const bool usage = e.code() == ErrorCode::Parse || e.code() == ErrorCode::InvalidArgument ||
                       e.code() == ErrorCode::DegreeMismatch;
    try {
      emit(config, {{"error", std::string(to_string(e.code()))}, {"message", e.what()}}, out);
    } catch (const Error&) {
    }
    return usage ? kExitUsage : kExitFail;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace dvkit::cli
