#include "kvar/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "kvar/certify.hpp"
#include "kvar/counting.hpp"
#include "kvar/kclass.hpp"
#include "kvar/potts.hpp"

namespace kvar {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitMismatch = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::BadInput, "cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) fail(Errc::BadInput, "cannot write file: " + path);
  out << content;
}

std::vector<MPoly> parse_polys(const std::vector<std::string>& texts, int num_vars) {
  std::vector<MPoly> polys;
  for (const std::string& t : texts) polys.push_back(poly_parse(t, num_vars));
  return polys;
}

FieldCtx make_field(uint32_t p, uint32_t k) {
  uint64_t q = 1;
  for (uint32_t i = 0; i < k; ++i) q *= p;
  return FieldCtx::create(p, k, std::max<uint64_t>(FieldCtx::kDefaultMaxQ, q));
}

void print_cert_tree(std::ostream& out, const CertNode& node, int depth, int& next_id) {
  int id = next_id++;
  out << std::string(static_cast<size_t>(depth) * 2, ' ') << "[" << id << "] "
      << rule_name(node.rule) << "  residue=" << node.residue;
  if (node.trusted) out << "  [trusted]";
  if (node.var) out << "  var=x" << *node.var;
  if (node.exact_class) out << "  class=" << node.exact_class->str();
  out << "  " << node.goal.str() << "\n";
  for (const auto& c : node.children) print_cert_tree(out, *c, depth + 1, next_id);
}

json verify_report_json(const VerificationReport& report) {
  json rows = json::array();
  for (const NodeCheck& c : report.checks) {
    json r;
    r["node"] = c.node;
    r["rule"] = c.rule;
    r["q"] = c.q;
    if (c.skipped) {
      r["skipped"] = true;
      r["skip_reason"] = c.skip_reason;
    } else {
      r["predicted"] = c.predicted;
      r["counted"] = c.counted;
      r["points"] = c.points;
      r["residue_match"] = c.residue_match;
      if (c.identity_ok) r["identity_ok"] = *c.identity_ok;
      r["ok"] = c.ok();
    }
    rows.push_back(r);
  }
  json j;
  j["checks"] = rows;
  j["all_match"] = report.all_match();
  j["skipped"] = report.skipped_count();
  return j;
}

void print_verify_report(std::ostream& out, const VerificationReport& report) {
  for (const NodeCheck& c : report.checks) {
    out << "  node " << c.node << " (" << c.rule << ") over F_" << c.q << ": ";
    if (c.skipped) {
      out << "skipped (" << c.skip_reason << ")\n";
      continue;
    }
    out << "predicted " << c.predicted << ", counted " << c.counted << " (" << c.points
        << " points) ";
    out << (c.residue_match ? "match" : "MISMATCH");
    if (c.identity_ok) out << (*c.identity_ok ? ", identity ok" : ", identity FAILED");
    out << "\n";
  }
  out << (report.all_match() ? "verification: all checks match" : "verification: MISMATCH");
  if (report.skipped_count() > 0) out << " (" << report.skipped_count() << " skipped)";
  out << "\n";
}

struct CommonOpts {
  bool json_out = false;
  uint64_t budget = kDefaultBudget;
  std::vector<uint32_t> primes{3, 5, 7};
};

int run_parse(const std::string& poly, int n, bool json_out, std::ostream& out) {
  MPoly f = poly_parse(poly, n);
  if (json_out) {
    json j;
    j["input"] = poly;
    j["num_vars"] = n;
    j["canonical"] = f.str();
    if (auto d = f.total_degree()) j["total_degree"] = *d;
    j["homogeneous"] = f.is_homogeneous();
    out << j.dump(2) << "\n";
  } else {
    out << f.str() << "\n";
  }
  return kExitOk;
}

int run_count(const std::vector<std::string>& polys, const std::string& space, int n,
              uint32_t p, uint32_t k, const CommonOpts& opts, std::ostream& out) {
  FieldCtx ctx = make_field(p, k);
  bool projective = space == "projective";
  int nvars = projective ? n + 1 : n;
  std::vector<MPoly> system = parse_polys(polys, nvars);
  uint64_t count = projective ? count_projective(system, n, ctx, opts.budget)
                              : count_affine(system, n, ctx, opts.budget);
  if (opts.json_out) {
    json j;
    j["space"] = space;
    j["n"] = n;
    j["q"] = ctx.q();
    j["count"] = count;
    out << j.dump(2) << "\n";
  } else {
    out << count << "\n";
  }
  return kExitOk;
}

int run_cw_check(const std::vector<std::string>& polys, const std::string& space, int n,
                 uint32_t k, const CommonOpts& opts, std::ostream& out) {
  bool projective = space == "projective";
  int nvars = projective ? n + 1 : n;
  std::vector<MPoly> system = parse_polys(polys, nvars);
  bool any_violation = false;
  json rows = json::array();
  for (uint32_t p : opts.primes) {
    FieldCtx ctx = make_field(p, k);
    CountReport r = projective ? cw_check_projective(system, n, ctx, opts.budget)
                               : cw_check_affine(system, n, ctx, opts.budget);
    any_violation = any_violation || r.violation;
    if (opts.json_out) {
      json row;
      row["q"] = r.q;
      row["count"] = r.count;
      row["residue"] = r.residue;
      row["applicable"] = r.applicable;
      row["violation"] = r.violation;
      row["elapsed_seconds"] = r.elapsed_seconds;
      rows.push_back(row);
    } else {
      out << "F_" << r.q << ": count " << r.count << ", residue " << r.residue;
      if (!r.applicable)
        out << " (degree hypothesis fails; no constraint)";
      else
        out << (r.violation ? "  VIOLATION" : "  ok");
      out << "\n";
    }
  }
  if (opts.json_out) {
    json j;
    j["space"] = space;
    j["n"] = n;
    j["checks"] = rows;
    j["violation"] = any_violation;
    out << j.dump(2) << "\n";
  }
  return any_violation ? kExitMismatch : kExitOk;
}

int run_class(const std::string& family, const std::vector<std::string>& args,
              std::optional<long> at, bool json_out, std::ostream& out) {
  auto need = [&](size_t count) {
    if (args.size() != count)
      fail(Errc::BadInput, "family '" + family + "' takes " + std::to_string(count) +
                               " argument(s)");
  };
  auto int_arg = [&](size_t i) {
    try {
      return std::stoi(args.at(i));
    } catch (...) {
      fail(Errc::BadInput, "expected an integer argument: " + args.at(i));
    }
  };
  LPoly result;
  if (family == "pspace") {
    need(1);
    result = class_projective_space(int_arg(0));
  } else if (family == "quadric") {
    need(1);
    result = class_smooth_quadric(int_arg(0));
  } else if (family == "sphere") {
    need(1);
    result = class_affine_sphere(int_arg(0));
  } else if (family == "coord-union") {
    need(1);
    result = class_coordinate_hyperplane_union(int_arg(0));
  } else if (family == "join") {
    need(2);
    result = class_join(lpoly_parse(args[0]), lpoly_parse(args[1]));
  } else if (family == "cone") {
    need(2);
    result = class_cone(lpoly_parse(args[0]), int_arg(1));
  } else if (family == "affine-cone") {
    need(1);
    result = class_affine_cone(lpoly_parse(args[0]));
  } else {
    fail(Errc::BadInput,
         "unknown family '" + family +
             "' (expected pspace, quadric, sphere, coord-union, join, cone, affine-cone)");
  }
  if (json_out) {
    json j;
    j["family"] = family;
    j["class"] = result.str();
    j["mod_L"] = result.mod_L().get_str();
    if (at) j["eval_at"] = {{"q", *at}, {"value", result.eval_at(Int(*at)).get_str()}};
    out << j.dump(2) << "\n";
  } else {
    out << result.str() << "\n";
    if (at) out << "at L = " << *at << ": " << result.eval_at(Int(*at)).get_str() << "\n";
  }
  return kExitOk;
}

int run_certify(const std::vector<std::string>& polys, const std::string& file, int n,
                bool factored, const std::string& check_file, bool verify,
                const std::string& out_path, const CommonOpts& opts, std::ostream& out) {
  std::optional<Certificate> cert;
  if (!check_file.empty()) {
    cert = certificate_from_json(read_file(check_file));
    std::vector<int> bad = residue_algebra_violations(*cert);
    if (!bad.empty()) {
      if (opts.json_out) {
        json j;
        j["ok"] = false;
        j["residue_algebra_violations"] = bad;
        out << j.dump(2) << "\n";
      } else {
        out << "residue algebra violated at node(s):";
        for (int id : bad) out << " " << id;
        out << "\n";
      }
      return kExitMismatch;
    }
  } else {
    std::vector<std::string> texts = polys;
    if (!file.empty()) {
      std::istringstream in(read_file(file));
      std::string line;
      while (std::getline(in, line)) {
        if (!line.empty()) texts.push_back(line);
      }
    }
    if (texts.empty()) fail(Errc::BadInput, "no polynomials given");
    if (n < 1) fail(Errc::BadInput, "-n is required and must be >= 1");
    std::vector<MPoly> system = parse_polys(texts, n + 1);
    CertifyOutcome outcome =
        factored ? certify_union(system, n) : certify(system, n);
    if (!outcome.ok()) {
      if (opts.json_out) {
        json j;
        j["ok"] = false;
        j["failure"] = outcome.failure;
        out << j.dump(2) << "\n";
      } else {
        out << "Failure: " << outcome.failure << "\n";
      }
      return kExitInputError;
    }
    cert = std::move(*outcome.certificate);
  }

  if (!out_path.empty()) write_file(out_path, certificate_to_json(*cert));

  std::optional<VerificationReport> report;
  if (verify) report = certificate_verify(*cert, opts.primes, opts.budget);

  if (opts.json_out) {
    json j;
    j["ok"] = true;
    j["residue"] = cert->residue();
    j["nodes"] = cert->node_count();
    j["certificate"] = json::parse(certificate_to_json(*cert));
    if (report) j["verification"] = verify_report_json(*report);
    out << j.dump(2) << "\n";
  } else {
    out << "residue mod L: " << cert->residue() << "\n";
    int next_id = 0;
    print_cert_tree(out, *cert->root, 0, next_id);
    if (report) print_verify_report(out, *report);
  }
  if (report && !report->all_match()) return kExitMismatch;
  return kExitOk;
}

int run_potts(const std::string& graph_path, long q_val, bool verify,
              const std::string& out_path, const CommonOpts& opts, std::ostream& out) {
  Graph g = graph_parse(read_file(graph_path));
  MPoly partition = potts_polynomial(g, Int(q_val));
  PottsSymbolic sym = potts_class_symbolic(g, Int(q_val));
  std::optional<PottsVerifyReport> report;
  if (verify) report = potts_verify(g, Int(q_val), opts.primes, opts.budget);

  std::vector<std::string> tnames;
  for (int e = 1; e <= g.edge_count(); ++e) tnames.push_back("t" + std::to_string(e));

  if (opts.json_out) {
    json j;
    j["vertices"] = g.vertex_count;
    j["edges"] = g.edge_count();
    j["has_loop"] = g.has_loop();
    j["residue"] = sym.residue;
    j["parity_residue"] = potts_mod_L(g);
    j["partition_function"] = partition.str(tnames);
    j["hypersurface"] = sym.homogenized.str();
    j["certificate"] = json::parse(certificate_to_json(sym.certificate));
    if (report) {
      json rows = json::array();
      for (const PottsVerifyRow& r : report->rows) {
        json row;
        row["prime"] = r.prime;
        if (r.skipped) {
          row["skipped"] = true;
          row["skip_reason"] = r.skip_reason;
        } else {
          row["count"] = r.count;
          row["counted_residue"] = r.counted_residue;
          row["predicted"] = r.predicted;
          row["match"] = r.match;
        }
        rows.push_back(row);
      }
      j["verification"] = {{"rows", rows}, {"all_match", report->all_match()}};
    }
    out << j.dump(2) << "\n";
  } else {
    out << "graph: " << g.vertex_count << " vertices, " << g.edge_count() << " edges";
    if (g.has_loop()) out << " (contains loops)";
    out << "\n";
    if (g.edge_count() <= 8) out << "Z_G = " << partition.str(tnames) << "\n";
    out << "residue mod L: " << sym.residue << " (parity rule: " << potts_mod_L(g) << ")\n";
    int next_id = 0;
    print_cert_tree(out, *sym.certificate.root, 0, next_id);
    if (report) {
      for (const PottsVerifyRow& r : report->rows) {
        out << "  F_" << r.prime << ": ";
        if (r.skipped)
          out << "skipped (" << r.skip_reason << ")\n";
        else
          out << "count " << r.count << ", residue " << r.counted_residue << ", predicted "
              << r.predicted << (r.match ? "  match" : "  MISMATCH") << "\n";
      }
      out << (report->all_match() ? "verification: all primes match"
                                  : "verification: MISMATCH")
          << "\n";
    }
  }
  if (!out_path.empty()) write_file(out_path, certificate_to_json(sym.certificate));
  if (report && !report->all_match()) return kExitMismatch;
  return kExitOk;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grothendieck class calculator for projective hypersurfaces\n"
               "with finite-field counting verification"};
  app.require_subcommand(1);

  // parse
  auto* sc_parse = app.add_subcommand("parse", "echo a polynomial in canonical form");
  std::string parse_poly;
  int parse_n = 0;
  bool parse_json = false;
  sc_parse->add_option("poly", parse_poly, "polynomial")->required();
  sc_parse->add_option("-n,--num-vars", parse_n, "number of variables")->required();
  sc_parse->add_flag("--json", parse_json, "machine-readable output");

  // count
  auto* sc_count = app.add_subcommand("count", "exact point count of a zero set");
  std::vector<std::string> count_polys;
  std::string count_space = "projective";
  int count_n = 0;
  uint32_t count_p = 3, count_k = 1;
  CommonOpts count_opts;
  sc_count->add_option("polys", count_polys, "system polynomials")->required();
  sc_count->add_option("--space", count_space, "affine or projective")
      ->check(CLI::IsMember({"affine", "projective"}));
  sc_count->add_option("-n,--dim", count_n, "ambient dimension")->required();
  sc_count->add_option("-p,--prime", count_p, "field characteristic");
  sc_count->add_option("-k,--ext", count_k, "field extension degree");
  sc_count->add_option("--budget", count_opts.budget, "evaluation budget");
  sc_count->add_flag("--json", count_opts.json_out, "machine-readable output");

  // cw-check
  auto* sc_cw = app.add_subcommand("cw-check", "Chevalley-Warning residue sweep");
  std::vector<std::string> cw_polys;
  std::string cw_space = "projective";
  int cw_n = 0;
  uint32_t cw_k = 1;
  CommonOpts cw_opts;
  sc_cw->add_option("polys", cw_polys, "system polynomials")->required();
  sc_cw->add_option("--space", cw_space, "affine or projective")
      ->check(CLI::IsMember({"affine", "projective"}));
  sc_cw->add_option("-n,--dim", cw_n, "ambient dimension")->required();
  sc_cw->add_option("-p,--primes", cw_opts.primes, "primes to sweep")->delimiter(',');
  sc_cw->add_option("-k,--ext", cw_k, "field extension degree");
  sc_cw->add_option("--budget", cw_opts.budget, "evaluation budget");
  sc_cw->add_flag("--json", cw_opts.json_out, "machine-readable output");

  // class
  auto* sc_class = app.add_subcommand("class", "closed-form class families and calculator");
  std::string class_family;
  std::vector<std::string> class_args;
  long class_at = 0;
  bool class_json = false;
  sc_class->add_option("family", class_family,
                       "pspace | quadric | sphere | coord-union | join | cone | affine-cone")
      ->required();
  sc_class->add_option("args", class_args, "family arguments");
  auto* class_at_opt = sc_class->add_option("--at", class_at, "also evaluate at L = q");
  sc_class->add_flag("--json", class_json, "machine-readable output");

  // certify
  auto* sc_cert = app.add_subcommand("certify", "build and verify a reduction certificate");
  std::vector<std::string> cert_polys;
  std::string cert_file, cert_check_file, cert_out;
  int cert_n = 0;
  bool cert_factored = false, cert_verify = false;
  CommonOpts cert_opts;
  sc_cert->add_option("polys", cert_polys, "homogeneous polynomials");
  sc_cert->add_option("--file", cert_file, "read polynomials from a file, one per line");
  sc_cert->add_option("-n,--dim", cert_n, "ambient projective dimension");
  sc_cert->add_flag("--factored", cert_factored,
                    "treat the polynomials as factors of a product");
  sc_cert->add_option("--check-file", cert_check_file, "load a certificate instead of building");
  sc_cert->add_flag("--verify", cert_verify, "verify by point counts");
  sc_cert->add_option("-p,--primes", cert_opts.primes, "verification primes")->delimiter(',');
  sc_cert->add_option("--budget", cert_opts.budget, "evaluation budget");
  sc_cert->add_option("--out", cert_out, "write the certificate JSON to a file");
  sc_cert->add_flag("--json", cert_opts.json_out, "machine-readable output");

  // potts
  auto* sc_potts = app.add_subcommand("potts", "partition-function hypersurface workflow");
  std::string potts_graph, potts_out;
  long potts_q = 2;
  bool potts_do_verify = false;
  CommonOpts potts_opts;
  sc_potts->add_option("--graph", potts_graph, "graph file")->required();
  sc_potts->add_option("--q", potts_q, "fixed q value (nonzero integer)")->required();
  sc_potts->add_flag("--verify", potts_do_verify, "verify by affine point counts");
  sc_potts->add_option("-p,--primes", potts_opts.primes, "verification primes")->delimiter(',');
  sc_potts->add_option("--budget", potts_opts.budget, "evaluation budget");
  sc_potts->add_option("--out", potts_out, "write the certificate JSON to a file");
  sc_potts->add_flag("--json", potts_opts.json_out, "machine-readable output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitInputError;
  }

  try {
    if (sc_parse->parsed()) return run_parse(parse_poly, parse_n, parse_json, out);
    if (sc_count->parsed())
      return run_count(count_polys, count_space, count_n, count_p, count_k, count_opts, out);
    if (sc_cw->parsed()) return run_cw_check(cw_polys, cw_space, cw_n, cw_k, cw_opts, out);
    if (sc_class->parsed())
      return run_class(class_family, class_args,
                       class_at_opt->count() > 0 ? std::optional<long>(class_at) : std::nullopt,
                       class_json, out);
    if (sc_cert->parsed())
      return run_certify(cert_polys, cert_file, cert_n, cert_factored, cert_check_file,
                         cert_verify, cert_out, cert_opts, out);
    if (sc_potts->parsed())
      return run_potts(potts_graph, potts_q, potts_do_verify, potts_out, potts_opts, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInputError;
  }
  err << "no subcommand given\n";
  return kExitInputError;
}

}  // namespace kvar
