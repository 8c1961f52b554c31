// hdxcert: build, verify and tabulate coset-complex expanders.
//
// Exit codes: 0 certified, 2 hypotheses failed (or file rejected),
// 3 resource budget, 4 invalid input, 1 internal error.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "hdx/hdx.h"

namespace {

using ojson = nlohmann::ordered_json;

struct Flags {
  std::string preset = "A~2";
  std::string gcm;
  std::uint64_t p = 2;
  unsigned m = 1;
  std::string f = "auto:2";
  std::string mode = "explicit";
  std::uint64_t budget = 1ull << 27;
  double tol = 0;
  int workers = 1;
  std::string out;
  std::string format = "json";
};

void add_instance_flags(CLI::App* cmd, Flags& fl) {
  cmd->add_option("--preset", fl.preset, "Diagram preset: A~n (n >= 2) or G~2")->capture_default_str();
  cmd->add_option("--gcm", fl.gcm, "Generalized Cartan matrix as JSON, e.g. [[2,-1,-1],[-1,2,-1],[-1,-1,2]]");
  cmd->add_option("--p", fl.p, "Characteristic")->capture_default_str();
  cmd->add_option("--m", fl.m, "Extension degree, k = F_{p^m}")->capture_default_str();
  cmd->add_option("--f", fl.f, "Irreducible f in k[t] (e.g. t^2+t+1 or 1,1,1) or auto:<degree>")
      ->capture_default_str();
  cmd->add_option("--mode", fl.mode, "explicit | certificate")
      ->check(CLI::IsMember({"explicit", "certificate"}))
      ->capture_default_str();
  cmd->add_option("--budget", fl.budget, "Maximum number of enumerated group elements")->capture_default_str();
  cmd->add_option("--tol", fl.tol, "Spectral tolerance override (0 keeps solver defaults)")->capture_default_str();
  cmd->add_option("--workers", fl.workers, "Worker threads for link spectra")->check(CLI::PositiveNumber);
}

void add_format_flag(CLI::App* cmd, Flags& fl) {
  cmd->add_option("--format", fl.format, "Output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
}

std::string spec_json(const Flags& fl) {
  ojson j;
  j["preset"] = fl.preset;
  if (!fl.gcm.empty()) j["gcm"] = fl.gcm;
  j["p"] = fl.p;
  j["m"] = fl.m;
  j["f"] = fl.f;
  j["mode"] = fl.mode;
  j["budget"] = fl.budget;
  j["tol"] = fl.tol;
  j["workers"] = fl.workers;
  return j.dump();
}

int exit_code(hdx_status s) {
  switch (s) {
    case HDX_OK: return 0;
    case HDX_NOT_CERTIFIED:
    case HDX_ERR_INTEGRITY: return 2;
    case HDX_ERR_RESOURCE: return 3;
    case HDX_ERR_SPEC:
    case HDX_ERR_IO: return 4;
    case HDX_ERR_INTERNAL: break;
  }
  return 1;
}

int fail(hdx_status s) {
  std::cerr << "hdxcert: " << hdx_last_error() << '\n';
  return exit_code(s);
}

std::string take(char* s) {
  std::string out = s ? s : "";
  hdx_string_free(s);
  return out;
}

std::string value_text(const ojson& v) {
  if (v.is_null()) return "n/a";
  if (v.is_string()) return v.get<std::string>().empty() ? "n/a" : v.get<std::string>();
  return v.dump();
}

void print_certificate_text(const ojson& c) {
  std::printf("mode        %s (%s)\n", c["mode"].get<std::string>().c_str(), c["source"].get<std::string>().c_str());
  std::printf("diagram     %s  d = %d\n", c["diagram"].get<std::string>().c_str(), c["d"].get<int>());
  std::printf("field       p = %s, m = %s, g = %s\n", value_text(c["p"]).c_str(), value_text(c["m"]).c_str(),
              c["g"].get<std::string>().c_str());
  std::printf("f           %s\n", c["f"].get<std::string>().c_str());
  std::printf("|G|         %s\n", value_text(c["group_order"]).c_str());
  std::printf("degree      <= %s\n", value_text(c["degree_bound"]).c_str());
  std::printf("gamma       %.6f  (%s)\n", c["gamma"].get<double>(), c["gamma_formula"].get<std::string>().c_str());
  if (c["gamma_applicable"].get<bool>())
    std::printf("gamma'      %.6f\n", c["gamma_prime"].get<double>());
  else
    std::printf("gamma'      not applicable (gamma > 1/d = %.6f)\n", c["trickling_threshold"].get<double>());
  if (!c["global_lambda2"].is_null()) std::printf("lambda2(X)  %.6f\n", c["global_lambda2"].get<double>());
  if (!c["links"].empty()) {
    std::printf("\n%-8s %-8s %8s %8s %10s %10s  %s\n", "cotype", "type", "size", "count", "lambda2", "matrix", "");
    for (const auto& l : c["links"]) {
      std::string mat = l.contains("lambda2_matrix") ? std::to_string(l["lambda2_matrix"].get<double>()) : "-";
      if (mat.size() > 8) mat = mat.substr(0, 8);
      std::printf("%-8s %-8s %8s %8s %10.6f %10s  %s\n", l["cotype"].get<std::string>().c_str(),
                  l["type"].get<std::string>().c_str(), value_text(l["size"]).c_str(), value_text(l["count"]).c_str(),
                  l["lambda2"].get<double>(), mat.c_str(), l["pass"].get<bool>() ? "ok" : "FAIL");
    }
  }
  std::printf("\n");
  for (const auto& cl : c["clauses"])
    std::printf("[%s] %-24s %s\n", cl["ok"].get<bool>() ? "PASS" : "FAIL", cl["name"].get<std::string>().c_str(),
                cl["detail"].get<std::string>().c_str());
  std::printf("\n%s\n", c["certified"].get<bool>() ? "CERTIFIED" : "NOT CERTIFIED");
  if (!c["failed"].empty()) {
    std::printf("failed:");
    for (const auto& f : c["failed"]) std::printf(" %s", f.get<std::string>().c_str());
    std::printf("\n");
  }
}

void print_summary_text(const ojson& s) {
  std::printf("mode        %s\n", s["mode"].get<std::string>().c_str());
  std::printf("|G|         %s\n", s["group_order"].get<std::string>().c_str());
  if (s.contains("vertices_per_type")) {
    std::printf("vertices    %s\n", s["vertices_per_type"].dump().c_str());
    std::printf("faces       %s\n", value_text(s["maximal_faces"]).c_str());
    std::printf("degrees     %s\n", s["degree_per_type"].dump().c_str());
  }
  for (auto it = s["subgroup_orders"].begin(); it != s["subgroup_orders"].end(); ++it)
    std::printf("phi(U_%s)%*s%s\n", it.key().c_str(), static_cast<int>(std::max<std::size_t>(1, 10 - it.key().size())),
                "", value_text(it.value()).c_str());
  if (!s["path"].get<std::string>().empty()) std::printf("wrote       %s\n", s["path"].get<std::string>().c_str());
}

void print_family_text(const ojson& rows) {
  std::printf("%-4s %-28s %-40s %8s %10s %10s %s\n", "deg", "f", "|G|", "degree", "gamma", "gamma'", "");
  for (const auto& r : rows) {
    const std::string gp = r["gamma_prime"].is_null() ? "n/a" : std::to_string(r["gamma_prime"].get<double>());
    std::printf("%-4d %-28s %-40s %8s %10.6f %10s %s\n", r["degree"].get<int>(), r["f"].get<std::string>().c_str(),
                r["group_order"].get<std::string>().c_str(), value_text(r["degree_bound"]).c_str(),
                r["gamma"].get<double>(), gp.c_str(), r["certified"].get<bool>() ? "certified" : "NOT CERTIFIED");
  }
}

void emit(const std::string& json, const std::string& format, void (*text)(const ojson&)) {
  if (format == "json")
    std::cout << json << '\n';
  else
    text(ojson::parse(json));
}

struct Instance {
  hdx_instance* h = nullptr;
  ~Instance() { hdx_instance_free(h); }
};

int cmd_build(Flags fl) {
  Instance inst;
  if (auto s = hdx_instance_create(spec_json(fl).c_str(), &inst.h)) return fail(s);
  if (fl.out.empty()) fl.out = fl.mode == "explicit" ? "complex.hdx" : "bundle.hdx";
  char* summary = nullptr;
  if (auto s = hdx_build(inst.h, fl.out.c_str(), &summary)) return fail(s);
  emit(take(summary), fl.format, print_summary_text);
  return 0;
}

int report(hdx_status s, char*& cert, const Flags& fl) {
  if (s != HDX_OK && s != HDX_NOT_CERTIFIED) return fail(s);
  emit(take(cert), fl.format, print_certificate_text);
  return exit_code(s);
}

int cmd_verify(const Flags& fl, const std::string& input) {
  char* cert = nullptr;
  if (!input.empty()) {
    const hdx_status s = hdx_verify_file(input.c_str(), fl.workers, &cert);
    return report(s, cert, fl);
  }
  Instance inst;
  if (auto s = hdx_instance_create(spec_json(fl).c_str(), &inst.h)) return fail(s);
  const hdx_status s = hdx_verify(inst.h, &cert);
  return report(s, cert, fl);
}

int cmd_family(Flags fl, const std::vector<int>& degrees) {
  fl.mode = "certificate";
  char* table = nullptr;
  if (auto s = hdx_family(spec_json(fl).c_str(), degrees.data(), degrees.size(), &table)) return fail(s);
  emit(take(table), fl.format, print_family_text);
  return 0;
}

int cmd_irreducibles(const Flags& fl, int degree, std::size_t limit) {
  char* list = nullptr;
  if (auto s = hdx_irreducibles(fl.p, fl.m, degree, limit, &list)) return fail(s);
  const std::string text = take(list);
  if (fl.format == "json") {
    std::cout << text << '\n';
  } else {
    for (const auto& e : ojson::parse(text))
      std::printf("%-32s %s\n", e["f"].get<std::string>().c_str(), e["coefficients"].get<std::string>().c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coset-complex high-dimensional expanders over SL_{n+1}(k[t]/(f))"};
  app.set_version_flag("--version", hdx_version());
  app.require_subcommand(1);

  Flags fl;
  std::string input;
  std::vector<int> degrees;
  int irr_degree = 2;
  std::size_t limit = 0;

  auto* build = app.add_subcommand("build", "Build a complex file (explicit) or a subgroup bundle (certificate)");
  add_instance_flags(build, fl);
  add_format_flag(build, fl);
  build->add_option("--out", fl.out, "Output path (default complex.hdx or bundle.hdx)");

  auto* verify = app.add_subcommand("verify", "Verify an instance, a complex file or a bundle and print a certificate");
  add_instance_flags(verify, fl);
  add_format_flag(verify, fl);
  verify->add_option("input", input, "Complex or bundle file; when absent the instance flags are used");

  auto* fam = app.add_subcommand("family", "Certificate table over the first irreducible f of each degree");
  add_instance_flags(fam, fl);
  add_format_flag(fam, fl);
  fam->add_option("--degrees", degrees, "Strictly ascending degrees of f, each >= 2")->delimiter(',');

  auto* irr = app.add_subcommand("irreducibles", "List monic irreducible polynomials over F_{p^m}");
  irr->add_option("--p", fl.p, "Characteristic")->capture_default_str();
  irr->add_option("--m", fl.m, "Extension degree")->capture_default_str();
  irr->add_option("--degree", irr_degree, "Degree")->capture_default_str();
  irr->add_option("--limit", limit, "Stop after this many (0 = all)")->capture_default_str();
  add_format_flag(irr, fl);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 4;
  }

  try {
    if (*build) return cmd_build(fl);
    if (*verify) return cmd_verify(fl, input);
    if (*fam) return cmd_family(fl, degrees);
    if (*irr) return cmd_irreducibles(fl, irr_degree, limit);
  } catch (const std::exception& e) {
    std::cerr << "hdxcert: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
