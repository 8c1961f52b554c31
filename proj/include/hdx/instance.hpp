#pragma once

// Instance descriptions and the build / verify / family pipelines, plus
// the complex and subgroup-bundle file formats.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hdx/algebra.hpp"
#include "hdx/complex.hpp"
#include "hdx/matrix_group.hpp"
#include "hdx/rootdata.hpp"
#include "hdx/spectra.hpp"

namespace hdx {

enum class Mode { Explicit, Certificate };

const char* to_string(Mode m) noexcept;
Mode parse_mode(const std::string& s);

struct InstanceSpec {
  std::string preset = "A~2";
  std::string gcm;  // overrides preset when nonempty
  std::uint64_t p = 2;
  unsigned m = 1;
  std::string f = "auto:2";
  Mode mode = Mode::Explicit;
  std::uint64_t budget = 1ull << 27;
  double tol = 0;  // 0 keeps solver defaults
  int workers = 1;
};

InstanceSpec spec_from_json(const std::string& json);
std::string spec_to_json(const InstanceSpec& spec);

// A validated instance: diagram, base field k = F_{p^m} and f.
class Instance {
 public:
  explicit Instance(InstanceSpec spec);

  const InstanceSpec& spec() const noexcept { return spec_; }
  const CartanMatrix& gcm() const noexcept { return gcm_; }
  const std::string& diagram() const noexcept { return diagram_; }
  int d() const noexcept { return gcm_.rank() - 1; }
  const GaloisField& k() const noexcept { return k_; }
  const Poly& f() const noexcept { return f_; }
  std::string f_text() const;
  std::string g_text() const;
  std::uint64_t q() const noexcept { return k_.order(); }
  // Order of R = k[t]/(f).
  std::uint64_t ring_order() const;
  // Type A affine diagrams have the matrix model SL_{d+1}(R).
  bool type_a() const noexcept { return type_a_; }
  KmsMap kms() const;
  // |SL_{d+1}(R)| as a decimal string (type A only).
  std::string predicted_order() const;
  // max_i q^{|Phi+(I \ {i})|}.
  std::uint64_t degree_bound() const;

 private:
  InstanceSpec spec_;
  std::string diagram_;
  CartanMatrix gcm_;
  GaloisField k_;
  Poly f_;
  bool type_a_ = false;
};

struct Clause {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct CotypeLink {
  std::string cotype;  // e.g. "{1,2}"
  std::string rank2_type;
  std::uint64_t size = 0;  // vertices of the link graph
  std::uint64_t count = 0;  // number of links measured (explicit) or 1
  double lambda2 = 0;       // maximum over measured links
  std::optional<double> lambda2_matrix;  // certificate mode: phi(U_ij) model
  bool pass = true;
};

struct Certificate {
  Mode mode = Mode::Certificate;
  std::string source;  // "spec", "complex", "bundle"
  std::string diagram;
  std::string gcm;
  int d = 0;
  std::uint64_t p = 0;
  unsigned m = 0;
  std::string g;
  std::string f;
  std::string group_order;
  std::uint64_t degree_bound = 0;
  GammaBound gamma;
  TricklingResult trickling;
  std::vector<CotypeLink> links;
  std::optional<bool> surjective, local_injective, ip, sharp_transitive;
  std::vector<Clause> clauses;
  std::optional<double> global_lambda2;
  std::map<std::string, std::uint64_t> counts;  // vertices/faces/edges summary

  std::vector<std::string> failed() const;
  bool certified() const { return failed().empty(); }
  // 0 when every clause holds, 2 otherwise.
  int exit_code() const { return certified() ? 0 : 2; }
};

std::string certificate_json(const Certificate& c);

// Explicit enumeration of G = SL_{d+1}(R) and the coset complex.
struct ExplicitBuild {
  std::unique_ptr<MatrixGroup> group;
  std::map<IndexSet, MatrixGroup> local;  // phi(U_J) for spherical J != I
  std::vector<Subgroup> h;                // H_i as subgroups of group
  CosetComplex complex;
};

ExplicitBuild build_explicit(const Instance& inst);

struct VerifyOptions {
  int link_iso_samples = 200;
  int action_samples = 100;
  bool global_spectrum = true;
  std::uint64_t seed = 20240601;
};

Certificate verify_explicit(const Instance& inst, const ExplicitBuild& build, const VerifyOptions& opt = {});
Certificate verify_certificate(const Instance& inst);
Certificate verify(const Instance& inst, const VerifyOptions& opt = {});

// Files.
void write_complex_file(const std::string& path, const Instance& inst, const ExplicitBuild& build);
void write_bundle_file(const std::string& path, const Instance& inst);
std::string complex_file_text(const Instance& inst, const ExplicitBuild& build);
std::string bundle_file_text(const Instance& inst);

struct LoadedComplex {
  InstanceSpec spec;
  std::string group_order;
  PureComplex complex;
  std::vector<std::string> vertex_keys;  // hex
};
LoadedComplex read_complex_file(const std::string& path);

struct LoadedBundle {
  InstanceSpec spec;
  std::map<IndexSet, std::vector<Matrix>> subgroups;
};
LoadedBundle read_bundle_file(const std::string& path);

// Dispatches on the file header ("hdx-complex" or "hdx-bundle").
Certificate verify_file(const std::string& path, const VerifyOptions& opt = {}, int workers = 1);

struct BuildSummary {
  Mode mode = Mode::Explicit;
  std::string group_order;
  std::vector<std::uint64_t> vertices_per_type;
  std::uint64_t faces = 0;
  std::vector<std::uint64_t> degree_per_type;
  std::map<std::string, std::uint64_t> subgroup_orders;  // "{1,2}" -> order
  std::string path;
};
BuildSummary build_to_file(const Instance& inst, const std::string& path);
std::string summary_json(const BuildSummary& s);

struct FamilyRow {
  int degree = 0;
  std::string f;
  std::string group_order;
  std::uint64_t degree_bound = 0;
  double gamma = 0;
  TricklingResult trickling;
  bool certified = false;
};
std::vector<FamilyRow> family(const InstanceSpec& base, const std::vector<int>& degrees);
std::string family_json(const std::vector<FamilyRow>& rows);

}  // namespace hdx
