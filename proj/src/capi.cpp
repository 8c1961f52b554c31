#include "hdx/hdx.h"

#include <cstring>
#include <json.hpp>
#include <string>

#include "hdx/instance.hpp"
#include "hdx/poly.hpp"

struct hdx_instance {
  hdx::Instance inst;
};

namespace {

thread_local std::string last_error;

hdx_status status_of(hdx::ErrorKind k) {
  switch (k) {
    case hdx::ErrorKind::Resource: return HDX_ERR_RESOURCE;
    case hdx::ErrorKind::Integrity: return HDX_ERR_INTEGRITY;
    case hdx::ErrorKind::Io: return HDX_ERR_IO;
    case hdx::ErrorKind::Spec:
    case hdx::ErrorKind::Math:
    case hdx::ErrorKind::NonSpherical:
    case hdx::ErrorKind::Unsupported:
    case hdx::ErrorKind::Disconnected: return HDX_ERR_SPEC;
  }
  return HDX_ERR_INTERNAL;
}

template <class F>
hdx_status guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const hdx::Error& e) {
    last_error = std::string(hdx::to_string(e.kind())) + ": " + e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "resource: out of memory";
    return HDX_ERR_RESOURCE;
  } catch (const std::exception& e) {
    last_error = std::string("internal: ") + e.what();
    return HDX_ERR_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

hdx_status need(const void* p, const char* what) {
  if (p) return HDX_OK;
  last_error = std::string("spec: ") + what + " must not be NULL";
  return HDX_ERR_SPEC;
}

hdx_status certificate_out(const hdx::Certificate& c, char** out) {
  *out = dup(hdx::certificate_json(c));
  return c.certified() ? HDX_OK : HDX_NOT_CERTIFIED;
}

}  // namespace

extern "C" {

const char* hdx_version(void) { return "1.0.0"; }

const char* hdx_last_error(void) { return last_error.c_str(); }

void hdx_string_free(char* s) { std::free(s); }

hdx_status hdx_instance_create(const char* spec_json, hdx_instance** out) {
  if (auto s = need(out, "out")) return s;
  return guarded([&] {
    *out = nullptr;
    auto spec = hdx::spec_from_json(spec_json ? spec_json : "");
    *out = new hdx_instance{hdx::Instance(std::move(spec))};
    return HDX_OK;
  });
}

void hdx_instance_free(hdx_instance* inst) { delete inst; }

hdx_status hdx_instance_describe(const hdx_instance* inst, char** json) {
  if (auto s = need(inst, "instance")) return s;
  if (auto s = need(json, "json")) return s;
  return guarded([&] {
    const auto& in = inst->inst;
    const auto gamma = hdx::gamma_bound(in.gcm(), in.spec().p, in.spec().m);
    const auto tr = hdx::trickling(gamma.value, in.d());
    nlohmann::ordered_json j;
    j["spec"] = nlohmann::ordered_json::parse(hdx::spec_to_json(in.spec()));
    j["diagram"] = in.diagram();
    j["d"] = in.d();
    j["q"] = in.q();
    j["g"] = in.g_text();
    j["f"] = in.f_text();
    j["type_a"] = in.type_a();
    j["group_order"] = in.predicted_order();
    j["degree_bound"] = in.degree_bound();
    j["gamma"] = gamma.value;
    j["gamma_formula"] = gamma.formula;
    j["gamma_applicable"] = tr.applicable;
    j["gamma_prime"] = tr.applicable ? nlohmann::ordered_json(tr.gamma_prime) : nlohmann::ordered_json(nullptr);
    *json = dup(j.dump(2));
    return HDX_OK;
  });
}

hdx_status hdx_build(const hdx_instance* inst, const char* out_path, char** summary_json) {
  if (auto s = need(inst, "instance")) return s;
  return guarded([&] {
    auto s = hdx::build_to_file(inst->inst, out_path ? out_path : "");
    if (summary_json) *summary_json = dup(hdx::summary_json(s));
    return HDX_OK;
  });
}

hdx_status hdx_verify(const hdx_instance* inst, char** certificate_json) {
  if (auto s = need(inst, "instance")) return s;
  if (auto s = need(certificate_json, "certificate_json")) return s;
  return guarded([&] { return certificate_out(hdx::verify(inst->inst), certificate_json); });
}

hdx_status hdx_verify_file(const char* path, int workers, char** certificate_json) {
  if (auto s = need(path, "path")) return s;
  if (auto s = need(certificate_json, "certificate_json")) return s;
  return guarded([&] { return certificate_out(hdx::verify_file(path, {}, workers), certificate_json); });
}

hdx_status hdx_family(const char* spec_json, const int* degrees, size_t count, char** table_json) {
  if (count > 0)
    if (auto s = need(degrees, "degrees")) return s;
  if (auto s = need(table_json, "table_json")) return s;
  return guarded([&] {
    auto spec = hdx::spec_from_json(spec_json ? spec_json : "");
    std::vector<int> ds(degrees, degrees + count);
    *table_json = dup(hdx::family_json(hdx::family(spec, ds)));
    return HDX_OK;
  });
}

hdx_status hdx_irreducibles(uint64_t p, unsigned m, int degree, size_t limit, char** json) {
  if (auto s = need(json, "json")) return s;
  return guarded([&] {
    if (!hdx::is_prime(p)) throw hdx::Error(hdx::ErrorKind::Spec, std::to_string(p) + " is not prime");
    if (m < 1) throw hdx::Error(hdx::ErrorKind::Spec, "m must be at least 1");
    if (degree < 1) throw hdx::Error(hdx::ErrorKind::Spec, "degree must be at least 1");
    auto k = hdx::make_galois_field(p, m);
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    const std::uint64_t total = hdx::poly::checked_pow(k.order(), static_cast<std::size_t>(degree));
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      auto f = hdx::poly::monic_from_index(k, static_cast<std::size_t>(degree), idx);
      if (!hdx::poly::is_irreducible(k, f)) continue;
      arr.push_back({{"f", hdx::poly::to_string(k, f, 't')}, {"coefficients", hdx::poly::to_coefficient_list(k, f)}});
      if (limit && arr.size() >= limit) break;
    }
    *json = dup(arr.dump(2));
    return HDX_OK;
  });
}

hdx_status hdx_lambda2(size_t n, const uint32_t* edges, const double* weights, size_t count, int allow_disconnected,
                       double* out) {
  if (count > 0)
    if (auto s = need(edges, "edges")) return s;
  if (auto s = need(out, "out")) return s;
  return guarded([&] {
    hdx::WeightedGraph g;
    g.n = n;
    for (size_t i = 0; i < count; ++i) {
      const auto u = edges[2 * i], v = edges[2 * i + 1];
      if (u >= n || v >= n) throw hdx::Error(hdx::ErrorKind::Spec, "edge endpoint out of range");
      g.add_edge(u, v, weights ? weights[i] : 1.0);
    }
    hdx::Lambda2Options opt;
    opt.allow_disconnected = allow_disconnected != 0;
    *out = hdx::lambda2(g, opt).lambda2;
    return HDX_OK;
  });
}

}  // extern "C"
