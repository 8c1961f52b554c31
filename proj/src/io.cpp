#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "detail.hpp"
#include "hdx/instance.hpp"
#include "hdx/poly.hpp"

namespace hdx {

namespace {

constexpr const char* kComplexMagic = "hdx-complex v1";
constexpr const char* kBundleMagic = "hdx-bundle v1";

std::string to_hex(const std::string& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out += digits[c >> 4];
    out += digits[c & 15];
  }
  return out;
}

std::string from_hex(const std::string& hex) {
  if (hex.size() % 2) throw Error(ErrorKind::Integrity, "odd-length hex key '" + hex + "'");
  auto nibble = [&](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    throw Error(ErrorKind::Integrity, "bad hex key '" + hex + "'");
  };
  std::string out(hex.size() / 2, '\0');
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<char>(nibble(hex[2 * i]) * 16 + nibble(hex[2 * i + 1]));
  return out;
}

IndexSet parse_set(const std::string& text) {
  if (text.size() < 2 || text.front() != '{' || text.back() != '}')
    throw Error(ErrorKind::Integrity, "bad index set '" + text + "'");
  IndexSet s = 0;
  std::stringstream in(text.substr(1, text.size() - 2));
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const int i = std::stoi(item);
    if (i < 0 || i >= 32) throw Error(ErrorKind::Integrity, "bad index set '" + text + "'");
    s |= IndexSet{1} << i;
  }
  return s;
}

void header(std::ostream& out, const char* magic, const Instance& inst) {
  InstanceSpec s = inst.spec();
  out << magic << '\n';
  out << "spec " << spec_to_json(s) << '\n';
  out << "diagram " << inst.diagram() << '\n';
  out << "gcm " << inst.gcm().to_json() << '\n';
  out << "d " << inst.d() << '\n';
  out << "p " << s.p << '\n';
  out << "m " << s.m << '\n';
  out << "g " << inst.g_text() << '\n';
  out << "f " << inst.f_text() << '\n';
  out << "order " << inst.predicted_order() << '\n';
}

// Prime-field coefficient vector of a ring element, least significant first.
std::string coeffs(Elem code, std::uint64_t p, int len) {
  std::string out;
  for (int i = 0; i < len; ++i) {
    out += (i ? "," : "") + std::to_string(code % p);
    code /= p;
  }
  return out;
}

Elem parse_coeffs(const std::string& text, std::uint64_t p, int len) {
  std::stringstream in(text);
  std::string item;
  Elem code = 0, scale = 1;
  int n = 0;
  while (std::getline(in, item, ',')) {
    std::uint64_t c = 0;
    try {
      c = std::stoull(item);
    } catch (...) {
      throw Error(ErrorKind::Integrity, "bad coefficient vector '" + text + "'");
    }
    if (c >= p) throw Error(ErrorKind::Integrity, "coefficient out of range in '" + text + "'");
    code += c * scale;
    scale *= p;
    ++n;
  }
  if (n != len) throw Error(ErrorKind::Integrity, "coefficient vector '" + text + "' has wrong length");
  return code;
}

int ring_digits(const Instance& inst) { return static_cast<int>(inst.spec().m) * static_cast<int>(poly::degree(inst.f())); }

struct Header {
  std::string magic;
  std::map<std::string, std::string> fields;
};

std::string next_line(std::istream& in, const std::string& what) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::Integrity, "truncated file: expected " + what);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

Header read_header(std::istream& in) {
  Header h;
  h.magic = next_line(in, "header");
  for (const char* key : {"spec", "diagram", "gcm", "d", "p", "m", "g", "f", "order"}) {
    std::string line = next_line(in, key);
    const std::string prefix = std::string(key) + " ";
    if (line.rfind(prefix, 0) != 0 && line != key)
      throw Error(ErrorKind::Integrity, "expected header field '" + std::string(key) + "', got '" + line + "'");
    h.fields[key] = line.size() > prefix.size() ? line.substr(prefix.size()) : "";
  }
  return h;
}

std::uint64_t read_count(std::istream& in, const std::string& key) {
  std::string line = next_line(in, key);
  std::istringstream ls(line);
  std::string k;
  std::uint64_t n = 0;
  if (!(ls >> k >> n) || k != key) throw Error(ErrorKind::Integrity, "expected '" + key + " <count>', got '" + line + "'");
  return n;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  return in;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write failed for '" + path + "'");
}

// Header fields must agree with the values recomputed from the embedded spec.
Clause header_clause(const Instance& inst, const Header& h) {
  std::vector<std::string> bad;
  auto expect = [&](const std::string& key, const std::string& want) {
    if (h.fields.at(key) != want) bad.push_back(key + " '" + h.fields.at(key) + "' vs '" + want + "'");
  };
  expect("diagram", inst.diagram());
  expect("gcm", inst.gcm().to_json());
  expect("d", std::to_string(inst.d()));
  expect("p", std::to_string(inst.spec().p));
  expect("m", std::to_string(inst.spec().m));
  expect("g", inst.g_text());
  expect("f", inst.f_text());
  expect("order", inst.predicted_order());
  return {"file_header", bad.empty(), bad.empty() ? "header matches the recomputed instance" : detail::join_failures(bad)};
}

}  // namespace

std::string complex_file_text(const Instance& inst, const ExplicitBuild& build) {
  std::ostringstream out;
  header(out, kComplexMagic, inst);
  const auto& X = build.complex.complex;
  out << "vertices " << X.vertex_count() << '\n';
  for (VertexId v = 0; v < X.vertex_count(); ++v)
    out << X.vertex_type(v) << ' ' << to_hex(build.group->key(static_cast<ElemId>(X.vertex_label(v)))) << '\n';
  out << "faces " << X.face_count() << '\n';
  for (const auto& f : X.maximal_faces()) {
    for (std::size_t i = 0; i < f.size(); ++i) out << (i ? " " : "") << f[i];
    out << '\n';
  }
  out << "end\n";
  return out.str();
}

void write_complex_file(const std::string& path, const Instance& inst, const ExplicitBuild& build) {
  write_text(path, complex_file_text(inst, build));
}

std::string bundle_file_text(const Instance& inst) {
  KmsMap phi = inst.kms();
  const int len = ring_digits(inst);
  std::ostringstream out;
  header(out, kBundleMagic, inst);
  for (const auto& [J, grp] : detail::local_groups(inst, phi, inst.spec().budget)) {
    out << "subgroup " << format_set(J) << " order " << grp.order() << '\n';
    for (ElemId x = 0; x < grp.order(); ++x) {
      const auto& a = grp.element(x);
      for (std::size_t i = 0; i < a.size(); ++i) out << (i ? " " : "") << coeffs(a[i], inst.spec().p, len);
      out << '\n';
    }
  }
  out << "end\n";
  return out.str();
}

void write_bundle_file(const std::string& path, const Instance& inst) { write_text(path, bundle_file_text(inst)); }

namespace {

struct RawComplex {
  Header header;
  LoadedComplex loaded;
};

RawComplex parse_complex(std::istream& in, Header h) {
  RawComplex r;
  r.header = std::move(h);
  r.loaded.spec = spec_from_json(r.header.fields.at("spec"));
  r.loaded.group_order = r.header.fields.at("order");
  const int d = std::stoi(r.header.fields.at("d"));
  if (d < 1) throw Error(ErrorKind::Integrity, "dimension must be at least 1");
  const std::uint64_t nv = read_count(in, "vertices");
  std::vector<int> types;
  std::vector<std::uint64_t> labels;
  types.reserve(nv);
  labels.reserve(nv);
  for (std::uint64_t v = 0; v < nv; ++v) {
    std::istringstream ls(next_line(in, "vertex"));
    int t = -1;
    std::string key;
    if (!(ls >> t >> key) || t < 0 || t > d) throw Error(ErrorKind::Integrity, "bad vertex line " + std::to_string(v));
    types.push_back(t);
    labels.push_back(v);
    r.loaded.vertex_keys.push_back(key);
  }
  const std::uint64_t nf = read_count(in, "faces");
  std::vector<Face> faces;
  faces.reserve(nf);
  for (std::uint64_t i = 0; i < nf; ++i) {
    std::istringstream ls(next_line(in, "face"));
    Face f;
    std::uint64_t v = 0;
    while (ls >> v) {
      if (v >= nv) throw Error(ErrorKind::Integrity, "face " + std::to_string(i) + " names vertex " + std::to_string(v));
      f.push_back(static_cast<VertexId>(v));
    }
    if (f.size() != static_cast<std::size_t>(d + 1))
      throw Error(ErrorKind::Integrity, "face " + std::to_string(i) + " has " + std::to_string(f.size()) + " vertices");
    std::sort(f.begin(), f.end());
    faces.push_back(std::move(f));
  }
  if (next_line(in, "end") != "end") throw Error(ErrorKind::Integrity, "missing 'end' marker");
  r.loaded.complex = PureComplex(d, std::move(types), std::move(labels), std::move(faces));
  if (r.loaded.complex.face_count() != nf) throw Error(ErrorKind::Integrity, "duplicate maximal faces");
  return r;
}

struct RawBundle {
  Header header;
  LoadedBundle loaded;
};

RawBundle parse_bundle(std::istream& in, Header h, const Instance& inst) {
  RawBundle r;
  r.header = std::move(h);
  r.loaded.spec = inst.spec();
  const int n = inst.d() + 1;
  const int len = ring_digits(inst);
  for (;;) {
    std::string line = next_line(in, "subgroup or end");
    if (line == "end") break;
    std::istringstream ls(line);
    std::string word, set, order_word;
    std::uint64_t order = 0;
    if (!(ls >> word >> set >> order_word >> order) || word != "subgroup" || order_word != "order")
      throw Error(ErrorKind::Integrity, "bad subgroup line '" + line + "'");
    const IndexSet J = parse_set(set);
    if (r.loaded.subgroups.count(J)) throw Error(ErrorKind::Integrity, "subgroup " + set + " listed twice");
    auto& elems = r.loaded.subgroups[J];
    for (std::uint64_t x = 0; x < order; ++x) {
      std::istringstream es(next_line(in, "subgroup element"));
      Matrix a;
      std::string entry;
      while (es >> entry) a.push_back(parse_coeffs(entry, inst.spec().p, len));
      if (a.size() != static_cast<std::size_t>(n * n))
        throw Error(ErrorKind::Integrity, "element " + std::to_string(x) + " of " + set + " is not " +
                                              std::to_string(n) + "x" + std::to_string(n));
      elems.push_back(std::move(a));
    }
  }
  return r;
}

}  // namespace

LoadedComplex read_complex_file(const std::string& path) {
  auto in = open_in(path);
  Header h = read_header(in);
  if (h.magic != kComplexMagic) throw Error(ErrorKind::Integrity, "'" + path + "' is not a complex file");
  return parse_complex(in, std::move(h)).loaded;
}

LoadedBundle read_bundle_file(const std::string& path) {
  auto in = open_in(path);
  Header h = read_header(in);
  if (h.magic != kBundleMagic) throw Error(ErrorKind::Integrity, "'" + path + "' is not a bundle file");
  Instance inst(spec_from_json(h.fields.at("spec")));
  return parse_bundle(in, std::move(h), inst).loaded;
}

namespace {

Certificate verify_complex(const Instance& inst, const RawComplex& raw, const VerifyOptions& opt) {
  Certificate c;
  c.mode = Mode::Explicit;
  c.source = "complex";
  detail::base_fields(inst, c);
  c.clauses.push_back(header_clause(inst, raw.header));
  KmsMap phi = inst.kms();
  const auto local = detail::local_groups(inst, phi, inst.spec().budget);
  detail::subgroup_checks(inst, phi, local, c);
  const auto& X = raw.loaded.complex;
  const auto& ctx = phi.context();
  const int d = inst.d();
  const IndexSet all = inst.gcm().all();
  {
    // Vertex keys are canonical coset representatives g H_i: elements of
    // SL_{d+1}(R), distinct, and minimal in their coset.
    std::vector<std::string> bad;
    std::vector<std::set<std::string>> seen(static_cast<std::size_t>(d + 1));
    for (VertexId v = 0; v < X.vertex_count() && bad.size() < 5; ++v) {
      const int t = X.vertex_type(v);
      const std::string key = from_hex(raw.loaded.vertex_keys[v]);
      if (key.size() != static_cast<std::size_t>((d + 1) * (d + 1)) * ctx.key_width) {
        bad.push_back("vertex " + std::to_string(v) + " key has wrong width");
        continue;
      }
      const Matrix g = matrix_from_key(ctx, key);
      if (determinant(ctx, g) != 1) bad.push_back("vertex " + std::to_string(v) + " has determinant != 1");
      if (!seen[static_cast<std::size_t>(t)].insert(key).second)
        bad.push_back("vertex " + std::to_string(v) + " repeats a coset");
      const auto& h = local.at(all & ~(IndexSet{1} << t));
      for (ElemId x = 0; x < h.order(); ++x)
        if (matrix_key(ctx, mat_mul(ctx, g, h.element(x))) < key) {
          bad.push_back("vertex " + std::to_string(v) + " is not the minimal representative of its coset");
          break;
        }
    }
    c.clauses.push_back({"vertex_cosets", bad.empty(),
                         bad.empty() ? std::to_string(X.vertex_count()) + " canonical coset representatives"
                                     : detail::join_failures(bad)});
  }
  {
    // Sharp transitivity: one maximal face per group element, and
    // |G/H_i| vertices of type i.
    std::vector<std::string> bad;
    const auto order = sl_order(d + 1, inst.ring_order());
    if (!order || std::to_string(X.face_count()) != inst.predicted_order())
      bad.push_back(std::to_string(X.face_count()) + " maximal faces vs |G| = " + inst.predicted_order());
    if (order) {
      std::vector<std::uint64_t> per_type(static_cast<std::size_t>(d + 1), 0);
      for (int t : X.vertex_types()) ++per_type[static_cast<std::size_t>(t)];
      for (int i = 0; i <= d; ++i) {
        const auto hi = local.at(all & ~(IndexSet{1} << i)).order();
        if (per_type[static_cast<std::size_t>(i)] * hi != *order)
          bad.push_back(std::to_string(per_type[static_cast<std::size_t>(i)]) + " vertices of type " +
                        std::to_string(i) + " vs |G|/|H_" + std::to_string(i) + "|");
      }
    }
    c.clauses.push_back({"face_count", bad.empty(),
                         bad.empty() ? std::to_string(X.face_count()) + " maximal faces = |G|" : detail::join_failures(bad)});
  }
  detail::complex_checks(inst, X, c);
  if (opt.global_spectrum) {
    Lambda2Options lo;
    lo.tol = inst.spec().tol;
    c.global_lambda2 = global_lambda2(X, lo).lambda2;
  }
  return c;
}

Certificate verify_bundle(const Instance& inst, const RawBundle& raw) {
  Certificate c;
  c.mode = Mode::Certificate;
  c.source = "bundle";
  detail::base_fields(inst, c);
  c.clauses.push_back(header_clause(inst, raw.header));
  KmsMap phi = inst.kms();
  const auto& ctx = phi.context();
  std::map<IndexSet, MatrixGroup> loaded;
  {
    std::vector<std::string> bad;
    for (const auto& [J, elems] : raw.loaded.subgroups) {
      for (const auto& a : elems)
        if (determinant(ctx, a) != 1) {
          bad.push_back(format_set(J) + " contains a matrix of determinant != 1");
          break;
        }
      loaded.emplace(J, MatrixGroup::from_elements(ctx, elems));
    }
    for (IndexSet J : spherical_subsets(inst.gcm()))
      if (!loaded.count(J)) bad.push_back("missing subgroup " + format_set(J));
    for (const auto& [J, grp] : loaded) {
      if (grp.order() != raw.loaded.subgroups.at(J).size()) bad.push_back(format_set(J) + " has repeated elements");
      std::vector<Matrix> elems;
      for (ElemId x = 0; x < grp.order(); ++x) elems.push_back(grp.element(x));
      try {
        if (MatrixGroup::closure(ctx, elems, grp.order() + 1).order() != grp.order())
          bad.push_back(format_set(J) + " is not closed under multiplication");
      } catch (const Error&) {
        bad.push_back(format_set(J) + " is not closed under multiplication");
      }
      auto from_gens = MatrixGroup::closure(ctx, phi.generators(J), inst.spec().budget);
      if (from_gens.order() != grp.order() || !grp.contains_all(from_gens))
        bad.push_back(format_set(J) + " differs from the group generated by phi(u_j), j in J");
    }
    c.clauses.push_back({"bundle_integrity", bad.empty(),
                         bad.empty() ? std::to_string(loaded.size()) + " subgroups closed and equal to phi(U_J)"
                                     : detail::join_failures(bad)});
    if (!bad.empty()) return c;
  }
  detail::subgroup_checks(inst, phi, loaded, c);
  for (const auto& [J, grp] : loaded) c.counts["subgroup_" + format_set(J)] = grp.order();
  bool gen_ok = c.surjective.value_or(false);
  for (const auto& cl : c.clauses)
    if (cl.name == "local_generation") gen_ok = gen_ok && cl.ok;
  c.clauses.push_back({"links_connected", gen_ok, "<H_i> = G by surjectivity; <H_{T+i}> = H_T by local generation"});
  c.links = detail::representative_links(inst, &loaded, &phi, c.gamma.value, inst.spec().tol);
  detail::link_clause(c);
  return c;
}

}  // namespace

Certificate verify_file(const std::string& path, const VerifyOptions& opt, int workers) {
  auto in = open_in(path);
  Header h = read_header(in);
  InstanceSpec spec = spec_from_json(h.fields.at("spec"));
  spec.workers = std::max(1, workers);
  if (h.magic == kComplexMagic) {
    spec.mode = Mode::Explicit;
    Instance inst(spec);
    return verify_complex(inst, parse_complex(in, std::move(h)), opt);
  }
  if (h.magic == kBundleMagic) {
    spec.mode = Mode::Certificate;
    Instance inst(spec);
    return verify_bundle(inst, parse_bundle(in, std::move(h), inst));
  }
  throw Error(ErrorKind::Integrity, "'" + path + "' has unknown header '" + h.magic + "'");
}

}  // namespace hdx
