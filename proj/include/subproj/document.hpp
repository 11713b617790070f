#pragma once

// JSON documents of named modules, morphisms, complexes and chain maps, and
// the encodings of certificates and homotopy witnesses.

#include "subproj/subprojectivity.hpp"

#include "json.hpp"

#include <functional>
#include <optional>
#include <set>
#include <string>

namespace subproj::io {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

class DocumentError : public Error {
 public:
  enum class Kind { Syntax, Validation };

  static DocumentError syntax(std::size_t line, std::size_t column, const std::string& what) {
    DocumentError e(Kind::Syntax, "syntax error at line " + std::to_string(line) + ", column " +
                                      std::to_string(column) + ": " + what);
    e.line_ = line;
    e.column_ = column;
    return e;
  }

  static DocumentError validation(const std::string& object, std::optional<int> degree, const std::string& what) {
    std::string msg = "invalid object '" + object + "'";
    if (degree) msg += " at degree " + std::to_string(*degree);
    DocumentError e(Kind::Validation, msg + ": " + what);
    e.object_ = object;
    e.degree_ = degree;
    return e;
  }

  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& object() const { return object_; }
  std::optional<int> degree() const { return degree_; }

 private:
  DocumentError(Kind k, const std::string& what) : Error(what), kind_(k) {}
  Kind kind_;
  std::size_t line_ = 0, column_ = 0;
  std::string object_;
  std::optional<int> degree_;
};

struct Document {
  Ring ring = Ring::integers();
  std::map<std::string, PresentedModule> modules;
  std::map<std::string, ModuleMorphism> morphisms;
  std::map<std::string, Complex> complexes;
  std::map<std::string, ChainMap> chain_maps;

  const Complex& complex(const std::string& name) const {
    auto it = complexes.find(name);
    if (it == complexes.end()) throw DocumentError::validation(name, std::nullopt, "no such complex");
    return it->second;
  }
  const ChainMap& chain_map(const std::string& name) const {
    auto it = chain_maps.find(name);
    if (it == chain_maps.end()) throw DocumentError::validation(name, std::nullopt, "no such chain map");
    return it->second;
  }
};

// ---------------------------------------------------------------------------
// Encoding

inline json encode_integer(const Integer& v) { return v.str(); }

inline json encode_matrix(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(encode_integer(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json encode_module(const PresentedModule& m) {
  return {{"generators", m.generators()}, {"relations", encode_matrix(m.relations())}};
}

inline json encode_invariants(const ModuleInvariants& inv) {
  json factors = json::array();
  for (const auto& f : inv.factors) factors.push_back(encode_integer(f));
  return {{"free_rank", inv.free_rank}, {"torsion", factors}};
}

inline json encode_morphism(const ModuleMorphism& f) {
  return {{"source", encode_module(f.source())}, {"target", encode_module(f.target())}, {"matrix", encode_matrix(f.matrix())}};
}

inline json encode_complex(const Complex& x) {
  json comps = json::array(), diffs = json::array();
  for (int n = x.lo(); n <= x.hi(); ++n) comps.push_back({{"degree", n}, {"module", encode_module(x.component(n))}});
  for (int n = x.lo() + 1; n <= x.hi(); ++n)
    diffs.push_back({{"degree", n}, {"matrix", encode_matrix(x.differential(n).matrix())}});
  return {{"components", comps}, {"differentials", diffs}};
}

/// Chain map with inline source and target, or named ones when `name_of`
/// recognizes them.
inline json encode_chain_map(const ChainMap& f,
                             const std::function<std::optional<std::string>(const Complex&)>& name_of = {}) {
  auto ref = [&](const Complex& c) -> json {
    if (name_of)
      if (auto n = name_of(c)) return *n;
    return encode_complex(c);
  };
  json comps = json::array();
  auto [lo, hi] = f.overlap();
  for (int n = lo; n <= hi; ++n) comps.push_back({{"degree", n}, {"matrix", encode_matrix(f.component(n).matrix())}});
  return {{"source", ref(f.source())}, {"target", ref(f.target())}, {"components", comps}};
}

inline json encode_witness(const HomotopyWitness& s) {
  json out = json::array();
  for (const auto& [n, m] : s.maps) out.push_back({{"degree", n}, {"matrix", encode_matrix(m.matrix())}});
  return out;
}

inline json encode_document(const Document& doc) {
  json out;
  out["schema"] = kSchemaVersion;
  out["ring"] = doc.ring.to_string();
  json mods = json::object(), morphs = json::object(), cxs = json::object(), maps = json::object();
  for (const auto& [name, m] : doc.modules) mods[name] = encode_module(m);
  for (const auto& [name, f] : doc.morphisms) morphs[name] = encode_morphism(f);
  for (const auto& [name, x] : doc.complexes) cxs[name] = encode_complex(x);
  auto name_of = [&](const Complex& c) -> std::optional<std::string> {
    for (const auto& [name, x] : doc.complexes)
      if (x == c) return name;
    return std::nullopt;
  };
  for (const auto& [name, f] : doc.chain_maps) maps[name] = encode_chain_map(f, name_of);
  out["modules"] = mods;
  out["morphisms"] = morphs;
  out["complexes"] = cxs;
  out["chain_maps"] = maps;
  return out;
}

inline std::string serialize(const Document& doc) { return encode_document(doc).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Decoding

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline Integer decode_integer(const json& v) {
  if (v.is_number_integer()) return Integer(v.get<long long>());
  if (!v.is_string()) throw Error("matrix entries must be integer strings");
  const auto s = v.get<std::string>();
  if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos || s.find('-', 1) != std::string::npos ||
      s == "-")
    throw Error("bad integer literal '" + s + "'");
  return Integer(s);
}

/// Row arrays; `rows` is known from context, columns from the first row
/// (or `cols` when there are no rows).
inline Matrix decode_matrix(const json& v, std::size_t rows, std::optional<std::size_t> cols = std::nullopt) {
  if (!v.is_array()) throw Error("matrix must be an array of rows");
  if (v.size() != rows)
    throw Error("matrix has " + std::to_string(v.size()) + " rows, expected " + std::to_string(rows));
  std::size_t c = cols.value_or(rows == 0 ? 0 : v[0].size());
  Matrix m(rows, c);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!v[i].is_array() || v[i].size() != c)
      throw Error("matrix row " + std::to_string(i) + " must have " + std::to_string(c) + " entries");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = decode_integer(v[i][j]);
  }
  return m;
}

inline int decode_int(const json& v, const char* what) {
  if (!v.is_number_integer()) throw Error(std::string(what) + " must be an integer");
  return v.get<int>();
}

class Decoder {
 public:
  Decoder(const json& root, Document& doc) : root_(root), doc_(doc) {}

  PresentedModule module(const json& v) {
    if (v.is_string()) {
      const auto name = v.get<std::string>();
      auto it = doc_.modules.find(name);
      if (it != doc_.modules.end()) return it->second;
      const json& defs = section("modules");
      if (!defs.contains(name)) throw Error("unknown module '" + name + "'");
      return named_module(name);
    }
    if (!v.is_object() || !v.contains("generators")) throw Error("module needs 'generators'");
    const auto g = static_cast<std::size_t>(decode_int(v.at("generators"), "generators"));
    Matrix rel = v.contains("relations") ? decode_matrix(v.at("relations"), g) : Matrix(g, 0);
    return PresentedModule(doc_.ring, g, rel);
  }

  PresentedModule named_module(const std::string& name) {
    if (auto it = doc_.modules.find(name); it != doc_.modules.end()) return it->second;
    const json& v = section("modules").at(name);
    if (v.is_string()) throw Error("module '" + name + "' must be defined inline");
    auto m = guarded(name, [&] { return module(v); });
    doc_.modules.emplace(name, m);
    return m;
  }

  ModuleMorphism named_morphism(const std::string& name) {
    if (auto it = doc_.morphisms.find(name); it != doc_.morphisms.end()) return it->second;
    const json& v = section("morphisms").at(name);
    auto f = guarded(name, [&] {
      auto src = module(v.at("source")), tgt = module(v.at("target"));
      Matrix m = decode_matrix(v.at("matrix"), tgt.generators(), src.generators());
      return make_morphism(src, tgt, m);
    });
    doc_.morphisms.emplace(name, f);
    return f;
  }

  Complex complex(const json& v) {
    if (v.is_string()) return named_complex(v.get<std::string>());
    if (!v.is_object()) throw Error("complex must be an object or a name");
    if (v.contains("disc")) {
      const auto& a = v.at("disc");
      return disc(module(a.at("module")), decode_int(a.at("degree"), "degree"));
    }
    if (v.contains("sphere")) {
      const auto& a = v.at("sphere");
      return sphere(module(a.at("module")), decode_int(a.at("degree"), "degree"));
    }
    if (v.contains("shift")) {
      const auto& a = v.at("shift");
      return shift(complex(a.at("complex")), decode_int(a.at("by"), "by"));
    }
    if (v.contains("direct_sum")) {
      std::vector<Complex> parts;
      for (const auto& p : v.at("direct_sum")) parts.push_back(complex(p));
      if (parts.empty()) return zero_complex(doc_.ring);
      return direct_sum(parts).complex;
    }
    const auto& comps = v.at("components");
    if (!comps.is_array() || comps.empty()) throw Error("complex needs a nonempty 'components' list");
    std::map<int, PresentedModule> mods;
    for (const auto& c : comps) {
      const int n = decode_int(c.at("degree"), "degree");
      if (!mods.emplace(n, module(c.at("module"))).second)
        throw Error("degree " + std::to_string(n) + " listed twice");
    }
    const int lo = mods.begin()->first, hi = mods.rbegin()->first;
    std::map<int, Matrix> diffs;
    if (v.contains("differentials"))
      for (const auto& d : v.at("differentials")) {
        const int n = decode_int(d.at("degree"), "degree");
        if (n <= lo || n > hi) throw NotAComplex(n, "differential outside the window");
        auto src = mods.count(n) ? mods.at(n) : PresentedModule::zero(doc_.ring);
        auto tgt = mods.count(n - 1) ? mods.at(n - 1) : PresentedModule::zero(doc_.ring);
        try {
          diffs.emplace(n, decode_matrix(d.at("matrix"), tgt.generators(), src.generators()));
        } catch (const NotAComplex&) {
          throw;
        } catch (const std::exception& e) {
          throw NotAComplex(n, e.what());
        }
      }
    return make_complex(doc_.ring, lo, hi, mods, diffs);
  }

  Complex named_complex(const std::string& name) {
    if (auto it = doc_.complexes.find(name); it != doc_.complexes.end()) return it->second;
    const json& defs = section("complexes");
    if (!defs.contains(name)) throw Error("unknown complex '" + name + "'");
    if (!resolving_.insert(name).second) throw DocumentError::validation(name, std::nullopt, "cyclic reference");
    auto x = guarded(name, [&] { return complex(defs.at(name)); });
    resolving_.erase(name);
    doc_.complexes.emplace(name, x);
    return x;
  }

  ChainMap chain_map(const json& v) {
    auto x = complex(v.at("source")), y = complex(v.at("target"));
    std::map<int, Matrix> comps;
    if (v.contains("components"))
      for (const auto& c : v.at("components")) {
        const int n = decode_int(c.at("degree"), "degree");
        try {
          comps.emplace(n, decode_matrix(c.at("matrix"), y.component(n).generators(), x.component(n).generators()));
        } catch (const std::exception& e) {
          throw NotChainMap(n, e.what());
        }
      }
    return make_chain_map(x, y, comps);
  }

  ChainMap named_chain_map(const std::string& name) {
    if (auto it = doc_.chain_maps.find(name); it != doc_.chain_maps.end()) return it->second;
    auto f = guarded(name, [&] { return chain_map(section("chain_maps").at(name)); });
    doc_.chain_maps.emplace(name, f);
    return f;
  }

  const json& section(const char* key) {
    static const json empty = json::object();
    if (!root_.contains(key)) return empty;
    const json& s = root_.at(key);
    if (!s.is_object()) throw DocumentError::validation(key, std::nullopt, "section must be an object");
    return s;
  }

  /// Wraps construction failures with the object name and degree.
  template <class F>
  auto guarded(const std::string& name, F&& build) -> decltype(build()) {
    try {
      return build();
    } catch (const DocumentError&) {
      throw;
    } catch (const NotAComplex& e) {
      throw DocumentError::validation(name, e.degree(), e.what());
    } catch (const NotChainMap& e) {
      throw DocumentError::validation(name, e.degree(), e.what());
    } catch (const std::exception& e) {
      throw DocumentError::validation(name, std::nullopt, e.what());
    }
  }

 private:
  const json& root_;
  Document& doc_;
  std::set<std::string> resolving_;
};

}  // namespace detail

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw DocumentError::syntax(line, col, e.what());
  }
}

inline Document decode_document(const json& root) {
  Document doc;
  if (root.is_null()) return doc;
  if (!root.is_object()) throw DocumentError::validation("document", std::nullopt, "top level must be an object");
  if (root.contains("schema") && root.at("schema") != kSchemaVersion)
    throw DocumentError::validation("schema", std::nullopt, "unsupported schema version");
  if (root.contains("ring")) {
    try {
      doc.ring = Ring::parse(root.at("ring").get<std::string>());
    } catch (const std::exception& e) {
      throw DocumentError::validation("ring", std::nullopt, e.what());
    }
  }
  detail::Decoder dec(root, doc);
  for (auto& [name, v] : dec.section("modules").items()) dec.named_module(name);
  for (auto& [name, v] : dec.section("morphisms").items()) dec.named_morphism(name);
  for (auto& [name, v] : dec.section("complexes").items()) dec.named_complex(name);
  for (auto& [name, v] : dec.section("chain_maps").items()) dec.named_chain_map(name);
  return doc;
}

/// Empty or whitespace-only text is the empty document.
inline Document parse_document(const std::string& text) {
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return Document{};
  return decode_document(parse_json(text));
}

/// Decodes a standalone complex or chain map (inline or constructor form).
inline Complex decode_complex(const json& v, const Ring& ring) {
  Document doc;
  doc.ring = ring;
  json root = json::object();
  detail::Decoder dec(root, doc);
  return dec.guarded("complex", [&] { return dec.complex(v); });
}

inline ChainMap decode_chain_map(const json& v, const Ring& ring, const Document* context = nullptr) {
  Document doc = context ? *context : Document{};
  doc.ring = ring;
  json root = json::object();
  detail::Decoder dec(root, doc);
  return dec.guarded("chain map", [&] { return dec.chain_map(v); });
}

inline HomotopyWitness decode_witness(const json& v, const Complex& x, const Complex& y) {
  HomotopyWitness s;
  for (const auto& e : v) {
    const int n = detail::decode_int(e.at("degree"), "degree");
    Matrix m = detail::decode_matrix(e.at("matrix"), y.component(n + 1).generators(), x.component(n).generators());
    s.maps.emplace(n, make_morphism(x.component(n), y.component(n + 1), m));
  }
  return s;
}

/// Structural equality of two documents' object graphs.
inline bool same_objects(const Document& a, const Document& b) {
  if (!(a.ring == b.ring)) return false;
  auto keys_match = [](const auto& p, const auto& q) {
    if (p.size() != q.size()) return false;
    for (auto i = p.begin(), j = q.begin(); i != p.end(); ++i, ++j)
      if (i->first != j->first) return false;
    return true;
  };
  if (!keys_match(a.modules, b.modules) || !keys_match(a.morphisms, b.morphisms) ||
      !keys_match(a.complexes, b.complexes) || !keys_match(a.chain_maps, b.chain_maps))
    return false;
  for (const auto& [k, m] : a.modules)
    if (!(m == b.modules.at(k))) return false;
  for (const auto& [k, f] : a.morphisms) {
    const auto& g = b.morphisms.at(k);
    if (!(f.source() == g.source()) || !(f.target() == g.target()) || f.matrix() != g.matrix()) return false;
  }
  for (const auto& [k, x] : a.complexes)
    if (!(x == b.complexes.at(k))) return false;
  for (const auto& [k, f] : a.chain_maps) {
    const auto& g = b.chain_maps.at(k);
    if (!(f.source() == g.source()) || !(f.target() == g.target())) return false;
    auto [lo, hi] = f.overlap();
    for (int n = lo; n <= hi; ++n)
      if (f.component(n).matrix() != g.component(n).matrix()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Certificates

/// Self-contained subprojectivity certificate: M, N and the evidence.
inline json encode_certificate(const SubprojectivityCertificate& cert, const Complex& m, const Complex& n) {
  json out;
  out["schema"] = kSchemaVersion;
  out["kind"] = "subprojectivity";
  out["ring"] = m.ring().to_string();
  out["route"] = to_string(cert.route);
  out["verdict"] = cert.yes ? "YES" : "NO";
  out["m"] = encode_complex(m);
  out["n"] = encode_complex(n);
  auto name_of = [&](const Complex& c) -> std::optional<std::string> {
    if (c == m) return std::string("m");
    if (c == n) return std::string("n");
    return std::nullopt;
  };
  if (cert.yes && cert.route == Route::Definition) {
    json lifts = json::array();
    for (const auto& h : cert.lifts) lifts.push_back(encode_chain_map(h, name_of));
    out["lifts"] = lifts;
  }
  if (cert.yes && cert.route != Route::Definition) {
    json hs = json::array();
    for (const auto& s : cert.homotopies) hs.push_back(encode_witness(s));
    out["homotopies"] = hs;
  }
  if (cert.counterexample) out["counterexample"] = encode_chain_map(*cert.counterexample, name_of);
  return out;
}

inline Route parse_route(const std::string& s) {
  if (s == "definition") return Route::Definition;
  if (s == "homk") return Route::HomKVanishing;
  if (s == "kernel") return Route::KernelRoute;
  throw Error("unknown route '" + s + "'");
}

struct DecodedCertificate {
  Complex m;
  Complex n;
  SubprojectivityCertificate cert;
};

/// Rebuilds a certificate; homotopies are matched against the generators the
/// route recomputes.
inline DecodedCertificate decode_certificate(const json& v) {
  const Ring ring = Ring::parse(v.at("ring").get<std::string>());
  Document ctx;
  ctx.ring = ring;
  ctx.complexes.emplace("m", decode_complex(v.at("m"), ring));
  ctx.complexes.emplace("n", decode_complex(v.at("n"), ring));
  const Complex m = ctx.complexes.at("m"), n = ctx.complexes.at("n");
  SubprojectivityCertificate cert;
  cert.route = parse_route(v.at("route").get<std::string>());
  const auto verdict = v.at("verdict").get<std::string>();
  if (verdict != "YES" && verdict != "NO") throw Error("verdict must be YES or NO");
  cert.yes = verdict == "YES";
  if (v.contains("lifts"))
    for (const auto& h : v.at("lifts")) cert.lifts.push_back(decode_chain_map(h, ring, &ctx));
  if (v.contains("homotopies")) {
    std::vector<ChainMap> gens;
    if (cert.route == Route::HomKVanishing) {
      gens = chain_maps_group(m, n, 0).generators;
    } else {
      auto k = kernel(canonical_projective_epi(n).pi).complex;
      gens = chain_maps_group(shift(m, -1), k, 0).generators;
    }
    const auto& hs = v.at("homotopies");
    if (hs.size() != gens.size()) throw Error("homotopy count does not match the generator count");
    for (std::size_t i = 0; i < gens.size(); ++i)
      cert.homotopies.push_back(decode_witness(hs[i], gens[i].source(), gens[i].target()));
  }
  if (v.contains("counterexample")) cert.counterexample = decode_chain_map(v.at("counterexample"), ring, &ctx);
  return {m, n, std::move(cert)};
}

/// Null-homotopy certificate: the map and, when YES, the family s.
inline json encode_nullhomotopy(const ChainMap& f, const std::optional<HomotopyWitness>& s) {
  json out;
  out["schema"] = kSchemaVersion;
  out["kind"] = "nullhomotopy";
  out["ring"] = f.source().ring().to_string();
  out["verdict"] = s ? "YES" : "NO";
  out["map"] = encode_chain_map(f);
  if (s) out["witness"] = encode_witness(*s);
  return out;
}

}  // namespace subproj::io
