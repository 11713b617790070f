// Command-line front end. Every command reads a JSON document ("-" for
// stdin) and writes JSON to stdout.
//
// Exit codes: 0 success, 1 property false, 2 input error, 3 internal error.

#include "subproj/document.hpp"
#include "subproj/harness/suites.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace subproj;
using io::json;

namespace {

enum Exit { kOk = 0, kFalse = 1, kInput = 2, kInternal = 3 };

class InputError : public Error {
 public:
  using Error::Error;
};

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

io::Document load(const std::string& path) { return io::parse_document(read_text(path)); }

int emit(const json& out, int code) {
  std::cout << out.dump(2) << "\n";
  return code;
}

json homology_entry(const Complex& x, int n) {
  auto h = homology(x, n);
  return {{"degree", n}, {"module", io::encode_module(h)}, {"invariants", io::encode_invariants(h.invariants())}};
}

int cmd_homology(const std::string& file, const std::string& object, std::optional<int> degree) {
  auto doc = load(file);
  const auto& x = doc.complex(object);
  json list = json::array();
  if (degree) {
    list.push_back(homology_entry(x, *degree));
  } else {
    for (int n = x.lo(); n <= x.hi(); ++n) list.push_back(homology_entry(x, n));
  }
  return emit({{"object", object}, {"homology", list}}, kOk);
}

int cmd_exact(const std::string& file, const std::string& object, bool via_subproj) {
  auto doc = load(file);
  const auto& x = doc.complex(object);
  const bool exact = is_exact(x);
  json out{{"object", object}, {"exact", exact}};
  if (via_subproj) {
    auto rep = subprojective_wrt_all_shifts(sphere(PresentedModule::free(x.ring(), 1), 0), x, true);
    bool all = true;
    json shifts = json::array();
    for (const auto& s : rep.shifts) {
      all = all && s.definition_yes;
      shifts.push_back({{"shift", s.shift}, {"subprojective", s.definition_yes}});
    }
    out["via_subproj"] = {{"member_for_all_shifts", all}, {"shifts", shifts}};
    if (all != exact) {
      out["error"] = "exactness and sphere-shift membership disagree";
      return emit(out, kInternal);
    }
  }
  return emit(out, exact ? kOk : kFalse);
}

int cmd_nullhomotopy(const std::string& file, const std::string& map) {
  auto doc = load(file);
  const auto& f = doc.chain_map(map);
  auto w = is_null_homotopic(f);
  return emit(io::encode_nullhomotopy(f, w), w ? kOk : kFalse);
}

int cmd_homk(const std::string& file, const std::string& source, const std::string& target, int degree) {
  auto doc = load(file);
  auto h = hom_K(doc.complex(source), doc.complex(target), degree);
  return emit({{"source", source},
               {"target", target},
               {"degree", degree},
               {"module", io::encode_module(h)},
               {"invariants", io::encode_invariants(h.invariants())}},
              kOk);
}

int cmd_subproj(const std::string& file, const std::string& mname, const std::string& nname, const std::string& route) {
  auto doc = load(file);
  const auto& m = doc.complex(mname);
  const auto& n = doc.complex(nname);
  if (route != "all") {
    SubprojectivityCertificate cert;
    try {
      cert = is_subprojective_complex(m, n, io::parse_route(route));
    } catch (const HypothesisNotMet& e) {
      return emit({{"route", route}, {"status", "HypothesisNotMet"}, {"reason", e.what()}}, kInput);
    }
    return emit(io::encode_certificate(cert, m, n), cert.yes ? kOk : kFalse);
  }
  json routes = json::object();
  std::optional<bool> verdict;
  bool consistent = true;
  for (auto r : {Route::Definition, Route::HomKVanishing, Route::KernelRoute}) {
    try {
      auto cert = is_subprojective_complex(m, n, r);
      routes[to_string(r)] = io::encode_certificate(cert, m, n);
      if (verdict && *verdict != cert.yes) consistent = false;
      verdict = verdict.value_or(cert.yes);
    } catch (const HypothesisNotMet& e) {
      routes[to_string(r)] = {{"route", to_string(r)}, {"status", "HypothesisNotMet"}, {"reason", e.what()}};
    }
  }
  json out{{"m", mname}, {"n", nname}, {"routes", routes}, {"consistent", consistent},
           {"verdict", *verdict ? "YES" : "NO"}};
  if (!consistent) return emit(out, kInternal);
  return emit(out, *verdict ? kOk : kFalse);
}

int cmd_cone(const std::string& file, const std::string& map) {
  auto doc = load(file);
  const auto& g = doc.chain_map(map);
  auto c = mapping_cone(g);
  io::Document out;
  out.ring = g.source().ring();
  out.complexes.emplace("source", g.source());
  out.complexes.emplace("target", g.target());
  out.complexes.emplace("cone", c.cone);
  out.complexes.emplace("base", c.base);
  out.chain_maps.emplace("g", g);
  out.chain_maps.emplace("inclusion", c.inclusion);
  out.chain_maps.emplace("projection", c.projection);
  return emit(io::encode_document(out), kOk);
}

int cmd_pullback(const std::string& file, const std::string& gname, const std::string& fname) {
  auto doc = load(file);
  auto sq = pullback(doc.chain_map(gname), doc.chain_map(fname));
  io::Document out;
  out.ring = sq.D.ring();
  out.complexes.emplace("A", sq.f.source());
  out.complexes.emplace("B", sq.g.target());
  out.complexes.emplace("C", sq.g.source());
  out.complexes.emplace("D", sq.D);
  out.chain_maps.emplace("g", sq.g);
  out.chain_maps.emplace("f", sq.f);
  out.chain_maps.emplace("g_prime", sq.g_prime);
  out.chain_maps.emplace("f_prime", sq.f_prime);
  return emit(io::encode_document(out), kOk);
}

int cmd_shift(const std::string& file, const std::string& object, int by) {
  auto doc = load(file);
  io::Document out;
  out.ring = doc.ring;
  out.complexes.emplace(object + "[" + std::to_string(by) + "]", shift(doc.complex(object), by));
  return emit(io::encode_document(out), kOk);
}

int cmd_normalize(const std::string& file) {
  auto doc = load(file);
  std::cout << io::serialize(doc);
  return kOk;
}

int cmd_check(const std::string& file) {
  const json v = io::parse_json(read_text(file));
  const std::string kind = v.is_object() && v.contains("kind") ? v.at("kind").get<std::string>() : "document";
  bool valid = false;
  if (kind == "subprojectivity") {
    io::DecodedCertificate d = [&] {
      try {
        return io::decode_certificate(v);
      } catch (const std::exception& e) {
        throw InputError(std::string("malformed certificate: ") + e.what());
      }
    }();
    valid = verify_certificate(d.cert, d.m, d.n);
  } else if (kind == "nullhomotopy") {
    const Ring ring = Ring::parse(v.at("ring").get<std::string>());
    auto f = io::decode_chain_map(v.at("map"), ring);
    if (v.at("verdict") == "YES") {
      valid = v.contains("witness") && verify_homotopy(f, io::decode_witness(v.at("witness"), f.source(), f.target()));
    } else {
      valid = !is_null_homotopic(f).has_value();
    }
  } else if (kind == "document") {
    auto doc = io::decode_document(v);
    valid = io::same_objects(doc, io::parse_document(io::serialize(doc)));
  } else {
    throw InputError("cannot check objects of kind '" + kind + "'");
  }
  return emit({{"kind", kind}, {"valid", valid}}, valid ? kOk : kFalse);
}

int cmd_verify(const std::string& suite, harness::TrialConfig cfg, unsigned threads) {
  auto rep = harness::run_suite(suite, cfg, threads);
  return emit(rep.to_json(), rep.passed() ? kOk : kFalse);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chain complexes over Z and Z/m: homology, homotopy and subprojectivity"};
  app.require_subcommand(1);

  std::string file, object, map, source, target, m, n, route = "definition", g, f, suite, ring = "Z";
  int degree = 0, by = 0;
  std::optional<int> hdegree;
  bool via_subproj = false;
  harness::TrialConfig cfg;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());

  auto* homology_cmd = app.add_subcommand("homology", "invariant factors of H_n per degree");
  homology_cmd->add_option("file", file)->required();
  homology_cmd->add_option("--object", object)->required();
  homology_cmd->add_option("--degree", hdegree);

  auto* exact_cmd = app.add_subcommand("exact", "exit 0 when the complex is exact, 1 otherwise");
  exact_cmd->add_option("file", file)->required();
  exact_cmd->add_option("--object", object)->required();
  exact_cmd->add_flag("--via-subproj", via_subproj, "cross-check through spheres of R at every shift");

  auto* null_cmd = app.add_subcommand("nullhomotopy", "null-homotopy witness or NO");
  null_cmd->add_option("file", file)->required();
  null_cmd->add_option("--map", map)->required();

  auto* homk_cmd = app.add_subcommand("homk", "presentation of Hom_K(M[n], N)");
  homk_cmd->add_option("file", file)->required();
  homk_cmd->add_option("--source", source)->required();
  homk_cmd->add_option("--target", target)->required();
  homk_cmd->add_option("--degree", degree);

  auto* subproj_cmd = app.add_subcommand("subproj", "is N in the subprojectivity domain of M");
  subproj_cmd->add_option("file", file)->required();
  subproj_cmd->add_option("--m", m)->required();
  subproj_cmd->add_option("--n", n)->required();
  subproj_cmd->add_option("--route", route)->check(CLI::IsMember({"definition", "homk", "kernel", "all"}));

  auto* cone_cmd = app.add_subcommand("cone", "mapping cone of g : M[-1] -> K");
  cone_cmd->add_option("file", file)->required();
  cone_cmd->add_option("--map", map)->required();

  auto* pullback_cmd = app.add_subcommand("pullback", "pullback square of g : C -> B and f : A -> B");
  pullback_cmd->add_option("file", file)->required();
  pullback_cmd->add_option("--g", g)->required();
  pullback_cmd->add_option("--f", f)->required();

  auto* shift_cmd = app.add_subcommand("shift", "shifted complex");
  shift_cmd->add_option("file", file)->required();
  shift_cmd->add_option("--object", object)->required();
  shift_cmd->add_option("--by", by)->required();

  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  verify_cmd->add_option("suite", suite)->required();
  verify_cmd->add_option("--ring", ring, "Z or Zmod:m");
  verify_cmd->add_option("--trials", cfg.trials);
  verify_cmd->add_option("--seed", cfg.seed);
  auto* window_opt = verify_cmd->add_option("--window", cfg.window);
  auto* gens_opt = verify_cmd->add_option("--max-generators", cfg.max_generators);
  verify_cmd->add_option("--entry-bound", cfg.entry_bound);
  verify_cmd->add_option("--threads", threads);

  auto* check_cmd = app.add_subcommand("check", "re-validate a certificate or a document");
  check_cmd->add_option("file", file)->required();

  auto* normalize_cmd = app.add_subcommand("normalize", "parse and re-serialize a document");
  normalize_cmd->add_option("file", file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*homology_cmd) return cmd_homology(file, object, hdegree);
    if (*exact_cmd) return cmd_exact(file, object, via_subproj);
    if (*null_cmd) return cmd_nullhomotopy(file, map);
    if (*homk_cmd) return cmd_homk(file, source, target, degree);
    if (*subproj_cmd) return cmd_subproj(file, m, n, route);
    if (*cone_cmd) return cmd_cone(file, map);
    if (*pullback_cmd) return cmd_pullback(file, g, f);
    if (*shift_cmd) return cmd_shift(file, object, by);
    if (*check_cmd) return cmd_check(file);
    if (*normalize_cmd) return cmd_normalize(file);
    if (*verify_cmd) {
      try {
        cfg.ring = Ring::parse(ring);
        if (suite == "oracle") {
          // exhaustive tier defaults
          if (!window_opt->count()) cfg.window = 3;
          if (!gens_opt->count()) cfg.max_generators = 2;
        } else {
          if (!window_opt->count()) cfg.window = 4;
          if (!gens_opt->count()) cfg.max_generators = 3;
        }
        cfg.validate();
      } catch (const Error& e) {
        throw InputError(e.what());
      }
      return cmd_verify(suite, cfg, threads);
    }
  } catch (const io::DocumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const harness::UnknownSuite& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const NotEpi& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInput;
}
