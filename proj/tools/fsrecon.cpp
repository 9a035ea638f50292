// fsrecon command-line tool. JSON goes to stdout (or --out), diagnostics to stderr.
// Exit status: 0 ok, 1 the queried property does not hold, 2 bad usage or input.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fsrecon/cyclotomic.hpp"
#include "fsrecon/equidistribution.hpp"
#include "fsrecon/error.hpp"
#include "fsrecon/fs.hpp"
#include "fsrecon/json_io.hpp"
#include "fsrecon/moves.hpp"
#include "fsrecon/oracle.hpp"
#include "fsrecon/radon.hpp"
#include "fsrecon/vmodule.hpp"

using namespace fsrecon;
using fsrecon::json::Json;

namespace {

constexpr int kOk = 0;
constexpr int kFalsified = 1;
constexpr int kUsage = 2;

struct Globals {
  std::string group;
  std::optional<std::int64_t> size_cap;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::string out;
  bool text = false;
};

// Either a path or an inline document.
Json load(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return json::parse(arg);
  return json::read_file(arg);
}

std::optional<GroupSpec> global_group(const Globals& g) {
  if (g.group.empty()) return std::nullopt;
  return json::group_from_json(load(g.group));
}

IntFunction load_function(const std::string& arg, const std::optional<GroupSpec>& fallback) {
  const Json doc = load(arg);
  if (doc.is_object() && doc.contains("group")) {
    IntFunction f = json::int_function_from_json(doc);
    if (fallback && !(f.group() == *fallback))
      throw Error(ErrorCode::GroupMismatch, arg + " declares a group different from --group");
    return f;
  }
  if (!fallback) throw Error(ErrorCode::InvalidInput, arg + " has no \"group\"; pass --group");
  if (doc.is_array()) return json::int_function_from_json(Json{{"entries", doc}}, *fallback);
  return json::int_function_from_json(doc, *fallback);
}

std::int64_t size_cap(const Globals& g) { return g.size_cap ? *g.size_cap : size_cap_from_env(); }

void emit(const Globals& g, const Json& j) {
  const std::string text = j.dump(2) + "\n";
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f || !(f << text)) throw Error(ErrorCode::InvalidInput, "cannot write " + g.out);
}

int code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::NotInV:
    case ErrorCode::ReplayDiverged:
    case ErrorCode::ShiftMismatch:
    case ErrorCode::InternalInconsistency:
    case ErrorCode::NonIntegralInversion:
    case ErrorCode::InconsistentRadonData:
      return kFalsified;
    default:
      return kUsage;
  }
}

Json error_json(const Error& e) {
  Json j{{"error", std::string(error_code_name(e.code()))}, {"message", e.what()}};
  if (const auto* s = dynamic_cast<const StepError*>(&e)) j["step"] = s->step();
  return j;
}

// ---------------------------------------------------------------------------
// Radon helpers: a function on (Z/n)^r is {"n", "r", "table": [...]}, a bare
// array (with --n and --r), or an integer-function document on (Z/n)^r.

struct Table {
  std::int64_t n = 0;
  int r = 0;
  std::vector<std::int64_t> values;
};

Table load_table(const std::string& arg, std::optional<std::int64_t> n, std::optional<int> r) {
  const Json doc = load(arg);
  Table t;
  auto ints = [](const Json& a) {
    std::vector<std::int64_t> v;
    for (const auto& x : a) v.push_back(x.is_string() ? std::stoll(x.get<std::string>()) : x.get<std::int64_t>());
    return v;
  };
  if (doc.is_array() || (doc.is_object() && doc.contains("table"))) {
    t.n = doc.is_object() && doc.contains("n") ? doc["n"].get<std::int64_t>() : n.value_or(0);
    t.r = doc.is_object() && doc.contains("r") ? doc["r"].get<int>() : r.value_or(0);
    t.values = ints(doc.is_array() ? doc : doc["table"]);
  } else {
    const IntFunction f = json::int_function_from_json(doc);
    const auto& tor = f.group().torsion();
    if (tor.empty() || f.group().free_rank() != 0 ||
        std::any_of(tor.begin(), tor.end(), [&](std::int64_t m) { return m != tor[0]; }))
      throw Error(ErrorCode::InvalidInput, "function must live on (Z/n)^r");
    t.n = tor[0];
    t.r = static_cast<int>(tor.size());
    const TorusShape shape{t.n, t.r};
    t.values.assign(static_cast<std::size_t>(shape.size()), 0);
    for (const auto& [g, v] : f.entries()) t.values[static_cast<std::size_t>(shape.index(g.coords))] = v;
  }
  if (t.n < 1 || t.r < 1) throw Error(ErrorCode::InvalidInput, "need n >= 1 and r >= 1 (give --n and --r)");
  if (n && *n != t.n) throw Error(ErrorCode::InvalidInput, "--n disagrees with the input");
  if (r && *r != t.r) throw Error(ErrorCode::InvalidInput, "--r disagrees with the input");
  return t;
}

Json inversion_json(const TorusShape& s, const RadonInversion& inv) {
  return Json{{"n", s.n}, {"r", s.r}, {"scale", inv.scale}, {"scaled", inv.scaled}, {"table", inv.f}};
}

// ---------------------------------------------------------------------------

ScanChecks parse_checks(const std::string& spec) {
  if (spec == "all") return {};
  ScanChecks c{false, false, false, false};
  if (spec == "none") return c;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "v") c.v_check = true;
    else if (item == "moves") c.moves = true;
    else if (item == "fourier") c.fourier = true;
    else if (item == "sum") c.sum_rule = true;
    else throw Error(ErrorCode::InvalidInput, "unknown check '" + item + "' (use all, none or v,moves,fourier,sum)");
  }
  return c;
}

void print_fourier_table(const FourierClaim& c) {
  std::printf("n = %lld, s = %lld\n", static_cast<long long>(c.n), static_cast<long long>(c.s));
  std::printf("%6s  %s\n", "d", "verdict");
  for (const auto& d : c.per_divisor) std::printf("%6lld  %s\n", static_cast<long long>(d.d), d.holds ? "holds" : "fails");
  std::printf("overall: %s\n", c.holds() ? "holds" : "fails");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subset-sum multisets up to translation: decide, certify, cross-check"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("-g,--group", g.group, "group as JSON or a JSON file, {\"torsion\": [...], \"free_rank\": r}");
  app.add_option("--size-cap", g.size_cap, "largest |A| for subset-sum convolution (default $FSRECON_SIZE_CAP or 64)");
  app.add_option("--seed", g.seed, "seed for randomized commands")->capture_default_str();
  app.add_option("--jobs", g.jobs, "worker threads for the oracle scan")->capture_default_str();
  app.add_option("--out", g.out, "write JSON here instead of stdout");
  app.add_flag("--text", g.text, "human-readable output where available");

  std::string a_arg;
  std::string b_arg;
  std::string mu_arg;
  std::string in_arg;
  std::string cert_arg;
  std::optional<std::int64_t> n_opt;
  std::optional<int> r_opt;
  std::optional<std::int64_t> s_opt;
  std::int64_t max_size = 3;
  std::int64_t max_mult = -1;
  std::int64_t box = 2;
  std::string checks = "all";
  int trials = 10;
  bool timing = false;
  bool pairs = false;
  bool definitional = false;
  std::function<int()> run;

  auto* fs = app.add_subcommand("fs", "subset-sum multisets");
  fs->require_subcommand(1);
  auto* fs_compute = fs->add_subcommand("compute", "FS(A) with exact multiplicities");
  fs_compute->add_option("--in,--a", in_arg, "multiset A")->required();
  fs_compute->callback([&] {
    run = [&] {
      emit(g, json::to_json(fs_multiset(load_function(in_arg, global_group(g)), size_cap(g))));
      return kOk;
    };
  });
  auto* fs_shift = fs->add_subcommand("shift-between", "all s with FS(A) = FS(B) + s");
  fs_shift->add_option("--a", a_arg)->required();
  fs_shift->add_option("--b", b_arg)->required();
  fs_shift->callback([&] {
    run = [&] {
      const auto G = global_group(g);
      const IntFunction a = load_function(a_arg, G);
      const IntFunction b = load_function(b_arg, G ? G : a.group());
      const auto shifts = find_shifts(fs_multiset(a, size_cap(g)), fs_multiset(b, size_cap(g)));
      Json list = Json::array();
      for (const auto& s : shifts) list.push_back(json::to_json(s));
      emit(g, Json{{"equivalent", !shifts.empty()}, {"shifts", list}});
      return shifts.empty() ? kFalsified : kOk;
    };
  });
  auto* fs_equi = fs->add_subcommand("equidistributed", "is FS(A) minus one 0 uniform on Z/n");
  fs_equi->add_option("--in,--a", in_arg, "multiset of units mod n")->required();
  fs_equi->callback([&] {
    run = [&] {
      const IntFunction a = load_function(in_arg, global_group(g));
      try {
        const EquidistributionReport rep = check_equidistributed(a, size_cap(g));
        emit(g, json::to_json(rep));
        return rep.uniform ? kOk : kFalsified;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NotDivisible) throw;
        emit(g, Json{{"uniform", false}, {"reason", e.what()}});
        return kFalsified;
      }
    };
  });

  auto* v = app.add_subcommand("v", "the module V(G)");
  v->require_subcommand(1);
  auto* v_check_cmd = v->add_subcommand("check", "is mu in V(G)");
  v_check_cmd->add_option("--mu", mu_arg, "integer function")->required();
  v_check_cmd->add_flag("--definitional", definitional, "check the defining identities directly (finite G)");
  v_check_cmd->callback([&] {
    run = [&] {
      const IntFunction mu = load_function(mu_arg, global_group(g));
      const VMembershipReport rep = definitional ? v_check_definitional(mu) : v_check(mu);
      emit(g, json::to_json(rep));
      return rep.member ? kOk : kFalsified;
    };
  });
  auto* v_rank = v->add_subcommand("rank", "rank of V(Z/n), closed form and Smith normal form");
  v_rank->add_option("--n", n_opt)->required();
  v_rank->callback([&] {
    run = [&] {
      const RankReport rep = rank_report(*n_opt);
      emit(g, json::to_json(rep));
      return rep.snf_rank && *rep.snf_rank == rep.closed_form ? kOk : kFalsified;
    };
  });
  auto* v_gens = v->add_subcommand("generators", "generators mu(iota(alpha U_n)) - mu(iota(beta U_n))");
  v_gens->callback([&] {
    run = [&] {
      const auto G = global_group(g);
      if (!G) throw Error(ErrorCode::InvalidInput, "v generators needs --group");
      Json list = Json::array();
      const auto gens = v_generators(*G);
      for (const auto& f : gens) list.push_back(Json{{"entries", json::to_json(f)["entries"]}});
      emit(g, Json{{"group", json::to_json(*G)}, {"count", gens.size()}, {"generators", list}});
      return kOk;
    };
  });

  auto* moves = app.add_subcommand("moves", "move certificates");
  moves->require_subcommand(1);
  auto* synth = moves->add_subcommand("synth", "moves carrying A to B");
  synth->add_option("--a", a_arg)->required();
  synth->add_option("--b", b_arg)->required();
  synth->callback([&] {
    run = [&] {
      const auto G = global_group(g);
      const IntFunction a = load_function(a_arg, G);
      const IntFunction b = load_function(b_arg, G ? G : a.group());
      try {
        emit(g, json::to_json(synthesize_moves(a, b)));
        return kOk;
      } catch (const NotInVError& e) {
        Json j = json::to_json(e.report());
        j["error"] = "NotInV";
        emit(g, j);
        return kFalsified;
      }
    };
  });
  auto* verify = moves->add_subcommand("verify", "replay a certificate from A and check it ends at B");
  verify->add_option("--a", a_arg)->required();
  verify->add_option("--b", b_arg)->required();
  verify->add_option("--cert", cert_arg)->required();
  verify->callback([&] {
    run = [&] {
      const auto G = global_group(g);
      const IntFunction a = load_function(a_arg, G);
      const IntFunction b = load_function(b_arg, G ? G : a.group());
      const MoveCertificate cert = json::certificate_from_json(a.group(), load(cert_arg));
      try {
        emit(g, json::to_json(verify_certificate(a, b, cert)));
        return kOk;
      } catch (const StepError& e) {
        Json j = error_json(e);
        j["ok"] = false;
        emit(g, j);
        return kFalsified;
      }
    };
  });

  auto* decide = app.add_subcommand("decide", "is FS(A) = FS(B) + s for some s; all three tests");
  decide->add_option("--a", a_arg)->required();
  decide->add_option("--b", b_arg)->required();
  decide->callback([&] {
    run = [&] {
      const auto G = global_group(g);
      const IntFunction a = load_function(a_arg, G);
      const IntFunction b = load_function(b_arg, G ? G : a.group());
      const EquivalenceReport rep = decide_equivalence(a, b, size_cap(g));
      if (g.text) {
        std::printf("equivalent: %s\n", rep.shift_equivalent ? "yes" : "no");
        if (rep.shift) std::printf("shift: %s\n", json::to_json(*rep.shift).dump().c_str());
        if (rep.cond_iii) std::printf("certificate: %zu moves\n", rep.cond_iii->steps.size());
      } else {
        emit(g, json::to_json(rep));
      }
      return rep.shift_equivalent ? kOk : kFalsified;
    };
  });

  auto* fourier = app.add_subcommand("fourier", "cyclotomic criterion on odd Z/n");
  fourier->require_subcommand(1);
  auto* fcheck = fourier->add_subcommand("check", "per-divisor check of prod (1 + w^j)^mu(j) = w^s");
  fcheck->add_option("--n", n_opt);
  fcheck->add_option("--mu", mu_arg)->required();
  fcheck->add_option("--s", s_opt, "shift; omitted lists every s that passes");
  fcheck->callback([&] {
    run = [&] {
      std::optional<GroupSpec> G = global_group(g);
      if (!G && n_opt) G = cyclic_group(*n_opt);
      const IntFunction mu = load_function(mu_arg, G);
      if (n_opt && !(mu.group() == cyclic_group(*n_opt))) throw Error(ErrorCode::GroupMismatch, "mu is not on Z/n");
      if (!s_opt) {
        const auto shifts = fourier_shifts(mu);
        emit(g, Json{{"n", mu.group().order()}, {"shifts", shifts}});
        return shifts.empty() ? kFalsified : kOk;
      }
      const FourierClaim c = fourier_check(mu, *s_opt);
      if (g.text) print_fourier_table(c);
      else emit(g, json::to_json(c));
      return c.holds() ? kOk : kFalsified;
    };
  });

  auto* radon = app.add_subcommand("radon", "Radon transform on (Z/n)^r");
  radon->require_subcommand(1);
  auto* rt = radon->add_subcommand("transform", "fiber sums Rf(psi, c)");
  rt->add_option("--in", in_arg, "function table")->required();
  rt->add_option("--n", n_opt);
  rt->add_option("--r", r_opt);
  rt->callback([&] {
    run = [&] {
      const Table t = load_table(in_arg, n_opt, r_opt);
      emit(g, json::to_json(radon_transform(t.n, t.r, t.values)));
      return kOk;
    };
  });
  auto* ri = radon->add_subcommand("invert", "recover f from Rf exactly");
  ri->add_option("--in", in_arg, "Radon data")->required();
  ri->callback([&] {
    run = [&] {
      const RadonData d = json::radon_from_json(load(in_arg));
      emit(g, inversion_json(d.shape, radon_invert(d)));
      return kOk;
    };
  });
  auto* rr = radon->add_subcommand("roundtrip", "invert(transform(f)) = f on random f with entries in [-5, 5]");
  rr->add_option("--n", n_opt)->required();
  rr->add_option("--r", r_opt)->required();
  rr->add_option("--trials", trials)->capture_default_str();
  rr->callback([&] {
    run = [&] {
      const TorusShape shape{*n_opt, *r_opt};
      std::mt19937_64 rng(g.seed);
      std::uniform_int_distribution<std::int64_t> dist(-5, 5);
      const auto t0 = std::chrono::steady_clock::now();
      int passed = 0;
      for (int i = 0; i < trials; ++i) {
        std::vector<std::int64_t> f(static_cast<std::size_t>(shape.size()));
        for (auto& x : f) x = dist(rng);
        passed += radon_invert(radon_transform(shape.n, shape.r, f)).f == f;
      }
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      const bool ok = passed == trials;
      if (g.text)
        std::printf("%s  (Z/%lld)^%d  %d/%d trials  %.3f s\n", ok ? "PASS" : "FAIL", static_cast<long long>(shape.n),
                    shape.r, passed, trials, secs);
      else
        emit(g, Json{{"n", shape.n}, {"r", shape.r}, {"seed", g.seed}, {"trials", trials}, {"passed", passed},
                     {"result", ok ? "PASS" : "FAIL"}, {"seconds", secs}});
      return ok ? kOk : kFalsified;
    };
  });

  auto* oracle = app.add_subcommand("oracle", "brute-force cross-checks");
  oracle->require_subcommand(1);
  auto* scan = oracle->add_subcommand("scan", "all pairs of equal-size multisets up to --max-size");
  scan->add_option("--max-size", max_size)->capture_default_str();
  scan->add_option("--max-mult", max_mult, "largest multiplicity (default: max-size)");
  scan->add_option("--box", box, "free coordinates range over [-box, box]")->capture_default_str();
  scan->add_option("--checks", checks, "all, none, or a list of v,moves,fourier,sum")->capture_default_str();
  scan->add_flag("--pairs", pairs, "list every equivalent pair found");
  scan->add_flag("--timing", timing, "include wall time in the report");
  scan->callback([&] {
    run = [&] {
      const auto G = global_group(g);
      if (!G) throw Error(ErrorCode::InvalidInput, "oracle scan needs --group");
      FiberScanConfig cfg;
      cfg.group = *G;
      cfg.max_size = max_size;
      cfg.max_multiplicity = max_mult;
      cfg.box = box;
      cfg.checks = parse_checks(checks);
      cfg.jobs = g.jobs;
      cfg.collect_equivalent_pairs = pairs;
      const FiberScanReport rep = fiber_scan(cfg);
      if (g.text)
        std::printf("%llu multisets, %llu pairs, %llu equivalent, %zu discrepancies, %.2f s\n",
                    static_cast<unsigned long long>(rep.multisets), static_cast<unsigned long long>(rep.pairs_tested),
                    static_cast<unsigned long long>(rep.equivalent_pairs), rep.discrepancies.size(),
                    rep.wall_time_seconds);
      if (!g.text || !g.out.empty()) emit(g, json::to_json(rep, timing));
      return rep.discrepancies.empty() ? kOk : kFalsified;
    };
  });

  auto* uset = app.add_subcommand("uset", "U_n = <2> or <2> + -<2> data");
  uset->add_option("--n", n_opt)->required();
  uset->callback([&] {
    run = [&] {
      emit(g, json::to_json(u_set(*n_opt)));
      return kOk;
    };
  });
  auto* ofs = app.add_subcommand("ofs", "is (Z/n)^x generated by 2 and -1");
  ofs->add_option("--n", n_opt)->required();
  ofs->callback([&] {
    run = [&] {
      emit(g, Json{{"n", *n_opt}, {"in_ofs", is_in_ofs(*n_opt)}});
      return kOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (!run) return kUsage;
    if (g.jobs == 0) throw Error(ErrorCode::InvalidInput, "--jobs must be at least 1");
    return run();
  } catch (const Error& e) {
    std::cerr << "fsrecon: " << e.what() << "\n";
    const int code = code_for(e);
    if (code == kFalsified) std::cout << error_json(e).dump(2) << "\n";
    return code;
  } catch (const std::exception& e) {
    std::cerr << "fsrecon: " << e.what() << "\n";
    return kUsage;
  }
}
