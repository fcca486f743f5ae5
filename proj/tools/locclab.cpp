#include <cstdio>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "locclab/config.hpp"
#include "locclab/critical.hpp"
#include "locclab/errors.hpp"
#include "locclab/io.hpp"
#include "locclab/multicopy.hpp"
#include "locclab/osbp.hpp"
#include "locclab/report.hpp"
#include "locclab/symmetry.hpp"
#include "locclab/transform.hpp"
#include "locclab/verification.hpp"
#include "locclab/zoo.hpp"

namespace {

using namespace locclab;
using io::Json;

enum Exit : int { kPass = 0, kFail = 1, kError = 2, kUndecided = 3 };

struct Globals {
  std::uint64_t seed = 7;
  std::optional<double> tol;
  std::optional<int> max_iter;
  std::string format = "json";
  std::optional<unsigned> threads;
  std::optional<std::size_t> size_cap;
};

// "-" reads stdin. Accepts a bare QSTATE or any object carrying one under
// "critical" (normal-form output), so commands can be chained.
Json load_json(const std::string& path) {
  if (path == "-") {
    std::string text((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
    try {
      return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("stdin: ") + e.what());
    }
  }
  return io::read_json_file(path);
}

QuditState load_state(const std::string& path) {
  const Json j = load_json(path);
  if (j.is_object() && !j.contains("amps") && j.contains("critical")) return io::state_from_json(j.at("critical"));
  return io::state_from_json(j);
}

LocalOperator load_operator(const std::string& path) { return io::operator_from_json(load_json(path)); }

void print_text(const Json& j, const std::string& prefix = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix + it.key();
    if (it->is_object() && it->size() <= 8 && !it->contains("amps") && !it->contains("factors")) {
      print_text(*it, key + ".");
    } else if (it->is_string()) {
      std::cout << key << ": " << it->get<std::string>() << "\n";
    } else if (it->is_array() && it->size() > 16) {
      std::cout << key << ": [" << it->size() << " entries]\n";
    } else {
      std::cout << key << ": " << it->dump() << "\n";
    }
  }
}

void emit(const Json& j, const Globals& g, const std::string& out) {
  if (!out.empty() && out != "-") {
    io::write_json_file(out, j);
    return;
  }
  if (g.format == "text" && j.is_object()) {
    print_text(j);
  } else {
    std::cout << j.dump() << "\n";
  }
}

std::optional<FamilyHint> hint_from(const std::string& family, int n, int d) {
  if (family.empty()) return std::nullopt;
  const auto f = parse_family(family);
  if (!f) throw InvalidArgument("unknown family '" + family + "'");
  FamilyHint h{*f, n, d};
  if (*f == Family::Phi4) h.n = 4;
  if (*f == Family::Phi6) h.n = 6;
  if (*f == Family::Tripartite) h.n = 3;
  return h;
}

QuditState build_state(const std::string& family, int n, int d, std::optional<int> k, std::optional<int> j) {
  const auto f = parse_family(family);
  if (!f) throw InvalidArgument("unknown family '" + family + "'");
  auto need_n = [&](int fixed) {
    if (n != 0 && n != fixed) {
      throw InvalidArgument(family + " is defined for n = " + std::to_string(fixed) + " only");
    }
  };
  switch (*f) {
    case Family::Psi:
      return psi_nd(n, d);
    case Family::Phi4:
      need_n(4);
      return phi_4d(d);
    case Family::Phi6:
      need_n(6);
      return phi_6d(d);
    case Family::Ghz:
      return ghz(n, d);
    case Family::Tripartite:
      need_n(3);
      return tripartite_state(tripartite_unitaries(d));
    case Family::Dicke:
      if (!k || !j) throw InvalidArgument("dicke needs --k and --j");
      return dicke(DickeSpec{n, d, *k, *j});
  }
  throw InvalidArgument("unknown family");
}

int exit_for(Decision d) {
  switch (d) {
    case Decision::True: return kPass;
    case Decision::False: return kFail;
    case Decision::Undecided: return kUndecided;
  }
  return kError;
}

void fail_json(const std::string& kind, const std::string& message) {
  Json e;
  e["error"] = kind;
  e["message"] = message;
  std::cerr << e.dump() << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"locclab: local transformations of multipartite qudit states"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Master RNG seed")->capture_default_str();
  app.add_option("--tol", g.tol, "Tolerance override")->check(CLI::PositiveNumber);
  app.add_option("--max-iter", g.max_iter, "Iteration cap")->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (default: LOCCLAB_THREADS or 1)")->check(CLI::Range(1u, 1024u));
  app.add_option("--size-cap", g.size_cap, "Amplitude cap, at most 2^22")->check(CLI::Range(std::size_t{2}, kMaxSizeCap));

  int code = kPass;
  std::function<void()> action;

  // make-state
  auto* make = app.add_subcommand("make-state", "Write a family state as QSTATE JSON");
  std::string family;
  int n = 0, d = 0;
  std::optional<int> k, j;
  std::string out;
  make->add_option("--family", family, "psi|phi4|phi6|ghz|tripartite|dicke")->required();
  make->add_option("--n", n, "Number of parties");
  make->add_option("--d", d, "Local dimension")->required();
  make->add_option("--k", k, "Dicke excitation count");
  make->add_option("--j", j, "Dicke level");
  make->add_option("--out", out, "Output file (default stdout)");
  make->callback([&] {
    action = [&] { emit(io::state_to_json(build_state(family, n, d, k, j)), g, out); };
  });

  // check-critical
  auto* crit = app.add_subcommand("check-critical", "Criticality residual of a state");
  std::string in;
  crit->add_option("--in", in, "QSTATE file ('-' for stdin)")->required();
  crit->callback([&] {
    action = [&] {
      const QuditState s = load_state(in);
      const auto c = is_critical(s, g.tol.value_or(1e-10));
      Json r;
      r["critical"] = c.critical;
      r["residual"] = c.residual;
      r["tol"] = g.tol.value_or(1e-10);
      emit(r, g, "");
      code = c.critical ? kPass : kFail;
    };
  });

  // normal-form
  auto* nf = app.add_subcommand("normal-form", "Critical representative of the orbit closure");
  nf->add_option("--in", in, "QSTATE file ('-' for stdin)")->required();
  nf->add_option("--out", out, "Output file (default stdout)");
  nf->callback([&] {
    action = [&] {
      const auto r = normal_form(load_state(in), g.tol.value_or(1e-10), g.max_iter.value_or(10000));
      emit(io::to_json(r), g, out);
      code = r.status == NormalFormStatus::Converged ? kPass
             : r.status == NormalFormStatus::SingularReduction ? kFail
                                                                : kUndecided;
    };
  });

  // stab-cert
  auto* cert = app.add_subcommand("stab-cert", "Numerical evidence about the local stabilizer");
  int restarts = 50;
  cert->add_option("--in", in, "QSTATE file ('-' for stdin)")->required();
  cert->add_option("--family", family, "Family hint enabling formula checks");
  cert->add_option("--n", n, "Hint: number of parties");
  cert->add_option("--d", d, "Hint: local dimension");
  cert->add_option("--restarts", restarts, "Heuristic search restarts")->capture_default_str()->check(CLI::NonNegativeNumber);
  cert->add_option("--out", out, "Output file (default stdout)");
  cert->callback([&] {
    action = [&] {
      const QuditState s = load_state(in);
      auto hint = hint_from(family, n == 0 ? s.parties() : n, d == 0 ? s.dim() : d);
      SearchOptions so;
      so.restarts = restarts;
      so.seed = g.seed;
      if (g.max_iter) so.max_sweeps = *g.max_iter;
      const auto c = certify_trivial_stabilizer(s, hint, so);
      emit(io::to_json(c), g, out);
      code = c.verdict == Verdict::EvidenceTrivial ? kPass : c.verdict == Verdict::NontrivialFound ? kFail : kUndecided;
    };
  });

  // pmax
  auto* pm = app.add_subcommand("pmax", "Optimal success probability psi -> h psi");
  std::string psi_path, phi_path, h_path;
  pm->add_option("--psi", psi_path, "Normalized QSTATE file")->required();
  pm->set_help_flag("--help", "Print this help message and exit");
  pm->add_option("--h", h_path, "LOCALOP file")->required();
  pm->callback([&] {
    action = [&] {
      const auto r = pmax(load_state(psi_path), load_operator(h_path));
      emit(io::to_json(r), g, "");
    };
  });

  // lu-equiv
  auto* lu = app.add_subcommand("lu-equiv", "Decide local-unitary equivalence of two states");
  std::string a_path, b_path;
  int align_restarts = 100;
  lu->add_option("--a", a_path, "QSTATE file")->required();
  lu->add_option("--b", b_path, "QSTATE file")->required();
  lu->add_option("--restarts", align_restarts, "Alignment restarts")->capture_default_str()->check(CLI::PositiveNumber);
  lu->callback([&] {
    action = [&] {
      LuEquivOptions lo;
      lo.tol = g.tol.value_or(lo.tol);
      lo.max_iter = g.max_iter.value_or(lo.max_iter);
      lo.alignment.seed = g.seed;
      lo.alignment.restarts = align_restarts;
      const auto r = lu_equiv_states(load_state(a_path), load_state(b_path), lo);
      emit(io::to_json(r), g, "");
      code = exit_for(r.decision);
    };
  });

  // sep-feas
  auto* sep = app.add_subcommand("sep-feas", "Feasibility of sum_k p_k S_k^dag H S_k = r I");
  std::string inst_path;
  sep->add_option("--inst", inst_path, "Instance JSON {H, symmetries, r}")->required();
  sep->callback([&] {
    action = [&] {
      SepOptions so;
      so.tol = g.tol.value_or(so.tol);
      const auto r = sep_feasible(io::sep_instance_from_json(load_json(inst_path)), so);
      emit(io::to_json(r), g, "");
      code = r.feasible ? kPass : kFail;
    };
  });

  // multicopy
  auto* mc = app.add_subcommand("multicopy", "P(at least m of k copies succeed)");
  double p = 0.0;
  int copies = 0, m = 0;
  mc->add_option("--p", p, "Single-copy probability")->required();
  mc->add_option("--k", copies, "Copies")->required();
  mc->add_option("--m", m, "Required successes")->required();
  mc->callback([&] {
    action = [&] {
      Json r;
      r["p"] = p;
      r["k"] = copies;
      r["m"] = m;
      r["lower_bound"] = multicopy_lower_bound(p, copies, m);
      emit(r, g, "");
    };
  });

  // rate-bounds
  auto* rb = app.add_subcommand("rate-bounds", "Lower bounds on the asymptotic conversion rate");
  rb->add_option("--psi", psi_path, "Source QSTATE")->required();
  rb->add_option("--phi", phi_path, "Target QSTATE")->required();
  rb->set_help_flag("--help", "Print this help message and exit");
  rb->add_option("--h", h_path, "Filter with phi = h psi (enables the pmax bound)");
  rb->callback([&] {
    action = [&] {
      std::optional<LocalOperator> h;
      if (!h_path.empty()) h = load_operator(h_path);
      emit(io::to_json(rate_lower_bounds(load_state(psi_path), load_state(phi_path), h)), g, "");
    };
  });

  // osbp-sim
  auto* os = app.add_subcommand("osbp-sim", "Monte Carlo run of the one-successful-branch protocol");
  std::int64_t shots = 100000;
  os->add_option("--psi", psi_path, "Normalized QSTATE")->required();
  os->set_help_flag("--help", "Print this help message and exit");
  os->add_option("--h", h_path, "LOCALOP filter")->required();
  os->add_option("--shots", shots, "Shots")->capture_default_str()->check(CLI::PositiveNumber);
  os->callback([&] {
    action = [&] {
      const QuditState psi = load_state(psi_path);
      const OsbpProtocol proto = build_osbp(load_operator(h_path), psi);
      emit(io::to_json(simulate(proto, psi, shots, g.seed)), g, "");
    };
  });

  // verify-paper
  auto* vp = app.add_subcommand("verify-paper", "Run the acceptance battery");
  std::string profile = "quick";
  std::string fixtures;
  vp->add_option("--profile", profile, "quick (A1-A6) or full (A1-A10)")
      ->check(CLI::IsMember({"quick", "full"}))
      ->capture_default_str();
  vp->add_option("--fixtures", fixtures, "Directory with the A10 fixtures (default: regenerate)");
  vp->add_option("--out", out, "Report file (default stdout)");
  vp->callback([&] {
    action = [&] {
      VerificationOptions vo;
      vo.profile = profile == "full" ? Profile::Full : Profile::Quick;
      vo.seed = g.seed;
      vo.fixture_dir = fixtures;
      if (g.format == "text") {
        vo.on_result = [](const CriterionResult& r) {
          std::cout << r.id << " " << (r.passed ? "PASS" : "FAIL") << " (" << r.seconds << " s) " << r.detail << std::endl;
        };
      }
      const auto rep = verify_paper(vo);
      if (g.format == "text") {
        std::cout << (rep.all_passed() ? "all criteria passed" : "some criteria FAILED") << "\n";
        if (!out.empty()) io::write_json_file(out, rep.to_json());
      } else {
        emit(rep.to_json(), g, out);
      }
      code = rep.all_passed() ? kPass : kFail;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    fail_json("UsageError", e.what());
    return kError;
  }

  try {
    if (g.threads) set_thread_count(*g.threads);
    if (g.size_cap) set_size_cap(*g.size_cap);
    if (action) action();
  } catch (const Error& e) {
    fail_json(e.kind(), e.what());
    return kError;
  } catch (const nlohmann::json::exception& e) {
    fail_json("ParseError", e.what());
    return kError;
  } catch (const std::exception& e) {
    fail_json("InternalError", e.what());
    return kError;
  }
  std::cout.flush();
  return code;
}
