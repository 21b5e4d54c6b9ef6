#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "entanglib/io.hpp"

using namespace entanglib;

namespace {

json read_json_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return json::parse(buf.str());
  }
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  json j;
  in >> j;
  return j;
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
    out << j.dump(2) << "\n";
  }
}

struct CommonFlags {
  double epsilon = 0.3;
  std::int64_t m = 0;
  std::int64_t budget = 0;
  int threads = 0;
  std::uint64_t seed = 0;
  std::string field = "complex";
  std::string in_path, out_path;
};

OptimOptions to_options(const CommonFlags& f) {
  OptimOptions o;
  o.epsilon = f.epsilon;
  o.m_override = f.m;
  o.seed = f.seed;
  o.threads = f.threads > 0 ? f.threads
                            : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (f.budget > 0) {
    o.budget = f.budget;
  } else if (const char* env = std::getenv("ENTANGLIB_BUDGET")) {
    o.budget = std::strtoll(env, nullptr, 10);
  }
  if (!(f.epsilon > 0.0 && f.epsilon < 1.0))
    throw std::invalid_argument("epsilon must lie in (0,1)");
  return o;
}

void add_common(CLI::App* cmd, CommonFlags& f, bool needs_input) {
  cmd->add_option("--epsilon", f.epsilon, "relative bracket target in (0,1)");
  cmd->add_option("--m", f.m, "grid resolution override");
  cmd->add_option("--budget", f.budget, "grid enumeration budget (points)");
  cmd->add_option("--threads", f.threads, "grid-chunk parallelism");
  cmd->add_option("--seed", f.seed, "seed for randomized helpers");
  cmd->add_option("--field", f.field, "real or complex")
      ->check(CLI::IsMember({"real", "complex"}));
  if (needs_input) cmd->add_option("--in", f.in_path, "input JSON ('-' for stdin)");
  cmd->add_option("--out", f.out_path, "output path (default stdout)");
}

int run_selftest(const OptimOptions& opts);

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified tensor norms, entanglement measures and separability checks"};
  app.require_subcommand(1);

  CommonFlags norm_flags, gme_flags, sep_flags, clique_flags, self_flags, states_flags;
  std::string norm_kind = "spectral";
  std::string emit_label;
  std::string graph_path;
  int clique_power = 1;
  double clique_kappa = 0.0;

  auto* norm_cmd = app.add_subcommand("norm", "spectral or nuclear norm bracket");
  norm_cmd->add_option("--kind", norm_kind, "spectral | nuclear")
      ->check(CLI::IsMember({"spectral", "nuclear"}));
  add_common(norm_cmd, norm_flags, true);

  auto* gme_cmd = app.add_subcommand("gme", "entanglement report for a pure state");
  add_common(gme_cmd, gme_flags, true);

  auto* sep_cmd = app.add_subcommand("sep-check", "separability verdict for a density");
  add_common(sep_cmd, sep_flags, true);

  auto* states_cmd = app.add_subcommand("states", "named state library");
  auto* states_list_cmd = states_cmd->add_subcommand("list", "list labels");
  auto* states_emit_cmd = states_cmd->add_subcommand("emit", "emit a state as JSON");
  states_emit_cmd->add_option("label", emit_label)->required();
  add_common(states_emit_cmd, states_flags, false);
  (void)states_list_cmd;
  states_cmd->require_subcommand(1);

  auto* clique_cmd = app.add_subcommand("clique", "Motzkin-Straus clique bracket");
  clique_cmd->add_option("--graph", graph_path, "adjacency JSON")->required();
  clique_cmd->add_option("--power", clique_power, "tensor power of the clique form");
  clique_cmd->add_option("--kappa", clique_kappa, "known clique number for comparison");
  add_common(clique_cmd, clique_flags, false);

  auto* self_cmd = app.add_subcommand("selftest", "run the built-in oracle suite");
  add_common(self_cmd, self_flags, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*norm_cmd) {
      OptimOptions opts = to_options(norm_flags);
      ParsedTensor in = parse_tensor_json(read_json_input(norm_flags.in_path));
      json out;
      if (in.hermitian) {
        const auto& h = *in.hermitian;
        if (norm_kind == "spectral") {
          NormEstimate est = h.structure() == Structure::bisymmetric ||
                                     h.structure() == Structure::realsymmetric
                                 ? spectral_norm_bisym(h, opts)
                                 : spec_norm_hermitian(h, opts);
          out = estimate_to_json(est);
        } else {
          NuclearResult nr =
              h.structure() == Structure::bisymmetric ||
                      h.structure() == Structure::realsymmetric
                  ? nuclear_norm_grid_bisym(
                        h, opts.m_override > 0 ? opts.m_override : 3, opts)
                  : nuclear_norm_product(h, opts.m_override > 0 ? opts.m_override : 3,
                                         opts);
          out = estimate_to_json(nr.estimate, &nr.decomposition);
        }
      } else if (in.symmetric &&
                 (norm_flags.field == "real" || in.symmetric->field() == FieldTag::real)) {
        SymTensor s = *in.symmetric;
        if (norm_flags.field == "real") {
          if (!sym_to_dense(s).is_real(1e-14))
            throw std::invalid_argument("--field real requires a real tensor");
          Vec c = s.coeffs();
          s = SymTensor(s.n(), s.d(), c, FieldTag::real);
        }
        out = norm_kind == "spectral"
                  ? estimate_to_json(spectral_norm(s, opts))
                  : [&] {
                      NuclearResult nr = nuclear_norm(s, opts);
                      return estimate_to_json(nr.estimate, &nr.decomposition);
                    }();
      } else if (in.symmetric) {
        out = norm_kind == "spectral"
                  ? estimate_to_json(spectral_norm(*in.symmetric, opts))
                  : [&] {
                      NuclearResult nr = nuclear_norm(*in.symmetric, opts);
                      return estimate_to_json(nr.estimate, &nr.decomposition);
                    }();
      } else if (in.dense) {
        if (in.dense->order() == 2) {
          MatrixNorms mn = matrix_norms(*in.dense);
          NormEstimate est;
          est.lower = est.upper = norm_kind == "spectral" ? mn.spectral : mn.nuclear;
          out = estimate_to_json(est);
        } else if (norm_kind == "spectral") {
          out = estimate_to_json(spectral_norm_dense(
              *in.dense, norm_flags.m > 0 ? norm_flags.m : 6, opts));
        } else {
          throw std::invalid_argument(
              "nuclear norms of general dense tensors are out of scope; "
              "use a symmetric, Hermitian or d=2 input");
        }
      }
      emit(out, norm_flags.out_path);
      std::cerr << "norm " << norm_kind << ": [" << out["lower"] << ", " << out["upper"]
                << "]\n";
    } else if (*gme_cmd) {
      OptimOptions opts = to_options(gme_flags);
      ParsedTensor in = parse_tensor_json(read_json_input(gme_flags.in_path));
      EntanglementReport rep;
      if (in.symmetric)
        rep = gme(*in.symmetric, opts);
      else if (in.dense)
        rep = gme(*in.dense, opts);
      else
        throw std::invalid_argument("gme expects a pure state tensor");
      json out = report_to_json(rep);
      emit(out, gme_flags.out_path);
      std::cerr << "gme bracket: " << out["gme"] << "\n";
    } else if (*sep_cmd) {
      OptimOptions opts = to_options(sep_flags);
      ParsedTensor in = parse_tensor_json(read_json_input(sep_flags.in_path));
      if (!in.hermitian)
        throw std::invalid_argument("sep-check expects a Hermitian density JSON");
      DensityTensor rho = make_density(*in.hermitian);
      SeparabilityVerdict v;
      switch (in.hermitian->structure()) {
        case Structure::realsymmetric:
          v = real_strong_separability_sym(rho, opts);
          break;
        case Structure::bisymmetric:
          v = strong_separability_bisym(rho, opts);
          break;
        default:
          v = separability_via_nuclear(rho, opts);
      }
      json out = verdict_to_json(v);
      emit(out, sep_flags.out_path);
      std::cerr << "verdict: " << sep_status_name(v.status) << "\n";
    } else if (*states_cmd) {
      if (*states_list_cmd) {
        emit(json(state_labels()), "");
      } else {
        NamedState st = make_state(emit_label);
        emit(state_to_json(st), states_flags.out_path);
        std::cerr << "emitted " << st.label << "\n";
      }
    } else if (*clique_cmd) {
      OptimOptions opts = to_options(clique_flags);
      json g = read_json_input(graph_path);
      const auto& rows = g.at("adjacency");
      const int n = static_cast<int>(rows.size());
      RMat adj(n, n);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) adj(r, c) = rows[r][c].get<double>();
      NamedState st = clique_tensor(adj, clique_power, clique_kappa);
      SymTensor s(st.symmetric->n(), st.symmetric->d(), st.symmetric->coeffs(),
                  FieldTag::real);
      NormEstimate est = spectral_norm(s, opts);
      json out = estimate_to_json(est);
      if (clique_kappa > 0.0) {
        const double ms = std::pow(1.0 - 1.0 / clique_kappa, clique_power);
        out["motzkin_straus"] = ms;
        out["bracket_contains_value"] = est.lower <= ms + 1e-9 && ms <= est.upper + 1e-9;
      }
      emit(out, clique_flags.out_path);
      std::cerr << "clique bracket: [" << est.lower << ", " << est.upper << "]\n";
    } else if (*self_cmd) {
      return run_selftest(to_options(self_flags));
    }
  } catch (const std::length_error& e) {
    std::cerr << json{{"error", "budget"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "validation"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return 0;
}

namespace {

int run_selftest(const OptimOptions& opts) {
  int failures = 0;
  json results = json::array();
  auto check = [&](const std::string& name, bool ok, const std::string& detail) {
    results.push_back(json{{"name", name}, {"pass", ok}, {"detail", detail}});
    std::cerr << (ok ? "PASS  " : "FAIL  ") << name << "  " << detail << "\n";
    if (!ok) ++failures;
  };

  {
    auto w = w_state();
    OptimOptions o = opts;
    o.m_override = 5;
    NormEstimate est = spectral_norm(*w.symmetric, o);
    std::ostringstream d;
    d << "bracket [" << est.lower << "," << est.upper << "] vs 2/3";
    check("w-spectral", est.lower <= 2.0 / 3.0 + 1e-9 && 2.0 / 3.0 <= est.upper + 1e-9 &&
                            std::abs(est.lower - 2.0 / 3.0) < 1e-6,
          d.str());
  }
  {
    auto terms = w_state_zeta_decomposition();
    Vec acc = Vec::Zero(8);
    double weight = 0.0;
    for (const auto& [coef, v] : terms) {
      std::vector<Vec> reps(3, v);
      acc += coef * rank_one(reps).entries();
      weight += std::abs(coef) * std::pow(v.norm(), 3);
    }
    auto w = w_state();
    const double resid = (acc - w.dense.entries()).norm();
    std::ostringstream d;
    d << "residual " << resid << ", weight " << weight;
    check("w-zeta-decomposition", resid < 1e-12 && std::abs(weight - 1.5) < 1e-12, d.str());
  }
  {
    auto t3 = t_lambda(3, 1.0);
    MatrixNorms mn = matrix_norms(unfold(t3.dense, {0}));
    check("t3-unfold-sigma1", std::abs(mn.spectral - 1.0 / std::sqrt(2.0)) < 1e-12,
          "sigma1 = " + std::to_string(mn.spectral));
  }
  {
    CoveringGrid g11(1, 1, FieldTag::real);
    CoveringGrid g12(1, 2, FieldTag::real);
    check("covering-counts", g11.count() == 2 && g12.count() == 24,
          "C(1,1) and C(1,2) raw counts");
  }
  {
    auto bell = bipartite_max_entangled(2, 2);
    auto rho = pure_density(bell.dense);
    auto rep = ppt_check(rho);
    check("bell-ppt-fails", !rep.all_ok,
          "worst eigenvalue " + std::to_string(rep.worst_eigenvalue));
  }
  {
    const double exact = sphere_moment_exact({4, 0});
    const double mc = sphere_moment_mc({4, 0}, 100000, opts.seed);
    check("moment-x1^4", std::abs(exact - 0.375) < 1e-15 && std::abs(mc - exact) < 0.01,
          "exact 3/8, mc " + std::to_string(mc));
  }
  {
    auto p = identity_on_sym(2, 3);
    check("sym-projector-trace", std::abs(trace(p) - 4.0) < 1e-12, "trace = C(4,3)");
  }
  {
    // empirical maximum of ||X (x) conj X||_nuc over a couple of library
    // states (upper ends of the product LP); reported, not asserted
    OptimOptions o = opts;
    o.m_override = 3;
    double best = 0.0;
    for (const char* label : {"bell", "w"}) {
      auto st = make_state(label);
      if (st.dense.order() != 2) continue;
      auto rho = pure_density(st.dense);
      auto nr = nuclear_norm_product(rho.base(), 3, o);
      best = std::max(best, nr.estimate.upper);
    }
    std::ostringstream d;
    d << "empirical max ||X(x)conj X||_nuc upper over bipartite library states: "
      << best;
    check("beta-prime-empirical", true, d.str());
  }

  std::cout << json{{"failures", failures}, {"results", results}}.dump(2) << "\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace
