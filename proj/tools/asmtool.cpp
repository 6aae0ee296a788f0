// asmtool: solvers, generators and verifiers for almost-stable matching
// problems. One binary, subcommands; reports are flat key=value lines;
// exit codes: 0 = yes/success, 1 = no, 2 = input error, 3 = internal
// failure.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "almost_stable/core.hpp"
#include "almost_stable/fpt.hpp"
#include "almost_stable/knapsack.hpp"
#include "almost_stable/oracle.hpp"
#include "almost_stable/reductions.hpp"
#include "almost_stable/stable.hpp"
#include "almost_stable/usfam.hpp"

namespace fs = std::filesystem;
using namespace almost_stable;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  long long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

int run_solve_stable(const std::string& instance_path, const std::string& side,
                     const std::string& out_path) {
  auto inst = load_instance(instance_path);
  auto m = gale_shapley(inst, side == "B" ? Side::B : Side::A);
  save_matching(out_path, m);
  std::cout << "matching=" << out_path << "\n";
  std::cout << "size=" << m.size() << "\n";
  return 0;
}

int run_solve_asm_oracle(const std::string& instance_path, int k, int t,
                         const std::string& out_path, int edge_cap) {
  Timer timer;
  auto inst = load_instance(instance_path);
  OracleOptions opts;
  opts.edge_cap = edge_cap;
  auto witness = oracle_asm(inst, k, t, opts);
  std::cout << "command=solve-asm-oracle\n";
  std::cout << "answer=" << (witness ? "yes" : "no") << "\n";
  if (witness) {
    save_matching(out_path, *witness);
    std::cout << "certificate=" << out_path << "\n";
    std::cout << "size=" << witness->size() << "\n";
  }
  std::cout << "wall_ms=" << timer.ms() << "\n";
  return witness ? 0 : 1;
}

int run_solve_lsasm(const std::string& instance_path, const std::string& matching_path,
                    int k, int q, int t, const std::string& mode, std::uint64_t seed,
                    std::int64_t reps, const std::string& out_path, int edge_cap,
                    int threads) {
  (void)threads;  // single worker; the flag caps future parallelism
  Timer timer;
  auto inst = load_instance(instance_path);
  auto mu = load_matching(matching_path, inst);

  bool yes = false;
  std::optional<Matching> eta;
  SolveStats stats;
  std::string caveats;

  if (mode == "oracle") {
    if (!is_stable(inst, mu)) throw Error("MuNotStable", "matching file is not stable");
    OracleOptions opts;
    opts.edge_cap = edge_cap;
    auto witness = oracle_lsasm(inst, mu, k, q, t, opts);
    yes = witness.has_value();
    if (witness) eta = std::move(witness);
  } else if (mode == "random") {
    auto query = LsAsmQuery::make(inst, mu, k, q, t);
    SolveOptions opts;
    opts.seed = seed;
    if (reps > 0) opts.repetitions = reps;
    auto res = solve_randomized(query, opts);
    yes = res.yes;
    eta = std::move(res.eta);
    stats = res.stats;
    if (stats.repetition_cap_exceeded) caveats = "RepetitionCapExceeded";
  } else if (mode == "derand") {
    auto query = LsAsmQuery::make(inst, mu, k, q, t);
    SolveOptions opts;
    opts.seed = seed;
    auto res = solve_derandomized(query, opts);
    yes = res.yes;
    eta = std::move(res.eta);
    stats = res.stats;
  } else {
    throw InputError("BadMode", "expected --mode oracle|random|derand");
  }

  if (yes) {
    // independent re-verification of the certificate
    if (eta->size() < mu.size() + t ||
        static_cast<int>(symmetric_difference(mu, *eta).size()) > q ||
        static_cast<int>(blocking_edges(inst, *eta).size()) > k)
      throw InternalError("BadCertificate", "certificate failed reverification");
    save_matching(out_path, *eta);
  }

  std::cout << "command=solve-lsasm\n";
  std::cout << "mode=" << mode << "\n";
  std::cout << "answer=" << (yes ? "yes" : "no") << "\n";
  if (yes) std::cout << "certificate=" << out_path << "\n";
  std::cout << "repetitions=" << stats.repetitions_used << "\n";
  std::cout << "pairs=" << stats.pairs_tried << "\n";
  std::cout << "family_vertices=" << stats.family_vertex_size << "\n";
  std::cout << "family_edges=" << stats.family_edge_size << "\n";
  std::cout << "components=" << stats.components_seen << "\n";
  std::cout << "knapsack_cells=" << static_cast<std::int64_t>(k + 1) * (q + 1) << "\n";
  std::cout << "caveats=" << caveats << "\n";
  std::cout << "wall_ms=" << timer.ms() << "\n";
  return yes ? 0 : 1;
}

int run_usfam(int n, int p, int q, const std::string& mode_name, std::uint64_t seed,
              bool verify, const std::string& out_path) {
  auto mode = parse_family_mode(mode_name);
  auto fam = build_lopsided_family(n, p, q, mode, seed);
  std::ostringstream sets;
  for (const auto& f : fam.sets) {
    for (std::size_t i = 0; i < f.size(); ++i) sets << (i ? " " : "") << f[i];
    sets << "\n";
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw InputError("FileNotFound", "cannot write " + out_path);
    out << sets.str();
  } else {
    std::cout << sets.str();
  }
  std::cout << "size=" << fam.sets.size() << "\n";
  if (verify) {
    auto res = verify_lopsided(fam);
    std::cout << "verified=" << (res.ok ? "true" : "false") << "\n";
    if (!res.ok) return 1;
  } else {
    std::cout << "verified=skipped\n";
  }
  return 0;
}

void write_params(const fs::path& dir, const ReductionArtifacts& art) {
  std::ofstream out(dir / "params.txt");
  out << "type=" << to_string(art.kind) << "\n";
  out << "k=" << art.source.k << "\n";
  out << "kprime=" << art.k_prime << "\n";
  out << "t=" << art.t << "\n";
  out << "q=" << art.q << "\n";
  out << "vertices=" << art.instance.num_agents() << "\n";
  out << "edges=" << art.instance.edge_count() << "\n";
  if (art.kind == ReductionKind::Asm) {
    out << "n=" << art.source.parts[1].size() << "\n";
    out << "m=" << art.source.edge_ids_between(1, 2).size() << "\n";
    out << "r=" << *art.source.regular_degree << "\n";
  }
}

void write_maps(const fs::path& dir, const ReductionArtifacts& art) {
  std::ofstream out(dir / "maps.tsv");
  out << "name\tside\tindex\n";
  for (int a = 1; a <= art.instance.num_a(); ++a)
    out << art.name_a[a] << "\ta\t" << a << "\n";
  for (int b = 1; b <= art.instance.num_b(); ++b)
    out << art.name_b[b] << "\tb\t" << b << "\n";
}

ReductionArtifacts build_artifacts(const McqInstance& mcq, const std::string& kind) {
  return kind == "asm-from-mcq" ? build_asm_reduction(mcq) : build_lsasm_reduction(mcq);
}

int run_gen(const std::string& kind, const std::string& mcq_path,
            const std::string& out_dir, bool pad, int regular_degree) {
  auto mcq = load_mcq(mcq_path);
  if (regular_degree > 0) mcq.regular_degree = regular_degree;
  if (pad) mcq = pad_mcq(mcq);
  auto art = build_artifacts(mcq, kind);

  fs::path dir(out_dir);
  fs::create_directories(dir);
  {
    std::ofstream f(dir / "instance.asm");
    write_instance(f, art.instance);
  }
  save_matching((dir / "mu.matching").string(), art.mu);
  write_params(dir, art);
  write_maps(dir, art);
  {
    std::ofstream f(dir / "source.mcq");
    write_mcq(f, art.source);
  }
  std::cout << "type=" << to_string(art.kind) << "\n";
  std::cout << "vertices=" << art.instance.num_agents() << "\n";
  std::cout << "mu=" << art.mu.size() << "\n";
  std::cout << "kprime=" << art.k_prime << "\n";
  std::cout << "q=" << art.q << "\n";
  std::cout << "t=" << art.t << "\n";
  std::cout << "dir=" << out_dir << "\n";
  return 0;
}

std::vector<int> parse_clique(const std::string& spec) {
  std::vector<int> verts;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) verts.push_back(std::stoi(tok));
  return verts;
}

int run_verify_reduction(const std::string& dir_path, const std::string& clique_spec) {
  fs::path dir(dir_path);
  auto mcq = load_mcq((dir / "source.mcq").string());

  std::unordered_map<std::string, std::string> params;
  {
    std::ifstream f(dir / "params.txt");
    if (!f) throw InputError("FileNotFound", (dir / "params.txt").string());
    std::string line;
    while (std::getline(f, line)) {
      auto eq = line.find('=');
      if (eq != std::string::npos) params[line.substr(0, eq)] = line.substr(eq + 1);
    }
  }
  bool is_asm = params["type"] == "asm";
  if (is_asm && params.count("r")) mcq.regular_degree = std::stoi(params["r"]);
  auto art = is_asm ? build_asm_reduction(mcq) : build_lsasm_reduction(mcq);

  int failures = 0;
  auto check = [&](const std::string& name, bool ok) {
    std::cout << "check_" << name << "=" << (ok ? "pass" : "fail") << "\n";
    if (!ok) ++failures;
  };

  auto disk_instance = load_instance((dir / "instance.asm").string());
  auto disk_mu = load_matching((dir / "mu.matching").string(), disk_instance);
  check("instance_reproducible",
        instance_to_string(disk_instance) == instance_to_string(art.instance));
  check("mu_reproducible", disk_mu.edges() == art.mu.edges());
  check("bipartite", bipartition_exists(art.instance));
  check("mu_stable", blocking_edges(art.instance, art.mu).empty());
  check("params_kprime", std::stoll(params["kprime"]) == art.k_prime);
  check("params_q", std::stoll(params["q"]) == art.q);
  check("params_t", std::stoll(params["t"]) == art.t);
  if (is_asm) {
    int k = mcq.k;
    int n = static_cast<int>(mcq.parts[1].size());
    int m = static_cast<int>(mcq.edge_ids_between(1, 2).size());
    int r = *mcq.regular_degree;
    check("vertex_count", art.instance.num_agents() == asm_vertex_count(k, n, m, r));
    check("mu_size", art.mu.size() == asm_mu_size(k, n, m, r));
  } else {
    check("vertex_count",
          art.instance.num_agents() ==
              lsasm_vertex_count(mcq.k, mcq.num_vertices(), mcq.num_edges()));
    check("mu_size", art.mu.size() == lsasm_mu_size(mcq.num_vertices(), mcq.num_edges()));
  }

  if (!clique_spec.empty()) {
    auto clique = parse_clique(clique_spec);
    check("clique", is_multicolored_clique(mcq, clique));
    auto eta = is_asm ? embed_clique_asm(art, clique) : embed_clique_lsasm(art, clique);
    check("eta_size", eta.size() == art.mu.size() + art.t);
    check("eta_blocking",
          static_cast<std::int64_t>(blocking_edges(art.instance, eta).size()) ==
              art.k_prime);
    check("eta_symdiff",
          static_cast<std::int64_t>(symmetric_difference(art.mu, eta).size()) == art.q);
    auto [s, es] = is_asm ? extract_clique_asm(art, eta) : extract_clique_lsasm(art, eta);
    std::vector<int> want = clique;
    std::sort(want.begin(), want.end());
    check("roundtrip_vertices", s == want);
    check("roundtrip_edges",
          static_cast<std::int64_t>(es.size()) == art.k_prime - mcq.k);
  }
  std::cout << "failures=" << failures << "\n";
  return failures == 0 ? 0 : 1;
}

int run_solve_2dkp(const std::string& items_path, std::int64_t c1, std::int64_t c2,
                   std::int64_t p) {
  KnapsackInstance inst;
  std::ifstream f(items_path);
  if (!f) throw InputError("FileNotFound", items_path);
  std::string line;
  while (std::getline(f, line)) {
    std::istringstream ls(line);
    KnapsackItem item;
    if (ls >> item.a >> item.b >> item.p) inst.items.push_back(item);
  }
  inst.c1 = c1;
  inst.c2 = c2;
  inst.p = p;
  auto z = solve_2dkp(inst);
  std::cout << "answer=" << (z ? "yes" : "no") << "\n";
  if (z) {
    std::cout << "selection=";
    for (std::size_t i = 0; i < z->size(); ++i) std::cout << (i ? "," : "") << (*z)[i];
    std::cout << "\n";
  }
  return z ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"almost-stable matching toolkit"};
  app.require_subcommand(1);

  std::string instance_path, matching_path, out_path, mode, side = "A";
  std::string mcq_path, out_dir, dir_path, clique_spec, items_path;
  int k = 0, q = 0, t = 0, n = 0, p = 0, qq = 0;
  int edge_cap = 24, threads = 1, regular_degree = 0;
  std::uint64_t seed = 0;
  std::int64_t reps = 0, c1 = 0, c2 = 0, target = 0;
  bool verify = false, pad = false;

  auto* stable_cmd = app.add_subcommand("solve-stable", "deferred-acceptance stable matching");
  stable_cmd->add_option("--instance", instance_path)->required();
  stable_cmd->add_option("--side", side)->check(CLI::IsMember({"A", "B"}));
  stable_cmd->add_option("--out", out_path)->default_val("stable.matching");

  auto* asm_cmd = app.add_subcommand("solve-asm-oracle", "brute-force ASM ground truth");
  asm_cmd->add_option("--instance", instance_path)->required();
  asm_cmd->add_option("-k", k)->required();
  asm_cmd->add_option("-t", t)->required();
  asm_cmd->add_option("--out", out_path)->default_val("eta.matching");
  asm_cmd->add_option("--edge-cap", edge_cap);

  auto* ls_cmd = app.add_subcommand("solve-lsasm", "local-search ASM solvers");
  ls_cmd->add_option("--instance", instance_path)->required();
  ls_cmd->add_option("--matching", matching_path)->required();
  ls_cmd->add_option("-k", k)->required();
  ls_cmd->add_option("-q", q)->required();
  ls_cmd->add_option("-t", t)->required();
  ls_cmd->add_option("--mode", mode)->required()->check(CLI::IsMember({"oracle", "random", "derand"}));
  ls_cmd->add_option("--seed", seed);
  ls_cmd->add_option("--reps", reps);
  ls_cmd->add_option("--out", out_path)->default_val("eta.matching");
  ls_cmd->add_option("--edge-cap", edge_cap);
  ls_cmd->add_option("--threads", threads)->check(CLI::PositiveNumber);

  auto* us_cmd = app.add_subcommand("usfam", "lopsided universal families");
  us_cmd->add_option("--n", n)->required();
  us_cmd->add_option("--p", p)->required();
  us_cmd->add_option("--q", qq)->required();
  us_cmd->add_option("--mode", mode)->required();
  us_cmd->add_option("--seed", seed);
  us_cmd->add_flag("--verify", verify);
  us_cmd->add_option("--out", out_path);

  auto* gen_cmd = app.add_subcommand("gen", "generate reduction gadget instances");
  std::string gen_kind;
  gen_cmd->add_option("kind", gen_kind)->required()
      ->check(CLI::IsMember({"asm-from-mcq", "lsasm-from-mcq"}));
  gen_cmd->add_option("--mcq", mcq_path)->required();
  gen_cmd->add_option("--out-dir", out_dir)->required();
  gen_cmd->add_flag("--pad", pad, "apply pad_mcq before generating");
  gen_cmd->add_option("-r,--regular-degree", regular_degree,
                      "declared regular degree (ASM construction)");

  auto* ver_cmd = app.add_subcommand("verify-reduction", "structural checks on a generated gadget");
  ver_cmd->add_option("--dir", dir_path)->required();
  ver_cmd->add_option("--clique", clique_spec);

  auto* kp_cmd = app.add_subcommand("solve-2dkp", "two-dimensional knapsack");
  kp_cmd->add_option("--items", items_path)->required();
  kp_cmd->add_option("--c1", c1)->required();
  kp_cmd->add_option("--c2", c2)->required();
  kp_cmd->add_option("--p", target)->required();
  kp_cmd->group("");  // hidden: internal testing hook

  try {
    app.parse(argc, argv);
    if (stable_cmd->parsed()) return run_solve_stable(instance_path, side, out_path);
    if (asm_cmd->parsed())
      return run_solve_asm_oracle(instance_path, k, t, out_path, edge_cap);
    if (ls_cmd->parsed())
      return run_solve_lsasm(instance_path, matching_path, k, q, t, mode, seed, reps,
                             out_path, edge_cap, threads);
    if (us_cmd->parsed()) return run_usfam(n, p, qq, mode, seed, verify, out_path);
    if (gen_cmd->parsed()) return run_gen(gen_kind, mcq_path, out_dir, pad, regular_degree);
    if (ver_cmd->parsed()) return run_verify_reduction(dir_path, clique_spec);
    if (kp_cmd->parsed()) return run_solve_2dkp(items_path, c1, c2, target);
    return 2;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const InternalError& e) {
    std::cerr << "internal failure: " << e.what() << "\n";
    return 3;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal failure: " << e.what() << "\n";
    return 3;
  }
}
