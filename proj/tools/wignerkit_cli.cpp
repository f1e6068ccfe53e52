#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "wignerkit/grassmann.hpp"
#include "wignerkit/json_io.hpp"
#include "wignerkit/measure.hpp"
#include "wignerkit/projective.hpp"
#include "wignerkit/reconstruct.hpp"
#include "wignerkit/verify.hpp"

namespace {

using namespace wignerkit;

// Exit contract: 0 = pass/success, 1 = check failure (report still emitted),
// 2 = input or usage error.
constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct CommonArgs {
  Tolerance tol;
  std::uint64_t seed = 0;
  std::string out_path;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--tol-rank", args.tol.eps_rank, "numerical-rank cutoff (relative)");
  cmd->add_option("--tol-orth", args.tol.eps_orth, "orthogonality threshold");
  cmd->add_option("--tol-eq", args.tol.eps_eq, "subspace equality threshold");
  cmd->add_option("--tol-angle", args.tol.eps_angle, "principal-angle zero threshold");
  cmd->add_option("--seed", args.seed, "random seed (default: WIGNERKIT_SEED or 0)");
  cmd->add_option("--out", args.out_path, "write the JSON report to this file");
}

std::uint64_t env_seed() {
  const char* env = std::getenv("WIGNERKIT_SEED");
  if (env == nullptr) return 0;
  return std::strtoull(env, nullptr, 10);
}

void emit(const CommonArgs& args, json report) {
  report["seed"] = args.seed;
  report["tolerances"] = tolerance_to_json(args.tol);
  if (args.out_path.empty()) {
    std::cout << report.dump(2) << "\n";
  } else {
    write_json_file(args.out_path, report);
  }
}

std::vector<std::pair<int, int>> parse_dims(const std::string& spec) {
  // "5,2;7,3" -> {(5,2),(7,3)}
  std::vector<std::pair<int, int>> dims;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    const auto comma = item.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("dims entry must look like n,k: " + item);
    }
    dims.emplace_back(std::stoi(item.substr(0, comma)), std::stoi(item.substr(comma + 1)));
  }
  return dims;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"wignerkit: projective/Grassmann geometry checks, isometry "
               "reconstruction, and two-valued-measure search"};
  app.require_subcommand(1);

  CommonArgs args;
  args.seed = env_seed();

  // ---- angles ----
  auto* angles_cmd = app.add_subcommand("angles", "principal angles between two subspaces");
  std::string x_path, y_path;
  angles_cmd->add_option("--x", x_path, "subspace JSON")->required();
  angles_cmd->add_option("--y", y_path, "subspace JSON")->required();
  add_common(angles_cmd, args);
  angles_cmd->callback([&] {
    const Subspace x = subspace_from_json(load_json_file(x_path), args.tol);
    const Subspace y = subspace_from_json(load_json_file(y_path), args.tol);
    const PrincipalAngles pa = principal_angles(x, y);
    emit(args, json{{"command", "angles"},
                    {"angles", pa.angles},
                    {"marginal", pa.marginal(args.tol.eps_angle)}});
  });

  // ---- distance ----
  auto* dist_cmd = app.add_subcommand("distance", "Grassmann graph distance");
  dist_cmd->add_option("--x", x_path, "subspace JSON")->required();
  dist_cmd->add_option("--y", y_path, "subspace JSON")->required();
  add_common(dist_cmd, args);
  dist_cmd->callback([&] {
    const Subspace x = subspace_from_json(load_json_file(x_path), args.tol);
    const Subspace y = subspace_from_json(load_json_file(y_path), args.tol);
    const int d = grassmann_distance(x, y, args.tol);
    const auto meet = intersect(x, y, args.tol);
    emit(args, json{{"command", "distance"},
                    {"distance", d},
                    {"dim_intersection", meet ? meet->dim() : 0},
                    {"dim_sum", sum(x, y, args.tol).dim()}});
  });

  // ---- geodesic ----
  auto* geo_cmd = app.add_subcommand("geodesic", "geodesic path between two subspaces");
  geo_cmd->add_option("--x", x_path, "subspace JSON")->required();
  geo_cmd->add_option("--y", y_path, "subspace JSON")->required();
  add_common(geo_cmd, args);
  geo_cmd->callback([&] {
    const Subspace x = subspace_from_json(load_json_file(x_path), args.tol);
    const Subspace y = subspace_from_json(load_json_file(y_path), args.tol);
    const GrassmannPath path = geodesic(x, y, args.tol);
    json nodes = json::array();
    for (const Subspace& node : path.nodes) nodes.push_back(subspace_to_json(node));
    emit(args, json{{"command", "geodesic"},
                    {"length", path.nodes.size() - 1},
                    {"nodes", std::move(nodes)}});
  });

  // ---- compat ----
  auto* compat_cmd =
      app.add_subcommand("compat", "compatibility / adjacency / ortho-adjacency");
  compat_cmd->add_option("--x", x_path, "subspace JSON")->required();
  compat_cmd->add_option("--y", y_path, "subspace JSON")->required();
  add_common(compat_cmd, args);
  compat_cmd->callback([&] {
    const Subspace x = subspace_from_json(load_json_file(x_path), args.tol);
    const Subspace y = subspace_from_json(load_json_file(y_path), args.tol);
    json report{{"command", "compat"}, {"compatible", is_compatible(x, y, args.tol)}};
    if (x.dim() == y.dim()) {
      const PrincipalAngles pa = principal_angles(x, y);
      report["angles"] = pa.angles;
      report["marginal"] = pa.marginal(args.tol.eps_angle);
      report["adjacent"] = is_adjacent(x, y, args.tol);
      report["ortho_adjacent"] = is_ortho_adjacent(x, y, args.tol);
    }
    emit(args, report);
  });

  // ---- clique ----
  auto* clique_cmd =
      app.add_subcommand("clique", "maximal compatible clique of a star or top");
  std::string kind_name, anchor_path;
  int pool = 200;
  clique_cmd->add_option("--kind", kind_name, "star|top")->required();
  clique_cmd->add_option("--anchor", anchor_path, "anchor subspace JSON")->required();
  clique_cmd->add_option("--pool", pool, "greedy-extension candidate pool size");
  add_common(clique_cmd, args);
  clique_cmd->callback([&] {
    CliqueKind kind;
    if (kind_name == "star") kind = CliqueKind::star;
    else if (kind_name == "top") kind = CliqueKind::top;
    else throw std::invalid_argument("clique: --kind must be star or top");
    const Subspace anchor = subspace_from_json(load_json_file(anchor_path), args.tol);
    const std::vector<Subspace> clique = max_compatible_clique(kind, anchor, args.tol);
    const bool maximal =
        clique_extension_fails(kind, anchor, clique, pool, args.seed, args.tol);
    json members = json::array();
    for (const Subspace& m : clique) members.push_back(subspace_to_json(m));
    emit(args, json{{"command", "clique"},
                    {"kind", kind_name},
                    {"size", clique.size()},
                    {"members", std::move(members)},
                    {"extension_found", !maximal}});
    if (!maximal) std::exit(kExitCheckFailed);
  });

  // ---- check-op ----
  auto* checkop_cmd =
      app.add_subcommand("check-op", "orthogonality preservation of a ray-map table");
  std::string table_path;
  checkop_cmd->add_option("--table", table_path, "ray-map table JSON")->required();
  add_common(checkop_cmd, args);
  checkop_cmd->callback([&] {
    const RayMapTable table = table_from_json(load_json_file(table_path), args.tol);
    const CheckReport report = check_orthogonality_preserving(table, args.tol);
    json violations = json::array();
    for (const auto& v : report.violations) {
      violations.push_back({{"source_i", v.first_index},
                            {"source_j", v.second_index},
                            {"image_overlap", v.value}});
    }
    emit(args, json{{"command", "check-op"},
                    {"check", report.check},
                    {"pass", report.pass},
                    {"violations", std::move(violations)}});
    if (!report.pass) std::exit(kExitCheckFailed);
  });

  // ---- check-lineation ----
  auto* lin_cmd = app.add_subcommand(
      "check-lineation", "lineation and non-degeneracy checks over the table's lines");
  int min_members = 3;
  lin_cmd->add_option("--table", table_path, "ray-map table JSON")->required();
  lin_cmd->add_option("--min-members", min_members,
                      "minimum tabulated rays per derived line");
  add_common(lin_cmd, args);
  lin_cmd->callback([&] {
    const RayMapTable table = table_from_json(load_json_file(table_path), args.tol);
    const auto family = lines_from_table(table, min_members, args.tol);
    if (family.empty()) {
      throw std::invalid_argument("check-lineation: the table spans no line with >= " +
                                  std::to_string(min_members) + " tabulated rays");
    }
    const CheckReport lin = check_lineation(table, family, args.tol);
    const NondegenerateReport nd = check_nondegenerate(table, family, args.tol);
    json failing = json::array();
    for (const auto& v : lin.violations) failing.push_back(v.first_index);
    const bool pass = lin.pass && nd.l1_pass && nd.l2_pass;
    emit(args, json{{"command", "check-lineation"},
                    {"lines_checked", family.size()},
                    {"lineation_pass", lin.pass},
                    {"lineation_failing_lines", std::move(failing)},
                    {"l1_pass", nd.l1_pass},
                    {"l2_pass", nd.l2_pass},
                    {"l2_failing_lines", nd.l2_failing_lines},
                    {"image_rank", nd.image_rank},
                    {"pass", pass}});
    if (!pass) std::exit(kExitCheckFailed);
  });

  // ---- reconstruct ----
  auto* rec_cmd = app.add_subcommand(
      "reconstruct", "recover the inducing linear/conjugate-linear isometry");
  rec_cmd->add_option("--table", table_path, "ray-map table JSON")->required();
  add_common(rec_cmd, args);
  rec_cmd->callback([&] {
    const RayMapTable table = table_from_json(load_json_file(table_path), args.tol);
    const ReconstructionResult rec =
        classify_and_reconstruct(table, static_cast<int>(table.ambient()), args.tol);
    json report = reconstruction_to_json(rec);
    report["command"] = "reconstruct";
    emit(args, std::move(report));
  });

  // ---- descend ----
  auto* desc_cmd = app.add_subcommand(
      "descend", "star-descent reconstruction from a Grassmann oracle");
  std::string oracle_path;
  DescentOptions desc_opt;
  desc_cmd->add_option("--oracle", oracle_path, "oracle JSON (generator or table)")
      ->required();
  desc_cmd->add_option("--probes", desc_opt.probes, "star members probed per descent");
  desc_cmd->add_option("--samples", desc_opt.containment_samples,
                       "containment samples per level");
  add_common(desc_cmd, args);
  desc_cmd->callback([&] {
    const GrassmannOracle oracle = oracle_from_json(load_json_file(oracle_path), args.tol);
    desc_opt.seed = args.seed;
    const DescentResult result = descend_full(oracle, desc_opt, args.tol);
    json levels = json::array();
    for (const auto& lv : result.levels) {
      levels.push_back({{"level", lv.level}, {"samples_checked", lv.samples_checked}});
    }
    json report = reconstruction_to_json(result.reconstruction);
    report["command"] = "descend";
    report["levels"] = std::move(levels);
    emit(args, std::move(report));
  });

  // ---- ks-search ----
  auto* ks_cmd = app.add_subcommand(
      "ks-search", "two-valued-measure search on an orthogonality hypergraph");
  std::string rays_path;
  ks_cmd->add_option("--rays", rays_path, "hypergraph JSON")->required();
  add_common(ks_cmd, args);
  ks_cmd->callback([&] {
    const OrthoHypergraph h = hypergraph_from_json(load_json_file(rays_path), args.tol);
    const SearchResult result = find_two_valued_measure(h, args.seed);
    json report{{"command", "ks-search"},
                {"status", result.sat ? "SAT" : "UNSAT"},
                {"nodes_explored", result.nodes_explored},
                {"rays", h.rays.size()},
                {"contexts", h.contexts.size()},
                {"edges", h.edges.size()}};
    if (result.sat) report["assignment"] = result.assignment->value;
    emit(args, std::move(report));
  });

  // ---- verify-suite ----
  auto* suite_cmd = app.add_subcommand(
      "verify-suite", "run the full lemma/theorem property battery");
  std::string dims_spec = "5,2;7,3";
  SuiteConfig suite;
  suite_cmd->add_option("--dims", dims_spec, "semicolon-separated n,k pairs (2k < n)");
  suite_cmd->add_option("--trials", suite.trials, "per-anchor trial scale");
  suite_cmd->add_option("--inject-fault", suite.inject_fault,
                        "corrupt exactly this anchor's fixture");
  add_common(suite_cmd, args);
  suite_cmd->callback([&] {
    suite.dims = parse_dims(dims_spec);
    suite.seed = args.seed;
    const std::vector<AnchorResult> results = run_verify_suite(suite, args.tol);
    json anchors = json::array();
    bool all_pass = true;
    for (const auto& r : results) {
      anchors.push_back({{"anchor", r.anchor},
                         {"pass", r.pass},
                         {"trials", r.trials},
                         {"detail", r.detail}});
      all_pass = all_pass && r.pass;
    }
    emit(args, json{{"command", "verify-suite"},
                    {"dims", suite.dims},
                    {"anchors", std::move(anchors)},
                    {"pass", all_pass}});
    if (!all_pass) std::exit(kExitCheckFailed);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << json{{"error", e.what()}}.dump(2) << "\n";
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    std::cout << json{{"error", e.what()}, {"pass", false}}.dump(2) << "\n";
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", e.what()}}.dump(2) << "\n";
    return kExitUsage;
  }
}
