// folium: effective constructions for plane foliation germs, divisor
// involutions, and critical structure of rational families.
//
// Exit codes: 0 success, 2 invalid input or domain violation, 3 numerical
// failure, 64 unknown command or bad usage.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "folium/folium.hpp"

namespace {

using folium::cplx;
using folium::json;

cplx parse_complex_arg(const std::string& s, const std::string& what) {
  try {
    const auto comma = s.find(',');
    if (comma == std::string::npos) return cplx{std::stod(s), 0.0};
    return cplx{std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (...) {
    throw folium::domain_error(what + " must be a number 're' or a pair 're,im': " + s);
  }
}

json config_to_json(const folium::RunConfig& cfg) {
  return json{{"order", cfg.order},         {"eps_coef", cfg.eps_coef},
              {"eps_root", cfg.eps_root},   {"eps_match", cfg.eps_match},
              {"seed", cfg.seed},           {"budget", cfg.budget},
              {"delta_loop", cfg.delta_loop}};
}

json perm_to_json(const folium::Perm& p) {  // 1-based images
  json out = json::array();
  for (const int v : p) out.push_back(v + 1);
  return out;
}

json value_or_inf(cplx v, bool is_inf) {
  if (is_inf) return json("inf");
  return folium::to_json(v);
}

struct CommonOpts {
  std::string config_file;
  std::optional<std::uint64_t> seed;
  std::optional<int> order;
  std::optional<long long> budget;
  std::optional<double> delta_loop;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--config", c.config_file, "key=value configuration file");
  cmd->add_option("--seed", c.seed, "random seed (overrides FOLIUM_SEED and the config file)");
  cmd->add_option("--order", c.order, "series truncation order");
  cmd->add_option("--budget", c.budget, "random search budget");
  cmd->add_option("--delta-loop", c.delta_loop, "maximal loop radius in the value plane");
}

folium::RunConfig resolve_config(const CommonOpts& c) {
  folium::RunConfig cfg;
  if (!c.config_file.empty())
    folium::apply_config_entries(cfg, folium::parse_config_file(c.config_file));
  folium::apply_seed_env(cfg);
  if (c.seed) cfg.seed = *c.seed;
  if (c.order) cfg.order = *c.order;
  if (c.budget) cfg.budget = *c.budget;
  if (c.delta_loop) cfg.delta_loop = *c.delta_loop;
  cfg.validate();
  return cfg;
}

void emit(const std::string& command, const folium::RunConfig& cfg, json payload) {
  json report{{"schema", "folium-report/1"}, {"command", command}, {"config", config_to_json(cfg)}};
  report.update(payload);
  std::cout << report.dump(2) << "\n";
}

json tangency_to_json(const folium::TangencyDatum& t) {
  return json{{"t0", folium::to_json(t.t0)}, {"order", t.order}};
}

json branch_to_json(const folium::CriticalBranch& b) {
  const char* kind = b.kind == folium::BranchKind::level            ? "level"
                     : b.kind == folium::BranchKind::non_invariant ? "non_invariant"
                                                                   : "divisor_tangent";
  json j{{"kind", kind},
         {"vertical", b.vertical},
         {"center", folium::to_json(b.center)},
         {"curve", folium::to_json(b.curve)},
         {"multiplicity", b.multiplicity},
         {"value_constant", b.value_constant}};
  if (b.vertical) j["contact"] = b.contact;
  if (b.value_constant)
    j["value"] = value_or_inf(b.value, b.value_is_inf);
  else
    j["value_series"] = folium::to_json(b.value_series);
  return j;
}

int run(int argc, char** argv) {
  CLI::App app{"effective constructions for foliation germs and rational families"};
  app.require_subcommand(1);

  // --- blowup ---------------------------------------------------------------
  auto* cmd_blowup = app.add_subcommand("blowup", "blow up a 1-form at the origin");
  CommonOpts blowup_opts;
  std::string blowup_form;
  add_common(cmd_blowup, blowup_opts);
  cmd_blowup->add_option("--form", blowup_form, "1-form JSON file")->required();

  // --- t1 -------------------------------------------------------------------
  auto* cmd_t1 = app.add_subcommand("t1", "test the blow-up normal-form jet conditions");
  CommonOpts t1_opts;
  std::string t1_form;
  add_common(cmd_t1, t1_opts);
  cmd_t1->add_option("--form", t1_form, "1-form JSON file")->required();

  // --- involution -----------------------------------------------------------
  auto* cmd_inv = app.add_subcommand("involution", "divisor involution of a germ");
  CommonOpts inv_opts;
  std::string inv_form;
  add_common(cmd_inv, inv_opts);
  cmd_inv->add_option("--form", inv_form, "1-form JSON file")->required();

  // --- check-inv ------------------------------------------------------------
  auto* cmd_check = app.add_subcommand("check-inv", "verify a series is an involution");
  CommonOpts check_opts;
  std::string check_series;
  int check_k = -1;
  add_common(cmd_check, check_opts);
  cmd_check->add_option("--series", check_series, "series JSON file")->required();
  cmd_check->add_option("--k", check_k, "order to verify through")->required();

  // --- orbit ----------------------------------------------------------------
  auto* cmd_orbit = app.add_subcommand("orbit", "homography-orbit equivalence of involutions");
  CommonOpts orbit_opts;
  std::string orbit_i1, orbit_i2;
  int orbit_k = -1;
  add_common(cmd_orbit, orbit_opts);
  cmd_orbit->add_option("--inv1", orbit_i1, "first involution JSON file")->required();
  cmd_orbit->add_option("--inv2", orbit_i2, "second involution JSON file")->required();
  cmd_orbit->add_option("--k", orbit_k, "comparison order (default: common order)");

  // --- gtpath ---------------------------------------------------------------
  auto* cmd_gt = app.add_subcommand("gtpath", "conjugation path through an involution");
  CommonOpts gt_opts;
  std::string gt_inv, gt_u = "0.1";
  int gt_m = 2;
  add_common(cmd_gt, gt_opts);
  cmd_gt->add_option("--inv", gt_inv, "involution JSON file")->required();
  cmd_gt->add_option("--m", gt_m, "deformation order (>= 2)")->required();
  cmd_gt->add_option("--u", gt_u, "parameter value 're' or 're,im'");

  // --- norms ----------------------------------------------------------------
  auto* cmd_norms = app.add_subcommand("norms", "weighted and plain coefficient norms");
  CommonOpts norms_opts;
  std::string norms_series;
  std::vector<double> norms_lambdas;
  add_common(cmd_norms, norms_opts);
  cmd_norms->add_option("--series", norms_series, "series JSON file")->required();
  cmd_norms->add_option("--lambdas", norms_lambdas, "rescaling factors in (0,1)");

  // --- critical ---------------------------------------------------------------
  auto* cmd_crit = app.add_subcommand("critical", "critical points and values of a rational map");
  CommonOpts crit_opts;
  std::string crit_map;
  add_common(cmd_crit, crit_opts);
  cmd_crit->add_option("--map", crit_map, "rational map JSON file")->required();

  // --- monodromy --------------------------------------------------------------
  auto* cmd_mono = app.add_subcommand("monodromy", "monodromy of a rational map");
  CommonOpts mono_opts;
  std::string mono_map, mono_around;
  add_common(cmd_mono, mono_opts);
  cmd_mono->add_option("--map", mono_map, "rational map JSON file")->required();
  cmd_mono->add_option("--around", mono_around, "single loop around a value ('re', 're,im', or 'inf')");

  // --- classify ---------------------------------------------------------------
  auto* cmd_cls = app.add_subcommand("classify", "critical curves of a rational family");
  CommonOpts cls_opts;
  std::string cls_family;
  add_common(cmd_cls, cls_opts);
  cmd_cls->add_option("--family", cls_family, "rational family JSON file")->required();

  // --- quintic ----------------------------------------------------------------
  auto* cmd_quint = app.add_subcommand("quintic", "search for an interlaced real quintic");
  CommonOpts quint_opts;
  add_common(cmd_quint, quint_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 64;  // unknown command or bad usage
  }

  if (cmd_blowup->parsed()) {
    const folium::RunConfig cfg = resolve_config(blowup_opts);
    const folium::OneForm w =
        folium::one_form_from_json(folium::load_json_file(blowup_form), "form");
    const folium::BlowUpResult res = folium::blow_up(w, cfg.eps_coef);
    emit("blowup", cfg, json{{"k", res.k}, {"form", folium::to_json(res.form)}});
    return 0;
  }
  if (cmd_t1->parsed()) {
    const folium::RunConfig cfg = resolve_config(t1_opts);
    const folium::OneForm w = folium::one_form_from_json(folium::load_json_file(t1_form), "form");
    const folium::T1Report rep = folium::is_T1(w, cfg.eps_coef);
    json payload{{"ok", rep.ok}};
    if (rep.ok) {
      payload["beta"] = folium::to_json(rep.beta);
      payload["scale"] = folium::to_json(rep.scale);
    } else {
      payload["reason"] = rep.reason;
    }
    emit("t1", cfg, payload);
    return 0;
  }
  if (cmd_inv->parsed()) {
    const folium::RunConfig cfg = resolve_config(inv_opts);
    const folium::OneForm w = folium::one_form_from_json(folium::load_json_file(inv_form), "form");
    const folium::InvolutionPipeline pipe = folium::involution_of(w, cfg.order, cfg.eps_coef);
    emit("involution", cfg,
         json{{"involution", folium::to_json(pipe.involution)},
              {"beta", folium::to_json(pipe.beta)},
              {"k", pipe.k},
              {"tangency", tangency_to_json(pipe.tangency)},
              {"level", folium::to_json(pipe.level)}});
    return 0;
  }
  if (cmd_check->parsed()) {
    const folium::RunConfig cfg = resolve_config(check_opts);
    const folium::Series1 s =
        folium::series1_from_json(folium::load_json_file(check_series), "series");
    if (check_k > s.order())
      throw folium::domain_error("requested order exceeds the series order");
    const folium::InvolutionCheck chk = folium::check_involution(s, check_k, cfg.eps_coef);
    json payload{{"verified_order", chk.verified_order}};
    if (chk.first_failure >= 0) {
      payload["first_failure"] = chk.first_failure;
      payload["failure_size"] = chk.failure_size;
    }
    emit("check-inv", cfg, payload);
    return 0;
  }
  if (cmd_orbit->parsed()) {
    const folium::RunConfig cfg = resolve_config(orbit_opts);
    const folium::Involution i1 =
        folium::involution_from_json(folium::load_json_file(orbit_i1), "inv1", cfg.eps_coef);
    const folium::Involution i2 =
        folium::involution_from_json(folium::load_json_file(orbit_i2), "inv2", cfg.eps_coef);
    const int k = orbit_k > 0 ? orbit_k : std::min(i1.series.order(), i2.series.order());
    const folium::OrbitResult res = folium::g_orbit_equivalent(i1, i2, k, cfg.eps_match);
    json payload{{"witness_found", res.witness_found},
                 {"definitive", res.definitive},
                 {"detail", res.detail}};
    if (res.witness_found) {
      payload["witness"] = folium::to_json(res.witness);
      payload["residual"] = res.residual;
    }
    if (res.obstruction_order >= 0) payload["obstruction_order"] = res.obstruction_order;
    emit("orbit", cfg, payload);
    return 0;
  }
  if (cmd_gt->parsed()) {
    const folium::RunConfig cfg = resolve_config(gt_opts);
    const folium::Involution inv =
        folium::involution_from_json(folium::load_json_file(gt_inv), "inv", cfg.eps_coef);
    const cplx u = parse_complex_arg(gt_u, "--u");
    const folium::PathReport rep = folium::gt_path_report(inv, gt_m, u, cfg.eps_coef);
    emit("gtpath", cfg,
         json{{"m", rep.m},
              {"u", folium::to_json(u)},
              {"slope", folium::to_json(rep.slope)},
              {"jet_zero_through", rep.jet_zero_through},
              {"alpha", folium::to_json(rep.alpha)},
              {"alpha_prime", folium::to_json(rep.alpha_prime)}});
    return 0;
  }
  if (cmd_norms->parsed()) {
    const folium::RunConfig cfg = resolve_config(norms_opts);
    const folium::Series1 s =
        folium::series1_from_json(folium::load_json_file(norms_series), "series");
    json payload{{"norm_d", folium::norm_d(s)}, {"norm_l1", folium::norm_l1(s)}};
    if (!norms_lambdas.empty()) {
      json pairs = json::array();
      for (const auto& [lambda, dist] : folium::rescale_toward_radius(s, norms_lambdas))
        pairs.push_back(json{{"lambda", lambda}, {"distance", dist}});
      payload["rescale_distances"] = pairs;
    }
    emit("norms", cfg, payload);
    return 0;
  }
  if (cmd_crit->parsed()) {
    const folium::RunConfig cfg = resolve_config(crit_opts);
    const folium::RationalMap r =
        folium::rational_from_json(folium::load_json_file(crit_map), "map");
    const folium::CriticalData cd = folium::critical_data(r, cfg.eps_root, cfg.eps_coef);
    json points = json::array();
    for (const folium::CriticalPoint& p : cd.points) {
      json jp{{"order", p.order}, {"value", value_or_inf(p.value, p.value_is_inf)}};
      if (p.at_infinity)
        jp["z"] = "inf";
      else
        jp["z"] = folium::to_json(p.z);
      points.push_back(jp);
    }
    json values = json::array();
    for (const folium::CriticalValue& v : cd.values)
      values.push_back(json{{"value", value_or_inf(v.value, v.is_inf)},
                            {"total_order", v.total_order}});
    emit("critical", cfg, json{{"degree", cd.degree}, {"points", points}, {"values", values}});
    return 0;
  }
  if (cmd_mono->parsed()) {
    const folium::RunConfig cfg = resolve_config(mono_opts);
    const folium::RationalMap r =
        folium::rational_from_json(folium::load_json_file(mono_map), "map");
    folium::MonodromyOptions mopt;
    mopt.delta_loop = cfg.delta_loop;
    mopt.eps_root = cfg.eps_root;
    if (!mono_around.empty()) {
      const bool is_inf = mono_around == "inf";
      const cplx v = is_inf ? cplx{} : parse_complex_arg(mono_around, "--around");
      const folium::Perm sigma = folium::monodromy_around(r, v, is_inf, mopt);
      emit("monodromy", cfg,
           json{{"around", is_inf ? json("inf") : folium::to_json(v)},
                {"permutation", perm_to_json(sigma)}});
      return 0;
    }
    const folium::MonodromyResult res = folium::monodromy(r, mopt);
    const folium::GroupInfo grp =
        folium::monodromy_group(res.generators, res.degree, mopt.group_cap);
    json fiber = json::array();
    for (const cplx z : res.fiber) fiber.push_back(folium::to_json(z));
    json values = json::array();
    for (std::size_t i = 0; i < res.finite_values.size(); ++i)
      values.push_back(json{{"value", folium::to_json(res.finite_values[i])},
                            {"total_order", res.value_orders[i]},
                            {"loop", perm_to_json(res.loop_perms[i])}});
    json payload{{"degree", res.degree},
                 {"base", folium::to_json(res.base)},
                 {"fiber", fiber},
                 {"values", values},
                 {"infinity_is_branch", res.infinity_is_branch},
                 {"infinity_loop", perm_to_json(res.infinity_perm)},
                 {"product_identity", res.product_identity},
                 {"transitive", res.transitive},
                 {"group_order", grp.order},
                 {"group_order_capped", grp.order_capped}};
    emit("monodromy", cfg, payload);
    return 0;
  }
  if (cmd_cls->parsed()) {
    const folium::RunConfig cfg = resolve_config(cls_opts);
    const folium::RationalFamily fam =
        folium::family_from_json(folium::load_json_file(cls_family), "family");
    const folium::CriticalCurves cc = folium::classify_critical_curves(fam, cfg.eps_coef);
    json branches = json::array();
    for (const folium::CriticalBranch& b : cc.branches) branches.push_back(branch_to_json(b));
    emit("classify", cfg,
         json{{"divisor_multiplicity", cc.divisor_multiplicity},
              {"branches", branches},
              {"unresolved", cc.unresolved}});
    return 0;
  }
  if (cmd_quint->parsed()) {
    const folium::RunConfig cfg = resolve_config(quint_opts);
    const folium::QuinticSearchResult res = folium::quintic_search(cfg.seed, cfg.budget);
    json payload{{"found", res.found}, {"attempts", res.attempts}};
    if (res.found) {
      payload["q"] = folium::poly_to_json(res.certificate.q);
      json cs = json::array(), vs = json::array();
      for (const double c : res.certificate.critical_points) cs.push_back(c);
      for (const double v : res.certificate.values) vs.push_back(v);
      payload["critical_points"] = cs;
      payload["values"] = vs;
      payload["reason"] = res.certificate.reason;
    } else {
      payload["reason"] = "budget exhausted without a verified example";
    }
    emit("quintic", cfg, payload);
    return 0;
  }
  return 64;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const folium::numerical_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const folium::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 3;
  }
}
