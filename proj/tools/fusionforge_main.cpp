// Command-line front end: one verb per verification scenario, emitting
// machine-checkable reports as JSON or human-readable text.
//
// Exit codes: 0 when every claim passes, 1 when any claim fails, 2 on
// usage or input errors.

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fusionforge/fusionforge.hpp"

namespace ff = fusionforge;

namespace {

struct CommonOpts {
  bool json = false;
  bool timing = false;
  std::size_t max_order = 0; // 0 = keep defaults
  std::size_t max_pair = 0;
  std::string output;
};

ff::Limits effective_limits(const CommonOpts& opts) {
  ff::Limits lim = ff::Limits::from_env();
  if (opts.max_order > 0) {
    lim.max_s = opts.max_order;
    lim.max_g = opts.max_order;
    std::cerr << "warning: group size caps overridden to " << opts.max_order
              << "\n";
  }
  if (opts.max_pair > 0) {
    lim.max_pair = opts.max_pair;
    std::cerr << "warning: |QxS| cap overridden to " << opts.max_pair << "\n";
  }
  return lim;
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_flag("--json", opts.json, "emit the report as JSON");
  cmd->add_flag("--timing", opts.timing,
                "include elapsed_ms in JSON output (breaks byte-for-byte "
                "reproducibility)");
  cmd->add_option("--max-order", opts.max_order,
                  "override the |S| and |G| caps (use with care)");
  cmd->add_option("--max-pair", opts.max_pair,
                  "override the |QxS| mark-vector cap (use with care)");
  cmd->add_option("-o,--output", opts.output, "write the report to a file");
}

int emit(const ff::VerificationReport& rep, const CommonOpts& opts) {
  std::string text = opts.json ? rep.to_json(opts.timing).dump(2) + "\n"
                               : rep.to_text();
  if (!opts.output.empty()) {
    std::ofstream out(opts.output, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << opts.output << "\n";
      return 2;
    }
    out << text;
  } else {
    std::cout << text;
  }
  return rep.all_pass() ? 0 : 1;
}

/// Resolves a subgroup descriptor ("C2", "Q8", "S", ...) to the first
/// subgroup of S isomorphic to the named group, in canonical subgroup order.
ff::Subgroup resolve_subgroup(const ff::GroupPtr& s, const std::string& desc) {
  if (desc.empty() || desc == "S" || desc == s->label())
    return ff::whole_group(s);
  ff::GroupPtr ref = ff::make_group(desc);
  for (const auto& h : ff::subgroups(s)) {
    if (h.order() != ref->order()) continue;
    auto hg = ff::subgroup_as_group(h);
    auto isos = ff::all_injective_homs(ff::whole_group(ref), ff::whole_group(hg));
    if (!isos.empty()) return h;
  }
  throw ff::Error("no subgroup of " + s->label() + " is isomorphic to " + desc);
}

/// Default characteristic subgroup: the unique C2 for generalized
/// quaternion groups, all of S otherwise.
ff::Subgroup default_char_subgroup(const ff::GroupPtr& s) {
  if (s->order() >= 8 && (s->order() & (s->order() - 1)) == 0) {
    std::size_t involutions = 0;
    for (std::size_t x = 1; x < s->order(); ++x)
      if (s->element_order(ff::Elt(x)) == 2) ++involutions;
    if (involutions == 1 && !s->is_abelian())
      return ff::unique_involution_subgroup(s);
  }
  return ff::whole_group(s);
}

ff::Character auto_base_character(const ff::GroupPtr& s) {
  if (s->order() == 1) return ff::trivial_character(ff::whole_group(s));
  bool cyclic = false;
  for (std::size_t x = 1; x < s->order(); ++x)
    if (s->element_order(ff::Elt(x)) == s->order()) cyclic = true;
  auto p = ff::p_group_prime(s);
  if (cyclic)
    return ff::example_base_character(ff::ExampleKind::cyclic, s);
  if (p && *p == 2 && !s->is_abelian()) {
    std::size_t involutions = 0;
    for (std::size_t x = 1; x < s->order(); ++x)
      if (s->element_order(ff::Elt(x)) == 2) ++involutions;
    if (involutions == 1)
      return ff::example_base_character(ff::ExampleKind::quaternion, s);
  }
  if (p && ff::is_elementary_abelian(ff::whole_group(s), *p))
    return ff::example_base_character(ff::ExampleKind::elem_abelian, s);
  return ff::regular_character(ff::whole_group(s));
}

struct Scenario {
  ff::GroupPtr s;
  ff::FusionSystem fusion;
  ff::Subgroup k;
  ff::Biset omega;
};

Scenario build_scenario(const std::string& group, const std::string& char_sub,
                        const ff::Limits& lim) {
  Scenario sc;
  sc.s = ff::make_group(group, lim);
  sc.fusion = ff::full_fusion(sc.s, lim);
  sc.k = char_sub.empty() ? default_char_subgroup(sc.s)
                          : resolve_subgroup(sc.s, char_sub);
  sc.omega = ff::canonical_stable_biset(sc.s, sc.fusion, sc.k);
  return sc;
}

ff::VerificationReport stability_report(const Scenario& sc,
                                        const ff::Limits& lim) {
  ff::VerificationReport rep;
  rep.scenario = "verify-stability";
  rep.inputs = ff::Json{{"group", sc.s->label()},
                        {"char_subgroup", sc.k.describe()},
                        {"fusion", sc.fusion.kind},
                        {"omega", ff::to_json(sc.omega)}};
  auto cert = ff::is_characteristic(sc.fusion, sc.k);
  rep.claims.push_back(ff::Claim{
      "characteristic-subgroup",
      "every fusion morphism out of a subgroup of K extends to K",
      cert.holds,
      ff::Json{{"checked_pairs", cert.entries.size()}}});
  auto st = ff::is_left_stable(sc.omega, sc.fusion, /*witnesses*/ true, lim);
  ff::Json entries = ff::Json::array();
  for (const auto& e : st.entries) {
    ff::Json j{{"Q_order", e.q.order()},
               {"Q", ff::to_json(e.q)["members"]},
               {"phi", ff::hom_map_table(e.phi)},
               {"verdict", e.ok ? "pass" : "fail"}};
    if (e.mismatch)
      j["mark_mismatch"] =
          ff::Json{{"H_members", ff::to_json(e.mismatch->h)["members"]},
                   {"plain", e.mismatch->plain},
                   {"twisted", e.mismatch->twisted}};
    entries.push_back(std::move(j));
  }
  rep.claims.push_back(ff::Claim{
      "left-stability", "mark-vector comparison over the subgroups of QxS",
      st.stable, ff::Json{{"entries", entries}}});
  return rep;
}

ff::VerificationReport gamma_report(const Scenario& sc) {
  ff::VerificationReport rep;
  rep.scenario = "build-gamma";
  rep.inputs = ff::Json{{"group", sc.s->label()},
                        {"char_subgroup", sc.k.describe()},
                        {"omega", ff::to_json(sc.omega)}};
  ff::GammaGroup gamma(sc.omega);
  const std::size_t n = gamma.orbits();
  ff::Integer order = 1;
  for (std::size_t i = 0; i < n; ++i) order *= ff::Integer(sc.s->order());
  for (std::size_t i = 2; i <= n; ++i) order *= ff::Integer(i);
  // iota must be an injective homomorphism; verify on all of S
  bool mono = true;
  std::vector<ff::GammaElement> images;
  for (std::size_t x = 0; x < sc.s->order(); ++x)
    images.push_back(gamma.iota(ff::Elt(x)));
  for (std::size_t x = 0; x < sc.s->order() && mono; ++x)
    for (std::size_t y = 0; y < sc.s->order() && mono; ++y) {
      if (x < y && images[x] == images[y]) mono = false;
      if (!(gamma.mul(images[x], images[y]) ==
            images[sc.s->mul(ff::Elt(x), ff::Elt(y))]))
        mono = false;
    }
  ff::Json gens = ff::Json::array();
  for (ff::Elt g : ff::generating_sequence(ff::whole_group(sc.s)))
    gens.push_back(ff::Json{{"element", g},
                            {"iota", ff::to_json(gamma.iota(g))}});
  rep.claims.push_back(ff::Claim{
      "gamma-construction",
      "wreath coordinates over the right-orbit transversal",
      true,
      ff::Json{{"orbits", n},
               {"wreath_order", order.str()},
               {"transversal", [&] {
                  ff::Json t = ff::Json::array();
                  for (ff::Elt x : gamma.transversal()) t.push_back(x);
                  return t;
                }()}}});
  rep.claims.push_back(ff::Claim{
      "iota-monomorphism",
      "left translation embeds S into the wreath group",
      mono, ff::Json{{"generators", gens}}});
  return rep;
}

ff::VerificationReport park_report(const Scenario& sc, const ff::Limits& lim) {
  ff::VerificationReport rep;
  rep.scenario = "check-park";
  rep.inputs = ff::Json{{"group", sc.s->label()},
                        {"char_subgroup", sc.k.describe()},
                        {"omega", ff::to_json(sc.omega)}};
  ff::GammaGroup gamma(sc.omega);
  auto ct = ff::verify_fusion_containment(gamma, sc.fusion, lim);
  ff::Json entries = ff::Json::array();
  for (const auto& e : ct.entries) {
    ff::Json j{{"Q_order", e.q.order()},
               {"phi", ff::hom_map_table(e.phi)},
               {"verdict", e.ok ? "pass" : "fail"}};
    if (e.eta) j["eta"] = ff::to_json(*e.eta);
    if (e.obstruction)
      j["mark_mismatch"] =
          ff::Json{{"H_members", ff::to_json(e.obstruction->h)["members"]},
                   {"plain", e.obstruction->plain},
                   {"twisted", e.obstruction->twisted}};
    entries.push_back(std::move(j));
  }
  rep.claims.push_back(ff::Claim{
      "fusion-containment",
      "explicit conjugation witnesses in the wreath group",
      ct.contained, ff::Json{{"entries", entries}}});
  return rep;
}

ff::VerificationReport mackey_report(const Scenario& sc,
                                     const std::string& base_char) {
  ff::VerificationReport rep;
  rep.scenario = "mackey";
  auto gamma = std::make_shared<ff::GammaGroup>(sc.omega);
  ff::Character v = base_char == "regular"
                        ? ff::regular_character(ff::whole_group(sc.s))
                    : base_char == "augmented-regular"
                        ? ff::augmented_regular_character(ff::whole_group(sc.s))
                        : auto_base_character(sc.s);
  rep.inputs = ff::Json{{"group", sc.s->label()},
                        {"char_subgroup", sc.k.describe()},
                        {"base_char", ff::to_json(v)},
                        {"omega", ff::to_json(sc.omega)}};
  auto t = ff::make_tilde_module(gamma, v);
  bool all_equal = true;
  ff::Json entries = ff::Json::array();
  for (const auto& h : sc.fusion.subs) {
    auto mk = ff::mackey_check(t, h);
    if (!mk.equal) all_equal = false;
    ff::Json parts = ff::Json::array();
    for (const auto& part : mk.parts)
      parts.push_back(ff::Json{{"phi_domain_order", part.phi.domain.order()},
                               {"x", part.x},
                               {"source_order", part.a.order()},
                               {"degree", part.degree}});
    ff::Json j{{"H", h.describe()},
               {"verdict", mk.equal ? "pass" : "fail"},
               {"direct", ff::to_json(mk.direct)},
               {"parts", parts}};
    if (mk.first_mismatch_class) j["mismatch_class"] = *mk.first_mismatch_class;
    entries.push_back(std::move(j));
  }
  rep.claims.push_back(ff::Claim{
      "mackey-decomposition",
      "double-coset decomposition of the restricted induced module",
      all_equal, ff::Json{{"entries", entries}}});
  return rep;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"fusionforge: exact verification of fusion-stable bisets, "
               "wreath automorphism groups, and induced character freeness"};
  app.require_subcommand(1);

  std::string group, char_sub, base_char = "auto", example_kind;
  unsigned opt_p = 2, opt_n = 2;

  CommonOpts o_stab, o_gamma, o_park, o_mackey, o_big, o_run, o_plan;

  auto* c_stab = app.add_subcommand("verify-stability",
                                    "check left stability of the canonical biset");
  c_stab->add_option("--group", group, "base group descriptor")->required();
  c_stab->add_option("--char-subgroup", char_sub,
                     "characteristic subgroup descriptor (default: C2 for "
                     "quaternion groups, S otherwise)");
  add_common(c_stab, o_stab);

  auto* c_gamma = app.add_subcommand("build-gamma",
                                     "build the wreath automorphism group");
  c_gamma->add_option("--group", group)->required();
  c_gamma->add_option("--char-subgroup", char_sub);
  add_common(c_gamma, o_gamma);

  auto* c_park = app.add_subcommand(
      "check-park", "verify fusion containment via conjugation witnesses");
  c_park->add_option("--group", group)->required();
  c_park->add_option("--char-subgroup", char_sub);
  add_common(c_park, o_park);

  auto* c_mackey = app.add_subcommand(
      "mackey", "verify the restriction decomposition for every subgroup");
  c_mackey->add_option("--group", group)->required();
  c_mackey->add_option("--char-subgroup", char_sub);
  c_mackey->add_option("--base-char", base_char,
                       "auto | regular | augmented-regular");
  add_common(c_mackey, o_mackey);

  auto* c_big = app.add_subcommand("bigcenter",
                                   "center decomposition and isotropy bound");
  c_big->add_option("--group", group)->required();
  add_common(c_big, o_big);

  auto* c_run = app.add_subcommand("run-example", "run a packaged scenario");
  c_run->add_option("kind", example_kind, "cyclic | quaternion | elem_abelian")
      ->required();
  c_run->add_option("--p", opt_p, "prime");
  c_run->add_option("--N", opt_n, "exponent / rank parameter");
  add_common(c_run, o_run);

  auto* c_plan = app.add_subcommand("plan", "staged rank-reduction plan");
  c_plan->add_option("--group", group)->required();
  add_common(c_plan, o_plan);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2; // usage error
  }

  try {
    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();
    auto finish = [&](ff::VerificationReport rep, const CommonOpts& opts) {
      rep.elapsed_ms = std::chrono::duration<double, std::milli>(
                           clock::now() - t0)
                           .count();
      return emit(rep, opts);
    };
    if (*c_stab) {
      auto lim = effective_limits(o_stab);
      return finish(stability_report(build_scenario(group, char_sub, lim), lim),
                    o_stab);
    }
    if (*c_gamma) {
      auto lim = effective_limits(o_gamma);
      return finish(gamma_report(build_scenario(group, char_sub, lim)), o_gamma);
    }
    if (*c_park) {
      auto lim = effective_limits(o_park);
      return finish(park_report(build_scenario(group, char_sub, lim), lim),
                    o_park);
    }
    if (*c_mackey) {
      auto lim = effective_limits(o_mackey);
      if (base_char != "auto" && base_char != "regular" &&
          base_char != "augmented-regular") {
        std::cerr << "error: unknown base character '" << base_char << "'\n";
        return 2;
      }
      return finish(
          mackey_report(build_scenario(group, char_sub, lim), base_char),
          o_mackey);
    }
    if (*c_big) {
      auto lim = effective_limits(o_big);
      return finish(ff::blueprint_report(ff::bigcenter_blueprint(
                        ff::make_group(group, lim), lim)),
                    o_big);
    }
    if (*c_run) {
      auto lim = effective_limits(o_run);
      auto kind = ff::kind_from_name(example_kind);
      if (!kind) {
        std::cerr << "error: unknown example kind '" << example_kind << "'\n";
        return 2;
      }
      return finish(ff::run_example(*kind, opt_p, opt_n, lim), o_run);
    }
    if (*c_plan) {
      auto lim = effective_limits(o_plan);
      return finish(
          ff::plan_report(ff::rank_reduction_plan(ff::make_group(group, lim), lim)),
          o_plan);
    }
  } catch (const ff::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
