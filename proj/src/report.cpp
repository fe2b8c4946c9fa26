#include "wittlift/report.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

namespace wittlift {

using json = nlohmann::json;

const char* library_version() { return "1.0.0"; }

namespace {

// ---------------------------------------------------------------- parsing

struct ProblemSpec {
  std::string task;
  Int prime = 2;
  int depth = 1;
  int degree = 1;
  int level = 1;
  int laurent_level = 1;
  std::string group_kind = "cyclic";
  std::vector<int> group_params = {2};
  std::vector<int> group_table;
  std::vector<Int> character;
  std::string algebra_kind = "prime";
  std::vector<Int> algebra_params;
  std::string action_kind = "trivial";
  int action_param = 1;
  std::string class_kind = "index";
  Int class_index = 0;
  std::vector<Int> class_coords;
  std::vector<std::pair<std::vector<int>, std::vector<Int>>> instances;
  Int bound = 0;
};

ProblemSpec parse_problem(const std::string& text) {
  ProblemSpec spec;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::vector<int> pending_subgroup;
  bool have_subgroup = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    auto fail = [&](const std::string& msg) {
      throw ZpError("line " + std::to_string(lineno) + ": " + msg);
    };
    auto read_ints = [&](auto& out) {
      Int v;
      while (ls >> v) out.push_back(static_cast<typename std::decay_t<decltype(out)>::value_type>(v));
    };
    if (key == "task") {
      if (!(ls >> spec.task)) fail("task needs a name");
    } else if (key == "prime") {
      if (!(ls >> spec.prime)) fail("prime needs a value");
    } else if (key == "depth") {
      if (!(ls >> spec.depth)) fail("depth needs a value");
    } else if (key == "degree") {
      if (!(ls >> spec.degree)) fail("degree needs a value");
    } else if (key == "level") {
      if (!(ls >> spec.level)) fail("level needs a value");
    } else if (key == "laurent-level") {
      if (!(ls >> spec.laurent_level)) fail("laurent-level needs a value");
    } else if (key == "group") {
      if (!(ls >> spec.group_kind)) fail("group needs a kind");
      spec.group_params.clear();
      if (spec.group_kind == "table") {
        read_ints(spec.group_table);
      } else {
        read_ints(spec.group_params);
        if (spec.group_params.empty()) fail("group needs parameters");
      }
    } else if (key == "character") {
      spec.character.clear();
      read_ints(spec.character);
    } else if (key == "algebra") {
      if (!(ls >> spec.algebra_kind)) fail("algebra needs a kind");
      spec.algebra_params.clear();
      read_ints(spec.algebra_params);
    } else if (key == "action") {
      if (!(ls >> spec.action_kind)) fail("action needs a kind");
      if (!(ls >> spec.action_param)) spec.action_param = 1;
    } else if (key == "class") {
      if (!(ls >> spec.class_kind)) fail("class needs a kind");
      if (spec.class_kind == "index") {
        if (!(ls >> spec.class_index)) fail("class index needs a value");
      } else if (spec.class_kind == "coords") {
        spec.class_coords.clear();
        read_ints(spec.class_coords);
      } else if (spec.class_kind != "zero") {
        fail("class kind must be index, coords or zero");
      }
    } else if (key == "instance-subgroup") {
      pending_subgroup.clear();
      read_ints(pending_subgroup);
      have_subgroup = true;
    } else if (key == "instance-class") {
      if (!have_subgroup) fail("instance-class before instance-subgroup");
      std::vector<Int> coords;
      read_ints(coords);
      spec.instances.emplace_back(pending_subgroup, coords);
      have_subgroup = false;
    } else if (key == "bound") {
      if (!(ls >> spec.bound)) fail("bound needs a value");
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  if (spec.task.empty()) throw ZpError("missing 'task' line");
  return spec;
}

FiniteGroup build_group(const ProblemSpec& s) {
  if (s.group_kind == "cyclic") return FiniteGroup::cyclic(s.group_params.at(0));
  if (s.group_kind == "product")
    return FiniteGroup::direct_product(FiniteGroup::cyclic(s.group_params.at(0)),
                                       FiniteGroup::cyclic(s.group_params.at(1)));
  if (s.group_kind == "trivial") return FiniteGroup::trivial();
  if (s.group_kind == "table") {
    int n = static_cast<int>(std::round(std::sqrt(double(s.group_table.size()))));
    if (n * n != static_cast<int>(s.group_table.size()))
      throw ZpError("group table must be square");
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t[i][j] = s.group_table[i * n + j];
    return FiniteGroup::from_table(std::move(t));
  }
  throw ZpError("unknown group kind '" + s.group_kind + "'");
}

FiniteAlgebra build_algebra(const ProblemSpec& s) {
  if (s.algebra_kind == "prime") return FiniteAlgebra::prime_field(s.prime);
  if (s.algebra_kind == "field") {
    std::vector<Int> poly(s.algebra_params.begin() + 1, s.algebra_params.end());
    return FiniteAlgebra::finite_field(s.algebra_params.at(0), poly);
  }
  if (s.algebra_kind == "truncated")
    return FiniteAlgebra::truncated_poly(s.algebra_params.at(0),
                                         static_cast<int>(s.algebra_params.at(1)));
  if (s.algebra_kind == "square-field") {
    std::vector<Int> poly(s.algebra_params.begin() + 1, s.algebra_params.end());
    auto f = FiniteAlgebra::finite_field(s.algebra_params.at(0), poly);
    return FiniteAlgebra::product({f, f});
  }
  if (s.algebra_kind == "square-prime") {
    auto f = FiniteAlgebra::prime_field(s.algebra_params.at(0));
    return FiniteAlgebra::product({f, f});
  }
  throw ZpError("unknown algebra kind '" + s.algebra_kind + "'");
}

AlgebraAction build_action(const ProblemSpec& s, const FiniteGroup& g,
                           const FiniteAlgebra& a) {
  if (s.action_kind == "trivial") return AlgebraAction::trivial(g, a);
  if (s.action_kind == "frobenius") return AlgebraAction::cyclic_frobenius(g, a, s.action_param);
  if (s.action_kind == "swap") {
    // generator of a cyclic group swaps the two factors applying Frob^t
    if (a.factor_dims().size() != 2) throw ZpError("swap action needs a square algebra");
    int n = g.order();
    std::vector<std::vector<int>> perms(n);
    std::vector<std::vector<int>> frobs(n);
    for (int k = 0; k < n; ++k) {
      // element k of C_n is generator^k
      if (k % 2 == 0)
        perms[k] = {0, 1};
      else
        perms[k] = {1, 0};
      frobs[k] = {s.action_param * k, s.action_param * k};
    }
    return AlgebraAction::product_action(g, a, perms, frobs);
  }
  throw ZpError("unknown action kind '" + s.action_kind + "'");
}

Character build_character(const ProblemSpec& s, const FiniteGroup& g, const Mod& want) {
  Character c;
  c.group = g;
  c.mod = want;
  if (s.character.empty()) {
    c.values.assign(g.order(), 1);
  } else {
    if (static_cast<int>(s.character.size()) != g.order())
      throw ZpError("character table must list one value per group element");
    c.values = s.character;
    for (auto& v : c.values) v = mod_pos(v, want.n);
  }
  c.validate();
  return c;
}

// ------------------------------------------------------------- serialization

json mat_to_json(const MatZ& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

json row_to_json(const RowZ& v) {
  json row = json::array();
  for (Eigen::Index j = 0; j < v.cols(); ++j) row.push_back(v(j));
  return row;
}

std::string fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

// ------------------------------------------------------------------- tasks

Mod pow_mod_of(Int p, int r) {
  Int n = 1;
  for (int i = 0; i < r; ++i) n *= p;
  return Mod::make(n);
}

json run_cohomology(const ProblemSpec& s, bool& verdict) {
  FiniteGroup g = build_group(s);
  Mod m = pow_mod_of(s.prime, s.level);
  Character chi = build_character(s, g, m);
  GModule mod = GModule::character_module(chi, 1, s.level, m);
  json out;
  out["orders"] = json::array();
  for (int n = 0; n <= s.degree; ++n) {
    CohomologyGroup h(mod, n);
    json entry;
    entry["degree"] = n;
    entry["order"] = h.order();
    entry["invariants"] = h.invariants();
    json reps = json::array();
    for (int i = 0; i < h.rank(); ++i) reps.push_back(row_to_json(h.class_rep(i)));
    entry["generators"] = reps;
    out["orders"].push_back(entry);
  }
  verdict = true;
  return out;
}

json run_cyclotomic_check(const ProblemSpec& s, bool& verdict) {
  FiniteGroup g = build_group(s);
  CyclotomicData data{g, s.prime, s.depth, s.degree,
                      build_character(s, g, pow_mod_of(s.prime, s.depth + 1))};
  auto rep = is_cyclotomic_pair(data);
  json out;
  out["cyclotomic"] = rep.is_cyclotomic;
  json subs = json::array();
  bool witnesses_ok = true;
  for (auto& sr : rep.subgroups) {
    json e;
    e["subgroup"] = sr.elements;
    e["surjective"] = sr.surjective;
    e["top_order"] = sr.top_order;
    e["bottom_order"] = sr.bottom_order;
    if (sr.witness) {
      e["witness"] = row_to_json(*sr.witness);
      // the witness re-validates: a genuine unliftable cocycle over H
      Subgroup h = subgroup_of(g, sr.elements);
      Character chih = data.chi.restricted(h);
      GModule tmod = GModule::character_module(chih, s.degree, s.depth + 1, data.top_mod());
      GModule bmod = GModule::character_module(chih, s.degree, 1, data.top_mod());
      witnesses_ok = witnesses_ok &&
                     cohomology(bmod, s.degree)->is_cocycle(*sr.witness) &&
                     !lift_class_through(GModMap{tmod, bmod, identity(1)}, s.degree,
                                         *sr.witness);
    }
    subs.push_back(e);
  }
  out["subgroups"] = subs;
  out["witnesses_revalidated"] = witnesses_ok;
  verdict = rep.is_cyclotomic;
  if (!witnesses_ok) throw ZpError("cyclotomic witness failed re-validation");
  return out;
}

json run_cyclothymic_search(const ProblemSpec& s, bool& verdict) {
  FiniteGroup g = build_group(s);
  Character theta = build_character(s, g, Mod::make(s.prime));
  std::vector<CyclothymicInput> inputs;
  for (auto& [els, coords] : s.instances) {
    CyclothymicInput in;
    in.subgroup_elements = els;
    in.class_over_subgroup = RowZ(coords.size());
    for (size_t i = 0; i < coords.size(); ++i) in.class_over_subgroup(i) = coords[i];
    inputs.push_back(in);
  }
  auto witness = is_cyclothymic_witness(g, s.degree, s.depth, theta, inputs);
  json out;
  out["found"] = witness.has_value();
  if (witness) {
    out["lift_character"] = witness->values;
    // re-validate: every supplied class lifts through the found character
    Mod top = pow_mod_of(s.prime, s.depth + 1);
    for (auto& in : inputs) {
      Subgroup h = subgroup_of(g, in.subgroup_elements);
      GModule tmod = GModule::character_module(witness->restricted(h), 1, s.depth + 1, top);
      GModule bmod = GModule::character_module(witness->restricted(h), 1, 1, top);
      if (!lift_class_through(GModMap{tmod, bmod, identity(1)}, s.degree,
                              in.class_over_subgroup))
        throw ZpError("cyclothymic witness failed re-validation");
    }
    out["witness_revalidated"] = true;
  }
  verdict = witness.has_value();
  return out;
}

json run_fit(const ProblemSpec& s, bool& verdict) {
  FiniteGroup g = build_group(s);
  FiniteAlgebra a = build_algebra(s);
  AlgebraAction act = build_action(s, g, a);
  auto fit = fit_factorization(a, act);
  json out;
  out["m"] = fit.m;
  out["x_size"] = fit.x_size;
  out["f"] = mat_to_json(fit.f);
  out["g"] = mat_to_json(fit.g);
  out["x_perm"] = fit.x_perm;
  // re-validate the witness: g o f = Frob^m
  Mod mp = a.base_mod();
  MatZ frobm = identity(a.dim());
  for (int i = 0; i < fit.m; ++i) frobm = mul_mod(frobm, a.frobenius_matrix(), mp);
  verdict = mul_mod(fit.f, fit.g, mp) == frobm;
  out["g_after_f_is_frobenius_power"] = verdict;
  return out;
}

json run_lift(const ProblemSpec& s, bool& verdict) {
  FiniteGroup g = build_group(s);
  FiniteAlgebra a = build_algebra(s);
  AlgebraAction act = build_action(s, g, a);
  CyclotomicData data{g, s.prime, s.depth, 1,
                      build_character(s, g, pow_mod_of(s.prime, s.depth + 1))};
  LiftContext ctx(data, a, act);
  auto hrp = cohomology(ctx.level(s.level).gmodule(), 1);
  const CohomologyGroup& hr = *hrp;
  RowZ c;
  if (s.class_kind == "zero") {
    c = hr.zero_class();
  } else if (s.class_kind == "coords") {
    c = RowZ(s.class_coords.size());
    for (size_t i = 0; i < s.class_coords.size(); ++i) c(i) = s.class_coords[i];
  } else {
    auto classes = hr.all_classes();
    if (s.class_index < 0 || s.class_index >= static_cast<Int>(classes.size()))
      throw ZpError("class index out of range");
    c = classes[s.class_index];
  }
  auto rep = lift_cocycle_rank1(data, a, act, s.level, c);
  json out;
  out["m"] = rep.m;
  out["m_ladder"] = rep.m_ladder;
  out["m_of_algebra"] = rep.m_of_a;
  out["input_class"] = row_to_json(hr.canon(c));
  out["lift"] = row_to_json(rep.lift);
  // witness re-validation: the lift reduces to the Frobenius pullback
  RowZ down = map_cochain(ctx.truncation(s.depth + 1, s.level), 1, rep.lift);
  bool ok = hr.canon(down) == hr.canon(ctx.frob_pullback(s.level, c, rep.m));
  ok = ok && cohomology(ctx.level(s.depth + 1).gmodule(), 1)->is_cocycle(rep.lift);
  ok = ok && rep.m <= rep.m_of_a * s.level;
  out["revalidated"] = ok;
  verdict = ok;
  return out;
}

json run_smooth_check(const ProblemSpec& s, bool& verdict, Int bound) {
  FiniteGroup g = build_group(s);
  FiniteAlgebra a = build_algebra(s);
  AlgebraAction act = build_action(s, g, a);
  auto rep = smooth_instance_check(a, act, s.bound > 0 ? s.bound : bound);
  json out;
  out["surjective"] = rep.surjective;
  // witnesses re-validate: every emitted lift satisfies the twisted cocycle
  // law and reduces into the class it was recorded for
  BorelGroup level2(WittRing(a, 2), act);
  BorelGroup level1(WittRing(a, 1), act);
  bool witnesses_ok = true;
  json lifts = json::array();
  for (size_t i = 0; i < rep.detail.level1_reps.size(); ++i) {
    json e;
    json table = json::array();
    for (auto& be : rep.detail.level1_reps[i]) table.push_back({be.a, be.b, be.d});
    e["mod_p_class"] = table;
    if (rep.detail.lifts[i]) {
      json lt = json::array();
      for (auto& be : *rep.detail.lifts[i]) lt.push_back({be.a, be.b, be.d});
      e["lift"] = lt;
      witnesses_ok = witnesses_ok && level2.cocycle_law(*rep.detail.lifts[i]);
      std::vector<BorelElem> red(rep.detail.lifts[i]->size());
      for (size_t t = 0; t < red.size(); ++t)
        red[t] = level2.reduce_mod_p(level1, (*rep.detail.lifts[i])[t]);
      witnesses_ok =
          witnesses_ok && level1.twisted_conjugate(rep.detail.level1_reps[i], red);
    }
    lifts.push_back(e);
  }
  out["classes"] = lifts;
  out["witnesses_revalidated"] = witnesses_ok;
  verdict = rep.surjective && witnesses_ok;
  return out;
}

json run_laurent(const ProblemSpec& s, bool& verdict) {
  FiniteGroup g = build_group(s);
  CyclotomicData data{g, s.prime, s.depth, s.degree,
                      build_character(s, g, pow_mod_of(s.prime, s.depth + 1))};
  auto lm = laurent_model(data, s.laurent_level);
  json out;
  out["order"] = lm.big.order();
  out["note"] = "finite-level model; the profinite statement is out of scope";
  out["t_cocycle"] = row_to_json(lm.t_cocycle);
  // the (t) cocycle restricted to the kernel is the tautological map
  bool taut = true;
  for (size_t x = 0; x < lm.embed_kernel.size(); ++x)
    taut = taut && lm.t_cocycle(lm.embed_kernel[x]) == static_cast<Int>(x);
  out["kernel_restriction_tautological"] = taut;
  CohomologyGroup h1(lm.coefficients, 1);
  out["t_is_cocycle"] = h1.is_cocycle(lm.t_cocycle);
  out["t_class_nonzero"] = h1.canon(lm.t_cocycle) != h1.zero_class();
  verdict = taut && h1.is_cocycle(lm.t_cocycle);
  return out;
}

json run_kummer_identity(const ProblemSpec& s, bool& verdict) {
  if (s.prime != 2) throw ZpError("kummer-identity requires p = 2");
  FiniteGroup g = build_group(s);
  Mod m4 = Mod::make(4);
  Character chi = build_character(s, g, m4);
  GModule f2 = GModule::trivial(g, m4).quotient_by_p_power(1);
  CohomologyGroup h1(f2, 1);
  RowZ e1;
  if (s.class_kind == "zero") {
    e1 = h1.zero_class();
  } else if (s.class_kind == "coords") {
    e1 = RowZ(s.class_coords.size());
    for (size_t i = 0; i < s.class_coords.size(); ++i) e1(i) = s.class_coords[i];
  } else {
    auto classes = h1.all_classes();
    if (s.class_index < 0 || s.class_index >= static_cast<Int>(classes.size()))
      throw ZpError("class index out of range");
    e1 = classes[s.class_index];
  }
  json out;
  GModule big = GModule::character_module(chi, 1, 2, m4);
  GModMap red{big, f2, identity(1)};
  auto zhat = lift_class_through(red, 1, e1);
  out["lift_exists"] = zhat.has_value();
  if (!zhat) {
    out["note"] = "e1 does not lift to Z/4(chi); identity not applicable";
    verdict = false;
    return out;
  }
  // build the extension of Z/4 by Z/4(chi) classified by the lifted cocycle
  GModule z4 = GModule::trivial(g, m4);
  HomModule hom = hom_module(z4, big);
  RowZ homified = RowZ::Zero(static_cast<Int>(g.order()) * hom.hom.gens());
  for (int gg = 0; gg < g.order(); ++gg) {
    MatZ f(1, 1);
    f(0, 0) = (*zhat)(gg);
    homified.segment(static_cast<Int>(gg) * hom.hom.gens(), hom.hom.gens()) = hom.encode(f);
  }
  GModExtension ext = extension_from_cocycle(big, z4, hom, homified);
  auto rep = kummer_identity_check(g, e1, chi, ext);
  out["reduction_matches"] = rep.reduction_matches;
  out["identity_holds"] = rep.identity_holds;
  out["e1_cup_e1"] = row_to_json(rep.lhs);
  out["chi_cup_e1"] = row_to_json(rep.rhs);
  verdict = rep.reduction_matches && rep.identity_holds;
  return out;
}

json echo_input(const ProblemSpec& s) {
  json in;
  in["task"] = s.task;
  in["prime"] = s.prime;
  in["depth"] = s.depth;
  in["degree"] = s.degree;
  in["level"] = s.level;
  in["group"] = s.group_kind;
  in["group_params"] = s.group_params;
  if (!s.character.empty()) in["character"] = s.character;
  if (!s.algebra_kind.empty()) {
    in["algebra"] = s.algebra_kind;
    in["algebra_params"] = s.algebra_params;
    in["action"] = s.action_kind;
  }
  return in;
}

std::string render_human(const json& report) {
  std::ostringstream os;
  os << "wittlift " << report["version"].get<std::string>() << "  task="
     << report["task"].get<std::string>() << "\n";
  if (report.contains("error")) os << "error: " << report["error"].get<std::string>() << "\n";
  os << "verdict: " << (report["verdict"].get<bool>() ? "PASS" : "NEGATIVE") << "\n";
  os << "details: " << report["details"].dump() << "\n";
  os << "hash: " << report["hash"].get<std::string>() << "\n";
  if (report.contains("timing_ms") && !report["timing_ms"].is_null())
    os << "timing_ms: " << report["timing_ms"].dump() << "\n";
  return os.str();
}

}  // namespace

RunResult run_problem_text(const std::string& text, const RunOptions& opt) {
  RunResult result;
  json report;
  report["tool"] = "wittlift";
  report["version"] = library_version();
  auto started = std::chrono::steady_clock::now();
  try {
    ProblemSpec spec = parse_problem(text);
    if (!opt.task_override.empty()) spec.task = opt.task_override;
    report["task"] = spec.task;
    report["input"] = echo_input(spec);
    bool verdict = false;
    json details;
    if (spec.task == "cohomology")
      details = run_cohomology(spec, verdict);
    else if (spec.task == "cyclotomic-check")
      details = run_cyclotomic_check(spec, verdict);
    else if (spec.task == "cyclothymic-search")
      details = run_cyclothymic_search(spec, verdict);
    else if (spec.task == "fit")
      details = run_fit(spec, verdict);
    else if (spec.task == "lift")
      details = run_lift(spec, verdict);
    else if (spec.task == "smooth-check")
      details = run_smooth_check(spec, verdict, opt.bound);
    else if (spec.task == "laurent")
      details = run_laurent(spec, verdict);
    else if (spec.task == "kummer-identity")
      details = run_kummer_identity(spec, verdict);
    else
      throw ZpError("unknown task '" + spec.task + "'");
    report["details"] = details;
    report["verdict"] = verdict;
    result.verdict = verdict;
    result.exit_code = verdict || opt.lenient ? 0 : 1;
  } catch (const std::exception& ex) {
    report["error"] = ex.what();
    report["verdict"] = false;
    report["details"] = json::object();
    if (!report.contains("task")) report["task"] = "unknown";
    result.exit_code = 2;
    result.verdict = false;
  }
  report["hash"] = fnv1a(report.dump());
  if (opt.timing) {
    auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                        started)
                  .count();
    report["timing_ms"] = ms;
  } else {
    report["timing_ms"] = nullptr;
  }
  result.output = opt.json ? report.dump(2) + "\n" : render_human(report);
  return result;
}

RunResult run_corpus(const RunOptions& opt) {
  RunResult result;
  auto criteria = run_acceptance_criteria(opt.filter, false);
  json report;
  report["tool"] = "wittlift";
  report["version"] = library_version();
  report["task"] = "corpus";
  bool all = true;
  json entries = json::array();
  for (auto& c : criteria) {
    json e;
    e["id"] = c.id;
    e["name"] = c.name;
    e["passed"] = c.passed;
    e["details"] = c.details;
    if (opt.timing) e["timing_ms"] = c.millis;
    entries.push_back(e);
    all = all && c.passed;
  }
  report["criteria"] = entries;
  report["verdict"] = all;
  report["hash"] = fnv1a(report.dump());
  result.verdict = all;
  result.exit_code = all || opt.lenient ? 0 : 1;
  if (opt.json) {
    result.output = report.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "wittlift corpus (" << criteria.size() << " criteria)\n";
    for (auto& c : criteria) {
      os << (c.passed ? "PASS " : "FAIL ") << c.id << " " << c.name;
      if (opt.timing) os << "  [" << c.millis << " ms]";
      if (!c.passed) os << "  -- " << c.details;
      os << "\n";
    }
    os << (all ? "ALL PASS" : "FAILURES PRESENT") << "\n";
    result.output = os.str();
  }
  return result;
}

// ------------------------------------------------------ acceptance criteria

namespace {

struct CyclicCounts {
  Int h0, h1, h2;
};

// independent oracle: fixed points, norm kernels and images by element scans
CyclicCounts cyclic_oracle(const GModule& m, int generator) {
  auto els = m.elements();
  auto key = [&](const RowZ& v) {
    RowZ c = m.canon(v);
    return std::vector<Int>(c.data(), c.data() + c.cols());
  };
  std::set<std::vector<Int>> fixed, kerN, imS, imN;
  const int n = m.group().order();
  for (auto& x : els) {
    RowZ sx = m.act(generator, x);
    if (key(sx) == key(x)) fixed.insert(key(x));
    RowZ norm = RowZ::Zero(m.gens());
    int g = m.group().identity();
    for (int i = 0; i < n; ++i) {
      norm = reduce(norm + m.act(g, x), m.mod());
      g = m.group().mul(g, generator);
    }
    if (m.canon(norm).isZero()) kerN.insert(key(x));
    imN.insert(key(norm));
    imS.insert(key(reduce(sx - x, m.mod())));
  }
  return {static_cast<Int>(fixed.size()), static_cast<Int>(kerN.size() / imS.size()),
          static_cast<Int>(fixed.size() / imN.size())};
}

Character make_character(const FiniteGroup& g, Int mod_n, std::vector<Int> values) {
  Character c;
  c.group = g;
  c.mod = Mod::make(mod_n);
  c.values = std::move(values);
  c.validate();
  return c;
}

struct ThmAInstance {
  std::string name;
  CyclotomicData data;
  FiniteAlgebra algebra;
  AlgebraAction action;
};

std::vector<ThmAInstance> theorem_a_instances() {
  std::vector<ThmAInstance> out;
  auto c2 = FiniteGroup::cyclic(2);
  auto c3 = FiniteGroup::cyclic(3);
  auto c4 = FiniteGroup::cyclic(4);
  auto f2 = FiniteAlgebra::prime_field(2);
  auto f3 = FiniteAlgebra::prime_field(3);
  auto f4 = FiniteAlgebra::finite_field(2, {1, 1, 1});
  auto f8 = FiniteAlgebra::finite_field(2, {1, 1, 0, 1});
  auto f9 = FiniteAlgebra::finite_field(3, {1, 0, 1});
  auto dual2 = FiniteAlgebra::truncated_poly(2, 2);
  auto trunc3 = FiniteAlgebra::truncated_poly(3, 3);
  auto f2xf2 = FiniteAlgebra::product({f2, f2});
  auto f4xf4 = FiniteAlgebra::product({f4, f4});

  CyclotomicData c2_sign4{c2, 2, 1, 1, make_character(c2, 4, {1, 3})};
  CyclotomicData c2_sign8{c2, 2, 2, 1, make_character(c2, 8, {1, 7})};
  CyclotomicData c2_sign9{c2, 3, 1, 1, make_character(c2, 9, {1, 8})};
  CyclotomicData c4_sign9{c4, 3, 1, 1, make_character(c4, 9, {1, 8, 1, 8})};
  CyclotomicData c3_triv4{c3, 2, 1, 1, make_character(c3, 4, {1, 1, 1})};

  auto swapa = [&](const FiniteAlgebra& sq, int frob_t) {
    return AlgebraAction::product_action(c2, sq, {{0, 1}, {1, 0}},
                                         {{0, 0}, {frob_t, frob_t}});
  };

  out.push_back({"C2.sign4.F2", c2_sign4, f2, AlgebraAction::trivial(c2, f2)});
  out.push_back({"C2.sign4.F4", c2_sign4, f4, AlgebraAction::cyclic_frobenius(c2, f4, 1)});
  out.push_back({"C2.sign4.F2x", c2_sign4, dual2, AlgebraAction::trivial(c2, dual2)});
  out.push_back({"C2.sign4.F2xF2", c2_sign4, f2xf2, swapa(f2xf2, 0)});
  out.push_back({"C2.sign4.F4xF4", c2_sign4, f4xf4, swapa(f4xf4, 1)});
  out.push_back({"C2.sign8.F2", c2_sign8, f2, AlgebraAction::trivial(c2, f2)});
  out.push_back({"C2.sign8.F4", c2_sign8, f4, AlgebraAction::cyclic_frobenius(c2, f4, 1)});
  out.push_back({"C2.sign8.F2x", c2_sign8, dual2, AlgebraAction::trivial(c2, dual2)});
  out.push_back({"C2.sign9.F9", c2_sign9, f9, AlgebraAction::cyclic_frobenius(c2, f9, 1)});
  out.push_back({"C2.sign9.F3x3", c2_sign9, trunc3, AlgebraAction::trivial(c2, trunc3)});
  out.push_back({"C4.sign9.F9", c4_sign9, f9, AlgebraAction::cyclic_frobenius(c4, f9, 1)});
  out.push_back({"C3.triv4.F2", c3_triv4, f2, AlgebraAction::trivial(c3, f2)});
  out.push_back({"C3.triv4.F8", c3_triv4, f8, AlgebraAction::cyclic_frobenius(c3, f8, 1)});
  return out;
}

using Check = std::function<bool(std::string&)>;

bool criterion_witt_ring(std::string& details) {
  for (Int p : {2, 3, 5})
    for (int r = 1; r <= 3; ++r) {
      WittRing w(FiniteAlgebra::prime_field(p), r);
      Int pr = 1;
      for (int i = 0; i < r; ++i) pr *= p;
      std::vector<WittRing::Elem> image = {w.zero()};
      for (Int n = 1; n < pr; ++n) image.push_back(w.add(image.back(), w.one()));
      for (Int n = 0; n < pr; ++n)
        for (Int k = 0; k < n; ++k)
          if (image[n] == image[k]) {
            details = "unit iteration not injective";
            return false;
          }
      for (Int n = 0; n < pr; ++n)
        for (Int k = 0; k < pr; ++k) {
          if (w.add(image[n], image[k]) != image[(n + k) % pr] ||
              w.mul(image[n], image[k]) != image[(n * k) % pr]) {
            details = "unit iteration not a ring map";
            return false;
          }
        }
    }
  details = "W_r(F_p) = Z/p^r for p in {2,3,5}, r in {1,2,3}";
  return true;
}

bool criterion_universal_polys(std::string& details) {
  for (auto [p, r] : std::vector<std::pair<Int, int>>{{2, 2}, {2, 3}, {3, 2}, {5, 2}})
    universal_witt_polys(p, r);  // integrality asserted inside
  auto qvar = [](int nv, int i) { return QPoly::variable(nv, i); };
  auto& u2 = universal_witt_polys(2, 2);
  QPoly s1_2 = qvar(4, 1) + qvar(4, 3) - qvar(4, 0) * qvar(4, 2);
  if (!(u2.add[1] == s1_2)) {
    details = "S_1 mismatch at p=2";
    return false;
  }
  auto& u3 = universal_witt_polys(3, 2);
  QPoly a0 = qvar(4, 0), b0 = qvar(4, 2);
  QPoly s1_3 = qvar(4, 1) + qvar(4, 3) - a0 * a0 * b0 - a0 * b0 * b0;
  if (!(u3.add[1] == s1_3)) {
    details = "S_1 mismatch at p=3";
    return false;
  }
  details = "ghost inversion integral for (2,2),(2,3),(3,2),(5,2); S_1 frozen values match";
  return true;
}

bool criterion_structure_identities(std::string& details) {
  auto f4 = FiniteAlgebra::finite_field(2, {1, 1, 1});
  auto dual = FiniteAlgebra::truncated_poly(2, 2);
  {
    WittRing w(f4, 3);
    for (auto& x : w.elements()) {
      auto fv = w.frobenius(w.verschiebung(x));
      if (fv != w.verschiebung(w.frobenius(x)) || fv != w.scalar(2, x)) {
        details = "FV = VF = p fails on W_3(F_4)";
        return false;
      }
    }
    for (int rp : {1, 2}) {
      std::set<Int> kernel, image;
      for (auto& x : w.elements())
        if (w.truncate(x, rp).isZero()) kernel.insert(w.encode(x));
      WittRing shorter(f4, 3 - rp);
      for (auto& y : shorter.elements()) image.insert(w.encode(w.verschiebung_in(y, rp)));
      if (kernel != image) {
        details = "kernel of truncation differs from V-image on W_3(F_4)";
        return false;
      }
    }
  }
  {
    WittRing w(dual, 2);
    for (auto& x : w.elements()) {
      auto fv = w.frobenius(w.verschiebung(x));
      if (fv != w.verschiebung(w.frobenius(x)) || fv != w.scalar(2, x)) {
        details = "FV = VF = p fails on W_2(F_2[x]/(x^2))";
        return false;
      }
    }
    std::set<Int> kernel, image;
    for (auto& x : w.elements())
      if (w.truncate(x, 1).isZero()) kernel.insert(w.encode(x));
    WittRing shorter(dual, 1);
    for (auto& y : shorter.elements()) image.insert(w.encode(w.verschiebung_in(y, 1)));
    if (kernel != image) {
      details = "kernel of truncation differs from V-image on W_2(F_2[x]/(x^2))";
      return false;
    }
  }
  details = "FV = VF = p and V-filtration exactness, exhaustive on W_3(F_4), W_2(F_2[x]/(x^2))";
  return true;
}

bool criterion_cohomology_engine(std::string& details) {
  int checked = 0;
  for (int mord : {1, 2, 3, 4})
    for (Int p : {2, 3})
      for (int r = 1; r <= 2; ++r) {
        auto cm = FiniteGroup::cyclic(mord);
        Mod mod = pow_mod_of(p, r);
        for (auto& chi : Character::all(cm, mod)) {
          auto m = GModule::character_module(chi, 1, r, mod);
          auto counts = cyclic_oracle(m, mord == 1 ? 0 : 1);
          if (CohomologyGroup(m, 0).order() != counts.h0 ||
              CohomologyGroup(m, 1).order() != counts.h1 ||
              CohomologyGroup(m, 2).order() != counts.h2) {
            details = "order mismatch vs the cyclic oracle";
            return false;
          }
          ++checked;
        }
      }
  details = "H^0..H^2 orders match the norm/fixed-point oracle on " +
            std::to_string(checked) + " cyclic modules";
  return true;
}

bool criterion_cyclotomic_fixtures(std::string& details) {
  auto c2 = FiniteGroup::cyclic(2);
  auto c3 = FiniteGroup::cyclic(3);
  {
    CyclotomicData d{c2, 2, 1, 1, make_character(c2, 4, {1, 3})};
    if (!is_cyclotomic_pair(d).is_cyclotomic) {
      details = "(C_2, sign mod 4) should be cyclotomic";
      return false;
    }
  }
  for (Int p : {2, 3}) {
    auto cp = FiniteGroup::cyclic(static_cast<int>(p));
    CyclotomicData d{cp, p, 1, 1, Character::trivial(cp, pow_mod_of(p, 2))};
    auto rep = is_cyclotomic_pair(d);
    if (rep.is_cyclotomic) {
      details = "(C_p, trivial mod p^2) should fail";
      return false;
    }
    bool witness_on_full = false;
    for (auto& sr : rep.subgroups)
      if (!sr.surjective && static_cast<Int>(sr.elements.size()) == p && sr.witness)
        witness_on_full = true;
    if (!witness_on_full) {
      details = "missing witness on the full subgroup C_p";
      return false;
    }
  }
  {
    for (auto& chi : Character::all(c3, Mod::make(4))) {
      CyclotomicData d{c3, 2, 1, 1, chi};
      if (!is_cyclotomic_pair(d).is_cyclotomic) {
        details = "(C_3, chi, p=2) should be cyclotomic for every chi";
        return false;
      }
    }
  }
  details = "fixtures: (C_2,sign mod 4) true; (C_p,trivial mod p^2) false with witness; (C_3,*) true";
  return true;
}

bool criterion_kummer_identity(std::string& details) {
  std::vector<FiniteGroup> groups = {FiniteGroup::trivial(), FiniteGroup::cyclic(2),
                                     FiniteGroup::cyclic(3), FiniteGroup::cyclic(4),
                                     FiniteGroup::direct_product(FiniteGroup::cyclic(2),
                                                                 FiniteGroup::cyclic(2))};
  Mod m4 = Mod::make(4);
  int tested = 0;
  for (auto& g : groups) {
    GModule f2 = GModule::trivial(g, m4).quotient_by_p_power(1);
    CohomologyGroup h1(f2, 1);
    for (auto& chi : Character::all(g, m4)) {
      GModule big = GModule::character_module(chi, 1, 2, m4);
      GModMap red{big, f2, identity(1)};
      for (auto& e1 : h1.all_classes()) {
        auto zhat = lift_class_through(red, 1, e1);
        if (!zhat) continue;  // no mod-4 lift: the identity is not asserted
        GModule z4 = GModule::trivial(g, m4);
        HomModule hom = hom_module(z4, big);
        RowZ homified = RowZ::Zero(static_cast<Int>(g.order()) * hom.hom.gens());
        for (int gg = 0; gg < g.order(); ++gg) {
          MatZ f(1, 1);
          f(0, 0) = (*zhat)(gg);
          homified.segment(static_cast<Int>(gg) * hom.hom.gens(), hom.hom.gens()) =
              hom.encode(f);
        }
        GModExtension ext = extension_from_cocycle(big, z4, hom, homified);
        auto rep = kummer_identity_check(g, e1, chi, ext);
        if (!rep.reduction_matches || !rep.identity_holds) {
          details = "identity failed on a lifted instance";
          return false;
        }
        ++tested;
      }
    }
  }
  details = "e1 cup e1 = chi cup e1 on " + std::to_string(tested) +
            " lifted instances with |G| <= 4";
  return true;
}

bool criterion_fit(std::string& details) {
  auto c2 = FiniteGroup::cyclic(2);
  auto c3 = FiniteGroup::cyclic(3);
  auto f2 = FiniteAlgebra::prime_field(2);
  auto f3 = FiniteAlgebra::prime_field(3);
  auto f4 = FiniteAlgebra::finite_field(2, {1, 1, 1});
  auto f8 = FiniteAlgebra::finite_field(2, {1, 1, 0, 1});
  auto f9 = FiniteAlgebra::finite_field(3, {1, 0, 1});
  auto dual = FiniteAlgebra::truncated_poly(2, 2);
  auto tr3 = FiniteAlgebra::truncated_poly(3, 3);
  auto f2x = FiniteAlgebra::product({f2, f2});
  auto f4x = FiniteAlgebra::product({f4, f4});

  std::vector<std::tuple<std::string, FiniteAlgebra, AlgebraAction, int>> corpus = {
      {"F_p", f2, AlgebraAction::trivial(c2, f2), 0},
      {"F_4", f4, AlgebraAction::cyclic_frobenius(c2, f4, 1), 0},
      {"F_8", f8, AlgebraAction::cyclic_frobenius(c3, f8, 1), 0},
      {"F_9", f9, AlgebraAction::cyclic_frobenius(c2, f9, 1), 0},
      {"F_2[x]/(x^2)", dual, AlgebraAction::trivial(c2, dual), 1},
      {"F_3[x]/(x^3)", tr3, AlgebraAction::trivial(c2, tr3), 1},
      {"F_2xF_2 swap", f2x,
       AlgebraAction::product_action(c2, f2x, {{0, 1}, {1, 0}}, {{0, 0}, {0, 0}}), 0},
      {"F_4xF_4 swap.frob", f4x,
       AlgebraAction::product_action(c2, f4x, {{0, 1}, {1, 0}}, {{0, 0}, {1, 1}}), 0},
  };
  for (auto& [name, a, act, expect_m] : corpus) {
    auto fit = fit_factorization(a, act);  // identities asserted internally
    auto [k, mmin] = a.nilpotency_data();
    (void)k;
    if (fit.m != mmin || fit.m != expect_m) {
      details = "m differs from the nilpotency minimum on " + name;
      return false;
    }
  }
  details = "g o f = Frob^m with equivariance on the 8-algebra corpus";
  return true;
}

bool criterion_theorem_a(std::string& details) {
  int lifted = 0;
  for (auto& inst : theorem_a_instances()) {
    auto check = is_cyclotomic_pair(inst.data);
    if (!check.is_cyclotomic) {
      details = "corpus instance unexpectedly fails the cyclotomic check: " + inst.name;
      return false;
    }
    LiftContext ctx(inst.data, inst.algebra, inst.action);
    int m_of_a = fit_factorization(inst.algebra, inst.action).m;
    for (int r = 1; r <= inst.data.e; ++r) {
      auto hrp = cohomology(ctx.level(r).gmodule(), 1);
      const CohomologyGroup& hr = *hrp;
      for (auto& cls : hr.all_classes()) {
        auto rep = lift_cocycle_rank1(inst.data, inst.algebra, inst.action, r, cls);
        RowZ down = map_cochain(ctx.truncation(inst.data.e + 1, r), 1, rep.lift);
        if (hr.canon(down) != hr.canon(ctx.frob_pullback(r, cls, rep.m))) {
          details = "reduction identity failed on " + inst.name;
          return false;
        }
        if (rep.m > m_of_a * r || rep.m_ladder > m_of_a * r) {
          details = "exponent bound m <= m(A) r violated on " + inst.name;
          return false;
        }
        ++lifted;
      }
    }
  }
  details = "every class lifted with trunc(lift) = Frob^m pullback on " +
            std::to_string(lifted) + " classes";
  return true;
}

bool criterion_obstruction(std::string& details) {
  std::vector<FiniteGroup> groups = {FiniteGroup::cyclic(2), FiniteGroup::cyclic(3),
                                     FiniteGroup::cyclic(4),
                                     FiniteGroup::direct_product(FiniteGroup::cyclic(2),
                                                                 FiniteGroup::cyclic(2))};
  int tested = 0;
  for (auto& g : groups) {
    std::vector<ModuleSES> cases;
    for (Int p : {2, 3}) {
      Mod mp2 = pow_mod_of(p, 2);
      for (auto& chi : Character::all(g, mp2)) {
        GModule big = GModule::character_module(chi, 1, 2, mp2);
        GModule sub = big.quotient_by_p_power(1);
        GModule quot = big.quotient_by_p_power(1);
        MatZ tp(1, 1);
        tp << p;
        cases.push_back(ModuleSES{GModMap{sub, big, tp}, GModMap{big, quot, identity(1)}});
      }
    }
    if (g.order() == 2) {
      // a Witt-module case: W_2(F_4)(-1) -> F_4(-1)
      auto f4 = FiniteAlgebra::finite_field(2, {1, 1, 1});
      CyclotomicData d{g, 2, 1, 1, make_character(g, 4, {1, 3})};
      LiftContext ctx(d, f4, AlgebraAction::cyclic_frobenius(g, f4, 1));
      cases.push_back(ModuleSES{ctx.verschiebung(1, 2), ctx.truncation(2, 1)});
      // an order-81 middle module: Z/9(chi) + Z/9 -> Z/9(chi)
      Mod m9 = pow_mod_of(3, 2);
      auto chi9 = make_character(g, 9, {1, 8});
      GModule twisted = GModule::character_module(chi9, 1, 2, m9);
      GModule triv = GModule::trivial(g, m9);
      GModule big = GModule::direct_sum(twisted, triv);
      cases.push_back(ModuleSES{sum_inclusion(twisted, triv, big, 1),
                                sum_projection(big, twisted, triv, 0)});
    }
    for (auto& ses : cases) {
      ses.validate();
      CohomologyGroup hq(ses.surj.to, 1);
      CohomologyGroup h2(ses.inj.from, 2);
      if (ses.inj.to.order() > 81) continue;
      for (auto& cls : hq.all_classes()) {
        RowZ obs = obstruction_class(ses, cls);
        bool vanish = h2.canon(obs) == h2.zero_class();
        if (vanish != lift_exists_brute(ses, cls)) {
          details = "obstruction and brute-force lifting disagree";
          return false;
        }
        ++tested;
      }
    }
  }
  details = "Obs = 0 iff a brute-force lift exists on " + std::to_string(tested) +
            " classes";
  return true;
}

bool criterion_torsors(std::string& details) {
  Mod m2 = Mod::make(2);
  for (int ord : {2, 3}) {
    auto g = FiniteGroup::cyclic(ord);
    auto f2 = GModule::trivial(g, m2);
    HomModule hom = hom_module(f2, f2);
    CohomologyGroup h1(hom.hom, 1);
    for (auto& cls : h1.all_classes()) {
      auto ext = extension_from_cocycle(f2, f2, hom, cls);
      auto tor = torsor_of_extension(ext);
      if (tor.points != static_cast<int>(ext.b.order())) {
        details = "torsor size differs from |B|";
        return false;
      }
      auto back = extension_of_torsor(tor);
      auto c1 = extension_class(ext, hom), c2 = extension_class(back, hom);
      if (!c2.geometrically_trivial ||
          h1.canon(c1.cocycle) != h1.canon(c2.cocycle)) {
        details = "round trip changed the class";
        return false;
      }
      if (!torsors_isomorphic(tor, torsor_of_extension(back))) {
        details = "round-trip torsors are not isomorphic";
        return false;
      }
      auto from_hom = extension_automorphisms(ext);
      auto brute = extension_automorphisms_brute(ext);
      if (from_hom.size() != brute.size()) {
        details = "automorphism count differs from the exhaustive search";
        return false;
      }
    }
  }
  details = "round trips are isomorphisms; automorphism counts match Hom_G(A,B)";
  return true;
}

bool criterion_b2(std::string& details) {
  auto c2 = FiniteGroup::cyclic(2);
  auto f2 = FiniteAlgebra::prime_field(2);
  auto act = AlgebraAction::trivial(c2, f2);
  auto rep = smooth_instance_check(f2, act);
  if (!rep.surjective) {
    details = "(C_2, F_2) should pass";
    return false;
  }
  BorelGroup level2(WittRing(f2, 2), act);
  BorelGroup level1(WittRing(f2, 1), act);
  bool witness_ok = false;
  for (size_t c = 0; c < rep.detail.level1_reps.size(); ++c) {
    if (!rep.detail.lifts[c]) continue;
    auto& table = *rep.detail.lifts[c];
    if (!(level2.mul(table[1], level2.act(1, table[1])) == level2.identity_elem())) {
      details = "lift witness is not of order two mod 4";
      return false;
    }
    auto red = level2.reduce_mod_p(level1, table[1]);
    BorelElem uni{level1.ring().encode(level1.ring().one()),
                  level1.ring().encode(level1.ring().one()),
                  level1.ring().encode(level1.ring().one())};
    if (red == uni) witness_ok = true;
  }
  if (!witness_ok) {
    details = "no lift reducing to the unipotent class";
    return false;
  }
  details = "(C_2, F_2) surjective; witness squares to the identity mod 4";
  return true;
}

}  // namespace

std::vector<CriterionResult> run_acceptance_criteria(const std::string& filter,
                                                     bool include_determinism) {
  struct Entry {
    std::string name;
    Check fn;
    double budget_ms;  // wall-clock budget, enforced
  };
  std::vector<Entry> checks = {
      {"witt-ring-iso", criterion_witt_ring, 1000},
      {"universal-polys", criterion_universal_polys, 5000},
      {"witt-structure", criterion_structure_identities, 10000},
      {"cohomology-engine", criterion_cohomology_engine, 60000},
      {"cyclotomic-fixtures", criterion_cyclotomic_fixtures, 5000},
      {"kummer-identity", criterion_kummer_identity, 30000},
      {"fit-soundness", criterion_fit, 5000},
      {"theorem-a", criterion_theorem_a, 120000},
      {"obstruction-equivalence", criterion_obstruction, 120000},
      {"torsor-dictionary", criterion_torsors, 30000},
      {"b2-smoothness", criterion_b2, 1000},
  };
  (void)include_determinism;  // criterion 12 is exercised process-level by the test suite
  std::vector<CriterionResult> out;
  int id = 0;
  for (auto& entry : checks) {
    ++id;
    if (!filter.empty() && entry.name.find(filter) == std::string::npos) continue;
    CriterionResult r;
    r.id = id;
    r.name = entry.name;
    auto started = std::chrono::steady_clock::now();
    try {
      r.passed = entry.fn(r.details);
    } catch (const std::exception& ex) {
      r.passed = false;
      r.details = std::string("exception: ") + ex.what();
    }
    r.millis =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
            .count();
    r.budget_ms = entry.budget_ms;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace wittlift
