#include <algorithm>
#include <chrono>
#include <functional>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "hsf/fourfolds.hpp"
#include "hsf/parse.hpp"
#include "hsf/version.hpp"

using namespace hsf;
using nlohmann::json;

namespace {

struct RunConfig {
  u64 seed = 20211004;
  u32 characteristic = PrimeField::kDefault;
  bool verbose = false;
  bool thorough = false;
  bool json_output = false;
  bool timing = true;
};

struct Source {
  std::string kind = "gm";
  std::string name;
  std::string model;
  std::string curve;
};

// what a subcommand produced
struct Report {
  std::vector<std::string> log;   // progress lines, shown with --verbose
  std::vector<std::string> text;  // the human-readable result
  json result = json::object();
};

struct StageError : std::runtime_error {
  StageError(const std::string& stage, const std::string& what, int code)
      : std::runtime_error(what), stage(stage), code(code) {}
  std::string stage;
  int code;
};

PlaneModelSpec parse_model(const std::string& s) { return model_spec_from_list(parse_int_list(s)); }
CurveSpec parse_curve(const std::string& s) { return curve_spec_from_list(parse_int_list(s)); }

FourfoldKind source_kind(const Source& s) { return parse_kind(s.kind); }

HodgeSpecialFourfold build_fourfold(const Source& s, const RunConfig& cfg, Rng& rng) {
  FourfoldOptions opt;
  opt.thorough = cfg.thorough;
  FourfoldKind k = source_kind(s);
  if (!s.name.empty() && !s.model.empty()) throw InputError("give either --name or --model, not both");
  if (k == FourfoldKind::GM) {
    if (!s.name.empty()) return special_gm_fourfold(s.name, rng, opt);
    if (s.model.empty() || s.curve.empty()) throw InputError("GM fourfolds need --name, or --model with --curve");
    return special_gm_fourfold(parse_model(s.model), parse_curve(s.curve), rng, opt);
  }
  if (!s.name.empty()) return special_cubic_fourfold(s.name, rng, opt);
  if (s.model.empty()) throw InputError("cubic fourfolds need --name or --model");
  if (!s.curve.empty()) throw InputError("cubic fourfolds take no --curve");
  return special_cubic_fourfold(parse_model(s.model), rng, opt);
}

void add_source_options(CLI::App* sub, Source& s, bool with_kind) {
  if (with_kind) sub->add_option("--kind", s.kind, "gm or cubic")->check(CLI::IsMember({"gm", "cubic"}));
  sub->add_option("--name", s.name, "named surface fixture, e.g. tau-quadric");
  sub->add_option("--model", s.model, "plane model a,i,j,k,...");
  sub->add_option("--curve", s.curve, "plane curve e,l,m,n,... (GM only)");
}

json ring_json(const RingPtr& R) {
  return {{"char", R->field().p()}, {"vars", R->names()}, {"order", R->order().name()}};
}

json polys_json(const std::vector<Poly>& ps) {
  json a = json::array();
  for (auto& p : ps) a.push_back(p.str());
  return a;
}

std::string variety_line(const std::string& what, const VarietyInvariants& inv, int ambient) {
  std::ostringstream os;
  os << what << ": " << (inv.dim == 2 ? "surface" : std::to_string(inv.dim) + "-dimensional variety") << " of degree "
     << inv.degree << " and sectional genus " << inv.genus << " in PP^" << ambient;
  return os.str();
}

json invariants_json(const VarietyInvariants& inv, int ambient) {
  return {{"dim", inv.dim}, {"degree", inv.degree}, {"sectional_genus", inv.genus}, {"chi", inv.chi}, {"ambient", ambient}};
}

json fano_json(const FanoMapReport& m) {
  return {{"e", m.e},
          {"W", {{"dim", m.kind.dim}, {"degree", m.kind.degree}, {"ambient", m.kind.ambient}, {"index", m.kind.index},
                 {"name", m.kind.name}}},
          {"fiber_degree_on_X", m.fiber_degree_X},
          {"fiber_curve_degree", m.fiber_curve_degree},
          {"forms", polys_json(m.mu.forms())}};
}

// ---- subcommands

Report cmd_admissible(const std::string& kind, long max) {
  Report r;
  FourfoldKind k = parse_kind(kind);
  json rows = json::array();
  std::ostringstream head;
  head << std::left << std::setw(6) << "d" << std::setw(10) << "labels" << std::setw(12) << "admissible"
       << (k == FourfoldKind::Cubic ? "Addington (a, n)" : "");
  r.text.push_back(head.str());
  for (auto& v : nl_values(k, max)) {
    bool adm = is_admissible(k, v.d);
    std::string labels;
    for (auto& l : v.labels) labels += (labels.empty() ? "" : ",") + l;
    json row = {{"d", v.d}, {"labels", v.labels}, {"admissible", adm}};
    std::ostringstream os;
    os << std::left << std::setw(6) << v.d << std::setw(10) << (labels.empty() ? "-" : labels) << std::setw(12)
       << (adm ? "yes" : "no");
    if (k == FourfoldKind::Cubic) {
      auto f = addington_form(v.d);
      row["addington"] = f ? json{{"a", f->a}, {"n", f->n}} : json(nullptr);
      os << (f ? "(" + std::to_string(f->a) + ", " + std::to_string(f->n) + ")" : "none within bound");
    }
    r.text.push_back(os.str());
    rows.push_back(row);
  }
  auto comps = kuznetsov_list(k, max);
  std::string line = "admissible components:";
  for (auto& c : comps) line += " " + c;
  r.text.push_back(line);
  r.result = {{"kind", kind_name(k)}, {"max", max}, {"values", rows}, {"components", comps}};
  return r;
}

struct DiscArgs {
  std::string kind = "gm";
  long deg = 0, genus = 0, chi = 1, delta = 0;
  std::optional<long> k2;
  std::string cls;
};

Report cmd_discriminant(const DiscArgs& a) {
  Report r;
  FourfoldKind k = parse_kind(a.kind);
  SurfaceInvariants s;
  s.degree = a.deg;
  s.genus = a.genus;
  s.chi = a.chi;
  s.delta = a.delta;
  s.K2 = a.k2;
  s.k2_source = K2Source::User;
  if (k == FourfoldKind::GM) {
    if (a.cls.empty()) throw InputError("GM discriminants need --class a,b");
    auto v = parse_int_list(a.cls);
    if (v.size() != 2) throw InputError("--class takes two integers a,b (a*s_(3,1) + b*s_(2,2))");
    s.cls = GrassClass{v[0], v[1]};
  }
  auto d = discriminant(k, s);
  r.text.push_back("discriminant " + d.display() + " (S^2 = " + std::to_string(d.self_intersection) + ")");
  if (!d.consistent) r.text.push_back("warning: the component label is inconsistent");
  r.result = {{"kind", kind_name(k)},
              {"self_intersection", d.self_intersection},
              {"d", d.d},
              {"label", d.label},
              {"display", d.display()},
              {"consistent", d.consistent},
              {"admissible", is_admissible(k, d.d)}};
  return r;
}

Report cmd_construct(const Source& s, const RunConfig& cfg, Rng& rng, bool with_equations) {
  Report r;
  auto F = build_fourfold(s, cfg, rng);
  std::istringstream in(describe(F));
  for (std::string line; std::getline(in, line);) r.text.push_back(line);
  r.result = describe_json(F);
  if (with_equations) {
    r.result["ring"] = ring_json(F.S.ring());
    r.result["surface_ideal"] = polys_json(F.S.gens());
    if (F.Y) r.result["fivefold_ideal"] = polys_json(F.Y->ideal);
    if (cfg.verbose) {
      r.log.push_back("-- surface ideal:");
      for (auto& g : F.S.gens()) r.log.push_back("   " + g.str());
      r.log.push_back("-- fourfold: " + F.X_form.str());
    }
  }
  return r;
}

Report cmd_param_count(const Source& s, const RunConfig& cfg, Rng& rng) {
  Report r;
  auto F = build_fourfold(s, cfg, rng);
  auto p = parameter_count(F, &r.log);
  r.text.push_back(p.tuple_string());
  r.result = {{"h0_I", p.h0_I},
              {"h0_N_V", p.h0_N_V},
              {"h0_N_X", p.h0_N_X},
              {"ambient_system_dim", p.ambient_system_dim},
              {"minimal", p.minimal},
              {"codim_bound", p.codim_bound},
              {"h1_N_assumed_zero", p.h1_N_assumed},
              {"tuple", p.tuple_string()}};
  return r;
}

Report cmd_congruence(const Source& s, const RunConfig& cfg, Rng& rng, int e_max, const std::string& method) {
  Report r;
  auto F = build_fourfold(s, cfg, rng);
  if (method == "direct") {
    long n = direct_secant_line_count(F, rng);
    r.text.push_back("number 1-secant lines = " + std::to_string(n));
    r.result = {{"method", "direct"}, {"secant_lines", n}};
    return r;
  }
  auto c = detect_congruence(F, rng, e_max);
  r.text = congruence_lines(c, F.kind);
  r.result = to_json(c);
  return r;
}

Report cmd_fano_map(const Source& s, const RunConfig& cfg, Rng& rng, int e) {
  Report r;
  auto F = build_fourfold(s, cfg, rng);
  auto m = fano_map(F, e, rng);
  r.log.push_back(m.progress);
  r.text.push_back("image: " + m.kind.name + " (index " + std::to_string(m.kind.index) + ")");
  r.text.push_back("degree of mu restricted to X: " + std::to_string(m.fiber_degree_X));
  r.text.push_back("degree of the general fiber of mu: " + std::to_string(m.fiber_curve_degree));
  r.result = fano_json(m);
  return r;
}

Report cmd_associated_k3(const Source& s, const RunConfig& cfg, Rng& rng, int e) {
  Report r;
  auto F = build_fourfold(s, cfg, rng);
  long d = discriminant(F.kind, F.inv).d;
  auto m = fano_map(F, e, rng, false);
  r.log.push_back(m.progress);
  SurfaceU U;
  K3Report K;
  try {
    U = surface_U(F, m, rng, &r.log);
    K = k3_model(F, U, rng, &r.log);
  } catch (const MathError& ex) {
    std::string stage = r.log.empty() ? "" : r.log.back();
    if (stage.rfind("-- ", 0) == 0) stage = stage.substr(3);
    int code = dynamic_cast<const RetryExhausted*>(&ex) ? 4 : 3;
    throw StageError(stage, ex.what(), code);
  }
  int amb = U.U.ambient_dim();
  r.text.push_back(variety_line("U", U.inv, amb));
  r.text.push_back("exceptional curves: " + exceptional_string(U));
  std::ostringstream k3;
  k3 << "K3 surface of degree " << K.inv.degree << " and sectional genus " << K.inv.genus << " in PP^"
     << K.k3.ambient_dim() << " cut out by " << K.quadrics << " hypersurfaces of degree 2";
  r.text.push_back(k3.str());
  bool ok = K.inv.degree == d && K.inv.genus == d / 2 + 1;
  r.text.push_back(std::string("check deg = d and genus = d/2+1: ") + (ok ? "yes" : "NO"));
  json groups = json::array();
  for (auto& g : U.exceptional) groups.push_back({{"degree", g.degree}, {"count", g.count}});
  r.result = {{"d", d},
              {"mu", fano_json(m)},
              {"s", m.kind.index},
              {"U", invariants_json(U.inv, amb)},
              {"exceptional", groups},
              {"k3", invariants_json(K.inv, K.k3.ambient_dim())},
              {"k3_quadrics", K.quadrics},
              {"k3_map_forms", polys_json(K.k3_map.forms())},
              {"degree_and_genus_check", ok}};
  return r;
}

Report cmd_project(const Source& s, const RunConfig& cfg, Rng& rng) {
  Report r;
  if (parse_kind(s.kind) != FourfoldKind::GM) throw InputError("project-to-cubic needs a GM fourfold");
  auto F = build_fourfold(s, cfg, rng);
  r.log.push_back("-- projecting S from a general plane of type sigma_{2,2} in the fivefold");
  auto p = project_to_cubic(F, rng);
  std::ostringstream os;
  os << "R: surface of degree " << p.inv.degree << " and sectional genus " << p.inv.genus << " in PP^5 with "
     << p.inv.delta << " singular point(s) (length of the singular locus)";
  r.text.push_back(os.str());
  std::istringstream in(describe(p.cubic));
  for (std::string line; std::getline(in, line);) r.text.push_back(line);
  r.result = {{"R", {{"degree", p.inv.degree}, {"sectional_genus", p.inv.genus}, {"delta", p.inv.delta}}},
              {"cubic", describe_json(p.cubic)},
              {"d", p.disc.d}};
  return r;
}

Report cmd_gb(const std::string& vars, const std::vector<std::string>& polys, const std::string& order) {
  Report r;
  std::vector<std::string> names;
  std::stringstream ss(vars);
  for (std::string v; std::getline(ss, v, ',');)
    if (!v.empty()) names.push_back(v);
  if (names.empty()) throw InputError("--vars needs at least one variable");
  if (static_cast<int>(names.size()) > kMaxVars) throw InputError("too many variables");
  MonomialOrder ord = order == "lex" ? MonomialOrder::lex(static_cast<int>(names.size()))
                                     : MonomialOrder::grevlex(static_cast<int>(names.size()));
  RingPtr R = PolyRing::make(PrimeField(), names, ord);
  std::vector<std::string> texts;
  for (auto& p : polys) {
    std::stringstream ps(p);
    for (std::string t; std::getline(ps, t, ',');)
      if (t.find_first_not_of(" \t") != std::string::npos) texts.push_back(t);
  }
  auto gens = parse_polys(texts, R);
  auto G = buchberger(gens);
  for (auto& g : G.gens()) r.text.push_back(g.str());
  r.result = {{"ring", {{"char", R->field().p()}, {"vars", names}, {"order", order}}}, {"groebner_basis", polys_json(G.gens())}};
  bool homogeneous = std::all_of(gens.begin(), gens.end(), [](const Poly& p) { return p.is_homogeneous(); });
  if (homogeneous && order != "lex") {
    ProjVariety V(R, gens);
    const auto& h = V.hilbert();
    json hpj = json::array();
    for (auto& c : h.hilbert_polynomial) hpj.push_back(c.str());  // low to high
    json num = json::array();
    for (auto& c : h.numerator) num.push_back(c.str());
    r.text.push_back("dim " + std::to_string(h.dim) + ", degree " + h.degree.str());
    r.result["hilbert"] = {{"dim", h.dim}, {"degree", h.degree.str()}, {"hilbert_polynomial", hpj}, {"numerator", num}};
  }
  return r;
}

// ---- driver

struct Invocation {
  RunConfig cfg;
  std::string command;
  std::function<Report(Rng&)> run;
};

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const StageError*>(&e)) return static_cast<const StageError&>(e).code;
  if (dynamic_cast<const InputError*>(&e)) return 2;
  if (dynamic_cast<const RetryExhausted*>(&e)) return 4;
  if (dynamic_cast<const MathError*>(&e)) return 3;
  return 3;
}

const char* error_kind(int code) {
  switch (code) {
    case 2: return "input";
    case 4: return "retry-exhausted";
  }
  return "math";
}

int execute(const Invocation& inv, std::ostream& out, std::ostream& err) {
  auto t0 = std::chrono::steady_clock::now();
  set_global_seed(inv.cfg.seed);
  Rng rng(inv.cfg.seed);
  Report rep;
  int code = 0;
  json error = nullptr;
  try {
    rep = inv.run(rng);
  } catch (const std::exception& e) {
    code = exit_code_for(e);
    error = {{"type", error_kind(code)}, {"message", e.what()}};
    if (auto* se = dynamic_cast<const StageError*>(&e)) error["stage"] = se->stage;
  }
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (inv.cfg.json_output) {
    json j = {{"schema", kReportSchema}, {"tool", "hsf"}, {"version", kVersion}, {"command", inv.command},
              {"seed", inv.cfg.seed},    {"char", inv.cfg.characteristic}};
    if (inv.cfg.timing) j["wall_time_s"] = wall;
    if (code == 0) {
      j["result"] = rep.result;
      if (inv.cfg.verbose) j["log"] = rep.log;
    } else {
      j["error"] = error;
    }
    out << j.dump(2) << "\n";
  } else {
    if (inv.cfg.verbose)
      for (auto& l : rep.log) out << l << "\n";
    if (code == 0) {
      for (auto& l : rep.text) out << l << "\n";
    } else {
      err << "error (" << error["type"].get<std::string>() << ")";
      if (error.contains("stage")) err << " while " << error["stage"].get<std::string>();
      err << ": " << error["message"].get<std::string>() << "\n";
    }
    out << "-- hsf " << kVersion << ", seed " << inv.cfg.seed << ", char " << inv.cfg.characteristic;
    if (inv.cfg.timing) out << ", wall time " << std::fixed << std::setprecision(3) << wall << " s";
    out << "\n";
  }
  return code;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false, any = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
      any = true;
    } else if (std::isspace(static_cast<unsigned char>(c)) && !quoted) {
      if (any) out.push_back(cur);
      cur.clear();
      any = false;
    } else {
      cur += c;
      any = true;
    }
  }
  if (quoted) throw InputError("unbalanced quote in script line: " + line);
  if (any) out.push_back(cur);
  return out;
}

// Parses one command line. Returns the invocation, or an exit code when
// parsing ended the run (help, errors, script mode).
struct Parsed {
  std::optional<Invocation> inv;
  std::optional<int> code;
  std::string script;
  int jobs = 1;
};

Parsed parse(std::vector<std::string> args, const RunConfig* fixed, std::ostream& out, std::ostream& err) {
  auto cfg = std::make_shared<RunConfig>(fixed ? *fixed : RunConfig{});
  auto src = std::make_shared<Source>();
  Parsed res;
  CLI::App app{"Hodge-special cubic and Gushel-Mukai fourfolds over finite fields", "hsf"};
  app.require_subcommand(fixed ? 1 : 0, 1);
  app.fallthrough();
  std::string output = cfg->json_output ? "json" : "text";
  bool no_timing = false;
  if (!fixed) {
    app.add_option("--seed", cfg->seed, "random seed (all randomness derives from it)");
    app.add_option("--char", cfg->characteristic, "prime characteristic of the base field");
    app.add_option("--script", res.script, "file of subcommand lines to replay");
    app.add_option("--jobs", res.jobs, "worker threads for --script lines")->check(CLI::Range(1, 256));
  }
  app.add_flag("-v,--verbose", cfg->verbose, "print progress lines");
  app.add_flag("--thorough", cfg->thorough, "full singular-locus check of X instead of slices");
  app.add_option("--output", output, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--no-timing", no_timing, "omit the wall time (byte-identical reports)");
  app.set_version_flag("--version", kVersion);

  std::string command;
  std::function<Report(Rng&)> run;

  auto* adm = app.add_subcommand("admissible", "Noether-Lefschetz values and admissibility");
  auto adm_kind = std::make_shared<std::string>("cubic");
  auto adm_max = std::make_shared<long>(86);
  adm->add_option("--kind", *adm_kind)->check(CLI::IsMember({"gm", "cubic"}));
  adm->add_option("--max", *adm_max, "largest discriminant listed");
  adm->callback([&, adm_kind, adm_max] { run = [=](Rng&) { return cmd_admissible(*adm_kind, *adm_max); }; });

  auto* dis = app.add_subcommand("discriminant", "discriminant from surface invariants");
  auto da = std::make_shared<DiscArgs>();
  dis->add_option("--kind", da->kind)->check(CLI::IsMember({"gm", "cubic"}));
  dis->add_option("--deg", da->deg, "degree of S")->required();
  dis->add_option("--genus", da->genus, "sectional genus of S")->required();
  dis->add_option("--chi", da->chi, "chi(O_S)");
  dis->add_option("--k2", da->k2, "K_S^2")->required();
  dis->add_option("--delta", da->delta, "number of nodes");
  dis->add_option("--class", da->cls, "a,b for a*s_(3,1)+b*s_(2,2) (GM)");
  dis->callback([&, da] { run = [=](Rng&) { return cmd_discriminant(*da); }; });

  auto* cgm = app.add_subcommand("construct-gm", "build a GM fourfold through a surface in G(1,4)");
  add_source_options(cgm, *src, false);
  cgm->callback([&] {
    src->kind = "gm";
    run = [=](Rng& rng) { return cmd_construct(*src, *cfg, rng, true); };
  });
  auto* ccu = app.add_subcommand("construct-cubic", "build a cubic fourfold through a surface in P^5");
  add_source_options(ccu, *src, false);
  ccu->callback([&] {
    src->kind = "cubic";
    run = [=](Rng& rng) { return cmd_construct(*src, *cfg, rng, true); };
  });
  auto* des = app.add_subcommand("describe", "describe a special fourfold");
  add_source_options(des, *src, true);
  des->callback([&] { run = [=](Rng& rng) { return cmd_construct(*src, *cfg, rng, false); }; });

  auto* par = app.add_subcommand("param-count", "upper bound for the codimension of the locus of such fourfolds");
  add_source_options(par, *src, true);
  par->callback([&] { run = [=](Rng& rng) { return cmd_param_count(*src, *cfg, rng); }; });

  auto* con = app.add_subcommand("detect-congruence", "secant curves through a general point");
  add_source_options(con, *src, true);
  auto emax = std::make_shared<int>(5);
  auto method = std::make_shared<std::string>("lines");
  con->add_option("--e-max", *emax)->check(CLI::Range(1, 8));
  con->add_option("--method", *method, "lines (line scheme of Z) or direct (GM, e = 1)")
      ->check(CLI::IsMember({"lines", "direct"}));
  con->callback([&, emax, method] { run = [=](Rng& rng) { return cmd_congruence(*src, *cfg, rng, *emax, *method); }; });

  auto* fan = app.add_subcommand("fano-map", "the map defined by forms of degree re-1 with multiplicity e along S");
  add_source_options(fan, *src, true);
  auto fe = std::make_shared<int>(1);
  fan->add_option("--e", *fe, "degree of the congruence curves")->required()->check(CLI::Range(1, 5));
  fan->callback([&, fe] { run = [=](Rng& rng) { return cmd_fano_map(*src, *cfg, rng, *fe); }; });

  auto* k3 = app.add_subcommand("associated-k3", "surface U, exceptional curves and the minimal K3 surface");
  add_source_options(k3, *src, true);
  auto ke = std::make_shared<int>(1);
  k3->add_option("--e", *ke, "degree of the congruence curves")->required()->check(CLI::Range(1, 5));
  k3->callback([&, ke] { run = [=](Rng& rng) { return cmd_associated_k3(*src, *cfg, rng, *ke); }; });

  auto* prj = app.add_subcommand("project-to-cubic", "project S from a sigma_{2,2} plane of the fivefold");
  add_source_options(prj, *src, false);
  prj->callback([&] {
    src->kind = "gm";
    run = [=](Rng& rng) { return cmd_project(*src, *cfg, rng); };
  });

  auto* gbc = app.add_subcommand("gb", "Groebner basis and Hilbert data of an ideal");
  auto vars = std::make_shared<std::string>();
  auto polys = std::make_shared<std::vector<std::string>>();
  auto order = std::make_shared<std::string>("grevlex");
  gbc->add_option("--vars", *vars, "comma-separated variables")->required();
  gbc->add_option("--order", *order)->check(CLI::IsMember({"grevlex", "lex"}));
  gbc->add_option("polys", *polys, "generators (comma-separated or separate arguments)")->required();
  gbc->callback([&, vars, polys, order] { run = [=](Rng&) { return cmd_gb(*vars, *polys, *order); }; });

  std::vector<const char*> argv;
  std::string prog = "hsf";
  argv.push_back(prog.c_str());
  for (auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int c = app.exit(e, out, err);
    res.code = c == 0 ? 0 : 2;
    return res;
  }
  cfg->json_output = output == "json";
  cfg->timing = cfg->timing && !no_timing;
  if (!fixed) {
    try {
      set_default_characteristic(cfg->characteristic);
    } catch (const InputError& e) {
      err << "error (input): " << e.what() << "\n";
      res.code = 2;
      return res;
    }
  }
  if (!res.script.empty()) {
    if (!app.get_subcommands().empty()) {
      err << "error (input): --script replaces the subcommand\n";
      res.code = 2;
      return res;
    }
    res.inv = Invocation{*cfg, "script", nullptr};
    return res;
  }
  if (!run) {
    out << app.help();
    res.code = 2;
    return res;
  }
  for (auto* s : app.get_subcommands()) command = s->get_name();
  res.inv = Invocation{*cfg, command, run};
  return res;
}

int run_script(const std::string& path, const RunConfig& cfg, int jobs) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error (input): cannot read script " << path << "\n";
    return 2;
  }
  std::vector<std::vector<std::string>> lines;
  for (std::string line; std::getline(in, line);) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    try {
      auto a = split_line(line);
      if (!a.empty()) lines.push_back(a);
    } catch (const InputError& e) {
      std::cerr << "error (input): " << e.what() << "\n";
      return 2;
    }
  }
  std::vector<std::string> outs(lines.size()), errs(lines.size());
  std::vector<int> codes(lines.size(), 0);
  auto work = [&](std::size_t i) {
    std::ostringstream o, e;
    for (auto& a : lines[i])
      for (const char* fixed : {"--seed", "--char", "--script", "--jobs"})
        if (a == fixed || a.rfind(std::string(fixed) + "=", 0) == 0) {
          errs[i] = "error (input): script line " + std::to_string(i + 1) + ": " + fixed +
                    " is set for the whole script\n";
          codes[i] = 2;
          return;
        }
    auto p = parse(lines[i], &cfg, o, e);
    codes[i] = p.code ? *p.code : execute(*p.inv, o, e);
    outs[i] = o.str();
    errs[i] = e.str();
  };
  std::size_t next = 0;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (int t = 0; t < std::max(1, jobs); ++t)
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i;
        {
          std::lock_guard<std::mutex> lock(mu);
          if (next >= lines.size()) return;
          i = next++;
        }
        work(i);
      }
    });
  for (auto& t : pool) t.join();
  int worst = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::cout << outs[i];
    std::cerr << errs[i];
    worst = std::max(worst, codes[i]);
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto p = parse(args, nullptr, std::cout, std::cerr);
  if (p.code) return *p.code;
  if (!p.script.empty()) return run_script(p.script, p.inv->cfg, p.jobs);
  return execute(*p.inv, std::cout, std::cerr);
}
