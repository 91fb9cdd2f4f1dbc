#include "mwl/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "mwl/errors.hpp"
#include "mwl/examples.hpp"

namespace mwl {

namespace {

struct Options {
  std::string scenario;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> n_max;
  std::optional<std::size_t> budget;
  std::string format = "table";
  std::string example;
};

/// Report plus its human rendering.
struct Outcome {
  Json result = Json::object();
  bool passed = true;
  std::string table;
};

class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string render() const {
    std::vector<std::size_t> width;
    for (const auto& r : rows_)
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (width.size() <= i) width.push_back(0);
        width[i] = std::max(width[i], r[i].size());
      }
    std::ostringstream os;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      std::string line;
      for (std::size_t i = 0; i < rows_[k].size(); ++i) {
        if (i) line += "  ";
        line += rows_[k][i];
        if (i + 1 < rows_[k].size()) line += std::string(width[i] - rows_[k][i].size(), ' ');
      }
      line.erase(line.find_last_not_of(' ') + 1);
      os << line << '\n';
      if (k == 0) {
        std::size_t total = 0;
        for (std::size_t i = 0; i < width.size(); ++i) total += width[i] + (i ? 2 : 0);
        os << std::string(total, '-') << '\n';
      }
    }
    return os.str();
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

std::string approx(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

Json load_scenario(const Options& opt) {
  if (opt.scenario.empty()) throw InputError("this command needs --scenario PATH");
  std::ifstream in(opt.scenario, std::ios::binary);
  if (!in) throw InputError("cannot read scenario '" + opt.scenario + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  Json j = parse_json(buf.str(), opt.scenario);
  if (!j.is_object()) throw InputError(opt.scenario + ": scenario must be a JSON object");
  return j;
}

std::uint64_t seed_of(const Options& opt, const Json& s) {
  if (opt.seed) return *opt.seed;
  if (s.contains("seed")) {
    if (!s["seed"].is_number_unsigned()) throw InputError("seed: expected a non-negative integer");
    return s["seed"].get<std::uint64_t>();
  }
  return 1;
}

std::size_t budget_of(const Options& opt, const Json& s) {
  if (opt.budget) return *opt.budget;
  if (s.contains("budget")) {
    if (!s["budget"].is_number_unsigned()) throw InputError("budget: expected a non-negative integer");
    return s["budget"].get<std::size_t>();
  }
  return 200;
}

bool flag_of(const Json& s, const char* key) {
  if (!s.contains(key)) return false;
  if (!s[key].is_boolean()) throw InputError(std::string(key) + ": expected true or false");
  return s[key].get<bool>();
}

SampleOptions sample_options_of(const Json& s, SampleOptions base) {
  base.adjoin_zero = flag_of(s, "adjoin_zero");
  if (!s.contains("sample_options")) return base;
  const Json& o = s["sample_options"];
  const auto num = [&](const char* key, auto& target) {
    if (!o.contains(key)) return;
    if (!o[key].is_number_unsigned()) throw InputError(std::string("sample_options.") + key + ": expected an integer");
    target = o[key].get<std::remove_reference_t<decltype(target)>>();
  };
  num("max_order", base.max_order);
  num("max_free_rank", base.max_free_rank);
  num("max_torsion_coords", base.max_torsion_coords);
  num("max_set_size", base.max_set_size);
  num("free_range", base.free_range);
  return base;
}

unsigned n_max_of(const Options& opt, const Json& s, const FinAbGroup& gamma, std::size_t largest_set) {
  if (opt.n_max) return *opt.n_max;
  if (s.contains("folner")) {
    const Json& f = s["folner"];
    if (!f.is_object()) throw InputError("folner: expected an object");
    if (f.contains("kind") && f["kind"] != "boxes") throw InputError("folner.kind: only 'boxes' is supported");
    if (f.contains("n_max")) {
      if (!f["n_max"].is_number_unsigned() || f["n_max"].get<unsigned>() == 0) {
        throw InputError("folner.n_max: expected a positive integer");
      }
      return f["n_max"].get<unsigned>();
    }
  }
  return FolnerSequence::default_n_max(gamma, largest_set);
}

std::vector<GRSet> witness_list(const ShiftModule& m, const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw InputError(where + ": expected a nonempty list of witness sets");
  std::vector<GRSet> out;
  for (const auto& w : j) out.push_back(gr_set_from_json(m, w));
  return out;
}

std::string render_counterexample(const Counterexample& c) {
  std::string s = "sample " + std::to_string(c.sample) + ":";
  for (const auto& [k, v] : c.fields) s += " " + k + "=" + v;
  return s;
}

// --- commands ---------------------------------------------------------------

Outcome cmd_wl_eval(const Json& s) {
  const FinAbGroup g = group_from_json(s.at("group"));
  const WeakLengthSpec spec = weak_length_from_json(s.at("weak_length"));
  Json sets;
  if (s.contains("sets")) {
    sets = s["sets"];
  } else if (s.contains("set")) {
    sets = Json::array({s["set"]});
  } else {
    throw InputError("scenario: missing 'set' or 'sets'");
  }
  Outcome o;
  Table t({"set", spec.name()});
  Json values = Json::array();
  for (const auto& js : sets) {
    const AbSet a = set_from_json(g, js);
    const LengthValue v = eval_weak_length(spec, g, a);
    values.push_back(Json{{"set", set_to_json(a)}, {"value", value_to_json(v)}});
    t.add({set_to_string(a), v.to_string()});
  }
  o.result = Json{{"group", group_to_json(g)}, {"weak_length", weak_length_to_json(spec)}, {"values", values}};
  o.table = "group " + g.to_string() + "\n" + t.render();
  return o;
}

std::vector<AxiomInstance> instances_of(const Json& s) {
  std::vector<AxiomInstance> out;
  if (!s.contains("instances")) return out;
  for (const auto& j : s["instances"]) {
    AxiomInstance inst;
    if (!j.contains("group")) throw InputError("instances: each instance needs a 'group'");
    inst.group = group_from_json(j["group"]);
    if (j.contains("group2")) inst.group2 = group_from_json(j["group2"]);
    if (j.contains("a")) inst.a = set_from_json(*inst.group, j["a"]);
    if (j.contains("b")) inst.b = set_from_json(inst.group2 ? *inst.group2 : *inst.group, j["b"]);
    if (j.contains("hom")) inst.hom = hom_from_json(*inst.group, j["hom"]);
    out.push_back(std::move(inst));
  }
  return out;
}

Outcome cmd_wl_axioms(const Options& opt, const Json& s) {
  const WeakLengthSpec spec = weak_length_from_json(s.at("weak_length"));
  std::vector<Axiom> axioms;
  if (s.contains("axioms")) {
    for (const auto& name : s["axioms"]) {
      if (!name.is_string()) throw InputError("axioms: expected names");
      const auto ax = parse_axiom(name.get<std::string>());
      if (!ax) throw InputError("axioms: unknown axiom '" + name.get<std::string>() + "'");
      axioms.push_back(*ax);
    }
  } else {
    axioms = all_axioms();
  }
  const std::uint64_t seed = seed_of(opt, s);
  const std::size_t budget = budget_of(opt, s);
  const SampleOptions so = sample_options_of(s, SampleOptions{});
  const auto leading = instances_of(s);

  Outcome o;
  Table t({"axiom", "checked", "skipped", "result", "counterexample"});
  Json reports = Json::array();
  for (const Axiom ax : axioms) {
    const AxiomReport r = check_axiom(spec, ax, seed, budget, so, leading);
    o.passed = o.passed && r.passed();
    reports.push_back(axiom_report_to_json(r));
    t.add({axiom_name(ax), std::to_string(r.checked), std::to_string(r.skipped), r.passed() ? "PASS" : "FAIL",
           r.counterexample ? render_counterexample(*r.counterexample) : ""});
  }
  o.result = Json{{"weak_length", weak_length_to_json(spec)}, {"adjoin_zero", so.adjoin_zero}, {"reports", reports}};
  o.table = "weak length " + spec.name() + ", seed " + std::to_string(seed) + ", budget " + std::to_string(budget) +
            "\n" + t.render();
  return o;
}

Outcome cmd_biv_eval(const Json& s) {
  const FinAbGroup g = group_from_json(s.at("group"));
  const BivariantSpec spec = bivariant_from_json(s.at("bivariant"));
  const AbSet a = set_from_json(g, s.at("a"));
  const AbSet b = set_from_json(g, s.at("b"));
  Outcome o;
  const LengthValue v = eval_bivariant(spec, g, a, b);
  o.result = Json{{"group", group_to_json(g)}, {"bivariant", bivariant_to_json(spec)}, {"a", set_to_json(a)},
                  {"b", set_to_json(b)}, {"value", value_to_json(v)}};
  std::ostringstream os;
  os << spec.name() << "(A, B) = " << v.to_string() << '\n';
  if (spec.kind == BivariantSpec::Kind::CoverLog) {
    const CoverResult c = cover_bivariant(g, a, b);
    o.result["cover"] = set_to_json(c.cover);
    os << "cover C = " << set_to_string(c.cover) << '\n';
  }
  if (s.contains("hom")) {
    const AbHom phi = hom_from_json(g, s["hom"]);
    const AbSet kw = kernel_witness(spec, phi, a);
    const LengthValue lk = eval_bivariant(spec, g, a, kw);
    const LengthValue lp = spec.kind == BivariantSpec::Kind::CoverLog
                               ? LengthValue::log_of(Integer(static_cast<unsigned long>(phi.apply(a).size())))
                               : eval_weak_length(spec.base, phi.target(), phi.apply(a));
    o.passed = lk == lp;
    o.result["kernel_witness"] = Json{{"B", set_to_json(kw)}, {"value", value_to_json(lk)},
                                      {"image_value", value_to_json(lp)}, {"equal", o.passed}};
    os << "kernel witness B = " << set_to_string(kw) << ": l(A, B) = " << lk.to_string()
       << ", l(phi(A)) = " << lp.to_string() << (o.passed ? " (equal)" : " (DIFFERENT)") << '\n';
  }
  o.table = os.str();
  return o;
}

Outcome cmd_biv_check(const Options& opt, const Json& s) {
  const BivariantSpec spec = bivariant_from_json(s.at("bivariant"));
  const std::uint64_t seed = seed_of(opt, s);
  const std::size_t budget = budget_of(opt, s);
  const UpgradingReport r = check_upgrading_proper(spec, seed, budget, sample_options_of(s, bivariant_sample_options()));
  Outcome o;
  o.passed = r.passed();
  o.result = upgrading_report_to_json(r);
  Table t({"property", "checked", "result", "counterexample"});
  for (const auto& p : r.properties) {
    t.add({p.name, std::to_string(p.checked), p.counterexample ? "FAIL" : "PASS",
           p.counterexample ? render_counterexample(*p.counterexample) : ""});
  }
  o.table = "bivariant " + spec.name() + ", seed " + std::to_string(seed) + ", budget " + std::to_string(budget) +
            "\n" + t.render();
  return o;
}

std::string render_estimate(const std::string& title, const MeanEstimate& e) {
  std::ostringstream os;
  os << title << " [" << e.method << "]  0 in A: " << yes_no(e.zero_in_a) << ", A = -A: " << yes_no(e.symmetric_a)
     << ", constant: " << yes_no(e.constant_exact) << '\n';
  Table t({"n", "|F_n|", "value", "ratio", "approx"});
  for (const auto& r : e.rows) {
    t.add({std::to_string(r.n), r.box_size.get_str(), r.value.to_string(), r.ratio.to_string(), approx(r.ratio.approx())});
  }
  os << t.render();
  if (e.truncated) os << "truncated: " << e.truncation_reason << '\n';
  if (e.running_inf) os << "running inf: " << e.running_inf->to_string() << '\n';
  if (e.fekete.applicable) {
    os << "subadditivity: " << e.fekete.pairs_checked << " pairs, "
       << (e.fekete.violation ? "VIOLATED at (" + std::to_string(e.fekete.violation->first) + ", " +
                                    std::to_string(e.fekete.violation->second) + ")"
                              : "all hold")
       << '\n';
  }
  if (e.doubling.applicable) {
    os << "doubling: " << e.doubling.pairs_checked << " pairs, " << (e.doubling.violation ? "VIOLATED" : "non-increasing")
       << '\n';
  }
  os << "limit: " << (e.limit_value ? e.limit_value->to_string() + " (" + limit_name(e.limit) + ")" : "not certified")
     << '\n';
  return os.str();
}

bool certificates_hold(const MeanBound& b) {
  for (const auto& e : b.estimates) {
    if (e.fekete.violation || e.doubling.violation) return false;
  }
  return true;
}

std::string render_bound(const std::string& title, const MeanBound& b) {
  std::string s;
  for (std::size_t i = 0; i < b.estimates.size(); ++i) {
    s += render_estimate(title + " witness " + std::to_string(i), b.estimates[i]) + "\n";
  }
  s += title + " lower bound: " + b.lower_bound.to_string() + (b.certified ? " (certified)" : " (trivial)") + "\n";
  return s;
}

Outcome cmd_mean(const Options& opt, const Json& s) {
  const ShiftModule m = module_from_json(s.at("module"));
  const WeakLengthSpec spec = weak_length_from_json(s.at("weak_length"));
  std::vector<GRSet> witnesses;
  if (s.contains("witnesses")) {
    witnesses = witness_list(m, s["witnesses"], "witnesses");
  } else if (s.contains("witness")) {
    witnesses.push_back(gr_set_from_json(m, s["witness"]));
  } else {
    throw InputError("scenario: missing 'witness' or 'witnesses'");
  }
  std::size_t largest = 1;
  for (const auto& w : witnesses) largest = std::max(largest, w.size());
  const FolnerSequence seq(m.gamma(), n_max_of(opt, s, m.gamma(), largest));
  const MeanBound b = mean_lower_bound(m, witnesses, spec, seq);
  Outcome o;
  o.passed = certificates_hold(b);
  o.result = Json{{"module", module_to_json(m)}, {"weak_length", weak_length_to_json(spec)}, {"n_max", seq.n_max()}};
  o.result.update(mean_bound_to_json(b));
  o.table = "module " + m.to_string() + ", " + spec.name() + "\n\n" + render_bound("module", b);
  return o;
}

Outcome cmd_addition(const Options& opt, const Json& s) {
  const ShiftModule m = module_from_json(s.at("module"));
  if (m.quotient()) throw InputError("addition: 'module' must not carry a quotient; put N1 under 'submodule'");
  const SubmodulePresentation n1 = submodule_from_json(m, s.at("submodule"));
  const WeakLengthSpec spec = weak_length_from_json(s.at("weak_length"));
  const Json& w = s.at("witnesses");
  const auto w1 = witness_list(m, w.at("submodule"), "witnesses.submodule");
  const auto w2 = witness_list(m, w.at("module"), "witnesses.module");
  const auto wq = witness_list(m, w.at("quotient"), "witnesses.quotient");
  // without an explicit n_max the harness picks one from the witness sizes
  std::optional<unsigned> n_max = opt.n_max;
  if (!n_max && s.contains("folner") && s["folner"].contains("n_max")) n_max = n_max_of(opt, s, m.gamma(), 1);
  const AdditionReport r = addition_report(m, n1, w1, w2, wq, spec, n_max);
  Outcome o;
  o.passed = r.easy_direction_holds && r.verdict != AdditionReport::Verdict::UnequalOnWitnesses &&
             certificates_hold(r.m1) && certificates_hold(r.m2) && certificates_hold(r.quotient);
  o.result = Json{{"module", module_to_json(m)}, {"weak_length", weak_length_to_json(spec)}};
  o.result.update(addition_report_to_json(r));
  std::ostringstream os;
  os << "module " << m.to_string() << ", submodule " << n1.name() << ", " << spec.name() << "\n\n";
  os << render_bound("M1", r.m1) << '\n' << render_bound("M2", r.m2) << '\n' << render_bound("M2/M1", r.quotient) << '\n';
  if (r.quotient_cardinality) os << "|M2/M1| = " << r.quotient_cardinality->get_str() << '\n';
  os << "easy direction: " << r.easy_direction.size() << " rows, " << (r.easy_direction_holds ? "all hold" : "VIOLATED")
     << '\n';
  os << "verdict: " << verdict_name(r.verdict) << "  (" << r.m2.lower_bound.to_string() << " vs "
     << r.m1.lower_bound.to_string() << " + " << r.quotient.lower_bound.to_string() << ")\n";
  o.table = os.str();
  return o;
}

Outcome cmd_list_examples() {
  Outcome o;
  Json list = Json::array();
  Table t({"name", "summary"});
  for (const auto& e : example_registry()) {
    list.push_back(Json{{"name", e.name}, {"summary", e.summary}});
    t.add({e.name, e.summary});
  }
  o.result = Json{{"examples", list}};
  o.table = t.render();
  return o;
}

Outcome cmd_example(const std::string& name) {
  if (name == "list") return cmd_list_examples();
  const ExampleReport r = run_example(name);
  Outcome o;
  o.passed = r.passed();
  Json checks = Json::array();
  Table t({"check", "expected", "observed", "result"});
  for (const auto& c : r.checks) {
    checks.push_back(Json{{"label", c.label}, {"expected", c.expected}, {"observed", c.observed}, {"passed", c.passed}});
    t.add({c.label, c.expected, c.observed, c.passed ? "PASS" : "FAIL"});
  }
  o.result = Json{{"name", r.name}, {"summary", r.summary}, {"checks", checks}, {"details", r.details}};
  o.table = r.name + ": " + r.summary + "\n" + t.render();
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"mean weak length toolkit", "mwl"};
  app.require_subcommand(1);
  Options opt;
  const auto add_common = [&](CLI::App* sub, bool scenario) {
    if (scenario) sub->add_option("--scenario", opt.scenario, "scenario JSON file")->required();
    sub->add_option("--out", opt.out, "write the JSON report here");
    sub->add_option("--seed", opt.seed, "64-bit sample seed");
    sub->add_option("--n-max", opt.n_max, "largest box index")->check(CLI::PositiveNumber);
    sub->add_option("--budget", opt.budget, "samples per check");
    sub->add_option("--format", opt.format, "stdout format")->check(CLI::IsMember({"json", "table"}));
  };
  add_common(app.add_subcommand("wl-eval", "evaluate a weak length on sets"), true);
  add_common(app.add_subcommand("wl-axioms", "sample-check the weak length axioms"), true);
  add_common(app.add_subcommand("biv-eval", "evaluate a bivariant weak length"), true);
  add_common(app.add_subcommand("biv-check", "sample-check proper upgrading"), true);
  add_common(app.add_subcommand("mean", "ratio tables and mean length bounds"), true);
  add_common(app.add_subcommand("addition", "addition formula harness"), true);
  CLI::App* ex = app.add_subcommand("example", "run a registered example, or 'list'");
  add_common(ex, false);
  ex->add_option("name", opt.example, "example name or 'list'")->required();
  add_common(app.add_subcommand("list-examples", "list registered examples"), false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, r;
    const int code = app.exit(e, o, r);
    out << o.str();
    err << r.str();
    return code == 0 ? 0 : 1;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    Outcome o;
    Json scenario;
    if (command == "example") {
      o = cmd_example(opt.example);
    } else if (command == "list-examples") {
      o = cmd_list_examples();
    } else {
      scenario = load_scenario(opt);
      if (command == "wl-eval") {
        o = cmd_wl_eval(scenario);
      } else if (command == "wl-axioms") {
        o = cmd_wl_axioms(opt, scenario);
      } else if (command == "biv-eval") {
        o = cmd_biv_eval(scenario);
      } else if (command == "biv-check") {
        o = cmd_biv_check(opt, scenario);
      } else if (command == "mean") {
        o = cmd_mean(opt, scenario);
      } else {
        o = cmd_addition(opt, scenario);
      }
    }
    Json report{{"command", command},
                {"scenario", opt.scenario.empty() ? Json() : Json(opt.scenario)},
                {"status", o.passed ? "pass" : "fail"},
                {"result", o.result}};
    if (command == "example") report["example"] = opt.example;
    validate_report(report);
    const std::string text = report.dump(2) + "\n";
    if (!opt.out.empty()) {
      std::ofstream f(opt.out, std::ios::binary);
      if (!f) throw InputError("cannot write report to '" + opt.out + "'");
      f << text;
    }
    if (opt.format == "json") {
      out << text;
    } else {
      out << o.table << "status: " << (o.passed ? "pass" : "fail") << '\n';
    }
    return o.passed ? 0 : 2;
  } catch (const nlohmann::json::exception& e) {
    err << "error: scenario: " << e.what() << '\n';
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
  }
  return 1;
}

}  // namespace mwl
