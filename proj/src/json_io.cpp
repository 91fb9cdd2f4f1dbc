#include "mwl/json_io.hpp"

#include "mwl/errors.hpp"

namespace mwl {

namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw InputError(where + ": missing field '" + key + "'");
  return *it;
}

const Json& array_field(const Json& j, const char* key, const std::string& where) {
  const Json& a = field(j, key, where);
  if (!a.is_array()) throw InputError(where + "." + key + ": expected an array");
  return a;
}

std::string string_field(const Json& j, const char* key, const std::string& where) {
  const Json& s = field(j, key, where);
  if (!s.is_string()) throw InputError(where + "." + key + ": expected a string");
  return s.get<std::string>();
}

std::vector<Integer> integer_list(const Json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array of integers");
  std::vector<Integer> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(integer_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

Json integer_list_json(const std::vector<Integer>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) {
    if (x.fits_slong_p()) {
      a.push_back(x.get_si());
    } else {
      a.push_back(x.get_str());
    }
  }
  return a;
}

}  // namespace

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(source + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

Integer integer_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Integer(j.get<unsigned long>()) : Integer(j.get<long>());
  if (j.is_string()) return parse_integer(j.get<std::string>());
  throw InputError(where + ": expected an integer");
}

FinAbGroup group_from_json(const Json& j) {
  const Json& fr = field(j, "free_rank", "group");
  if (!fr.is_number_unsigned()) throw InputError("group.free_rank: expected a non-negative integer");
  std::vector<Integer> moduli(fr.get<std::size_t>(), Integer(0));
  if (j.contains("torsion")) {
    for (auto& m : integer_list(j["torsion"], "group.torsion")) {
      if (m < 2) throw InputError("group.torsion: orders must be at least 2, got " + m.get_str());
      moduli.push_back(m);
    }
  }
  return FinAbGroup(std::move(moduli));
}

Json group_to_json(const FinAbGroup& g) {
  std::size_t free = 0;
  std::vector<Integer> torsion;
  for (const auto& m : g.moduli()) {
    if (m == 0) {
      if (!torsion.empty()) throw DomainError("group_to_json: free coordinates must come first");
      ++free;
    } else {
      torsion.push_back(m);
    }
  }
  return Json{{"free_rank", free}, {"torsion", integer_list_json(torsion)}};
}

AbElement element_from_json(const FinAbGroup& g, const Json& j) {
  std::vector<Integer> coords = integer_list(j, "element");
  if (coords.size() != g.ambient_dim()) {
    throw InputError("element " + j.dump() + " has " + std::to_string(coords.size()) + " coordinates, group " +
                     g.to_string() + " needs " + std::to_string(g.ambient_dim()));
  }
  return g.element(std::move(coords));
}

Json element_to_json(const AbElement& x) { return integer_list_json(x.coords); }

AbSet set_from_json(const FinAbGroup& g, const Json& j) {
  if (!j.is_array() || j.empty()) throw InputError("set: expected a nonempty array of elements");
  std::vector<AbElement> elems;
  for (const auto& e : j) elems.push_back(element_from_json(g, e));
  return AbSet(std::move(elems));
}

Json set_to_json(const AbSet& a) {
  Json out = Json::array();
  for (const auto& x : a) out.push_back(element_to_json(x));
  return out;
}

AbHom hom_from_json(const FinAbGroup& source, const Json& j) {
  const FinAbGroup target = group_from_json(field(j, "target", "hom"));
  const Json& rows = array_field(j, "matrix", "hom");
  std::vector<std::vector<Integer>> m;
  for (const auto& r : rows) m.push_back(integer_list(r, "hom.matrix"));
  if (m.size() != target.ambient_dim()) throw InputError("hom.matrix: need one row per target coordinate");
  try {
    return AbHom(source, target, IntMatrix::from_rows(m, source.ambient_dim()));
  } catch (const DomainError& e) {
    throw InputError(std::string("hom: ") + e.what());
  }
}

Json hom_to_json(const AbHom& h) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < h.matrix().rows(); ++r) rows.push_back(integer_list_json(h.matrix().row(r)));
  return Json{{"target", group_to_json(h.target())}, {"matrix", rows}};
}

WeakLengthSpec weak_length_from_json(const Json& j) {
  const std::string kind = string_field(j, "kind", "weak_length");
  if (kind == "log_card") return WeakLengthSpec::log_card();
  if (kind == "rank") return WeakLengthSpec::rank();
  if (kind == "nu") return WeakLengthSpec::nu();
  if (kind == "gen") return WeakLengthSpec::gen();
  if (kind == "tors_log") {
    const Integer k = integer_from_json(field(j, "k", "weak_length"), "weak_length.k");
    if (k < 1) throw InputError("weak_length.k must be positive");
    return WeakLengthSpec::tors_log(k);
  }
  throw InputError("weak_length.kind: unknown kind '" + kind + "'");
}

Json weak_length_to_json(const WeakLengthSpec& s) {
  switch (s.kind) {
    case WeakLengthSpec::Kind::LogCard:
      return Json{{"kind", "log_card"}};
    case WeakLengthSpec::Kind::TorsLog:
      return Json{{"kind", "tors_log"}, {"k", s.k.get_str()}};
    case WeakLengthSpec::Kind::RankLen:
      return Json{{"kind", "rank"}};
    case WeakLengthSpec::Kind::NuLen:
      return Json{{"kind", "nu"}};
    case WeakLengthSpec::Kind::GenFn:
      return Json{{"kind", "gen"}};
  }
  return {};
}

BivariantSpec bivariant_from_json(const Json& j) {
  const std::string kind = string_field(j, "kind", "bivariant");
  if (kind == "cover_log") return BivariantSpec::cover_log();
  if (kind == "quotient_length") {
    const std::string base = string_field(j, "base", "bivariant");
    if (base == "rank") return BivariantSpec::quotient_length(WeakLengthSpec::rank());
    if (base == "nu") return BivariantSpec::quotient_length(WeakLengthSpec::nu());
    throw InputError("bivariant.base: expected 'rank' or 'nu', got '" + base + "'");
  }
  throw InputError("bivariant.kind: unknown kind '" + kind + "'");
}

Json bivariant_to_json(const BivariantSpec& s) {
  if (s.kind == BivariantSpec::Kind::CoverLog) return Json{{"kind", "cover_log"}};
  return Json{{"kind", "quotient_length"}, {"base", s.base.kind == WeakLengthSpec::Kind::RankLen ? "rank" : "nu"}};
}

Json value_to_json(const LengthValue& v) {
  switch (v.kind()) {
    case LengthValue::Kind::LogOfCount:
      return Json{{"kind", "log"}, {"count", v.count().get_str()}, {"text", v.to_string()}};
    case LengthValue::Kind::Rational:
      return Json{{"kind", "rational"}, {"value", to_string(v.value())}, {"text", v.to_string()}};
    case LengthValue::Kind::Infinity:
      break;
  }
  return Json{{"kind", "infinity"}, {"text", v.to_string()}};
}

Json ratio_to_json(const ExactRatio& r) {
  switch (r.kind()) {
    case LengthValue::Kind::LogOfCount:
      return Json{{"kind", "log"}, {"count", r.count().get_str()}, {"den", r.den().get_str()}, {"text", r.to_string()}};
    case LengthValue::Kind::Rational:
      return Json{{"kind", "rational"}, {"value", to_string(r.value())}, {"text", r.to_string()}};
    case LengthValue::Kind::Infinity:
      break;
  }
  return Json{{"kind", "infinity"}, {"text", r.to_string()}};
}

GRElement gr_element_from_json(const ShiftModule& m, const Json& j) {
  if (!j.is_array()) throw InputError("module element: expected a list of [group_coords, coeff_coords] pairs");
  std::vector<std::pair<std::vector<Integer>, std::vector<Integer>>> terms;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 2) throw InputError("module element term " + t.dump() + ": expected a pair");
    terms.emplace_back(integer_list(t[0], "term position"), integer_list(t[1], "term coefficient"));
  }
  try {
    return m.element(terms);
  } catch (const DomainError& e) {
    throw InputError("module element " + j.dump() + ": " + e.what());
  }
}

Json gr_element_to_json(const GRElement& x) {
  Json out = Json::array();
  for (const auto& t : x.terms()) out.push_back(Json::array({element_to_json(t.pos), element_to_json(t.coeff)}));
  return out;
}

GRSet gr_set_from_json(const ShiftModule& m, const Json& j) {
  if (!j.is_array() || j.empty()) throw InputError("witness set: expected a nonempty array of module elements");
  std::vector<GRElement> elems;
  for (const auto& e : j) elems.push_back(gr_element_from_json(m, e));
  return GRSet(std::move(elems));
}

Json gr_set_to_json(const GRSet& a) {
  Json out = Json::array();
  for (const auto& x : a) out.push_back(gr_element_to_json(x));
  return out;
}

SubmodulePresentation submodule_from_json(const ShiftModule& ambient, const Json& j) {
  const std::string closure = string_field(j, "closure", "quotient");
  const Json& gens = array_field(j, "generators", "quotient");
  if (closure == "coeff_subgroup") {
    std::vector<AbElement> d;
    for (const auto& g : gens) d.push_back(element_from_json(ambient.coeff(), g));
    return SubmodulePresentation::coefficient_subgroup(std::move(d));
  }
  if (closure == "principal_z") {
    const Integer p = integer_from_json(field(j, "p", "quotient"), "quotient.p");
    for (const auto& m : ambient.coeff().moduli()) {
      if (m != p) {
        throw ConfigError("capability missing: principal_z quotient needs coefficients (Z/" + p.get_str() +
                          ")^k, got " + ambient.coeff().to_string());
      }
    }
    std::vector<GRElement> g;
    for (const auto& x : gens) g.push_back(gr_element_from_json(ambient, x));
    return SubmodulePresentation::principal(std::move(g));
  }
  throw InputError("quotient.closure: expected 'coeff_subgroup' or 'principal_z', got '" + closure + "'");
}

ShiftModule module_from_json(const Json& j) {
  const FinAbGroup gamma = group_from_json(field(j, "group", "module"));
  const FinAbGroup coeff = group_from_json(field(j, "coeff", "module"));
  std::optional<AbHom> action;
  if (j.contains("action_hom") && !j["action_hom"].is_null()) action = hom_from_json(gamma, j["action_hom"]);
  const ShiftModule plain(gamma, coeff, action);
  if (!j.contains("quotient") || j["quotient"].is_null()) return plain;
  return ShiftModule(gamma, coeff, action, submodule_from_json(plain, j["quotient"]));
}

Json module_to_json(const ShiftModule& m) {
  Json out{{"group", group_to_json(m.gamma())}, {"coeff", group_to_json(m.coeff())}};
  if (m.action()) out["action_hom"] = hom_to_json(*m.action());
  if (m.quotient()) {
    const auto& q = *m.quotient();
    Json gens = Json::array();
    if (q.closure == SubmodulePresentation::Closure::CoefficientSubgroup) {
      for (const auto& d : q.coeff_generators) gens.push_back(element_to_json(d));
      out["quotient"] = Json{{"closure", "coeff_subgroup"}, {"generators", gens}};
    } else {
      for (const auto& g : q.generators) gens.push_back(gr_element_to_json(g));
      out["quotient"] = Json{{"closure", "principal_z"}, {"p", m.coeff().moduli().front().get_si()}, {"generators", gens}};
    }
  }
  return out;
}

Json counterexample_to_json(const Counterexample& c) {
  Json fields = Json::object();
  for (const auto& [k, v] : c.fields) fields[k] = v;
  return Json{{"sample", c.sample}, {"fields", fields}};
}

Json axiom_report_to_json(const AxiomReport& r) {
  return Json{{"weak_length", weak_length_to_json(r.spec)},
              {"axiom", axiom_name(r.axiom)},
              {"budget", r.budget},
              {"checked", r.checked},
              {"skipped", r.skipped},
              {"adjoin_zero", r.adjoin_zero},
              {"passed", r.passed()},
              {"counterexample", r.counterexample ? counterexample_to_json(*r.counterexample) : Json()}};
}

Json upgrading_report_to_json(const UpgradingReport& r) {
  Json props = Json::array();
  for (const auto& p : r.properties) {
    props.push_back(Json{{"name", p.name},
                         {"checked", p.checked},
                         {"passed", !p.counterexample},
                         {"counterexample", p.counterexample ? counterexample_to_json(*p.counterexample) : Json()}});
  }
  return Json{{"bivariant", bivariant_to_json(r.spec)}, {"budget", r.budget}, {"passed", r.passed()}, {"properties", props}};
}

namespace {

Json check_to_json(const SubadditivityCheck& c) {
  Json v;
  if (c.violation) v = Json::array({c.violation->first, c.violation->second});
  return Json{{"applicable", c.applicable}, {"pairs_checked", c.pairs_checked}, {"violation", v}};
}

std::string count_or_value(const LengthValue& v) {
  switch (v.kind()) {
    case LengthValue::Kind::LogOfCount:
      return v.count().get_str();
    case LengthValue::Kind::Rational:
      return to_string(v.value());
    case LengthValue::Kind::Infinity:
      break;
  }
  return "inf";
}

}  // namespace

Json estimate_to_json(const MeanEstimate& e) {
  Json rows = Json::array();
  for (const auto& r : e.rows) {
    rows.push_back(Json{{"n", r.n},
                        {"count_or_value", count_or_value(r.value)},
                        {"ratio_num", r.value.to_string()},
                        {"ratio_den", r.box_size.get_str()},
                        {"ratio", r.ratio.to_string()}});
  }
  return Json{{"method", e.method},
              {"ratios", rows},
              {"running_inf", e.running_inf ? ratio_to_json(*e.running_inf) : Json()},
              {"flags",
               {{"constant_exact", e.constant_exact},
                {"zero_in_A", e.zero_in_a},
                {"symmetric_A", e.symmetric_a},
                {"strongly_subadditive", e.strongly_subadditive}}},
              {"truncated", e.truncated},
              {"truncation_reason", e.truncation_reason},
              {"fekete", check_to_json(e.fekete)},
              {"doubling", check_to_json(e.doubling)},
              {"limit",
               {{"certificate", limit_name(e.limit)},
                {"value", e.limit_value ? ratio_to_json(*e.limit_value) : Json()},
                {"module_cardinality", e.module_cardinality ? Json(e.module_cardinality->get_str()) : Json()}}}};
}

Json mean_bound_to_json(const MeanBound& b) {
  Json ests = Json::array();
  for (const auto& e : b.estimates) ests.push_back(estimate_to_json(e));
  return Json{{"lower_bound", ratio_to_json(b.lower_bound)},
              {"certified", b.certified},
              {"best_witness", b.best_witness ? Json(*b.best_witness) : Json()},
              {"estimates", ests}};
}

Json addition_report_to_json(const AdditionReport& r) {
  Json easy = Json::array();
  for (const auto& row : r.easy_direction) {
    easy.push_back(Json{{"b_witness", row.b_witness},
                        {"c_witness", row.c_witness},
                        {"n", row.n},
                        {"lhs", row.lhs.to_string()},
                        {"rhs", row.rhs.to_string()},
                        {"holds", row.holds}});
  }
  return Json{{"verdict", verdict_name(r.verdict)},
              {"note", r.note},
              {"submodule", mean_bound_to_json(r.m1)},
              {"module", mean_bound_to_json(r.m2)},
              {"quotient", mean_bound_to_json(r.quotient)},
              {"quotient_cardinality", r.quotient_cardinality ? Json(r.quotient_cardinality->get_str()) : Json()},
              {"easy_direction_holds", r.easy_direction_holds},
              {"easy_direction", easy}};
}

namespace {

void require_kind(const Json& j, const std::string& path, bool ok, const char* what) {
  if (!ok) throw InputError("report " + path + ": expected " + what + ", got " + j.dump());
}

void validate_node(const Json& j, const std::string& path) {
  if (j.is_object()) {
    if (j.contains("ratios")) {
      const Json& rows = j["ratios"];
      require_kind(rows, path + ".ratios", rows.is_array(), "an array");
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string p = path + ".ratios[" + std::to_string(i) + "]";
        for (const char* key : {"n", "count_or_value", "ratio_num", "ratio_den"}) {
          if (!rows[i].contains(key)) throw InputError("report " + p + ": missing '" + key + "'");
        }
        require_kind(rows[i]["n"], p + ".n", rows[i]["n"].is_number_unsigned(), "a positive integer");
        require_kind(rows[i]["ratio_den"], p + ".ratio_den", rows[i]["ratio_den"].is_string(), "a string");
      }
    }
    for (const auto& [k, v] : j.items()) validate_node(v, path + "." + k);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) validate_node(j[i], path + "[" + std::to_string(i) + "]");
  }
}

}  // namespace

void validate_report(const Json& report) {
  require_kind(report, "", report.is_object(), "an object");
  for (const char* key : {"command", "status", "result"}) {
    if (!report.contains(key)) throw InputError(std::string("report: missing '") + key + "'");
  }
  require_kind(report["command"], ".command", report["command"].is_string(), "a string");
  const Json& status = report["status"];
  require_kind(status, ".status", status.is_string() && (status == "pass" || status == "fail"),
               "\"pass\" or \"fail\"");
  require_kind(report["result"], ".result", report["result"].is_object(), "an object");
  validate_node(report["result"], "result");
}

}  // namespace mwl
