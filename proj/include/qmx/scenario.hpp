#pragma once

#include <cctype>
#include <fstream>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qmx/errors.hpp"
#include "qmx/rational.hpp"
#include "qmx/report.hpp"

namespace qmx {

struct GroupConfig {
  std::string type;  // free | free_abelian | small_cancellation | heisenberg | z_cross_f2
  std::vector<std::string> generators;
  std::vector<std::string> relators;
};

struct SubgroupConfig {
  std::string type = "whole";        // whole | kernel | normal_closure
  std::vector<std::string> images;   // kernel: one word over <t> per ambient generator
  std::vector<std::string> words;    // normal_closure: generating words
};

struct RelativeConfig {
  bool present = false;
  std::vector<std::string> X;
  std::vector<std::string> K_pool;
};

struct QmSpecConfig {
  std::string name;
  std::string kind;  // exponent_sum | brooks_little | homogenized_brooks
  std::string pattern;
  std::vector<Rat> weights;
  std::optional<Rat> certified_defect;
  int N = 8;  // homogenization exponent (homogenized_brooks only)
};

struct TaskConfig {
  std::string name;
  Json params = Json::object();
};

struct ScenarioBudgets {
  std::size_t max_ball_elements = 200000;
  std::size_t max_candidates = 2'000'000;
};

struct Scenario {
  GroupConfig group;
  SubgroupConfig subgroup;
  RelativeConfig relative;
  std::vector<QmSpecConfig> quasimorphisms;
  std::vector<TaskConfig> tasks;
  ScenarioBudgets budgets;
  std::uint64_t seed = 0;
  Json echo = Json::object();  // the document as parsed, reprinted in reports
};

namespace detail {

[[noreturn]] inline void schema_fail(const std::string& path, const std::string& msg) {
  fail(Errc::schema_error, path + ": " + msg);
}

inline void expect_keys(const Json& j, const std::string& path, std::initializer_list<const char*> allowed,
                        std::initializer_list<const char*> required) {
  if (!j.is_object()) schema_fail(path, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* a : allowed)
      if (it.key() == a) known = true;
    if (!known) schema_fail(path + "." + it.key(), "unknown field");
  }
  for (const char* r : required)
    if (!j.contains(r)) schema_fail(path, "missing required field '" + std::string(r) + "'");
}

// Rationals travel as JSON integers or "p/q" strings; doubles are refused so
// no report value ever passes through floating point.
inline Rat get_rat(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_string()) {
    try {
      return Rat(j.get<std::string>());
    } catch (const std::exception&) {
      schema_fail(path, "not a rational: '" + j.get<std::string>() + "' (use an integer or \"p/q\")");
    }
  }
  schema_fail(path, "expected a rational (integer or \"p/q\" string)");
}

inline std::string get_str(const Json& j, const std::string& path) {
  if (!j.is_string()) schema_fail(path, "expected a string");
  return j.get<std::string>();
}

inline long long get_int(const Json& j, const std::string& path, long long lo, long long hi = 1'000'000'000'000LL) {
  if (!j.is_number_integer()) schema_fail(path, "expected an integer");
  long long v = j.get<long long>();
  if (v < lo || v > hi)
    schema_fail(path, "value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return v;
}

inline bool get_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) schema_fail(path, "expected a boolean");
  return j.get<bool>();
}

inline std::vector<std::string> get_str_array(const Json& j, const std::string& path) {
  if (!j.is_array()) schema_fail(path, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_str(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

// Word strings use one lowercase ASCII letter per generator, uppercase for
// its inverse; checking the letters against the declared set here means word
// parsing cannot fail later at run time.
inline void check_word_text(const std::string& w, const std::set<char>& gens, const std::string& path) {
  for (char c : w) {
    char low = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (!std::isalpha(static_cast<unsigned char>(c)) || gens.find(low) == gens.end())
      schema_fail(path, std::string("letter '") + c + "' is not a declared generator");
  }
}

struct ParamRule {
  enum Kind { Int, UInt, RatVal, Bool, Str, StrArray, IntArray, WitnessArray } kind;
  bool required = false;
  long long lo = 0;  // lower bound for Int/UInt/IntArray entries
};

inline const std::map<std::string, std::map<std::string, ParamRule>>& task_param_rules() {
  using K = ParamRule::Kind;
  static const std::map<std::string, std::map<std::string, ParamRule>> rules = {
      {"check-controlled",
       {{"maxlen", {K::Int, true, 1}}, {"window", {K::Int, false, 1}}, {"qm", {K::Str, false, 0}}}},
      {"estimate-delta",
       {{"radius", {K::Int, true, 1}}, {"triangle_samples", {K::Int, true, 1}}}},
      {"extend",
       {{"qm", {K::Str, false, 0}},
        {"ball_radius", {K::Int, false, 1}},
        {"elements", {K::StrArray, false, 0}},
        {"x_length_cap", {K::Int, false, 0}},
        {"pool_radius", {K::Int, false, 1}},
        {"extra_pool_letters", {K::Int, false, 0}},
        {"declared_slack", {K::RatVal, false, 0}},
        {"C0", {K::RatVal, false, 0}},
        {"D_upper", {K::RatVal, false, 0}},
        {"C", {K::RatVal, false, 0}},
        {"audit", {K::Bool, false, 0}},
        {"audit_radius", {K::Int, false, 1}}}},
      {"defect-report",
       {{"qm", {K::Str, false, 0}},
        {"radii", {K::IntArray, true, 1}},
        {"pair_budget", {K::Int, true, 1}},
        {"x_length_cap", {K::Int, false, 0}},
        {"extra_pool_letters", {K::Int, false, 0}},
        {"slack", {K::RatVal, false, 0}},
        {"pool_radius", {K::Int, false, 1}},
        {"C0", {K::RatVal, false, 0}},
        {"D_upper", {K::RatVal, false, 0}}}},
      {"scl-bounds",
       {{"elements", {K::StrArray, true, 0}},
        {"n_list", {K::IntArray, false, 1}},
        {"q", {K::Int, false, 1}},
        {"radius", {K::Int, false, 1}},
        {"N", {K::Int, false, 1}},
        {"qm", {K::Str, false, 0}},
        {"mixed", {K::Bool, false, 0}}}},
      {"central-distortion",
       {{"z", {K::Str, true, 0}},
        {"X_E", {K::StrArray, true, 0}},
        {"max_n", {K::Int, true, 1}},
        {"ball_radius", {K::Int, true, 1}},
        {"witnesses", {K::WitnessArray, false, 0}}}},
      {"sc-search",
       {{"blocks", {K::Int, false, 1}},
        {"balanced", {K::Bool, false, 0}},
        {"max_attempts", {K::Int, false, 1}},
        {"lambda", {K::RatVal, false, 0}},
        {"dehn_trials", {K::Int, false, 0}}}},
  };
  return rules;
}

// Tasks whose execution starts from the relative alphabet (X, K_pool).
inline bool task_needs_relative(const std::string& name) {
  return name == "check-controlled" || name == "estimate-delta" || name == "extend" || name == "defect-report";
}

inline void check_param(const std::string& task, const std::string& key, const ParamRule& rule, const Json& v,
                        const std::string& path, const std::set<char>& gens) {
  using K = ParamRule::Kind;
  switch (rule.kind) {
    case K::Int:
    case K::UInt:
      get_int(v, path, rule.lo);
      break;
    case K::RatVal: {
      Rat r = get_rat(v, path);
      if (task == "sc-search" && key == "lambda" && (r <= 0 || r > Rat(1, 6)))
        schema_fail(path, "lambda must lie in (0, 1/6], got " + rat_str(r));
      if (r < rule.lo && key != "lambda") schema_fail(path, "must be nonnegative");
      break;
    }
    case K::Bool:
      get_bool(v, path);
      break;
    case K::Str: {
      std::string s = get_str(v, path);
      if (key == "z") check_word_text(s, gens, path);
      break;
    }
    case K::StrArray: {
      auto items = get_str_array(v, path);
      if (key == "elements" || key == "X_E") {
        if (items.empty()) schema_fail(path, "must be nonempty");
        for (std::size_t i = 0; i < items.size(); ++i)
          check_word_text(items[i], gens, path + "[" + std::to_string(i) + "]");
      }
      break;
    }
    case K::IntArray: {
      if (!v.is_array() || v.empty()) schema_fail(path, "expected a nonempty array of integers");
      for (std::size_t i = 0; i < v.size(); ++i) get_int(v[i], path + "[" + std::to_string(i) + "]", rule.lo);
      break;
    }
    case K::WitnessArray: {
      if (!v.is_array()) schema_fail(path, "expected an array of {n, word} objects");
      for (std::size_t i = 0; i < v.size(); ++i) {
        std::string wp = path + "[" + std::to_string(i) + "]";
        expect_keys(v[i], wp, {"n", "word"}, {"n", "word"});
        get_int(v[i]["n"], wp + ".n", 1);
        check_word_text(get_str(v[i]["word"], wp + ".word"), gens, wp + ".word");
      }
      break;
    }
  }
}

}  // namespace detail

inline Scenario parse_scenario(const Json& doc) {
  using detail::expect_keys;
  using detail::get_int;
  using detail::get_rat;
  using detail::get_str;
  using detail::get_str_array;
  using detail::schema_fail;

  Scenario sc;
  sc.echo = doc;
  expect_keys(doc, "scenario", {"group", "subgroup", "relative", "quasimorphisms", "tasks", "budgets", "seed"},
              {"group", "tasks", "seed"});

  // group
  {
    const Json& g = doc["group"];
    expect_keys(g, "scenario.group", {"type", "generators", "relators"}, {"type", "generators"});
    sc.group.type = get_str(g["type"], "scenario.group.type");
    static const std::set<std::string> types = {"free", "free_abelian", "small_cancellation", "heisenberg",
                                                "z_cross_f2"};
    if (!types.count(sc.group.type)) schema_fail("scenario.group.type", "unknown group type '" + sc.group.type + "'");
    sc.group.generators = get_str_array(g["generators"], "scenario.group.generators");
    if (sc.group.generators.empty()) schema_fail("scenario.group.generators", "must be nonempty");
    std::set<char> seen;
    for (std::size_t i = 0; i < sc.group.generators.size(); ++i) {
      const std::string& name = sc.group.generators[i];
      std::string path = "scenario.group.generators[" + std::to_string(i) + "]";
      if (name.size() != 1 || !std::islower(static_cast<unsigned char>(name[0])))
        schema_fail(path, "generator names are single lowercase letters");
      if (!seen.insert(name[0]).second) schema_fail(path, "duplicate generator '" + name + "'");
    }
    if (g.contains("relators")) sc.group.relators = get_str_array(g["relators"], "scenario.group.relators");
    for (std::size_t i = 0; i < sc.group.relators.size(); ++i)
      detail::check_word_text(sc.group.relators[i], seen, "scenario.group.relators[" + std::to_string(i) + "]");
    if (sc.group.type != "small_cancellation" && !sc.group.relators.empty())
      schema_fail("scenario.group.relators", "relators are only meaningful for type 'small_cancellation'");
    if (sc.group.type == "small_cancellation" && sc.group.relators.empty())
      schema_fail("scenario.group.relators", "type 'small_cancellation' needs at least one relator");
    if ((sc.group.type == "heisenberg" || sc.group.type == "z_cross_f2") &&
        sc.group.generators != std::vector<std::string>{"x", "y", "z"})
      schema_fail("scenario.group.generators", "type '" + sc.group.type + "' is fixed to generators [x, y, z]");
  }
  std::set<char> gens;
  for (const std::string& s : sc.group.generators) gens.insert(s[0]);

  // subgroup
  if (doc.contains("subgroup")) {
    const Json& s = doc["subgroup"];
    expect_keys(s, "scenario.subgroup", {"type", "images", "words"}, {"type"});
    sc.subgroup.type = get_str(s["type"], "scenario.subgroup.type");
    if (sc.subgroup.type == "whole") {
      if (s.contains("images") || s.contains("words"))
        schema_fail("scenario.subgroup", "type 'whole' takes no images or words");
    } else if (sc.subgroup.type == "kernel") {
      if (!s.contains("images")) schema_fail("scenario.subgroup", "missing required field 'images'");
      if (s.contains("words")) schema_fail("scenario.subgroup.words", "kernel subgroups take 'images'");
      sc.subgroup.images = get_str_array(s["images"], "scenario.subgroup.images");
      if (sc.subgroup.images.size() != sc.group.generators.size())
        schema_fail("scenario.subgroup.images", "need exactly one image per ambient generator");
      for (std::size_t i = 0; i < sc.subgroup.images.size(); ++i)
        detail::check_word_text(sc.subgroup.images[i], {'t'}, "scenario.subgroup.images[" + std::to_string(i) + "]");
    } else if (sc.subgroup.type == "normal_closure") {
      if (!s.contains("words")) schema_fail("scenario.subgroup", "missing required field 'words'");
      if (s.contains("images")) schema_fail("scenario.subgroup.images", "normal closures take 'words'");
      sc.subgroup.words = get_str_array(s["words"], "scenario.subgroup.words");
      if (sc.subgroup.words.empty()) schema_fail("scenario.subgroup.words", "must be nonempty");
      for (std::size_t i = 0; i < sc.subgroup.words.size(); ++i)
        detail::check_word_text(sc.subgroup.words[i], gens, "scenario.subgroup.words[" + std::to_string(i) + "]");
    } else {
      schema_fail("scenario.subgroup.type", "unknown subgroup type '" + sc.subgroup.type + "'");
    }
  }

  // relative
  if (doc.contains("relative")) {
    const Json& r = doc["relative"];
    expect_keys(r, "scenario.relative", {"X", "K_pool"}, {"X", "K_pool"});
    sc.relative.present = true;
    sc.relative.X = get_str_array(r["X"], "scenario.relative.X");
    sc.relative.K_pool = get_str_array(r["K_pool"], "scenario.relative.K_pool");
    if (sc.relative.X.empty()) schema_fail("scenario.relative.X", "must be nonempty");
    if (sc.relative.K_pool.empty()) schema_fail("scenario.relative.K_pool", "must be nonempty");
    for (std::size_t i = 0; i < sc.relative.X.size(); ++i)
      detail::check_word_text(sc.relative.X[i], gens, "scenario.relative.X[" + std::to_string(i) + "]");
    for (std::size_t i = 0; i < sc.relative.K_pool.size(); ++i)
      detail::check_word_text(sc.relative.K_pool[i], gens, "scenario.relative.K_pool[" + std::to_string(i) + "]");
  }

  // quasimorphisms
  if (doc.contains("quasimorphisms")) {
    const Json& arr = doc["quasimorphisms"];
    if (!arr.is_array()) schema_fail("scenario.quasimorphisms", "expected an array");
    std::set<std::string> names;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      std::string path = "scenario.quasimorphisms[" + std::to_string(i) + "]";
      expect_keys(arr[i], path, {"name", "kind", "pattern", "weights", "certified_defect", "N"}, {"name", "kind"});
      QmSpecConfig q;
      q.name = get_str(arr[i]["name"], path + ".name");
      if (q.name.empty()) schema_fail(path + ".name", "must be nonempty");
      if (!names.insert(q.name).second) schema_fail(path + ".name", "duplicate quasimorphism name '" + q.name + "'");
      q.kind = get_str(arr[i]["kind"], path + ".kind");
      if (arr[i].contains("certified_defect")) {
        Rat d = get_rat(arr[i]["certified_defect"], path + ".certified_defect");
        if (d < 0) schema_fail(path + ".certified_defect", "must be nonnegative");
        q.certified_defect = d;
      }
      if (q.kind == "exponent_sum") {
        if (!arr[i].contains("weights")) schema_fail(path, "missing required field 'weights'");
        if (arr[i].contains("pattern") || arr[i].contains("N"))
          schema_fail(path, "kind 'exponent_sum' takes only weights");
        const Json& w = arr[i]["weights"];
        if (!w.is_array() || w.size() != sc.group.generators.size())
          schema_fail(path + ".weights", "need one weight per generator");
        for (std::size_t k = 0; k < w.size(); ++k)
          q.weights.push_back(get_rat(w[k], path + ".weights[" + std::to_string(k) + "]"));
      } else if (q.kind == "brooks_little" || q.kind == "homogenized_brooks") {
        if (!arr[i].contains("pattern")) schema_fail(path, "missing required field 'pattern'");
        if (arr[i].contains("weights")) schema_fail(path + ".weights", "counting quasimorphisms take a pattern");
        q.pattern = get_str(arr[i]["pattern"], path + ".pattern");
        detail::check_word_text(q.pattern, gens, path + ".pattern");
        if (q.kind == "brooks_little" && arr[i].contains("N"))
          schema_fail(path + ".N", "N applies to 'homogenized_brooks' only");
        if (arr[i].contains("N")) q.N = static_cast<int>(get_int(arr[i]["N"], path + ".N", 1, 1 << 20));
      } else {
        schema_fail(path + ".kind", "unknown kind '" + q.kind + "'");
      }
      sc.quasimorphisms.push_back(std::move(q));
    }
  }

  // tasks
  {
    const Json& arr = doc["tasks"];
    if (!arr.is_array()) schema_fail("scenario.tasks", "expected an array");
    const auto& rules = detail::task_param_rules();
    for (std::size_t i = 0; i < arr.size(); ++i) {
      std::string path = "scenario.tasks[" + std::to_string(i) + "]";
      expect_keys(arr[i], path, {"name", "params"}, {"name"});
      TaskConfig t;
      t.name = get_str(arr[i]["name"], path + ".name");
      auto rit = rules.find(t.name);
      if (rit == rules.end()) schema_fail(path + ".name", "unknown task '" + t.name + "'");
      if (arr[i].contains("params")) {
        t.params = arr[i]["params"];
        if (!t.params.is_object()) schema_fail(path + ".params", "expected an object");
      }
      for (auto it = t.params.begin(); it != t.params.end(); ++it) {
        auto pit = rit->second.find(it.key());
        if (pit == rit->second.end()) schema_fail(path + ".params." + it.key(), "unknown field");
        detail::check_param(t.name, it.key(), pit->second, it.value(), path + ".params." + it.key(), gens);
      }
      for (const auto& [key, rule] : rit->second)
        if (rule.required && !t.params.contains(key))
          schema_fail(path + ".params", "missing required field '" + key + "'");
      if (t.name == "extend") {
        bool rad = t.params.contains("ball_radius"), els = t.params.contains("elements");
        if (rad == els) schema_fail(path + ".params", "give exactly one of ball_radius or elements");
      }
      if (rit->second.count("qm")) {
        if (t.params.contains("qm")) {
          std::string qname = detail::get_str(t.params["qm"], path + ".params.qm");
          bool found = false;
          for (const QmSpecConfig& q : sc.quasimorphisms)
            if (q.name == qname) found = true;
          if (!found) schema_fail(path + ".params.qm", "no declared quasimorphism named '" + qname + "'");
        } else if (sc.quasimorphisms.empty()) {
          schema_fail("scenario.quasimorphisms", "task '" + t.name + "' needs a quasimorphism");
        }
      }
      if (t.name == "check-controlled" && sc.subgroup.type != "kernel")
        schema_fail("scenario.subgroup", "task 'check-controlled' enumerates a kernel; subgroup.type must be 'kernel'");
      if (detail::task_needs_relative(t.name) && !sc.relative.present)
        schema_fail("scenario.relative", "task '" + t.name + "' needs the relative block (X, K_pool)");
      sc.tasks.push_back(std::move(t));
    }
  }

  // budgets
  if (doc.contains("budgets")) {
    const Json& b = doc["budgets"];
    expect_keys(b, "scenario.budgets", {"max_ball_elements", "max_candidates"}, {});
    if (b.contains("max_ball_elements"))
      sc.budgets.max_ball_elements =
          static_cast<std::size_t>(get_int(b["max_ball_elements"], "scenario.budgets.max_ball_elements", 1));
    if (b.contains("max_candidates"))
      sc.budgets.max_candidates =
          static_cast<std::size_t>(get_int(b["max_candidates"], "scenario.budgets.max_candidates", 1));
  }

  sc.seed = static_cast<std::uint64_t>(get_int(doc["seed"], "scenario.seed", 0));
  return sc;
}

inline Scenario scenario_from_text(const std::string& text, const std::string& origin) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(Errc::parse_error, origin + ": " + e.what());
  }
  return parse_scenario(doc);
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(Errc::io_error, "cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << is.rdbuf();
  return scenario_from_text(buf.str(), path);
}

// --- shipped scenarios --------------------------------------------------------

struct BuiltinScenario {
  const char* name;
  const char* text;
};

namespace builtin {

inline constexpr const char* scenario_A = R"JSON({
  "group": {"type": "free", "generators": ["a", "b"], "relators": []},
  "subgroup": {"type": "kernel", "images": ["t", ""]},
  "relative": {"X": ["a", "A"], "K_pool": ["b"]},
  "quasimorphisms": [
    {"name": "bexp", "kind": "exponent_sum", "weights": [0, 1]},
    {"name": "phi_ab", "kind": "brooks_little", "pattern": "ab", "certified_defect": 1}
  ],
  "tasks": [
    {"name": "check-controlled", "params": {"maxlen": 8, "qm": "bexp"}},
    {"name": "estimate-delta", "params": {"radius": 4, "triangle_samples": 200}},
    {"name": "extend", "params": {"qm": "bexp", "ball_radius": 5, "x_length_cap": 6, "audit": true, "audit_radius": 7}},
    {"name": "defect-report", "params": {"qm": "bexp", "radii": [3, 4, 5], "pair_budget": 2000, "x_length_cap": 12, "slack": 1000000}},
    {"name": "scl-bounds", "params": {"qm": "phi_ab", "elements": ["abAB"], "n_list": [1, 2, 3], "q": 2, "radius": 5, "N": 8}}
  ],
  "budgets": {"max_ball_elements": 200000, "max_candidates": 2000000},
  "seed": 20240817
}
)JSON";

inline constexpr const char* scenario_A_prime = R"JSON({
  "group": {"type": "free", "generators": ["a", "b"], "relators": []},
  "subgroup": {"type": "kernel", "images": ["t", ""]},
  "relative": {"X": ["a", "A"], "K_pool": ["b"]},
  "quasimorphisms": [
    {"name": "hbb", "kind": "homogenized_brooks", "pattern": "bb", "N": 32, "certified_defect": "67/32"}
  ],
  "tasks": [
    {"name": "check-controlled", "params": {"maxlen": 6, "qm": "hbb"}},
    {"name": "extend", "params": {"qm": "hbb", "ball_radius": 3, "C0": "201/8", "x_length_cap": 5}},
    {"name": "defect-report", "params": {"qm": "hbb", "radii": [3, 4, 5], "pair_budget": 400, "C0": "201/8", "x_length_cap": 12, "extra_pool_letters": 0, "slack": 1000000}}
  ],
  "budgets": {"max_ball_elements": 200000, "max_candidates": 2000000},
  "seed": 424243
}
)JSON";

inline constexpr const char* heisenberg = R"JSON({
  "group": {"type": "heisenberg", "generators": ["x", "y", "z"], "relators": []},
  "tasks": [
    {"name": "central-distortion", "params": {"z": "z", "X_E": ["x", "y"], "max_n": 16, "ball_radius": 10, "witnesses": [
      {"n": 4, "word": "xxyyXXYY"},
      {"n": 9, "word": "xxxyyyXXXYYY"},
      {"n": 16, "word": "xxxxyyyyXXXXYYYY"}
    ]}}
  ],
  "budgets": {"max_ball_elements": 200000, "max_candidates": 2000000},
  "seed": 7
}
)JSON";

inline constexpr const char* z_cross_f2 = R"JSON({
  "group": {"type": "z_cross_f2", "generators": ["x", "y", "z"], "relators": []},
  "tasks": [
    {"name": "central-distortion", "params": {"z": "z", "X_E": ["x", "y", "z"], "max_n": 8, "ball_radius": 8}}
  ],
  "budgets": {"max_ball_elements": 200000, "max_candidates": 2000000},
  "seed": 7
}
)JSON";

inline constexpr const char* small_cancellation_search = R"JSON({
  "group": {"type": "free", "generators": ["a", "b"], "relators": []},
  "tasks": [
    {"name": "sc-search", "params": {"blocks": 6, "lambda": "1/6", "dehn_trials": 50}}
  ],
  "budgets": {"max_ball_elements": 200000, "max_candidates": 2000000},
  "seed": 20240817
}
)JSON";

}  // namespace builtin

inline const std::vector<BuiltinScenario>& builtin_scenarios() {
  static const std::vector<BuiltinScenario> all = {
      {"scenario_A", builtin::scenario_A},
      {"scenario_A_prime", builtin::scenario_A_prime},
      {"heisenberg", builtin::heisenberg},
      {"z_cross_f2", builtin::z_cross_f2},
      {"small_cancellation_search", builtin::small_cancellation_search},
  };
  return all;
}

inline const char* builtin_scenario_text(const std::string& name) {
  for (const BuiltinScenario& b : builtin_scenarios())
    if (name == b.name) return b.text;
  return nullptr;
}

}  // namespace qmx
