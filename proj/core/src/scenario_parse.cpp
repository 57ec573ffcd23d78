#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "relframe/channels.hpp"
#include "relframe/errors.hpp"
#include "relframe/scenario.hpp"

namespace relframe {

namespace {

// Offsets of every value in a syntactically valid JSON text, keyed by the
// same slash-separated paths the parser uses in diagnostics.
class PathLocator {
 public:
  explicit PathLocator(std::string_view text) : text_(text) {
    skip_ws();
    if (pos_ < text_.size()) value("");
  }

  std::size_t find(std::string path) const {
    while (true) {
      auto it = offsets_.find(path);
      if (it != offsets_.end()) return it->second;
      const auto cut = path.rfind('/');
      if (cut == std::string::npos) return 0;
      path.resize(cut);
    }
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string string_token() {
    std::string out;
    ++pos_;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\') ++pos_;
      if (pos_ < text_.size()) out += text_[pos_++];
    }
    ++pos_;
    return out;
  }

  void value(const std::string& path) {
    skip_ws();
    if (pos_ >= text_.size()) return;
    offsets_.emplace(path, pos_);
    const char c = text_[pos_];
    if (c == '{') {
      ++pos_;
      skip_ws();
      while (pos_ < text_.size() && text_[pos_] != '}') {
        const std::size_t key_at = pos_;
        const std::string key = string_token();
        offsets_.emplace(path + "/" + key, key_at);
        skip_ws();
        ++pos_;  // ':'
        value(path + "/" + key);
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ',') ++pos_;
        skip_ws();
      }
      ++pos_;
    } else if (c == '[') {
      ++pos_;
      skip_ws();
      for (int i = 0; pos_ < text_.size() && text_[pos_] != ']'; ++i) {
        value(path + "/" + std::to_string(i));
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ',') ++pos_;
        skip_ws();
      }
      ++pos_;
    } else if (c == '"') {
      string_token();
    } else {
      while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != '}' &&
             text_[pos_] != ']' && !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::map<std::string, std::size_t> offsets_;
};

std::string line_column(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1;
  std::size_t line_start = 0;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++line;
      line_start = i + 1;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(offset - line_start + 1);
}

const std::set<std::string> kTopLevelKeys = {"name",     "description", "options",
                                             "group",    "representations", "systems",
                                             "frames",   "channels",    "frame_morphisms",
                                             "tasks"};

const std::set<std::string> kCheckKinds = {"channel_axioms", "ideal_isomorphism", "functor_laws",
                                           "naturality", "tensor_form"};
const std::set<std::string> kStanzaKinds = {"relativize", "relative_subspace", "yen_morphism",
                                            "external_transform"};

class Parser {
 public:
  Parser(std::string_view text, const ScenarioSettings& settings)
      : text_(text), settings_(settings) {}

  ScenarioSpec run() {
    try {
      spec_.document = Json::parse(text_.begin(), text_.end());
    } catch (const Json::parse_error& e) {
      const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
      throw Error(ErrorKind::SyntaxError, line_column(text_, at) + ": " + e.what());
    }
    locator_ = std::make_unique<PathLocator>(text_);
    const Json& doc = spec_.document;
    if (!doc.is_object()) fail(ErrorKind::SyntaxError, "", "scenario must be a JSON object");
    for (const auto& [key, _] : doc.items()) {
      if (!kTopLevelKeys.count(key)) fail(ErrorKind::ValidationError, "/" + key, "unknown section '" + key + "'");
    }
    if (doc.contains("name")) spec_.name = string_of(doc["name"], "/name");
    read_options();
    ToleranceScope scope(spec_.tolerance);
    read_group();
    read_section("representations", [&](const std::string& n, const Json& v, const std::string& p) {
      spec_.representations.emplace(n, read_representation(v, p));
    });
    read_section("systems", [&](const std::string& n, const Json& v, const std::string& p) {
      spec_.systems.emplace(n, read_system(v, p));
    });
    read_section("frames", [&](const std::string& n, const Json& v, const std::string& p) {
      spec_.frames.emplace(n, read_frame(v, p));
    });
    read_section("channels", [&](const std::string& n, const Json& v, const std::string& p) {
      spec_.channels.emplace(n, read_channel(v, p));
    });
    read_section("frame_morphisms", [&](const std::string& n, const Json& v, const std::string& p) {
      spec_.frame_morphisms.emplace(n, read_morphism(v, p));
    });
    read_tasks();
    return std::move(spec_);
  }

 private:
  [[noreturn]] void fail(ErrorKind kind, const std::string& path, const std::string& message,
                         std::vector<Witness> witnesses = {}) const {
    const std::string where = path.empty() ? "/" : path;
    throw Error(kind, line_column(text_, locator_ ? locator_->find(path) : 0) + " (" + where +
                          "): " + message,
                std::move(witnesses));
  }

  template <class F>
  auto guarded(const std::string& path, F&& f) const -> decltype(f()) {
    try {
      return f();
    } catch (const Error& e) {
      fail(e.kind(), path, e.detail(), e.witnesses());
    }
  }

  const Json& field(const Json& obj, const char* key, const std::string& path) const {
    if (!obj.is_object()) fail(ErrorKind::ValidationError, path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(ErrorKind::ValidationError, path, std::string("missing key '") + key + "'");
    return *it;
  }

  std::string string_of(const Json& v, const std::string& path) const {
    if (!v.is_string()) fail(ErrorKind::ValidationError, path, "expected a string");
    return v.get<std::string>();
  }

  double number_of(const Json& v, const std::string& path) const {
    if (!v.is_number()) fail(ErrorKind::ValidationError, path, "expected a number");
    return v.get<double>();
  }

  int integer_of(const Json& v, const std::string& path) const {
    if (!v.is_number_integer()) fail(ErrorKind::ValidationError, path, "expected an integer");
    return v.get<int>();
  }

  ComplexMatrix matrix_of(const Json& v, const std::string& path, Index dim) const {
    ComplexMatrix m = guarded(path, [&] { return parse_matrix_literal(v, path); });
    if (dim > 0 && (m.rows() != dim || m.cols() != dim)) {
      fail(ErrorKind::DimensionMismatch, path,
           "expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix, got " +
               std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    return m;
  }

  Element element_of(const Json& v, const std::string& path) const {
    std::string key;
    if (v.is_number_integer()) {
      key = std::to_string(v.get<long long>());
    } else {
      key = string_of(v, path);
    }
    const auto g = spec_.group->find(key);
    if (!g) fail(ErrorKind::UnknownReference, path, "unknown group element '" + key + "'", {Witness{key, std::nullopt, 0.0}});
    return *g;
  }

  template <class Map>
  const typename Map::mapped_type& lookup(const Map& map, const Json& v, const std::string& path,
                                          const char* what) const {
    const std::string name = string_of(v, path);
    auto it = map.find(name);
    if (it == map.end()) {
      fail(ErrorKind::UnknownReference, path, std::string("unknown ") + what + " '" + name + "'",
           {Witness{name, std::nullopt, 0.0}});
    }
    return it->second;
  }

  template <class F>
  void read_section(const char* key, F&& read) {
    const Json& doc = spec_.document;
    if (!doc.contains(key)) return;
    const std::string base = std::string("/") + key;
    const Json& section = doc[key];
    if (!section.is_object()) fail(ErrorKind::ValidationError, base, "expected an object of named entries");
    for (const auto& [name, value] : section.items()) read(name, value, base + "/" + name);
  }

  void read_options() {
    const Json& doc = spec_.document;
    std::optional<double> scenario_tol;
    if (doc.contains("options")) {
      const Json& o = doc["options"];
      if (!o.is_object()) fail(ErrorKind::ValidationError, "/options", "expected an object");
      for (const auto& [key, value] : o.items()) {
        const std::string path = "/options/" + key;
        if (key == "tolerance") {
          const double t = number_of(value, path);
          if (!(t > 0.0) || !std::isfinite(t)) fail(ErrorKind::ValidationError, path, "tolerance must be positive");
          scenario_tol = t;
        } else if (key == "seed") {
          if (!value.is_number_unsigned() && !value.is_number_integer()) fail(ErrorKind::ValidationError, path, "seed must be a non-negative integer");
          if (value.is_number_integer() && value.get<long long>() < 0) fail(ErrorKind::ValidationError, path, "seed must be a non-negative integer");
          spec_.seed = value.get<std::uint64_t>();
        } else if (key == "samples") {
          spec_.samples = integer_of(value, path);
          if (spec_.samples < 0) fail(ErrorKind::ValidationError, path, "samples must be non-negative");
        } else {
          fail(ErrorKind::ValidationError, path, "unknown option '" + key + "'");
        }
      }
    }
    if (settings_.tolerance) {
      spec_.tolerance = *settings_.tolerance;
    } else if (scenario_tol) {
      spec_.tolerance = *scenario_tol;
    } else if (auto env = environment_tolerance()) {
      spec_.tolerance = *env;
    }
    if (settings_.seed) spec_.seed = settings_.seed;
  }

  void read_group() {
    const Json& g = field(spec_.document, "group", "");
    const std::string type = string_of(field(g, "type", "/group"), "/group/type");
    if (type == "cyclic") {
      const int n = integer_of(field(g, "order", "/group"), "/group/order");
      spec_.group = guarded("/group", [&] { return std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(n)); });
    } else if (type == "symmetric") {
      const int n = integer_of(field(g, "degree", "/group"), "/group/degree");
      spec_.group = guarded("/group", [&] { return std::make_shared<const FiniteGroup>(FiniteGroup::symmetric(n)); });
    } else if (type == "table") {
      const Json& mult = field(g, "mult", "/group");
      FiniteGroup::Table table;
      if (!mult.is_array()) fail(ErrorKind::InvalidTable, "/group/mult", "expected a list of rows");
      for (std::size_t i = 0; i < mult.size(); ++i) {
        const std::string rp = "/group/mult/" + std::to_string(i);
        if (!mult[i].is_array()) fail(ErrorKind::InvalidTable, rp, "expected a row of integers");
        std::vector<Element> row;
        for (std::size_t j = 0; j < mult[i].size(); ++j) row.push_back(integer_of(mult[i][j], rp + "/" + std::to_string(j)));
        table.push_back(std::move(row));
      }
      std::vector<std::string> labels;
      if (g.contains("labels")) {
        const Json& l = g["labels"];
        if (!l.is_array()) fail(ErrorKind::ValidationError, "/group/labels", "expected a list of strings");
        for (std::size_t i = 0; i < l.size(); ++i) labels.push_back(string_of(l[i], "/group/labels/" + std::to_string(i)));
      }
      std::optional<Element> ident;
      if (g.contains("identity")) ident = integer_of(g["identity"], "/group/identity");
      spec_.group = guarded("/group", [&] {
        return std::make_shared<const FiniteGroup>(FiniteGroup::from_table(table, ident, labels));
      });
    } else {
      fail(ErrorKind::ValidationError, "/group/type", "unknown group type '" + type + "'");
    }
  }

  UnitaryRep read_representation(const Json& v, const std::string& path) {
    const FiniteGroup& group = *spec_.group;
    const std::string kind = v.contains("kind") ? string_of(v["kind"], path + "/kind") : "matrices";
    if (kind == "regular") {
      return UnitaryRep(spec_.group, regular_representation(group).matrices());
    }
    if (kind == "trivial") {
      const int d = integer_of(field(v, "dim", path), path + "/dim");
      return guarded(path, [&] { return UnitaryRep(spec_.group, trivial_representation(group, d).matrices()); });
    }
    if (kind != "matrices") fail(ErrorKind::ValidationError, path + "/kind", "unknown representation kind '" + kind + "'");
    const int d = integer_of(field(v, "dim", path), path + "/dim");
    if (d <= 0) fail(ErrorKind::ValidationError, path + "/dim", "dimension must be positive");
    const Json& mats = field(v, "matrices", path);
    if (!mats.is_object()) fail(ErrorKind::ValidationError, path + "/matrices", "expected an object keyed by group element");
    std::map<Element, ComplexMatrix> given;
    for (const auto& [key, m] : mats.items()) {
      const std::string mp = path + "/matrices/" + key;
      const Element g = element_of(Json(key), mp);
      given[g] = matrix_of(m, mp, d);
    }
    if (static_cast<int>(given.size()) == group.order()) {
      std::vector<ComplexMatrix> all;
      for (auto& [g, m] : given) all.push_back(m);
      return guarded(path, [&] { return UnitaryRep(spec_.group, std::move(all)); });
    }
    return guarded(path, [&] {
      return UnitaryRep(spec_.group, representation_from_generators(group, d, given).matrices());
    });
  }

  SystemPtr read_system(const Json& v, const std::string& path) {
    const UnitaryRep& rep = lookup(spec_.representations, field(v, "rep", path), path + "/rep", "representation");
    const Json& basis = field(v, "basis", path);
    const std::string bp = path + "/basis";
    if (basis.is_string()) {
      const std::string b = basis.get<std::string>();
      if (b == "full") return full_system(rep);
      if (b == "invariant") return guarded(bp, [&] { return invariant_subalgebra(rep); });
      fail(ErrorKind::ValidationError, bp, "expected \"full\", \"invariant\" or a list of matrices");
    }
    return guarded(bp, [&] {
      const auto gens = matrix_list(basis, bp, rep.dim());
      return subspace_system(rep, gens);
    });
  }

  std::vector<ComplexMatrix> matrix_list(const Json& v, const std::string& path, Index dim) const {
    if (!v.is_array()) fail(ErrorKind::ValidationError, path, "expected a list of matrices");
    std::vector<ComplexMatrix> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(matrix_of(v[i], path + "/" + std::to_string(i), dim));
    return out;
  }

  SystemPtr value_space(const Json& v, const std::string& path, const UnitaryRep& rep) {
    if (v.is_string()) {
      const std::string s = v.get<std::string>();
      if (s == "full") return full_system(rep);
      const SystemPtr& sys = lookup(spec_.systems, v, path, "system");
      if (!same_representation(sys->rep(), rep)) fail(ErrorKind::ValidationError, path, "value system carries a different representation");
      return sys;
    }
    return guarded(path, [&] {
      const auto gens = matrix_list(v, path, rep.dim());
      return subspace_system(rep, gens);
    });
  }

  FramePtr read_frame(const Json& v, const std::string& path) {
    if (v.contains("smear")) {
      const FramePtr& base = lookup(spec_.frames, v["smear"], path + "/smear", "frame");
      const double w = number_of(field(v, "weight", path), path + "/weight");
      if (w < 0.0 || w > 1.0) fail(ErrorKind::ValidationError, path + "/weight", "weight must lie in [0, 1]");
      return guarded(path, [&] { return smeared_frame(base, w); });
    }
    const UnitaryRep& rep = lookup(spec_.representations, field(v, "rep", path), path + "/rep", "representation");
    SystemPtr values;
    if (v.contains("value_space")) values = value_space(v["value_space"], path + "/value_space", rep);
    if (v.contains("seed")) {
      const ComplexMatrix seed = matrix_of(v["seed"], path + "/seed", rep.dim());
      return guarded(path + "/seed", [&] { return principal_frame_from_seed(rep, seed, values); });
    }
    const Json& effects = field(v, "effects", path);
    if (!effects.is_object()) fail(ErrorKind::ValidationError, path + "/effects", "expected an object keyed by group element");
    std::vector<std::optional<ComplexMatrix>> slots(static_cast<std::size_t>(spec_.group->order()));
    for (const auto& [key, m] : effects.items()) {
      const std::string ep = path + "/effects/" + key;
      slots[static_cast<std::size_t>(element_of(Json(key), ep))] = matrix_of(m, ep, rep.dim());
    }
    std::vector<ComplexMatrix> list;
    for (std::size_t g = 0; g < slots.size(); ++g) {
      if (!slots[g]) fail(ErrorKind::ValidationError, path + "/effects", "missing effect for element " + spec_.group->label(static_cast<Element>(g)));
      list.push_back(*slots[g]);
    }
    return guarded(path + "/effects", [&] { return FrameObservable::create(rep, std::move(list), values); });
  }

  SystemPtr system_or_frame_values(const Json& v, const std::string& path) {
    const std::string name = string_of(v, path);
    if (auto it = spec_.systems.find(name); it != spec_.systems.end()) return it->second;
    if (auto it = spec_.frames.find(name); it != spec_.frames.end()) return it->second->value_system();
    fail(ErrorKind::UnknownReference, path, "unknown system or frame '" + name + "'", {Witness{name, std::nullopt, 0.0}});
  }

  ChannelMap read_channel(const Json& v, const std::string& path) {
    const SamplingOptions opts = spec_.sampling();
    const SystemPtr source = system_or_frame_values(field(v, "source", path), path + "/source");
    const SystemPtr target = v.contains("target") ? system_or_frame_values(v["target"], path + "/target") : source;
    const std::string kind = string_of(field(v, "kind", path), path + "/kind");
    const std::string dp = path + "/data";
    if (kind == "identity") {
      if (!same_system(*source, *target)) fail(ErrorKind::ObjectMismatch, path, "identity channel needs equal source and target");
      return identity_channel(source);
    }
    if (kind == "conjugate_unitary") {
      if (source->ambient_dim() != target->ambient_dim()) fail(ErrorKind::DimensionMismatch, path, "conjugation needs equal dimensions");
      const ComplexMatrix u = matrix_of(field(v, "data", path), dp, source->ambient_dim());
      return guarded(dp, [&] { return conjugation_channel(source, target, u, opts); });
    }
    if (kind == "depolarizing") {
      if (!same_system(*source, *target)) fail(ErrorKind::ObjectMismatch, path, "depolarizing channel needs equal source and target");
      const double w = number_of(field(v, "data", path), dp);
      return guarded(dp, [&] { return depolarizing_channel(source, w, opts); });
    }
    if (kind == "ampliation") {
      return guarded(path, [&] { return ampliation_channel(source, target, opts); });
    }
    if (kind == "kraus") {
      const Json& data = field(v, "data", path);
      if (!data.is_array()) fail(ErrorKind::ValidationError, dp, "expected a list of Kraus operators");
      std::vector<ComplexMatrix> ks;
      for (std::size_t i = 0; i < data.size(); ++i) {
        const std::string kp = dp + "/" + std::to_string(i);
        ComplexMatrix k = guarded(kp, [&] { return parse_matrix_literal(data[i], kp); });
        if (k.rows() != source->ambient_dim() || k.cols() != target->ambient_dim()) {
          fail(ErrorKind::DimensionMismatch, kp,
               "Kraus operators must be " + std::to_string(source->ambient_dim()) + "x" +
                   std::to_string(target->ambient_dim()));
        }
        ks.push_back(std::move(k));
      }
      return guarded(dp, [&] { return kraus_channel(source, target, ks, opts); });
    }
    if (kind == "matrix_images") {
      const Json& data = field(v, "data", path);
      if (!data.is_array()) fail(ErrorKind::ValidationError, dp, "expected a list of {\"in\", \"out\"} pairs");
      std::vector<ComplexMatrix> ins;
      std::vector<ComplexMatrix> outs;
      for (std::size_t i = 0; i < data.size(); ++i) {
        const std::string pp = dp + "/" + std::to_string(i);
        ins.push_back(matrix_of(field(data[i], "in", pp), pp + "/in", source->ambient_dim()));
        outs.push_back(matrix_of(field(data[i], "out", pp), pp + "/out", target->ambient_dim()));
      }
      return guarded(dp, [&] { return channel_from_pairs(source, target, ins, outs, opts); });
    }
    fail(ErrorKind::ValidationError, path + "/kind", "unknown channel kind '" + kind + "'");
  }

  FrameMorphism read_morphism(const Json& v, const std::string& path) {
    const std::string kind = v.contains("kind") ? string_of(v["kind"], path + "/kind") : "channel";
    if (kind == "identity") {
      const FramePtr& f = lookup(spec_.frames, field(v, "frame", path), path + "/frame", "frame");
      return identity_frame_morphism(f);
    }
    if (kind == "reorientation") {
      const FramePtr& f = lookup(spec_.frames, field(v, "frame", path), path + "/frame", "frame");
      const Element h = element_of(field(v, "element", path), path + "/element");
      return guarded(path, [&] { return reorientation_morphism(f, h); });
    }
    if (kind == "smearing") {
      const FramePtr& f = lookup(spec_.frames, field(v, "frame", path), path + "/frame", "frame");
      const double w = number_of(field(v, "weight", path), path + "/weight");
      if (w < 0.0 || w > 1.0) fail(ErrorKind::ValidationError, path + "/weight", "weight must lie in [0, 1]");
      return guarded(path, [&] { return smearing_morphism(f, w); });
    }
    if (kind != "channel") fail(ErrorKind::ValidationError, path + "/kind", "unknown frame morphism kind '" + kind + "'");
    const FramePtr& src = lookup(spec_.frames, field(v, "source", path), path + "/source", "frame");
    const FramePtr& dst = lookup(spec_.frames, field(v, "target", path), path + "/target", "frame");
    const ChannelMap& ch = lookup(spec_.channels, field(v, "channel", path), path + "/channel", "channel");
    return guarded(path, [&] { return build_frame_morphism(src, dst, ch); });
  }

  // Task bodies are resolved here so that dangling names fail at parse time.
  void check_refs(const Json& body, const std::string& path) {
    for (const auto& [key, value] : body.items()) {
      const std::string p = path + "/" + key;
      if (key == "frame") {
        lookup(spec_.frames, value, p, "frame");
      } else if (key == "system") {
        lookup(spec_.systems, value, p, "system");
      } else if (key == "phi" || key == "extension") {
        lookup(spec_.channels, value, p, "channel");
      } else if (key == "psi") {
        lookup(spec_.frame_morphisms, value, p, "frame morphism");
      } else if (key == "chain") {
        if (!value.is_array() || value.empty()) fail(ErrorKind::ValidationError, p, "expected a non-empty list of {\"psi\", \"phi\"} links");
        for (std::size_t i = 0; i < value.size(); ++i) {
          const std::string lp = p + "/" + std::to_string(i);
          field(value[i], "psi", lp);
          field(value[i], "phi", lp);
          check_refs(value[i], lp);
        }
      }
    }
  }

  void read_tasks() {
    const Json& tasks = field(spec_.document, "tasks", "");
    if (!tasks.is_array() || tasks.empty()) fail(ErrorKind::ValidationError, "/tasks", "expected a non-empty list of tasks");
    std::set<std::string> ids;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      const std::string path = "/tasks/" + std::to_string(i);
      const Json& t = tasks[i];
      if (!t.is_object()) fail(ErrorKind::ValidationError, path, "expected a task object");
      TaskSpec task;
      task.path = path;
      task.id = t.contains("id") ? string_of(t["id"], path + "/id") : "task-" + std::to_string(i + 1);
      if (!ids.insert(task.id).second) fail(ErrorKind::ValidationError, path + "/id", "duplicate task id '" + task.id + "'");
      if (t.contains("check")) {
        task.kind = string_of(t["check"], path + "/check");
        if (!kCheckKinds.count(task.kind)) fail(ErrorKind::ValidationError, path + "/check", "unknown check '" + task.kind + "'");
        task.body = t;
      } else {
        for (const auto& k : kStanzaKinds) {
          if (t.contains(k)) {
            if (!task.kind.empty()) fail(ErrorKind::ValidationError, path, "task names more than one kind");
            task.kind = k;
          }
        }
        if (task.kind.empty()) fail(ErrorKind::ValidationError, path, "task has no recognised kind");
        task.body = t[task.kind];
        if (!task.body.is_object()) fail(ErrorKind::ValidationError, path + "/" + task.kind, "expected an object");
      }
      const std::string body_path = t.contains("check") ? path : path + "/" + task.kind;
      check_refs(task.body, body_path);
      task.path = body_path;
      spec_.tasks.push_back(std::move(task));
    }
  }

  std::string_view text_;
  ScenarioSettings settings_;
  ScenarioSpec spec_;
  std::unique_ptr<PathLocator> locator_;
};

}  // namespace

std::optional<double> environment_tolerance() {
  const char* raw = std::getenv(kToleranceEnv);
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  const double t = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(t > 0.0) || !std::isfinite(t)) {
    throw Error(ErrorKind::ValidationError,
                std::string(kToleranceEnv) + " is not a positive number: '" + raw + "'");
  }
  return t;
}

ComplexMatrix parse_matrix_literal(const Json& value, const std::string& context) {
  auto bad = [&](const std::string& why) {
    throw Error(ErrorKind::ValidationError, context + ": " + why);
  };
  if (!value.is_array() || value.empty()) bad("matrix literal must be a non-empty list of rows");
  const auto rows = static_cast<Index>(value.size());
  if (!value[0].is_array() || value[0].empty()) bad("matrix rows must be non-empty lists");
  const auto cols = static_cast<Index>(value[0].size());
  ComplexMatrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const Json& row = value[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw Error(ErrorKind::DimensionMismatch, context + ": row " + std::to_string(r) + " has the wrong length");
    }
    for (Index c = 0; c < cols; ++c) {
      const Json& e = row[static_cast<std::size_t>(c)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        bad("entry (" + std::to_string(r) + ", " + std::to_string(c) + ") is not an [re, im] pair");
      }
      m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

ScenarioSpec parse_scenario(std::string_view text, const ScenarioSettings& settings) {
  return Parser(text, settings).run();
}

ScenarioSpec load_scenario(const std::string& path, const ScenarioSettings& settings) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ValidationError, "cannot open scenario file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), settings);
}

std::string serialize_scenario(const ScenarioSpec& spec) {
  Json doc = spec.document;
  Json& options = doc["options"];
  options["tolerance"] = spec.tolerance;
  if (spec.seed) options["seed"] = *spec.seed;
  options["samples"] = spec.samples;
  return doc.dump(2) + "\n";
}

}  // namespace relframe
