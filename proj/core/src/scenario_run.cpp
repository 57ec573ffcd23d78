#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>

#include "relframe/channels.hpp"
#include "relframe/errors.hpp"
#include "relframe/scenario.hpp"

namespace relframe {

namespace {

// Errors that mean a law or a well-definedness condition was violated, as
// opposed to bad input.
bool is_law_violation(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::PhiNotEquivariant:
    case ErrorKind::IllDefined:
    case ErrorKind::FactorizationFails:
    case ErrorKind::EffectSpanNotEquivariant:
    case ErrorKind::NotPositive:
    case ErrorKind::NotUnital:
    case ErrorKind::ImageOutsideTarget:
      return true;
    default:
      return false;
  }
}

class TaskRunner {
 public:
  TaskRunner(const ScenarioSpec& spec, const TaskSpec& task)
      : spec_(spec), task_(task), body_(task.body), options_(spec.sampling()) {}

  void run(TaskEntry& entry) {
    const std::string& k = task_.kind;
    if (k == "relativize") return relativize_task(entry);
    if (k == "relative_subspace") return subspace_task(entry);
    if (k == "yen_morphism") return yen_task(entry);
    if (k == "channel_axioms") return adopt(entry, check_channel_axioms(RelativizationMap(frame(), system()), options_));
    if (k == "ideal_isomorphism") return ideal_task(entry);
    if (k == "functor_laws") return functor_task(entry);
    if (k == "naturality") return adopt(entry, check_naturality(frame(), channel("phi")));
    if (k == "tensor_form") return adopt(entry, check_equivariant_tensor_form(morphism("psi"), channel("phi"), options_));
    if (k == "external_transform") return external_task(entry);
    throw Error(ErrorKind::ValidationError, "unknown task kind '" + k + "'");
  }

 private:
  const FramePtr& frame() const { return spec_.frames.at(body_.at("frame").get<std::string>()); }
  const SystemPtr& system() const { return spec_.systems.at(body_.at("system").get<std::string>()); }
  const ChannelMap& channel(const char* key) const {
    return spec_.channels.at(body_.at(key).get<std::string>());
  }
  const FrameMorphism& morphism(const char* key) const {
    return spec_.frame_morphisms.at(body_.at(key).get<std::string>());
  }
  std::optional<ComplexMatrix> optional_matrix(const char* key) const {
    if (!body_.contains(key)) return std::nullopt;
    return parse_matrix_literal(body_.at(key), task_.path + "/" + key);
  }
  ComplexMatrix required_matrix(const char* key) const {
    if (!body_.contains(key)) {
      throw Error(ErrorKind::ValidationError, task_.path + ": missing key '" + key + "'");
    }
    return parse_matrix_literal(body_.at(key), task_.path + "/" + key);
  }

  static void finish(TaskEntry& entry) {
    entry.status = TaskStatus::Pass;
    std::vector<std::string> failed;
    for (const auto& item : entry.items) {
      entry.max_deviation = std::max(entry.max_deviation, item.deviation);
      if (!item.passed) {
        entry.status = TaskStatus::Fail;
        failed.push_back(item.name);
        for (const auto& w : item.witnesses) entry.witnesses.push_back(w);
      }
    }
    if (!failed.empty()) {
      std::string msg = "failed:";
      for (const auto& f : failed) msg += " " + f;
      entry.message = msg;
    }
  }

  static void adopt(TaskEntry& entry, CheckReport report) {
    entry.items = std::move(report.items);
    finish(entry);
  }

  static CheckItem compare(std::string name, const ComplexMatrix& got, const ComplexMatrix& want) {
    CheckItem item;
    item.name = std::move(name);
    item.deviation = max_abs_diff(got, want);
    item.passed = item.deviation <= tolerance();
    if (!item.passed) {
      item.witnesses = {Witness{"computed", got, item.deviation}, Witness{"expected", want, item.deviation}};
    }
    return item;
  }

  static CheckItem invariance(const std::vector<ComplexMatrix>& ops, const UnitaryRep& rep) {
    CheckItem item;
    item.name = "invariance";
    for (const auto& a : ops) {
      for (const auto& u : rep.matrices()) {
        const double gap = max_abs(a * u - u * a);
        if (gap > item.deviation) {
          item.deviation = gap;
          item.witnesses = {Witness{"operator", a, gap}};
        }
      }
    }
    item.passed = item.deviation <= tolerance();
    if (item.passed) item.witnesses.clear();
    return item;
  }

  void relativize_task(TaskEntry& entry) {
    const RelativizationMap map(frame(), system());
    const ComplexMatrix result = map(required_matrix("operator"));
    entry.items.push_back(invariance({result}, map.joint_rep()));
    if (auto want = optional_matrix("expect")) entry.items.push_back(compare("expect", result, *want));
    finish(entry);
    entry.witnesses.push_back(Witness{"result", result, operator_norm(result)});
  }

  void subspace_task(TaskEntry& entry) {
    const auto sub = build_relative_subspace(frame(), system());
    const Index dim = sub->space().size();
    const Index ker = sub->kernel().size();
    CheckItem rn;
    rn.name = "rank_nullity";
    rn.value = static_cast<double>(dim + ker);
    rn.passed = dim + ker == system()->dim();
    entry.items.push_back(std::move(rn));
    entry.items.push_back(invariance(sub->space().elements(), sub->map().joint_rep()));
    auto expect_count = [&](const char* key, Index actual) {
      CheckItem item;
      item.name = key;
      item.value = static_cast<double>(actual);
      if (body_.contains(key)) {
        item.passed = body_.at(key).get<Index>() == actual;
        item.note = "expected " + std::to_string(body_.at(key).get<Index>());
      }
      entry.items.push_back(std::move(item));
    };
    expect_count("expect_dim", dim);
    expect_count("expect_kernel", ker);
    finish(entry);
    entry.message = "dim " + std::to_string(dim) + ", kernel " + std::to_string(ker) +
                    (entry.message.empty() ? "" : "; " + entry.message);
    for (Index i = 0; i < ker; ++i) {
      entry.witnesses.push_back(Witness{"kernel element " + std::to_string(i), sub->kernel()[i], 0.0});
    }
  }

  void yen_task(TaskEntry& entry) {
    const FrameMorphism& psi = morphism("psi");
    const ChannelMap& phi = channel("phi");
    const YenMorphism yen = build_yen_morphism(psi, phi, options_);
    CheckItem gen;
    gen.name = "generator_images";
    const RelativizationMap& src = yen.source()->map();
    const RelativizationMap& dst = yen.target()->map();
    for (const auto& b : phi.source()->space().elements()) {
      const double dev = max_abs_diff(yen.apply(src(b)), dst.apply_unchecked(phi.apply(b)));
      if (dev > gen.deviation) {
        gen.deviation = dev;
        gen.witnesses = {Witness{"system operator", b, dev}};
      }
    }
    gen.passed = gen.deviation <= tolerance();
    if (gen.passed) gen.witnesses.clear();
    entry.items.push_back(std::move(gen));
    CheckItem kernel;
    kernel.name = "kernel_defect";
    kernel.deviation = yen.kernel_defect();
    kernel.value = static_cast<double>(yen.source()->kernel().size());
    kernel.passed = kernel.deviation <= tolerance();
    entry.items.push_back(std::move(kernel));
    if (auto input = optional_matrix("apply")) {
      const ComplexMatrix out = yen.apply(*input);
      if (auto want = optional_matrix("expect")) entry.items.push_back(compare("expect", out, *want));
      finish(entry);
      entry.witnesses.push_back(Witness{"result", out, operator_norm(out)});
      return;
    }
    finish(entry);
  }

  void ideal_task(TaskEntry& entry) {
    const RelativizationMap map(frame(), system());
    CheckReport report = check_ideal_isomorphism(map);
    const CheckItem* iff = report.find("ideal_iff");
    const bool consistent = iff && iff->passed;
    const bool ideal = map.frame()->is_ideal();
    double homomorphism_gap = 0.0;
    for (const auto& item : report.items) homomorphism_gap = std::max(homomorphism_gap, item.deviation);
    entry.items = std::move(report.items);
    entry.status = consistent ? TaskStatus::Pass : TaskStatus::Fail;
    // A non-ideal frame is expected to break the homomorphism laws, so its
    // gap goes in the message rather than the deviation column.
    entry.max_deviation = consistent && !ideal ? 0.0 : homomorphism_gap;
    char gap[32];
    std::snprintf(gap, sizeof gap, "%.2e", homomorphism_gap);
    entry.message = (iff ? iff->note : std::string()) + " (largest gap " + gap + ")";
    for (const auto& item : entry.items) {
      if (!item.passed) {
        for (const auto& w : item.witnesses) entry.witnesses.push_back(w);
      }
    }
  }

  void functor_task(TaskEntry& entry) {
    std::vector<FunctorLink> chain;
    for (const auto& link : body_.at("chain")) {
      chain.emplace_back(spec_.frame_morphisms.at(link.at("psi").get<std::string>()),
                         spec_.channels.at(link.at("phi").get<std::string>()));
    }
    adopt(entry, check_functor_laws(chain, options_));
  }

  void external_task(TaskEntry& entry) {
    const ChannelMap* extension = body_.contains("extension") ? &channel("extension") : nullptr;
    const ExternalTransform t = external_frame_transform(
        morphism("psi"), system(), required_matrix("omega"), required_matrix("rho"), extension);
    CheckItem agree;
    agree.name = "agreement";
    agree.deviation = t.deviation;
    agree.passed = t.deviation <= tolerance();
    entry.items.push_back(std::move(agree));
    if (auto want = optional_matrix("expect")) {
      entry.items.push_back(compare("expect", t.target_side.canonical, *want));
    }
    finish(entry);
    entry.witnesses.push_back(Witness{"target side", t.target_side.canonical, t.deviation});
    entry.witnesses.push_back(Witness{"source side", t.source_side.canonical, t.deviation});
    entry.witnesses.push_back(Witness{"pulled back frame state", t.pulled_back, 0.0});
  }

  const ScenarioSpec& spec_;
  const TaskSpec& task_;
  const Json& body_;
  SamplingOptions options_;
};

}  // namespace

std::string_view to_string(TaskStatus status) {
  switch (status) {
    case TaskStatus::Pass: return "pass";
    case TaskStatus::Fail: return "fail";
    case TaskStatus::Error: return "error";
  }
  return "error";
}

int RunReport::count(TaskStatus status) const {
  return static_cast<int>(std::count_if(entries.begin(), entries.end(),
                                        [&](const TaskEntry& e) { return e.status == status; }));
}

int RunReport::exit_code() const {
  if (count(TaskStatus::Error) > 0) return 2;
  if (count(TaskStatus::Fail) > 0) return 1;
  return 0;
}

RunReport run_scenario(const ScenarioSpec& spec) {
  ToleranceScope scope(spec.tolerance);
  RunReport report;
  report.scenario = spec.name;
  report.tolerance = spec.tolerance;
  report.seed = spec.seed;
  for (const auto& task : spec.tasks) {
    TaskEntry entry;
    entry.id = task.id;
    entry.kind = task.kind;
    const auto start = std::chrono::steady_clock::now();
    try {
      TaskRunner(spec, task).run(entry);
    } catch (const Error& e) {
      entry.status = is_law_violation(e.kind()) ? TaskStatus::Fail : TaskStatus::Error;
      entry.message = e.what();
      entry.witnesses = e.witnesses();
      for (const auto& w : entry.witnesses) entry.max_deviation = std::max(entry.max_deviation, w.value);
    } catch (const std::exception& e) {
      entry.status = TaskStatus::Error;
      entry.message = e.what();
    }
    entry.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace relframe
