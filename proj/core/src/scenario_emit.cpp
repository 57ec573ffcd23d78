#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "relframe/errors.hpp"
#include "relframe/scenario.hpp"

namespace relframe {

namespace {

double round_to(double x, int decimals) {
  const double scale = std::pow(10.0, decimals);
  const double r = std::round(x * scale) / scale;
  return r == 0.0 ? 0.0 : r;  // drop negative zero
}

std::string scientific(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

std::string fixed(double x, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string complex_text(Complex z) {
  const double re = round_to(z.real(), 6);
  const double im = round_to(z.imag(), 6);
  std::ostringstream out;
  out << re;
  if (im != 0.0) out << (im < 0 ? "-" : "+") << std::abs(im) << "i";
  return out.str();
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string status_label(TaskStatus s) {
  switch (s) {
    case TaskStatus::Pass: return "PASS";
    case TaskStatus::Fail: return "FAIL";
    case TaskStatus::Error: return "ERROR";
  }
  return "ERROR";
}

std::string summary_line(const RunReport& r) {
  return std::to_string(r.count(TaskStatus::Pass)) + " pass / " +
         std::to_string(r.count(TaskStatus::Fail)) + " fail / " +
         std::to_string(r.count(TaskStatus::Error)) + " error";
}

std::string emit_human(const RunReport& r) {
  std::ostringstream out;
  out << "scenario:  " << (r.scenario.empty() ? "(unnamed)" : r.scenario) << "\n";
  out << "tolerance: " << scientific(r.tolerance) << "\n";
  out << "seed:      " << (r.seed ? std::to_string(*r.seed) : "default") << "\n\n";

  std::vector<std::vector<std::string>> rows = {{"ID", "KIND", "STATUS", "MAX DEV", "TIME (ms)"}};
  for (const auto& e : r.entries) {
    rows.push_back({e.id, e.kind, status_label(e.status), scientific(e.max_deviation), fixed(e.wall_ms, 2)});
  }
  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += c + 1 < row.size() ? pad(row[c], width[c] + 2) : row[c];
    }
    out << line << "\n";
  }

  bool header = false;
  for (const auto& e : r.entries) {
    if (e.status == TaskStatus::Pass) continue;
    if (!header) {
      out << "\ndetails:\n";
      header = true;
    }
    out << "  " << e.id << " (" << status_label(e.status) << "): " << e.message << "\n";
    for (const auto& w : e.witnesses) {
      out << "    " << w.label << "  [" << scientific(w.value) << "]\n";
      if (w.matrix) {
        const auto& m = *w.matrix;
        for (Index i = 0; i < m.rows(); ++i) {
          out << "      ";
          for (Index j = 0; j < m.cols(); ++j) out << (j ? "  " : "") << complex_text(m(i, j));
          out << "\n";
        }
      }
    }
  }
  out << "\nsummary: " << summary_line(r) << "\n";
  return out.str();
}

std::string emit_machine(const RunReport& r) {
  Json doc;
  doc["scenario"] = r.scenario;
  doc["tolerance"] = r.tolerance;
  doc["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
  doc["summary"] = Json{{"pass", r.count(TaskStatus::Pass)},
                        {"fail", r.count(TaskStatus::Fail)},
                        {"error", r.count(TaskStatus::Error)}};
  doc["exit_code"] = r.exit_code();
  Json tasks = Json::array();
  for (const auto& e : r.entries) {
    Json t;
    t["id"] = e.id;
    t["kind"] = e.kind;
    t["status"] = std::string(to_string(e.status));
    t["max_deviation"] = round_to(e.max_deviation, 12);
    t["message"] = e.message;
    Json items = Json::array();
    for (const auto& item : e.items) {
      items.push_back(Json{{"name", item.name},
                           {"passed", item.passed},
                           {"deviation", round_to(item.deviation, 12)},
                           {"value", round_to(item.value, 12)},
                           {"evidence", std::string(to_string(item.evidence))},
                           {"note", item.note}});
    }
    t["items"] = std::move(items);
    Json witnesses = Json::array();
    for (const auto& w : e.witnesses) {
      Json wj{{"label", w.label}, {"value", round_to(w.value, 12)}};
      wj["matrix"] = w.matrix ? matrix_literal(*w.matrix) : Json(nullptr);
      witnesses.push_back(std::move(wj));
    }
    t["witnesses"] = std::move(witnesses);
    tasks.push_back(std::move(t));
  }
  doc["tasks"] = std::move(tasks);
  return doc.dump(2) + "\n";
}

}  // namespace

Json matrix_literal(const ComplexMatrix& m, int decimals) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) {
      row.push_back(Json::array({round_to(m(i, j).real(), decimals), round_to(m(i, j).imag(), decimals)}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string emit_report(const RunReport& report, std::string_view format) {
  if (format == "human") return emit_human(report);
  if (format == "machine") return emit_machine(report);
  throw Error(ErrorKind::UnknownFormat, "unknown report format '" + std::string(format) +
                                            "' (expected human or machine)");
}

}  // namespace relframe
