#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cigrate/eval.hpp"
#include "cigrate/lint.hpp"
#include "cigrate/llm.hpp"
#include "cigrate/metrics.hpp"
#include "cigrate/translate.hpp"

namespace py = pybind11;
using namespace cigrate;

namespace {

RawConfig parse_text(const std::string& text, const std::string& dialect) {
  return parse_config(text, dialect_from_name(dialect));
}

py::dict warning_dict(const MigrationWarning& w) {
  py::dict d;
  d["code"] = warning_code_name(w.code);
  d["path"] = w.path;
  d["message"] = w.message;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "CI configuration migration core";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def(
      "migrate",
      [](const std::string& text, const std::string& from,
         const std::string& to) {
        MigrationResult result =
            migrate_rules(parse_text(text, from), dialect_from_name(to));
        py::list warnings;
        for (const MigrationWarning& w : result.warnings) {
          warnings.append(warning_dict(w));
        }
        return py::make_tuple(result.output.serialize(), warnings);
      },
      py::arg("text"), py::arg("from_dialect"), py::arg("to_dialect"),
      "Rule-based migration; returns (yaml, warnings).");

  m.def(
      "normalize",
      [](const std::string& text, const std::string& dialect) {
        return cigrate::normalize(parse_text(text, dialect)).serialize();
      },
      py::arg("text"), py::arg("dialect"),
      "Canonical serialization of a config.");

  m.def(
      "lint",
      [](const std::string& text, const std::string& dialect) {
        LintReport report = cigrate::lint(parse_text(text, dialect));
        py::list diags;
        for (const LintDiagnostic& d : report.diagnostics) {
          py::dict item;
          item["severity"] =
              d.severity == LintSeverity::Error ? "error" : "warning";
          item["rule_id"] = d.rule_id;
          item["path"] = d.path;
          item["message"] = d.message;
          diags.append(item);
        }
        py::dict out;
        out["passed"] = report.passed;
        out["diagnostics"] = diags;
        return out;
      },
      py::arg("text"), py::arg("dialect"), "Structural validation.");

  m.def(
      "detect_dialect",
      [](const std::string& text) {
        return std::string(dialect_name(cigrate::detect_dialect(text)));
      },
      py::arg("text"));

  m.def(
      "tokenize",
      [](const std::string& text) { return cigrate::tokenize(text).tokens; },
      py::arg("text"));

  m.def(
      "cosine_similarity",
      [](const std::string& a, const std::string& b) {
        return cigrate::cosine_similarity(cigrate::tokenize(a),
                                          cigrate::tokenize(b));
      },
      py::arg("a"), py::arg("b"),
      "Term-frequency cosine over tokenized text.");

  m.def(
      "crystal_bleu",
      [](const std::string& candidate, const std::string& reference,
         std::size_t n_max) {
        TriviallySharedSet trivial;
        return cigrate::crystal_bleu(cigrate::tokenize(candidate),
                                     cigrate::tokenize(reference), trivial,
                                     n_max);
      },
      py::arg("candidate"), py::arg("reference"), py::arg("n_max") = 4,
      "CrystalBLEU with an empty trivially-shared set (plain BLEU).");

  m.def(
      "exact_match",
      [](const std::string& a, const std::string& b,
         const std::string& dialect) {
        return cigrate::exact_match(cigrate::normalize(parse_text(a, dialect)),
                                    cigrate::normalize(parse_text(b, dialect)));
      },
      py::arg("a"), py::arg("b"), py::arg("dialect"));

  m.def("extract_yaml", &cigrate::extract_yaml, py::arg("raw_text"),
        "First fenced block (or trimmed text); must parse as YAML.");
}
