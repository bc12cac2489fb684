#include "lac/cli.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lac/algebroid.hpp"
#include "lac/calculus.hpp"
#include "lac/dualpoisson.hpp"
#include "lac/errors.hpp"
#include "lac/model.hpp"
#include "lac/poisson.hpp"

namespace lac::cli {
namespace {

using Json = nlohmann::ordered_json;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Options {
  std::string model_path;
  bool json = false;
  bool force = false;
  std::string fiber_prefix = "xi";
  std::string command;
  std::vector<std::string> operands;
};

// Text and JSON renderings of one command's output, built side by side.
struct Output {
  std::ostringstream text;
  Json json = Json::object();
  int code = kOk;
};

Json element_json(const GradedElement& g, const Chart& chart) {
  Json components = Json::object();
  for (const auto& [s, c] : g.terms()) {
    components[std::to_string(s.degree())][tuple_label(s)] = to_string(c, chart);
  }
  return Json{{"variance", to_string(g.variance())}, {"components", std::move(components)}};
}

Json algebroid_json(const Algebroid& a) {
  Json anchor = Json::object();
  for (unsigned b = 0; b < a.rank(); ++b) {
    for (unsigned i = 0; i < a.dimension(); ++i) {
      if (a.anchor(b, i).is_zero()) continue;
      anchor[std::to_string(b + 1) + "," + std::to_string(i + 1)] =
          to_string(a.anchor(b, i), a.chart());
    }
  }
  Json structure = Json::object();
  for (const auto& e : a.structure_entries()) {
    structure[std::to_string(e.c + 1) + "," + std::to_string(e.a + 1) + "," +
              std::to_string(e.b + 1)] = to_string(e.value, a.chart());
  }
  return Json{{"base", a.chart().names()},
              {"rank", a.rank()},
              {"anchor", std::move(anchor)},
              {"C", std::move(structure)}};
}

Json poisson_json(const PoissonStructure& ps) {
  Json entries = Json::object();
  for (const auto& [s, c] : ps.bivector().terms()) entries[tuple_label(s)] = to_string(c, ps.chart());
  return Json{{"base", ps.chart().names()}, {"L", std::move(entries)}};
}

class Session {
 public:
  Session(const ModelFile& model, const Options& options) : model_(model), options_(options) {}

  Output run() {
    static const std::map<std::string, std::pair<std::size_t, void (Session::*)(Output&)>>
        commands = {
            {"check", {0, &Session::check}},
            {"bracket", {2, &Session::bracket}},
            {"d", {1, &Session::derivative}},
            {"lie", {2, &Session::lie}},
            {"interior", {2, &Session::interior}},
            {"pair", {2, &Session::pair}},
            {"wedge", {2, &Session::wedge_cmd}},
            {"schouten", {2, &Session::schouten}},
            {"poisson-check", {0, &Session::poisson_check}},
            {"sharp", {1, &Session::sharp_cmd}},
            {"cotangent", {0, &Session::cotangent}},
            {"koszul", {2, &Session::koszul}},
            {"lichnerowicz", {1, &Session::lichnerowicz}},
            {"dual", {0, &Session::dual}},
            {"dual-verify", {0, &Session::dual_verify}},
            {"reconstruct", {0, &Session::reconstruct}},
        };
    auto it = commands.find(options_.command);
    if (it == commands.end()) throw UsageError("unknown command '" + options_.command + "'");
    const auto [arity, handler] = it->second;
    if (options_.operands.size() != arity) {
      throw UsageError("'" + options_.command + "' takes " + std::to_string(arity) +
                       " operand(s), got " + std::to_string(options_.operands.size()));
    }
    Output out;
    out.json["command"] = options_.command;
    (this->*handler)(out);
    return out;
  }

 private:
  const Algebroid& algebroid() const {
    if (!model_.algebroid) throw UsageError("the model has no [algebroid] block");
    return *model_.algebroid;
  }

  const PoissonStructure& poisson() const {
    if (!model_.poisson) throw UsageError("the model has no [poisson] block");
    return *model_.poisson;
  }

  const Chart& chart() const { return model_.element_chart(); }

  // A named block, or an inline expression read as a degree-0 element.
  GradedElement operand(std::size_t index, std::optional<Variance> wanted) const {
    const std::string& token = options_.operands.at(index);
    if (const NamedElement* e = model_.find(token)) {
      if (wanted && e->value.variance() != *wanted) {
        throw MismatchError("operand '" + token + "' is a " + to_string(e->value.variance()) +
                            ", expected a " + to_string(*wanted));
      }
      return e->value;
    }
    try {
      return GradedElement::scalar(wanted.value_or(Variance::form), model_.element_rank(),
                                   parse(token, chart()));
    } catch (const UnknownVariableError& err) {
      throw Error("operand '" + token + "' is not a block name, and as an expression: " + err.what());
    }
  }

  bool is_named(std::size_t index) const { return model_.find(options_.operands.at(index)); }

  void emit(Output& out, const GradedElement& g, const Chart& c) const {
    write_element(out.text, "result", g, c);
    out.json["result"] = element_json(g, c);
  }

  void status(Output& out, const std::string& what, bool passed) const {
    out.text << what << ": " << (passed ? "PASS" : "FAIL") << '\n';
    if (!passed) out.code = kVerificationFailed;
  }

  void axiom_report(Output& out, const Algebroid& a, const AxiomReport& report) const {
    Json anchor = Json::object();
    for (const auto& [ab, residual] : report.anchor_residuals) {
      const std::string label =
          std::to_string(ab.first + 1) + "," + std::to_string(ab.second + 1);
      for (unsigned i = 0; i < residual.size(); ++i) {
        if (residual[i].is_zero()) continue;
        const std::string value = to_string(residual[i], a.chart());
        out.text << "anchor(" << label << "): " << a.chart().name(i) << " = \"" << value << "\"\n";
        anchor[label][a.chart().name(i)] = value;
      }
    }
    Json jacobi = Json::object();
    for (const auto& [abc, residual] : report.jacobi_residuals) {
      const std::string label = std::to_string(abc[0] + 1) + "," + std::to_string(abc[1] + 1) +
                                "," + std::to_string(abc[2] + 1);
      for (unsigned c = 0; c < residual.rank(); ++c) {
        if (residual[c].is_zero()) continue;
        const std::string value = to_string(residual[c], a.chart());
        out.text << "jacobi(" << label << "): " << c + 1 << " = \"" << value << "\"\n";
        jacobi[label][std::to_string(c + 1)] = value;
      }
    }
    out.json["passed"] = report.passed;
    out.json["anchor_residuals"] = std::move(anchor);
    out.json["jacobi_residuals"] = std::move(jacobi);
    status(out, "axioms", report.passed);
  }

  // Runs the axiom check unless --force; returns false after reporting a
  // failure.
  bool gate_algebroid(Output& out, Algebroid& a) const {
    if (a.verified()) return true;
    const AxiomReport report = verify_axioms(a);
    if (report.passed) {
      a = certify(a);
      return true;
    }
    if (options_.force) return true;
    axiom_report(out, a, report);
    return false;
  }

  bool gate_poisson(Output& out) const {
    if (poisson().verified() || options_.force) return true;
    poisson_report(out, is_poisson(poisson().chart(), poisson().bivector()));
    return false;
  }

  void poisson_report(Output& out, const PoissonReport& report) const {
    const Chart& c = poisson().chart();
    if (!report.residual.is_zero()) write_element(out.text, "residual", report.residual, c);
    Json defects = Json::object();
    for (const auto& [ijl, defect] : report.jacobi_defects) {
      if (defect.is_zero()) continue;
      const std::string label = c.name(ijl[0]) + "," + c.name(ijl[1]) + "," + c.name(ijl[2]);
      out.text << "jacobi(" << label << ") = \"" << to_string(defect, c) << "\"\n";
      defects[label] = to_string(defect, c);
    }
    out.json["passed"] = report.passed;
    out.json["residual"] = element_json(report.residual, c);
    out.json["jacobi_defects"] = std::move(defects);
    status(out, "poisson", report.passed);
  }

  void check(Output& out) {
    const Algebroid& a = algebroid();
    axiom_report(out, a, verify_axioms(a));
  }

  void bracket(Output& out) {
    const Algebroid& a = algebroid();
    const Section s1 = Section::from_multivector(operand(0, Variance::multivector));
    const Section s2 = Section::from_multivector(operand(1, Variance::multivector));
    emit(out, bracket_sections(a, s1, s2).to_multivector(), a.chart());
  }

  void derivative(Output& out) {
    const Algebroid& a = algebroid();
    emit(out, exterior_derivative(a, operand(0, Variance::form)), a.chart());
  }

  void lie(Output& out) {
    const Algebroid& a = algebroid();
    const GradedElement p = operand(0, Variance::multivector);
    const GradedElement x = operand(1, std::nullopt);
    if (x.variance() == Variance::multivector) {
      emit(out, lie_derivative_multivector(a, Section::from_multivector(p), x), a.chart());
    } else if (p.is_zero() || p.pure_degree() == 1U) {
      emit(out, lie_derivative_form(a, Section::from_multivector(p), x), a.chart());
    } else {
      emit(out, lie_operator(a, p)(x), a.chart());
    }
  }

  void interior(Output& out) {
    const Algebroid& a = algebroid();
    const GradedElement p = operand(0, Variance::multivector);
    const GradedElement eta = operand(1, Variance::form);
    require_element_of(a, p, "interior");
    require_element_of(a, eta, "interior");
    emit(out, interior_product(p, eta), a.chart());
  }

  void pair(Output& out) {
    const GradedElement eta = operand(0, Variance::form);
    const GradedElement p = operand(1, Variance::multivector);
    const std::string value = to_string(pairing(eta, p), chart());
    out.text << "result = \"" << value << "\"\n";
    out.json["result"] = value;
  }

  void wedge_cmd(Output& out) {
    std::optional<Variance> v;
    if (is_named(0)) {
      v = model_.find(options_.operands[0])->value.variance();
    } else if (is_named(1)) {
      v = model_.find(options_.operands[1])->value.variance();
    }
    const GradedElement x = operand(0, v.value_or(Variance::multivector));
    const GradedElement y = operand(1, v.value_or(Variance::multivector));
    emit(out, wedge(x, y), chart());
  }

  void schouten(Output& out) {
    const Algebroid& a = algebroid();
    emit(out,
         schouten_bracket(a, operand(0, Variance::multivector), operand(1, Variance::multivector)),
         a.chart());
  }

  void poisson_check(Output& out) {
    poisson_report(out, is_poisson(poisson().chart(), poisson().bivector()));
  }

  void sharp_cmd(Output& out) {
    emit(out, sharp(poisson(), operand(0, Variance::form)), poisson().chart());
  }

  void cotangent(Output& out) {
    if (!gate_poisson(out)) return;
    const Algebroid a = cotangent_algebroid(poisson(), options_.force);
    write_algebroid(out.text, a);
    out.json["algebroid"] = algebroid_json(a);
  }

  void koszul(Output& out) {
    if (!gate_poisson(out)) return;
    emit(out,
         koszul_bracket(poisson(), operand(0, Variance::form), operand(1, Variance::form),
                        options_.force),
         poisson().chart());
  }

  void lichnerowicz(Output& out) {
    emit(out, lichnerowicz_differential(poisson(), operand(0, Variance::multivector)),
         poisson().chart());
  }

  void dual(Output& out) {
    Algebroid a = algebroid();
    if (!gate_algebroid(out, a)) return;
    const DualPoisson d = dual_poisson(a, options_.fiber_prefix, options_.force);
    write_poisson(out.text, d.structure);
    out.json["poisson"] = poisson_json(d.structure);
  }

  void dual_verify(Output& out) {
    Algebroid a = algebroid();
    if (!gate_algebroid(out, a)) return;
    const DualPoisson d = dual_poisson(a, options_.fiber_prefix, options_.force);
    const Chart& c = d.chart.full;

    const PoissonReport poisson_result = is_poisson(c, d.structure.bivector());
    if (!poisson_result.passed) write_element(out.text, "residual", poisson_result.residual, c);
    status(out, "poisson", poisson_result.passed);

    const GradedElement homogeneity = homogeneity_residual(d);
    if (!homogeneity.is_zero()) write_element(out.text, "homogeneity", homogeneity, c);
    status(out, "homogeneity", homogeneity.is_zero());

    std::string prefix = "zeta";
    while (std::any_of(c.names().begin(), c.names().end(),
                       [&](const std::string& n) { return n.rfind(prefix, 0) == 0; })) {
      prefix += "_";
    }
    Json transpose = Json::object();
    bool transpose_ok = true;
    const Chart cotangent_chart = make_dual_chart(a.chart(), a.dimension(), prefix).full;
    for (const auto& r : transpose_anchor_check(a, d, prefix)) {
      if (r.value.is_zero()) continue;
      transpose_ok = false;
      const std::string value = to_string(r.value, cotangent_chart);
      out.text << "transpose(" << r.left << "," << r.right << ") = \"" << value << "\"\n";
      transpose[r.left + "," + r.right] = value;
    }
    status(out, "transpose-anchor", transpose_ok);

    out.json["poisson"] = poisson_result.passed;
    out.json["homogeneity"] = element_json(homogeneity, c);
    out.json["transpose_residuals"] = std::move(transpose);
    out.json["passed"] = out.code == kOk;
  }

  void reconstruct(Output& out) {
    const Algebroid& a = algebroid();
    const Algebroid rebuilt =
        delta_reconstruct(a.chart(), a.rank(), exterior_derivative_operator(a));
    write_algebroid(out.text, rebuilt);
    out.json["algebroid"] = algebroid_json(rebuilt);
    out.json["passed"] = rebuilt == a;
    status(out, "reconstruct", rebuilt == a);
  }

  const ModelFile& model_;
  const Options& options_;
};

}  // namespace

int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options options;
  CLI::App app{"Exterior calculus on Lie algebroids with polynomial structure data", "lacalc"};
  app.add_option("--model", options.model_path, "Model file")->required();
  app.add_flag("--json", options.json, "Emit JSON instead of model-block text");
  app.add_flag("--force", options.force, "Skip the verified-structure preconditions");
  app.add_option("--fiber-prefix", options.fiber_prefix, "Fiber coordinate prefix for dual");
  app.add_option("command", options.command, "Command")->required();
  app.add_option("operands", options.operands, "Block names or inline expressions");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    const ModelFile model = load_model(options.model_path);
    Output result = Session(model, options).run();
    if (options.json) {
      out << result.json.dump(2) << '\n';
    } else {
      out << result.text.str();
    }
    return result.code;
  } catch (const VerificationError& e) {
    err << "lacalc: " << e.what() << '\n';
    return kVerificationFailed;
  } catch (const std::exception& e) {
    err << "lacalc: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace lac::cli
