// calkinkit: batch front-end for the structured-operator library.
//
// Subcommands: check | isometrize | index | verdict | demo | oracle.
// Exit codes: 0 success (or affirmative verdict), 1 parse/config error,
// 2 negative verdict (not spherical / not Fredholm / not inverse pair /
// oracle deviation), 3 index obstruction, 4 numerical failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "calkin/errors.hpp"
#include "calkin/io.hpp"
#include "calkin/presets.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNegative = 2;
constexpr int kExitObstruction = 3;
constexpr int kExitNumerical = 4;

struct JobConfig {
  std::string input;
  std::string preset;
  std::vector<int> sizes = {32, 64, 128};
  double tol_kernel = 1e-10;
  double tol_residual = 1e-8;
  std::string format = "text";
  std::string out;

  void validate() const {
    for (size_t i = 1; i < sizes.size(); ++i) {
      if (sizes[i] <= sizes[i - 1]) {
        throw calkin::ParseError("--sizes must be strictly increasing");
      }
    }
    if (sizes.empty()) throw calkin::ParseError("--sizes must be nonempty");
    if (tol_kernel <= 0 || tol_residual <= 0) {
      throw calkin::ParseError("tolerances must be positive");
    }
    if (format != "text" && format != "json") {
      throw calkin::ParseError("--format must be text or json");
    }
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw calkin::ParseError("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const JobConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.out);
  if (!out) throw calkin::ParseError("cannot open output file: " + cfg.out);
  out << text;
}

calkin::OperatorTuple load_tuple(const JobConfig& cfg) {
  if (!cfg.preset.empty()) return calkin::make_preset(cfg.preset);
  if (cfg.input.empty()) {
    throw calkin::ParseError("need an input file or --preset");
  }
  return calkin::parse_tuple_or_operator(read_file(cfg.input));
}

std::string input_label(const JobConfig& cfg) {
  return cfg.preset.empty() ? cfg.input : cfg.preset;
}

calkin::StructuredOperator load_operator(const std::string& file,
                                         const std::string& preset) {
  if (!preset.empty()) {
    const calkin::OperatorTuple t = calkin::make_preset(preset);
    if (t.size() != 1) {
      throw calkin::ParseError("preset " + preset +
                               " is not a single operator");
    }
    return t[0];
  }
  if (file.empty()) {
    throw calkin::ParseError("need an operator file or preset");
  }
  return calkin::parse_operator(read_file(file));
}

void add_common_flags(CLI::App* cmd, JobConfig& cfg) {
  cmd->add_option("--sizes", cfg.sizes,
                  "section sizes, strictly increasing (default 32 64 128)")
      ->delimiter(',');
  cmd->add_option("--tol-kernel", cfg.tol_kernel, "kernel tolerance");
  cmd->add_option("--tol-residual", cfg.tol_residual, "residual tolerance");
  cmd->add_option("--format", cfg.format, "text | json");
  cmd->add_option("--out", cfg.out, "write the report to this path");
}

int run_check(const JobConfig& cfg) {
  const calkin::OperatorTuple t = load_tuple(cfg);
  const auto diag = calkin::is_essential_spherical_isometry(t);

  // Kernel diagnostics are reported best-effort; the verdict stands on the
  // symbol-level checks alone.
  std::string note;
  std::unique_ptr<calkin::LeftInverseResult> left;
  std::unique_ptr<calkin::KernelBasis> joint;
  std::unique_ptr<calkin::RowKernelCertificate> cert;
  if (diag.verdict) {
    try {
      left = std::make_unique<calkin::LeftInverseResult>(
          calkin::essential_left_inverse(t));
      joint = std::make_unique<calkin::KernelBasis>(
          calkin::stabilized_joint_kernel(t, cfg.sizes.front(),
                                          cfg.tol_kernel));
      if (t.size() >= 2) {
        cert = std::make_unique<calkin::RowKernelCertificate>(
            calkin::row_kernel_growth_certificate(t, cfg.sizes,
                                                  cfg.tol_kernel));
      }
    } catch (const calkin::Error& e) {
      note = e.what();
    }
  }

  if (cfg.format == "json") {
    emit(cfg, calkin::check_report_to_json(diag, left.get(), joint.get(),
                                           cert.get(), input_label(cfg), note));
  } else {
    std::ostringstream outp;
    outp << "input: " << input_label(cfg) << " (n = " << t.size() << ")\n"
         << "gram symbol is 1:       " << (diag.gram_symbol_is_one ? "yes" : "no")
         << "\n"
         << "essentially commuting:  "
         << (diag.essentially_commuting ? "yes" : "no") << "\n"
         << "gram block norm:        " << diag.gram_block_norm << "\n";
    if (left) {
      outp << "left inverse defect:    compact = "
           << (left->defect_is_compact ? "yes" : "no")
           << ", block norm = " << left->defect.frobenius_norm() << "\n";
    }
    if (joint) {
      outp << "joint kernel dim:       " << joint->dimension()
           << " (exact = " << (joint->exact ? "yes" : "no") << ")\n";
    }
    if (cert) {
      outp << "row kernel dims:       ";
      for (const auto& [n, dim] : cert->dimensions()) {
        outp << " " << dim << "@" << n;
      }
      outp << " (margin " << cert->margin << ")\n";
    }
    if (!note.empty()) outp << "note: " << note << "\n";
    outp << "verdict: "
         << (diag.verdict ? "essential spherical isometry"
                          : "NOT an essential spherical isometry")
         << "\n";
    emit(cfg, outp.str());
  }
  return diag.verdict ? kExitOk : kExitNegative;
}

int run_isometrize(const JobConfig& cfg) {
  const calkin::OperatorTuple t = load_tuple(cfg);
  const calkin::IsometrizationReport report = calkin::isometrize(t);
  if (report.gram_block_norm > cfg.tol_residual ||
      report.dense_residual > cfg.tol_residual) {
    throw calkin::Error("isometrize: residual exceeds --tol-residual");
  }
  if (cfg.format == "json") {
    emit(cfg, calkin::isometrization_report_to_json(report));
  } else {
    std::ostringstream outp;
    outp << "input: " << input_label(cfg) << " (n = " << t.size() << ")\n"
         << "kernel dim:            " << report.kernel_dim << "\n"
         << "cokernel certified:    " << report.cokernel_certified_dim << "\n"
         << "gram block norm:       " << report.gram_block_norm << "\n"
         << "dense residual (N=" << report.dense_check_size
         << "): " << report.dense_residual << "\n"
         << "symbols preserved:     "
         << (report.symbols_preserved ? "yes" : "no") << "\n"
         << "exact:                 " << (report.exact ? "yes" : "no") << "\n";
    for (size_t i = 0; i < report.perturbation.size(); ++i) {
      outp << "K_" << (i + 1) << " block size:        "
           << report.perturbation[i].compact.size() << "\n";
    }
    emit(cfg, outp.str());
  }
  return kExitOk;
}

int run_index(const JobConfig& cfg, const std::string& file,
              const std::string& preset) {
  const calkin::StructuredOperator op = load_operator(file, preset);
  const std::string label = preset.empty() ? file : preset;
  const calkin::IndexReport report = calkin::fredholm_index(op, label);
  if (cfg.format == "json") {
    emit(cfg, calkin::index_report_to_json(report));
  } else {
    std::ostringstream outp;
    outp << "operator: " << report.label << "\n"
         << "winding index: " << report.winding_index << "\n"
         << "section index: " << report.section_index << " (ker "
         << report.kernel_dim << ", coker " << report.adjoint_kernel_dim
         << ")\n"
         << "agreement: " << (report.agreement ? "yes" : "no") << "\n";
    emit(cfg, outp.str());
  }
  return kExitOk;
}

int run_verdict(const JobConfig& cfg, const std::string& file_a,
                const std::string& file_b, const std::string& preset_a,
                const std::string& preset_b) {
  const calkin::StructuredOperator a = load_operator(file_a, preset_a);
  const calkin::StructuredOperator b = load_operator(file_b, preset_b);
  const calkin::VerdictReport report =
      calkin::commuting_perturbation_verdict(a, b);
  if (cfg.format == "json") {
    emit(cfg, calkin::verdict_report_to_json(report));
  } else {
    std::ostringstream outp;
    outp << "index(A) = " << report.first.winding_index
         << ", index(B) = " << report.second.winding_index << "\n"
         << "verdict: " << calkin::to_string(report.verdict) << "\n";
    emit(cfg, outp.str());
  }
  return kExitOk;
}

int run_demo(const JobConfig& cfg) {
  const calkin::DemoReport report = calkin::counterexample_demo();
  if (cfg.format == "json") {
    emit(cfg, calkin::demo_report_to_json(report));
  } else {
    std::ostringstream outp;
    for (const auto& [name, ok] : report.assertions) {
      outp << (ok ? "PASS" : "FAIL") << "  " << name << "\n";
    }
    outp << "index(sqrt(2) T1) = " << report.verdict.first.winding_index
         << ", verdict " << calkin::to_string(report.verdict.verdict)
         << ", isometrization residual = " << report.isometrization_residual
         << "\n";
    emit(cfg, outp.str());
  }
  return report.all_passed ? kExitOk : kExitNumerical;
}

int run_oracle(const JobConfig& cfg, int N) {
  if (N <= 0 || N > 512) {
    throw calkin::ParseError("oracle: N must be in [1, 512]");
  }
  const calkin::OperatorTuple t = load_tuple(cfg);

  // Recompute the structured algebra by dense truncation arithmetic and
  // report the worst entrywise deviation.
  double deviation = 0.0;
  auto check = [&](const calkin::StructuredOperator& structured,
                   const calkin::Matrix& dense) {
    const calkin::Matrix lhs = calkin::truncate(structured, N, N);
    deviation = std::max(deviation, (lhs - dense).cwiseAbs().maxCoeff());
  };

  int margin = 0;
  for (const auto& op : t.entries()) margin = std::max(margin, calkin::reach(op));
  margin = 2 * margin + 2;

  for (int i = 0; i < t.size(); ++i) {
    // adjoint vs conjugate transpose of the dense section
    check(calkin::adjoint(t[i]),
          calkin::truncate(t[i], N, N).adjoint());
    for (int j = 0; j < t.size(); ++j) {
      const calkin::Matrix a = calkin::truncate(t[i], N, N + margin);
      const calkin::Matrix b = calkin::truncate(t[j], N + margin, N);
      check(calkin::compose(t[i], t[j]), a * b);
      const calkin::Matrix astar =
          calkin::truncate(calkin::adjoint(t[i]), N, N + margin);
      check(calkin::compose(calkin::adjoint(t[i]), t[j]), astar * b);
    }
  }
  calkin::Matrix dense_gram = calkin::Matrix::Zero(N, N);
  for (const auto& op : t.entries()) {
    const calkin::Matrix sec = calkin::truncate(op, N + margin, N);
    dense_gram += sec.adjoint() * sec;
  }
  check(calkin::gram(t), dense_gram);

  const bool ok = deviation <= 1e-10;
  std::ostringstream outp;
  outp << "oracle deviation at N = " << N << ": " << deviation
       << (ok ? " (<= 1e-10)" : " (EXCEEDS 1e-10)") << "\n";
  emit(cfg, outp.str());
  return ok ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"structured operators on l2: essential spherical isometries, "
               "Fredholm indices, isometrization, obstruction verdicts"};
  app.require_subcommand(1);

  JobConfig cfg;
  std::string file_a, file_b, preset_a, preset_b;
  int oracle_n = 64;

  auto* check_cmd = app.add_subcommand("check",
      "test a tuple for being an essential spherical isometry");
  check_cmd->add_option("input", cfg.input, "tuple or operator JSON file");
  check_cmd->add_option("--preset", cfg.preset, "named example tuple");
  add_common_flags(check_cmd, cfg);

  auto* iso_cmd = app.add_subcommand("isometrize",
      "compact-perturb a tuple into an exact spherical isometry");
  iso_cmd->add_option("input", cfg.input, "tuple or operator JSON file");
  iso_cmd->add_option("--preset", cfg.preset, "named example tuple");
  add_common_flags(iso_cmd, cfg);

  auto* index_cmd = app.add_subcommand("index",
      "Fredholm index by winding number and by certified kernels");
  index_cmd->add_option("input", file_a, "operator JSON file");
  index_cmd->add_option("--preset", preset_a, "named single-operator preset");
  add_common_flags(index_cmd, cfg);

  auto* verdict_cmd = app.add_subcommand("verdict",
      "decide existence of commuting compact perturbations of an "
      "essentially inverse pair");
  verdict_cmd->add_option("input-a", file_a, "first operator JSON file");
  verdict_cmd->add_option("input-b", file_b, "second operator JSON file");
  verdict_cmd->add_option("--preset-a", preset_a, "first operator preset");
  verdict_cmd->add_option("--preset-b", preset_b, "second operator preset");
  add_common_flags(verdict_cmd, cfg);

  auto* demo_cmd = app.add_subcommand("demo",
      "run the counterexample end to end");
  add_common_flags(demo_cmd, cfg);

  auto* oracle_cmd = app.add_subcommand("oracle",
      "recompute the structured algebra by dense truncation arithmetic");
  oracle_cmd->add_option("input", cfg.input, "tuple or operator JSON file");
  oracle_cmd->add_option("--preset", cfg.preset, "named example tuple");
  oracle_cmd->add_option("--N", oracle_n, "truncation size (<= 512)");
  add_common_flags(oracle_cmd, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    cfg.validate();
    if (check_cmd->parsed()) return run_check(cfg);
    if (iso_cmd->parsed()) return run_isometrize(cfg);
    if (index_cmd->parsed()) return run_index(cfg, file_a, preset_a);
    if (verdict_cmd->parsed())
      return run_verdict(cfg, file_a, file_b, preset_a, preset_b);
    if (demo_cmd->parsed()) return run_demo(cfg);
    if (oracle_cmd->parsed()) return run_oracle(cfg, oracle_n);
  } catch (const calkin::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const calkin::IndexObstruction& e) {
    std::cerr << "index obstruction: " << e.what() << "\n";
    return kExitObstruction;
  } catch (const calkin::NotEssentialIsometry& e) {
    std::cerr << "not an essential isometry: " << e.what() << "\n";
    return kExitNegative;
  } catch (const calkin::NotEssentialInversePair& e) {
    std::cerr << "not an essential inverse pair: " << e.what() << "\n";
    return kExitNegative;
  } catch (const calkin::SymbolVanishesOnCircle& e) {
    std::cerr << "not Fredholm: " << e.what() << "\n";
    return kExitNegative;
  } catch (const calkin::Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
