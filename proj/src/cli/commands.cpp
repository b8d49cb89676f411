#include "sfhp/cli/commands.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>

#include <json.hpp>

#include "sfhp/action.hpp"
#include "sfhp/cli/run_spec.hpp"
#include "sfhp/ensemble.hpp"
#include "sfhp/errors.hpp"
#include "sfhp/io.hpp"

namespace sfhp::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Maps library exceptions onto the exit-code contract.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const QuadratureError& e) {
    err << "quadrature failure: " << e.what() << "\n";
    return kQuadratureFailure;
  } catch (const NonFiniteStateError& e) {
    err << "numeric abort: " << e.what() << "\n";
    return kNumericAbort;
  } catch (const SingularityError& e) {
    err << "numeric abort: " << e.what() << "\n";
    return kNumericAbort;
  } catch (const RangeError& e) {
    err << "numeric abort: " << e.what() << "\n";
    return kNumericAbort;
  } catch (const HyperregularityError& e) {
    err << "numeric abort: " << e.what() << "\n";
    return kNumericAbort;
  } catch (const SingularMetricError& e) {
    err << "numeric abort: " << e.what() << "\n";
    return kNumericAbort;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
}

RunSpec load(const CommandOptions& options) {
  RunSpec spec = load_run_spec(options.config);
  if (options.out) {
    spec.out_dir = *options.out;
  }
  if (options.seed) {
    spec.sim.seed = *options.seed;
  }
  if (options.no_plots) {
    spec.plots = false;
  }
  return spec;
}

void prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
  }
}

Trajectory integrate(const RunSpec& spec, const WienerPath& path) {
  if (spec.system.velocity_form) {
    const MetricModel metric = build_metric(spec.system);
    const std::optional<FracWeight> weight =
        is_fractional(spec.sim.formulation) ? spec.sim.weight : std::nullopt;
    return integrate_metric_velocity(metric, weight, spec.friction_sign, spec.sim.t0, spec.sim.q0,
                                     *spec.sim.v0, path);
  }
  return euler_maruyama(spec.sim, path);
}

void write_json(const fs::path& file, const json& doc) {
  std::ofstream out(file);
  if (!out) {
    throw Error("cannot open " + file.string() + " for writing");
  }
  out << doc.dump(2) << "\n";
}

}  // namespace

int cmd_simulate(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunSpec spec = load(options);
    prepare_dir(spec.out_dir);
    const WienerPath path = wiener_path(spec.sim.seed, spec.sim.h, spec.sim.N, spec.sim.stream);
    WienerPath quiet = path;
    std::fill(quiet.increments.begin(), quiet.increments.end(), 0.0);

    const Trajectory sample = integrate(spec, path);
    const Trajectory deterministic = integrate(spec, quiet);
    const fs::path sample_csv = spec.out_dir / "trajectory.csv";
    const fs::path deterministic_csv = spec.out_dir / "trajectory_deterministic.csv";
    write_trajectory_csv(sample_csv, sample);
    write_trajectory_csv(deterministic_csv, deterministic);
    write_json(spec.out_dir / "trajectory.meta.json",
               {{"system", sample.system_name},
                {"formulation", std::string(to_string(spec.sim.formulation))},
                {"seed", spec.sim.seed},
                {"stream", spec.sim.stream},
                {"h", spec.sim.h},
                {"N", spec.sim.N},
                {"t0", spec.sim.t0}});
    out << "wrote " << sample_csv.string() << " and " << deterministic_csv.string() << " ("
        << sample.times.size() << " rows)\n";
    if (spec.plots) {
      // Plots are drawn from the CSV files, after all numeric output is final.
      const std::string title = sample.system_name + " " + std::string(to_string(spec.sim.formulation));
      for (const auto& f : plot_trajectory_csv(deterministic_csv, spec.out_dir, "deterministic",
                                               title + " (noise off)")) {
        out << "wrote " << f.string() << "\n";
      }
      for (const auto& f :
           plot_trajectory_csv(sample_csv, spec.out_dir, "sample", title + " (sample path)")) {
        out << "wrote " << f.string() << "\n";
      }
    }
    return kSuccess;
  });
}

int cmd_ensemble(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunSpec spec = load(options);
    if (spec.system.velocity_form) {
      throw ConfigError("system.velocity_form", "ensembles run the (q, p) formulations");
    }
    prepare_dir(spec.out_dir);
    const auto ensemble = run_ensemble(spec.sim, spec.ensemble_size, Execution::parallel);
    const EnsembleSummary summary = summarize(ensemble, Execution::parallel);
    if (spec.write_paths) {
      const fs::path dir = spec.out_dir / "paths";
      prepare_dir(dir);
      char name[32];
      for (std::size_t m = 0; m < ensemble.size(); ++m) {
        std::snprintf(name, sizeof name, "path_%05zu.csv", m);
        write_trajectory_csv(dir / name, ensemble[m]);
      }
    }
    write_summary_csv(spec.out_dir / "summary.csv", summary);
    out << "ensemble of " << ensemble.size() << " trajectories on " << parallel_threads()
        << " thread(s); summary in " << (spec.out_dir / "summary.csv").string() << "\n";
    return kSuccess;
  });
}

int cmd_convergence(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunSpec spec = load(options);
    if (!spec.convergence) {
      throw ConfigError("convergence", "required for the convergence command");
    }
    const ConvergenceSpec& c = *spec.convergence;
    prepare_dir(spec.out_dir);
    const ConvergenceStudy study =
        convergence_study(spec.sim, c.T, c.ladder, c.reference_h, c.seeds, Execution::parallel);
    std::ofstream table(spec.out_dir / "convergence.csv");
    table << "h,strong_error,order\n";
    char line[128];
    out << "       h        strong error   order\n";
    for (std::size_t l = 0; l < study.steps.size(); ++l) {
      std::string order = l == 0 ? "" : std::to_string(study.local_order[l - 1]);
      std::snprintf(line, sizeof line, "%12.6e  %14.6e   %s\n", study.steps[l], study.mean_error[l],
                    order.c_str());
      out << line;
      std::snprintf(line, sizeof line, "%.17g,%.17g,%s\n", study.steps[l], study.mean_error[l],
                    order.c_str());
      table << line;
    }
    const bool ok = study.fitted_order >= c.order_band[0] && study.fitted_order <= c.order_band[1];
    out << "fitted order " << study.fitted_order << " over " << study.seeds << " seeds; band ["
        << c.order_band[0] << ", " << c.order_band[1] << "] " << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? kSuccess : kCheckFailed;
  });
}

int cmd_action_check(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunSpec spec = load(options);
    if (spec.system.velocity_form) {
      throw ConfigError("system.velocity_form", "the action check runs the (q, p) formulations");
    }
    prepare_dir(spec.out_dir);
    const CriticalityReport report = criticality_report(spec.sim, spec.action_check);
    out << report.to_text();
    write_json(spec.out_dir / "action_check.json",
               {{"system", report.system},
                {"formulation", report.formulation},
                {"steps", report.steps},
                {"max_abs_differential", report.max_abs_differential},
                {"ratios", report.ratios},
                {"pass_ratio", spec.action_check.pass_ratio},
                {"pass", report.pass}});
    return report.pass ? kSuccess : kCheckFailed;
  });
}

int cmd_integral(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const IntegralSpec spec = load_integral_spec(options.config);
    QuadratureOptions q;
    q.rel_tol = spec.rel_tol;
    const IntegralResult r = frl_integral(integrand(spec.f), spec.weight, spec.t, q);
    char line[160];
    std::snprintf(line, sizeof line, "value %.17g\nerror_estimate %.3e\ncells %ld\n", r.value,
                  r.error_estimate, r.cells);
    out << line;
    return kSuccess;
  });
}

}  // namespace sfhp::cli
