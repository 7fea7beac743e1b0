#include "qmdisc/cli.hpp"

#include "qmdisc/errors.hpp"
#include "qmdisc/experiments.hpp"
#include "qmdisc/io.hpp"
#include "qmdisc/parallel.hpp"
#include "qmdisc/rng.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

namespace qmdisc::cli {

using json = nlohmann::ordered_json;

namespace {

struct Global {
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string format = "json";
  std::string profile;
};

struct FlowSource {
  std::string flow;
  double time = 1;
};

void add_flow_options(CLI::App* cmd, FlowSource& src) {
  cmd->add_option("--flow", src.flow, "Flow JSON file (else --profile)");
  cmd->add_option("--time", src.time, "Time multiplier of the flow");
}

FlowSpec load_flow(const FlowSource& src, const Global& g) {
  FlowSpec flow;
  if (!src.flow.empty()) {
    flow = parse_flow(read_file(src.flow));
  } else if (!g.profile.empty()) {
    flow = FlowSpec::checked({{parse_profile(read_file(g.profile)), 1.0}});
  } else {
    throw InputError("give --flow or --profile");
  }
  return src.time == 1 ? flow : flow.scaled(src.time);
}

std::vector<Point> parse_points(const std::string& text) {
  std::vector<Point> points;
  std::istringstream in(text);
  std::string item;
  while (in >> item) {
    const auto comma = item.find(',');
    if (comma == std::string::npos) throw InputError("points are written x,y separated by spaces");
    try {
      points.push_back({std::stod(item.substr(0, comma)), std::stod(item.substr(comma + 1))});
    } catch (const std::logic_error&) {
      throw InputError("bad point '" + item + "'");
    }
  }
  return points;
}

json point_json(Point p) { return json::array({p.x, p.y}); }

json estimate_json(const QmEstimate& e) {
  return {{"value", e.value},         {"std_error", e.std_error}, {"samples", e.samples},
          {"rejected", e.rejected},   {"seed", e.seed},           {"k_schedule", e.k_schedule},
          {"k_values", e.k_values},   {"k_errors", e.k_errors},   {"cauchy_error", e.cauchy_error}};
}

QuasimorphismSpec pick_phi(const std::string& name) {
  if (name == "lk") return total_linking_qm();
  if (name == "signature") return signature_qm();
  throw InputError("unknown quasi-morphism '" + name + "' (lk or signature)");
}

std::string rational_text(const Rational& q) { return to_string(q); }

void print(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

std::vector<Rational> random_positive_vector(SplitMix64& rng, int n) {
  std::vector<Rational> v;
  for (int i = 0; i < n; ++i) v.push_back(make_rational(rng.uniform_int(1, 64), 8));
  return v;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Braid quasi-morphisms on disc flows"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  g.threads = default_thread_count();
  app.add_option("--seed", g.seed, "Master seed");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--profile", g.profile, "Profile JSON file");

  json config;

  // flow-apply
  auto* apply = app.add_subcommand("flow-apply", "Apply a radial flow to points");
  FlowSource apply_flow;
  std::string apply_points;
  int apply_steps = 16;
  add_flow_options(apply, apply_flow);
  apply->add_option("--points", apply_points, "Points 'x,y x,y ...'")->required();
  apply->add_option("--steps", apply_steps, "Time steps of the CSV trajectory")->check(CLI::PositiveNumber);

  // braid-extract
  auto* extract = app.add_subcommand("braid-extract", "Braid of a trajectory bundle or a flow loop");
  FlowSource extract_flow;
  std::string extract_csv, extract_points;
  double extract_angle = 1.0;
  int extract_segment = 8;
  add_flow_options(extract, extract_flow);
  extract->add_option("--trajectory", extract_csv, "Trajectory CSV file");
  extract->add_option("--points", extract_points, "Start points of the loop 'x,y x,y ...'");
  extract->add_option("--direction", extract_angle, "Projection angle in radians");
  extract->add_option("--samples-per-segment", extract_segment)->check(CLI::PositiveNumber);

  // invariant
  auto* invariant = app.add_subcommand("invariant", "Braid invariants");
  std::string inv_kind, inv_word, inv_word_file, inv_phi = "signature";
  int inv_strands = 0;
  long inv_kmax = 256;
  invariant->add_option("kind", inv_kind, "lk | signature | homogenized")
      ->required()
      ->check(CLI::IsMember({"lk", "signature", "homogenized"}));
  invariant->add_option("--word", inv_word, "Letters, e.g. \"1 1 -2\"");
  invariant->add_option("--strands", inv_strands);
  invariant->add_option("--word-file", inv_word_file, "Braid word file");
  invariant->add_option("--phi", inv_phi, "Quasi-morphism to homogenize (lk or signature)");
  invariant->add_option("--k-max", inv_kmax)->check(CLI::Range(2L, 1L << 20));

  // estimate
  auto* estimate = app.add_subcommand("estimate", "Monte Carlo estimate of Phi_n or its homogenization");
  FlowSource est_flow;
  std::string est_phi = "lk";
  int est_n = 2;
  long est_samples = 10000;
  std::vector<long> est_k;
  add_flow_options(estimate, est_flow);
  estimate->add_option("--phi", est_phi, "lk | signature");
  estimate->add_option("--n", est_n, "Number of strands")->check(CLI::Range(2, 64));
  estimate->add_option("--samples", est_samples)->check(CLI::PositiveNumber);
  estimate->add_option("--k-schedule", est_k, "Powers for the homogenized estimate");

  // lp-length
  auto* lp = app.add_subcommand("lp-length", "L^p length of a flow isotopy or trajectory bundle");
  FlowSource lp_flow;
  std::string lp_csv;
  double lp_p = 2;
  int lp_steps = 8;
  long lp_space = 20000;
  add_flow_options(lp, lp_flow);
  lp->add_option("--trajectory", lp_csv, "Trajectory CSV file");
  lp->add_option("--p", lp_p)->check(CLI::Range(1.0, 1e6));
  lp->add_option("--time-steps", lp_steps)->check(CLI::Range(2, 1 << 20));
  lp->add_option("--space-samples", lp_space)->check(CLI::PositiveNumber);

  // make-hs
  auto* hs = app.add_subcommand("make-hs", "Profile of the h_s family");
  std::string hs_s;
  std::string hs_output;
  hs->add_option("--s", hs_s, "s in [1/4, 1/3], as p/q or decimal")->required();
  hs->add_option("--output", hs_output, "Write the profile here instead of stdout");

  // verify
  auto* verify = app.add_subcommand("verify", "Run verification checks");
  bool v_all = false, v_crossing = false, v_words = false, v_lipschitz = false, v_bilip = false,
       v_matrix = false, v_hs = false;
  std::string v_report;
  long v_samples = 2000;
  int v_trials = 100;
  verify->add_flag("--all", v_all);
  verify->add_flag("--crossing-bound", v_crossing);
  verify->add_flag("--word-length", v_words);
  verify->add_flag("--lipschitz", v_lipschitz);
  verify->add_flag("--bilipschitz", v_bilip);
  verify->add_flag("--signature-matrix", v_matrix);
  verify->add_flag("--hs-family", v_hs);
  verify->add_option("--report", v_report, "Write the JSON report here too");
  verify->add_option("--samples", v_samples, "Configurations for the Lipschitz check")
      ->check(CLI::PositiveNumber);
  verify->add_option("--trials", v_trials, "Configurations for the crossing bound")
      ->check(CLI::PositiveNumber);

  std::vector<std::string> argv_store{"qmdisc"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  config["command"] = command;
  config["seed"] = g.seed;
  config["threads"] = g.threads;
  config["format"] = g.format;
  if (!g.profile.empty()) config["profile"] = g.profile;
  const bool csv = g.format == "csv";

  EstimatorOptions est_opts;
  est_opts.threads = g.threads;

  try {
    if (command == "flow-apply") {
      config["flow"] = apply_flow.flow;
      config["time"] = apply_flow.time;
      config["points"] = apply_points;
      config["steps"] = apply_steps;
      err << config.dump() << '\n';
      const FlowSpec flow = load_flow(apply_flow, g);
      const auto points = parse_points(apply_points);
      if (points.empty()) throw InputError("no points given");
      if (csv) {
        const Isotopy iso = flow_isotopy(flow);
        std::vector<double> times;
        std::vector<std::vector<Point>> rows;
        for (int k = 0; k <= apply_steps; ++k) {
          const double t = static_cast<double>(k) / apply_steps;
          std::vector<Point> row;
          for (const Point p : points) row.push_back(iso(t, p));
          times.push_back(t);
          rows.push_back(std::move(row));
        }
        out << format_trajectory_csv(TrajectoryBundle(times, rows));
      } else {
        json rows = json::array();
        for (const Point p : points) {
          rows.push_back({{"point", point_json(p)}, {"image", point_json(radial_flow_apply(flow, p))}});
        }
        print(out, {{"images", rows}});
      }
    } else if (command == "braid-extract") {
      config["trajectory"] = extract_csv;
      config["flow"] = extract_flow.flow;
      config["time"] = extract_flow.time;
      config["points"] = extract_points;
      config["direction"] = extract_angle;
      config["samples_per_segment"] = extract_segment;
      err << config.dump() << '\n';
      std::optional<TrajectoryBundle> bundle;
      if (!extract_csv.empty()) {
        bundle = parse_trajectory_csv(read_file(extract_csv));
      } else {
        const auto start = parse_points(extract_points);
        if (start.size() < 2) throw InputError("give --trajectory, or --points with at least two points");
        const FlowSpec flow = load_flow(extract_flow, g);
        bundle = gg_loop(regular_polygon(static_cast<int>(start.size())), start, flow, extract_segment);
      }
      const Extraction found =
          extract_braid_robust(*bundle, {std::cos(extract_angle), std::sin(extract_angle)});
      const int n = bundle->strands();
      if (csv) {
        out << format_word_file(found.word);
      } else {
        json result;
        result["strands"] = n;
        result["word"] = format_letters(found.word);
        result["length"] = found.word.size();
        result["reduced_length"] = representative_length(found.word);
        result["pure"] = is_pure(found.word);
        result["permutation"] = permutation(found.word).images();
        result["direction"] = point_json(found.direction);
        result["direction_attempt"] = found.attempt;
        result["closed_loop"] = bundle->is_loop();
        const auto label = initial_positions(*bundle, found.direction);
        json pairs = json::array();
        for (int i = 0; i < n; ++i) {
          for (int j = i + 1; j < n; ++j) {
            json row{{"strands", {i, j}}, {"winding_length", winding_length(*bundle, i, j)}};
            if (result["pure"].get<bool>()) {
              row["linking_number"] = linking_number(found.word, label[i], label[j]);
              row["winding_number"] = winding_number(*bundle, i, j);
            }
            pairs.push_back(row);
          }
        }
        result["pairs"] = pairs;
        print(out, result);
      }
    } else if (command == "invariant") {
      config["kind"] = inv_kind;
      config["word"] = inv_word;
      config["strands"] = inv_strands;
      config["word_file"] = inv_word_file;
      if (inv_kind == "homogenized") {
        config["phi"] = inv_phi;
        config["k_max"] = inv_kmax;
      }
      err << config.dump() << '\n';
      BraidWord word;
      if (!inv_word_file.empty()) {
        word = parse_word_file(read_file(inv_word_file));
      } else {
        if (inv_strands < 1) throw InputError("give --strands with --word");
        word = parse_letters(inv_word, inv_strands);
      }
      if (inv_kind == "lk") {
        out << rational_text(total_linking_qm().evaluate(word)) << '\n';
      } else if (inv_kind == "signature") {
        out << braid_signature(word) << '\n';
      } else {
        HomogenizeOptions opts;
        opts.k_max = inv_kmax;
        const auto h = homogenize(pick_phi(inv_phi), word, opts);
        if (csv) {
          out << "value,error_bound,k_used\n"
              << rational_text(h.value) << ',' << rational_text(h.error_bound) << ',' << h.k_used << '\n';
        } else {
          print(out, {{"phi", inv_phi},
                      {"value", rational_text(h.value)},
                      {"value_double", to_double(h.value)},
                      {"error_bound", rational_text(h.error_bound)},
                      {"k_used", h.k_used}});
        }
      }
    } else if (command == "estimate") {
      config["flow"] = est_flow.flow;
      config["time"] = est_flow.time;
      config["phi"] = est_phi;
      config["n"] = est_n;
      config["samples"] = est_samples;
      config["k_schedule"] = est_k;
      config["direction"] = point_json(est_opts.direction);
      config["samples_per_segment"] = est_opts.samples_per_segment;
      config["max_step_angle"] = est_opts.max_step_angle;
      err << config.dump() << '\n';
      const FlowSpec flow = load_flow(est_flow, g);
      const auto phi = pick_phi(est_phi);
      const QmEstimate e = est_k.empty()
                               ? estimate_phi_n(flow, phi, est_n, {}, est_samples, g.seed, est_opts)
                               : estimate_phi_tilde_n(flow, phi, est_n, {}, est_samples, est_k, g.seed, est_opts);
      if (csv) {
        out << "value,std_error,samples,rejected,seed,cauchy_error\n";
        char line[256];
        std::snprintf(line, sizeof line, "%.17g,%.17g,%ld,%ld,%llu,%.17g\n", e.value, e.std_error, e.samples,
                      e.rejected, static_cast<unsigned long long>(e.seed), e.cauchy_error);
        out << line;
      } else {
        json j = estimate_json(e);
        j["phi"] = est_phi;
        j["n"] = est_n;
        print(out, j);
      }
    } else if (command == "lp-length") {
      config["flow"] = lp_flow.flow;
      config["time"] = lp_flow.time;
      config["trajectory"] = lp_csv;
      config["p"] = lp_p;
      config["time_steps"] = lp_steps;
      config["space_samples"] = lp_space;
      err << config.dump() << '\n';
      LpLength r;
      std::optional<double> analytic;
      if (!lp_csv.empty()) {
        r = lp_length_trajectory(parse_trajectory_csv(read_file(lp_csv)), lp_p);
      } else {
        const FlowSpec flow = load_flow(lp_flow, g);
        LpOptions opts;
        opts.threads = g.threads;
        r = lp_length_sampled(flow_isotopy(flow), lp_p, lp_steps, lp_space, g.seed, opts);
        if (flow.terms().size() == 1) analytic = lp_length_radial(flow, lp_p);
      }
      if (csv) {
        char line[256];
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%d,%d\n", lp_p, r.value, r.std_error, r.time_steps,
                      r.converged ? 1 : 0);
        out << "p,value,std_error,time_steps,converged\n" << line;
      } else {
        json j{{"p", lp_p},
               {"value", r.value},
               {"std_error", r.std_error},
               {"time_steps", r.time_steps},
               {"refinement_change", r.refinement_change},
               {"converged", r.converged}};
        if (analytic) j["analytic"] = *analytic;
        print(out, j);
      }
    } else if (command == "make-hs") {
      config["s"] = hs_s;
      config["output"] = hs_output;
      err << config.dump() << '\n';
      const RadialProfile h = make_hs_profile(parse_rational(hs_s));
      const std::string text = nlohmann::json(profile_to_json(h)).dump(2) + "\n";
      if (hs_output.empty()) {
        out << text;
      } else {
        std::ofstream file(hs_output, std::ios::binary);
        if (!(file << text)) throw InputError("cannot write " + hs_output);
      }
    } else if (command == "verify") {
      if (v_all) v_crossing = v_words = v_lipschitz = v_bilip = v_matrix = v_hs = true;
      if (!(v_crossing || v_words || v_lipschitz || v_bilip || v_matrix || v_hs)) {
        err << "verify: select --all or at least one check\n";
        return 2;
      }
      config["checks"] = {{"crossing_bound", v_crossing}, {"word_length", v_words},
                          {"lipschitz", v_lipschitz},     {"bilipschitz", v_bilip},
                          {"signature_matrix", v_matrix}, {"hs_family", v_hs}};
      config["samples"] = v_samples;
      config["trials"] = v_trials;
      config["report"] = v_report;
      err << config.dump() << '\n';

      std::vector<Report> reports;
      if (v_crossing) {
        const std::vector<FlowSpec> flows{
            FlowSpec::unchecked({{linear_profile(make_rational(1, 2)), 6.0}}),
            FlowSpec::checked({{bump_profile(make_rational(1, 10), make_rational(9, 10), 60), 2.0}}),
            FlowSpec::checked({{make_hs_profile(make_rational(1, 4)), 3.0}})};
        for (std::size_t i = 0; i < flows.size(); ++i) {
          reports.push_back(check_crossing_bound(flows[i], 3, {}, v_trials, derive_seed(g.seed, streams::kExperiments, i), est_opts));
        }
      }
      if (v_words) {
        std::vector<BraidWord> squares, torus;
        for (long k = -8; k <= 8; ++k) squares.push_back(power(make_word({1, 1}, 2), k));
        for (long k = 1; k <= 20; ++k) torus.push_back(power(make_word({1}, 2), 2 * k));
        reports.push_back(check_word_length_bound(total_linking_qm(), generator_bound(total_linking_qm(), 2), squares, g.seed));
        reports.push_back(check_word_length_bound(signature_qm(), generator_bound(signature_qm(), 2), torus, g.seed));
      }
      if (v_lipschitz) {
        std::vector<FlowSpec> family;
        for (int t = 1; t <= 8; ++t) family.push_back(FlowSpec::checked({{balanced_profile(), static_cast<double>(t)}}));
        reports.push_back(check_lipschitz(family, signature_qm(), 3, 2, v_samples, g.seed, {}, est_opts));
      }
      if (v_bilip) {
        std::vector<RadialProfile> profiles;
        for (const auto& s : hs_grid(5)) profiles.push_back(make_hs_profile(s));
        SplitMix64 rng(derive_seed(g.seed, streams::kExperiments, 1000));
        std::vector<std::vector<Rational>> vectors;
        for (int k = 0; k < 20; ++k) vectors.push_back(random_positive_vector(rng, 5));
        reports.push_back(check_bilipschitz_disc(profiles, vectors, 2));
      }
      if (v_matrix) {
        reports.push_back(check_signature_matrix(default_signature_profiles()));
        auto dup = default_signature_profiles();
        dup[2] = dup[0];
        Report control = check_signature_matrix(dup);
        control.name = "signature_matrix_duplicate_control";
        control.passed = control.details["singular"].get<bool>();
        reports.push_back(control);
      }
      if (v_hs) reports.push_back(check_hs_family(hs_grid(50), 2));

      bool all = true;
      json list = json::array();
      for (const auto& r : reports) {
        all = all && r.passed;
        list.push_back(r.to_json());
      }
      const json doc{{"seed", g.seed}, {"passed", all}, {"reports", list}};
      if (!v_report.empty()) {
        std::ofstream file(v_report, std::ios::binary);
        if (!(file << doc.dump(2) << '\n')) throw InputError("cannot write " + v_report);
      }
      if (csv) {
        out << "name,passed\n";
        for (const auto& r : reports) out << r.name << ',' << (r.passed ? "true" : "false") << '\n';
      } else {
        print(out, doc);
      }
      return all ? 0 : 1;
    }
  } catch (const DegenerateConfiguration& e) {
    err << json{{"error", "DegenerateConfiguration"}, {"message", e.what()}, {"event_time", e.event_time()}}.dump()
        << '\n';
    return 1;
  } catch (const InputError& e) {
    err << json{{"error", "InputError"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  } catch (const DomainError& e) {
    err << json{{"error", "DomainError"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  } catch (const Error& e) {
    err << json{{"error", "Error"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace qmdisc::cli
