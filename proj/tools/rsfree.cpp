// rsfree: exact, asymptotic and Monte Carlo trace statistics of real Gaussian ensembles.
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "rsf/asymptotics.hpp"
#include "rsf/diagrams.hpp"
#include "rsf/jobspec.hpp"

using namespace rsf;

namespace {

struct Common {
  std::vector<std::string> ensembles;
  std::string spec_path;
  std::vector<int> N;
  std::size_t samples = 20000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string out;
  std::string format;
  std::vector<std::string> modes;
};

void add_output(CLI::App* app, Common& c) {
  app->add_option("--out", c.out, "Write the report to this file");
  app->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
}

void add_sampling(CLI::App* app, Common& c) {
  app->add_option("--N", c.N, "Matrix sizes")->delimiter(',');
  app->add_option("--samples", c.samples, "Monte Carlo samples");
  app->add_option("--seed", c.seed, "Top-level seed");
  app->add_option("--threads", c.threads, "Worker threads");
}

void add_models(CLI::App* app, Common& c) {
  app->add_option("-e,--ensemble", c.ensembles, "Colour declaration NAME=goe|ginibre|wishart[:c=p/q]")
      ->allow_extra_args(false);
  app->add_option("--spec", c.spec_path, "Take ensembles (and settings) from a job specification");
}

JobSpec base_spec(const Common& c) {
  JobSpec spec;
  if (!c.spec_path.empty()) spec = load_jobspec(c.spec_path);
  for (auto& d : c.ensembles) {
    auto eq = d.find('=');
    if (eq == std::string::npos || eq == 0) throw SchemaError("ensemble declaration '" + d + "' needs NAME=model");
    try {
      spec.ensembles[d.substr(0, eq)] = parse_model_shorthand(d.substr(eq + 1));
    } catch (const std::invalid_argument& e) {
      throw SchemaError(e.what());
    }
  }
  if (!c.N.empty()) spec.N = c.N;
  if (!c.out.empty()) spec.out_path = c.out;
  if (!c.format.empty()) spec.format = c.format;
  return spec;
}

void add_expressions(JobSpec& spec, const std::vector<std::string>& exprs) {
  if (exprs.empty()) return;
  spec.expressions.clear();
  for (std::size_t i = 0; i < exprs.size(); ++i) {
    ExpressionSpec es;
    es.name = "e" + std::to_string(i + 1);
    try {
      es.expr = parse_expression(exprs[i]);
      es.expr.validate(spec.ensembles);
    } catch (const std::invalid_argument& e) {
      throw SchemaError(e.what());
    }
    spec.expressions.push_back(std::move(es));
  }
}

int finish(const JobSpec& spec) {
  RunResult r = run_job(spec);
  std::string text = render_report(spec, r.report);
  if (spec.out_path.empty()) std::cout << text;
  return r.exit_code;
}

std::string colour_name(EnsembleKind k) {
  switch (k) {
    case EnsembleKind::GOE: return "T";
    case EnsembleKind::Ginibre: return "Z";
    case EnsembleKind::Wishart: return "W";
  }
  return "X";
}

// Two colours from a comma list of kinds, named T1, T2 / W1, T / ...
std::vector<std::pair<std::string, EnsembleModel>> suite_colours(const std::string& list) {
  std::vector<std::string> kinds;
  std::stringstream ss(list);
  for (std::string s; std::getline(ss, s, ',');) kinds.push_back(s);
  if (kinds.size() != 2) throw SchemaError("--colours needs exactly two ensemble kinds");
  std::vector<std::pair<std::string, EnsembleModel>> out;
  for (auto& k : kinds) {
    EnsembleModel m;
    try {
      m = parse_model_shorthand(k);
    } catch (const std::invalid_argument& e) {
      throw SchemaError(e.what());
    }
    out.emplace_back(colour_name(m.kind), m);
  }
  if (out[0].first == out[1].first) {
    out[0].first += "1";
    out[1].first += "2";
  }
  return out;
}

std::string power(const std::string& c, int k) {
  std::string s;
  for (int i = 0; i < k; ++i) s += (i ? " " : "") + c;
  return s;
}

void suite_expressions(JobSpec& spec, const std::string& suite, const std::string& a, const std::string& b) {
  auto push = [&](const std::string& text) {
    ExpressionSpec es;
    es.name = "e" + std::to_string(spec.expressions.size() + 1);
    es.expr = parse_expression(text);
    spec.expressions.push_back(std::move(es));
  };
  if (suite == "freeness") {
    for (int len = 2; len <= 4; ++len)
      for (int start = 0; start < 2; ++start)
        for (int mask = 0; mask < 1 << len; ++mask) {
          std::string s = "tr(";
          for (int f = 0; f < len; ++f) s += "[" + power((f + start) % 2 ? b : a, (mask >> f & 1) + 1) + "]";
          push(s + ")");
        }
  } else if (suite == "second-order") {
    for (int mask = 0; mask < 16; ++mask) {
      auto e = [&](int bit) { return (mask >> bit & 1) + 1; };
      push("k(Tr([" + power(a, e(0)) + "][" + power(b, e(1)) + "]),Tr([" + power(a, e(2)) + "][" + power(b, e(3)) +
           "]))");
    }
    push("k(Tr([" + a + "][" + b + "]),Tr([" + a + "][" + b + "][" + a + "][" + b + "]))");
  } else {
    throw SchemaError("unknown suite '" + suite + "' (use freeness or second-order)");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact, asymptotic and Monte Carlo trace statistics of real Ginibre, GOE and Wishart matrices"};
  app.require_subcommand(1);

  Common run_c;
  auto* run = app.add_subcommand("run", "Run a JSON job specification");
  run->add_option("--spec", run_c.spec_path, "Job specification")->required();
  run->add_option("--mode", run_c.modes, "Override modes")->delimiter(',');
  add_sampling(run, run_c);
  add_output(run, run_c);

  Common ex_c;
  std::vector<std::string> ex_exprs;
  auto* exact = app.add_subcommand("exact", "Exact Laurent value of expressions");
  add_models(exact, ex_c);
  add_output(exact, ex_c);
  exact->add_option("expressions", ex_exprs, "Expressions such as \"tr(T T)\"")->required();

  Common as_c;
  std::vector<std::string> as_exprs;
  auto* asym = app.add_subcommand("asymptotic", "Large-N limits");
  add_models(asym, as_c);
  add_output(asym, as_c);
  asym->add_option("expressions", as_exprs, "Expressions")->required();

  Common mc_c;
  std::vector<std::string> mc_exprs;
  auto* mc = app.add_subcommand("mc", "Monte Carlo estimates against exact values");
  add_models(mc, mc_c);
  add_sampling(mc, mc_c);
  add_output(mc, mc_c);
  mc->add_option("expressions", mc_exprs, "Expressions")->required();

  Common ve_c;
  std::string suite, colours = "goe,goe";
  auto* verify = app.add_subcommand("verify", "Freeness and second-order identity checks");
  verify->add_option("--suite", suite, "freeness or second-order");
  verify->add_option("--colours", colours, "Two ensemble kinds, e.g. goe,wishart:c=1");
  verify->add_option("--spec", ve_c.spec_path, "Verify the expressions of a job specification");
  add_output(verify, ve_c);

  std::string cls, gamma_text;
  int n = 0;
  bool members = false;
  auto* en = app.add_subcommand("enumerate", "Count or list premap classes and noncrossing permutations");
  en->add_option("--class", cls, "premaps | pairing-premaps | ginibre | disc-nc | ann-nc")->required();
  en->add_option("--n", n, "Number of points for premap classes");
  en->add_option("--gamma", gamma_text, "Reference permutation for disc-nc / ann-nc, e.g. \"(1,2,3)\"");
  en->add_flag("--members", members, "Print every member");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*run) {
      JobSpec spec = base_spec(run_c);
      if (!run_c.modes.empty()) {
        spec.modes.clear();
        for (auto& m : run_c.modes) {
          if (!known_modes().count(m)) throw SchemaError("unknown mode '" + m + "'");
          spec.modes.insert(m);
        }
      }
      if (run->count("--samples")) spec.samples = run_c.samples;
      if (run->count("--seed")) spec.seed = run_c.seed;
      if (run->count("--threads")) spec.threads = run_c.threads;
      if (spec.modes.count("mc") && spec.N.empty()) throw SchemaError("mode mc needs --N or N in the spec");
      return finish(spec);
    }
    if (*exact || *asym) {
      Common& c = *exact ? ex_c : as_c;
      JobSpec spec = base_spec(c);
      add_expressions(spec, *exact ? ex_exprs : as_exprs);
      spec.modes = {*exact ? "exact" : "asymptotic"};
      return finish(spec);
    }
    if (*mc) {
      JobSpec spec = base_spec(mc_c);
      add_expressions(spec, mc_exprs);
      spec.modes = {"mc"};
      if (spec.N.empty()) throw SchemaError("mc needs --N");
      spec.samples = mc_c.samples;
      spec.seed = mc_c.seed;
      spec.threads = mc_c.threads;
      for (auto& [name, m] : spec.ensembles)
        if (m.kind == EnsembleKind::Wishart && !m.explicit_d() && !m.ratio)
          throw SchemaError("colour '" + name + "' needs a numeric c for Monte Carlo");
      return finish(spec);
    }
    if (*verify) {
      JobSpec spec = base_spec(ve_c);
      if (ve_c.spec_path.empty()) {
        if (suite.empty()) throw SchemaError("verify needs --suite or --spec");
        auto cs = suite_colours(colours);
        spec.ensembles.clear();
        for (auto& [name, m] : cs) spec.ensembles[name] = m;
        spec.expressions.clear();
        suite_expressions(spec, suite, cs[0].first, cs[1].first);
      }
      spec.modes = {"verify"};
      RunResult r = run_job(spec);
      if (ve_c.format != "csv" && !ve_c.out.empty()) render_report(spec, r.report);
      if (ve_c.format == "csv") {
        std::cout << render_report(spec, r.report);
        return r.exit_code;
      }
      for (auto& res : r.report["results"]) {
        std::cout << res["name"].get<std::string>() << "  " << res["expression"].get<std::string>() << "\n";
        for (auto& c : res.value("verify", nlohmann::json::array())) {
          std::cout << "  " << c["verdict"].get<std::string>();
          if (c.contains("lhs"))
            std::cout << "  lhs=" << LaurentValue::from_json(c["lhs"]).to_string()
                      << " rhs=" << LaurentValue::from_json(c["rhs"]).to_string();
          if (c.contains("defect")) std::cout << "  value=" << LaurentValue::from_json(c["defect"]).to_string();
          std::cout << "\n";
        }
        for (auto& e : res.value("errors", nlohmann::json::array()))
          std::cout << "  " << e["kind"].get<std::string>() << ": " << e["message"].get<std::string>() << "\n";
      }
      auto& s = r.report["summary"];
      std::cout << "checks: " << s["verifications"] << ", failures: " << s["failures"] << "\n";
      return r.exit_code;
    }
    if (*en) {
      std::vector<SignedPermutation> list;
      std::size_t count = 0;
      auto keep = [&](const SignedPermutation& p) {
        ++count;
        if (members) list.push_back(p);
      };
      if (cls == "disc-nc" || cls == "ann-nc") {
        if (gamma_text.empty()) throw SchemaError("--class " + cls + " needs --gamma");
        SignedPermutation g = SignedPermutation::parse(gamma_text);
        IntSet I = g.support();
        if (I.empty()) throw SchemaError("--gamma must move at least one point");
        if (cls == "disc-nc")
          for_each_disc_nc(g, I, keep);
        else
          for_each_ann_nc(g, I, keep);
      } else {
        ClassKind k;
        try {
          k = parse_class_kind(cls);
        } catch (const std::invalid_argument& e) {
          throw SchemaError(e.what());
        }
        if (n < 1) throw SchemaError("--class " + cls + " needs --n >= 1");
        for_each_member(k, interval(n), keep);
      }
      std::cout << "count: " << count << "\n";
      std::sort(list.begin(), list.end());
      for (auto& p : list) std::cout << p.to_string() << "\n";
      return kPass;
    }
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const GuardExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kGuard;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerifyFailed;
  }
  return kPass;
}
