#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "arp/harness.hpp"

using namespace arp;

namespace {

constexpr double kInf = kUnsolved;

IterationRecord rec(int k, double f, long n_f, long n_deriv = 1, long n_sub = 0,
                    Outcome o = Outcome::VerySuccessful) {
  IterationRecord r;
  r.k = k;
  r.f = f;
  r.sigma = 1.0;
  r.grad_norm = 0.5;
  r.n_f = n_f;
  r.n_deriv = n_deriv;
  r.n_subsolves = n_sub;
  r.outcome = o;
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string summary_bytes(const MatrixResult& m) {
  std::ostringstream os;
  write_summary_csv(os, m);
  return os.str();
}

const char* kSmallConfig = R"({
  "seeds": {"problems": 2, "sigma0": 5},
  "methods": [
    {"name": "A", "p": 2, "strategy": "simple"},
    {"name": "B", "p": 3, "strategy": "interp+", "oracle_mode": "tensor_free"}
  ],
  "problems": [{"name": "beale"}, {"name": "powell_singular"}, {"name": "regcubic", "variant": 3, "d": 6}]
})";

}  // namespace

// ---- profiles ----

TEST(Profile, HandComputedTwoByTwo) {
  const auto t = performance_profile({{10, 20}, {20, kInf}}, {1, 2}, {"m1", "m2"});
  EXPECT_EQ(t.n_problems, 2u);
  EXPECT_DOUBLE_EQ(t.gamma[0][0], 1.0);
  EXPECT_DOUBLE_EQ(t.gamma[0][1], 1.0);
  EXPECT_DOUBLE_EQ(t.gamma[1][0], 0.0);
  EXPECT_DOUBLE_EQ(t.gamma[1][1], 0.5);
}

TEST(Profile, SingleMethodIsSolvedFraction) {
  const auto t = performance_profile({{3, kInf, 7, 1}}, {1, 4, 100});
  // the unsolved problem is dropped, so every remaining one is solved
  EXPECT_EQ(t.dropped, std::vector<std::size_t>{1});
  for (double g : t.gamma[0]) EXPECT_DOUBLE_EQ(g, 1.0);
  const auto u = performance_profile({{3, 5}, {kInf, kInf}}, {1, 10});
  EXPECT_DOUBLE_EQ(u.gamma[0][0], 1.0);
  EXPECT_DOUBLE_EQ(u.gamma[1][1], 0.0);
}

TEST(Profile, ZeroBestCost) {
  const auto t = performance_profile({{0, 4}, {0, 8}, {3, 4}}, {1, 2});
  EXPECT_DOUBLE_EQ(t.gamma[0][0], 1.0);
  EXPECT_DOUBLE_EQ(t.gamma[1][0], 0.5);
  EXPECT_DOUBLE_EQ(t.gamma[1][1], 1.0);
  EXPECT_DOUBLE_EQ(t.gamma[2][1], 0.5);
}

TEST(Profile, InputValidation) {
  EXPECT_THROW(performance_profile({{1, 2}, {1}}, {1}), std::invalid_argument);
  EXPECT_THROW(performance_profile({{1}}, {0}), std::invalid_argument);
  EXPECT_THROW(performance_profile({{1}}, {1}, {"a", "b"}), std::invalid_argument);
}

TEST(ProfileProperty, ScalingAProblemLeavesProfileUnchanged) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(1.0, 50.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::vector<double>> c(3, std::vector<double>(6));
    for (auto& row : c)
      for (auto& x : row) x = u(rng) < 8.0 ? kInf : std::round(u(rng));
    const std::vector<double> tau{1, 1.5, 2, 4, 8};
    const auto a = performance_profile(c, tau);
    const auto j = static_cast<std::size_t>(trial % 6);
    for (auto& row : c) row[j] *= 10.0;
    const auto b = performance_profile(c, tau);
    EXPECT_EQ(a.gamma, b.gamma);
  }
}

TEST(ProfileProperty, GammaMonotoneAndBounded) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> tau;
  for (double t = 1.0; t <= 64.0; t *= 1.3) tau.push_back(t);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t nm = 1 + trial % 5, np = 1 + (trial * 7) % 13;
    std::vector<std::vector<double>> c(nm, std::vector<double>(np));
    for (auto& row : c)
      for (auto& x : row) x = u(rng) < 0.2 ? kInf : std::floor(1 + 100 * u(rng) * u(rng));
    const auto t = performance_profile(c, tau);
    std::vector<double> best_hits(np, 0.0);
    for (std::size_t i = 0; i < nm; ++i) {
      for (std::size_t k = 0; k < tau.size(); ++k) {
        EXPECT_GE(t.gamma[i][k], 0.0);
        EXPECT_LE(t.gamma[i][k], 1.0);
        if (k) EXPECT_GE(t.gamma[i][k], t.gamma[i][k - 1]);
      }
    }
    // at tau = 1 every counted problem has at least one winning method
    double sum = 0.0;
    for (std::size_t i = 0; i < nm; ++i) sum += t.gamma[i][0];
    if (t.n_problems) EXPECT_GE(sum, 1.0 - 1e-12);
  }
}

// ---- cost to solution ----

TEST(CostToSolution, Examples) {
  const std::vector<IterationRecord> tr{rec(0, 5.0, 1, 1, 0), rec(1, 1.0, 2, 2, 1), rec(2, 1e-9, 3, 3, 2)};
  EXPECT_EQ(cost_to_solution(tr, 5.0, 1e-8, CostMetric::FunctionEvals), 1.0);
  EXPECT_EQ(cost_to_solution(tr, -1.0, 1e-8, CostMetric::FunctionEvals), kInf);
  EXPECT_EQ(cost_to_solution(tr, 0.0, 1e-8, CostMetric::FunctionEvals), 3.0);
  EXPECT_EQ(cost_to_solution(tr, 0.0, 1e-8, CostMetric::SubproblemSolves), 2.0);
  EXPECT_EQ(cost_to_solution(tr, 0.0, 1.5, CostMetric::DerivativeEvals), 2.0);
  // relative test for large |f_best|
  const std::vector<IterationRecord> big{rec(0, -1000.0 + 1e-6, 1), rec(1, -1000.0, 2)};
  EXPECT_EQ(cost_to_solution(big, -1000.0, 1e-8, CostMetric::FunctionEvals), 1.0);
  EXPECT_EQ(cost_to_solution(big, -1000.0, 1e-10, CostMetric::FunctionEvals), 2.0);
}

TEST(CostToSolutionProperty, MonotoneInTolerance) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<IterationRecord> tr;
    double f = 10.0 * u(rng);
    long nf = 1;
    for (int k = 0; k < 30; ++k) {
      tr.push_back(rec(k, f, nf, k + 1, k));
      f *= u(rng);
      nf += 1 + (u(rng) < 0.3);
    }
    double prev = kInf;
    for (double eps = 1e-12; eps <= 10.0; eps *= 10.0) {
      const double c = cost_to_solution(tr, 0.0, eps, CostMetric::FunctionEvals);
      EXPECT_LE(c, prev);
      prev = c;
    }
  }
}

TEST(Profile, FromTracesUsesBestValueOverAllMethods) {
  const std::vector<std::vector<std::vector<IterationRecord>>> traces{
      {{rec(0, 3.0, 1), rec(1, 1.0, 4)}, {rec(0, 2.0, 1), rec(1, 0.5, 3)}},
      {{rec(0, 3.0, 1), rec(1, 2.0, 2), rec(2, 1.0, 6)}, {rec(0, 2.0, 1)}}};
  const auto t = profile_from_traces({"x", "y"}, traces, 1e-8, CostMetric::FunctionEvals, {1, 2});
  EXPECT_EQ(t.f_best, (std::vector<double>{1.0, 0.5}));
  EXPECT_DOUBLE_EQ(t.gamma[0][0], 1.0);
  EXPECT_DOUBLE_EQ(t.gamma[1][0], 0.0);
  EXPECT_DOUBLE_EQ(t.gamma[1][1], 0.5);
}

TEST(Profile, CsvLayout) {
  const auto t = performance_profile({{10, 20}, {20, kInf}}, {1, 2}, {"m1", "m2"});
  std::ostringstream os;
  write_profile_csv(os, t, CostMetric::FunctionEvals, 1e-8);
  EXPECT_EQ(os.str(),
            "metric,eps_f,method,tau,gamma\n"
            "function_evals,1e-08,m1,1,1\n"
            "function_evals,1e-08,m1,2,1\n"
            "function_evals,1e-08,m2,1,0\n"
            "function_evals,1e-08,m2,2,0.5\n");
  for (CostMetric m : {CostMetric::FunctionEvals, CostMetric::DerivativeEvals, CostMetric::SubproblemSolves})
    EXPECT_EQ(cost_metric_from_string(to_string(m)), m);
}

// ---- traces ----

TEST(Trace, RoundTrip) {
  std::vector<IterationRecord> tr{rec(0, 2.5, 2, 1, 0, Outcome::PreRejected), rec(1, 2.5, 2, 1, 1),
                                  rec(2, 0.1 + 0.2, 3, 2, 2, Outcome::FinalIterate)};
  tr[0].step_norm = 1.0 / 3.0;
  tr[1].rho = std::nan("");
  tr[1].sigma = 0.0;
  tr[2].grad_norm = std::nan("");
  std::stringstream ss;
  write_trace(ss, tr, "AR3,odd", "p1");
  const TraceFile back = read_trace(ss);
  EXPECT_EQ(back.method, "AR3,odd");
  EXPECT_EQ(back.problem, "p1");
  ASSERT_EQ(back.records.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(back.records[i].k, tr[i].k);
    EXPECT_EQ(back.records[i].f, tr[i].f);
    if (i < 2) EXPECT_EQ(back.records[i].grad_norm, tr[i].grad_norm);
    EXPECT_EQ(back.records[i].sigma, tr[i].sigma);
    EXPECT_EQ(back.records[i].outcome, tr[i].outcome);
    EXPECT_EQ(back.records[i].n_f, tr[i].n_f);
  }
  EXPECT_EQ(back.records[0].step_norm, tr[0].step_norm);
  EXPECT_FALSE(back.records[0].rho);
  // non-finite values travel as null; an optional null reads back as absent
  EXPECT_FALSE(back.records[1].rho);
  EXPECT_TRUE(std::isnan(back.records[2].grad_norm));
}

TEST(Trace, SchemaErrors) {
  auto parse = [](const std::string& s) {
    std::istringstream is(s);
    return read_trace(is);
  };
  const std::string good = record_to_json(rec(0, 1.0, 1), "m", "p");
  EXPECT_NO_THROW(parse(good + "\n\n"));
  EXPECT_THROW(parse(R"({"k":0})"), SchemaError);
  std::string v2 = good;
  v2.replace(v2.find("\"schema\":1"), 10, "\"schema\":2");
  EXPECT_THROW(parse(v2), SchemaError);
  EXPECT_THROW(parse("not json"), SchemaError);
  EXPECT_THROW(parse(good + "\n" + record_to_json(rec(1, 1.0, 1), "other", "p")), SchemaError);
  std::string bad_outcome = good;
  bad_outcome.replace(bad_outcome.find("very_successful"), 15, "great");
  EXPECT_THROW(parse(bad_outcome), SchemaError);
  std::string no_f = good;
  no_f.replace(no_f.find("\"f\":"), 4, "\"g\":");
  EXPECT_THROW(parse(no_f), SchemaError);
}

TEST(Trace, DotsCsv) {
  std::ostringstream os;
  write_dots_csv(os, "m", "p", {{0, 1e-25, 1e-10, "diamond"}, {1, 0.5, 2.0, "triangle"}});
  EXPECT_EQ(os.str(), "method,problem,k,gap,sigma,marker\nm,p,0,1e-25,1e-10,diamond\nm,p,1,0.5,2,triangle\n");
}

// ---- config ----

TEST(Config, ParsesSmallConfig) {
  const auto cfg = parse_experiment(kSmallConfig);
  ASSERT_EQ(cfg.methods.size(), 2u);
  EXPECT_EQ(cfg.methods[1].cfg.strategy, Strategy::InterpPlus);
  EXPECT_EQ(cfg.methods[1].mode, OracleMode::TensorFree);
  EXPECT_EQ(cfg.methods[0].cfg.seed, 5u);
  EXPECT_TRUE(cfg.methods[0].cfg.sigma0.taylor);
  ASSERT_EQ(cfg.problems.size(), 3u);
  EXPECT_EQ(cfg.problems[2].label, "regcubic3");
  EXPECT_EQ(cfg.problems[2].seed, 2u);
  EXPECT_EQ(cfg.eps_f, std::vector<double>{1e-8});
  const auto probs = build_problems(cfg);
  EXPECT_EQ(probs[2].name, "regcubic3");
  EXPECT_EQ(probs[2].dim, 6u);
}

TEST(Config, ParsesNestedOptions) {
  const auto cfg = parse_experiment(R"({
    "methods": [{"name": "m", "p": 3, "strategy": "bgms", "sigma0": 2.5, "max_iter": 50,
                 "tc": {"kind": "relative", "value": 100},
                 "bgms": {"J": 5}, "inner": {"start": [-0.1, 0], "max_iter": 30}}],
    "problems": [{"name": "hairpin", "r": 1e-3}],
    "metrics": {"eps_f": [1e-3], "tau": [1, 3], "cost": ["subproblem_solves"]}})");
  const auto& c = cfg.methods[0].cfg;
  EXPECT_FALSE(c.sigma0.taylor);
  EXPECT_EQ(c.sigma0.value, 2.5);
  EXPECT_EQ(c.max_iter, 50);
  EXPECT_EQ(c.tc.kind, TerminationCondition::Kind::Relative);
  EXPECT_EQ(c.bgms.J, 5);
  ASSERT_EQ(c.inner.start.size(), 2);
  EXPECT_EQ(c.inner.start[0], -0.1);
  EXPECT_EQ(cfg.problems[0].params.r, 1e-3);
  EXPECT_EQ(cfg.metrics, std::vector<CostMetric>{CostMetric::SubproblemSolves});
}

TEST(Config, Errors) {
  const char* bad[] = {
      "{",
      R"({"methods": [], "problems": [{"name": "beale"}]})",
      R"({"methods": [{"name": "a"}], "problems": []})",
      R"({"methods": [{"name": "a", "colour": 1}], "problems": [{"name": "beale"}]})",
      R"({"methods": [{"name": "a"}, {"name": "a"}], "problems": [{"name": "beale"}]})",
      R"({"methods": [{"name": "a", "p": 7}], "problems": [{"name": "beale"}]})",
      R"({"methods": [{"name": "a", "strategy": "magic"}], "problems": [{"name": "beale"}]})",
      R"({"methods": [{"name": "a", "sigma0": "guess"}], "problems": [{"name": "beale"}]})",
      R"({"methods": [{"name": "a", "tc": {"kind": "absolute"}}], "problems": [{"name": "beale"}]})",
      R"({"methods": [{"name": "a"}], "problems": [{"name": "beale"}], "metrics": {"tau": [0]}})",
      R"({"methods": [{"name": "a"}], "problems": [{"name": "beale"}], "metrics": {"cost": ["time"]}})",
      R"({"schema": 2, "methods": [{"name": "a"}], "problems": [{"name": "beale"}]})",
      R"({"methods": [{"name": "a", "p": "two"}], "problems": [{"name": "beale"}]})",
      R"({"methods": [{"name": "a"}], "problems": [{}]})",
  };
  for (const char* text : bad) EXPECT_THROW(parse_experiment(text), ConfigError) << text;
  const auto cfg = parse_experiment(R"({"methods": [{"name": "a"}], "problems": [{"name": "nope"}]})");
  EXPECT_THROW(build_problems(cfg), ConfigError);
  const auto dup = parse_experiment(R"({"methods": [{"name": "a"}], "problems": [{"name": "beale"}, {"name": "beale"}]})");
  EXPECT_THROW(build_problems(dup), ConfigError);
}

// ---- matrix ----

TEST(RunMatrix, OneByOne) {
  auto cfg = parse_experiment(R"({"methods": [{"name": "a", "p": 2}], "problems": [{"name": "beale"}]})");
  const auto dir = std::filesystem::temp_directory_path() / "arp_test_1x1";
  std::filesystem::remove_all(dir);
  cfg.output_dir = dir.string();
  const auto probs = build_problems(cfg);
  const auto m = run_matrix(cfg, probs);
  ASSERT_EQ(m.summaries.size(), 1u);
  EXPECT_EQ(m.summaries[0].status, "first_order_point");
  EXPECT_FALSE(m.partial_failure);
  write_outputs(cfg, probs, m);
  std::size_t files = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir / "traces")) {
    ++files;
    std::ifstream in(e.path());
    EXPECT_GE(read_trace(in).records.size(), 1u);
  }
  EXPECT_EQ(files, 1u);
  EXPECT_TRUE(std::filesystem::exists(dir / "summary.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "profile.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "timings.csv"));
  std::filesystem::remove_all(dir);
}

TEST(RunMatrix, FailingRunIsIsolated) {
  // the inner start has the wrong dimension for the 4-D problem only
  const auto cfg = parse_experiment(R"({
    "methods": [{"name": "a", "p": 3, "sigma0": 1, "inner": {"start": [0, 0]}}],
    "problems": [{"name": "powell_singular"}, {"name": "beale"}]})");
  const auto m = run_matrix(cfg, build_problems(cfg));
  EXPECT_EQ(m.summaries[0].status, "error");
  EXPECT_FALSE(m.summaries[0].error.empty());
  EXPECT_EQ(m.summaries[1].status, "first_order_point");
  EXPECT_TRUE(m.partial_failure);
}

TEST(RunMatrix, SerialAndParallelAgree) {
  const auto cfg = parse_experiment(kSmallConfig);
  const auto probs = build_problems(cfg);
  const auto a = run_matrix(cfg, probs, Execution::Serial);
  const auto b = run_matrix(cfg, probs, Execution::Parallel);
  const auto c = run_matrix(cfg, probs, Execution::Parallel);
  EXPECT_EQ(summary_bytes(a), summary_bytes(b));
  EXPECT_EQ(summary_bytes(b), summary_bytes(c));
  for (std::size_t i = 0; i < a.results.size(); ++i) {
    std::ostringstream x, y;
    write_trace(x, a.results[i].trace, "m", "p");
    write_trace(y, b.results[i].trace, "m", "p");
    EXPECT_EQ(x.str(), y.str());
    EXPECT_EQ(check_counters(a.results[i]), std::nullopt);
  }
}

TEST(RunMatrix, OutputsAreDeterministicAndPersistGenerationData) {
  auto cfg = parse_experiment(kSmallConfig);
  const auto dir = std::filesystem::temp_directory_path() / "arp_test_outputs";
  std::filesystem::remove_all(dir);
  cfg.output_dir = dir.string();
  const auto probs = build_problems(cfg);
  write_outputs(cfg, probs, run_matrix(cfg, probs));
  const std::string s1 = slurp(dir / "summary.csv"), p1 = slurp(dir / "profile.csv");
  write_outputs(cfg, probs, run_matrix(cfg, probs));
  EXPECT_EQ(s1, slurp(dir / "summary.csv"));
  EXPECT_EQ(p1, slurp(dir / "profile.csv"));
  EXPECT_EQ(s1.substr(0, s1.find('\n')), "method,problem,status,iterations,f_final,grad_norm_final,n_f,n_deriv,n_subsolves,error");

  // rebuilding from the persisted data reproduces the run
  auto cfg2 = parse_experiment(R"({"seeds": {"sigma0": 5},
    "methods": [{"name": "B", "p": 3, "strategy": "interp+", "oracle_mode": "tensor_free"}],
    "problems": [{"generation": ")" + (dir / "problems" / "regcubic3.json").string() + R"("}]})");
  const auto rebuilt = build_problems(cfg2);
  EXPECT_EQ(rebuilt[0].name, "regcubic3");
  const auto again = run_matrix(cfg2, rebuilt);
  const auto orig = run_matrix(cfg, probs);
  EXPECT_EQ(again.results[0].f_final, orig.at(1, 2).f_final);
  EXPECT_EQ(again.results[0].iterations, orig.at(1, 2).iterations);
  std::filesystem::remove_all(dir);
}

TEST(CheckCounters, DetectsTampering) {
  const auto cfg = parse_experiment(R"({"methods": [{"name": "a", "p": 2}], "problems": [{"name": "beale"}]})");
  auto m = run_matrix(cfg, build_problems(cfg), Execution::Serial);
  RunResult r = m.results[0];
  ASSERT_EQ(check_counters(r), std::nullopt);
  r.counters.n_f += 1;
  EXPECT_TRUE(check_counters(r));
  r = m.results[0];
  r.trace[1].n_deriv += 1;
  EXPECT_TRUE(check_counters(r));
}
