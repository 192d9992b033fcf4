// Acceptance suite: ten end-to-end criteria covering the kernel identity,
// the closed-form companion integrals, fixture values, reduction and
// two-construction equalities, a domination corpus, the convexity checker,
// and the CLI contract.  Prints one PASS/FAIL line per criterion and exits
// nonzero if any fail.
//
// Usage: quadcert_acceptance <path-to-quadcert-cli>

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "quadcert/bounds.hpp"
#include "quadcert/report.hpp"

using namespace quadcert;
using nlohmann::json;

namespace {

int g_failed = 0;

void verdict(int id, const std::string& label, bool passed, const std::string& detail) {
  std::printf("%s  %2d. %s%s%s\n", passed ? "PASS" : "FAIL", id, label.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!passed) ++g_failed;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) { return detail::format_general(v, 6); }

// --- criterion 1: kernel identity ------------------------------------------

void criterion_kernel_identity() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  std::string worst_at;
  const char* monomials[] = {"1", "x", "x^2", "x^3", "x^4", "x^5", "x^6"};
  const Interval ivs[] = {Interval(0.0, 1.0), Interval(1.0, 3.0)};
  const double ms[] = {0.5, 0.75, 1.0};
  for (const char* mono : monomials) {
    const auto f = FunctionModel::parse(mono);
    for (const Interval& iv : ivs) {
      for (double m : ms) {
        const double residual = verify_kernel_identity(f, iv, m);
        if (residual > worst) {
          worst = residual;
          worst_at = std::string(mono) + " on [" + fmt(iv.a) + "," + fmt(iv.b) +
                     "], m=" + fmt(m);
        }
      }
    }
  }
  const double elapsed = seconds_since(start);
  const bool ok = worst <= 1e-8 && elapsed < 5.0;
  verdict(1, "kernel identity: residual <= 1e-8 for x^k, k=0..6, two intervals, m in {0.5,0.75,1}",
          ok, "worst " + fmt(worst) + " (" + worst_at + "), " + fmt(elapsed) + "s");
}

// --- criterion 2: companion integral closed form ----------------------------

void criterion_companion_integral() {
  double worst = 0.0;
  for (double p : {1.0, 1.25, 1.5, 2.0, 3.0, 5.0}) {
    const double closed = kernel_holder_integral(p);
    const double numeric =
        integrate_adaptive([p](double t) { return std::pow(t * t * (0.5 - t), p); },
                           Interval(0.0, 0.5), 1e-14)
            .value;
    worst = std::max(worst, std::fabs(closed - numeric) / closed);
  }
  verdict(2, "Holder companion integral: closed form vs quadrature <= 1e-10 relative",
          worst <= 1e-10, "worst " + fmt(worst));
}

// --- criterion 3: classical sharpness ---------------------------------------

void criterion_classical_sharpness() {
  const auto f = FunctionModel::parse("x^4");
  const BoundReport rep = certify(f, Interval(0.0, 1.0), TheoremId::ClassicalSup);
  const bool ok = rep.bound == 1.0 / 120.0 &&
                  std::fabs(rep.actual_error - 1.0 / 120.0) <= 1e-12 &&
                  rep.ratio.has_value() && std::fabs(*rep.ratio - 1.0) <= 1e-12;
  verdict(3, "classical sharpness: x^4 on [0,1] gives bound = actual = 1/120, ratio 1 +- 1e-12",
          ok, "ratio " + (rep.ratio ? fmt(*rep.ratio) : std::string("-")));
}

// --- criterion 4: first-moment fixture --------------------------------------

void criterion_first_moment_fixture() {
  const auto f = FunctionModel::parse("x^4");
  const BoundReport rep = certify(f, Interval(0.0, 1.0), TheoremId::HConvexL1);
  const bool ok = std::fabs(rep.bound - 1.0 / 48.0) <= 1e-12 &&
                  std::fabs(rep.actual_error - 1.0 / 120.0) <= 1e-12 &&
                  rep.hypothesis.passed && rep.dominates && *rep.dominates;
  verdict(4, "h-convex first-moment fixture: x^4, h=t gives bound 1/48 +- 1e-12, dominating 1/120",
          ok, "bound " + fmt(rep.bound));
}

// --- criterion 5: reduction suite -------------------------------------------

void criterion_reductions() {
  double worst = 0.0;
  for (int k = 1; k <= 10; ++k) {
    BoundInputs in;
    in.iv = Interval(0.5, 2.0);
    in.fa3 = 3.7;
    in.fb3 = 11.2;
    in.s = k / 10.0;
    in.h = HSpec::power(in.s);
    worst = std::max(worst, std::fabs(bound_s_l1(in) - bound_h_l1(in)) / bound_s_l1(in));
    for (double q : {1.5, 2.0, 4.0}) {
      in.q = q;
      worst = std::max(worst,
                       std::fabs(bound_s_holder(in) - bound_h_holder(in)) / bound_s_holder(in));
      worst = std::max(worst, std::fabs(bound_s_powermean(in) - bound_h_powermean(in)) /
                                  bound_s_powermean(in));
    }
  }
  verdict(5, "reduction suite: closed power-weight bounds match the h-route <= 1e-10 relative",
          worst <= 1e-10, "worst " + fmt(worst));
}

// --- criterion 6: moment identities ------------------------------------------

void criterion_moment_identities() {
  bool sums_ok = true;
  double worst = 0.0;
  for (int k = 0; k <= 10; ++k) {
    const AmMoments mom = am_moment_integrals(k / 10.0);
    const double left = std::fabs(mom.left_alpha + mom.left_complement - 1.0 / 192.0);
    const double right = std::fabs(mom.right_alpha + mom.right_complement - 1.0 / 192.0);
    worst = std::max({worst, left, right});
    sums_ok = sums_ok && left <= 1e-14 && right <= 1e-14;
  }
  const AmMoments at1 = am_moment_integrals(1.0);
  const auto close = [](double x, double y) { return std::fabs(x - y) <= 1e-15 * std::fabs(y); };
  const bool quad_ok = close(at1.left_alpha, 1.0 / 640.0) &&
                       close(at1.left_complement, 7.0 / 1920.0) &&
                       close(at1.right_alpha, 7.0 / 1920.0) &&
                       close(at1.right_complement, 1.0 / 640.0);
  verdict(6, "moment identities: pair sums 1/192 +- 1e-14 on alpha grid; alpha=1 quadruple exact",
          sums_ok && quad_ok, "worst sum deviation " + fmt(worst));
}

// --- criterion 7: two-construction equality ----------------------------------

void criterion_two_constructions() {
  double worst = 0.0;
  for (double alpha : {0.0, 0.5, 1.0}) {
    for (double m : {0.5, 1.0}) {
      for (double q : {1.0, 2.0, 4.0}) {
        BoundInputs in;
        in.iv = Interval(0.0, 1.0);
        in.fa3 = 7.0;
        in.fb3 = 24.0;
        in.alpha = alpha;
        in.m = m;
        in.q = q;
        const double closed = bound_am_powermean(in);

        const AmMoments mom = am_moment_integrals(alpha);
        const double A = std::pow(in.fa3, q);
        const double B = std::pow(in.fb3, q);
        const double len = m * in.iv.b - in.iv.a;
        const double len4 = (len * len) * (len * len);
        const double assembled =
            len4 / 6.0 * std::pow(1.0 / 192.0, 1.0 - 1.0 / q) *
            (std::pow(mom.left_alpha * A + m * mom.left_complement * B, 1.0 / q) +
             std::pow(mom.right_alpha * A + m * mom.right_complement * B, 1.0 / q));
        worst = std::max(worst, std::fabs(closed - assembled) / closed);
      }
    }
  }
  verdict(7, "power-mean (alpha,m) bound: closed form vs moment assembly <= 1e-12 relative",
          worst <= 1e-12, "worst " + fmt(worst));
}

// --- criterion 8: domination corpus ------------------------------------------

struct CorpusEntry {
  const char* f;
  double a, b;
  TheoremId theorem;
  const char* h;  // nullptr when unused
  double s, q, alpha, m;
};

void criterion_domination_corpus() {
  const auto start = std::chrono::steady_clock::now();
  const double pi = 3.141592653589793;
  const std::vector<CorpusEntry> corpus = {
      {"x^4", 0.0, 1.0, TheoremId::HConvexL1, "t", 0, 0, 0, 0},
      {"x^4 + 2*x^3 + x^2", 0.0, 1.0, TheoremId::HConvexL1, "t", 0, 0, 0, 0},
      {"x^5", 0.0, 1.0, TheoremId::HConvexHolder, "t", 0, 2.0, 0, 0},
      {"x^6", 1.0, 3.0, TheoremId::HConvexPowerMean, "t", 0, 2.0, 0, 0},
      {"exp(x)", 0.0, 1.0, TheoremId::HConvexL1, "t", 0, 0, 0, 0},
      {"exp(x)", 0.0, 1.0, TheoremId::HConvexHolder, "t", 0, 2.0, 0, 0},
      {"x*exp(x)", 0.0, 1.0, TheoremId::HConvexPowerMean, "t", 0, 3.0, 0, 0},
      {"sin(x)", pi / 2.0, pi, TheoremId::HConvexL1, "1", 0, 0, 0, 0},
      {"sin(x)", pi / 2.0, pi, TheoremId::HConvexPowerMean, "1/t", 0, 2.0, 0, 0},
      {"exp(-x)", 0.0, 1.0, TheoremId::HConvexL1, "t", 0, 0, 0, 0},
      {"2*x^5 - x^4", 0.5, 1.0, TheoremId::HConvexL1, "t", 0, 0, 0, 0},
      {"x^4", 0.0, 1.0, TheoremId::SConvexL1, nullptr, 0.5, 0, 0, 0},
      {"x^5", 0.0, 1.0, TheoremId::SConvexHolder, nullptr, 0.5, 2.0, 0, 0},
      {"x^6", 0.0, 1.0, TheoremId::SConvexPowerMean, nullptr, 0.75, 2.0, 0, 0},
      {"x^4", 0.0, 1.0, TheoremId::AlphaMHolder, nullptr, 0, 2.0, 1.0, 1.0},
      {"x^4", 0.0, 1.0, TheoremId::AlphaMPowerMean, nullptr, 0, 2.0, 1.0, 0.75},
      {"x^5", 0.0, 1.0, TheoremId::AlphaMPowerMean, nullptr, 0, 1.0, 1.0, 1.0},
  };

  int passed_and_dominating = 0;
  std::string first_problem;
  for (const CorpusEntry& e : corpus) {
    const auto f = FunctionModel::parse(e.f);
    CertifyOptions opt;
    if (e.h) opt.h = HSpec::parse(e.h);
    if (e.s > 0) opt.s = e.s;
    if (e.q > 0) opt.q = e.q;
    if (theorem_uses_alpha_m(e.theorem)) {
      opt.alpha = e.alpha;
      opt.m = e.m;
    }
    const BoundReport rep = certify(f, Interval(e.a, e.b), e.theorem, opt);
    const bool ok = rep.hypothesis.passed && rep.dominates.has_value() && *rep.dominates &&
                    rep.actual_error <= rep.bound + 1e-12 * (1.0 + rep.bound);
    if (ok) {
      ++passed_and_dominating;
    } else if (first_problem.empty()) {
      first_problem = std::string(e.f) + "/" + std::string(to_string(e.theorem));
    }
  }
  const double elapsed = seconds_since(start);
  const bool ok = passed_and_dominating == static_cast<int>(corpus.size()) &&
                  corpus.size() >= 12 && elapsed < 30.0;
  verdict(8, "domination corpus: every passing certificate has actual <= bound (17 entries)",
          ok, std::to_string(passed_and_dominating) + "/" + std::to_string(corpus.size()) +
              " in " + fmt(elapsed) + "s" +
              (first_problem.empty() ? "" : ", first failure " + first_problem));
}

// --- criterion 9: convexity checker ------------------------------------------

void criterion_convexity_checker() {
  const Interval unit(0.0, 1.0);
  const auto neg_square = [](double x) { return -x * x; };
  const auto vneg = check_hypothesis(
      ConvexityHypothesis::h_convex(HSpec::identity(), neg_square, unit));
  const bool catches = !vneg.passed && vneg.counterexample.has_value() &&
                       vneg.slack_min <= -0.2;

  const auto line = [](double x) { return 24.0 * x; };
  const auto vh = check_hypothesis(ConvexityHypothesis::h_convex(HSpec::identity(), line, unit));
  const auto vam = check_hypothesis(ConvexityHypothesis::alpha_m_convex(1.0, 1.0, line, unit));
  const auto vp = check_hypothesis(ConvexityHypothesis::p_function(line, unit));
  const bool passes = vh.passed && vam.passed && vp.passed;

  verdict(9, "convexity checker: flags -x^2 (slack <= -0.2) and passes 24x for h=t, (1,1), P",
          catches && passes, "slack " + fmt(vneg.slack_min));
}

// --- criterion 10: CLI end-to-end --------------------------------------------

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_cli(const std::string& cli, const std::string& args) {
  CliResult res;
  const std::string cmd = "'" + cli + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return res;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, n);
  const int status = pclose(pipe);
  if (WIFEXITED(status)) res.exit_code = WEXITSTATUS(status);
  return res;
}

void criterion_cli(const std::string& cli) {
  std::string detail;
  bool ok = true;
  const auto fail = [&](const std::string& why) {
    if (ok) detail = why;
    ok = false;
  };

  // documented command 1, JSON output
  const std::string cmd1 = "eval --f \"x^4\" --a 0 --b 1 --theorem h-l1 --h t --format json";
  const CliResult r1 = run_cli(cli, cmd1);
  if (r1.exit_code != 0) fail("cmd1 exit " + std::to_string(r1.exit_code));
  json j1;
  try {
    j1 = json::parse(r1.out);
    const double bound = j1[0]["bound"].get<double>();
    const double actual = j1[0]["actual_error"].get<double>();
    if (std::fabs(bound - 1.0 / 48.0) > 1e-12) fail("cmd1 bound " + fmt(bound));
    if (std::fabs(actual - 1.0 / 120.0) > 1e-12) fail("cmd1 actual " + fmt(actual));
    if (!j1[0]["dominates"].get<bool>()) fail("cmd1 dominates false");
  } catch (const std::exception& e) {
    fail(std::string("cmd1 JSON: ") + e.what());
  }

  // byte-determinism of the JSON report
  const CliResult r1b = run_cli(cli, cmd1);
  if (r1.out != r1b.out) fail("cmd1 output not byte-identical across runs");

  // bit-exact round trip against an in-process certification
  try {
    const auto f = FunctionModel::parse("x^4");
    const BoundReport rep = certify(f, Interval(0.0, 1.0), TheoremId::HConvexL1);
    if (j1[0]["bound"].get<double>() != rep.bound) fail("cmd1 bound not bit-exact");
    if (j1[0]["actual_error"].get<double>() != rep.actual_error)
      fail("cmd1 actual not bit-exact");
    if (j1[0]["ratio"].get<double>() != *rep.ratio) fail("cmd1 ratio not bit-exact");
    if (j1[0]["hypothesis"]["slack_min"].get<double>() != rep.hypothesis.slack_min)
      fail("cmd1 slack not bit-exact");
  } catch (const std::exception& e) {
    fail(std::string("cmd1 round-trip: ") + e.what());
  }

  // documented command 2 (table by default; JSON variant for the numbers)
  const CliResult r2 = run_cli(cli, "eval --f \"x^3\" --a 0 --b 1 --theorem classical");
  if (r2.exit_code != 0) fail("cmd2 exit " + std::to_string(r2.exit_code));
  const CliResult r2j =
      run_cli(cli, "eval --f \"x^3\" --a 0 --b 1 --theorem classical --format json");
  try {
    const json j2 = json::parse(r2j.out);
    if (j2[0]["bound"].get<double>() != 0.0) fail("cmd2 bound nonzero");
    if (j2[0]["actual_error"].get<double>() > 1e-14) fail("cmd2 actual not ~0");
  } catch (const std::exception& e) {
    fail(std::string("cmd2 JSON: ") + e.what());
  }

  // documented command 3
  const std::string cmd3 =
      "eval --f \"x^4\" --a 0 --b 1 --theorem am-holder --alpha 1 --m 1 --q 2";
  const CliResult r3 = run_cli(cli, cmd3);
  if (r3.exit_code != 0) fail("cmd3 exit " + std::to_string(r3.exit_code));
  const CliResult r3j = run_cli(cli, cmd3 + " --format json");
  try {
    const json j3 = json::parse(r3j.out);
    const double bound = j3[0]["bound"].get<double>();
    if (std::fabs(bound - 0.03332760728006958) > 1e-12) fail("cmd3 bound " + fmt(bound));
  } catch (const std::exception& e) {
    fail(std::string("cmd3 JSON: ") + e.what());
  }

  // exit-status contract: failed hypothesis exits 1, usage errors exit 2
  const CliResult rfail =
      run_cli(cli, "eval --f \"sin(x)\" --a 0 --b 3.141592653589793 --theorem h-l1 --h t");
  if (rfail.exit_code != 1) fail("hypothesis-failure exit " + std::to_string(rfail.exit_code));
  const CliResult rusage = run_cli(cli, "eval --f \"x^4\" --a 0 --b 1 --theorem h-l1");
  if (rusage.exit_code != 2) fail("usage-error exit " + std::to_string(rusage.exit_code));

  verdict(10, "CLI: documented commands give the fixture numbers, statuses, bit-exact JSON",
          ok, detail);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: quadcert_acceptance <path-to-quadcert-cli>\n");
    return 2;
  }
  const std::string cli = argv[1];

  criterion_kernel_identity();
  criterion_companion_integral();
  criterion_classical_sharpness();
  criterion_first_moment_fixture();
  criterion_reductions();
  criterion_moment_identities();
  criterion_two_constructions();
  criterion_domination_corpus();
  criterion_convexity_checker();
  criterion_cli(cli);

  if (g_failed == 0) {
    std::printf("all 10 acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria FAILED\n", g_failed);
  return 1;
}
