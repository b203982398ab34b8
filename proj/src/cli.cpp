#include "adjfilter/cli.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "adjfilter/error.hpp"
#include "adjfilter/report.hpp"
#include "adjfilter/verify.hpp"

namespace adjfilter {

namespace {

struct Job {
  Family family;
  int rank;
};

bool is_input_error(ErrorCode c) {
  return c == ErrorCode::BadPrime || c == ErrorCode::UnsupportedRank || c == ErrorCode::UnsupportedFamily ||
         c == ErrorCode::InvalidArgument;
}

// Runs fn(i) for i < n on up to job_threads() workers; the first exception
// (in job order) is rethrown after all jobs finish.
template <class Fn>
void parallel_for(std::size_t n, Fn fn) {
  std::vector<std::exception_ptr> errors(n);
  auto guarded = [&](std::size_t i) {
    try {
      fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const unsigned workers = std::min<std::size_t>(job_threads(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) guarded(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next++) < n;) guarded(i);
      });
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<Job> expand_jobs(const JobSpec& spec) {
  require_odd_prime(spec.prime);
  std::vector<Job> jobs;
  for (Family f : spec.families) {
    int lo = spec.rank_lo, hi = spec.rank_hi;
    if (f == Family::G2) {
      if (lo > 2 || hi < 2) throw Error(ErrorCode::UnsupportedRank, "G2 has rank 2");
      lo = hi = 2;
      if (spec.prime < 5) throw Error(ErrorCode::BadPrime, "G2 needs p >= 5");
    }
    for (int d = lo; d <= hi; ++d) {
      const RootSystem sys(f, d);
      if (sys.num_positive() > kMaxRoots)
        throw Error(ErrorCode::UnsupportedRank, to_string(f) + std::to_string(d) + ": more than " +
                                                    std::to_string(kMaxRoots) + " positive roots");
      jobs.push_back({f, d});
    }
  }
  return jobs;
}

nlohmann::json report_json(const InstanceReport& rep) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& o : rep.outcomes) {
    const char* st = o.status == CheckStatus::Pass ? "pass" : o.status == CheckStatus::Fail ? "fail" : "skipped";
    checks.push_back({{"check", o.check}, {"status", st}, {"detail", o.detail}});
  }
  return {{"passed", !rep.failed()}, {"checks", checks}};
}

struct JobOutput {
  std::string text;
  nlohmann::json json;
  bool verify_failed = false;
};

struct Options {
  std::vector<std::string> families;
  std::string rank;
  std::string ranks;
  unsigned long long prime = 3;
  std::string format;
  bool oracle = false;
  std::size_t cap = GroupOracle::kDefaultCap;
  std::string out;
};

void add_job_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--family", o.families, "A, B, C, D or G2; repeat or separate with commas")->delimiter(',');
  cmd->add_option("--rank", o.rank, "single rank");
  cmd->add_option("--ranks", o.ranks, "inclusive range such as 2..8");
  cmd->add_option("--prime", o.prime, "odd prime");
  cmd->add_option("--out", o.out, "write to FILE instead of stdout");
}

JobSpec make_spec(const Options& o, OutputFormat default_format) {
  JobSpec spec;
  for (const auto& f : o.families) spec.families.push_back(parse_family(f));
  if (spec.families.empty()) throw Error(ErrorCode::InvalidArgument, "--family is required");
  if (!o.rank.empty() && !o.ranks.empty()) throw Error(ErrorCode::InvalidArgument, "give --rank or --ranks, not both");
  const std::string r = o.rank.empty() ? o.ranks : o.rank;
  if (r.empty()) {
    bool all_g2 = true;
    for (Family f : spec.families) all_g2 = all_g2 && f == Family::G2;
    if (!all_g2) throw Error(ErrorCode::InvalidArgument, "--rank or --ranks is required");
    spec.rank_lo = spec.rank_hi = 2;
  } else {
    std::tie(spec.rank_lo, spec.rank_hi) = parse_rank_range(r);
  }
  spec.prime = o.prime;
  spec.oracle = o.oracle;
  spec.format = default_format;
  if (o.format == "json") spec.format = OutputFormat::Json;
  else if (o.format == "csv") spec.format = OutputFormat::Csv;
  else if (o.format == "text") spec.format = OutputFormat::Text;
  else if (!o.format.empty()) throw Error(ErrorCode::InvalidArgument, "unknown format '" + o.format + "'");
  return spec;
}

int emit(const std::string& body, const std::string& path, std::ostream& out, std::ostream& err) {
  if (path.empty()) {
    out << body;
    return 0;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    err << "InvalidArgument: cannot open " << path << '\n';
    return 2;
  }
  f << body;
  return 0;
}

int cmd_compute(const Options& o, std::ostream& out, std::ostream& err) {
  const JobSpec spec = make_spec(o, OutputFormat::Json);
  const auto jobs = expand_jobs(spec);
  const auto p = static_cast<Residue>(spec.prime);
  std::vector<JobOutput> results(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    const RootSystem sys(jobs[i].family, jobs[i].rank);
    const AlphaSeries a = stable_adjoint_series(sys, p);
    JobOutput& r = results[i];
    std::optional<InstanceReport> rep;
    if (spec.oracle) {
      rep = verify_system(sys, p, o.cap);
      r.verify_failed = rep->failed();
    }
    switch (spec.format) {
      case OutputFormat::Json:
        r.json = alpha_series_json(sys, a);
        if (rep) r.json["oracle"] = report_json(*rep);
        break;
      case OutputFormat::Csv:
        r.text = series_csv(sys, a, i == 0);
        break;
      case OutputFormat::Text: {
        r.text = series_text(sys, a);
        if (rep) {
          std::ostringstream os;
          print_reports({*rep}, os);
          r.text += os.str();
        }
        break;
      }
    }
  });
  std::string body;
  bool failed = false;
  if (spec.format == OutputFormat::Json) {
    nlohmann::json doc;
    if (results.size() == 1) {
      doc = results.front().json;
    } else {
      doc = nlohmann::json::array();
      for (const auto& r : results) doc.push_back(r.json);
    }
    body = doc.dump(2) + "\n";
  }
  for (const auto& r : results) {
    body += r.text;
    failed = failed || r.verify_failed;
  }
  if (int rc = emit(body, o.out, out, err)) return rc;
  if (failed) err << "oracle verification failed\n";
  return failed ? 1 : 0;
}

int cmd_compare(const Options& o, std::ostream& out, std::ostream& err) {
  const JobSpec spec = make_spec(o, OutputFormat::Csv);
  if (spec.format == OutputFormat::Text) throw Error(ErrorCode::InvalidArgument, "compare writes csv or json");
  const auto jobs = expand_jobs(spec);
  const auto p = static_cast<Residue>(spec.prime);
  std::vector<ComparisonRow> rows(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    const RootSystem sys(jobs[i].family, jobs[i].rank);
    rows[i] = ComparisonRow::from_series(stable_adjoint_series(sys, p));
  });
  std::string body;
  if (spec.format == OutputFormat::Csv) {
    body = std::string(kComparisonHeader) + "\n";
    for (const auto& r : rows) body += r.csv() + "\n";
  } else {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& r : rows)
      doc.push_back({{"family", r.family},
                     {"rank", r.rank},
                     {"prime", r.prime},
                     {"lcs_length", r.lcs_length},
                     {"alpha_length", r.alpha_length},
                     {"grading_dim", r.grading_dim},
                     {"histogram", format_histogram(r.histogram)}});
    body = doc.dump(2) + "\n";
  }
  return emit(body, o.out, out, err);
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<VerifyInstance> insts;
  if (o.families.empty()) {
    insts = default_verify_instances();
  } else {
    const JobSpec spec = make_spec(o, OutputFormat::Text);
    for (const auto& j : expand_jobs(spec)) insts.push_back({j.family, j.rank, static_cast<Residue>(spec.prime)});
  }
  std::vector<InstanceReport> reports(insts.size());
  parallel_for(insts.size(), [&](std::size_t i) { reports[i] = verify_instance(insts[i], o.cap); });
  std::ostringstream os;
  const int rc = print_reports(reports, os);
  if (int e = emit(os.str(), o.out, out, err)) return e;
  return rc;
}

}  // namespace

std::pair<int, int> parse_rank_range(const std::string& text) {
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw Error(ErrorCode::InvalidArgument, "bad rank '" + text + "'");
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int v = to_int(text);
    return {v, v};
  }
  const int lo = to_int(text.substr(0, dots));
  const int hi = to_int(text.substr(dots + 2));
  if (lo > hi) throw Error(ErrorCode::InvalidArgument, "empty rank range '" + text + "'");
  return {lo, hi};
}

unsigned job_threads() {
  if (const char* env = std::getenv("ADJFILTER_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stable adjoint series of unipotent Chevalley groups", "adjfilter"};
  app.require_subcommand(1);
  Options o;

  auto* compute = app.add_subcommand("compute", "stable adjoint series per (family, rank)");
  add_job_options(compute, o);
  compute->add_option("--format", o.format, "json, csv or text");
  compute->add_flag("--oracle", o.oracle, "also run the brute-force cross-checks");
  compute->add_option("--cap", o.cap, "largest group to enumerate");

  auto* compare = app.add_subcommand("compare", "lower central vs adjoint series lengths");
  add_job_options(compare, o);
  compare->add_option("--format", o.format, "csv or json");

  auto* verify = app.add_subcommand("verify", "oracle and invariant suites");
  add_job_options(verify, o);
  verify->add_option("--cap", o.cap, "largest group to enumerate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*compute) return cmd_compute(o, out, err);
    if (*compare) return cmd_compare(o, out, err);
    return cmd_verify(o, out, err);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return is_input_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace adjfilter
