// Copyright the numrad authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

// numrad compute --input A.mtx --method lso|cheb|sdp|grid [--tol X]
// numrad bench --sizes 10,20 --field real|complex|both --methods lso,cheb
//              --trials 5 --seed N --out DIR

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>
#include <CLI11.hpp>
#include <json.hpp>
#include "numrad/numrad.hpp"

namespace
{

std::vector<std::string> split_list(const std::string &s)
{
  std::vector<std::string> out;
  std::string item;
  for (char ch : s + ",")
  {
    if (ch == ',')
    {
      if (!item.empty())
      {
        out.push_back(item);
      }
      item.clear();
    }
    else if (ch != ' ')
    {
      item.push_back(ch);
    }
  }
  return out;
}

numrad::Method method_or_throw(const std::string &s)
{
  if (auto m = numrad::parse_method(s))
  {
    return *m;
  }
  throw CLI::ValidationError("--method", "unknown method '" + s + "'");
}

int run_compute(const std::string &input, const std::string &method_name,
                std::optional<double> tol, const std::string &sdp_trace)
{
  const numrad::Method method = method_or_throw(method_name);
  const numrad::Matrix a = numrad::read_matrix_market(input);
  numrad::RadiusOptions opts;
  opts.tol = tol;
  std::ofstream trace;
  if (!sdp_trace.empty())
  {
    trace.open(sdp_trace);
    if (!trace)
    {
      throw numrad::IoError("cannot open trace file", sdp_trace);
    }
    opts.sdp.trace = &trace;
  }
  const numrad::RadiusResult r = numrad::compute_radius(a, method, opts);
  nlohmann::ordered_json out;
  out["method"] = numrad::to_string(r.method);
  out["n"] = a.n();
  out["value"] = r.value;
  out["theta_star"] = r.theta_star;
  out["time_seconds"] = r.wall_seconds;
  out["iterations"] = r.iterations;
  out["h_evals"] = r.h_evals;
  out["degenerate"] = r.degenerate;
  std::cout << out.dump() << '\n';
  return 0;
}

struct BenchArgs
{
  std::string sizes = "10,20,50";
  std::string field = "both";
  std::string methods = "lso,cheb,sdp,grid";
  int trials = 5;
  std::uint64_t seed = 0;
  std::string out = "bench_out";
  double time_cap = 180.0;
  long sdp_cap = 50;
};

int run_bench(const BenchArgs &args)
{
  numrad::BenchConfig config;
  for (const std::string &s : split_list(args.sizes))
  {
    std::size_t used = 0;
    long n = 0;
    try
    {
      n = std::stol(s, &used);
    }
    catch (const std::exception &)
    {
      used = 0;
    }
    if (used != s.size() || n < 1)
    {
      throw CLI::ValidationError("--sizes", "bad size '" + s + "'");
    }
    config.sizes.push_back(n);
  }
  if (args.field == "both")
  {
    config.fields = {numrad::Field::Real, numrad::Field::Complex};
  }
  else if (auto f = numrad::parse_field(args.field))
  {
    config.fields = {*f};
  }
  else
  {
    throw CLI::ValidationError("--field", "expected real, complex or both");
  }
  for (const std::string &s : split_list(args.methods))
  {
    config.methods.push_back(method_or_throw(s));
  }
  config.trials = args.trials;
  config.seed = args.seed;
  config.output_dir = args.out;
  config.trial_time_cap_seconds = args.time_cap;
  config.sdp_size_cap = args.sdp_cap;

  bool failed = false;
  const auto records = numrad::run_benchmark(
      config,
      [&failed](const numrad::BenchRecord &r)
      {
        std::cerr << "n=" << r.n << ' ' << numrad::to_string(r.field) << ' '
                  << numrad::to_string(r.method) << ' ' << numrad::to_string(r.status);
        if (r.status == numrad::BenchStatus::Ok)
        {
          std::cerr << " r=" << r.radius_value << " t=" << r.wall_seconds << "s";
        }
        else if (r.status == numrad::BenchStatus::Failed)
        {
          std::cerr << ": " << r.message;
          failed = true;
        }
        std::cerr << '\n';
      });
  numrad::emit_reports(records, numrad::discrepancy_matrix(records), config.output_dir);
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Numerical radius of dense matrices"};
  app.require_subcommand(1);

  auto *compute = app.add_subcommand("compute", "Compute r(A) for a Matrix Market file");
  std::string input;
  std::string method = "lso";
  std::optional<double> tol;
  std::string sdp_trace;
  compute->add_option("--input", input, "Matrix Market file")->required();
  compute->add_option("--method", method, "lso, cheb, sdp or grid")->capture_default_str();
  compute->add_option("--tol", tol, "Method tolerance");
  compute->add_option("--sdp-trace", sdp_trace, "Write the SDP Newton trace as CSV");

  auto *bench = app.add_subcommand("bench", "Run the benchmark on seeded random matrices");
  BenchArgs bargs;
  bench->add_option("--sizes", bargs.sizes, "Comma-separated sizes")->capture_default_str();
  bench->add_option("--field", bargs.field, "real, complex or both")->capture_default_str();
  bench->add_option("--methods", bargs.methods, "Comma-separated methods")->capture_default_str();
  bench->add_option("--trials", bargs.trials, "Timed trials per method")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--seed", bargs.seed, "Random seed")->capture_default_str();
  bench->add_option("--out", bargs.out, "Output directory")->capture_default_str();
  bench->add_option("--time-cap", bargs.time_cap, "Seconds above which one trial is used")
      ->capture_default_str();
  bench->add_option("--sdp-cap", bargs.sdp_cap, "Largest n given to the SDP solver")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try
  {
    if (compute->parsed())
    {
      return run_compute(input, method, tol, sdp_trace);
    }
    return run_bench(bargs);
  }
  catch (const CLI::Error &e)
  {
    return app.exit(e);
  }
  catch (const std::exception &e)
  {
    std::cerr << "numrad: " << e.what() << '\n';
    return 1;
  }
}
