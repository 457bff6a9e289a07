// Copyright the numrad authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>
#include "numrad/parallel.hpp"
#include "numrad/radius.hpp"
#include "numrad/random.hpp"

// Benchmark protocol: one seeded matrix per (n, field); per method one
// untimed warmup, then `trials` timed runs averaged, or a single timed run
// when it exceeds the time cap. Timed runs are executed one at a time with
// worker parallelism capped at one thread.

namespace numrad
{

struct BenchConfig
{
  std::vector<Index> sizes;
  std::vector<Field> fields{Field::Real};
  std::vector<Method> methods;
  int trials = 5;
  double trial_time_cap_seconds = 180.0;
  std::uint64_t seed = 0;
  std::string output_dir;
  Index sdp_size_cap = 50;
  RadiusOptions method_options;
};

enum class BenchStatus
{
  Ok,
  SkippedSizeCap,
  Failed
};

inline std::string_view to_string(BenchStatus s)
{
  switch (s)
  {
  case BenchStatus::Ok:
    return "ok";
  case BenchStatus::SkippedSizeCap:
    return "skipped_size_cap";
  case BenchStatus::Failed:
    return "failed";
  }
  return "failed";
}

struct BenchRecord
{
  Index n = 0;
  Field field = Field::Real;
  Method method = Method::LSO;
  double radius_value = 0.0;
  double theta_star = 0.0;
  double wall_seconds = 0.0;  // average over trials_used timed runs
  int trials_used = 0;
  BenchStatus status = BenchStatus::Failed;
  std::string message;  // error text for failed records
};

struct DiscrepancyCell
{
  Index n = 0;
  Field field = Field::Real;
  Method method_a = Method::LSO;
  Method method_b = Method::LSO;
  double value = 0.0;
};

inline void validate(const BenchConfig &config)
{
  if (config.sizes.empty() || config.methods.empty() || config.fields.empty())
  {
    throw Error("benchmark needs at least one size, field and method");
  }
  for (Index n : config.sizes)
  {
    if (n < 1)
    {
      throw Error("benchmark sizes must be >= 1, got " + std::to_string(n));
    }
  }
  if (config.trials < 1)
  {
    throw Error("benchmark trials must be >= 1");
  }
}

/// |r1 - r2| / max(r1, r2), zero when both vanish.
inline double relative_discrepancy(double r1, double r2)
{
  const double scale = std::max(r1, r2);
  if (scale == 0.0)
  {
    return 0.0;
  }
  return std::abs(r1 - r2) / scale;
}

namespace detail
{

inline BenchRecord bench_one(const Matrix &a, Field field, Method method,
                             const BenchConfig &config)
{
  BenchRecord rec;
  rec.n = a.n();
  rec.field = field;
  rec.method = method;
  if (method == Method::SDP && a.n() > config.sdp_size_cap)
  {
    rec.status = BenchStatus::SkippedSizeCap;
    return rec;
  }
  try
  {
    ThreadCap serial(1);
    RadiusOptions opts = config.method_options;
    opts.sdp.size_limit = config.sdp_size_cap;
    const RadiusResult warm = compute_radius(a, method, opts);
    rec.radius_value = warm.value;
    rec.theta_star = warm.theta_star;

    double total = 0.0;
    detail::Stopwatch first;
    compute_radius(a, method, opts);
    const double first_time = first.seconds();
    total += first_time;
    rec.trials_used = 1;
    if (first_time <= config.trial_time_cap_seconds)
    {
      for (int k = 1; k < config.trials; ++k)
      {
        detail::Stopwatch clock;
        compute_radius(a, method, opts);
        total += clock.seconds();
      }
      rec.trials_used = config.trials;
    }
    rec.wall_seconds = std::max(total / rec.trials_used, std::numeric_limits<double>::min());
    rec.status = BenchStatus::Ok;
  }
  catch (const std::exception &e)
  {
    rec.status = BenchStatus::Failed;
    rec.message = e.what();
  }
  return rec;
}

}  // namespace detail

/// Records in field, size, method order. `progress`, when set, is called
/// after each record.
inline std::vector<BenchRecord>
run_benchmark(const BenchConfig &config,
              const std::function<void(const BenchRecord &)> &progress = {})
{
  validate(config);
  std::vector<BenchRecord> records;
  for (Field field : config.fields)
  {
    for (Index n : config.sizes)
    {
      const Matrix a = gen_random_matrix(n, field, config.seed);
      for (Method method : config.methods)
      {
        records.push_back(detail::bench_one(a, field, method, config));
        if (progress)
        {
          progress(records.back());
        }
      }
    }
  }
  return records;
}

/// One cell per unordered pair of ok records sharing (n, field), pairs in
/// the order of the records.
inline std::vector<DiscrepancyCell> discrepancy_matrix(const std::vector<BenchRecord> &records)
{
  std::vector<DiscrepancyCell> cells;
  for (std::size_t i = 0; i < records.size(); ++i)
  {
    const BenchRecord &r1 = records[i];
    if (r1.status != BenchStatus::Ok)
    {
      continue;
    }
    for (std::size_t j = i + 1; j < records.size(); ++j)
    {
      const BenchRecord &r2 = records[j];
      if (r2.status != BenchStatus::Ok || r2.n != r1.n || r2.field != r1.field ||
          r2.method == r1.method)
      {
        continue;
      }
      cells.push_back({r1.n, r1.field, r1.method, r2.method,
                       relative_discrepancy(r1.radius_value, r2.radius_value)});
    }
  }
  return cells;
}

namespace detail
{

inline std::string format_sig(double x, int digits)
{
  std::ostringstream s;
  s.precision(digits);
  s << x;
  return s.str();
}

inline std::ofstream open_report(const std::filesystem::path &path)
{
  std::ofstream out(path);
  if (!out)
  {
    throw IoError("cannot open file for writing", path.string());
  }
  return out;
}

inline void close_report(std::ofstream &out, const std::filesystem::path &path)
{
  out.close();
  if (!out)
  {
    throw IoError("write failed", path.string());
  }
}

inline std::string pair_label(Method a, Method b)
{
  return std::string(to_string(a)) + "-" + std::string(to_string(b));
}

}  // namespace detail

/// timings.csv, discrepancies.csv and report.md in output_dir.
inline void emit_reports(const std::vector<BenchRecord> &records,
                         const std::vector<DiscrepancyCell> &cells,
                         const std::string &output_dir)
{
  namespace fs = std::filesystem;
  const fs::path dir(output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
  {
    throw IoError("cannot create output directory: " + ec.message(), output_dir);
  }

  {
    const fs::path path = dir / "timings.csv";
    std::ofstream out = detail::open_report(path);
    out << "n,field,method,wall_seconds,trials_used,status,radius_value,theta_star\n";
    for (const BenchRecord &r : records)
    {
      out << r.n << ',' << to_string(r.field) << ',' << to_string(r.method) << ','
          << detail::format_sig(r.wall_seconds, 17) << ',' << r.trials_used << ','
          << to_string(r.status) << ',';
      if (r.status == BenchStatus::Ok)
      {
        out << detail::format_sig(r.radius_value, 17) << ','
            << detail::format_sig(r.theta_star, 17);
      }
      else
      {
        out << ',';
      }
      out << '\n';
    }
    detail::close_report(out, path);
  }

  {
    const fs::path path = dir / "discrepancies.csv";
    std::ofstream out = detail::open_report(path);
    out << "n,field,method_a,method_b,rel_discrepancy\n";
    for (const DiscrepancyCell &c : cells)
    {
      out << c.n << ',' << to_string(c.field) << ',' << to_string(c.method_a) << ','
          << to_string(c.method_b) << ',' << detail::format_sig(c.value, 17) << '\n';
    }
    detail::close_report(out, path);
  }

  const fs::path path = dir / "report.md";
  std::ofstream out = detail::open_report(path);
  out << "# numrad benchmark\n";
  for (Field field : {Field::Real, Field::Complex})
  {
    std::vector<Index> sizes;
    std::vector<Method> methods;
    std::vector<std::pair<Method, Method>> pairs;
    for (const BenchRecord &r : records)
    {
      if (r.field != field)
      {
        continue;
      }
      if (std::find(sizes.begin(), sizes.end(), r.n) == sizes.end())
      {
        sizes.push_back(r.n);
      }
      if (std::find(methods.begin(), methods.end(), r.method) == methods.end())
      {
        methods.push_back(r.method);
      }
    }
    if (sizes.empty())
    {
      continue;
    }
    for (const DiscrepancyCell &c : cells)
    {
      const auto p = std::make_pair(c.method_a, c.method_b);
      if (c.field == field && std::find(pairs.begin(), pairs.end(), p) == pairs.end())
      {
        pairs.push_back(p);
      }
    }

    out << "\n## " << to_string(field) << "\n\n### Wall time (seconds)\n\n| n |";
    for (Method m : methods)
    {
      out << ' ' << to_string(m) << " |";
    }
    out << "\n|---|";
    for (std::size_t k = 0; k < methods.size(); ++k)
    {
      out << "---|";
    }
    out << '\n';
    for (Index n : sizes)
    {
      out << "| " << n << " |";
      for (Method m : methods)
      {
        std::string cell = "-";
        for (const BenchRecord &r : records)
        {
          if (r.field == field && r.n == n && r.method == m)
          {
            cell = r.status == BenchStatus::Ok ? detail::format_sig(r.wall_seconds, 3)
                                               : std::string(to_string(r.status));
          }
        }
        out << ' ' << cell << " |";
      }
      out << '\n';
    }

    out << "\n### Relative discrepancy\n\n";
    if (pairs.empty())
    {
      out << "No method pairs.\n";
      continue;
    }
    out << "| n |";
    for (const auto &[a, b] : pairs)
    {
      out << ' ' << detail::pair_label(a, b) << " |";
    }
    out << "\n|---|";
    for (std::size_t k = 0; k < pairs.size(); ++k)
    {
      out << "---|";
    }
    out << '\n';
    for (Index n : sizes)
    {
      out << "| " << n << " |";
      for (const auto &[a, b] : pairs)
      {
        std::string cell = "-";
        for (const DiscrepancyCell &c : cells)
        {
          if (c.field == field && c.n == n && c.method_a == a && c.method_b == b)
          {
            cell = detail::format_sig(c.value, 3);
          }
        }
        out << ' ' << cell << " |";
      }
      out << '\n';
    }
  }
  detail::close_report(out, path);
}

}  // namespace numrad
