#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "algocert/algorithm.hpp"
#include "algocert/certify.hpp"
#include "algocert/sdp.hpp"

namespace algocert {

/// Named algorithm+tuning combinations used throughout the sweeps:
/// "gd", "hb", "fg" at their quadratic-optimal tunings, "fgstar" for the
/// estimating-sequences tuning of fg, and "tmm".
AlgorithmRealization named_algorithm(const std::string& name, const FunctionClass& fc);

/// Closed-form reference rate for a named combination, NaN if none is known.
double analytic_rate(const std::string& name, const FunctionClass& fc);

struct RateSweepConfig {
  std::vector<double> kappas;
  std::vector<std::string> algorithms;  // named combinations above
  int ell = 1;
  double bisect_tol = 1e-4;
  SolveSettings solver;
  int jobs = 1;
};

struct RateSweepRow {
  double kappa = 1.0;
  std::string algorithm;
  double certified_rate = 1.0;  // 1.0 encodes "no certificate"
  double oracle_rate = 0.0;
  double analytic_rate = 0.0;   // NaN when no closed form exists
  std::string flag;             // "certified", "no-certificate", or "error: ..."
};

/// One row per (kappa, algorithm), ordered as the config lists them
/// regardless of worker completion order. Per-row failures are recorded in
/// the flag column and do not abort the sweep.
std::vector<RateSweepRow> run_rate_sweep(const RateSweepConfig& config);

void write_rate_sweep_csv(std::ostream& os, const std::vector<RateSweepRow>& rows);

struct TradeoffConfig {
  FunctionClass fc{1.0, 8.0};
  int gd_grid = 24;        // alpha samples in (0, 2/L]
  bool include_presets = true;
  int ell_rate = 1;
  int ell_sens = 6;
  double sigma = 1.0;
  int d = 1;
  double bisect_tol = 1e-4;
  SolveSettings solver;
  int jobs = 1;
};

struct TradeoffRow {
  std::string algorithm;
  std::string tuning;           // e.g. "alpha=0.125" or "quadratic-optimal"
  double alpha = 0.0;
  double beta = 0.0;            // NaN when the method has no momentum term
  double certified_rate = 1.0;  // 1.0 encodes "no certificate"
  double certified_gamma = 0.0; // NaN encodes "no certificate"
  std::string flag;
};

std::vector<TradeoffRow> run_tradeoff_sweep(const TradeoffConfig& config);

void write_tradeoff_csv(std::ostream& os, const std::vector<TradeoffRow>& rows);

/// Companion gnuplot scripts reading the corresponding CSV.
std::string rate_sweep_gnuplot_script(const std::string& csv_path);
std::string tradeoff_gnuplot_script(const std::string& csv_path);

}  // namespace algocert
