#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "shankslab/analytic.hpp"

namespace shankslab {

enum class ZeroSource { computed, imported };

// One ordinate gamma of a zero rho = 1/2 + i gamma.
struct Zero {
  std::size_t index = 0;  // 1-based
  double gamma = 0.0;
  // |Z(gamma)| at the accepted point; absent for imported zeros until
  // verify_table measures it.
  std::optional<double> residual;
  ZeroSource source = ZeroSource::computed;
};

// The first K ordinates in increasing order. t_max is the upper end of the
// range over which the table is known to be complete.
struct ZeroTable {
  std::vector<Zero> entries;
  double t_max = 0.0;

  std::size_t size() const noexcept { return entries.size(); }
  bool empty() const noexcept { return entries.empty(); }
  // Number of entries with gamma <= T.
  std::size_t count_upto(double T) const;
  std::vector<double> gammas() const;
};

// Smooth Riemann-von Mangoldt count theta(T)/pi + 1, T >= 10.
double count_zeros_rvm(double T);

// Gram point g_k, theta(g_k) = k pi, for k >= 0.
double gram_point(std::int64_t k);

// Bracketing root refinement for a continuous f with f(a) f(b) < 0:
// Brent's combination of bisection, secant and inverse quadratic steps.
// The returned bracket always has opposite computed signs at its ends.
struct RootBracket {
  double root;      // the endpoint with the smaller |f|
  double f_root;
  double lo;
  double hi;
  int evaluations;
};
template <class F>
RootBracket refine_root(F&& f, double a, double b, double fa, double fb, double width);

struct FindOptions {
  unsigned threads = 0;  // 0 = all hardware threads
  // Extra uniformly spaced samples of Z inside each Gram interval during the
  // initial scan. Changing it changes the brackets but not the zeros.
  int scan_points_per_gram = 1;
  // Accepted zeros satisfy |Z(gamma)| <= residual_tolerance inside a bracket
  // no wider than bracket_width.
  double residual_tolerance = 1e-8;
  double bracket_width = 1e-10;
};

// First K ordinates via Gram-block sign-change scanning with refinement.
// Throws MissedZeroError when a Gram block cannot be reconciled with its
// expected zero count.
ZeroTable find_zeros(std::size_t K, const EvalParams& params = {}, const FindOptions& options = {});

struct VerificationReport {
  bool passed = true;
  // "index", "monotonicity", "residual", "range", "count" or empty.
  std::string failure_kind;
  std::size_t failure_index = 0;  // table position (1-based) or Gram index
  double failure_height = 0.0;
  std::string message;
  std::size_t checkpoints_checked = 0;
  std::size_t checkpoints_skipped = 0;
};

struct VerifyOptions {
  unsigned threads = 0;
  double residual_tolerance = 1e-8;
  // Distance from the nearest ordinate below which a checkpoint is skipped.
  double ambiguity_margin = 0.05;
  // Gram-index spacing of the regular checkpoint ladder (a geometric ladder
  // 1, 2, 5, 10, 20, ... is always included).
  std::int64_t checkpoint_stride = 25;
};

// Checks ordering, residuals (recomputing |Z| for imported entries) and the
// zero count against round(theta(g)/pi + 1) at unambiguous Gram-point
// checkpoints g <= t_max. Failures are reported, not thrown.
VerificationReport verify_table(const ZeroTable& table, const EvalParams& params = {},
                                const VerifyOptions& options = {});

enum class ZeroFormat { plain_text, binary };

// "plain-text" / "binary"; throws DomainError otherwise.
ZeroFormat parse_zero_format(const std::string& name);
std::string to_string(ZeroFormat format);

// Binary: "ZTBL", version byte 0x01, u64 count, f64 t_max, count f64
// ordinates, all little-endian. Plain text: one ordinate per line, '#' lines
// are comments; the exporter records t_max in a "# t_max=" comment.
void export_zeros(const ZeroTable& table, const std::filesystem::path& path, ZeroFormat format);

// Throws IoError (with byte offset for binary problems) or ParseError (with
// line number for text problems).
ZeroTable import_zeros(const std::filesystem::path& path, ZeroFormat format);

}  // namespace shankslab

#include "shankslab/detail/refine_root.hpp"
