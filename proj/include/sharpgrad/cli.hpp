#pragma once

// Command-line front end. `run` is the whole program minus process setup, so
// tests can drive it in-process and capture the output.

#include "sharpgrad/verify.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace sharpgrad::cli {

inline constexpr const char* kVersion = "1.0.0";

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (program name excluded) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Serializes with every floating-point number printed to 17 significant digits.
/// Non-finite numbers become null.
std::string dump_json(const nlohmann::ordered_json& j, int indent = 2);

nlohmann::ordered_json report_json(const verify::VerificationReport& r);

/// One row per witness and per check.
/// Columns: theorem_id,n,type,label,lhs,rhs,margin,passed
std::string report_csv(const std::vector<verify::VerificationReport>& reports);

struct BatteryOptions {
    std::vector<int> n_list{3, 4, 5};
    verify::SweepOptions sweep{};
    std::size_t mc_samples = 1'000'000;
    std::size_t pde_points = 100;
    std::size_t pairs = 100;
    std::size_t question_candidates = 5;
};

/// The full verification battery, in a fixed order.
std::vector<verify::VerificationReport> report_all(const BatteryOptions& opt);

} // namespace sharpgrad::cli
