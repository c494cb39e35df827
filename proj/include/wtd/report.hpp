#ifndef WTD_REPORT_HPP
#define WTD_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "wtd/errors.hpp"
#include "wtd/mip/model.hpp"

namespace wtd {

using mip::Rat;

/// Percentage rendered to two decimals, rounding half away from zero; the
/// arithmetic stays rational up to this point.
inline std::string format_pct(const Rat& value) {
    const long long num = value.numerator() * 100;
    const long long den = value.denominator();
    long long q = num / den;
    const long long rem = num % den;
    if (2 * (rem < 0 ? -rem : rem) >= den) q += num < 0 ? -1 : 1;
    const bool negative = q < 0;
    if (negative) q = -q;
    std::string out = std::to_string(q / 100) + ".";
    const long long frac = q % 100;
    if (frac < 10) out += "0";
    out += std::to_string(frac);
    return (negative ? "-" : "") + out;
}

struct Gaps {
    Rat optimality;  // 100 (w_B - LB) / w_B
    Rat primal;      // 100 (w_H - w_MIP) / w_MIP
};

inline Rat optimality_gap_exact(long long w_best, long long lower_bound) {
    if (w_best == 0) throw DivisionByZero("optimality gap with w_B = 0");
    return Rat(100 * (w_best - lower_bound), w_best);
}

inline Rat primal_gap_exact(long long w_heuristic, long long w_mip) {
    if (w_mip == 0) throw DivisionByZero("primal gap with w_MIP = 0");
    return Rat(100 * (w_heuristic - w_mip), w_mip);
}

inline Gaps compute_gaps(long long w_best, long long lower_bound, long long w_heuristic,
                         long long w_mip) {
    return {optimality_gap_exact(w_best, lower_bound), primal_gap_exact(w_heuristic, w_mip)};
}

/// One benchmark line; empty optionals render as blank CSV cells.
struct BenchRecord {
    std::string instance;
    std::string solver;
    std::uint64_t seed = 0;
    long long runtime_ms = 0;
    std::optional<long long> w_best;
    std::optional<long long> lower_bound;
    std::optional<Rat> optimality_gap;
    std::optional<Rat> primal_gap;
    std::uint64_t nodes = 0;
    std::string status;
};

inline const char* bench_csv_header() {
    return "instance,solver,seed,runtime_ms,w_B,LB,opt_gap,primal_gap,nodes,status";
}

inline std::string to_csv_row(const BenchRecord& r) {
    std::string out = r.instance + "," + r.solver + "," + std::to_string(r.seed) + "," +
                      std::to_string(r.runtime_ms) + ",";
    if (r.w_best) out += std::to_string(*r.w_best);
    out += ",";
    if (r.lower_bound) out += std::to_string(*r.lower_bound);
    out += ",";
    if (r.optimality_gap) out += format_pct(*r.optimality_gap);
    out += ",";
    if (r.primal_gap) out += format_pct(*r.primal_gap);
    out += ",";
    out += std::to_string(r.nodes) + "," + r.status;
    return out;
}

}  // namespace wtd

#endif
