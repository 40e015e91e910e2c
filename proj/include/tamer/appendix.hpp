#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tamer {

inline constexpr unsigned kMaxAppendixDegree = 40;

/// A = F_p[u,v], s = u, a = v (or a = 0 for the degenerate probe), x = (0,0).
struct Family1Instance {
    std::uint64_t p = 2;
    unsigned degree = 12;  ///< truncation degree B
    bool zero_probe = false;
    std::uint64_t seed = 1;
};

/// p odd, s = u, b = v (or b = 0 for the probe), a = sqrt(1 + s b^2) to degree B.
struct Family2Instance {
    std::uint64_t p = 3;
    unsigned degree = 12;
    bool zero_probe = false;
    std::uint64_t seed = 1;
};

struct AppendixCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct AppendixReport {
    int family = 1;
    std::uint64_t p = 0;
    unsigned degree = 0;
    /// Sign and chart convention used for the cobord map.
    std::string convention;
    /// Degree range in which the non-triviality certificate is valid.
    std::string scope;
    std::vector<AppendixCheck> checks;
    /// Family 2: the truncated square root a.
    std::string square_root;
    /// Whether the class is nontrivial in the certified range.
    bool nontrivial = false;
    bool pass = false;
};

/// Throws InputError for p not prime or B > kMaxAppendixDegree.
AppendixReport family1_verify(const Family1Instance& inst);
/// Throws InputError for p = 2, p not prime or B > kMaxAppendixDegree.
AppendixReport family2_verify(const Family2Instance& inst);

}  // namespace tamer
