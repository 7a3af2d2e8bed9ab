#pragma once
// Symbolic moments of subcube counts X_r in a random subset of {0,1}^n, as polynomials in (n, 2^n).

#include <cstdint>
#include <string>
#include <vector>

#include "subcubes/cubes.hpp"
#include "subcubes/errors.hpp"
#include "subcubes/exactalg.hpp"

namespace subcubes {

/// Mixed moment E[X_{r_1} ... X_{r_k}] where each point is kept independently with probability p.
struct MomentSpec {
    std::vector<unsigned> rs;
    Rational p = Rational(1, 2);

    /// Throws std::invalid_argument unless 1 <= k <= 8 and 0 < p < 1.
    void validate() const;
};

struct EngineOptions {
    KernelMode mode = KernelMode::orbits;
    bool parallel = true;
    int threads = 0;                 // <= 0: OpenMP default
    std::uint64_t max_kernels = 0;   // kernel representatives per call; 0 = unlimited
    double max_seconds = 0;          // wall-clock budget per call; 0 = unlimited
};

struct EngineStats {
    std::uint64_t kernels = 0;     // representatives visited
    Count multiplicity = 0;        // kernels they stand for
};

/// Σ_a binom(n,a) Σ_(K,w) w Σ_P (q/2^a)_(m(P)) p^v(K,P).
BiPoly mixed_moment(const MomentSpec& spec, const EngineOptions& options = {}, EngineStats* stats = nullptr);

/// p^(2^r) binom(n,r) 2^(n-r).
BiPoly mean_closed(unsigned r, const Rational& p = Rational(1, 2));

/// Closed-form second moment at p = 1/2 (r <= 30).
BiPoly second_moment_closed(unsigned r);

/// Closed-form variance at p = 1/2 (r <= 30): Σ_i (n)_(2r-i) 2^(n-i) (2^(2^i) - 1) / (i! (r-i)!^2 2^(2^(r+1))).
BiPoly variance_closed(unsigned r);

/// E[(X_r - mu)^k] by binomial expansion of the pure moments.
BiPoly central_moment(unsigned r, unsigned k, const Rational& p = Rational(1, 2), const EngineOptions& options = {});

/// Pure moments E[X_r^j] for j = 1..k.
std::vector<BiPoly> pure_moments(unsigned r, unsigned k, const Rational& p = Rational(1, 2),
                                 const EngineOptions& options = {});

}  // namespace subcubes
