#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "redlab/errors.hpp"

namespace redlab::arith {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i64 = std::int64_t;

inline u64 mul_mod(u64 a, u64 b, u64 m) { return u64(u128(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m);
u64 inv_mod(u64 a, u64 m);  // throws std::domain_error if gcd(a, m) != 1

// Deterministic Miller-Rabin, valid for the full 64-bit range.
bool is_prime(u64 n);

// Segmented sieve of Eratosthenes; ascending primes <= bound.
// bound < 2 yields an empty list.
std::vector<u64> sieve_primes(u64 bound);

// Ordered prime factorization of a positive integer.
struct Factorization {
    std::vector<std::pair<u64, unsigned>> prime_powers;  // ascending primes

    u64 value() const;
    unsigned valuation(u64 ell) const;
    bool empty() const { return prime_powers.empty(); }
    bool operator==(const Factorization&) const = default;
};

// Exponent of ell in n (n >= 1).
unsigned valuation(u64 n, u64 ell);

// Trial division up to trial_bound, then Brent-Pollard rho restarted with
// c = 1, 2, ... up to rho_restarts. Exceeding the budget raises BudgetError
// naming the unfactored cofactor.
struct FactorBudget {
    u64 trial_bound = 1'000'000;
    unsigned rho_restarts = 64;
    u64 rho_iterations = 1u << 22;
};

Factorization factorize_u64(u64 n, const FactorBudget& budget = {});

struct SignedFactorization {
    int sign = 1;  // +1 or -1
    Factorization magnitude;
};

// n must be nonzero.
SignedFactorization factorize(i64 n, const FactorBudget& budget = {});

// Residue-field context: a prime together with the factorization of p-1.
struct PrimeContext {
    u64 p = 0;
    Factorization p_minus_1;

    PrimeContext() = default;
    explicit PrimeContext(u64 prime, const FactorBudget& budget = {});
};

// Least o >= 1 with x^o = 1 mod p, by factor descent from p-1.
// x must be a unit mod p.
u64 multiplicative_order(u64 x, const PrimeContext& ctx);

// Given that x^multiple = 1 (mod p) and the factorization of multiple,
// strips prime factors to reach the exact order.
u64 order_from_multiple(u64 x, u64 multiple, const Factorization& f, u64 p);

}  // namespace redlab::arith
