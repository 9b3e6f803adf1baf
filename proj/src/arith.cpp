#include "redlab/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace redlab::arith {

u64 pow_mod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return r;
}

u64 inv_mod(u64 a, u64 m) {
    i64 t = 0, nt = 1;
    i64 r = i64(m), nr = i64(a % m);
    while (nr != 0) {
        i64 q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (r != 1) throw std::domain_error("inv_mod: not a unit");
    return t < 0 ? u64(t + i64(m)) : u64(t);
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<u64> sieve_primes(u64 bound) {
    std::vector<u64> primes;
    if (bound < 2) return primes;

    // base primes up to sqrt(bound)
    u64 root = u64(std::sqrt(double(bound)));
    while ((root + 1) * (root + 1) <= bound) ++root;
    std::vector<char> base(root + 1, 1);
    for (u64 i = 2; i * i <= root; ++i)
        if (base[i])
            for (u64 j = i * i; j <= root; j += i) base[j] = 0;
    std::vector<u64> small;
    for (u64 i = 2; i <= root; ++i)
        if (base[i]) small.push_back(i);

    // segment size chosen to sit in L1/L2 comfortably
    constexpr u64 kSegment = 1u << 16;
    std::vector<char> seg(kSegment);
    std::vector<u64> next(small.size());
    for (size_t i = 0; i < small.size(); ++i) {
        u64 p = small[i];
        next[i] = p * p;
    }

    for (u64 low = 2; low <= bound; low += kSegment) {
        u64 high = std::min(low + kSegment - 1, bound);
        std::fill(seg.begin(), seg.begin() + (high - low + 1), 1);
        for (size_t i = 0; i < small.size(); ++i) {
            u64 p = small[i];
            if (p * p > high) break;
            u64 j = next[i];
            if (j < low) j = ((low + p - 1) / p) * p;
            for (; j <= high; j += p) seg[j - low] = 0;
            next[i] = j;
        }
        for (u64 n = low; n <= high; ++n)
            if (seg[n - low]) primes.push_back(n);
    }
    return primes;
}

u64 Factorization::value() const {
    u64 v = 1;
    for (auto [p, e] : prime_powers)
        for (unsigned i = 0; i < e; ++i) v *= p;
    return v;
}

unsigned Factorization::valuation(u64 ell) const {
    for (auto [p, e] : prime_powers)
        if (p == ell) return e;
    return 0;
}

unsigned valuation(u64 n, u64 ell) {
    if (n == 0) throw std::domain_error("valuation of zero");
    unsigned v = 0;
    while (n % ell == 0) { n /= ell; ++v; }
    return v;
}

namespace {

u64 brent_rho(u64 n, u64 c, u64 max_iters) {
    // Brent's cycle-finding variant; returns a nontrivial factor or 0.
    u64 y = 2, r = 1, q = 1, g = 1, x = 0, ys = 0;
    u64 iters = 0;
    const u64 m = 128;
    do {
        x = y;
        for (u64 i = 0; i < r; ++i) y = (mul_mod(y, y, n) + c) % n;
        u64 k = 0;
        while (k < r && g == 1) {
            ys = y;
            u64 lim = std::min(m, r - k);
            for (u64 i = 0; i < lim; ++i) {
                y = (mul_mod(y, y, n) + c) % n;
                q = mul_mod(q, x > y ? x - y : y - x, n);
            }
            g = std::gcd(q, n);
            k += lim;
            iters += lim;
            if (iters > max_iters) return 0;
        }
        r <<= 1;
        if (iters > max_iters) return 0;
    } while (g == 1);
    if (g == n) {
        // backtrack
        do {
            ys = (mul_mod(ys, ys, n) + c) % n;
            g = std::gcd(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g == n ? 0 : g;
}

void factor_into(u64 n, std::vector<u64>& out, const FactorBudget& budget) {
    if (n == 1) return;
    if (is_prime(n)) { out.push_back(n); return; }
    u64 f = 0;
    for (unsigned c = 1; c <= budget.rho_restarts && f == 0; ++c)
        f = brent_rho(n, c, budget.rho_iterations);
    if (f == 0 || f == n)
        throw BudgetError("factorization budget exceeded at cofactor " + std::to_string(n), n);
    factor_into(f, out, budget);
    factor_into(n / f, out, budget);
}

}  // namespace

Factorization factorize_u64(u64 n, const FactorBudget& budget) {
    if (n == 0) throw std::domain_error("factorize: zero");
    Factorization f;
    std::vector<u64> primes;
    // fixed trial wheel over 2, 3 then 6k+-1 up to the trial bound
    for (u64 p : {2ull, 3ull}) {
        while (n % p == 0) { primes.push_back(p); n /= p; }
    }
    for (u64 p = 5; p <= budget.trial_bound && p * p <= n; p += 6) {
        for (u64 q : {p, p + 2}) {
            while (n % q == 0) { primes.push_back(q); n /= q; }
        }
    }
    if (n > 1) {
        if (u128(budget.trial_bound) * budget.trial_bound >= n) {
            primes.push_back(n);  // cofactor below trial square is prime
        } else {
            factor_into(n, primes, budget);
        }
    }
    std::sort(primes.begin(), primes.end());
    for (u64 p : primes) {
        if (!f.prime_powers.empty() && f.prime_powers.back().first == p)
            ++f.prime_powers.back().second;
        else
            f.prime_powers.push_back({p, 1});
    }
    return f;
}

SignedFactorization factorize(i64 n, const FactorBudget& budget) {
    if (n == 0) throw std::domain_error("factorize: zero");
    SignedFactorization sf;
    sf.sign = n < 0 ? -1 : 1;
    u64 mag = n < 0 ? u64(-(n + 1)) + 1 : u64(n);
    if (mag != 1) sf.magnitude = factorize_u64(mag, budget);
    return sf;
}

PrimeContext::PrimeContext(u64 prime, const FactorBudget& budget) : p(prime) {
    if (!is_prime(prime)) throw std::domain_error("PrimeContext: not a prime");
    if (prime > 2) p_minus_1 = factorize_u64(prime - 1, budget);
}

u64 multiplicative_order(u64 x, const PrimeContext& ctx) {
    x %= ctx.p;
    if (x == 0) throw std::domain_error("multiplicative_order: not a unit");
    return order_from_multiple(x, ctx.p - 1, ctx.p_minus_1, ctx.p);
}

u64 order_from_multiple(u64 x, u64 multiple, const Factorization& f, u64 p) {
    u64 o = multiple;
    for (auto [q, e] : f.prime_powers) {
        for (unsigned i = 0; i < e; ++i) {
            if (o % q != 0) break;
            u64 cand = o / q;
            if (pow_mod(x, cand, p) == 1)
                o = cand;
            else
                break;
        }
    }
    return o;
}

}  // namespace redlab::arith
