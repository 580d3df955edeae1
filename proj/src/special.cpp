#include "measuregraph/special.hpp"

#include "measuregraph/errors.hpp"

#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include <cmath>
#include <string>

namespace measuregraph {

double zeta(double s) {
    require(s > 1.0, "zeta: argument must exceed 1");
    return boost::math::zeta(s);
}

double zeta_minus_one(double s) {
    require(s > 1.0, "zeta: argument must exceed 1");
    if (s < 12.0) return boost::math::zeta(s) - 1.0;
    // direct sum converges geometrically here
    double total = 0.0;
    for (int k = 2; k < 200; ++k) {
        double term = std::pow(static_cast<double>(k), -s);
        total += term;
        if (term < 1e-20 * total) break;
    }
    return total;
}

double prime_zeta(double s) {
    require(s > 1.0, "prime_zeta: argument must exceed 1");
    // P(s) = sum_n mu(n)/n log zeta(n s)
    const int max_terms = 400;
    static const std::vector<int> mu = mobius_table(max_terms);
    double total = 0.0;
    for (int n = 1; n <= max_terms; ++n) {
        double ns = n * s;
        if (mu[n] != 0) total += mu[n] * std::log1p(zeta_minus_one(ns)) / n;
        // remaining terms are bounded by 2^{-ns}/n
        if (ns > 64.0) break;
    }
    return total;
}

double expint_ei(double x) {
    require(x != 0.0, "ei: argument must be nonzero");
    return boost::math::expint(x);
}

double erf(double x) { return std::erf(x); }

std::vector<std::int64_t> primes_up_to(std::int64_t n) {
    std::vector<std::int64_t> out;
    if (n < 2) return out;
    std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
    for (std::int64_t i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::int64_t j = i * i; j <= n; j += i) composite[j] = true;
    }
    return out;
}

std::int64_t prime_count(std::int64_t n) { return static_cast<std::int64_t>(primes_up_to(n).size()); }

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e > 0) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

} // namespace

// deterministic Miller-Rabin for 64-bit arguments
bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    const auto u = static_cast<std::uint64_t>(n);
    std::uint64_t d = u - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a, d, u);
        if (x == 1 || x == u - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod(x, x, u);
            if (x == u - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<int> mobius_table(std::int64_t n) {
    std::vector<int> mu(static_cast<std::size_t>(n) + 1, 1);
    if (n >= 0) mu[0] = 0;
    std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
    for (std::int64_t p = 2; p <= n; ++p) {
        if (composite[p]) continue;
        for (std::int64_t j = p; j <= n; j += p) {
            if (j > p) composite[j] = true;
            mu[j] = -mu[j];
        }
        for (std::int64_t j = p * p; j <= n; j += p * p) mu[j] = 0;
    }
    return mu;
}

double special(std::string_view name, double arg) {
    if (name == "zeta") return zeta(arg);
    if (name == "prime_zeta") return prime_zeta(arg);
    if (name == "ei" || name == "expint_Ei") return expint_ei(arg);
    if (name == "erf") return erf(arg);
    if (name == "prime_count") {
        require(arg >= 0.0 && arg == std::floor(arg), "prime_count: argument must be a nonnegative integer");
        return static_cast<double>(prime_count(static_cast<std::int64_t>(arg)));
    }
    throw ValidationError("unknown special function: " + std::string(name));
}

} // namespace measuregraph
