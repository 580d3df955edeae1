#ifndef MEASUREGRAPH_SPECIAL_HPP
#define MEASUREGRAPH_SPECIAL_HPP

#include <cstdint>
#include <string_view>
#include <vector>

namespace measuregraph {

double zeta(double s);              // Riemann zeta, s > 1
double zeta_minus_one(double s);    // zeta(s) - 1 without cancellation for large s
double prime_zeta(double s);        // sum over primes p^-s, s > 1
double expint_ei(double x);         // exponential integral Ei
double erf(double x);

std::vector<std::int64_t> primes_up_to(std::int64_t n);
std::int64_t prime_count(std::int64_t n);
bool is_prime(std::int64_t n);
std::vector<int> mobius_table(std::int64_t n);   // mu(0..n), mu(0) = 0

// Dispatch by name: "zeta", "prime_zeta", "prime_count", "erf", "ei" (alias "expint_Ei"). Unknown names throw ValidationError.
double special(std::string_view name, double arg);

} // namespace measuregraph

#endif
