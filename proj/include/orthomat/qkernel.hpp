#pragma once

// q-numbers, continuous q-Hermite polynomials and the two sides of the
// Poisson-Mehler formula
//
//   prod_{k>=0} (1 - rho^2 q^k) / w_k(x,y|rho,q)
//       = sum_{j>=0} rho^j / [j]_q!  H_j(x|q) H_j(y|q),
//
//   w_k = (1 - rho^2 q^{2k})^2 - (1-q) rho q^k (1 + rho^2 q^{2k}) x y
//         + (1-q) rho^2 (x^2 + y^2) q^{2k}.
//
// H_n is monic: H_{n+1} = x H_n - [n]_q H_{n-1}, H_0 = 1, H_1 = x.

#include <cstddef>
#include <vector>

#include "orthomat/coefficients.hpp"
#include "orthomat/moments.hpp"

namespace orthomat {

/// [n]_q = 1 + q + .. + q^{n-1}; equals (1-q^n)/(1-q) for q != 1 and n at q = 1.
template <class K>
K q_bracket(std::size_t n, const K& q);

/// [n]_q! = [1]_q [2]_q .. [n]_q, [0]_q! = 1.
template <class K>
K q_factorial(std::size_t n, const K& q);

/// (a; q)_n = prod_{i<n} (1 - a q^i).
template <class K>
K q_pochhammer(const K& a, std::size_t n, const K& q);

/// Monic H_n(x|q).
template <class K>
K q_hermite(std::size_t n, const K& x, const K& q);

/// H_n(x|q) / sqrt([n]_q!).
template <class K>
Root<K> q_hermite_orthonormal(std::size_t n, const K& x, const K& q);

/// a_n^2 = [n]_q for n = 1..count, b = 0 (count entries).
template <class K>
RecurrenceCoefficients<K> q_hermite_recurrence(const K& q, std::size_t count);

/// Monic Al-Salam-Chihara recurrence with parameters (y, rho, q):
/// b_n = rho y q^n, a_n^2 = (1 - rho^2 q^{n-1}) [n]_q, n = 1..count.
template <class K>
RecurrenceCoefficients<K> al_salam_chihara_recurrence(const K& y, const K& rho, const K& q, std::size_t count);

struct QParams {
    double q = 0.0;
    double rho = 0.0;

    /// Throws InputError unless |q| < 1 and |rho| < 1.
    void validate() const;
    /// 2 / sqrt(1 - q).
    double support_bound() const;
    bool in_support(double x) const;
};

struct PMValue {
    double value = 0.0;
    std::size_t terms = 0;
};

inline constexpr std::size_t pm_max_terms = 10000;

/// Left-hand side. Stops once the k-th factor is within tol of 1 and |q|^k < tol.
/// Throws PreconditionError if some w_k <= 0 or the cap is hit.
PMValue pm_product(double x, double y, const QParams& p, double tol = 1e-12);

/// Right-hand side, summed with the orthonormal recurrence
/// x h_j = sqrt([j+1]_q) h_{j+1} + sqrt([j]_q) h_{j-1}; stops after a run of
/// consecutive terms below tol. Throws PreconditionError at the term cap.
PMValue pm_series(double x, double y, const QParams& p, double tol = 1e-12);

struct PMPoint {
    double x = 0.0;
    double y = 0.0;
    PMValue product;
    PMValue series;
    double error = 0.0;
};

/// x, y in {0, +-1, +-1.9/sqrt(1-q)}.
std::vector<double> default_pm_grid(double q);

/// Both sides at every (x, y) pair of `grid`.
std::vector<PMPoint> pm_compare(const QParams& p, const std::vector<double>& grid, double tol = 1e-12);

}  // namespace orthomat
