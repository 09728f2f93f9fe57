#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tracehull/poly.hpp"
#include "tracehull/rational.hpp"
#include "tracehull/region.hpp"

namespace tracehull::oracle {

// Brute-force cross-checks for the test suite and --self-check. None of these
// call the solver they validate.

struct OracleReport {
    std::string quantity;
    double oracle_value = 0;
    double main_value = 0;
    double discrepancy = 0;
    double tolerance = 0;
    bool pass = false;
};

// Exhaustive hull membership for tiny instances (d <= 3, <= 8 columns):
// enumerates basic solutions of every column subset of size <= d+1.
bool hull_membership_bruteforce(const std::vector<std::vector<Rational>>& columns,
                                const std::vector<Rational>& target);

// Estimates of the 32 split-case monomial averages from N semicircle pairs.
// Stratified over the inverse distribution per axis so the sampling error of
// even the degree-8 monomials stays within the advertised 4/sqrt(N).
std::vector<double> mc_moments(long n_samples, std::uint64_t seed);

// Plain minimum of p over the dense feasible lattice plus boundary samples;
// no polishing.
double dense_min(const Poly2& p, const Region& r, int n = 2049);

// The packaged oracle battery (used by --self-check and the test suite).
std::vector<OracleReport> run_self_check(std::uint64_t seed);

}  // namespace tracehull::oracle
