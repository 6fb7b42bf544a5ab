#pragma once

#include "diracspace/expr.hpp"
#include "diracspace/lagrangian.hpp"
#include "diracspace/linfty.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace diracspace {

struct CheckSpec {
    std::string command;
    int dim = 3;
    std::optional<int> p;
    int r = 2;
    std::string family = "getzler";    // check-linfty: getzler | observables
    std::string H = "0";
    std::optional<std::string> sigma;
    std::optional<std::string> B;
    std::optional<std::string> lambda;
    bool prequantize = false;
    std::optional<std::string> presentation;  // contents of a .pres file
    std::optional<std::string> expr;          // parse
    std::vector<Rat> point;                   // check-dirac, multidirac-tiers; default origin
    int arity_max = 0;                        // 0: family default
    int trials = 20;
    std::uint64_t seed = 0;
    bool allow_nonclosed = false;
};

using FieldValue = std::variant<long, std::uint64_t, bool, std::string>;

// One flat report object.
struct CheckRecord {
    std::string check;
    bool pass = true;
    bool informational = false;  // reported, but does not decide the exit code
    std::vector<std::pair<std::string, FieldValue>> fields;
    std::vector<std::string> witnesses;
};

// Throws ParseError on malformed input and std::invalid_argument on inconsistent parameters.
std::vector<CheckRecord> run_suite(const CheckSpec& spec);
bool suite_passed(const std::vector<CheckRecord>& records);

// Degrees drawn from -top+1..0 with degree 0 as likely as all others together.
std::vector<int> random_degrees(Sampler& rng, int m, int top);
// Counts failing tuples of the L-infinity relation at arity m; the first nonzero residual is kept.
struct RelationTally {
    int failures = 0;
    std::optional<GradedElem> first;
};
RelationTally getzler_relation_tally(const MultibracketFamily& F, int r, int m, int trials, Sampler& rng);
RelationTally observables_relation_tally(const MultibracketFamily& F, const std::vector<HamiltonianDatum>& basis,
                                         int m, int trials, Sampler& rng);
RelationTally oracle_mismatch_tally(int r, const Form& H, int m, int trials, Sampler& rng);

// Value of a Lagrangian generated by sections, at a point.
LinSubspace fiber_at(const Presentation& P, const std::vector<Rat>& point);

} // namespace diracspace
