#ifndef DESSIN_VERIFY_HPP
#define DESSIN_VERIFY_HPP

#include <string>
#include <vector>

namespace dessin {

struct VerifyItem {
    std::string name;
    bool ok = false;
    std::string detail;  // first counterexample, rendered exactly
    double seconds = 0.0;
};

struct VerifyOptions {
    int weight = 8;        // coupling-weight window for the oracle sweeps
    int lambda_order = 10; // tail order for resolvent-type identities
    int eps_order = 8;     // epsilon order for the constant-term identities
    int max_parts = 5;     // cap on the number of correlator insertions
    int hurwitz_degree = 6;
    int hurwitz_genus = 2;
    int genus_weight = 5;  // coupling-weight window for the genus reconstruction
    int threads = 1;
};

// Individual suites; names are stable identifiers used in reports.
std::vector<VerifyItem> verify_oracles(const VerifyOptions& opt);
std::vector<VerifyItem> verify_virasoro(const VerifyOptions& opt);
std::vector<VerifyItem> verify_toda(const VerifyOptions& opt);
std::vector<VerifyItem> verify_hurwitz(const VerifyOptions& opt);
std::vector<VerifyItem> verify_barnes(const VerifyOptions& opt);
std::vector<VerifyItem> verify_genus(const VerifyOptions& opt);

// suite in {oracles, virasoro, toda, hurwitz, barnes, genus, all}; throws
// std::invalid_argument on an unknown suite name. Items are returned sorted
// by name regardless of execution order.
std::vector<VerifyItem> run_suite(const std::string& suite, const VerifyOptions& opt);

}  // namespace dessin

#endif
